#!/usr/bin/env python3
"""Regenerates the synthetic CEOThrone deployment artifact.

Layout: a 12-byte deploy preamble (PUSH2 len / DUP1 / PUSH1 off / PUSH1 0 /
CODECOPY / PUSH1 0 / RETURN) followed by a 4166-byte runtime payload of 1994
PUSH1-0x00 pairs and 178 STOPs. With the default schedule that prices to
21000 + 32000 + 200*4166 + (18 + 3*1994) = 892200 deploy gas, 897200 with a
self-destruct update.
"""

from pathlib import Path

RUNTIME_PUSH_PAIRS = 1994
RUNTIME_STOPS = 178


def main() -> None:
    runtime = bytes.fromhex("6000") * RUNTIME_PUSH_PAIRS + b"\x00" * RUNTIME_STOPS
    assert len(runtime) == 4166
    header = bytes.fromhex("611046") + bytes.fromhex("80600c60003960")
    header += bytes.fromhex("00f3")
    assert len(header) == 12
    init = header + runtime

    here = Path(__file__).parent
    (here / "CEOThrone.init.hex").write_text("0x" + init.hex() + "\n")
    (here / "CEOThrone.runtime.hex").write_text("0x" + runtime.hex() + "\n")
    print(f"init={len(init)} bytes runtime={len(runtime)} bytes")


if __name__ == "__main__":
    main()
