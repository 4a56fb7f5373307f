#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scdebt/catalog.hpp"
#include "scdebt/cwss.hpp"
#include "scdebt/debt.hpp"
#include "scdebt/evmgas.hpp"
#include "scdebt/pricing.hpp"
#include "scdebt/report.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>

namespace py = pybind11;
using namespace scdebt;

namespace {

py::dict vulnerability_dict(const DesignVulnerability& v) {
    py::dict d;
    d["id"] = v.id;
    d["name"] = v.name;
    d["description"] = v.description;
    d["category"] = std::string(category_slug(v.category));
    py::list secondary;
    for (auto c : v.secondary_categories) {
        secondary.append(std::string(category_slug(c)));
    }
    d["secondary_categories"] = secondary;
    d["cwe_ids"] = v.cwe_ids;
    if (v.swc_id) {
        d["swc_id"] = *v.swc_id;
    } else {
        d["swc_id"] = py::none();
    }
    d["remediation_note"] = v.remediation_note;
    d["notes"] = v.notes;
    return d;
}

std::vector<std::uint8_t> to_bytes(const py::object& code) {
    if (py::isinstance<py::bytes>(code) || py::isinstance<py::bytearray>(code)) {
        std::string raw = py::cast<std::string>(code);
        return std::vector<std::uint8_t>(raw.begin(), raw.end());
    }
    return evm::parse_hex(py::cast<std::string>(code));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Security technical debt assessment for smart contracts (C++ core)";

    py::class_<Catalog>(m, "Catalog")
        .def_static("bundled", [] { return Catalog::bundled(); })
        .def_static("load_text", [](const std::string& text) { return Catalog::load_text(text); })
        .def_static("load_file",
                    [](const std::string& path) { return Catalog::load_file(path); })
        .def("lookup",
             [](const Catalog& c, const std::string& id) -> py::object {
                 const DesignVulnerability* v = c.lookup(id);
                 if (!v) return py::none();
                 return vulnerability_dict(*v);
             })
        .def("by_category",
             [](const Catalog& c, const std::string& slug) {
                 auto cat = category_from_slug(slug);
                 if (!cat) throw CatalogError("unknown category '" + slug + "'");
                 py::list out;
                 for (const auto* v : c.by_category(*cat)) out.append(vulnerability_dict(*v));
                 return out;
             })
        .def("by_cwe",
             [](const Catalog& c, int cwe_id) {
                 py::list out;
                 for (const auto* v : c.by_cwe(cwe_id)) out.append(vulnerability_dict(*v));
                 return out;
             })
        .def("resolve_alias",
             [](const Catalog& c, const std::string& tool, const std::string& code) -> py::object {
                 auto slug = c.resolve_alias(tool, code);
                 if (!slug) return py::none();
                 return py::cast(*slug);
             })
        .def("__len__", [](const Catalog& c) { return c.vulnerabilities().size(); });

    m.def(
        "decode",
        [](const py::object& code) {
            py::list out;
            auto bytes = to_bytes(code);
            for (const auto& ins : evm::decode(bytes)) {
                py::dict d;
                d["offset"] = ins.offset;
                d["opcode"] = ins.opcode;
                d["mnemonic"] = std::string(ins.mnemonic);
                d["immediate"] = py::bytes(
                    reinterpret_cast<const char*>(ins.immediate.data()), ins.immediate.size());
                d["truncated"] = ins.truncated;
                if (ins.base_gas) {
                    d["base_gas"] = *ins.base_gas;
                } else {
                    d["base_gas"] = py::none();
                }
                out.append(d);
            }
            return out;
        },
        py::arg("code"), "Disassemble EVM bytecode (hex string or bytes).");

    m.def(
        "estimate_principal",
        [](const py::object& init_code, const py::object& runtime_code,
           const py::object& runtime_len, const py::object& execution, const std::string& update,
           const py::object& proxy_gas, const std::string& gas_price_gwei,
           const std::string& eth_usd, bool include_calldata) {
            ContractBytecode code;
            if (!init_code.is_none()) code.init_code = to_bytes(init_code);
            if (!runtime_code.is_none()) code.runtime_code = to_bytes(runtime_code);
            if (!runtime_len.is_none()) {
                code.runtime_len_override = py::cast<std::uint64_t>(runtime_len);
            }
            EstimationOptions opts;
            opts.include_calldata = include_calldata;
            if (py::isinstance<py::int_>(execution)) {
                opts.execution = ExecutionStrategy::provided(py::cast<std::uint64_t>(execution));
            } else {
                std::string strategy = py::cast<std::string>(execution);
                if (strategy == "zero") {
                    opts.execution = ExecutionStrategy::zero();
                } else if (strategy == "static_sum") {
                    opts.execution = ExecutionStrategy::static_sum();
                } else {
                    throw GasError("execution must be 'zero', 'static_sum' or an integer");
                }
            }
            if (update == "selfdestruct") {
                opts.update = UpdatePattern::Selfdestruct;
            } else if (update == "proxy") {
                opts.update = UpdatePattern::Proxy;
                if (!proxy_gas.is_none()) {
                    opts.proxy_gas = py::cast<std::uint64_t>(proxy_gas);
                }
            } else {
                throw GasError("update must be 'selfdestruct' or 'proxy'");
            }
            PriceQuote quote =
                static_quote(Decimal::parse(gas_price_gwei), Decimal::parse(eth_usd));
            PrincipalEstimate est = principal(code, GasSchedule::defaults(), opts, quote);
            py::dict d;
            d["deploy_gas"] = est.deploy_gas;
            d["update_gas"] = est.update_gas;
            d["total_gas"] = est.total_gas;
            d["fee_eth"] = est.fee_eth.to_fixed(8);
            d["fee_usd"] = est.fee_usd.to_fixed(2);
            py::dict b;
            b["create"] = est.breakdown.create;
            b["transaction"] = est.breakdown.transaction;
            b["codedeposit"] = est.breakdown.codedeposit;
            b["calldata"] = est.breakdown.calldata;
            b["execution"] = est.breakdown.execution;
            d["breakdown"] = b;
            d["warnings"] = est.breakdown.warnings;
            return d;
        },
        py::arg("init_code") = py::none(), py::arg("runtime_code") = py::none(),
        py::arg("runtime_len") = py::none(), py::arg("execution") = "zero",
        py::arg("update") = "selfdestruct", py::arg("proxy_gas") = py::none(),
        py::arg("gas_price_gwei") = "0", py::arg("eth_usd") = "0",
        py::arg("include_calldata") = false,
        "Estimate the redeployment principal for one contract.");

    m.def(
        "score_vector",
        [](const std::string& vector) {
            const auto& table = cwss::WeightTable::bundled();
            cwss::CwssScore s = cwss::score(cwss::parse_vector(vector, table), table);
            py::dict d;
            d["base"] = s.base_subscore.to_fixed(1);
            d["attack_surface"] = s.attack_surface_subscore.to_fixed(3);
            d["environmental"] = s.environmental_subscore.to_fixed(3);
            d["total"] = s.total.to_fixed(1);
            d["vector"] = s.vector_string;
            return d;
        },
        py::arg("vector"), "Score a 16-factor weakness vector string.");

    m.def(
        "render_vector_suggestion",
        [](const std::string& category, int tools) {
            auto cat = category_from_slug(category);
            if (!cat) throw CatalogError("unknown category '" + category + "'");
            NormalizedFinding nf;
            nf.category = *cat;
            for (int i = 0; i < tools; ++i) {
                nf.reporting_tools.push_back("tool" + std::to_string(i + 1));
            }
            return cwss::render_vector(cwss::suggest_vector(nf, ContractProfile{}));
        },
        py::arg("category"), py::arg("tools") = 1,
        "Suggest a starting vector for a finding category.");

    m.def(
        "interest",
        [](const std::string& cwss_total, const std::string& cal, const std::string& cls) {
            return interest(Decimal::parse(cwss_total), Decimal::parse(cal), Decimal::parse(cls))
                .to_fixed(1);
        },
        py::arg("cwss_total"), py::arg("cal"), py::arg("cls"),
        "Accumulated interest: cwss x cal x cls, rendered to one decimal.");

    m.def(
        "cls_score", [](int days) { return cls_score(days).to_string(); }, py::arg("days"),
        "Lifespan band score for a contract lifespan in days.");

    m.def(
        "severity",
        [](const std::string& cost_band, const std::string& value_band) {
            auto parse_band = [](const std::string& name) {
                if (name == "Low") return Band::Low;
                if (name == "Medium") return Band::Medium;
                if (name == "High") return Band::High;
                throw DebtError("band must be Low, Medium or High");
            };
            return std::string(severity_name(severity(parse_band(cost_band), parse_band(value_band))));
        },
        py::arg("cost_band"), py::arg("value_band"),
        "Overall severity from the (cost, value) band matrix.");

    m.def(
        "assess_portfolio",
        [](const std::string& portfolio_path, const std::vector<std::string>& findings_paths,
           const py::object& manual_path, const std::string& gas_price_gwei,
           const std::string& eth_usd, const py::object& config_path) {
            AssessConfig config = AssessConfig::defaults();
            if (!config_path.is_none()) {
                config = AssessConfig::load_file(py::cast<std::string>(config_path));
            }
            AssessInputs inputs;
            inputs.portfolio_name =
                std::filesystem::path(portfolio_path).stem().string();
            inputs.portfolio = load_portfolio_file(portfolio_path);
            for (const auto& path : findings_paths) {
                auto findings = parse_findings_file(path);
                inputs.findings.insert(inputs.findings.end(), findings.begin(), findings.end());
            }
            if (!manual_path.is_none()) {
                std::ifstream in(py::cast<std::string>(manual_path));
                nlohmann::json doc;
                in >> doc;
                inputs.manual_doc = std::move(doc);
            }
            inputs.quote = static_quote(Decimal::parse(gas_price_gwei), Decimal::parse(eth_usd));
            DebtAssessment a =
                assess(inputs, Catalog::bundled(), cwss::WeightTable::bundled(), config);
            return render_json(a);
        },
        py::arg("portfolio_path"), py::arg("findings_paths") = std::vector<std::string>{},
        py::arg("manual_path") = py::none(), py::arg("gas_price_gwei") = "0",
        py::arg("eth_usd") = "0", py::arg("config_path") = py::none(),
        "Run the full pipeline over file inputs; returns the canonical JSON report.");
}
