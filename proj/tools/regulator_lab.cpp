// regulator-lab: verification driver for the p-adic regulator toolkit.
//
// Exit codes: 0 all pass, 2 suite failure, 3 configuration error,
// 4 precision exhaustion.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "reglab/errors.hpp"
#include "reglab/report.hpp"
#include "reglab/suites.hpp"

using namespace reglab;
using nlohmann::json;

namespace {

json config_json(const RunConfig& cfg) {
    json j;
    j["N"] = cfg.N;
    j["p"] = cfg.p;
    j["m"] = cfg.m;
    j["D"] = cfg.D;
    j["weil_degree"] = cfg.weil_degree;
    j["max_level"] = cfg.max_level;
    j["seed"] = cfg.seed;
    j["extended"] = cfg.extended;
    return j;
}

void emit(const Report& report, const std::string& format, const std::string& out_path, bool timings) {
    std::string payload =
        (format == "tsv") ? report.to_tsv() : report.to_json(timings).dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream os(out_path);
        if (!os) throw std::runtime_error("cannot open output path: " + out_path);
        os << payload;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"regulator-lab: exact verification suites for the p-adic regulator constructions"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format = "json", out_path;
    bool no_timings = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--N", cfg.N, "rank of gl_N (1..3)");
        cmd->add_option("--p", cfg.p, "odd prime");
        cmd->add_option("--m", cfg.m, "p-adic working precision");
        cmd->add_option("--D", cfg.D, "z-degree bound of the group-algebra layer");
        cmd->add_option("--weil-degree", cfg.weil_degree, "total-degree bound of Weil slices");
        cmd->add_option("--max-level", cfg.max_level, "cosimplicial levels");
        cmd->add_option("--seed", cfg.seed, "RNG seed for property tests");
        cmd->add_flag("--extended", cfg.extended, "include the slow extended checks");
        cmd->add_option("--format", format, "report format: json|tsv");
        cmd->add_option("--out", out_path, "write the report to this path");
        cmd->add_flag("--no-timings", no_timings, "omit timings from the report");
    };

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    verify->add_option("suite", suite, "one of: ce, weil, suspension, normalization, phi-psi, lazard, all")
        ->required();
    add_common(verify);

    auto* shadow = app.add_subcommand("shadow", "n = 1 regulator shadow: log_p(det) on 1 + p M_N(Z_p)");
    add_common(shadow);

    auto* report_cmd = app.add_subcommand("report", "re-emit a stored report (empty when no input given)");
    std::string in_path;
    report_cmd->add_option("--in", in_path, "previously written JSON report");
    report_cmd->add_option("--format", format, "json|tsv");
    report_cmd->add_option("--out", out_path, "output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (format != "json" && format != "tsv") throw DomainError("format must be json or tsv");
        if (report_cmd->parsed()) {
            Report rep;
            if (!in_path.empty()) {
                std::ifstream is(in_path);
                if (!is) throw DomainError("cannot read report: " + in_path);
                json j = json::parse(is);
                rep.schema_version = j.value("schema_version", 1);
                rep.config = j.value("config", json::object());
                for (const auto& s : j.value("suites", json::array())) {
                    SuiteResult r;
                    r.name = s.value("suite", "");
                    r.status = s.value("status", "");
                    r.witnesses = s.value("witnesses", json::object());
                    r.elapsed_ms = s.value("elapsed_ms", 0.0);
                    rep.suites.push_back(std::move(r));
                }
            }
            emit(rep, format, out_path, !no_timings);
            return 0;
        }

        cfg.validate();
        Report rep;
        rep.config = config_json(cfg);
        if (shadow->parsed()) {
            rep.suites.push_back(suite_shadow(cfg));
        } else {
            if (suite == "all") {
                for (const auto& name : all_suite_names()) rep.suites.push_back(run_suite(name, cfg));
            } else {
                rep.suites.push_back(run_suite(suite, cfg));
            }
        }
        emit(rep, format, out_path, !no_timings);
        return rep.all_passed() ? 0 : 2;
    } catch (const PrecisionError& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return 4;
    } catch (const DomainError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
