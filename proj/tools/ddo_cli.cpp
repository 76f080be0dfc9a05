// Copyright 2026 The ddo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ddo/acceptance.hpp"
#include "ddo/ddo.hpp"

namespace {

using ddo::json;

struct RunConfig {
    std::uint64_t seed = 0;
    double tol = ddo::kDefaultTol;
    std::string output_path;  // empty = stdout
    std::string format = "json";
};

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string base_dir_of(const std::string &path) {
    const auto parent = std::filesystem::path(path).parent_path();
    return parent.empty() ? std::string(".") : parent.string();
}

void flatten_json(const json &j, const std::string &prefix, std::ostream &out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten_json(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten_json(j.at(i), prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << ": " << j.dump() << "\n";
    }
}

void emit(const RunConfig &cfg, json payload) {
    payload["tool_version"] = ddo::kVersion;
    payload["seed"] = cfg.seed;
    payload["tolerance"] = cfg.tol;
    std::ostringstream out;
    if (cfg.format == "text")
        flatten_json(payload, "", out);
    else
        out << payload.dump(2) << "\n";
    if (cfg.output_path.empty())
        std::cout << out.str();
    else
        ddo::write_text_file(cfg.output_path, out.str());
}

void emit_text(const RunConfig &cfg, const std::string &text) {
    if (cfg.output_path.empty())
        std::cout << text;
    else
        ddo::write_text_file(cfg.output_path, text);
}

ddo::ProcessModel load_model(const std::string &path) {
    return ddo::parse(read_file(path), base_dir_of(path));
}

std::vector<ddo::Instrument> load_instruments(const std::string &path, double tol) {
    const json j = ddo::read_json_file(path);
    if (!j.is_array()) throw std::invalid_argument("instruments file must be a JSON array");
    std::vector<ddo::Instrument> instruments;
    for (const json &rec : j) instruments.push_back(ddo::instrument_from_json(rec, tol));
    return instruments;
}

ddo::BlochObservable parse_bloch(const std::vector<double> &v) {
    if (v.size() != 3) throw std::domain_error("observable needs exactly three components");
    return ddo::BlochObservable::normalized(v[0], v[1], v[2]);
}

json temporality_to_json(const ddo::TemporalityReport &rep) {
    return json{
        {"verdict", rep.verdict == ddo::TemporalityVerdict::TemporalSignature ? "temporal_signature"
                                                                              : "inconclusive"},
        {"left", json{{"hermiticity_residual", rep.left_hermiticity_residual},
                      {"min_eigenvalue", rep.left_min_eig},
                      {"trace", json::array({rep.left_trace.real(), rep.left_trace.imag()})}}},
        {"right", json{{"hermiticity_residual", rep.right_hermiticity_residual},
                       {"min_eigenvalue", rep.right_min_eig},
                       {"trace", json::array({rep.right_trace.real(), rep.right_trace.imag()})}}}};
}

json axioms_to_json(const ddo::AxiomReport &rep) {
    return json{{"hermiticity_residual", rep.hermiticity_residual},
                {"min_eigenvalue", rep.min_eigenvalue},
                {"normalization_residual", rep.normalization_residual},
                {"hermitian_pass", rep.hermitian_pass},
                {"psd_pass", rep.psd_pass},
                {"normalized_pass", rep.normalized_pass},
                {"pass", rep.pass()}};
}

json model_ast(const ddo::ProcessModel &model) {
    json steps = json::array();
    for (const ddo::Step &s : model.steps) {
        json step{{"measure", s.measured}};
        step["channel"] = s.channel_spec ? json(s.channel_spec->text()) : json(nullptr);
        steps.push_back(std::move(step));
    }
    return json{{"dim", model.local_dim},
                {"qudits", model.num_qudits},
                {"state", model.state_spec.text()},
                {"steps", std::move(steps)},
                {"num_events", model.num_events()},
                {"information_complete", model.information_complete()}};
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"spatiotemporal doubled density operators: build, validate and analyze"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ddo::kVersion);

    RunConfig cfg;
    if (const char *env_tol = std::getenv("DDO_TOL")) cfg.tol = std::strtod(env_tol, nullptr);
    app.add_option("--seed", cfg.seed, "seed for randomized checks (recorded in output)");
    app.add_option("--tol", cfg.tol, "numerical tolerance (overrides DDO_TOL)");
    app.add_option("-o,--output", cfg.output_path, "output file (default stdout)");
    app.add_option("--format", cfg.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));

    // basis <d>
    int basis_dim = 2;
    auto *cmd_basis = app.add_subcommand("basis", "print the generalized Pauli basis for dimension d");
    cmd_basis->fallthrough();
    cmd_basis->add_option("d", basis_dim, "local dimension")->required();

    // parse FILE [--ast]
    std::string parse_file;
    bool parse_ast = false;
    auto *cmd_parse = app.add_subcommand("parse", "parse a process file; print canonical text or AST");
    cmd_parse->fallthrough();
    cmd_parse->add_option("file", parse_file, "process file (.ddo)")->required();
    cmd_parse->add_flag("--ast", parse_ast, "emit a JSON AST instead of canonical text");

    // dct FILE
    std::string dct_file;
    auto *cmd_dct = app.add_subcommand("dct", "build the correlation tensor of a process");
    cmd_dct->fallthrough();
    cmd_dct->add_option("file", dct_file, "process file (.ddo)")->required();

    // build FILE
    std::string build_file;
    auto *cmd_build = app.add_subcommand("build", "build the doubled density operator of a process");
    cmd_build->fallthrough();
    cmd_build->add_option("file", build_file, "process file (.ddo)")->required();

    // verify FILE [--reduction-audit]
    std::string verify_file;
    bool verify_audit = false;
    auto *cmd_verify = app.add_subcommand("verify", "check the tensor axioms of a stored tensor");
    cmd_verify->fallthrough();
    cmd_verify->add_option("file", verify_file, "tensor JSON file")->required();
    cmd_verify->add_flag("--reduction-audit", verify_audit,
                         "also check every one-event reduction against the density-operator conditions");

    // analyze W.json --temporality
    std::string analyze_file;
    bool analyze_temporality = false;
    auto *cmd_analyze = app.add_subcommand("analyze", "analyze a stored doubled density operator");
    cmd_analyze->fallthrough();
    cmd_analyze->add_option("file", analyze_file, "doubled-operator JSON file")->required();
    cmd_analyze->add_flag("--temporality", analyze_temporality, "run the temporality criterion");

    // recover W.json --model FILE --step k
    std::string recover_file, recover_model;
    int recover_step = 0;
    auto *cmd_recover = app.add_subcommand("recover", "recover an equal-time state from a doubled operator");
    cmd_recover->fallthrough();
    cmd_recover->add_option("file", recover_file, "doubled-operator JSON file")->required();
    cmd_recover->add_option("--model", recover_model, "process file the operator was built from")->required();
    cmd_recover->add_option("--step", recover_step, "time step (0-based)")->required();

    // born FILE --instruments F [--compare-oracle]
    std::string born_file, born_instruments;
    bool born_compare = false;
    auto *cmd_born = app.add_subcommand("born", "outcome distribution of a process under instruments");
    cmd_born->fallthrough();
    cmd_born->add_option("file", born_file, "process file (.ddo)")->required();
    cmd_born->add_option("--instruments", born_instruments, "instruments JSON (one record per event)")
        ->required();
    cmd_born->add_flag("--compare-oracle", born_compare,
                       "also run the standard-quantum-mechanics path and report the deviation");

    // test st|lg|causal
    auto *cmd_test = app.add_subcommand("test", "correlation and causal-inequality tests");
    cmd_test->fallthrough();
    cmd_test->require_subcommand(1);
    std::vector<double> st_a1, st_a2, st_a3;
    auto *cmd_st = cmd_test->add_subcommand("st", "three-event space-time correlation test");
    cmd_st->fallthrough();
    cmd_st->add_option("--a1", st_a1, "Bloch vector of the first measurement")->expected(3)->required();
    cmd_st->add_option("--a2", st_a2, "Bloch vector of the second measurement")->expected(3)->required();
    cmd_st->add_option("--a3", st_a3, "Bloch vector of the third measurement")->expected(3)->required();

    std::string lg_model;
    std::vector<double> lg_a1, lg_a2, lg_a3;
    auto *cmd_lg = cmd_test->add_subcommand("lg", "Leggett-Garg value of a three-step chain");
    cmd_lg->fallthrough();
    cmd_lg->add_option("--model", lg_model, "single-qubit three-step process file")->required();
    cmd_lg->add_option("--a1", lg_a1, "Bloch vector at the first step")->expected(3)->required();
    cmd_lg->add_option("--a2", lg_a2, "Bloch vector at the second step")->expected(3)->required();
    cmd_lg->add_option("--a3", lg_a3, "Bloch vector at the third step")->expected(3)->required();

    std::string causal_table, causal_which = "gyni";
    auto *cmd_causal = cmd_test->add_subcommand("causal", "evaluate a causal inequality on a behavior");
    cmd_causal->fallthrough();
    cmd_causal->add_option("--table", causal_table, "behavior table JSON")->required();
    cmd_causal->add_option("--which", causal_which, "gyni or lgyni")
        ->check(CLI::IsMember({"gyni", "lgyni"}));

    // selftest
    auto *cmd_selftest = app.add_subcommand("selftest", "run the full acceptance suite");
    cmd_selftest->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return 2;
    }

    try {
        if (*cmd_basis) {
            ddo::PauliBasis basis = ddo::build_basis(basis_dim);
            json ops = json::array();
            for (const ddo::CMatrix &op : basis.ops) ops.push_back(ddo::matrix_to_json(op));
            emit(cfg, json{{"d", basis.dim},
                           {"operators", std::move(ops)},
                           {"gram_residual", ddo::gram_residual(basis)}});
        } else if (*cmd_parse) {
            ddo::ProcessModel model = load_model(parse_file);
            if (parse_ast)
                emit(cfg, model_ast(model));
            else
                emit_text(cfg, ddo::serialize(model));
        } else if (*cmd_dct) {
            ddo::ProcessModel model = load_model(dct_file);
            ddo::PauliBasis basis = ddo::build_basis(model.local_dim);
            json j = ddo::tensor_to_json(ddo::dct_spacetime(model, basis));
            emit(cfg, std::move(j));
        } else if (*cmd_build) {
            ddo::ProcessModel model = load_model(build_file);
            ddo::PauliBasis basis = ddo::build_basis(model.local_dim);
            json j = ddo::ddo_to_json(ddo::assemble(ddo::dct_spacetime(model, basis), basis));
            emit(cfg, std::move(j));
        } else if (*cmd_verify) {
            ddo::CorrelationTensor t = ddo::tensor_from_json(ddo::read_json_file(verify_file));
            ddo::AxiomReport report = ddo::verify_axioms(t, cfg.tol);
            json j{{"axioms", axioms_to_json(report)}};
            if (verify_audit) {
                ddo::PauliBasis basis = ddo::build_basis(t.local_dim);
                json audit = json::array();
                auto reports = ddo::one_event_reduction_audit(t, basis, cfg.tol);
                for (std::size_t event = 0; event < reports.size(); ++event)
                    audit.push_back(json{{"event", event}, {"reductions", temporality_to_json(reports[event])}});
                j["one_event_reduction_audit"] = std::move(audit);
            }
            emit(cfg, std::move(j));
            return report.pass() ? 0 : 1;
        } else if (*cmd_analyze) {
            if (!analyze_temporality)
                throw std::domain_error("analyze: nothing to do (use --temporality)");
            ddo::DoubledDensityOperator w = ddo::ddo_from_json(ddo::read_json_file(analyze_file));
            emit(cfg, temporality_to_json(ddo::detect_temporality(w, cfg.tol)));
        } else if (*cmd_recover) {
            ddo::DoubledDensityOperator w = ddo::ddo_from_json(ddo::read_json_file(recover_file));
            ddo::ProcessModel model = load_model(recover_model);
            ddo::DensityOperator rho = ddo::recover_state_at_step(w, model, recover_step);
            json j = ddo::matrix_to_json(rho.mat);
            j["step"] = recover_step;
            j["hermiticity_residual"] = rho.hermiticity;
            j["trace_residual"] = rho.trace_error;
            j["min_eigenvalue"] = rho.min_eig;
            emit(cfg, std::move(j));
        } else if (*cmd_born) {
            ddo::ProcessModel model = load_model(born_file);
            ddo::PauliBasis basis = ddo::build_basis(model.local_dim);
            std::vector<ddo::Instrument> instruments = load_instruments(born_instruments, cfg.tol);
            ddo::OutcomeDistribution dist = ddo::born_distribution(model, instruments, basis, cfg.tol);
            json j{{"born", ddo::distribution_to_json(dist)}};
            if (born_compare) {
                ddo::OutcomeDistribution oracle = ddo::qm_oracle(model, instruments);
                j["oracle"] = ddo::distribution_to_json(oracle);
                j["max_deviation"] = ddo::max_distribution_deviation(dist, oracle);
            }
            emit(cfg, std::move(j));
        } else if (*cmd_st) {
            ddo::STTestConfig config{parse_bloch(st_a1), parse_bloch(st_a2), parse_bloch(st_a3)};
            ddo::STTestResult result = ddo::st_test_value(config, ddo::build_basis(2));
            emit(cfg, json{{"simulated", result.simulated},
                           {"analytic", result.analytic},
                           {"correlators", json{{"e21", result.e21}, {"e32", result.e32}, {"e31", result.e31}}},
                           {"a1", config.a1.vec},
                           {"a2", config.a2.vec},
                           {"a3", config.a3.vec}});
        } else if (*cmd_lg) {
            ddo::ProcessModel model = load_model(lg_model);
            std::array<ddo::BlochObservable, 3> obs{parse_bloch(lg_a1), parse_bloch(lg_a2),
                                                    parse_bloch(lg_a3)};
            ddo::LgResult result = ddo::lg_value(model, obs);
            emit(cfg, json{{"value", result.value},
                           {"correlators",
                            json{{"e21", result.e21}, {"e32", result.e32}, {"e31", result.e31}}}});
        } else if (*cmd_causal) {
            ddo::BehaviorTable table = ddo::behavior_from_json(ddo::read_json_file(causal_table));
            table.validate(cfg.tol);
            const auto which =
                causal_which == "gyni" ? ddo::CausalInequality::Gyni : ddo::CausalInequality::Lgyni;
            const double value = ddo::causal_value(table, which);
            const double bound = which == ddo::CausalInequality::Gyni ? 0.5 : 0.75;
            emit(cfg, json{{"which", causal_which},
                           {"value", value},
                           {"bound", bound},
                           {"satisfied", value <= bound + cfg.tol}});
        } else if (*cmd_selftest) {
            auto results = ddo::acceptance::run_all(cfg.seed);
            ddo::acceptance::print_results(results);
            return ddo::acceptance::all_pass(results) ? 0 : 1;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
