// Copyright 2026 The qgd Authors
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

#include "cli.hpp"

#include "qgd/decomposition_io.hpp"
#include "qgd/errors.hpp"
#include "qgd/experiment.hpp"
#include "qgd/lcu.hpp"
#include "qgd/mds.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <random>
#include <sstream>

namespace qgd::cli {

using nlohmann::json;

namespace {

// Writes to a file when a path is given, else to the fallback stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ParseError("cannot open output file " + path);
        }
        stream_ = path.empty() ? &fallback : &file_;
        *stream_ << std::setprecision(12);
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

Mode parse_mode(const std::string& mode) {
    if (mode == "exact") return Mode::Exact;
    if (mode == "sampled") return Mode::Sampled;
    throw ParseError("unknown mode '" + mode + "' (expected exact or sampled)");
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) throw ParseError("bad number '" + item + "'");
        } catch (const std::logic_error&) {
            throw ParseError("bad number '" + item + "' in list '" + text + "'");
        }
    }
    return values;
}

Point resolve_x0(const RunConfig& config, const Problem& problem) {
    if (!config.x0.empty()) {
        const auto values = parse_list(config.x0);
        if (static_cast<int>(values.size()) != problem.decomp.dim()) {
            throw ParseError("--x0 has " + std::to_string(values.size()) + " entries, problem dimension is " +
                             std::to_string(problem.decomp.dim()));
        }
        return Point::normalized(Eigen::Map<const RVector>(values.data(), problem.decomp.dim()));
    }
    if (problem.x0) return *problem.x0;
    throw ParseError("no starting point: pass --x0 or add \"x0\" to the problem file");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

RMatrix matrix_from_json(const json& node, const char* what) {
    if (!node.is_array() || node.empty()) throw ParseError(std::string(what) + " must be a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(node.size());
    const auto cols = static_cast<Eigen::Index>(node.at(0).size());
    RMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (node.at(r).size() != static_cast<std::size_t>(cols)) throw ParseError(std::string(what) + " is ragged");
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = node.at(r).at(c).get<double>();
    }
    return m;
}

RMatrix matrix_from_csv(const std::string& text, const char* what) {
    std::vector<std::vector<double>> rows;
    std::stringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        rows.push_back(parse_list(line));
    }
    if (rows.empty()) throw ParseError(std::string(what) + " CSV is empty");
    RMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.front().size()) throw ParseError(std::string(what) + " CSV is ragged");
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

RMatrix load_matrix(const std::string& path, const char* what) {
    const std::string text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
        try {
            return matrix_from_json(json::parse(text), what);
        } catch (const json::exception& e) {
            throw ParseError(std::string(what) + ": " + e.what());
        }
    }
    return matrix_from_csv(text, what);
}

json point_json(const Point& p) { return std::vector<double>(p.coords().begin(), p.coords().end()); }

json matrix_json(const RMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
    }
    return rows;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const qgd::Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

}  // namespace

std::optional<std::string> validate(const RunConfig& config) {
    if (config.mode != "exact" && config.mode != "sampled") return "mode must be exact or sampled";
    if (config.mode == "sampled" && config.shots < 1) return "shots must be >= 1 in sampled mode";
    if (!(config.noise_eps >= 0.0 && config.noise_eps <= 1.0)) return "noise must lie in [0, 1]";
    if (!(config.eta > 0.0)) return "eta must be positive";
    if (!(config.threshold > 0.0)) return "threshold must be positive";
    if (config.max_iters < 1) return "max-iters must be >= 1";
    if (config.format != "csv" && config.format != "json") return "format must be csv or json";
    return std::nullopt;
}

int cmd_optimize(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (auto msg = validate(config)) throw ParseError(*msg);
        if (config.problem.empty()) throw ParseError("--problem is required");
        const Problem problem = load_problem(config.problem);
        const Point x0 = resolve_x0(config, problem);
        if (!config.write_problem.empty()) {
            Problem copy{problem.decomp, x0, problem.reference};
            Sink sink(config.write_problem, out);
            *sink << problem_to_json(copy).dump(2) << '\n';
        }

        OptimizeOptions options;
        options.eta = config.eta;
        options.threshold = config.threshold;
        options.max_iters = config.max_iters;
        options.mode = parse_mode(config.mode);
        options.shots = config.shots;
        options.seed = config.seed;
        options.noise_eps = config.noise_eps;
        options.reference = problem.reference;
        const auto records = optimize(problem.decomp, x0, options);
        const bool converged = records.back().label == Label::Converged;
        const int n = problem.decomp.dim();

        json summary = {
            {"final_point", point_json(records.back().point)},
            {"final_f", records.back().f_value},
            {"iterations", records.size()},
            {"converged", converged},
        };

        Sink sink(config.out, out);
        if (config.format == "json") {
            json rows = json::array();
            for (const auto& r : records) {
                json row = {{"iter", r.iter}, {"x", point_json(r.point)}, {"f", r.f_value},
                            {"success_prob", r.success_prob}};
                if (r.overlap) row["overlap"] = *r.overlap;
                if (r.fidelity) row["fidelity"] = *r.fidelity;
                rows.push_back(row);
            }
            *sink << json{{"trajectory", rows}, {"summary", summary}}.dump(2) << '\n';
        } else {
            *sink << "iter";
            for (int i = 1; i <= n; ++i) *sink << ",x" << i;
            *sink << ",f,success_prob,overlap\n";
            const auto row = [&](int iter, const Point& p, double f, std::optional<double> ps,
                                 std::optional<double> ov) {
                *sink << iter;
                for (int i = 0; i < n; ++i) *sink << ',' << p[i];
                *sink << ',' << f << ',';
                if (ps) *sink << *ps;
                *sink << ',';
                if (ov) *sink << *ov;
                *sink << '\n';
            };
            std::optional<double> ov0;
            if (problem.reference) ov0 = x0.coords().dot(problem.reference->coords());
            row(0, x0, evaluate_objective(problem.decomp, x0), std::nullopt, ov0);
            for (const auto& r : records) row(r.iter, r.point, r.f_value, r.success_prob, r.overlap);

            std::string summary_path = config.summary;
            if (summary_path.empty() && !config.out.empty()) summary_path = config.out + ".summary.json";
            Sink summary_sink(summary_path, out);
            *summary_sink << summary.dump(2) << '\n';
        }
        return converged ? kConverged : kBudgetExhausted;
    });
}

int cmd_repro(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (auto msg = validate(config)) throw ParseError(*msg);
        std::vector<Case> cases;
        if (config.case_name == "s1") {
            cases = {Case::S1};
        } else if (config.case_name == "s2") {
            cases = {Case::S2};
        } else if (config.case_name == "both") {
            cases = {Case::S1, Case::S2};
        } else {
            throw ParseError("unknown case '" + config.case_name + "' (expected s1, s2 or both)");
        }

        const ExperimentConfig experiment = ExperimentConfig::standard();
        const auto options_for = [&](Case c) {
            RunCaseOptions o;
            o.mode = parse_mode(config.mode);
            o.noise_eps = config.noise_eps;
            o.seed = config.seed + (c == Case::S1 ? 0 : 1);
            o.shots = config.shots;
            o.eta = config.eta;
            o.max_iters = config.max_iters;
            o.threshold = config.threshold;
            return o;
        };

        std::vector<std::vector<TrajectoryRecord>> results(cases.size());
        if (config.parallel && cases.size() > 1) {
            std::vector<std::future<std::vector<TrajectoryRecord>>> jobs;
            for (Case c : cases) {
                jobs.push_back(std::async(std::launch::async, [&, c] { return run_case(experiment, c, options_for(c)); }));
            }
            for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i].get();
        } else {
            for (std::size_t i = 0; i < cases.size(); ++i) results[i] = run_case(experiment, cases[i], options_for(cases[i]));
        }

        bool all_converged = true;
        for (std::size_t i = 0; i < cases.size(); ++i) {
            all_converged = all_converged && trajectory_converged(experiment, results[i], options_for(cases[i]));
        }

        if (!config.out.empty()) {
            Sink sink(config.out, out);
            if (config.format == "json") {
                json doc = json::object();
                for (std::size_t i = 0; i < cases.size(); ++i) {
                    json rows = json::array();
                    for (const auto& r : results[i]) {
                        json row = {{"iter", r.iter}, {"x", point_json(r.point)}, {"f", r.f_value},
                                    {"overlap", r.overlap}};
                        if (r.success_prob) row["success_prob"] = *r.success_prob;
                        if (r.fidelity) row["fidelity"] = *r.fidelity;
                        rows.push_back(row);
                    }
                    doc[case_name(cases[i])] = rows;
                }
                *sink << doc.dump(2) << '\n';
            } else {
                write_trajectory_csv_header(*sink);
                for (std::size_t i = 0; i < cases.size(); ++i) write_trajectory_csv(*sink, cases[i], results[i]);
            }
        }

        out << std::setprecision(6) << std::fixed;
        for (std::size_t i = 0; i < cases.size(); ++i) {
            out << case_name(cases[i]) << " overlaps:";
            for (const auto& r : results[i]) out << ' ' << r.overlap;
            out << '\n';
        }
        out.unsetf(std::ios::floatfield);
        return all_converged ? kConverged : kBudgetExhausted;
    });
}

int cmd_mds(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (!(config.eta > 0.0)) throw ParseError("eta must be positive");
        if (config.max_iters < 1) throw ParseError("max-iters must be >= 1");
        if (config.dims < 1) throw ParseError("dims must be >= 1");

        RMatrix delta;
        std::optional<RMatrix> weights;
        std::optional<RMatrix> x0;
        if (!config.problem.empty()) {
            json doc;
            try {
                doc = json::parse(read_file(config.problem));
            } catch (const json::exception& e) {
                throw ParseError(std::string("invalid JSON: ") + e.what());
            }
            delta = matrix_from_json(doc.at("delta"), "delta");
            if (doc.contains("weights")) weights = matrix_from_json(doc.at("weights"), "weights");
            if (doc.contains("x0")) x0 = matrix_from_json(doc.at("x0"), "x0");
        } else if (!config.delta.empty()) {
            delta = load_matrix(config.delta, "delta");
        } else {
            throw ParseError("mds needs --problem or --delta");
        }
        if (!config.weights.empty()) weights = load_matrix(config.weights, "weights");
        if (!config.x0.empty()) x0 = load_matrix(config.x0, "x0");

        const auto d = Dissimilarities::from_matrix(delta);
        const auto w = weights ? Weights::from_matrix(*weights) : Weights::uniform(d.size());
        Configuration start;
        if (x0) {
            start = *x0;
        } else {
            std::mt19937_64 rng(config.seed);
            std::normal_distribution<double> normal(0.0, 1.0);
            start.resize(d.size(), config.dims);
            for (Eigen::Index i = 0; i < start.size(); ++i) start.data()[i] = normal(rng);
        }

        const auto steps = mds_optimize(d, w, start, {config.eta, config.max_iters, config.tol});
        Sink sink(config.out, out);
        *sink << "iter,stress\n";
        for (const auto& s : steps) *sink << s.iter << ',' << s.stress << '\n';

        json coords = {{"iterations", steps.back().iter},
                       {"stress", steps.back().stress},
                       {"coordinates", matrix_json(steps.back().config)}};
        if (config.demo_lcu) {
            const auto demo = mds_quantum_column_step(d, w, steps.front().config, 0, config.eta);
            coords["lcu_demo"] = {{"column", 0},
                                  {"pauli_terms", demo.num_terms},
                                  {"quantum", point_json(demo.quantum)},
                                  {"classical", point_json(demo.classical)},
                                  {"success_prob", demo.success_prob}};
        }
        Sink coord_sink(config.coords, out);
        *coord_sink << coords.dump(2) << '\n';
        const bool exhausted = steps.back().iter == config.max_iters;
        return exhausted ? kBudgetExhausted : kConverged;
    });
}

int cmd_estimate_coeffs(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (auto msg = validate(config)) throw ParseError(*msg);
        if (config.problem.empty()) throw ParseError("--problem is required");
        const Problem problem = load_problem(config.problem);
        const Point x = resolve_x0(config, problem);
        const Mode mode = parse_mode(config.mode);
        const CoefficientSet exact = coefficients(problem.decomp, x);
        const BEstimate sampled = estimate_b(problem.decomp, x, mode, config.shots, config.seed);
        const int p = problem.decomp.order();

        Sink sink(config.out, out);
        if (config.format == "json") {
            json rows = json::array();
            for (int m = 0; m < problem.decomp.num_factors(); ++m) {
                json row = {{"m", m}, {"alpha", m / p}, {"j", m % p}, {"b", exact.b(m / p, m % p)},
                            {"c", exact.c[m]}};
                if (mode == Mode::Sampled) row["b_sampled"] = sampled.b(m / p, m % p);
                rows.push_back(row);
            }
            *sink << json{{"factors", rows},
                          {"M", std::vector<double>(exact.big_m.begin(), exact.big_m.end())},
                          {"beta", exact.total_weight}}
                         .dump(2)
                  << '\n';
            return static_cast<int>(kConverged);
        }

        *sink << "m,alpha,j,b_exact,c";
        if (mode == Mode::Sampled) *sink << ",b_sampled,abs_dev,hit_freq,hit_prob,four_sigma,within";
        *sink << '\n';
        for (int m = 0; m < problem.decomp.num_factors(); ++m) {
            const int a = m / p;
            const int j = m % p;
            *sink << m << ',' << a << ',' << j << ',' << exact.b(a, j) << ',' << exact.c[m];
            if (mode == Mode::Sampled) {
                const double prob = sampled.exact_hit_prob(a, j);
                const double shots = sampled.branch_shots(a, j);
                const double bound = 4.0 * std::sqrt(prob * (1.0 - prob) / std::max(shots, 1.0));
                const double dev = std::abs(sampled.hit_frequency(a, j) - prob);
                *sink << ',' << sampled.b(a, j) << ',' << std::abs(sampled.b(a, j) - exact.b(a, j)) << ','
                      << sampled.hit_frequency(a, j) << ',' << prob << ',' << bound << ','
                      << (dev <= bound + 1e-12 ? "yes" : "no");
            }
            *sink << '\n';
        }
        for (Eigen::Index a = 0; a < exact.big_m.size(); ++a) *sink << "# M[" << a << "]=" << exact.big_m[a] << '\n';
        *sink << "# beta=" << exact.total_weight << '\n';
        return static_cast<int>(kConverged);
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum gradient descent on the unit sphere: LCU simulation, experiment repro and MDS"};
    app.require_subcommand(1);
    RunConfig config;

    const auto common = [&](CLI::App* sub) {
        sub->add_option("--eta", config.eta, "learning rate");
        sub->add_option("--threshold", config.threshold, "stop when |x_{t+1} - x_t| <= threshold");
        sub->add_option("--max-iters", config.max_iters, "iteration budget");
        sub->add_option("--mode", config.mode, "exact or sampled")->check(CLI::IsMember({"exact", "sampled"}));
        sub->add_option("--shots", config.shots, "shots per sampled measurement");
        sub->add_option("--seed", config.seed, "RNG seed");
        sub->add_option("--noise", config.noise_eps, "depolarizing strength in [0, 1]");
        sub->add_option("--out", config.out, "output file (stdout when omitted)");
        sub->add_option("--format", config.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };

    auto* optimize_cmd = app.add_subcommand("optimize", "run the gradient-descent loop on a problem file");
    common(optimize_cmd);
    optimize_cmd->add_option("--problem", config.problem, "problem JSON")->required();
    optimize_cmd->add_option("--x0", config.x0, "starting point, comma separated");
    optimize_cmd->add_option("--summary", config.summary, "summary JSON path (default <out>.summary.json)");
    optimize_cmd->add_option("--write-problem", config.write_problem, "re-emit the parsed problem as JSON");

    auto* repro_cmd = app.add_subcommand("repro", "reproduce the two-qubit experiment trajectories");
    common(repro_cmd);
    repro_cmd->add_option("case,--case", config.case_name, "s1, s2 or both");
    repro_cmd->add_flag("--parallel", config.parallel, "run cases concurrently");

    auto* mds_cmd = app.add_subcommand("mds", "multidimensional scaling by gradient steps");
    mds_cmd->add_option("--problem", config.problem, "JSON with delta, optional weights and x0");
    mds_cmd->add_option("--delta", config.delta, "dissimilarities (CSV or JSON rows)");
    mds_cmd->add_option("--weights", config.weights, "weights (CSV or JSON rows)");
    mds_cmd->add_option("--x0", config.x0, "initial configuration (CSV or JSON rows)");
    mds_cmd->add_option("--dims", config.dims, "embedding dimension for random starts");
    mds_cmd->add_option("--eta", config.eta, "step size");
    mds_cmd->add_option("--max-iters", config.max_iters, "iteration budget");
    mds_cmd->add_option("--tol", config.tol, "stop when stress improves by less than this");
    mds_cmd->add_option("--seed", config.seed, "seed for the random start");
    mds_cmd->add_option("--out", config.out, "stress trace CSV");
    mds_cmd->add_option("--coords", config.coords, "final coordinates JSON");
    mds_cmd->add_flag("--demo-lcu", config.demo_lcu, "also push column 0 through the LCU circuit");

    auto* coeffs_cmd = app.add_subcommand("estimate-coeffs", "print b, M, c and beta at a point");
    common(coeffs_cmd);
    coeffs_cmd->add_option("--problem", config.problem, "problem JSON")->required();
    coeffs_cmd->add_option("--x0", config.x0, "evaluation point, comma separated");

    // mds uses its own defaults
    mds_cmd->preparse_callback([&](std::size_t) {
        config.eta = 0.05;
        config.max_iters = 200;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        app.exit(e, out, err);
        return kConverged;
    } catch (const CLI::Error& e) {
        app.exit(e, out, err);
        return kInputError;
    }

    if (optimize_cmd->parsed()) return cmd_optimize(config, out, err);
    if (repro_cmd->parsed()) {
        if (repro_cmd->count("--max-iters") == 0) config.max_iters = ExperimentConfig::standard().max_iters;
        if (repro_cmd->count("--eta") == 0) config.eta = ExperimentConfig::standard().eta;
        return cmd_repro(config, out, err);
    }
    if (mds_cmd->parsed()) return cmd_mds(config, out, err);
    return cmd_estimate_coeffs(config, out, err);
}

}  // namespace qgd::cli
