// Copyright 2026 The feasmass Authors
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


#include "feasmass/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <ostream>

#include <CLI11.hpp>

#include "feasmass/bounds.hpp"
#include "feasmass/errors.hpp"
#include "feasmass/experiments.hpp"
#include "feasmass/io.hpp"
#include "feasmass/verify.hpp"

namespace feasmass {

namespace {

struct Problem {
    ProblemInstance instance;
    DiagonalCost cost;
};

std::filesystem::path data_dir() {
    if (const char *env = std::getenv("FEASMASS_DATA_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return FEASMASS_DATA_DIR;
}

std::filesystem::path resolve_instance_path(const std::string &spec) {
    std::filesystem::path p(spec);
    if (std::filesystem::exists(p)) {
        return p;
    }
    for (auto candidate : {data_dir() / spec, data_dir() / (spec + ".txt")}) {
        if (std::filesystem::exists(candidate)) {
            return candidate;
        }
    }
    throw IoError("instance not found: " + spec);
}

/// "1.5", "pi", "2pi", "pi/4", "3pi/8".
double parse_angle(const std::string &text) {
    auto pos = text.find("pi");
    if (pos == std::string::npos) {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) {
            throw PreconditionError("bad angle '" + text + "'");
        }
        return v;
    }
    double scale = pos == 0 ? 1.0 : std::stod(text.substr(0, pos));
    std::string rest = text.substr(pos + 2);
    if (!rest.empty()) {
        if (rest[0] != '/') {
            throw PreconditionError("bad angle '" + text + "'");
        }
        scale /= std::stod(rest.substr(1));
    }
    return scale * std::numbers::pi;
}

std::pair<double, double> parse_range(const std::string &text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw PreconditionError("range must look like LO:HI, got '" + text + "'");
    }
    return {parse_angle(text.substr(0, colon)), parse_angle(text.substr(colon + 1))};
}

std::pair<int, int> parse_grid(const std::string &text) {
    auto x = text.find('x');
    if (x == std::string::npos) {
        throw PreconditionError("grid must look like GxB, got '" + text + "'");
    }
    int g = std::stoi(text.substr(0, x));
    int b = std::stoi(text.substr(x + 1));
    if (g < 1 || b < 1) {
        throw PreconditionError("grid counts must be >= 1");
    }
    return {g, b};
}

std::string grid_text(const GridSpec &g) {
    return std::to_string(g.gamma_count) + "x" + std::to_string(g.beta_count) + " gamma[" + format_double(g.gamma_lo) +
           "," + format_double(g.gamma_hi) + "] beta[" + format_double(g.beta_lo) + "," + format_double(g.beta_hi) +
           "]";
}

/// Raw option values before they are folded into a RunConfig.
struct Options {
    std::string instance;
    int n = 0;
    std::int64_t max_entry = 5;
    std::uint64_t instance_seed = 1;
    std::optional<std::int64_t> penalty;
    bool raw_tour = false;
    std::string grid;
    std::string range_gamma;
    std::string range_beta;
    std::uint64_t shots = 500000;
    std::uint64_t seed = 1;
    int depth = 0;
    bool normalized = false;
    std::string precision = "f64";
    std::string out = ".";
    std::vector<std::string> betas;
    std::vector<std::string> gammas;
    std::vector<double> thresholds;
    std::string method = "ce";
};

void add_problem_options(CLI::App *app, Options &o) {
    app->add_option("--instance", o.instance, "Instance file, or a bundled name such as wi3");
    app->add_option("--n", o.n, "Synthetic instance size")->check(CLI::Range(1, 8));
    app->add_option("--max-entry", o.max_entry, "Largest synthetic distance")->check(CLI::PositiveNumber);
    app->add_option("--instance-seed", o.instance_seed, "Synthetic instance seed");
    app->add_option("--penalty", o.penalty, "Penalty weight A (default n*max(dist)+1)");
    app->add_flag("--raw-tour", o.raw_tour, "Drop the one-hot penalty and use the bare tour form");
}

Problem load_problem(const Options &o, RunConfig &config) {
    if (o.instance.empty() == (o.n == 0)) {
        throw PreconditionError("give exactly one of --instance or --n");
    }
    ProblemInstance inst;
    if (!o.instance.empty()) {
        inst = load_qoptlib_instance(resolve_instance_path(o.instance), o.penalty);
        config.instance = o.instance;
    } else {
        inst = make_synthetic_instance(o.n, o.max_entry, o.instance_seed);
        if (o.penalty) {
            inst.penalty_weight = *o.penalty;
        }
        config.synthetic_n = o.n;
        config.synthetic_max_entry = o.max_entry;
    }
    config.include_penalty = !o.raw_tour;
    auto cost = build_cost(inst, !o.raw_tour);
    return Problem{std::move(inst), std::move(cost)};
}

std::string instance_label(const ProblemInstance &inst, const Options &o) {
    if (!o.instance.empty()) {
        return inst.name;
    }
    return "synthetic-n" + std::to_string(o.n) + "-max" + std::to_string(o.max_entry) + "-seed" +
           std::to_string(o.instance_seed);
}

std::vector<double> angles_or(const std::vector<std::string> &given, std::vector<double> fallback) {
    if (given.empty()) {
        return fallback;
    }
    std::vector<double> v;
    for (const auto &s : given) {
        v.push_back(parse_angle(s));
    }
    return v;
}

int cmd_baseline(const Options &o, std::ostream &out) {
    RunConfig config;
    config.command = "baseline";
    auto problem = load_problem(o, config);
    int n = problem.instance.n;
    auto t = transfer_factor(n);
    auto row = [&](const std::string &key, const std::string &value) { out << key << ' ' << value << '\n'; };
    row("instance", instance_label(problem.instance, o));
    row("n", std::to_string(n));
    row("qubits", std::to_string(n * n));
    row("feasible_strings", std::to_string(static_cast<long long>(std::llround(std::exp(ln_factorial(n))))));
    row("penalty_weight", std::to_string(problem.instance.penalty_weight));
    row("cost_min", std::to_string(problem.cost.min_value()));
    row("cost_max", std::to_string(problem.cost.max_value()));
    row("cost_spread", std::to_string(problem.cost.spread()) + (problem.cost.spread_is_exact() ? "" : " (bound)"));
    row("ln_baseline", format_double(uniform_baseline(n).ln()));
    row("baseline", format_double(baseline_probability(n)));
    row("ln_transfer_factor", format_double(t.exact.ln()));
    row("transfer_factor", format_double(t.exact.linear()));
    row("ln_stirling_floor", format_double(t.stirling_floor.ln()));
    row("stirling_floor_holds", t.floor_holds() ? "yes" : "no");
    std::vector<int> depths{1};
    for (int p : {n / 2, n}) {
        if (p > depths.back()) {
            depths.push_back(p);
        }
    }
    for (int p : depths) {
        row("ln_lightcone_1d_p" + std::to_string(p), format_double(lightcone_1d_bound(n, p).ln()));
    }
    return kExitOk;
}

struct RunOutput {
    std::vector<ExperimentResult> records;
};

ExperimentResult new_record(const std::string &experiment, const std::string &instance, const RunConfig &config) {
    ExperimentResult r;
    r.experiment = experiment;
    r.instance = instance;
    r.seed = config.seed;
    return r;
}

void fail_contract(ExperimentResult &r, const std::string &why) {
    r.contract_ok = false;
    if (!r.violation.empty()) {
        r.violation += "; ";
    }
    r.violation += why;
}

int cmd_run(const std::string &experiment, const Options &o, bool grid_given, std::ostream &out) {
    auto started = std::chrono::steady_clock::now();
    RunConfig config;
    config.command = "run";
    config.experiment = experiment;
    auto problem = load_problem(o, config);
    const auto &cost = problem.cost;
    int n = problem.instance.n;
    std::string label = instance_label(problem.instance, o);

    GridSpec grid;
    if (experiment == "depth" && !grid_given) {
        grid.gamma_count = grid.beta_count = 6;
    }
    if (!o.grid.empty()) {
        std::tie(grid.gamma_count, grid.beta_count) = parse_grid(o.grid);
    }
    if (!o.range_gamma.empty()) {
        std::tie(grid.gamma_lo, grid.gamma_hi) = parse_range(o.range_gamma);
    }
    if (!o.range_beta.empty()) {
        std::tie(grid.beta_lo, grid.beta_hi) = parse_range(o.range_beta);
    }
    grid.validate();
    config.grid = grid;
    config.shots = o.shots;
    config.seed = o.seed;
    config.depth = o.depth > 0 ? o.depth : (experiment == "depth" ? 2 : 1);
    config.normalized_mixer = o.normalized;
    config.precision = parse_precision(o.precision);
    config.method = o.method;
    config.out_dir = o.out;
    const double pi = std::numbers::pi;
    std::vector<double> default_betas{0.3, 0.7, 1.1};
    if (experiment == "l4") {
        default_betas = {0, pi / 8, pi / 4, 3 * pi / 8};
    } else if (experiment == "twirl") {
        default_betas = {0.3};
    }
    config.betas = angles_or(o.betas, default_betas);
    config.gammas = angles_or(o.gammas, {0.4});
    config.thresholds = o.thresholds.empty() ? std::vector<double>{2, 4, 9} : o.thresholds;
    std::string hash = config.hash();
    std::string mixer = config.normalized_mixer ? "normalized" : "unnormalized";

    std::vector<ExperimentResult> records;
    auto base = [&](const std::string &name) {
        auto r = new_record(name, label, config);
        r.params.emplace_back("grid", grid_text(grid));
        return r;
    };

    if (experiment == "transfer") {
        auto t = parameter_transfer(cost, grid, config.precision);
        auto r = base("transfer");
        r.params.emplace_back("mixer", "unnormalized");
        r.params.emplace_back("precision", to_string(config.precision));
        r.add("p_generic_max", t.p_generic_max);
        r.add("gamma_star", t.generic.best_point().gamma);
        r.add("beta_star", t.generic.best_point().beta);
        r.add("p_ce", t.p_ce);
        r.add("ratio", t.ratio);
        r.add("analytic_factor", t.analytic_factor.linear());
        r.add("ln_ratio", std::log(t.ratio), true);
        r.add("ln_analytic_factor", t.analytic_factor.ln(), true);
        if (!t.holds) {
            fail_contract(r, "ratio " + format_double(t.ratio) + " below analytic factor " +
                                 format_double(t.analytic_factor.linear()));
        }
        write_surface_csv(config.out_dir / ("surface-generic-" + hash + ".csv"), t.generic.surface, config);
        records.push_back(r);
    } else if (experiment == "avg" || experiment == "markov") {
        for (double beta : config.betas) {
            auto masses = lattice_feasible_masses(cost, beta, minimum_lattice_size(cost));
            double baseline = baseline_probability(n);
            double mean = 0;
            for (double m : masses) {
                mean += m;
            }
            mean /= static_cast<double>(masses.size());
            if (experiment == "avg") {
                auto r = base("avg");
                r.params.emplace_back("beta", format_double(beta));
                double cross = degenerate_cross_term(cost, beta);
                r.add("lattice_size", static_cast<double>(masses.size()));
                r.add("mean", mean);
                r.add("baseline", baseline);
                r.add("deviation", mean - baseline);
                r.add("degenerate_cross_term", cross);
                r.add("residual_after_cross_term", mean - baseline - cross);
                if (std::abs(mean - baseline) > 1e-10) {
                    fail_contract(r, "grid mean " + format_double(mean) + " differs from baseline " +
                                         format_double(baseline) + " by " + format_double(mean - baseline));
                }
                records.push_back(r);
            } else {
                for (double t : config.thresholds) {
                    auto r = base("markov");
                    r.params.emplace_back("beta", format_double(beta));
                    r.params.emplace_back("t", format_double(t));
                    auto hits = std::count_if(masses.begin(), masses.end(),
                                              [&](double m) { return m >= t * baseline; });
                    double fraction = static_cast<double>(hits) / static_cast<double>(masses.size());
                    r.add("lattice_size", static_cast<double>(masses.size()));
                    r.add("fraction", fraction);
                    r.add("bound", 1 / t);
                    r.add("grid_mean_over_baseline", mean / baseline);
                    if (t > 1 && fraction > 1 / t + 1e-12) {
                        fail_contract(r, "fraction " + format_double(fraction) + " exceeds 1/t");
                    }
                    records.push_back(r);
                }
            }
        }
    } else if (experiment == "l4") {
        for (const auto &pt : l4_sweep(cost, config.betas)) {
            auto r = base("l4");
            r.params.emplace_back("beta", format_double(pt.beta));
            r.add("mean_fourth_moment", pt.mean_fourth_moment);
            r.add("envelope", pt.envelope);
            if (pt.mean_fourth_moment > pt.envelope + 1e-9) {
                fail_contract(r, "mean fourth moment above envelope");
            }
            records.push_back(r);
        }
    } else if (experiment == "grid") {
        Method method = parse_method(config.method);
        auto s = method == Method::generic ? grid_search_generic(cost, grid, config.precision)
                                           : grid_search_ce(cost, grid, config.normalized_mixer);
        auto r = base("grid");
        r.params.emplace_back("method", to_string(method));
        if (method == Method::ce) {
            r.params.emplace_back("mixer", mixer);
        }
        r.add("p_max", s.best_point().p_feasible);
        r.add("gamma_best", s.best_point().gamma);
        r.add("beta_best", s.best_point().beta);
        r.add("p_min", s.worst_point().p_feasible);
        r.add("gamma_worst", s.worst_point().gamma);
        r.add("beta_worst", s.worst_point().beta);
        r.add("baseline", baseline_probability(n));
        write_surface_csv(config.out_dir / ("surface-" + to_string(method) + "-" + hash + ".csv"), s.surface,
                          config);
        records.push_back(r);
    } else if (experiment == "histogram") {
        Method method = parse_method(config.method);
        auto s = method == Method::generic ? grid_search_generic(cost, grid, config.precision)
                                           : grid_search_ce(cost, grid, config.normalized_mixer);
        const std::pair<const char *, const SurfacePoint *> sites[] = {{"argmax", &s.best_point()},
                                                                         {"argmin", &s.worst_point()}};
        for (const auto &[site, pt] : sites) {
            auto h = feasible_histogram(cost, method, pt->gamma, pt->beta, config.shots, config.seed,
                                        config.normalized_mixer, config.precision);
            auto r = base("histogram");
            r.params.emplace_back("method", to_string(method));
            r.params.emplace_back("site", site);
            if (method == Method::ce) {
                r.params.emplace_back("mixer", mixer);
            }
            r.add("gamma", pt->gamma);
            r.add("beta", pt->beta);
            r.add("shots", static_cast<double>(h.shots));
            r.add("feasible_shots", static_cast<double>(h.feasible_shots));
            r.add("fraction", h.fraction);
            r.add("p_statevector", h.p_statevector);
            r.add("sigma", h.sigma);
            double distinct = 0;
            for (const auto &c : h.counts) {
                distinct += c.second > 0 ? 1 : 0;
            }
            r.add("distinct_feasible", distinct);
            if (!h.consistent) {
                fail_contract(r, "sampled fraction outside 5 sigma of the statevector value");
            }
            write_histogram_csv(config.out_dir / ("histogram-" + to_string(method) + "-" + site + "-" + hash + ".csv"),
                                h.counts, n * n, config);
            records.push_back(r);
        }
    } else if (experiment == "depth") {
        auto points = ce_depth_sweep(cost, grid, config.depth, config.normalized_mixer);
        double previous = -1;
        for (const auto &pt : points) {
            auto r = base("depth");
            r.params.emplace_back("mixer", mixer);
            r.params.emplace_back("depth", std::to_string(pt.depth));
            std::string gs;
            std::string bs;
            for (int k = 0; k < pt.depth; k++) {
                gs += (k ? " " : "") + format_double(pt.schedule.gammas[k]);
                bs += (k ? " " : "") + format_double(pt.schedule.betas[k]);
            }
            r.params.emplace_back("gammas", gs);
            r.params.emplace_back("betas", bs);
            r.add("best_subspace_feasible_mass", pt.best);
            if (pt.best < previous) {
                fail_contract(r, "best feasible mass decreased with depth");
            }
            previous = pt.best;
            records.push_back(r);
        }
    } else if (experiment == "twirl") {
        double gamma = config.gammas.front();
        double beta = config.betas.front();
        auto e = twirl_existence_experiment(cost, gamma, beta, config.normalized_mixer, config.seed);
        auto r = base("twirl");
        r.params.emplace_back("mixer", mixer);
        r.params.emplace_back("gamma", format_double(gamma));
        r.params.emplace_back("beta", format_double(beta));
        r.params.emplace_back("mode", e.twirl.exact ? "exact" : "sampled");
        r.add("mean", e.twirl.mean);
        r.add("target", e.target);
        r.add("permutations", static_cast<double>(e.twirl.permutations));
        r.add("best_relabeling_probability", e.relabeling.probability);
        if (e.twirl.exact && std::abs(e.twirl.mean - e.target) > 1e-12) {
            fail_contract(r, "twirl mean differs from 1/n^n");
        }
        if (e.twirl.exact && e.relabeling.probability < e.target) {
            fail_contract(r, "best relabeling below 1/n^n");
        }
        records.push_back(r);
    } else {
        throw PreconditionError("unknown experiment '" + experiment + "'");
    }

    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::vector<std::string> lines;
    bool ok = true;
    for (auto &r : records) {
        r.wall_seconds = seconds;
        lines.push_back(experiment_result_json(r, config));
        ok = ok && r.contract_ok;
        out << r.experiment;
        for (const auto &[k, v] : r.params) {
            if (k != "grid") {
                out << ' ' << k << '=' << v;
            }
        }
        for (const auto &m : r.metrics) {
            out << ' ' << m.name << '=' << format_double(m.value);
        }
        out << (r.contract_ok ? " ok" : " VIOLATION: " + r.violation) << '\n';
    }
    write_json_lines(config.out_dir / (experiment + "-" + hash + ".jsonl"), lines);
    out << "config_hash " << hash << "\nwall_seconds " << format_double(seconds) << '\n';
    return ok ? kExitOk : kExitContract;
}

int cmd_verify(const std::string &suite, std::ostream &out) {
    auto lines = run_verify_suite(suite);
    std::size_t counts[3] = {0, 0, 0};
    for (const auto &l : lines) {
        out << to_string(l.status) << ' ' << l.suite << '/' << l.name << ' ' << l.detail << '\n';
        counts[static_cast<int>(l.status)]++;
    }
    out << "summary pass=" << counts[0] << " fail=" << counts[1] << " warn=" << counts[2] << '\n';
    return all_passed(lines) ? kExitOk : kExitContract;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Feasible-mass experiments for generic and constraint-enhanced QAOA on TSP encodings"};
    app.require_subcommand(1);
    Options o;

    auto *baseline = app.add_subcommand("baseline", "Print the uniform baseline and bound table for an instance");
    add_problem_options(baseline, o);

    std::string experiment;
    auto *run = app.add_subcommand("run", "Run an experiment and write JSON-lines and CSV results");
    run->add_option("experiment", experiment, "transfer, avg, markov, l4, grid, histogram, depth or twirl")
        ->required()
        ->check(CLI::IsMember({"transfer", "avg", "markov", "l4", "grid", "histogram", "depth", "twirl"}));
    add_problem_options(run, o);
    auto *grid_opt = run->add_option("--grid", o.grid, "Grid size GxB (default 10x10; 6x6 for depth)");
    run->add_option("--range-gamma", o.range_gamma, "Gamma range LO:HI (default 0:pi)");
    run->add_option("--range-beta", o.range_beta, "Beta range LO:HI (default 0:pi)");
    run->add_option("--shots", o.shots, "Shots per histogram");
    run->add_option("--seed", o.seed, "Sampling seed");
    run->add_option("--depth", o.depth, "Maximum depth for the depth sweep")->check(CLI::PositiveNumber);
    run->add_option("--normalized-mixer", o.normalized, "Use the 1/(n-1) block mixer");
    run->add_option("--precision", o.precision, "Statevector precision")->check(CLI::IsMember({"f64", "f32"}));
    run->add_option("--out", o.out, "Output directory");
    run->add_option("--beta", o.betas, "Mixer angle(s); accepts forms like 0.7, pi/4")->delimiter(',');
    run->add_option("--gamma", o.gammas, "Cost angle(s)")->delimiter(',');
    run->add_option("--t", o.thresholds, "Markov thresholds")->delimiter(',');
    run->add_option("--method", o.method, "generic or ce")->check(CLI::IsMember({"generic", "ce"}));

    std::string suite;
    auto *verify = app.add_subcommand("verify", "Run an invariant battery");
    verify->add_option("suite", suite, "harmonic, twirl, bounds or all")
        ->required()
        ->check(CLI::IsMember({"harmonic", "twirl", "bounds", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (baseline->parsed()) {
            return cmd_baseline(o, out);
        }
        if (run->parsed()) {
            return cmd_run(experiment, o, grid_opt->count() > 0, out);
        }
        return cmd_verify(suite, out);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace feasmass
