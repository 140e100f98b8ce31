// mlomax: command-line front end for the Lomax prior toolkit.
//
// Exit status: 0 on success, 1 on runtime/I-O failure or a failed tolerance
// check, 2 on invalid arguments. CLI11 parse errors use CLI11's own codes.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mlomax/bregman.hpp"
#include "mlomax/experiments.hpp"
#include "mlomax/io.hpp"
#include "mlomax/lomax.hpp"
#include "mlomax/mcmc.hpp"
#include "mlomax/penalty.hpp"
#include "mlomax/posterior.hpp"

namespace fs = std::filesystem;
using namespace mlomax;

namespace {

constexpr std::uint64_t default_seed = 1729;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string default_out_dir() {
    const char* env = std::getenv("MLOMAX_OUT_DIR");
    return env && *env ? env : ".";
}

fs::path prepare_out_dir(const std::string& dir) {
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

// ---- prior ----------------------------------------------------------------

struct PriorArgs {
    int dim = 1;
    double k = 1.0;
    double a = 1.0;
    std::vector<int> folded; // one-based
    int grid = 0;
    double range = 5.0;
    int samples = 0;
    std::uint64_t seed = default_seed;
    std::string out = default_out_dir();
};

int cmd_prior(const PriorArgs& args) {
    if (args.dim < 1) throw UsageError("--dim must be at least 1");
    if (args.grid == 0 && args.samples == 0) throw UsageError("request --grid and/or --samples");
    if (args.grid < 0 || args.samples < 0) throw UsageError("--grid and --samples must be non-negative");
    if (!(args.range > 0.0)) throw UsageError("--range must be positive");
    std::vector<int> folded;
    for (int f : args.folded) {
        if (f < 1 || f > args.dim) throw UsageError("--folded indices are one-based and at most --dim");
        folded.push_back(f - 1);
    }
    const LomaxSpecd spec(args.dim, args.k, args.a, folded);
    const fs::path out = prepare_out_dir(args.out);

    if (args.grid > 0) {
        if (args.dim > 2) throw UsageError("--grid supports --dim 1 or 2");
        const int n = args.grid;
        auto axis = [&](int coord, int i) {
            const double lo = spec.is_folded(coord) ? -args.range : 0.0;
            return lo + (i + 0.5) * (args.range - lo) / n;
        };
        const Eigen::Index rows = args.dim == 1 ? n : static_cast<Eigen::Index>(n) * n;
        Matrix table(rows, args.dim + 1);
        Eigen::Index r = 0;
        if (args.dim == 1) {
            for (int i = 0; i < n; ++i, ++r) {
                const Vector x = Vector::Constant(1, axis(0, i));
                table.row(r) << x(0), density(spec, x);
            }
            write_csv((out / "prior_grid.csv").string(), {"x", "density"}, table);
        } else {
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j, ++r) {
                    const Vector x{{axis(0, i), axis(1, j)}};
                    table.row(r) << x(0), x(1), density(spec, x);
                }
            }
            write_csv((out / "prior_grid.csv").string(), {"x", "y", "density"}, table);
        }
        std::cout << "wrote " << (out / "prior_grid.csv").string() << " (" << rows << " rows)\n";
    }
    if (args.samples > 0) {
        std::mt19937_64 rng(args.seed);
        Matrix draws(args.samples, args.dim);
        for (int i = 0; i < args.samples; ++i) draws.row(i) = sample(spec, rng).transpose();
        std::vector<std::string> header;
        for (int j = 1; j <= args.dim; ++j) header.push_back("x" + std::to_string(j));
        write_csv((out / "prior_samples.csv").string(), header, draws);
        std::cout << "wrote " << (out / "prior_samples.csv").string() << " (" << args.samples << " rows)\n";
    }
    return 0;
}

// ---- score-check ----------------------------------------------------------

struct ScoreArgs {
    std::string field = "lomax";
    int k = 1;
    int dim = 2;
    double a = 1.0;
    int points = 20;
    double lo = 0.1;
    double hi = 3.0;
    double tol = 1e-5;
    double separation = 1e-2;
};

int cmd_score_check(const ScoreArgs& args) {
    if (args.k < 1 || args.k % 2 == 0) {
        throw UsageError("--k must be an odd positive integer (the generator uses signed integer powers), got " +
                         std::to_string(args.k));
    }
    const AlphaSpec alpha(args.k, args.dim);
    const bool lomax = args.field == "lomax";
    const DensityField<double> field =
        lomax ? lomax_field(LomaxSpecd(args.dim, args.k, args.a)) : exponential_field<double>(args.dim);
    const auto grid = score_grid(args.dim, args.points, args.lo, args.hi);
    const auto report = score_on_grid(alpha, field, grid);

    std::cout << std::left << std::setw(6) << "point" << std::setw(12 * args.dim + 2) << "x" << "|S|\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::ostringstream coords;
        coords << std::fixed << std::setprecision(5);
        for (int j = 0; j < args.dim; ++j) coords << std::setw(12) << grid[i](j);
        std::cout << std::left << std::setw(6) << i + 1 << coords.str() << std::scientific << std::setprecision(3)
                  << "  " << report.abs_scores[i] << std::defaultfloat << '\n';
    }
    std::cout << "field=" << args.field << " k=" << args.k << " d=" << args.dim << " max |S| = " << std::scientific
              << report.max_abs << " min |S| = " << report.min_abs << std::defaultfloat << '\n';
    if (lomax) {
        const bool pass = report.max_abs < args.tol;
        std::cout << (pass ? "PASS" : "FAIL") << " (tolerance " << args.tol << ")\n";
        return pass ? 0 : 1;
    }
    const bool separated = report.min_abs > args.separation;
    std::cout << (separated ? "NONZERO as expected" : "FAIL: score unexpectedly small") << " (threshold "
              << args.separation << ")\n";
    return separated ? 0 : 1;
}

// ---- fit ------------------------------------------------------------------

struct FitArgs {
    std::string model;
    std::string prior = "lomax";
    std::string data;
    std::string column;
    std::string response = "y";
    double k = 1.0;
    double a = 1.0;
    double g = 500.0;
    double c = 1e6;
    int iterations = 0;
    int burn_in = -1;
    int thin = 0;
    bool full_scale = false;
    std::uint64_t seed = default_seed;
    std::string out = default_out_dir();
};

Dataset load_dataset(Model model, const FitArgs& args) {
    Dataset data;
    const std::string builtin = "builtin:";
    if (args.data.rfind(builtin, 0) == 0) {
        if (model == Model::linreg) throw UsageError("builtin datasets are univariate");
        const auto values = builtin_dataset(args.data.substr(builtin.size()));
        data.values = Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
        return data;
    }
    const CsvTable table = read_csv(args.data);
    if (table.values.rows() == 0) throw std::runtime_error("data file '" + args.data + "' has no rows");
    if (model == Model::linreg) {
        const Eigen::Index yc = table.column(args.response);
        data.y = table.values.col(yc);
        data.X.resize(table.values.rows(), table.values.cols() - 1);
        for (Eigen::Index j = 0, out = 0; j < table.values.cols(); ++j) {
            if (j != yc) data.X.col(out++) = table.values.col(j);
        }
        if (data.X.cols() < 1) throw UsageError("linreg data needs at least one covariate column");
    } else {
        const Eigen::Index col = args.column.empty() ? 0 : table.column(args.column);
        data.values = table.values.col(col);
    }
    return data;
}

int cmd_fit(const FitArgs& args) {
    const Model model = parse_model(args.model);
    PriorChoice prior;
    prior.kind = args.prior;
    prior.lomax_k = args.k;
    prior.lomax_a = args.a;
    prior.g = args.g;
    prior.c = args.c;
    const Dataset data = load_dataset(model, args);

    ChainConfig config = args.full_scale ? full_chain_preset() : short_chain_preset();
    if (args.iterations > 0) config.iterations = args.iterations;
    if (args.burn_in >= 0) config.burn_in = args.burn_in;
    if (args.thin > 0) config.thin = args.thin;
    config.seed = args.seed;

    const ChainOutput chain = fit(model, prior, data, config);
    const auto summary = summarize(chain);
    const fs::path out = prepare_out_dir(args.out);
    write_csv((out / "draws.csv").string(), chain.names, chain.draws);
    write_text_file((out / "summary.json").string(), summary_to_json(summary));
    nlohmann::json info;
    info["model"] = args.model;
    info["prior"] = prior.label();
    info["seed"] = args.seed;
    info["iterations"] = config.iterations;
    info["burn_in"] = config.burn_in;
    info["thin"] = config.thin;
    info["acceptance"] = std::vector<double>(chain.acceptance.data(), chain.acceptance.data() + chain.acceptance.size());
    info["steps"] = std::vector<double>(chain.steps.data(), chain.steps.data() + chain.steps.size());
    write_text_file((out / "chain.json").string(), info.dump(2) + "\n");

    std::cout << std::left << std::setw(10) << "param" << std::right << std::setw(12) << "mean" << std::setw(12)
              << "median" << std::setw(12) << "sd" << std::setw(12) << "2.5%" << std::setw(12) << "97.5%"
              << std::setw(10) << "ess" << '\n'
              << std::fixed << std::setprecision(4);
    for (const auto& s : summary) {
        std::cout << std::left << std::setw(10) << s.name << std::right << std::setw(12) << s.mean << std::setw(12)
                  << s.median << std::setw(12) << std::sqrt(s.variance) << std::setw(12) << s.lower << std::setw(12)
                  << s.upper << std::setw(10) << std::setprecision(0) << s.ess << std::setprecision(4) << '\n';
    }
    std::cout << std::defaultfloat << "wrote " << (out / "draws.csv").string() << ", "
              << (out / "summary.json").string() << ", " << (out / "chain.json").string() << '\n';
    return 0;
}

// ---- summarize ------------------------------------------------------------

int cmd_summarize(const std::string& draws_path) {
    const CsvTable table = read_csv(draws_path);
    std::cout << summary_to_json(summarize(table.values, table.header));
    return 0;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
    std::string scenario;
    bool full_scale = false;
    int threads = -1;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out = default_out_dir();
};

int cmd_simulate(const SimulateArgs& args) {
    const std::string text = read_text_file(args.scenario);
    ScenarioSpec spec;
    try {
        spec = parse_scenario(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("malformed scenario JSON in '" + args.scenario + "': " + e.what());
    }
    if (args.full_scale) apply_full_scale(spec);
    if (args.threads >= 0) spec.threads = args.threads;
    if (args.seed_given) spec.seed = args.seed;

    const MetricsTable table = run_scenario(spec);
    const fs::path out = prepare_out_dir(args.out);
    const std::string stem = spec.name;
    write_text_file((out / (stem + "_metrics.csv")).string(), metrics_to_csv(table));
    const std::string text_table = metrics_to_text(table);
    write_text_file((out / (stem + "_metrics.txt")).string(), text_table);
    std::cout << "scenario " << spec.name << " (" << model_name(spec.model) << ", n=" << spec.n
              << ", replicates=" << spec.replicates << ")\n"
              << text_table << "wrote " << (out / (stem + "_metrics.csv")).string() << '\n';
    return 0;
}

// ---- penalty --------------------------------------------------------------

struct PenaltyArgs {
    std::vector<double> betas{2.0, 0.5, 0.0};
    std::vector<double> lambdas{0.5};
    int n = 100;
    int reps = 1000;
    std::uint64_t seed = default_seed;
    std::string out;
};

int cmd_penalty(const PenaltyArgs& args) {
    for (double l : args.lambdas) {
        if (!(l > 0.0)) throw UsageError("--lambda values must be positive");
    }
    std::ostringstream csv;
    csv.precision(17);
    csv << "lambda,beta,M_L,M_N\n";
    for (double lambda : args.lambdas) {
        for (double beta : args.betas) {
            PenaltyExperimentConfig config;
            config.beta = beta;
            config.lambda = lambda;
            config.n = args.n;
            config.reps = args.reps;
            config.seed = args.seed;
            const auto r = mse_experiment(config);
            csv << lambda << ',' << beta << ',' << r.mse_lasso << ',' << r.mse_log << '\n';
        }
    }
    if (args.out.empty()) {
        std::cout << csv.str();
    } else {
        write_text_file(args.out, csv.str());
        std::cout << "wrote " << args.out << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mlomax: multivariate Lomax priors, Bregman scores, MCMC and replication experiments"};
    app.require_subcommand(1);

    PriorArgs prior_args;
    auto* prior = app.add_subcommand("prior", "Evaluate LM(d,k,a) on a grid and/or draw samples");
    prior->add_option("--dim", prior_args.dim, "Dimension d")->required();
    prior->add_option("--k", prior_args.k, "Shape k > 0");
    prior->add_option("--a", prior_args.a, "Scale a > 0");
    prior->add_option("--folded", prior_args.folded, "One-based coordinates extended to the real line")->delimiter(',');
    prior->add_option("--grid", prior_args.grid, "Grid points per axis (d <= 2)");
    prior->add_option("--range", prior_args.range, "Grid upper limit (and -limit for folded axes)");
    prior->add_option("--samples", prior_args.samples, "Number of draws");
    prior->add_option("--seed", prior_args.seed, "RNG seed");
    prior->add_option("--out", prior_args.out, "Output directory (default $MLOMAX_OUT_DIR or .)");

    ScoreArgs score_args;
    auto* score_cmd = app.add_subcommand("score-check", "Tabulate the local Bregman score over a grid");
    score_cmd->add_option("--field", score_args.field, "Density field")
        ->check(CLI::IsMember({"lomax", "exponential"}));
    score_cmd->add_option("--k", score_args.k, "Generator shape (odd positive integer)");
    score_cmd->add_option("--dim", score_args.dim, "Dimension d")->check(CLI::Range(1, 10));
    score_cmd->add_option("--a", score_args.a, "Lomax scale");
    score_cmd->add_option("--points", score_args.points, "Grid size")->check(CLI::PositiveNumber);
    score_cmd->add_option("--lo", score_args.lo, "Grid lower corner");
    score_cmd->add_option("--hi", score_args.hi, "Grid upper corner");
    score_cmd->add_option("--tol", score_args.tol, "Lomax pass tolerance on max |S|");
    score_cmd->add_option("--separation", score_args.separation, "Counterexample threshold on min |S|");

    FitArgs fit_args;
    auto* fit_cmd = app.add_subcommand("fit", "Run the MCMC sampler for one dataset");
    fit_cmd->add_option("--model", fit_args.model, "weibull | dagum | linreg")->required();
    fit_cmd->add_option("--prior", fit_args.prior,
                        "lomax | weibull-reference | vague-gamma-product | vague-normal-sigma | zellner-g");
    fit_cmd->add_option("--data", fit_args.data, "CSV path or builtin:<name>")->required();
    fit_cmd->add_option("--column", fit_args.column, "Column for univariate models (default: first)");
    fit_cmd->add_option("--response", fit_args.response, "Response column for linreg");
    fit_cmd->add_option("--k", fit_args.k, "Lomax prior shape");
    fit_cmd->add_option("--a", fit_args.a, "Lomax prior scale");
    fit_cmd->add_option("--g", fit_args.g, "Zellner g");
    fit_cmd->add_option("--c", fit_args.c, "Vague normal variance");
    fit_cmd->add_option("--iterations", fit_args.iterations, "Sweeps (overrides preset)");
    fit_cmd->add_option("--burn-in", fit_args.burn_in, "Burn-in sweeps (overrides preset)");
    fit_cmd->add_option("--thin", fit_args.thin, "Thinning (overrides preset)");
    fit_cmd->add_flag("--full-scale", fit_args.full_scale, "Use the 100000/10000/50 chain");
    fit_cmd->add_option("--seed", fit_args.seed, "RNG seed");
    fit_cmd->add_option("--out", fit_args.out, "Output directory (default $MLOMAX_OUT_DIR or .)");

    std::string summarize_path;
    auto* summarize_cmd = app.add_subcommand("summarize", "Recompute the summary JSON from a draws CSV");
    summarize_cmd->add_option("draws", summarize_path, "draws.csv")->required();

    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "Run a replication scenario");
    sim->add_option("--scenario", sim_args.scenario, "Scenario JSON")->required();
    sim->add_flag("--full-scale", sim_args.full_scale, "250 replicates with the 100000/10000/50 chain");
    sim->add_option("--threads", sim_args.threads, "Worker threads (0: all cores)");
    auto* sim_seed = sim->add_option("--seed", sim_args.seed, "Override the scenario master seed");
    sim->add_option("--out", sim_args.out, "Output directory (default $MLOMAX_OUT_DIR or .)");

    PenaltyArgs pen_args;
    auto* pen = app.add_subcommand("penalty", "Monte Carlo MSE of LASSO and log-penalty estimators");
    pen->add_option("--beta", pen_args.betas, "True means")->delimiter(',');
    pen->add_option("--lambda", pen_args.lambdas, "Penalty levels")->delimiter(',');
    pen->add_option("--n", pen_args.n, "Sample size per replicate");
    pen->add_option("--reps", pen_args.reps, "Replicates");
    pen->add_option("--seed", pen_args.seed, "RNG seed");
    pen->add_option("--out", pen_args.out, "Output CSV (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*prior) return cmd_prior(prior_args);
        if (*score_cmd) return cmd_score_check(score_args);
        if (*fit_cmd) return cmd_fit(fit_args);
        if (*summarize_cmd) return cmd_summarize(summarize_path);
        if (*sim) {
            sim_args.seed_given = sim_seed->count() > 0;
            return cmd_simulate(sim_args);
        }
        if (*pen) return cmd_penalty(pen_args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
