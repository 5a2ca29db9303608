// Benchmark driver: expands an experiment matrix over test functions,
// surrogates, replication policies, and noise levels, runs every cell for a
// number of seeded executions, and writes summary.csv plus per-run traces.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "surropt/runner.hpp"

namespace {

using nlohmann::json;

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// Config-file entries may be a scalar or an array; both become a list.
std::vector<std::string> json_list(const json& v) {
    std::vector<std::string> out;
    if (v.is_array()) {
        for (const auto& e : v) {
            out.push_back(e.is_string() ? e.get<std::string>() : e.dump());
        }
    } else if (v.is_string()) {
        for (auto& s : split_list(v.get<std::string>())) out.push_back(s);
    } else {
        out.push_back(v.dump());
    }
    return out;
}

int parse_mars_knots(const std::string& value) {
    if (value == "tree") return 0;
    std::size_t pos = 0;
    int parsed = std::stoi(value, &pos);
    if (pos != value.size() || parsed < 1) {
        throw std::invalid_argument(
            "mars knot plan must be a positive count or 'tree'");
    }
    return parsed;
}

struct CliOptions {
    std::string function, surrogate, replication, noise, r, rmax, mars_knots;
    std::string duplicates, quadrature, out, config_path;
    int dim = -1, budget = -1, pool_size = -1, k_prime = -1, executions = -1;
    int jobs = -1;
    double fiv = -1.0, alpha = -1.0;
    long long seed = -1;
    bool list_functions = false;
    bool no_traces = false;
};

void apply_config_file(surropt::RunnerConfig& rc, const std::string& path,
                       CliOptions& fallback) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json doc = json::parse(in);

    auto str = [&](const char* key, std::string& slot) {
        if (doc.contains(key) && slot.empty()) {
            std::vector<std::string> items = json_list(doc[key]);
            std::string joined;
            for (std::size_t i = 0; i < items.size(); ++i) {
                if (i) joined += ',';
                joined += items[i];
            }
            slot = joined;
        }
    };
    str("function", fallback.function);
    str("surrogate", fallback.surrogate);
    str("replication", fallback.replication);
    str("noise", fallback.noise);
    str("r", fallback.r);
    str("rmax", fallback.rmax);
    str("mars_knots", fallback.mars_knots);
    str("duplicates", fallback.duplicates);
    str("quadrature", fallback.quadrature);
    str("out", fallback.out);

    auto num = [&](const char* key, auto& slot) {
        using T = std::decay_t<decltype(slot)>;
        if (doc.contains(key) && slot < 0) slot = doc[key].get<T>();
    };
    num("dim", fallback.dim);
    num("budget", fallback.budget);
    num("pool_size", fallback.pool_size);
    num("k_prime", fallback.k_prime);
    num("executions", fallback.executions);
    num("jobs", fallback.jobs);
    num("fiv", fallback.fiv);
    num("alpha", fallback.alpha);
    num("seed", fallback.seed);

    if (doc.contains("write_traces")) {
        rc.write_traces = doc["write_traces"].get<bool>();
    }
    auto& s = rc.base.settings;
    if (doc.contains("omega")) s.rbf_shape = doc["omega"].get<double>();
    if (doc.contains("eta")) s.rbf_eta = doc["eta"].get<double>();
    if (doc.contains("minsplit")) s.tree.minsplit = doc["minsplit"].get<int>();
    if (doc.contains("maxdepth")) s.tree.maxdepth = doc["maxdepth"].get<int>();
    if (doc.contains("mars_max_basis")) {
        s.mars_max_basis = doc["mars_max_basis"].get<int>();
    }
    if (doc.contains("mars_max_interaction")) {
        s.mars_max_interaction = doc["mars_max_interaction"].get<int>();
    }
    if (doc.contains("gp_signal_std")) {
        s.gp.signal_std = doc["gp_signal_std"].get<double>();
    }
    if (doc.contains("gp_length_scale")) {
        s.gp.length_scale = doc["gp_length_scale"].get<double>();
    }
    if (doc.contains("gp_noise_std")) {
        s.gp.noise_std = doc["gp_noise_std"].get<double>();
    }
    if (doc.contains("gp_cv")) s.gp_cv = doc["gp_cv"].get<bool>();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "surropt: surrogate optimization benchmark over noisy test functions"};
    CliOptions opt;

    app.add_option("--function", opt.function,
                   "Test functions (comma separated, default: all)");
    app.add_option("--dim", opt.dim, "Input dimension (default 30)");
    app.add_option("--fiv", opt.fiv,
                   "Fraction of important variables (default 0.5)");
    app.add_option("--noise", opt.noise,
                   "Noise levels (default 0,0.05,0.10,0.25)");
    app.add_option("--surrogate", opt.surrogate,
                   "Surrogates (default rbf,tkmars; also mars,nonrbf,gp)");
    app.add_option("--replication", opt.replication,
                   "Replication policies (default none,fixed,smart)");
    app.add_option("--r", opt.r, "Fixed replication counts (default 5,10)");
    app.add_option("--rmax", opt.rmax,
                   "Smart replication caps (default 5,10)");
    app.add_option("--alpha", opt.alpha,
                   "Confidence level for intervals (default 0.05)");
    app.add_option("--budget", opt.budget,
                   "Evaluation budget per run (default 1000)");
    app.add_option("--pool-size", opt.pool_size,
                   "Candidate pool size (default 100*dim)");
    app.add_option("--k-prime", opt.k_prime,
                   "Candidates evaluated per iteration (default 3)");
    app.add_option("--mars-knots", opt.mars_knots,
                   "Evenly spaced knot count for plain MARS, or 'tree'");
    app.add_option("--executions", opt.executions,
                   "Seeded executions per cell (default 30)");
    app.add_option("--seed", opt.seed, "Master seed (default 20240101)");
    app.add_option("--out", opt.out, "Output directory (default results)");
    app.add_option("--config", opt.config_path,
                   "JSON config file; explicit flags override it");
    app.add_option("--jobs", opt.jobs,
                   "Worker threads (default $SURROPT_JOBS or hardware)");
    app.add_flag("--list-functions", opt.list_functions,
                 "Print the available test functions and exit");
    app.add_flag("--no-traces", opt.no_traces,
                 "Skip writing per-run trace files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (opt.list_functions) {
        for (const std::string& name : surropt::function_names()) {
            std::cout << name << '\n';
        }
        return 0;
    }

    surropt::RunnerConfig rc;
    try {
        if (!opt.config_path.empty()) {
            apply_config_file(rc, opt.config_path, opt);
        }

        for (const std::string& f : split_list(opt.function)) {
            rc.functions.push_back(surropt::function_from_name(f));
        }
        for (const std::string& s : split_list(opt.surrogate)) {
            rc.surrogates.push_back(surropt::surrogate_from_name(s));
        }
        for (const std::string& p : split_list(opt.replication)) {
            rc.policies.push_back(surropt::replication_from_name(p));
        }
        if (!opt.noise.empty()) {
            rc.noise_levels.clear();
            for (const std::string& n : split_list(opt.noise)) {
                rc.noise_levels.push_back(std::stod(n));
            }
        }
        if (!opt.r.empty()) {
            rc.fixed_levels.clear();
            for (const std::string& n : split_list(opt.r)) {
                rc.fixed_levels.push_back(std::stoi(n));
            }
        }
        if (!opt.rmax.empty()) {
            rc.rmax_levels.clear();
            for (const std::string& n : split_list(opt.rmax)) {
                rc.rmax_levels.push_back(std::stoi(n));
            }
        }
        if (!opt.mars_knots.empty()) {
            rc.base.settings.mars_knot_count = parse_mars_knots(opt.mars_knots);
        }
        if (!opt.duplicates.empty()) {
            if (opt.duplicates == "keepall") {
                rc.base.keep_all_samples = true;
            } else if (opt.duplicates != "average") {
                throw std::invalid_argument(
                    "duplicates must be 'average' or 'keepall'");
            }
        }
        if (!opt.quadrature.empty()) {
            if (opt.quadrature == "trapezoid") {
                rc.quadrature = surropt::Quadrature::Trapezoid;
            } else if (opt.quadrature == "plainsum") {
                rc.quadrature = surropt::Quadrature::PlainSum;
            } else {
                throw std::invalid_argument(
                    "quadrature must be 'trapezoid' or 'plainsum'");
            }
        }
        if (opt.dim >= 0) rc.base.dim = opt.dim;
        if (opt.fiv >= 0.0) rc.base.fiv = opt.fiv;
        if (opt.alpha >= 0.0) rc.base.alpha = opt.alpha;
        if (opt.budget >= 0) rc.base.budget = opt.budget;
        if (opt.pool_size >= 0) rc.base.pool_size = opt.pool_size;
        if (opt.k_prime >= 0) rc.base.k_prime = opt.k_prime;
        if (opt.executions >= 0) rc.executions = opt.executions;
        if (opt.seed >= 0) {
            rc.master_seed = static_cast<std::uint64_t>(opt.seed);
        }
        if (!opt.out.empty()) rc.out_dir = opt.out;
        if (opt.no_traces) rc.write_traces = false;

        if (opt.jobs >= 1) {
            rc.jobs = opt.jobs;
        } else if (const char* env = std::getenv("SURROPT_JOBS")) {
            rc.jobs = std::max(1, std::atoi(env));
        } else {
            rc.jobs = std::max(1u, std::thread::hardware_concurrency());
        }

        // Surface bad combinations before spending any budget.
        for (const surropt::CellSpec& cell : surropt::expand_cells(rc)) {
            surropt::validate_config(surropt::make_run_config(rc, cell, 1));
        }
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 1;
    }

    std::vector<surropt::RunRecord> records = surropt::execute_matrix(rc);
    int failures = surropt::write_outputs(rc, records);

    std::vector<surropt::CellSummary> cells = surropt::summarize_cells(rc, records);
    surropt::print_summary_table(std::cout, cells);
    std::cout << records.size() - failures << '/' << records.size()
              << " runs completed; outputs in " << rc.out_dir << '\n';
    for (const surropt::RunRecord& rec : records) {
        if (rec.failed) {
            std::cerr << "run " << surropt::run_id(rc, rec)
                      << " failed: " << rec.error << '\n';
        }
    }
    return failures == 0 ? 0 : 2;
}
