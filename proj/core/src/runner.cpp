#include "surropt/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "surropt/rng.hpp"

namespace surropt {

std::vector<CellSpec> expand_cells(const RunnerConfig& config) {
    std::vector<FunctionId> functions = config.functions;
    if (functions.empty()) {
        functions = {FunctionId::Rosenbrock, FunctionId::Rastrigin,
                     FunctionId::Levy, FunctionId::Ackley,
                     FunctionId::Zakharov};
    }
    std::vector<SurrogateKind> surrogates = config.surrogates;
    if (surrogates.empty()) {
        surrogates = {SurrogateKind::Rbf, SurrogateKind::TkMars};
    }
    std::vector<ReplicationPolicy> policies = config.policies;
    if (policies.empty()) {
        policies = {ReplicationPolicy::None, ReplicationPolicy::Fixed,
                    ReplicationPolicy::Smart};
    }

    std::vector<CellSpec> cells;
    for (FunctionId fn : functions) {
        for (SurrogateKind s : surrogates) {
            for (ReplicationPolicy p : policies) {
                std::vector<int> levels;
                switch (p) {
                    case ReplicationPolicy::None: levels = {0}; break;
                    case ReplicationPolicy::Fixed:
                        levels = config.fixed_levels;
                        break;
                    case ReplicationPolicy::Smart:
                        levels = config.rmax_levels;
                        break;
                }
                for (int r : levels) {
                    for (double np : config.noise_levels) {
                        cells.push_back(CellSpec{fn, s, p, r, np});
                    }
                }
            }
        }
    }
    return cells;
}

ExperimentConfig make_run_config(const RunnerConfig& config,
                                 const CellSpec& cell, std::uint64_t seed) {
    ExperimentConfig run = config.base;
    run.function = cell.function;
    run.surrogate = cell.surrogate;
    run.replication = cell.policy;
    if (cell.policy != ReplicationPolicy::None) {
        run.replications = cell.replications;
    }
    run.noise = cell.noise;
    run.seed = seed;
    return run;
}

std::vector<RunRecord> execute_matrix(const RunnerConfig& config) {
    std::vector<CellSpec> cells = expand_cells(config);
    int executions = std::max(1, config.executions);
    std::vector<RunRecord> records(cells.size() *
                                   static_cast<std::size_t>(executions));
    for (std::size_t c = 0; c < cells.size(); ++c) {
        for (int e = 0; e < executions; ++e) {
            RunRecord& rec = records[c * executions + e];
            rec.cell_index = static_cast<int>(c);
            rec.execution = e;
            rec.cell = cells[c];
            rec.seed = derive_seed(config.master_seed, c, e);
        }
    }

    auto work = [&](RunRecord& rec) {
        try {
            rec.trace =
                run_experiment(make_run_config(config, rec.cell, rec.seed));
            std::vector<double> series = true_series(rec.trace);
            rec.auc = auc(series, 0.0, config.quadrature);
            rec.mtfauc = mtfauc(series, 0.0, config.quadrature);
        } catch (const std::exception& ex) {
            rec.failed = true;
            rec.error = ex.what();
        }
    };

    int jobs = std::max(1, config.jobs);
    if (jobs == 1 || records.size() <= 1) {
        for (RunRecord& rec : records) work(rec);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= records.size()) return;
                work(records[i]);
            }
        };
        std::vector<std::thread> threads;
        int n = std::min<int>(jobs, static_cast<int>(records.size()));
        threads.reserve(n);
        for (int t = 0; t < n; ++t) threads.emplace_back(worker);
        for (std::thread& t : threads) t.join();
    }
    return records;
}

std::string run_id(const RunnerConfig& config, const RunRecord& record) {
    (void)config;
    std::ostringstream os;
    os << function_name(record.cell.function) << '_'
       << surrogate_name(record.cell.surrogate) << '_'
       << replication_name(record.cell.policy);
    if (record.cell.policy != ReplicationPolicy::None) {
        os << record.cell.replications;
    }
    os << "_np" << format_double(record.cell.noise) << "_x"
       << record.execution;
    return os.str();
}

std::string format_double(double value) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream& os, const std::string& id,
                     const RunTrace& trace) {
    os << "run_id,eval_index,bsms_true,bsms_mean\n";
    for (const TraceEntry& e : export_rows(trace)) {
        os << id << ',' << e.eval_index << ',' << format_double(e.bsms_true)
           << ',' << format_double(e.bsms_mean) << '\n';
    }
}

void write_summary_csv(std::ostream& os, const RunnerConfig& config,
                       std::span<const RunRecord> records) {
    os << "function,d,fiv,noise,surrogate,replication,r_or_rmax,seed,auc,"
          "mtfauc,final_bsms_true,total_evals,selected_variables\n";
    for (const RunRecord& rec : records) {
        if (rec.failed) continue;
        os << function_name(rec.cell.function) << ',' << config.base.dim << ','
           << format_double(config.base.fiv) << ','
           << format_double(rec.cell.noise) << ','
           << surrogate_name(rec.cell.surrogate) << ','
           << replication_name(rec.cell.policy) << ','
           << rec.cell.replications << ',' << rec.seed << ','
           << format_double(rec.auc) << ',' << format_double(rec.mtfauc)
           << ',' << format_double(rec.trace.best_true) << ','
           << rec.trace.entries.size() << ',';
        const std::vector<int>& vars = rec.trace.selected_variables;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (i) os << ';';
            os << vars[i];
        }
        os << '\n';
    }
}

SummaryStats summarize(std::span<const double> values) {
    SummaryStats s;
    s.n = static_cast<int>(values.size());
    if (s.n == 0) return s;
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    double sum = 0.0;
    for (double x : v) sum += x;
    s.mean = sum / s.n;
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.variance = s.n > 1 ? ss / (s.n - 1) : 0.0;
    // Quartiles by linear interpolation between order statistics.
    auto quantile = [&](double p) {
        double h = p * (s.n - 1);
        int lo = static_cast<int>(std::floor(h));
        int hi = std::min(lo + 1, s.n - 1);
        return v[lo] + (h - lo) * (v[hi] - v[lo]);
    };
    s.q1 = quantile(0.25);
    s.median = quantile(0.5);
    s.q3 = quantile(0.75);
    return s;
}

std::vector<CellSummary> summarize_cells(const RunnerConfig& config,
                                         std::span<const RunRecord> records) {
    std::vector<CellSpec> cells = expand_cells(config);
    std::vector<CellSummary> out;
    out.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        CellSummary cs;
        cs.cell = cells[c];
        std::vector<double> mt, ft;
        for (const RunRecord& rec : records) {
            if (rec.cell_index != static_cast<int>(c)) continue;
            ++cs.runs;
            if (rec.failed) {
                ++cs.failures;
                continue;
            }
            mt.push_back(rec.mtfauc);
            ft.push_back(rec.trace.best_true);
        }
        cs.mtfauc = summarize(mt);
        cs.final_true = summarize(ft);
        out.push_back(std::move(cs));
    }
    return out;
}

void print_summary_table(std::ostream& os,
                         std::span<const CellSummary> summaries) {
    os << std::left << std::setw(12) << "function" << std::setw(8)
       << "surrog" << std::setw(9) << "replic" << std::setw(6) << "noise"
       << std::right << std::setw(5) << "runs" << std::setw(10) << "mtfauc"
       << std::setw(10) << "var" << std::setw(10) << "q1" << std::setw(10)
       << "med" << std::setw(10) << "q3" << std::setw(13) << "final_true"
       << std::setw(13) << "final_var" << '\n';
    for (const CellSummary& cs : summaries) {
        std::string rep = replication_name(cs.cell.policy);
        if (cs.cell.policy != ReplicationPolicy::None) {
            rep += std::to_string(cs.cell.replications);
        }
        os << std::left << std::setw(12) << function_name(cs.cell.function)
           << std::setw(8) << surrogate_name(cs.cell.surrogate) << std::setw(9)
           << rep << std::setw(6) << std::setprecision(3) << cs.cell.noise
           << std::right << std::setw(5) << cs.runs << std::fixed
           << std::setprecision(4) << std::setw(10) << cs.mtfauc.mean
           << std::setw(10) << cs.mtfauc.variance << std::setw(10)
           << cs.mtfauc.q1 << std::setw(10) << cs.mtfauc.median
           << std::setw(10) << cs.mtfauc.q3 << std::defaultfloat
           << std::setprecision(6) << std::setw(13) << cs.final_true.mean
           << std::setw(13) << cs.final_true.variance << '\n';
        if (cs.failures > 0) {
            os << "  (" << cs.failures << " failed runs excluded)\n";
        }
    }
}

int write_outputs(const RunnerConfig& config,
                  std::span<const RunRecord> records) {
    namespace fs = std::filesystem;
    fs::create_directories(config.out_dir);
    {
        std::ofstream out(fs::path(config.out_dir) / "summary.csv");
        if (!out) {
            throw std::runtime_error("cannot write summary.csv under " +
                                     config.out_dir);
        }
        write_summary_csv(out, config, records);
    }
    int failures = 0;
    if (config.write_traces) {
        fs::path dir = fs::path(config.out_dir) / "traces";
        fs::create_directories(dir);
        for (const RunRecord& rec : records) {
            if (rec.failed) {
                ++failures;
                continue;
            }
            std::string id = run_id(config, rec);
            std::ofstream out(dir / ("trace_" + id + ".csv"));
            write_trace_csv(out, id, rec.trace);
        }
    } else {
        for (const RunRecord& rec : records) failures += rec.failed ? 1 : 0;
    }
    return failures;
}

}  // namespace surropt
