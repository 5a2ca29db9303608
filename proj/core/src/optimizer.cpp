#include "surropt/optimizer.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "surropt/doe.hpp"
#include "surropt/errors.hpp"
#include "surropt/replication.hpp"
#include "surropt/sampling.hpp"

namespace surropt {

ReplicationPolicy replication_from_name(const std::string& name) {
    std::string n = name;
    std::transform(n.begin(), n.end(), n.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (n == "none" || n == "norep" || n == "no") return ReplicationPolicy::None;
    if (n == "fixed" || n == "fixedrep") return ReplicationPolicy::Fixed;
    if (n == "smart" || n == "smartrep") return ReplicationPolicy::Smart;
    throw std::invalid_argument("unknown replication policy: " + name);
}

std::string replication_name(ReplicationPolicy policy) {
    switch (policy) {
        case ReplicationPolicy::None: return "none";
        case ReplicationPolicy::Fixed: return "fixed";
        case ReplicationPolicy::Smart: return "smart";
    }
    throw std::invalid_argument("unknown replication policy");
}

void validate_config(const ExperimentConfig& config) {
    if (config.dim < 1) throw std::invalid_argument("dim must be >= 1");
    if (config.fiv <= 0.0 || config.fiv > 1.0) {
        throw std::invalid_argument("fiv must lie in (0, 1]");
    }
    if (config.noise < 0.0) throw std::invalid_argument("noise must be >= 0");
    if (config.budget < 1) throw std::invalid_argument("budget must be >= 1");
    if (config.replication != ReplicationPolicy::None &&
        config.replications < 1) {
        throw std::invalid_argument("replications must be >= 1");
    }
    if (config.alpha <= 0.0 || config.alpha >= 1.0) {
        throw std::invalid_argument("alpha must lie in (0, 1)");
    }
    if (config.initial_design < 0) {
        throw std::invalid_argument("initial design size must be >= 0");
    }
    if (config.pool_size < 0) {
        throw std::invalid_argument("pool size must be >= 0");
    }
    if (config.k_prime < 1) throw std::invalid_argument("k_prime must be >= 1");
    if (config.settings.rbf_eta <= 0.0 || config.settings.rbf_eta >= 1.0) {
        throw std::invalid_argument("eta must lie in (0, 1)");
    }
    if (config.settings.tree.minsplit < 2) {
        throw std::invalid_argument("minsplit must be >= 2");
    }
    if (config.settings.tree.maxdepth < 1) {
        throw std::invalid_argument("maxdepth must be >= 1");
    }
}

namespace {

bool is_spline(SurrogateKind kind) {
    return kind == SurrogateKind::Mars || kind == SurrogateKind::TkMars;
}

}  // namespace

RunTrace run_experiment(const ExperimentConfig& config) {
    validate_config(config);

    TestFunction fn(config.function, config.dim, config.fiv);
    NoisyObjective objective(fn, config.noise);
    Budget budget(config.budget);
    RngStream rng(config.seed);
    Dataset data(config.alpha);
    RunTrace trace;

    auto hook = [&] {
        const PointRecord& best = data.bsms();
        trace.entries.push_back(
            TraceEntry{budget.used(), fn(best.x), best.mean});
    };

    // Initial design, evaluated before noise is armed so the output range
    // that scales the noise comes from true values.
    int n0 = config.initial_design > 0 ? config.initial_design : config.dim + 1;
    Design doe = latin_hypercube(n0, fn.bounds(), rng);
    std::vector<double> f0;
    for (const Eigen::VectorXd& x : doe.points) {
        if (budget.exhausted()) break;
        double v = objective.sample(x, budget, rng);
        f0.push_back(v);
        data.append(x, v);
        hook();
    }
    trace.initial_design_size = static_cast<int>(f0.size());
    trace.sigma0 = initial_output_range(f0);
    objective.freeze_sigma0(trace.sigma0);

    // Fixed candidate pool with a running distance-to-evaluated cache.
    int pool_n = config.pool_size > 0 ? config.pool_size : 100 * config.dim;
    Design pool = uniform_pool(pool_n, fn.bounds(), rng);
    Eigen::VectorXd pool_dist(pool_n);
    for (int i = 0; i < pool_n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (int k = 0; k < data.size(); ++k) {
            best = std::min(best, (pool.points[i] - data.record(k).x).norm());
        }
        pool_dist[i] = best;
    }

    SurrogateSettings settings = config.settings;
    if (config.surrogate == SurrogateKind::Gp && settings.gp.noise_std < 0.0) {
        // The observation noise level is known by construction; let the
        // covariance carry it unless the configuration overrides it.
        settings.gp.noise_std = config.noise * trace.sigma0;
    }

    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    while (!budget.exhausted()) {
        ++trace.iterations;
        if (config.keep_all_samples && is_spline(config.surrogate)) {
            data.sample_matrix(X, y);
        } else {
            data.mean_matrix(X, y);
        }

        std::vector<Eigen::VectorXd> picks;
        std::unique_ptr<Surrogate> model;
        try {
            model = fit_surrogate(config.surrogate, X, y, settings);
        } catch (const FitError&) {
            model = nullptr;
        }

        if (model) {
            ScoredPool scored;
            scored.points = pool.points;
            std::vector<Eigen::VectorXd> extras = model->extra_candidates();
            scored.points = augment_pool(std::move(scored.points), extras);

            int total = static_cast<int>(scored.points.size());
            Eigen::MatrixXd P(total, config.dim);
            for (int i = 0; i < total; ++i) {
                P.row(i) = scored.points[i].transpose();
            }
            scored.predicted = model->predict_batch(P);

            scored.min_dist.resize(total);
            scored.min_dist.head(pool_n) = pool_dist;
            for (int i = pool_n; i < total; ++i) {
                double best = std::numeric_limits<double>::infinity();
                for (int k = 0; k < data.size(); ++k) {
                    best = std::min(
                        best, (scored.points[i] - data.record(k).x).norm());
                }
                scored.min_dist[i] = best;
            }

            for (int idx : eepa_select(scored, config.k_prime)) {
                picks.push_back(scored.points[idx]);
            }
            std::vector<int> vars = model->active_variables();
            if (!vars.empty() || is_spline(config.surrogate)) {
                trace.selected_variables = vars;
            }
        }

        if (picks.empty()) {
            // Pure exploration fallback: the pool point farthest from every
            // evaluated point.
            ++trace.fallback_iterations;
            int far = 0;
            for (int i = 1; i < pool_n; ++i) {
                if (pool_dist[i] > pool_dist[far]) far = i;
            }
            if (pool_dist[far] <= 0.0) break;  // pool fully evaluated
            picks.push_back(pool.points[far]);
        }

        int before = data.size();
        int samples_before = budget.used();
        switch (config.replication) {
            case ReplicationPolicy::None:
                evaluate_no_replication(data, picks, objective, budget, rng,
                                        hook);
                break;
            case ReplicationPolicy::Fixed:
                evaluate_fixed_replication(data, picks, config.replications,
                                           objective, budget, rng, hook);
                break;
            case ReplicationPolicy::Smart:
                evaluate_smart_replication(data, picks, config.replications,
                                           objective, budget, rng, hook);
                break;
        }
        trace.candidate_points += data.size() - before;
        trace.candidate_samples += budget.used() - samples_before;

        for (int k = before; k < data.size(); ++k) {
            for (int i = 0; i < pool_n; ++i) {
                pool_dist[i] = std::min(
                    pool_dist[i], (pool.points[i] - data.record(k).x).norm());
            }
        }
    }

    const PointRecord& best = data.bsms();
    trace.best_point = best.x;
    trace.best_mean = best.mean;
    trace.best_true = fn(best.x);
    trace.best_count = best.count();
    return trace;
}

std::vector<TraceEntry> export_rows(const RunTrace& trace) {
    return trace.entries;
}

std::vector<double> true_series(const RunTrace& trace) {
    std::vector<double> out;
    out.reserve(trace.entries.size());
    for (const TraceEntry& e : trace.entries) out.push_back(e.bsms_true);
    return out;
}

}  // namespace surropt
