#include "surropt/mars.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace surropt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Minimal normalized residual a candidate column must keep after projection
// onto the current design; screens near-collinear additions cheaply before
// the full condition check.
constexpr double kMinResidualFraction = 1e-10;

double hinge(int sign, double knot, double v) {
    double t = sign > 0 ? v - knot : knot - v;
    return t > 0.0 ? t : 0.0;
}

std::vector<HingeTerm> extend_terms(const std::vector<HingeTerm>& parent,
                                    int dim, double knot, int sign) {
    std::vector<HingeTerm> terms = parent;
    terms.push_back(HingeTerm{dim, knot, sign});
    std::sort(terms.begin(), terms.end(),
              [](const HingeTerm& a, const HingeTerm& b) {
                  if (a.dim != b.dim) return a.dim < b.dim;
                  if (a.knot != b.knot) return a.knot < b.knot;
                  return a.sign < b.sign;
              });
    return terms;
}

bool same_terms(const std::vector<HingeTerm>& a,
                const std::vector<HingeTerm>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].dim != b[i].dim || a[i].knot != b[i].knot ||
            a[i].sign != b[i].sign) {
            return false;
        }
    }
    return true;
}

// Condition estimate of the normal equations: eigenvalue ratio of the
// column-equilibrated Gram matrix.
bool condition_ok(const Eigen::MatrixXd& gram, double limit) {
    Eigen::VectorXd d = gram.diagonal();
    if ((d.array() <= 0.0).any()) return false;
    Eigen::VectorXd s = d.array().sqrt().inverse();
    Eigen::MatrixXd norm = s.asDiagonal() * gram * s.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(norm);
    if (eig.info() != Eigen::Success) return false;
    double lo = eig.eigenvalues().minCoeff();
    double hi = eig.eigenvalues().maxCoeff();
    if (lo <= 0.0) return false;
    return hi / lo <= limit;
}

// LDLT of the column-equilibrated Gram; solves against the raw system.
struct EquilibratedSolver {
    Eigen::VectorXd scale;
    Eigen::LDLT<Eigen::MatrixXd> ldlt;

    explicit EquilibratedSolver(const Eigen::MatrixXd& gram) {
        scale = gram.diagonal().array().max(0.0).sqrt().inverse();
        for (int i = 0; i < scale.size(); ++i) {
            if (!std::isfinite(scale[i])) scale[i] = 1.0;
        }
        Eigen::MatrixXd norm = scale.asDiagonal() * gram * scale.asDiagonal();
        ldlt.compute(norm);
    }

    Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const {
        return scale.asDiagonal() *
               Eigen::MatrixXd(ldlt.solve(scale.asDiagonal() * rhs));
    }

    Eigen::MatrixXd inverse() const {
        Eigen::Index n = scale.size();
        return solve(Eigen::MatrixXd::Identity(n, n));
    }
};

struct Candidate {
    int parent = -1;  // -1 encodes the intercept
    int dim = -1;
    double knot = 0.0;
    bool with_plus = false;
    bool with_minus = false;
    double reduction = -kInf;
};

struct GcvState {
    double gcv = kInf;
    double sse = kInf;

    bool operator<(const GcvState& other) const {
        if (gcv != other.gcv) return gcv < other.gcv;
        return sse < other.sse;
    }
};

double gcv_value(double sse, int rows, int num_basis, double penalty) {
    double effective = (num_basis + 1) + penalty * num_basis;
    if (effective >= rows) return kInf;
    double scale = 1.0 - effective / rows;
    return (sse / rows) / (scale * scale);
}

}  // namespace

double eval_basis(const BasisFunction& basis, const Eigen::VectorXd& x) {
    double v = 1.0;
    for (const HingeTerm& t : basis.terms) v *= hinge(t.sign, t.knot, x[t.dim]);
    return v;
}

bool same_basis(const BasisFunction& a, const BasisFunction& b) {
    return same_terms(a.terms, b.terms);
}

KnotSet evenly_spaced_knots(const Eigen::MatrixXd& X, int count) {
    if (count < 1) throw std::invalid_argument("knot count must be positive");
    if (X.rows() == 0) throw std::invalid_argument("empty design matrix");
    KnotSet knots;
    knots.per_dim.resize(X.cols());
    for (int j = 0; j < X.cols(); ++j) {
        double lo = X.col(j).minCoeff();
        double hi = X.col(j).maxCoeff();
        auto& list = knots.per_dim[j];
        if (lo == hi) {
            list.push_back(lo);
        } else if (count == 1) {
            list.push_back(0.5 * (lo + hi));
        } else {
            for (int k = 0; k < count; ++k) {
                list.push_back(lo + (hi - lo) * k / (count - 1));
            }
        }
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return knots;
}

KnotSet evenly_spaced_knots(const Bounds& bounds, int count) {
    int d = static_cast<int>(bounds.lower.size());
    Eigen::MatrixXd corners(2, d);
    corners.row(0) = bounds.lower.transpose();
    corners.row(1) = bounds.upper.transpose();
    return evenly_spaced_knots(corners, count);
}

KnotSet tree_knots(const RegressionTree& tree, const Eigen::MatrixXd& X) {
    KnotSet knots;
    knots.per_dim.resize(X.cols());
    std::vector<std::vector<int>> members = tree.leaf_members();
    std::vector<Eigen::VectorXd> centroids = tree.leaf_centroids(X);
    for (std::size_t v = 0; v < members.size(); ++v) {
        for (int j = 0; j < X.cols(); ++j) {
            int best_row = -1;
            double best_gap = kInf;
            for (int r : members[v]) {  // ascending row index; ties keep first
                double gap = std::abs(X(r, j) - centroids[v][j]);
                if (gap < best_gap) {
                    best_gap = gap;
                    best_row = r;
                }
            }
            knots.per_dim[j].push_back(X(best_row, j));
        }
    }
    for (auto& list : knots.per_dim) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return knots;
}

int auto_max_basis(int rows, int dim) {
    int by_rows = static_cast<int>((2.0 * rows + 3.0) / 5.0);
    int cap = std::min(200, std::max(20, 2 * dim)) + 1;
    return std::max(1, std::min(by_rows, cap));
}

MarsModel MarsModel::fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         const KnotSet& knots, const MarsOptions& options) {
    int n = static_cast<int>(X.rows());
    int d = static_cast<int>(X.cols());
    if (n != y.size() || n < 2) {
        throw std::invalid_argument("mars fit needs at least two rows");
    }
    if (static_cast<int>(knots.per_dim.size()) != d) {
        throw std::invalid_argument("knot set dimension mismatch");
    }
    if (options.max_interaction < 1) {
        throw std::invalid_argument("max interaction must be at least 1");
    }
    int max_basis =
        options.max_basis > 0 ? options.max_basis : auto_max_basis(n, d);

    MarsModel model;
    model.dim_ = d;

    double yty = y.squaredNorm();
    double reduction_floor = 1e-12 * (1.0 + yty);

    // Design columns (column 0 is the intercept) with the Gram matrix and
    // right-hand side maintained incrementally as columns are accepted.
    Eigen::MatrixXd B(n, max_basis + 1);
    B.col(0).setOnes();
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(max_basis + 1, max_basis + 1);
    Eigen::VectorXd gy = Eigen::VectorXd::Zero(max_basis + 1);
    G(0, 0) = static_cast<double>(n);
    gy[0] = y.sum();

    std::vector<BasisFunction> bases;
    static const std::vector<HingeTerm> kNoTerms;

    // Candidates vetoed by the authoritative condition check.
    std::set<std::tuple<int, int, double>> rejected;

    // Forward pass: grow reflected hinge pairs that maximize the SSE drop.
    while (static_cast<int>(bases.size()) < max_basis) {
        int m = static_cast<int>(bases.size());
        int cols = m + 1;
        EquilibratedSolver solver(G.topLeftCorner(cols, cols));
        Eigen::VectorXd w = solver.solve(gy.head(cols));
        double sse_cur = std::max(0.0, yty - gy.head(cols).dot(w));

        Candidate best;
        for (int parent = -1; parent < m; ++parent) {
            const std::vector<HingeTerm>& parent_terms =
                parent < 0 ? kNoTerms : bases[parent].terms;
            if (static_cast<int>(parent_terms.size()) >=
                options.max_interaction) {
                continue;
            }
            int parent_col = parent + 1;
            for (int dim = 0; dim < d; ++dim) {
                bool used = false;
                for (const HingeTerm& t : parent_terms) used |= t.dim == dim;
                if (used) continue;
                const std::vector<double>& dim_knots = knots.per_dim[dim];
                if (dim_knots.empty()) continue;

                int nk = static_cast<int>(dim_knots.size());
                Eigen::MatrixXd U(n, 2 * nk);
                for (int k = 0; k < nk; ++k) {
                    double t = dim_knots[k];
                    for (int i = 0; i < n; ++i) {
                        double p = B(i, parent_col);
                        double v = X(i, dim);
                        U(i, 2 * k) = p * hinge(+1, t, v);
                        U(i, 2 * k + 1) = p * hinge(-1, t, v);
                    }
                }
                Eigen::MatrixXd GtU = B.leftCols(cols).transpose() * U;
                Eigen::VectorXd Uty = U.transpose() * y;
                Eigen::VectorXd UtU =
                    U.colwise().squaredNorm().transpose();

                for (int k = 0; k < nk; ++k) {
                    double t = dim_knots[k];
                    if (rejected.count({parent, dim, t})) continue;

                    bool take[2];
                    for (int h = 0; h < 2; ++h) {
                        int c = 2 * k + h;
                        take[h] = UtU[c] > 0.0;
                        if (take[h]) {
                            auto terms = extend_terms(parent_terms, dim, t,
                                                      h == 0 ? +1 : -1);
                            for (const BasisFunction& b : bases) {
                                if (same_terms(b.terms, terms)) {
                                    take[h] = false;
                                    break;
                                }
                            }
                        }
                    }
                    int cnt = (take[0] ? 1 : 0) + (take[1] ? 1 : 0);
                    if (cnt == 0 || m + cnt > max_basis) continue;

                    // Block least-squares update: adding columns U_c drops
                    // the SSE by r' S^{-1} r, with S the Schur complement of
                    // the current Gram.
                    Eigen::MatrixXd cross(cols, cnt);
                    Eigen::VectorXd r(cnt), diag(cnt);
                    int idx = 0;
                    for (int h = 0; h < 2; ++h) {
                        if (!take[h]) continue;
                        int c = 2 * k + h;
                        cross.col(idx) = GtU.col(c);
                        r[idx] = Uty[c] - GtU.col(c).dot(w);
                        diag[idx] = UtU[c];
                        ++idx;
                    }
                    Eigen::MatrixXd solved = solver.solve(cross);
                    Eigen::MatrixXd S = -cross.transpose() * solved;
                    for (int a = 0; a < cnt; ++a) S(a, a) += diag[a];
                    if (cnt == 2) {
                        double u_cross = U.col(2 * k).dot(U.col(2 * k + 1));
                        S(0, 1) = u_cross - cross.col(0).dot(solved.col(1));
                        S(1, 0) = S(0, 1);
                    }

                    // Normalized-residual screen before scoring.
                    bool ok = true;
                    double red = 0.0;
                    if (cnt == 1) {
                        double frac = S(0, 0) / diag[0];
                        ok = frac > kMinResidualFraction;
                        if (ok) red = r[0] * r[0] / S(0, 0);
                    } else {
                        double d0 = 1.0 / std::sqrt(diag[0]);
                        double d1 = 1.0 / std::sqrt(diag[1]);
                        double a = S(0, 0) * d0 * d0;
                        double b = S(0, 1) * d0 * d1;
                        double c2 = S(1, 1) * d1 * d1;
                        double tr = a + c2;
                        double det = a * c2 - b * b;
                        double disc =
                            std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
                        ok = tr / 2.0 - disc > kMinResidualFraction;
                        if (ok) {
                            Eigen::Vector2d sol =
                                S.fullPivLu().solve(Eigen::Vector2d(r[0], r[1]));
                            red = r.dot(sol);
                        }
                    }
                    if (!ok) continue;
                    if (red > sse_cur * (1.0 + 1e-9)) continue;  // numeric junk
                    if (red > best.reduction) {
                        best = Candidate{parent, dim, t, take[0], take[1], red};
                    }
                }
            }
        }

        if (best.dim < 0 || best.reduction <= reduction_floor) break;

        // Materialize the winning columns, extend the Gram, and run the
        // authoritative condition check on the extended design.
        int parent_col = best.parent + 1;
        int added = 0;
        for (int h = 0; h < 2; ++h) {
            bool use = h == 0 ? best.with_plus : best.with_minus;
            if (!use) continue;
            int c = cols + added;
            for (int i = 0; i < n; ++i) {
                B(i, c) = B(i, parent_col) *
                          hinge(h == 0 ? +1 : -1, best.knot, X(i, best.dim));
            }
            G.block(0, c, cols + added, 1) =
                B.leftCols(cols + added).transpose() * B.col(c);
            G.block(c, 0, 1, cols + added) =
                G.block(0, c, cols + added, 1).transpose();
            G(c, c) = B.col(c).squaredNorm();
            gy[c] = B.col(c).dot(y);
            ++added;
        }
        if (!condition_ok(G.topLeftCorner(cols + added, cols + added),
                          options.max_condition)) {
            rejected.insert({best.parent, best.dim, best.knot});
            continue;
        }
        const std::vector<HingeTerm>& parent_terms =
            best.parent < 0 ? kNoTerms : bases[best.parent].terms;
        if (best.with_plus) {
            bases.push_back(BasisFunction{
                extend_terms(parent_terms, best.dim, best.knot, +1)});
        }
        if (best.with_minus) {
            bases.push_back(BasisFunction{
                extend_terms(parent_terms, best.dim, best.knot, -1)});
        }
    }

    // Backward pass: drop one basis function at a time while GCV improves.
    // Dropping regressor j raises the SSE by w_j^2 / inv(G)_jj.
    int forward_m = static_cast<int>(bases.size());
    std::vector<int> alive(forward_m);
    for (int i = 0; i < forward_m; ++i) alive[i] = i;

    auto solve_subset = [&](const std::vector<int>& subset,
                            Eigen::MatrixXd& Hinv, Eigen::VectorXd& w) {
        std::vector<int> idx{0};
        for (int b : subset) idx.push_back(b + 1);
        Eigen::MatrixXd Gs = G(idx, idx);
        Eigen::VectorXd gys = gy(idx);
        EquilibratedSolver solver(Gs);
        Hinv = solver.inverse();
        w = Hinv * gys;
        return std::max(0.0, yty - gys.dot(w));
    };

    Eigen::MatrixXd Hinv;
    Eigen::VectorXd w;
    double sse = solve_subset(alive, Hinv, w);
    GcvState cur{
        gcv_value(sse, n, static_cast<int>(alive.size()), options.gcv_penalty),
        sse};

    while (!alive.empty()) {
        int best_pos = -1;
        GcvState best{kInf, kInf};
        for (int pos = 0; pos < static_cast<int>(alive.size()); ++pos) {
            int col = pos + 1;  // offset past the intercept
            double h = Hinv(col, col);
            if (h <= 0.0) continue;
            double candidate_sse = sse + w[col] * w[col] / h;
            GcvState state{gcv_value(candidate_sse, n,
                                     static_cast<int>(alive.size()) - 1,
                                     options.gcv_penalty),
                           candidate_sse};
            if (state < best) {
                best = state;
                best_pos = pos;
            }
        }
        if (best_pos < 0) break;
        bool forced = !std::isfinite(cur.gcv);
        if (!forced && !(best.gcv < cur.gcv)) break;
        alive.erase(alive.begin() + best_pos);
        sse = solve_subset(alive, Hinv, w);
        cur = GcvState{gcv_value(sse, n, static_cast<int>(alive.size()),
                                 options.gcv_penalty),
                       sse};
    }

    model.basis_.reserve(alive.size());
    for (int idx : alive) model.basis_.push_back(bases[idx]);
    model.coef_ = w;
    model.sse_ = sse;
    model.gcv_ = cur.gcv;
    return model;
}

double MarsModel::predict(const Eigen::VectorXd& x) const {
    if (x.size() != dim_) throw std::invalid_argument("point dimension mismatch");
    double v = coef_[0];
    for (std::size_t m = 0; m < basis_.size(); ++m) {
        v += coef_[m + 1] * eval_basis(basis_[m], x);
    }
    return v;
}

Eigen::VectorXd MarsModel::predict_batch(const Eigen::MatrixXd& points) const {
    Eigen::VectorXd out(points.rows());
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        out[i] = predict(points.row(i).transpose());
    }
    return out;
}

std::vector<int> MarsModel::selected_variables() const {
    std::set<int> dims;
    for (const BasisFunction& b : basis_) {
        for (const HingeTerm& t : b.terms) dims.insert(t.dim + 1);
    }
    return {dims.begin(), dims.end()};
}

}  // namespace surropt
