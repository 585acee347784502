#include "tgc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tgc/rng.hpp"
#include "tgc/vecops.hpp"

namespace tgc::metrics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int cluster_count(const Partition& p) {
    int k = p.num_clusters;
    for (int c : p.assignment) {
        if (c < 0) throw std::invalid_argument("partition: negative cluster id");
        k = std::max(k, c + 1);
    }
    return k;
}

void check_aligned(const Partition& a, const Partition& b) {
    if (a.assignment.size() != b.assignment.size())
        throw std::invalid_argument("partitions cover different node sets");
    if (a.assignment.empty()) throw std::invalid_argument("empty partitions");
}

// Confusion counts, rows = pred clusters, cols = truth clusters.
std::vector<std::vector<double>> confusion(const Partition& pred, const Partition& truth,
                                           int k) {
    std::vector<std::vector<double>> c(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < pred.assignment.size(); ++i)
        c[pred.assignment[i]][truth.assignment[i]] += 1.0;
    return c;
}

// Classic O(n^3) Hungarian algorithm minimizing total cost, 1-indexed
// potentials form.
std::vector<int> hungarian_min(const std::vector<std::vector<double>>& a) {
    const int n = static_cast<int>(a.size());
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> match(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] > 0) match[p[j] - 1] = j - 1;
    return match;
}

// Optimal bijection pred-cluster -> truth-cluster maximizing matched counts.
std::vector<int> best_matching(const Partition& pred, const Partition& truth, int k) {
    return hungarian_max(confusion(pred, truth, k));
}

double log2_safe(double x) { return std::log2(x); }

}  // namespace

std::vector<int> hungarian_max(const std::vector<std::vector<double>>& score) {
    const std::size_t n = score.size();
    if (n == 0) throw std::invalid_argument("hungarian_max: empty matrix");
    double hi = -kInf;
    for (const auto& row : score) {
        if (row.size() != n) throw std::invalid_argument("hungarian_max: matrix not square");
        for (double s : row) hi = std::max(hi, s);
    }
    std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) cost[i][j] = hi - score[i][j];
    return hungarian_min(cost);
}

double accuracy(const Partition& pred, const Partition& truth) {
    check_aligned(pred, truth);
    const int k = std::max(cluster_count(pred), cluster_count(truth));
    const auto c = confusion(pred, truth, k);
    const auto match = best_matching(pred, truth, k);
    double matched = 0.0;
    for (int i = 0; i < k; ++i) matched += c[i][match[i]];
    return matched / static_cast<double>(pred.assignment.size());
}

double nmi(const Partition& pred, const Partition& truth) {
    check_aligned(pred, truth);
    const int k = std::max(cluster_count(pred), cluster_count(truth));
    const auto c = confusion(pred, truth, k);
    const double n = static_cast<double>(pred.assignment.size());

    std::vector<double> row(k, 0.0), col(k, 0.0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            row[i] += c[i][j];
            col[j] += c[i][j];
        }

    double h_pred = 0.0, h_truth = 0.0, mi = 0.0;
    for (int i = 0; i < k; ++i)
        if (row[i] > 0.0) h_pred -= row[i] / n * log2_safe(row[i] / n);
    for (int j = 0; j < k; ++j)
        if (col[j] > 0.0) h_truth -= col[j] / n * log2_safe(col[j] / n);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (c[i][j] > 0.0)
                mi += c[i][j] / n * log2_safe(c[i][j] * n / (row[i] * col[j]));

    const double denom = 0.5 * (h_pred + h_truth);
    if (denom <= 0.0) {
        // Single cluster on both sides: identical partitions by construction.
        return 1.0;
    }
    return std::clamp(mi / denom, 0.0, 1.0);
}

double ari(const Partition& pred, const Partition& truth) {
    check_aligned(pred, truth);
    const int k = std::max(cluster_count(pred), cluster_count(truth));
    const auto c = confusion(pred, truth, k);
    const double n = static_cast<double>(pred.assignment.size());

    auto choose2 = [](double m) { return m * (m - 1.0) / 2.0; };

    std::vector<double> row(k, 0.0), col(k, 0.0);
    double index = 0.0;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            row[i] += c[i][j];
            col[j] += c[i][j];
            index += choose2(c[i][j]);
        }
    double sum_row = 0.0, sum_col = 0.0;
    for (int i = 0; i < k; ++i) sum_row += choose2(row[i]);
    for (int j = 0; j < k; ++j) sum_col += choose2(col[j]);

    const double expected = sum_row * sum_col / choose2(n);
    const double max_index = 0.5 * (sum_row + sum_col);
    if (std::abs(max_index - expected) < 1e-12) {
        // Both partitions trivial (all-singletons or one cluster): they can
        // only be identical here.
        return 1.0;
    }
    return (index - expected) / (max_index - expected);
}

double macro_f1(const Partition& pred, const Partition& truth) {
    check_aligned(pred, truth);
    const int k = std::max(cluster_count(pred), cluster_count(truth));
    const auto match = best_matching(pred, truth, k);

    // Relabel pred through the accuracy matching, then macro-average F1 over
    // the truth classes actually present.
    std::vector<double> tp(k, 0.0), fp(k, 0.0), fn(k, 0.0), support(k, 0.0);
    for (std::size_t i = 0; i < pred.assignment.size(); ++i) {
        const int p = match[pred.assignment[i]];
        const int t = truth.assignment[i];
        support[t] += 1.0;
        if (p == t) {
            tp[t] += 1.0;
        } else {
            fp[p] += 1.0;
            fn[t] += 1.0;
        }
    }
    double total = 0.0;
    int classes = 0;
    for (int cidx = 0; cidx < k; ++cidx) {
        if (support[cidx] <= 0.0) continue;
        ++classes;
        const double denom_p = tp[cidx] + fp[cidx];
        const double denom_r = tp[cidx] + fn[cidx];
        const double precision = denom_p > 0.0 ? tp[cidx] / denom_p : 0.0;
        const double recall = denom_r > 0.0 ? tp[cidx] / denom_r : 0.0;
        total += (precision + recall) > 0.0 ? 2.0 * precision * recall / (precision + recall)
                                            : 0.0;
    }
    return classes > 0 ? total / classes : 0.0;
}

MetricsReport evaluate(const Partition& pred, const Partition& truth) {
    return {accuracy(pred, truth), nmi(pred, truth), ari(pred, truth), macro_f1(pred, truth)};
}

namespace {

EmbeddingTable kmeanspp_init(const EmbeddingTable& z, int k, std::mt19937_64& rng) {
    const std::size_t n = z.rows();
    EmbeddingTable centers(static_cast<std::size_t>(k), z.dim());
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);

    const std::size_t first = pick(rng);
    std::copy(z.row(first).begin(), z.row(first).end(), centers.row(0).begin());

    std::vector<double> d2(n, kInf);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], squared_distance(z.row(i), centers.row(c - 1)));
            total += d2[i];
        }
        std::size_t chosen = 0;
        if (total > 0.0) {
            const double target = unit(rng) * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= target) {
                    chosen = i;
                    break;
                }
            }
        } else {
            chosen = pick(rng);  // all points coincide with chosen centers
        }
        std::copy(z.row(chosen).begin(), z.row(chosen).end(), centers.row(c).begin());
    }
    return centers;
}

struct LloydState {
    std::vector<int> assign;
    std::vector<double> own_d2;
    double inertia = 0.0;
};

LloydState assign_points(const EmbeddingTable& z, const EmbeddingTable& centers) {
    const std::size_t n = z.rows();
    const int k = static_cast<int>(centers.rows());
    LloydState s;
    s.assign.resize(n);
    s.own_d2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double best = kInf;
        int bc = 0;
        for (int c = 0; c < k; ++c) {
            const double d = squared_distance(z.row(i), centers.row(c));
            if (d < best) {
                best = d;
                bc = c;
            }
        }
        s.assign[i] = bc;
        s.own_d2[i] = best;
        s.inertia += best;
    }
    return s;
}

}  // namespace

KMeansResult lloyd(const EmbeddingTable& z, EmbeddingTable centers, int max_iter, double tol,
                   std::vector<double>* inertia_trace) {
    const std::size_t n = z.rows();
    const std::size_t dim = z.dim();
    const int k = static_cast<int>(centers.rows());

    LloydState state;
    for (int iter = 0; iter < max_iter; ++iter) {
        state = assign_points(z, centers);

        // Re-seed empty clusters at the point farthest from its own center.
        std::vector<std::size_t> counts(k, 0);
        for (int a : state.assign) ++counts[a];
        std::vector<char> taken(n, 0);
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) continue;
            std::size_t far = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (taken[i] || counts[state.assign[i]] <= 1) continue;
                if (state.own_d2[i] > far_d) {
                    far_d = state.own_d2[i];
                    far = i;
                }
            }
            taken[far] = 1;
            --counts[state.assign[far]];
            state.inertia -= state.own_d2[far];
            state.assign[far] = c;
            state.own_d2[far] = 0.0;
            ++counts[c];
        }
        if (inertia_trace) inertia_trace->push_back(state.inertia);

        EmbeddingTable next(static_cast<std::size_t>(k), dim);
        for (std::size_t i = 0; i < n; ++i) axpy(1.0, z.row(i), next.row(state.assign[i]));
        for (int c = 0; c < k; ++c) {
            const double inv = 1.0 / static_cast<double>(counts[c]);
            for (double& v : next.row(c)) v *= inv;
        }

        double shift = 0.0;
        for (int c = 0; c < k; ++c)
            shift = std::max(shift, std::sqrt(squared_distance(next.row(c), centers.row(c))));
        centers = std::move(next);
        if (shift < tol) break;
    }

    state = assign_points(z, centers);
    KMeansResult out;
    out.partition = Partition{std::move(state.assign), k};
    out.centers = std::move(centers);
    out.inertia = state.inertia;
    return out;
}

KMeansResult kmeans(const EmbeddingTable& z, int k, std::uint64_t seed, int n_init) {
    if (k < 1) throw std::invalid_argument("kmeans: k must be >= 1");
    if (static_cast<std::size_t>(k) > z.rows())
        throw std::invalid_argument("kmeans: k exceeds number of points");
    if (n_init < 1) throw std::invalid_argument("kmeans: n_init must be >= 1");

    KMeansResult best;
    best.inertia = kInf;
    for (int r = 0; r < n_init; ++r) {
        auto rng = make_rng(seed, static_cast<std::uint64_t>(r));
        KMeansResult res = lloyd(z, kmeanspp_init(z, k, rng), 300, 1e-6, nullptr);
        if (res.inertia < best.inertia) best = std::move(res);
    }
    return best;
}

}  // namespace tgc::metrics
