#include "tgc/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "tgc/grad.hpp"
#include "tgc/rng.hpp"
#include "tgc/sampling.hpp"

namespace tgc::train {

namespace {

constexpr double kBeta1 = 0.9;
constexpr double kBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

// Stream tags so each random consumer gets an independent sequence.
constexpr std::uint64_t kStreamCenters = 0x7c3a;
constexpr std::uint64_t kStreamNegatives = 0x9b1d;
constexpr std::uint64_t kStreamCheckInit = 0x51f2;
constexpr std::uint64_t kStreamCheckProbe = 0x6e40;

struct AdamState {
    std::vector<double> m_nodes, v_nodes;
    std::vector<double> m_centers, v_centers;
    double m_decay = 0.0, v_decay = 0.0;
    std::int64_t step = 0;

    AdamState(std::size_t n, std::size_t dim, std::size_t k)
        : m_nodes(n * dim, 0.0),
          v_nodes(n * dim, 0.0),
          m_centers(k * dim, 0.0),
          v_centers(k * dim, 0.0) {}
};

void adam_row(std::span<double> param, std::span<const double> g, double* m, double* v,
              double lr, double bc1, double bc2) {
    for (std::size_t i = 0; i < param.size(); ++i) {
        m[i] = kBeta1 * m[i] + (1.0 - kBeta1) * g[i];
        v[i] = kBeta2 * v[i] + (1.0 - kBeta2) * g[i] * g[i];
        param[i] -= lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + kAdamEps);
    }
}

void sgd_row(std::span<double> param, std::span<const double> g, double lr) {
    for (std::size_t i = 0; i < param.size(); ++i) param[i] -= lr * g[i];
}

// Applies one optimizer step for everything the batch touched: opened
// embedding rows (ascending node order), all centers and the decay rate.
void apply_gradients(GradAccumulator& grad, const TrainConfig& cfg, AdamState* adam,
                     EmbeddingTable& zt, cluster::ClusterModel& model,
                     hawkes::HawkesParams& hp) {
    const double lr = cfg.learning_rate;
    const auto touched = grad.sorted_touched();
    const std::size_t dim = grad.dim();

    if (cfg.optimizer == Optimizer::sgd) {
        for (NodeId v : touched) sgd_row(zt.row(v), grad.node_grad(v), lr);
        for (std::size_t c = 0; c < grad.num_centers(); ++c)
            sgd_row(model.centers.row(c), grad.center_grad(c), lr);
        hp.log_decay -= lr * grad.log_decay_grad();
        return;
    }

    ++adam->step;
    const double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(adam->step));
    const double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(adam->step));
    for (NodeId v : touched)
        adam_row(zt.row(v), grad.node_grad(v), adam->m_nodes.data() + v * dim,
                 adam->v_nodes.data() + v * dim, lr, bc1, bc2);
    for (std::size_t c = 0; c < grad.num_centers(); ++c)
        adam_row(model.centers.row(c), grad.center_grad(c), adam->m_centers.data() + c * dim,
                 adam->v_centers.data() + c * dim, lr, bc1, bc2);
    {
        const double g = grad.log_decay_grad();
        adam->m_decay = kBeta1 * adam->m_decay + (1.0 - kBeta1) * g;
        adam->v_decay = kBeta2 * adam->v_decay + (1.0 - kBeta2) * g * g;
        hp.log_decay -=
            lr * (adam->m_decay / bc1) / (std::sqrt(adam->v_decay / bc2) + kAdamEps);
    }
}

// Soft-assignment targets for the given nodes, anchored on the frozen initial
// features against the current centers.
std::vector<cluster::AssignmentRow> compute_targets(const EmbeddingTable& z0,
                                                    const cluster::ClusterModel& model,
                                                    std::span<const NodeId> nodes) {
    std::vector<cluster::AssignmentRow> q;
    q.reserve(nodes.size());
    for (NodeId v : nodes) q.push_back(cluster::soft_assignment(z0.row(v), model));
    return cluster::target_distribution(q);
}

void ensure_finite(double value, const char* component, int epoch, std::size_t batch_index) {
    if (std::isfinite(value)) return;
    std::ostringstream msg;
    msg << "training diverged: non-finite " << component << " loss at epoch " << epoch
        << ", batch " << batch_index;
    throw std::runtime_error(msg.str());
}

std::size_t target_bytes(const std::vector<cluster::AssignmentRow>& targets,
                         const std::vector<NodeId>& target_nodes) {
    std::size_t bytes = targets.size() * sizeof(cluster::AssignmentRow) +
                        target_nodes.capacity() * sizeof(NodeId);
    for (const auto& row : targets) bytes += row.capacity() * sizeof(double);
    return bytes;
}

}  // namespace

void TrainConfig::validate() const {
    if (dim == 0) throw std::invalid_argument("dim must be positive");
    if (epochs < 0) throw std::invalid_argument("epochs must be non-negative");
    if (batch_size == 0) throw std::invalid_argument("batch_size must be positive");
    if (neighbor_len == 0) throw std::invalid_argument("neighbor_len must be positive");
    if (n_neg < 1) throw std::invalid_argument("n_neg must be positive");
    if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
        throw std::invalid_argument("learning_rate must be a non-negative finite value");
    if (cluster_k < 0 || cluster_k == 1)
        throw std::invalid_argument("cluster_k must be 0 (derive from labels) or at least 2");
    if (!(dof > 0.0) || !std::isfinite(dof))
        throw std::invalid_argument("dof must be a positive finite value");
    const auto ok = [](double w) { return w >= 0.0 && std::isfinite(w); };
    if (!ok(weights.temporal) || !ok(weights.node) || !ok(weights.batch))
        throw std::invalid_argument("loss weights must be non-negative finite values");
}

int TrainConfig::resolve_k(const TemporalGraph& g) const {
    if (cluster_k >= 2) return cluster_k;
    if (g.has_labels() && g.num_clusters() >= 2) return g.num_clusters();
    throw std::invalid_argument(
        "number of clusters unknown: set cluster_k or attach labels with at least 2 classes");
}

TrainResult train(const TemporalGraph& g_in, const EmbeddingTable& z0, const TrainConfig& cfg) {
    cfg.validate();
    if (z0.rows() != g_in.num_nodes()) {
        std::ostringstream msg;
        msg << "train: feature table has " << z0.rows() << " rows, graph has "
            << g_in.num_nodes() << " nodes";
        throw std::invalid_argument(msg.str());
    }
    if (z0.dim() != cfg.dim) {
        std::ostringstream msg;
        msg << "train: feature dimension " << z0.dim() << " does not match configured dim "
            << cfg.dim;
        throw std::invalid_argument(msg.str());
    }

    const bool use_tem = cfg.weights.temporal != 0.0;
    const bool use_node = cfg.weights.node != 0.0;
    const bool use_batch = cfg.weights.batch != 0.0;
    const bool need_negatives = use_tem || use_batch;

    // Centers are only consulted by the node-distribution loss; a purely
    // temporal run needs no cluster count at all.
    int k = 0;
    if (cfg.cluster_k >= 2)
        k = cfg.cluster_k;
    else if (g_in.has_labels() && g_in.num_clusters() >= 2)
        k = g_in.num_clusters();
    if (use_node && k == 0) cfg.resolve_k(g_in);  // throws with the explanatory message

    std::optional<TemporalGraph> rescaled;
    if (cfg.time_rescale == TimeRescale::unit_interval)
        rescaled = g_in.with_unit_interval_times();
    const TemporalGraph& g = rescaled ? *rescaled : g_in;

    TrainResult out{
        z0,
        k > 0 ? cluster::init_centers(z0, k, derive_seed(cfg.seed, kStreamCenters), cfg.dof)
              : cluster::ClusterModel{},
        hawkes::HawkesParams{},
        {}};
    EmbeddingTable& zt = out.embeddings;
    cluster::ClusterModel& model = out.model;
    hawkes::HawkesParams& hp = out.hawkes_params;

    const UnigramTable sampler(g.degrees());
    auto neg_rng = make_rng(cfg.seed, kStreamNegatives);

    GradAccumulator grad(g.num_nodes(), cfg.dim, static_cast<std::size_t>(k));
    std::optional<AdamState> adam;
    if (cfg.optimizer == Optimizer::adam)
        adam.emplace(g.num_nodes(), cfg.dim, static_cast<std::size_t>(k));

    const auto batches = g.chronological_batches(cfg.batch_size);

    hawkes::Workspace ws;
    std::vector<NodeId> negatives(static_cast<std::size_t>(cfg.n_neg));
    std::vector<NodeId> nbr_ids;
    nbr_ids.reserve(cfg.neighbor_len);

    std::vector<NodeId> all_nodes;
    if (use_node && cfg.p_refresh == PRefresh::per_epoch) {
        all_nodes.resize(g.num_nodes());
        std::iota(all_nodes.begin(), all_nodes.end(), NodeId{0});
    }
    std::vector<cluster::AssignmentRow> targets;
    std::vector<NodeId> target_nodes;  // sorted per-batch refresh domain

    const auto target_row = [&](NodeId v) -> const cluster::AssignmentRow& {
        if (cfg.p_refresh == PRefresh::per_epoch) return targets[v];
        const auto it = std::lower_bound(target_nodes.begin(), target_nodes.end(), v);
        return targets[static_cast<std::size_t>(it - target_nodes.begin())];
    };

    out.report.epochs.reserve(static_cast<std::size_t>(cfg.epochs));
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        const auto epoch_start = std::chrono::steady_clock::now();
        EpochStats stats;
        if (use_node && cfg.p_refresh == PRefresh::per_epoch)
            targets = compute_targets(z0, model, all_nodes);

        for (std::size_t b = 0; b < batches.size(); ++b) {
            const auto batch = batches[b];
            grad.reset();
            if (use_node && cfg.p_refresh == PRefresh::per_batch) {
                target_nodes.clear();
                for (const auto& ev : batch) {
                    target_nodes.push_back(ev.source);
                    target_nodes.push_back(ev.target);
                }
                std::sort(target_nodes.begin(), target_nodes.end());
                target_nodes.erase(std::unique(target_nodes.begin(), target_nodes.end()),
                                   target_nodes.end());
                targets = compute_targets(z0, model, target_nodes);
            }

            double batch_tem = 0.0, batch_node = 0.0, batch_batch = 0.0, batch_total = 0.0;
            for (const auto& ev : batch) {
                const auto view = g.neighbor_view(ev.source, ev.time, cfg.neighbor_len);
                if (need_negatives)
                    for (auto& n : negatives)
                        n = sampler.sample_excluding(neg_rng, ev.source, ev.target);

                double l_tem = 0.0, l_node = 0.0, l_batch = 0.0;
                if (use_tem)
                    l_tem = hawkes::interaction_loss(ev, view, negatives, zt, hp,
                                                     cfg.negative_form, ws, &grad,
                                                     cfg.weights.temporal);
                if (use_node)
                    l_node = cluster::node_distribution_loss(target_row(ev.source), ev.source,
                                                             zt, model, &grad,
                                                             cfg.weights.node);
                if (use_batch) {
                    nbr_ids.clear();
                    for (const auto& entry : view) nbr_ids.push_back(entry.node);
                    l_batch = cluster::batch_reconstruction_loss(ev.source, ev.target, nbr_ids,
                                                                 negatives, zt, &grad,
                                                                 cfg.weights.batch);
                }
                batch_tem += l_tem;
                batch_node += l_node;
                batch_batch += l_batch;
                batch_total += cfg.weights.temporal * l_tem + cfg.weights.node * l_node +
                               cfg.weights.batch * l_batch;
            }
            ensure_finite(batch_tem, "temporal", epoch, b);
            ensure_finite(batch_node, "node-distribution", epoch, b);
            ensure_finite(batch_batch, "batch-reconstruction", epoch, b);

            const std::size_t incremental =
                grad.bytes_estimate() + target_bytes(targets, target_nodes) +
                (negatives.capacity() + nbr_ids.capacity()) * sizeof(NodeId) +
                (ws.mu_xh.capacity() + ws.omega.capacity() + ws.decay_f.capacity() +
                 ws.hawkes_term.capacity()) *
                    sizeof(double);
            out.report.peak_incremental_bytes =
                std::max(out.report.peak_incremental_bytes, incremental);

            apply_gradients(grad, cfg, adam ? &*adam : nullptr, zt, model, hp);

            stats.temporal_loss += batch_tem;
            stats.node_loss += batch_node;
            stats.batch_loss += batch_batch;
            stats.total_loss += batch_total;
        }

        stats.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - epoch_start)
                .count();
        out.report.epochs.push_back(stats);
    }
    return out;
}

double gradient_check(const TemporalGraph& g_in, const TrainConfig& cfg, int n_probes) {
    cfg.validate();
    if (n_probes < 1) throw std::invalid_argument("gradient_check: n_probes must be positive");
    const int k = cfg.resolve_k(g_in);
    constexpr double kStep = 1e-5;

    std::optional<TemporalGraph> rescaled;
    if (cfg.time_rescale == TimeRescale::unit_interval)
        rescaled = g_in.with_unit_interval_times();
    const TemporalGraph& g = rescaled ? *rescaled : g_in;

    // Frozen snapshot: seeded random anchor features, an evolving table
    // jittered away from them, one fixed negative set per interaction and
    // fixed targets. Everything differentiated is then deterministic.
    EmbeddingTable z0(g.num_nodes(), cfg.dim);
    EmbeddingTable zt(g.num_nodes(), cfg.dim);
    {
        auto rng = make_rng(cfg.seed, kStreamCheckInit);
        std::normal_distribution<double> base(0.0, 0.5);
        for (double& x : z0.flat()) x = base(rng);
        std::normal_distribution<double> jitter(0.0, 0.05);
        for (std::size_t i = 0; i < zt.flat().size(); ++i)
            zt.flat()[i] = z0.flat()[i] + jitter(rng);
    }
    cluster::ClusterModel model =
        cluster::init_centers(z0, k, derive_seed(cfg.seed, kStreamCenters), cfg.dof);
    hawkes::HawkesParams hp;
    hp.log_decay = 0.25;  // off the init so the decay path is exercised asymmetrically

    const UnigramTable sampler(g.degrees());
    std::vector<std::vector<NodeId>> negatives(g.num_interactions());
    {
        auto rng = make_rng(cfg.seed, kStreamNegatives);
        const auto events = g.interactions();
        for (std::size_t i = 0; i < events.size(); ++i) {
            negatives[i].resize(static_cast<std::size_t>(cfg.n_neg));
            for (auto& n : negatives[i])
                n = sampler.sample_excluding(rng, events[i].source, events[i].target);
        }
    }
    std::vector<NodeId> all_nodes(g.num_nodes());
    std::iota(all_nodes.begin(), all_nodes.end(), NodeId{0});
    const auto targets = compute_targets(z0, model, all_nodes);

    const std::size_t n_emb = zt.flat().size();
    const std::size_t n_ctr = model.centers.flat().size();
    const std::size_t total_params = n_emb + n_ctr + 1;

    const auto param_ref = [&](std::size_t idx) -> double& {
        if (idx < n_emb) return zt.flat()[idx];
        if (idx < n_emb + n_ctr) return model.centers.flat()[idx - n_emb];
        return hp.log_decay;
    };

    enum class Component { temporal, node, batch };
    const auto run = [&](Component c, GradAccumulator* grad) {
        hawkes::Workspace ws;
        std::vector<NodeId> nbr_ids;
        double total = 0.0;
        const auto events = g.interactions();
        for (std::size_t i = 0; i < events.size(); ++i) {
            const auto& ev = events[i];
            const auto view = g.neighbor_view(ev.source, ev.time, cfg.neighbor_len);
            switch (c) {
                case Component::temporal:
                    total += hawkes::interaction_loss(ev, view, negatives[i], zt, hp,
                                                      cfg.negative_form, ws, grad);
                    break;
                case Component::node:
                    total += cluster::node_distribution_loss(targets[ev.source], ev.source, zt,
                                                             model, grad);
                    break;
                case Component::batch:
                    nbr_ids.clear();
                    for (const auto& entry : view) nbr_ids.push_back(entry.node);
                    total += cluster::batch_reconstruction_loss(ev.source, ev.target, nbr_ids,
                                                                negatives[i], zt, grad);
                    break;
            }
        }
        return total;
    };

    // Probe set: every center coordinate, the decay rate, then random
    // embedding coordinates (without replacement) up to n_probes.
    std::vector<std::size_t> probes;
    probes.reserve(std::min<std::size_t>(total_params, static_cast<std::size_t>(n_probes)));
    for (std::size_t i = 0; i < n_ctr; ++i) probes.push_back(n_emb + i);
    probes.push_back(n_emb + n_ctr);
    {
        std::vector<std::size_t> emb_idx(n_emb);
        std::iota(emb_idx.begin(), emb_idx.end(), std::size_t{0});
        auto rng = make_rng(cfg.seed, kStreamCheckProbe);
        std::shuffle(emb_idx.begin(), emb_idx.end(), rng);
        for (std::size_t i = 0; i < n_emb && probes.size() < static_cast<std::size_t>(n_probes);
             ++i)
            probes.push_back(emb_idx[i]);
    }
    std::sort(probes.begin(), probes.end());

    double max_rel = 0.0;
    for (Component c : {Component::temporal, Component::node, Component::batch}) {
        GradAccumulator grad(g.num_nodes(), cfg.dim, static_cast<std::size_t>(k));
        run(c, &grad);
        const auto analytic_at = [&](std::size_t idx) -> double {
            if (idx < n_emb) {
                const NodeId v = static_cast<NodeId>(idx / cfg.dim);
                if (!grad.node_touched(v)) return 0.0;
                return grad.node_grad(v)[idx % cfg.dim];
            }
            if (idx < n_emb + n_ctr) {
                const std::size_t rel = idx - n_emb;
                return grad.center_grad(rel / cfg.dim)[rel % cfg.dim];
            }
            return grad.log_decay_grad();
        };

        for (std::size_t idx : probes) {
            double& p = param_ref(idx);
            const double saved = p;
            p = saved + kStep;
            const double up = run(c, nullptr);
            p = saved - kStep;
            const double down = run(c, nullptr);
            p = saved;
            const double fd = (up - down) / (2.0 * kStep);
            const double a = analytic_at(idx);
            const double rel =
                std::abs(a - fd) / std::max({std::abs(a), std::abs(fd), 1e-8});
            max_rel = std::max(max_rel, rel);
        }
    }
    return max_rel;
}

std::vector<TrainReport> sweep_batch_size(const TemporalGraph& g, const EmbeddingTable& z0,
                                          const TrainConfig& base,
                                          const std::vector<std::size_t>& sizes) {
    if (sizes.empty()) throw std::invalid_argument("sweep_batch_size: sizes must be non-empty");
    std::vector<TrainReport> reports;
    reports.reserve(sizes.size());
    for (std::size_t size : sizes) {
        TrainConfig cfg = base;
        cfg.batch_size = size;
        cfg.epochs = 1;
        reports.push_back(train(g, z0, cfg).report);
    }
    return reports;
}

}  // namespace tgc::train
