#include "tgc/node2vec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tgc/rng.hpp"
#include "tgc/sampling.hpp"
#include "tgc/vecops.hpp"

namespace tgc::pretrain {

namespace {
constexpr double kInitialLr = 0.025;
constexpr double kMinLrFraction = 1e-4;
}  // namespace

void WalkConfig::validate() const {
    if (walk_length < 1 || walks_per_node < 1 || window < 1 || dim < 1 || neg_samples < 1 ||
        epochs < 1)
        throw std::invalid_argument("WalkConfig: counts must be >= 1");
    if (return_param <= 0.0 || inout_param <= 0.0)
        throw std::invalid_argument("WalkConfig: p and q must be positive");
}

std::vector<std::vector<NodeId>> build_adjacency(
    const std::vector<std::pair<NodeId, NodeId>>& edges, std::size_t num_nodes) {
    std::vector<std::vector<NodeId>> adj(num_nodes);
    for (const auto& [a, b] : edges) {
        if (a >= num_nodes || b >= num_nodes)
            throw std::invalid_argument("build_adjacency: node out of range");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& nbrs : adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return adj;
}

NodeId node2vec_step(const std::vector<std::vector<NodeId>>& adj, NodeId prev, NodeId cur,
                     double p, double q, std::mt19937_64& rng) {
    const auto& candidates = adj[cur];
    if (candidates.empty()) throw std::invalid_argument("node2vec_step: dead end");
    const auto& prev_nbrs = adj[prev];

    // Weights are small in count; sample by cumulative scan.
    double total = 0.0;
    thread_local std::vector<double> weights;
    weights.resize(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const NodeId w = candidates[i];
        double wt;
        if (w == prev)
            wt = 1.0 / p;
        else if (std::binary_search(prev_nbrs.begin(), prev_nbrs.end(), w))
            wt = 1.0;
        else
            wt = 1.0 / q;
        weights[i] = wt;
        total += wt;
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double target = unit(rng) * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        acc += weights[i];
        if (acc >= target) return candidates[i];
    }
    return candidates.back();
}

std::vector<std::vector<NodeId>> generate_walks(
    const std::vector<std::pair<NodeId, NodeId>>& edges, std::size_t num_nodes,
    const WalkConfig& cfg) {
    cfg.validate();
    if (edges.empty()) throw std::invalid_argument("generate_walks: empty edge set");
    const auto adj = build_adjacency(edges, num_nodes);

    std::vector<std::vector<NodeId>> walks;
    walks.reserve(num_nodes * cfg.walks_per_node);
    for (std::size_t v = 0; v < num_nodes; ++v) {
        for (std::size_t w = 0; w < cfg.walks_per_node; ++w) {
            auto rng = make_rng(cfg.seed, 0x57a1cULL ^ (v * cfg.walks_per_node + w));
            std::vector<NodeId> walk;
            walk.reserve(cfg.walk_length);
            walk.push_back(static_cast<NodeId>(v));
            while (walk.size() < cfg.walk_length) {
                const NodeId cur = walk.back();
                if (adj[cur].empty()) break;
                if (walk.size() == 1) {
                    std::uniform_int_distribution<std::size_t> pick(0, adj[cur].size() - 1);
                    walk.push_back(adj[cur][pick(rng)]);
                } else {
                    walk.push_back(node2vec_step(adj, walk[walk.size() - 2], cur,
                                                 cfg.return_param, cfg.inout_param, rng));
                }
            }
            walks.push_back(std::move(walk));
        }
    }
    return walks;
}

std::vector<std::pair<NodeId, NodeId>> skipgram_pairs(const std::vector<NodeId>& walk,
                                                      std::size_t window) {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (std::size_t i = 0; i < walk.size(); ++i) {
        const std::size_t lo = i >= window ? i - window : 0;
        const std::size_t hi = std::min(walk.size() - 1, i + window);
        for (std::size_t j = lo; j <= hi; ++j) {
            if (j == i) continue;
            pairs.emplace_back(walk[i], walk[j]);
        }
    }
    return pairs;
}

EmbeddingTable skipgram_train(const std::vector<std::vector<NodeId>>& walks,
                              std::size_t num_nodes, const WalkConfig& cfg,
                              PretrainReport* report) {
    cfg.validate();
    if (walks.empty()) throw std::invalid_argument("skipgram_train: no walks");

    std::vector<std::size_t> counts(num_nodes, 0);
    std::size_t total_positions = 0;
    for (const auto& walk : walks) {
        total_positions += walk.size();
        for (NodeId v : walk) {
            if (v >= num_nodes) throw std::invalid_argument("skipgram_train: node out of range");
            ++counts[v];
        }
    }

    EmbeddingTable syn0(num_nodes, cfg.dim);
    EmbeddingTable syn1(num_nodes, cfg.dim);
    {
        auto rng = make_rng(cfg.seed, 0x1417ULL);
        std::uniform_real_distribution<double> init(-0.5 / static_cast<double>(cfg.dim),
                                                    0.5 / static_cast<double>(cfg.dim));
        for (double& v : syn0.flat()) v = init(rng);
    }

    UnigramTable unigram(counts);
    auto rng = make_rng(cfg.seed, 0x59ULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<std::size_t> order(walks.size());
    std::iota(order.begin(), order.end(), 0);

    std::vector<double> accum(cfg.dim);
    const std::size_t total_work = total_positions * static_cast<std::size_t>(cfg.epochs);
    std::size_t done = 0;

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t wi : order) {
            const auto& walk = walks[wi];
            for (std::size_t i = 0; i < walk.size(); ++i, ++done) {
                const double lr =
                    kInitialLr *
                    std::max(kMinLrFraction,
                             1.0 - static_cast<double>(done) / static_cast<double>(total_work));
                const std::size_t lo = i >= cfg.window ? i - cfg.window : 0;
                const std::size_t hi = std::min(walk.size() - 1, i + cfg.window);
                for (std::size_t j = lo; j <= hi; ++j) {
                    if (j == i) continue;
                    const NodeId center = walk[i];
                    const NodeId context = walk[j];
                    auto in = syn0.row(center);
                    std::fill(accum.begin(), accum.end(), 0.0);
                    for (int s = 0; s <= cfg.neg_samples; ++s) {
                        NodeId target;
                        double label;
                        if (s == 0) {
                            target = context;
                            label = 1.0;
                        } else {
                            target = unigram.sample_excluding(rng, context, context);
                            label = 0.0;
                        }
                        auto out = syn1.row(target);
                        const double g = (label - sigmoid(dot(in, out))) * lr;
                        axpy(g, out, accum);
                        axpy(g, in, out);
                    }
                    axpy(1.0, accum, in);
                }
            }
        }
    }

    if (report) {
        report->untrained_nodes.clear();
        for (std::size_t v = 0; v < num_nodes; ++v)
            if (counts[v] == 0) report->untrained_nodes.push_back(static_cast<NodeId>(v));
    }
    return syn0;
}

EmbeddingTable pretrain_features(const TemporalGraph& g, const WalkConfig& cfg,
                                 PretrainReport* report) {
    const auto edges = g.static_projection();
    const auto walks = generate_walks(edges, g.num_nodes(), cfg);
    return skipgram_train(walks, g.num_nodes(), cfg, report);
}

}  // namespace tgc::pretrain
