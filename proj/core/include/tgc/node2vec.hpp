#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "tgc/embedding.hpp"
#include "tgc/graph.hpp"

namespace tgc::pretrain {

struct WalkConfig {
    std::size_t walk_length = 80;
    std::size_t walks_per_node = 10;
    double return_param = 1.0;  // p: bias against revisiting the previous node
    double inout_param = 1.0;   // q: bias against moving outward
    std::size_t window = 10;
    std::size_t dim = 128;
    int neg_samples = 5;
    int epochs = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

// Sorted neighbor lists from a deduplicated undirected edge set.
std::vector<std::vector<NodeId>> build_adjacency(
    const std::vector<std::pair<NodeId, NodeId>>& edges, std::size_t num_nodes);

// One second-order biased step: candidates around `cur` weighted 1/p when
// returning to `prev`, 1 when staying within prev's neighborhood, 1/q when
// moving outward.
NodeId node2vec_step(const std::vector<std::vector<NodeId>>& adj, NodeId prev, NodeId cur,
                     double p, double q, std::mt19937_64& rng);

// walks_per_node biased walks from every node. Walks stop early at dead ends;
// an isolated node yields a single-element walk. Each walk draws from its own
// seeded stream, so results do not depend on scheduling.
std::vector<std::vector<NodeId>> generate_walks(
    const std::vector<std::pair<NodeId, NodeId>>& edges, std::size_t num_nodes,
    const WalkConfig& cfg);

// Center/context index pairs a walk contributes under a fixed window.
std::vector<std::pair<NodeId, NodeId>> skipgram_pairs(const std::vector<NodeId>& walk,
                                                      std::size_t window);

struct PretrainReport {
    // Nodes that never appeared in a walk and were left at their seeded
    // uniform(-0.5/dim, 0.5/dim) initialization.
    std::vector<NodeId> untrained_nodes;
};

// Skip-gram with negative sampling over the walk corpus. Negatives come from
// the shared unigram table built on corpus occurrence counts^0.75. Bit-stable
// under a fixed config.
EmbeddingTable skipgram_train(const std::vector<std::vector<NodeId>>& walks,
                              std::size_t num_nodes, const WalkConfig& cfg,
                              PretrainReport* report = nullptr);

// Static projection -> walks -> skip-gram; the usual way to get z0.
EmbeddingTable pretrain_features(const TemporalGraph& g, const WalkConfig& cfg,
                                 PretrainReport* report = nullptr);

}  // namespace tgc::pretrain
