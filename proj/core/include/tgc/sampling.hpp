#pragma once

#include <random>
#include <span>
#include <vector>

#include "tgc/graph.hpp"

namespace tgc {

// Negative-sampling distribution with mass proportional to count^power
// (power 0.75 by default). Backed by a cumulative table and binary search;
// shared by the temporal loss and skip-gram pretraining.
class UnigramTable {
public:
    explicit UnigramTable(std::span<const std::size_t> counts, double power = 0.75);

    std::size_t size() const { return cumulative_.size(); }

    // Normalized probability of drawing `v`.
    double mass(NodeId v) const;

    NodeId sample(std::mt19937_64& rng) const;

    // Draws avoiding `a` and `b`; resamples on collision up to max_attempts,
    // then accepts whatever came last.
    NodeId sample_excluding(std::mt19937_64& rng, NodeId a, NodeId b,
                            int max_attempts = 100) const;

private:
    std::vector<double> cumulative_;
};

}  // namespace tgc
