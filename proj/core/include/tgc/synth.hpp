#pragma once

#include <cstdint>

#include "tgc/graph.hpp"

namespace tgc::synth {

struct SynthConfig {
    std::size_t n = 200;           // nodes, split evenly over communities
    int k = 4;                     // planted communities
    std::size_t n_events = 20000;  // interactions to emit
    double p_in = 0.9;             // fresh-event probability of staying intra-community
    double recency_boost = 0.0;    // odds of repeating a recently emitted pair
    double horizon = 1.0;          // times drawn uniformly from [0, horizon]
    std::uint64_t seed = 0;

    // Throws std::invalid_argument on out-of-range values. Every community
    // needs at least two members so intra-community events exist.
    void validate() const;
};

// Planted-partition interaction stream with ground-truth labels attached.
// Fresh events pick both endpoints inside one uniformly chosen community with
// probability p_in, otherwise one endpoint from each of two distinct
// communities. With probability recency_boost / (1 + recency_boost) an event
// instead repeats a pair drawn uniformly from the last 100 emitted pairs,
// which clusters repeats in time since events are emitted in time order.
TemporalGraph generate(const SynthConfig& cfg);

}  // namespace tgc::synth
