#include "tgc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tgc {

UnigramTable::UnigramTable(std::span<const std::size_t> counts, double power) {
    if (counts.empty()) throw std::invalid_argument("UnigramTable: empty counts");
    cumulative_.resize(counts.size());
    double total = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        total += counts[i] > 0 ? std::pow(static_cast<double>(counts[i]), power) : 0.0;
        cumulative_[i] = total;
    }
    if (total <= 0.0) throw std::invalid_argument("UnigramTable: all counts are zero");
    for (double& c : cumulative_) c /= total;
    cumulative_.back() = 1.0;
}

double UnigramTable::mass(NodeId v) const {
    const double hi = cumulative_[v];
    const double lo = v == 0 ? 0.0 : cumulative_[v - 1];
    return hi - lo;
}

NodeId UnigramTable::sample(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = unit(rng);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<NodeId>(it - cumulative_.begin());
}

NodeId UnigramTable::sample_excluding(std::mt19937_64& rng, NodeId a, NodeId b,
                                      int max_attempts) const {
    NodeId v = sample(rng);
    for (int attempt = 0; attempt < max_attempts && (v == a || v == b); ++attempt)
        v = sample(rng);
    return v;
}

}  // namespace tgc
