#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "tgc/graph.hpp"

namespace tgc {

// Sparse per-batch gradient buffer: embedding rows are opened lazily on first
// touch, so a batch only pays for the nodes it references. Center gradients
// and the decay-rate slot are dense (they are touched every batch).
class GradAccumulator {
public:
    GradAccumulator(std::size_t num_nodes, std::size_t dim, std::size_t num_centers)
        : dim_(dim),
          slot_(num_nodes, -1),
          center_rows_(num_centers * dim, 0.0),
          num_centers_(num_centers) {}

    std::size_t dim() const { return dim_; }

    std::span<double> node_grad(NodeId v) {
        std::int32_t s = slot_[v];
        if (s < 0) {
            s = static_cast<std::int32_t>(touched_.size());
            slot_[v] = s;
            touched_.push_back(v);
            rows_.resize(rows_.size() + dim_, 0.0);
        }
        return {rows_.data() + static_cast<std::size_t>(s) * dim_, dim_};
    }

    bool node_touched(NodeId v) const { return slot_[v] >= 0; }
    std::span<const NodeId> touched_nodes() const { return touched_; }

    // Ascending node order, for order-independent (deterministic) application.
    std::vector<NodeId> sorted_touched() const {
        std::vector<NodeId> s(touched_.begin(), touched_.end());
        std::sort(s.begin(), s.end());
        return s;
    }

    std::span<double> center_grad(std::size_t c) {
        return {center_rows_.data() + c * dim_, dim_};
    }
    std::span<const double> center_grad(std::size_t c) const {
        return {center_rows_.data() + c * dim_, dim_};
    }
    std::size_t num_centers() const { return num_centers_; }

    double& log_decay_grad() { return log_decay_grad_; }
    double log_decay_grad() const { return log_decay_grad_; }

    void reset() {
        for (NodeId v : touched_) slot_[v] = -1;
        touched_.clear();
        rows_.clear();
        std::fill(center_rows_.begin(), center_rows_.end(), 0.0);
        log_decay_grad_ = 0.0;
    }

    // Bytes this batch actually occupies: opened rows, the touch list, the
    // node->slot index, dense center block and the decay slot.
    std::size_t bytes_estimate() const {
        return touched_.size() * (dim_ * sizeof(double) + sizeof(NodeId)) +
               slot_.size() * sizeof(std::int32_t) + center_rows_.size() * sizeof(double) +
               sizeof(double);
    }

private:
    std::size_t dim_;
    std::vector<std::int32_t> slot_;
    std::vector<NodeId> touched_;
    std::vector<double> rows_;
    std::vector<double> center_rows_;
    std::size_t num_centers_;
    double log_decay_grad_ = 0.0;
};

}  // namespace tgc
