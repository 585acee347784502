#pragma once

#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "tgc/embedding.hpp"
#include "tgc/grad.hpp"
#include "tgc/graph.hpp"
#include "tgc/sampling.hpp"

namespace tgc::hawkes {

// Global decay rate, kept positive by storing its log.
struct HawkesParams {
    double log_decay = 0.0;
    double decay() const { return std::exp(log_decay); }
};

// How a negative sample n enters the loss, named by where the decision margin
// sits: `unit_margin` scores -log sig(1 - lambda), `zero_margin` scores
// -log sig(-lambda).
enum class NegativeForm { unit_margin, zero_margin };

// mu = -||zx - zy||^2; zero only when the vectors coincide.
double base_intensity(std::span<const double> zx, std::span<const double> zy);

// exp(-decay_rate * (t_c - t_i)), in (0, 1] for t_c >= t_i.
double time_decay(double t_c, double t_i, double decay_rate);

// Softmax over base intensities between each neighbor and x. Positive, sums
// to one. Throws on an empty view; conditional_intensity handles that case.
std::vector<double> neighbor_weights(NodeId x, NeighborView view, const EmbeddingTable& z);

// lambda = mu(x,y) + sum_i w_i * f(t - t_i) * mu(i, y). An empty view leaves
// only the base term.
double conditional_intensity(NodeId x, NodeId y, double t, NeighborView view,
                             const EmbeddingTable& z, const HawkesParams& params);

// Scratch reused across interactions.
struct Workspace {
    std::vector<double> mu_xh;
    std::vector<double> omega;
    std::vector<double> decay_f;
    std::vector<double> hawkes_term;
    std::vector<NodeId> negatives;
};

// Loss for one interaction with already-drawn negatives. When grad is
// non-null, accumulates weight-scaled gradients for every touched embedding
// row and for log_decay. Centers are untouched here.
double interaction_loss(const Interaction& event, NeighborView view,
                        std::span<const NodeId> negatives, const EmbeddingTable& z,
                        const HawkesParams& params, NegativeForm form, Workspace& ws,
                        GradAccumulator* grad, double weight = 1.0);

// Batch loss: per interaction, builds the neighbor view at strict-before time
// cutoff and draws n_neg negatives avoiding both endpoints.
double temporal_loss(std::span<const Interaction> batch, const TemporalGraph& g,
                     std::size_t neighbor_len, const EmbeddingTable& z,
                     const HawkesParams& params, const UnigramTable& sampler,
                     std::mt19937_64& rng, int n_neg, NegativeForm form,
                     GradAccumulator* grad, double weight = 1.0);

}  // namespace tgc::hawkes
