#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tgc/embedding.hpp"
#include "tgc/grad.hpp"
#include "tgc/graph.hpp"

namespace tgc::cluster {

// K trainable center vectors plus the Student-t degrees of freedom.
struct ClusterModel {
    EmbeddingTable centers;  // K x dim
    double dof = 1.0;

    int k() const { return static_cast<int>(centers.rows()); }
};

// One row of soft assignments; entries positive, summing to one.
using AssignmentRow = std::vector<double>;

// Student-t kernel probability of membership in each cluster:
// q_k ~ (1 + ||z - c_k||^2 / v)^(-(v+1)/2), normalized over clusters.
AssignmentRow soft_assignment(std::span<const double> zx, const ClusterModel& model);

// Sharpened self-training target: p_k ~ q_k^2 / f_k with f_k the column sum
// over the given node set, renormalized per row.
std::vector<AssignmentRow> target_distribution(const std::vector<AssignmentRow>& q);

// KL(p || q'(z_x)) for one node against the current embeddings. p is a fixed
// target; gradients flow into the embedding row of x and into the centers.
// Probabilities are floored at 1e-8 inside the logs.
double node_distribution_loss(std::span<const double> p, NodeId x, const EmbeddingTable& z,
                              const ClusterModel& model, GradAccumulator* grad,
                              double weight = 1.0);

// Cosine-similarity reconstruction for one interaction: the observed pair and
// the neighbors are pushed toward similarity 1, sampled negatives toward 0.
// Neighbor and negative terms are averaged over their sets so the scale does
// not depend on the view length or the sample count.
double batch_reconstruction_loss(NodeId x, NodeId y, std::span<const NodeId> neighbors,
                                 std::span<const NodeId> negatives, const EmbeddingTable& z,
                                 GradAccumulator* grad, double weight = 1.0);

// K-means centroids of the initial features; deterministic under seed.
ClusterModel init_centers(const EmbeddingTable& z0, int k, std::uint64_t seed, double dof = 1.0);

}  // namespace tgc::cluster
