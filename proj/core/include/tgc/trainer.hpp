#pragma once

#include <cstdint>
#include <vector>

#include "tgc/cluster.hpp"
#include "tgc/embedding.hpp"
#include "tgc/graph.hpp"
#include "tgc/hawkes.hpp"

namespace tgc::train {

enum class Optimizer { sgd, adam };

// When the soft-assignment targets are recomputed: once per epoch for every
// node, or per batch for just the nodes that batch touches.
enum class PRefresh { per_epoch, per_batch };

// Interaction times can be affinely mapped onto [0, 1] before training so the
// decay rate works on a dataset-independent scale.
enum class TimeRescale { none, unit_interval };

struct LossWeights {
    double temporal = 1.0;
    double node = 1.0;
    double batch = 1.0;
};

struct TrainConfig {
    std::size_t dim = 128;
    int epochs = 50;
    std::size_t batch_size = 1024;
    std::size_t neighbor_len = 5;
    int n_neg = 5;
    double learning_rate = 1e-3;
    Optimizer optimizer = Optimizer::adam;
    PRefresh p_refresh = PRefresh::per_epoch;
    TimeRescale time_rescale = TimeRescale::unit_interval;
    hawkes::NegativeForm negative_form = hawkes::NegativeForm::unit_margin;
    LossWeights weights;
    // Number of clusters; 0 means "derive from the graph's attached labels".
    int cluster_k = 0;
    double dof = 1.0;
    std::uint64_t seed = 0;

    // Throws std::invalid_argument on out-of-range values.
    void validate() const;

    // Resolves cluster_k against the graph's labels; throws if neither source
    // provides a usable count.
    int resolve_k(const TemporalGraph& g) const;
};

struct EpochStats {
    // Unweighted sums over the epoch's interactions, one per loss component.
    double temporal_loss = 0.0;
    double node_loss = 0.0;
    double batch_loss = 0.0;
    // Weighted total, accumulated interaction by interaction.
    double total_loss = 0.0;
    double wall_seconds = 0.0;
};

struct TrainReport {
    std::vector<EpochStats> epochs;
    // Largest per-batch transient footprint seen during training: gradient
    // buffers, target-distribution rows and sampling scratch. Model state
    // (embeddings, centers, optimizer moments) is excluded since it exists
    // independently of how interactions are batched.
    std::size_t peak_incremental_bytes = 0;
};

struct TrainResult {
    EmbeddingTable embeddings;
    cluster::ClusterModel model;
    hawkes::HawkesParams hawkes_params;
    TrainReport report;
};

// Runs chronological mini-batch training of the temporal + clustering
// objective starting from the given initial features. The initial table also
// anchors the soft-assignment targets and the cluster-center initialisation.
// Throws std::runtime_error if any loss component turns non-finite, naming
// the component, epoch and batch.
TrainResult train(const TemporalGraph& g, const EmbeddingTable& z0, const TrainConfig& cfg);

// Compares analytic gradients of each loss component against central finite
// differences on a frozen snapshot (seeded random embeddings, fixed negatives
// and targets). Probes `n_probes` parameters per component, always including
// the decay rate and every center coordinate, and returns the largest
// relative error seen. Intended for small graphs.
double gradient_check(const TemporalGraph& g, const TrainConfig& cfg, int n_probes);

// Trains one epoch per requested batch size, identical seed and start point,
// and returns the per-size reports (wall time and peak transient memory).
std::vector<TrainReport> sweep_batch_size(const TemporalGraph& g, const EmbeddingTable& z0,
                                          const TrainConfig& base,
                                          const std::vector<std::size_t>& sizes);

}  // namespace tgc::train
