#pragma once

#include <cstdint>
#include <vector>

#include "tgc/embedding.hpp"

namespace tgc::metrics {

// Hard cluster assignment over a node set; every id lies in [0, K).
struct Partition {
    std::vector<int> assignment;
    int num_clusters = 0;
};

struct MetricsReport {
    double acc = 0.0;
    double nmi = 0.0;
    double ari = 0.0;
    double f1 = 0.0;
};

struct KMeansResult {
    Partition partition;
    EmbeddingTable centers;  // K x dim
    double inertia = 0.0;
};

// Lloyd iterations with k-means++ seeding, `n_init` restarts, best inertia
// wins (ties keep the earliest restart). Empty clusters are re-seeded at the
// point farthest from its currently assigned center. Deterministic under a
// fixed seed.
KMeansResult kmeans(const EmbeddingTable& z, int k, std::uint64_t seed, int n_init = 10);

// One Lloyd run from the given centers; stops when the largest center shift
// drops below tol or after max_iter rounds. When inertia_trace is non-null it
// records the inertia after each assignment pass.
KMeansResult lloyd(const EmbeddingTable& z, EmbeddingTable centers, int max_iter = 300,
                   double tol = 1e-6, std::vector<double>* inertia_trace = nullptr);

// Maximum-score one-to-one matching on a square score matrix (Hungarian
// algorithm). Returns the matched column per row.
std::vector<int> hungarian_max(const std::vector<std::vector<double>>& score);

// Clustering accuracy: matched fraction under the optimal label bijection.
double accuracy(const Partition& pred, const Partition& truth);

// Mutual information normalized by the arithmetic mean of the entropies.
// When both partitions are a single cluster the value is 1.
double nmi(const Partition& pred, const Partition& truth);

// Adjusted Rand index via pair counting with expected-index correction.
double ari(const Partition& pred, const Partition& truth);

// Macro-averaged F1 after relabeling pred with the accuracy matching.
// Truth classes that the matching never predicts contribute 0.
double macro_f1(const Partition& pred, const Partition& truth);

MetricsReport evaluate(const Partition& pred, const Partition& truth);

}  // namespace tgc::metrics
