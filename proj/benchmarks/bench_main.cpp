// Microbenchmarks for the hot paths: history lookups, the per-interaction
// losses and k-means. Fixtures are built once outside the timed loops.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "tgc/cluster.hpp"
#include "tgc/embedding.hpp"
#include "tgc/graph.hpp"
#include "tgc/grad.hpp"
#include "tgc/hawkes.hpp"
#include "tgc/metrics.hpp"
#include "tgc/rng.hpp"
#include "tgc/synth.hpp"

namespace {

const tgc::TemporalGraph& planted_graph() {
    static const tgc::TemporalGraph g = [] {
        tgc::synth::SynthConfig cfg;
        cfg.n = 200;
        cfg.k = 4;
        cfg.n_events = 20000;
        cfg.seed = 1;
        return tgc::synth::generate(cfg);
    }();
    return g;
}

tgc::EmbeddingTable random_table(std::size_t rows, std::size_t dim, std::uint64_t seed) {
    tgc::EmbeddingTable z(rows, dim);
    auto rng = tgc::make_rng(seed);
    std::normal_distribution<double> gauss(0.0, 0.3);
    for (double& v : z.flat()) v = gauss(rng);
    return z;
}

void BM_NeighborView(benchmark::State& state) {
    const auto& g = planted_graph();
    const auto events = g.interactions();
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& ev = events[i];
        benchmark::DoNotOptimize(g.neighbor_view(ev.source, ev.time, 5));
        i = (i + 1) % events.size();
    }
}
BENCHMARK(BM_NeighborView);

void BM_TemporalInteractionLoss(benchmark::State& state) {
    const auto& g = planted_graph();
    const auto dim = static_cast<std::size_t>(state.range(0));
    const auto z = random_table(g.num_nodes(), dim, 2);
    const tgc::hawkes::HawkesParams hp;
    const tgc::UnigramTable sampler(g.degrees());
    auto rng = tgc::make_rng(3);

    const auto events = g.interactions();
    tgc::hawkes::Workspace ws;
    tgc::GradAccumulator grad(g.num_nodes(), dim, 0);
    std::vector<tgc::NodeId> negatives(5);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& ev = events[i];
        const auto view = g.neighbor_view(ev.source, ev.time, 5);
        for (auto& n : negatives) n = sampler.sample_excluding(rng, ev.source, ev.target);
        grad.reset();
        benchmark::DoNotOptimize(tgc::hawkes::interaction_loss(
            ev, view, negatives, z, hp, tgc::hawkes::NegativeForm::unit_margin, ws, &grad));
        i = (i + 1) % events.size();
    }
}
BENCHMARK(BM_TemporalInteractionLoss)->Arg(32)->Arg(128);

void BM_NodeDistributionLoss(benchmark::State& state) {
    const auto& g = planted_graph();
    const auto z = random_table(g.num_nodes(), 128, 4);
    const auto model = tgc::cluster::init_centers(z, 4, 5);
    std::vector<tgc::cluster::AssignmentRow> targets;
    for (tgc::NodeId v = 0; v < g.num_nodes(); ++v)
        targets.push_back(tgc::cluster::soft_assignment(z.row(v), model));

    tgc::GradAccumulator grad(g.num_nodes(), 128, 4);
    tgc::NodeId v = 0;
    for (auto _ : state) {
        grad.reset();
        benchmark::DoNotOptimize(
            tgc::cluster::node_distribution_loss(targets[v], v, z, model, &grad));
        v = (v + 1) % static_cast<tgc::NodeId>(g.num_nodes());
    }
}
BENCHMARK(BM_NodeDistributionLoss);

void BM_KMeans(benchmark::State& state) {
    const auto z = random_table(200, 32, 6);
    for (auto _ : state)
        benchmark::DoNotOptimize(tgc::metrics::kmeans(z, 4, 7, 1));
}
BENCHMARK(BM_KMeans)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
