#include "tgc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tgc/rng.hpp"

namespace tgc::synth {

namespace {

constexpr std::size_t kRecencyWindow = 100;
constexpr std::uint64_t kStreamGenerate = 0x3d6f;

}  // namespace

void SynthConfig::validate() const {
    if (k < 2) throw std::invalid_argument("generate: need at least 2 communities");
    if (n < 2 * static_cast<std::size_t>(k))
        throw std::invalid_argument("generate: need at least two nodes per community");
    if (n_events == 0) throw std::invalid_argument("generate: n_events must be positive");
    if (!(p_in > 0.5) || p_in > 1.0)
        throw std::invalid_argument("generate: p_in must lie in (0.5, 1]");
    if (!(recency_boost >= 0.0) || !std::isfinite(recency_boost))
        throw std::invalid_argument("generate: recency_boost must be non-negative");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("generate: horizon must be positive");
}

TemporalGraph generate(const SynthConfig& cfg) {
    cfg.validate();
    auto rng = make_rng(cfg.seed, kStreamGenerate);

    // Even split; the remainder goes to the last community.
    const std::size_t base = cfg.n / static_cast<std::size_t>(cfg.k);
    const auto community_begin = [&](int c) { return static_cast<std::size_t>(c) * base; };
    const auto community_end = [&](int c) {
        return c == cfg.k - 1 ? cfg.n : static_cast<std::size_t>(c + 1) * base;
    };

    const auto pick_member = [&](int c) {
        std::uniform_int_distribution<std::size_t> d(community_begin(c), community_end(c) - 1);
        return static_cast<NodeId>(d(rng));
    };

    std::vector<double> times(cfg.n_events);
    std::uniform_real_distribution<double> time_dist(0.0, cfg.horizon);
    for (double& t : times) t = time_dist(rng);
    std::sort(times.begin(), times.end());

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> community_dist(0, cfg.k - 1);
    const double p_repeat = cfg.recency_boost / (1.0 + cfg.recency_boost);

    std::deque<std::pair<NodeId, NodeId>> recent;
    std::vector<Interaction> events;
    events.reserve(cfg.n_events);

    for (std::size_t i = 0; i < cfg.n_events; ++i) {
        NodeId a, b;
        if (!recent.empty() && p_repeat > 0.0 && unit(rng) < p_repeat) {
            std::uniform_int_distribution<std::size_t> pick(0, recent.size() - 1);
            std::tie(a, b) = recent[pick(rng)];
        } else if (unit(rng) < cfg.p_in) {
            const int c = community_dist(rng);
            a = pick_member(c);
            do {
                b = pick_member(c);
            } while (b == a);
        } else {
            const int c1 = community_dist(rng);
            int c2;
            do {
                c2 = community_dist(rng);
            } while (c2 == c1);
            a = pick_member(c1);
            b = pick_member(c2);
        }
        events.push_back({a, b, times[i]});
        recent.emplace_back(a, b);
        if (recent.size() > kRecencyWindow) recent.pop_front();
    }

    TemporalGraph g(std::move(events), cfg.n);
    std::vector<int> labels(cfg.n);
    for (std::size_t v = 0; v < cfg.n; ++v)
        labels[v] = static_cast<int>(std::min(v / base, static_cast<std::size_t>(cfg.k - 1)));
    g.set_labels(std::move(labels), cfg.k);
    return g;
}

}  // namespace tgc::synth
