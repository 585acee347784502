#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tgc {

using NodeId = std::uint32_t;

// One timestamped event. Repeated events between the same pair are kept as
// distinct entries; direction is preserved in storage but neighborhood and
// degree treat events as undirected.
struct Interaction {
    NodeId source;
    NodeId target;
    double time;

    friend bool operator==(const Interaction&, const Interaction&) = default;
};

struct NeighborEntry {
    NodeId node;
    double time;

    friend bool operator==(const NeighborEntry&, const NeighborEntry&) = default;
};

// A window into one node's history: at most `l` entries, all strictly before
// the query time, time-ascending.
using NeighborView = std::span<const NeighborEntry>;

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what, std::size_t line_no = 0)
        : std::runtime_error(what), line(line_no) {}
    std::size_t line;
};

// Immutable after construction; concurrent reads are safe.
class TemporalGraph {
public:
    // Events with already-dense node ids in [0, num_nodes). Sorted stably by
    // time on construction.
    TemporalGraph(std::vector<Interaction> events, std::size_t num_nodes);

    // Text stream of `source target time` lines. `#` starts a comment, blank
    // lines are skipped, times need not be pre-sorted. External node ids are
    // compacted to [0, N) in order of first appearance; the id map is kept
    // for output.
    static TemporalGraph parse(std::istream& in);
    static TemporalGraph parse_file(const std::string& path);

    std::size_t num_nodes() const { return num_nodes_; }
    std::size_t num_interactions() const { return interactions_.size(); }
    std::span<const Interaction> interactions() const { return interactions_; }

    // Interaction count per node, counting both endpoints.
    std::span<const std::size_t> degrees() const { return degrees_; }

    std::uint64_t external_id(NodeId v) const { return external_ids_[v]; }
    const std::vector<std::uint64_t>& external_ids() const { return external_ids_; }
    std::optional<NodeId> internal_id(std::uint64_t external) const;

    // The <= l most recent neighbors of x with interaction time strictly
    // before t. A node with no prior history yields an empty view.
    NeighborView neighbor_view(NodeId x, double t, std::size_t l) const;

    // Full per-node history, time-ascending. Exposed for samplers/tests.
    std::span<const NeighborEntry> history(NodeId x) const { return history_[x]; }

    // Deduplicated undirected node pairs, each returned once with a < b,
    // sorted lexicographically.
    std::vector<std::pair<NodeId, NodeId>> static_projection() const;

    // Contiguous chronological slices covering every interaction exactly once.
    std::vector<std::span<const Interaction>> chronological_batches(std::size_t batch_size) const;

    // Writes `source target time` lines (external ids) in stored order;
    // parse(serialize(g)) reproduces the interaction sequence.
    void serialize(std::ostream& out) const;

    // Label handling. Input lines are `node label` with arbitrary string
    // labels, compacted to [0, K) in order of first appearance. Every graph
    // node must be covered.
    void parse_labels(std::istream& in);
    void parse_labels_file(const std::string& path);
    void set_labels(std::vector<int> labels, int num_clusters);
    bool has_labels() const { return !labels_.empty(); }
    std::span<const int> labels() const { return labels_; }
    int num_clusters() const { return num_clusters_; }

    // Copy of this graph with times affinely mapped onto [0, 1]. A graph
    // whose events share one timestamp maps to all zeros.
    TemporalGraph with_unit_interval_times() const;

private:
    void build_index();

    std::vector<Interaction> interactions_;
    std::size_t num_nodes_ = 0;
    std::vector<std::uint64_t> external_ids_;
    std::unordered_map<std::uint64_t, NodeId> id_lookup_;
    std::vector<std::size_t> degrees_;
    std::vector<std::vector<NeighborEntry>> history_;
    std::vector<int> labels_;
    int num_clusters_ = 0;
};

}  // namespace tgc
