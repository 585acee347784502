#include "tgc/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace tgc {

namespace {

// Splits a line into whitespace-separated tokens, dropping anything after '#'.
std::vector<std::string_view> tokenize(std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

std::uint64_t parse_node_token(std::string_view tok, std::size_t line_no) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError("line " + std::to_string(line_no) + ": bad node id '" +
                             std::string(tok) + "'",
                         line_no);
    return v;
}

double parse_time_token(std::string_view tok, std::size_t line_no) {
    double v = 0.0;
    std::string buf(tok);
    char* end = nullptr;
    v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size())
        throw ParseError("line " + std::to_string(line_no) + ": bad timestamp '" +
                             buf + "'",
                         line_no);
    return v;
}

}  // namespace

TemporalGraph::TemporalGraph(std::vector<Interaction> events, std::size_t num_nodes)
    : interactions_(std::move(events)), num_nodes_(num_nodes) {
    for (const auto& e : interactions_) {
        if (e.source >= num_nodes_ || e.target >= num_nodes_)
            throw std::invalid_argument("TemporalGraph: node id out of range");
        if (e.source == e.target)
            throw std::invalid_argument("TemporalGraph: self-loop");
        if (e.time < 0.0)
            throw std::invalid_argument("TemporalGraph: negative time");
    }
    external_ids_.resize(num_nodes_);
    for (std::size_t v = 0; v < num_nodes_; ++v) {
        external_ids_[v] = v;
        id_lookup_.emplace(v, static_cast<NodeId>(v));
    }
    build_index();
}

TemporalGraph TemporalGraph::parse(std::istream& in) {
    std::vector<Interaction> events;
    std::vector<std::uint64_t> external;
    std::unordered_map<std::uint64_t, NodeId> lookup;

    auto intern = [&](std::uint64_t ext) -> NodeId {
        auto it = lookup.find(ext);
        if (it != lookup.end()) return it->second;
        NodeId id = static_cast<NodeId>(external.size());
        external.push_back(ext);
        lookup.emplace(ext, id);
        return id;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks.size() != 3)
            throw ParseError("line " + std::to_string(line_no) +
                                 ": expected `source target time`, got " +
                                 std::to_string(toks.size()) + " fields",
                             line_no);
        const std::uint64_t src_ext = parse_node_token(toks[0], line_no);
        const std::uint64_t dst_ext = parse_node_token(toks[1], line_no);
        const double t = parse_time_token(toks[2], line_no);
        if (src_ext == dst_ext)
            throw ParseError("line " + std::to_string(line_no) + ": self-loop on node " +
                                 std::to_string(src_ext),
                             line_no);
        if (t < 0.0)
            throw ParseError("line " + std::to_string(line_no) + ": negative time", line_no);
        events.push_back({intern(src_ext), intern(dst_ext), t});
    }
    if (events.empty()) throw ParseError("empty input: no interactions found");

    TemporalGraph g(std::move(events), external.size());
    g.external_ids_ = std::move(external);
    g.id_lookup_ = std::move(lookup);
    return g;
}

TemporalGraph TemporalGraph::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open interaction file: " + path);
    return parse(in);
}

std::optional<NodeId> TemporalGraph::internal_id(std::uint64_t external) const {
    auto it = id_lookup_.find(external);
    if (it == id_lookup_.end()) return std::nullopt;
    return it->second;
}

void TemporalGraph::build_index() {
    std::stable_sort(interactions_.begin(), interactions_.end(),
                     [](const Interaction& a, const Interaction& b) { return a.time < b.time; });
    degrees_.assign(num_nodes_, 0);
    history_.assign(num_nodes_, {});
    for (const auto& e : interactions_) {
        ++degrees_[e.source];
        ++degrees_[e.target];
    }
    for (std::size_t v = 0; v < num_nodes_; ++v) history_[v].reserve(degrees_[v]);
    // Scan order equals chronological order, so per-node histories come out
    // sorted by (time, sequence position) with no extra sort.
    for (const auto& e : interactions_) {
        history_[e.source].push_back({e.target, e.time});
        history_[e.target].push_back({e.source, e.time});
    }
}

NeighborView TemporalGraph::neighbor_view(NodeId x, double t, std::size_t l) const {
    if (x >= num_nodes_) throw std::invalid_argument("neighbor_view: node out of range");
    if (l == 0) throw std::invalid_argument("neighbor_view: l must be >= 1");
    const auto& hist = history_[x];
    // First entry with time >= t; everything before it is strictly earlier.
    auto end = std::lower_bound(hist.begin(), hist.end(), t,
                                [](const NeighborEntry& e, double tv) { return e.time < tv; });
    const std::size_t avail = static_cast<std::size_t>(end - hist.begin());
    const std::size_t n = std::min(l, avail);
    return NeighborView(hist.data() + (avail - n), n);
}

std::vector<std::pair<NodeId, NodeId>> TemporalGraph::static_projection() const {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(interactions_.size());
    for (const auto& e : interactions_) {
        NodeId a = e.source, b = e.target;
        if (a > b) std::swap(a, b);
        pairs.emplace_back(a, b);
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

std::vector<std::span<const Interaction>> TemporalGraph::chronological_batches(
    std::size_t batch_size) const {
    if (batch_size == 0) throw std::invalid_argument("chronological_batches: batch_size >= 1");
    std::vector<std::span<const Interaction>> out;
    out.reserve(interactions_.size() / batch_size + 1);
    for (std::size_t start = 0; start < interactions_.size(); start += batch_size) {
        const std::size_t n = std::min(batch_size, interactions_.size() - start);
        out.emplace_back(interactions_.data() + start, n);
    }
    return out;
}

void TemporalGraph::serialize(std::ostream& out) const {
    char buf[64];
    for (const auto& e : interactions_) {
        std::snprintf(buf, sizeof(buf), "%.17g", e.time);
        out << external_ids_[e.source] << ' ' << external_ids_[e.target] << ' ' << buf << '\n';
    }
}

void TemporalGraph::parse_labels(std::istream& in) {
    std::vector<int> labels(num_nodes_, -1);
    std::unordered_map<std::string, int> label_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks.size() != 2)
            throw ParseError("line " + std::to_string(line_no) +
                                 ": expected `node label`",
                             line_no);
        const std::uint64_t ext = parse_node_token(toks[0], line_no);
        auto id = internal_id(ext);
        if (!id)
            throw ParseError("line " + std::to_string(line_no) + ": unknown node " +
                                 std::to_string(ext),
                             line_no);
        std::string tag(toks[1]);
        auto [it, inserted] = label_ids.emplace(tag, static_cast<int>(label_ids.size()));
        labels[*id] = it->second;
    }
    for (std::size_t v = 0; v < num_nodes_; ++v)
        if (labels[v] < 0)
            throw ParseError("node " + std::to_string(external_ids_[v]) + " has no label");
    set_labels(std::move(labels), static_cast<int>(label_ids.size()));
}

void TemporalGraph::parse_labels_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open label file: " + path);
    parse_labels(in);
}

void TemporalGraph::set_labels(std::vector<int> labels, int num_clusters) {
    if (labels.size() != num_nodes_)
        throw std::invalid_argument("set_labels: size mismatch");
    for (int c : labels)
        if (c < 0 || c >= num_clusters)
            throw std::invalid_argument("set_labels: label out of [0, K)");
    labels_ = std::move(labels);
    num_clusters_ = num_clusters;
}

TemporalGraph TemporalGraph::with_unit_interval_times() const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& e : interactions_) {
        lo = std::min(lo, e.time);
        hi = std::max(hi, e.time);
    }
    const double span = hi - lo;
    std::vector<Interaction> events = interactions_;
    for (auto& e : events) e.time = span > 0.0 ? (e.time - lo) / span : 0.0;

    TemporalGraph g(std::move(events), num_nodes_);
    g.external_ids_ = external_ids_;
    g.id_lookup_ = id_lookup_;
    g.labels_ = labels_;
    g.num_clusters_ = num_clusters_;
    return g;
}

}  // namespace tgc
