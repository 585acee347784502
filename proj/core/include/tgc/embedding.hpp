#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tgc/graph.hpp"

namespace tgc {

// Dense row-major table of per-node vectors. Two instances flow through the
// pipeline: frozen initial features and the trainable embeddings that start
// as a copy of them.
class EmbeddingTable {
public:
    EmbeddingTable() = default;
    EmbeddingTable(std::size_t rows, std::size_t dim, double fill = 0.0)
        : rows_(rows), dim_(dim), data_(rows * dim, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t dim() const { return dim_; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * dim_, dim_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }

    std::span<double> flat() { return data_; }
    std::span<const double> flat() const { return data_; }

    bool all_finite() const;

    friend bool operator==(const EmbeddingTable&, const EmbeddingTable&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

// Feature file format: one `node v1 ... vdim` row per node, external ids.
// Written values round-trip bit-exactly.
void save_features(std::ostream& out, const EmbeddingTable& table,
                   const std::vector<std::uint64_t>& external_ids);
void save_features_file(const std::string& path, const EmbeddingTable& table,
                        const std::vector<std::uint64_t>& external_ids);

// Loads a feature file for the given graph. Every graph node must be covered,
// all rows must share one dimension.
EmbeddingTable load_features(std::istream& in, const TemporalGraph& g);
EmbeddingTable load_features_file(const std::string& path, const TemporalGraph& g);

}  // namespace tgc
