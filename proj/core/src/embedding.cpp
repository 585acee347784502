#include "tgc/embedding.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace tgc {

bool EmbeddingTable::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

void save_features(std::ostream& out, const EmbeddingTable& table,
                   const std::vector<std::uint64_t>& external_ids) {
    if (external_ids.size() != table.rows())
        throw std::invalid_argument("save_features: id map size mismatch");
    char buf[64];
    for (std::size_t i = 0; i < table.rows(); ++i) {
        out << external_ids[i];
        for (double v : table.row(i)) {
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out << ' ' << buf;
        }
        out << '\n';
    }
}

void save_features_file(const std::string& path, const EmbeddingTable& table,
                        const std::vector<std::uint64_t>& external_ids) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write feature file: " + path);
    save_features(out, table, external_ids);
}

EmbeddingTable load_features(std::istream& in, const TemporalGraph& g) {
    EmbeddingTable table;
    std::vector<bool> seen(g.num_nodes(), false);
    std::string line;
    std::size_t line_no = 0;
    std::size_t dim = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::uint64_t ext = 0;
        if (!(ls >> ext)) {
            // Blank line is fine, anything else is not.
            std::istringstream probe(line);
            std::string tok;
            if (probe >> tok)
                throw ParseError("row " + std::to_string(line_no) + ": bad node id", line_no);
            continue;
        }
        auto id = g.internal_id(ext);
        if (!id)
            throw ParseError("row " + std::to_string(line_no) + ": unknown node " +
                                 std::to_string(ext),
                             line_no);
        std::vector<double> values;
        double v = 0.0;
        while (ls >> v) values.push_back(v);
        if (!ls.eof())
            throw ParseError("row " + std::to_string(line_no) + ": non-numeric value", line_no);
        if (values.empty())
            throw ParseError("row " + std::to_string(line_no) + ": no values", line_no);
        if (dim == 0) {
            dim = values.size();
            table = EmbeddingTable(g.num_nodes(), dim);
        } else if (values.size() != dim) {
            throw ParseError("row " + std::to_string(line_no) + ": ragged row, expected " +
                                 std::to_string(dim) + " values, got " +
                                 std::to_string(values.size()),
                             line_no);
        }
        if (seen[*id])
            throw ParseError("row " + std::to_string(line_no) + ": duplicate node " +
                                 std::to_string(ext),
                             line_no);
        seen[*id] = true;
        std::copy(values.begin(), values.end(), table.row(*id).begin());
    }
    for (std::size_t v2 = 0; v2 < g.num_nodes(); ++v2)
        if (!seen[v2])
            throw ParseError("missing features for node " +
                             std::to_string(g.external_id(static_cast<NodeId>(v2))));
    return table;
}

EmbeddingTable load_features_file(const std::string& path, const TemporalGraph& g) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open feature file: " + path);
    return load_features(in, g);
}

}  // namespace tgc
