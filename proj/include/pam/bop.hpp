#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pam/errors.hpp"
#include "pam/pam_matrix.hpp"
#include "pam/rel_graph.hpp"

namespace pam {

/// Bag of paths: cell value -> multiplicity.
template <class V>
using BopVector = std::map<V, std::uint32_t>;

/// Union of the node's row and column nonzeros across every hop order.
template <class V>
BopVector<V> bop_node(const std::vector<Pam<V>>& pams, NodeId node) {
    BopVector<V> bag;
    for (const auto& p : pams) {
        auto slices = p.node_slices(node);
        for (const auto& [j, v] : slices.outgoing) ++bag[v];
        for (const auto& [i, v] : slices.incoming) ++bag[v];
    }
    return bag;
}

/// All node bags in one pass over the matrices.
template <class V>
std::vector<BopVector<V>> bop_all_nodes(const std::vector<Pam<V>>& pams) {
    if (pams.empty()) return {};
    std::vector<BopVector<V>> bags(pams.front().n());
    for (const auto& p : pams)
        for (std::size_t i = 0; i < p.n(); ++i)
            for (std::size_t idx = p.m.row_ptr[i]; idx < p.m.row_ptr[i + 1]; ++idx) {
                ++bags[i][p.m.val[idx]];           // outgoing for row i
                ++bags[p.m.col[idx]][p.m.val[idx]]; // incoming for its column
            }
    return bags;
}

/// Cell values at (head,tail) and (tail,head) across hop orders, kept as
/// separate direction blocks.
template <class V>
std::pair<BopVector<V>, BopVector<V>> bop_pair(const std::vector<Pam<V>>& pams, NodeId head,
                                               NodeId tail) {
    BopVector<V> forward, backward;
    for (const auto& p : pams) {
        if (V v = p.value(head, tail); v != 0) ++forward[v];
        if (V v = p.value(tail, head); v != 0) ++backward[v];
    }
    return {forward, backward};
}

/// Every nonzero value of every hop order.
template <class V>
BopVector<V> bop_graph(const std::vector<Pam<V>>& pams) {
    BopVector<V> bag;
    for (const auto& p : pams)
        for (const V& v : p.m.val) ++bag[v];
    return bag;
}

struct TfidfOptions {
    std::size_t min_df = 2;
    double max_df_ratio = 0.99;
    std::size_t vocab_cap = 10000;
    bool idf = true;          // false: raw counts, no idf scaling
    bool l2_normalize = true; // false: leave rows unnormalized
};

// (vocabulary index, weight), ascending index
using SparseRow = std::vector<std::pair<std::uint32_t, double>>;

template <class V>
struct FeatureMatrix {
    TfidfOptions options;
    std::size_t num_docs = 0;
    std::vector<V> vocabulary; // ascending path values
    std::vector<std::size_t> doc_freq;
    std::vector<double> idf_weight; // all 1.0 when options.idf is off
    std::vector<SparseRow> rows;

    std::optional<std::uint32_t> vocab_index(const V& value) const {
        auto it = std::lower_bound(vocabulary.begin(), vocabulary.end(), value);
        if (it == vocabulary.end() || *it != value) return std::nullopt;
        return static_cast<std::uint32_t>(it - vocabulary.begin());
    }

    // Weigh a bag against the fitted vocabulary; values outside it drop out.
    SparseRow transform(const BopVector<V>& bag) const {
        SparseRow row;
        for (const auto& [value, count] : bag)
            if (auto idx = vocab_index(value))
                row.emplace_back(*idx, count * idf_weight[*idx]);
        if (options.l2_normalize) {
            double norm = 0;
            for (const auto& [idx, w] : row) norm += w * w;
            if (norm > 0) {
                norm = std::sqrt(norm);
                for (auto& [idx, w] : row) w /= norm;
            }
        }
        return row;
    }
};

/// Vocabulary and weights from a bag collection: df filters, then the
/// collection-frequency cap, then tf-idf rows.
template <class V>
FeatureMatrix<V> fit_tfidf(const std::vector<BopVector<V>>& bags, TfidfOptions opts = {}) {
    if (bags.empty()) throw InputError("cannot fit features on an empty collection");
    std::map<V, std::pair<std::size_t, std::uint64_t>> stats; // value -> (df, cf)
    for (const auto& bag : bags)
        for (const auto& [value, count] : bag) {
            auto& s = stats[value];
            s.first += 1;
            s.second += count;
        }

    const std::size_t docs = bags.size();
    // rounded up so that full coverage survives in tiny collections where
    // ratio * docs falls just below an integer df
    const auto max_df = static_cast<std::size_t>(std::ceil(opts.max_df_ratio * docs));
    std::vector<std::pair<V, std::pair<std::size_t, std::uint64_t>>> kept;
    for (const auto& [value, s] : stats)
        if (s.first >= opts.min_df && s.first <= max_df) kept.emplace_back(value, s);
    if (kept.empty())
        throw InputError("every path value fell to the document-frequency filters");

    if (kept.size() > opts.vocab_cap) {
        std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
            if (a.second.second != b.second.second) return a.second.second > b.second.second;
            return a.first < b.first;
        });
        kept.resize(opts.vocab_cap);
        std::sort(kept.begin(), kept.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }

    FeatureMatrix<V> f;
    f.options = opts;
    f.num_docs = docs;
    f.vocabulary.reserve(kept.size());
    f.doc_freq.reserve(kept.size());
    f.idf_weight.reserve(kept.size());
    for (const auto& [value, s] : kept) {
        f.vocabulary.push_back(value);
        f.doc_freq.push_back(s.first);
        f.idf_weight.push_back(
            opts.idf ? 1.0 + std::log((1.0 + docs) / (1.0 + static_cast<double>(s.first))) : 1.0);
    }
    f.rows.reserve(docs);
    for (const auto& bag : bags) f.rows.push_back(f.transform(bag));
    return f;
}

/// H(x) = alpha * F(x) + mean over undirected 1-hop neighbors of F(n).
/// Neighbors are deduplicated; a node is never its own neighbor; isolated
/// nodes keep alpha * F(x).
template <class V>
FeatureMatrix<V> neighbor_aggregate(const FeatureMatrix<V>& f, const RelGraph& g, double alpha) {
    if (f.rows.size() != g.num_nodes())
        throw ContractViolation("feature rows are not aligned with the graph's nodes");
    std::vector<std::set<NodeId>> neighbors(g.num_nodes());
    for (const auto& t : g.triples()) {
        if (t.s == t.o) continue;
        neighbors[t.s].insert(t.o);
        neighbors[t.o].insert(t.s);
    }
    FeatureMatrix<V> out = f;
    for (std::size_t x = 0; x < g.num_nodes(); ++x) {
        std::map<std::uint32_t, double> acc;
        for (const auto& [idx, w] : f.rows[x]) acc[idx] = alpha * w;
        if (!neighbors[x].empty()) {
            double share = 1.0 / static_cast<double>(neighbors[x].size());
            for (NodeId n : neighbors[x])
                for (const auto& [idx, w] : f.rows[n]) acc[idx] += share * w;
        }
        out.rows[x].assign(acc.begin(), acc.end());
    }
    return out;
}

/// `entity_id index:weight ...` rows under `# key=value` metadata lines.
template <class V>
void save_features(const FeatureMatrix<V>& f, std::ostream& out,
                   const std::vector<std::pair<std::string, std::string>>& meta = {}) {
    for (const auto& [key, value] : meta) out << "# " << key << '=' << value << '\n';
    out << "# min_df=" << f.options.min_df << '\n';
    out << "# max_df_ratio=" << f.options.max_df_ratio << '\n';
    out << "# vocab_cap=" << f.options.vocab_cap << '\n';
    out << "# variant=" << (f.options.idf ? "tf-idf-smooth" : "raw-counts")
        << (f.options.l2_normalize ? "+l2" : "") << '\n';
    char buf[64];
    for (std::size_t i = 0; i < f.rows.size(); ++i) {
        out << i;
        for (const auto& [idx, w] : f.rows[i]) {
            std::snprintf(buf, sizeof buf, "%.12g", w);
            out << ' ' << idx << ':' << buf;
        }
        out << '\n';
    }
}

/// `feature_index path_value` per vocabulary entry.
template <class V>
void save_vocabulary(const FeatureMatrix<V>& f, std::ostream& out) {
    for (std::size_t i = 0; i < f.vocabulary.size(); ++i)
        out << i << '\t' << f.vocabulary[i] << '\n';
}

} // namespace pam
