#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pam/common.hpp"
#include "pam/errors.hpp"
#include "pam/path_dict.hpp"
#include "pam/rel_graph.hpp"
#include "pam/sparse.hpp"

namespace pam {

enum class PamMode { product, sum, lossless };

inline const char* to_string(PamMode m) {
    switch (m) {
        case PamMode::product: return "product";
        case PamMode::sum: return "sum";
        case PamMode::lossless: return "lossless";
    }
    return "?";
}

inline PamMode parse_mode(const std::string& s) {
    if (s == "product") return PamMode::product;
    if (s == "sum") return PamMode::sum;
    if (s == "lossless") return PamMode::lossless;
    throw InputError("unknown mode '" + s + "' (expected product, sum or lossless)");
}

template <class V>
struct NodeSlices {
    std::map<NodeId, V> outgoing; // col -> value in the node's row
    std::map<NodeId, V> incoming; // row -> value in the node's column
};

/// One k-hop matrix. Cells combine the primes of the φ₁ dictionary: a
/// product or sum across relations at k=1, and walk-sums of per-edge
/// products at k>1.
template <class V = std::uint64_t>
struct Pam {
    Csr<V> m;
    std::size_t hop = 1;
    PamMode mode = PamMode::product;
    std::shared_ptr<const PathDict> rel_primes;

    std::size_t n() const { return m.n; }

    V value(NodeId i, NodeId j) const {
        if (i >= m.n || j >= m.n) throw ContractViolation("cell index out of range");
        const V* p = m.find(i, j);
        return p ? *p : V(0);
    }

    std::map<V, std::size_t> histogram() const {
        std::map<V, std::size_t> h;
        for (const V& v : m.val) ++h[v];
        return h;
    }

    NodeSlices<V> node_slices(NodeId node) const {
        if (node >= m.n) throw ContractViolation("node index out of range");
        NodeSlices<V> s;
        for (std::size_t idx = m.row_ptr[node]; idx < m.row_ptr[node + 1]; ++idx)
            s.outgoing.emplace(m.col[idx], m.val[idx]);
        for (std::size_t i = 0; i < m.n; ++i)
            if (const V* p = m.find(static_cast<NodeId>(i), node))
                s.incoming.emplace(static_cast<NodeId>(i), *p);
        return s;
    }
};

/// One-hop PAM over g. Cell (i,j) combines the primes of every relation
/// i -> j: multiplied in product mode, added in sum mode.
template <class V = std::uint64_t>
Pam<V> build_pam(const RelGraph& g, PamMode mode) {
    if (g.num_edges() == 0) throw InputError("cannot build a PAM from an empty graph");
    if (mode == PamMode::lossless)
        throw ContractViolation("build_pam handles product and sum; lossless has its own builder");

    auto dict = std::make_shared<PathDict>(PathDict::for_relations(g.num_relations()));
    const std::size_t n = g.num_nodes();
    std::vector<std::map<NodeId, V>> cells(n);
    for (const auto& t : g.triples()) {
        V prime = static_cast<V>(dict->prime_at(t.r));
        auto [it, fresh] = cells[t.s].emplace(t.o, prime);
        if (fresh) continue;
        bool overflow = mode == PamMode::product
                            ? detail::Arith<V>::mul(it->second, prime, it->second)
                            : detail::Arith<V>::add(it->second, prime, it->second);
        if (overflow)
            throw OverflowError("one-hop cell (" + std::to_string(t.s) + "," +
                                std::to_string(t.o) + "): value exceeds 64 bits");
    }

    std::vector<std::vector<std::pair<NodeId, V>>> rows(n);
    for (std::size_t i = 0; i < n; ++i)
        rows[i].assign(cells[i].begin(), cells[i].end());

    Pam<V> p;
    p.m = Csr<V>::from_rows(n, rows);
    p.hop = 1;
    p.mode = mode;
    p.rel_primes = dict;
    return p;
}

/// P^1..P^k_target by successive one-hop extension: P^(n+1) = P^n × base.
/// Never squares, so each power has true n-hop walk semantics.
template <class V>
std::vector<Pam<V>> power(const Pam<V>& base, std::size_t k_target, unsigned threads = 1) {
    if (base.hop != 1) throw ContractViolation("power starts from a one-hop matrix");
    if (base.mode == PamMode::lossless)
        throw ContractViolation("lossless powers have their own builder");
    if (k_target < 1) throw ContractViolation("k_target must be >= 1");
    std::vector<Pam<V>> out;
    out.push_back(base);
    for (std::size_t k = 2; k <= k_target; ++k) {
        Pam<V> next;
        next.m = semiring_multiply(out.back().m, base.m, "P^" + std::to_string(k), threads);
        next.hop = k;
        next.mode = base.mode;
        next.rel_primes = base.rel_primes;
        out.push_back(std::move(next));
    }
    return out;
}

template <class V>
void save_matrix(const Pam<V>& p, std::ostream& out) {
    out << "%pam k=" << p.hop << " mode=" << to_string(p.mode) << " n=" << p.m.n << "\n";
    for (std::size_t i = 0; i < p.m.n; ++i)
        for (std::size_t idx = p.m.row_ptr[i]; idx < p.m.row_ptr[i + 1]; ++idx)
            out << i << ' ' << p.m.col[idx] << ' ' << p.m.val[idx] << "\n";
}

template <class V>
void save_matrix(const Pam<V>& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    save_matrix(p, out);
}

template <class V = std::uint64_t>
Pam<V> load_matrix(std::istream& in, const std::string& source = "<stream>") {
    std::string header;
    if (!std::getline(in, header)) throw ParseError(source + ": missing header");
    std::size_t k = 0, n = 0;
    char modebuf[16] = {0};
    if (std::sscanf(header.c_str(), "%%pam k=%zu mode=%15s n=%zu", &k, modebuf, &n) != 3)
        throw ParseError(source + ":1: bad header '" + header + "'");

    Pam<V> p;
    p.hop = k;
    p.mode = parse_mode(modebuf);
    std::vector<std::vector<std::pair<NodeId, V>>> rows(n);
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream cell(line);
        std::size_t i = 0, j = 0;
        V v;
        if (!(cell >> i >> j >> v) || i >= n || j >= n)
            throw ParseError(source + ":" + std::to_string(lineno) + ": bad cell line");
        rows[i].emplace_back(static_cast<NodeId>(j), std::move(v));
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto& row = rows[i];
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t idx = 1; idx < row.size(); ++idx)
            if (row[idx].first == row[idx - 1].first)
                throw ParseError(source + ": duplicate cell (" + std::to_string(i) + "," +
                                 std::to_string(row[idx].first) + ")");
    }
    p.m = Csr<V>::from_rows(n, rows);
    return p;
}

template <class V>
void save_histogram(const std::map<V, std::size_t>& h, std::ostream& out) {
    for (const auto& [value, count] : h) out << value << '\t' << count << '\n';
}

} // namespace pam
