#pragma once

#include <algorithm>
#include <cstdint>
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
#include "pam/pam_matrix.hpp"
#include "pam/path_dict.hpp"
#include "pam/primes.hpp"
#include "pam/rel_graph.hpp"

namespace pam {

/// How φ_k primes are allocated for k >= 2. exhaustive ranks all |R|^k
/// chains lexicographically up front (matching the worked examples); lazy
/// assigns primes to realized chains in sweep order, which scales further
/// but numbers chains differently.
enum class PhiPolicy { exhaustive, lazy };

struct LosslessOptions {
    PhiPolicy phi = PhiPolicy::exhaustive;
    std::size_t max_total_factors = 10'000'000; // per hop, across all cells
    std::size_t max_dict_entries = 1'000'000;
};

/// k-hop matrix whose every cell is a product of φ_k primes, one per walk.
/// Cells hold sorted dictionary-entry indices; the integer value is
/// materialized on demand, so no arithmetic is ever repeated to re-factor.
struct LosslessPam {
    std::size_t n = 0;
    std::size_t hop = 1;
    std::vector<std::size_t> row_ptr{0};
    std::vector<NodeId> col;
    std::vector<std::size_t> fac_ptr{0}; // cell -> range in fac
    std::vector<std::uint32_t> fac;      // φ_hop entry indices, ascending, dup = multiplicity
    std::shared_ptr<const PathDict> dict;

    std::size_t nnz() const { return col.size(); }

    // offset of cell (i,j) in col/fac_ptr, or npos
    std::size_t cell_of(NodeId i, NodeId j) const {
        auto first = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i]);
        auto last = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i + 1]);
        auto it = std::lower_bound(first, last, j);
        if (it == last || *it != j) return npos;
        return static_cast<std::size_t>(it - col.begin());
    }

    BigInt value(NodeId i, NodeId j) const {
        auto c = cell_of(i, j);
        if (c == npos) return 0;
        BigInt v = 1;
        for (std::size_t f = fac_ptr[c]; f < fac_ptr[c + 1]; ++f) v *= dict->prime_at(fac[f]);
        return v;
    }

    // the walk multiset behind a cell, sorted lexicographically
    std::vector<Path> chains(NodeId i, NodeId j) const {
        std::vector<Path> out;
        auto c = cell_of(i, j);
        if (c == npos) return out;
        for (std::size_t f = fac_ptr[c]; f < fac_ptr[c + 1]; ++f)
            out.push_back(dict->path_at(fac[f]));
        std::sort(out.begin(), out.end());
        return out;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Encode a walk multiset as the product of the chains' primes, assigning
/// fresh primes as needed. Empty multiset is the absent-cell sentinel 0.
inline BigInt aggregate(const std::vector<Path>& paths, PathDict& dict, PrimeStream& stream) {
    if (paths.empty()) return 0;
    BigInt v = 1;
    for (const auto& p : paths) v *= dict.prime_at(dict.assign(p, stream));
    return v;
}

/// Extend every walk in k_value by every relation in one_hop_value: the
/// Cartesian product of the two factorizations, concatenated pairwise.
inline std::vector<Path> chain(const BigInt& k_value, std::uint64_t one_hop_value,
                               const PathDict& dict_k, const PathDict& dict_1) {
    auto left = dict_k.decode<BigInt>(k_value);
    auto right = dict_1.decode<std::uint64_t>(one_hop_value);
    std::vector<Path> out;
    out.reserve(left.size() * right.size());
    for (auto lf : left)
        for (auto rf : right) {
            Path p = dict_k.path_at(lf);
            const Path& ext = dict_1.path_at(rf);
            p.insert(p.end(), ext.begin(), ext.end());
            out.push_back(std::move(p));
        }
    return out;
}

/// One-hop lossless matrix: identical values to mode=product, but cells
/// carry their relation factor lists explicitly.
inline LosslessPam lossless_base(const RelGraph& g) {
    if (g.num_edges() == 0) throw InputError("cannot build a PAM from an empty graph");
    LosslessPam p;
    p.n = g.num_nodes();
    p.hop = 1;
    p.dict = std::make_shared<PathDict>(PathDict::for_relations(g.num_relations()));
    std::vector<std::map<NodeId, std::vector<std::uint32_t>>> cells(p.n);
    for (const auto& t : g.triples()) cells[t.s][t.o].push_back(t.r);
    for (std::size_t i = 0; i < p.n; ++i) {
        for (auto& [j, factors] : cells[i]) {
            std::sort(factors.begin(), factors.end());
            p.col.push_back(j);
            p.fac.insert(p.fac.end(), factors.begin(), factors.end());
            p.fac_ptr.push_back(p.fac.size());
        }
        p.row_ptr.push_back(p.col.size());
    }
    return p;
}

namespace detail {

// One sweep: next[i,j] = all walks of pk[i,m] extended by one hop p1[m,j].
// Serial by design: φ assignment order must not depend on scheduling.
inline LosslessPam lossless_step(const LosslessPam& pk, const LosslessPam& p1,
                                 std::shared_ptr<PathDict> next_dict, PrimeStream& stream,
                                 const LosslessOptions& opts) {
    LosslessPam out;
    out.n = pk.n;
    out.hop = pk.hop + 1;
    out.dict = next_dict;
    std::size_t total_factors = 0;
    std::map<NodeId, std::vector<std::uint32_t>> row;
    Path buf(out.hop);
    for (std::size_t i = 0; i < pk.n; ++i) {
        row.clear();
        for (std::size_t a = pk.row_ptr[i]; a < pk.row_ptr[i + 1]; ++a) {
            NodeId m = pk.col[a];
            for (std::size_t b = p1.row_ptr[m]; b < p1.row_ptr[m + 1]; ++b) {
                NodeId j = p1.col[b];
                auto& factors = row[j];
                for (std::size_t fa = pk.fac_ptr[a]; fa < pk.fac_ptr[a + 1]; ++fa) {
                    const Path& head = pk.dict->path_at(pk.fac[fa]);
                    std::copy(head.begin(), head.end(), buf.begin());
                    for (std::size_t fb = p1.fac_ptr[b]; fb < p1.fac_ptr[b + 1]; ++fb) {
                        buf.back() = p1.dict->path_at(p1.fac[fb])[0];
                        std::uint32_t idx;
                        if (opts.phi == PhiPolicy::lazy) {
                            idx = next_dict->assign(buf, stream);
                        } else {
                            auto found = next_dict->find(buf);
                            if (!found)
                                throw ContractViolation("chain missing from exhaustive dictionary");
                            idx = *found;
                        }
                        factors.push_back(idx);
                        if (++total_factors > opts.max_total_factors)
                            throw ResourceLimitError(
                                "lossless sweep passed " + std::to_string(opts.max_total_factors) +
                                " walks at k=" + std::to_string(out.hop) +
                                "; completed through k=" + std::to_string(pk.hop));
                    }
                }
            }
        }
        for (auto& [j, factors] : row) {
            std::sort(factors.begin(), factors.end());
            out.col.push_back(j);
            out.fac.insert(out.fac.end(), factors.begin(), factors.end());
            out.fac_ptr.push_back(out.fac.size());
        }
        out.row_ptr.push_back(out.col.size());
    }
    return out;
}

} // namespace detail

/// Lossless P^1..P^k_target, each hop with its own φ dictionary.
inline std::vector<LosslessPam> lossless_power(const LosslessPam& base, std::size_t k_target,
                                               const LosslessOptions& opts = {}) {
    if (base.hop != 1) throw ContractViolation("lossless_power starts from a one-hop matrix");
    if (k_target < 1) throw ContractViolation("k_target must be >= 1");
    std::vector<LosslessPam> out;
    out.push_back(base);
    std::size_t num_relations = base.dict->size();
    for (std::size_t k = 2; k <= k_target; ++k) {
        std::shared_ptr<PathDict> dict;
        PrimeStream stream;
        if (opts.phi == PhiPolicy::exhaustive)
            dict = std::make_shared<PathDict>(
                PathDict::exhaustive(k, num_relations, opts.max_dict_entries));
        else
            dict = std::make_shared<PathDict>(k);
        out.push_back(detail::lossless_step(out.back(), base, dict, stream, opts));
    }
    return out;
}

/// All cells decoded: (i, j) -> walk multiset.
inline std::vector<Path> decompose_cell(const LosslessPam& p, NodeId i, NodeId j) {
    if (i >= p.n || j >= p.n) throw ContractViolation("cell index out of range");
    return p.chains(i, j);
}

/// DFS fallback that re-derives one pair's walk multiset straight from the
/// graph; the interpretability route when only lossy powers exist.
inline std::vector<Path> extract_paths_for_pair(const RelGraph& g, NodeId i, NodeId j,
                                                std::size_t k) {
    if (i >= g.num_nodes() || j >= g.num_nodes())
        throw ContractViolation("node index out of range");
    auto adj = g.out_adjacency();
    std::vector<Path> out;
    Path current;
    auto dfs = [&](auto&& self, NodeId at, std::size_t left) -> void {
        if (left == 0) {
            if (at == j) out.push_back(current);
            return;
        }
        for (auto [r, o] : adj[at]) {
            current.push_back(r);
            self(self, o, left - 1);
            current.pop_back();
        }
    };
    dfs(dfs, i, k);
    std::sort(out.begin(), out.end());
    return out;
}

/// View a lossless matrix as a plain big-integer PAM (values materialized,
/// factor lists dropped). rel_primes is left empty: chain decoding needs
/// the φ_hop dictionary, which plain matrices do not carry.
inline Pam<BigInt> to_value_matrix(const LosslessPam& p) {
    Pam<BigInt> out;
    out.hop = p.hop;
    out.mode = PamMode::lossless;
    out.m.n = p.n;
    out.m.row_ptr = p.row_ptr;
    out.m.col = p.col;
    out.m.val.reserve(p.nnz());
    for (std::size_t c = 0; c < p.nnz(); ++c) {
        BigInt v = 1;
        for (std::size_t f = p.fac_ptr[c]; f < p.fac_ptr[c + 1]; ++f)
            v *= p.dict->prime_at(p.fac[f]);
        out.m.val.push_back(std::move(v));
    }
    return out;
}

inline void save_lossless(const LosslessPam& p, std::ostream& out) {
    out << "%pam k=" << p.hop << " mode=lossless n=" << p.n << "\n";
    for (std::size_t i = 0; i < p.n; ++i)
        for (std::size_t c = p.row_ptr[i]; c < p.row_ptr[i + 1]; ++c) {
            out << i << ' ' << p.col[c] << ' ';
            for (std::size_t f = p.fac_ptr[c]; f < p.fac_ptr[c + 1]; ++f) {
                if (f != p.fac_ptr[c]) out << ',';
                out << p.dict->prime_at(p.fac[f]);
            }
            out << "\n";
        }
}

inline void save_lossless(const LosslessPam& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    save_lossless(p, out);
}

inline LosslessPam load_lossless(std::istream& in, std::shared_ptr<const PathDict> dict,
                                 const std::string& source = "<stream>") {
    std::string header;
    if (!std::getline(in, header)) throw ParseError(source + ": missing header");
    std::size_t k = 0, n = 0;
    if (std::sscanf(header.c_str(), "%%pam k=%zu mode=lossless n=%zu", &k, &n) != 2)
        throw ParseError(source + ":1: bad lossless header '" + header + "'");
    if (dict->hop() != k)
        throw ContractViolation("dictionary hop does not match matrix header");

    std::vector<std::map<NodeId, std::vector<std::uint32_t>>> cells(n);
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto where = source + ":" + std::to_string(lineno);
        std::istringstream cell(line);
        std::size_t i = 0, j = 0;
        std::string factors;
        if (!(cell >> i >> j >> factors) || i >= n || j >= n)
            throw ParseError(where + ": bad cell line");
        auto& list = cells[i][static_cast<NodeId>(j)];
        std::stringstream each(factors);
        std::string tok;
        while (std::getline(each, tok, ',')) {
            std::uint64_t prime = 0;
            try {
                prime = std::stoull(tok);
            } catch (const std::exception&) {
                throw ParseError(where + ": bad factor '" + tok + "'");
            }
            auto idx = dict->find_prime(prime);
            if (!idx) throw DecodeError(where + ": prime " + tok + " not in dictionary");
            list.push_back(*idx);
        }
        if (list.empty()) throw ParseError(where + ": cell without factors");
    }

    LosslessPam p;
    p.n = n;
    p.hop = k;
    p.dict = std::move(dict);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto& [j, factors] : cells[i]) {
            std::sort(factors.begin(), factors.end());
            p.col.push_back(j);
            p.fac.insert(p.fac.end(), factors.begin(), factors.end());
            p.fac_ptr.push_back(p.fac.size());
        }
        p.row_ptr.push_back(p.col.size());
    }
    return p;
}

} // namespace pam
