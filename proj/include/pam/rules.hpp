#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "pam/errors.hpp"
#include "pam/lossless.hpp"
#include "pam/pam_matrix.hpp"
#include "pam/rel_graph.hpp"

namespace pam {

/// Horn rule body(X,Y) => head(X,Y): a k-hop cell value implies a direct
/// relation. confidence = support / body_count exactly.
struct Rule {
    BigInt body_value;              // k-hop cell value, or the chain's prime
    std::optional<Path> body_chain; // known only at chain granularity
    RelId head = 0;
    std::uint64_t head_prime = 0;
    std::size_t support = 0;    // pairs with body and head
    std::size_t body_count = 0; // pairs with body
    double confidence = 0;
    bool lossy = false; // value granularity can merge colliding chains
};

using RuleSet = std::vector<Rule>;

namespace detail {

inline void check_rule_inputs(std::size_t p1_hop, PamMode p1_mode, bool has_primes,
                              std::size_t n1, std::size_t nk) {
    if (p1_hop != 1) throw ContractViolation("rule heads need a one-hop matrix");
    if (p1_mode != PamMode::product)
        throw ContractViolation("head membership is a divisibility test, so the one-hop "
                                "matrix must be in product mode");
    if (!has_primes) throw ContractViolation("one-hop matrix lacks its relation dictionary");
    if (n1 != nk) throw ContractViolation("matrices differ in dimension");
}

inline void sort_rules(RuleSet& rules) {
    std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) {
        if (a.confidence != b.confidence) return a.confidence > b.confidence;
        if (a.support != b.support) return a.support > b.support;
        if (a.body_value != b.body_value) return a.body_value < b.body_value;
        return a.head < b.head;
    });
}

// relation ids whose primes divide the one-hop cell at (i, j), empty when absent
template <class V>
std::vector<RelId> heads_at(const Pam<V>& p1, NodeId i, NodeId j) {
    const V* cell = p1.m.find(i, j);
    if (!cell) return {};
    return p1.rel_primes->template decode<V>(*cell);
}

} // namespace detail

/// Group k-hop cells by raw value and count co-occurring head relations.
/// One lossy value may stand for several colliding chains.
template <class V>
RuleSet mine_rules(const Pam<V>& p1, const Pam<V>& pk, std::size_t min_support,
                   double min_confidence) {
    if (pk.mode == PamMode::lossless)
        throw ContractViolation("pass the lossless matrix itself for chain-granular rules");
    detail::check_rule_inputs(p1.hop, p1.mode, p1.rel_primes != nullptr, p1.n(), pk.n());

    std::map<V, std::size_t> body_count;
    std::map<std::pair<V, RelId>, std::size_t> support;
    for (std::size_t i = 0; i < pk.n(); ++i)
        for (std::size_t idx = pk.m.row_ptr[i]; idx < pk.m.row_ptr[i + 1]; ++idx) {
            const V& body = pk.m.val[idx];
            ++body_count[body];
            for (RelId h : detail::heads_at(p1, static_cast<NodeId>(i), pk.m.col[idx]))
                ++support[{body, h}];
        }

    RuleSet rules;
    for (const auto& [key, sup] : support) {
        Rule r;
        r.body_value = BigInt(key.first);
        r.head = key.second;
        r.head_prime = p1.rel_primes->prime_at(key.second);
        r.support = sup;
        r.body_count = body_count.at(key.first);
        r.confidence = static_cast<double>(sup) / static_cast<double>(r.body_count);
        r.lossy = true;
        if (r.support >= min_support && r.confidence >= min_confidence)
            rules.push_back(std::move(r));
    }
    detail::sort_rules(rules);
    return rules;
}

/// Chain-granular mining: bodies are the decoded chains of a lossless matrix,
/// counted once per pair however often a chain repeats inside a cell.
template <class V>
RuleSet mine_rules(const Pam<V>& p1, const LosslessPam& pk, std::size_t min_support,
                   double min_confidence) {
    detail::check_rule_inputs(p1.hop, p1.mode, p1.rel_primes != nullptr, p1.n(), pk.n);

    std::map<std::uint32_t, std::size_t> body_count; // dict index -> pairs
    std::map<std::pair<std::uint32_t, RelId>, std::size_t> support;
    for (std::size_t i = 0; i < pk.n; ++i)
        for (std::size_t c = pk.row_ptr[i]; c < pk.row_ptr[i + 1]; ++c) {
            std::set<std::uint32_t> chains(pk.fac.begin() + static_cast<std::ptrdiff_t>(pk.fac_ptr[c]),
                                           pk.fac.begin() + static_cast<std::ptrdiff_t>(pk.fac_ptr[c + 1]));
            auto heads = detail::heads_at(p1, static_cast<NodeId>(i), pk.col[c]);
            for (auto f : chains) {
                ++body_count[f];
                for (RelId h : heads) ++support[{f, h}];
            }
        }

    RuleSet rules;
    for (const auto& [key, sup] : support) {
        Rule r;
        r.body_value = BigInt(pk.dict->prime_at(key.first));
        r.body_chain = pk.dict->path_at(key.first);
        r.head = key.second;
        r.head_prime = p1.rel_primes->prime_at(key.second);
        r.support = sup;
        r.body_count = body_count.at(key.first);
        r.confidence = static_cast<double>(sup) / static_cast<double>(r.body_count);
        r.lossy = false;
        if (r.support >= min_support && r.confidence >= min_confidence)
            rules.push_back(std::move(r));
    }
    detail::sort_rules(rules);
    return rules;
}

/// `body_value body_chain_or_UNKNOWN head_relation support body_count confidence`
inline void save_rules(const RuleSet& rules, std::ostream& out,
                       const Dictionary* relations = nullptr) {
    out << "body_value\tbody_chain\thead_relation\tsupport\tbody_count\tconfidence\n";
    char buf[32];
    auto rel_name = [&](RelId r) {
        return relations ? relations->label(r) : "r" + std::to_string(r);
    };
    for (const auto& r : rules) {
        out << r.body_value << '\t';
        if (r.body_chain) {
            for (std::size_t i = 0; i < r.body_chain->size(); ++i) {
                if (i) out << ',';
                out << rel_name((*r.body_chain)[i]);
            }
        } else {
            out << "UNKNOWN";
        }
        std::snprintf(buf, sizeof buf, "%.6f", r.confidence);
        out << '\t' << rel_name(r.head) << '\t' << r.support << '\t' << r.body_count << '\t'
            << buf << '\n';
    }
}

} // namespace pam
