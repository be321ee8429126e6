#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pam/common.hpp"
#include "pam/errors.hpp"

namespace pam {

struct Triple {
    NodeId s;
    RelId r;
    NodeId o;
    auto operator<=>(const Triple&) const = default;
};

/// Label-to-index bijection. Indices follow first appearance, which in turn
/// fixes prime assignment downstream, so insertion order is load-bearing.
class Dictionary {
public:
    std::uint32_t intern(const std::string& label) {
        auto it = index_.find(label);
        if (it != index_.end()) return it->second;
        auto id = static_cast<std::uint32_t>(labels_.size());
        labels_.push_back(label);
        index_.emplace(label, id);
        return id;
    }

    std::optional<std::uint32_t> find(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& label(std::uint32_t id) const { return labels_.at(id); }
    std::size_t size() const { return labels_.size(); }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

/// Directed multi-relational graph: deduplicated (s, r, o) triples over
/// interned node and relation labels.
class RelGraph {
public:
    Dictionary nodes;
    Dictionary relations;

    bool add(const std::string& s, const std::string& r, const std::string& o) {
        NodeId si = nodes.intern(s);
        RelId ri = relations.intern(r);
        NodeId oi = nodes.intern(o);
        return insert({si, ri, oi});
    }

    bool add(NodeId s, RelId r, NodeId o) {
        if (s >= nodes.size() || o >= nodes.size())
            throw ContractViolation("node index out of range");
        if (r >= relations.size())
            throw ContractViolation("relation index out of range");
        return insert({s, r, o});
    }

    // Graph with nodes 0..n-1 and relations 0..r-1 already interned under
    // their decimal labels; for generated inputs.
    static RelGraph sized(std::size_t n_nodes, std::size_t n_rels) {
        RelGraph g;
        for (std::size_t i = 0; i < n_nodes; ++i) g.nodes.intern(std::to_string(i));
        for (std::size_t r = 0; r < n_rels; ++r) g.relations.intern(std::to_string(r));
        return g;
    }

    const std::vector<Triple>& triples() const { return triples_; }
    std::size_t num_nodes() const { return nodes.size(); }
    std::size_t num_relations() const { return relations.size(); }
    std::size_t num_edges() const { return triples_.size(); }
    bool contains(const Triple& t) const { return seen_.count(t) > 0; }

    // (relation, object) lists per subject, in triple insertion order.
    std::vector<std::vector<std::pair<RelId, NodeId>>> out_adjacency() const {
        std::vector<std::vector<std::pair<RelId, NodeId>>> adj(num_nodes());
        for (const auto& t : triples_) adj[t.s].emplace_back(t.r, t.o);
        return adj;
    }

private:
    bool insert(const Triple& t) {
        if (!seen_.insert(t).second) return false;
        triples_.push_back(t);
        return true;
    }

    std::vector<Triple> triples_;
    std::set<Triple> seen_;
};

} // namespace pam
