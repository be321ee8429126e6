#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "pam/errors.hpp"
#include "pam/rel_graph.hpp"

namespace pam {

struct LoadStats {
    std::size_t lines = 0;
    std::size_t edges_added = 0;
    std::size_t duplicates_dropped = 0;
};

namespace detail {

inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        auto tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r')
        fields.back().pop_back();
    return fields;
}

} // namespace detail

inline RelGraph load_triples(std::istream& in, const std::string& source = "<stream>",
                             LoadStats* stats = nullptr) {
    RelGraph g;
    LoadStats local;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto fields = detail::split_tabs(line);
        if (fields.size() != 3 || fields[0].empty() || fields[1].empty() || fields[2].empty())
            throw ParseError(source + ":" + std::to_string(lineno) +
                             ": expected subject<TAB>relation<TAB>object");
        ++local.lines;
        if (g.add(fields[0], fields[1], fields[2]))
            ++local.edges_added;
        else
            ++local.duplicates_dropped;
    }
    if (g.num_edges() == 0) throw InputError(source + ": no triples");
    if (stats) *stats = local;
    return g;
}

inline RelGraph load_triples(const std::string& path, LoadStats* stats = nullptr) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return load_triples(in, path, stats);
}

inline void save_triples(const RelGraph& g, std::ostream& out) {
    for (const auto& t : g.triples())
        out << g.nodes.label(t.s) << '\t' << g.relations.label(t.r) << '\t'
            << g.nodes.label(t.o) << '\n';
}

inline void save_triples(const RelGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    save_triples(g, out);
}

// node_label -> type_label, one pair per line.
inline std::unordered_map<std::string, std::string> load_types(std::istream& in,
                                                               const std::string& source = "<stream>") {
    std::unordered_map<std::string, std::string> types;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto fields = detail::split_tabs(line);
        if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
            throw ParseError(source + ":" + std::to_string(lineno) + ": expected node<TAB>type");
        auto [it, inserted] = types.emplace(fields[0], fields[1]);
        if (!inserted && it->second != fields[1])
            throw InputError(source + ":" + std::to_string(lineno) + ": node '" + fields[0] +
                             "' typed both '" + it->second + "' and '" + fields[1] + "'");
    }
    return types;
}

inline std::unordered_map<std::string, std::string> load_types(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return load_types(in, path);
}

// Rewrites each edge's relation to `type(s)-relation-type(o)`, so edges
// between differently typed endpoints stop sharing a prime. Topology and
// node ids are unchanged.
inline RelGraph compose_typed_relations(const RelGraph& g,
                                        const std::unordered_map<std::string, std::string>& node_types) {
    RelGraph out;
    for (std::uint32_t v = 0; v < g.num_nodes(); ++v) out.nodes.intern(g.nodes.label(v));
    auto type_of = [&](NodeId v) -> const std::string& {
        auto it = node_types.find(g.nodes.label(v));
        if (it == node_types.end())
            throw InputError("node '" + g.nodes.label(v) + "' has no type label");
        return it->second;
    };
    for (const auto& t : g.triples()) {
        std::string key = type_of(t.s) + "-" + g.relations.label(t.r) + "-" + type_of(t.o);
        out.add(g.nodes.label(t.s), key, g.nodes.label(t.o));
    }
    return out;
}

struct SplitBundle {
    RelGraph train;
    std::vector<Triple> valid;
    std::vector<Triple> test;
    std::vector<std::string> warnings; // cross-split duplicates, kept but flagged
};

namespace detail {

inline void read_split(const std::string& path, RelGraph& dicts, std::vector<Triple>& out,
                       std::set<Triple>& earlier, SplitBundle& bundle, const std::string& name) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    std::set<Triple> mine;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto fields = split_tabs(line);
        if (fields.size() != 3)
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": expected subject<TAB>relation<TAB>object");
        Triple t{dicts.nodes.intern(fields[0]), dicts.relations.intern(fields[1]),
                 dicts.nodes.intern(fields[2])};
        if (!mine.insert(t).second) continue;
        if (earlier.count(t))
            bundle.warnings.push_back(name + " triple " + fields[0] + "\t" + fields[1] + "\t" +
                                      fields[2] + " also appears in an earlier split");
        out.push_back(t);
    }
    earlier.insert(mine.begin(), mine.end());
}

} // namespace detail

// Shared dictionaries across the three files, interned train -> valid -> test.
inline SplitBundle load_splits(const std::string& train_path, const std::string& valid_path,
                               const std::string& test_path) {
    SplitBundle bundle;
    bundle.train = load_triples(train_path);
    std::set<Triple> earlier(bundle.train.triples().begin(), bundle.train.triples().end());
    if (!valid_path.empty())
        detail::read_split(valid_path, bundle.train, bundle.valid, earlier, bundle, "valid");
    detail::read_split(test_path, bundle.train, bundle.test, earlier, bundle, "test");
    return bundle;
}

inline SplitBundle load_splits(const std::string& train_path, const std::string& test_path) {
    return load_splits(train_path, "", test_path);
}

struct GraphCollection {
    std::vector<RelGraph> graphs;
    std::vector<std::vector<double>> targets; // one row per graph, fixed arity
    std::vector<std::string> names;           // subdirectory names, sorted
};

namespace detail {

inline std::vector<double> read_targets(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.empty())
        throw InputError(path + ": expected one line of tab-separated targets");
    std::vector<double> values;
    for (const auto& field : split_tabs(line)) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(field, &used));
            if (used != field.size()) throw std::invalid_argument(field);
        } catch (const std::exception&) {
            throw ParseError(path + ": bad target value '" + field + "'");
        }
    }
    return values;
}

// Every graph's relation dictionary is rebuilt over the union of labels, in
// first-appearance order across the sorted collection. One-hop primes then
// agree across graphs, which cross-graph features rely on.
inline RelGraph remap_relations(const RelGraph& g, const Dictionary& shared) {
    RelGraph out;
    for (std::uint32_t v = 0; v < g.num_nodes(); ++v) out.nodes.intern(g.nodes.label(v));
    for (std::uint32_t r = 0; r < shared.size(); ++r) out.relations.intern(shared.label(r));
    for (const auto& t : g.triples())
        out.add(t.s, *shared.find(g.relations.label(t.r)), t.o);
    return out;
}

} // namespace detail

// Directory of per-graph subdirectories, each holding edges.tsv, targets.tsv
// and optionally types.tsv (which triggers typed-relation composition).
inline GraphCollection load_graph_collection(const std::string& dir) {
    namespace fs = std::filesystem;
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_directory()) names.push_back(entry.path().filename().string());
    std::sort(names.begin(), names.end());
    if (names.empty()) throw InputError(dir + ": no graph subdirectories");

    GraphCollection c;
    Dictionary shared_relations;
    std::vector<RelGraph> raw;
    for (const auto& name : names) {
        fs::path sub = fs::path(dir) / name;
        RelGraph g = load_triples((sub / "edges.tsv").string());
        if (fs::exists(sub / "types.tsv"))
            g = compose_typed_relations(g, load_types((sub / "types.tsv").string()));
        for (std::uint32_t r = 0; r < g.num_relations(); ++r)
            shared_relations.intern(g.relations.label(r));
        auto targets = detail::read_targets((sub / "targets.tsv").string());
        if (!c.targets.empty() && targets.size() != c.targets.front().size())
            throw InputError(name + ": " + std::to_string(targets.size()) +
                             " targets where earlier graphs have " +
                             std::to_string(c.targets.front().size()));
        raw.push_back(std::move(g));
        c.targets.push_back(std::move(targets));
        c.names.push_back(name);
    }
    for (auto& g : raw) c.graphs.push_back(detail::remap_relations(g, shared_relations));
    return c;
}

} // namespace pam
