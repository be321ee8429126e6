#include <doctest.h>

#include <pam/ingest.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "toy_graphs.hpp"

namespace fs = std::filesystem;
using namespace pam;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("pamtest_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path file(const std::string& name, const std::string& content) const {
        fs::path p = path / name;
        fs::create_directories(p.parent_path());
        std::ofstream(p) << content;
        return p;
    }
};

} // namespace

TEST_CASE("five-node file loads with first-appearance indexing") {
    LoadStats stats;
    auto g = load_triples(std::string(TEST_DATA_DIR) + "/five_node.tsv", &stats);
    CHECK(g.num_nodes() == 5);
    CHECK(g.num_relations() == 3);
    CHECK(g.num_edges() == 8);
    CHECK(stats.duplicates_dropped == 0);
    CHECK(*g.nodes.find("A") == 0);
    CHECK(*g.nodes.find("E") == 4);
    CHECK(*g.relations.find("r1") == 0);
    CHECK(*g.relations.find("r3") == 2);
    CHECK(g.contains({3, 2, 1})); // D r3 B
}

TEST_CASE("single triple") {
    std::istringstream in("x\tlikes\ty\n");
    auto g = load_triples(in);
    CHECK(g.num_nodes() == 2);
    CHECK(g.num_relations() == 1);
    CHECK(g.num_edges() == 1);
}

TEST_CASE("duplicate triples are dropped and counted") {
    std::istringstream in("x\tlikes\ty\nx\tlikes\ty\n");
    LoadStats stats;
    auto g = load_triples(in, "<stream>", &stats);
    CHECK(g.num_edges() == 1);
    CHECK(stats.duplicates_dropped == 1);
}

TEST_CASE("malformed and empty inputs are rejected") {
    std::istringstream bad("a\tb\tc\noops no tabs\n");
    CHECK_THROWS_WITH_AS(load_triples(bad, "edges.tsv"), doctest::Contains("edges.tsv:2"),
                         ParseError);
    std::istringstream empty("\n\n");
    CHECK_THROWS_AS(load_triples(empty), InputError);
}

TEST_CASE("save and re-load reproduce the graph exactly") {
    auto g = toy::five_node();
    std::ostringstream out;
    save_triples(g, out);
    std::istringstream in(out.str());
    auto back = load_triples(in);
    REQUIRE(back.num_edges() == g.num_edges());
    CHECK(back.triples() == g.triples());
    for (std::uint32_t v = 0; v < g.num_nodes(); ++v)
        CHECK(back.nodes.label(v) == g.nodes.label(v));
    for (std::uint32_t r = 0; r < g.num_relations(); ++r)
        CHECK(back.relations.label(r) == g.relations.label(r));
}

TEST_CASE("typed composition renames relations by endpoint types") {
    RelGraph g;
    g.add("c1", "Single", "c2");
    g.add("c2", "Double", "o1");
    std::unordered_map<std::string, std::string> types{{"c1", "C"}, {"c2", "C"}, {"o1", "O"}};
    auto typed = compose_typed_relations(g, types);
    CHECK(typed.num_nodes() == g.num_nodes());
    CHECK(typed.num_edges() == g.num_edges());
    CHECK(typed.relations.find("C-Single-C").has_value());
    CHECK(typed.relations.find("C-Double-O").has_value());

    SUBCASE("one node type and one relation keeps |R| = 1") {
        RelGraph h;
        h.add("a", "bond", "b");
        h.add("b", "bond", "a");
        auto t = compose_typed_relations(h, {{"a", "C"}, {"b", "C"}});
        CHECK(t.num_relations() == 1);
    }
    SUBCASE("two node types split one relation into two") {
        RelGraph h;
        h.add("x", "bond", "y");
        h.add("y", "bond", "x");
        auto t = compose_typed_relations(h, {{"x", "X"}, {"y", "Y"}});
        CHECK(t.num_relations() == 2);
    }
    SUBCASE("missing type names the node") {
        RelGraph h;
        h.add("a", "bond", "mystery");
        CHECK_THROWS_WITH_AS(compose_typed_relations(h, {{"a", "C"}}),
                             doctest::Contains("mystery"), InputError);
    }
}

TEST_CASE("splits share dictionaries and flag overlaps") {
    TempDir dir("splits");
    auto train = dir.file("train.tsv", "a\tr\tb\n");
    auto valid = dir.file("valid.tsv", "b\tr\tc\n");

    SUBCASE("disjoint one-triple files") {
        auto test = dir.file("test.tsv", "c\tr\ta\n");
        auto bundle = load_splits(train.string(), valid.string(), test.string());
        CHECK(bundle.train.num_edges() == 1);
        CHECK(bundle.valid.size() == 1);
        CHECK(bundle.test.size() == 1);
        CHECK(bundle.warnings.empty());
        CHECK(bundle.train.num_nodes() == 3); // a, b, c all resolvable
        CHECK(bundle.test[0].s == *bundle.train.nodes.find("c"));
    }
    SUBCASE("test triple repeated from train draws a warning") {
        auto test = dir.file("test.tsv", "a\tr\tb\n");
        auto bundle = load_splits(train.string(), valid.string(), test.string());
        CHECK(bundle.warnings.size() == 1);
        CHECK(bundle.test.size() == 1);
    }
}

TEST_CASE("split loader echoes WN18RR-shaped sizes") {
    TempDir dir("wn18rr");
    auto make = [&](const std::string& name, std::size_t count, const std::string& tag) {
        std::ostringstream body;
        for (std::size_t i = 0; i < count; ++i)
            body << tag << i << "\trel" << i % 11 << "\t" << tag << "obj" << i << "\n";
        return dir.file(name, body.str());
    };
    auto bundle = load_splits(make("train.tsv", 86835, "tr").string(),
                              make("valid.tsv", 3034, "va").string(),
                              make("test.tsv", 3134, "te").string());
    CHECK(bundle.train.num_edges() == 86835);
    CHECK(bundle.valid.size() == 3034);
    CHECK(bundle.test.size() == 3134);
    CHECK(bundle.warnings.empty());
}

TEST_CASE("graph collections load sorted, typed, and with shared relation ids") {
    TempDir dir("coll");
    dir.file("g2/edges.tsv", "p\tknows\tq\n");
    dir.file("g2/targets.tsv", "1.5\t-2\n");
    dir.file("g1/edges.tsv", "a\tSingle\tb\nb\tSingle\tc\n");
    dir.file("g1/types.tsv", "a\tC\nb\tC\nc\tO\n");
    dir.file("g1/targets.tsv", "0.25\t4\n");

    auto c = load_graph_collection(dir.path.string());
    REQUIRE(c.names.size() == 2);
    CHECK(c.names[0] == "g1");
    CHECK(c.names[1] == "g2");
    CHECK(c.targets[0] == std::vector<double>{0.25, 4});
    CHECK(c.targets[1] == std::vector<double>{1.5, -2});
    // typed composition ran for g1 only
    CHECK(c.graphs[0].relations.find("C-Single-C").has_value());
    // both graphs see the union of relations under identical indices
    REQUIRE(c.graphs[0].num_relations() == c.graphs[1].num_relations());
    CHECK(*c.graphs[0].relations.find("knows") == *c.graphs[1].relations.find("knows"));

    SUBCASE("target arity must agree") {
        dir.file("g3/edges.tsv", "u\tknows\tv\n");
        dir.file("g3/targets.tsv", "7\n");
        CHECK_THROWS_AS(load_graph_collection(dir.path.string()), InputError);
    }
}
