#include <CLI11.hpp>

#include <pam/bop.hpp>
#include <pam/ingest.hpp>
#include <pam/lossless.hpp>
#include <pam/manifest.hpp>
#include <pam/pam_matrix.hpp>
#include <pam/rules.hpp>
#include <pam/tasks.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace pam;

namespace {

std::chrono::steady_clock::time_point clock_start;

void write_file(const fs::path& dir, const std::string& name,
                const std::function<void(std::ostream&)>& body) {
    fs::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / name).string());
    body(out);
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

// wall time goes to stdout only; files must not depend on the run
void finish(const fs::path& dir, Manifest& manifest) {
    write_file(dir, "manifest.tsv", [&](std::ostream& out) { manifest.save(out); });
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - clock_start)
                  .count();
    std::cout << "wall_ms " << ms << "\n";
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// Expand `--config FILE` (flat key=value lines, # comments) into ordinary
// flags appended after the explicit ones; explicit command-line flags win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string file;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            file = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            file = args[i].substr(9);
    }
    if (file.empty()) return args;

    std::set<std::string> given;
    for (const auto& a : args)
        if (a.rfind("--", 0) == 0) given.insert(a.substr(0, a.find('=')));

    std::ifstream in(file);
    if (!in) throw Error("cannot open " + file);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(file + ":" + std::to_string(lineno) + ": expected key=value");
        std::string flag = "--" + trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (flag == "--" || given.count(flag)) continue;
        if (value == "true") {
            args.push_back(flag);
        } else if (value == "false") {
            continue;
        } else {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

TfidfOptions feature_options(std::size_t min_df, double max_df, std::size_t vocab, bool raw) {
    TfidfOptions o;
    o.min_df = min_df;
    o.max_df_ratio = max_df;
    o.vocab_cap = vocab;
    o.idf = !raw;
    o.l2_normalize = !raw;
    return o;
}

PamMode lossy_mode(const std::string& name) {
    PamMode mode = parse_mode(name);
    if (mode == PamMode::lossless)
        throw InputError("feature tasks need sum or product mode, not lossless");
    return mode;
}

// `node<TAB>class<TAB>{train|test}`
LabeledNodes read_labels(const std::string& path, const Dictionary& nodes) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    LabeledNodes labels;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto fields = detail::split_tabs(line);
        if (fields.size() != 3)
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": expected node<TAB>class<TAB>{train|test}");
        auto id = nodes.find(fields[0]);
        if (!id)
            throw InputError(path + ":" + std::to_string(lineno) + ": unknown node '" +
                             fields[0] + "'");
        if (fields[2] == "train")
            labels.train.emplace_back(*id, fields[1]);
        else if (fields[2] == "test")
            labels.test.emplace_back(*id, fields[1]);
        else
            throw InputError(path + ":" + std::to_string(lineno) + ": split must be train or test");
    }
    return labels;
}

ModelOptions model_options(const std::string& model, std::size_t neighbors) {
    ModelOptions o;
    if (model == "knn")
        o.kind = ModelKind::knn;
    else if (model == "linear")
        o.kind = ModelKind::linear;
    else
        throw InputError("model must be knn or linear");
    o.neighbors = neighbors;
    return o;
}

LosslessOptions lossless_options(const std::string& phi) {
    LosslessOptions o;
    if (phi == "exhaustive")
        o.phi = PhiPolicy::exhaustive;
    else if (phi == "lazy")
        o.phi = PhiPolicy::lazy;
    else
        throw InputError("phi must be exhaustive or lazy");
    return o;
}

struct PowerArgs {
    std::string config;
    std::string input, mode = "sum", phi = "exhaustive", out = "out";
    std::size_t k = 2;
    unsigned threads = 1;
};

void cmd_power(const PowerArgs& a) {
    auto g = load_triples(a.input);
    fs::path dir(a.out);
    if (a.mode == "lossless") {
        auto lps = lossless_power(lossless_base(g), a.k, lossless_options(a.phi));
        for (const auto& lp : lps) {
            auto tag = std::to_string(lp.hop);
            write_file(dir, "p" + tag + ".factors.txt",
                       [&](std::ostream& out) { save_lossless(lp, out); });
            write_file(dir, "phi" + tag + ".dict.tsv",
                       [&](std::ostream& out) { lp.dict->save(out); });
            auto values = to_value_matrix(lp);
            write_file(dir, "p" + tag + ".txt",
                       [&](std::ostream& out) { save_matrix(values, out); });
            write_file(dir, "hist" + tag + ".tsv",
                       [&](std::ostream& out) { save_histogram(values.histogram(), out); });
        }
    } else {
        auto pams = power(build_pam<std::uint64_t>(g, parse_mode(a.mode)), a.k, a.threads);
        for (const auto& p : pams) {
            auto tag = std::to_string(p.hop);
            write_file(dir, "p" + tag + ".txt", [&](std::ostream& out) { save_matrix(p, out); });
            write_file(dir, "hist" + tag + ".tsv",
                       [&](std::ostream& out) { save_histogram(p.histogram(), out); });
        }
    }
    std::cout << "nodes " << g.num_nodes() << " relations " << g.num_relations() << " edges "
              << g.num_edges() << "\n";
    Manifest m;
    m.add("command", "power");
    m.add_file("input", a.input);
    m.add("k", a.k);
    m.add("mode", a.mode);
    m.add("phi", a.phi);
    m.add("threads", a.threads);
    m.add("out", a.out);
    finish(dir, m);
}

struct NodeArgs {
    std::string config;
    std::string input, labels, mode = "sum", model = "knn", out = "out";
    std::size_t k = 2, min_df = 2, vocab = 10000, neighbors = 20, seed = 0;
    double alpha = 2.0, max_df = 0.99;
    bool raw = false;
    unsigned threads = 1;
};

void cmd_node(const NodeArgs& a) {
    auto g = load_triples(a.input);
    auto labels = read_labels(a.labels, g.nodes);
    auto pams = power(build_pam<std::uint64_t>(g, lossy_mode(a.mode)), a.k, a.threads);
    auto features = fit_tfidf(bop_all_nodes(pams), feature_options(a.min_df, a.max_df, a.vocab, a.raw));
    auto aggregated = neighbor_aggregate(features, g, a.alpha);
    auto res = classify_nodes(aggregated, labels, model_options(a.model, a.neighbors));
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";

    fs::path dir(a.out);
    write_file(dir, "features.tsv", [&](std::ostream& out) { save_features(aggregated, out); });
    write_file(dir, "vocabulary.tsv",
               [&](std::ostream& out) { save_vocabulary(aggregated, out); });
    write_file(dir, "predictions.tsv", [&](std::ostream& out) {
        for (std::size_t i = 0; i < labels.test.size(); ++i)
            out << g.nodes.label(labels.test[i].first) << '\t' << res.predictions[i] << '\n';
    });
    write_file(dir, "metrics.tsv", [&](std::ostream& out) {
        out << "accuracy\t" << fixed6(res.accuracy) << '\n';
        out << "train_nodes\t" << labels.train.size() << '\n';
        out << "test_nodes\t" << labels.test.size() << '\n';
        out << "vocabulary\t" << aggregated.vocabulary.size() << '\n';
    });
    std::cout << "accuracy " << fixed6(res.accuracy) << "\n";

    Manifest m;
    m.add("command", "node");
    m.add_file("input", a.input);
    m.add_file("labels", a.labels);
    m.add("k", a.k);
    m.add("mode", a.mode);
    m.add("alpha", a.alpha);
    m.add("min_df", a.min_df);
    m.add("max_df_ratio", a.max_df);
    m.add("vocab_cap", a.vocab);
    m.add("neighbors", a.neighbors);
    m.add("model", a.model);
    m.add("raw_counts", a.raw);
    m.add("threads", a.threads);
    m.add("seed", a.seed);
    m.add("out", a.out);
    finish(dir, m);
}

struct RelationArgs {
    std::string config;
    std::string train, test, valid, mode = "sum", out = "out";
    std::size_t k = 2, min_df = 2, vocab = 10000, neighbors = 20, seed = 0;
    double max_df = 0.99;
    bool raw = false;
    unsigned threads = 1;
};

void cmd_relation(const RelationArgs& a) {
    auto bundle = load_splits(a.train, a.valid, a.test);
    for (const auto& w : bundle.warnings) std::cerr << "warning: " << w << "\n";
    const RelGraph& g = bundle.train;
    auto pams = power(build_pam<std::uint64_t>(g, lossy_mode(a.mode)), a.k, a.threads);

    std::vector<std::pair<NodeId, NodeId>> train_pairs, query_pairs;
    std::vector<RelId> train_labels, truths;
    for (const auto& t : g.triples()) {
        train_pairs.emplace_back(t.s, t.o);
        train_labels.push_back(t.r);
    }
    for (const auto& t : bundle.test) {
        query_pairs.emplace_back(t.s, t.o);
        truths.push_back(t.r);
    }
    auto pf = build_pair_features(pams, train_pairs, query_pairs,
                                  feature_options(a.min_df, a.max_df, a.vocab, a.raw));
    auto res = rank_relations(pf.train_rows, train_labels, pf.query_rows, truths,
                              g.num_relations(), a.neighbors);

    fs::path dir(a.out);
    write_file(dir, "metrics.tsv", [&](std::ostream& out) {
        out << "mrr\t" << fixed6(res.mrr) << '\n';
        out << "hits_at_3\t" << fixed6(res.hits_at_3) << '\n';
        out << "queries\t" << res.ranks.size() << '\n';
        out << "fallbacks\t" << res.fallback_count << '\n';
    });
    write_file(dir, "ranks.tsv", [&](std::ostream& out) {
        for (std::size_t i = 0; i < bundle.test.size(); ++i) {
            const auto& t = bundle.test[i];
            out << g.nodes.label(t.s) << '\t' << g.relations.label(t.r) << '\t'
                << g.nodes.label(t.o) << '\t' << res.ranks[i] << '\n';
        }
    });
    std::cout << "mrr " << fixed6(res.mrr) << " hits_at_3 " << fixed6(res.hits_at_3) << "\n";

    Manifest m;
    m.add("command", "relation");
    m.add_file("train", a.train);
    if (!a.valid.empty()) m.add_file("valid", a.valid);
    m.add_file("test", a.test);
    m.add("k", a.k);
    m.add("mode", a.mode);
    m.add("min_df", a.min_df);
    m.add("max_df_ratio", a.max_df);
    m.add("vocab_cap", a.vocab);
    m.add("neighbors", a.neighbors);
    m.add("raw_counts", a.raw);
    m.add("threads", a.threads);
    m.add("seed", a.seed);
    m.add("out", a.out);
    finish(dir, m);
}

struct RegressArgs {
    std::string config;
    std::string collection, model = "knn", out = "out";
    std::size_t k = 2, min_df = 2, vocab = 10000, neighbors = 20, test_every = 5,
                target_index = 0, seed = 0;
    double max_df = 0.99, ridge_lambda = 1e-8;
    bool raw = false;
    unsigned threads = 1;
};

void cmd_graph_regress(const RegressArgs& a) {
    auto col = load_graph_collection(a.collection);
    std::vector<std::vector<Pam<std::uint64_t>>> pam_sets;
    std::vector<BopVector<std::uint64_t>> bags;
    for (const auto& g : col.graphs) {
        pam_sets.push_back(power(build_pam<std::uint64_t>(g, PamMode::sum), a.k, a.threads));
        bags.push_back(bop_graph(pam_sets.back()));
    }
    if (a.test_every < 2) throw InputError("--test-every must be at least 2");
    std::vector<std::size_t> train_idx, test_idx;
    for (std::size_t i = 0; i < col.graphs.size(); ++i)
        (i % a.test_every == a.test_every - 1 ? test_idx : train_idx).push_back(i);
    if (train_idx.empty() || test_idx.empty())
        throw InputError("collection too small to split train/test at --test-every " +
                         std::to_string(a.test_every));

    std::vector<BopVector<std::uint64_t>> train_bags;
    for (auto i : train_idx) train_bags.push_back(bags[i]);
    auto fitted = fit_tfidf(train_bags, feature_options(a.min_df, a.max_df, a.vocab, a.raw));
    FeatureMatrix<std::uint64_t> features = fitted;
    features.rows.clear();
    for (const auto& bag : bags) features.rows.push_back(fitted.transform(bag));
    features.num_docs = features.rows.size();

    auto mopts = model_options(a.model, a.neighbors);
    mopts.ridge_lambda = a.ridge_lambda;
    auto res = regress_graphs(features, col.targets, train_idx, test_idx, mopts);

    if (a.target_index >= col.targets.front().size())
        throw InputError("--target-index is out of range");
    std::vector<double> target_col;
    for (const auto& row : col.targets) target_col.push_back(row[a.target_index]);
    std::vector<ImportanceContext<std::uint64_t>> sources;
    for (std::size_t i = 0; i < col.graphs.size(); ++i)
        sources.push_back({&col.graphs[i], &pam_sets[i], nullptr});
    auto importance = path_importance(features, target_col, sources);

    fs::path dir(a.out);
    write_file(dir, "metrics.tsv", [&](std::ostream& out) {
        for (std::size_t t = 0; t < res.per_target_mae.size(); ++t)
            out << "mae_" << t << '\t' << fixed6(res.per_target_mae[t]) << '\n';
        out << "mean_mae\t" << fixed6(res.mean_mae) << '\n';
        out << "train_graphs\t" << train_idx.size() << '\n';
        out << "test_graphs\t" << test_idx.size() << '\n';
    });
    write_file(dir, "predictions.tsv", [&](std::ostream& out) {
        for (std::size_t i = 0; i < test_idx.size(); ++i) {
            out << col.names[test_idx[i]];
            for (double v : res.predictions[i]) out << '\t' << fixed6(v);
            out << '\n';
        }
    });
    write_file(dir, "importance.tsv",
               [&](std::ostream& out) { save_importance(importance, out); });
    write_file(dir, "features.tsv", [&](std::ostream& out) { save_features(features, out); });
    write_file(dir, "vocabulary.tsv", [&](std::ostream& out) { save_vocabulary(features, out); });
    std::cout << "mean_mae " << fixed6(res.mean_mae) << "\n";

    Manifest m;
    m.add("command", "graph-regress");
    m.add("collection", a.collection);
    m.add("graphs", col.graphs.size());
    m.add("k", a.k);
    m.add("model", a.model);
    m.add("min_df", a.min_df);
    m.add("max_df_ratio", a.max_df);
    m.add("vocab_cap", a.vocab);
    m.add("neighbors", a.neighbors);
    m.add("ridge_lambda", a.ridge_lambda);
    m.add("raw_counts", a.raw);
    m.add("test_every", a.test_every);
    m.add("target_index", a.target_index);
    m.add("threads", a.threads);
    m.add("seed", a.seed);
    m.add("out", a.out);
    finish(dir, m);
}

struct RulesArgs {
    std::string config;
    std::string input, mode = "sum", phi = "exhaustive", out = "out";
    std::size_t k = 2, min_support = 1;
    double min_confidence = 0.0;
    unsigned threads = 1;
};

void cmd_rules(const RulesArgs& a) {
    auto g = load_triples(a.input);
    auto p1 = build_pam<std::uint64_t>(g, PamMode::product);
    RuleSet rules;
    if (a.mode == "lossless") {
        auto lps = lossless_power(lossless_base(g), a.k, lossless_options(a.phi));
        rules = mine_rules(p1, lps[a.k - 1], a.min_support, a.min_confidence);
    } else {
        auto pams = power(build_pam<std::uint64_t>(g, parse_mode(a.mode)), a.k, a.threads);
        rules = mine_rules(p1, pams[a.k - 1], a.min_support, a.min_confidence);
    }
    fs::path dir(a.out);
    write_file(dir, "rules.tsv",
               [&](std::ostream& out) { save_rules(rules, out, &g.relations); });
    std::cout << "rules " << rules.size() << "\n";

    Manifest m;
    m.add("command", "rules");
    m.add_file("input", a.input);
    m.add("k", a.k);
    m.add("mode", a.mode);
    m.add("phi", a.phi);
    m.add("min_support", a.min_support);
    m.add("min_confidence", a.min_confidence);
    m.add("threads", a.threads);
    m.add("out", a.out);
    finish(dir, m);
}

struct PathsArgs {
    std::string config;
    std::string input, from, to, out = "out";
    std::size_t k = 2;
};

void cmd_paths(const PathsArgs& a) {
    auto g = load_triples(a.input);
    auto from = g.nodes.find(a.from);
    if (!from) throw InputError("unknown node '" + a.from + "'");
    auto to = g.nodes.find(a.to);
    if (!to) throw InputError("unknown node '" + a.to + "'");
    auto walks = extract_paths_for_pair(g, *from, *to, a.k);
    fs::path dir(a.out);
    write_file(dir, "paths.tsv", [&](std::ostream& out) {
        for (const auto& w : walks) {
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (i) out << ',';
                out << g.relations.label(w[i]);
            }
            out << '\n';
        }
    });
    std::cout << "paths " << walks.size() << "\n";

    Manifest m;
    m.add("command", "paths");
    m.add_file("input", a.input);
    m.add("from", a.from);
    m.add("to", a.to);
    m.add("k", a.k);
    m.add("out", a.out);
    finish(dir, m);
}

} // namespace

int main(int argc, char** argv) {
    clock_start = std::chrono::steady_clock::now();
    CLI::App app{"pam: multi-relational graph analytics over prime adjacency matrices"};
    app.require_subcommand(1);
    const std::string config_help = "flat key=value config file; explicit flags win";

    PowerArgs power_args;
    auto* power_cmd = app.add_subcommand("power", "write P^1..P^k matrices and histograms");
    power_cmd->add_option("--config", power_args.config, config_help);
    power_cmd->add_option("--input", power_args.input, "edge TSV: subject relation object")
        ->required();
    power_cmd->add_option("--k", power_args.k, "hop count")->capture_default_str();
    power_cmd->add_option("--mode", power_args.mode, "sum, product, or lossless")
        ->capture_default_str();
    power_cmd->add_option("--phi", power_args.phi, "lossless chain numbering: exhaustive or lazy")
        ->capture_default_str();
    power_cmd->add_option("--threads", power_args.threads, "row-parallel workers")
        ->capture_default_str();
    power_cmd->add_option("--out", power_args.out, "output directory")->capture_default_str();
    power_cmd->callback([&] { cmd_power(power_args); });

    NodeArgs node_args;
    auto* node_cmd = app.add_subcommand("node", "classify labeled nodes from path features");
    node_cmd->add_option("--config", node_args.config, config_help);
    node_cmd->add_option("--input", node_args.input, "edge TSV")->required();
    node_cmd->add_option("--labels", node_args.labels, "node class {train|test} TSV")->required();
    node_cmd->add_option("--k", node_args.k, "hop count")->capture_default_str();
    node_cmd->add_option("--mode", node_args.mode, "sum or product")->capture_default_str();
    node_cmd->add_option("--alpha", node_args.alpha, "self weight in neighbor aggregation")
        ->capture_default_str();
    node_cmd->add_option("--min-df", node_args.min_df, "drop values in fewer documents")
        ->capture_default_str();
    node_cmd->add_option("--max-df", node_args.max_df, "drop values above this document ratio")
        ->capture_default_str();
    node_cmd->add_option("--vocab", node_args.vocab, "vocabulary cap")->capture_default_str();
    node_cmd->add_option("--neighbors", node_args.neighbors, "kNN neighborhood size")
        ->capture_default_str();
    node_cmd->add_option("--model", node_args.model, "knn or linear")->capture_default_str();
    node_cmd->add_flag("--raw-counts", node_args.raw, "skip idf weighting and normalization");
    node_cmd->add_option("--threads", node_args.threads, "row-parallel workers")
        ->capture_default_str();
    node_cmd->add_option("--seed", node_args.seed, "echoed into the manifest")
        ->capture_default_str();
    node_cmd->add_option("--out", node_args.out, "output directory")->capture_default_str();
    node_cmd->callback([&] { cmd_node(node_args); });

    RelationArgs rel_args;
    auto* rel_cmd = app.add_subcommand("relation", "rank relations for held-out pairs");
    rel_cmd->add_option("--config", rel_args.config, config_help);
    rel_cmd->add_option("--train", rel_args.train, "training triples TSV")->required();
    rel_cmd->add_option("--test", rel_args.test, "query triples TSV")->required();
    rel_cmd->add_option("--valid", rel_args.valid, "optional extra split, interned not trained");
    rel_cmd->add_option("--k", rel_args.k, "hop count")->capture_default_str();
    rel_cmd->add_option("--mode", rel_args.mode, "sum or product")->capture_default_str();
    rel_cmd->add_option("--min-df", rel_args.min_df, "drop values in fewer documents")
        ->capture_default_str();
    rel_cmd->add_option("--max-df", rel_args.max_df, "drop values above this document ratio")
        ->capture_default_str();
    rel_cmd->add_option("--vocab", rel_args.vocab, "vocabulary cap per block")
        ->capture_default_str();
    rel_cmd->add_option("--neighbors", rel_args.neighbors, "kNN neighborhood size")
        ->capture_default_str();
    rel_cmd->add_flag("--raw-counts", rel_args.raw, "skip idf weighting and normalization");
    rel_cmd->add_option("--threads", rel_args.threads, "row-parallel workers")
        ->capture_default_str();
    rel_cmd->add_option("--seed", rel_args.seed, "echoed into the manifest")
        ->capture_default_str();
    rel_cmd->add_option("--out", rel_args.out, "output directory")->capture_default_str();
    rel_cmd->callback([&] { cmd_relation(rel_args); });

    RegressArgs reg_args;
    auto* reg_cmd = app.add_subcommand("graph-regress", "predict numeric targets per graph");
    reg_cmd->add_option("--config", reg_args.config, config_help);
    reg_cmd->add_option("--collection", reg_args.collection,
                        "directory of graph subdirectories with edges.tsv and targets.tsv")
        ->required();
    reg_cmd->add_option("--k", reg_args.k, "hop count")->capture_default_str();
    reg_cmd->add_option("--model", reg_args.model, "knn or linear")->capture_default_str();
    reg_cmd->add_option("--min-df", reg_args.min_df, "drop values in fewer documents")
        ->capture_default_str();
    reg_cmd->add_option("--max-df", reg_args.max_df, "drop values above this document ratio")
        ->capture_default_str();
    reg_cmd->add_option("--vocab", reg_args.vocab, "vocabulary cap")->capture_default_str();
    reg_cmd->add_option("--neighbors", reg_args.neighbors, "kNN neighborhood size")
        ->capture_default_str();
    reg_cmd->add_option("--ridge-lambda", reg_args.ridge_lambda, "linear model regularizer")
        ->capture_default_str();
    reg_cmd->add_flag("--raw-counts", reg_args.raw, "skip idf weighting and normalization");
    reg_cmd->add_option("--test-every", reg_args.test_every,
                        "every n-th graph (sorted by name) is held out")
        ->capture_default_str();
    reg_cmd->add_option("--target-index", reg_args.target_index,
                        "target column for the importance table")
        ->capture_default_str();
    reg_cmd->add_option("--threads", reg_args.threads, "row-parallel workers")
        ->capture_default_str();
    reg_cmd->add_option("--seed", reg_args.seed, "echoed into the manifest")
        ->capture_default_str();
    reg_cmd->add_option("--out", reg_args.out, "output directory")->capture_default_str();
    reg_cmd->callback([&] { cmd_graph_regress(reg_args); });

    RulesArgs rules_args;
    auto* rules_cmd = app.add_subcommand("rules", "mine k-hop body to head-relation rules");
    rules_cmd->add_option("--config", rules_args.config, config_help);
    rules_cmd->add_option("--input", rules_args.input, "edge TSV")->required();
    rules_cmd->add_option("--k", rules_args.k, "body hop count")->capture_default_str();
    rules_cmd->add_option("--mode", rules_args.mode, "body matrix: sum, product, or lossless")
        ->capture_default_str();
    rules_cmd->add_option("--phi", rules_args.phi,
                          "lossless chain numbering: exhaustive or lazy")
        ->capture_default_str();
    rules_cmd->add_option("--min-support", rules_args.min_support, "minimum co-occurring pairs")
        ->capture_default_str();
    rules_cmd->add_option("--min-confidence", rules_args.min_confidence, "minimum confidence")
        ->capture_default_str();
    rules_cmd->add_option("--threads", rules_args.threads, "row-parallel workers")
        ->capture_default_str();
    rules_cmd->add_option("--out", rules_args.out, "output directory")->capture_default_str();
    rules_cmd->callback([&] { cmd_rules(rules_args); });

    PathsArgs paths_args;
    auto* paths_cmd = app.add_subcommand("paths", "list k-hop relation chains between two nodes");
    paths_cmd->add_option("--config", paths_args.config, config_help);
    paths_cmd->add_option("--input", paths_args.input, "edge TSV")->required();
    paths_cmd->add_option("--from", paths_args.from, "source node label")->required();
    paths_cmd->add_option("--to", paths_args.to, "target node label")->required();
    paths_cmd->add_option("--k", paths_args.k, "hop count")->capture_default_str();
    paths_cmd->add_option("--out", paths_args.out, "output directory")->capture_default_str();
    paths_cmd->callback([&] { cmd_paths(paths_args); });

    try {
        auto args = expand_config({argv + 1, argv + argc});
        std::reverse(args.begin(), args.end()); // the vector overload parses back-to-front
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
