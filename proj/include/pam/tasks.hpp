#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pam/bop.hpp"
#include "pam/errors.hpp"
#include "pam/lossless.hpp"
#include "pam/pam_matrix.hpp"
#include "pam/rel_graph.hpp"

namespace pam {

namespace detail {

inline double cosine(const SparseRow& a, const SparseRow& b) {
    double dot = 0, na = 0, nb = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            dot += a[i].second * b[j].second;
            ++i, ++j;
        } else if (a[i].first < b[j].first) {
            ++i;
        } else {
            ++j;
        }
    }
    for (const auto& [idx, w] : a) na += w * w;
    for (const auto& [idx, w] : b) nb += w * w;
    if (na == 0 || nb == 0) return 0;
    return dot / std::sqrt(na * nb);
}

// indices of the n nearest training rows by cosine distance; distance ties
// resolve to the lower training index
inline std::vector<std::uint32_t> nearest(const std::vector<SparseRow>& train, const SparseRow& q,
                                          std::size_t n) {
    std::vector<std::pair<double, std::uint32_t>> scored; // (similarity, index)
    scored.reserve(train.size());
    for (std::uint32_t i = 0; i < train.size(); ++i) scored.emplace_back(cosine(train[i], q), i);
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    if (scored.size() > n) scored.resize(n);
    std::vector<std::uint32_t> idx;
    idx.reserve(scored.size());
    for (const auto& [s, i] : scored) idx.push_back(i);
    return idx;
}

// Solve (K + lambda I) X = B for symmetric positive semi-definite K given
// densely, in place; B holds m right-hand sides column-major.
inline std::vector<double> ridge_solve(std::vector<double> k, std::size_t n,
                                       std::vector<double> b, std::size_t m, double lambda) {
    double trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += k[i * n + i];
    double shift = lambda * (trace > 0 ? trace / static_cast<double>(n) : 1.0);
    for (std::size_t i = 0; i < n; ++i) k[i * n + i] += shift;

    // Cholesky K = L Lᵀ
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = k[i * n + j];
            for (std::size_t p = 0; p < j; ++p) sum -= k[i * n + p] * k[j * n + p];
            if (i == j) {
                if (sum <= 0) throw Error("ridge system is not positive definite");
                k[i * n + i] = std::sqrt(sum);
            } else {
                k[i * n + j] = sum / k[j * n + j];
            }
        }
    }
    // forward then backward substitution per right-hand side
    for (std::size_t c = 0; c < m; ++c) {
        double* x = b.data() + c * n;
        for (std::size_t i = 0; i < n; ++i) {
            double sum = x[i];
            for (std::size_t p = 0; p < i; ++p) sum -= k[i * n + p] * x[p];
            x[i] = sum / k[i * n + i];
        }
        for (std::size_t i = n; i-- > 0;) {
            double sum = x[i];
            for (std::size_t p = i + 1; p < n; ++p) sum -= k[p * n + i] * x[p];
            x[i] = sum / k[i * n + i];
        }
    }
    return b;
}

inline std::vector<double> gram(const std::vector<SparseRow>& rows) {
    std::size_t n = rows.size();
    std::vector<double> k(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            double dot = 0;
            std::size_t a = 0, b = 0;
            while (a < rows[i].size() && b < rows[j].size()) {
                if (rows[i][a].first == rows[j][b].first) {
                    dot += rows[i][a].second * rows[j][b].second;
                    ++a, ++b;
                } else if (rows[i][a].first < rows[j][b].first) {
                    ++a;
                } else {
                    ++b;
                }
            }
            k[i * n + j] = k[j * n + i] = dot;
        }
    return k;
}

inline double dot_sparse(const SparseRow& a, const SparseRow& b) {
    double dot = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            dot += a[i].second * b[j].second;
            ++i, ++j;
        } else if (a[i].first < b[j].first) {
            ++i;
        } else {
            ++j;
        }
    }
    return dot;
}

} // namespace detail

struct LabeledNodes {
    std::vector<std::pair<NodeId, std::string>> train;
    std::vector<std::pair<NodeId, std::string>> test;
};

enum class ModelKind { knn, linear };

struct ModelOptions {
    ModelKind kind = ModelKind::knn;
    std::size_t neighbors = 20;
    double ridge_lambda = 1e-8; // scaled by mean kernel diagonal
};

struct ClassifyResult {
    double accuracy = 0;
    std::vector<std::string> predictions; // aligned with test order
    std::vector<std::string> warnings;
};

/// Fit on train rows, predict test rows, exact-match accuracy. knn votes
/// over cosine neighbors (label ties pick the smaller label); linear is
/// one-vs-rest kernel ridge scored by argmax.
template <class V>
ClassifyResult classify_nodes(const FeatureMatrix<V>& features, const LabeledNodes& labels,
                              ModelOptions opts = {}) {
    if (labels.train.empty() || labels.test.empty())
        throw InputError("classification needs nonempty train and test sets");
    for (const auto& [node, label] : labels.train)
        if (node >= features.rows.size()) throw ContractViolation("train node has no feature row");
    for (const auto& [node, label] : labels.test)
        if (node >= features.rows.size()) throw ContractViolation("test node has no feature row");

    std::set<std::string> train_classes;
    for (const auto& [node, label] : labels.train) train_classes.insert(label);
    ClassifyResult result;
    for (const auto& [node, label] : labels.test)
        if (!train_classes.count(label))
            result.warnings.push_back("class '" + label + "' appears only in the test set");

    std::vector<SparseRow> train_rows;
    train_rows.reserve(labels.train.size());
    for (const auto& [node, label] : labels.train) train_rows.push_back(features.rows[node]);

    std::vector<std::string> classes(train_classes.begin(), train_classes.end());
    auto class_index = [&](const std::string& c) {
        return static_cast<std::size_t>(
            std::lower_bound(classes.begin(), classes.end(), c) - classes.begin());
    };

    std::vector<double> alpha; // train x classes, column-major, linear only
    if (opts.kind == ModelKind::linear) {
        std::size_t n = train_rows.size(), m = classes.size();
        std::vector<double> y(n * m, 0.0);
        for (std::size_t i = 0; i < n; ++i) y[class_index(labels.train[i].second) * n + i] = 1.0;
        alpha = detail::ridge_solve(detail::gram(train_rows), n, std::move(y), m,
                                    opts.ridge_lambda);
    }

    std::size_t correct = 0;
    for (const auto& [node, label] : labels.test) {
        const SparseRow& row = features.rows[node];
        std::size_t best = 0;
        if (opts.kind == ModelKind::knn) {
            std::vector<std::size_t> votes(classes.size(), 0);
            for (auto i : detail::nearest(train_rows, row, opts.neighbors))
                ++votes[class_index(labels.train[i].second)];
            for (std::size_t c = 1; c < classes.size(); ++c)
                if (votes[c] > votes[best]) best = c;
        } else {
            std::size_t n = train_rows.size();
            std::vector<double> scores(classes.size(), 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                double kxi = detail::dot_sparse(row, train_rows[i]);
                if (kxi == 0) continue;
                for (std::size_t c = 0; c < classes.size(); ++c)
                    scores[c] += alpha[c * n + i] * kxi;
            }
            for (std::size_t c = 1; c < classes.size(); ++c)
                if (scores[c] > scores[best]) best = c;
        }
        result.predictions.push_back(classes[best]);
        if (classes[best] == label) ++correct;
    }
    result.accuracy = static_cast<double>(correct) / static_cast<double>(labels.test.size());
    return result;
}

/// Pair feature blocks [F(h,t) || F(t,h) || F(h) || F(t)], each block with
/// its own vocabulary fitted on the training pairs only.
template <class V>
struct PairFeatures {
    FeatureMatrix<V> forward, backward, head, tail;
    std::vector<SparseRow> train_rows, query_rows; // concatenated blocks
};

template <class V>
PairFeatures<V> build_pair_features(const std::vector<Pam<V>>& pams,
                                    const std::vector<std::pair<NodeId, NodeId>>& train_pairs,
                                    const std::vector<std::pair<NodeId, NodeId>>& query_pairs,
                                    TfidfOptions opts = {}) {
    auto node_bags = bop_all_nodes(pams);
    std::vector<BopVector<V>> fwd, bwd, heads, tails;
    for (auto [h, t] : train_pairs) {
        auto [f, b] = bop_pair(pams, h, t);
        fwd.push_back(std::move(f));
        bwd.push_back(std::move(b));
        heads.push_back(node_bags[h]);
        tails.push_back(node_bags[t]);
    }
    // a block whose bags all filter away (say, no backward paths anywhere)
    // contributes nothing rather than failing the whole pipeline
    auto fit_block = [&](const std::vector<BopVector<V>>& bags) {
        try {
            return fit_tfidf(bags, opts);
        } catch (const InputError&) {
            FeatureMatrix<V> empty;
            empty.options = opts;
            empty.num_docs = bags.size();
            empty.rows.resize(bags.size());
            return empty;
        }
    };
    PairFeatures<V> pf;
    pf.forward = fit_block(fwd);
    pf.backward = fit_block(bwd);
    pf.head = fit_block(heads);
    pf.tail = fit_block(tails);

    auto concat = [&](NodeId h, NodeId t) {
        auto [f, b] = bop_pair(pams, h, t);
        SparseRow row;
        std::uint32_t off = 0;
        for (const auto& [idx, w] : pf.forward.transform(f)) row.emplace_back(idx, w);
        off += pf.forward.vocabulary.size();
        for (const auto& [idx, w] : pf.backward.transform(b)) row.emplace_back(off + idx, w);
        off += pf.backward.vocabulary.size();
        for (const auto& [idx, w] : pf.head.transform(node_bags[h])) row.emplace_back(off + idx, w);
        off += pf.head.vocabulary.size();
        for (const auto& [idx, w] : pf.tail.transform(node_bags[t])) row.emplace_back(off + idx, w);
        return row;
    };
    for (auto [h, t] : train_pairs) pf.train_rows.push_back(concat(h, t));
    for (auto [h, t] : query_pairs) pf.query_rows.push_back(concat(h, t));
    return pf;
}

struct RankingResult {
    double mrr = 0;
    double hits_at_3 = 0;
    std::vector<std::size_t> ranks; // 1-based, aligned with queries
    std::size_t fallback_count = 0; // queries ranked by global frequency
};

/// Score every candidate relation for each query by the label frequency of
/// its nearest training pairs; rank descending (score ties resolve to the
/// smaller relation index). All-zero query rows fall back to ranking by
/// global training label frequency.
inline RankingResult rank_relations(const std::vector<SparseRow>& train_rows,
                                    const std::vector<RelId>& train_labels,
                                    const std::vector<SparseRow>& query_rows,
                                    const std::vector<RelId>& true_labels,
                                    std::size_t num_relations, std::size_t n_neighbors) {
    if (train_rows.size() != train_labels.size() || query_rows.size() != true_labels.size())
        throw ContractViolation("rows and labels differ in length");
    std::vector<std::size_t> global(num_relations, 0);
    for (RelId r : train_labels) ++global[r];

    RankingResult result;
    for (std::size_t q = 0; q < query_rows.size(); ++q) {
        std::vector<std::size_t> score(num_relations, 0);
        if (query_rows[q].empty()) {
            ++result.fallback_count;
            score = global;
        } else {
            for (auto i : detail::nearest(train_rows, query_rows[q], n_neighbors))
                ++score[train_labels[i]];
        }
        RelId truth = true_labels[q];
        std::size_t rank = 1;
        for (RelId r = 0; r < num_relations; ++r) {
            if (r == truth) continue;
            if (score[r] > score[truth] || (score[r] == score[truth] && r < truth)) ++rank;
        }
        result.ranks.push_back(rank);
        result.mrr += 1.0 / static_cast<double>(rank);
        if (rank <= 3) result.hits_at_3 += 1.0;
    }
    if (!result.ranks.empty()) {
        result.mrr /= static_cast<double>(result.ranks.size());
        result.hits_at_3 /= static_cast<double>(result.ranks.size());
    }
    return result;
}

struct RegressionResult {
    std::vector<double> per_target_mae;
    double mean_mae = 0;
    std::vector<std::vector<double>> predictions; // test graph x target
};

/// Held-out MAE per target plus the mean across targets. knn predicts the
/// mean of the nearest training targets; linear is kernel ridge per target.
template <class V>
RegressionResult regress_graphs(const FeatureMatrix<V>& features,
                                const std::vector<std::vector<double>>& targets,
                                const std::vector<std::size_t>& train_idx,
                                const std::vector<std::size_t>& test_idx,
                                ModelOptions opts = {}) {
    if (features.rows.size() != targets.size())
        throw ContractViolation("feature rows are not aligned with targets");
    if (train_idx.empty() || test_idx.empty())
        throw InputError("regression needs nonempty train and test sets");
    const std::size_t arity = targets.front().size();
    for (const auto& row : targets) {
        if (row.size() != arity) throw InputError("targets differ in arity");
        for (double v : row)
            if (!std::isfinite(v)) throw InputError("non-finite target value");
    }

    std::vector<SparseRow> train_rows;
    for (auto i : train_idx) train_rows.push_back(features.rows.at(i));

    RegressionResult result;
    result.per_target_mae.assign(arity, 0.0);
    std::vector<double> alpha;
    if (opts.kind == ModelKind::linear) {
        std::size_t n = train_rows.size();
        std::vector<double> y(n * arity);
        for (std::size_t c = 0; c < arity; ++c)
            for (std::size_t i = 0; i < n; ++i) y[c * n + i] = targets[train_idx[i]][c];
        alpha = detail::ridge_solve(detail::gram(train_rows), n, std::move(y), arity,
                                    opts.ridge_lambda);
    }

    for (auto t : test_idx) {
        const SparseRow& row = features.rows.at(t);
        std::vector<double> pred(arity, 0.0);
        if (opts.kind == ModelKind::knn) {
            auto idx = detail::nearest(train_rows, row, opts.neighbors);
            for (auto i : idx)
                for (std::size_t c = 0; c < arity; ++c) pred[c] += targets[train_idx[i]][c];
            for (std::size_t c = 0; c < arity; ++c) pred[c] /= static_cast<double>(idx.size());
        } else {
            std::size_t n = train_rows.size();
            for (std::size_t i = 0; i < n; ++i) {
                double kxi = detail::dot_sparse(row, train_rows[i]);
                if (kxi == 0) continue;
                for (std::size_t c = 0; c < arity; ++c) pred[c] += alpha[c * n + i] * kxi;
            }
        }
        for (std::size_t c = 0; c < arity; ++c)
            result.per_target_mae[c] += std::abs(pred[c] - targets[t][c]);
        result.predictions.push_back(std::move(pred));
    }
    for (std::size_t c = 0; c < arity; ++c) {
        result.per_target_mae[c] /= static_cast<double>(test_idx.size());
        result.mean_mae += result.per_target_mae[c];
    }
    result.mean_mae /= static_cast<double>(arity);
    return result;
}

struct ImportanceEntry {
    std::string value;
    std::string factorization; // per-walk prime products, summed when walks collide
    std::string derivation;    // relation-label chains
    std::string source;        // exact | sampled | unknown
    double correlation = 0;
    bool zero_variance = false;
};

/// Where importance values came from, for decoding them back to chains.
template <class V>
struct ImportanceContext {
    const RelGraph* graph = nullptr;                    // labels + walk extraction
    const std::vector<Pam<V>>* pams = nullptr;          // value -> (hop, cell) lookup
    const std::vector<LosslessPam>* lossless = nullptr; // exact decoding
};

namespace detail {

inline double pearson_column(const std::vector<double>& x, const std::vector<double>& y,
                             bool* zero_variance) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= n, my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0 || syy == 0) {
        *zero_variance = true;
        return 0;
    }
    *zero_variance = false;
    return sxy / std::sqrt(sxx * syy);
}

inline std::string chain_label(const Path& p, const RelGraph* g) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        s += g ? g->relations.label(p[i]) : "r" + std::to_string(p[i]);
    }
    return s + ")";
}

// collapse a sorted walk multiset: "(a,b) + 2*(c,d)"
inline std::string walks_label(const std::vector<Path>& walks, const RelGraph* g) {
    std::string s;
    for (std::size_t i = 0; i < walks.size();) {
        std::size_t j = i;
        while (j < walks.size() && walks[j] == walks[i]) ++j;
        if (!s.empty()) s += " + ";
        if (j - i > 1) s += std::to_string(j - i) + "*";
        s += chain_label(walks[i], g);
        i = j;
    }
    return s;
}

// per-walk products of one-hop primes: "3x3 + 3x7"
inline std::string walks_factorization(const std::vector<Path>& walks, const PathDict& phi1) {
    std::string s;
    for (std::size_t w = 0; w < walks.size(); ++w) {
        if (w) s += " + ";
        for (std::size_t i = 0; i < walks[w].size(); ++i) {
            if (i) s += "x";
            s += std::to_string(phi1.prime_at(walks[w][i]));
        }
    }
    return s;
}

} // namespace detail

namespace detail {

// one provenance source with its value lookups prebuilt
template <class V>
struct ImportanceSource {
    const ImportanceContext<V>* ctx;
    std::map<V, std::pair<std::size_t, std::pair<NodeId, NodeId>>> where; // value -> (hop, cell)
    std::map<BigInt, std::size_t> lossless_at; // value -> index into ctx->lossless
    std::shared_ptr<const PathDict> phi1;
};

template <class V>
ImportanceSource<V> index_source(const ImportanceContext<V>& ctx) {
    ImportanceSource<V> s{&ctx, {}, {}, nullptr};
    if (ctx.pams)
        for (const auto& p : *ctx.pams)
            for (std::size_t i = 0; i < p.n(); ++i)
                for (std::size_t idx = p.m.row_ptr[i]; idx < p.m.row_ptr[i + 1]; ++idx)
                    s.where.emplace(p.m.val[idx],
                                    std::make_pair(p.hop, std::make_pair(static_cast<NodeId>(i),
                                                                         p.m.col[idx])));
    if (ctx.lossless)
        for (std::size_t li = 0; li < ctx.lossless->size(); ++li) {
            const auto& lp = (*ctx.lossless)[li];
            for (std::size_t i = 0; i < lp.n; ++i)
                for (std::size_t c = lp.row_ptr[i]; c < lp.row_ptr[i + 1]; ++c)
                    s.lossless_at.emplace(lp.value(static_cast<NodeId>(i), lp.col[c]), li);
        }
    if (ctx.pams && !ctx.pams->empty() && ctx.pams->front().rel_primes)
        s.phi1 = ctx.pams->front().rel_primes;
    else if (ctx.graph)
        s.phi1 = std::make_shared<PathDict>(PathDict::for_relations(ctx.graph->num_relations()));
    return s;
}

template <class V>
bool resolve_importance(const ImportanceSource<V>& s, const V& value, const BigInt& big,
                        ImportanceEntry& e) {
    const ImportanceContext<V>& ctx = *s.ctx;
    if (ctx.lossless) {
        auto it = s.lossless_at.find(big);
        if (it != s.lossless_at.end()) {
            const auto& lp = (*ctx.lossless)[it->second];
            auto factors = lp.dict->template decode<BigInt>(big);
            std::string fs;
            for (std::size_t f = 0; f < factors.size(); ++f) {
                if (f) fs += " x ";
                fs += std::to_string(lp.dict->prime_at(factors[f]));
            }
            std::vector<Path> walks;
            for (auto f : factors) walks.push_back(lp.dict->path_at(f));
            std::sort(walks.begin(), walks.end());
            e.factorization = fs;
            e.derivation = walks_label(walks, ctx.graph);
            e.source = "exact";
            return true;
        }
    }
    if (ctx.pams) {
        auto it = s.where.find(value);
        if (it != s.where.end()) {
            auto [hop, cell] = it->second;
            if (ctx.graph) {
                auto walks = extract_paths_for_pair(*ctx.graph, cell.first, cell.second, hop);
                if (!walks.empty()) {
                    e.factorization = walks_factorization(walks, *s.phi1);
                    e.derivation = walks_label(walks, ctx.graph);
                    // one hop reads edges off the graph; deeper lossy values
                    // may collide across cells, so one sampled cell only
                    // witnesses a possible derivation
                    e.source = hop == 1 ? "exact" : "sampled";
                    return true;
                }
            }
            if (hop == 1 && s.phi1) {
                try {
                    std::ostringstream vs;
                    vs << value;
                    auto factors = s.phi1->template decode<std::uint64_t>(std::stoull(vs.str()));
                    std::vector<Path> walks;
                    std::string fs;
                    for (std::size_t f = 0; f < factors.size(); ++f) {
                        if (f) fs += " x ";
                        fs += std::to_string(s.phi1->prime_at(factors[f]));
                        walks.push_back(s.phi1->path_at(factors[f]));
                    }
                    e.factorization = fs;
                    e.derivation = walks_label(walks, ctx.graph);
                    e.source = "exact";
                    return true;
                } catch (const std::exception&) {
                    // sum-mode collision with no graph to consult
                }
            }
        }
    }
    return false;
}

} // namespace detail

/// Pearson correlation of every vocabulary column against the target,
/// sorted by |r| descending (ties: ascending path value), each value decoded
/// back to relation chains by the first provenance source that knows it.
template <class V>
std::vector<ImportanceEntry> path_importance(const FeatureMatrix<V>& features,
                                             const std::vector<double>& target,
                                             const std::vector<ImportanceContext<V>>& sources) {
    if (features.rows.size() != target.size())
        throw ContractViolation("feature rows are not aligned with the target");

    // column-wise correlations
    std::vector<ImportanceEntry> entries(features.vocabulary.size());
    std::vector<std::vector<double>> columns(features.vocabulary.size(),
                                             std::vector<double>(features.rows.size(), 0.0));
    for (std::size_t r = 0; r < features.rows.size(); ++r)
        for (const auto& [idx, w] : features.rows[r]) columns.at(idx)[r] = w;
    for (std::size_t c = 0; c < features.vocabulary.size(); ++c)
        entries[c].correlation =
            detail::pearson_column(columns[c], target, &entries[c].zero_variance);

    std::vector<detail::ImportanceSource<V>> indexed;
    for (const auto& ctx : sources) indexed.push_back(detail::index_source(ctx));

    for (std::size_t c = 0; c < features.vocabulary.size(); ++c) {
        const V& value = features.vocabulary[c];
        auto& e = entries[c];
        std::ostringstream os;
        os << value;
        e.value = os.str();
        e.factorization = "UNKNOWN";
        e.derivation = "UNKNOWN";
        e.source = "unknown";
        BigInt big(e.value);
        for (const auto& s : indexed)
            if (detail::resolve_importance(s, value, big, e)) break;
    }

    // |r| is quantized so that columns tied up to summation noise order by
    // ascending value instead of by accumulation order
    auto key = [](double r) { return std::round(std::abs(r) * 1e12); };
    std::sort(entries.begin(), entries.end(), [&](const ImportanceEntry& a,
                                                  const ImportanceEntry& b) {
        if (key(a.correlation) != key(b.correlation))
            return key(a.correlation) > key(b.correlation);
        return a.value.size() != b.value.size() ? a.value.size() < b.value.size()
                                                : a.value < b.value;
    });
    return entries;
}

template <class V>
std::vector<ImportanceEntry> path_importance(const FeatureMatrix<V>& features,
                                             const std::vector<double>& target,
                                             const ImportanceContext<V>& ctx = {}) {
    return path_importance(features, target, std::vector<ImportanceContext<V>>{ctx});
}

/// Four-column TSV mirroring the importance table; sampled or degenerate
/// rows carry a bracketed marker in the derivation column.
inline void save_importance(const std::vector<ImportanceEntry>& entries, std::ostream& out) {
    out << "value\tfactorization\tderivation\timportance\n";
    char buf[64];
    for (const auto& e : entries) {
        std::string derivation = e.derivation;
        if (e.source == "sampled") derivation += " [sampled]";
        if (e.zero_variance) derivation += " [zero-variance]";
        std::snprintf(buf, sizeof buf, "%.6f", e.correlation);
        out << e.value << '\t' << e.factorization << '\t' << derivation << '\t' << buf << '\n';
    }
}

} // namespace pam
