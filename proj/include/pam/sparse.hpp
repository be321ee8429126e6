#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "pam/common.hpp"
#include "pam/errors.hpp"

namespace pam {

namespace detail {

// mul/add that report 64-bit wraparound instead of committing it. Wider
// types never overflow.
template <class V>
struct Arith {
    static bool mul(const V& a, const V& b, V& out) {
        out = a * b;
        return false;
    }
    static bool add(const V& a, const V& b, V& out) {
        out = a + b;
        return false;
    }
};

template <>
struct Arith<std::uint64_t> {
    static bool mul(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
        return __builtin_mul_overflow(a, b, &out);
    }
    static bool add(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
        return __builtin_add_overflow(a, b, &out);
    }
};

} // namespace detail

/// Row-compressed sparse matrix with ascending column order per row.
template <class V>
struct Csr {
    std::size_t n = 0; // square
    std::vector<std::size_t> row_ptr{0};
    std::vector<NodeId> col;
    std::vector<V> val;

    std::size_t nnz() const { return col.size(); }

    // Rows of (col, value) pairs; each row must be sorted by column.
    static Csr from_rows(std::size_t n, std::vector<std::vector<std::pair<NodeId, V>>>& rows) {
        Csr m;
        m.n = n;
        m.row_ptr.assign(n + 1, 0);
        std::size_t total = 0;
        for (std::size_t i = 0; i < n; ++i) total += rows[i].size();
        m.col.reserve(total);
        m.val.reserve(total);
        for (std::size_t i = 0; i < n; ++i) {
            for (auto& [c, v] : rows[i]) {
                m.col.push_back(c);
                m.val.push_back(std::move(v));
            }
            m.row_ptr[i + 1] = m.col.size();
        }
        return m;
    }

    const V* find(NodeId i, NodeId j) const {
        auto first = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i]);
        auto last = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i + 1]);
        auto it = std::lower_bound(first, last, j);
        if (it == last || *it != j) return nullptr;
        return &val[static_cast<std::size_t>(it - col.begin())];
    }
};

/// C = A × B under plus-times, Gustavson row sweep. Overflow in any cell is
/// a hard error labeled with `label` and the cell. Row-parallel; the result
/// does not depend on thread count.
template <class V>
Csr<V> semiring_multiply(const Csr<V>& a, const Csr<V>& b, const std::string& label,
                         unsigned threads = 1) {
    if (a.n != b.n) throw ContractViolation("semiring_multiply: dimension mismatch");
    const std::size_t n = a.n;
    std::vector<std::vector<std::pair<NodeId, V>>> rows(n);

    auto sweep_rows = [&](std::size_t lo, std::size_t hi) {
        std::vector<V> accum(n);
        std::vector<NodeId> touched;
        std::vector<bool> seen(n, false);
        for (std::size_t i = lo; i < hi; ++i) {
            touched.clear();
            for (std::size_t ai = a.row_ptr[i]; ai < a.row_ptr[i + 1]; ++ai) {
                NodeId mid = a.col[ai];
                const V& left = a.val[ai];
                for (std::size_t bi = b.row_ptr[mid]; bi < b.row_ptr[mid + 1]; ++bi) {
                    NodeId j = b.col[bi];
                    V term;
                    if (detail::Arith<V>::mul(left, b.val[bi], term))
                        throw OverflowError(label + " cell (" + std::to_string(i) + "," +
                                            std::to_string(j) + "): product exceeds 64 bits");
                    if (!seen[j]) {
                        seen[j] = true;
                        touched.push_back(j);
                        accum[j] = std::move(term);
                    } else if (detail::Arith<V>::add(accum[j], term, accum[j])) {
                        throw OverflowError(label + " cell (" + std::to_string(i) + "," +
                                            std::to_string(j) + "): sum exceeds 64 bits");
                    }
                }
            }
            std::sort(touched.begin(), touched.end());
            rows[i].reserve(touched.size());
            for (NodeId j : touched) {
                rows[i].emplace_back(j, std::move(accum[j]));
                seen[j] = false;
            }
        }
    };

    if (threads <= 1 || n < 2 * threads) {
        sweep_rows(0, n);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> failures(threads);
        std::size_t chunk = (n + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
            pool.emplace_back([&, lo, hi, t] {
                try {
                    sweep_rows(lo, hi);
                } catch (...) {
                    failures[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& f : failures)
            if (f) std::rethrow_exception(f);
    }
    return Csr<V>::from_rows(n, rows);
}

} // namespace pam
