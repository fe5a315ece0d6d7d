#ifndef LATCOH_SMITH_HPP
#define LATCOH_SMITH_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include <latcoh/error.hpp>

namespace latcoh
{

using BigInt = boost::multiprecision::cpp_int;

// Arithmetic used by the reductions. The int64 overloads throw OverflowError
// so callers can rerun on BigInt.
namespace arith
{

inline std::int64_t add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw OverflowError();
    }
    return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) {
        throw OverflowError();
    }
    return r;
}
inline std::int64_t mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw OverflowError();
    }
    return r;
}
inline std::int64_t quot(std::int64_t a, std::int64_t b)
{
    if (a == std::numeric_limits<std::int64_t>::min() && b == -1) {
        throw OverflowError();
    }
    return a / b;
}
inline std::int64_t abs(std::int64_t a)
{
    if (a == std::numeric_limits<std::int64_t>::min()) {
        throw OverflowError();
    }
    return a < 0 ? -a : a;
}
inline std::int64_t neg(std::int64_t a) { return sub(0, a); }

inline BigInt add(const BigInt &a, const BigInt &b) { return a + b; }
inline BigInt sub(const BigInt &a, const BigInt &b) { return a - b; }
inline BigInt mul(const BigInt &a, const BigInt &b) { return a * b; }
inline BigInt quot(const BigInt &a, const BigInt &b) { return a / b; }
inline BigInt abs(const BigInt &a) { return boost::multiprecision::abs(a); }
inline BigInt neg(const BigInt &a) { return -a; }

inline std::int64_t gcd(std::int64_t a, std::int64_t b)
{
    a = abs(a);
    b = abs(b);
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}
inline BigInt gcd(const BigInt &a, const BigInt &b) { return boost::multiprecision::gcd(a, b); }

} // namespace arith

template <typename Int>
using SparseRow = std::vector<std::pair<std::size_t, Int>>; // sorted by column

template <typename Int>
struct SparseMatrix
{
    std::size_t rows = 0, cols = 0;
    std::vector<SparseRow<Int>> data; // one entry per row

    SparseMatrix() = default;
    SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r) {}

    Int at(std::size_t i, std::size_t j) const
    {
        const auto &row = data[i];
        auto it = std::lower_bound(row.begin(), row.end(), j, [](const auto &e, std::size_t k) { return e.first < k; });
        return (it != row.end() && it->first == j) ? it->second : Int(0);
    }

    template <typename Other>
    SparseMatrix<Other> convert() const
    {
        SparseMatrix<Other> out(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            out.data[i].reserve(data[i].size());
            for (const auto &[j, v] : data[i]) {
                out.data[i].emplace_back(j, Other(v));
            }
        }
        return out;
    }
};

template <typename Int>
SparseRow<Int> unit_row(std::size_t i)
{
    return SparseRow<Int>{{i, Int(1)}};
}

// target -= q * source. Columns that newly appear in target are reported
// through `fresh`.
template <typename Int, typename Fresh>
void axpy(SparseRow<Int> &target, const Int &q, const SparseRow<Int> &source, Fresh &&fresh)
{
    SparseRow<Int> out;
    out.reserve(target.size() + source.size());
    std::size_t a = 0, b = 0;
    while (a < target.size() || b < source.size()) {
        if (b == source.size() || (a < target.size() && target[a].first < source[b].first)) {
            out.push_back(std::move(target[a++]));
        } else if (a == target.size() || source[b].first < target[a].first) {
            fresh(source[b].first);
            out.emplace_back(source[b].first, arith::neg(arith::mul(q, source[b].second)));
            ++b;
        } else {
            Int v = arith::sub(target[a].second, arith::mul(q, source[b].second));
            if (v != 0) {
                out.emplace_back(target[a].first, std::move(v));
            }
            ++a;
            ++b;
        }
    }
    target = std::move(out);
}

template <typename Int>
void axpy(SparseRow<Int> &target, const Int &q, const SparseRow<Int> &source)
{
    axpy(target, q, source, [](std::size_t) {});
}

template <typename Int>
Int dot(const SparseRow<Int> &row, const std::vector<Int> &x)
{
    Int s = 0;
    for (const auto &[j, v] : row) {
        if (x[j] != 0) {
            s = arith::add(s, arith::mul(v, x[j]));
        }
    }
    return s;
}

/**
 * Row-side Smith reduction: U A V = diag(d_1, ..., d_k, 0, ...) up to the
 * placement of the pivots. Only U is tracked (optionally, with (U^-1)^T);
 * the column operations are never materialized.
 */
template <typename Int>
struct SmithResult
{
    struct Pivot
    {
        std::size_t row, col;
        Int value; // positive
    };
    std::size_t rows = 0, cols = 0;
    std::vector<Pivot> pivots;
    std::vector<Int> invariant_factors; // divisibility chain, all > 0
    std::optional<std::vector<SparseRow<Int>>> U, UinvT;

    std::size_t rank() const noexcept { return pivots.size(); }

    // Invariant factors > 1.
    std::vector<Int> torsion() const
    {
        std::vector<Int> t;
        for (const auto &d : invariant_factors) {
            if (d != 1) {
                t.push_back(d);
            }
        }
        return t;
    }

    // Rows of U A that vanish: the complement of the pivot rows, ascending.
    std::vector<std::size_t> non_pivot_rows() const
    {
        std::vector<char> used(rows, 0);
        for (const auto &p : pivots) {
            used[p.row] = 1;
        }
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < rows; ++i) {
            if (!used[i]) {
                out.push_back(i);
            }
        }
        return out;
    }
};

// Turns a multiset of positive integers into the invariant-factor chain with
// the same product structure (pairwise gcd / lcm exchange).
template <typename Int>
std::vector<Int> divisibility_chain(std::vector<Int> d)
{
    for (auto &v : d) {
        v = arith::abs(v);
    }
    std::sort(d.begin(), d.end());
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            if (d[i] == 1 || d[j] % d[i] == 0) {
                continue;
            }
            const Int g = arith::gcd(d[i], d[j]);
            const Int l = arith::mul(arith::quot(d[i], g), d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    return d;
}

template <typename Int>
SmithResult<Int> smith_reduce(SparseMatrix<Int> A, bool track = false)
{
    using std::size_t;
    SmithResult<Int> res;
    res.rows = A.rows;
    res.cols = A.cols;
    auto &rows = A.data;

    std::vector<SparseRow<Int>> U, UinvT;
    if (track) {
        U.resize(A.rows);
        UinvT.resize(A.rows);
        for (size_t i = 0; i < A.rows; ++i) {
            U[i] = unit_row<Int>(i);
            UinvT[i] = unit_row<Int>(i);
        }
    }
    // R_k -= q R_p, mirrored on U and (U^-1)^T.
    auto row_op = [&](size_t k, size_t p, const Int &q, auto &&fresh) {
        axpy(rows[k], q, rows[p], fresh);
        if (track) {
            axpy(U[k], q, U[p]);
            axpy(UinvT[p], arith::neg(q), UinvT[k]);
        }
    };
    auto negate_row = [&](size_t k) {
        for (auto &e : rows[k]) {
            e.second = arith::neg(e.second);
        }
        if (track) {
            for (auto &e : U[k]) {
                e.second = arith::neg(e.second);
            }
            for (auto &e : UinvT[k]) {
                e.second = arith::neg(e.second);
            }
        }
    };

    // Phase 1: unit pivots, column by column, shortest eligible row first.
    std::vector<std::vector<size_t>> col_rows(A.cols);
    for (size_t i = 0; i < A.rows; ++i) {
        for (const auto &e : rows[i]) {
            col_rows[e.first].push_back(i);
        }
    }
    std::vector<char> row_done(A.rows, 0), col_done(A.cols, 0);
    std::vector<size_t> mark(A.rows, static_cast<size_t>(-1));
    std::vector<size_t> cand;
    for (size_t c = 0; c < A.cols; ++c) {
        cand.clear();
        for (size_t k : col_rows[c]) {
            if (!row_done[k] && mark[k] != c) {
                mark[k] = c;
                cand.push_back(k);
            }
        }
        size_t best = static_cast<size_t>(-1);
        std::vector<std::pair<size_t, Int>> live;
        for (size_t k : cand) {
            Int v = A.at(k, c);
            if (v == 0) {
                continue;
            }
            if ((v == 1 || v == -1) && (best == static_cast<size_t>(-1) || rows[k].size() < rows[best].size())) {
                best = k;
            }
            live.emplace_back(k, std::move(v));
        }
        if (best == static_cast<size_t>(-1)) {
            // no unit available; keep the live rows listed for phase 2
            col_rows[c].clear();
            for (auto &e : live) {
                col_rows[c].push_back(e.first);
            }
            continue;
        }
        if (A.at(best, c) == -1) {
            negate_row(best);
        }
        for (auto &[k, v] : live) {
            if (k == best) {
                continue;
            }
            row_op(k, best, v, [&](size_t j) { col_rows[j].push_back(k); });
        }
        res.pivots.push_back({best, c, Int(1)});
        row_done[best] = 1;
        col_done[c] = 1;
        col_rows[c].clear();
    }

    // Phase 2: dense reduction of what is left.
    std::vector<size_t> rloc, cloc;
    {
        std::vector<char> col_used(A.cols, 0);
        for (size_t i = 0; i < A.rows; ++i) {
            if (row_done[i] || rows[i].empty()) {
                continue;
            }
            bool any = false;
            for (const auto &e : rows[i]) {
                if (!col_done[e.first]) {
                    col_used[e.first] = 1;
                    any = true;
                }
            }
            if (any) {
                rloc.push_back(i);
            }
        }
        for (size_t j = 0; j < A.cols; ++j) {
            if (col_used[j]) {
                cloc.push_back(j);
            }
        }
    }
    if (!rloc.empty()) {
        const size_t R = rloc.size(), C = cloc.size();
        std::vector<size_t> col_pos(A.cols, static_cast<size_t>(-1));
        for (size_t j = 0; j < C; ++j) {
            col_pos[cloc[j]] = j;
        }
        std::vector<std::vector<Int>> M(R, std::vector<Int>(C, Int(0)));
        for (size_t a = 0; a < R; ++a) {
            for (const auto &e : rows[rloc[a]]) {
                if (col_pos[e.first] != static_cast<size_t>(-1)) {
                    M[a][col_pos[e.first]] = e.second;
                }
            }
        }
        std::vector<char> ract(R, 1), cact(C, 1);
        auto dense_row_op = [&](size_t k, size_t p, const Int &q) {
            for (size_t j = 0; j < C; ++j) {
                if (M[p][j] != 0) {
                    M[k][j] = arith::sub(M[k][j], arith::mul(q, M[p][j]));
                }
            }
            if (track) {
                axpy(U[rloc[k]], q, U[rloc[p]]);
                axpy(UinvT[rloc[p]], arith::neg(q), UinvT[rloc[k]]);
            }
        };
        auto dense_col_op = [&](size_t l, size_t j, const Int &q) {
            for (size_t a = 0; a < R; ++a) {
                if (M[a][j] != 0) {
                    M[a][l] = arith::sub(M[a][l], arith::mul(q, M[a][j]));
                }
            }
        };
        for (;;) {
            // smallest nonzero entry among active rows and columns
            size_t pi = 0, pj = 0;
            bool found = false;
            Int best = 0;
            for (size_t a = 0; a < R; ++a) {
                if (!ract[a]) {
                    continue;
                }
                for (size_t j = 0; j < C; ++j) {
                    if (cact[j] && M[a][j] != 0) {
                        Int v = arith::abs(M[a][j]);
                        if (!found || v < best) {
                            found = true;
                            best = v;
                            pi = a;
                            pj = j;
                        }
                    }
                }
            }
            if (!found) {
                break;
            }
            bool clean = false;
            while (!clean) {
                clean = true;
                const Int piv = M[pi][pj];
                for (size_t a = 0; a < R; ++a) {
                    if (a != pi && ract[a] && M[a][pj] != 0) {
                        dense_row_op(a, pi, arith::quot(M[a][pj], piv));
                    }
                }
                for (size_t j = 0; j < C; ++j) {
                    if (j != pj && cact[j] && M[pi][j] != 0) {
                        dense_col_op(j, pj, arith::quot(M[pi][j], piv));
                    }
                }
                // remainders smaller than the pivot: move the pivot there
                Int small = arith::abs(piv);
                size_t ni = pi, nj = pj;
                for (size_t a = 0; a < R; ++a) {
                    if (a != pi && ract[a] && M[a][pj] != 0 && arith::abs(M[a][pj]) < small) {
                        small = arith::abs(M[a][pj]);
                        ni = a;
                        nj = pj;
                    }
                }
                for (size_t j = 0; j < C; ++j) {
                    if (j != pj && cact[j] && M[pi][j] != 0 && arith::abs(M[pi][j]) < small) {
                        small = arith::abs(M[pi][j]);
                        ni = pi;
                        nj = j;
                    }
                }
                if (ni != pi || nj != pj) {
                    pi = ni;
                    pj = nj;
                    clean = false;
                }
            }
            if (M[pi][pj] < 0) {
                for (size_t j = 0; j < C; ++j) {
                    M[pi][j] = arith::neg(M[pi][j]);
                }
                if (track) {
                    for (auto &e : U[rloc[pi]]) {
                        e.second = arith::neg(e.second);
                    }
                    for (auto &e : UinvT[rloc[pi]]) {
                        e.second = arith::neg(e.second);
                    }
                }
            }
            res.pivots.push_back({rloc[pi], cloc[pj], M[pi][pj]});
            ract[pi] = 0;
            cact[pj] = 0;
        }
    }

    std::vector<Int> d;
    d.reserve(res.pivots.size());
    for (const auto &p : res.pivots) {
        d.push_back(p.value);
    }
    res.invariant_factors = divisibility_chain(std::move(d));
    if (track) {
        res.U = std::move(U);
        res.UinvT = std::move(UinvT);
    }
    return res;
}

// Rank and invariant factors only, with the int64 / BigInt fallback.
struct SmithSummary
{
    std::size_t rank = 0;
    std::vector<BigInt> torsion;
};

inline SmithSummary smith_summary(const SparseMatrix<std::int64_t> &A)
{
    SmithSummary s;
    try {
        auto r = smith_reduce(A, false);
        s.rank = r.rank();
        for (auto &t : r.torsion()) {
            s.torsion.emplace_back(t);
        }
    } catch (const OverflowError &) {
        auto r = smith_reduce(A.convert<BigInt>(), false);
        s.rank = r.rank();
        s.torsion = r.torsion();
    }
    return s;
}

} // namespace latcoh

#endif
