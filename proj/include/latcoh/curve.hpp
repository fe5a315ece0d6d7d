#ifndef LATCOH_CURVE_HPP
#define LATCOH_CURVE_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include <latcoh/error.hpp>
#include <latcoh/lattice.hpp>
#include <latcoh/semigroup.hpp>
#include <latcoh/value_grid.hpp>

namespace latcoh
{

using Rational = boost::multiprecision::cpp_rational;

struct Term
{
    Rational coef;
    int exp = 0;
};

// Univariate polynomial in the branch parameter, as a list of terms.
using UniPoly = std::vector<Term>;

struct MultiTerm
{
    Rational coef;
    std::vector<int> exps; // one exponent per ambient variable
};

// Polynomial in the ambient coordinates x_1..x_N.
using MultiPoly = std::vector<MultiTerm>;

// Truncated power series: coefficients of t^0 .. t^{T-1}.
using Series = std::vector<Rational>;

inline int order(const UniPoly &p)
{
    int best = -1;
    for (const auto &t : p) {
        if (t.coef != 0 && (best < 0 || t.exp < best)) {
            best = t.exp;
        }
    }
    return best; // -1 for the zero polynomial
}

inline Series to_series(const UniPoly &p, int T)
{
    Series s(static_cast<std::size_t>(T));
    for (const auto &t : p) {
        if (t.exp < T) {
            s[static_cast<std::size_t>(t.exp)] += t.coef;
        }
    }
    return s;
}

inline Series truncated_product(const Series &a, const Series &b)
{
    const std::size_t T = a.size();
    Series c(T);
    for (std::size_t i = 0; i < T; ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; i + j < T; ++j) {
            if (b[j] != 0) {
                c[i + j] += a[i] * b[j];
            }
        }
    }
    return c;
}

struct Branch
{
    std::vector<UniPoly> coords; // x_k(t) for k = 1..N
    int truncation = 0;

    // Smallest order among the coordinates: the multiplicity of the branch.
    int multiplicity() const
    {
        int m = -1;
        for (const auto &p : coords) {
            const int o = order(p);
            if (o > 0 && (m < 0 || o < m)) {
                m = o;
            }
        }
        return m;
    }
    int max_coordinate_order() const
    {
        int m = 0;
        for (const auto &p : coords) {
            m = std::max(m, order(p));
        }
        return m;
    }
};

/**
 * A reduced curve germ given by one polynomial parametrization t -> x(t) per
 * branch. Primitivity of each parametrization is not checked.
 */
struct ParamCurve
{
    std::size_t ambient_dim = 0;
    std::vector<Branch> branches;

    std::size_t size() const { return branches.size(); }

    // Default: 4 * (max coordinate order)^2 for branches with no
    // explicit truncation.
    void apply_default_truncation()
    {
        for (auto &b : branches) {
            if (b.truncation <= 0) {
                const int o = std::max(1, b.max_coordinate_order());
                b.truncation = 4 * o * o;
            }
        }
    }

    void validate() const
    {
        if (ambient_dim == 0 || branches.empty()) {
            throw InputError("curve needs an ambient dimension and at least one branch");
        }
        for (std::size_t i = 0; i < branches.size(); ++i) {
            const auto &b = branches[i];
            const std::string name = "branch " + std::to_string(i);
            if (b.coords.size() != ambient_dim) {
                throw InputError(name + " has " + std::to_string(b.coords.size()) + " coordinates, expected "
                                 + std::to_string(ambient_dim));
            }
            for (const auto &p : b.coords) {
                for (const auto &t : p) {
                    if (t.exp < 0) {
                        throw InputError(name + " has a negative exponent");
                    }
                }
                if (order(p) == 0) {
                    throw InputError(name + " has a coordinate with nonzero constant term");
                }
            }
            if (b.multiplicity() <= 0) {
                throw InputError(name + " is a constant map");
            }
            if (b.truncation <= 0) {
                throw InputError(name + " has no truncation order");
            }
        }
    }
};

// ---------------------------------------------------------------------------
// Valuations
// ---------------------------------------------------------------------------

struct Valuation
{
    std::optional<int> order; // empty: no nonzero coefficient below the truncation
    int truncation = 0;

    bool exhausted() const { return !order.has_value(); }
};

// ord_t g(x(t)), computed on series truncated at the branch's truncation order.
inline Valuation branch_valuation(const Branch &branch, const MultiPoly &g)
{
    const int T = branch.truncation;
    if (T <= 0) {
        throw InputError("branch has no truncation order");
    }
    const std::size_t N = branch.coords.size();
    std::vector<Series> coord(N);
    for (std::size_t k = 0; k < N; ++k) {
        coord[k] = to_series(branch.coords[k], T);
    }
    Series total(static_cast<std::size_t>(T));
    for (const auto &term : g) {
        if (term.exps.size() != N) {
            throw InputError("polynomial has the wrong number of variables");
        }
        Series s(static_cast<std::size_t>(T));
        s[0] = term.coef;
        for (std::size_t k = 0; k < N; ++k) {
            for (int e = 0; e < term.exps[k]; ++e) {
                s = truncated_product(s, coord[k]);
            }
        }
        for (std::size_t i = 0; i < s.size(); ++i) {
            total[i] += s[i];
        }
    }
    for (std::size_t i = 0; i < total.size(); ++i) {
        if (total[i] != 0) {
            return {static_cast<int>(i), T};
        }
    }
    return {std::nullopt, T};
}

// ---------------------------------------------------------------------------
// Jets and the Hilbert function
// ---------------------------------------------------------------------------

namespace detail
{

inline void check_truncation(const ParamCurve &curve, const LatticePoint &L)
{
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (L[i] > curve.branches[i].truncation) {
            throw TruncationError("branch " + std::to_string(i) + " needs jets of order " + std::to_string(L[i])
                                      + " beyond its truncation " + std::to_string(curve.branches[i].truncation),
                                  static_cast<int>(i), L[i]);
        }
    }
}

// Echelon basis with reduced rows, keyed by pivot column.
class RowBasis
{
public:
    explicit RowBasis(std::size_t cols) : cols_(cols) {}

    // Adds the row if independent; returns whether it was.
    bool insert(std::vector<Rational> v)
    {
        for (const auto &[pivot, row] : rows_) {
            if (v[pivot] != 0) {
                const Rational f = v[pivot];
                for (std::size_t j = pivot; j < cols_; ++j) {
                    if (row[j] != 0) {
                        v[j] -= f * row[j];
                    }
                }
            }
        }
        std::size_t p = 0;
        while (p < cols_ && v[p] == 0) {
            ++p;
        }
        if (p == cols_) {
            return false;
        }
        const Rational inv = 1 / v[p];
        for (std::size_t j = p; j < cols_; ++j) {
            v[j] *= inv;
        }
        rows_.emplace_back(p, std::move(v));
        return true;
    }

    std::size_t rank() const { return rows_.size(); }
    std::vector<std::vector<Rational>> rows() const
    {
        std::vector<std::vector<Rational>> out;
        for (const auto &r : rows_) {
            out.push_back(r.second);
        }
        return out;
    }

private:
    std::size_t cols_;
    std::vector<std::pair<std::size_t, std::vector<Rational>>> rows_;
};

// Column offsets of the branches in the concatenated jet vector.
inline std::vector<std::size_t> jet_offsets(const LatticePoint &L)
{
    std::vector<std::size_t> off(L.size() + 1, 0);
    for (std::size_t i = 0; i < L.size(); ++i) {
        off[i + 1] = off[i] + static_cast<std::size_t>(L[i]);
    }
    return off;
}

/**
 * A basis of the image of the ambient polynomial ring in
 * ⊕_i Q[t_i] / (t_i^{L_i}). Monomials are added degree by degree; degrees
 * >= max(L) vanish, and once a whole degree adds nothing no later degree
 * can (the image is closed under multiplication by the coordinates).
 */
inline std::vector<std::vector<Rational>> jet_basis(const ParamCurve &curve, const LatticePoint &L)
{
    check_truncation(curve, L);
    const std::size_t r = curve.size(), N = curve.ambient_dim;
    const auto off = jet_offsets(L);
    const std::size_t cols = off[r];
    RowBasis basis(cols);
    if (cols == 0) {
        return {};
    }
    // per branch, per ambient variable: x_k(t) mod t^{L_i}
    std::vector<std::vector<Series>> coord(r, std::vector<Series>(N));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t k = 0; k < N; ++k) {
            coord[i][k] = to_series(curve.branches[i].coords[k], L[i]);
        }
    }
    struct Mono
    {
        std::size_t last; // largest variable index used
        std::vector<Series> jets;
    };
    auto flatten = [&](const Mono &m) {
        std::vector<Rational> v(cols);
        for (std::size_t i = 0; i < r; ++i) {
            std::copy(m.jets[i].begin(), m.jets[i].end(), v.begin() + static_cast<std::ptrdiff_t>(off[i]));
        }
        return v;
    };
    std::vector<Mono> layer(1);
    layer[0].last = 0;
    layer[0].jets.resize(r);
    for (std::size_t i = 0; i < r; ++i) {
        layer[0].jets[i] = Series(static_cast<std::size_t>(L[i]));
        if (L[i] > 0) {
            layer[0].jets[i][0] = 1;
        }
    }
    basis.insert(flatten(layer[0]));
    const int max_degree = *std::max_element(L.begin(), L.end());
    for (int d = 1; d < max_degree; ++d) {
        std::vector<Mono> next;
        bool grew = false;
        for (const auto &m : layer) {
            for (std::size_t k = m.last; k < N; ++k) {
                Mono n{k, std::vector<Series>(r)};
                for (std::size_t i = 0; i < r; ++i) {
                    n.jets[i] = truncated_product(m.jets[i], coord[i][k]);
                }
                grew = basis.insert(flatten(n)) || grew;
                next.push_back(std::move(n));
            }
        }
        if (!grew) {
            break;
        }
        layer = std::move(next);
    }
    return basis.rows();
}

// Rank of the rows restricted to a column list, with pivots taken in list
// order; returns, for each prefix length k, the rank of the first k columns.
inline std::vector<int> prefix_ranks(std::vector<std::vector<Rational>> rows, const std::vector<std::size_t> &order)
{
    std::vector<int> ranks(order.size() + 1, 0);
    std::size_t rank = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const std::size_t c = order[k];
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) {
            ++piv;
        }
        if (piv < rows.size()) {
            std::swap(rows[piv], rows[rank]);
            const Rational p = rows[rank][c];
            for (std::size_t a = rank + 1; a < rows.size(); ++a) {
                if (rows[a][c] == 0) {
                    continue;
                }
                const Rational f = rows[a][c] / p;
                for (std::size_t t = k; t < order.size(); ++t) {
                    const std::size_t col = order[t];
                    if (rows[rank][col] != 0) {
                        rows[a][col] -= f * rows[rank][col];
                    }
                }
            }
            ++rank;
        }
        ranks[k + 1] = static_cast<int>(rank);
    }
    return ranks;
}

} // namespace detail

/**
 * h(l) = dim of the image of the local ring in ⊕_i Q[t_i]/(t_i^{l_i}):
 * the rank of the jets of all monomials of degree < max(l), the constant
 * monomial included.
 */
inline int hilbert_value(const ParamCurve &curve, const LatticePoint &l)
{
    if (l.size() != curve.size() || !l.nonnegative()) {
        throw InputError("lattice point " + l.str() + " does not fit the curve");
    }
    return static_cast<int>(detail::jet_basis(curve, l).size());
}

// h on all of R(0, L), from one jet basis for L and one prefix elimination
// per choice of the first r - 1 coordinates.
inline ValueGrid hilbert_grid_from_curve(const ParamCurve &curve, const LatticePoint &L)
{
    const std::size_t r = curve.size();
    if (L.size() != r) {
        throw InputError("grid extent has wrong dimension");
    }
    const auto rows = detail::jet_basis(curve, L);
    const auto off = detail::jet_offsets(L);
    ValueGrid h(Box(L), GridRole::hilbert);
    std::vector<int> head_hi(L.begin(), L.end() - 1);
    if (head_hi.empty()) {
        head_hi.push_back(0);
    }
    const Box heads{LatticePoint(head_hi)};
    for_each_point(heads, [&](const LatticePoint &head) {
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i + 1 < r; ++i) {
            for (int k = 0; k < head[i]; ++k) {
                order.push_back(off[i] + static_cast<std::size_t>(k));
            }
        }
        const std::size_t base = order.size();
        for (int k = 0; k < L[r - 1]; ++k) {
            order.push_back(off[r - 1] + static_cast<std::size_t>(k));
        }
        const auto ranks = detail::prefix_ranks(rows, order);
        LatticePoint p = LatticePoint::zeros(r);
        for (std::size_t i = 0; i + 1 < r; ++i) {
            p[i] = head[i];
        }
        for (int last = 0; last <= L[r - 1]; ++last) {
            p[r - 1] = last;
            h[h.box().index(p)] = ranks[base + static_cast<std::size_t>(last)];
        }
    });
    return h;
}

// ---------------------------------------------------------------------------
// Semigroup extraction
// ---------------------------------------------------------------------------

enum class Certificate { verified, truncation_limited };

inline const char *to_string(Certificate c)
{
    return c == Certificate::verified ? "verified" : "truncation-limited";
}

struct IngestResult
{
    GoodSemigroup semigroup;
    long delta = 0;
    LatticePoint multiplicity;
    Certificate certificate = Certificate::verified;
    LatticePoint box; // jet box the membership was read from
};

struct IngestOptions
{
    // Accept an uncertified conductor candidate instead of failing when the
    // truncation orders stop the box from growing.
    bool allow_uncertified = false;
};

/**
 * Builds h on growing boxes R(0, L), reads membership off the increments,
 * and takes as conductor candidate the componentwise minimum of
 * A = {p : R(p, L - 1) ⊆ S}. The candidate is certified when it lies in A
 * together with an increasing path to candidate + m inside S; shifting that
 * path by multiples of m stays in S, so the candidate dominates the
 * conductor, and it is below it by construction. Otherwise the failing
 * coordinates of L double.
 */
inline IngestResult extract_semigroup(const ParamCurve &curve, const IngestOptions &opt = {})
{
    curve.validate();
    const std::size_t r = curve.size();
    LatticePoint m = LatticePoint::zeros(r), L = LatticePoint::zeros(r), T = LatticePoint::zeros(r);
    for (std::size_t i = 0; i < r; ++i) {
        m[i] = curve.branches[i].multiplicity();
        T[i] = curve.branches[i].truncation;
        L[i] = std::min(T[i], std::max(4, 4 * m[i]));
    }
    for (;;) {
        const ValueGrid h = hilbert_grid_from_curve(curve, L);
        const ValueGrid member = semigroup_from_hilbert(h);
        const Box &mbox = member.box(); // R(0, L - 1)
        const LatticePoint top = mbox.hi();

        // A as a grid: p ∈ A iff p ∈ S and p + e_i ∈ A (or is outside) for all i.
        std::vector<char> inA(mbox.volume(), 0);
        for (std::size_t idx = mbox.volume(); idx-- > 0;) {
            if (!member[idx]) {
                continue;
            }
            bool ok = true;
            for (std::size_t i = 0; i < r && ok; ++i) {
                if (mbox.coord(idx, i) < top[i]) {
                    ok = inA[idx + mbox.stride(i)] != 0;
                }
            }
            inA[idx] = ok ? 1 : 0;
        }
        std::optional<LatticePoint> chat;
        for (std::size_t idx = 0; idx < mbox.volume(); ++idx) {
            if (inA[idx]) {
                const LatticePoint p = mbox.point(idx);
                chat = chat ? min(*chat, p) : p;
            }
        }

        std::vector<char> grow(r, 0);
        bool certified = false;
        if (!chat || !inA[mbox.index(*chat)]) {
            std::fill(grow.begin(), grow.end(), 1);
        } else {
            const LatticePoint target = *chat + m;
            for (std::size_t i = 0; i < r; ++i) {
                grow[i] = target[i] > top[i] ? 1 : 0;
            }
            if (std::none_of(grow.begin(), grow.end(), [](char g) { return g; })) {
                // increasing path chat -> chat + m inside S
                const Box seg(*chat, target);
                std::vector<char> reach(seg.volume(), 0);
                reach[0] = 1;
                for (std::size_t idx = 0; idx < seg.volume(); ++idx) {
                    if (!reach[idx]) {
                        continue;
                    }
                    for (std::size_t i = 0; i < r; ++i) {
                        if (seg.coord(idx, i) < seg.hi()[i]) {
                            const std::size_t nxt = idx + seg.stride(i);
                            if (member.at(seg.point(nxt))) {
                                reach[nxt] = 1;
                            }
                        }
                    }
                }
                certified = reach[seg.volume() - 1] != 0;
                if (!certified) {
                    std::fill(grow.begin(), grow.end(), 1);
                }
            }
        }

        bool capped = false;
        if (!certified) {
            for (std::size_t i = 0; i < r; ++i) {
                if (grow[i] && L[i] >= T[i]) {
                    capped = true;
                }
            }
        }
        if (certified || (capped && opt.allow_uncertified && chat)) {
            const LatticePoint c = *chat;
            std::vector<LatticePoint> small;
            for_each_point(Box(c), [&](const LatticePoint &p) {
                if (member.at(p)) {
                    small.push_back(p);
                }
            });
            IngestResult res;
            res.semigroup = GoodSemigroup::from_elements(r, c, std::move(small));
            res.delta = c.norm() - h.at(c);
            res.multiplicity = m;
            res.certificate = certified ? Certificate::verified : Certificate::truncation_limited;
            res.box = L;
            const auto report = validate_good_semigroup(res.semigroup);
            if (!report.pass()) {
                throw ConsistencyError("extracted semigroup violates axiom " + report.violations.front().axiom);
            }
            if (multiplicity_vector(res.semigroup).vector != m && !res.semigroup.is_smooth()) {
                throw ConsistencyError("extracted multiplicity vector differs from the branch orders");
            }
            return res;
        }
        for (std::size_t i = 0; i < r; ++i) {
            if (grow[i] && L[i] >= T[i]) {
                throw TruncationError("conductor not certified within truncation " + std::to_string(T[i])
                                          + " of branch " + std::to_string(i),
                                      static_cast<int>(i), 2L * L[i]);
            }
        }
        for (std::size_t i = 0; i < r; ++i) {
            if (grow[i]) {
                L[i] = std::min(T[i], 2 * L[i]);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Convenience constructors
// ---------------------------------------------------------------------------

// Branch with integer coefficients: {{coef, exp}, ...} per coordinate.
inline Branch make_branch(const std::vector<std::vector<std::pair<long, int>>> &coords, int truncation = 0)
{
    Branch b;
    b.truncation = truncation;
    for (const auto &c : coords) {
        UniPoly p;
        for (const auto &[coef, e] : c) {
            p.push_back({Rational(coef), e});
        }
        b.coords.push_back(std::move(p));
    }
    return b;
}

inline ParamCurve make_curve(std::size_t N, std::vector<Branch> branches)
{
    ParamCurve c{N, std::move(branches)};
    c.apply_default_truncation();
    c.validate();
    return c;
}

} // namespace latcoh

#endif
