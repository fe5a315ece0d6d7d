#ifndef LATCOH_SEMIGROUP_HPP
#define LATCOH_SEMIGROUP_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <latcoh/error.hpp>
#include <latcoh/lattice.hpp>

namespace latcoh
{

/**
 * A good semigroup S in Z^r_{>=0}, stored by its small elements S ∩ R(0, c).
 *
 * Membership is extended to the whole orthant by the rule
 *     l ∈ S  <=>  min(l, c) ∈ small_elements,
 * which is the defining contract of this type. Construction only checks the
 * shape of the data (dimensions, box); the semigroup axioms are checked by
 * validate_good_semigroup().
 *
 * Immutable after construction.
 */
class GoodSemigroup
{
public:
    GoodSemigroup() = default;

    static GoodSemigroup from_elements(std::size_t r, LatticePoint conductor, std::vector<LatticePoint> small)
    {
        if (r == 0) {
            throw InputError("branch count must be at least 1");
        }
        if (conductor.size() != r) {
            throw InputError("conductor has dimension " + std::to_string(conductor.size()) + ", expected "
                             + std::to_string(r));
        }
        if (!conductor.nonnegative()) {
            throw InputError("conductor " + conductor.str() + " has a negative coordinate");
        }
        for (const auto &s : small) {
            if (s.size() != r) {
                throw InputError("element " + s.str() + " has dimension " + std::to_string(s.size())
                                 + ", expected " + std::to_string(r));
            }
            if (!s.nonnegative() || !leq(s, conductor)) {
                throw InputError("element " + s.str() + " lies outside R(0, " + conductor.str() + ")");
            }
        }
        std::sort(small.begin(), small.end());
        small.erase(std::unique(small.begin(), small.end()), small.end());

        GoodSemigroup S;
        S.r_ = r;
        S.c_ = std::move(conductor);
        S.small_ = std::move(small);
        S.box_ = Box(S.c_);
        S.member_.assign(S.box_.volume(), 0);
        for (const auto &s : S.small_) {
            S.member_[S.box_.index(s)] = 1;
        }
        S.by_coord_.resize(r);
        for (std::size_t i = 0; i < r; ++i) {
            S.by_coord_[i].resize(static_cast<std::size_t>(S.c_[i]) + 1);
        }
        for (std::size_t k = 0; k < S.small_.size(); ++k) {
            for (std::size_t i = 0; i < r; ++i) {
                S.by_coord_[i][static_cast<std::size_t>(S.small_[k][i])].push_back(k);
            }
        }
        return S;
    }

    std::size_t branches() const noexcept { return r_; }
    const LatticePoint &conductor() const noexcept { return c_; }
    const std::vector<LatticePoint> &small_elements() const noexcept { return small_; }

    // The smooth branch Z_{>=0}: r = 1, c = 0.
    bool is_smooth() const { return r_ == 1 && c_[0] == 0; }

    bool contains(const LatticePoint &l) const
    {
        if (l.size() != r_) {
            throw InputError("query point " + l.str() + " has wrong dimension");
        }
        std::size_t idx = 0;
        for (std::size_t k = 0; k < r_; ++k) {
            if (l[k] < 0) {
                return false;
            }
            idx += static_cast<std::size_t>(std::min(l[k], c_[k])) * box_.stride(k);
        }
        return member_[idx] != 0;
    }

    // Small elements t with t_i = v (v <= c_i), by index into small_elements().
    const std::vector<std::size_t> &with_coord(std::size_t i, int v) const
    {
        return by_coord_[i][static_cast<std::size_t>(v)];
    }

    friend bool operator==(const GoodSemigroup &a, const GoodSemigroup &b)
    {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.small_ == b.small_;
    }

private:
    std::size_t r_ = 0;
    LatticePoint c_;
    std::vector<LatticePoint> small_;
    Box box_;
    std::vector<char> member_;
    std::vector<std::vector<std::vector<std::size_t>>> by_coord_;
};

inline bool contains(const GoodSemigroup &S, const LatticePoint &l) { return S.contains(l); }

namespace detail
{

// Shared core of the Delta queries: is there s ∈ S with s_i = l_i and
// s_j >= lower_j for j != i? Reduced to the small elements through
// min(s, c); when l_i >= c_i the point max(lower, c) with coordinate i set
// to l_i is a witness.
inline bool delta_core(const GoodSemigroup &S, const LatticePoint &l, const LatticePoint &lower, std::size_t i)
{
    const auto &c = S.conductor();
    if (l[i] < 0) {
        return false;
    }
    if (l[i] >= c[i]) {
        return true;
    }
    const std::size_t r = S.branches();
    for (std::size_t k : S.with_coord(i, l[i])) {
        const auto &t = S.small_elements()[k];
        bool ok = true;
        for (std::size_t j = 0; j < r && ok; ++j) {
            if (j != i && t[j] < std::min(lower[j], c[j])) {
                ok = false;
            }
        }
        if (ok) {
            return true;
        }
    }
    return false;
}

inline void check_branch(const GoodSemigroup &S, const LatticePoint &l, std::size_t i)
{
    if (l.size() != S.branches()) {
        throw InputError("query point " + l.str() + " has wrong dimension");
    }
    if (i >= S.branches()) {
        throw InputError("branch index out of range");
    }
}

} // namespace detail

// Δ̄_i(l) ≠ ∅: some s ∈ S with s_i = l_i and s_j >= l_j for all j.
inline bool delta_bar_nonempty(const GoodSemigroup &S, const LatticePoint &l, std::size_t i)
{
    detail::check_branch(S, l, i);
    return detail::delta_core(S, l, l, i);
}

// Δ_i(l) ≠ ∅: some s ∈ S with s_i = l_i and s_j > l_j for j != i.
// l may have negative coordinates.
inline bool delta_nonempty(const GoodSemigroup &S, const LatticePoint &l, std::size_t i)
{
    detail::check_branch(S, l, i);
    return detail::delta_core(S, l, l + LatticePoint::ones(l.size()), i);
}

// Δ(l) = ∪_i Δ_i(l) is nonempty.
inline bool delta_nonempty(const GoodSemigroup &S, const LatticePoint &l)
{
    for (std::size_t i = 0; i < S.branches(); ++i) {
        if (delta_nonempty(S, l, i)) {
            return true;
        }
    }
    return false;
}

struct Multiplicity
{
    LatticePoint vector;
    bool smooth = false;

    long total() const { return vector.norm(); }
};

// Componentwise minimum of the nonzero small elements (itself an element by
// min-closure). The smooth branch reports m = 1 with the smooth flag.
inline Multiplicity multiplicity_vector(const GoodSemigroup &S)
{
    std::optional<LatticePoint> m;
    for (const auto &s : S.small_elements()) {
        if (s.is_zero()) {
            continue;
        }
        m = m ? min(*m, s) : s;
    }
    if (!m) {
        return {LatticePoint::ones(S.branches()), true};
    }
    return {*m, false};
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct Violation
{
    std::string axiom; // "1".."5", "semigroup"
    std::vector<LatticePoint> witnesses;
    std::string detail;
};

struct ValidationReport
{
    std::vector<Violation> violations;

    bool pass() const { return violations.empty(); }
    bool violates(const std::string &axiom) const
    {
        return std::any_of(violations.begin(), violations.end(),
                           [&](const Violation &v) { return v.axiom == axiom; });
    }
};

namespace detail
{

// Exchange axiom (3) for the pair (a, b) and coordinate i with a_i = b_i:
// search t ∈ S, t >= min(a,b), t_i > a_i, t_j = min(a_j, b_j) whenever
// a_j != b_j. Free coordinates only need to range up to the conductor, since
// membership depends on min(t, c).
inline bool exchange_witness(const GoodSemigroup &S, const LatticePoint &a, const LatticePoint &b, std::size_t i)
{
    const auto &c = S.conductor();
    const std::size_t r = S.branches();
    LatticePoint lo = min(a, b), hi = lo;
    lo[i] = a[i] + 1;
    hi[i] = std::max(lo[i], c[i]);
    for (std::size_t j = 0; j < r; ++j) {
        if (j != i && a[j] == b[j]) {
            hi[j] = std::max(lo[j], c[j]);
        }
    }
    bool found = false;
    const Box search(lo, hi);
    LatticePoint t = lo;
    for (std::size_t idx = 0; idx < search.volume() && !found; ++idx) {
        if (S.contains(t)) {
            found = true;
        }
        for (std::size_t k = r; k-- > 0;) {
            if (t[k] < hi[k]) {
                ++t[k];
                break;
            }
            t[k] = lo[k];
        }
    }
    return found;
}

} // namespace detail

/**
 * Checks the good-semigroup axioms for the stored data:
 *   (1) 0 ∈ S and nonzero elements have no zero coordinate,
 *   (2) closure under componentwise min,
 *   (3) the exchange axiom, over all pairs in S ∩ R(0, c + 1),
 *   (4) c is the minimal conductor,
 *   (5) Δ(c - 1) = ∅,
 * plus additive closure ("semigroup"). Each failing axiom lists up to
 * `max_witnesses` witnesses.
 */
inline ValidationReport validate_good_semigroup(const GoodSemigroup &S, std::size_t max_witnesses = 8)
{
    ValidationReport report;
    const std::size_t r = S.branches();
    const auto &c = S.conductor();
    const auto &small = S.small_elements();
    auto add = [&](const std::string &axiom, std::vector<LatticePoint> w, std::string detail) {
        for (auto &v : report.violations) {
            if (v.axiom == axiom) {
                if (v.witnesses.size() < max_witnesses) {
                    v.witnesses.insert(v.witnesses.end(), w.begin(), w.end());
                }
                return;
            }
        }
        report.violations.push_back({axiom, std::move(w), std::move(detail)});
    };

    // Represented elements: S ∩ R(0, c + 1).
    const Box outer(c + LatticePoint::ones(r));
    std::vector<LatticePoint> rep;
    for_each_point(outer, [&](const LatticePoint &p) {
        if (S.contains(p)) {
            rep.push_back(p);
        }
    });

    // (1)
    if (!S.contains(LatticePoint::zeros(r))) {
        add("1", {LatticePoint::zeros(r)}, "0 is not an element");
    }
    for (const auto &s : rep) {
        if (!s.is_zero() && std::any_of(s.begin(), s.end(), [](int v) { return v == 0; })) {
            add("1", {s}, "nonzero element with a zero coordinate");
        }
    }

    // (2) and additive closure; pairs of small elements decide both.
    for (std::size_t a = 0; a < small.size(); ++a) {
        for (std::size_t b = a + 1; b < small.size(); ++b) {
            if (!S.contains(min(small[a], small[b]))) {
                add("2", {small[a], small[b]}, "min of two elements is not an element");
            }
        }
        for (std::size_t b = a; b < small.size(); ++b) {
            if (!S.contains(small[a] + small[b])) {
                add("semigroup", {small[a], small[b]}, "sum of two elements is not an element");
            }
        }
    }

    // (3)
    for (std::size_t a = 0; a < rep.size(); ++a) {
        for (std::size_t b = a + 1; b < rep.size(); ++b) {
            for (std::size_t i = 0; i < r; ++i) {
                if (rep[a][i] == rep[b][i] && !detail::exchange_witness(S, rep[a], rep[b], i)) {
                    add("3", {rep[a], rep[b]}, "exchange axiom has no witness");
                }
            }
        }
    }

    // (4)
    if (!S.contains(c)) {
        add("4", {c}, "conductor is not an element");
    }
    for (std::size_t i = 0; i < r; ++i) {
        if (c[i] > 0 && S.contains(c - LatticePoint::unit(r, i))) {
            add("4", {c - LatticePoint::unit(r, i)}, "conductor is not minimal");
        }
    }

    // (5)
    const LatticePoint cm1 = c - LatticePoint::ones(r);
    if (delta_nonempty(S, cm1)) {
        add("5", {cm1}, "Delta(c - 1) is not empty");
    }
    return report;
}

// Validation of raw input; dimension problems raise InputError.
inline ValidationReport validate_good_semigroup(std::size_t r, const LatticePoint &conductor,
                                                const std::vector<LatticePoint> &small)
{
    return validate_good_semigroup(GoodSemigroup::from_elements(r, conductor, small));
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

// The numerical semigroup <gens>; requires gcd(gens) = 1.
inline GoodSemigroup from_numerical_generators(const std::vector<int> &gens)
{
    if (gens.empty()) {
        throw InputError("empty generator set");
    }
    int g = 0;
    for (int a : gens) {
        if (a <= 0) {
            throw InputError("generators must be positive");
        }
        g = std::gcd(g, a);
    }
    if (g != 1) {
        throw InputError("generators have gcd " + std::to_string(g) + "; no conductor exists");
    }
    const int smallest = *std::min_element(gens.begin(), gens.end());
    // Grow the membership table until `smallest` consecutive members appear;
    // from there on every integer is a sum.
    std::vector<char> in{1};
    int run = 0, run_start = 0;
    for (int k = 1; run < smallest; ++k) {
        char m = 0;
        for (int a : gens) {
            if (a <= k && in[static_cast<std::size_t>(k - a)]) {
                m = 1;
                break;
            }
        }
        in.push_back(m);
        if (m) {
            if (run == 0) {
                run_start = k;
            }
            ++run;
        } else {
            run = 0;
        }
    }
    // A run from 0 (gens contain 1) means the smooth branch.
    int c = in[1] ? 0 : run_start;
    if (smallest == 1) {
        c = 0;
    }
    std::vector<LatticePoint> small;
    for (int k = 0; k <= c; ++k) {
        if (in[static_cast<std::size_t>(k)]) {
            small.push_back(LatticePoint{k});
        }
    }
    return GoodSemigroup::from_elements(1, LatticePoint{c}, std::move(small));
}

/**
 * The semigroup of the one-point union of two germs:
 *     S = {0} ∪ ((S' \ {0}) × (S'' \ {0})).
 * A smooth factor (conductor 0) contributes conductor coordinate 1, since its
 * nonzero elements start at 1.
 */
inline GoodSemigroup wedge(const GoodSemigroup &A, const GoodSemigroup &B)
{
    const std::size_t ra = A.branches(), rb = B.branches();
    LatticePoint ca = max(A.conductor(), LatticePoint::ones(ra));
    LatticePoint cb = max(B.conductor(), LatticePoint::ones(rb));
    std::vector<LatticePoint> na, nb;
    for_each_point(Box(ca), [&](const LatticePoint &p) {
        if (!p.is_zero() && A.contains(p)) {
            na.push_back(p);
        }
    });
    for_each_point(Box(cb), [&](const LatticePoint &p) {
        if (!p.is_zero() && B.contains(p)) {
            nb.push_back(p);
        }
    });
    std::vector<int> cc(ca.begin(), ca.end());
    cc.insert(cc.end(), cb.begin(), cb.end());
    std::vector<LatticePoint> small{LatticePoint::zeros(ra + rb)};
    small.reserve(1 + na.size() * nb.size());
    for (const auto &a : na) {
        for (const auto &b : nb) {
            std::vector<int> v(a.begin(), a.end());
            v.insert(v.end(), b.begin(), b.end());
            small.emplace_back(std::move(v));
        }
    }
    return GoodSemigroup::from_elements(ra + rb, LatticePoint(std::move(cc)), std::move(small));
}

/**
 * Is there an increasing path p -> p + m inside S? Shifting such a segment by
 * multiples of m gives an infinite increasing path in S, so this holds
 * exactly when p >= c.
 */
inline bool is_above_conductor(const GoodSemigroup &S, const LatticePoint &p)
{
    if (!S.contains(p)) {
        throw InputError("point " + p.str() + " is not a semigroup element");
    }
    const LatticePoint m = multiplicity_vector(S).vector;
    const Box box(p, p + m);
    std::vector<char> reach(box.volume(), 0);
    reach[0] = 1;
    // Index order is a topological order for +e_i steps.
    for (std::size_t idx = 0; idx < box.volume(); ++idx) {
        if (!reach[idx]) {
            continue;
        }
        for (std::size_t i = 0; i < S.branches(); ++i) {
            if (box.coord(idx, i) < box.hi()[i]) {
                const std::size_t next = idx + box.stride(i);
                if (!reach[next] && S.contains(box.point(next))) {
                    reach[next] = 1;
                }
            }
        }
    }
    return reach[box.volume() - 1] != 0;
}

// ---------------------------------------------------------------------------
// Numerical (r = 1) helpers
// ---------------------------------------------------------------------------

inline void require_numerical(const GoodSemigroup &S)
{
    if (S.branches() != 1) {
        throw InputError("operation needs a numerical semigroup (r = 1)");
    }
}

inline int genus(const GoodSemigroup &S)
{
    require_numerical(S);
    return S.conductor()[0] + 1 - static_cast<int>(S.small_elements().size());
}

inline std::vector<int> minimal_generators(const GoodSemigroup &S)
{
    require_numerical(S);
    if (S.is_smooth()) {
        return {1};
    }
    const int c = S.conductor()[0];
    const int m = multiplicity_vector(S).vector[0];
    std::vector<int> gens;
    for (int x = 1; x < c + m; ++x) {
        if (!S.contains(LatticePoint{x})) {
            continue;
        }
        bool decomposable = false;
        for (int y = 1; y <= x / 2 && !decomposable; ++y) {
            decomposable = S.contains(LatticePoint{y}) && S.contains(LatticePoint{x - y});
        }
        if (!decomposable) {
            gens.push_back(x);
        }
    }
    return gens;
}

// Number of elements of S in the open interval (m, 2m).
inline int elements_between_m_and_2m(const GoodSemigroup &S)
{
    require_numerical(S);
    const int m = multiplicity_vector(S).vector[0];
    int count = 0;
    for (int x = m + 1; x < 2 * m; ++x) {
        count += S.contains(LatticePoint{x}) ? 1 : 0;
    }
    return count;
}

/**
 * Whether a numerical semigroup is the semigroup of an irreducible plane
 * curve: the minimal generators b0 < b1 < ... < bg have gcd sequence
 * e_k = gcd(b0..bk) strictly decreasing to 1 and n_k b_k < b_{k+1} with
 * n_k = e_{k-1} / e_k.
 */
inline bool is_plane_branch_semigroup(const GoodSemigroup &S)
{
    require_numerical(S);
    if (S.is_smooth()) {
        return true;
    }
    const auto g = minimal_generators(S);
    std::vector<long> e{g[0]};
    for (std::size_t k = 1; k < g.size(); ++k) {
        const long ek = std::gcd(e.back(), static_cast<long>(g[k]));
        if (ek >= e.back()) {
            return false;
        }
        e.push_back(ek);
    }
    if (e.back() != 1) {
        return false;
    }
    for (std::size_t k = 1; k + 1 < g.size(); ++k) {
        const long nk = e[k - 1] / e[k];
        if (nk * g[k] >= g[k + 1]) {
            return false;
        }
    }
    return true;
}

/**
 * All numerical semigroups of genus <= max_genus, by the standard tree:
 * children of S are S \ {x} for minimal generators x above the Frobenius
 * number. Ordered by genus, then by small elements.
 */
inline std::vector<GoodSemigroup> numerical_semigroups_up_to_genus(int max_genus)
{
    // Membership on [0, limit); everything >= 2g is in S.
    const int limit = 3 * max_genus + 4;
    using Table = std::vector<char>;
    auto frobenius = [&](const Table &t) {
        for (int x = limit - 1; x >= 0; --x) {
            if (!t[static_cast<std::size_t>(x)]) {
                return x;
            }
        }
        return -1;
    };
    auto to_semigroup = [&](const Table &t) {
        const int c = frobenius(t) + 1;
        std::vector<LatticePoint> small;
        for (int x = 0; x <= c; ++x) {
            if (t[static_cast<std::size_t>(x)]) {
                small.push_back(LatticePoint{x});
            }
        }
        return std::pair{GoodSemigroup::from_elements(1, LatticePoint{c}, std::move(small)),
                         c - static_cast<int>(std::count(t.begin(), t.begin() + c, 1))};
    };

    std::vector<std::pair<int, GoodSemigroup>> out;
    std::deque<Table> queue{Table(static_cast<std::size_t>(limit), 1)};
    while (!queue.empty()) {
        Table t = std::move(queue.front());
        queue.pop_front();
        auto [S, g] = to_semigroup(t);
        out.emplace_back(g, S);
        if (g == max_genus) {
            continue;
        }
        const int F = frobenius(t);
        for (int x = std::max(F + 1, 1); x < limit; ++x) {
            if (!t[static_cast<std::size_t>(x)]) {
                continue;
            }
            bool decomposable = false;
            for (int y = 1; y <= x / 2 && !decomposable; ++y) {
                decomposable = t[static_cast<std::size_t>(y)] && t[static_cast<std::size_t>(x - y)];
            }
            if (!decomposable) {
                Table child = t;
                child[static_cast<std::size_t>(x)] = 0;
                queue.push_back(std::move(child));
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
        if (a.first != b.first) {
            return a.first < b.first;
        }
        return a.second.small_elements() < b.second.small_elements();
    });
    std::vector<GoodSemigroup> result;
    result.reserve(out.size());
    for (auto &e : out) {
        result.push_back(std::move(e.second));
    }
    return result;
}

} // namespace latcoh

#endif
