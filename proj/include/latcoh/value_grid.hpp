#ifndef LATCOH_VALUE_GRID_HPP
#define LATCOH_VALUE_GRID_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <latcoh/error.hpp>
#include <latcoh/lattice.hpp>
#include <latcoh/semigroup.hpp>

namespace latcoh
{

enum class GridRole { hilbert, weight, membership };

inline const char *to_string(GridRole role)
{
    switch (role) {
        case GridRole::hilbert:
            return "hilbert";
        case GridRole::weight:
            return "weight";
        case GridRole::membership:
            return "membership";
    }
    return "?";
}

// Integer function on R(0, L), stored densely in Box index order.
class ValueGrid
{
public:
    ValueGrid() = default;
    ValueGrid(Box box, GridRole role) : box_(std::move(box)), role_(role), values_(box_.volume(), 0)
    {
        if (!box_.lo().is_zero()) {
            throw InputError("value grids live on boxes R(0, L)");
        }
    }

    const Box &box() const noexcept { return box_; }
    const LatticePoint &extent() const noexcept { return box_.hi(); }
    GridRole role() const noexcept { return role_; }
    std::size_t rank() const noexcept { return box_.rank(); }
    std::size_t size() const noexcept { return values_.size(); }

    int operator[](std::size_t idx) const { return values_[idx]; }
    int &operator[](std::size_t idx) { return values_[idx]; }
    int at(const LatticePoint &p) const
    {
        if (!box_.contains(p)) {
            throw InputError("point " + p.str() + " outside grid box R(0, " + box_.hi().str() + ")");
        }
        return values_[box_.index(p)];
    }
    const std::vector<int> &values() const noexcept { return values_; }

    friend bool operator==(const ValueGrid &a, const ValueGrid &b)
    {
        return a.box_ == b.box_ && a.role_ == b.role_ && a.values_ == b.values_;
    }

private:
    Box box_;
    GridRole role_ = GridRole::hilbert;
    std::vector<int> values_;
};

/**
 * Hilbert function on R(0, L): h(0) = 0 and h(l + e_i) - h(l) = 1 exactly when
 * Δ̄_i(l) is nonempty. Cells are filled in index order, which visits every
 * l - e_i before l, and each cell is checked against all of its incoming
 * edges. A mismatch means the data is not a good semigroup.
 */
inline ValueGrid hilbert_grid(const GoodSemigroup &S, const LatticePoint &L)
{
    const std::size_t r = S.branches();
    if (L.size() != r) {
        throw InputError("grid extent has wrong dimension");
    }
    if (!leq(S.conductor(), L)) {
        throw InputError("grid extent " + L.str() + " must dominate the conductor " + S.conductor().str());
    }
    ValueGrid h(Box(L), GridRole::hilbert);
    const Box &box = h.box();
    LatticePoint p = LatticePoint::zeros(r);
    for (std::size_t idx = 0; idx < box.volume(); ++idx) {
        if (idx > 0) {
            // advance p to box.point(idx)
            for (std::size_t k = r; k-- > 0;) {
                if (p[k] < L[k]) {
                    ++p[k];
                    break;
                }
                p[k] = 0;
            }
            bool have = false;
            int value = 0;
            for (std::size_t i = 0; i < r; ++i) {
                if (p[i] == 0) {
                    continue;
                }
                LatticePoint q = p;
                --q[i];
                const int candidate = h[idx - box.stride(i)] + (detail::delta_core(S, q, q, i) ? 1 : 0);
                if (!have) {
                    value = candidate;
                    have = true;
                } else if (candidate != value) {
                    throw ConsistencyError("Hilbert function is path dependent at " + p.str()
                                           + "; the semigroup is not good");
                }
            }
            h[idx] = value;
        }
    }
    return h;
}

inline ValueGrid hilbert_grid(const GoodSemigroup &S)
{
    return hilbert_grid(S, S.conductor() + LatticePoint::ones(S.branches()));
}

// w(l) = 2 h(l) - |l|.
inline ValueGrid weight_grid(const ValueGrid &h)
{
    if (h.role() != GridRole::hilbert) {
        throw InputError("weight_grid expects a Hilbert grid");
    }
    ValueGrid w(h.box(), GridRole::weight);
    const Box &box = h.box();
    for (std::size_t idx = 0; idx < box.volume(); ++idx) {
        long norm = 0;
        for (std::size_t k = 0; k < box.rank(); ++k) {
            norm += box.coord(idx, k);
        }
        w[idx] = 2 * h[idx] - static_cast<int>(norm);
    }
    return w;
}

// l ∈ S iff h increases in every direction at l. Defined on R(0, L - 1).
inline ValueGrid semigroup_from_hilbert(const ValueGrid &h)
{
    if (h.role() != GridRole::hilbert) {
        throw InputError("semigroup_from_hilbert expects a Hilbert grid");
    }
    const std::size_t r = h.rank();
    const LatticePoint &L = h.extent();
    for (std::size_t i = 0; i < r; ++i) {
        if (L[i] < 1) {
            throw InputError("Hilbert grid too small to read off membership");
        }
    }
    ValueGrid m(Box(L - LatticePoint::ones(r)), GridRole::membership);
    for_each_point(m.box(), [&](const LatticePoint &p) {
        const std::size_t hi = h.box().index(p);
        bool member = true;
        for (std::size_t i = 0; i < r && member; ++i) {
            member = h[hi + h.box().stride(i)] > h[hi];
        }
        m[m.box().index(p)] = member ? 1 : 0;
    });
    return m;
}

// r = 1 closed form: #{s < l : s ∈ S} - #{0 <= k < l : k ∉ S}.
inline int weight_irreducible_oracle(const GoodSemigroup &S, int l)
{
    require_numerical(S);
    int elements = 0, gaps = 0;
    for (int k = 0; k < l; ++k) {
        (S.contains(LatticePoint{k}) ? elements : gaps) += 1;
    }
    return elements - gaps;
}

// Restriction of a grid to the points supported on the branch subset J
// (0-based, any order; output coordinates follow J's order).
inline ValueGrid restrict_branches(const ValueGrid &g, const std::vector<std::size_t> &J)
{
    if (J.empty()) {
        throw InputError("branch subset must be nonempty");
    }
    std::vector<int> hi;
    for (std::size_t j : J) {
        if (j >= g.rank()) {
            throw InputError("branch index out of range");
        }
        hi.push_back(g.extent()[j]);
    }
    ValueGrid out(Box(LatticePoint(hi)), g.role());
    for_each_point(out.box(), [&](const LatticePoint &q) {
        LatticePoint p = LatticePoint::zeros(g.rank());
        for (std::size_t k = 0; k < J.size(); ++k) {
            p[J[k]] = q[k];
        }
        out[out.box().index(q)] = g.at(p);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Minima
// ---------------------------------------------------------------------------

enum class MinimumKind { local, generalized };

struct Minimum
{
    LatticePoint point;
    int weight = 0;
    MinimumKind kind = MinimumKind::local;
};

using MinimaList = std::vector<Minimum>;

namespace detail
{

inline void require_weight_on_conductor_box(const ValueGrid &w, const GoodSemigroup &S)
{
    if (w.role() != GridRole::weight) {
        throw InputError("expected a weight grid");
    }
    if (w.rank() != S.branches() || !leq(S.conductor() + LatticePoint::ones(S.branches()), w.extent())) {
        throw InputError("weight grid must cover R(0, c + 1)");
    }
}

inline bool grid_generalized_min(const ValueGrid &w, std::size_t idx)
{
    const Box &box = w.box();
    for (std::size_t i = 0; i < box.rank(); ++i) {
        if (box.coord(idx, i) >= 1 && !(w[idx] < w[idx - box.stride(i)])) {
            return false;
        }
    }
    return true;
}

} // namespace detail

/**
 * Local minima: w(p) < w(p ± e_i) for every applicable i. Scanned over
 * R(0, L - 1) of the grid and cross-checked point by point against
 * "p ∈ S and Δ(p - 1) = ∅".
 */
inline MinimaList local_minima(const ValueGrid &w, const GoodSemigroup &S)
{
    detail::require_weight_on_conductor_box(w, S);
    const std::size_t r = S.branches();
    const Box &box = w.box();
    const Box inner(w.extent() - LatticePoint::ones(r));
    MinimaList out;
    for_each_point(inner, [&](const LatticePoint &p) {
        const std::size_t idx = box.index(p);
        bool grid = detail::grid_generalized_min(w, idx);
        for (std::size_t i = 0; i < r && grid; ++i) {
            grid = w[idx] < w[idx + box.stride(i)];
        }
        const bool delta = S.contains(p) && !delta_nonempty(S, p - LatticePoint::ones(r));
        if (grid != delta) {
            throw ConsistencyError("local minimum tests disagree at " + p.str());
        }
        if (grid) {
            out.push_back({p, w[idx], MinimumKind::local});
        }
    });
    return out;
}

// Generalized local minima: w(p) < w(p - e_i) whenever p >= e_i; checked
// against Δ(p - 1) = ∅ on the whole grid.
inline MinimaList generalized_local_minima(const ValueGrid &w, const GoodSemigroup &S)
{
    detail::require_weight_on_conductor_box(w, S);
    const std::size_t r = S.branches();
    MinimaList out;
    for_each_point(w.box(), [&](const LatticePoint &p) {
        const std::size_t idx = w.box().index(p);
        const bool grid = detail::grid_generalized_min(w, idx);
        const bool delta = !delta_nonempty(S, p - LatticePoint::ones(r));
        if (grid != delta) {
            throw ConsistencyError("generalized local minimum tests disagree at " + p.str());
        }
        if (grid) {
            out.push_back({p, w[idx], MinimumKind::generalized});
        }
    });
    return out;
}

namespace detail
{

// Evaluates -#{k : w drops on x^k -> x^{k+1} and on p - x^{k+1} -> p - x^k}
// for the path given by its sequence of step directions. The grid starts at
// 0, so idx(p - x) = idx(p) - idx(x).
inline int path_formula(const ValueGrid &w, const LatticePoint &p, const std::vector<std::size_t> &steps)
{
    const Box &box = w.box();
    const std::size_t ip = box.index(p);
    std::size_t x = 0;
    int count = 0;
    for (std::size_t i : steps) {
        const std::size_t y = x + box.stride(i);
        if (w[y] == w[x] - 1 && w[ip - x] == w[ip - y] - 1) {
            ++count;
        }
        x = y;
    }
    return -count;
}

} // namespace detail

/**
 * Checks that the path formula for w(p) gives w(p) on increasing paths from 0
 * to p: all of them when there are at most `exhaustive_limit`, otherwise the
 * lexicographic, reverse-lexicographic and round-robin paths plus
 * `random_paths` seeded shuffles.
 */
inline bool path_weight_formula_check(const ValueGrid &w, const LatticePoint &p, std::size_t exhaustive_limit = 2000,
                                      std::size_t random_paths = 8, std::uint64_t seed = 1)
{
    if (!w.box().contains(p)) {
        throw InputError("point " + p.str() + " outside the weight grid");
    }
    const std::size_t r = p.size();
    std::vector<std::size_t> steps;
    for (std::size_t i = 0; i < r; ++i) {
        steps.insert(steps.end(), static_cast<std::size_t>(p[i]), i);
    }
    const int target = w.at(p);

    // Multinomial count of paths, capped.
    double paths = 1;
    {
        long n = 0;
        for (std::size_t i = 0; i < r; ++i) {
            for (int k = 1; k <= p[i]; ++k) {
                ++n;
                paths = paths * static_cast<double>(n) / k;
            }
        }
    }
    if (paths <= static_cast<double>(exhaustive_limit)) {
        std::vector<std::size_t> perm = steps; // sorted, so this enumerates all
        do {
            if (detail::path_formula(w, p, perm) != target) {
                return false;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return true;
    }

    std::vector<std::vector<std::size_t>> samples{steps, {steps.rbegin(), steps.rend()}};
    std::vector<std::size_t> robin;
    LatticePoint left = p;
    while (robin.size() < steps.size()) {
        for (std::size_t i = 0; i < r; ++i) {
            if (left[i] > 0) {
                --left[i];
                robin.push_back(i);
            }
        }
    }
    samples.push_back(robin);
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < random_paths; ++k) {
        auto s = steps;
        std::shuffle(s.begin(), s.end(), rng);
        samples.push_back(std::move(s));
    }
    return std::all_of(samples.begin(), samples.end(),
                       [&](const auto &s) { return detail::path_formula(w, p, s) == target; });
}

} // namespace latcoh

#endif
