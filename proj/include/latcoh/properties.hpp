#ifndef LATCOH_PROPERTIES_HPP
#define LATCOH_PROPERTIES_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <latcoh/analysis.hpp>
#include <latcoh/cubical.hpp>

namespace latcoh
{

// Outcome of one quantified check on one instance. The witness is a short
// human-readable description of the first counterexample.
struct Check
{
    std::string name;
    bool ok = true;
    std::string witness;
};

namespace props
{

inline Check fail(std::string name, std::string witness) { return {std::move(name), false, std::move(witness)}; }
inline Check pass(std::string name) { return {std::move(name), true, {}}; }

// Coordinates of every grid index, row-major: coords[idx * r + i].
inline std::vector<int> coordinate_table(const Box &box)
{
    const std::size_t r = box.rank();
    std::vector<int> t(box.volume() * r);
    for (std::size_t idx = 0; idx < box.volume(); ++idx) {
        for (std::size_t i = 0; i < r; ++i) {
            t[idx * r + i] = box.coord(idx, i);
        }
    }
    return t;
}

// h(a) + h(b) >= h(min(a, b)) + h(max(a, b)) over all pairs of the grid.
inline Check matroid(const ValueGrid &h)
{
    const Box &box = h.box();
    const std::size_t r = box.rank(), n = box.volume();
    const auto xy = coordinate_table(box);
    for (std::size_t a = 0; a < n; ++a) {
        const int *pa = &xy[a * r];
        for (std::size_t b = a + 1; b < n; ++b) {
            const int *pb = &xy[b * r];
            std::size_t lo = 0, hi = 0;
            for (std::size_t i = 0; i < r; ++i) {
                lo += static_cast<std::size_t>(std::min(pa[i], pb[i])) * box.stride(i);
                hi += static_cast<std::size_t>(std::max(pa[i], pb[i])) * box.stride(i);
            }
            if (h[a] + h[b] < h[lo] + h[hi]) {
                return fail("matroid", box.point(a).str() + " " + box.point(b).str());
            }
        }
    }
    return pass("matroid");
}

// Increments of h are 0 or 1; increments of w are ±1 and w ≡ |l| mod 2.
inline Check increments(const ValueGrid &h, const ValueGrid &w)
{
    const Box &box = h.box();
    if (h[0] != 0 || w[0] != 0) {
        return fail("increments", "value at 0");
    }
    for (std::size_t idx = 0; idx < box.volume(); ++idx) {
        long norm = 0;
        for (std::size_t i = 0; i < box.rank(); ++i) {
            norm += box.coord(idx, i);
            if (box.coord(idx, i) < box.hi()[i]) {
                const int dh = h[idx + box.stride(i)] - h[idx];
                const int dw = w[idx + box.stride(i)] - w[idx];
                if ((dh != 0 && dh != 1) || (dw != 1 && dw != -1)) {
                    return fail("increments", box.point(idx).str());
                }
            }
        }
        if (((w[idx] - norm) % 2) != 0) {
            return fail("increments", "parity at " + box.point(idx).str());
        }
    }
    return pass("increments");
}

/**
 * Stability: a drop w(l + e_i) = w(l) - 1 persists at l + lbar for every
 * lbar >= 0 with lbar_i = 0 (equivalently, a rise persists at l - lbar).
 * Along a monotone path this is the single-step statement checked here:
 * a drop in direction i at l is still a drop at l + e_j, j != i.
 */
inline Check stability(const ValueGrid &w)
{
    const Box &box = w.box();
    const std::size_t r = box.rank();
    for (std::size_t idx = 0; idx < box.volume(); ++idx) {
        for (std::size_t i = 0; i < r; ++i) {
            if (box.coord(idx, i) >= box.hi()[i] || w[idx + box.stride(i)] > w[idx]) {
                continue;
            }
            for (std::size_t j = 0; j < r; ++j) {
                if (j == i || box.coord(idx, j) >= box.hi()[j]) {
                    continue;
                }
                const std::size_t up = idx + box.stride(j);
                if (w[up + box.stride(i)] > w[up]) {
                    return fail("stability", box.point(idx).str() + " directions " + std::to_string(i) + ","
                                                 + std::to_string(j));
                }
            }
        }
    }
    return pass("stability");
}

// w(l + s) - w(l) <= w(l + s + e_i) - w(l + e_i) for s ∈ S, all inside the grid.
// Index arithmetic: idx(l + s) = idx(l) + idx(s) whenever l + s stays in the box.
inline Check window_inequality(const ValueGrid &w, const GoodSemigroup &S)
{
    const Box &box = w.box();
    const std::size_t r = box.rank(), n = box.volume();
    const auto xy = coordinate_table(box);
    std::vector<std::size_t> elems;
    for (std::size_t idx = 0; idx < n; ++idx) {
        if (S.contains(box.point(idx))) {
            elems.push_back(idx);
        }
    }
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t s : elems) {
            bool inside = true;
            std::size_t room = 0; // bitmask of directions with l + s + e_i inside
            for (std::size_t i = 0; i < r && inside; ++i) {
                const int v = xy[l * r + i] + xy[s * r + i];
                inside = v <= box.hi()[i];
                if (v < box.hi()[i]) {
                    room |= std::size_t{1} << i;
                }
            }
            if (!inside) {
                continue;
            }
            const std::size_t ls = l + s;
            for (std::size_t i = 0; i < r; ++i) {
                if (!(room >> i & 1)) {
                    continue;
                }
                const std::size_t st = box.stride(i);
                if (w[ls] - w[l] > w[ls + st] - w[l + st]) {
                    return fail("window_inequality", "l=" + box.point(l).str() + " s=" + box.point(s).str() + " i="
                                             + std::to_string(i));
                }
            }
        }
    }
    return pass("window_inequality");
}

// For generalized minima p: w(l) < w(l + e_i) implies w(p - e_i - l) > w(p - l), l + e_i <= p.
inline Check minima_reflection(const ValueGrid &w, const MinimaList &generalized)
{
    const Box &box = w.box();
    const std::size_t r = box.rank();
    for (const auto &g : generalized) {
        const LatticePoint &p = g.point;
        const std::size_t ip = box.index(p);
        bool ok = true;
        std::string wit;
        for_each_point(Box(p), [&](const LatticePoint &l) {
            if (!ok) {
                return;
            }
            const std::size_t il = box.index(l);
            for (std::size_t i = 0; i < r; ++i) {
                if (l[i] + 1 > p[i]) {
                    continue;
                }
                const std::size_t st = box.stride(i);
                if (w[il] < w[il + st] && !(w[ip - il - st] > w[ip - il])) {
                    ok = false;
                    wit = "p=" + p.str() + " l=" + l.str() + " i=" + std::to_string(i);
                    return;
                }
            }
        });
        if (!ok) {
            return fail("minima_reflection", wit);
        }
    }
    return pass("minima_reflection");
}

// Minima lie in R(0, c), have weight <= 0, and local minima are generalized.
inline Check minima_shape(const Instance &I)
{
    const auto &c = I.S.conductor();
    for (const auto &m : I.generalized) {
        if (!leq(m.point, c) || m.weight > 0) {
            return fail("minima-shape", m.point.str());
        }
    }
    for (const auto &m : I.local) {
        const bool listed = std::any_of(I.generalized.begin(), I.generalized.end(),
                                        [&](const Minimum &g) { return g.point == m.point; });
        if (!listed || !I.S.contains(m.point) || !leq(m.point, c) || m.weight > 0) {
            return fail("minima-shape", m.point.str());
        }
    }
    return pass("minima-shape");
}

inline Check path_formula(const Instance &I)
{
    for (const auto &g : I.generalized) {
        if (!path_weight_formula_check(I.w, g.point)) {
            return fail("path-formula", g.point.str());
        }
    }
    return pass("path-formula");
}

// w(m) = 2 - |m|.
inline Check weight_of_multiplicity(const Instance &I)
{
    if (I.m.smooth) {
        return pass("w(m)");
    }
    const int wm = I.w.at(I.m.vector);
    return wm == 2 - I.m.total() ? pass("w(m)") : fail("w(m)", std::to_string(wm));
}

inline Check zero_minima(const Instance &I)
{
    const auto v = symmetry_zero_minima_check(I);
    return v.holds() ? pass("zero-minima") : fail("zero-minima", v.witness ? v.witness->str() : "");
}

// H^q = 0 for q >= r at every level.
inline Check top_degree_vanishing(const LatticeCohomology &LC)
{
    for (int n = LC.n_min(); n <= LC.n_max(); ++n) {
        for (std::size_t q = LC.branches(); q <= LC.branches(); ++q) {
            if (!LC.level(n).groups[q].is_zero()) {
                return fail("H>=r", "q=" + std::to_string(q) + " n=" + std::to_string(n));
            }
        }
    }
    return pass("H>=r");
}

// Alternating cube count equals the alternating sum of free ranks.
inline Check level_euler(const LatticeCohomology &LC)
{
    for (int n = LC.n_min(); n <= LC.n_max(); ++n) {
        long e = 0;
        for (std::size_t q = 0; q <= LC.branches(); ++q) {
            e += (q % 2 == 0 ? 1 : -1) * static_cast<long>(LC.level(n).groups[q].free_rank);
        }
        if (e != LC.level(n).cube_euler) {
            return fail("level-euler", "n=" + std::to_string(n));
        }
    }
    return pass("level-euler");
}

/**
 * Gorenstein instances: (l, I) -> (c - l - e_I, I) preserves cube weights on
 * R(0, c), hence maps the cube set of every S_n onto itself.
 */
inline Check gorenstein_cube_symmetry(const Instance &I, bool gorenstein)
{
    if (!gorenstein) {
        return pass("Z2-symmetry");
    }
    const CubeTable table(I.w, I.S.conductor());
    const Box &box = table.ambient();
    const std::size_t r = box.rank();
    const std::uint32_t masks = 1u << r;
    for (std::size_t v = 0; v < box.volume(); ++v) {
        for (std::uint32_t mask = 0; mask < masks; ++mask) {
            const int a = table.weight(cube_id(v, mask, r));
            if (a == INT_MAX) {
                continue;
            }
            LatticePoint img = I.S.conductor() - box.point(v);
            for (std::size_t i = 0; i < r; ++i) {
                img[i] -= (mask >> i) & 1u;
            }
            if (table.weight(cube_id(box.index(img), mask, r)) != a) {
                return fail("Z2-symmetry", box.point(v).str() + " dirs " + std::to_string(mask));
            }
        }
    }
    return pass("Z2-symmetry");
}

// Gorenstein: local minima p with 2m <= p <= c - 2m have w(p) <= w(m).
inline Check far_minima(const Instance &I, bool gorenstein)
{
    if (!gorenstein || I.m.smooth) {
        return pass("far-minima");
    }
    const LatticePoint two_m = 2 * I.m.vector;
    const LatticePoint top = I.S.conductor() - two_m;
    const int wm = I.w.at(I.m.vector);
    for (const auto &p : I.local) {
        if (leq(two_m, p.point) && leq(p.point, top) && p.weight > wm) {
            return fail("far-minima", p.point.str());
        }
    }
    return pass("far-minima");
}

/**
 * If l is an M-vertex of (l, J+, J-), every vertex of the cube has weight
 * <= w(l). All cubes at once: J+ ⊆ P, J- ⊆ N disjoint.
 */
inline Check m_vertex(const ValueGrid &w, const LatticePoint &c)
{
    const std::size_t r = w.rank();
    bool ok = true;
    std::string wit;
    for_each_point(Box(c), [&](const LatticePoint &l) {
        if (!ok) {
            return;
        }
        const int wl = w.at(l);
        std::vector<std::size_t> P, N;
        for (std::size_t j = 0; j < r; ++j) {
            const auto ej = LatticePoint::unit(r, j);
            if (w.at(l + ej) < wl) {
                P.push_back(j);
            }
            if (l[j] >= 1 && w.at(l - ej) < wl) {
                N.push_back(j);
            }
        }
        for (std::uint32_t kp = 0; kp < (1u << P.size()) && ok; ++kp) {
            for (std::uint32_t kn = 0; kn < (1u << N.size()) && ok; ++kn) {
                LatticePoint v = l;
                std::uint32_t used = 0;
                bool disjoint = true;
                for (std::size_t a = 0; a < P.size(); ++a) {
                    if ((kp >> a) & 1u) {
                        ++v[P[a]];
                        used |= 1u << P[a];
                    }
                }
                for (std::size_t a = 0; a < N.size(); ++a) {
                    if ((kn >> a) & 1u) {
                        disjoint = disjoint && !((used >> N[a]) & 1u);
                        --v[N[a]];
                    }
                }
                if (disjoint && w.at(v) > wl) {
                    ok = false;
                    wit = l.str();
                }
            }
        }
    });
    return ok ? pass("M-vertex") : fail("M-vertex", wit);
}

// Every l ∈ R(0, c) with w(l) >= 2 has a good direction.
inline Check good_directions(const ValueGrid &w, const LatticePoint &c)
{
    bool ok = true;
    std::string wit;
    for_each_point(Box(c), [&](const LatticePoint &l) {
        if (ok && w.at(l) >= 2 && !good_direction(w, l)) {
            ok = false;
            wit = l.str();
        }
    });
    return ok ? pass("good-direction") : fail("good-direction", wit);
}

// Number of local minima of weight n equals rank ker U on H^0_{2n}, all n.
inline Check ker_u_minima(const Instance &I)
{
    std::map<int, std::size_t> count;
    for (const auto &m : I.local) {
        ++count[m.weight];
    }
    for (int n = I.LC.n_min(); n <= I.LC.n_max(); ++n) {
        const std::size_t k = I.LC.ker_u_rank(n);
        const std::size_t expected = count.count(n) ? count[n] : 0;
        if (k != expected) {
            return fail("kerU", "n=" + std::to_string(n) + " kerU=" + std::to_string(k) + " minima="
                                    + std::to_string(expected));
        }
    }
    return pass("kerU");
}

inline Check eu_delta(const Instance &I)
{
    const long eu = euler_characteristic(I.LC);
    return eu == I.delta ? pass("eu=delta")
                         : fail("eu=delta", "eu=" + std::to_string(eu) + " delta=" + std::to_string(I.delta));
}

// Root vertex count at levels <= 0, minus one, equals δ when H^{>=1} = 0.
inline Check root_delta(const Instance &I)
{
    for (std::size_t q = 1; q <= I.LC.branches(); ++q) {
        for (int n = I.LC.n_min(); n <= I.LC.n_max(); ++n) {
            if (!I.LC.group(q, n).is_zero()) {
                return pass("root-delta");
            }
        }
    }
    const long d = delete_positive_vertices_delta(graded_root(I.LC), I.LC);
    return d == I.delta ? pass("root-delta") : fail("root-delta", std::to_string(d));
}

// Above-conductor path criterion agrees with p >= c on S ∩ R(0, c + 1).
inline Check above_conductor(const GoodSemigroup &S)
{
    const auto &c = S.conductor();
    bool ok = true;
    std::string wit;
    for_each_point(Box(c + LatticePoint::ones(S.branches())), [&](const LatticePoint &p) {
        if (ok && S.contains(p) && is_above_conductor(S, p) != leq(c, p)) {
            ok = false;
            wit = p.str();
        }
    });
    return ok ? pass("above-conductor") : fail("above-conductor", wit);
}

// Membership read off h agrees with the semigroup on R(0, c).
inline Check roundtrip(const Instance &I)
{
    const auto mem = semigroup_from_hilbert(I.h);
    bool ok = true;
    std::string wit;
    for_each_point(mem.box(), [&](const LatticePoint &p) {
        if (ok && (mem.at(p) != 0) != I.S.contains(p)) {
            ok = false;
            wit = p.str();
        }
    });
    return ok ? pass("roundtrip") : fail("roundtrip", wit);
}

} // namespace props

} // namespace latcoh

#endif
