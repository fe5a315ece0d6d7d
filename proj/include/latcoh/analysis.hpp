#ifndef LATCOH_ANALYSIS_HPP
#define LATCOH_ANALYSIS_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <latcoh/error.hpp>
#include <latcoh/lattice_cohomology.hpp>
#include <latcoh/semigroup.hpp>
#include <latcoh/value_grid.hpp>

namespace latcoh
{

// Everything computed from one semigroup: grids on R(0, c + 1), cohomology
// of the sublevel sets inside R(0, c), minima and δ.
struct Instance
{
    GoodSemigroup S;
    ValueGrid h, w;
    LatticeCohomology LC;
    MinimaList local, generalized;
    Multiplicity m;
    long delta = 0;

    int weight(const LatticePoint &p) const { return w.at(p); }
};

inline Instance build_instance(GoodSemigroup S, const AssembleOptions &opt = {})
{
    Instance I;
    I.h = hilbert_grid(S);
    I.w = weight_grid(I.h);
    I.LC = assemble(I.w, S.conductor(), opt);
    I.local = local_minima(I.w, S);
    I.generalized = generalized_local_minima(I.w, S);
    I.m = multiplicity_vector(S);
    I.delta = S.conductor().norm() - I.h.at(S.conductor());
    I.S = std::move(S);
    return I;
}

// ---------------------------------------------------------------------------
// Gorenstein
// ---------------------------------------------------------------------------

struct GorensteinVerdict
{
    bool weight_at_conductor = false; // w(c) = 0
    bool symmetric_weight = false;    // w(c - l) = w(l) on R(0, c)
    bool symmetric_semigroup = false; // l ∈ S <=> Δ(c - 1 - l) = ∅ on R(0, c)
    bool lattice = false;             // H^0_red = 0 or rank ker U|H^0_0 >= 2
    bool delta_is_h_of_c = false;     // δ = h(c), implied by the others
    bool refinement = true;           // mult >= 3 and Gorenstein: killed components at 0 are {0}, {c}
    std::optional<LatticePoint> witness;

    bool verdict() const { return weight_at_conductor; }
};

inline GorensteinVerdict gorenstein_battery(const Instance &I)
{
    const auto &S = I.S;
    const auto &c = S.conductor();
    const std::size_t r = S.branches();
    GorensteinVerdict g;
    g.weight_at_conductor = I.w.at(c) == 0;
    g.symmetric_weight = true;
    g.symmetric_semigroup = true;
    for_each_point(Box(c), [&](const LatticePoint &l) {
        if (I.w.at(c - l) != I.w.at(l) && g.symmetric_weight) {
            g.symmetric_weight = false;
            g.witness = l;
        }
        const bool in = S.contains(l);
        const bool empty = !delta_nonempty(S, c - LatticePoint::ones(r) - l);
        if (in != empty && g.symmetric_semigroup) {
            g.symmetric_semigroup = false;
            if (!g.witness) {
                g.witness = l;
            }
        }
    });
    g.lattice = h0_reduced_vanishes(I.LC) || I.LC.ker_u_rank(0) >= 2;
    g.delta_is_h_of_c = I.delta == I.h.at(c);

    const bool all = g.weight_at_conductor && g.symmetric_weight && g.symmetric_semigroup && g.lattice;
    const bool none = !g.weight_at_conductor && !g.symmetric_weight && !g.symmetric_semigroup && !g.lattice;
    if (!all && !none) {
        throw ConsistencyError("Gorenstein conditions disagree for conductor " + c.str());
    }
    if (all != g.delta_is_h_of_c) {
        throw ConsistencyError("Gorenstein verdict disagrees with delta = h(c)");
    }
    if (all && I.m.total() >= 3) {
        std::vector<LatticePoint> killed;
        const auto &lvl = I.LC.level(0);
        for (std::size_t k = 0; k < lvl.components.count(); ++k) {
            if (lvl.killed[k]) {
                killed.push_back(lvl.components.representative[k]);
            }
        }
        std::sort(killed.begin(), killed.end());
        g.refinement = killed == std::vector<LatticePoint>{LatticePoint::zeros(r), c};
    }
    return g;
}

// ---------------------------------------------------------------------------
// Multiplicity
// ---------------------------------------------------------------------------

enum class MultiplicityClass { smooth, two, three_or_more };

inline const char *to_string(MultiplicityClass k)
{
    switch (k) {
        case MultiplicityClass::smooth:
            return "1";
        case MultiplicityClass::two:
            return "2";
        case MultiplicityClass::three_or_more:
            return ">=3";
    }
    return "?";
}

// Read off H^0 alone; no reference to the semigroup.
inline MultiplicityClass classify_from_h0(const LatticeCohomology &LC)
{
    if (h0_reduced_vanishes(LC)) {
        return MultiplicityClass::smooth;
    }
    if (LC.n_min() >= 0) {
        return MultiplicityClass::two;
    }
    return MultiplicityClass::three_or_more;
}

// Classification from H^0, cross-checked against the multiplicity vector.
inline MultiplicityClass classify_multiplicity(const Instance &I)
{
    const auto k = classify_from_h0(I.LC);
    const long total = I.m.smooth ? 1 : I.m.total();
    const auto expected = total == 1   ? MultiplicityClass::smooth
                          : total == 2 ? MultiplicityClass::two
                                       : MultiplicityClass::three_or_more;
    if (k != expected) {
        throw ConsistencyError("H^0 classification " + std::string(to_string(k)) + " contradicts multiplicity "
                               + std::to_string(total));
    }
    return k;
}

struct MultiplicityFormula
{
    int M = 0;        // value read from H^0
    int w_m = 0;      // weight of the multiplicity vector
    bool holds = false;
    long predicted_multiplicity() const { return 2 - M; }
};

inline int m_of_h0(const LatticeCohomology &LC)
{
    if (h0_reduced_vanishes(LC)) {
        return 1;
    }
    if (LC.n_min() >= 0) {
        return 0;
    }
    for (int n = -1; n >= LC.n_min(); --n) {
        if (LC.ker_u_rank(n) != 0) {
            return n;
        }
    }
    throw ConsistencyError("negative levels carry no U-kernel");
}

inline MultiplicityFormula multiplicity_formula(const Instance &I)
{
    MultiplicityFormula f;
    f.M = m_of_h0(I.LC);
    f.w_m = I.w.at(I.m.vector);
    f.holds = f.w_m == f.M;
    return f;
}

// ---------------------------------------------------------------------------
// Nonpositivity
// ---------------------------------------------------------------------------

struct NonpositivityVerdict
{
    bool holds = true;
    std::vector<std::pair<std::size_t, int>> witnesses; // (q, n)
};

inline NonpositivityVerdict verify_nonpositivity(const LatticeCohomology &LC)
{
    NonpositivityVerdict v;
    for (int n = std::max(1, LC.n_min()); n <= LC.n_max(); ++n) {
        for (std::size_t q = 0; q <= LC.branches(); ++q) {
            if (reduced_rank(LC, q, n) != 0 || !LC.level(n).groups[q].torsion.empty()) {
                v.holds = false;
                v.witnesses.emplace_back(q, n);
            }
        }
        if (LC.level(n).components.count() != 1) {
            v.holds = false;
            v.witnesses.emplace_back(0, n);
        }
    }
    // levels 1.. below n_min would be empty sets
    if (LC.n_min() > 1) {
        v.holds = false;
        v.witnesses.emplace_back(0, 1);
    }
    return v;
}

// ---------------------------------------------------------------------------
// Good directions
// ---------------------------------------------------------------------------

namespace detail
{

// Does i satisfy both conditions at l? Grid must cover l + 1.
inline bool is_good_direction(const ValueGrid &w, const LatticePoint &l, std::size_t i)
{
    const std::size_t r = l.size();
    const int wl = w.at(l);
    if (l[i] < 1) {
        return false;
    }
    const auto ei = LatticePoint::unit(r, i);
    if (!(w.at(l - ei) < wl && wl < w.at(l + ei))) {
        return false;
    }
    // Cubes in the hyperplane x_i = l_i with l as M-vertex: J+ ⊆ P, J- ⊆ N,
    // disjoint. Their vertices are l + e_{K+} - e_{K-} for such K±.
    std::vector<std::size_t> P, N;
    for (std::size_t j = 0; j < r; ++j) {
        if (j == i) {
            continue;
        }
        const auto ej = LatticePoint::unit(r, j);
        if (w.at(l + ej) < wl) {
            P.push_back(j);
        }
        if (l[j] >= 1 && w.at(l - ej) < wl) {
            N.push_back(j);
        }
    }
    for (std::uint32_t kp = 0; kp < (1u << P.size()); ++kp) {
        for (std::uint32_t kn = 0; kn < (1u << N.size()); ++kn) {
            LatticePoint v = l;
            bool disjoint = true;
            std::vector<char> used(r, 0);
            for (std::size_t a = 0; a < P.size(); ++a) {
                if ((kp >> a) & 1u) {
                    ++v[P[a]];
                    used[P[a]] = 1;
                }
            }
            for (std::size_t a = 0; a < N.size() && disjoint; ++a) {
                if ((kn >> a) & 1u) {
                    disjoint = !used[N[a]];
                    --v[N[a]];
                }
            }
            if (!disjoint) {
                continue;
            }
            if (!(w.at(v - ei) < w.at(v))) {
                return false;
            }
        }
    }
    return true;
}

} // namespace detail

// First coordinate (ascending) that is a good direction at l, if any.
inline std::optional<std::size_t> good_direction(const ValueGrid &w, const LatticePoint &l)
{
    if (w.at(l) < 2) {
        throw InputError("good directions need w(l) >= 2; w(" + l.str() + ") = " + std::to_string(w.at(l)));
    }
    if (!w.box().contains(l + LatticePoint::ones(l.size()))) {
        throw InputError("weight grid must cover l + 1");
    }
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (detail::is_good_direction(w, l, i)) {
            return i;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Weight-zero minima
// ---------------------------------------------------------------------------

struct ZeroMinimaVerdict
{
    bool symmetric = true;   // generalized minima p with w(p) = 0: w symmetric on R(0, p)
    bool in_semigroup = true; // ... and p >= m implies p ∈ S
    bool applicable_b = false;
    bool only_0_and_c = true; // mult >= 3: local minima of weight 0 are 0 and c
    std::optional<LatticePoint> witness;

    bool holds() const { return symmetric && in_semigroup && only_0_and_c; }
};

inline ZeroMinimaVerdict symmetry_zero_minima_check(const Instance &I)
{
    ZeroMinimaVerdict v;
    for (const auto &g : I.generalized) {
        if (g.weight != 0) {
            continue;
        }
        for_each_point(Box(g.point), [&](const LatticePoint &l) {
            if (I.w.at(g.point - l) != I.w.at(l) && v.symmetric) {
                v.symmetric = false;
                v.witness = g.point;
            }
        });
        if (!I.m.smooth && leq(I.m.vector, g.point) && !I.S.contains(g.point)) {
            v.in_semigroup = false;
            v.witness = g.point;
        }
    }
    v.applicable_b = !I.m.smooth && I.m.total() >= 3;
    if (v.applicable_b) {
        const auto zero = LatticePoint::zeros(I.S.branches());
        for (const auto &p : I.local) {
            if (p.weight == 0 && p.point != zero && p.point != I.S.conductor()) {
                v.only_0_and_c = false;
                v.witness = p.point;
            }
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

struct AnalysisReport
{
    std::size_t branches = 0;
    long multiplicity = 0;
    LatticePoint multiplicity_vector;
    bool smooth = false;
    long delta = 0;
    long eu = 0;
    LatticePoint conductor;
    GorensteinVerdict gorenstein;
    MultiplicityFormula mf;
    NonpositivityVerdict nonpositivity;
    MultiplicityClass classification = MultiplicityClass::smooth;
    ZeroMinimaVerdict zero_minima;
    MinimaList local_minima;
    ModuleSummary summary;
};

inline AnalysisReport analyze(const Instance &I)
{
    AnalysisReport a;
    a.branches = I.S.branches();
    a.smooth = I.m.smooth;
    a.multiplicity = I.m.smooth ? 1 : I.m.total();
    a.multiplicity_vector = I.m.vector;
    a.delta = I.delta;
    a.conductor = I.S.conductor();
    a.summary = reduced(I.LC);
    a.eu = a.summary.eu;
    a.gorenstein = gorenstein_battery(I);
    a.mf = multiplicity_formula(I);
    a.nonpositivity = verify_nonpositivity(I.LC);
    a.classification = classify_multiplicity(I);
    a.zero_minima = symmetry_zero_minima_check(I);
    a.local_minima = I.local;
    return a;
}

} // namespace latcoh

#endif
