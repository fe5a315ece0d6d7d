#ifndef LATCOH_LATTICE_COHOMOLOGY_HPP
#define LATCOH_LATTICE_COHOMOLOGY_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <latcoh/cubical.hpp>
#include <latcoh/error.hpp>
#include <latcoh/value_grid.hpp>

namespace latcoh
{

struct AssembleOptions
{
    // U-matrices on H^q for q >= 1. Ranks and H^0 maps are always computed.
    bool higher_u_maps = true;
};

struct Level
{
    int n = 0;
    std::vector<CohomologyGroup> groups; // q = 0..r
    Components components;
    std::vector<char> killed; // per component: contains no vertex of S_{n-1}
    long cube_euler = 0;      // alternating count of cubes
};

/**
 * The groups H^q_{2n} = H^q(S_n) for n in [n_min, n_max], with S_n cut from
 * R(0, c), and the U-maps H^q_{2n+2} -> H^q_{2n}. Below n_min every group is
 * zero; from n_max on S_n is the whole box.
 */
class LatticeCohomology
{
public:
    std::size_t branches() const noexcept { return r_; }
    const LatticePoint &box() const noexcept { return hi_; }
    int n_min() const noexcept { return n_min_; }
    int n_max() const noexcept { return n_max_; }
    bool has_higher_u_maps() const noexcept { return higher_; }

    const Level &level(int n) const
    {
        if (n < n_min_ || n > n_max_) {
            throw InputError("level " + std::to_string(n) + " outside [" + std::to_string(n_min_) + ", "
                             + std::to_string(n_max_) + "]");
        }
        return levels_[static_cast<std::size_t>(n - n_min_)];
    }

    CohomologyGroup group(std::size_t q, int n) const
    {
        if (n < n_min_ || q > r_) {
            return {};
        }
        return level(std::min(n, n_max_)).groups[q];
    }

    // U : H^q_{2n+2} -> H^q_{2n} in the stored bases (component basis for
    // q = 0). Zero-size matrices outside the computed range.
    const IntMatrix &u_map(std::size_t q, int n) const
    {
        static const IntMatrix empty;
        auto it = u_.find({q, n});
        if (it == u_.end()) {
            if (q > 0 && !higher_) {
                throw NotApplicableError("higher U-maps were not computed");
            }
            return empty;
        }
        return it->second;
    }

    // Rank of ker(U : H^q_{2n} -> H^q_{2n-2}).
    std::size_t ker_u_rank(int n, std::size_t q = 0) const
    {
        if (n < n_min_ || n > n_max_ || q > r_) {
            return 0;
        }
        if (q == 0) {
            std::size_t k = 0;
            for (char c : level(n).killed) {
                k += c ? 1 : 0;
            }
            return k;
        }
        const std::size_t dim = level(n).groups[q].free_rank;
        if (n == n_min_) {
            return dim;
        }
        return dim - matrix_rank(u_map(q, n - 1));
    }

    friend LatticeCohomology assemble(const ValueGrid &w, const LatticePoint &hi, const AssembleOptions &opt);

private:
    std::size_t r_ = 0;
    LatticePoint hi_;
    int n_min_ = 0, n_max_ = 0;
    bool higher_ = false;
    std::vector<Level> levels_;
    std::map<std::pair<std::size_t, int>, IntMatrix> u_;
};

inline LatticeCohomology assemble(const ValueGrid &w, const LatticePoint &hi, const AssembleOptions &opt = {})
{
    if (w.role() != GridRole::weight) {
        throw InputError("assemble expects a weight grid");
    }
    const CubeTable table(w, hi);
    LatticeCohomology LC;
    LC.r_ = hi.size();
    LC.hi_ = hi;
    LC.n_min_ = table.min_weight();
    LC.n_max_ = table.max_weight();
    LC.higher_ = opt.higher_u_maps;
    const std::size_t r = LC.r_;

    std::vector<CubicalComplex> complexes;
    for (int n = LC.n_min_; n <= LC.n_max_; ++n) {
        Level L;
        L.n = n;
        auto K = build_sublevel(table, n);
        L.groups = cohomology(K);
        L.components = connected_components(K);
        L.cube_euler = K.euler_characteristic();
        if (L.groups[0].free_rank != L.components.count()) {
            throw ConsistencyError("H^0 rank differs from the component count at level " + std::to_string(n));
        }
        L.killed.assign(L.components.count(), 1);
        if (!LC.levels_.empty()) {
            const auto &below = LC.levels_.back().components;
            auto M = component_inclusion(L.components, below);
            LC.u_[{0, n - 1}] = M;
            for (const auto &row : M) {
                for (std::size_t k = 0; k < row.size(); ++k) {
                    if (row[k] != 0) {
                        L.killed[k] = 0;
                    }
                }
            }
        }
        LC.levels_.push_back(std::move(L));
        if (opt.higher_u_maps) {
            complexes.push_back(std::move(K));
        }
    }

    if (opt.higher_u_maps) {
        for (std::size_t q = 1; q <= r; ++q) {
            std::vector<CohomologyBasis> bases(complexes.size());
            for (std::size_t k = 0; k < complexes.size(); ++k) {
                if (LC.levels_[k].groups[q].free_rank > 0) {
                    bases[k] = cohomology_basis(complexes[k], q);
                }
            }
            for (std::size_t k = 0; k + 1 < complexes.size(); ++k) {
                const int n = LC.n_min_ + static_cast<int>(k);
                const std::size_t big = LC.levels_[k + 1].groups[q].free_rank;
                const std::size_t small = LC.levels_[k].groups[q].free_rank;
                if (big == 0 || small == 0) {
                    LC.u_[{q, n}] = IntMatrix(small, std::vector<BigInt>(big));
                } else {
                    LC.u_[{q, n}] = induced_map(bases[k + 1], bases[k]);
                }
            }
        }
    }
    return LC;
}

// ---------------------------------------------------------------------------
// Summaries
// ---------------------------------------------------------------------------

struct ModuleSummary
{
    int n_min = 0;
    long eu = 0;
    std::map<std::size_t, std::map<int, std::size_t>> reduced; // q -> n -> rank (nonzero only)
    std::map<std::size_t, std::map<int, std::vector<BigInt>>> torsion; // q -> n -> factors (nonempty only)
    std::map<int, std::size_t> ker_u;                          // n -> rank on H^0 (nonzero only)

    std::size_t total_reduced(std::size_t q) const
    {
        std::size_t t = 0;
        auto it = reduced.find(q);
        if (it != reduced.end()) {
            for (const auto &[n, k] : it->second) {
                t += k;
            }
        }
        return t;
    }
};

inline std::size_t reduced_rank(const LatticeCohomology &LC, std::size_t q, int n)
{
    const auto g = LC.group(q, n);
    if (q == 0) {
        return g.free_rank == 0 ? 0 : g.free_rank - 1;
    }
    return g.free_rank;
}

inline long euler_characteristic(const LatticeCohomology &LC)
{
    long eu = -LC.n_min();
    for (std::size_t q = 0; q <= LC.branches(); ++q) {
        long total = 0;
        for (int n = LC.n_min(); n <= LC.n_max(); ++n) {
            total += static_cast<long>(reduced_rank(LC, q, n));
        }
        eu += (q % 2 == 0 ? 1 : -1) * total;
    }
    return eu;
}

inline ModuleSummary reduced(const LatticeCohomology &LC)
{
    ModuleSummary s;
    s.n_min = LC.n_min();
    s.eu = euler_characteristic(LC);
    for (int n = LC.n_min(); n <= LC.n_max(); ++n) {
        for (std::size_t q = 0; q <= LC.branches(); ++q) {
            if (auto k = reduced_rank(LC, q, n)) {
                s.reduced[q][n] = k;
            }
            const auto &t = LC.level(n).groups[q].torsion;
            if (!t.empty()) {
                s.torsion[q][n] = t;
            }
        }
        if (auto k = LC.ker_u_rank(n)) {
            s.ker_u[n] = k;
        }
    }
    return s;
}

inline std::size_t ker_U_rank(const LatticeCohomology &LC, int n) { return LC.ker_u_rank(n); }

// H^0_red = 0.
inline bool h0_reduced_vanishes(const LatticeCohomology &LC)
{
    for (int n = LC.n_min(); n <= LC.n_max(); ++n) {
        if (reduced_rank(LC, 0, n) != 0) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Graded root
// ---------------------------------------------------------------------------

struct GradedRoot
{
    struct Vertex
    {
        int level = 0;
        LatticePoint label; // lexicographically minimal lattice point of the component
    };
    int n_min = 0, n_max = 0; // an infinite stem continues above the vertex at n_max
    std::vector<Vertex> vertices;                           // by level, then label
    std::vector<std::pair<std::size_t, std::size_t>> edges; // (vertex at n, vertex at n + 1)

    std::size_t count_at(int n) const
    {
        std::size_t k = 0;
        for (const auto &v : vertices) {
            k += v.level == n ? 1 : 0;
        }
        return k;
    }

    // Vertices with no neighbor below.
    std::vector<std::size_t> leaves() const
    {
        std::vector<char> has_child(vertices.size(), 0);
        for (const auto &e : edges) {
            has_child[e.second] = 1;
        }
        std::vector<std::size_t> out;
        for (std::size_t v = 0; v < vertices.size(); ++v) {
            if (!has_child[v]) {
                out.push_back(v);
            }
        }
        return out;
    }
};

inline GradedRoot graded_root(const LatticeCohomology &LC)
{
    GradedRoot G;
    G.n_min = LC.n_min();
    G.n_max = LC.n_max();
    std::vector<std::size_t> offset;
    for (int n = LC.n_min(); n <= LC.n_max(); ++n) {
        offset.push_back(G.vertices.size());
        for (const auto &rep : LC.level(n).components.representative) {
            G.vertices.push_back({n, rep});
        }
    }
    for (int n = LC.n_min(); n < LC.n_max(); ++n) {
        const auto &M = LC.u_map(0, n);
        const std::size_t lo = offset[static_cast<std::size_t>(n - LC.n_min())];
        const std::size_t up = offset[static_cast<std::size_t>(n + 1 - LC.n_min())];
        for (std::size_t a = 0; a < M.size(); ++a) {
            for (std::size_t k = 0; k < M[a].size(); ++k) {
                if (M[a][k] != 0) {
                    G.edges.emplace_back(lo + a, up + k);
                }
            }
        }
    }
    return G;
}

inline GradedRoot graded_root(const ValueGrid &w, const LatticePoint &hi)
{
    return graded_root(assemble(w, hi, {.higher_u_maps = false}));
}

/**
 * Number of root vertices at levels <= 0, minus one. The stem contributes a
 * vertex for each level in (n_max, 0]. Only meaningful when H^{>=1} = 0.
 */
inline long delete_positive_vertices_delta(const GradedRoot &G, const LatticeCohomology &LC)
{
    for (std::size_t q = 1; q <= LC.branches(); ++q) {
        for (int n = LC.n_min(); n <= LC.n_max(); ++n) {
            if (!LC.group(q, n).is_zero()) {
                throw NotApplicableError("H^" + std::to_string(q) + " is nonzero at level " + std::to_string(n));
            }
        }
    }
    long count = 0;
    for (const auto &v : G.vertices) {
        count += v.level <= 0 ? 1 : 0;
    }
    if (G.n_max < 0) {
        count += -G.n_max;
    }
    return count - 1;
}

} // namespace latcoh

#endif
