#ifndef LATCOH_CUBICAL_HPP
#define LATCOH_CUBICAL_HPP

#include <algorithm>
#include <bit>
#include <climits>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <latcoh/error.hpp>
#include <latcoh/lattice.hpp>
#include <latcoh/smith.hpp>
#include <latcoh/value_grid.hpp>

namespace latcoh
{

// The cube (l, I): all points l + sum_{i in J} e_i with J ⊆ I. I is a bit mask.
struct Cube
{
    LatticePoint base;
    std::uint32_t dirs = 0;

    int dim() const { return std::popcount(dirs); }
    bool has(std::size_t i) const { return (dirs >> i) & 1u; }
    friend bool operator==(const Cube &, const Cube &) = default;
    friend auto operator<=>(const Cube &, const Cube &) = default;
};

// Max of w over the 2^q vertices of the cube.
inline int cube_weight(const ValueGrid &w, const Cube &cube)
{
    const std::size_t r = w.rank();
    if (cube.base.size() != r) {
        throw InputError("cube has wrong dimension");
    }
    LatticePoint top = cube.base;
    for (std::size_t i = 0; i < r; ++i) {
        top[i] += cube.has(i) ? 1 : 0;
    }
    if (!w.box().contains(cube.base) || !w.box().contains(top)) {
        throw InputError("cube at " + cube.base.str() + " leaves the weight grid");
    }
    const std::size_t base = w.box().index(cube.base);
    int best = INT_MIN;
    for (std::uint32_t sub = cube.dirs;; sub = (sub - 1) & cube.dirs) {
        std::size_t idx = base;
        for (std::size_t i = 0; i < r; ++i) {
            if ((sub >> i) & 1u) {
                idx += w.box().stride(i);
            }
        }
        best = std::max(best, w[idx]);
        if (sub == 0) {
            break;
        }
    }
    return best;
}

/**
 * Weights of every cube in R(0, hi), computed once so the sublevel
 * complexes of all levels can be cut out by a threshold. Cube ids are
 * vertex_index * 2^r + dirs, with vertex_index the Box index in R(0, hi);
 * id order is therefore lexicographic in the base point.
 */
class CubeTable
{
public:
    CubeTable(const ValueGrid &w, const LatticePoint &hi) : ambient_(hi), r_(hi.size())
    {
        if (r_ != w.rank() || !leq(hi, w.extent())) {
            throw InputError("cube table box " + hi.str() + " is not inside the weight grid");
        }
        if (r_ > 20) {
            throw InputError("too many branches for the cube table");
        }
        const std::size_t masks = std::size_t{1} << r_;
        weight_.assign(ambient_.volume() * masks, INT_MAX);
        vw_.resize(ambient_.volume());
        for_each_point(ambient_, [&](const LatticePoint &p) {
            vw_[ambient_.index(p)] = w.at(p);
        });
        for (std::size_t v = 0; v < ambient_.volume(); ++v) {
            weight_[v * masks] = vw_[v];
        }
        for (std::uint32_t mask = 1; mask < masks; ++mask) {
            for (std::size_t v = 0; v < ambient_.volume(); ++v) {
                // (v, I) = max of (v, I \ i) and (v + e_i, I \ i) for the top bit i
                const std::size_t i = static_cast<std::size_t>(31 - std::countl_zero(mask));
                if (ambient_.coord(v, i) >= ambient_.hi()[i]) {
                    continue;
                }
                const std::uint32_t rest = mask & ~(1u << i);
                const int a = weight_[v * masks + rest];
                const int b = weight_[(v + ambient_.stride(i)) * masks + rest];
                if (a != INT_MAX && b != INT_MAX) {
                    weight_[v * masks + mask] = std::max(a, b);
                }
            }
        }
        const auto [lo_it, hi_it] = std::minmax_element(vw_.begin(), vw_.end());
        min_ = *lo_it;
        max_ = *hi_it;
    }

    const Box &ambient() const noexcept { return ambient_; }
    std::size_t branches() const noexcept { return r_; }
    std::size_t size() const noexcept { return weight_.size(); }
    // INT_MAX for ids that leave the box.
    int weight(std::uint64_t id) const { return weight_[id]; }
    int vertex_weight(std::size_t v) const { return vw_[v]; }
    int min_weight() const noexcept { return min_; }
    int max_weight() const noexcept { return max_; }

private:
    Box ambient_;
    std::size_t r_;
    std::vector<int> weight_, vw_;
    int min_ = 0, max_ = 0;
};

inline std::uint64_t cube_id(std::size_t vertex, std::uint32_t dirs, std::size_t r)
{
    return (static_cast<std::uint64_t>(vertex) << r) | dirs;
}

// A face-closed set of cubes inside an ambient box, grouped by dimension
// and sorted by id.
class CubicalComplex
{
public:
    CubicalComplex() = default;
    CubicalComplex(Box ambient, std::vector<std::vector<std::uint64_t>> by_dim)
        : ambient_(std::move(ambient)), cubes_(std::move(by_dim))
    {
        cubes_.resize(ambient_.rank() + 1);
        for (auto &v : cubes_) {
            std::sort(v.begin(), v.end());
        }
    }

    const Box &ambient() const noexcept { return ambient_; }
    std::size_t branches() const noexcept { return ambient_.rank(); }
    std::size_t count(std::size_t q) const { return q < cubes_.size() ? cubes_[q].size() : 0; }
    const std::vector<std::uint64_t> &cubes(std::size_t q) const { return cubes_.at(q); }
    bool empty() const { return cubes_.empty() || cubes_[0].empty(); }

    // Position of the cube among the q-cubes, or -1.
    std::ptrdiff_t position(std::size_t q, std::uint64_t id) const
    {
        const auto &v = cubes_[q];
        auto it = std::lower_bound(v.begin(), v.end(), id);
        return (it != v.end() && *it == id) ? it - v.begin() : -1;
    }
    bool contains(std::uint64_t id) const
    {
        const std::size_t q = static_cast<std::size_t>(std::popcount(id & mask()));
        return q < cubes_.size() && position(q, id) >= 0;
    }

    Cube cube(std::uint64_t id) const
    {
        return {ambient_.point(static_cast<std::size_t>(id >> branches())),
                static_cast<std::uint32_t>(id & mask())};
    }
    std::uint64_t id(const Cube &c) const { return cube_id(ambient_.index(c.base), c.dirs, branches()); }

    // Total number of cubes, by dimension sum with signs.
    long euler_characteristic() const
    {
        long e = 0;
        for (std::size_t q = 0; q < cubes_.size(); ++q) {
            e += (q % 2 == 0 ? 1 : -1) * static_cast<long>(cubes_[q].size());
        }
        return e;
    }

    friend bool operator==(const CubicalComplex &a, const CubicalComplex &b)
    {
        return a.ambient_ == b.ambient_ && a.cubes_ == b.cubes_;
    }

private:
    std::uint64_t mask() const { return (std::uint64_t{1} << branches()) - 1; }

    Box ambient_;
    std::vector<std::vector<std::uint64_t>> cubes_;
};

// All cubes of R(0, hi) with weight <= n.
inline CubicalComplex build_sublevel(const CubeTable &table, int n)
{
    const std::size_t r = table.branches();
    std::vector<std::vector<std::uint64_t>> by_dim(r + 1);
    for (std::uint64_t id = 0; id < table.size(); ++id) {
        if (table.weight(id) <= n) {
            by_dim[static_cast<std::size_t>(std::popcount(id & ((std::uint64_t{1} << r) - 1)))].push_back(id);
        }
    }
    return CubicalComplex(table.ambient(), std::move(by_dim));
}

// Sublevel complex S_n ∩ R(0, hi); hi defaults to the whole grid.
inline CubicalComplex build_sublevel(const ValueGrid &w, int n, const LatticePoint &hi)
{
    return build_sublevel(CubeTable(w, hi), n);
}
inline CubicalComplex build_sublevel(const ValueGrid &w, int n) { return build_sublevel(w, n, w.extent()); }

// ---------------------------------------------------------------------------
// Components
// ---------------------------------------------------------------------------

struct Components
{
    std::vector<std::uint64_t> vertices; // vertex 0-cube ids, sorted
    std::vector<std::size_t> label;      // component of each vertex
    std::vector<LatticePoint> representative; // lexicographically minimal vertex per component

    std::size_t count() const { return representative.size(); }
};

inline Components connected_components(const CubicalComplex &K)
{
    Components out;
    if (K.empty()) {
        return out;
    }
    const std::size_t r = K.branches();
    out.vertices = K.cubes(0);
    const std::size_t V = out.vertices.size();
    std::vector<std::size_t> parent(V);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::uint64_t e : K.cubes(1)) {
        const std::size_t v = static_cast<std::size_t>(e >> r);
        const std::size_t i = static_cast<std::size_t>(std::countr_zero(e & ((std::uint64_t{1} << r) - 1)));
        const auto a = K.position(0, cube_id(v, 0, r));
        const auto b = K.position(0, cube_id(v + K.ambient().stride(i), 0, r));
        std::size_t ra = find(static_cast<std::size_t>(a)), rb = find(static_cast<std::size_t>(b));
        if (ra != rb) {
            // keep the smaller position as root so roots are lexicographic minima
            if (rb < ra) {
                std::swap(ra, rb);
            }
            parent[rb] = ra;
        }
    }
    out.label.assign(V, 0);
    std::vector<std::size_t> comp_of_root(V, static_cast<std::size_t>(-1));
    for (std::size_t k = 0; k < V; ++k) {
        const std::size_t root = find(k);
        if (comp_of_root[root] == static_cast<std::size_t>(-1)) {
            comp_of_root[root] = out.representative.size();
            out.representative.push_back(K.ambient().point(static_cast<std::size_t>(out.vertices[k] >> r)));
        }
        out.label[k] = comp_of_root[root];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cohomology
// ---------------------------------------------------------------------------

struct CohomologyGroup
{
    std::size_t free_rank = 0;
    std::vector<BigInt> torsion; // invariant factors > 1, divisibility chain

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    friend bool operator==(const CohomologyGroup &, const CohomologyGroup &) = default;
};

/**
 * Coboundary d_q : C^q -> C^{q+1} as a sparse matrix, rows indexed by the
 * (q+1)-cubes and columns by the q-cubes. The boundary of (l, I) is
 *   sum_p (-1)^p [ (l + e_{i_p}, I \ i_p) - (l, I \ i_p) ],
 * with i_0 < i_1 < ... the elements of I.
 */
inline SparseMatrix<std::int64_t> coboundary(const CubicalComplex &K, std::size_t q)
{
    const std::size_t r = K.branches();
    SparseMatrix<std::int64_t> D(K.count(q + 1), K.count(q));
    if (q + 1 > r) {
        return D;
    }
    const auto &top = K.cubes(q + 1);
    for (std::size_t row = 0; row < top.size(); ++row) {
        const std::uint64_t id = top[row];
        const std::size_t v = static_cast<std::size_t>(id >> r);
        const std::uint32_t I = static_cast<std::uint32_t>(id & ((std::uint64_t{1} << r) - 1));
        auto &out = D.data[row];
        int p = 0;
        for (std::size_t i = 0; i < r; ++i) {
            if (!((I >> i) & 1u)) {
                continue;
            }
            const std::int64_t sign = (p % 2 == 0) ? 1 : -1;
            const std::uint32_t rest = I & ~(1u << i);
            const auto hi = K.position(q, cube_id(v + K.ambient().stride(i), rest, r));
            const auto lo = K.position(q, cube_id(v, rest, r));
            if (hi < 0 || lo < 0) {
                throw ConsistencyError("cubical complex is not closed under faces");
            }
            out.emplace_back(static_cast<std::size_t>(hi), sign);
            out.emplace_back(static_cast<std::size_t>(lo), -sign);
            ++p;
        }
        std::sort(out.begin(), out.end());
    }
    return D;
}

// H^q(K, Z) for q = 0..r: rank H^q = m_q - rank d_q - rank d_{q-1}; the
// torsion of H^q is the torsion of coker d_{q-1}.
inline std::vector<CohomologyGroup> cohomology(const CubicalComplex &K)
{
    const std::size_t r = K.branches();
    std::vector<SmithSummary> snf(r + 1);
    for (std::size_t q = 0; q < r; ++q) {
        snf[q] = smith_summary(coboundary(K, q));
    }
    std::vector<CohomologyGroup> H(r + 1);
    for (std::size_t q = 0; q <= r; ++q) {
        const std::size_t out_rank = snf[q].rank;
        const std::size_t in_rank = q == 0 ? 0 : snf[q - 1].rank;
        H[q].free_rank = K.count(q) - out_rank - in_rank;
        if (q > 0) {
            H[q].torsion = snf[q - 1].torsion;
        }
    }
    return H;
}

/**
 * A basis of the free part of H^q(K) together with the coordinate map.
 *
 * With U1 d_{q-1} V1 = diag and NP1 its non-pivot rows, the vectors
 * b_j = column j of U1^{-1} (j in NP1) span a complement of the saturated
 * image. Cocycles modulo coboundaries and torsion are the kernel of
 * z -> d_q(sum z_j b_j); a second reduction (of the transposed restricted
 * map, tracking U2) gives its basis as the non-pivot rows of U2.
 */
struct CohomologyBasis
{
    std::size_t q = 0;
    std::vector<std::uint64_t> cubes;       // the q-cubes of K
    std::vector<SparseRow<BigInt>> generators; // cocycles over `cubes`
    std::vector<SparseRow<BigInt>> u1_rows;    // rows NP1 of U1
    std::vector<SparseRow<BigInt>> dual;       // rows NP2 of (U2^{-1})^T, over NP1 positions

    std::size_t rank() const { return generators.size(); }

    // Coordinates of the class of a cocycle x (dense over `cubes`).
    std::vector<BigInt> coordinates(const std::vector<BigInt> &x) const
    {
        std::vector<BigInt> z(u1_rows.size());
        for (std::size_t b = 0; b < u1_rows.size(); ++b) {
            z[b] = dot(u1_rows[b], x);
        }
        std::vector<BigInt> out(dual.size());
        for (std::size_t a = 0; a < dual.size(); ++a) {
            out[a] = dot(dual[a], z);
        }
        return out;
    }
};

namespace detail
{

template <typename Int>
SparseRow<BigInt> to_big(const SparseRow<Int> &row)
{
    SparseRow<BigInt> out;
    out.reserve(row.size());
    for (const auto &[j, v] : row) {
        out.emplace_back(j, BigInt(v));
    }
    return out;
}

template <typename Int>
CohomologyBasis cohomology_basis_impl(const CubicalComplex &K, std::size_t q)
{
    CohomologyBasis B;
    B.q = q;
    B.cubes = K.cubes(q);
    const std::size_t m = K.count(q);

    // Stage 1: d_{q-1}, rows = q-cubes.
    SparseMatrix<Int> D1 = q == 0 ? SparseMatrix<Int>(m, 0) : coboundary(K, q - 1).template convert<Int>();
    auto s1 = smith_reduce(std::move(D1), true);
    const auto np1 = s1.non_pivot_rows();

    // Stage 2: rows d_q(b_j) for j in NP1, via the columns of d_q.
    const auto Dq = coboundary(K, q);
    std::vector<SparseRow<std::int64_t>> cols(m);
    for (std::size_t row = 0; row < Dq.rows; ++row) {
        for (const auto &[t, v] : Dq.data[row]) {
            cols[t].emplace_back(row, v);
        }
    }
    SparseMatrix<Int> Mt(np1.size(), Dq.rows);
    for (std::size_t b = 0; b < np1.size(); ++b) {
        SparseRow<Int> acc;
        for (const auto &[t, coef] : (*s1.UinvT)[np1[b]]) {
            SparseRow<Int> col;
            col.reserve(cols[t].size());
            for (const auto &[row, v] : cols[t]) {
                col.emplace_back(row, Int(v));
            }
            axpy(acc, arith::neg(coef), col);
        }
        Mt.data[b] = std::move(acc);
    }
    auto s2 = smith_reduce(std::move(Mt), true);
    const auto np2 = s2.non_pivot_rows();

    for (std::size_t a : np2) {
        // x = sum_b U2[a][b] * b_{NP1[b]}
        SparseRow<Int> x;
        for (const auto &[b, coef] : (*s2.U)[a]) {
            axpy(x, arith::neg(coef), (*s1.UinvT)[np1[b]]);
        }
        B.generators.push_back(to_big(x));
        B.dual.push_back(to_big((*s2.UinvT)[a]));
    }
    for (std::size_t j : np1) {
        B.u1_rows.push_back(to_big((*s1.U)[j]));
    }
    return B;
}

} // namespace detail

inline CohomologyBasis cohomology_basis(const CubicalComplex &K, std::size_t q)
{
    if (q > K.branches()) {
        CohomologyBasis B;
        B.q = q;
        return B;
    }
    try {
        return detail::cohomology_basis_impl<std::int64_t>(K, q);
    } catch (const OverflowError &) {
        return detail::cohomology_basis_impl<BigInt>(K, q);
    }
}

using IntMatrix = std::vector<std::vector<BigInt>>; // row-major

/**
 * Matrix of the restriction H^q(big) -> H^q(small) on free parts, for
 * small ⊆ big: column k holds the coordinates in `small_basis` of the
 * restriction of the k-th generator of `big_basis`.
 */
inline IntMatrix induced_map(const CohomologyBasis &big_basis, const CohomologyBasis &small_basis)
{
    IntMatrix M(small_basis.rank(), std::vector<BigInt>(big_basis.rank()));
    const auto &small_cubes = small_basis.cubes;
    for (std::size_t k = 0; k < big_basis.rank(); ++k) {
        std::vector<BigInt> x(small_cubes.size());
        for (const auto &[pos, v] : big_basis.generators[k]) {
            const std::uint64_t id = big_basis.cubes[pos];
            auto it = std::lower_bound(small_cubes.begin(), small_cubes.end(), id);
            if (it != small_cubes.end() && *it == id) {
                x[static_cast<std::size_t>(it - small_cubes.begin())] = v;
            }
        }
        const auto c = small_basis.coordinates(x);
        for (std::size_t a = 0; a < c.size(); ++a) {
            M[a][k] = c[a];
        }
    }
    return M;
}

// H^0 restriction in the component basis: entry (a, k) = 1 when component a
// of `small` lies in component k of `big`.
inline IntMatrix component_inclusion(const Components &big, const Components &small)
{
    IntMatrix M(small.count(), std::vector<BigInt>(big.count()));
    std::vector<char> seen(small.count(), 0);
    for (std::size_t k = 0; k < small.vertices.size(); ++k) {
        const std::size_t a = small.label[k];
        if (seen[a]) {
            continue;
        }
        seen[a] = 1;
        auto it = std::lower_bound(big.vertices.begin(), big.vertices.end(), small.vertices[k]);
        if (it == big.vertices.end() || *it != small.vertices[k]) {
            throw ConsistencyError("sublevel complexes are not nested");
        }
        M[a][big.label[static_cast<std::size_t>(it - big.vertices.begin())]] = 1;
    }
    return M;
}

// Map H^q(S_{n+1}) -> H^q(S_n) for the weight grid w (complexes in R(0, hi)).
inline IntMatrix induced_map(const ValueGrid &w, int n, std::size_t q, const LatticePoint &hi)
{
    const CubeTable table(w, hi);
    const auto big = build_sublevel(table, n + 1);
    const auto small = build_sublevel(table, n);
    if (q == 0) {
        return component_inclusion(connected_components(big), connected_components(small));
    }
    return induced_map(cohomology_basis(big, q), cohomology_basis(small, q));
}

// Rank over Q of an integer matrix.
inline std::size_t matrix_rank(const IntMatrix &M)
{
    if (M.empty() || M[0].empty()) {
        return 0;
    }
    SparseMatrix<BigInt> A(M.size(), M[0].size());
    for (std::size_t i = 0; i < M.size(); ++i) {
        for (std::size_t j = 0; j < M[i].size(); ++j) {
            if (M[i][j] != 0) {
                A.data[i].emplace_back(j, M[i][j]);
            }
        }
    }
    return smith_reduce(std::move(A), false).rank();
}

inline IntMatrix multiply(const IntMatrix &A, const IntMatrix &B, std::size_t a_cols)
{
    const std::size_t n = A.size(), k = a_cols, m = B.empty() ? 0 : B[0].size();
    IntMatrix C(n, std::vector<BigInt>(m));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t t = 0; t < k; ++t) {
            if (A[i][t] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < m; ++j) {
                C[i][j] += A[i][t] * B[t][j];
            }
        }
    }
    return C;
}

} // namespace latcoh

#endif
