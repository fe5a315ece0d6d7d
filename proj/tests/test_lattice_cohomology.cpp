#include <catch_amalgamated.hpp>

#include <map>

#include <latcoh/lattice_cohomology.hpp>
#include <latcoh/semigroup.hpp>

using namespace latcoh;

namespace
{

LatticeCohomology lc_of(const GoodSemigroup &S, bool higher = true)
{
    return assemble(weight_grid(hilbert_grid(S)), S.conductor(), {.higher_u_maps = higher});
}

// r = 1: the sublevel set of w on [0, c] is a union of intervals; count them.
std::map<int, std::size_t> interval_counts(const GoodSemigroup &S)
{
    const int c = S.conductor()[0];
    std::vector<int> w(static_cast<std::size_t>(c) + 1);
    for (int l = 0; l <= c; ++l) {
        w[static_cast<std::size_t>(l)] = weight_irreducible_oracle(S, l);
    }
    const int lo = *std::min_element(w.begin(), w.end()), hi = *std::max_element(w.begin(), w.end());
    std::map<int, std::size_t> out;
    for (int n = lo; n <= hi; ++n) {
        std::size_t runs = 0;
        for (std::size_t l = 0; l < w.size(); ++l) {
            if (w[l] <= n && (l == 0 || w[l - 1] > n)) {
                ++runs;
            }
        }
        out[n] = runs;
    }
    return out;
}

} // namespace

TEST_CASE("<4,5>", "[lc]")
{
    const auto S = from_numerical_generators({4, 5});
    const auto LC = lc_of(S);
    const auto sum = reduced(LC);
    CHECK(sum.eu == 6);
    CHECK(sum.n_min == -2);
    CHECK(sum.reduced.at(0) == std::map<int, std::size_t>{{-2, 1}, {-1, 1}, {0, 2}});
    CHECK(sum.reduced.count(1) == 0);
    CHECK(sum.torsion.empty());
    CHECK(sum.ker_u == std::map<int, std::size_t>{{-2, 2}, {0, 2}});
    const auto G = graded_root(LC);
    CHECK(G.vertices.size() == 8);
    CHECK(G.leaves().size() == 4);
    CHECK(delete_positive_vertices_delta(G, LC) == 6);
}

TEST_CASE("r = 1 ranks agree with interval counts", "[lc][oracle]")
{
    for (const auto &S : numerical_semigroups_up_to_genus(6)) {
        const auto LC = lc_of(S, false);
        const auto expected = interval_counts(S);
        for (const auto &[n, runs] : expected) {
            CHECK(LC.group(0, n).free_rank == runs);
            CHECK(LC.group(1, n).is_zero());
        }
        CHECK(euler_characteristic(LC) == genus(S));
        CHECK(h0_reduced_vanishes(LC) == S.is_smooth());
    }
}

TEST_CASE("U-maps on H^1 compose with the direct restriction", "[lc]")
{
    const auto A = from_numerical_generators({3, 4});
    const auto S = wedge(A, A);
    const auto w = weight_grid(hilbert_grid(S));
    const auto LC = assemble(w, S.conductor());
    CHECK(euler_characteristic(LC) == 7);
    int checked = 0;
    for (int n = LC.n_min(); n + 2 <= LC.n_max(); ++n) {
        for (std::size_t q = 0; q <= 1; ++q) {
            const auto &U0 = LC.u_map(q, n), &U1 = LC.u_map(q, n + 1);
            const std::size_t mid = LC.group(q, n + 1).free_rank;
            if (U0.empty() || mid == 0 || LC.group(q, n + 2).free_rank == 0) {
                continue;
            }
            const auto direct = [&] {
                const CubeTable table(w, S.conductor());
                const auto big = build_sublevel(table, n + 2), small = build_sublevel(table, n);
                if (q == 0) {
                    return component_inclusion(connected_components(big), connected_components(small));
                }
                return induced_map(cohomology_basis(big, q), cohomology_basis(small, q));
            }();
            CHECK(multiply(U0, U1, mid) == direct);
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("higher U-maps are refused when not computed", "[lc]")
{
    const auto A = from_numerical_generators({3, 4});
    const auto LC = lc_of(wedge(A, A), false);
    CHECK_THROWS_AS(LC.u_map(1, LC.n_min()), NotApplicableError);
    CHECK_NOTHROW(LC.u_map(0, LC.n_min()));
}

TEST_CASE("levels outside the computed range", "[lc]")
{
    const auto LC = lc_of(from_numerical_generators({2, 3}));
    CHECK(LC.group(0, LC.n_min() - 1).is_zero());
    CHECK(LC.group(0, LC.n_max() + 10).free_rank == 1);
    CHECK_THROWS_AS(LC.level(LC.n_max() + 1), InputError);
    CHECK(LC.ker_u_rank(LC.n_max() + 3) == 0);
}

TEST_CASE("smooth branch has trivial reduced cohomology", "[lc]")
{
    const auto LC = lc_of(from_numerical_generators({1}));
    const auto sum = reduced(LC);
    CHECK(sum.eu == 0);
    CHECK(sum.reduced.empty());
    const auto G = graded_root(LC);
    CHECK(G.leaves().size() == 1);
}
