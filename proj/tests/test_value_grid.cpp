#include <catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include <latcoh/semigroup.hpp>
#include <latcoh/value_grid.hpp>

using namespace latcoh;

namespace
{

// r = 1: h(l) = #{s ∈ S : s < l}.
int hilbert_count(const GoodSemigroup &S, int l)
{
    int k = 0;
    for (int s = 0; s < l; ++s) {
        k += S.contains(LatticePoint{s}) ? 1 : 0;
    }
    return k;
}

// Hilbert function of a one-point union: the two rings share their constants.
int wedge_hilbert(const ValueGrid &ha, const ValueGrid &hb, int a, int b)
{
    if (a == 0) {
        return hb.at(LatticePoint{b});
    }
    if (b == 0) {
        return ha.at(LatticePoint{a});
    }
    return ha.at(LatticePoint{a}) + hb.at(LatticePoint{b}) - 1;
}

} // namespace

TEST_CASE("weights of <4,5>", "[grid]")
{
    const auto S = from_numerical_generators({4, 5});
    const auto h = hilbert_grid(S);
    const auto w = weight_grid(h);
    REQUIRE(w.extent() == LatticePoint{13});
    const std::vector<int> expected{0, 1, 0, -1, -2, -1, 0, -1, -2, -1, 0, 1, 0, 1};
    CHECK(w.values() == expected);
    CHECK(h.at(LatticePoint{12}) == 6);
}

TEST_CASE("r = 1 grids agree with counting formulas", "[grid][oracle]")
{
    for (const auto &S : numerical_semigroups_up_to_genus(6)) {
        const auto h = hilbert_grid(S, S.conductor() + LatticePoint{3});
        const auto w = weight_grid(h);
        for (int l = 0; l <= h.extent()[0]; ++l) {
            CHECK(h.at(LatticePoint{l}) == hilbert_count(S, l));
            CHECK(w.at(LatticePoint{l}) == weight_irreducible_oracle(S, l));
        }
    }
}

TEST_CASE("wedge grids decompose into the factors", "[grid][oracle]")
{
    const std::vector<GoodSemigroup> factors{from_numerical_generators({3, 4}), from_numerical_generators({2, 5}),
                                             from_numerical_generators({4, 6, 13}), from_numerical_generators({1})};
    for (const auto &A : factors) {
        for (const auto &B : factors) {
            const auto W = wedge(A, B);
            const auto h = hilbert_grid(W);
            const auto ha = hilbert_grid(A, LatticePoint{h.extent()[0]});
            const auto hb = hilbert_grid(B, LatticePoint{h.extent()[1]});
            for_each_point(h.box(), [&](const LatticePoint &p) {
                CHECK(h.at(p) == wedge_hilbert(ha, hb, p[0], p[1]));
            });
        }
    }
}

TEST_CASE("membership read back from h", "[grid]")
{
    const auto A = from_numerical_generators({3, 4});
    const auto W = wedge(A, from_numerical_generators({2, 5}));
    const auto member = semigroup_from_hilbert(hilbert_grid(W));
    REQUIRE(member.role() == GridRole::membership);
    for_each_point(member.box(), [&](const LatticePoint &p) { CHECK((member.at(p) != 0) == W.contains(p)); });
}

TEST_CASE("inconsistent data is rejected by the grid fill", "[grid]")
{
    // (1,0) without any element above it in the second coordinate: the two
    // routes to (1,1) disagree.
    const auto bad = GoodSemigroup::from_elements(2, LatticePoint{2, 2}, {{0, 0}, {1, 0}, {2, 2}});
    CHECK_THROWS_AS(hilbert_grid(bad), ConsistencyError);
}

TEST_CASE("restriction to a branch subset", "[grid]")
{
    const auto A = from_numerical_generators({3, 4});
    const auto B = from_numerical_generators({2, 5});
    const auto h = hilbert_grid(wedge(A, B));
    const auto h0 = restrict_branches(h, {0});
    const auto h1 = restrict_branches(h, {1});
    for (int l = 0; l <= h0.extent()[0]; ++l) {
        CHECK(h0.at(LatticePoint{l}) == hilbert_count(A, l));
    }
    for (int l = 0; l <= h1.extent()[0]; ++l) {
        CHECK(h1.at(LatticePoint{l}) == hilbert_count(B, l));
    }
    const auto swapped = restrict_branches(h, {1, 0});
    CHECK(swapped.at(LatticePoint{2, 3}) == h.at(LatticePoint{3, 2}));
}

TEST_CASE("local minima of wedge(<3,4>, <3,4>)", "[grid]")
{
    const auto A = from_numerical_generators({3, 4});
    const auto W = wedge(A, A);
    const auto w = weight_grid(hilbert_grid(W));
    const auto minima = local_minima(w, W);
    std::vector<std::pair<LatticePoint, int>> got;
    for (const auto &m : minima) {
        got.emplace_back(m.point, m.weight);
    }
    const std::vector<std::pair<LatticePoint, int>> expected{
        {{0, 0}, 0}, {{3, 3}, -4}, {{3, 6}, -3}, {{6, 3}, -3}, {{6, 6}, -2}};
    CHECK(got == expected);

    const auto gen = generalized_local_minima(w, W);
    for (const auto &m : minima) {
        CHECK(std::any_of(gen.begin(), gen.end(), [&](const Minimum &g) { return g.point == m.point; }));
    }
    for (const auto &g : gen) {
        CHECK(path_weight_formula_check(w, g.point));
    }
}

TEST_CASE("local minima of <4,5> are 0, 4, 8, 12", "[grid]")
{
    const auto S = from_numerical_generators({4, 5});
    const auto w = weight_grid(hilbert_grid(S));
    const auto minima = local_minima(w, S);
    std::vector<int> pts, ws;
    for (const auto &m : minima) {
        pts.push_back(m.point[0]);
        ws.push_back(m.weight);
    }
    CHECK(pts == std::vector<int>{0, 4, 8, 12});
    CHECK(ws == std::vector<int>{0, -2, -2, 0});
}

TEST_CASE("path formula fails away from generalized minima", "[grid]")
{
    // At l = 1 in <4,5> the weight is 1, while the formula is never positive.
    const auto S = from_numerical_generators({4, 5});
    const auto w = weight_grid(hilbert_grid(S));
    CHECK(path_weight_formula_check(w, LatticePoint{4}));
    CHECK_FALSE(path_weight_formula_check(w, LatticePoint{1}));
}

TEST_CASE("smooth branch grids on the one-point box", "[grid]")
{
    const auto S = from_numerical_generators({1});
    const auto h = hilbert_grid(S);
    CHECK(h.extent() == LatticePoint{1});
    const auto w = weight_grid(h);
    CHECK(w.at(LatticePoint{0}) == 0);
    CHECK(w.at(LatticePoint{1}) == 1);
    const auto minima = local_minima(w, S);
    REQUIRE(minima.size() == 1);
    CHECK(minima[0].point == LatticePoint{0});
}
