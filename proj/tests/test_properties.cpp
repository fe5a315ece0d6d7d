#include <catch_amalgamated.hpp>

#include <random>

#include <latcoh/corpus.hpp>
#include <latcoh/properties.hpp>

using namespace latcoh;

namespace
{

// A sample of instances covering the families: small numerical semigroups,
// wedges of them and wedges with smooth factors.
std::vector<GoodSemigroup> sample()
{
    std::vector<GoodSemigroup> out;
    const auto all = numerical_semigroups_up_to_genus(5);
    for (const auto &S : all) {
        out.push_back(S);
    }
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int k = 0; k < 40; ++k) {
        out.push_back(wedge(all[pick(rng)], all[pick(rng)]));
    }
    const auto smooth = from_numerical_generators({1});
    out.push_back(wedge(wedge(smooth, smooth), smooth));
    out.push_back(wedge(wedge(from_numerical_generators({2, 3}), smooth), from_numerical_generators({3, 4})));
    return out;
}

} // namespace

TEST_CASE("grid invariants hold on a sample", "[properties]")
{
    for (const auto &S : sample()) {
        const auto I = build_instance(S, {.higher_u_maps = false});
        INFO("conductor " << I.S.conductor());
        const bool gor = gorenstein_battery(I).verdict();
        for (const auto &c : {props::matroid(I.h), props::increments(I.h, I.w), props::stability(I.w),
                              props::window_inequality(I.w, I.S), props::minima_reflection(I.w, I.generalized), props::minima_shape(I),
                              props::path_formula(I), props::weight_of_multiplicity(I), props::zero_minima(I),
                              props::top_degree_vanishing(I.LC), props::level_euler(I.LC),
                              props::gorenstein_cube_symmetry(I, gor), props::far_minima(I, gor),
                              props::ker_u_minima(I), props::eu_delta(I), props::root_delta(I),
                              props::above_conductor(I.S), props::roundtrip(I), props::good_directions(I.w, I.S.conductor()),
                              props::m_vertex(I.w, I.S.conductor())}) {
            INFO(c.name << ": " << c.witness);
            CHECK(c.ok);
        }
    }
}

TEST_CASE("checks detect broken grids", "[properties]")
{
    const auto I = build_instance(from_numerical_generators({4, 5}));
    // a jump of two violates the increment law
    auto h = I.h;
    h[5] += 2;
    CHECK_FALSE(props::increments(h, weight_grid(h)).ok);

    // a weight bump breaks stability somewhere in two variables
    const auto A = from_numerical_generators({3, 4});
    const auto W = build_instance(wedge(A, A));
    auto w = W.w;
    w[W.w.box().index(LatticePoint{2, 2})] -= 3;
    CHECK_FALSE(props::stability(w).ok);
}

TEST_CASE("eu = delta on wedges, by the decomposition formula", "[properties][oracle]")
{
    // delta of a one-point union is delta' + delta'' + 1.
    const auto all = numerical_semigroups_up_to_genus(4);
    for (std::size_t a = 0; a < all.size(); a += 3) {
        for (std::size_t b = 0; b < all.size(); b += 4) {
            const auto I = build_instance(wedge(all[a], all[b]), {.higher_u_maps = false});
            const long expected = genus(all[a]) + genus(all[b]) + 1;
            CHECK(I.delta == expected);
            CHECK(euler_characteristic(I.LC) == expected);
        }
    }
}
