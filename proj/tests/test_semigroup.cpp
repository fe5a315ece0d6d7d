#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include <latcoh/semigroup.hpp>

using namespace latcoh;

namespace
{

// Independent count: numerical semigroups of genus g are the g-subsets G of
// [1, 2g - 1] whose complement in Z_{>=0} is closed under addition.
long count_by_gap_sets(int g)
{
    if (g == 0) {
        return 1;
    }
    const int top = 2 * g - 1;
    long count = 0;
    std::vector<int> pick(static_cast<std::size_t>(top), 0);
    std::fill(pick.begin(), pick.begin() + g, 1);
    std::sort(pick.begin(), pick.end());
    do {
        std::vector<char> in(static_cast<std::size_t>(2 * top + 2), 1);
        for (int x = 1; x <= top; ++x) {
            in[static_cast<std::size_t>(x)] = pick[static_cast<std::size_t>(x - 1)] ? 0 : 1;
        }
        bool closed = true;
        for (int a = 1; a <= top && closed; ++a) {
            for (int b = a; a + b <= top && closed; ++b) {
                if (in[static_cast<std::size_t>(a)] && in[static_cast<std::size_t>(b)]
                    && !in[static_cast<std::size_t>(a + b)]) {
                    closed = false;
                }
            }
        }
        count += closed ? 1 : 0;
    } while (std::next_permutation(pick.begin(), pick.end()));
    return count;
}

// Δ̄_i / Δ_i by box search over R(0, max(l + 1, c)).
bool delta_oracle(const GoodSemigroup &S, const LatticePoint &l, std::size_t i, bool strict)
{
    const std::size_t r = S.branches();
    const LatticePoint cap = max(l + LatticePoint::ones(r), S.conductor());
    if (l[i] < 0) {
        return false;
    }
    bool found = false;
    for_each_point(Box(max(cap, LatticePoint::zeros(r))), [&](const LatticePoint &s) {
        if (found || s[i] != l[i] || !S.contains(s)) {
            return;
        }
        for (std::size_t j = 0; j < r; ++j) {
            if (j != i && (strict ? s[j] <= l[j] : s[j] < l[j])) {
                return;
            }
        }
        found = true;
    });
    return found;
}

} // namespace

TEST_CASE("numerical semigroup from generators", "[semigroup]")
{
    const auto S = from_numerical_generators({4, 5});
    CHECK(S.conductor() == LatticePoint{12});
    std::vector<LatticePoint> expected;
    for (int x : {0, 4, 5, 8, 9, 10, 12}) {
        expected.push_back(LatticePoint{x});
    }
    CHECK(S.small_elements() == expected);
    CHECK(genus(S) == 6);
    CHECK(minimal_generators(S) == std::vector<int>{4, 5});
    CHECK(S.contains(LatticePoint{13}));
    CHECK(S.contains(LatticePoint{100}));
    CHECK_FALSE(S.contains(LatticePoint{11}));
    CHECK_FALSE(S.contains(LatticePoint{-1}));
    CHECK(multiplicity_vector(S).vector == LatticePoint{4});

    CHECK(from_numerical_generators({2, 3}).conductor() == LatticePoint{2});
    CHECK(from_numerical_generators({6, 4, 9}).conductor() == LatticePoint{12});
    CHECK_THROWS_AS(from_numerical_generators({4, 6}), InputError);
}

TEST_CASE("smooth branch is stored with conductor 0", "[semigroup]")
{
    const auto S = from_numerical_generators({1});
    CHECK(S.is_smooth());
    CHECK(S.conductor() == LatticePoint{0});
    CHECK(S.small_elements() == std::vector<LatticePoint>{LatticePoint{0}});
    CHECK(multiplicity_vector(S).smooth);
    CHECK(validate_good_semigroup(S).pass());
    CHECK(from_numerical_generators({1, 5}) == S);
}

TEST_CASE("Frobenius number of two generators", "[semigroup][property]")
{
    for (int a = 2; a <= 9; ++a) {
        for (int b = a + 1; b <= 13; ++b) {
            if (std::gcd(a, b) != 1) {
                continue;
            }
            const auto S = from_numerical_generators({a, b});
            CHECK(S.conductor()[0] == (a - 1) * (b - 1));
            CHECK(genus(S) == (a - 1) * (b - 1) / 2);
            CHECK(is_plane_branch_semigroup(S));
        }
    }
}

TEST_CASE("genus counts agree with a gap-set enumeration", "[semigroup][oracle]")
{
    const auto all = numerical_semigroups_up_to_genus(8);
    std::vector<long> by_genus(9, 0);
    for (const auto &S : all) {
        ++by_genus[static_cast<std::size_t>(genus(S))];
        REQUIRE(validate_good_semigroup(S).pass());
    }
    for (int g = 0; g <= 8; ++g) {
        CHECK(by_genus[static_cast<std::size_t>(g)] == count_by_gap_sets(g));
    }
    CHECK(all.size() == 156);
    std::set<std::vector<LatticePoint>> distinct;
    for (const auto &S : all) {
        distinct.insert(S.small_elements());
    }
    CHECK(distinct.size() == all.size());
}

TEST_CASE("delta queries agree with a box search", "[semigroup][oracle]")
{
    const auto A = from_numerical_generators({3, 4});
    const auto B = from_numerical_generators({2, 5});
    const auto smooth = from_numerical_generators({1});
    for (const auto &S : {wedge(A, B), wedge(A, A), wedge(wedge(smooth, smooth), B), A}) {
        const std::size_t r = S.branches();
        const LatticePoint lo = LatticePoint::filled(r, -1);
        const LatticePoint hi = S.conductor() + LatticePoint::filled(r, 2);
        for_each_point(Box(lo, hi), [&](const LatticePoint &l) {
            for (std::size_t i = 0; i < r; ++i) {
                CHECK(delta_bar_nonempty(S, l, i) == delta_oracle(S, l, i, false));
                CHECK(delta_nonempty(S, l, i) == delta_oracle(S, l, i, true));
            }
        });
    }
}

TEST_CASE("wedge of semigroups", "[semigroup]")
{
    const auto A = from_numerical_generators({3, 4});
    const auto W = wedge(A, A);
    CHECK(W.branches() == 2);
    CHECK(W.conductor() == LatticePoint{6, 6});
    CHECK(W.contains(LatticePoint{3, 4}));
    CHECK(W.contains(LatticePoint{0, 0}));
    CHECK_FALSE(W.contains(LatticePoint{0, 3}));
    CHECK_FALSE(W.contains(LatticePoint{5, 3}));
    CHECK(validate_good_semigroup(W).pass());
    CHECK(multiplicity_vector(W).vector == LatticePoint{3, 3});

    const auto s = from_numerical_generators({1});
    const auto T = wedge(wedge(s, s), s);
    CHECK(T.conductor() == LatticePoint{1, 1, 1});
    CHECK(T.small_elements().size() == 2);
    CHECK(validate_good_semigroup(T).pass());
}

TEST_CASE("validation reports the failing axiom with witnesses", "[semigroup]")
{
    SECTION("axiom 1: element with a zero coordinate")
    {
        const auto rep = validate_good_semigroup(2, LatticePoint{2, 2}, {{0, 0}, {1, 0}, {2, 2}});
        REQUIRE(rep.violates("1"));
        const auto &v = *std::find_if(rep.violations.begin(), rep.violations.end(),
                                      [](const Violation &x) { return x.axiom == "1"; });
        CHECK(std::find(v.witnesses.begin(), v.witnesses.end(), LatticePoint{1, 0}) != v.witnesses.end());
    }
    SECTION("axiom 2: not closed under min")
    {
        const auto rep = validate_good_semigroup(2, LatticePoint{4, 4}, {{0, 0}, {2, 3}, {3, 2}, {4, 4}});
        CHECK(rep.violates("2"));
    }
    SECTION("axiom 4: conductor not minimal")
    {
        const auto rep = validate_good_semigroup(1, LatticePoint{3}, {{0}, {2}, {3}});
        CHECK(rep.violates("4"));
    }
    SECTION("additive closure")
    {
        const auto rep = validate_good_semigroup(1, LatticePoint{7}, {{0}, {3}, {7}});
        CHECK(rep.violates("semigroup"));
    }
    SECTION("shape errors are input errors")
    {
        CHECK_THROWS_AS(GoodSemigroup::from_elements(2, LatticePoint{2, 2}, {{3, 0}}), InputError);
        CHECK_THROWS_AS(GoodSemigroup::from_elements(2, LatticePoint{2}, {}), InputError);
    }
}

TEST_CASE("above-conductor path criterion", "[semigroup]")
{
    const auto S = from_numerical_generators({4, 5});
    CHECK(is_above_conductor(S, LatticePoint{12}));
    CHECK(is_above_conductor(S, LatticePoint{15}));
    CHECK_FALSE(is_above_conductor(S, LatticePoint{10}));
    CHECK_THROWS_AS(is_above_conductor(S, LatticePoint{11}), InputError);

    const auto A = from_numerical_generators({3, 4});
    const auto W = wedge(A, A);
    CHECK(is_above_conductor(W, LatticePoint{6, 6}));
    CHECK_FALSE(is_above_conductor(W, LatticePoint{6, 4}));
}

TEST_CASE("elements in (m, 2m) and plane branch recognition", "[semigroup]")
{
    CHECK(elements_between_m_and_2m(from_numerical_generators({4, 5})) == 1);
    CHECK(elements_between_m_and_2m(from_numerical_generators({4, 5, 7})) == 2);
    CHECK(is_plane_branch_semigroup(from_numerical_generators({4, 6, 13})));
    CHECK_FALSE(is_plane_branch_semigroup(from_numerical_generators({4, 6, 11})));
    CHECK_FALSE(is_plane_branch_semigroup(from_numerical_generators({3, 4, 5})));
    CHECK(is_plane_branch_semigroup(from_numerical_generators({1})));
}
