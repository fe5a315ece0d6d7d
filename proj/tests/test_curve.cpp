#include <catch_amalgamated.hpp>

#include <numeric>

#include <latcoh/curve.hpp>
#include <latcoh/properties.hpp>

using namespace latcoh;

namespace
{

ParamCurve monomial(int a, int b, int truncation = 0)
{
    return make_curve(2, {make_branch({{{1, a}}, {{1, b}}}, truncation)});
}

ParamCurve two_branch_curve()
{
    return make_curve(2, {make_branch({{{1, 7}}, {{1, 2}}}), make_branch({{{1, 4}}, {{1, 5}}})});
}

MultiPoly poly(std::initializer_list<std::pair<long, std::vector<int>>> terms)
{
    MultiPoly g;
    for (const auto &[c, e] : terms) {
        g.push_back({Rational(c), e});
    }
    return g;
}

// Branch living in coordinates [offset, offset + 2) of a 4-dimensional space.
Branch placed(int a, int b, std::size_t offset)
{
    std::vector<std::vector<std::pair<long, int>>> coords(4);
    coords[offset] = {{1, a}};
    coords[offset + 1] = {{1, b}};
    return make_branch(coords, 4 * b * b);
}

} // namespace

TEST_CASE("branch valuations", "[curve]")
{
    const auto b72 = make_branch({{{1, 7}}, {{1, 2}}}, 64);
    const auto v = branch_valuation(b72, poly({{1, {5, 0}}, {-1, {0, 4}}}));
    REQUIRE(v.order);
    CHECK(*v.order == 8);

    const auto cusp = make_branch({{{1, 2}}, {{1, 3}}}, 36);
    const auto eq = branch_valuation(cusp, poly({{1, {0, 2}}, {-1, {3, 0}}}));
    CHECK(eq.exhausted());
    CHECK(eq.truncation == 36);
    const auto x = branch_valuation(cusp, poly({{1, {1, 0}}}));
    REQUIRE(x.order);
    CHECK(*x.order == 2);
}

TEST_CASE("Hilbert values from jets", "[curve]")
{
    CHECK(hilbert_value(monomial(2, 3), LatticePoint{2}) == 1);
    CHECK(hilbert_value(monomial(2, 3), LatticePoint{0}) == 0);
    const auto C = two_branch_curve();
    CHECK(hilbert_value(C, LatticePoint{1, 1}) == 1);
    CHECK(hilbert_value(C, LatticePoint{14, 20}) == 17);
}

TEST_CASE("monomial branches give the numerical semigroup", "[curve][oracle]")
{
    for (int a = 2; a <= 7; ++a) {
        for (int b = a + 1; b <= 9; ++b) {
            if (std::gcd(a, b) != 1) {
                continue;
            }
            const auto C = monomial(a, b);
            const auto res = extract_semigroup(C);
            const auto S = from_numerical_generators({a, b});
            CHECK(res.semigroup == S);
            CHECK(res.certificate == Certificate::verified);
            CHECK(res.delta == (a - 1) * (b - 1) / 2);
            CHECK(res.multiplicity == LatticePoint{a});
            // jet ranks against counting the semigroup below l
            const LatticePoint L = S.conductor() + LatticePoint{2};
            CHECK(hilbert_grid_from_curve(C, L) == hilbert_grid(S, L));
        }
    }
}

TEST_CASE("cusp and <4,5>", "[curve]")
{
    const auto cusp = extract_semigroup(monomial(2, 3));
    CHECK(cusp.semigroup.conductor() == LatticePoint{2});
    CHECK(cusp.delta == 1);
    const auto r45 = extract_semigroup(monomial(4, 5));
    CHECK(r45.semigroup == from_numerical_generators({4, 5}));
    CHECK(r45.semigroup.conductor() == LatticePoint{12});
    CHECK(r45.delta == 6);
}

TEST_CASE("two branches (t^7, t^2) and (t^4, t^5)", "[curve]")
{
    const auto C = two_branch_curve();
    const auto res = extract_semigroup(C);
    CHECK(res.multiplicity == LatticePoint{2, 4});
    CHECK(res.semigroup.conductor() == LatticePoint{14, 20});
    CHECK(res.delta == 17);
    CHECK(validate_good_semigroup(res.semigroup).pass());
    for (std::size_t i = 0; i < C.size(); ++i) {
        CHECK(res.multiplicity[i] == C.branches[i].multiplicity());
    }
    // h from jets satisfies the grid laws on the computed box
    const auto h = hilbert_grid_from_curve(C, LatticePoint{16, 22});
    CHECK(props::matroid(h).ok);
    CHECK(props::increments(h, weight_grid(h)).ok);
}

TEST_CASE("space curve with rational coefficients", "[curve]")
{
    Branch b;
    b.coords = {{{Rational(1), 3}}, {{Rational(2, 3), 4}, {Rational(-5, 7), 6}}, {{Rational(1, 2), 5}}};
    const auto C = make_curve(3, {b});
    const auto res = extract_semigroup(C);
    CHECK(res.semigroup == from_numerical_generators({3, 4, 5}));
    CHECK(res.delta == 2);
}

TEST_CASE("transverse unions add one to delta", "[curve]")
{
    const std::vector<std::pair<int, int>> branches{{2, 3}, {3, 4}, {2, 5}, {3, 5}};
    for (const auto &[a, b] : branches) {
        for (const auto &[p, q] : branches) {
            const auto one = extract_semigroup(make_curve(2, {make_branch({{{1, a}}, {{1, b}}})}));
            const auto two = extract_semigroup(make_curve(2, {make_branch({{{1, p}}, {{1, q}}})}));
            const auto res = extract_semigroup(make_curve(4, {placed(a, b, 0), placed(p, q, 2)}));
            CHECK(res.semigroup == wedge(one.semigroup, two.semigroup));
            CHECK(res.delta == one.delta + two.delta + 1);
        }
    }
}

TEST_CASE("node and lines", "[curve]")
{
    const auto node = extract_semigroup(make_curve(2, {make_branch({{{1, 1}}, {}}), make_branch({{}, {{1, 1}}})}));
    CHECK(node.semigroup.conductor() == LatticePoint{1, 1});
    CHECK(node.delta == 1);
    const auto lines = extract_semigroup(make_curve(
        2, {make_branch({{{1, 1}}, {}}), make_branch({{}, {{1, 1}}}), make_branch({{{1, 1}}, {{1, 1}}})}));
    CHECK(lines.semigroup.conductor() == LatticePoint{2, 2, 2});
    CHECK(lines.delta == 3);
}

TEST_CASE("insufficient truncation", "[curve]")
{
    const auto C = monomial(4, 5, 10);
    try {
        extract_semigroup(C);
        FAIL("expected a truncation error");
    } catch (const TruncationError &e) {
        CHECK(e.branch() == 0);
        CHECK(e.suggested_truncation() > 10);
    }
    CHECK_THROWS_AS(hilbert_value(C, LatticePoint{11}), TruncationError);
    const auto loose = extract_semigroup(C, {.allow_uncertified = true});
    CHECK(loose.certificate == Certificate::truncation_limited);
    CHECK(extract_semigroup(monomial(4, 5, 40)).delta == 6);
}

TEST_CASE("malformed parametrizations", "[curve]")
{
    CHECK_THROWS_AS(make_curve(2, {make_branch({{{1, 0}, {1, 2}}, {{1, 3}}})}), InputError);
    CHECK_THROWS_AS(make_curve(2, {make_branch({{}, {}})}), InputError);
    CHECK_THROWS_AS(make_curve(3, {make_branch({{{1, 2}}, {{1, 3}}})}), InputError);
}
