#include <catch_amalgamated.hpp>

#include <latcoh/io.hpp>
#include <latcoh/semigroup.hpp>

using namespace latcoh;

namespace
{

std::string error_of(const std::function<void()> &f)
{
    try {
        f();
    } catch (const InputError &e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("semigroup round trip", "[io]")
{
    const auto A = from_numerical_generators({3, 4});
    for (const auto &S : {from_numerical_generators({4, 5}), from_numerical_generators({1}), wedge(A, A),
                          wedge(wedge(from_numerical_generators({1}), A), from_numerical_generators({2, 3}))}) {
        const auto text = io::serialize(S);
        CHECK(io::parse_semigroup(text) == S);
        CHECK(io::semigroup_from_json(io::semigroup_to_json(S)) == S);
        // the compact form and the library dump describe the same document
        CHECK(io::parse(text) == io::semigroup_to_json(S));
    }
}

TEST_CASE("canonical text of <4,5>", "[io]")
{
    CHECK(io::serialize(from_numerical_generators({4, 5}))
          == "{\n  \"branches\": 1,\n  \"conductor\": [12],\n  \"small_elements\": [\n    [0],\n    [4],\n    [5],\n"
             "    [8],\n    [9],\n    [10],\n    [12]\n  ]\n}\n");
}

TEST_CASE("errors name the offending field", "[io]")
{
    CHECK_THAT(error_of([] { io::parse_semigroup(R"({"conductor": [2], "small_elements": [[0]]})"); }),
               Catch::Matchers::ContainsSubstring("branches"));
    CHECK_THAT(error_of([] { io::parse_semigroup(R"({"branches": 1, "conductor": "x", "small_elements": []})"); }),
               Catch::Matchers::ContainsSubstring("conductor"));
    CHECK_THAT(
        error_of([] { io::parse_semigroup(R"({"branches": 1, "conductor": [2], "small_elements": [[0], [1.5]]})"); }),
        Catch::Matchers::ContainsSubstring("small_elements[1]"));
    CHECK_THAT(error_of([] { io::parse_semigroup(R"({"branches": 2, "conductor": [2], "small_elements": []})"); }),
               Catch::Matchers::ContainsSubstring("dimension"));
    CHECK_THAT(error_of([] { io::parse_semigroup(R"({"branches": 1, "conductor": [2], "small_elements": [[3]]})"); }),
               Catch::Matchers::ContainsSubstring("outside"));
}

TEST_CASE("malformed JSON reports the line", "[io]")
{
    const std::string text = "{\n  \"branches\": 1,\n  \"conductor\": [2],\n  \"small_elements\": [[0], [2]\n";
    CHECK_THAT(error_of([&] { io::parse_semigroup(text, "f.json"); }),
               Catch::Matchers::ContainsSubstring("f.json: malformed JSON at line 5"));
    CHECK_THAT(error_of([] { io::parse("{\"a\": 1,,}"); }), Catch::Matchers::ContainsSubstring("line 1"));
}

TEST_CASE("curve JSON", "[io]")
{
    const auto j = io::parse(R"({"ambient_dim": 3, "branches": [
        {"coords": [[[1, 1, 3]], [[2, 3, 4], ["-5", "7", 6]], [[1, 2, 5]]]}]})");
    const auto C = io::curve_from_json(j);
    REQUIRE(C.size() == 1);
    CHECK(C.branches[0].truncation == 4 * 5 * 5);
    CHECK(C.branches[0].coords[1][1].coef == Rational(-5, 7));
    const auto back = io::curve_from_json(io::curve_to_json(C));
    CHECK(io::curve_to_json(back) == io::curve_to_json(C));

    CHECK_THAT(error_of([] { io::curve_from_json(io::parse(R"({"ambient_dim": 2, "branches": [{"coords": [[[1, 0, 2]], [[1, 1, 3]]]}]})")); }),
               Catch::Matchers::ContainsSubstring("zero denominator"));
    CHECK_THAT(error_of([] { io::curve_from_json(io::parse(R"({"ambient_dim": 2, "branches": [{"coords": [[[1, 1]], [[1, 1, 3]]]}]})")); }),
               Catch::Matchers::ContainsSubstring("branches[0].coords[0][0]"));
    CHECK_THAT(error_of([] { io::curve_from_json(io::parse(R"({"branches": []})")); }),
               Catch::Matchers::ContainsSubstring("ambient_dim"));
    CHECK_THAT(error_of([] { io::curve_from_json(io::parse(R"({"ambient_dim": 2, "branches": [{"truncation": 0, "coords": [[[1, 1, 2]], [[1, 1, 3]]]}]})")); }),
               Catch::Matchers::ContainsSubstring("truncation"));
}

TEST_CASE("missing files", "[io]")
{
    CHECK_THAT(error_of([] { io::read_text("/nonexistent/semigroup.json"); }),
               Catch::Matchers::ContainsSubstring("cannot open"));
}
