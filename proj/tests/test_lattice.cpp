#include <catch_amalgamated.hpp>

#include <latcoh/lattice.hpp>

using namespace latcoh;

TEST_CASE("box index and point are inverse", "[lattice]")
{
    const Box box(LatticePoint{1, 2, 0}, LatticePoint{3, 4, 2});
    REQUIRE(box.volume() == 27);
    for (std::size_t idx = 0; idx < box.volume(); ++idx) {
        const auto p = box.point(idx);
        CHECK(box.contains(p));
        CHECK(box.index(p) == idx);
    }
    CHECK_FALSE(box.contains(LatticePoint{0, 2, 0}));
}

TEST_CASE("box strides are lexicographic with the last coordinate fastest", "[lattice]")
{
    const Box box(LatticePoint{2, 3});
    CHECK(box.stride(1) == 1);
    CHECK(box.stride(0) == 4);
    CHECK(box.index(LatticePoint{1, 2}) == 6);
    CHECK(box.coord(6, 0) == 1);
    CHECK(box.coord(6, 1) == 2);
}

TEST_CASE("for_each_point visits in index order", "[lattice]")
{
    const Box box(LatticePoint{1, 2, 1});
    std::size_t expected = 0;
    for_each_point(box, [&](const LatticePoint &p) { CHECK(box.index(p) == expected++); });
    CHECK(expected == box.volume());
}

TEST_CASE("one point box", "[lattice]")
{
    const Box box(LatticePoint{0});
    CHECK(box.volume() == 1);
    std::size_t n = 0;
    for_each_point(box, [&](const LatticePoint &) { ++n; });
    CHECK(n == 1);
}

TEST_CASE("componentwise order, min and max", "[lattice]")
{
    const LatticePoint a{1, 5}, b{3, 2};
    CHECK(min(a, b) == LatticePoint{1, 2});
    CHECK(max(a, b) == LatticePoint{3, 5});
    CHECK_FALSE(leq(a, b));
    CHECK(leq(min(a, b), a));
    CHECK(a + b == LatticePoint{4, 7});
    CHECK(a - b == LatticePoint{-2, 3});
    CHECK((2 * a) == LatticePoint{2, 10});
    CHECK(a.norm() == 6);
    CHECK(LatticePoint::unit(3, 1) == LatticePoint{0, 1, 0});
    CHECK(a.str() == "(1,5)");
    CHECK(LatticePoint{7}.str() == "7");
}
