#include "prem/linalg.hpp"
#include "prem/rational.hpp"

#include <doctest.h>

using namespace prem;

namespace {
QVec v(std::initializer_list<long> xs)
{
    QVec out;
    for (long x : xs) out.emplace_back(x);
    return out;
}
}  // namespace

TEST_CASE("rationals parse to lowest terms and format as num/den")
{
    CHECK(format_rational(parse_rational("3/6")) == "1/2");
    CHECK(format_rational(parse_rational("-4")) == "-4/1");
    CHECK(format_rational(parse_rational("+7/21")) == "1/3");
    CHECK(format_rational(parse_rational("123456789012345678901234567890/2")) == "61728394506172839450617283945/1");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("1/-2"));
    CHECK_THROWS(parse_rational("0.5"));
    CHECK_THROWS(parse_rational(""));
    CHECK_THROWS(parse_rational("1/"));
}

TEST_CASE("vector arithmetic")
{
    QVec a = v({1, 2}), b = v({3, -1});
    CHECK(a + b == v({4, 1}));
    CHECK(a - b == v({-2, 3}));
    CHECK(dot(a, b) == 1);
    CHECK(norm_sq(b) == 10);
    CHECK(is_zero(a - a));
    CHECK_THROWS(a + v({1}));
}

TEST_CASE("rank and solve")
{
    QMatrix m{v({1, 2, 3}), v({2, 4, 6}), v({1, 0, 1})};
    CHECK(rank(m) == 2);
    auto x = solve(QMatrix{v({2, 1}), v({1, 3})}, v({3, 5}));
    REQUIRE(x);
    CHECK((*x)[0] == Rational(4, 5));
    CHECK((*x)[1] == Rational(7, 5));
    CHECK_FALSE(solve(QMatrix{v({1, 1}), v({1, 1})}, v({1, 2})));
}

TEST_CASE("affine and linear independence")
{
    CHECK(affinely_independent({v({0, 0}), v({1, 0}), v({0, 1})}));
    CHECK_FALSE(affinely_independent({v({0, 0}), v({1, 1}), v({2, 2})}));
    CHECK_FALSE(affinely_independent({v({0, 0}), v({1, 0}), v({0, 1}), v({1, 1})}));
    CHECK(affinely_independent({v({5, 5})}));
    CHECK(linearly_independent({v({1, 0}), v({1, 1})}));
    CHECK_FALSE(linearly_independent({v({1, 2}), v({2, 4})}));
}

TEST_CASE("distance to affine hull")
{
    CHECK(dist_sq_to_affine_hull(v({0, 3}), {v({-1, 0}), v({1, 0})}) == 9);
    CHECK(dist_sq_to_affine_hull(v({1, 1}), {v({0, 0})}) == 2);
    CHECK(dist_sq_to_affine_hull(v({1, 1}), {v({0, 0}), v({2, 2})}) == 0);
}

TEST_CASE("phase-one simplex feasibility")
{
    // x + y = 1, x - y = 1/2 -> x = 3/4, y = 1/4.
    QMatrix a{QVec{1, 1}, QVec{1, -1}};
    auto x = lp_feasible_point(a, QVec{Rational(1), Rational(1, 2)});
    REQUIRE(x);
    CHECK((*x)[0] == Rational(3, 4));
    CHECK((*x)[1] == Rational(1, 4));
    // x - y = 2 with x + y = 1 forces y < 0.
    CHECK_FALSE(lp_feasible_point(a, QVec{Rational(1), Rational(2)}));
}

TEST_CASE("convex hull intersection")
{
    auto hit = hulls_intersect({v({0, 0}), v({2, 2})}, {v({0, 2}), v({2, 0})});
    REQUIRE(hit);
    CHECK(hit->point == v({1, 1}));
    CHECK(hit->lambda[0] + hit->lambda[1] == 1);
    CHECK_FALSE(hulls_intersect({v({0, 0}), v({1, 0})}, {v({0, 1}), v({1, 1})}));
    CHECK(hulls_intersect({v({0, 0}), v({4, 0}), v({0, 4})}, {v({1, 1})}));
    CHECK(origin_in_hull({v({-1, -1}), v({1, -1}), v({0, 2})}));
    CHECK_FALSE(origin_in_hull({v({1, 1}), v({2, 1})}));
    CHECK(origin_in_hull({v({0, 0})}));
}
