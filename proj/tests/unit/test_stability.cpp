#include "fixtures.hpp"

#include "prem/errors.hpp"
#include "prem/stability.hpp"

#include <doctest.h>

using namespace prem;
using namespace fixtures;

namespace {

QVec q(std::initializer_list<long> xs)
{
    QVec out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

LinearMapToRm linear(Ptr k, std::vector<QVec> values)
{
    LinearMapToRm f;
    f.source = std::move(k);
    f.m = static_cast<int>(values[0].size());
    f.values = std::move(values);
    return f;
}

Ptr path(int n)
{
    std::vector<std::vector<std::string>> edges;
    auto names = numbered("p", n);
    for (int i = 0; i + 1 < n; ++i) edges.push_back({names[i], names[i + 1]});
    return complex_of(names, edges);
}

}  // namespace

TEST_CASE("general position configurations")
{
    CHECK_FALSE(is_general_position_config({q({0, 0}), q({1, 1}), q({2, 2})}));
    CHECK(is_general_position_config({q({0, 0}), q({1, 0}), q({1, 1}), q({0, 1})}));
    CHECK_FALSE(is_general_position_config({q({0, 0, 0}), q({1, 0, 0}), q({0, 1, 0}), q({1, 1, 0})}));
    CHECK(is_general_position_config({q({0, 0, 0}), q({1, 0, 0}), q({0, 1, 0}), q({0, 0, 1}), q({1, 1, 1})}));
    CHECK_FALSE(is_general_position_config({q({3}), q({3})}));
    CHECK(is_general_position_config({q({3})}));
    CHECK(is_general_position_config({}));
}

TEST_CASE("membership in G(phi) with the enclosing simplex")
{
    auto tri = full_simplex(3);
    auto r = in_G_phi(linear(tri, {q({0, 0}), q({1, 0}), q({0, 1})}));
    CHECK(r.in_g_phi);
    CHECK(r.auto_target);
    auto clash = in_G_phi(linear(path(3), {q({0, 0}), q({1, 0}), q({0, 0})}));
    CHECK_FALSE(clash.in_g_phi);
    REQUIRE(clash.failing);
}

TEST_CASE("membership in G(phi) against a given triangulation")
{
    // Target: segment [0, 2] split at 1.
    auto l = complex_of({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
    GeometricComplex lg(l, {q({0}), q({1}), q({2})});
    auto k = path(2);
    auto inside = in_G_phi(linear(k, {q({0}), q({1})}), &lg);
    CHECK(inside.in_g_phi);
    CHECK_FALSE(inside.auto_target);
    try {
        in_G_phi(linear(k, {q({0}), q({2})}), &lg);
        FAIL("expected CarrierInconsistent");
    } catch (const PreconditionError& e) {
        CHECK(e.code() == "CarrierInconsistent");
    }
    try {
        in_G_phi(linear(k, {q({0}), q({3})}), &lg);
        FAIL("expected OutsideTarget");
    } catch (const PreconditionError& e) {
        CHECK(e.code() == "OutsideTarget");
    }
}

TEST_CASE("maps to the line")
{
    auto mono = stable_to_R_report(linear(path(4), {q({0}), q({1}), q({2}), q({3})}));
    CHECK(mono.embeds_all_edges);
    CHECK(mono.critical_values_injective);
    CHECK(mono.verdict == "stable");
    CHECK(mono.critical_vertices == std::vector<int>{0, 3});

    auto flat = stable_to_R_report(linear(path(3), {q({0}), q({1}), q({1})}));
    CHECK_FALSE(flat.embeds_all_edges);
    CHECK(flat.verdict == "not stable (degenerate)");
    CHECK(flat.collapsed_edge == Simplex{1, 2});

    auto w = stable_to_R_report(linear(path(5), {q({0}), q({2}), q({1}), q({2}), q({-1})}));
    CHECK(w.embeds_all_edges);
    CHECK_FALSE(w.critical_values_injective);
    CHECK(w.verdict == "condition (2)/(3) tension");

    CHECK_THROWS_AS(stable_to_R_report(linear(path(2), {q({0, 0}), q({1, 1})})), std::invalid_argument);
}

TEST_CASE("regularity on surfaces")
{
    // Height on the octahedron: only the poles are critical.
    auto oct = complex_of({"n", "s", "e", "w", "f", "b"},
                          {{"n", "e", "f"}, {"n", "f", "w"}, {"n", "w", "b"}, {"n", "b", "e"},
                           {"s", "e", "f"}, {"s", "f", "w"}, {"s", "w", "b"}, {"s", "b", "e"}});
    auto r = stable_to_R_report(linear(oct, {q({10}), q({-10}), q({1}), q({-1}), q({2}), q({-2})}));
    CHECK(r.critical_vertices == std::vector<int>{0, 1});
    CHECK(r.verdict == "stable");
    // A saddle at n: its link alternates above and below.
    auto saddle = stable_to_R_report(linear(oct, {q({0}), q({-10}), q({1}), q({2}), q({-1}), q({-2})}));
    CHECK(saddle.critical_vertices == std::vector<int>{0, 1, 2, 3});
    CHECK(saddle.regularity_decided);
}
