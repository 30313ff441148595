#include "fixtures.hpp"

#include "prem/double_point.hpp"
#include "prem/generators.hpp"
#include "prem/gf2.hpp"
#include "prem/io.hpp"
#include "prem/obstruction.hpp"
#include "prem/stability.hpp"
#include "prem/subdivision.hpp"
#include "prem/z2.hpp"

#include <doctest.h>

#include <numeric>
#include <sstream>

using namespace prem;
using namespace fixtures;

namespace {

constexpr int kCases = 200;

// Random non-degenerate map from a small complex into a full simplex.
std::optional<SimplicialMap> random_map(Rng& rng)
{
    const int n = rng.uniform(4, 8);
    auto k = random_complex(rng, n, rng.uniform(3, 8), 2);
    const int colors = rng.uniform(3, 5);
    auto col = random_colouring(rng, *k, colors);
    if (col.empty()) return std::nullopt;
    return SimplicialMap(k, full_simplex(colors), col);
}

struct DoubleCover {
    Ptr cover;
    std::vector<int> involution;
    int connected_over_some_component = 0;  // oracle for the Yang index of a graph
};

// Double cover of a random graph twisted by a random edge cochain.
DoubleCover random_double_cover(Rng& rng)
{
    const int n = rng.uniform(3, 7);
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (rng.coin(0.45)) edges.emplace_back(a, b);
    std::vector<Simplex> ss;
    std::vector<int> parent(2 * n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (auto [a, b] : edges) {
        const int twist = rng.coin() ? 1 : 0;
        for (int s = 0; s < 2; ++s) {
            const int u = 2 * a + s, v = 2 * b + (s ^ twist);
            ss.push_back(make_simplex({u, v}));
            parent[find(u)] = find(v);
        }
    }
    DoubleCover d;
    d.cover = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_simplices(numbered("z", 2 * n), ss));
    d.involution.resize(2 * n);
    for (int v = 0; v < 2 * n; ++v) d.involution[v] = v ^ 1;
    for (int y = 0; y < n; ++y)
        if (find(2 * y) == find(2 * y + 1)) d.connected_over_some_component = 1;
    return d;
}

// Cross-polytope boundary with randomly permuted vertex labels.
DoubleCover relabelled_cross(Rng& rng, int m)
{
    auto ex = gen_cross_polytope(m);
    const int n = ex.base->num_vertices();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng.gen);
    std::vector<Simplex> ss;
    for (const auto& s : ex.base->maximal_simplices()) {
        std::vector<int> t;
        for (int v : s) t.push_back(perm[v]);
        ss.push_back(make_simplex(t));
    }
    DoubleCover d;
    d.cover = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_simplices(numbered("z", n), ss));
    d.involution.resize(n);
    for (int v = 0; v < n; ++v) d.involution[perm[v]] = perm[ex.action[v]];
    d.connected_over_some_component = m;
    return d;
}

QVec apply_affine(const std::vector<QVec>& a, const QVec& x, const QVec& b)
{
    QVec y(b);
    for (std::size_t i = 0; i < a.size(); ++i) y[i] += dot(a[i], x);
    return y;
}

}  // namespace

TEST_CASE("double-point involution is free and equivariant")
{
    Rng rng(0x5eed01);
    int cases = 0;
    while (cases < kCases) {
        auto f = random_map(rng);
        if (!f) continue;
        ++cases;
        auto d = double_point_complex(*f);
        const int nv = d.complex.num_vertices();
        REQUIRE(static_cast<int>(d.involution.size()) == nv);
        for (int v = 0; v < nv; ++v) {
            CHECK(d.involution[v] != v);
            CHECK(d.involution[d.involution[v]] == v);
            const auto [x, y] = d.pairs[v];
            CHECK(x != y);
            CHECK((*f)(x) == (*f)(y));
            CHECK(d.pairs[d.involution[v]] == std::make_pair(y, x));
        }
        if (nv == 0) continue;
        CHECK(is_simplicial_automorphism(d.complex, d.involution));
        for (const auto& cell : d.complex.all_simplices()) {
            auto [a, b] = d.sides(cell);
            CHECK(disjoint(a, b));
            CHECK(f->image(a) == f->image(b));
            Simplex tc;
            for (int v : cell) tc.push_back(d.involution[v]);
            std::sort(tc.begin(), tc.end());
            auto [ta, tb] = d.sides(tc);
            CHECK(ta == b);
            CHECK(tb == a);
        }
        for (const auto& c : invariant_components(d))
            for (int v : c.vertices) CHECK(d.component[d.involution[v]] == c.partner);
    }
    CHECK(cases >= kCases);
}

TEST_CASE("Yang index is invariant under barycentric subdivision")
{
    Rng rng(0x5eed02);
    for (int i = 0; i < kCases; ++i) {
        DoubleCover d = (i % 10 == 9) ? relabelled_cross(rng, 1 + (i / 10) % 2) : random_double_cover(rng);
        if (d.cover->dim() < 1) {
            CHECK(yang_index(quotient_by_involution(d.cover, d.involution)) == 0);
            continue;
        }
        auto q = quotient_by_involution(d.cover, d.involution);
        const int before = yang_index(q);
        auto sd = barycentric_subdivide(q.cover);
        auto lifted = subdivide_automorphism(*q.cover, q.involution);
        const int after = yang_index(quotient_by_involution(sd.child, lifted));
        CHECK(before == after);
        CHECK(before == d.connected_over_some_component);
    }
}

TEST_CASE("coboundary of a coboundary vanishes")
{
    Rng rng(0x5eed03);
    for (int i = 0; i < kCases; ++i) {
        auto k = random_complex(rng, rng.uniform(4, 9), rng.uniform(2, 9), 3);
        Z2Cochains z(*k);
        for (int d = 0; d + 2 <= k->dim(); ++d) {
            BitVec c = z.zero(d);
            for (std::size_t j = 0; j < c.size(); ++j) c.set(j, rng.coin());
            CHECK_FALSE(z.coboundary(d + 1, z.coboundary(d, c)).any());
            CHECK(z.is_coboundary(d + 1, z.coboundary(d, c)));
        }
    }
}

TEST_CASE("equivariant witnesses are antipodal")
{
    Rng rng(0x5eed04);
    int cases = 0;
    while (cases < kCases) {
        auto f = random_map(rng);
        if (!f) continue;
        auto d = double_point_complex(*f);
        if (d.complex.num_vertices() == 0) continue;
        ++cases;
        const int k = d.complex.dim() + 1 + rng.uniform(0, 1);
        auto w = construct_equivariant_witness(d, k);
        CHECK(verify_witness(w));
        for (int v = 0; v < w.cover->num_vertices(); ++v) {
            CHECK(static_cast<int>(w.vectors[v].size()) == k);
            CHECK_FALSE(is_zero(w.vectors[v]));
            CHECK(w.vectors[w.involution[v]] == -1 * w.vectors[v]);
        }
    }
}

TEST_CASE("general position is affine invariant")
{
    Rng rng(0x5eed05);
    int positive = 0, negative = 0;
    for (int i = 0; i < 300; ++i) {
        const int m = rng.uniform(1, 3), n = rng.uniform(1, 6);
        std::vector<QVec> pts;
        for (int j = 0; j < n; ++j) {
            QVec x;
            for (int c = 0; c < m; ++c) x.push_back(rng.rational(4, 3));
            pts.push_back(x);
        }
        if (n >= 3 && rng.coin(0.4)) pts[2] = Rational(1, 2) * (pts[0] + pts[1]);  // collinear triple
        if (n >= 2 && rng.coin(0.1)) pts[1] = pts[0];
        std::vector<QVec> a(m, QVec(m, Rational(0)));
        for (int r = 0; r < m; ++r) a[r][r] = 1;
        for (int step = 0; step < 6 && m > 1; ++step) {
            int r = rng.uniform(0, m - 1), s = rng.uniform(0, m - 1);
            if (r == s) continue;
            Rational coef = rng.rational(2, 2);
            for (int c = 0; c < m; ++c) a[r][c] += coef * a[s][c];
        }
        Rational scale(rng.uniform(1, 5), rng.uniform(1, 5));
        for (auto& row : a)
            for (auto& x : row) x *= scale;
        QVec b;
        for (int c = 0; c < m; ++c) b.push_back(rng.rational(5, 7));
        std::vector<QVec> moved;
        for (const auto& p : pts) moved.push_back(apply_affine(a, p, b));
        const bool gp = is_general_position_config(pts);
        CHECK(gp == is_general_position_config(moved));
        (gp ? positive : negative) += 1;
    }
    CHECK(positive > 20);
    CHECK(negative > 20);
}

TEST_CASE("G(phi) is open under shrinking perturbations and failures are repairable")
{
    Rng rng(0x5eed06);
    int open_cases = 0, repaired = 0;
    for (int i = 0; open_cases < kCases; ++i) {
        REQUIRE(i < 4000);
        auto k = random_complex(rng, rng.uniform(3, 7), rng.uniform(2, 6), 2);
        LinearMapToRm f;
        f.source = k;
        f.m = rng.uniform(1, 2);
        for (int v = 0; v < k->num_vertices(); ++v) {
            QVec x;
            for (int c = 0; c < f.m; ++c) x.push_back(Rational(rng.uniform(-4, 4)));
            f.values.push_back(x);
        }
        if (in_G_phi(f).in_g_phi) {
            ++open_cases;
            for (int t = 30; t <= 60; t += 15) {
                LinearMapToRm g = f;
                for (auto& x : g.values)
                    for (auto& c : x) c += Rational(rng.uniform(-3, 3)) / pow(boost::multiprecision::mpz_int(2), t);
                CHECK(in_G_phi(g).in_g_phi);
            }
        } else {
            bool ok = false;
            // Moment-curve offsets ((v+1)/2^t)^(c+1).
            for (int t = 1; t <= 16 && !ok; ++t) {
                LinearMapToRm g = f;
                for (std::size_t v = 0; v < g.values.size(); ++v) {
                    const Rational s(static_cast<long>(v + 1), 1L << t);
                    Rational power = s;
                    for (int c = 0; c < g.m; ++c, power *= s) g.values[v][c] += power;
                }
                ok = in_G_phi(g).in_g_phi;
            }
            CHECK(ok);
            repaired += ok;
        }
    }
    CHECK(repaired > 0);
}

TEST_CASE("files round-trip bit-exactly")
{
    Rng rng(0x5eed07);
    for (int i = 0; i < kCases; ++i) {
        auto k = random_complex(rng, rng.uniform(2, 8), rng.uniform(1, 6), 3);
        const std::string ctext = write_complex(*k);
        std::istringstream cin(ctext);
        auto back = parse_complex(cin);
        CHECK(back == *k);
        CHECK(write_complex(back) == ctext);

        const int m = rng.uniform(1, 3);
        std::vector<QVec> coords;
        for (int v = 0; v < k->num_vertices(); ++v) {
            QVec x;
            for (int c = 0; c < m; ++c) x.push_back(rng.rational(1000, 997));
            coords.push_back(x);
        }
        const std::string rtext = write_realization(*k, coords);
        std::istringstream rin(rtext);
        CHECK(parse_realization(rin, *k) == coords);

        Lift g;
        g.k = rng.uniform(1, 2);
        g.record = rng.coin() ? barycentric_subdivide(k) : identity_subdivision(k);
        for (int v = 0; v < g.record.child->num_vertices(); ++v) {
            QVec x;
            for (int c = 0; c < g.k; ++c) x.push_back(rng.rational(50, 1 << 20));
            g.values.push_back(x);
        }
        const std::string ltext = write_lift(g);
        std::istringstream lin(ltext);
        Lift lb = parse_lift(lin, k);
        CHECK(lb.values == g.values);
        CHECK(lb.record.vertex_coords == g.record.vertex_coords);
        CHECK(*lb.record.child == *g.record.child);
        CHECK(write_lift(lb) == ltext);
    }
}

TEST_CASE("generated example files re-parse to identical maps")
{
    auto dir = std::filesystem::temp_directory_path() / "prem_roundtrip";
    std::filesystem::remove_all(dir);
    Rng rng(0x5eed08);
    for (int i = 0; i < kCases; ++i) {
        GeneratedExample ex;
        switch (i % 4) {
        case 0: ex = gen_cycle_cover(rng.uniform(1, 4), rng.uniform(3, 6)); break;
        case 1: ex = gen_cross_polytope(rng.uniform(1, 2)); break;
        case 2: ex = gen_figure_eight(); break;
        default: ex = gen_fold_path(); break;
        }
        auto sub = dir / std::to_string(i);
        auto files = write_example(ex, sub);
        auto b = load_map(files.front());
        CHECK(b.map->source() == ex.map->source());
        CHECK(b.map->target() == ex.map->target());
        CHECK(b.map->vertex_map() == ex.map->vertex_map());
        CHECK(b.meta == ex.meta);
        CHECK(b.realization.has_value() == ex.realization.has_value());
        if (ex.realization) CHECK(b.realization->coords() == *ex.realization);
        auto again = write_example(ex, sub);
        CHECK(read_file(again.front()) == read_file(files.front()));
    }
    std::filesystem::remove_all(dir);
}
