#include "prem/generators.hpp"

#include "prem/double_point.hpp"
#include "prem/errors.hpp"
#include "prem/io.hpp"
#include "prem/subdivision.hpp"
#include "prem/z2.hpp"

#include <numeric>

namespace prem {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw PreconditionError("InvalidParameters", what); }

std::shared_ptr<const SimplicialComplex> cycle(const std::string& prefix, int n)
{
    std::vector<std::string> names;
    std::vector<Simplex> edges;
    for (int i = 0; i < n; ++i) {
        names.push_back(prefix + std::to_string(i));
        edges.push_back(make_simplex({i, (i + 1) % n}));
    }
    return std::make_shared<const SimplicialComplex>(SimplicialComplex::from_simplices(names, edges));
}

std::shared_ptr<const SimplicialComplex> named_complex(const std::vector<std::string>& names,
                                                       const std::vector<std::vector<std::string>>& simplices)
{
    std::map<std::string, int> idx;
    for (std::size_t i = 0; i < names.size(); ++i) idx[names[i]] = static_cast<int>(i);
    std::vector<Simplex> ss;
    for (const auto& s : simplices) {
        std::vector<int> vs;
        for (const auto& n : s) vs.push_back(idx.at(n));
        ss.push_back(make_simplex(vs));
    }
    return std::make_shared<const SimplicialComplex>(SimplicialComplex::from_simplices(names, ss));
}

QVec point(long x, long y) { return {Rational(x), Rational(y)}; }

}  // namespace

GeneratedExample gen_cycle_cover(int p, int q)
{
    if (p < 1 || q < 3) invalid("cycle-cover needs p >= 1 and q >= 3");
    GeneratedExample ex;
    ex.stem = "cover" + std::to_string(p * q) + "to" + std::to_string(q);
    auto k = cycle("x", p * q);
    auto l = cycle("y", q);
    std::vector<int> vmap(p * q);
    for (int i = 0; i < p * q; ++i) vmap[i] = i % q;
    ex.map = std::make_shared<const SimplicialMap>(k, l, vmap);
    ex.base = k;
    ex.action.resize(p * q);
    for (int i = 0; i < p * q; ++i) ex.action[i] = (i + q) % (p * q);
    ex.deck = ex.action;
    ex.meta = {{"generator", "cycle-cover"}, {"p", std::to_string(p)}, {"q", std::to_string(q)}, {"n", "1"}};
    return ex;
}

GeneratedExample gen_cross_polytope(int m)
{
    if (m < 1) invalid("cross-polytope needs m >= 1");
    if (m > 10) invalid("cross-polytope dimension above 10 is out of range");
    GeneratedExample ex;
    ex.stem = "cross" + std::to_string(m);
    const int n = m + 1;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
        names.push_back("p" + std::to_string(i));
        names.push_back("n" + std::to_string(i));
    }
    std::vector<Simplex> facets;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        Simplex s;
        for (int i = 0; i < n; ++i) s.push_back(2 * i + ((mask >> i) & 1u));
        facets.push_back(s);
    }
    ex.base = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_simplices(names, facets));
    ex.action.resize(2 * n);
    for (int v = 0; v < 2 * n; ++v) ex.action[v] = v ^ 1;
    QuotientData q = quotient_by_involution(ex.base, ex.action);
    auto target = std::make_shared<const SimplicialComplex>(q.complex);
    ex.map = std::make_shared<const SimplicialMap>(q.cover, target, q.orbit_of);
    ex.deck = q.involution;
    ex.subdivisions = q.subdivisions;
    ex.meta = {{"generator", "cross-polytope"}, {"m", std::to_string(m)}, {"n", std::to_string(m)},
               {"sheets", "2"}, {"subdivisions", std::to_string(q.subdivisions)}};
    return ex;
}

GeneratedExample gen_join_lens(int p, int q)
{
    if (p < 2) invalid("join-lens needs p >= 2");
    if (std::gcd(p, q) != 1) invalid("join-lens needs gcd(p, q) = 1 for a free action");
    if (p == 2) {
        GeneratedExample ex = gen_cross_polytope(3);
        ex.stem = "lens_2_1";
        ex.meta["generator"] = "join-lens";
        ex.meta["p"] = "2";
        ex.meta["q"] = "1";
        ex.meta.erase("m");
        return ex;
    }
    const int qq = ((q % p) + p) % p;
    GeneratedExample ex;
    ex.stem = "lens_" + std::to_string(p) + "_" + std::to_string(qq);
    std::vector<std::string> names;
    for (int i = 0; i < p; ++i) names.push_back("a" + std::to_string(i));
    for (int i = 0; i < p; ++i) names.push_back("b" + std::to_string(i));
    std::vector<Simplex> tets;
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) tets.push_back(make_simplex({i, (i + 1) % p, p + j, p + (j + 1) % p}));
    ex.base = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_simplices(names, tets));
    ex.action.resize(2 * p);
    for (int i = 0; i < p; ++i) {
        ex.action[i] = (i + 1) % p;
        ex.action[p + i] = p + (i + qq) % p;
    }
    auto cover = ex.base;
    std::vector<int> g = ex.action;
    for (int j = 0; j <= 3; ++j) {
        OrbitQuotient oq = orbit_quotient(*cover, g);
        if (oq.regular) {
            auto target = std::make_shared<const SimplicialComplex>(std::move(oq.complex));
            auto f = std::make_shared<const SimplicialMap>(cover, target, oq.orbit_of);
            if (check_star_condition(*f)) {
                ex.map = f;
                ex.deck = g;
                ex.subdivisions = j;
                break;
            }
        }
        if (j == 3) break;
        g = subdivide_automorphism(*cover, g);
        cover = barycentric_subdivide(cover).child;
    }
    if (!ex.map) throw ContractViolation("join-lens quotient not simplicial after 3 subdivisions");
    ex.meta = {{"generator", "join-lens"}, {"p", std::to_string(p)}, {"q", std::to_string(qq)}, {"n", "3"},
               {"sheets", std::to_string(p)}, {"subdivisions", std::to_string(ex.subdivisions)}};
    return ex;
}

GeneratedExample gen_figure_eight()
{
    GeneratedExample ex;
    ex.stem = "figure8";
    auto k = cycle("k", 8);
    const std::vector<std::string> lnames{"X", "a1", "a2", "a3", "b1", "b2", "b3"};
    auto l = named_complex(lnames, {{"X", "a1"}, {"a1", "a2"}, {"a2", "a3"}, {"a3", "X"},
                                    {"X", "b1"}, {"b1", "b2"}, {"b2", "b3"}, {"b3", "X"}});
    ex.map = std::make_shared<const SimplicialMap>(k, l, std::vector<int>{0, 1, 2, 3, 0, 4, 5, 6});
    ex.realization = std::vector<QVec>{point(0, 0), point(1, 1), point(2, 0), point(1, -1),
                                       point(-1, 1), point(-2, 0), point(-1, -1)};
    ex.meta = {{"generator", "figure-eight"}, {"n", "1"}};
    return ex;
}

GeneratedExample gen_fold_path()
{
    GeneratedExample ex;
    ex.stem = "fold";
    auto k = named_complex({"x0", "x1", "x2"}, {{"x0", "x1"}, {"x1", "x2"}});
    auto l = named_complex({"A", "B"}, {{"A", "B"}});
    ex.map = std::make_shared<const SimplicialMap>(k, l, std::vector<int>{0, 1, 0});
    ex.realization = std::vector<QVec>{{Rational(0)}, {Rational(1)}};
    ex.meta = {{"generator", "fold-path"}, {"n", "1"}};
    return ex;
}

GeneratedExample generate(const std::string& name, const std::vector<int>& params)
{
    auto arity = [&](std::size_t n) {
        if (params.size() != n)
            invalid(name + " takes " + std::to_string(n) + " integer parameter" + (n == 1 ? "" : "s"));
    };
    if (name == "cycle-cover") {
        arity(2);
        return gen_cycle_cover(params[0], params[1]);
    }
    if (name == "cross-polytope") {
        arity(1);
        return gen_cross_polytope(params[0]);
    }
    if (name == "join-lens") {
        arity(2);
        return gen_join_lens(params[0], params[1]);
    }
    if (name == "figure-eight") {
        arity(0);
        return gen_figure_eight();
    }
    if (name == "fold-path") {
        arity(0);
        return gen_fold_path();
    }
    invalid("unknown generator '" + name + "'");
}

std::vector<std::filesystem::path> write_example(const GeneratedExample& ex, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    const std::string src = ex.stem + ".src", tgt = ex.stem + ".tgt";
    std::optional<std::string> real;
    std::vector<std::filesystem::path> out{dir / (ex.stem + ".map")};
    write_file(dir / src, write_complex(ex.map->source()));
    write_file(dir / tgt, write_complex(ex.map->target()));
    out.push_back(dir / src);
    out.push_back(dir / tgt);
    if (ex.realization) {
        real = ex.stem + ".real";
        write_file(dir / *real, write_realization(ex.map->target(), *ex.realization));
        out.push_back(dir / *real);
    }
    if (ex.base && !ex.action.empty()) {
        write_file(dir / (ex.stem + ".base"), write_complex(*ex.base));
        write_file(dir / (ex.stem + ".action"), write_involution(*ex.base, ex.action));
        out.push_back(dir / (ex.stem + ".base"));
        out.push_back(dir / (ex.stem + ".action"));
    }
    if (!ex.deck.empty()) {
        write_file(dir / (ex.stem + ".deck"), write_involution(ex.map->source(), ex.deck));
        out.push_back(dir / (ex.stem + ".deck"));
    }
    write_file(out.front(), write_map(*ex.map, src, tgt, real, ex.meta));
    return out;
}

Lift wiggly_refinement(const SimplicialMap& f, const Lift& g, int jobs)
{
    const SubdivisionRecord sd = barycentric_subdivide(g.record.child);
    const auto cells = barycentric_vertex_simplices(*g.record.child);
    Lift out;
    out.k = g.k;
    out.record = compose(g.record, sd);
    Rational eps(1, 8);
    for (int attempt = 0; attempt < 24; ++attempt, eps /= 2) {
        out.values.clear();
        for (std::size_t v = 0; v < cells.size(); ++v) {
            const Simplex& s = cells[v];
            QVec x(g.k, Rational(0));
            for (int u : s) x = x + g.values[u];
            for (auto& c : x) c /= static_cast<long>(s.size());
            if (s.size() > 1) x[0] += eps * ((v % 2 == 0) ? 1 : -1);
            out.values.push_back(std::move(x));
        }
        if (verify_embedding(f, out, jobs).verdict) return out;
    }
    throw ContractViolation("wiggly refinement never verified");
}

}  // namespace prem
