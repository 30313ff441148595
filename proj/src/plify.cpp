#include "prem/plify.hpp"

#include "prem/errors.hpp"
#include "prem/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace prem {

QVec evaluate_lift(const Lift& g, const BaryPoint& x)
{
    auto loc = g.record.locate(x);
    if (!loc) throw std::invalid_argument("evaluate_lift: point is not in the subdivided complex");
    QVec out(g.k, Rational(0));
    for (std::size_t i = 0; i < loc->first.size(); ++i) out = out + loc->second[i] * g.values[loc->first[i]];
    return out;
}

Rational lipschitz_bound_sq(const Lift& g)
{
    const SimplicialComplex& c = *g.record.child;
    const int nk = g.record.parent->num_vertices();
    auto pos = [&](int v) {
        QVec x(nk, Rational(0));
        for (const auto& [u, w] : g.record.vertex_coords[v]) x[u] = w;
        return x;
    };
    Rational best = 0;
    for (const auto& s : c.maximal_simplices()) {
        if (s.size() < 2) continue;
        std::vector<QVec> pts;
        for (int v : s) pts.push_back(pos(v));
        Rational spread = 0;
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j)
                spread = std::max(spread, norm_sq(g.values[s[i]] - g.values[s[j]]));
        if (spread == 0) continue;
        Rational hmin = -1;
        for (std::size_t i = 0; i < s.size(); ++i) {
            std::vector<QVec> rest;
            for (std::size_t j = 0; j < s.size(); ++j)
                if (j != i) rest.push_back(pts[j]);
            Rational h = dist_sq_to_affine_hull(pts[i], rest);
            if (hmin < 0 || h < hmin) hmin = h;
        }
        const Rational dim = static_cast<long>(s.size() - 1);
        best = std::max(best, Rational(dim * dim * spread / hmin));
    }
    return best;
}

std::optional<Rational> stage_radius_sq(const Rational& lipschitz_sq, const Rational& d_sq)
{
    if (lipschitz_sq == 0) return std::nullopt;
    return d_sq / (4 * lipschitz_sq);
}

namespace {

// Edge of K parametrized along its image edge of L: t = weight of the vertex
// over the second vertex of the image.
struct EdgeParam {
    Simplex kedge;
    Simplex ledge;
    bool flipped = false;  // kedge[0] maps to ledge[1]

    BaryPoint point(const Rational& t) const
    {
        BaryPoint p;
        Rational w0 = flipped ? t : 1 - t;
        Rational w1 = 1 - w0;
        if (w0 != 0) p.emplace_back(kedge[0], w0);
        if (w1 != 0) p.emplace_back(kedge[1], w1);
        return p;
    }
    int vertex_at(int end) const  // end 0: t = 0, end 1: t = 1
    {
        return (end == 0) != flipped ? kedge[0] : kedge[1];
    }
};

std::vector<EdgeParam> edge_params(const SimplicialMap& f)
{
    std::vector<EdgeParam> out;
    for (const auto& e : f.source().simplices(1)) {
        EdgeParam p;
        p.kedge = e;
        p.ledge = f.image(e);
        p.flipped = f(e[0]) > f(e[1]);
        out.push_back(p);
    }
    return out;
}

// Parameters of subdivision vertices strictly inside each K edge.
std::vector<std::vector<Rational>> breakpoints(const Lift& g, const std::vector<EdgeParam>& edges,
                                               const SimplicialComplex& k)
{
    std::vector<std::vector<Rational>> out(edges.size());
    for (const auto& p : g.record.vertex_coords) {
        if (p.size() != 2) continue;
        Simplex sup = bary_support(p);
        auto idx = k.index_of(sup);
        if (!idx) continue;
        const EdgeParam& e = edges[*idx];
        int far = e.vertex_at(1);
        Rational t = p[0].first == far ? p[0].second : p[1].second;
        out[*idx].push_back(t);
    }
    for (auto& v : out) std::sort(v.begin(), v.end());
    return out;
}

std::string point_name(const SimplicialComplex& k, const BaryPoint& p)
{
    std::string s;
    for (const auto& [v, w] : p) s += (s.empty() ? "" : "+") + format_rational(w) + "*" + k.name(v);
    return s;
}

}  // namespace

StageGap stage_gap(const SimplicialMap& f, const Lift& g, int stage, const Rational& margin)
{
    StageGap gap;
    auto consider = [&](const Rational& d, const BaryPoint& x, const BaryPoint& y) {
        if (gap.skip || d > gap.max_sq) gap.max_sq = d;
        if (gap.skip || d < gap.min_sq) {
            gap.min_sq = d;
            gap.argmin = std::make_pair(x, y);
        }
        gap.skip = false;
    };
    const SimplicialComplex& k = f.source();
    if (stage == 0) {
        for (int u = 0; u < k.num_vertices(); ++u)
            for (int v = u + 1; v < k.num_vertices(); ++v) {
                if (f(u) != f(v)) continue;
                BaryPoint x = bary_vertex(u), y = bary_vertex(v);
                consider(norm_sq(evaluate_lift(g, x) - evaluate_lift(g, y)), x, y);
            }
        return gap;
    }
    if (margin > 1 - margin) return gap;
    const auto edges = edge_params(f);
    const auto bps = breakpoints(g, edges, k);
    std::map<Simplex, std::vector<int>> over;
    for (std::size_t i = 0; i < edges.size(); ++i) over[edges[i].ledge].push_back(static_cast<int>(i));
    for (const auto& [ledge, list] : over)
        for (std::size_t a = 0; a < list.size(); ++a)
            for (std::size_t b = a + 1; b < list.size(); ++b) {
                const EdgeParam& ea = edges[list[a]];
                const EdgeParam& eb = edges[list[b]];
                std::set<Rational> ts{margin, 1 - margin};
                for (int idx : {list[a], list[b]})
                    for (const auto& t : bps[idx])
                        if (t > margin && t < 1 - margin) ts.insert(t);
                std::vector<Rational> tv(ts.begin(), ts.end());
                std::vector<QVec> diff;
                for (const auto& t : tv)
                    diff.push_back(evaluate_lift(g, ea.point(t)) - evaluate_lift(g, eb.point(t)));
                for (std::size_t i = 0; i < tv.size(); ++i) consider(norm_sq(diff[i]), ea.point(tv[i]), eb.point(tv[i]));
                // Interior minimum of the convex quadratic on each linear piece.
                for (std::size_t i = 0; i + 1 < tv.size(); ++i) {
                    QVec q = diff[i + 1] - diff[i];
                    Rational qq = norm_sq(q);
                    if (qq == 0) continue;
                    Rational s = -dot(diff[i], q) / qq;
                    if (s <= 0 || s >= 1) continue;
                    Rational t = tv[i] + s * (tv[i + 1] - tv[i]);
                    consider(norm_sq(diff[i] + s * q), ea.point(t), eb.point(t));
                }
            }
    return gap;
}

PlifyResult plify_lift(const SimplicialMap& f, const Lift& g, int jobs)
{
    const SimplicialComplex& k = f.source();
    if (k.dim() > 1)
        throw PreconditionError("UnsupportedDimension", "the cascade is implemented for sources of dimension at most 1");
    if (!f.is_non_degenerate()) throw PreconditionError("DegenerateMap", "f collapses an edge");
    {
        EmbeddingCertificate in = verify_embedding(f, g, jobs);
        if (!in.verdict) {
            std::string w = "f x g is not injective";
            if (in.counterexample) {
                const auto& [a, b] = *in.counterexample;
                w += " on simplices " + std::to_string(a.size()) + "/" + std::to_string(b.size()) + " of the lift";
                w += " {" + g.record.child->name(a[0]) + ",...} and {" + g.record.child->name(b[0]) + ",...}";
            }
            throw PreconditionError("InputNotInjective", w);
        }
    }

    PlifyResult res;
    const Rational lip = lipschitz_bound_sq(g);

    // Stage 0: uniform bisection of L edges, 2^t pieces per edge.
    StageGap gap0 = stage_gap(f, g, 0);
    StageTrace s0;
    s0.stage = 0;
    s0.skipped = gap0.skip;
    s0.d_sq = gap0.max_sq;
    s0.separation_sq = gap0.min_sq;
    s0.lipschitz_sq = lip;
    if (!gap0.skip && gap0.min_sq == 0)
        throw PreconditionError("InputNotInjective", "identified vertices " + point_name(k, gap0.argmin->first) +
                                                         " and " + point_name(k, gap0.argmin->second) +
                                                         " have equal lift values");
    int t = 0;
    if (!gap0.skip) {
        s0.radius_sq = stage_radius_sq(lip, gap0.min_sq);
        if (s0.radius_sq) {
            // Derived edges of K_0' have squared length 2 / 4^(t+1) in the standard metric.
            Rational len = Rational(2, 4);
            while (!(len < *s0.radius_sq)) {
                len /= 4;
                if (++t > 60) throw ContractViolation("stage 0 refinement did not terminate");
            }
        }
    }
    const long pieces0 = 1L << t;
    s0.refinement = pieces0;
    const Rational a = Rational(1, 2 * pieces0);
    const std::size_t nedges = k.count(1);
    s0.vertices = static_cast<std::size_t>(k.num_vertices()) + nedges * static_cast<std::size_t>(2 * pieces0 - 1);
    s0.cells = s0.vertices + nedges * static_cast<std::size_t>(2 * pieces0);
    res.stages.push_back(s0);

    // Stage 1: refine the free interval (a, 1 - a) of every edge with step 2a / M.
    StageTrace s1;
    s1.stage = 1;
    s1.lipschitz_sq = lip;
    long m = 1;
    if (k.dim() == 1) {
        StageGap gap1 = stage_gap(f, g, 1, a);
        s1.skipped = gap1.skip;
        s1.d_sq = gap1.max_sq;
        s1.separation_sq = gap1.min_sq;
        if (!gap1.skip && gap1.min_sq == 0)
            throw PreconditionError("InputNotInjective", "identified points " + point_name(k, gap1.argmin->first) +
                                                             " and " + point_name(k, gap1.argmin->second) +
                                                             " have equal lift values");
        if (!gap1.skip) {
            s1.radius_sq = stage_radius_sq(lip, gap1.min_sq);
            if (s1.radius_sq && a < 1 - a) {
                Rational h = 2 * a;
                while (!(2 * h * h < *s1.radius_sq)) {
                    h /= 2;
                    m *= 2;
                    if (m > (1L << 40)) throw ContractViolation("stage 1 refinement did not terminate");
                }
            }
        }
    } else {
        s1.skipped = true;
    }
    s1.refinement = m;
    const Rational h = 2 * a / m;
    const long steps = 2 * pieces0 * m;  // 1 / h
    if (static_cast<double>(steps) * static_cast<double>(nedges) > 4e6)
        throw PreconditionError("RefinementTooLarge", "stage 1 would create more than 4e6 vertices");

    // K_n': vertices of K, then per edge the K_1 vertices and derived points in parameter order.
    const auto edges = edge_params(f);
    std::vector<std::string> names = k.names();
    std::vector<BaryPoint> coords;
    for (int v = 0; v < k.num_vertices(); ++v) coords.push_back(bary_vertex(v));
    std::vector<bool> is_k1(k.num_vertices(), true);
    std::vector<std::pair<Simplex, Rational>> key;  // image simplex and parameter, for K_1 vertices
    for (int v = 0; v < k.num_vertices(); ++v) key.emplace_back(Simplex{f(v)}, Rational(0));
    std::vector<Simplex> segs;
    std::vector<std::vector<int>> edge_chain(edges.size());  // K_n' vertices along each edge, by parameter
    std::vector<std::vector<Rational>> edge_chain_t(edges.size());
    for (std::size_t ei = 0; ei < edges.size(); ++ei) {
        const EdgeParam& e = edges[ei];
        std::vector<Rational> k1;  // K_1 parameters, including 0 and 1
        k1.push_back(0);
        for (long j = 1; j < steps; ++j) {
            Rational tj = Rational(j) * h;
            if (tj > a && tj < 1 - a) k1.push_back(tj);
        }
        k1.push_back(1);
        std::vector<std::pair<Rational, bool>> chain;  // (parameter, is K_1 vertex)
        for (std::size_t i = 0; i < k1.size(); ++i) {
            chain.emplace_back(k1[i], true);
            if (i + 1 == k1.size()) break;
            Rational dpt;
            if (i == 0 && i + 2 == k1.size()) dpt = Rational(1, 2);
            else if (i == 0) dpt = a;
            else if (i + 2 == k1.size()) dpt = 1 - a;
            else dpt = (k1[i] + k1[i + 1]) / 2;
            chain.emplace_back(dpt, false);
        }
        int prev = -1;
        for (const auto& [tp, vertex] : chain) {
            int id;
            if (tp == 0) id = e.vertex_at(0);
            else if (tp == 1) id = e.vertex_at(1);
            else {
                id = static_cast<int>(coords.size());
                coords.push_back(e.point(tp));
                names.push_back(k.name(e.kedge[0]) + "_" + k.name(e.kedge[1]) + "@" + format_rational(tp) +
                                (vertex ? "" : "'"));
                is_k1.push_back(vertex);
                key.emplace_back(e.ledge, tp);
            }
            if (prev >= 0) segs.push_back(make_simplex({prev, id}));
            edge_chain[ei].push_back(id);
            edge_chain_t[ei].push_back(tp);
            prev = id;
        }
    }
    auto kn = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_simplices(names, segs));
    s1.vertices = static_cast<std::size_t>(kn->num_vertices());
    s1.cells = kn->size();
    res.stages.push_back(s1);

    Lift g1;
    g1.k = g.k;
    g1.record.parent = g.record.parent;
    g1.record.child = kn;
    g1.record.vertex_coords = coords;
    for (const auto& p : coords) g1.values.push_back(evaluate_lift(g, p));
    res.vertex_agreement = true;
    for (int v = 0; v < kn->num_vertices(); ++v)
        if (g1.values[v] != evaluate_lift(g, g1.record.vertex_coords[v])) res.vertex_agreement = false;

    // Hull disjointness of g-images of derived stars of identified K_1 vertices.
    const auto bps = breakpoints(g, edges, k);
    std::vector<std::vector<QVec>> star_pts(kn->num_vertices());
    for (std::size_t ei = 0; ei < edges.size(); ++ei) {
        const auto& ch = edge_chain[ei];
        const auto& tv = edge_chain_t[ei];
        for (std::size_t i = 0; i < ch.size(); ++i) {
            if (!is_k1[ch[i]]) continue;
            for (int side : {-1, 1}) {
                long j = static_cast<long>(i) + side;
                if (j < 0 || j >= static_cast<long>(ch.size())) continue;
                Rational lo = std::min(tv[i], tv[j]), hi = std::max(tv[i], tv[j]);
                star_pts[ch[i]].push_back(g1.values[ch[j]]);
                for (const auto& b : bps[ei])
                    if (b > lo && b < hi) star_pts[ch[i]].push_back(evaluate_lift(g, edges[ei].point(b)));
            }
        }
    }
    for (int v = 0; v < kn->num_vertices(); ++v)
        if (is_k1[v]) star_pts[v].push_back(g1.values[v]);
    std::map<std::pair<Simplex, Rational>, std::vector<int>> fibres;
    for (int v = 0; v < kn->num_vertices(); ++v)
        if (is_k1[v]) fibres[key[v]].push_back(v);
    res.hulls_disjoint = true;
    for (const auto& [kk, list] : fibres)
        for (std::size_t i = 0; i < list.size(); ++i)
            for (std::size_t j = i + 1; j < list.size(); ++j) {
                ++res.hull_pairs_checked;
                if (hulls_intersect(star_pts[list[i]], star_pts[list[j]])) res.hulls_disjoint = false;
            }

    // Protected stars: the derived star of each original vertex is the same
    // point set in K_0' (ends at parameter a) and in K_n'.
    res.stars_preserved = true;
    for (int v = 0; v < k.num_vertices(); ++v) {
        std::set<BaryPoint> before, after;
        for (const auto& e : edges) {
            if (e.vertex_at(0) == v) before.insert(e.point(a));
            if (e.vertex_at(1) == v) before.insert(e.point(1 - a));
        }
        for (int w : kn->neighbours(v)) after.insert(coords[w]);
        if (before != after) res.stars_preserved = false;
    }

    res.certificate = verify_embedding(f, g1, jobs);
    if (!res.certificate.verdict) throw ContractViolation("linearized lift failed the embedding certificate");
    res.lift = std::move(g1);
    return res;
}

}  // namespace prem
