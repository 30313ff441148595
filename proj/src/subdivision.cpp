#include "prem/subdivision.hpp"

#include "prem/linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace prem {

Simplex bary_support(const BaryPoint& p)
{
    Simplex s;
    s.reserve(p.size());
    for (const auto& [v, w] : p) s.push_back(v);
    return s;
}

BaryPoint bary_vertex(int v) { return {{v, Rational(1)}}; }

BaryPoint bary_combine(const std::vector<std::pair<Rational, const BaryPoint*>>& terms)
{
    std::map<int, Rational> acc;
    for (const auto& [w, p] : terms)
        for (const auto& [v, x] : *p) acc[v] += w * x;
    BaryPoint out;
    for (auto& [v, x] : acc)
        if (x != 0) out.emplace_back(v, x);
    return out;
}

// ---------------------------------------------------------------------------

Simplex SubdivisionRecord::carrier(const Simplex& child_simplex) const
{
    Simplex s;
    for (int v : child_simplex) s = simplex_union(s, bary_support(vertex_coords.at(v)));
    return s;
}

bool SubdivisionRecord::sound() const
{
    if (static_cast<int>(vertex_coords.size()) != child->num_vertices()) return false;
    for (const auto& p : vertex_coords) {
        Rational total = 0;
        for (const auto& [v, w] : p) {
            if (w <= 0 || v < 0 || v >= parent->num_vertices()) return false;
            total += w;
        }
        if (total != 1) return false;
    }
    for (const auto& s : child->maximal_simplices())
        if (!parent->contains(carrier(s))) return false;
    return true;
}

QVec SubdivisionRecord::realize(int child_vertex, const GeometricComplex& parent_geom) const
{
    QVec x(parent_geom.ambient_dim(), Rational(0));
    for (const auto& [v, w] : vertex_coords.at(child_vertex)) x = x + w * parent_geom.coord(v);
    return x;
}

GeometricComplex SubdivisionRecord::realize(const GeometricComplex& parent_geom) const
{
    std::vector<QVec> coords;
    coords.reserve(child->num_vertices());
    for (int v = 0; v < child->num_vertices(); ++v) coords.push_back(realize(v, parent_geom));
    return GeometricComplex(child, std::move(coords));
}

std::optional<std::pair<Simplex, QVec>> SubdivisionRecord::locate(const BaryPoint& p) const
{
    const Simplex support = bary_support(p);
    for (const auto& s : child->maximal_simplices()) {
        const Simplex car = carrier(s);
        if (!is_face(support, car)) continue;
        // Rows: carrier vertices. Columns: child vertices of s.
        QMatrix a(car.size(), QVec(s.size(), Rational(0)));
        QVec b(car.size(), Rational(0));
        for (std::size_t j = 0; j < s.size(); ++j)
            for (const auto& [v, w] : vertex_coords[s[j]]) {
                auto pos = std::lower_bound(car.begin(), car.end(), v) - car.begin();
                a[pos][j] = w;
            }
        for (const auto& [v, w] : p) b[std::lower_bound(car.begin(), car.end(), v) - car.begin()] = w;
        auto sol = solve(a, b);
        if (!sol) continue;
        bool nonneg = std::all_of(sol->begin(), sol->end(), [](const Rational& x) { return x >= 0; });
        if (nonneg) return std::make_pair(s, *sol);
    }
    return std::nullopt;
}

SubdivisionRecord identity_subdivision(std::shared_ptr<const SimplicialComplex> c)
{
    SubdivisionRecord r;
    r.parent = c;
    r.child = c;
    for (int v = 0; v < c->num_vertices(); ++v) r.vertex_coords.push_back(bary_vertex(v));
    return r;
}

SubdivisionRecord compose(const SubdivisionRecord& first, const SubdivisionRecord& second)
{
    if (first.child.get() != second.parent.get() && !(*first.child == *second.parent))
        throw std::invalid_argument("compose: subdivisions do not chain");
    SubdivisionRecord r;
    r.parent = first.parent;
    r.child = second.child;
    for (const auto& p : second.vertex_coords) {
        std::vector<std::pair<Rational, const BaryPoint*>> terms;
        for (const auto& [v, w] : p) terms.emplace_back(w, &first.vertex_coords[v]);
        r.vertex_coords.push_back(bary_combine(terms));
    }
    return r;
}

// ---------------------------------------------------------------------------

std::vector<Simplex> barycentric_vertex_simplices(const SimplicialComplex& c) { return c.all_simplices(); }

namespace {

std::string compound_name(const SimplicialComplex& c, const Simplex& s)
{
    if (s.size() == 1) return c.name(s[0]);
    std::string n = "(";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) n += ',';
        n += c.name(s[i]);
    }
    return n + ")";
}

}  // namespace

SubdivisionRecord barycentric_subdivide(std::shared_ptr<const SimplicialComplex> c)
{
    const std::vector<Simplex> cells = c->all_simplices();
    std::vector<std::size_t> offset(c->dim() + 2, 0);
    for (int d = 0; d <= c->dim(); ++d) offset[d + 1] = offset[d] + c->count(d);
    auto child_index = [&](const Simplex& s) {
        return static_cast<int>(offset[s.size() - 1] + static_cast<std::size_t>(*c->index_of(s)));
    };

    std::vector<std::string> names;
    std::unordered_set<std::string> used;
    for (const auto& s : cells) {
        std::string n = compound_name(*c, s);
        for (int k = 1; used.count(n); ++k) n = compound_name(*c, s) + "#" + std::to_string(k);
        used.insert(n);
        names.push_back(std::move(n));
    }

    std::vector<Simplex> flags;
    for (const auto& m : c->maximal_simplices()) {
        std::vector<int> perm = m;
        do {
            Simplex chain;
            Simplex face;
            for (int v : perm) {
                face.insert(std::upper_bound(face.begin(), face.end(), v), v);
                chain.push_back(child_index(face));
            }
            flags.push_back(make_simplex(chain));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    SubdivisionRecord r;
    r.parent = c;
    r.child = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_simplices(std::move(names), flags));
    for (const auto& s : cells) {
        BaryPoint p;
        for (int v : s) p.emplace_back(v, Rational(1, static_cast<long>(s.size())));
        r.vertex_coords.push_back(std::move(p));
    }
    return r;
}

SubdivisionRecord relative_derived_subdivide(const GeometricComplex& g, const std::vector<bool>& keep_vertices,
                                             const Rational& r)
{
    if (r <= 0) throw std::invalid_argument("relative_derived_subdivide: radius must be positive");
    const SimplicialComplex& c = g.complex();
    if (static_cast<int>(keep_vertices.size()) != c.num_vertices())
        throw std::invalid_argument("relative_derived_subdivide: keep mask size mismatch");
    const Rational r2 = r * r;

    std::vector<Simplex> maxes = c.maximal_simplices();
    std::vector<QVec> coords = g.coords();
    std::vector<BaryPoint> bary;
    std::vector<bool> keep = keep_vertices;
    std::vector<std::string> names = c.names();
    std::unordered_set<std::string> used(names.begin(), names.end());
    for (int v = 0; v < c.num_vertices(); ++v) bary.push_back(bary_vertex(v));

    constexpr int kMaxBisections = 1 << 20;
    for (int step = 0;; ++step) {
        if (step >= kMaxBisections) throw std::runtime_error("relative_derived_subdivide: bisection limit reached");
        int ba = -1, bb = -1;
        Rational best = r2;
        for (const auto& s : maxes)
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (keep[s[i]]) continue;
                for (std::size_t j = i + 1; j < s.size(); ++j) {
                    if (keep[s[j]]) continue;
                    Rational d = norm_sq(coords[s[i]] - coords[s[j]]);
                    bool better = d > best || (d == best && ba >= 0 &&
                                               std::make_pair(s[i], s[j]) < std::make_pair(ba, bb));
                    if (better) {
                        best = d;
                        ba = s[i];
                        bb = s[j];
                    }
                }
            }
        if (ba < 0) break;

        const int m = static_cast<int>(coords.size());
        coords.push_back(Rational(1, 2) * (coords[ba] + coords[bb]));
        bary.push_back(bary_combine({{Rational(1, 2), &bary[ba]}, {Rational(1, 2), &bary[bb]}}));
        keep.push_back(false);
        std::string n = "m" + std::to_string(m);
        for (int k = 1; used.count(n); ++k) n = "m" + std::to_string(m) + "_" + std::to_string(k);
        used.insert(n);
        names.push_back(std::move(n));

        std::vector<Simplex> next;
        next.reserve(maxes.size() + 4);
        for (auto& s : maxes) {
            bool has_a = std::binary_search(s.begin(), s.end(), ba);
            bool has_b = std::binary_search(s.begin(), s.end(), bb);
            if (!(has_a && has_b)) {
                next.push_back(std::move(s));
                continue;
            }
            for (int drop : {ba, bb}) {
                Simplex t;
                for (int v : s)
                    if (v != drop) t.push_back(v);
                t.push_back(m);
                next.push_back(make_simplex(t));
            }
        }
        maxes = std::move(next);
    }

    SubdivisionRecord rec;
    rec.parent = g.complex_ptr();
    rec.child = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_simplices(std::move(names), maxes));
    rec.vertex_coords = std::move(bary);
    return rec;
}

SubdividedMap subdivide_map(const SimplicialMap& f)
{
    if (!f.is_non_degenerate()) throw std::invalid_argument("subdivide_map: map is degenerate");
    SubdivisionRecord sk = barycentric_subdivide(f.source_ptr());
    SubdivisionRecord sl = barycentric_subdivide(f.target_ptr());
    const SimplicialComplex& l = f.target();
    std::vector<std::size_t> offset(l.dim() + 2, 0);
    for (int d = 0; d <= l.dim(); ++d) offset[d + 1] = offset[d] + l.count(d);
    std::vector<int> vmap;
    for (const auto& s : f.source().all_simplices()) {
        Simplex img = f.image(s);
        vmap.push_back(static_cast<int>(offset[img.size() - 1] + static_cast<std::size_t>(*l.index_of(img))));
    }
    SimplicialMap m(sk.child, sl.child, std::move(vmap));
    return SubdividedMap{std::move(m), std::move(sk), std::move(sl)};
}

// ---------------------------------------------------------------------------

SemiLinearMap SemiLinearMap::from_simplicial(const SimplicialMap& f)
{
    SemiLinearMap s;
    s.source = f.source_ptr();
    s.target = f.target_ptr();
    for (int v = 0; v < f.source().num_vertices(); ++v) s.vertex_images.push_back(bary_vertex(f(v)));
    return s;
}

Simplex carrier_of(const SemiLinearMap& f, const Simplex& s)
{
    Simplex car;
    for (int v : s) {
        const BaryPoint& p = f.vertex_images.at(v);
        Rational total = 0;
        for (const auto& [w, x] : p) {
            if (x <= 0 || w < 0 || w >= f.target->num_vertices())
                throw std::invalid_argument("carrier_of: malformed vertex image");
            total += x;
        }
        if (total != 1) throw std::invalid_argument("carrier_of: vertex image weights do not sum to 1");
        car = simplex_union(car, bary_support(p));
    }
    if (!f.target->contains(car)) throw std::invalid_argument("carrier_of: image not inside a target simplex");
    return car;
}

std::vector<Simplex> carrier_map(const SemiLinearMap& f)
{
    if (static_cast<int>(f.vertex_images.size()) != f.source->num_vertices())
        throw std::invalid_argument("carrier_map: vertex image count mismatch");
    std::vector<Simplex> out;
    for (const auto& s : f.source->all_simplices()) out.push_back(carrier_of(f, s));
    return out;
}

bool combinatorially_equivalent(const SemiLinearMap& f, const SemiLinearMap& g)
{
    if (!(*f.source == *g.source) || !(*f.target == *g.target))
        throw std::invalid_argument("combinatorially_equivalent: maps have different source or target");
    return carrier_map(f) == carrier_map(g);
}

std::vector<int> subdivide_automorphism(const SimplicialComplex& c, const std::vector<int>& t)
{
    std::vector<std::size_t> offset(c.dim() + 2, 0);
    for (int d = 0; d <= c.dim(); ++d) offset[d + 1] = offset[d] + c.count(d);
    std::vector<int> out;
    for (const auto& s : c.all_simplices()) {
        Simplex img;
        for (int v : s) img.push_back(t[v]);
        std::sort(img.begin(), img.end());
        out.push_back(static_cast<int>(offset[img.size() - 1] + static_cast<std::size_t>(*c.index_of(img))));
    }
    return out;
}


}  // namespace prem
