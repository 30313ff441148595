#include "prem/double_point.hpp"

#include "prem/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace prem {

namespace {

// Simplices of K grouped by their image; only groups with at least two members.
std::vector<std::vector<Simplex>> image_groups(const SimplicialMap& f, int dim)
{
    std::map<Simplex, std::vector<Simplex>> groups;
    for (const auto& s : f.source().simplices(dim)) groups[f.image(s)].push_back(s);
    std::vector<std::vector<Simplex>> out;
    for (auto& [img, list] : groups)
        if (list.size() >= 2) out.push_back(std::move(list));
    return out;
}

void require_non_degenerate(const SimplicialMap& f)
{
    if (auto w = f.degenerate_witness()) {
        std::string detail = "edge {" + f.source().name((*w)[0]) + "," + f.source().name((*w)[1]) + "} is collapsed";
        throw PreconditionError("DegenerateMap", detail);
    }
}

int find_root(std::vector<int>& parent, int x)
{
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
}

}  // namespace

std::pair<Simplex, Simplex> DoublePointComplex::sides(const Simplex& cell) const
{
    Simplex a, b;
    for (int p : cell) {
        a.push_back(pairs[p].first);
        b.push_back(pairs[p].second);
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return {a, b};
}

std::optional<int> DoublePointComplex::pair_index(int u, int v) const
{
    auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(u, v));
    if (it == pairs.end() || *it != std::make_pair(u, v)) return std::nullopt;
    return static_cast<int>(it - pairs.begin());
}

DoublePointComplex double_point_complex(const SimplicialMap& f)
{
    require_non_degenerate(f);
    const SimplicialComplex& k = f.source();
    DoublePointComplex d;
    d.base = std::make_shared<const SimplicialMap>(f);
    d.source_record = identity_subdivision(f.source_ptr());

    std::vector<std::vector<int>> fibre(f.target().num_vertices());
    for (int v = 0; v < k.num_vertices(); ++v) fibre[f(v)].push_back(v);
    for (const auto& fib : fibre)
        for (int u : fib)
            for (int v : fib)
                if (u != v) d.pairs.emplace_back(u, v);
    std::sort(d.pairs.begin(), d.pairs.end());

    std::vector<Simplex> cells;
    for (int dim = 1; dim <= k.dim(); ++dim)
        for (const auto& group : image_groups(f, dim))
            for (const auto& s : group)
                for (const auto& t : group) {
                    if (s == t || !disjoint(s, t)) continue;
                    Simplex cell;
                    for (int u : s) {
                        int v = *std::find_if(t.begin(), t.end(), [&](int w) { return f(w) == f(u); });
                        cell.push_back(*d.pair_index(u, v));
                    }
                    std::sort(cell.begin(), cell.end());
                    cells.push_back(std::move(cell));
                }

    std::vector<std::string> names;
    for (const auto& [u, v] : d.pairs) names.push_back(k.name(u) + "~" + k.name(v));
    d.complex = SimplicialComplex::from_simplices(std::move(names), cells);

    for (const auto& [u, v] : d.pairs) d.involution.push_back(*d.pair_index(v, u));

    const int n = d.complex.num_vertices();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& e : d.complex.simplices(1)) {
        int a = find_root(parent, e[0]), b = find_root(parent, e[1]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    d.component.assign(n, -1);
    std::map<int, int> label_of_root;
    for (int v = 0; v < n; ++v) {
        int r = find_root(parent, v);
        auto [it, fresh] = label_of_root.emplace(r, d.num_components);
        if (fresh) ++d.num_components;
        d.component[v] = it->second;
    }
    return d;
}

namespace {

// With fold_exempt, stars may share vertices lying on the fold locus.
bool star_condition(const SimplicialMap& f, bool fold_exempt)
{
    require_non_degenerate(f);
    const SimplicialComplex& k = f.source();
    std::vector<std::vector<int>> closed(k.num_vertices());
    for (int v = 0; v < k.num_vertices(); ++v) closed[v].push_back(v);
    for (const auto& e : k.simplices(1)) {
        closed[e[0]].push_back(e[1]);
        closed[e[1]].push_back(e[0]);
    }
    for (auto& c : closed) std::sort(c.begin(), c.end());
    std::vector<bool> on_fold(k.num_vertices(), false);
    if (fold_exempt)
        for (const auto& s : sigma_set(f))
            if (s.size() == 1) on_fold[s[0]] = true;
    std::vector<std::vector<int>> fibre(f.target().num_vertices());
    for (int v = 0; v < k.num_vertices(); ++v) fibre[f(v)].push_back(v);
    for (const auto& fib : fibre)
        for (std::size_t i = 0; i < fib.size(); ++i)
            for (std::size_t j = i + 1; j < fib.size(); ++j)
                for (int w : simplex_intersection(closed[fib[i]], closed[fib[j]]))
                    if (!fold_exempt || !on_fold[w]) return false;
    return true;
}

}  // namespace

bool check_star_condition(const SimplicialMap& f) { return star_condition(f, false); }

DoublePointComplex double_point_model(const SimplicialMap& f, int max_subdivisions)
{
    require_non_degenerate(f);
    SimplicialMap cur = f;
    SubdivisionRecord rec = identity_subdivision(f.source_ptr());
    for (int j = 0;; ++j) {
        if (star_condition(cur, true)) {
            DoublePointComplex d = double_point_complex(cur);
            d.source_record = std::move(rec);
            d.subdivisions = j;
            return d;
        }
        if (j == max_subdivisions) break;
        SubdividedMap sd = subdivide_map(cur);
        rec = compose(rec, sd.source_record);
        cur = sd.map;
    }
    throw PreconditionError("ModelInvalid", "star condition fails after " + std::to_string(max_subdivisions) +
                                                " barycentric subdivisions");
}

std::optional<TriplePointWitness> triple_point_witness(const SimplicialMap& f)
{
    require_non_degenerate(f);
    for (int dim = f.source().dim(); dim >= 0; --dim) {
        std::map<Simplex, std::vector<Simplex>> groups;
        for (const auto& s : f.source().simplices(dim)) groups[f.image(s)].push_back(s);
        for (const auto& [img, g] : groups) {
            if (g.size() < 3) continue;
            for (std::size_t a = 0; a < g.size(); ++a)
                for (std::size_t b = a + 1; b < g.size(); ++b) {
                    if (!disjoint(g[a], g[b])) continue;
                    for (std::size_t c = b + 1; c < g.size(); ++c)
                        if (disjoint(g[a], g[c]) && disjoint(g[b], g[c])) return TriplePointWitness{g[a], g[b], g[c]};
                }
        }
    }
    return std::nullopt;
}

std::vector<Simplex> sigma_set(const SimplicialMap& f)
{
    require_non_degenerate(f);
    std::set<Simplex> out;
    for (int dim = 1; dim <= f.source().dim(); ++dim)
        for (const auto& group : image_groups(f, dim))
            for (std::size_t i = 0; i < group.size(); ++i)
                for (std::size_t j = i + 1; j < group.size(); ++j) {
                    Simplex common = simplex_intersection(group[i], group[j]);
                    if (common.empty()) continue;
                    const unsigned n = static_cast<unsigned>(common.size());
                    for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
                        Simplex face;
                        for (unsigned b = 0; b < n; ++b)
                            if (mask & (1UL << b)) face.push_back(common[b]);
                        out.insert(face);
                    }
                }
    std::vector<Simplex> result(out.begin(), out.end());
    std::stable_sort(result.begin(), result.end(),
                     [](const Simplex& a, const Simplex& b) { return a.size() < b.size(); });
    return result;
}

bool is_simple_fold(const SimplicialMap& f)
{
    std::vector<bool> on_fold(f.source().num_vertices(), false);
    for (const auto& s : sigma_set(f))
        if (s.size() == 1) on_fold[s[0]] = true;
    std::vector<std::vector<int>> fibre(f.target().num_vertices());
    for (int v = 0; v < f.source().num_vertices(); ++v) fibre[f(v)].push_back(v);
    for (const auto& fib : fibre)
        for (int u : fib)
            for (int v : fib)
                if (u != v && on_fold[v]) return false;
    return true;
}

std::vector<DeltaComponent> invariant_components(const DoublePointComplex& d)
{
    std::vector<DeltaComponent> out(d.num_components);
    for (int c = 0; c < d.num_components; ++c) out[c].label = c;
    for (int v = 0; v < d.complex.num_vertices(); ++v) out[d.component[v]].vertices.push_back(v);
    for (auto& c : out) {
        c.partner = d.component[d.involution[c.vertices.front()]];
        c.invariant = c.partner == c.label;
    }
    return out;
}

}  // namespace prem
