#include "prem/complex.hpp"

#include "prem/errors.hpp"
#include "prem/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace prem {

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept
{
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int v : s) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

Simplex make_simplex(std::vector<int> vertices)
{
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
        throw std::invalid_argument("simplex with repeated vertex");
    return vertices;
}

bool is_face(const Simplex& face, const Simplex& s)
{
    return std::includes(s.begin(), s.end(), face.begin(), face.end());
}

Simplex simplex_union(const Simplex& a, const Simplex& b)
{
    Simplex r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

Simplex simplex_intersection(const Simplex& a, const Simplex& b)
{
    Simplex r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

Simplex simplex_difference(const Simplex& a, const Simplex& b)
{
    Simplex r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

bool disjoint(const Simplex& a, const Simplex& b)
{
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return false;
        if (*i < *j) ++i; else ++j;
    }
    return true;
}

// ---------------------------------------------------------------------------

SimplicialComplex SimplicialComplex::from_simplices(std::vector<std::string> names, const std::vector<Simplex>& simplices)
{
    SimplicialComplex c;
    c.names_ = std::move(names);
    const int n = static_cast<int>(c.names_.size());
    std::vector<std::unordered_set<Simplex, SimplexHash>> sets;
    auto add = [&](const Simplex& s) {
        std::size_t d = s.size() - 1;
        if (sets.size() <= d) sets.resize(d + 1);
        sets[d].insert(s);
    };
    for (int v = 0; v < n; ++v) add({v});
    for (const auto& raw : simplices) {
        Simplex s = make_simplex(raw);
        if (s.empty()) throw std::invalid_argument("empty simplex");
        if (s.front() < 0 || s.back() >= n) throw std::invalid_argument("simplex vertex out of range");
        if (s.size() > 30) throw std::invalid_argument("simplex dimension too large");
        if (s.size() - 1 < sets.size() && sets[s.size() - 1].count(s)) continue;
        const unsigned k = static_cast<unsigned>(s.size());
        for (unsigned long mask = 1; mask < (1UL << k); ++mask) {
            Simplex f;
            for (unsigned i = 0; i < k; ++i)
                if (mask & (1UL << i)) f.push_back(s[i]);
            add(f);
        }
    }
    for (auto& set : sets) {
        std::vector<Simplex> list(set.begin(), set.end());
        std::sort(list.begin(), list.end());
        c.by_dim_.push_back(std::move(list));
    }
    c.rebuild_index();
    return c;
}

void SimplicialComplex::rebuild_index()
{
    name_index_.clear();
    for (int v = 0; v < num_vertices(); ++v) {
        if (!name_index_.emplace(names_[v], v).second)
            throw std::invalid_argument("duplicate vertex name '" + names_[v] + "'");
    }
    index_.assign(by_dim_.size(), {});
    for (std::size_t d = 0; d < by_dim_.size(); ++d) {
        index_[d].reserve(by_dim_[d].size());
        for (std::size_t i = 0; i < by_dim_[d].size(); ++i) index_[d].emplace(by_dim_[d][i], static_cast<int>(i));
    }
}

std::size_t SimplicialComplex::size() const
{
    std::size_t total = 0;
    for (const auto& l : by_dim_) total += l.size();
    return total;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int d) const
{
    static const std::vector<Simplex> empty;
    if (d < 0 || d > dim()) return empty;
    return by_dim_[d];
}

std::optional<int> SimplicialComplex::vertex_index(const std::string& name) const
{
    auto it = name_index_.find(name);
    if (it == name_index_.end()) return std::nullopt;
    return it->second;
}

bool SimplicialComplex::contains(const Simplex& s) const { return index_of(s).has_value(); }

std::optional<int> SimplicialComplex::index_of(const Simplex& s) const
{
    if (s.empty() || s.size() > by_dim_.size()) return std::nullopt;
    const auto& idx = index_[s.size() - 1];
    auto it = idx.find(s);
    if (it == idx.end()) return std::nullopt;
    return it->second;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const
{
    std::vector<Simplex> out;
    for (int d = 0; d <= dim(); ++d) {
        std::vector<bool> covered(by_dim_[d].size(), false);
        if (d < dim()) {
            for (const auto& t : by_dim_[d + 1])
                for (std::size_t drop = 0; drop < t.size(); ++drop) {
                    Simplex f = t;
                    f.erase(f.begin() + static_cast<long>(drop));
                    covered[index_[d].at(f)] = true;
                }
        }
        for (std::size_t i = 0; i < by_dim_[d].size(); ++i)
            if (!covered[i]) out.push_back(by_dim_[d][i]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Simplex> SimplicialComplex::all_simplices() const
{
    std::vector<Simplex> out;
    for (const auto& l : by_dim_) out.insert(out.end(), l.begin(), l.end());
    return out;
}

std::pair<SimplicialComplex, std::vector<int>> SimplicialComplex::induced(const std::vector<bool>& keep) const
{
    std::vector<int> new_index(num_vertices(), -1);
    std::vector<int> old_of_new;
    std::vector<std::string> names;
    for (int v = 0; v < num_vertices(); ++v) {
        if (!keep[v]) continue;
        new_index[v] = static_cast<int>(old_of_new.size());
        old_of_new.push_back(v);
        names.push_back(names_[v]);
    }
    std::vector<Simplex> kept;
    for (const auto& l : by_dim_)
        for (const auto& s : l) {
            bool all = std::all_of(s.begin(), s.end(), [&](int v) { return keep[v]; });
            if (!all) continue;
            Simplex t;
            for (int v : s) t.push_back(new_index[v]);
            kept.push_back(t);
        }
    return {from_simplices(std::move(names), kept), old_of_new};
}

std::vector<int> SimplicialComplex::neighbours(int v) const
{
    std::vector<int> out;
    for (const auto& e : simplices(1)) {
        if (e[0] == v) out.push_back(e[1]);
        else if (e[1] == v) out.push_back(e[0]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Simplex> SimplicialComplex::star(int v) const
{
    std::vector<Simplex> out;
    for (const auto& l : by_dim_)
        for (const auto& s : l)
            if (std::binary_search(s.begin(), s.end(), v)) out.push_back(s);
    return out;
}

std::vector<Simplex> SimplicialComplex::link(const Simplex& s) const
{
    std::vector<Simplex> out;
    for (const auto& l : by_dim_)
        for (const auto& t : l) {
            if (!disjoint(s, t)) continue;
            if (contains(simplex_union(s, t))) out.push_back(t);
        }
    return out;
}

long SimplicialComplex::euler_characteristic() const
{
    long chi = 0;
    for (std::size_t d = 0; d < by_dim_.size(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(by_dim_[d].size());
    return chi;
}

// ---------------------------------------------------------------------------

ValidationReport validate_complex(const RawComplex& raw)
{
    ValidationReport rep;
    const int n = static_cast<int>(raw.names.size());
    std::set<Simplex> seen;
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < raw.simplices.size(); ++i) {
        Simplex s = raw.simplices[i];
        std::sort(s.begin(), s.end());
        bool bad = s.empty() || s.front() < 0 || s.back() >= n ||
                   std::adjacent_find(s.begin(), s.end()) != s.end();
        if (bad) {
            rep.bad_simplices.push_back(static_cast<int>(i));
            continue;
        }
        if (!seen.insert(s).second) rep.duplicates.push_back(s);
        for (int v : s) used[v] = true;
        rep.dim = std::max(rep.dim, static_cast<int>(s.size()) - 1);
    }
    std::set<Simplex> missing;
    for (const auto& s : seen) {
        if (s.size() < 2) continue;
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            Simplex f = s;
            f.erase(f.begin() + static_cast<long>(drop));
            if (!seen.count(f)) missing.insert(f);
        }
    }
    rep.missing_faces.assign(missing.begin(), missing.end());
    for (int v = 0; v < n; ++v)
        if (!used[v]) rep.orphan_vertices.push_back(v);
    return rep;
}

// ---------------------------------------------------------------------------

SimplicialMap::SimplicialMap(std::shared_ptr<const SimplicialComplex> source,
                             std::shared_ptr<const SimplicialComplex> target, std::vector<int> vertex_map)
    : source_(std::move(source)), target_(std::move(target)), vmap_(std::move(vertex_map))
{
    if (static_cast<int>(vmap_.size()) != source_->num_vertices())
        throw std::invalid_argument("vertex map size does not match source vertex count");
    for (int w : vmap_)
        if (w < 0 || w >= target_->num_vertices()) throw std::invalid_argument("vertex map image out of range");
    for (int d = 1; d <= source_->dim(); ++d)
        for (const auto& s : source_->simplices(d))
            if (!target_->contains(image(s)))
                throw std::invalid_argument("image of a simplex is not a simplex of the target");
}

Simplex SimplicialMap::image(const Simplex& s) const
{
    Simplex r;
    r.reserve(s.size());
    for (int v : s) r.push_back(vmap_[v]);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

std::optional<Simplex> SimplicialMap::degenerate_witness() const
{
    for (const auto& e : source_->simplices(1))
        if (vmap_[e[0]] == vmap_[e[1]]) return e;
    return std::nullopt;
}

bool SimplicialMap::is_non_degenerate() const { return !degenerate_witness().has_value(); }

// ---------------------------------------------------------------------------

GeometricComplex::GeometricComplex(std::shared_ptr<const SimplicialComplex> complex, std::vector<QVec> coords)
    : complex_(std::move(complex)), coords_(std::move(coords))
{
    if (static_cast<int>(coords_.size()) != complex_->num_vertices())
        throw std::invalid_argument("coordinate count does not match vertex count");
    ambient_ = coords_.empty() ? 0 : static_cast<int>(coords_[0].size());
    for (const auto& c : coords_)
        if (static_cast<int>(c.size()) != ambient_) throw std::invalid_argument("inconsistent coordinate dimension");
    for (const auto& s : complex_->maximal_simplices())
        if (!affinely_independent(points(s)))
            throw std::invalid_argument("simplex is not affinely embedded");
}

std::vector<QVec> GeometricComplex::points(const Simplex& s) const
{
    std::vector<QVec> pts;
    pts.reserve(s.size());
    for (int v : s) pts.push_back(coords_.at(v));
    return pts;
}

GeometricComplex GeometricComplex::standard(std::shared_ptr<const SimplicialComplex> complex)
{
    const int n = complex->num_vertices();
    std::vector<QVec> coords(n, QVec(n, Rational(0)));
    for (int v = 0; v < n; ++v) coords[v][v] = 1;
    return GeometricComplex(std::move(complex), std::move(coords));
}

Rational simplex_diameter_sq(const GeometricComplex& g, const Simplex& s)
{
    if (!g.complex().contains(s)) throw std::invalid_argument("simplex_diameter_sq: unknown simplex");
    Rational best = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            Rational d = norm_sq(g.coord(s[i]) - g.coord(s[j]));
            if (d > best) best = d;
        }
    return best;
}

// ---------------------------------------------------------------------------

bool is_simplicial_automorphism(const SimplicialComplex& c, const std::vector<int>& perm)
{
    if (static_cast<int>(perm.size()) != c.num_vertices()) return false;
    std::vector<bool> hit(perm.size(), false);
    for (int w : perm) {
        if (w < 0 || w >= c.num_vertices() || hit[w]) return false;
        hit[w] = true;
    }
    for (int d = 1; d <= c.dim(); ++d)
        for (const auto& s : c.simplices(d)) {
            Simplex t;
            for (int v : s) t.push_back(perm[v]);
            std::sort(t.begin(), t.end());
            if (!c.contains(t)) return false;
        }
    return true;
}

OrbitQuotient orbit_quotient(const SimplicialComplex& c, const std::vector<int>& generator)
{
    if (!is_simplicial_automorphism(c, generator))
        throw std::invalid_argument("orbit_quotient: generator is not a simplicial automorphism");
    const int n = c.num_vertices();
    OrbitQuotient q;
    q.orbit_of.assign(n, -1);
    for (int v = 0; v < n; ++v) {
        if (q.orbit_of[v] >= 0) continue;
        int id = static_cast<int>(q.representative.size());
        q.representative.push_back(v);
        for (int w = v; q.orbit_of[w] < 0; w = generator[w]) q.orbit_of[w] = id;
    }

    auto apply = [&](const Simplex& s) {
        Simplex t;
        for (int v : s) t.push_back(generator[v]);
        std::sort(t.begin(), t.end());
        return t;
    };

    bool regular = true;
    std::map<Simplex, Simplex> first_of_image;  // orbit set -> a simplex realizing it
    std::vector<Simplex> images;
    for (const auto& s : c.all_simplices()) {
        Simplex img;
        for (int v : s) img.push_back(q.orbit_of[v]);
        std::sort(img.begin(), img.end());
        if (std::adjacent_find(img.begin(), img.end()) != img.end()) {
            regular = false;
            img.erase(std::unique(img.begin(), img.end()), img.end());
        }
        auto [it, fresh] = first_of_image.emplace(img, s);
        if (fresh) {
            images.push_back(img);
        } else if (regular && s.size() == img.size()) {
            // s must lie in the group orbit of the recorded simplex.
            bool found = false;
            Simplex t = it->second;
            do {
                if (t == s) { found = true; break; }
                t = apply(t);
            } while (t != it->second);
            if (!found) regular = false;
        }
    }
    std::vector<std::string> names;
    for (int r : q.representative) names.push_back(c.name(r));
    q.complex = SimplicialComplex::from_simplices(std::move(names), images);
    q.regular = regular;
    return q;
}

}  // namespace prem
