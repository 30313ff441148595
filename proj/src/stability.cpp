#include "prem/stability.hpp"

#include "prem/errors.hpp"
#include "prem/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace prem {

namespace {

// Calls visit on every size-r index subset of [0, n) until it returns false.
template <class Visit>
bool for_each_subset(int n, int r, Visit visit)
{
    if (r > n || r <= 0) return true;
    std::vector<int> idx(r);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        if (!visit(idx)) return false;
        int i = r - 1;
        while (i >= 0 && idx[i] == n - r + i) --i;
        if (i < 0) return true;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
}

bool general_position_in(const std::vector<QVec>& points, int dim)
{
    const int n = static_cast<int>(points.size());
    const int r = std::min(n, dim + 1);
    return for_each_subset(n, r, [&](const std::vector<int>& idx) {
        std::vector<QVec> pts;
        for (int i : idx) pts.push_back(points[i]);
        return affinely_independent(pts);
    });
}

// Support of the barycentric coordinates of x in the smallest target simplex containing it.
std::optional<Simplex> locate_carrier(const GeometricComplex& g, const QVec& x)
{
    for (const auto& s : g.complex().maximal_simplices()) {
        const std::size_t d = static_cast<std::size_t>(g.ambient_dim());
        QMatrix a(d + 1, QVec(s.size(), Rational(0)));
        QVec b(d + 1, Rational(0));
        for (std::size_t j = 0; j < s.size(); ++j) {
            for (std::size_t r = 0; r < d; ++r) a[r][j] = g.coord(s[j])[r];
            a[d][j] = 1;
        }
        for (std::size_t r = 0; r < d; ++r) b[r] = x[r];
        b[d] = 1;
        auto sol = solve(a, b);
        if (!sol) continue;
        if (std::any_of(sol->begin(), sol->end(), [](const Rational& w) { return w < 0; })) continue;
        Simplex car;
        for (std::size_t j = 0; j < s.size(); ++j)
            if ((*sol)[j] != 0) car.push_back(s[j]);
        return car;
    }
    return std::nullopt;
}

}  // namespace

bool is_general_position_config(const std::vector<QVec>& points)
{
    if (points.empty()) return true;
    return general_position_in(points, static_cast<int>(points[0].size()));
}

GPhiReport in_G_phi(const LinearMapToRm& f, const GeometricComplex* target)
{
    const SimplicialComplex& k = *f.source;
    if (static_cast<int>(f.values.size()) != k.num_vertices())
        throw std::invalid_argument("in_G_phi: value count does not match the vertex count");
    GPhiReport rep;
    std::optional<GeometricComplex> own;
    if (!target) {
        rep.auto_target = true;
        Rational bound = 0;
        for (const auto& v : f.values)
            for (const auto& x : v) bound = std::max(bound, Rational(abs(x)));
        bound += 1;
        const Rational side = 2 * f.m * bound + 2 * bound;
        std::vector<QVec> corners(f.m + 1, QVec(f.m, -bound));
        for (int i = 0; i < f.m; ++i) corners[i + 1][i] += side;
        std::vector<std::string> names;
        Simplex all;
        for (int i = 0; i <= f.m; ++i) {
            names.push_back("T" + std::to_string(i));
            all.push_back(i);
        }
        auto c = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_simplices(names, {all}));
        own.emplace(c, corners);
        target = &*own;
    }
    if (target->ambient_dim() != f.m) throw std::invalid_argument("in_G_phi: target dimension differs from m");

    std::vector<Simplex> carrier(k.num_vertices());
    for (int v = 0; v < k.num_vertices(); ++v) {
        auto c = locate_carrier(*target, f.values[v]);
        if (!c) throw PreconditionError("OutsideTarget", "value of vertex " + k.name(v) + " is outside the target");
        carrier[v] = *c;
    }
    for (const auto& s : k.maximal_simplices()) {
        Simplex u;
        for (int v : s) u = simplex_union(u, carrier[v]);
        if (!target->complex().contains(u))
            throw PreconditionError("CarrierInconsistent", "a simplex of K does not map into one target simplex");
    }

    rep.in_g_phi = true;
    for (const auto& sigma : target->complex().all_simplices()) {
        ++rep.target_simplices_checked;
        std::vector<QVec> pts;
        for (int v = 0; v < k.num_vertices(); ++v)
            if (is_face(carrier[v], sigma)) pts.push_back(f.values[v]);
        if (!general_position_in(pts, static_cast<int>(sigma.size()) - 1)) {
            rep.in_g_phi = false;
            rep.failing = sigma;
            break;
        }
    }
    return rep;
}

StableToRReport stable_to_R_report(const LinearMapToRm& f)
{
    if (f.m != 1) throw std::invalid_argument("stable_to_R_report: m must be 1");
    const SimplicialComplex& k = *f.source;
    StableToRReport r;
    r.embeds_all_edges = true;
    for (const auto& e : k.simplices(1))
        if (f.values[e[0]] == f.values[e[1]]) {
            r.embeds_all_edges = false;
            r.collapsed_edge = e;
            break;
        }
    r.regularity_decided = k.dim() <= 2;

    for (int v = 0; v < k.num_vertices(); ++v) {
        const Rational& x = f.values[v][0];
        const auto nb = k.neighbours(v);
        std::vector<int> up, down;
        bool level = false;
        for (int w : nb) {
            if (f.values[w][0] > x) up.push_back(w);
            else if (f.values[w][0] < x) down.push_back(w);
            else level = true;
        }
        bool regular;
        if (level || up.empty() || down.empty()) {
            regular = false;
        } else if (k.dim() <= 1) {
            regular = up.size() == 1 && down.size() == 1;
        } else if (k.dim() == 2) {
            // Upper and lower parts of the link graph must each be connected.
            auto connected = [&](const std::vector<int>& part) {
                std::set<int> in(part.begin(), part.end()), seen{part[0]};
                std::vector<int> stack{part[0]};
                while (!stack.empty()) {
                    int a = stack.back();
                    stack.pop_back();
                    for (int b : k.neighbours(a))
                        if (in.count(b) && !seen.count(b) && k.contains(make_simplex({v, a, b}))) {
                            seen.insert(b);
                            stack.push_back(b);
                        }
                }
                return seen.size() == in.size();
            };
            regular = connected(up) && connected(down);
        } else {
            regular = true;  // only extrema are detected above dimension 2
        }
        if (!regular) r.critical_vertices.push_back(v);
    }
    std::set<Rational> seen;
    r.critical_values_injective = true;
    for (int v : r.critical_vertices)
        if (!seen.insert(f.values[v][0]).second) r.critical_values_injective = false;

    if (!r.embeds_all_edges) r.verdict = "not stable (degenerate)";
    else if (!r.critical_values_injective) r.verdict = "condition (2)/(3) tension";
    else r.verdict = "stable";
    return r;
}

}  // namespace prem
