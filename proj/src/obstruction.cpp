#include "prem/obstruction.hpp"

#include "prem/errors.hpp"
#include "prem/gf2.hpp"
#include "prem/linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace prem {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Exists: return "Exists";
    case Verdict::NotExists: return "NotExists";
    case Verdict::NecessaryHolds: return "NecessaryHolds";
    }
    return "?";
}

std::string to_string(Justification j)
{
    switch (j) {
    case Justification::DimensionBelowK: return "dimension-below-k";
    case Justification::CupPowerNonzero: return "cup-power-nonzero";
    case Justification::ManifoldCompleteObstruction: return "manifold-complete-obstruction";
    case Justification::Mod2Only: return "mod2-only";
    }
    return "?";
}

bool is_closed_pseudomanifold(const SimplicialComplex& c)
{
    const int d = c.dim();
    if (d < 1) return false;
    for (const auto& s : c.maximal_simplices())
        if (static_cast<int>(s.size()) != d + 1) return false;
    std::vector<int> incidence(c.count(d - 1), 0);
    for (const auto& s : c.simplices(d))
        for (std::size_t j = 0; j < s.size(); ++j) {
            Simplex f = s;
            f.erase(f.begin() + static_cast<long>(j));
            ++incidence[*c.index_of(f)];
        }
    return std::all_of(incidence.begin(), incidence.end(), [](int n) { return n == 2; });
}

bool has_manifold_certificate(const SimplicialComplex& c)
{
    if (!is_closed_pseudomanifold(c)) return false;
    const int d = c.dim();
    std::vector<std::vector<int>> tops_at(c.num_vertices());
    const auto& tops = c.simplices(d);
    for (std::size_t i = 0; i < tops.size(); ++i)
        for (int v : tops[i]) tops_at[v].push_back(static_cast<int>(i));
    std::vector<int> expected(d, 0);
    expected[0] += 1;
    expected[d - 1] += 1;
    for (int v = 0; v < c.num_vertices(); ++v) {
        std::map<int, int> local;
        std::vector<Simplex> faces;
        for (int i : tops_at[v]) {
            Simplex f;
            for (int w : tops[i])
                if (w != v) f.push_back(local.emplace(w, static_cast<int>(local.size())).first->second);
            faces.push_back(f);
        }
        std::vector<std::string> names(local.size());
        for (std::size_t i = 0; i < names.size(); ++i) names[i] = std::to_string(i);
        SimplicialComplex link = SimplicialComplex::from_simplices(std::move(names), faces);
        if (link.dim() != d - 1) return false;
        Z2Cochains z(link);
        if (z.betti_numbers() != expected) return false;
    }
    return true;
}

ObstructionVerdict equivariant_map_exists(const QuotientData& q, int k)
{
    if (k < 1) throw std::invalid_argument("equivariant_map_exists: k must be at least 1");
    ObstructionVerdict v;
    v.k = k;
    YangReport y = yang_report(q);
    v.yang_index = y.index;
    v.quotient_dim = y.quotient_dim;
    if (y.quotient_dim < k) {
        v.verdict = Verdict::Exists;
        v.justification = Justification::DimensionBelowK;
    } else if (y.index >= k) {
        v.verdict = Verdict::NotExists;
        v.justification = Justification::CupPowerNonzero;
    } else if (y.quotient_dim == k && has_manifold_certificate(*q.cover)) {
        v.verdict = Verdict::Exists;
        v.justification = Justification::ManifoldCompleteObstruction;
    } else {
        v.verdict = Verdict::NecessaryHolds;
        v.justification = Justification::Mod2Only;
    }
    return v;
}

ObstructionVerdict equivariant_map_exists(const DoublePointComplex& d, int k)
{
    return equivariant_map_exists(quotient_by_involution(d), k);
}

namespace {

QVec moment_vector(long t, int k)
{
    QVec v;
    Rational x = 1;
    for (int i = 0; i < k; ++i) {
        v.push_back(x);
        x *= t;
    }
    return v;
}

bool simplex_certified(const std::vector<QVec>& pts, int k)
{
    if (static_cast<int>(pts.size()) <= k && linearly_independent(pts)) return true;
    return !origin_in_hull(pts);
}

}  // namespace

EquivariantSphereWitness construct_equivariant_witness(const DoublePointComplex& d, int k)
{
    if (k < 1) throw std::invalid_argument("construct_equivariant_witness: k must be at least 1");
    QuotientData q = quotient_by_involution(d);
    if (q.cover->dim() >= k)
        throw PreconditionError("WitnessPrecondition",
                                "double-point complex has dimension " + std::to_string(q.cover->dim()) +
                                    ", the skeletal witness needs dimension below " + std::to_string(k));
    EquivariantSphereWitness w;
    w.k = k;
    w.cover = q.cover;
    w.involution = q.involution;
    w.subdivisions = q.subdivisions;
    const long orbits = static_cast<long>(q.representative.size());
    const auto maxes = q.cover->maximal_simplices();
    constexpr int kAttempts = 4;
    Simplex offending;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        w.vectors.assign(q.cover->num_vertices(), QVec());
        for (int v = 0; v < q.cover->num_vertices(); ++v) {
            int j = q.orbit_of[v];
            QVec m = moment_vector(1 + j + attempt * orbits, k);
            w.vectors[v] = v == q.representative[j] ? m : -m;
        }
        bool ok = true;
        for (const auto& s : maxes) {
            std::vector<QVec> pts;
            for (int v : s) pts.push_back(w.vectors[v]);
            if (!simplex_certified(pts, k)) {
                ok = false;
                offending = s;
                break;
            }
        }
        if (ok) {
            w.certified_simplices = q.cover->size();
            return w;
        }
    }
    std::string detail = "certification failed on simplex {";
    for (std::size_t i = 0; i < offending.size(); ++i) detail += (i ? "," : "") + q.cover->name(offending[i]);
    throw ContractViolation(detail + "}");
}

bool verify_witness(const EquivariantSphereWitness& w)
{
    const int n = w.cover->num_vertices();
    if (static_cast<int>(w.vectors.size()) != n) return false;
    for (int v = 0; v < n; ++v) {
        if (static_cast<int>(w.vectors[v].size()) != w.k) return false;
        if (w.vectors[w.involution[v]] != -w.vectors[v]) return false;
    }
    for (const auto& s : w.cover->maximal_simplices()) {
        std::vector<QVec> pts;
        for (int v : s) pts.push_back(w.vectors[v]);
        if (origin_in_hull(pts)) return false;
    }
    return true;
}

ParityResult projection_degree_parity(const DoublePointComplex& d, int component, int side)
{
    const SimplicialComplex& k = d.base->source();
    const int n = k.dim();
    ParityResult r;
    std::vector<int> count(k.count(n), 0);
    for (const auto& cell : d.complex.simplices(n)) {
        if (d.component[cell[0]] != component) continue;
        auto [a, b] = d.sides(cell);
        ++count[*k.index_of(side == 0 ? a : b)];
    }
    const auto& tops = k.simplices(n);
    for (std::size_t i = 0; i < tops.size(); ++i) {
        auto& slot = (count[i] % 2 == 0) ? r.witness_even : r.witness_odd;
        if (!slot) slot = tops[i];
    }
    r.well_defined = !(r.witness_even && r.witness_odd);
    r.parity = r.witness_odd ? 1 : 0;
    return r;
}

Theorem3Report theorem3_report(const SimplicialMap& f, int n)
{
    Theorem3Report r;
    r.n = n;
    r.target_dim = f.target().dim();
    r.source_pseudomanifold = is_closed_pseudomanifold(f.source()) && f.source().dim() == n;
    {
        Z2Cochains z(f.source());
        r.source_betti = z.betti_numbers();
    }
    if (!r.source_pseudomanifold) r.notes.push_back("source is not a closed mod-2 pseudomanifold of dimension n");
    bool homology_sphere = !r.source_betti.empty() && r.source_betti.front() == 1 && r.source_betti.back() == 1 &&
                           std::count(r.source_betti.begin(), r.source_betti.end(), 0) ==
                               static_cast<long>(r.source_betti.size()) - 2;
    if (!homology_sphere) r.notes.push_back("source mod-2 Betti numbers are not those of a sphere");

    DoublePointComplex d = double_point_model(f);
    r.model_subdivisions = d.subdivisions;
    r.delta_vertices = static_cast<std::size_t>(d.complex.num_vertices());
    r.delta_cells = d.complex.size();
    r.num_components = d.num_components;
    bool all_odd = true, all_even = true, parities_known = true;
    for (const auto& c : invariant_components(d)) {
        if (!c.invariant) continue;
        ComponentParity cp;
        cp.label = c.label;
        cp.invariant = true;
        cp.first = projection_degree_parity(d, c.label, 0);
        cp.second = projection_degree_parity(d, c.label, 1);
        if (!cp.first.well_defined) {
            parities_known = false;
        } else {
            all_odd = all_odd && cp.first.parity == 1;
            all_even = all_even && cp.first.parity == 0;
        }
        r.components.push_back(cp);
    }

    r.verdict = equivariant_map_exists(d, n);
    r.yang_index = r.verdict.yang_index;
    r.dimension_hypothesis = 2 * (r.target_dim + n) >= 3 * (n + 1);
    r.prem_conclusion = r.verdict.verdict == Verdict::Exists && r.dimension_hypothesis;
    if (r.verdict.verdict == Verdict::Exists && !r.dimension_hypothesis)
        r.notes.push_back("an equivariant map exists but 2(m+k) >= 3(n+1) fails at k = " + std::to_string(n) +
                          ", so no prem conclusion is drawn");

    const bool yang_below = r.yang_index < n;
    if (parities_known) {
        r.odd_reading_predicts_exists = all_odd;
        r.even_reading_predicts_exists = all_even;
        r.odd_reading_consistent = all_odd == yang_below;
        r.even_reading_consistent = all_even == yang_below;
    } else {
        r.notes.push_back("projection parity is not constant on some invariant component");
    }
    return r;
}

}  // namespace prem
