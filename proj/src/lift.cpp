#include "prem/lift.hpp"

#include "prem/errors.hpp"
#include "prem/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

namespace prem {

namespace {

int resolve_jobs(int jobs)
{
    if (jobs > 0) return jobs;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(i) for i in [0, n) on up to `jobs` threads.
template <class Body>
void parallel_for(std::size_t n, int jobs, Body body)
{
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(resolve_jobs(jobs)), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) body(i);
        });
    for (auto& t : pool) t.join();
}

// Nonzero z with z >= 0 on sigma-only vertices, z <= 0 on tau-only vertices,
// sum z = 0 and sum z_v F(v) = 0, normalized on the non-shared part.
bool pair_collides(const std::vector<QVec>& img, const Simplex& s, const Simplex& t)
{
    const Simplex shared = simplex_intersection(s, t);
    const Simplex s_only = simplex_difference(s, shared);
    const Simplex t_only = simplex_difference(t, shared);
    const std::size_t dim = img[s[0]].size();
    const std::size_t nvars = s_only.size() + t_only.size() + 2 * shared.size();

    std::vector<std::pair<int, Rational>> cols;  // (vertex, sign) per variable
    for (int v : s_only) cols.emplace_back(v, Rational(1));
    for (int v : t_only) cols.emplace_back(v, Rational(-1));
    for (int v : shared) {
        cols.emplace_back(v, Rational(1));
        cols.emplace_back(v, Rational(-1));
    }
    QMatrix a;
    QVec b;
    for (std::size_t r = 0; r < dim; ++r) {
        QVec row(nvars, Rational(0));
        bool nonzero = false;
        for (std::size_t j = 0; j < nvars; ++j) {
            const Rational& x = img[cols[j].first][r];
            if (x != 0) {
                row[j] = cols[j].second * x;
                nonzero = true;
            }
        }
        if (nonzero) {
            a.push_back(std::move(row));
            b.push_back(0);
        }
    }
    QVec sum_row(nvars), norm_row(nvars, Rational(0));
    for (std::size_t j = 0; j < nvars; ++j) sum_row[j] = cols[j].second;
    for (std::size_t j = 0; j < s_only.size() + t_only.size(); ++j) norm_row[j] = 1;
    a.push_back(sum_row);
    b.push_back(0);
    a.push_back(norm_row);
    b.push_back(1);
    return lp_feasible_point(a, b).has_value();
}

}  // namespace

EmbeddingCertificate verify_embedding(const SimplicialMap& f, const Lift& g, int jobs)
{
    const SimplicialComplex& kstar = *g.record.child;
    if (!(*g.record.parent == f.source())) throw std::invalid_argument("verify_embedding: lift is not over the map's source");
    if (static_cast<int>(g.values.size()) != kstar.num_vertices())
        throw std::invalid_argument("verify_embedding: lift value count mismatch");
    const int nl = f.target().num_vertices();

    std::vector<QVec> img(kstar.num_vertices());
    std::vector<Simplex> lcar(kstar.num_vertices());
    for (int v = 0; v < kstar.num_vertices(); ++v) {
        QVec x(static_cast<std::size_t>(nl + g.k), Rational(0));
        Simplex car;
        for (const auto& [u, w] : g.record.vertex_coords[v]) {
            x[f(u)] += w;
            car.push_back(f(u));
        }
        if (static_cast<int>(g.values[v].size()) != g.k) throw std::invalid_argument("verify_embedding: bad lift vector");
        for (int i = 0; i < g.k; ++i) x[nl + i] = g.values[v][i];
        std::sort(car.begin(), car.end());
        img[v] = std::move(x);
        lcar[v] = std::move(car);
    }

    EmbeddingCertificate cert;
    const auto maxes = kstar.maximal_simplices();
    for (const auto& s : maxes) {
        std::vector<QVec> pts;
        for (int v : s) pts.push_back(img[v]);
        ++cert.simplices_checked;
        if (!affinely_independent(pts)) {
            cert.degenerate_simplex = s;
            cert.verdict = false;
            return cert;
        }
    }

    std::vector<Simplex> scar(maxes.size());
    std::vector<std::vector<int>> by_lvertex(nl);
    for (std::size_t i = 0; i < maxes.size(); ++i) {
        for (int v : maxes[i]) scar[i] = simplex_union(scar[i], lcar[v]);
        for (int w : scar[i]) by_lvertex[w].push_back(static_cast<int>(i));
    }
    std::set<std::pair<int, int>> candidates;
    for (const auto& list : by_lvertex)
        for (std::size_t a = 0; a < list.size(); ++a)
            for (std::size_t b = a + 1; b < list.size(); ++b) candidates.emplace(list[a], list[b]);

    const std::size_t m = maxes.size();
    cert.pairs_total = m * (m - (m > 0 ? 1 : 0)) / 2;
    cert.solved_pairs.assign(candidates.begin(), candidates.end());
    cert.pairs_solved = cert.solved_pairs.size();
    cert.pairs_pruned = cert.pairs_total - cert.pairs_solved;

    std::vector<char> collides(cert.solved_pairs.size(), 0);
    parallel_for(cert.solved_pairs.size(), jobs, [&](std::size_t i) {
        const auto [a, b] = cert.solved_pairs[i];
        collides[i] = pair_collides(img, maxes[a], maxes[b]) ? 1 : 0;
    });
    cert.verdict = true;
    for (std::size_t i = 0; i < collides.size(); ++i)
        if (collides[i]) {
            cert.verdict = false;
            cert.counterexample = std::make_pair(maxes[cert.solved_pairs[i].first], maxes[cert.solved_pairs[i].second]);
            break;
        }
    return cert;
}

// ---------------------------------------------------------------------------

IsovariantMap isovariant_pl_approximation(std::shared_ptr<const SimplicialComplex> a, const std::vector<int>& involution,
                                          const std::vector<bool>& fixed, const std::vector<QVec>& beta_at_vertices,
                                          const std::vector<bool>& q_vertices, const PointEvaluator& beta,
                                          int max_depth)
{
    const int n = a->num_vertices();
    auto bad = [](const std::string& why) { return PreconditionError("IsovariantPrecondition", why); };
    if (static_cast<int>(involution.size()) != n || static_cast<int>(fixed.size()) != n ||
        static_cast<int>(beta_at_vertices.size()) != n || static_cast<int>(q_vertices.size()) != n)
        throw bad("input sizes do not match the vertex count");
    if (!is_simplicial_automorphism(*a, involution)) throw bad("involution is not simplicial");
    for (int v = 0; v < n; ++v) {
        if (involution[involution[v]] != v) throw bad("map is not an involution");
        if (fixed[v] != (involution[v] == v)) throw bad("fixed set does not match the involution");
        if (beta_at_vertices[involution[v]] != -beta_at_vertices[v]) throw bad("values are not equivariant");
        if (fixed[v] && !is_zero(beta_at_vertices[v])) throw bad("value at a fixed vertex is nonzero");
    }

    std::vector<Simplex> maxes = a->maximal_simplices();
    std::vector<BaryPoint> bary;
    for (int v = 0; v < n; ++v) bary.push_back(bary_vertex(v));
    std::vector<QVec> values = beta_at_vertices;
    std::vector<int> inv = involution;
    std::vector<bool> fix = fixed, inq = q_vertices;
    std::vector<int> depth(n, 0);
    std::vector<std::string> names = a->names();
    int starrings = 0;

    auto free_part = [&](const Simplex& s) {
        Simplex t;
        for (int v : s)
            if (!fix[v]) t.push_back(v);
        return t;
    };
    auto certified = [&](const Simplex& t) {
        if (t.empty()) return true;
        std::vector<QVec> pts;
        for (int v : t) pts.push_back(values[v]);
        return !origin_in_hull(pts);
    };
    auto star_at = [&](const Simplex& t, int partner) {
        const int b = static_cast<int>(values.size());
        std::vector<std::pair<Rational, const BaryPoint*>> terms;
        for (int v : t) terms.emplace_back(Rational(1, static_cast<long>(t.size())), &bary[v]);
        bary.push_back(bary_combine(terms));
        if (partner < 0) {
            QVec val;
            if (beta) {
                val = beta(bary.back());
            } else {
                val = QVec(values[t[0]].size(), Rational(0));
                for (int v : t) val = val + Rational(1, static_cast<long>(t.size())) * values[v];
            }
            values.push_back(val);
            inv.push_back(-1);
        } else {
            values.push_back(-values[partner]);
            inv[partner] = b;
            inv.push_back(partner);
        }
        fix.push_back(false);
        inq.push_back(false);
        int dpt = 0;
        for (int v : t) dpt = std::max(dpt, depth[v]);
        depth.push_back(dpt + 1);
        names.push_back("*" + std::to_string(b));
        std::vector<Simplex> next;
        for (auto& s : maxes) {
            if (!is_face(t, s)) {
                next.push_back(std::move(s));
                continue;
            }
            for (int x : t) {
                Simplex r;
                for (int v : s)
                    if (v != x) r.push_back(v);
                r.push_back(b);
                next.push_back(make_simplex(r));
            }
        }
        maxes = std::move(next);
        return b;
    };

    for (;;) {
        std::optional<Simplex> offending;
        for (const auto& s : maxes) {
            Simplex t = free_part(s);
            if (!certified(t)) {
                offending = t;
                break;
            }
        }
        if (!offending) break;
        const Simplex t = *offending;
        auto describe = [&] {
            std::string d = "{";
            for (std::size_t i = 0; i < t.size(); ++i) d += (i ? "," : "") + names[t[i]];
            return d + "}";
        };
        if (std::all_of(t.begin(), t.end(), [&](int v) { return inq[v]; }))
            throw PreconditionError("IsovariantFailure", "values vanish on protected simplex " + describe());
        int dpt = 0;
        for (int v : t) dpt = std::max(dpt, depth[v]);
        if (dpt >= max_depth)
            throw PreconditionError("IsovariantFailure", "subdivision depth exhausted at simplex " + describe());
        Simplex tt;
        for (int v : t) tt.push_back(inv[v]);
        std::sort(tt.begin(), tt.end());
        int b = star_at(t, -1);
        if (tt != t) star_at(tt, b);
        ++starrings;
    }

    IsovariantMap out;
    auto child = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_simplices(names, maxes));
    out.complex = child;
    out.record.parent = a;
    out.record.child = child;
    out.record.vertex_coords = std::move(bary);
    out.involution = std::move(inv);
    out.fixed = std::move(fix);
    out.values = std::move(values);
    out.starrings = starrings;
    out.certified_simplices = child->size();
    return out;
}

// ---------------------------------------------------------------------------

ClosedDoublePoint closed_double_point(const SimplicialMap& f)
{
    const SimplicialComplex& k = f.source();
    std::set<std::pair<int, int>> pairset;
    std::vector<std::vector<std::pair<int, int>>> raw_cells;
    std::vector<std::vector<int>> fibre(f.target().num_vertices());
    for (int v = 0; v < k.num_vertices(); ++v) fibre[f(v)].push_back(v);
    for (const auto& fib : fibre)
        for (int u : fib)
            for (int v : fib)
                if (u != v) pairset.emplace(u, v);
    for (int dim = 1; dim <= k.dim(); ++dim) {
        std::map<Simplex, std::vector<Simplex>> groups;
        for (const auto& s : k.simplices(dim)) groups[f.image(s)].push_back(s);
        for (const auto& [img, g] : groups) {
            if (g.size() < 2) continue;
            for (const auto& s : g)
                for (const auto& t : g) {
                    if (s == t) continue;
                    std::vector<std::pair<int, int>> cell;
                    for (int u : s) {
                        int v = *std::find_if(t.begin(), t.end(), [&](int w) { return f(w) == f(u); });
                        cell.emplace_back(u, v);
                        pairset.emplace(u, v);
                    }
                    raw_cells.push_back(std::move(cell));
                }
        }
    }
    ClosedDoublePoint c;
    c.pairs.assign(pairset.begin(), pairset.end());
    auto index = [&](std::pair<int, int> p) {
        return static_cast<int>(std::lower_bound(c.pairs.begin(), c.pairs.end(), p) - c.pairs.begin());
    };
    std::vector<Simplex> cells;
    for (const auto& rc : raw_cells) {
        Simplex s;
        for (const auto& p : rc) s.push_back(index(p));
        cells.push_back(make_simplex(s));
    }
    std::vector<std::string> names;
    for (const auto& [u, v] : c.pairs) {
        names.push_back(k.name(u) + "~" + k.name(v));
        c.involution.push_back(index({v, u}));
        c.diagonal.push_back(u == v);
    }
    c.complex = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_simplices(std::move(names), cells));
    return c;
}

std::vector<QVec> alpha_on_pairs(const DoublePointComplex& d, const EquivariantSphereWitness& w)
{
    const int n = d.complex.num_vertices();
    if (w.cover->num_vertices() < n) throw std::invalid_argument("alpha_on_pairs: witness does not cover the model");
    for (int v = 0; v < n; ++v)
        if (w.cover->name(v) != d.complex.name(v))
            throw std::invalid_argument("alpha_on_pairs: witness vertices do not match the model");
    return std::vector<QVec>(w.vectors.begin(), w.vectors.begin() + n);
}

namespace {

LiftResult lift_attempt(const DoublePointComplex& d, const std::vector<QVec>& alpha, int k, const BoundaryData* boundary,
                        int jobs, int retries_left)
{
    const SimplicialMap& f = *d.base;
    const SimplicialComplex& kc = f.source();
    const int nk = kc.num_vertices();
    if (static_cast<int>(alpha.size()) != d.complex.num_vertices())
        throw PreconditionError("AlphaNotEquivariant", "alpha must have one vector per double-point vertex");
    for (int v = 0; v < d.complex.num_vertices(); ++v) {
        if (static_cast<int>(alpha[v].size()) != k)
            throw PreconditionError("AlphaNotEquivariant", "alpha vector has the wrong length");
        if (alpha[d.involution[v]] != -alpha[v])
            throw PreconditionError("AlphaNotEquivariant", "alpha is not antipodal at " + d.complex.name(v));
    }

    std::vector<bool> in_star(nk, false);
    if (boundary) {
        if (static_cast<int>(boundary->in_star.size()) != nk || static_cast<int>(boundary->values.size()) != nk)
            throw PreconditionError("BoundaryMismatch", "boundary data does not match the source complex");
        in_star = boundary->in_star;
        std::set<int> mstar;
        for (int v = 0; v < nk; ++v)
            if (in_star[v]) mstar.insert(f(v));
        for (int v = 0; v < nk; ++v)
            if (!in_star[v] && mstar.count(f(v)))
                throw PreconditionError("BoundaryMismatch", "preimage of M* is larger than N* at " + kc.name(v));
        for (int v = 0; v < nk; ++v)
            if (in_star[v] && static_cast<int>(boundary->values[v].size()) != k)
                throw PreconditionError("BoundaryMismatch", "e* vector has the wrong length");
        // f* x e* must be injective on N*.
        auto [nstar, old_of_new] = kc.induced(in_star);
        auto nptr = std::make_shared<const SimplicialComplex>(nstar);
        std::vector<int> vm;
        for (int old : old_of_new) vm.push_back(f(old));
        SimplicialMap fstar(nptr, f.target_ptr(), vm);
        Lift estar{identity_subdivision(nptr), k, {}};
        for (int old : old_of_new) estar.values.push_back(boundary->values[old]);
        if (!verify_embedding(fstar, estar, jobs).verdict)
            throw PreconditionError("BoundaryNotInjective", "f* x e* is not injective");
        for (int v = 0; v < d.complex.num_vertices(); ++v) {
            auto [x, y] = d.pairs[v];
            if (!in_star[x]) continue;
            QVec diff = boundary->values[y] - boundary->values[x];
            // alpha must be a positive multiple of e*(y) - e*(x).
            std::vector<QVec> two{alpha[v], diff};
            bool parallel = !is_zero(diff) && !linearly_independent(two) && dot(alpha[v], diff) > 0;
            if (!parallel)
                throw PreconditionError("AlphaBoundaryMismatch", "alpha does not extend e* at " + d.complex.name(v));
        }
    }

    ClosedDoublePoint cdp = closed_double_point(f);
    std::vector<QVec> avals;
    std::vector<bool> qmask;
    for (const auto& [x, y] : cdp.pairs) {
        if (x == y) {
            avals.emplace_back(k, Rational(0));
            qmask.push_back(in_star[x]);
        } else if (in_star[x]) {
            avals.push_back(Rational(1, 2) * (boundary->values[y] - boundary->values[x]));
            qmask.push_back(true);
        } else {
            avals.push_back(alpha[*d.pair_index(x, y)]);
            qmask.push_back(false);
        }
    }
    // Linear values: starring cannot shrink the value hulls, so no depth is granted.
    IsovariantMap iso = isovariant_pl_approximation(cdp.complex, cdp.involution, cdp.diagonal, avals, qmask, {}, 0);

    std::vector<QVec> e(nk, QVec(k, Rational(0)));
    for (std::size_t i = 0; i < cdp.pairs.size(); ++i) {
        auto [x, y] = cdp.pairs[i];
        if (x == y) continue;
        e[y] = in_star[y] ? boundary->values[y] : iso.values[i];
    }
    for (int v = 0; v < nk; ++v)
        if (in_star[v]) e[v] = boundary->values[v];

    LiftResult r;
    r.isovariant = std::move(iso);
    r.model_subdivisions = d.subdivisions;
    Lift working{identity_subdivision(f.source_ptr()), k, e};
    r.certificate = verify_embedding(f, working, jobs);
    r.lift = Lift{d.source_record, k, std::move(e)};

    if (!r.certificate.verdict) {
        if (retries_left == 0 || boundary)
            throw ContractViolation("lift verification failed after refinement");
        SubdividedMap sd = subdivide_map(f);
        DoublePointComplex d2 = double_point_complex(sd.map);
        d2.source_record = compose(d.source_record, sd.source_record);
        d2.subdivisions = d.subdivisions + 1;
        const auto kcells = kc.all_simplices();
        std::vector<QVec> alpha2;
        for (const auto& [a, b] : d2.pairs) {
            const Simplex& s = kcells[a];
            const Simplex& t = kcells[b];
            QVec acc(k, Rational(0));
            for (int u : s) {
                int v = *std::find_if(t.begin(), t.end(), [&](int w) { return f(w) == f(u); });
                acc = acc + alpha[*d.pair_index(u, v)];
            }
            alpha2.push_back(Rational(1, static_cast<long>(s.size())) * acc);
        }
        LiftResult again = lift_attempt(d2, alpha2, k, nullptr, jobs, retries_left - 1);
        again.retries += 1;
        return again;
    }

    r.homotopy = HomotopyStatus::Certified;
    for (const auto& cell : d.complex.maximal_simplices()) {
        std::vector<QVec> pts;
        for (int p : cell) {
            auto [x, y] = d.pairs[p];
            pts.push_back(r.lift.values[y] - r.lift.values[x]);
            pts.push_back(alpha[p]);
        }
        ++r.homotopy_cells;
        if (origin_in_hull(pts)) r.homotopy = HomotopyStatus::Inconclusive;
    }
    return r;
}

}  // namespace

LiftResult construct_lift_3ptfree(const DoublePointComplex& d, const std::vector<QVec>& alpha, int k,
                                  const BoundaryData* boundary, int jobs)
{
    if (k < 1) throw std::invalid_argument("construct_lift_3ptfree: k must be at least 1");
    const SimplicialMap& f = *d.base;
    if (auto w = triple_point_witness(f)) {
        auto names = [&](const Simplex& s) {
            std::string out = "{";
            for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + f.source().name(s[i]);
            return out + "}";
        };
        throw PreconditionError("TriplePointsPresent", names(w->a) + " " + names(w->b) + " " + names(w->c));
    }
    if (!is_simple_fold(f)) throw PreconditionError("NotSimpleFold", "a fold point is also a double point");
    return lift_attempt(d, alpha, k, boundary, jobs, 1);
}

LiftResult construct_lift_3ptfree(const SimplicialMap& f, int k, int jobs)
{
    if (auto w = triple_point_witness(f)) {
        (void)w;
        DoublePointComplex d = double_point_complex(f);
        return construct_lift_3ptfree(d, std::vector<QVec>(), k, nullptr, jobs);
    }
    if (!is_simple_fold(f)) throw PreconditionError("NotSimpleFold", "a fold point is also a double point");
    DoublePointComplex d = double_point_model(f);
    EquivariantSphereWitness w = construct_equivariant_witness(d, k);
    return construct_lift_3ptfree(d, alpha_on_pairs(d, w), k, nullptr, jobs);
}

}  // namespace prem
