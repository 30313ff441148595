#include "prem/z2.hpp"

#include "prem/errors.hpp"
#include "prem/subdivision.hpp"

#include <algorithm>

namespace prem {

namespace {

void require_free(const SimplicialComplex& c, const std::vector<int>& t)
{
    if (!is_simplicial_automorphism(c, t)) throw PreconditionError("NonFreeAction", "involution is not simplicial");
    for (int v = 0; v < c.num_vertices(); ++v)
        if (t[t[v]] != v) throw PreconditionError("NonFreeAction", "map is not an involution");
    for (const auto& s : c.all_simplices()) {
        Simplex img;
        for (int v : s) img.push_back(t[v]);
        std::sort(img.begin(), img.end());
        if (img == s) throw PreconditionError("NonFreeAction", "involution fixes a simplex");
    }
}

}  // namespace

QuotientData quotient_by_involution(std::shared_ptr<const SimplicialComplex> cover, std::vector<int> involution,
                                    int max_subdivisions)
{
    require_free(*cover, involution);
    for (int j = 0;; ++j) {
        OrbitQuotient oq = orbit_quotient(*cover, involution);
        if (oq.regular) {
            QuotientData q;
            q.cover = std::move(cover);
            q.involution = std::move(involution);
            q.complex = std::move(oq.complex);
            q.orbit_of = std::move(oq.orbit_of);
            q.representative = std::move(oq.representative);
            q.subdivisions = j;
            return q;
        }
        if (j == max_subdivisions) break;
        SubdivisionRecord sd = barycentric_subdivide(cover);
        involution = subdivide_automorphism(*cover, involution);
        cover = sd.child;
    }
    throw PreconditionError("IrregularAction", "quotient is not simplicial after subdivision");
}

QuotientData quotient_by_involution(const DoublePointComplex& d)
{
    return quotient_by_involution(std::make_shared<const SimplicialComplex>(d.complex), d.involution);
}

BitVec w1_cocycle(const QuotientData& q)
{
    BitVec w(q.complex.count(1));
    for (const auto& e : q.cover->simplices(1)) {
        int x = e[0], y = e[1];
        int ox = q.orbit_of[x], oy = q.orbit_of[y];
        if (ox > oy) {
            std::swap(x, y);
            std::swap(ox, oy);
        }
        // Each quotient edge has one lift starting on the preferred sheet over its first orbit.
        if (x != q.representative[ox]) continue;
        if (y != q.representative[oy]) w.set(static_cast<std::size_t>(*q.complex.index_of({ox, oy})));
    }
    Z2Cochains cochains(q.complex);
    if (cochains.coboundary(1, w).any()) throw ContractViolation("w1 cocycle has nonzero coboundary");
    return w;
}

YangReport yang_report(const QuotientData& q)
{
    YangReport r;
    r.quotient_dim = q.complex.dim();
    for (int d = 0; d <= r.quotient_dim; ++d) r.cell_counts.push_back(q.complex.count(d));
    Z2Cochains cochains(q.complex);
    r.betti = cochains.betti_numbers();
    if (r.quotient_dim < 1) return r;
    const BitVec w = w1_cocycle(q);
    BitVec power = w;
    for (int k = 1; k <= r.quotient_dim; ++k) {
        if (k > 1) power = cochains.cup(k - 1, power, 1, w);
        bool nonzero = !cochains.is_coboundary(k, power);
        r.power_nonzero.push_back(nonzero);
        if (!nonzero) break;
        r.index = k;
    }
    return r;
}

int yang_index(const QuotientData& q) { return yang_report(q).index; }

int yang_index(const DoublePointComplex& d)
{
    if (d.complex.num_vertices() == 0) return 0;
    return yang_index(quotient_by_involution(d));
}

}  // namespace prem
