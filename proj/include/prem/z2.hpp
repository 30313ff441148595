#pragma once

#include "prem/complex.hpp"
#include "prem/double_point.hpp"
#include "prem/gf2.hpp"

#include <memory>
#include <vector>

namespace prem {

/// Quotient of a complex with free simplicial involution t.
/// The preferred sheet over an orbit is its smallest vertex.
struct QuotientData {
    std::shared_ptr<const SimplicialComplex> cover;  // after any subdivision
    std::vector<int> involution;                     // on cover vertices
    SimplicialComplex complex;                       // cover / t
    std::vector<int> orbit_of;
    std::vector<int> representative;
    int subdivisions = 0;
};

/// Applies up to max_subdivisions barycentric subdivisions until the orbit map
/// is a simplicial covering. Throws PreconditionError "NonFreeAction" if t fixes
/// a simplex, "IrregularAction" if subdivision does not help.
QuotientData quotient_by_involution(std::shared_ptr<const SimplicialComplex> cover, std::vector<int> involution,
                                    int max_subdivisions = 2);
QuotientData quotient_by_involution(const DoublePointComplex& d);

/// First Stiefel-Whitney cocycle of the double cover, on quotient edges.
BitVec w1_cocycle(const QuotientData& q);

struct YangReport {
    int index = 0;
    int quotient_dim = -1;
    std::vector<std::size_t> cell_counts;  // quotient cells per dimension
    std::vector<int> betti;                // mod-2 Betti numbers of the quotient
    std::vector<bool> power_nonzero;       // power_nonzero[k-1]: w1^k is not a coboundary
};

/// Largest k with w1^k not a coboundary; 0 when w1 is one or the cover is empty.
YangReport yang_report(const QuotientData& q);
int yang_index(const QuotientData& q);
int yang_index(const DoublePointComplex& d);

}  // namespace prem
