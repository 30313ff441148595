#pragma once

#include "prem/complex.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace prem {

/// Fixed-length bit vector over GF(2), 64 bits per word.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i, bool v = true)
    {
        if (v) words_[i >> 6] |= std::uint64_t{1} << (i & 63);
        else words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    BitVec& operator^=(const BitVec& o);
    bool any() const;
    std::size_t count() const;
    std::vector<int> support() const;
    bool operator==(const BitVec& o) const { return n_ == o.n_ && words_ == o.words_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Simplicial cochain complex of a complex with GF(2) coefficients. The basis
/// of C^d is simplices(d) in canonical order.
class Z2Cochains {
public:
    explicit Z2Cochains(const SimplicialComplex& c);
    Z2Cochains(const SimplicialComplex&&) = delete;

    const SimplicialComplex& complex() const { return c_; }
    int dim() const { return c_.dim(); }
    BitVec zero(int d) const { return BitVec(c_.count(d)); }

    /// Indices in simplices(d-1) of the facets of simplex i of dimension d (facet j omits vertex j).
    const std::vector<int>& facets(int d, int i) const { return facets_[d][i]; }

    BitVec coboundary(int d, const BitVec& c) const;
    /// True iff c = delta x for some (d-1)-cochain x. Every 0-cochain other than 0 is not.
    bool is_coboundary(int d, const BitVec& c);
    /// rank of delta: C^d -> C^{d+1}.
    int coboundary_rank(int d);
    /// Mod-2 Betti numbers b_0..b_dim.
    std::vector<int> betti_numbers();

    /// Alexander-Whitney cup product in canonical vertex order.
    BitVec cup(int p, const BitVec& a, int q, const BitVec& b) const;

private:
    struct Reduced {
        std::vector<std::vector<int>> columns;      // reduced nonzero columns, entries ascending
        std::map<int, int> pivot;                   // lowest row -> column
    };

    const SimplicialComplex& c_;
    std::vector<std::vector<std::vector<int>>> facets_;
    std::map<int, Reduced> reduced_;  // keyed by source dimension d of delta: C^d -> C^{d+1}

    const Reduced& reduction(int d);
};

}  // namespace prem
