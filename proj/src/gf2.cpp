#include "prem/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace prem {

BitVec& BitVec::operator^=(const BitVec& o)
{
    if (o.n_ != n_) throw std::invalid_argument("BitVec: size mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
}

bool BitVec::any() const
{
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t BitVec::count() const
{
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::vector<int> BitVec::support() const
{
    std::vector<int> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        std::uint64_t w = words_[i];
        while (w) {
            int b = std::countr_zero(w);
            out.push_back(static_cast<int>(i * 64 + static_cast<std::size_t>(b)));
            w &= w - 1;
        }
    }
    return out;
}

Z2Cochains::Z2Cochains(const SimplicialComplex& c) : c_(c)
{
    facets_.resize(std::max(0, c.dim() + 1));
    for (int d = 1; d <= c.dim(); ++d) {
        const auto& cells = c.simplices(d);
        facets_[d].resize(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            for (std::size_t j = 0; j < cells[i].size(); ++j) {
                Simplex f = cells[i];
                f.erase(f.begin() + static_cast<long>(j));
                facets_[d][i].push_back(*c.index_of(f));
            }
        }
    }
}

BitVec Z2Cochains::coboundary(int d, const BitVec& c) const
{
    BitVec out(c_.count(d + 1));
    if (d + 1 > dim()) return out;
    for (std::size_t i = 0; i < facets_[d + 1].size(); ++i) {
        bool v = false;
        for (int f : facets_[d + 1][i]) v ^= c.get(static_cast<std::size_t>(f));
        if (v) out.set(i);
    }
    return out;
}

// Column-reduces delta: C^d -> C^{d+1}. Column j (a d-simplex) lists the
// (d+1)-simplices having it as a facet.
const Z2Cochains::Reduced& Z2Cochains::reduction(int d)
{
    auto it = reduced_.find(d);
    if (it != reduced_.end()) return it->second;
    Reduced r;
    std::vector<std::vector<int>> cols(c_.count(d));
    if (d + 1 <= dim())
        for (std::size_t i = 0; i < facets_[d + 1].size(); ++i)
            for (int f : facets_[d + 1][i]) cols[f].push_back(static_cast<int>(i));
    std::vector<int> scratch;
    for (auto& col : cols) {
        std::sort(col.begin(), col.end());
        while (!col.empty()) {
            auto p = r.pivot.find(col.back());
            if (p == r.pivot.end()) break;
            const auto& other = r.columns[p->second];
            scratch.clear();
            std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                          std::back_inserter(scratch));
            col.swap(scratch);
        }
        if (col.empty()) continue;
        r.pivot.emplace(col.back(), static_cast<int>(r.columns.size()));
        r.columns.push_back(std::move(col));
    }
    return reduced_.emplace(d, std::move(r)).first->second;
}

bool Z2Cochains::is_coboundary(int d, const BitVec& c)
{
    if (!c.any()) return true;
    if (d == 0) return false;
    const Reduced& r = reduction(d - 1);
    std::vector<int> v = c.support();
    std::vector<int> scratch;
    while (!v.empty()) {
        auto p = r.pivot.find(v.back());
        if (p == r.pivot.end()) return false;
        const auto& col = r.columns[p->second];
        scratch.clear();
        std::set_symmetric_difference(v.begin(), v.end(), col.begin(), col.end(), std::back_inserter(scratch));
        v.swap(scratch);
    }
    return true;
}

int Z2Cochains::coboundary_rank(int d)
{
    if (d < 0 || d >= dim()) return 0;
    return static_cast<int>(reduction(d).columns.size());
}

std::vector<int> Z2Cochains::betti_numbers()
{
    std::vector<int> b;
    for (int d = 0; d <= dim(); ++d)
        b.push_back(static_cast<int>(c_.count(d)) - coboundary_rank(d) - coboundary_rank(d - 1));
    return b;
}

BitVec Z2Cochains::cup(int p, const BitVec& a, int q, const BitVec& b) const
{
    if (a.size() != c_.count(p) || b.size() != c_.count(q))
        throw std::invalid_argument("cup: cochain size does not match its dimension");
    BitVec out(c_.count(p + q));
    const auto& cells = c_.simplices(p + q);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const Simplex& s = cells[i];
        Simplex front(s.begin(), s.begin() + p + 1);
        if (!a.get(static_cast<std::size_t>(*c_.index_of(front)))) continue;
        Simplex back(s.begin() + p, s.end());
        if (b.get(static_cast<std::size_t>(*c_.index_of(back)))) out.set(i);
    }
    return out;
}

}  // namespace prem
