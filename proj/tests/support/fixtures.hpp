#pragma once

#include "prem/complex.hpp"
#include "prem/rational.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

using prem::Rational;
using prem::Simplex;
using prem::SimplicialComplex;
using prem::SimplicialMap;
using Ptr = std::shared_ptr<const SimplicialComplex>;

inline Ptr complex_of(const std::vector<std::string>& names, const std::vector<std::vector<std::string>>& simplices)
{
    std::map<std::string, int> idx;
    for (std::size_t i = 0; i < names.size(); ++i) idx[names[i]] = static_cast<int>(i);
    std::vector<Simplex> ss;
    for (const auto& s : simplices) {
        std::vector<int> vs;
        for (const auto& n : s) vs.push_back(idx.at(n));
        ss.push_back(prem::make_simplex(vs));
    }
    return std::make_shared<const SimplicialComplex>(SimplicialComplex::from_simplices(names, ss));
}

inline std::vector<std::string> numbered(const std::string& prefix, int n)
{
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

inline Ptr cycle(int n, const std::string& prefix = "c")
{
    std::vector<Simplex> edges;
    for (int i = 0; i < n; ++i) edges.push_back(prem::make_simplex({i, (i + 1) % n}));
    return std::make_shared<const SimplicialComplex>(SimplicialComplex::from_simplices(numbered(prefix, n), edges));
}

inline Ptr full_simplex(int n, const std::string& prefix = "y")
{
    Simplex all;
    for (int i = 0; i < n; ++i) all.push_back(i);
    return std::make_shared<const SimplicialComplex>(SimplicialComplex::from_simplices(numbered(prefix, n), {all}));
}

/// Boundary of the tetrahedron.
inline Ptr sphere2()
{
    return complex_of({"a", "b", "c", "d"}, {{"a", "b", "c"}, {"a", "b", "d"}, {"a", "c", "d"}, {"b", "c", "d"}});
}

/// Six-vertex real projective plane.
inline Ptr rp2()
{
    return complex_of(numbered("r", 6), {{"r0", "r1", "r2"}, {"r0", "r2", "r3"}, {"r0", "r3", "r4"}, {"r0", "r4", "r5"},
                                         {"r0", "r5", "r1"}, {"r1", "r2", "r4"}, {"r2", "r3", "r5"}, {"r3", "r4", "r1"},
                                         {"r4", "r5", "r2"}, {"r5", "r1", "r3"}});
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen); }
    Rational rational(int range, int max_den = 1)
    {
        return Rational(uniform(-range * max_den, range * max_den), uniform(1, max_den));
    }
};

/// Random pure-ish complex on n vertices from `count` random simplices of dimension <= dmax.
inline Ptr random_complex(Rng& rng, int n, int count, int dmax)
{
    std::vector<Simplex> ss;
    for (int v = 0; v < n; ++v) ss.push_back({v});
    for (int i = 0; i < count; ++i) {
        int size = rng.uniform(2, std::min(n, dmax + 1));
        std::vector<int> perm(n);
        for (int v = 0; v < n; ++v) perm[v] = v;
        std::shuffle(perm.begin(), perm.end(), rng.gen);
        perm.resize(size);
        ss.push_back(prem::make_simplex(perm));
    }
    return std::make_shared<const SimplicialComplex>(SimplicialComplex::from_simplices(numbered("v", n), ss));
}

/// Random proper colouring of the 1-skeleton with at most `colors` colours (greedy, random order).
inline std::vector<int> random_colouring(Rng& rng, const SimplicialComplex& k, int colors)
{
    const int n = k.num_vertices();
    std::vector<int> col(n, -1), order(n);
    for (int v = 0; v < n; ++v) order[v] = v;
    std::shuffle(order.begin(), order.end(), rng.gen);
    for (int v : order) {
        std::vector<bool> used(colors, false);
        for (int w : k.neighbours(v))
            if (col[w] >= 0) used[col[w]] = true;
        std::vector<int> free;
        for (int c = 0; c < colors; ++c)
            if (!used[c]) free.push_back(c);
        if (free.empty()) return {};
        col[v] = free[rng.uniform(0, static_cast<int>(free.size()) - 1)];
    }
    return col;
}

}  // namespace fixtures
