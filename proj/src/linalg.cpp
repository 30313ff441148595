#include "prem/linalg.hpp"

#include <stdexcept>

namespace prem {

namespace {

// Row-reduces m in place; returns the pivot column of each pivot row.
std::vector<std::size_t> row_reduce(QMatrix& m, std::size_t ncols)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[sel], m[row]);
        Rational inv = 1 / m[row][col];
        for (std::size_t j = col; j < m[row].size(); ++j) m[row][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rational factor = m[i][col];
            for (std::size_t j = col; j < m[i].size(); ++j) m[i][j] -= factor * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

int rank(QMatrix m)
{
    if (m.empty()) return 0;
    std::size_t ncols = m[0].size();
    return static_cast<int>(row_reduce(m, ncols).size());
}

std::optional<QVec> solve(const QMatrix& a, const QVec& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("solve: dimension mismatch");
    std::size_t ncols = a.empty() ? 0 : a[0].size();
    QMatrix aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    auto pivots = row_reduce(aug, ncols);
    for (std::size_t i = pivots.size(); i < aug.size(); ++i)
        if (aug[i][ncols] != 0) return std::nullopt;
    QVec x(ncols, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][ncols];
    return x;
}

bool linearly_independent(const std::vector<QVec>& vectors)
{
    if (vectors.empty()) return true;
    if (vectors.size() > vectors[0].size()) return false;
    return rank(vectors) == static_cast<int>(vectors.size());
}

bool affinely_independent(const std::vector<QVec>& points)
{
    if (points.size() <= 1) return true;
    std::vector<QVec> diffs;
    for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
    return linearly_independent(diffs);
}

Rational dist_sq_to_affine_hull(const QVec& p, const std::vector<QVec>& pts)
{
    if (pts.empty()) throw std::invalid_argument("dist_sq_to_affine_hull: empty point set");
    std::vector<QVec> v;
    for (std::size_t j = 1; j < pts.size(); ++j) v.push_back(pts[j] - pts[0]);
    QVec w = p - pts[0];
    if (v.empty()) return norm_sq(w);
    QMatrix gram(v.size(), QVec(v.size()));
    QVec rhs(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) gram[i][j] = dot(v[i], v[j]);
        rhs[i] = dot(v[i], w);
    }
    auto c = solve(gram, rhs);  // normal equations are always consistent
    QVec proj = pts[0];
    for (std::size_t i = 0; i < v.size(); ++i) proj = proj + (*c)[i] * v[i];
    return norm_sq(p - proj);
}

std::optional<QVec> lp_feasible_point(const QMatrix& a, const QVec& b)
{
    const std::size_t m = a.size();
    const std::size_t n = m == 0 ? 0 : a[0].size();
    if (m == 0) return QVec(n, Rational(0));

    // Tableau columns: n originals, m artificials, rhs.
    const std::size_t rhs = n + m;
    QMatrix t(m, QVec(n + m + 1, Rational(0)));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        bool flip = b[i] < 0;
        for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? -a[i][j] : a[i][j];
        t[i][n + i] = 1;
        t[i][rhs] = flip ? -b[i] : b[i];
        basis[i] = n + i;
    }
    QVec cost(n + m + 1, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) cost[j] -= t[i][j];
        cost[rhs] -= t[i][rhs];
    }

    for (;;) {
        std::size_t enter = n + m;
        for (std::size_t j = 0; j < n + m; ++j)
            if (cost[j] < 0) { enter = j; break; }
        if (enter == n + m) break;

        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][rhs] / t[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) break;  // unbounded direction; cannot happen for phase one

        Rational inv = 1 / t[leave][enter];
        for (auto& x : t[leave]) x *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            Rational f = t[i][enter];
            for (std::size_t j = 0; j <= rhs; ++j) t[i][j] -= f * t[leave][j];
        }
        if (cost[enter] != 0) {
            Rational f = cost[enter];
            for (std::size_t j = 0; j <= rhs; ++j) cost[j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }

    if (cost[rhs] != 0) return std::nullopt;  // -(sum of artificials) at optimum
    QVec x(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = t[i][rhs];
    return x;
}

std::optional<HullIntersection> hulls_intersect(const std::vector<QVec>& p, const std::vector<QVec>& q)
{
    if (p.empty() || q.empty()) return std::nullopt;
    const std::size_t d = p[0].size();
    const std::size_t n = p.size() + q.size();
    QMatrix a(d + 2, QVec(n, Rational(0)));
    QVec b(d + 2, Rational(0));
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t i = 0; i < p.size(); ++i) a[k][i] = p[i][k];
        for (std::size_t j = 0; j < q.size(); ++j) a[k][p.size() + j] = -q[j][k];
    }
    for (std::size_t i = 0; i < p.size(); ++i) a[d][i] = 1;
    for (std::size_t j = 0; j < q.size(); ++j) a[d + 1][p.size() + j] = 1;
    b[d] = 1;
    b[d + 1] = 1;
    auto x = lp_feasible_point(a, b);
    if (!x) return std::nullopt;
    HullIntersection h;
    h.lambda.assign(x->begin(), x->begin() + p.size());
    h.mu.assign(x->begin() + p.size(), x->end());
    h.point = QVec(d, Rational(0));
    for (std::size_t i = 0; i < p.size(); ++i) h.point = h.point + h.lambda[i] * p[i];
    return h;
}

bool origin_in_hull(const std::vector<QVec>& points)
{
    if (points.empty()) return false;
    return hulls_intersect(points, {QVec(points[0].size(), Rational(0))}).has_value();
}

}  // namespace prem
