#include "prem/rational.hpp"

#include <stdexcept>

namespace prem {

namespace {

bool is_integer_token(std::string_view s)
{
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

std::string strip_plus(std::string_view s)
{
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return std::string(s);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    if (!is_integer_token(num))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    if (slash == std::string_view::npos)
        return Rational(boost::multiprecision::mpz_int(strip_plus(num)));
    std::string_view den = text.substr(slash + 1);
    if (!is_integer_token(den) || den[0] == '-' || den[0] == '+')
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    boost::multiprecision::mpz_int d(std::string{den});
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(boost::multiprecision::mpz_int(strip_plus(num)), d);
}

std::string format_rational(const Rational& x)
{
    return numerator(x).str() + "/" + denominator(x).str();
}

QVec operator+(const QVec& a, const QVec& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

QVec operator-(const QVec& a, const QVec& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

QVec operator*(const Rational& s, const QVec& a)
{
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

QVec operator-(const QVec& a)
{
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

Rational dot(const QVec& a, const QVec& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool is_zero(const QVec& a)
{
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

}  // namespace prem
