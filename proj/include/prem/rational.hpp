#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace prem {

using Rational = boost::multiprecision::mpq_rational;
using QVec = std::vector<Rational>;

/// Parses "p/q" or "p" (decimal integers, optional sign). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Always "p/q" with q > 0 and gcd(p, q) = 1, so output is byte-stable.
std::string format_rational(const Rational& x);

QVec operator+(const QVec& a, const QVec& b);
QVec operator-(const QVec& a, const QVec& b);
QVec operator*(const Rational& s, const QVec& a);
QVec operator-(const QVec& a);

Rational dot(const QVec& a, const QVec& b);
inline Rational norm_sq(const QVec& a) { return dot(a, a); }
bool is_zero(const QVec& a);

}  // namespace prem
