#include "ocs_toe/metrics.hpp"

#include <cstdlib>
#include <numeric>

#include "ocs_toe/errors.hpp"

namespace ocs_toe {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g ? num / g : 0;
  den_ = g ? den / g : 1;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  return lhs <=> rhs;
}

Rational operator+(const Rational& a, const Rational& b) {
  const std::int64_t g = std::gcd(a.den_, b.den_);
  return Rational(a.num_ * (b.den_ / g) + b.num_ * (a.den_ / g), a.den_ / g * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + Rational(-b.num_, b.den_); }

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::decimal3() const {
  const bool negative = num_ < 0;
  const __int128 scaled = static_cast<__int128>(negative ? -num_ : num_) * 1000;
  __int128 q = scaled / den_;
  const __int128 r = scaled % den_;
  if (2 * r > den_ || (2 * r == den_ && q % 2 == 1)) ++q;
  const auto whole = static_cast<long long>(q / 1000);
  const auto frac = static_cast<int>(q % 1000);
  std::string digits = std::to_string(frac);
  digits.insert(0, 3 - digits.size(), '0');
  return (negative && q != 0 ? "-" : "") + std::to_string(whole) + "." + digits;
}

Rational ltcr(const IntMatrix& c, const IntMatrix& x) {
  if (c.rows() != x.rows() || c.cols() != x.cols()) throw DimensionError("ltcr operands differ in shape");
  Count demand = 0;
  Count missing = 0;
  for (std::size_t i = 0; i < c.rows(); ++i) {
    for (std::size_t j = 0; j < c.cols(); ++j) {
      demand += c(i, j);
      if (x(i, j) < c(i, j)) missing += c(i, j) - x(i, j);
    }
  }
  if (demand == 0) return Rational(1);
  return Rational(demand - missing, demand);
}

Rational mrar(const CountTensor& u, const CountTensor& x) {
  if (u.p() != x.p() || u.layers() != x.layers()) throw DimensionError("mrar operands differ in shape");
  Count total = 0;
  Count added = 0;
  for (std::size_t i = 0; i < x.p(); ++i) {
    for (std::size_t j = 0; j < x.p(); ++j) {
      for (std::size_t k = 0; k < x.layers(); ++k) {
        total += x(i, j, k);
        if (u(i, j, k) < x(i, j, k)) added += x(i, j, k) - u(i, j, k);
      }
    }
  }
  if (total == 0) return Rational(1);
  return Rational(total - added, total);
}

Count rewiring_cost(const CountTensor& u, const CountTensor& x) {
  if (u.p() != x.p() || u.layers() != x.layers()) throw DimensionError("rewiring operands differ in shape");
  Count s = 0;
  for (std::size_t i = 0; i < x.p(); ++i)
    for (std::size_t j = 0; j < x.p(); ++j)
      for (std::size_t k = 0; k < x.layers(); ++k) s += std::llabs(x(i, j, k) - u(i, j, k));
  return s;
}

}  // namespace ocs_toe
