#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "ocs_toe/matrix.hpp"

namespace ocs_toe {

// Exact nonnegative-denominator rational, always stored in lowest terms.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // Three decimals, ties to even ("0.667", "1.000").
  std::string decimal3() const;
  std::string str() const;  // "2/3", "1"

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// 1 - sum_ij [X_ij < C_ij] (C_ij - X_ij) / sum_ij C_ij; 1 when C is empty.
Rational ltcr(const IntMatrix& c, const IntMatrix& x);

// 1 - sum_ijk [u < x] (x - u) / sum_ijk x; 1 when x is empty.
Rational mrar(const CountTensor& u, const CountTensor& x);

// sum_ijk |x - u|
Count rewiring_cost(const CountTensor& u, const CountTensor& x);

}  // namespace ocs_toe
