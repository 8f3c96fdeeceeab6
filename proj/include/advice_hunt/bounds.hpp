#pragma once

// Cost upper bounds for FindTreasure with beta < 1:
//   general graphs: 16 * D * e^(1+beta) / 2^A_max
//   trees:          16 *     e^(1+beta) / 2^A_max
//
// e^beta is irrational in general. It is replaced by R / 2^F where R is an
// integer with R^q >= e^p * 2^(F q) (beta = p/q), so the reported value is
// never below the real one. Comparisons against measured costs are exact.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "advice_hunt/rational.hpp"

namespace advice_hunt {

using BigInt = boost::multiprecision::cpp_int;

enum class BoundKind { general, tree };

inline const char* to_string(BoundKind k) { return k == BoundKind::general ? "general" : "tree"; }

/// A dyadic upper bound numerator / 2^shift.
class UpperBound {
 public:
  UpperBound() = default;
  UpperBound(BigInt numerator, std::uint64_t shift) : numerator_(std::move(numerator)), shift_(shift) {}

  const BigInt& numerator() const noexcept { return numerator_; }
  std::uint64_t shift() const noexcept { return shift_; }

  /// True iff value <= bound.
  bool admits(std::uint64_t value) const { return (BigInt(value) << shift_) <= numerator_; }

  /// True iff bound <= value.
  bool at_most(std::uint64_t value) const { return numerator_ <= (BigInt(value) << shift_); }

  /// Decimal string rounded up to `digits` fractional digits.
  std::string to_decimal(unsigned digits = 3) const {
    BigInt scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    const BigInt denom = BigInt(1) << shift_;
    BigInt scaled = numerator_ * scale;
    BigInt q = scaled / denom;
    if (q * denom != scaled) q += 1;
    const BigInt whole = q / scale;
    std::string frac = BigInt(q % scale).str();
    if (digits == 0) return whole.str();
    frac.insert(0, digits - frac.size(), '0');
    return whole.str() + "." + frac;
  }

  double approx() const {
    return static_cast<double>(numerator_.convert_to<long double>() / std::ldexp(1.0L, static_cast<int>(shift_)));
  }

 private:
  BigInt numerator_ = 0;
  std::uint64_t shift_ = 0;
};

/// Fractional bits used for e^beta.
inline constexpr unsigned kRootFractionBits = 40;

/// Smallest integer R with R^q >= base^p * 2^(bits*q), i.e. an upper
/// bound on base^(p/q) * 2^bits.
inline BigInt scaled_root_upper(std::uint64_t base, std::int64_t p, std::int64_t q, unsigned bits) {
  if (base == 0 || p < 0 || q <= 0) throw std::invalid_argument("scaled_root_upper: bad arguments");
  if (p == 0 || base == 1) return BigInt(1) << bits;
  const BigInt target = boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(p)) << (bits * static_cast<unsigned>(q));
  const long double estimate =
      std::exp2(static_cast<long double>(p) / static_cast<long double>(q) * std::log2(static_cast<long double>(base)) +
                static_cast<long double>(bits));
  int exponent = 0;
  const long double mantissa = std::frexp(estimate * (1.0L + 1e-15L), &exponent);
  BigInt r(static_cast<unsigned long long>(std::ldexp(mantissa, 63)));
  r = exponent >= 63 ? BigInt(r << (exponent - 63)) : BigInt(r >> (63 - exponent));
  r += 1;
  const auto uq = static_cast<unsigned>(q);
  while (boost::multiprecision::pow(r, uq) < target) r += (r >> 30) + 1;
  while (r > 1 && boost::multiprecision::pow(r - 1, uq) >= target) r -= 1;
  return r;
}

/// Cost bound for beta = ell/logsum < 1. `constant` defaults to 16; 8 gives
/// the tighter variant.
inline UpperBound cost_bound(BoundKind kind, std::uint64_t distance, std::uint64_t edges, std::uint64_t ell,
                             std::uint64_t logsum, std::uint64_t max_substring, std::uint64_t constant = 16) {
  if (logsum == 0 || ell >= logsum) throw std::invalid_argument("cost_bound: requires beta = ell/logsum < 1");
  if (edges == 0) throw std::invalid_argument("cost_bound: graph must have an edge");
  const Rational beta(static_cast<std::int64_t>(ell), static_cast<std::int64_t>(logsum));
  const BigInt root = scaled_root_upper(edges, beta.numerator(), beta.denominator(), kRootFractionBits);
  BigInt numerator = BigInt(constant) * edges * root;
  if (kind == BoundKind::general) numerator *= distance;
  return UpperBound(std::move(numerator), kRootFractionBits + max_substring);
}

}  // namespace advice_hunt
