#pragma once

// Complete exponential sums S(q, a) = sum_{r=1}^{q} e(a r^k / q), their
// linearly weighted counterpart T(q, a) with weight 1/2 - r/q, and
// T_dagger(q, a) = T(q, a) + 1/2. Here e(z) = exp(2 pi i z).

#include <complex>
#include <cstdint>
#include <vector>

namespace waring {

struct ExpSumValue {
  std::complex<double> value;
  std::int64_t q = 1;
  std::int64_t a = 0;
  int k = 2;

  double real() const { return value.real(); }
  double imag() const { return value.imag(); }
  double abs() const { return std::abs(value); }
};

// (base^exp) mod m with 128-bit intermediates; m >= 1.
std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

// e(residue / q) for residue in [0, q).
std::complex<double> unit_root(std::int64_t residue, std::int64_t q);

// Direct O(q) summation; the phase a r^k mod q is reduced exactly first.
ExpSumValue complete_sum_S(std::int64_t q, std::int64_t a, int k);
ExpSumValue weighted_sum_T(std::int64_t q, std::int64_t a, int k);

// Requires odd k and (a, q) = 1; throws std::invalid_argument otherwise.
ExpSumValue sum_T_dagger(std::int64_t q, std::int64_t a, int k);

// S(q, a) and T(q, a) for every a in [0, q), from the exact residue
// histograms of r^k mod q and one length-q DFT each.
struct ModulusSums {
  std::int64_t q = 1;
  int k = 2;
  std::vector<std::complex<double>> S;
  std::vector<std::complex<double>> T;
};

// With with_weighted = false only S is filled.
ModulusSums modulus_sums(std::int64_t q, int k, bool with_weighted = true);

std::vector<ExpSumValue> batch_S(std::int64_t q, int k);
std::vector<ExpSumValue> batch_T(std::int64_t q, int k);

}  // namespace waring
