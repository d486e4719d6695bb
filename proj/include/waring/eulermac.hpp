#pragma once

// Lattice-point power sums and their asymptotic predictions.
//
//   two-sided  Upsilon = sum_{-(X+r)/q <= h <= (X-r)/q} (X^k - (qh+r)^k)^theta
//   dagger     Upsilon = sum_{-r/q < h <= (X-r)/q}    (X^k - (qh+r)^k)^theta
//
// and the l-dimensional versions Xi over x_i = r_i (mod q). Differences
// between the direct sums and their leading terms are many orders of
// magnitude below the sums themselves, so everything here is carried in
// 50-digit binary floating point.

#include "waring/rational.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace waring {

using wide_real = boost::multiprecision::cpp_bin_float_50;

enum class Variant { two_sided, dagger };

struct LatticeSumSpec {
  std::int64_t q = 1;
  std::vector<std::int64_t> r{0};  // one residue per dimension
  double X = 1.0;
  double theta = 0.0;
  int k = 2;
  int N = 1;

  int l() const { return static_cast<int>(r.size()); }
};

struct UpsilonAsymptotic {
  wide_real main;
  wide_real psi;  // zero for the two-sided variant
  wide_real error_scale;
};

struct XiAsymptotic {
  std::vector<wide_real> terms;  // one term (two-sided) or l+1 terms (dagger)
  wide_real error_scale;

  wide_real total() const;
};

struct SymmetricBernoulliValue {
  int m = 0;
  ExactRational exact;
  double value = 0.0;
};

// Uses r[0] only. Requires X >= 1, q >= 1, theta >= 0.
wide_real upsilon_direct(const LatticeSumSpec& spec, Variant variant, unsigned threads = 1);

// Requires 1 <= N <= ceil(theta) (N = 1 is also accepted for theta = 0);
// the dagger variant requires odd k.
UpsilonAsymptotic upsilon_asymptotic(const LatticeSumSpec& spec, Variant variant);

// Nested enumeration over all l coordinates; cost grows like (X/q)^l.
// Parallel over the outermost coordinate with an ordered reduction.
wide_real xi_direct(const LatticeSumSpec& spec, Variant variant, unsigned threads = 1);

// Dagger requires odd k and N <= min(ceil(theta), k + 1).
XiAsymptotic xi_asymptotic(const LatticeSumSpec& spec, Variant variant);

// sigma_m(beta_1(-r_1/q), ..., beta_1(-r_l/q)); zero for m = -1 and m > l.
SymmetricBernoulliValue symmetric_bernoulli(std::int64_t q, std::span<const std::int64_t> r, int m);

struct EulerMaclaurinResult {
  double value = 0.0;
  double remainder_integral = 0.0;  // int_a^b beta_K F^{(K)}, unscaled
};

// Reconstructs sum_{a < n <= b} F(n) from derivatives[kappa] = F^{(kappa)},
// kappa = 0..K, as
//   int_a^b F + sum_{kappa=1}^K (-1)^kappa/kappa! [beta_kappa F^{(kappa-1)}]_a^b
//   - (-1)^K/K! int_a^b beta_K F^{(K)}.
// Both integrals are computed piecewise between consecutive integers.
// Throws std::runtime_error if the quadrature does not converge.
EulerMaclaurinResult euler_maclaurin_sum(std::span<const std::function<double(double)>> derivatives,
                                         double a, double b, int K);

}  // namespace waring
