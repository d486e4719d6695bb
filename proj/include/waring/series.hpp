#pragma once

// Truncated classical and modified singular series
//
//   S_{s,j}(n; Q) = sum_{1 <= q <= Q} sum_{(a,q)=1} (S(q,a)/q)^{s-j} T(q,a)^j e(-na/q),
//
// with j = 0 giving the classical series, plus the tail sums V_A^B(u; theta)
// and the odd-k identities relating S_{s,1}, S_{s,1}(-n) and S_{s-1}.
//
// Summation order is fixed: for each q the coprime residues a are added in
// increasing order, then the per-q partial sums in increasing q, both with
// compensated accumulation. Values are therefore reproducible bit for bit
// regardless of how evaluations are batched or threaded.

#include "waring/expsums.hpp"

#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace waring {

// 1 when k = 2, 0 otherwise.
int delta_k(int k);

struct TruncationSpec {
  int k = 2;
  int s = 4;          // series exponent (u for classical series)
  int j = 0;          // number of T factors; 0 is the classical series
  std::int64_t n = 0; // may be negative
  std::int64_t Q = 1; // truncation level

  // floor(n^{1/k}) clamped below at 1, i.e. "1 <= q <= P" with P = n^{1/k}.
  static std::int64_t default_truncation(std::int64_t n, int k);
  static TruncationSpec with_default_truncation(int k, int s, int j, std::int64_t n);

  int delta() const { return delta_k(k); }
  void validate() const;
};

struct SeriesValue {
  std::complex<double> value;
  TruncationSpec spec;
  std::int64_t term_count = 0;
  // Sum of |term| over moduli Q/2 < q <= Q; a rough proxy for the size of
  // the neglected tail, not a bound.
  double tail_estimate = 0.0;
};

// Number of pairs (q, a) with 1 <= a <= q <= Q and (a, q) = 1.
std::int64_t coprime_pair_count(std::int64_t Q);

// S(q, a) and T(q, a) for q = 1..Q (index q - 1).
std::vector<ModulusSums> modulus_sums_upto(std::int64_t Q, int k, unsigned threads = 1);

// A truncated (modified) singular series for fixed (k, s, j, Q), with the
// per-modulus contributions tabulated by n mod q so that evaluating many n
// costs O(Q) each.
class TruncatedSeries {
 public:
  TruncatedSeries(int k, int s, int j, std::int64_t Q, unsigned threads = 1);
  // Reuses precomputed sums; sums[q - 1] must hold modulus q for q = 1..Q.
  TruncatedSeries(std::span<const ModulusSums> sums, int s, int j, unsigned threads = 1);

  std::complex<double> operator()(std::int64_t n) const;
  SeriesValue evaluate(std::int64_t n) const;
  std::vector<std::complex<double>> evaluate_range(std::int64_t first, std::int64_t last,
                                                   unsigned threads = 1) const;

  int k() const { return k_; }
  int s() const { return s_; }
  int j() const { return j_; }
  std::int64_t truncation() const { return Q_; }
  std::int64_t term_count() const { return terms_; }
  double tail_estimate() const { return tail_estimate_; }

 private:
  void build(std::span<const ModulusSums> sums, unsigned threads);

  int k_;
  int s_;
  int j_;
  std::int64_t Q_;
  std::int64_t terms_ = 0;
  double tail_estimate_ = 0.0;
  // by_residue_[q - 1][rho] = sum_{(a,q)=1} W(q,a) e(-rho a / q)
  std::vector<std::vector<std::complex<double>>> by_residue_;
};

// Classical truncated series; requires spec.j == 0 and s >= 2.
SeriesValue singular_series_truncated(const TruncationSpec& spec);

SeriesValue modified_series_truncated(const TruncationSpec& spec);

struct TailOptions {
  // Block extension stops once a block [B, 2B) adds less than this fraction
  // of the running total.
  double relative_tolerance = 1e-12;
  // Largest modulus evaluated for an infinite upper limit. If reached, the
  // remainder is extrapolated geometrically from the last two blocks.
  std::int64_t max_modulus = 4096;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// V_A^B(u; theta) = sum_{A <= q < B} sum_{(a,q)=1} q^theta |S(q,a)/q|^u.
// B = kInfinity requires u > k(1 + theta) + 1 + delta_k.
double tail_sum_V(double A, double B, int u, double theta, int k, const TailOptions& options = {});

// |S_{s,1}(n;Q) + S_{s,1}(-n;Q) + S_{s-1}(n;Q)| for odd k.
double identity_13_1_residual(int s, std::int64_t n, std::int64_t Q, int k);

// S_{s,1}(n; Q_trunc) + S_{s-1}(n; Q_trunc) / 2 at n = Q! * m, for odd k
// and 2s >= 3k + 6.
double theorem_1_4_discrepancy(int s, int k, std::int64_t Q, std::int64_t m,
                               std::int64_t Q_trunc);

// |S_{s,j}(n; Q)| for n = 1..x.
std::vector<double> series_magnitudes(int k, int s, int j, std::int64_t Q, std::int64_t x,
                                      unsigned threads = 1);

struct CensusResult {
  std::int64_t count = 0;
  double fraction = 0.0;
};

// Counts n in [1, x] with |S_{s,j}(n; Q)| >= C. Requires 2s >= (j + 4)(k + 2).
CensusResult nonvanishing_census(int s, int j, int k, std::int64_t x, std::int64_t Q, double C,
                                 unsigned threads = 1);

}  // namespace waring
