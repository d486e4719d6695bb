#pragma once

// Coefficients of the multi-term expansion
//
//   R_s(n) ~ n^{s/k-1} (c_0 + c_1 n^{-1/k} + ... + c_J n^{-J/k}),
//
// with c_j = (-1/2)^j C(s,j) G(s,j,k) S_{s-j}(n; Q) for even k and
// c_j = C(s,j) G(s,j,k) S_{s,j}(n; Q) for odd k, where
// G(s,j,k) = Gamma(1+1/k)^{s-j} / Gamma((s-j)/k). The singular series are
// always taken at an explicit truncation level Q.

#include "waring/series.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace waring {

// Gamma(1+1/k)^{s-j} / Gamma((s-j)/k), evaluated in the log domain.
// Throws std::domain_error if s - j <= 0.
double gamma_factor(int s, int j, int k);

enum class Parity { even_k, odd_k };

struct CoefficientTerm {
  int j = 0;
  double binomial = 0.0;  // C(s, j), exact before conversion
  double gamma_factor = 0.0;
  double series_value = 0.0;  // S_{s-j}(n;Q) or S_{s,j}(n;Q)
  double value = 0.0;         // c_j
};

struct ExpansionCoefficients {
  int k = 2;
  int s = 4;
  int J = 0;
  std::int64_t n = 1;
  std::int64_t Q = 1;
  Parity parity = Parity::even_k;
  std::vector<CoefficientTerm> terms;

  std::vector<double> coefficients() const;
};

// Precomputes the truncated series needed for every n at fixed (k, s, J, Q).
class ExpansionModel {
 public:
  ExpansionModel(int k, int s, int J, std::int64_t Q, unsigned threads = 1);

  ExpansionCoefficients coefficients(std::int64_t n) const;

  int k() const { return k_; }
  int s() const { return s_; }
  int J() const { return J_; }
  std::int64_t truncation() const { return Q_; }

 private:
  int k_;
  int s_;
  int J_;
  std::int64_t Q_;
  std::vector<double> binomials_;
  std::vector<double> gamma_factors_;
  std::vector<double> signs_;
  std::vector<std::unique_ptr<TruncatedSeries>> series_;
};

// Even k: rejects odd k. Odd k: rejects even k and J > k.
// Both reject s - J < 1 and the regime k | s with J > ceil(s/k - 1), where
// further terms of unknown form appear.
ExpansionCoefficients coefficients_even(int s, int J, std::int64_t n, int k, std::int64_t Q);
ExpansionCoefficients coefficients_odd(int s, int J, std::int64_t n, int k, std::int64_t Q);

// n^{s/k-1} sum_{j <= upto} c_j n^{-j/k}; upto defaults to J.
double evaluate_expansion(std::int64_t n, const ExpansionCoefficients& coeffs);
double evaluate_expansion(std::int64_t n, const ExpansionCoefficients& coeffs, int upto);

// Sufficient nu-admissibility threshold sigma_nu(k). Informational only.
double sigma_nu(int k, double nu);

}  // namespace waring
