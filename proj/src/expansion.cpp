#include "waring/expansion.hpp"

#include "waring/arith.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace waring {

double gamma_factor(int s, int j, int k) {
  if (k < 2) throw std::invalid_argument("gamma_factor: k must be >= 2");
  int u = s - j;
  if (u <= 0) throw std::domain_error("gamma_factor: requires s - j >= 1");
  double kk = static_cast<double>(k);
  return std::exp(u * log_gamma(1.0 + 1.0 / kk) - log_gamma(u / kk));
}

std::vector<double> ExpansionCoefficients::coefficients() const {
  std::vector<double> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(t.value);
  return out;
}

namespace {

void check_expansion_args(int s, int J, int k, std::int64_t Q) {
  if (k < 2) throw std::invalid_argument("expansion: k must be >= 2");
  if (J < 0) throw std::invalid_argument("expansion: J must be >= 0");
  if (s - J < 1) throw std::invalid_argument("expansion: requires s - J >= 1");
  if (Q < 1) throw std::invalid_argument("expansion: Q must be >= 1");
  if (k % 2 == 1 && J > k) {
    throw std::invalid_argument("expansion: odd k requires J <= k (got J = " +
                                std::to_string(J) + ")");
  }
  if (s % k == 0) {
    int ceiling = s / k - 1;  // s/k - 1 is an integer here
    if (J > ceiling) {
      throw std::invalid_argument(
          "expansion: k divides s and J > s/k - 1; additional terms of unknown shape arise "
          "in this regime");
    }
  }
}

}  // namespace

ExpansionModel::ExpansionModel(int k, int s, int J, std::int64_t Q, unsigned threads)
    : k_(k), s_(s), J_(J), Q_(Q) {
  check_expansion_args(s, J, k, Q);
  const bool even = (k % 2 == 0);
  auto sums = modulus_sums_upto(Q, k, threads);
  for (int j = 0; j <= J; ++j) {
    binomials_.push_back(ExactRational(binomial(static_cast<unsigned>(s),
                                                static_cast<unsigned>(j)), 1)
                             .to_double());
    gamma_factors_.push_back(gamma_factor(s, j, k));
    signs_.push_back(even ? std::pow(-0.5, j) : 1.0);
    // Even k: the classical series of exponent s - j. Odd k: S_{s,j}.
    series_.push_back(even ? std::make_unique<TruncatedSeries>(sums, s - j, 0, threads)
                           : std::make_unique<TruncatedSeries>(sums, s, j, threads));
  }
}

ExpansionCoefficients ExpansionModel::coefficients(std::int64_t n) const {
  ExpansionCoefficients out;
  out.k = k_;
  out.s = s_;
  out.J = J_;
  out.n = n;
  out.Q = Q_;
  out.parity = (k_ % 2 == 0) ? Parity::even_k : Parity::odd_k;
  for (int j = 0; j <= J_; ++j) {
    auto idx = static_cast<std::size_t>(j);
    CoefficientTerm t;
    t.j = j;
    t.binomial = binomials_[idx];
    t.gamma_factor = gamma_factors_[idx];
    // Truncated series are real up to rounding (a <-> q - a pairing).
    t.series_value = (*series_[idx])(n).real();
    t.value = signs_[idx] * t.binomial * t.gamma_factor * t.series_value;
    out.terms.push_back(t);
  }
  return out;
}

ExpansionCoefficients coefficients_even(int s, int J, std::int64_t n, int k, std::int64_t Q) {
  if (k % 2 != 0) throw std::invalid_argument("coefficients_even: k must be even");
  return ExpansionModel(k, s, J, Q).coefficients(n);
}

ExpansionCoefficients coefficients_odd(int s, int J, std::int64_t n, int k, std::int64_t Q) {
  if (k % 2 == 0) throw std::invalid_argument("coefficients_odd: k must be odd");
  return ExpansionModel(k, s, J, Q).coefficients(n);
}

double evaluate_expansion(std::int64_t n, const ExpansionCoefficients& coeffs) {
  return evaluate_expansion(n, coeffs, coeffs.J);
}

double evaluate_expansion(std::int64_t n, const ExpansionCoefficients& coeffs, int upto) {
  if (n < 1) throw std::invalid_argument("evaluate_expansion: n must be >= 1");
  if (upto < 0 || upto >= static_cast<int>(coeffs.terms.size())) {
    throw std::invalid_argument("evaluate_expansion: term index out of range");
  }
  const double nn = static_cast<double>(n);
  const double k = coeffs.k;
  double total = 0.0;
  for (int j = 0; j <= upto; ++j) {
    total += coeffs.terms[static_cast<std::size_t>(j)].value * std::pow(nn, -j / k);
  }
  return std::pow(nn, coeffs.s / k - 1.0) * total;
}

double sigma_nu(int k, double nu) {
  if (k < 2) throw std::invalid_argument("sigma_nu: k must be >= 2");
  if (!(nu >= 1.0)) throw std::invalid_argument("sigma_nu: nu must be >= 1");
  if (k <= 5) return std::ldexp(1.0, k) + std::ldexp(1.0, k - 1) * nu;
  if (k <= 7) return 2.0 * k * k - 2.0 + std::ldexp(1.0, k - 1) * (nu - 1.0);
  return 4.0 * k - 2.0 + 2.0 * k * (k - 2) * nu;
}

}  // namespace waring
