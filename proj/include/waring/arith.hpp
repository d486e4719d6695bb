#pragma once

// Exact and special-function arithmetic: Bernoulli numbers and polynomials,
// log-gamma, exact binomials, and Faa di Bruno term enumeration.

#include "waring/rational.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace waring {

// Immutable table of Bernoulli numbers B_0..B_K with B_1 = -1/2.
class BernoulliTable {
 public:
  explicit BernoulliTable(std::size_t max_index);

  std::size_t max_index() const { return exact_.size() - 1; }
  const ExactRational& operator[](std::size_t i) const { return exact_.at(i); }
  double value(std::size_t i) const { return approx_.at(i); }
  std::span<const ExactRational> values() const { return exact_; }

 private:
  std::vector<ExactRational> exact_;
  std::vector<double> approx_;
};

BernoulliTable bernoulli_numbers(std::size_t max_index);

// Shared table cached up to index 64; built once, safe to read concurrently.
const BernoulliTable& bernoulli_cache();
inline constexpr std::size_t kBernoulliCacheIndex = 64;

// B_kappa(x) = sum_j C(kappa, j) B_{kappa-j} x^j.
double bernoulli_polynomial(unsigned kappa, double x);
ExactRational bernoulli_polynomial(unsigned kappa, const ExactRational& x);

// beta_kappa(x) = B_kappa({x}).
double periodic_bernoulli(unsigned kappa, double x);
ExactRational periodic_bernoulli(unsigned kappa, const ExactRational& x);

// Natural log of Gamma(x) for x > 0 (Lanczos, g = 607/128). Throws
// std::domain_error for x <= 0.
double log_gamma(double x);

BigInt binomial(unsigned n, unsigned k);
BigInt factorial(unsigned n);

// One summand of Faa di Bruno's formula for d^N/dx^N F(G(x)).
// multiplicities[j-1] = m_j with sum_j j*m_j = N, and coefficient
// N!/(m_1!...m_N!) * prod_j (1/j!)^{m_j}.
struct FaaDiBrunoTerm {
  std::vector<unsigned> multiplicities;
  ExactRational coefficient;

  // Order of the outer derivative F^{(m_1+...+m_N)}.
  unsigned outer_order() const;
};

// All terms for order N >= 1, in decreasing lexicographic order of
// (m_1, ..., m_N).
std::vector<FaaDiBrunoTerm> faa_di_bruno_terms(unsigned order);

// Assembles d^N/dx^N F(G(x)) from outer[m] = F^{(m)}(G(x)) (m = 0..N) and
// inner[j-1] = G^{(j)}(x) (j = 1..N).
double faa_di_bruno_derivative(std::span<const FaaDiBrunoTerm> terms,
                               std::span<const double> outer,
                               std::span<const double> inner);

}  // namespace waring
