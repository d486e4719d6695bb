#include "waring/arith.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

using namespace waring;

namespace {

ExactRational frac(long long p, long long q) { return ExactRational(BigInt(p), BigInt(q)); }

}  // namespace

TEST_CASE("Bernoulli numbers") {
  auto table = bernoulli_numbers(12);
  CHECK(table[0] == ExactRational(1));
  CHECK(table[1] == frac(-1, 2));
  CHECK(table[2] == frac(1, 6));
  CHECK(table[3] == ExactRational(0));
  CHECK(table[4] == frac(-1, 30));
  CHECK(table[6] == frac(1, 42));
  CHECK(table[8] == frac(-1, 30));
  CHECK(table[10] == frac(5, 66));
  CHECK(table[12] == frac(-691, 2730));
  for (std::size_t m = 3; m <= 12; m += 2) CHECK(table[m].is_zero());
  CHECK(table.value(12) == doctest::Approx(-691.0 / 2730.0).epsilon(1e-15));
}

TEST_CASE("Bernoulli recurrence residual vanishes exactly") {
  const std::size_t K = 40;
  auto table = bernoulli_numbers(K);
  for (unsigned m = 1; m <= K; ++m) {
    ExactRational residual(0);
    for (unsigned i = 0; i <= m; ++i) residual += ExactRational(binomial(m + 1, i), 1) * table[i];
    CHECK(residual.is_zero());
  }
  const auto& cached = bernoulli_cache();
  CHECK(cached.max_index() == kBernoulliCacheIndex);
  for (unsigned m = 0; m <= K; ++m) CHECK(cached[m] == table[m]);
}

TEST_CASE("Bernoulli polynomials") {
  CHECK(bernoulli_polynomial(0, 0.3) == 1.0);
  CHECK(bernoulli_polynomial(1, 0.75) == doctest::Approx(0.25));
  CHECK(bernoulli_polynomial(2, 0.0) == doctest::Approx(1.0 / 6.0));
  for (unsigned m = 0; m <= 30; ++m) {
    CHECK(bernoulli_polynomial(m, ExactRational(0)) == bernoulli_cache()[m]);
  }
  for (double x : {-1.3, 0.0, 0.2, 0.5, 0.9, 2.7}) {
    CHECK(bernoulli_polynomial(2, x) == doctest::Approx(x * x - x + 1.0 / 6.0).epsilon(1e-14));
    CHECK(bernoulli_polynomial(3, x) ==
          doctest::Approx(x * x * x - 1.5 * x * x + 0.5 * x).epsilon(1e-13));
  }
  // B_m(x + 1) - B_m(x) = m x^{m-1}, exactly.
  for (unsigned m = 1; m <= 12; ++m) {
    ExactRational x = frac(2, 7);
    ExactRational power(1);
    for (unsigned i = 1; i < m; ++i) power *= x;
    CHECK(bernoulli_polynomial(m, x + ExactRational(1)) - bernoulli_polynomial(m, x) ==
          ExactRational(static_cast<long long>(m)) * power);
  }
  // Reflection B_m(1 - x) = (-1)^m B_m(x).
  for (unsigned m = 0; m <= 10; ++m) {
    ExactRational x = frac(3, 11);
    ExactRational lhs = bernoulli_polynomial(m, ExactRational(1) - x);
    ExactRational rhs = bernoulli_polynomial(m, x);
    CHECK(lhs == (m % 2 == 0 ? rhs : -rhs));
  }
}

TEST_CASE("periodic Bernoulli functions") {
  CHECK(periodic_bernoulli(1, -0.25) == doctest::Approx(0.25));
  CHECK(periodic_bernoulli(1, 3.0) == doctest::Approx(-0.5));
  CHECK(periodic_bernoulli(2, 1.5) == doctest::Approx(-1.0 / 12.0));
  CHECK(periodic_bernoulli(1, frac(-1, 4)) == frac(1, 4));
  for (unsigned m = 1; m <= 6; ++m) {
    for (double x : {0.1, 0.45, 0.8}) {
      CHECK(periodic_bernoulli(m, x + 5.0) == doctest::Approx(periodic_bernoulli(m, x)).epsilon(1e-12));
      CHECK(periodic_bernoulli(m, x - 3.0) == doctest::Approx(periodic_bernoulli(m, x)).epsilon(1e-12));
    }
  }
  // Mean zero over a period (midpoint rule is exact enough at this size).
  for (unsigned m = 1; m <= 5; ++m) {
    double sum = 0.0;
    const int steps = 20000;
    for (int i = 0; i < steps; ++i) sum += periodic_bernoulli(m, (i + 0.5) / steps);
    CHECK(std::abs(sum / steps) < 1e-8);
  }
}

TEST_CASE("log gamma") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(log_gamma(1.5) == doctest::Approx(std::log(std::sqrt(std::numbers::pi) / 2.0)).epsilon(1e-14));
  for (double x : {0.5, 1.0, 2.5, 10.0}) {
    CHECK(std::abs(log_gamma(x + 1.0) - log_gamma(x) - std::log(x)) <= 1e-12);
  }
  for (double x = 0.01; x < 150.0; x *= 1.37) {
    double ref = std::lgamma(x);
    CHECK(std::abs(log_gamma(x) - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
  }
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("binomials and factorials") {
  // Pascal's triangle as the oracle.
  std::vector<BigInt> row{1};
  for (unsigned n = 1; n <= 60; ++n) {
    std::vector<BigInt> next(n + 1, 1);
    for (unsigned k = 1; k < n; ++k) next[k] = row[k - 1] + row[k];
    row = next;
    for (unsigned k = 0; k <= n; ++k) CHECK(binomial(n, k) == row[k]);
  }
  CHECK(binomial(5, 7) == 0);
  CHECK(factorial(0) == 1);
  CHECK(factorial(20) == BigInt("2432902008176640000"));
  CHECK(factorial(30) == factorial(29) * 30);
}

TEST_CASE("Faa di Bruno terms") {
  auto t1 = faa_di_bruno_terms(1);
  REQUIRE(t1.size() == 1);
  CHECK(t1[0].multiplicities == std::vector<unsigned>{1});
  CHECK(t1[0].coefficient == ExactRational(1));

  auto t2 = faa_di_bruno_terms(2);
  REQUIRE(t2.size() == 2);
  CHECK(t2[0].multiplicities == std::vector<unsigned>{2, 0});
  CHECK(t2[1].multiplicities == std::vector<unsigned>{0, 1});
  CHECK(t2[0].coefficient == ExactRational(1));
  CHECK(t2[1].coefficient == ExactRational(1));

  auto t3 = faa_di_bruno_terms(3);
  REQUIRE(t3.size() == 3);
  CHECK(t3[0].multiplicities == std::vector<unsigned>{3, 0, 0});
  CHECK(t3[1].multiplicities == std::vector<unsigned>{1, 1, 0});
  CHECK(t3[2].multiplicities == std::vector<unsigned>{0, 0, 1});
  CHECK(t3[0].coefficient == ExactRational(1));
  CHECK(t3[1].coefficient == ExactRational(3));
  CHECK(t3[2].coefficient == ExactRational(1));

  // Term counts are the partition numbers, coefficient sums the Bell numbers.
  const std::vector<std::size_t> partitions{1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  const std::vector<long long> bell{1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975};
  for (unsigned N = 1; N <= 10; ++N) {
    auto terms = faa_di_bruno_terms(N);
    CHECK(terms.size() == partitions[N - 1]);
    ExactRational total(0);
    for (const auto& t : terms) {
      unsigned weight = 0;
      for (unsigned j = 0; j < N; ++j) weight += (j + 1) * t.multiplicities[j];
      CHECK(weight == N);
      total += t.coefficient;
    }
    CHECK(total == ExactRational(bell[N - 1]));
  }
  CHECK_THROWS(faa_di_bruno_terms(0));
}

TEST_CASE("Faa di Bruno assembly of composite derivatives") {
  // F = exp, G = identity: only the (N, 0, ..., 0) term survives.
  for (unsigned N = 1; N <= 8; ++N) {
    auto terms = faa_di_bruno_terms(N);
    std::vector<double> outer(N + 1, 1.0);
    std::vector<double> inner(N, 0.0);
    inner[0] = 1.0;
    CHECK(faa_di_bruno_derivative(terms, outer, inner) == doctest::Approx(1.0));
  }
  // F(y) = y^2, G(x) = x^3 + x: F(G(x)) = x^6 + 2x^4 + x^2.
  const double x = 1.3;
  const double G = x * x * x + x;
  std::vector<double> outer{G * G, 2.0 * G, 2.0, 0.0, 0.0, 0.0, 0.0};
  std::vector<double> inner{3.0 * x * x + 1.0, 6.0 * x, 6.0, 0.0, 0.0, 0.0};
  auto poly_derivative = [](unsigned N, double t) {
    // d^N of t^6 + 2 t^4 + t^2
    auto falling = [](unsigned p, unsigned n) {
      double r = 1.0;
      for (unsigned i = 0; i < n; ++i) r *= static_cast<double>(p - i);
      return r;
    };
    double total = 0.0;
    for (auto [p, c] : {std::pair{6u, 1.0}, std::pair{4u, 2.0}, std::pair{2u, 1.0}}) {
      if (N <= p) total += c * falling(p, N) * std::pow(t, static_cast<double>(p - N));
    }
    return total;
  };
  for (unsigned N = 1; N <= 6; ++N) {
    auto terms = faa_di_bruno_terms(N);
    double got = faa_di_bruno_derivative(terms, std::span(outer).first(N + 1),
                                         std::span(inner).first(N));
    CHECK(got == doctest::Approx(poly_derivative(N, x)).epsilon(1e-12));
  }
}
