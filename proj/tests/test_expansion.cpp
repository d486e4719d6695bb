#include "waring/expansion.hpp"

#include "waring/arith.hpp"
#include "waring/oracle.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace waring;

TEST_CASE("gamma factor closed forms") {
  const double pi = std::numbers::pi;
  CHECK(gamma_factor(4, 0, 2) == doctest::Approx(pi * pi / 16.0).epsilon(1e-14));
  for (int k = 2; k <= 9; ++k) {
    CHECK(gamma_factor(k, 0, k) ==
          doctest::Approx(std::pow(std::tgamma(1.0 + 1.0 / k), k)).epsilon(1e-13));
  }
  for (int k = 2; k <= 6; ++k) {
    for (int s = 1; s <= 20; ++s) {
      for (int j = 0; j < s && j <= 3; ++j) {
        double lhs = std::tgamma(static_cast<double>(s - j) / k) * gamma_factor(s, j, k);
        double rhs = std::pow(std::tgamma(1.0 + 1.0 / k), s - j);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
      }
    }
  }
  CHECK_THROWS_AS(gamma_factor(3, 3, 3), std::domain_error);
  CHECK_THROWS_AS(gamma_factor(3, 5, 3), std::domain_error);
}

TEST_CASE("gamma factor against Beta-integral quadrature") {
  // G(u) = Gamma(1+1/k)^u / Gamma(u/k) has G(1) = 1/k and
  // G(u+1) = G(u) * (1/k) * B(u/k, 1/k), with B computed numerically.
  const int k = 3;
  boost::math::quadrature::tanh_sinh<double> integrator;
  double G = 1.0 / k;
  for (int u = 1; u < 8; ++u) {
    const double a = static_cast<double>(u) / k;
    const double b = 1.0 / k;
    double beta = integrator.integrate(
        [&](double t, double tc) {
          // tc is the signed distance to the nearer endpoint; it gives 1 - t
          // accurately near t = 1.
          double one_minus_t = tc > 0.0 ? tc : 1.0 - t;
          if (t <= 0.0 || one_minus_t <= 0.0) return 0.0;
          return std::pow(t, a - 1.0) * std::pow(one_minus_t, b - 1.0);
        },
        0.0, 1.0);
    G *= beta / k;
  }
  CHECK(gamma_factor(9, 1, 3) == doctest::Approx(G).epsilon(1e-10));
  CHECK(gamma_factor(9, 1, 3) ==
        doctest::Approx(std::pow(std::tgamma(4.0 / 3.0), 8) / std::tgamma(8.0 / 3.0)).epsilon(1e-13));
}

TEST_CASE("even k coefficients") {
  const double pi = std::numbers::pi;
  for (std::int64_t n : {3, 10, 100}) {
    auto c = coefficients_even(5, 1, n, 2, 30);
    REQUIRE(c.terms.size() == 2);
    CHECK(c.parity == Parity::even_k);
    double series4 = singular_series_truncated({2, 4, 0, n, 30}).value.real();
    CHECK(c.terms[1].value == doctest::Approx(-2.5 * pi * pi / 16.0 * series4).epsilon(1e-12));
    if (series4 > 0) CHECK(c.terms[1].value < 0);
    double series5 = singular_series_truncated({2, 5, 0, n, 30}).value.real();
    CHECK(c.terms[0].value == doctest::Approx(gamma_factor(5, 0, 2) * series5).epsilon(1e-12));
  }
  CHECK_THROWS(coefficients_even(9, 1, 10, 3, 10));
}

TEST_CASE("even k: the modified-series route gives the same coefficients") {
  for (int k : {2, 4}) {
    const int s = 3 * k + 1;
    const std::int64_t Q = 24;
    ExpansionModel model(k, s, 2, Q);
    for (std::int64_t n : {5, 64, 999}) {
      auto c = model.coefficients(n);
      for (int j = 0; j <= 2; ++j) {
        double binom = static_cast<double>(binomial(static_cast<unsigned>(s), static_cast<unsigned>(j)));
        double via_modified =
            binom * gamma_factor(s, j, k) * TruncatedSeries(k, s, j, Q)(n).real();
        double got = c.terms[static_cast<std::size_t>(j)].value;
        CHECK(std::abs(got - via_modified) <= 1e-12 * std::max(1.0, std::abs(got)));
      }
    }
  }
}

TEST_CASE("odd k coefficients") {
  auto c = coefficients_odd(9, 0, 40, 3, 20);
  double series9 = singular_series_truncated({3, 9, 0, 40, 20}).value.real();
  CHECK(c.terms[0].value == doctest::Approx(gamma_factor(9, 0, 3) * series9).epsilon(1e-12));
  CHECK(c.parity == Parity::odd_k);

  auto d = coefficients_odd(13, 3, 77, 3, 25);
  for (const auto& t : d.terms) CHECK(std::isfinite(t.value));
  CHECK(d.terms[2].binomial == 78.0);

  CHECK_THROWS(coefficients_odd(13, 4, 10, 3, 10));  // J > k
  CHECK_THROWS(coefficients_odd(13, 1, 10, 2, 10));  // even k
  CHECK_THROWS(ExpansionModel(3, 6, 2, 10));         // k | s and J > s/k - 1
  CHECK_NOTHROW(ExpansionModel(3, 6, 1, 10));
  CHECK_THROWS(ExpansionModel(3, 2, 2, 10));         // s - J < 1
  CHECK_THROWS(ExpansionModel(3, 9, -1, 10));
}

TEST_CASE("odd k at multiples of Q!: c_1 approaches -(1/2) C(s,1) G S_{s-1}") {
  // Q = 5, n = 120 m; truncation 120.
  const int s = 13, k = 3;
  for (std::int64_t m : {1, 7}) {
    std::int64_t n = 120 * m;
    auto c = coefficients_odd(s, 1, n, k, 120);
    double classical = singular_series_truncated({k, s - 1, 0, n, 120}).value.real();
    double expected = -0.5 * s * gamma_factor(s, 1, k) * classical;
    CHECK(c.terms[1].value == doctest::Approx(expected).epsilon(0.25));
  }
}

TEST_CASE("evaluating the expansion") {
  auto c = coefficients_even(9, 1, 4096, 2, 64);
  const double n = 4096.0;
  CHECK(evaluate_expansion(4096, c, 0) ==
        doctest::Approx(c.terms[0].value * std::pow(n, 3.5)).epsilon(1e-14));
  double full = c.terms[0].value * std::pow(n, 3.5) + c.terms[1].value * std::pow(n, 3.0);
  CHECK(evaluate_expansion(4096, c) == doctest::Approx(full).epsilon(1e-13));

  // Linearity: doubling c_1 doubles its contribution.
  auto doubled = c;
  doubled.terms[1].value *= 2.0;
  double contribution = evaluate_expansion(4096, c) - evaluate_expansion(4096, c, 0);
  CHECK(evaluate_expansion(4096, doubled) - evaluate_expansion(4096, c, 0) ==
        doctest::Approx(2.0 * contribution).epsilon(1e-10));

  auto zeros = c;
  for (auto& t : zeros.terms) t.value = 0.0;
  CHECK(evaluate_expansion(4096, zeros) == 0.0);

  // Against the exact count R_9(4096).
  auto exact = count_representations(2, 9, 4096);
  double R = static_cast<double>(exact[4096]);
  double e0 = std::abs(R - evaluate_expansion(4096, c, 0));
  double e1 = std::abs(R - evaluate_expansion(4096, c, 1));
  CHECK(e1 < e0);
  // The first omitted term has size n^{(s-2)/k - 1} = n^{2.5}.
  CHECK(e1 < 2.0 * std::pow(n, 2.5));
  CHECK(e0 > std::pow(n, 2.5));

  CHECK_THROWS(evaluate_expansion(0, c));
  CHECK_THROWS(evaluate_expansion(10, c, 2));
}

TEST_CASE("admissibility thresholds") {
  CHECK(sigma_nu(2, 1.0) == 6.0);
  CHECK(sigma_nu(8, 1.0) == 126.0);
  CHECK(sigma_nu(6, 1.0) == 70.0);
  CHECK(sigma_nu(3, 2.0) == 16.0);
  CHECK_THROWS(sigma_nu(3, 0.5));
}
