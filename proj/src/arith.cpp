#include "waring/arith.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace waring {

BernoulliTable::BernoulliTable(std::size_t max_index) {
  exact_.reserve(max_index + 1);
  exact_.emplace_back(1);
  // sum_{i=0}^{m} C(m+1, i) B_i = 0 determines B_m from its predecessors.
  for (std::size_t m = 1; m <= max_index; ++m) {
    ExactRational acc(0);
    for (std::size_t i = 0; i < m; ++i) {
      acc += ExactRational(binomial(static_cast<unsigned>(m + 1), static_cast<unsigned>(i)), 1) *
             exact_[i];
    }
    exact_.push_back(-acc / ExactRational(static_cast<std::int64_t>(m + 1)));
  }
  approx_.reserve(exact_.size());
  for (const auto& b : exact_) approx_.push_back(b.to_double());
}

BernoulliTable bernoulli_numbers(std::size_t max_index) { return BernoulliTable(max_index); }

namespace {

// Double-precision coefficients C(kappa, j) B_{kappa-j}, indexed [kappa][j].
struct PolynomialCoefficients {
  std::vector<std::vector<double>> rows;

  explicit PolynomialCoefficients(const BernoulliTable& table) {
    rows.resize(table.max_index() + 1);
    for (std::size_t kap = 0; kap <= table.max_index(); ++kap) {
      rows[kap].resize(kap + 1);
      for (std::size_t j = 0; j <= kap; ++j) {
        ExactRational c =
            ExactRational(binomial(static_cast<unsigned>(kap), static_cast<unsigned>(j)), 1) *
            table[kap - j];
        rows[kap][j] = c.to_double();
      }
    }
  }
};

const PolynomialCoefficients& polynomial_cache() {
  static const PolynomialCoefficients coeffs(bernoulli_cache());
  return coeffs;
}

void check_index(unsigned kappa) {
  if (kappa > kBernoulliCacheIndex) {
    throw std::invalid_argument("Bernoulli index " + std::to_string(kappa) +
                                " exceeds the cached table");
  }
}

}  // namespace

const BernoulliTable& bernoulli_cache() {
  static const BernoulliTable table(kBernoulliCacheIndex);
  return table;
}

double bernoulli_polynomial(unsigned kappa, double x) {
  check_index(kappa);
  const auto& row = polynomial_cache().rows[kappa];
  double acc = 0.0;
  for (std::size_t j = row.size(); j-- > 0;) acc = acc * x + row[j];
  return acc;
}

ExactRational bernoulli_polynomial(unsigned kappa, const ExactRational& x) {
  check_index(kappa);
  const auto& table = bernoulli_cache();
  ExactRational acc(0);
  for (unsigned j = kappa + 1; j-- > 0;) {
    acc = acc * x + ExactRational(binomial(kappa, j), 1) * table[kappa - j];
  }
  return acc;
}

double periodic_bernoulli(unsigned kappa, double x) {
  return bernoulli_polynomial(kappa, x - std::floor(x));
}

ExactRational periodic_bernoulli(unsigned kappa, const ExactRational& x) {
  return bernoulli_polynomial(kappa, x.fractional_part());
}

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("log_gamma: argument must be positive and finite");
  }
  // Below 1/2 use Gamma(x) = Gamma(x + 1) / x instead of reflection.
  if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);

  static constexpr double g = 607.0 / 128.0;
  static constexpr std::array<double, 15> c = {
      0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
      14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
      .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
      -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
      .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

  double z = x - 1.0;
  double series = c[0];
  for (std::size_t i = 1; i < c.size(); ++i) series += c[i] / (z + static_cast<double>(i));
  double t = z + g + 0.5;
  constexpr double half_log_two_pi = 0.91893853320467274178;
  return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BigInt factorial(unsigned n) {
  BigInt result = 1;
  for (unsigned i = 2; i <= n; ++i) result *= i;
  return result;
}

unsigned FaaDiBrunoTerm::outer_order() const {
  unsigned total = 0;
  for (unsigned m : multiplicities) total += m;
  return total;
}

namespace {

// Fills m_j for j = index+1 .. N given the weight still to distribute.
void enumerate_partitions(unsigned order, std::size_t index, unsigned remaining,
                          std::vector<unsigned>& current, std::vector<FaaDiBrunoTerm>& out) {
  if (index == order) {
    if (remaining != 0) return;
    BigInt den = 1;
    for (std::size_t j = 0; j < order; ++j) {
      den *= factorial(current[j]);
      BigInt jf = factorial(static_cast<unsigned>(j + 1));
      for (unsigned e = 0; e < current[j]; ++e) den *= jf;
    }
    out.push_back({current, ExactRational(factorial(order), den)});
    return;
  }
  auto weight = static_cast<unsigned>(index + 1);
  for (unsigned m = remaining / weight + 1; m-- > 0;) {
    current[index] = m;
    enumerate_partitions(order, index + 1, remaining - m * weight, current, out);
  }
  current[index] = 0;
}

}  // namespace

std::vector<FaaDiBrunoTerm> faa_di_bruno_terms(unsigned order) {
  if (order == 0) throw std::invalid_argument("faa_di_bruno_terms: order must be positive");
  std::vector<FaaDiBrunoTerm> out;
  std::vector<unsigned> current(order, 0);
  enumerate_partitions(order, 0, order, current, out);
  return out;
}

double faa_di_bruno_derivative(std::span<const FaaDiBrunoTerm> terms,
                               std::span<const double> outer,
                               std::span<const double> inner) {
  double total = 0.0;
  for (const auto& term : terms) {
    if (term.multiplicities.size() > inner.size() || term.outer_order() >= outer.size()) {
      throw std::invalid_argument("faa_di_bruno_derivative: derivative arrays too short");
    }
    double product = term.coefficient.to_double() * outer[term.outer_order()];
    for (std::size_t j = 0; j < term.multiplicities.size(); ++j) {
      for (unsigned e = 0; e < term.multiplicities[j]; ++e) product *= inner[j];
    }
    total += product;
  }
  return total;
}

}  // namespace waring
