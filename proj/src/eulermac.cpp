#include "waring/eulermac.hpp"

#include "waring/arith.hpp"
#include "waring/numeric.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace waring {

namespace {

void check_spec(const LatticeSumSpec& spec) {
  if (spec.q < 1) throw std::invalid_argument("lattice sum: q must be >= 1");
  if (spec.k < 2) throw std::invalid_argument("lattice sum: k must be >= 2");
  if (!(spec.X >= 1.0) || !std::isfinite(spec.X)) {
    throw std::invalid_argument("lattice sum: X must be a finite real >= 1");
  }
  if (!(spec.theta >= 0.0) || !std::isfinite(spec.theta)) {
    throw std::invalid_argument("lattice sum: theta must be a finite real >= 0");
  }
  if (spec.r.empty()) throw std::invalid_argument("lattice sum: need at least one residue");
}

int ceil_theta(double theta) { return static_cast<int>(std::ceil(theta)); }

void check_order(const LatticeSumSpec& spec, int upper) {
  // theta = 0 has ceil(theta) = 0, but the first-order statement still holds.
  int hi = std::max(upper, 1);
  if (spec.N < 1 || spec.N > hi) {
    throw std::invalid_argument("lattice sum asymptotics: N = " + std::to_string(spec.N) +
                                " outside the admissible range 1.." + std::to_string(hi));
  }
}

wide_real to_wide(const ExactRational& x) {
  return wide_real(x.numerator()) / wide_real(x.denominator());
}

wide_real int_power(std::int64_t m, int k) {
  return boost::multiprecision::pow(wide_real(m), k);
}

// (base)^theta with the base clamped at zero; 0^0 = 1.
wide_real clamped_power(const wide_real& base, double theta) {
  if (theta == 0.0) return wide_real(1);
  if (base <= 0) return wide_real(0);
  return boost::multiprecision::pow(base, wide_real(theta));
}

// Integers x = r (mod q), listed in increasing order, with lo < x <= hi or
// lo <= x <= hi depending on the left endpoint.
std::vector<std::int64_t> residue_class(std::int64_t q, std::int64_t r, const ExactRational& lo,
                                        bool lo_closed, const ExactRational& hi) {
  // x = q t + r; t runs over an interval of integers.
  ExactRational qq(q);
  ExactRational t_lo = (lo - ExactRational(r)) / qq;
  ExactRational t_hi = (hi - ExactRational(r)) / qq;
  BigInt first = lo_closed ? t_lo.ceil() : t_lo.floor() + 1;
  BigInt last = t_hi.floor();
  std::vector<std::int64_t> out;
  for (BigInt t = first; t <= last; ++t) out.push_back(q * static_cast<std::int64_t>(t) + r);
  return out;
}

wide_real gamma_wide(const wide_real& x) { return boost::math::tgamma(x); }

// 1/Gamma(x), zero at the poles.
wide_real reciprocal_gamma(const wide_real& x) {
  if (x <= 0 && x == boost::multiprecision::floor(x)) return wide_real(0);
  return 1 / gamma_wide(x);
}

}  // namespace

wide_real XiAsymptotic::total() const {
  wide_real sum = 0;
  for (const auto& t : terms) sum += t;
  return sum;
}

wide_real upsilon_direct(const LatticeSumSpec& spec, Variant variant, unsigned threads) {
  check_spec(spec);
  const std::int64_t q = spec.q;
  const std::int64_t r = spec.r.front();
  const ExactRational X = ExactRational::from_double(spec.X);
  const ExactRational qq(q);

  // Range of h from exact rational endpoints.
  BigInt h_first;
  if (variant == Variant::two_sided) {
    h_first = ((-X - ExactRational(r)) / qq).ceil();
  } else {
    h_first = (ExactRational(-r) / qq).floor() + 1;
  }
  BigInt h_last = ((X - ExactRational(r)) / qq).floor();
  if (h_last < h_first) return wide_real(0);

  const auto first = static_cast<std::int64_t>(h_first);
  const auto count = static_cast<std::size_t>(static_cast<std::int64_t>(h_last) - first + 1);
  const wide_real Xk = boost::multiprecision::pow(wide_real(spec.X), spec.k);
  std::vector<wide_real> terms(count);
  parallel_for(count, threads, [&](std::size_t i) {
    std::int64_t m = q * (first + static_cast<std::int64_t>(i)) + r;
    terms[i] = clamped_power(Xk - int_power(m, spec.k), spec.theta);
  });
  wide_real total = 0;
  for (const auto& t : terms) total += t;
  return total;
}

UpsilonAsymptotic upsilon_asymptotic(const LatticeSumSpec& spec, Variant variant) {
  check_spec(spec);
  check_order(spec, ceil_theta(spec.theta));
  if (variant == Variant::dagger && spec.k % 2 == 0) {
    throw std::invalid_argument("dagger lattice sum asymptotics require odd k");
  }
  const wide_real X(spec.X);
  const wide_real q(spec.q);
  const wide_real theta(spec.theta);
  const wide_real inv_k = wide_real(1) / spec.k;
  const wide_real Xktheta = boost::multiprecision::pow(X, spec.k * theta);
  const wide_real density =
      gamma_wide(1 + theta) * gamma_wide(1 + inv_k) / gamma_wide(1 + theta + inv_k);

  UpsilonAsymptotic out;
  out.error_scale = Xktheta * boost::multiprecision::pow(q / X, spec.N - 1);
  if (variant == Variant::two_sided) {
    out.main = 2 * X / q * Xktheta * density;
    out.psi = 0;
    return out;
  }
  out.main = Xktheta * X / q * density;
  const ExactRational shift = ExactRational(-spec.r.front(), spec.q);
  wide_real psi = 0;
  for (int nu = 0; nu * spec.k <= spec.N - 1; ++nu) {
    const unsigned order = static_cast<unsigned>(nu * spec.k + 1);
    wide_real coeff = gamma_wide(1 + theta) * reciprocal_gamma(1 + theta - nu) /
                      (wide_real(factorial(static_cast<unsigned>(nu))) * wide_real(order));
    psi += coeff * to_wide(periodic_bernoulli(order, shift)) *
           boost::multiprecision::pow(q / X, spec.k * nu);
  }
  out.psi = Xktheta * psi;
  return out;
}

namespace {

struct XiEnumeration {
  std::vector<std::vector<std::int64_t>> coords;  // admissible values per dimension
  std::vector<std::vector<wide_real>> powers;     // their k-th powers
  wide_real Xk;
  double theta = 0.0;

  // Sum over coordinates d.. with the first d already fixed.
  wide_real sum_from(std::size_t d, const wide_real& partial) const {
    if (d == coords.size()) {
      wide_real base = Xk - partial;
      if (base < 0) return wide_real(0);
      return clamped_power(base, theta);
    }
    wide_real total = 0;
    for (const auto& p : powers[d]) {
      wide_real next = partial + p;
      total += sum_from(d + 1, next);
    }
    return total;
  }
};

}  // namespace

wide_real xi_direct(const LatticeSumSpec& spec, Variant variant, unsigned threads) {
  check_spec(spec);
  const ExactRational X = ExactRational::from_double(spec.X);
  XiEnumeration e;
  e.Xk = boost::multiprecision::pow(wide_real(spec.X), spec.k);
  e.theta = spec.theta;
  for (std::int64_t r : spec.r) {
    auto xs = variant == Variant::two_sided ? residue_class(spec.q, r, -X, true, X)
                                            : residue_class(spec.q, r, ExactRational(0), false, X);
    std::vector<wide_real> pw;
    pw.reserve(xs.size());
    for (auto x : xs) pw.push_back(int_power(x, spec.k));
    e.coords.push_back(std::move(xs));
    e.powers.push_back(std::move(pw));
  }
  const auto& outer = e.powers.front();
  std::vector<wide_real> partials(outer.size());
  parallel_for(outer.size(), threads,
               [&](std::size_t i) { partials[i] = e.sum_from(1, outer[i]); });
  wide_real total = 0;
  for (const auto& p : partials) total += p;
  return total;
}

SymmetricBernoulliValue symmetric_bernoulli(std::int64_t q, std::span<const std::int64_t> r, int m) {
  if (q < 1) throw std::invalid_argument("symmetric_bernoulli: q must be >= 1");
  SymmetricBernoulliValue out;
  out.m = m;
  const int l = static_cast<int>(r.size());
  if (m < 0 || m > l) {
    if (m < -1) throw std::invalid_argument("symmetric_bernoulli: m must be >= -1");
    out.exact = ExactRational(0);
    return out;
  }
  // e[j] after processing y_1..y_i holds sigma_j(y_1..y_i).
  std::vector<ExactRational> e(static_cast<std::size_t>(l) + 1, ExactRational(0));
  e[0] = ExactRational(1);
  for (int i = 0; i < l; ++i) {
    ExactRational y = periodic_bernoulli(1, ExactRational(-r[static_cast<std::size_t>(i)], q));
    for (int j = i + 1; j >= 1; --j) {
      e[static_cast<std::size_t>(j)] += y * e[static_cast<std::size_t>(j - 1)];
    }
  }
  out.exact = e[static_cast<std::size_t>(m)];
  out.value = out.exact.to_double();
  return out;
}

XiAsymptotic xi_asymptotic(const LatticeSumSpec& spec, Variant variant) {
  check_spec(spec);
  const int l = spec.l();
  if (variant == Variant::dagger) {
    if (spec.k % 2 == 0) throw std::invalid_argument("dagger lattice sum asymptotics require odd k");
    check_order(spec, std::min(ceil_theta(spec.theta), spec.k + 1));
  } else {
    check_order(spec, ceil_theta(spec.theta));
  }
  const wide_real X(spec.X);
  const wide_real q(spec.q);
  const wide_real theta(spec.theta);
  const wide_real inv_k = wide_real(1) / spec.k;
  const wide_real Xktheta = boost::multiprecision::pow(X, spec.k * theta);
  const wide_real g1 = gamma_wide(1 + inv_k);

  XiAsymptotic out;
  out.error_scale = Xktheta * boost::multiprecision::pow(q / X, spec.N - 1) *
                    boost::multiprecision::pow(1 + X / q, l - 1);
  if (variant == Variant::two_sided) {
    out.terms.push_back(boost::multiprecision::pow(2 * X / q, l) * Xktheta * gamma_wide(1 + theta) *
                        boost::multiprecision::pow(g1, l) / gamma_wide(1 + theta + l * inv_k));
    return out;
  }
  for (int m = 0; m <= l; ++m) {
    const int d = l - m;
    wide_real density = gamma_wide(1 + theta) * boost::multiprecision::pow(g1, d) /
                        gamma_wide(1 + theta + d * inv_k);
    wide_real sb = to_wide(symmetric_bernoulli(spec.q, spec.r, m).exact);
    out.terms.push_back(Xktheta * density * sb * boost::multiprecision::pow(X / q, d));
  }
  return out;
}

EulerMaclaurinResult euler_maclaurin_sum(std::span<const std::function<double(double)>> derivatives,
                                         double a, double b, int K) {
  if (K < 1) throw std::invalid_argument("euler_maclaurin_sum: K must be >= 1");
  if (derivatives.size() < static_cast<std::size_t>(K) + 1) {
    throw std::invalid_argument("euler_maclaurin_sum: need derivatives of orders 0..K");
  }
  if (!(a < b)) throw std::invalid_argument("euler_maclaurin_sum: requires a < b");

  // Breakpoints: a, the integers strictly inside (a, b), b.
  std::vector<double> cuts{a};
  for (double t = std::floor(a) + 1.0; t < b; t += 1.0) {
    if (t > a) cuts.push_back(t);
  }
  cuts.push_back(b);

  auto integrate = [&](const std::function<double(double)>& f) {
    CompensatedSum<double> sum;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      double err = 0.0;
      double l1 = 0.0;
      double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          f, cuts[i], cuts[i + 1], 15, 1e-13, &err, &l1);
      if (!(err <= 1e-9 * std::max(l1, 1.0))) {
        throw std::runtime_error("euler_maclaurin_sum: quadrature did not converge on [" +
                                 std::to_string(cuts[i]) + ", " + std::to_string(cuts[i + 1]) +
                                 "]");
      }
      sum.add(v);
    }
    return sum.value();
  };

  const auto& F = derivatives[0];
  CompensatedSum<double> total;
  total.add(integrate(F));
  double fact = 1.0;
  for (int kappa = 1; kappa <= K; ++kappa) {
    fact *= kappa;
    const auto& prev = derivatives[static_cast<std::size_t>(kappa - 1)];
    const auto order = static_cast<unsigned>(kappa);
    double boundary =
        periodic_bernoulli(order, b) * prev(b) - periodic_bernoulli(order, a) * prev(a);
    total.add((kappa % 2 == 0 ? 1.0 : -1.0) / fact * boundary);
  }
  const auto& top = derivatives[static_cast<std::size_t>(K)];
  const auto orderK = static_cast<unsigned>(K);
  // Integrate strictly inside each piece so beta_K sees its smooth branch.
  double remainder = integrate([&](double x) { return periodic_bernoulli(orderK, x) * top(x); });
  double sign = (K % 2 == 0) ? -1.0 : 1.0;  // -(-1)^K
  total.add(sign / fact * remainder);

  EulerMaclaurinResult out;
  out.value = total.value();
  out.remainder_integral = remainder;
  return out;
}

}  // namespace waring
