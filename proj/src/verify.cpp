#include "waring/verify.hpp"

#include "waring/eulermac.hpp"
#include "waring/expsums.hpp"
#include "waring/numeric.hpp"
#include "waring/oracle.hpp"
#include "waring/series.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

namespace waring {

namespace {

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

struct Outcome {
  bool passed;
  std::string detail;
};

Outcome ac1(unsigned) {
  for (int s = 2; s <= 6; ++s) {
    auto check = verify_inversion(2, s, 2000);
    if (!check) return {false, fmt("s=%d: %s", s, check.detail.c_str())};
  }
  return {true, "k=2, s=2..6, n<=2000: both identities hold exactly"};
}

Outcome ac2(unsigned) {
  double worst_batch = 0.0;
  double worst_direct = 0.0;
  for (int k : {2, 4}) {
    for (std::int64_t q = 1; q <= 300; ++q) {
      auto batch = batch_T(q, k);
      for (std::int64_t a = 0; a < q; ++a) {
        if (gcd64(a, q) != 1) continue;
        auto idx = static_cast<std::size_t>(a);
        worst_batch = std::max(worst_batch, std::abs(batch[idx].value + 0.5));
        worst_direct = std::max(worst_direct, std::abs(weighted_sum_T(q, a, k).value + 0.5));
      }
    }
  }
  bool ok = worst_batch <= 1e-9 && worst_direct <= 1e-9;
  return {ok, fmt("max |T+1/2|: batch %.3g, direct %.3g (tol 1e-9)", worst_batch, worst_direct)};
}

Outcome ac3(unsigned) {
  double worst_S = 0.0;  // max |Im S| / q
  double worst_T = 0.0;  // max |Re T_dagger| / q
  for (int k : {3, 5}) {
    for (std::int64_t q = 1; q <= 300; ++q) {
      ModulusSums sums = modulus_sums(q, k);
      const double qq = static_cast<double>(q);
      for (std::int64_t a = 0; a < q; ++a) {
        if (gcd64(a, q) != 1) continue;
        auto idx = static_cast<std::size_t>(a);
        worst_S = std::max(worst_S, std::abs(sums.S[idx].imag()) / qq);
        worst_T = std::max(worst_T, std::abs(sums.T[idx].real() + 0.5) / qq);
      }
    }
  }
  bool ok = worst_S <= 1e-9 && worst_T <= 1e-9;
  return {ok, fmt("max |Im S|/q = %.3g, max |Re T_dagger|/q = %.3g (tol 1e-9)", worst_S, worst_T)};
}

Outcome ac4(unsigned) {
  const std::int64_t Q = 50;
  const double terms = static_cast<double>(coprime_pair_count(Q));
  double worst = 0.0;
  for (std::int64_t n = 1; n <= 100; ++n) {
    worst = std::max(worst, identity_13_1_residual(9, n, Q, 3));
  }
  bool ok = worst <= 1e-8 * terms;
  return {ok, fmt("max residual %.3g over n<=100, bound 1e-8 * %g terms = %.3g", worst, terms,
                  1e-8 * terms)};
}

struct ScalingSample {
  std::vector<double> X;
  std::vector<double> error;         // |direct - main|
  std::vector<double> error_psi;     // |direct - main - psi|
  std::vector<double> scaled_error;  // error / error_scale
};

ScalingSample upsilon_scaling(LatticeSumSpec spec, Variant variant, unsigned threads) {
  ScalingSample out;
  for (double X : {1e3, 1e4, 1e5}) {
    spec.X = X;
    wide_real direct = upsilon_direct(spec, variant, threads);
    auto asym = upsilon_asymptotic(spec, variant);
    wide_real e = abs(direct - asym.main);
    wide_real ep = abs(direct - asym.main - asym.psi);
    out.X.push_back(X);
    out.error.push_back(static_cast<double>(e));
    out.error_psi.push_back(static_cast<double>(ep));
    out.scaled_error.push_back(static_cast<double>(e / asym.error_scale));
  }
  return out;
}

Outcome ac5(unsigned threads) {
  LatticeSumSpec spec;
  spec.k = 2;
  spec.theta = 2.5;
  spec.q = 3;
  spec.r = {1};
  spec.N = 2;
  auto sample = upsilon_scaling(spec, Variant::two_sided, threads);
  auto [lo, hi] = std::minmax_element(sample.scaled_error.begin(), sample.scaled_error.end());
  double band = *hi / *lo;
  double slope = loglog_slope(sample.X, sample.error);
  double target = spec.k * spec.theta - (spec.N - 1);
  bool ok = band < 10.0 && std::abs(slope - target) <= 0.25;
  return {ok, fmt("scaled errors %.3g, %.3g, %.3g (band %.3g, need < 10); slope %.3f vs %.2f +- 0.25",
                  sample.scaled_error[0], sample.scaled_error[1], sample.scaled_error[2], band,
                  slope, target)};
}

Outcome ac6(unsigned threads) {
  LatticeSumSpec spec;
  spec.k = 3;
  spec.theta = 2.5;
  spec.q = 4;
  spec.r = {1};
  spec.N = 2;
  auto sample = upsilon_scaling(spec, Variant::dagger, threads);
  double without = loglog_slope(sample.X, sample.error);
  double with = loglog_slope(sample.X, sample.error_psi);
  double ktheta = spec.k * spec.theta;
  bool ok = std::abs(without - ktheta) <= 0.25 && with <= ktheta - 1.0 + 0.25;
  return {ok, fmt("slope without psi %.3f (expect %.2f +- 0.25), with psi %.3f (need <= %.2f)",
                  without, ktheta, with, ktheta - 0.75)};
}

// Conditions shared by the secondary-term checks.
Outcome secondary_term(int k, int s, std::int64_t n_min, std::int64_t n_max, double slope_gap,
                       unsigned threads) {
  const std::int64_t Q = 100;
  auto rows = residual_table(k, s, 1, n_min, n_max, Q, threads);
  const double norm_exp = (s - 1.0) / k - 1.0;
  std::vector<double> n0, e0, n1, e1, r0, r1;
  for (const auto& row : rows) {
    double n = static_cast<double>(row.n);
    double scale = std::pow(n, norm_exp);
    double a0 = std::abs(row.residual[0]);
    double a1 = std::abs(row.residual[1]);
    r0.push_back(a0 / scale);
    r1.push_back(a1 / scale);
    if (a0 > 0) {
      n0.push_back(n);
      e0.push_back(a0);
    }
    if (a1 > 0) {
      n1.push_back(n);
      e1.push_back(a1);
    }
  }
  double m0 = median(r0);
  double m1 = median(r1);
  double s0 = loglog_slope(n0, e0);
  double s1 = loglog_slope(n1, e1);
  bool ok = m1 <= 0.5 * m0 && s0 - s1 >= slope_gap;
  return {ok, fmt("median |E1|/n^e = %.4g vs |E0|/n^e = %.4g (ratio %.3f, need <= 0.5); "
                  "slopes E0 %.3f, E1 %.3f (gap %.3f, need >= %.2f)",
                  m1, m0, m1 / m0, s0, s1, s0 - s1, slope_gap)};
}

Outcome ac7(unsigned threads) { return secondary_term(2, 9, 1000, 10000, 0.25, threads); }

Outcome ac8(unsigned threads) { return secondary_term(3, 13, 1000, 100000, 0.15, threads); }

Outcome ac9(unsigned) {
  std::vector<double> d;
  for (std::int64_t Q = 2; Q <= 5; ++Q) d.push_back(std::abs(theorem_1_4_discrepancy(8, 3, Q, 1, 200)));
  bool ok = true;
  for (std::size_t i = 1; i < d.size(); ++i) ok = ok && d[i] <= 1.2 * d[i - 1];
  double drop = d.front() / d.back();
  ok = ok && drop >= 1.3;
  return {ok, fmt("|discrepancy| at Q=2..5: %.4g, %.4g, %.4g, %.4g; Q=2/Q=5 ratio %.3f (need >= 1.3)",
                  d[0], d[1], d[2], d[3], drop)};
}

Outcome ac10(unsigned threads) {
  const int k = 3, j = 1, s = 13;
  const std::int64_t x = 2000, Q = 60;
  auto mags = series_magnitudes(k, s, j, Q, x, threads);
  double C = 0.5 * median(mags);
  auto base = nonvanishing_census(s, j, k, x, Q, C, threads);
  auto doubled = nonvanishing_census(s, j, k, x, 2 * Q, C, threads);
  double change = std::abs(doubled.fraction - base.fraction);
  bool ok = base.fraction > 0.25 && change < 0.05;
  return {ok, fmt("C = %.4g; fraction %.4f at Q=60, %.4f at Q=120 (change %.4f, need < 0.05)", C,
                  base.fraction, doubled.fraction, change)};
}

Outcome ac11(unsigned) {
  std::mt19937_64 rng(20240917);
  std::uniform_int_distribution<std::int64_t> pick(1, 10000);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::int64_t q = pick(rng);
    const int k = 2 + trial % 4;
    auto batch = batch_S(q, k);
    // Direct oracle: exact phases against a table of q-th roots of unity.
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(q));
    for (std::int64_t t = 0; t < q; ++t) {
      roots[static_cast<std::size_t>(t)] =
          std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(q));
    }
    std::vector<std::int64_t> powers(static_cast<std::size_t>(q));
    for (std::int64_t r = 1; r <= q; ++r) powers[static_cast<std::size_t>(r - 1)] = pow_mod(r, k, q);
    for (std::int64_t a = 0; a < q; ++a) {
      CompensatedSum<std::complex<double>> direct;
      for (std::int64_t m : powers) direct.add(roots[static_cast<std::size_t>((a * m) % q)]);
      std::complex<double> ref = direct.value();
      double err = std::abs(batch[static_cast<std::size_t>(a)].value - ref) / std::max(std::abs(ref), 1.0);
      worst = std::max(worst, err);
    }
  }
  return {worst <= 1e-9, fmt("50 random q <= 1e4, all residues: max relative error %.3g (tol 1e-9)", worst)};
}

Outcome ac12(unsigned) {
  for (int k : {2, 3}) {
    for (int s : {2, 3, 4}) {
      auto conv = count_representations(k, s, 1000);
      auto brute = enumerate_representations(k, s, 1000);
      for (std::int64_t n = 0; n <= 1000; ++n) {
        if (conv[n] != brute[n]) {
          return {false, fmt("k=%d s=%d n=%lld: convolution %s vs enumeration %s", k, s,
                             static_cast<long long>(n), to_string(conv[n]).c_str(),
                             to_string(brute[n]).c_str())};
        }
      }
    }
  }
  return {true, "(k,s) in {2,3}x{2,3,4}, n<=1000: all counts agree"};
}

struct Entry {
  const char* title;
  bool exact;
  Outcome (*run)(unsigned);
};

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> entries = {
      {"AC-1", {"inversion identities, k=2", true, ac1}},
      {"AC-2", {"even-k collapse T = -1/2", true, ac2}},
      {"AC-3", {"odd-k realness of S, imaginary T_dagger", true, ac3}},
      {"AC-4", {"odd-k reflection identity at truncation", true, ac4}},
      {"AC-5", {"two-sided lattice sum error scaling", false, ac5}},
      {"AC-6", {"dagger lattice sum Psi correction", false, ac6}},
      {"AC-7", {"secondary term k=2 s=9", false, ac7}},
      {"AC-8", {"secondary term k=3 s=13", false, ac8}},
      {"AC-9", {"factorial discrepancy decay", false, ac9}},
      {"AC-10", {"non-vanishing census stability", false, ac10}},
      {"AC-11", {"batch S against direct sums", true, ac11}},
      {"AC-12", {"convolution against enumeration", true, ac12}},
  };
  return entries;
}

}  // namespace

std::vector<std::string> criterion_ids() {
  std::vector<std::string> ids;
  for (int i = 1; i <= 12; ++i) ids.push_back("AC-" + std::to_string(i));
  return ids;
}

bool criterion_is_exact(const std::string& id) {
  auto it = registry().find(id);
  if (it == registry().end()) throw std::invalid_argument("unknown criterion " + id);
  return it->second.exact;
}

CriterionResult run_criterion(const std::string& id, unsigned threads) {
  auto it = registry().find(id);
  if (it == registry().end()) throw std::invalid_argument("unknown criterion " + id);
  CriterionResult result;
  result.id = id;
  result.title = it->second.title;
  result.exact = it->second.exact;
  auto start = std::chrono::steady_clock::now();
  try {
    Outcome o = it->second.run(threads);
    result.passed = o.passed;
    result.detail = std::move(o.detail);
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = std::string("error: ") + e.what();
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string format_result(const CriterionResult& result) {
  return fmt("%s %s %s : %s [%.1fs]", result.passed ? "PASS" : "FAIL", result.id.c_str(),
             result.title.c_str(), result.detail.c_str(), result.seconds);
}

}  // namespace waring
