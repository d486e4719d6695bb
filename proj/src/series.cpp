#include "waring/series.hpp"

#include "waring/numeric.hpp"
#include "waring/rational.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace waring {

int delta_k(int k) { return k == 2 ? 1 : 0; }

std::int64_t TruncationSpec::default_truncation(std::int64_t n, int k) {
  if (n <= 1) return 1;
  auto root = static_cast<std::int64_t>(std::pow(static_cast<double>(n), 1.0 / k));
  auto kth_power_exceeds = [&](std::int64_t base) {
    long double p = 1;
    for (int i = 0; i < k; ++i) p *= static_cast<long double>(base);
    return p > static_cast<long double>(n);
  };
  while (root > 1 && kth_power_exceeds(root)) --root;
  while (!kth_power_exceeds(root + 1)) ++root;
  return root < 1 ? 1 : root;
}

TruncationSpec TruncationSpec::with_default_truncation(int k, int s, int j, std::int64_t n) {
  return {k, s, j, n, default_truncation(n < 0 ? -n : n, k)};
}

void TruncationSpec::validate() const {
  if (k < 2) throw std::invalid_argument("TruncationSpec: k must be >= 2");
  if (s < 1) throw std::invalid_argument("TruncationSpec: s must be >= 1");
  if (j < 0 || j > s) throw std::invalid_argument("TruncationSpec: need 0 <= j <= s");
  if (Q < 1) throw std::invalid_argument("TruncationSpec: Q must be >= 1");
}

std::int64_t coprime_pair_count(std::int64_t Q) {
  std::int64_t total = 0;
  for (std::int64_t q = 1; q <= Q; ++q) {
    for (std::int64_t a = 1; a <= q; ++a) {
      if (gcd64(a, q) == 1) ++total;
    }
  }
  return total;
}

std::vector<ModulusSums> modulus_sums_upto(std::int64_t Q, int k, unsigned threads) {
  if (Q < 1) throw std::invalid_argument("modulus_sums_upto: Q must be >= 1");
  std::vector<ModulusSums> out(static_cast<std::size_t>(Q));
  parallel_for(out.size(), threads, [&](std::size_t i) {
    out[i] = modulus_sums(static_cast<std::int64_t>(i) + 1, k);
  });
  return out;
}

namespace {

std::complex<double> int_power(std::complex<double> base, int exp) {
  std::complex<double> result{1.0, 0.0};
  while (exp > 0) {
    if (exp & 1) result *= base;
    base *= base;
    exp >>= 1;
  }
  return result;
}

}  // namespace

TruncatedSeries::TruncatedSeries(int k, int s, int j, std::int64_t Q, unsigned threads)
    : k_(k), s_(s), j_(j), Q_(Q) {
  TruncationSpec{k, s, j, 0, Q}.validate();
  auto sums = modulus_sums_upto(Q, k, threads);
  build(sums, threads);
}

TruncatedSeries::TruncatedSeries(std::span<const ModulusSums> sums, int s, int j,
                                 unsigned threads)
    : k_(sums.empty() ? 0 : sums.front().k), s_(s), j_(j),
      Q_(static_cast<std::int64_t>(sums.size())) {
  if (sums.empty()) throw std::invalid_argument("TruncatedSeries: no moduli supplied");
  TruncationSpec{k_, s, j, 0, Q_}.validate();
  for (std::size_t i = 0; i < sums.size(); ++i) {
    if (sums[i].q != static_cast<std::int64_t>(i) + 1 || sums[i].k != k_ ||
        (j > 0 && sums[i].T.empty())) {
      throw std::invalid_argument("TruncatedSeries: modulus table is not 1..Q for one k");
    }
  }
  build(sums, threads);
}

void TruncatedSeries::build(std::span<const ModulusSums> sums, unsigned threads) {
  by_residue_.resize(static_cast<std::size_t>(Q_));
  std::vector<std::int64_t> terms(by_residue_.size(), 0);
  std::vector<double> upper_mass(by_residue_.size(), 0.0);

  parallel_for(by_residue_.size(), threads, [&](std::size_t idx) {
    const ModulusSums& ms = sums[idx];
    const std::int64_t q = ms.q;
    const double inv_q = 1.0 / static_cast<double>(q);

    std::vector<std::int64_t> coprime;
    std::vector<std::complex<double>> weight;
    for (std::int64_t a = 1; a <= q; ++a) {
      if (gcd64(a, q) != 1) continue;
      // a = q only occurs for q = 1, where a = 0 mod q.
      auto slot = static_cast<std::size_t>(a % q);
      std::complex<double> w = int_power(ms.S[slot] * inv_q, s_ - j_);
      if (j_ > 0) w *= int_power(ms.T[slot], j_);
      coprime.push_back(a % q);
      weight.push_back(w);
    }
    terms[idx] = static_cast<std::int64_t>(coprime.size());
    if (2 * q > Q_) {
      double mass = 0.0;
      for (const auto& w : weight) mass += std::abs(w);
      upper_mass[idx] = mass;
    }

    std::vector<std::complex<double>> roots(static_cast<std::size_t>(q));
    for (std::int64_t m = 0; m < q; ++m) roots[static_cast<std::size_t>(m)] = unit_root(m, q);

    auto& row = by_residue_[idx];
    row.resize(static_cast<std::size_t>(q));
    for (std::int64_t rho = 0; rho < q; ++rho) {
      CompensatedSum<std::complex<double>> acc;
      for (std::size_t i = 0; i < coprime.size(); ++i) {
        auto phase = static_cast<std::size_t>(
            static_cast<unsigned __int128>(rho) * static_cast<unsigned __int128>(coprime[i]) %
            static_cast<unsigned __int128>(q));
        // e(-x/q) = conj(e(x/q))
        acc.add(weight[i] * std::conj(roots[phase]));
      }
      row[static_cast<std::size_t>(rho)] = acc.value();
    }
  });

  CompensatedSum<double> mass;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    terms_ += terms[i];
    mass.add(upper_mass[i]);
  }
  tail_estimate_ = mass.value();
}

std::complex<double> TruncatedSeries::operator()(std::int64_t n) const {
  CompensatedSum<std::complex<double>> acc;
  for (std::size_t idx = 0; idx < by_residue_.size(); ++idx) {
    auto q = static_cast<std::int64_t>(idx) + 1;
    acc.add(by_residue_[idx][static_cast<std::size_t>(mod_floor(n, q))]);
  }
  return acc.value();
}

SeriesValue TruncatedSeries::evaluate(std::int64_t n) const {
  return {(*this)(n), TruncationSpec{k_, s_, j_, n, Q_}, terms_, tail_estimate_};
}

std::vector<std::complex<double>> TruncatedSeries::evaluate_range(std::int64_t first,
                                                                  std::int64_t last,
                                                                  unsigned threads) const {
  if (last < first) return {};
  std::vector<std::complex<double>> out(static_cast<std::size_t>(last - first + 1));
  parallel_for(out.size(), threads, [&](std::size_t i) {
    out[i] = (*this)(first + static_cast<std::int64_t>(i));
  });
  return out;
}

SeriesValue singular_series_truncated(const TruncationSpec& spec) {
  spec.validate();
  if (spec.j != 0) throw std::invalid_argument("singular_series_truncated: requires j = 0");
  if (spec.s < 2) throw std::invalid_argument("singular_series_truncated: requires u >= 2");
  return TruncatedSeries(spec.k, spec.s, 0, spec.Q).evaluate(spec.n);
}

SeriesValue modified_series_truncated(const TruncationSpec& spec) {
  spec.validate();
  return TruncatedSeries(spec.k, spec.s, spec.j, spec.Q).evaluate(spec.n);
}

namespace {

double modulus_tail_term(std::int64_t q, int u, double theta, int k) {
  ModulusSums ms = modulus_sums(q, k, false);
  const double inv_q = 1.0 / static_cast<double>(q);
  CompensatedSum<double> acc;
  for (std::int64_t a = 1; a <= q; ++a) {
    if (gcd64(a, q) != 1) continue;
    double mag = std::abs(ms.S[static_cast<std::size_t>(a % q)]) * inv_q;
    acc.add(std::pow(mag, u));
  }
  return std::pow(static_cast<double>(q), theta) * acc.value();
}

}  // namespace

double tail_sum_V(double A, double B, int u, double theta, int k, const TailOptions& options) {
  if (k < 2) throw std::invalid_argument("tail_sum_V: k must be >= 2");
  if (u < 1) throw std::invalid_argument("tail_sum_V: u must be positive");
  if (!(A >= 1.0) || !(B > A)) throw std::invalid_argument("tail_sum_V: need 1 <= A < B");

  auto first = static_cast<std::int64_t>(std::ceil(A));
  CompensatedSum<double> total;

  if (std::isfinite(B)) {
    auto end = static_cast<std::int64_t>(std::ceil(B));  // q < B
    for (std::int64_t q = first; q < end; ++q) total.add(modulus_tail_term(q, u, theta, k));
    return total.value();
  }

  double threshold = k * (1.0 + theta) + 1.0 + delta_k(k);
  if (!(u > threshold)) {
    throw std::invalid_argument("tail_sum_V: infinite range needs u > k(1+theta)+1+delta_k = " +
                                std::to_string(threshold));
  }

  double previous_block = -1.0;
  double last_block = -1.0;
  std::int64_t lo = first;
  while (true) {
    std::int64_t hi = 2 * lo;  // block [lo, 2 lo)
    CompensatedSum<double> block;
    for (std::int64_t q = lo; q < hi; ++q) block.add(modulus_tail_term(q, u, theta, k));
    previous_block = last_block;
    last_block = block.value();
    total.add(last_block);
    if (last_block < options.relative_tolerance * total.value()) return total.value();
    if (hi > options.max_modulus) break;
    lo = hi;
  }
  // Geometric continuation from the ratio of the last two blocks.
  if (previous_block > 0.0 && last_block > 0.0) {
    double ratio = last_block / previous_block;
    if (ratio < 1.0) total.add(last_block * ratio / (1.0 - ratio));
  }
  return total.value();
}

double identity_13_1_residual(int s, std::int64_t n, std::int64_t Q, int k) {
  if (k % 2 == 0) throw std::invalid_argument("identity_13_1_residual: k must be odd");
  if (s < 3) throw std::invalid_argument("identity_13_1_residual: s must be >= 3");
  auto sums = modulus_sums_upto(Q, k);
  TruncatedSeries modified(sums, s, 1);
  TruncatedSeries classical(sums, s - 1, 0);
  return std::abs(modified(n) + modified(-n) + classical(n));
}

double theorem_1_4_discrepancy(int s, int k, std::int64_t Q, std::int64_t m,
                               std::int64_t Q_trunc) {
  if (k % 2 == 0 || k < 3) throw std::invalid_argument("theorem_1_4_discrepancy: k must be odd");
  if (2 * s < 3 * k + 6) {
    throw std::invalid_argument("theorem_1_4_discrepancy: requires s >= 3k/2 + 3");
  }
  if (Q < 1 || m < 1 || Q_trunc < 1) {
    throw std::invalid_argument("theorem_1_4_discrepancy: Q, m, Q_trunc must be positive");
  }
  std::int64_t n = m;
  for (std::int64_t i = 2; i <= Q; ++i) {
    if (__builtin_mul_overflow(n, i, &n)) {
      throw std::invalid_argument("theorem_1_4_discrepancy: Q! * m overflows 64 bits");
    }
  }
  // e(-na/q) = 1 for every q <= Q.
  for (std::int64_t q = 1; q <= Q; ++q) {
    if (n % q != 0) throw std::logic_error("theorem_1_4_discrepancy: Q! does not divide n");
  }
  auto sums = modulus_sums_upto(Q_trunc, k);
  TruncatedSeries modified(sums, s, 1);
  TruncatedSeries classical(sums, s - 1, 0);
  return (modified(n) + 0.5 * classical(n)).real();
}

std::vector<double> series_magnitudes(int k, int s, int j, std::int64_t Q, std::int64_t x,
                                      unsigned threads) {
  if (x < 1) throw std::invalid_argument("series_magnitudes: x must be positive");
  TruncatedSeries series(k, s, j, Q, threads);
  auto values = series.evaluate_range(1, x, threads);
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = std::abs(values[i]);
  return out;
}

CensusResult nonvanishing_census(int s, int j, int k, std::int64_t x, std::int64_t Q, double C,
                                 unsigned threads) {
  if (j < 0) throw std::invalid_argument("nonvanishing_census: j must be >= 0");
  if (2 * s < (j + 4) * (k + 2)) {
    throw std::invalid_argument("nonvanishing_census: requires s >= (j+4)(k+2)/2");
  }
  if (!(C >= 0.0)) throw std::invalid_argument("nonvanishing_census: C must be non-negative");
  auto mags = series_magnitudes(k, s, j, Q, x, threads);
  CensusResult result;
  for (double v : mags) {
    if (v >= C) ++result.count;
  }
  result.fraction = static_cast<double>(result.count) / static_cast<double>(x);
  return result;
}

}  // namespace waring
