#include "waring/expsums.hpp"

#include "waring/numeric.hpp"
#include "waring/rational.hpp"

#include <fftw3.h>

#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace waring {

namespace {

void check_args(std::int64_t q, int k) {
  if (q < 1) throw std::invalid_argument("exponential sum: modulus q must be >= 1");
  if (k < 2) throw std::invalid_argument("exponential sum: exponent k must be >= 2");
}

// FFTW's planner is not reentrant; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

// out[a] = sum_m in[m] e(a m / q) (unnormalised backward transform).
std::vector<std::complex<double>> dft_positive(const std::vector<double>& in) {
  auto n = static_cast<int>(in.size());
  FftwBuffer src(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * in.size())));
  FftwBuffer dst(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * in.size())));
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, src.get(), dst.get(), FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < in.size(); ++i) {
    src[i][0] = in[i];
    src[i][1] = 0.0;
  }
  fftw_execute(plan);
  std::vector<std::complex<double>> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = {dst[i][0], dst[i][1]};
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
  if (m == 1) return 0;
  unsigned __int128 result = 1;
  unsigned __int128 b = static_cast<unsigned __int128>(mod_floor(base, m));
  auto mod = static_cast<unsigned __int128>(m);
  while (exp > 0) {
    if (exp & 1) result = (result * b) % mod;
    b = (b * b) % mod;
    exp >>= 1;
  }
  return static_cast<std::int64_t>(result);
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::complex<double> unit_root(std::int64_t residue, std::int64_t q) {
  double angle = 2.0 * std::numbers::pi *
                 (static_cast<double>(residue) / static_cast<double>(q));
  return {std::cos(angle), std::sin(angle)};
}

ExpSumValue complete_sum_S(std::int64_t q, std::int64_t a, int k) {
  check_args(q, k);
  CompensatedSum<std::complex<double>> acc;
  std::int64_t am = mod_floor(a, q);
  for (std::int64_t r = 1; r <= q; ++r) {
    auto phase = static_cast<std::int64_t>(
        (static_cast<unsigned __int128>(am) * static_cast<unsigned __int128>(pow_mod(r, k, q))) %
        static_cast<unsigned __int128>(q));
    acc.add(unit_root(phase, q));
  }
  return {acc.value(), q, a, k};
}

ExpSumValue weighted_sum_T(std::int64_t q, std::int64_t a, int k) {
  check_args(q, k);
  CompensatedSum<std::complex<double>> acc;
  std::int64_t am = mod_floor(a, q);
  for (std::int64_t r = 1; r <= q; ++r) {
    auto phase = static_cast<std::int64_t>(
        (static_cast<unsigned __int128>(am) * static_cast<unsigned __int128>(pow_mod(r, k, q))) %
        static_cast<unsigned __int128>(q));
    // 1/2 - r/q = (q - 2r) / (2q)
    double weight = static_cast<double>(q - 2 * r) / static_cast<double>(2 * q);
    acc.add(weight * unit_root(phase, q));
  }
  return {acc.value(), q, a, k};
}

ExpSumValue sum_T_dagger(std::int64_t q, std::int64_t a, int k) {
  check_args(q, k);
  if (k % 2 == 0) throw std::invalid_argument("sum_T_dagger: k must be odd");
  if (gcd64(a, q) != 1) throw std::invalid_argument("sum_T_dagger: requires (a, q) = 1");
  ExpSumValue t = weighted_sum_T(q, a, k);
  t.value += 0.5;
  return t;
}

ModulusSums modulus_sums(std::int64_t q, int k, bool with_weighted) {
  check_args(q, k);
  auto n = static_cast<std::size_t>(q);
  // Exact histograms: count[m] = #{r : r^k = m}, weight[m] = sum (q - 2r).
  std::vector<std::int64_t> count(n, 0);
  std::vector<std::int64_t> weight(n, 0);
  for (std::int64_t r = 1; r <= q; ++r) {
    auto m = static_cast<std::size_t>(pow_mod(r, k, q));
    ++count[m];
    weight[m] += q - 2 * r;
  }
  std::vector<double> c(n), w(n);
  double scale = 1.0 / static_cast<double>(2 * q);
  for (std::size_t m = 0; m < n; ++m) {
    c[m] = static_cast<double>(count[m]);
    w[m] = static_cast<double>(weight[m]) * scale;
  }
  ModulusSums out;
  out.q = q;
  out.k = k;
  out.S = dft_positive(c);
  if (with_weighted) out.T = dft_positive(w);
  return out;
}

std::vector<ExpSumValue> batch_S(std::int64_t q, int k) {
  ModulusSums sums = modulus_sums(q, k, false);
  std::vector<ExpSumValue> out;
  out.reserve(sums.S.size());
  for (std::int64_t a = 0; a < q; ++a) out.push_back({sums.S[static_cast<std::size_t>(a)], q, a, k});
  return out;
}

std::vector<ExpSumValue> batch_T(std::int64_t q, int k) {
  ModulusSums sums = modulus_sums(q, k);
  std::vector<ExpSumValue> out;
  out.reserve(sums.T.size());
  for (std::int64_t a = 0; a < q; ++a) out.push_back({sums.T[static_cast<std::size_t>(a)], q, a, k});
  return out;
}

}  // namespace waring
