#pragma once

// Small numeric utilities shared across modules: compensated accumulation,
// ordered parallel loops, and log-log slope fitting for scaling checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace waring {

// Neumaier's variant of Kahan summation.
template <class T>
class CompensatedSum {
 public:
  void add(const T& x) {
    T t = sum_ + x;
    using std::abs;
    if (abs(sum_) >= abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{0};
  T comp_{0};
};

// Complex accumulation compensates real and imaginary parts independently.
template <class T>
class CompensatedSum<std::complex<T>> {
 public:
  void add(const std::complex<T>& z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<T> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<T> re_;
  CompensatedSum<T> im_;
};

// Runs body(i) for i in [0, count) over contiguous blocks. Each index is
// visited exactly once, so results written per index do not depend on the
// thread count.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t lo = t * chunk;
    std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
}

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("loglog_slope: need at least two paired points");
  }
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) {
      throw std::invalid_argument("loglog_slope: non-positive data");
    }
    double lx = std::log(x[i]);
    double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median: empty input");
  std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

}  // namespace waring
