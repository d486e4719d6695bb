#include "waring/oracle.hpp"

#include "waring/arith.hpp"
#include "waring/expansion.hpp"
#include "waring/numeric.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace waring {

std::string to_string(Count value) {
  if (value == 0) return "0";
  std::string digits;
  while (value > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

namespace {

void check_table_args(int k, int s, std::int64_t N) {
  if (k < 2) throw std::invalid_argument("representation count: k must be >= 2");
  if (s < 0) throw std::invalid_argument("representation count: s must be >= 0");
  if (N < 0) throw std::invalid_argument("representation count: N must be >= 0");
}

// y^k for y = 1, 2, ... while y^k <= N.
std::vector<std::int64_t> kth_powers(int k, std::int64_t N) {
  std::vector<std::int64_t> out;
  for (std::int64_t y = 1;; ++y) {
    unsigned __int128 p = 1;
    bool over = false;
    for (int i = 0; i < k && !over; ++i) {
      p *= static_cast<unsigned __int128>(y);
      over = p > static_cast<unsigned __int128>(N);
    }
    if (over) break;
    out.push_back(static_cast<std::int64_t>(p));
  }
  return out;
}

Count checked_add(Count a, Count b) {
  Count r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("representation count exceeds 128-bit capacity");
  }
  return r;
}

Count checked_mul(Count a, Count b) {
  Count r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("representation count exceeds 128-bit capacity");
  }
  return r;
}

// next[n] = sum_i weight_i * current[n - offset_i]
std::vector<Count> convolve_sparse(const std::vector<Count>& current,
                                   const std::vector<std::int64_t>& offsets,
                                   const std::vector<Count>& weights) {
  std::vector<Count> next(current.size(), 0);
  for (std::size_t n = 0; n < current.size(); ++n) {
    Count acc = 0;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      auto off = static_cast<std::size_t>(offsets[i]);
      if (off > n) break;
      Count c = current[n - off];
      if (c == 0) continue;
      acc = checked_add(acc, weights[i] == 1 ? c : checked_mul(weights[i], c));
    }
    next[n] = acc;
  }
  return next;
}

std::vector<Count> delta_sequence(std::int64_t N) {
  std::vector<Count> d(static_cast<std::size_t>(N) + 1, 0);
  d[0] = 1;
  return d;
}

RepCountTable unsigned_table(int k, int s, std::int64_t N) {
  check_table_args(k, s, N);
  auto powers = kth_powers(k, N);
  std::vector<Count> ones(powers.size(), 1);
  std::vector<Count> counts = delta_sequence(N);
  for (int i = 0; i < s; ++i) counts = convolve_sparse(counts, powers, ones);
  return {k, s, N, false, std::move(counts)};
}

RepCountTable signed_table(int k, int s, std::int64_t N) {
  check_table_args(k, s, N);
  if (k % 2 != 0) throw std::invalid_argument("signed representation count requires even k");
  std::vector<std::int64_t> offsets{0};
  std::vector<Count> weights{1};
  for (auto p : kth_powers(k, N)) {
    offsets.push_back(p);
    weights.push_back(2);
  }
  std::vector<Count> counts = delta_sequence(N);
  for (int i = 0; i < s; ++i) counts = convolve_sparse(counts, offsets, weights);
  return {k, s, N, true, std::move(counts)};
}

}  // namespace

RepCountTable count_representations(int k, int s, std::int64_t N) {
  if (s < 1) throw std::invalid_argument("count_representations: s must be >= 1");
  if (N < 1) throw std::invalid_argument("count_representations: N must be >= 1");
  return unsigned_table(k, s, N);
}

RepCountTable count_representations_signed(int k, int s, std::int64_t N) {
  if (s < 1) throw std::invalid_argument("count_representations_signed: s must be >= 1");
  if (N < 1) throw std::invalid_argument("count_representations_signed: N must be >= 1");
  return signed_table(k, s, N);
}

namespace {

void enumerate_rec(const std::vector<std::int64_t>& values, int remaining, std::int64_t partial,
                   std::vector<Count>& counts) {
  if (remaining == 0) {
    auto& c = counts[static_cast<std::size_t>(partial)];
    c = checked_add(c, 1);
    return;
  }
  const auto N = static_cast<std::int64_t>(counts.size()) - 1;
  for (std::int64_t v : values) {
    if (partial + v > N) continue;  // values are not sorted in the signed case
    enumerate_rec(values, remaining - 1, partial + v, counts);
  }
}

}  // namespace

RepCountTable enumerate_representations(int k, int s, std::int64_t N, bool is_signed) {
  check_table_args(k, s, N);
  if (s < 1 || N < 1) throw std::invalid_argument("enumerate_representations: s, N must be >= 1");
  if (is_signed && k % 2 != 0) {
    throw std::invalid_argument("enumerate_representations: signed counts require even k");
  }
  // The k-th power of each admissible x; for signed counts x ranges over
  // -P..P, which for even k lists 0 once and every positive power twice.
  std::vector<std::int64_t> values;
  auto powers = kth_powers(k, N);
  if (is_signed) {
    for (auto it = powers.rbegin(); it != powers.rend(); ++it) values.push_back(*it);
    values.push_back(0);
  }
  for (auto p : powers) values.push_back(p);
  std::vector<Count> counts(static_cast<std::size_t>(N) + 1, 0);
  enumerate_rec(values, s, 0, counts);
  return {k, s, N, is_signed, std::move(counts)};
}

InversionCheck verify_inversion(int k, int s, std::int64_t N) {
  if (k % 2 != 0) throw std::invalid_argument("verify_inversion: requires even k");
  if (s < 1 || N < 0) throw std::invalid_argument("verify_inversion: requires s >= 1, N >= 0");
  std::vector<RepCountTable> plain;
  std::vector<RepCountTable> with_sign;
  for (int t = 0; t <= s; ++t) {
    plain.push_back(unsigned_table(k, t, N));
    with_sign.push_back(signed_table(k, t, N));
  }
  std::vector<BigInt> binom;
  for (int r = 0; r <= s; ++r) binom.push_back(binomial(static_cast<unsigned>(s), static_cast<unsigned>(r)));
  auto big = [](Count c) {
    BigInt b = static_cast<std::uint64_t>(c >> 64);
    b <<= 64;
    b += static_cast<std::uint64_t>(c);
    return b;
  };

  InversionCheck result;
  for (std::int64_t n = 0; n <= N; ++n) {
    BigInt forward = 0;
    BigInt backward = 0;
    for (int r = 0; r <= s; ++r) {
      BigInt pow2 = BigInt(1) << (s - r);
      forward += pow2 * binom[static_cast<std::size_t>(r)] *
                 big(plain[static_cast<std::size_t>(s - r)][n]);
      BigInt term = binom[static_cast<std::size_t>(r)] *
                    big(with_sign[static_cast<std::size_t>(s - r)][n]);
      backward += (r % 2 == 0) ? term : BigInt(-term);
    }
    BigInt signed_count = big(with_sign[static_cast<std::size_t>(s)][n]);
    BigInt scaled_plain = big(plain[static_cast<std::size_t>(s)][n]) << s;
    if (forward != signed_count) {
      result.ok = false;
      result.first_failure = n;
      result.detail = "R*_s(n) != sum_r 2^{s-r} C(s,r) R_{s-r}(n) at n = " + std::to_string(n);
      return result;
    }
    if (backward != scaled_plain) {
      result.ok = false;
      result.first_failure = n;
      result.detail =
          "2^s R_s(n) != sum_r (-1)^r C(s,r) R*_{s-r}(n) at n = " + std::to_string(n);
      return result;
    }
  }
  return result;
}

std::vector<ResidualRecord> residual_table(const RepCountTable& exact, int J, std::int64_t n_min,
                                           std::int64_t n_max, std::int64_t Q,
                                           unsigned threads) {
  if (exact.is_signed) throw std::invalid_argument("residual_table: needs unsigned counts");
  if (n_min < 1 || n_max < n_min) throw std::invalid_argument("residual_table: bad n range");
  if (n_max > exact.N) throw std::invalid_argument("residual_table: exact table too short");
  ExpansionModel model(exact.k, exact.s, J, Q, threads);
  std::vector<ResidualRecord> out(static_cast<std::size_t>(n_max - n_min + 1));
  parallel_for(out.size(), threads, [&](std::size_t i) {
    std::int64_t n = n_min + static_cast<std::int64_t>(i);
    auto coeffs = model.coefficients(n);
    ResidualRecord rec;
    rec.n = n;
    rec.exact = exact[n];
    auto exact_value = static_cast<long double>(rec.exact);
    for (int j = 0; j <= J; ++j) {
      double pred = evaluate_expansion(n, coeffs, j);
      rec.predicted.push_back(pred);
      rec.residual.push_back(static_cast<double>(exact_value - static_cast<long double>(pred)));
    }
    out[i] = std::move(rec);
  });
  return out;
}

std::vector<ResidualRecord> residual_table(int k, int s, int J, std::int64_t n_min,
                                           std::int64_t n_max, std::int64_t Q,
                                           unsigned threads) {
  return residual_table(count_representations(k, s, n_max), J, n_min, n_max, Q, threads);
}

namespace {

template <class T>
void put_le(std::ostream& out, T value, std::size_t bytes = sizeof(T)) {
  std::array<char, 16> buf{};
  for (std::size_t i = 0; i < bytes; ++i) {
    buf[i] = static_cast<char>(static_cast<unsigned char>(value & 0xff));
    value >>= 8;
  }
  out.write(buf.data(), static_cast<std::streamsize>(bytes));
}

template <class T>
T get_le(std::istream& in, std::size_t bytes = sizeof(T)) {
  std::array<unsigned char, 16> buf{};
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(bytes));
  if (!in) throw std::runtime_error("binary count table: truncated input");
  T value = 0;
  for (std::size_t i = bytes; i-- > 0;) value = static_cast<T>((value << 8) | buf[i]);
  return value;
}

constexpr char kMagic[4] = {'W', 'R', 'C', '1'};
constexpr std::uint32_t kWidthBits = 128;

}  // namespace

void write_binary(const RepCountTable& table, std::ostream& out) {
  out.write(kMagic, 4);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(table.k));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(table.s));
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(table.N));
  put_le<std::uint32_t>(out, kWidthBits);
  put_le<std::uint32_t>(out, table.is_signed ? 1u : 0u);
  for (Count c : table.counts) put_le<Count>(out, c, kWidthBits / 8);
  if (!out) throw std::runtime_error("binary count table: write failed");
}

RepCountTable read_binary(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || !std::equal(magic, magic + 4, kMagic)) {
    throw std::runtime_error("binary count table: bad magic");
  }
  RepCountTable t;
  t.k = static_cast<int>(get_le<std::uint32_t>(in));
  t.s = static_cast<int>(get_le<std::uint32_t>(in));
  t.N = static_cast<std::int64_t>(get_le<std::uint64_t>(in));
  auto width = get_le<std::uint32_t>(in);
  if (width != kWidthBits) throw std::runtime_error("binary count table: unsupported width");
  t.is_signed = get_le<std::uint32_t>(in) != 0;
  t.counts.resize(static_cast<std::size_t>(t.N) + 1);
  for (auto& c : t.counts) c = get_le<Count>(in, kWidthBits / 8);
  return t;
}

void write_binary_file(const RepCountTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_binary(table, out);
}

RepCountTable read_binary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_binary(in);
}

void write_csv(const RepCountTable& table, std::ostream& out) {
  out << "n,count\n";
  for (std::size_t n = 0; n < table.counts.size(); ++n) {
    out << n << ',' << to_string(table.counts[n]) << '\n';
  }
}

}  // namespace waring
