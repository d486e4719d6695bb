#pragma once

// Exact representation counts
//
//   R_s(n)  = #{(x_1..x_s) in Z_{>=1}^s : x_1^k + ... + x_s^k = n}
//   R*_s(n) = #{(x_1..x_s) in Z^s      : x_1^k + ... + x_s^k = n}   (k even)
//
// Ordered tuples throughout. Counts are 128-bit unsigned integers and every
// addition and multiplication is overflow-checked.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace waring {

using Count = unsigned __int128;

std::string to_string(Count value);

struct RepCountTable {
  int k = 2;
  int s = 1;
  std::int64_t N = 0;
  bool is_signed = false;
  std::vector<Count> counts;  // indices 0..N

  Count operator[](std::int64_t n) const { return counts.at(static_cast<std::size_t>(n)); }
};

// Iterated sparse-by-dense convolution of the k-th power indicator.
// Throws std::overflow_error if a count exceeds 128 bits.
RepCountTable count_representations(int k, int s, std::int64_t N);

// Signed counts for even k via the weights w(0) = 1, w(y^k) = 2.
RepCountTable count_representations_signed(int k, int s, std::int64_t N);

// Nested-loop enumeration; cost grows like N^{s/k}. Used as an oracle.
RepCountTable enumerate_representations(int k, int s, std::int64_t N, bool is_signed = false);

struct InversionCheck {
  bool ok = true;
  std::optional<std::int64_t> first_failure;
  std::string detail;

  explicit operator bool() const { return ok; }
};

// Checks, in exact integer arithmetic for all n <= N:
//   R*_s(n)     = sum_r 2^{s-r} C(s,r) R_{s-r}(n)
//   2^s R_s(n)  = sum_r (-1)^r C(s,r) R*_{s-r}(n)
// with R_0(n) = R*_0(n) = [n = 0]. Requires even k.
InversionCheck verify_inversion(int k, int s, std::int64_t N);

struct ResidualRecord {
  std::int64_t n = 0;
  Count exact = 0;
  std::vector<double> predicted;  // partial expansions through c_0..c_j
  std::vector<double> residual;   // exact - predicted[j]
};

// Exact R_s(n) against the truncated expansion for n in [n_min, n_max].
std::vector<ResidualRecord> residual_table(int k, int s, int J, std::int64_t n_min,
                                           std::int64_t n_max, std::int64_t Q,
                                           unsigned threads = 1);
// As above with a precomputed exact table covering n_max.
std::vector<ResidualRecord> residual_table(const RepCountTable& exact, int J, std::int64_t n_min,
                                           std::int64_t n_max, std::int64_t Q,
                                           unsigned threads = 1);

// Flat binary layout, all integers little-endian:
//   "WRC1" | k:u32 | s:u32 | N:u64 | width:u32 (=128) | signed:u32 |
//   (N + 1) counts of width/8 bytes each.
void write_binary(const RepCountTable& table, std::ostream& out);
RepCountTable read_binary(std::istream& in);
void write_binary_file(const RepCountTable& table, const std::string& path);
RepCountTable read_binary_file(const std::string& path);

// "n,count" rows with a header line.
void write_csv(const RepCountTable& table, std::ostream& out);

}  // namespace waring
