#include "waring/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace waring;

namespace {

std::int64_t ipow(std::int64_t x, int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

TEST_CASE("worked counts") {
  auto t = count_representations(2, 2, 25);
  CHECK(t[25] == 2);
  CHECK(t[0] == 0);
  auto signed_t = count_representations_signed(2, 2, 25);
  CHECK(signed_t[25] == 12);
  CHECK(signed_t[0] == 1);
  CHECK(count_representations_signed(2, 1, 10)[0] == 1);
  CHECK(to_string(t[25]) == "2");
  Count big = static_cast<Count>(1) << 100;
  CHECK(to_string(big) == "1267650600228229401496703205376");
}

TEST_CASE("s = 1 marks perfect powers") {
  for (int k = 2; k <= 5; ++k) {
    auto t = count_representations(k, 1, 5000);
    for (std::int64_t n = 1; n <= 5000; ++n) {
      auto root = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / k)));
      bool perfect = ipow(root, k) == n;
      CHECK(t[n] == (perfect ? 1u : 0u));
    }
  }
}

TEST_CASE("convolution agrees with nested loops") {
  // Triple loop for k = 3, s = 3.
  std::vector<Count> loops(101, 0);
  for (std::int64_t x = 1; x * x * x <= 100; ++x)
    for (std::int64_t y = 1; y * y * y <= 100; ++y)
      for (std::int64_t z = 1; z * z * z <= 100; ++z) {
        std::int64_t n = x * x * x + y * y * y + z * z * z;
        if (n <= 100) ++loops[static_cast<std::size_t>(n)];
      }
  auto conv = count_representations(3, 3, 100);
  for (std::int64_t n = 0; n <= 100; ++n) CHECK(conv[n] == loops[static_cast<std::size_t>(n)]);

  for (int k : {2, 3, 4}) {
    for (int s = 1; s <= 4; ++s) {
      auto a = count_representations(k, s, 2000);
      auto b = enumerate_representations(k, s, 2000);
      CHECK(a.counts == b.counts);
    }
  }
  for (int s = 1; s <= 4; ++s) {
    auto a = count_representations_signed(2, s, 600);
    auto b = enumerate_representations(2, s, 600, true);
    CHECK(a.counts == b.counts);
  }
}

TEST_CASE("sums of two squares avoid 3 mod 4") {
  auto conv = count_representations(2, 2, 2000);
  auto brute = enumerate_representations(2, 2, 2000);
  for (std::int64_t n = 3; n <= 2000; n += 4) {
    CHECK(brute[n] == 0);
    CHECK(conv[n] == 0);
  }
}

TEST_CASE("total counts equal lattice points under the surface") {
  for (int k : {2, 3}) {
    const std::int64_t N = 300;
    auto t = count_representations(k, 3, N);
    Count total = 0;
    for (auto c : t.counts) total += c;
    Count loops = 0;
    for (std::int64_t x = 1; ipow(x, k) <= N; ++x)
      for (std::int64_t y = 1; ipow(x, k) + ipow(y, k) <= N; ++y)
        for (std::int64_t z = 1; ipow(x, k) + ipow(y, k) + ipow(z, k) <= N; ++z) ++loops;
    CHECK(total == loops);
  }
}

TEST_CASE("inversion identities") {
  CHECK(verify_inversion(2, 2, 25).ok);
  CHECK(static_cast<bool>(verify_inversion(2, 4, 10000)));
  CHECK(verify_inversion(2, 6, 5000).ok);
  CHECK(verify_inversion(4, 5, 3000).ok);
  // s = 1: R*_1(n) = 2 R_1(n) + [n = 0].
  auto plain = count_representations(2, 1, 400);
  auto with_sign = count_representations_signed(2, 1, 400);
  for (std::int64_t n = 0; n <= 400; ++n) {
    CHECK(with_sign[n] == 2 * plain[n] + (n == 0 ? 1u : 0u));
  }
  CHECK_THROWS(verify_inversion(3, 2, 10));
}

TEST_CASE("overflow is detected") {
  // R_s(n) grows like n^{s/k - 1}; k = 2, s = 40 passes 2^128 well before n = 4000.
  CHECK_THROWS_AS(count_representations(2, 40, 4000), std::overflow_error);
}

TEST_CASE("argument checks") {
  CHECK_THROWS(count_representations(1, 2, 10));
  CHECK_THROWS(count_representations(2, 0, 10));
  CHECK_THROWS(count_representations(2, 2, 0));
  CHECK_THROWS(count_representations_signed(3, 2, 10));
  CHECK_THROWS(enumerate_representations(3, 2, 10, true));
}

TEST_CASE("binary and CSV round trips") {
  auto t = count_representations(3, 4, 500);
  std::stringstream buf;
  write_binary(t, buf);
  CHECK(buf.str().size() == 4 + 4 + 4 + 8 + 4 + 4 + 501 * 16);
  CHECK(buf.str().substr(0, 4) == "WRC1");
  auto back = read_binary(buf);
  CHECK(back.k == 3);
  CHECK(back.s == 4);
  CHECK(back.N == 500);
  CHECK_FALSE(back.is_signed);
  CHECK(back.counts == t.counts);

  auto path = std::filesystem::temp_directory_path() / "waring_oracle_roundtrip.wrc";
  auto s = count_representations_signed(2, 3, 200);
  s.counts[7] = (static_cast<Count>(1) << 127) + 5;  // exercise all 16 bytes
  write_binary_file(s, path.string());
  auto s2 = read_binary_file(path.string());
  CHECK(s2.is_signed);
  CHECK(s2.counts == s.counts);
  std::filesystem::remove(path);

  std::stringstream bad("WRC2xxxxxxxx");
  CHECK_THROWS(read_binary(bad));
  std::stringstream truncated(buf.str().substr(0, 40));
  CHECK_THROWS(read_binary(truncated));

  std::stringstream csv;
  write_csv(count_representations(2, 2, 5), csv);
  CHECK(csv.str() == "n,count\n0,0\n1,0\n2,1\n3,0\n4,0\n5,2\n");
}

TEST_CASE("residual table") {
  auto rows = residual_table(2, 9, 1, 1000, 1100, 30);
  REQUIRE(rows.size() == 101);
  auto exact = count_representations(2, 9, 1100);
  for (const auto& r : rows) {
    CHECK(r.exact == exact[r.n]);
    REQUIRE(r.predicted.size() == 2);
    CHECK(r.residual[0] ==
          doctest::Approx(static_cast<double>(r.exact) - r.predicted[0]).epsilon(1e-9));
    CHECK(r.residual[1] ==
          doctest::Approx(static_cast<double>(r.exact) - r.predicted[1]).epsilon(1e-9));
  }
  auto threaded = residual_table(exact, 1, 1000, 1100, 30, 3);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(threaded[i].residual == rows[i].residual);
  CHECK_THROWS(residual_table(exact, 1, 1000, 1200, 30));
}
