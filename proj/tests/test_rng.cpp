#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "bmc/rng.hpp"

using namespace bmc;

TEST_CASE("philox known answer vectors") {
  std::uint32_t out[4];
  {
    const std::uint32_t ctr[4] = {0, 0, 0, 0}, key[2] = {0, 0};
    detail::philox4x32_10(ctr, key, out);
    CHECK(out[0] == 0x6627e8d5u);
    CHECK(out[1] == 0xe169c58du);
    CHECK(out[2] == 0xbc57ac4cu);
    CHECK(out[3] == 0x9b00dbd8u);
  }
  {
    const std::uint32_t ctr[4] = {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu};
    const std::uint32_t key[2] = {0xffffffffu, 0xffffffffu};
    detail::philox4x32_10(ctr, key, out);
    CHECK(out[0] == 0x408f276du);
    CHECK(out[1] == 0x41c83b0eu);
    CHECK(out[2] == 0xa20bc7c6u);
    CHECK(out[3] == 0x6d5451fdu);
  }
}

TEST_CASE("substreams are reproducible and keyed apart") {
  RngStream s(42, Purpose::Scratch);
  Substream a = s.at(7, 3, 0);
  Substream b = s.at(7, 3, 0);
  for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());

  std::set<std::uint64_t> firsts;
  firsts.insert(s.at(7, 3, 0).next_u64());
  firsts.insert(s.at(8, 3, 0).next_u64());
  firsts.insert(s.at(7, 4, 0).next_u64());
  firsts.insert(s.at(7, 3, 1).next_u64());
  firsts.insert(RngStream(42, Purpose::Build).at(7, 3, 0).next_u64());
  firsts.insert(RngStream(43, Purpose::Scratch).at(7, 3, 0).next_u64());
  CHECK(firsts.size() == 6);
}

TEST_CASE("substream rejects out-of-range indices") {
  RngStream s(1, Purpose::Scratch);
  CHECK_THROWS(s.at(1ull << 32, 0, 0));
  CHECK_THROWS(s.at(0, 1u << 20, 0));
  CHECK_THROWS(s.at(0, 0, 1u << 12));
}

TEST_CASE("inverse normal cdf agrees with erfc and rejects endpoints") {
  CHECK(inverse_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(inverse_normal_cdf(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  double worst = 0.0;
  for (int i = 1; i < 100000; ++i) {
    const double p = i / 100000.0;
    const double x = inverse_normal_cdf(p);
    worst = std::max(worst, std::fabs(0.5 * std::erfc(-x / std::sqrt(2.0)) - p));
  }
  CHECK(worst < 1e-13);
  CHECK_THROWS(inverse_normal_cdf(0.0));
  CHECK_THROWS(inverse_normal_cdf(1.0));
}

TEST_CASE("normal variates have the right moments") {
  RngStream s(2024, Purpose::Scratch);
  const std::size_t n = 1u << 20;
  double m1 = 0, m2 = 0, m3 = 0, m4 = 0;
  for (std::size_t p = 0; p < n / 64; ++p) {
    Substream rs = s.at(p, 0);
    for (int i = 0; i < 64; ++i) {
      const double z = rs.normal();
      m1 += z;
      m2 += z * z;
      m3 += z * z * z;
      m4 += z * z * z * z;
    }
  }
  const double dn = static_cast<double>(n);
  m1 /= dn;
  m2 /= dn;
  m3 /= dn;
  m4 /= dn;
  CHECK(std::fabs(m1) < 4.0 / std::sqrt(dn));
  CHECK(m2 == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::fabs(m3) < 4.0 * std::sqrt(15.0 / dn));
  CHECK(m4 == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("uniforms stay inside the open interval") {
  RngStream s(7, Purpose::Scratch);
  Substream rs = s.at(0, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = rs.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}
