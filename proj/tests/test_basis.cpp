#include <bit>
#include <stdexcept>

#include "doctest.h"
#include "floq/basis.hpp"

using namespace floq;

TEST_SUITE("basis") {
  TEST_CASE("two-site sector") {
    const SectorBasis basis = enumerate_sector(2, 1);
    REQUIRE(basis.dim() == 2);
    CHECK(basis.state(0) == 0b01);
    CHECK(basis.state(1) == 0b10);
  }

  TEST_CASE("four-site half filling enumerates ascending") {
    const SectorBasis basis = enumerate_sector(4, 2);
    REQUIRE(basis.dim() == 6);
    const std::uint32_t expected[] = {0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100};
    for (int k = 0; k < 6; ++k) CHECK(basis.state(k) == expected[k]);
  }

  TEST_CASE("dimension is the binomial coefficient") {
    CHECK(enumerate_sector(16, 8).dim() == 12870);
    CHECK(binomial(16, 8) == 12870);
    CHECK(enumerate_sector(12, 0).dim() == 1);
    CHECK(enumerate_sector(12, 12).dim() == 1);
  }

  TEST_CASE("sector dimensions sum to 2^L") {
    for (int L = 1; L <= 14; ++L) {
      std::uint64_t total = 0;
      for (int n = 0; n <= L; ++n) total += binomial(L, n);
      CHECK(total == (std::uint64_t(1) << L));
    }
  }

  TEST_CASE("rank endpoints") {
    const SectorBasis basis = enumerate_sector(4, 2);
    CHECK(basis.rank(0b0011) == 0);
    CHECK(basis.rank(0b1100) == 5);
  }

  TEST_CASE("rank/unrank are inverse bijections for all L <= 12") {
    for (int L = 1; L <= 12; ++L) {
      for (int n = 0; n <= L; ++n) {
        const SectorBasis basis = enumerate_sector(L, n);
        for (int k = 0; k < basis.dim(); ++k) {
          const std::uint32_t s = basis.unrank(k);
          CHECK(std::popcount(s) == n);
          REQUIRE(basis.rank(s) == k);
        }
      }
    }
  }

  TEST_CASE("rank agrees with a linear scan") {
    const SectorBasis basis = enumerate_sector(13, 6);
    for (int k = 0; k < basis.dim(); ++k) {
      const std::uint32_t s = basis.state(k);
      int scan = -1;
      for (int j = 0; j < basis.dim(); ++j) {
        if (basis.state(j) == s) {
          scan = j;
          break;
        }
      }
      REQUIRE(basis.rank(s) == scan);
    }
  }

  TEST_CASE("states are strictly increasing") {
    const SectorBasis basis = enumerate_sector(14, 7);
    for (int k = 1; k < basis.dim(); ++k) CHECK(basis.state(k) > basis.state(k - 1));
  }

  TEST_CASE("input validation") {
    CHECK_THROWS_AS(enumerate_sector(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_sector(25, 1), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_sector(8, -1), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_sector(8, 9), std::invalid_argument);
    const SectorBasis basis = enumerate_sector(4, 2);
    CHECK_THROWS_AS(basis.rank(0b0111), std::invalid_argument);
    CHECK_THROWS_AS(basis.rank(0b10011), std::invalid_argument);
  }

  TEST_CASE("bit convention: site 1 is the most significant bit") {
    // |up down up down> at L=4 is 1010
    CHECK(spin_z(0b1010, 1, 4) == 0.5);
    CHECK(spin_z(0b1010, 2, 4) == -0.5);
    CHECK(spin_z(0b1010, 3, 4) == 0.5);
    CHECK(spin_z(0b1010, 4, 4) == -0.5);
  }
}
