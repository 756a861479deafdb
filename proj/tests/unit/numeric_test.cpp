// Copyright 2026 The qmiddle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <array>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "qmiddle/errors.hpp"
#include "qmiddle/numeric.hpp"

using namespace qmiddle;

TEST_CASE("primes and prime powers") {
  for (std::uint64_t x : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 31ull, 71ull, 4294967291ull}) CHECK(is_prime(x));
  for (std::uint64_t x : {0, 1, 4, 9, 121, 341, 781}) CHECK_FALSE(is_prime(x));

  CHECK_FALSE(prime_power(6).has_value());
  CHECK_FALSE(prime_power(1).has_value());
  CHECK_FALSE(prime_power(12).has_value());
  const auto sixteen = prime_power(16);
  REQUIRE(sixteen);
  CHECK(sixteen->p == 2);
  CHECK(sixteen->m == 4);
  const auto nine = prime_power(9);
  REQUIRE(nine);
  CHECK(nine->p == 3);
  CHECK(nine->m == 2);

  CHECK(prime_factors(781) == std::vector<std::uint64_t>{11, 71});
  CHECK(prime_factors(1023) == std::vector<std::uint64_t>{3, 11, 31});
  CHECK(prime_factors(242) == std::vector<std::uint64_t>{2, 11});
}

TEST_CASE("checked arithmetic") {
  CHECK(checked_pow(5, 5) == 3125);
  CHECK(checked_pow(7, 0) == 1);
  CHECK_THROWS_AS(checked_pow(2, 64), OverflowError);
  CHECK_THROWS_AS(checked_mul(1ull << 40, 1ull << 40), OverflowError);
  CHECK(projective_size(2, 5) == 31);
  CHECK(projective_size(3, 5) == 121);
  CHECK(projective_size(4, 5) == 341);
  CHECK(projective_size(5, 5) == 781);
}

TEST_CASE("bounded draws stay in range and repeat per seed") {
  std::mt19937_64 a(7), b(7);
  std::map<std::uint64_t, int> hist;
  for (int i = 0; i < 6000; ++i) {
    const auto x = bounded_draw(a, 6);
    CHECK(x < 6);
    CHECK(x == bounded_draw(b, 6));
    ++hist[x];
  }
  CHECK(hist.size() == 6);
  for (const auto& [v, n] : hist) CHECK(n > 800);
}

TEST_CASE("portable shuffle is a deterministic permutation") {
  std::array<int, 10> x{}, y{};
  std::iota(x.begin(), x.end(), 0);
  y = x;
  std::mt19937_64 a(42), b(42);
  portable_shuffle(std::span<int>(x), a);
  portable_shuffle(std::span<int>(y), b);
  CHECK(x == y);
  auto sorted = x;
  std::sort(sorted.begin(), sorted.end());
  std::array<int, 10> id{};
  std::iota(id.begin(), id.end(), 0);
  CHECK(sorted == id);
}

TEST_CASE("permutation unranking") {
  std::set<std::array<int, 4>> seen;
  for (std::uint64_t r = 0; r < 24; ++r) {
    std::array<int, 4> x{0, 1, 2, 3};
    unrank_permutation(std::span<int>(x), r);
    seen.insert(x);
    if (r == 0) CHECK(x == std::array<int, 4>{0, 1, 2, 3});
    if (r == 23) CHECK(x == std::array<int, 4>{3, 2, 1, 0});
  }
  CHECK(seen.size() == 24);
  CHECK(factorial(20) == 2432902008176640000ull);
  CHECK_FALSE(factorial(21).has_value());
  // Large permutations accept any rank.
  std::vector<int> big(24);
  std::iota(big.begin(), big.end(), 0);
  unrank_permutation(std::span<int>(big), ~0ull);
  std::vector<int> sorted = big;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> id(24);
  std::iota(id.begin(), id.end(), 0);
  CHECK(sorted == id);
  CHECK(big != id);
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFull);
}
