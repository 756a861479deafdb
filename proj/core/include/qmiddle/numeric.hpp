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

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace qmiddle {

struct PrimePower {
  std::uint32_t p = 0;
  std::uint32_t m = 0;
};

bool is_prime(std::uint64_t x);

/// Decomposes q = p^m; nullopt when q is not a prime power.
std::optional<PrimePower> prime_power(std::uint64_t q);

/// Distinct prime divisors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t x);

/// base^exp, throwing OverflowError when the result does not fit.
std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp);

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

/// Number of one-dimensional subspaces of F_q^n, (q^n - 1) / (q - 1).
std::uint64_t projective_size(std::uint64_t q, std::uint32_t n);

/// Uniform integer in [0, bound) drawn by rejection from mt19937_64.
/// Unlike std::uniform_int_distribution this is identical on every platform.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound);

/// The splitmix64 finaliser; a bijection on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x);

/// n!, or nullopt when it does not fit in 64 bits.
std::optional<std::uint64_t> factorial(std::uint32_t n);

/// Rearranges `items` into the permutation of index `rank` in the factorial
/// number system (rank 0 leaves them alone). Ranks of n! and above wrap.
template <typename T>
void unrank_permutation(std::span<T> items, std::uint64_t rank) {
  const std::size_t n = items.size();
  if (const auto total = factorial(static_cast<std::uint32_t>(n))) rank %= *total;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto block = factorial(static_cast<std::uint32_t>(n - 1 - i));
    if (!block) continue;  // rank < block: digit 0
    const std::size_t digit = static_cast<std::size_t>(rank / *block);
    rank %= *block;
    std::rotate(items.begin() + i, items.begin() + i + digit, items.begin() + i + digit + 1);
  }
}

/// Fisher-Yates over `items` with bounded_draw.
template <typename T>
void portable_shuffle(std::span<T> items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(bounded_draw(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace qmiddle
