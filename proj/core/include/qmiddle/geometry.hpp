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

// Projective geometry of F_q^n in the exponent-mod-s encoding: the point
// spanned by alpha^a is the residue a mod s, and multiplying a subspace by
// alpha^j adds j to every residue.

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmiddle/field.hpp"

namespace qmiddle {

/// Projective point, a residue mod s.
using Residue = std::uint32_t;

/// A subspace as its dimension and the ascending list of its points.
struct Subspace {
  std::uint32_t dim = 0;
  std::vector<Residue> points;

  friend bool operator==(const Subspace&, const Subspace&) = default;
  friend std::strong_ordering operator<=>(const Subspace&, const Subspace&) = default;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& x) const noexcept;
};

std::string to_string(const Subspace& x);

/// q-ary Gaussian coefficient [n r]_q. Throws OverflowError when the value
/// does not fit in 64 bits.
std::uint64_t gaussian_coefficient(std::uint64_t q, std::uint32_t n, std::uint32_t r);

/// V is a subset of U (point-set inclusion).
bool contains(const Subspace& u, const Subspace& v);

/// Differences (y - x) mod s over ordered pairs of distinct points of `x`,
/// ascending. For a line these are the labels of its shift class.
std::vector<Residue> difference_labels(const Subspace& x, std::uint32_t s);

class Geometry {
 public:
  explicit Geometry(const FieldTable& table);

  const FieldTable& table() const noexcept { return *table_; }
  std::uint32_t q() const noexcept { return table_->q(); }
  std::uint32_t n() const noexcept { return table_->n(); }
  std::uint32_t s() const noexcept { return table_->s(); }

  /// Number of points of a subspace of dimension `dim`.
  std::uint32_t points_in(std::uint32_t dim) const;

  Subspace point(Residue a) const;

  /// <a, b>; throws DegenerateSpanError when a and b coincide mod s.
  Subspace span_pair(Residue a, Residue b) const;

  /// <a, b, c>, or nullopt when c lies on <a, b>.
  std::optional<Subspace> span_triple(Residue a, Residue b, Residue c) const;

  /// <X, c>, or nullopt when c already lies in X.
  std::optional<Subspace> extend(const Subspace& x, Residue c) const;

  /// alpha^j X.
  Subspace shift(const Subspace& x, std::int64_t j) const;

  /// Calls `fn` once for every subspace of dimension r.
  ///
  /// Subspaces are generated from their canonical generators g_1 < g_2 < ...,
  /// where g_i is the smallest point outside <g_1, ..., g_{i-1}>. A partial
  /// span is abandoned as soon as it acquires a point below its newest
  /// generator, so every subspace is reached exactly once.
  void for_each_subspace(std::uint32_t r, const std::function<void(const Subspace&)>& fn) const;

  std::vector<Subspace> enumerate_grassmannian(std::uint32_t r) const;

  /// The (dim - 1)-dimensional subspaces of U, ascending. dim U must be 2 or 3.
  std::vector<Subspace> hyperplanes_of(const Subspace& u) const;

  /// The (dim + 1)-dimensional subspaces containing V, ascending.
  std::vector<Subspace> superspaces(const Subspace& v) const;

  /// Reduces an arbitrary exponent to its point.
  Residue residue(std::int64_t e) const;

 private:
  void descend(std::uint32_t r, const Subspace& current, Residue last,
               const std::function<void(const Subspace&)>& fn) const;

  const FieldTable* table_;
};

}  // namespace qmiddle
