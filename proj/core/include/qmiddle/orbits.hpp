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

// Shift classes: orbits of r-subspaces of F_q^5 under X -> alpha X.

#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "qmiddle/geometry.hpp"

namespace qmiddle {

struct ShiftClass {
  std::uint32_t r = 0;
  /// Lexicographically smallest member of the orbit.
  Subspace rep;
  std::uint32_t id = 0;
  std::uint32_t size = 0;
};

/// X == shift(rep, shift).
struct CanonicalForm {
  Subspace rep;
  Residue shift = 0;
};

/// Smallest j > 0 with alpha^j X == X.
std::uint32_t orbit_length(const Geometry& geo, const Subspace& x);

/// X, alpha X, ..., alpha^{s-1} X. Throws InvariantViolation if the orbit is
/// shorter than s.
std::vector<Subspace> orbit(const Geometry& geo, const Subspace& x);

/// The lexicographically smallest shift of X, together with the shift that
/// maps it back onto X. The minimum always contains point 0, so only the
/// |X| shifts sending a point of X to 0 are compared.
CanonicalForm canonicalize(const Geometry& geo, const Subspace& x);

/// The q^2 + 1 shift classes of r-subspaces of F_q^5, r in {2, 3}, ordered by
/// canonical representative. Classes are discovered from the generators
/// <0, i> (r = 2) and <0, i, 2i> (r = 3); the class count and the orbit
/// sizes are checked so that the classes provably cover the Grassmannian.
std::vector<ShiftClass> enumerate_classes(const Geometry& geo, std::uint32_t r);

/// Both class lists of F_q^5 plus the incidence structure between them.
///
/// Construction verifies, on one representative per class, that every plane
/// meets its special line class q + 1 times and every other class once, that
/// the special-partner map is a bijection, and that dually every line lies in
/// q + 1 planes of one class and one plane of every other class. Because the
/// shift is a collineation these facts then hold for every member.
class ClassTable {
 public:
  explicit ClassTable(const Geometry& geo);

  const Geometry& geometry() const noexcept { return *geo_; }
  std::uint32_t class_count() const noexcept { return static_cast<std::uint32_t>(lines_.size()); }
  const std::vector<ShiftClass>& classes(std::uint32_t r) const;

  struct Location {
    std::uint32_t id = 0;
    Residue shift = 0;
  };
  /// Class id of X (within its dimension) and the shift taking the class
  /// representative onto X.
  Location locate(const Subspace& x) const;
  std::uint32_t class_of(const Subspace& x) const { return locate(x).id; }

  /// The line class contributing q + 1 lines to every plane of plane class `plane_id`.
  std::uint32_t special_partner(std::uint32_t plane_id) const { return special_.at(plane_id); }
  /// Inverse of special_partner.
  std::uint32_t special_plane_class(std::uint32_t line_id) const { return dual_.at(line_id); }

  /// Number of lines of the plane Z in each line class, indexed by class id.
  /// Throws InvariantViolation unless the profile is one q + 1 and q^2 ones.
  std::vector<std::uint32_t> incidence_profile(const Subspace& z) const;

 private:
  const Geometry* geo_;
  std::vector<ShiftClass> lines_;
  std::vector<ShiftClass> planes_;
  std::unordered_map<Subspace, std::uint32_t, SubspaceHash> line_ids_;
  std::unordered_map<Subspace, std::uint32_t, SubspaceHash> plane_ids_;
  std::vector<std::uint32_t> special_;
  std::vector<std::uint32_t> dual_;
};

}  // namespace qmiddle
