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

// Hamiltonian cycles in the middle levels of the projective space graph
// P_q(2k+1) for k = 1 and k = 2, built from one short path P whose vertices
// meet every shift class once and copies of P shifted by alpha^ell.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qmiddle/certificate.hpp"
#include "qmiddle/geometry.hpp"
#include "qmiddle/orbits.hpp"

namespace qmiddle {

/// Class orderings for the base path. Entries are class ids of a ClassTable;
/// `planes` and `lines` must each be a permutation.
struct ClassOrders {
  std::vector<std::uint32_t> planes;
  std::vector<std::uint32_t> lines;
};

/// Base path U_1, V_1, ..., U_e, V_e through every shift class of F_q^5.
struct PathPlan {
  ClassOrders orders;
  /// U_1, V_1, U_2, V_2, ..., U_e, V_e.
  std::vector<Subspace> chosen;
  std::uint32_t ell = 0;
  std::uint32_t g = 1;
  std::uint64_t seed = 0;
  /// Number of times the search had to back up.
  std::uint64_t backtracks = 0;
};

struct FlipOutcome {
  std::vector<Subspace> vertices;
  std::uint32_t flips = 0;
};

/// Consecutive vertices differ in dimension by one and are nested.
/// Returns the index of the first bad junction, or nullopt.
std::optional<std::size_t> first_broken_edge(std::span<const Subspace> path);

/// Turns the Hamiltonian path Pi, alpha Pi, ..., alpha^{g-1} Pi into a cycle by
/// (g - 1) prefix reversals. Step i (1-based) reverses the prefix ending at
/// <2i-1, 2i, 2i+2> and then the prefix ending at <2i, 2i+1, 2i+2>; each
/// reversal keeps the path valid because the new junction is a nested pair.
/// Afterwards the path runs from <g-1, g, g+1> to <g, g+1>.
///
/// `path` must start with <0,1,2>, <0,2> and each block alpha^j Pi must end
/// with <j+1, j+2, j+4>, <j+1, j+2>. Throws ConstructionFailure naming the
/// step when a pinned vertex is missing or a reversal breaks the path.
FlipOutcome apply_flip_schedule(const Geometry& geo, std::vector<Subspace> path, std::uint32_t g);

class CycleBuilder {
 public:
  /// `classes` must be built over `geo` (n = 5).
  explicit CycleBuilder(const ClassTable& classes);

  /// Finds a base path. Plane class of <0,1,2> comes first and of <0,1,3>
  /// last; line class of <0,2> first and of <0,1> last. The other classes are
  /// ordered by the seed unless `orders` is given; two seeds never share an
  /// ordering while unused orderings remain (at q = 2 there are only 36, so
  /// seeds wrap modulo 36). Members are tried in canonical-shift order with
  /// depth-first backtracking; when an ordering is exhausted the search
  /// reshuffles, up to a fixed number of restarts.
  PathPlan find_class_path(std::uint64_t seed, const std::optional<ClassOrders>& orders = std::nullopt) const;

  /// Pi = P, alpha^ell P, ..., alpha^{(s/g - 1) ell} P. Requires ell != 0.
  std::vector<Subspace> assemble_pi(const PathPlan& plan) const;

  /// g = 1: Pi closes up. g > 1: concatenates the g shifts of Pi and runs
  /// apply_flip_schedule.
  CycleCertificate close_or_flip(const PathPlan& plan, std::vector<Subspace> pi) const;

  /// ell = 0: the cycle P, alpha P, ..., alpha^{s-1} P.
  CycleCertificate build_ell0(const PathPlan& plan) const;

  /// find_class_path followed by the matching closing branch. Failures are
  /// rethrown as ConstructionFailure carrying the seed and orderings.
  CycleCertificate build(std::uint64_t seed) const;

  /// <0,1,2>, <0,2>, <0,1,3>, <0,1>: the pinned subspaces of the base path.
  const Subspace& first_plane() const noexcept { return first_plane_; }
  const Subspace& first_line() const noexcept { return first_line_; }
  const Subspace& last_plane_rep() const noexcept { return last_plane_; }
  const Subspace& last_line_rep() const noexcept { return last_line_; }

 private:
  CycleCertificate make_certificate(const PathPlan& plan, std::vector<Subspace> vertices, std::uint32_t flips) const;
  std::optional<PathPlan> search(const ClassOrders& orders, std::uint64_t& backtracks) const;

  const ClassTable* classes_;
  const Geometry* geo_;
  Subspace first_plane_;
  Subspace first_line_;
  Subspace last_plane_;
  Subspace last_line_;
};

/// Hamiltonian cycle in the middle levels of P_q(3) from the pair
/// X = <j>, Y = <0,1> with j and j + ell both on Y. `geo` must have n = 3.
/// Requires 1 <= ell <= q^2 + q and gcd(ell, q^2 + q + 1) = 1.
CycleCertificate build_cycle_k1(const Geometry& geo, std::uint32_t ell);

}  // namespace qmiddle
