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

// Independent checks. Nothing here uses the Zech table, the span code or the
// class table to decide validity: subspaces are certified by Gaussian
// elimination over GF(q) on the coefficient vectors of the exp table, with
// GF(q) arithmetic done by direct polynomial multiplication.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qmiddle/certificate.hpp"
#include "qmiddle/field.hpp"

namespace qmiddle {

struct CheckResult {
  std::string check;
  bool passed = true;
  /// First counterexample; empty when the check passed.
  std::string witness;
};

struct Report {
  std::vector<CheckResult> checks;

  bool ok() const;
  const CheckResult* find(const std::string& check) const;
  /// One "PASS name" / "FAIL name: witness" line per check.
  std::string summary() const;
  /// [{"check":..,"status":"pass"|"fail","witness":..}, ...]
  std::string to_json() const;
};

/// Row-echelon linear algebra over GF(q) on points of PG(n-1, q).
class EchelonOracle {
 public:
  explicit EchelonOracle(const FieldTable& table);

  /// Rank over GF(q) of the vectors alpha^r for r in `points`.
  std::uint32_t rank(std::span<const std::uint32_t> points) const;

  /// Every point of the span of `points`, ascending.
  std::vector<std::uint32_t> span_points(std::span<const std::uint32_t> points) const;

  /// Point sets of all r-dimensional subspaces, obtained from the reduced
  /// row echelon forms of full-rank r x n matrices; ascending.
  std::vector<std::vector<std::uint32_t>> enumerate_grassmannian(std::uint32_t r) const;

  std::uint32_t q() const noexcept { return q_; }
  std::uint32_t n() const noexcept { return n_; }

 private:
  using Row = std::vector<std::uint32_t>;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }

  /// Reduced row echelon basis of the rows.
  std::vector<Row> reduce(std::vector<Row> rows) const;
  /// Points of the row space of an echelon basis.
  std::vector<std::uint32_t> points_of(const std::vector<Row>& basis) const;

  const FieldTable* table_;
  std::uint32_t p_;
  std::uint32_t m_;
  std::uint32_t q_;
  std::uint32_t n_;
  Poly base_modulus_;
  std::vector<std::uint32_t> inv_;
};

/// Validates a certificate: header and field, vertex count, every vertex a
/// genuine subspace of dimension k or k+1, alternation, nested neighbours,
/// no repeats, closing edge for cycle claims.
Report verify_certificate(const CycleCertificate& cert);

enum class SweepMode { kExhaustive, kSampled };

struct PropertySuiteOptions {
  SweepMode mode = SweepMode::kExhaustive;
  std::uint64_t seed = 20141019;
  std::uint32_t samples = 400;
};

/// Exhaustive for q <= 3, sampled with the fixed seed above otherwise.
PropertySuiteOptions default_suite_options(std::uint32_t q);

/// The thirteen structural facts about lines and planes of F_q^5 the k = 2
/// construction rests on, evaluated with the span and shift machinery of
/// `table`. Subjects come from the echelon oracle, so a corrupted span table
/// shows up as a failing check with a witness rather than as a crash.
///
///   orbit_size                 every shift class has s members
///   class_count                q^2 + 1 line classes and q^2 + 1 plane classes
///   progression_independent    0, i, 2i are independent for 1 <= i < s
///   spanning_pairs             a line is spanned by exactly q^2 + q ordered pairs
///   distinct_differences       the q^2 + q pair differences of a line are distinct
///   repeated_difference_plane  two lines <t,t+i>, <u,u+i> in a plane Z force Z = <r,r+i,r+2i>
///   plane_progression_form     every plane is <r, r+i, r+2i>
///   progression_heavy_class    <r,r+i,r+2i> has >= q+1 lines of class [<0,i>]
///   unique_heavy_class         a plane has q+1 lines of exactly one class
///   light_classes_at_most_one  other classes meet a plane at most once
///   plane_incidence_profile    line classes of a plane: (q+1, 1, ..., 1)
///   line_classes_distinct      [<0,1>] != [<0,2>]
///   plane_classes_distinct     [<0,1,2>] != [<0,1,3>]
Report run_property_suite(const FieldTable& table, const PropertySuiteOptions& options);

/// dual_incidence (every line lies in q+1 planes of one class and one plane
/// of each other class) and oracle_agreement (span-based Grassmannians equal
/// the echelon ones, with matching ranks).
Report run_supplementary_checks(const FieldTable& table, const PropertySuiteOptions& options);

struct OracleSweep {
  std::uint64_t pairs = 0;
  std::uint64_t triples = 0;
  std::uint64_t rank_mismatches = 0;
  std::uint64_t point_set_mismatches = 0;
  std::uint64_t dependency_mismatches = 0;
  std::uint64_t grassmannian_mismatches = 0;
};

/// Every pair and every triple of distinct points: span_pair / span_triple
/// against the oracle's rank and point set; plus the full Grassmannians of
/// dimension 2 and 3 from both enumerators.
OracleSweep sweep_span_oracle(const FieldTable& table);

}  // namespace qmiddle
