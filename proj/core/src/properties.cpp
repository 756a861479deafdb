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

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>

#include "qmiddle/errors.hpp"
#include "qmiddle/geometry.hpp"
#include "qmiddle/numeric.hpp"
#include "qmiddle/orbits.hpp"
#include "qmiddle/verifier.hpp"

namespace qmiddle {

namespace {

using Key = std::vector<Residue>;

// Records the first failure only.
class Check {
 public:
  explicit Check(std::string name) : result_{std::move(name), true, {}} {}

  void fail(const std::string& witness) {
    if (result_.passed) {
      result_.passed = false;
      result_.witness = witness;
    }
  }
  void require(bool ok, const std::string& witness) {
    if (!ok) fail(witness);
  }
  bool passed() const { return result_.passed; }
  CheckResult result() const { return result_; }

 private:
  CheckResult result_;
};

struct Subjects {
  std::vector<Subspace> lines;
  std::vector<Subspace> planes;
};

Subjects collect_subjects(const EchelonOracle& oracle, std::uint32_t s, const PropertySuiteOptions& options) {
  Subjects out;
  if (options.mode == SweepMode::kExhaustive) {
    for (auto& pts : oracle.enumerate_grassmannian(2)) out.lines.push_back(Subspace{2, std::move(pts)});
    for (auto& pts : oracle.enumerate_grassmannian(3)) out.planes.push_back(Subspace{3, std::move(pts)});
    return out;
  }
  std::mt19937_64 rng(options.seed);
  auto sample = [&](std::uint32_t dim) {
    std::set<Key> seen;
    std::vector<Subspace> picked;
    while (picked.size() < options.samples) {
      std::vector<std::uint32_t> gens(dim);
      for (auto& g : gens) g = static_cast<std::uint32_t>(bounded_draw(rng, s));
      if (oracle.rank(gens) != dim) continue;
      auto pts = oracle.span_points(gens);
      if (seen.insert(pts).second) picked.push_back(Subspace{dim, std::move(pts)});
    }
    return picked;
  };
  out.lines = sample(2);
  out.planes = sample(3);
  return out;
}

// Line classes of one plane, computed with the span machinery.
struct PlaneAnalysis {
  std::map<Key, std::uint32_t> class_counts;
  // (r, i) with r, r+i, r+2i in Z and <r, r+i, r+2i> == Z.
  std::vector<std::pair<Residue, Residue>> progressions;
  // Differences i for which Z holds two distinct lines <t, t+i>.
  std::set<Residue> repeated_differences;
};

PlaneAnalysis analyse_plane(const Geometry& geo, const Subspace& z) {
  const std::uint32_t s = geo.s();
  PlaneAnalysis a;
  for (const auto& line : geo.hyperplanes_of(z)) ++a.class_counts[canonicalize(geo, line).rep.points];

  std::map<Residue, std::set<Key>> lines_by_difference;
  auto in_z = [&](Residue x) { return std::binary_search(z.points.begin(), z.points.end(), x); };
  for (const auto x : z.points) {
    for (const auto y : z.points) {
      if (x == y) continue;
      const Residue i = (y + s - x) % s;
      lines_by_difference[i].insert(geo.span_pair(x, y).points);
      const Residue w = (y + i) % s;
      if (w != x && in_z(w)) {
        const auto plane = geo.span_triple(x, y, w);
        if (plane && *plane == z) a.progressions.emplace_back(x, i);
      }
    }
  }
  for (const auto& [i, lines] : lines_by_difference) {
    if (lines.size() >= 2) a.repeated_differences.insert(i);
  }
  return a;
}

std::string describe_failure(const Subspace& x, const Error& ex) { return to_string(x) + " (" + ex.what() + ")"; }

}  // namespace

PropertySuiteOptions default_suite_options(std::uint32_t q) {
  PropertySuiteOptions options;
  options.mode = q <= 3 ? SweepMode::kExhaustive : SweepMode::kSampled;
  return options;
}

Report run_property_suite(const FieldTable& table, const PropertySuiteOptions& options) {
  if (table.n() != 5) throw PreconditionError("the property suite is defined for n = 5");
  const Geometry geo(table);
  const EchelonOracle oracle(table);
  const std::uint32_t q = table.q();
  const std::uint32_t s = table.s();
  const Subjects subjects = collect_subjects(oracle, s, options);

  Check orbit_size("orbit_size");
  Check class_count("class_count");
  Check independent("progression_independent");
  Check spanning_pairs("spanning_pairs");
  Check distinct_diff("distinct_differences");
  Check repeated_difference("repeated_difference_plane");
  Check progression_form("plane_progression_form");
  Check heavy_class("progression_heavy_class");
  Check unique_heavy("unique_heavy_class");
  Check light_once("light_classes_at_most_one");
  Check profile("plane_incidence_profile");
  Check line_classes("line_classes_distinct");
  Check plane_classes("plane_classes_distinct");

  for (const auto* group : {&subjects.lines, &subjects.planes}) {
    for (const auto& x : *group) {
      const auto len = orbit_length(geo, x);
      orbit_size.require(len == s, to_string(x) + " has orbit length " + std::to_string(len));
    }
  }

  // Class keys. In exhaustive mode every subject is classified; in sampled
  // mode the classes come from the generators <0,i> and <0,i,2i> and every
  // sample must fall into one of them.
  {
    std::set<Key> line_keys, plane_keys;
    try {
      if (options.mode == SweepMode::kExhaustive) {
        for (const auto& l : subjects.lines) line_keys.insert(canonicalize(geo, l).rep.points);
        for (const auto& z : subjects.planes) plane_keys.insert(canonicalize(geo, z).rep.points);
      } else {
        for (Residue i = 1; i < s; ++i) {
          line_keys.insert(canonicalize(geo, geo.span_pair(0, i)).rep.points);
          if (auto z = geo.span_triple(0, i, 2 * i % s)) plane_keys.insert(canonicalize(geo, *z).rep.points);
        }
        for (const auto& l : subjects.lines) {
          class_count.require(line_keys.count(canonicalize(geo, l).rep.points) == 1,
                              to_string(l) + " outside the generated line classes");
        }
        for (const auto& z : subjects.planes) {
          class_count.require(plane_keys.count(canonicalize(geo, z).rep.points) == 1,
                              to_string(z) + " outside the generated plane classes");
        }
      }
    } catch (const Error& ex) {
      class_count.fail(ex.what());
    }
    class_count.require(line_keys.size() == std::uint64_t{q} * q + 1,
                        std::to_string(line_keys.size()) + " line classes");
    class_count.require(plane_keys.size() == std::uint64_t{q} * q + 1,
                        std::to_string(plane_keys.size()) + " plane classes");
  }

  for (Residue i = 1; i < s; ++i) {
    const std::vector<std::uint32_t> gens{0, i, 2 * i % s};
    const std::string w = "{0," + std::to_string(i) + "," + std::to_string(2 * i % s) + "}";
    independent.require(oracle.rank(gens) == 3, w + " has rank below 3");
    try {
      independent.require(geo.span_triple(gens[0], gens[1], gens[2]).has_value(), w + " reported dependent");
    } catch (const Error& ex) {
      independent.fail(w + " (" + ex.what() + ")");
    }
  }

  const std::uint64_t ordered_pairs = std::uint64_t{q} * q + q;
  for (const auto& l : subjects.lines) {
    std::uint64_t spanning = 0;
    try {
      for (const auto x : l.points) {
        for (const auto y : l.points) {
          if (x != y && geo.span_pair(x, y) == l) ++spanning;
        }
      }
      spanning_pairs.require(spanning == ordered_pairs,
                             to_string(l) + " is spanned by " + std::to_string(spanning) + " ordered pairs");
    } catch (const Error& ex) {
      spanning_pairs.fail(describe_failure(l, ex));
    }
    const auto labels = difference_labels(l, s);
    distinct_diff.require(labels.size() == ordered_pairs &&
                              std::adjacent_find(labels.begin(), labels.end()) == labels.end(),
                          to_string(l) + " repeats a difference");
  }

  std::map<Residue, Key> difference_class;
  auto class_of_difference = [&](Residue i) -> const Key& {
    auto it = difference_class.find(i);
    if (it == difference_class.end()) {
      it = difference_class.emplace(i, canonicalize(geo, geo.span_pair(0, i)).rep.points).first;
    }
    return it->second;
  };

  for (const auto& z : subjects.planes) {
    std::optional<PlaneAnalysis> analysis;
    try {
      analysis = analyse_plane(geo, z);
    } catch (const Error& ex) {
      const std::string w = describe_failure(z, ex);
      for (auto* c : {&repeated_difference, &progression_form, &heavy_class, &unique_heavy, &light_once, &profile}) {
        c->fail(w);
      }
      continue;
    }
    const auto& a = *analysis;
    const std::string w = to_string(z);
    try {
      std::set<Residue> progression_steps;
      for (const auto& [r, i] : a.progressions) progression_steps.insert(i);

      for (const auto i : a.repeated_differences) {
        repeated_difference.require(progression_steps.count(i) == 1,
                                    w + " has two lines with difference " + std::to_string(i) +
                                        " but is not <r, r+i, r+2i>");
      }
      progression_form.require(!a.progressions.empty(), w + " is not of the form <r, r+i, r+2i>");

      for (const auto i : progression_steps) {
        const Key& heavy = class_of_difference(i);
        const auto it = a.class_counts.find(heavy);
        const std::uint32_t count = it == a.class_counts.end() ? 0 : it->second;
        heavy_class.require(count >= q + 1, w + " has " + std::to_string(count) + " lines of class [<0," +
                                                std::to_string(i) + ">]");
        for (const auto& [key, c] : a.class_counts) {
          light_once.require(key == heavy || c <= 1, w + " meets a non-special class " + std::to_string(c) + " times");
        }
      }

      std::uint32_t heavy_count = 0, light_count = 0, over = 0, total = 0;
      for (const auto& [key, c] : a.class_counts) {
        total += c;
        if (c == q + 1) ++heavy_count;
        if (c == 1) ++light_count;
        if (c > q + 1) ++over;
      }
      unique_heavy.require(heavy_count == 1 && over == 0,
                           w + " has " + std::to_string(heavy_count) + " classes meeting it q+1 times");
      profile.require(heavy_count == 1 && light_count == q * q && a.class_counts.size() == q * q + 1 &&
                          total == q * q + q + 1,
                      w + " has incidence profile with " + std::to_string(a.class_counts.size()) + " classes");
    } catch (const Error& ex) {
      heavy_class.fail(describe_failure(z, ex));
    }
  }

  try {
    line_classes.require(canonicalize(geo, geo.span_pair(0, 1)).rep != canonicalize(geo, geo.span_pair(0, 2)).rep,
                         "[<0,1>] == [<0,2>]");
    const auto p012 = geo.span_triple(0, 1, 2);
    const auto p013 = geo.span_triple(0, 1, 3);
    plane_classes.require(p012 && p013, "<0,1,2> or <0,1,3> reported dependent");
    if (p012 && p013) {
      plane_classes.require(canonicalize(geo, *p012).rep != canonicalize(geo, *p013).rep, "[<0,1,2>] == [<0,1,3>]");
    }
  } catch (const Error& ex) {
    line_classes.fail(ex.what());
    plane_classes.fail(ex.what());
  }

  Report report;
  for (const auto* c : {&orbit_size, &class_count, &independent, &spanning_pairs, &distinct_diff, &repeated_difference,
                        &progression_form, &heavy_class, &unique_heavy, &light_once, &profile, &line_classes,
                        &plane_classes}) {
    report.checks.push_back(c->result());
  }
  return report;
}

Report run_supplementary_checks(const FieldTable& table, const PropertySuiteOptions& options) {
  if (table.n() != 5) throw PreconditionError("the supplementary checks are defined for n = 5");
  const Geometry geo(table);
  const EchelonOracle oracle(table);
  const std::uint32_t q = table.q();
  const Subjects subjects = collect_subjects(oracle, table.s(), options);

  Check dual("dual_incidence");
  for (const auto& l : subjects.lines) {
    try {
      std::map<Key, std::uint32_t> counts;
      for (const auto& z : geo.superspaces(l)) ++counts[canonicalize(geo, z).rep.points];
      std::uint32_t heavy = 0, light = 0;
      for (const auto& [key, c] : counts) {
        if (c == q + 1) ++heavy;
        if (c == 1) ++light;
      }
      dual.require(heavy == 1 && light == q * q && counts.size() == q * q + 1,
                   to_string(l) + " lies in planes of " + std::to_string(counts.size()) + " classes");
    } catch (const Error& ex) {
      dual.fail(describe_failure(l, ex));
    }
  }

  Check agree("oracle_agreement");
  try {
    if (options.mode == SweepMode::kExhaustive) {
      for (std::uint32_t r : {2u, 3u}) {
        std::vector<Key> mine;
        for (const auto& x : geo.enumerate_grassmannian(r)) mine.push_back(x.points);
        std::sort(mine.begin(), mine.end());
        const auto theirs = oracle.enumerate_grassmannian(r);
        agree.require(mine == theirs, std::to_string(r) + "-subspaces differ: " + std::to_string(mine.size()) +
                                          " from spans, " + std::to_string(theirs.size()) + " from echelon forms");
        for (const auto& pts : mine) agree.require(oracle.rank(pts) == r, "rank of " + to_string(Subspace{r, pts}));
      }
    } else {
      for (const auto& l : subjects.lines) {
        agree.require(geo.span_pair(l.points[0], l.points[1]) == l, to_string(l) + " not reproduced by span_pair");
      }
      for (const auto& z : subjects.planes) {
        const auto base = geo.span_pair(z.points[0], z.points[1]);
        const auto off = std::find_if(z.points.begin(), z.points.end(), [&](Residue x) {
          return !std::binary_search(base.points.begin(), base.points.end(), x);
        });
        const auto spanned = geo.extend(base, *off);
        agree.require(spanned && *spanned == z, to_string(z) + " not reproduced by span_triple");
      }
    }
  } catch (const Error& ex) {
    agree.fail(ex.what());
  }

  Report report;
  report.checks.push_back(dual.result());
  report.checks.push_back(agree.result());
  return report;
}

OracleSweep sweep_span_oracle(const FieldTable& table) {
  const Geometry geo(table);
  const EchelonOracle oracle(table);
  const std::uint32_t s = table.s();
  OracleSweep sweep;

  for (Residue a = 0; a < s; ++a) {
    for (Residue b = a + 1; b < s; ++b) {
      ++sweep.pairs;
      std::optional<Subspace> maybe_line;
      try {
        maybe_line = geo.span_pair(a, b);
      } catch (const Error&) {
        ++sweep.point_set_mismatches;
        continue;
      }
      const auto& line = *maybe_line;
      if (oracle.rank(line.points) != 2) ++sweep.rank_mismatches;
      const std::vector<std::uint32_t> gens{a, b};
      if (oracle.span_points(gens) != line.points) ++sweep.point_set_mismatches;

      for (Residue c = b + 1; c < s; ++c) {
        ++sweep.triples;
        std::optional<Subspace> plane;
        try {
          plane = geo.extend(line, c);
        } catch (const Error&) {
          ++sweep.point_set_mismatches;
          continue;
        }
        const std::vector<std::uint32_t> three{a, b, c};
        const bool independent = oracle.rank(three) == 3;
        if (plane.has_value() != independent) {
          ++sweep.dependency_mismatches;
          continue;
        }
        if (!plane) continue;
        if (oracle.rank(plane->points) != 3) ++sweep.rank_mismatches;
        if (oracle.span_points(three) != plane->points) ++sweep.point_set_mismatches;
      }
    }
  }

  for (std::uint32_t r : {2u, 3u}) {
    const auto theirs = oracle.enumerate_grassmannian(r);
    std::vector<Key> mine;
    try {
      for (const auto& x : geo.enumerate_grassmannian(r)) mine.push_back(x.points);
    } catch (const Error&) {
      sweep.grassmannian_mismatches += theirs.size();
      continue;
    }
    std::sort(mine.begin(), mine.end());
    std::vector<Key> diff;
    std::set_symmetric_difference(mine.begin(), mine.end(), theirs.begin(), theirs.end(), std::back_inserter(diff));
    sweep.grassmannian_mismatches += diff.size();
  }
  return sweep;
}

}  // namespace qmiddle
