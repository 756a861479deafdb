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

#include <algorithm>
#include <numeric>
#include <set>

#include "qmiddle/builder.hpp"
#include "qmiddle/certificate.hpp"
#include "qmiddle/errors.hpp"
#include "qmiddle/field.hpp"
#include "qmiddle/verifier.hpp"
#include "synthetic.hpp"

using namespace qmiddle;
namespace t = qmiddle::testing;

namespace {

struct World {
  FieldTable table;
  Geometry geo;
  ClassTable classes;
  CycleBuilder builder;

  World(std::uint32_t p, std::uint32_t m)
      : table(FieldTable::build(p, m, 5)), geo(table), classes(geo), builder(classes) {}
};

std::multiset<Subspace> as_multiset(const std::vector<Subspace>& xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST_CASE("k = 1 cycles") {
  for (const auto& [p, m, length] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::size_t>>{
           {2, 1, 14}, {3, 1, 26}, {2, 2, 42}}) {
    const auto table = FieldTable::build(p, m, 3);
    const Geometry geo(table);
    for (std::uint32_t ell = 1; ell < table.s(); ++ell) {
      if (std::gcd(ell, table.s()) != 1) {
        CHECK_THROWS_AS(build_cycle_k1(geo, ell), PreconditionError);
        continue;
      }
      const auto cert = build_cycle_k1(geo, ell);
      CHECK(cert.vertices.size() == length);
      CHECK(cert.meta.ell == ell);
      CHECK(verify_certificate(cert).ok());
    }
    CHECK_THROWS_AS(build_cycle_k1(geo, 0), PreconditionError);
    CHECK_THROWS_AS(build_cycle_k1(geo, table.s()), PreconditionError);
  }
}

TEST_CASE("base path meets every class once with the pinned ends") {
  const World w(3, 1);
  const auto plan = w.builder.find_class_path(5);
  const std::uint32_t e = w.classes.class_count();
  REQUIRE(plan.chosen.size() == 2 * e);
  CHECK(plan.chosen.front() == w.builder.first_plane());
  CHECK(plan.chosen[1] == w.builder.first_line());

  std::set<std::uint32_t> planes, lines;
  for (std::size_t i = 0; i < plan.chosen.size(); ++i) {
    const auto id = w.classes.class_of(plan.chosen[i]);
    (i % 2 == 0 ? planes : lines).insert(id);
  }
  CHECK(planes.size() == e);
  CHECK(lines.size() == e);
  CHECK_FALSE(first_broken_edge(plan.chosen).has_value());
  CHECK(w.classes.class_of(plan.chosen[2 * e - 2]) == w.classes.class_of(w.builder.last_plane_rep()));
  CHECK(w.classes.class_of(plan.chosen.back()) == w.classes.class_of(w.builder.last_line_rep()));
  // The last line is alpha^{ell+1} <0,1> and sits inside the last plane.
  CHECK(plan.chosen.back() == w.geo.shift(w.builder.last_line_rep(), plan.ell + 1));
  CHECK(contains(plan.chosen[2 * e - 2], plan.chosen.back()));
  CHECK(plan.g == std::gcd(plan.ell, w.geo.s()));
}

TEST_CASE("explicit class orders") {
  const World w(2, 1);
  const auto plan = w.builder.find_class_path(0);
  const auto again = w.builder.find_class_path(999, plan.orders);
  CHECK(again.chosen == plan.chosen);

  auto broken = plan.orders;
  std::swap(broken.planes.front(), broken.planes.back());
  CHECK_THROWS_AS(w.builder.find_class_path(0, broken), PreconditionError);
}

TEST_CASE("seeds 0..35 cover all 36 orderings at q = 2") {
  const World w(2, 1);
  std::set<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> seen;
  for (std::uint64_t seed = 0; seed < 36; ++seed) {
    const auto plan = w.builder.find_class_path(seed);
    seen.emplace(plan.orders.planes, plan.orders.lines);
  }
  CHECK(seen.size() == 36);
  CHECK(w.builder.find_class_path(36).orders.planes == w.builder.find_class_path(0).orders.planes);
}

TEST_CASE("same seed, same bytes") {
  const World w(2, 1);
  for (std::uint64_t seed : {0u, 1u, 17u}) {
    const auto a = serialize_certificate(w.builder.build(seed));
    const auto b = serialize_certificate(World(2, 1).builder.build(seed));
    CHECK(a == b);
  }
}

TEST_CASE("every ordering at q = 2 yields a verified cycle") {
  const World w(2, 1);
  const auto base = w.builder.find_class_path(0).orders;
  auto planes = base.planes, lines = base.lines;
  std::sort(planes.begin() + 1, planes.end() - 1);
  std::sort(lines.begin() + 1, lines.end() - 1);
  std::size_t built = 0;
  do {
    auto l = lines;
    do {
      const auto plan = w.builder.find_class_path(0, ClassOrders{planes, l});
      const auto cert =
          plan.ell == 0 ? w.builder.build_ell0(plan) : w.builder.close_or_flip(plan, w.builder.assemble_pi(plan));
      REQUIRE(verify_certificate(cert).ok());
      ++built;
    } while (std::next_permutation(l.begin() + 1, l.end() - 1));
  } while (std::next_permutation(planes.begin() + 1, planes.end() - 1));
  CHECK(built == 36);
}

TEST_CASE("natural g > 1 at q = 3") {
  const World w(3, 1);
  const auto cert = w.builder.build(17);
  CHECK(cert.meta.g == 11);
  CHECK(cert.meta.flips == 10);
  CHECK(cert.vertices.size() == 2420);
  CHECK(verify_certificate(cert).ok());
}

TEST_CASE("flip schedule on synthetic paths") {
  const World w(2, 1);
  for (std::uint32_t g : {3u, 5u}) {
    CAPTURE(g);
    const auto pi = t::synthetic_pi(w.geo, g);
    REQUIRE(pi);
    const auto path = t::shifted_blocks(w.geo, *pi, g);
    REQUIRE_FALSE(first_broken_edge(path).has_value());
    const auto out = apply_flip_schedule(w.geo, path, g);
    CHECK(out.flips == g - 1);
    CHECK_FALSE(first_broken_edge(out.vertices).has_value());
    CHECK(as_multiset(out.vertices) == as_multiset(path));
    CHECK(out.vertices.front() == w.geo.shift(w.builder.first_plane(), g - 1));
    CHECK(out.vertices.back() == w.geo.span_pair(g, g + 1));
    CHECK(contains(out.vertices.front(), out.vertices.back()));
  }
  CHECK_THROWS_AS(apply_flip_schedule(w.geo, {}, 4), PreconditionError);

  // A path without the pinned layout is refused.
  const auto pi = t::synthetic_pi(w.geo, 3);
  REQUIRE(pi);
  auto path = t::shifted_blocks(w.geo, *pi, 3);
  std::reverse(path.begin(), path.end());
  CHECK_THROWS_AS(apply_flip_schedule(w.geo, path, 3), ConstructionFailure);
}

TEST_CASE("broken edges are located") {
  const World w(2, 1);
  std::vector<Subspace> path{w.builder.first_plane(), w.builder.first_line(), w.geo.span_pair(3, 9)};
  CHECK(first_broken_edge(path) == std::optional<std::size_t>{1});
  path.pop_back();
  CHECK_FALSE(first_broken_edge(path).has_value());
}
