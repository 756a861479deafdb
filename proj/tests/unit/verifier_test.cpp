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
#include <set>

#include "qmiddle/builder.hpp"
#include "qmiddle/field.hpp"
#include "qmiddle/geometry.hpp"
#include "qmiddle/orbits.hpp"
#include "qmiddle/verifier.hpp"

using namespace qmiddle;

namespace {

CycleCertificate q2_cycle() {
  static const auto table = FieldTable::build(2, 1, 5);
  static const Geometry geo(table);
  static const ClassTable classes(geo);
  static const CycleBuilder builder(classes);
  return builder.build(1);
}

std::string witness(const Report& r, const std::string& check) {
  const auto* c = r.find(check);
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->passed);
  return c->witness;
}

}  // namespace

TEST_CASE("echelon oracle ranks") {
  const auto table = FieldTable::build(2, 1, 5);
  const EchelonOracle oracle(table);
  const Geometry geo(table);
  const std::vector<std::uint32_t> one{7};
  CHECK(oracle.rank(one) == 1);
  CHECK(oracle.span_points(one) == one);
  for (std::uint32_t a = 0; a < 31; ++a) {
    for (std::uint32_t b = a + 1; b < 31; ++b) REQUIRE(oracle.rank(geo.span_pair(a, b).points) == 2);
  }
  const auto plane = *geo.span_triple(0, 1, 2);
  CHECK(oracle.rank(plane.points) == 3);
  CHECK(oracle.enumerate_grassmannian(2).size() == 155);
  CHECK(oracle.enumerate_grassmannian(3).size() == 155);
  CHECK_THROWS(oracle.enumerate_grassmannian(0));

  const auto big = FieldTable::build(2, 2, 3);
  CHECK(EchelonOracle(big).enumerate_grassmannian(2).size() == 21);
}

TEST_CASE("valid certificates") {
  const auto cert = q2_cycle();
  const auto report = verify_certificate(cert);
  CHECK(report.ok());
  CHECK(report.summary().find("FAIL") == std::string::npos);
  CHECK(cert.vertices.size() == 310);
}

TEST_CASE("swapped vertices break at the swap") {
  auto cert = q2_cycle();
  std::swap(cert.vertices[40], cert.vertices[41]);
  const auto r = verify_certificate(cert);
  CHECK_FALSE(r.ok());
  CHECK(witness(r, "alternation").find("index 40") != std::string::npos);
}

TEST_CASE("deleted vertex is a count mismatch") {
  auto cert = q2_cycle();
  cert.vertices.erase(cert.vertices.begin() + 100);
  const auto r = verify_certificate(cert);
  CHECK(witness(r, "count").find("309") != std::string::npos);
}

TEST_CASE("duplicated vertex") {
  auto cert = q2_cycle();
  cert.vertices[200] = cert.vertices[198];
  const auto r = verify_certificate(cert);
  CHECK(witness(r, "distinct").find("200") != std::string::npos);
}

TEST_CASE("fake subspaces and headers") {
  auto cert = q2_cycle();
  cert.vertices[3].points.back() = (cert.vertices[3].points.back() + 1) % 31;
  std::sort(cert.vertices[3].points.begin(), cert.vertices[3].points.end());
  CHECK_FALSE(verify_certificate(cert).find("subspaces")->passed);

  auto bad_k = q2_cycle();
  bad_k.k = 3;
  CHECK_FALSE(verify_certificate(bad_k).ok());
  CHECK_FALSE(verify_certificate(bad_k).find("header")->passed);

  auto bad_poly = q2_cycle();
  bad_poly.field.poly = {1, 1, 0, 0, 0, 1};
  CHECK_FALSE(verify_certificate(bad_poly).find("field")->passed);

  auto path = q2_cycle();
  path.verdict = Verdict::kHamiltonianPath;
  std::rotate(path.vertices.begin(), path.vertices.begin() + 1, path.vertices.end());
  CHECK(verify_certificate(path).ok());
}

TEST_CASE("report json") {
  Report r;
  r.checks.push_back({"a", true, ""});
  r.checks.push_back({"b", false, "x \"y\""});
  CHECK(r.to_json() == R"([{"check":"a","status":"pass"},{"check":"b","status":"fail","witness":"x \"y\""}])");
  CHECK(r.summary() == "PASS a\nFAIL b: x \"y\"\n");
}

TEST_CASE("property suite") {
  for (const auto& [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}}) {
    const auto table = FieldTable::build(p, m, 5);
    const auto report = run_property_suite(table, default_suite_options(table.q()));
    CHECK(report.checks.size() == 13);
    CHECK_MESSAGE(report.ok(), report.summary());
    CHECK(run_supplementary_checks(table, default_suite_options(table.q())).ok());
  }
  const auto four = FieldTable::build(2, 2, 5);
  const auto options = default_suite_options(4);
  CHECK(options.mode == SweepMode::kSampled);
  PropertySuiteOptions quick = options;
  quick.samples = 60;
  const auto report = run_property_suite(four, quick);
  CHECK_MESSAGE(report.ok(), report.summary());
}

TEST_CASE("corrupted span table is caught with a plane witness") {
  const auto table = FieldTable::build(2, 1, 5).with_zech_fault(3);
  const auto report = run_property_suite(table, default_suite_options(2));
  CHECK_FALSE(report.ok());
  CHECK(witness(report, "plane_incidence_profile").rfind("dim 3 {", 0) == 0);
  CHECK_FALSE(run_supplementary_checks(table, default_suite_options(2)).ok());
}

TEST_CASE("oracle sweep") {
  const auto sweep = sweep_span_oracle(FieldTable::build(2, 1, 5));
  CHECK(sweep.pairs == 465);
  CHECK(sweep.triples == 4495);
  CHECK(sweep.rank_mismatches == 0);
  CHECK(sweep.point_set_mismatches == 0);
  CHECK(sweep.dependency_mismatches == 0);
  CHECK(sweep.grassmannian_mismatches == 0);

  const auto faulty = sweep_span_oracle(FieldTable::build(2, 1, 5).with_zech_fault(3));
  CHECK(faulty.point_set_mismatches + faulty.dependency_mismatches + faulty.rank_mismatches > 0);
}
