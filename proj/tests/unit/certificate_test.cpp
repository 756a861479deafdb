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

#include <filesystem>

#include "qmiddle/builder.hpp"
#include "qmiddle/certificate.hpp"
#include "qmiddle/errors.hpp"
#include "qmiddle/field.hpp"
#include "qmiddle/geometry.hpp"

using namespace qmiddle;

namespace {

CycleCertificate small_cert() {
  static const auto table = FieldTable::build(2, 1, 3);
  const Geometry geo(table);
  return build_cycle_k1(geo, 1);
}

}  // namespace

TEST_CASE("serialized form is compact with fixed key order") {
  const auto text = serialize_certificate(small_cert());
  CHECK(text.rfind(R"({"q":2,"n":3,"k":1,"field":{"p":2,"m":1,"n":3,"poly":[1,1,0,1]},)"
                   R"("meta":{"seed":0,"ell":1,"g":1,"flips":0},"vertices":[{"dim":1,"points":[)",
                   0) == 0);
  const std::string tail = R"(,"verdict":"HAMILTONIAN_CYCLE"})";
  CHECK(text.compare(text.size() - tail.size(), tail.size(), tail) == 0);
  CHECK(text.find(' ') == std::string::npos);
}

TEST_CASE("round trip") {
  const auto cert = small_cert();
  CHECK(parse_certificate(serialize_certificate(cert)) == cert);

  const auto path = std::filesystem::temp_directory_path() / "qmiddle_roundtrip.json";
  write_certificate(cert, path);
  CHECK(read_certificate(path) == cert);
  std::filesystem::remove(path);
}

TEST_CASE("descriptor rebuilds the table") {
  const auto table = FieldTable::build(3, 1, 5);
  const auto d = FieldDescriptor::of(table);
  CHECK(d.p == 3);
  CHECK(d.m == 1);
  CHECK(d.n == 5);
  CHECK(d.build_table().modulus() == table.modulus());
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_certificate("{\"q\":2,"), ParseError);
  CHECK_THROWS_AS(parse_certificate("[]"), ParseError);
  CHECK_THROWS_AS(parse_certificate(R"({"q":2})"), ParseError);

  auto text = serialize_certificate(small_cert());
  auto swap_in = [&](const std::string& from, const std::string& to) {
    auto copy = text;
    copy.replace(copy.find(from), from.size(), to);
    return copy;
  };
  CHECK_THROWS_AS(parse_certificate(swap_in("HAMILTONIAN_CYCLE", "EULERIAN")), ParseError);
  CHECK_THROWS_AS(parse_certificate(swap_in("\"q\":2", "\"q\":-2")), ParseError);
  CHECK_THROWS_AS(parse_certificate(swap_in("\"q\":2", "\"q\":\"two\"")), ParseError);
  CHECK_THROWS_AS(parse_certificate(swap_in("\"dim\":1", "\"dim\":1.5")), ParseError);
  CHECK_THROWS_AS(read_certificate("/nonexistent/qmiddle.json"), ParseError);
}
