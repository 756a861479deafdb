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

#include "qmiddle/certificate.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "qmiddle/errors.hpp"

namespace qmiddle {

namespace {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

const json& member(const json& obj, const char* key) {
  if (!obj.is_object()) throw ParseError(std::string("expected an object holding '") + key + "'");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing key '") + key + "'");
  return *it;
}

std::uint64_t as_uint(const json& v, const char* what) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ParseError(std::string("'") + what + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::uint32_t as_u32(const json& v, const char* what) {
  const auto x = as_uint(v, what);
  if (x > std::numeric_limits<std::uint32_t>::max()) throw ParseError(std::string("'") + what + "' out of range");
  return static_cast<std::uint32_t>(x);
}

std::vector<std::uint32_t> as_u32_list(const json& v, const char* what) {
  if (!v.is_array()) throw ParseError(std::string("'") + what + "' must be an array");
  std::vector<std::uint32_t> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(as_u32(x, what));
  return out;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kHamiltonianCycle:
      return "HAMILTONIAN_CYCLE";
    case Verdict::kHamiltonianPath:
      return "HAMILTONIAN_PATH";
  }
  return "UNKNOWN";
}

FieldDescriptor FieldDescriptor::of(const FieldTable& table) {
  return FieldDescriptor{table.p(), table.m(), table.n(), table.modulus()};
}

FieldTable FieldDescriptor::build_table() const { return FieldTable::build(p, m, n, poly); }

std::string serialize_certificate(const CycleCertificate& cert) {
  ordered_json j;
  j["q"] = cert.q;
  j["n"] = cert.n;
  j["k"] = cert.k;
  j["field"] = ordered_json{{"p", cert.field.p}, {"m", cert.field.m}, {"n", cert.field.n}, {"poly", cert.field.poly}};
  j["meta"] = ordered_json{
      {"seed", cert.meta.seed}, {"ell", cert.meta.ell}, {"g", cert.meta.g}, {"flips", cert.meta.flips}};
  auto vertices = ordered_json::array();
  for (const auto& v : cert.vertices) vertices.push_back(ordered_json{{"dim", v.dim}, {"points", v.points}});
  j["vertices"] = std::move(vertices);
  j["verdict"] = to_string(cert.verdict);
  return j.dump();
}

CycleCertificate parse_certificate(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw ParseError(std::string("malformed JSON: ") + ex.what());
  }

  CycleCertificate cert;
  cert.q = as_u32(member(j, "q"), "q");
  cert.n = as_u32(member(j, "n"), "n");
  cert.k = as_u32(member(j, "k"), "k");

  const auto& field = member(j, "field");
  cert.field.p = as_u32(member(field, "p"), "field.p");
  cert.field.m = as_u32(member(field, "m"), "field.m");
  cert.field.n = as_u32(member(field, "n"), "field.n");
  cert.field.poly = as_u32_list(member(field, "poly"), "field.poly");

  const auto& meta = member(j, "meta");
  cert.meta.seed = as_uint(member(meta, "seed"), "meta.seed");
  cert.meta.ell = as_uint(member(meta, "ell"), "meta.ell");
  cert.meta.g = as_uint(member(meta, "g"), "meta.g");
  cert.meta.flips = as_uint(member(meta, "flips"), "meta.flips");

  const auto& vertices = member(j, "vertices");
  if (!vertices.is_array()) throw ParseError("'vertices' must be an array");
  cert.vertices.reserve(vertices.size());
  for (const auto& v : vertices) {
    cert.vertices.push_back(Subspace{as_u32(member(v, "dim"), "dim"), as_u32_list(member(v, "points"), "points")});
  }

  const auto& verdict = member(j, "verdict");
  if (!verdict.is_string()) throw ParseError("'verdict' must be a string");
  const auto name = verdict.get<std::string>();
  if (name == "HAMILTONIAN_CYCLE") {
    cert.verdict = Verdict::kHamiltonianCycle;
  } else if (name == "HAMILTONIAN_PATH") {
    cert.verdict = Verdict::kHamiltonianPath;
  } else {
    throw ParseError("unknown verdict '" + name + "'");
  }
  return cert;
}

void write_certificate(const CycleCertificate& cert, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << serialize_certificate(cert) << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

CycleCertificate read_certificate(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_certificate(buf.str());
}

}  // namespace qmiddle
