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

// Cycle certificates and their JSON form:
//
//   {"q":..,"n":..,"k":..,
//    "field":{"p":..,"m":..,"n":..,"poly":[ascending ints]},
//    "meta":{"seed":..,"ell":..,"g":..,"flips":..},
//    "vertices":[{"dim":..,"points":[ascending residues]}, ...],
//    "verdict":"HAMILTONIAN_CYCLE"}
//
// Keys are emitted in exactly this order and without whitespace, so equal
// certificates serialize to identical bytes.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qmiddle/field.hpp"
#include "qmiddle/geometry.hpp"

namespace qmiddle {

enum class Verdict { kHamiltonianCycle, kHamiltonianPath };

std::string to_string(Verdict v);

struct FieldDescriptor {
  std::uint32_t p = 0;
  std::uint32_t m = 0;
  std::uint32_t n = 0;
  /// Top-level modulus over GF(p^m); GF(p^m) itself always uses the
  /// deterministic smallest primitive polynomial.
  Poly poly;

  static FieldDescriptor of(const FieldTable& table);
  FieldTable build_table() const;

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

struct CertificateMeta {
  std::uint64_t seed = 0;
  std::uint64_t ell = 0;
  std::uint64_t g = 1;
  std::uint64_t flips = 0;

  friend bool operator==(const CertificateMeta&, const CertificateMeta&) = default;
};

struct CycleCertificate {
  std::uint32_t q = 0;
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  FieldDescriptor field;
  CertificateMeta meta;
  std::vector<Subspace> vertices;
  Verdict verdict = Verdict::kHamiltonianCycle;

  friend bool operator==(const CycleCertificate&, const CycleCertificate&) = default;
};

std::string serialize_certificate(const CycleCertificate& cert);

/// Throws ParseError on malformed JSON or schema violations.
CycleCertificate parse_certificate(const std::string& text);

void write_certificate(const CycleCertificate& cert, const std::filesystem::path& path);

/// Throws ParseError if the file cannot be read or parsed.
CycleCertificate read_certificate(const std::filesystem::path& path);

}  // namespace qmiddle
