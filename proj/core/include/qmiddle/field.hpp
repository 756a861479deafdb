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

// Two-level field tower GF(p) -> GF(q) -> GF(q^n).
//
// GF(q) elements are encoded as integers whose base-p digits are the
// coefficients of their polynomial representative (for m = 1 this is just the
// residue mod p). GF(q^n) elements are coefficient vectors over GF(q) packed
// into one integer with base-q digits; the discrete logarithm with respect to
// the root alpha of the top modulus is the canonical internal form.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qmiddle {

/// Polynomial coefficients in ascending degree order.
using Poly = std::vector<std::uint32_t>;

std::string format_poly(const Poly& poly);

/// Arithmetic in GF(q), q = p^m, through q x q lookup tables.
class BaseField {
 public:
  /// GF(p) itself; the modulus is the smallest primitive linear polynomial.
  static BaseField prime(std::uint32_t p);

  /// GF(p^m) over the lexicographically smallest primitive polynomial.
  static BaseField build(std::uint32_t p, std::uint32_t m);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t m() const noexcept { return m_; }
  std::uint32_t q() const noexcept { return q_; }
  const Poly& modulus() const noexcept { return modulus_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * q_ + b]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * q_ + b]; }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  /// Multiplicative inverse; a must be nonzero.
  std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }

 private:
  BaseField(std::uint32_t p, std::uint32_t m, Poly modulus);

  std::uint32_t p_;
  std::uint32_t m_;
  std::uint32_t q_;
  Poly modulus_;
  std::vector<std::uint32_t> add_;
  std::vector<std::uint32_t> mul_;
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint32_t> inv_;
};

/// True iff the monic polynomial `f` has x of multiplicative order q^deg - 1
/// modulo f, i.e. f is primitive over `field`.
bool is_primitive(const BaseField& field, const Poly& f);

/// Lexicographically smallest monic primitive polynomial of `degree` over
/// `field`. Candidates x^d + c_{d-1}x^{d-1} + ... + c_0 are ordered by the
/// integer sum c_i q^i, i.e. the highest free coefficient is most significant.
Poly find_primitive_polynomial(const BaseField& field, std::uint32_t degree);

/// Same search over the prime field GF(p).
Poly find_primitive_polynomial(std::uint32_t p, std::uint32_t m);

/// Upper bound on q^n accepted by FieldTable::build. Reads
/// QMIDDLE_MAX_FIELD_ELEMENTS when set, otherwise 2^17 (k = 2 up to q = 9;
/// a q = 9 cycle already takes about 2 GB).
std::uint64_t max_field_elements();

/// exp/log/Zech tables of GF(q^n) with respect to a primitive element alpha.
/// Immutable after construction.
class FieldTable {
 public:
  /// Log value standing for the zero element.
  static constexpr std::uint32_t kZeroLog = 0xFFFFFFFFu;

  /// Builds GF(q^n), q = p^m. `modulus` overrides the deterministic choice of
  /// the degree-n primitive polynomial over GF(q); it is rejected with
  /// NotPrimitiveError if alpha does not have order q^n - 1.
  static FieldTable build(std::uint32_t p, std::uint32_t m, std::uint32_t n,
                          std::optional<Poly> modulus = std::nullopt,
                          std::uint64_t max_elements = max_field_elements());

  std::uint32_t p() const noexcept { return base_.p(); }
  std::uint32_t m() const noexcept { return base_.m(); }
  std::uint32_t q() const noexcept { return base_.q(); }
  std::uint32_t n() const noexcept { return n_; }
  /// q^n - 1, the order of alpha.
  std::uint32_t order() const noexcept { return order_; }
  /// (q^n - 1) / (q - 1), the number of projective points.
  std::uint32_t s() const noexcept { return s_; }
  const Poly& modulus() const noexcept { return modulus_; }
  const BaseField& base() const noexcept { return base_; }

  /// Packed coefficient vector of alpha^e, e taken mod order().
  std::uint32_t exp_packed(std::uint64_t e) const { return exp_[e % order_]; }
  std::vector<std::uint32_t> exp_vector(std::uint64_t e) const { return unpack(exp_packed(e)); }

  /// Discrete log of a packed vector; nullopt for the zero vector.
  std::optional<std::uint32_t> log_packed(std::uint32_t packed) const;

  std::uint32_t pack(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> unpack(std::uint32_t packed) const;

  /// log(alpha^a + alpha^b), or kZeroLog when the sum vanishes.
  std::uint32_t log_sum(std::uint32_t a, std::uint32_t b) const;

  /// Digit-wise vector addition of packed elements.
  std::uint32_t add_packed(std::uint32_t a, std::uint32_t b) const;

  /// Copy whose Zech entry for difference `d` is deliberately wrong.
  /// Only meant for fault-injection tests of the checkers.
  FieldTable with_zech_fault(std::uint32_t d) const;

 private:
  FieldTable(BaseField base, std::uint32_t n, Poly modulus);

  BaseField base_;
  std::uint32_t n_;
  std::uint32_t order_;
  std::uint32_t s_;
  Poly modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
};

}  // namespace qmiddle
