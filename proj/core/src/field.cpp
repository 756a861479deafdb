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

#include "qmiddle/field.hpp"

#include <cstdlib>
#include <sstream>
#include <utility>

#include "qmiddle/errors.hpp"
#include "qmiddle/numeric.hpp"

namespace qmiddle {

namespace {

constexpr std::uint32_t kMaxBaseOrder = 1024;

std::vector<std::uint32_t> digits(std::uint32_t value, std::uint32_t radix, std::uint32_t count) {
  std::vector<std::uint32_t> out(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    out[i] = value % radix;
    value /= radix;
  }
  return out;
}

std::uint32_t undigits(std::span<const std::uint32_t> ds, std::uint32_t radix) {
  std::uint32_t v = 0;
  for (std::size_t i = ds.size(); i-- > 0;) v = v * radix + ds[i];
  return v;
}

// Residue ring GF(q)[x]/(f) for monic f of degree d; elements have length d.
class QuotientRing {
 public:
  QuotientRing(const BaseField& field, const Poly& f) : field_(field), f_(f), d_(f.size() - 1) {}

  std::vector<std::uint32_t> reduce(std::vector<std::uint32_t> a) const {
    for (std::size_t i = a.size(); i-- > d_;) {
      const std::uint32_t c = a[i];
      if (c == 0) continue;
      for (std::size_t j = 0; j < d_; ++j) {
        a[i - d_ + j] = field_.sub(a[i - d_ + j], field_.mul(c, f_[j]));
      }
      a[i] = 0;
    }
    a.resize(d_, 0);
    return a;
  }

  std::vector<std::uint32_t> mul(const std::vector<std::uint32_t>& a,
                                 const std::vector<std::uint32_t>& b) const {
    std::vector<std::uint32_t> prod(2 * d_, 0);
    for (std::size_t i = 0; i < d_; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < d_; ++j) {
        prod[i + j] = field_.add(prod[i + j], field_.mul(a[i], b[j]));
      }
    }
    return reduce(std::move(prod));
  }

  std::vector<std::uint32_t> pow(std::vector<std::uint32_t> base, std::uint64_t e) const {
    std::vector<std::uint32_t> result(d_, 0);
    result[0] = 1;
    while (e > 0) {
      if (e & 1u) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  std::vector<std::uint32_t> x() const { return reduce({0, 1}); }

  bool is_one(const std::vector<std::uint32_t>& a) const {
    if (a[0] != 1) return false;
    for (std::size_t i = 1; i < d_; ++i) {
      if (a[i] != 0) return false;
    }
    return true;
  }

 private:
  const BaseField& field_;
  const Poly& f_;
  std::size_t d_;
};

}  // namespace

std::string format_poly(const Poly& poly) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i) os << ',';
    os << poly[i];
  }
  os << ']';
  return os.str();
}

BaseField::BaseField(std::uint32_t p, std::uint32_t m, Poly modulus)
    : p_(p), m_(m), q_(static_cast<std::uint32_t>(checked_pow(p, m))), modulus_(std::move(modulus)) {
  add_.resize(std::size_t{q_} * q_);
  mul_.resize(std::size_t{q_} * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  for (std::uint32_t a = 0; a < q_; ++a) {
    const auto da = digits(a, p_, m_);
    std::vector<std::uint32_t> dn(m_);
    for (std::uint32_t i = 0; i < m_; ++i) dn[i] = (p_ - da[i]) % p_;
    neg_[a] = undigits(dn, p_);
    for (std::uint32_t b = 0; b < q_; ++b) {
      const auto db = digits(b, p_, m_);
      std::vector<std::uint32_t> sum(m_);
      for (std::uint32_t i = 0; i < m_; ++i) sum[i] = (da[i] + db[i]) % p_;
      add_[a * q_ + b] = undigits(sum, p_);

      // Schoolbook product over GF(p), then reduction by the monic modulus.
      std::vector<std::uint64_t> prod(2 * m_, 0);
      for (std::uint32_t i = 0; i < m_; ++i) {
        for (std::uint32_t j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      }
      for (std::size_t i = prod.size(); i-- > m_;) {
        const std::uint64_t c = prod[i];
        if (c == 0) continue;
        for (std::uint32_t j = 0; j < m_; ++j) {
          prod[i - m_ + j] = (prod[i - m_ + j] + (p_ - c) * modulus_[j]) % p_;
        }
        prod[i] = 0;
      }
      std::vector<std::uint32_t> low(m_);
      for (std::uint32_t i = 0; i < m_; ++i) low[i] = static_cast<std::uint32_t>(prod[i]);
      mul_[a * q_ + b] = undigits(low, p_);
    }
  }
  for (std::uint32_t a = 1; a < q_; ++a) {
    for (std::uint32_t b = 1; b < q_; ++b) {
      if (mul_[a * q_ + b] == 1) {
        inv_[a] = b;
        break;
      }
    }
  }
}

BaseField BaseField::prime(std::uint32_t p) {
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  if (p > kMaxBaseOrder) throw SizeError("base field order " + std::to_string(p) + " too large");
  // For m = 1 the modulus does not enter the arithmetic, so the tables can be
  // built first and the modulus filled in afterwards.
  BaseField f(p, 1, Poly{0, 1});
  f.modulus_ = find_primitive_polynomial(f, 1);
  return f;
}

BaseField BaseField::build(std::uint32_t p, std::uint32_t m) {
  if (m == 0) throw PreconditionError("extension degree must be at least 1");
  if (checked_pow(p, m) > kMaxBaseOrder) {
    throw SizeError("base field order " + std::to_string(p) + "^" + std::to_string(m) + " too large");
  }
  BaseField gfp = prime(p);
  if (m == 1) return gfp;
  return BaseField(p, m, find_primitive_polynomial(gfp, m));
}

bool is_primitive(const BaseField& field, const Poly& f) {
  if (f.size() < 2 || f.back() != 1) return false;
  const auto degree = static_cast<std::uint32_t>(f.size() - 1);
  const std::uint64_t order = checked_pow(field.q(), degree) - 1;
  QuotientRing ring(field, f);
  const auto x = ring.x();
  if (!ring.is_one(ring.pow(x, order))) return false;
  for (const auto r : prime_factors(order)) {
    if (ring.is_one(ring.pow(x, order / r))) return false;
  }
  return true;
}

Poly find_primitive_polynomial(const BaseField& field, std::uint32_t degree) {
  if (degree == 0) throw PreconditionError("degree must be at least 1");
  const std::uint64_t candidates = checked_pow(field.q(), degree);
  for (std::uint64_t v = 0; v < candidates; ++v) {
    Poly f = digits(static_cast<std::uint32_t>(v), field.q(), degree);
    f.push_back(1);
    if (is_primitive(field, f)) return f;
  }
  throw InvariantViolation("no primitive polynomial of degree " + std::to_string(degree) +
                           " over GF(" + std::to_string(field.q()) + ")");
}

Poly find_primitive_polynomial(std::uint32_t p, std::uint32_t m) {
  return find_primitive_polynomial(BaseField::prime(p), m);
}

std::uint64_t max_field_elements() {
  if (const char* env = std::getenv("QMIDDLE_MAX_FIELD_ELEMENTS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::uint64_t{1} << 17;
}

FieldTable::FieldTable(BaseField base, std::uint32_t n, Poly modulus)
    : base_(std::move(base)), n_(n), modulus_(std::move(modulus)) {
  const std::uint32_t q = base_.q();
  const auto size = static_cast<std::uint32_t>(checked_pow(q, n_));
  order_ = size - 1;
  s_ = order_ / (q - 1);
  exp_.resize(order_);
  log_.assign(size, kZeroLog);

  // alpha * v: shift coefficients up one degree and fold x^n back with the modulus.
  auto times_alpha = [&](std::uint32_t packed) {
    auto c = unpack(packed);
    const std::uint32_t top = c[n_ - 1];
    for (std::uint32_t i = n_ - 1; i > 0; --i) c[i] = c[i - 1];
    c[0] = 0;
    for (std::uint32_t i = 0; i < n_; ++i) c[i] = base_.sub(c[i], base_.mul(top, modulus_[i]));
    return pack(c);
  };

  std::uint32_t v = 1;
  for (std::uint32_t e = 0; e < order_; ++e) {
    if (log_[v] != kZeroLog || v == 0) {
      throw NotPrimitiveError("modulus " + format_poly(modulus_) + " over GF(" + std::to_string(q) +
                              "): alpha has order " + std::to_string(e) + ", expected " +
                              std::to_string(order_));
    }
    exp_[e] = v;
    log_[v] = e;
    v = times_alpha(v);
  }
  if (v != 1) {
    throw NotPrimitiveError("modulus " + format_poly(modulus_) + ": alpha^" + std::to_string(order_) +
                            " != 1");
  }

  zech_.resize(order_);
  for (std::uint32_t d = 0; d < order_; ++d) {
    auto c = unpack(exp_[d]);
    c[0] = base_.add(c[0], 1);
    const std::uint32_t sum = pack(c);
    zech_[d] = sum == 0 ? kZeroLog : log_[sum];
  }
}

FieldTable FieldTable::build(std::uint32_t p, std::uint32_t m, std::uint32_t n,
                             std::optional<Poly> modulus, std::uint64_t max_elements) {
  if (n == 0 || n % 2 == 0) throw PreconditionError("top extension degree must be odd, got " + std::to_string(n));
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  if (m == 0) throw PreconditionError("extension degree must be at least 1");
  const std::uint64_t q = checked_pow(p, m);
  const std::uint64_t elements = checked_pow(q, n);
  if (elements > max_elements) {
    throw SizeError("GF(" + std::to_string(q) + "^" + std::to_string(n) + ") has " +
                    std::to_string(elements) + " elements, above the bound " +
                    std::to_string(max_elements) + " (QMIDDLE_MAX_FIELD_ELEMENTS)");
  }
  BaseField base = BaseField::build(p, m);
  Poly f;
  if (modulus) {
    f = *modulus;
    if (f.size() != n + 1 || f.back() != 1) {
      throw NotPrimitiveError("modulus " + format_poly(f) + " is not monic of degree " + std::to_string(n));
    }
    for (const auto c : f) {
      if (c >= q) throw NotPrimitiveError("modulus coefficient " + std::to_string(c) + " outside GF(" + std::to_string(q) + ")");
    }
    if (!is_primitive(base, f)) {
      // The table walk below reports the actual order of alpha.
      FieldTable probe(std::move(base), n, std::move(f));
      throw NotPrimitiveError("modulus is not primitive");
    }
  } else {
    f = find_primitive_polynomial(base, n);
  }
  return FieldTable(std::move(base), n, std::move(f));
}

std::optional<std::uint32_t> FieldTable::log_packed(std::uint32_t packed) const {
  if (packed >= log_.size() || packed == 0) return std::nullopt;
  return log_[packed];
}

std::uint32_t FieldTable::pack(std::span<const std::uint32_t> coeffs) const { return undigits(coeffs, q()); }

std::vector<std::uint32_t> FieldTable::unpack(std::uint32_t packed) const { return digits(packed, q(), n_); }

std::uint32_t FieldTable::log_sum(std::uint32_t a, std::uint32_t b) const {
  const std::uint32_t d = (b + order_ - a % order_) % order_;
  const std::uint32_t z = zech_[d];
  if (z == kZeroLog) return kZeroLog;
  return static_cast<std::uint32_t>((std::uint64_t{a} + z) % order_);
}

std::uint32_t FieldTable::add_packed(std::uint32_t a, std::uint32_t b) const {
  auto ca = unpack(a);
  const auto cb = unpack(b);
  for (std::uint32_t i = 0; i < n_; ++i) ca[i] = base_.add(ca[i], cb[i]);
  return pack(ca);
}

FieldTable FieldTable::with_zech_fault(std::uint32_t d) const {
  FieldTable copy = *this;
  auto& z = copy.zech_[d % order_];
  z = z == kZeroLog ? 0 : (z + 1) % order_;
  return copy;
}

}  // namespace qmiddle
