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

#include "qmiddle/geometry.hpp"

#include <algorithm>
#include <sstream>

#include "qmiddle/errors.hpp"
#include "qmiddle/numeric.hpp"

namespace qmiddle {

std::size_t SubspaceHash::operator()(const Subspace& x) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull ^ x.dim;
  for (const auto p : x.points) h = (h ^ p) * 0x100000001b3ull;
  return h;
}

std::string to_string(const Subspace& x) {
  std::ostringstream os;
  os << "dim " << x.dim << " {";
  for (std::size_t i = 0; i < x.points.size(); ++i) {
    if (i) os << ',';
    os << x.points[i];
  }
  os << '}';
  return os.str();
}

std::uint64_t gaussian_coefficient(std::uint64_t q, std::uint32_t n, std::uint32_t r) {
  if (r > n) throw PreconditionError("gaussian coefficient needs r <= n");
  // Pascal-type recurrence [m j] = [m-1 j-1] + q^j [m-1 j]; no division, so
  // every intermediate is itself a Gaussian coefficient and bounded by the result.
  std::vector<std::uint64_t> row(r + 1, 0);
  row[0] = 1;
  for (std::uint32_t m = 1; m <= n; ++m) {
    for (std::uint32_t j = std::min(m, r); j >= 1; --j) {
      const std::uint64_t term = checked_mul(checked_pow(q, j), row[j]);
      std::uint64_t sum = 0;
      if (__builtin_add_overflow(row[j - 1], term, &sum)) {
        throw OverflowError("gaussian coefficient overflows 64 bits");
      }
      row[j] = sum;
    }
  }
  return row[r];
}

bool contains(const Subspace& u, const Subspace& v) {
  return std::includes(u.points.begin(), u.points.end(), v.points.begin(), v.points.end());
}

std::vector<Residue> difference_labels(const Subspace& x, std::uint32_t s) {
  std::vector<Residue> out;
  out.reserve(x.points.size() * x.points.size());
  for (const auto a : x.points) {
    for (const auto b : x.points) {
      if (a != b) out.push_back((b + s - a) % s);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Geometry::Geometry(const FieldTable& table) : table_(&table) {}

std::uint32_t Geometry::points_in(std::uint32_t dim) const {
  return static_cast<std::uint32_t>(projective_size(q(), dim));
}

Residue Geometry::residue(std::int64_t e) const {
  const auto m = static_cast<std::int64_t>(s());
  return static_cast<Residue>(((e % m) + m) % m);
}

Subspace Geometry::point(Residue a) const { return Subspace{1, {residue(a)}}; }

std::optional<Subspace> Geometry::extend(const Subspace& x, Residue c) const {
  c = residue(c);
  if (std::binary_search(x.points.begin(), x.points.end(), c)) return std::nullopt;

  const std::uint32_t scalars = q() - 1;
  Subspace out{x.dim + 1, {}};
  out.points.reserve(x.points.size() * q() + 1);
  out.points.insert(out.points.end(), x.points.begin(), x.points.end());
  out.points.push_back(c);
  // Every point of <X, c> off X and c is alpha^x + beta alpha^c for a point x
  // of X and beta in GF(q)*, where beta = alpha^{j s}.
  for (const auto p : x.points) {
    for (std::uint32_t j = 0; j < scalars; ++j) {
      const std::uint32_t sum = table_->log_sum(p, c + j * s());
      if (sum == FieldTable::kZeroLog) {
        throw InvariantViolation("independent points " + std::to_string(p) + " and " +
                                 std::to_string(c) + " sum to zero");
      }
      out.points.push_back(sum % s());
    }
  }
  std::sort(out.points.begin(), out.points.end());
  out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
  if (out.points.size() != points_in(out.dim)) {
    throw InvariantViolation("span of " + to_string(x) + " and point " + std::to_string(c) + " has " +
                             std::to_string(out.points.size()) + " points, expected " +
                             std::to_string(points_in(out.dim)));
  }
  return out;
}

Subspace Geometry::span_pair(Residue a, Residue b) const {
  auto line = extend(point(a), b);
  if (!line) {
    throw DegenerateSpanError("span of coincident points " + std::to_string(a) + " and " + std::to_string(b));
  }
  return std::move(*line);
}

std::optional<Subspace> Geometry::span_triple(Residue a, Residue b, Residue c) const {
  const Residue ra = residue(a), rb = residue(b), rc = residue(c);
  if (ra == rb || ra == rc || rb == rc) {
    throw DegenerateSpanError("span of repeated points " + std::to_string(a) + ", " + std::to_string(b) +
                              ", " + std::to_string(c));
  }
  return extend(span_pair(ra, rb), rc);
}

Subspace Geometry::shift(const Subspace& x, std::int64_t j) const {
  const Residue offset = residue(j);
  Subspace out{x.dim, x.points};
  for (auto& p : out.points) p = (p + offset) % s();
  std::sort(out.points.begin(), out.points.end());
  return out;
}

void Geometry::descend(std::uint32_t r, const Subspace& current, Residue last,
                       const std::function<void(const Subspace&)>& fn) const {
  if (current.dim == r) {
    fn(current);
    return;
  }
  for (Residue c = last + 1; c < s(); ++c) {
    if (std::binary_search(current.points.begin(), current.points.end(), c)) continue;
    auto next = extend(current, c);
    const bool canonical = std::all_of(next->points.begin(), next->points.end(), [&](Residue p) {
      return p >= c || std::binary_search(current.points.begin(), current.points.end(), p);
    });
    if (canonical) descend(r, *next, c, fn);
  }
}

void Geometry::for_each_subspace(std::uint32_t r, const std::function<void(const Subspace&)>& fn) const {
  if (r == 0 || r > n()) throw PreconditionError("subspace dimension out of range");
  for (Residue g = 0; g < s(); ++g) descend(r, point(g), g, fn);
}

std::vector<Subspace> Geometry::enumerate_grassmannian(std::uint32_t r) const {
  std::vector<Subspace> out;
  for_each_subspace(r, [&](const Subspace& x) { out.push_back(x); });
  return out;
}

std::vector<Subspace> Geometry::hyperplanes_of(const Subspace& u) const {
  std::vector<Subspace> out;
  if (u.dim == 2) {
    for (const auto p : u.points) out.push_back(point(p));
    return out;
  }
  if (u.dim != 3) throw PreconditionError("hyperplanes_of supports dimension 2 and 3 only");
  for (std::size_t i = 0; i < u.points.size(); ++i) {
    for (std::size_t j = i + 1; j < u.points.size(); ++j) {
      out.push_back(span_pair(u.points[i], u.points[j]));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() != points_in(3)) {
    throw InvariantViolation(to_string(u) + " has " + std::to_string(out.size()) + " lines, expected " +
                             std::to_string(points_in(3)));
  }
  return out;
}

std::vector<Subspace> Geometry::superspaces(const Subspace& v) const {
  std::vector<bool> covered(s(), false);
  for (const auto p : v.points) covered[p] = true;
  std::vector<Subspace> out;
  for (Residue c = 0; c < s(); ++c) {
    if (covered[c]) continue;
    auto z = extend(v, c);
    for (const auto p : z->points) covered[p] = true;
    out.push_back(std::move(*z));
  }
  std::sort(out.begin(), out.end());
  const std::uint32_t expected = points_in(n() - v.dim);
  if (out.size() != expected) {
    throw InvariantViolation(to_string(v) + " lies in " + std::to_string(out.size()) +
                             " subspaces of the next dimension, expected " + std::to_string(expected));
  }
  return out;
}

}  // namespace qmiddle
