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

#include "qmiddle/orbits.hpp"

#include <algorithm>
#include <map>

#include "qmiddle/errors.hpp"
#include "qmiddle/numeric.hpp"

namespace qmiddle {

std::uint32_t orbit_length(const Geometry& geo, const Subspace& x) {
  const std::uint32_t s = geo.s();
  // The stabilizer is a subgroup of Z_s, so its generator divides s.
  for (std::uint32_t d = 1; d < s; ++d) {
    if (s % d == 0 && geo.shift(x, d) == x) return d;
  }
  return s;
}

std::vector<Subspace> orbit(const Geometry& geo, const Subspace& x) {
  const std::uint32_t len = orbit_length(geo, x);
  if (len != geo.s()) {
    throw InvariantViolation("orbit of " + to_string(x) + " has length " + std::to_string(len) +
                             ", expected " + std::to_string(geo.s()));
  }
  std::vector<Subspace> out;
  out.reserve(len);
  for (std::uint32_t j = 0; j < len; ++j) out.push_back(geo.shift(x, j));
  return out;
}

CanonicalForm canonicalize(const Geometry& geo, const Subspace& x) {
  CanonicalForm best;
  bool have = false;
  for (const auto p : x.points) {
    Subspace candidate = geo.shift(x, -static_cast<std::int64_t>(p));
    if (!have || candidate.points < best.rep.points) {
      best.rep = std::move(candidate);
      best.shift = p;
      have = true;
    }
  }
  return best;
}

std::vector<ShiftClass> enumerate_classes(const Geometry& geo, std::uint32_t r) {
  if (geo.n() != 5) throw PreconditionError("shift classes are defined for n = 5 only");
  if (r != 2 && r != 3) throw PreconditionError("shift classes exist for r = 2 and r = 3 only");
  const std::uint32_t s = geo.s();
  const std::uint64_t q = geo.q();

  std::map<std::vector<Residue>, Subspace> reps;
  for (Residue i = 1; i < s; ++i) {
    Subspace gen;
    if (r == 2) {
      gen = geo.span_pair(0, i);
    } else {
      auto plane = geo.span_triple(0, i, (2 * i) % s);
      if (!plane) throw InvariantViolation("points 0, " + std::to_string(i) + ", " + std::to_string(2 * i % s) + " are dependent");
      gen = std::move(*plane);
    }
    auto canon = canonicalize(geo, gen);
    reps.emplace(canon.rep.points, std::move(canon.rep));
  }

  std::vector<ShiftClass> out;
  for (auto& [key, rep] : reps) {
    const std::uint32_t size = orbit_length(geo, rep);
    if (size != s) {
      throw InvariantViolation("class of " + to_string(rep) + " has " + std::to_string(size) + " members, expected " +
                               std::to_string(s));
    }
    out.push_back(ShiftClass{r, std::move(rep), static_cast<std::uint32_t>(out.size()), size});
  }
  if (out.size() != q * q + 1) {
    throw InvariantViolation("found " + std::to_string(out.size()) + " classes of " + std::to_string(r) +
                             "-subspaces, expected " + std::to_string(q * q + 1));
  }
  if (std::uint64_t{out.size()} * s != gaussian_coefficient(q, 5, r)) {
    throw InvariantViolation("shift classes do not cover the Grassmannian");
  }
  return out;
}

ClassTable::ClassTable(const Geometry& geo)
    : geo_(&geo), lines_(enumerate_classes(geo, 2)), planes_(enumerate_classes(geo, 3)) {
  for (const auto& c : lines_) line_ids_.emplace(c.rep, c.id);
  for (const auto& c : planes_) plane_ids_.emplace(c.rep, c.id);

  const std::uint32_t q = geo.q();
  const auto e = class_count();
  special_.assign(e, 0);
  dual_.assign(e, e);
  for (const auto& plane : planes_) {
    const auto profile = incidence_profile(plane.rep);
    const auto heavy = static_cast<std::uint32_t>(std::find(profile.begin(), profile.end(), q + 1) - profile.begin());
    if (dual_[heavy] != e) {
      throw InvariantViolation("line class " + std::to_string(heavy) + " is special for two plane classes");
    }
    special_[plane.id] = heavy;
    dual_[heavy] = plane.id;
  }

  for (const auto& line : lines_) {
    std::vector<std::uint32_t> count(e, 0);
    for (const auto& z : geo.superspaces(line.rep)) ++count[class_of(z)];
    for (std::uint32_t id = 0; id < e; ++id) {
      const std::uint32_t want = id == dual_[line.id] ? q + 1 : 1;
      if (count[id] != want) {
        throw InvariantViolation("line " + to_string(line.rep) + " lies in " + std::to_string(count[id]) +
                                 " planes of class " + std::to_string(id) + ", expected " + std::to_string(want));
      }
    }
  }
}

const std::vector<ShiftClass>& ClassTable::classes(std::uint32_t r) const {
  if (r == 2) return lines_;
  if (r == 3) return planes_;
  throw PreconditionError("no shift classes for dimension " + std::to_string(r));
}

ClassTable::Location ClassTable::locate(const Subspace& x) const {
  const auto canon = canonicalize(*geo_, x);
  const auto& ids = x.dim == 2 ? line_ids_ : plane_ids_;
  if (x.dim != 2 && x.dim != 3) throw PreconditionError("no shift classes for dimension " + std::to_string(x.dim));
  const auto it = ids.find(canon.rep);
  if (it == ids.end()) throw InvariantViolation(to_string(x) + " belongs to no known class");
  return Location{it->second, canon.shift};
}

std::vector<std::uint32_t> ClassTable::incidence_profile(const Subspace& z) const {
  if (z.dim != 3) throw PreconditionError("incidence profile needs a plane");
  const std::uint32_t q = geo_->q();
  std::vector<std::uint32_t> count(class_count(), 0);
  for (const auto& line : geo_->hyperplanes_of(z)) ++count[class_of(line)];
  const auto heavy = std::count(count.begin(), count.end(), q + 1);
  const auto light = std::count(count.begin(), count.end(), 1u);
  if (heavy != 1 || light != static_cast<std::ptrdiff_t>(q) * q) {
    throw InvariantViolation(to_string(z) + " has an incidence profile other than (q+1, 1, ..., 1)");
  }
  return count;
}

}  // namespace qmiddle
