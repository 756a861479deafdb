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

#include "qmiddle/builder.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include "qmiddle/errors.hpp"
#include "qmiddle/numeric.hpp"

namespace qmiddle {

namespace {

constexpr int kMaxRestarts = 64;

std::string describe(const ClassOrders& orders) {
  std::ostringstream os;
  os << "planes [";
  for (std::size_t i = 0; i < orders.planes.size(); ++i) os << (i ? "," : "") << orders.planes[i];
  os << "] lines [";
  for (std::size_t i = 0; i < orders.lines.size(); ++i) os << (i ? "," : "") << orders.lines[i];
  os << ']';
  return os.str();
}

bool is_permutation_of_ids(const std::vector<std::uint32_t>& ids, std::uint32_t count) {
  if (ids.size() != count) return false;
  std::vector<bool> seen(count, false);
  for (const auto id : ids) {
    if (id >= count || seen[id]) return false;
    seen[id] = true;
  }
  return true;
}

void require_distinct(std::span<const Subspace> vertices) {
  std::unordered_set<Subspace, SubspaceHash> seen;
  seen.reserve(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!seen.insert(vertices[i]).second) {
      throw InvariantViolation("vertex " + to_string(vertices[i]) + " repeats at index " + std::to_string(i));
    }
  }
}

void require_path(std::span<const Subspace> vertices) {
  if (const auto bad = first_broken_edge(vertices)) {
    throw InvariantViolation("no edge between vertices " + std::to_string(*bad) + " and " + std::to_string(*bad + 1));
  }
}

// Ranks of the plane and line permutations for the first ordering tried with
// `seed`. Distinct seeds give distinct pairs until the pairs run out: an
// affine bijection of Z_{F^2} when F^2 = ((e-2)!)^2 fits in 64 bits, the
// splitmix64 bijection otherwise.
std::pair<std::uint64_t, std::uint64_t> ordering_ranks(std::uint64_t seed, std::uint32_t middle) {
  __extension__ typedef unsigned __int128 Wide;
  const auto f = factorial(middle);
  std::uint64_t total = 0;
  if (f && !__builtin_mul_overflow(*f, *f, &total)) {
    std::uint64_t a = (0x9E3779B97F4A7C15ull % total) | 1;
    while (std::gcd(a, total) != 1) ++a;
    const auto idx = static_cast<std::uint64_t>(Wide{a} * (seed % total) % total);
    return {idx / *f, idx % *f};
  }
  const std::uint64_t x = splitmix64(seed);
  if (f) return {x % *f, x / *f};
  return {x, splitmix64(x)};
}

bool adjacent(const Subspace& a, const Subspace& b) {
  if (a.dim == b.dim + 1) return contains(a, b);
  if (b.dim == a.dim + 1) return contains(b, a);
  return false;
}

}  // namespace

std::optional<std::size_t> first_broken_edge(std::span<const Subspace> path) {
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!adjacent(path[i], path[i + 1])) return i;
  }
  return std::nullopt;
}

FlipOutcome apply_flip_schedule(const Geometry& geo, std::vector<Subspace> path, std::uint32_t g) {
  if (g % 2 == 0) throw PreconditionError("flip schedule needs odd g, got " + std::to_string(g));
  FlipOutcome out{std::move(path), 0};
  if (g == 1) return out;

  const Subspace head = *geo.span_triple(0, 1, 2);
  const Subspace tail_plane = *geo.span_triple(1, 2, 4);
  const Subspace tail_line = geo.span_pair(1, 2);
  auto& p = out.vertices;

  auto find_pinned = [&](const Subspace& target, std::uint32_t step, const char* role) {
    const auto it = std::find(p.begin(), p.end(), target);
    if (it == p.end()) {
      throw ConstructionFailure("flip step " + std::to_string(step) + ": pinned " + role + " " + to_string(target) +
                                " is absent");
    }
    return static_cast<std::size_t>(it - p.begin());
  };
  auto reverse_prefix = [&](std::size_t last, std::uint32_t step) {
    std::reverse(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    ++out.flips;
    if (const auto bad = first_broken_edge(p)) {
      throw ConstructionFailure("flip step " + std::to_string(step) + " (reversal " + std::to_string(out.flips) +
                                ") broke the path at index " + std::to_string(*bad));
    }
  };

  for (std::uint32_t step = 1; step <= (g - 1) / 2; ++step) {
    const std::int64_t base = 2 * static_cast<std::int64_t>(step) - 2;
    if (p.front() != geo.shift(head, base)) {
      throw ConstructionFailure("flip step " + std::to_string(step) + ": path starts at " + to_string(p.front()) +
                                ", expected " + to_string(geo.shift(head, base)));
    }
    const std::size_t a = find_pinned(geo.shift(tail_plane, base), step, "tail plane");
    if (a + 1 >= p.size() || p[a + 1] != geo.shift(tail_line, base)) {
      throw ConstructionFailure("flip step " + std::to_string(step) + ": tail plane is not followed by " +
                                to_string(geo.shift(tail_line, base)));
    }
    reverse_prefix(a, step);

    const std::size_t b = find_pinned(geo.shift(head, base + 2), step, "head plane");
    reverse_prefix(b, step);
  }

  const std::int64_t last = static_cast<std::int64_t>(g) - 1;
  if (p.front() != geo.shift(head, last) || p.back() != geo.shift(tail_line, last)) {
    throw ConstructionFailure("flip schedule ended at " + to_string(p.front()) + " ... " + to_string(p.back()));
  }
  return out;
}

CycleBuilder::CycleBuilder(const ClassTable& classes)
    : classes_(&classes),
      geo_(&classes.geometry()),
      first_plane_(*geo_->span_triple(0, 1, 2)),
      first_line_(geo_->span_pair(0, 2)),
      last_plane_(*geo_->span_triple(0, 1, 3)),
      last_line_(geo_->span_pair(0, 1)) {}

std::optional<PathPlan> CycleBuilder::search(const ClassOrders& orders, std::uint64_t& backtracks) const {
  struct Option {
    Subspace u;
    Subspace v;
    std::uint32_t ell = 0;
  };
  struct Level {
    std::vector<Option> options;
    std::size_t next = 0;
  };

  const Geometry& geo = *geo_;
  const std::uint32_t e = classes_->class_count();
  const std::uint32_t s = geo.s();
  const Residue last_plane_shift = classes_->locate(last_plane_).shift;

  auto by_shift = [&](std::vector<Subspace> xs) {
    std::vector<std::pair<Residue, Subspace>> keyed;
    for (auto& x : xs) keyed.emplace_back(classes_->locate(x).shift, std::move(x));
    std::sort(keyed.begin(), keyed.end());
    std::vector<Subspace> out;
    for (auto& [shift, x] : keyed) out.push_back(std::move(x));
    return out;
  };
  auto members_containing = [&](const Subspace& v, std::uint32_t plane_class) {
    std::vector<Subspace> hits;
    for (auto& z : geo.superspaces(v)) {
      if (classes_->class_of(z) == plane_class) hits.push_back(std::move(z));
    }
    return by_shift(std::move(hits));
  };
  auto members_inside = [&](const Subspace& u, std::uint32_t line_class) {
    std::vector<Subspace> hits;
    for (auto& l : geo.hyperplanes_of(u)) {
      if (classes_->class_of(l) == line_class) hits.push_back(std::move(l));
    }
    return by_shift(std::move(hits));
  };

  auto expand = [&](std::size_t index, const Subspace& prev_line) {
    Level level;
    if (index + 1 < e) {
      for (auto& u : members_containing(prev_line, orders.planes[index])) {
        for (auto& v : members_inside(u, orders.lines[index])) level.options.push_back(Option{u, std::move(v), 0});
      }
      return level;
    }
    // U_e = alpha^{ell+1} <0,1,3> fixes ell; V_e = alpha^{ell+1} <0,1>.
    for (auto& u : members_containing(prev_line, orders.planes[index])) {
      const Residue j = classes_->locate(u).shift;
      const std::uint32_t to_u = (j + s - last_plane_shift) % s;
      const std::uint32_t ell = (to_u + s - 1) % s;
      Subspace v = geo.shift(last_line_, to_u);
      if (!contains(u, v)) throw InvariantViolation("closing line " + to_string(v) + " is not inside " + to_string(u));
      level.options.push_back(Option{std::move(u), std::move(v), ell});
    }
    return level;
  };

  std::vector<Level> levels;
  levels.push_back(Level{{Option{first_plane_, first_line_, 0}}, 0});
  while (!levels.empty()) {
    Level& top = levels.back();
    if (top.next == top.options.size()) {
      levels.pop_back();
      ++backtracks;
      continue;
    }
    const std::size_t depth = levels.size();
    Subspace line = top.options[top.next++].v;
    if (depth == e) {
      PathPlan plan;
      plan.orders = orders;
      for (const auto& level : levels) {
        const auto& opt = level.options[level.next - 1];
        plan.chosen.push_back(opt.u);
        plan.chosen.push_back(opt.v);
      }
      plan.ell = levels.back().options[levels.back().next - 1].ell;
      plan.g = std::gcd(plan.ell, s);
      return plan;
    }
    levels.push_back(expand(depth, line));
  }
  return std::nullopt;
}

PathPlan CycleBuilder::find_class_path(std::uint64_t seed, const std::optional<ClassOrders>& orders) const {
  const std::uint32_t e = classes_->class_count();
  const std::uint32_t plane_first = classes_->class_of(first_plane_);
  const std::uint32_t plane_last = classes_->class_of(last_plane_);
  const std::uint32_t line_first = classes_->class_of(first_line_);
  const std::uint32_t line_last = classes_->class_of(last_line_);
  if (plane_first == plane_last || line_first == line_last) {
    throw InvariantViolation("pinned endpoint classes coincide");
  }
  // V_e is the only member of its class inside U_e only if that class is not
  // special for U_e's class.
  if (classes_->special_partner(plane_last) == line_last) {
    throw InvariantViolation("closing line class is special for the closing plane class");
  }

  std::uint64_t backtracks = 0;
  if (orders) {
    if (!is_permutation_of_ids(orders->planes, e) || !is_permutation_of_ids(orders->lines, e) ||
        orders->planes.front() != plane_first || orders->planes.back() != plane_last ||
        orders->lines.front() != line_first || orders->lines.back() != line_last) {
      throw PreconditionError("class orders must be permutations with the pinned classes at both ends");
    }
    auto plan = search(*orders, backtracks);
    if (!plan) throw ConstructionFailure("no base path for orders " + describe(*orders));
    plan->seed = seed;
    plan->backtracks = backtracks;
    return *plan;
  }

  ClassOrders base;
  base.planes.push_back(plane_first);
  base.lines.push_back(line_first);
  for (std::uint32_t id = 0; id < e; ++id) {
    if (id != plane_first && id != plane_last) base.planes.push_back(id);
    if (id != line_first && id != line_last) base.lines.push_back(id);
  }
  base.planes.push_back(plane_last);
  base.lines.push_back(line_last);

  // First ordering from the seed directly; reshuffles after that.
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kMaxRestarts; ++attempt) {
    ClassOrders trial = base;
    const auto middle_planes = std::span(trial.planes).subspan(1, e - 2);
    const auto middle_lines = std::span(trial.lines).subspan(1, e - 2);
    if (attempt == 0) {
      const auto [plane_rank, line_rank] = ordering_ranks(seed, e - 2);
      unrank_permutation(middle_planes, plane_rank);
      unrank_permutation(middle_lines, line_rank);
    } else {
      portable_shuffle(middle_planes, rng);
      portable_shuffle(middle_lines, rng);
    }
    if (auto plan = search(trial, backtracks)) {
      plan->seed = seed;
      plan->backtracks = backtracks;
      return *plan;
    }
  }
  throw ConstructionFailure("no base path after " + std::to_string(kMaxRestarts) + " orderings (seed " +
                            std::to_string(seed) + ")");
}

std::vector<Subspace> CycleBuilder::assemble_pi(const PathPlan& plan) const {
  if (plan.ell == 0) throw PreconditionError("assemble_pi needs ell != 0");
  const std::uint32_t s = geo_->s();
  const std::uint32_t copies = s / plan.g;
  std::vector<Subspace> pi;
  pi.reserve(std::size_t{copies} * plan.chosen.size());
  for (std::uint32_t c = 0; c < copies; ++c) {
    const std::uint64_t offset = std::uint64_t{c} * plan.ell % s;
    for (const auto& x : plan.chosen) pi.push_back(geo_->shift(x, static_cast<std::int64_t>(offset)));
  }
  require_distinct(pi);
  require_path(pi);
  return pi;
}

CycleCertificate CycleBuilder::make_certificate(const PathPlan& plan, std::vector<Subspace> vertices,
                                                std::uint32_t flips) const {
  const std::uint64_t expected = 2 * gaussian_coefficient(geo_->q(), 5, 2);
  if (vertices.size() != expected) {
    throw InvariantViolation("cycle has " + std::to_string(vertices.size()) + " vertices, expected " +
                             std::to_string(expected));
  }
  if (!adjacent(vertices.back(), vertices.front())) throw InvariantViolation("closing edge missing");

  CycleCertificate cert;
  cert.q = geo_->q();
  cert.n = 5;
  cert.k = 2;
  cert.field = FieldDescriptor::of(geo_->table());
  cert.meta = CertificateMeta{plan.seed, plan.ell, plan.ell == 0 ? 1u : plan.g, flips};
  cert.vertices = std::move(vertices);
  cert.verdict = Verdict::kHamiltonianCycle;
  return cert;
}

CycleCertificate CycleBuilder::close_or_flip(const PathPlan& plan, std::vector<Subspace> pi) const {
  if (plan.g == 1) return make_certificate(plan, std::move(pi), 0);

  std::vector<Subspace> path;
  path.reserve(pi.size() * plan.g);
  for (std::uint32_t j = 0; j < plan.g; ++j) {
    for (const auto& x : pi) path.push_back(geo_->shift(x, j));
  }
  require_distinct(path);
  require_path(path);
  auto flipped = apply_flip_schedule(*geo_, std::move(path), plan.g);
  return make_certificate(plan, std::move(flipped.vertices), flipped.flips);
}

CycleCertificate CycleBuilder::build_ell0(const PathPlan& plan) const {
  if (plan.ell != 0) throw PreconditionError("build_ell0 needs ell = 0");
  if (!contains(geo_->shift(first_plane_, 1), plan.chosen.back())) {
    throw InvariantViolation("closing line " + to_string(plan.chosen.back()) + " not inside alpha U_1");
  }
  std::vector<Subspace> cycle;
  cycle.reserve(std::size_t{geo_->s()} * plan.chosen.size());
  for (std::uint32_t c = 0; c < geo_->s(); ++c) {
    for (const auto& x : plan.chosen) cycle.push_back(geo_->shift(x, c));
  }
  require_distinct(cycle);
  require_path(cycle);
  return make_certificate(plan, std::move(cycle), 0);
}

CycleCertificate CycleBuilder::build(std::uint64_t seed) const {
  PathPlan plan;
  try {
    plan = find_class_path(seed);
    if (plan.ell == 0) return build_ell0(plan);
    return close_or_flip(plan, assemble_pi(plan));
  } catch (const ConstructionFailure& ex) {
    throw ConstructionFailure(std::string(ex.what()) + " [seed " + std::to_string(seed) + ", " +
                              describe(plan.orders) + "]");
  } catch (const InvariantViolation& ex) {
    throw ConstructionFailure(std::string("invariant violated: ") + ex.what() + " [seed " + std::to_string(seed) +
                              ", " + describe(plan.orders) + "]");
  }
}

CycleCertificate build_cycle_k1(const Geometry& geo, std::uint32_t ell) {
  if (geo.n() != 3) throw PreconditionError("the k = 1 construction needs n = 3");
  const std::uint32_t s = geo.s();
  if (ell < 1 || ell >= s || std::gcd(ell, s) != 1) {
    throw PreconditionError("ell = " + std::to_string(ell) + " must lie in [1, " + std::to_string(s - 1) +
                            "] and be coprime to " + std::to_string(s));
  }
  const Subspace line = geo.span_pair(0, 1);
  std::optional<Residue> start;
  for (const auto j : line.points) {
    if (std::binary_search(line.points.begin(), line.points.end(), (j + ell) % s)) {
      start = j;
      break;
    }
  }
  if (!start) {
    throw InvariantViolation("no two points of " + to_string(line) + " differ by " + std::to_string(ell));
  }

  const Subspace point = geo.point(*start);
  std::vector<Subspace> cycle;
  cycle.reserve(2 * std::size_t{s});
  for (std::uint32_t c = 0; c < s; ++c) {
    const auto offset = static_cast<std::int64_t>(std::uint64_t{c} * ell % s);
    cycle.push_back(geo.shift(point, offset));
    cycle.push_back(geo.shift(line, offset));
  }
  require_distinct(cycle);
  require_path(cycle);
  if (!adjacent(cycle.back(), cycle.front())) throw InvariantViolation("closing edge missing");

  CycleCertificate cert;
  cert.q = geo.q();
  cert.n = 3;
  cert.k = 1;
  cert.field = FieldDescriptor::of(geo.table());
  cert.meta = CertificateMeta{0, ell, 1, 0};
  cert.vertices = std::move(cycle);
  cert.verdict = Verdict::kHamiltonianCycle;
  return cert;
}

}  // namespace qmiddle
