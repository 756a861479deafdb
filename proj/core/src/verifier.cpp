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

#include "qmiddle/verifier.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "qmiddle/errors.hpp"
#include "qmiddle/numeric.hpp"

namespace qmiddle {

namespace {

std::string join(std::span<const std::uint32_t> xs) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  os << '}';
  return os.str();
}

bool subset_of(const std::vector<std::uint32_t>& small, const std::vector<std::uint32_t>& big) {
  std::size_t j = 0;
  for (const auto x : small) {
    while (j < big.size() && big[j] < x) ++j;
    if (j == big.size() || big[j] != x) return false;
    ++j;
  }
  return true;
}

}  // namespace

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* Report::find(const std::string& check) const {
  for (const auto& c : checks) {
    if (c.check == check) return &c;
  }
  return nullptr;
}

std::string Report::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.check;
    if (!c.passed) os << ": " << c.witness;
    os << '\n';
  }
  return os.str();
}

std::string Report::to_json() const {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json j{{"check", c.check}, {"status", c.passed ? "pass" : "fail"}};
    if (!c.passed) j["witness"] = c.witness;
    arr.push_back(std::move(j));
  }
  return arr.dump();
}

// ---------------------------------------------------------------------------
// EchelonOracle

EchelonOracle::EchelonOracle(const FieldTable& table)
    : table_(&table),
      p_(table.p()),
      m_(table.m()),
      q_(table.q()),
      n_(table.n()),
      base_modulus_(table.base().modulus()) {
  inv_.assign(q_, 0);
  for (std::uint32_t a = 1; a < q_; ++a) {
    for (std::uint32_t b = 1; b < q_; ++b) {
      if (mul(a, b) == 1) {
        inv_[a] = b;
        break;
      }
    }
  }
}

std::uint32_t EchelonOracle::add(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t out = 0, place = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    out += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return out;
}

std::uint32_t EchelonOracle::neg(std::uint32_t a) const {
  std::uint32_t out = 0, place = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    out += ((p_ - a % p_) % p_) * place;
    a /= p_;
    place *= p_;
  }
  return out;
}

std::uint32_t EchelonOracle::mul(std::uint32_t a, std::uint32_t b) const {
  if (m_ == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
  std::vector<std::uint64_t> da(m_), db(m_), prod(2 * m_, 0);
  for (std::uint32_t i = 0; i < m_; ++i) {
    da[i] = a % p_;
    db[i] = b % p_;
    a /= p_;
    b /= p_;
  }
  for (std::uint32_t i = 0; i < m_; ++i) {
    for (std::uint32_t j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  }
  // x^m = -(f_0 + ... + f_{m-1} x^{m-1})
  for (std::size_t i = prod.size(); i-- > m_;) {
    const std::uint64_t c = prod[i];
    for (std::uint32_t j = 0; j < m_; ++j) prod[i - m_ + j] = (prod[i - m_ + j] + (p_ - c) * base_modulus_[j]) % p_;
    prod[i] = 0;
  }
  std::uint32_t out = 0, place = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    out += static_cast<std::uint32_t>(prod[i]) * place;
    place *= p_;
  }
  return out;
}

std::vector<EchelonOracle::Row> EchelonOracle::reduce(std::vector<Row> rows) const {
  std::size_t rank = 0;
  for (std::uint32_t col = 0; col < n_ && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const std::uint32_t scale = inv(rows[rank][col]);
    for (auto& x : rows[rank]) x = mul(x, scale);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const std::uint32_t factor = neg(rows[r][col]);
      for (std::uint32_t c = 0; c < n_; ++c) rows[r][c] = add(rows[r][c], mul(factor, rows[rank][c]));
    }
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

std::vector<std::uint32_t> EchelonOracle::points_of(const std::vector<Row>& basis) const {
  const auto r = static_cast<std::uint32_t>(basis.size());
  const std::uint64_t combos = checked_pow(q_, r);
  const std::uint32_t s = table_->s();
  std::vector<std::uint32_t> out;
  std::vector<std::uint32_t> coeff(r);
  for (std::uint64_t v = 1; v < combos; ++v) {
    std::uint64_t t = v;
    for (std::uint32_t i = 0; i < r; ++i) {
      coeff[i] = static_cast<std::uint32_t>(t % q_);
      t /= q_;
    }
    // One representative per projective point: leading coefficient 1.
    const auto lead = std::find_if(coeff.begin(), coeff.end(), [](std::uint32_t c) { return c != 0; });
    if (*lead != 1) continue;
    Row vec(n_, 0);
    for (std::uint32_t i = 0; i < r; ++i) {
      if (coeff[i] == 0) continue;
      for (std::uint32_t c = 0; c < n_; ++c) vec[c] = add(vec[c], mul(coeff[i], basis[i][c]));
    }
    const auto log = table_->log_packed(table_->pack(vec));
    if (!log) throw InvariantViolation("independent combination vanished");
    out.push_back(*log % s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint32_t EchelonOracle::rank(std::span<const std::uint32_t> points) const {
  std::vector<Row> rows;
  rows.reserve(points.size());
  for (const auto x : points) rows.push_back(table_->exp_vector(x));
  return static_cast<std::uint32_t>(reduce(std::move(rows)).size());
}

std::vector<std::uint32_t> EchelonOracle::span_points(std::span<const std::uint32_t> points) const {
  std::vector<Row> rows;
  rows.reserve(points.size());
  for (const auto x : points) rows.push_back(table_->exp_vector(x));
  return points_of(reduce(std::move(rows)));
}

std::vector<std::vector<std::uint32_t>> EchelonOracle::enumerate_grassmannian(std::uint32_t r) const {
  if (r == 0 || r > n_) throw PreconditionError("subspace dimension out of range");
  std::vector<std::vector<std::uint32_t>> out;
  // Pivot column sets as bitmasks with r bits.
  for (std::uint32_t mask = 0; mask < (1u << n_); ++mask) {
    if (static_cast<std::uint32_t>(__builtin_popcount(mask)) != r) continue;
    std::vector<std::uint32_t> pivots;
    for (std::uint32_t c = 0; c < n_; ++c) {
      if (mask & (1u << c)) pivots.push_back(c);
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> free_cells;
    for (std::uint32_t i = 0; i < r; ++i) {
      for (std::uint32_t c = pivots[i] + 1; c < n_; ++c) {
        if (!(mask & (1u << c))) free_cells.emplace_back(i, c);
      }
    }
    const std::uint64_t fills = checked_pow(q_, static_cast<std::uint32_t>(free_cells.size()));
    for (std::uint64_t v = 0; v < fills; ++v) {
      std::vector<Row> basis(r, Row(n_, 0));
      for (std::uint32_t i = 0; i < r; ++i) basis[i][pivots[i]] = 1;
      std::uint64_t t = v;
      for (const auto& [row, col] : free_cells) {
        basis[row][col] = static_cast<std::uint32_t>(t % q_);
        t /= q_;
      }
      out.push_back(points_of(basis));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Certificates

Report verify_certificate(const CycleCertificate& cert) {
  Report report;
  auto add = [&](const std::string& name, const std::string& witness) {
    report.checks.push_back(CheckResult{name, witness.empty(), witness});
  };

  {
    std::string problem;
    const auto pp = prime_power(cert.q);
    if (cert.k != 1 && cert.k != 2) {
      problem = "k = " + std::to_string(cert.k) + " unsupported";
    } else if (cert.n != 2 * cert.k + 1 || cert.field.n != cert.n) {
      problem = "n = " + std::to_string(cert.n) + " does not match k = " + std::to_string(cert.k);
    } else if (!pp || pp->p != cert.field.p || pp->m != cert.field.m) {
      problem = "q = " + std::to_string(cert.q) + " does not equal p^m";
    }
    add("header", problem);
    if (!problem.empty()) return report;
  }

  std::optional<FieldTable> table;
  try {
    table.emplace(cert.field.build_table());
    add("field", "");
  } catch (const Error& ex) {
    add("field", ex.what());
    return report;
  }
  const EchelonOracle oracle(*table);
  const std::uint32_t s = table->s();
  const std::uint32_t k = cert.k;
  const auto& vs = cert.vertices;

  const std::uint64_t expected = 2 * gaussian_coefficient(cert.q, cert.n, k);
  add("count", vs.size() == expected ? ""
                                     : "has " + std::to_string(vs.size()) + " vertices, expected " +
                                           std::to_string(expected));

  std::string bad;
  for (std::size_t i = 0; i < vs.size() && bad.empty(); ++i) {
    const auto& v = vs[i];
    const std::string at = "index " + std::to_string(i) + ": ";
    if (v.dim != k && v.dim != k + 1) {
      bad = at + "dimension " + std::to_string(v.dim);
    } else if (!std::is_sorted(v.points.begin(), v.points.end()) ||
               std::adjacent_find(v.points.begin(), v.points.end()) != v.points.end()) {
      bad = at + "points not strictly ascending";
    } else if (!v.points.empty() && v.points.back() >= s) {
      bad = at + "point " + std::to_string(v.points.back()) + " outside Z_" + std::to_string(s);
    } else if (v.points.size() != projective_size(cert.q, v.dim)) {
      bad = at + std::to_string(v.points.size()) + " points for dimension " + std::to_string(v.dim);
    } else if (const auto r = oracle.rank(v.points); r != v.dim) {
      bad = at + "points " + join(v.points) + " have rank " + std::to_string(r);
    }
  }
  add("subspaces", bad);

  bad.clear();
  for (std::size_t i = 0; i + 1 < vs.size() && bad.empty(); ++i) {
    if (vs[i].dim == vs[i + 1].dim) bad = "index " + std::to_string(i + 1) + ": dimension does not alternate";
  }
  add("alternation", bad);

  bad.clear();
  for (std::size_t i = 0; i + 1 < vs.size() && bad.empty(); ++i) {
    const auto& a = vs[i];
    const auto& b = vs[i + 1];
    const bool nested = a.dim < b.dim ? subset_of(a.points, b.points) : subset_of(b.points, a.points);
    if (!nested || (a.dim + 1 != b.dim && b.dim + 1 != a.dim)) {
      bad = "index " + std::to_string(i) + ": no edge to index " + std::to_string(i + 1);
    }
  }
  add("adjacency", bad);

  bad.clear();
  {
    std::vector<std::size_t> order(vs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(vs[a].dim, vs[a].points, a) < std::tie(vs[b].dim, vs[b].points, b);
    });
    std::size_t first = vs.size();
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      if (vs[order[i]] == vs[order[i + 1]]) first = std::min(first, order[i + 1]);
    }
    if (first != vs.size()) bad = "index " + std::to_string(first) + ": repeated vertex";
  }
  add("distinct", bad);

  if (cert.verdict == Verdict::kHamiltonianCycle) {
    bad.clear();
    if (vs.size() < 2) {
      bad = "too short to close";
    } else {
      const auto& a = vs.back();
      const auto& b = vs.front();
      const bool nested = a.dim < b.dim ? subset_of(a.points, b.points) : subset_of(b.points, a.points);
      if (!nested || (a.dim + 1 != b.dim && b.dim + 1 != a.dim)) bad = "last vertex not adjacent to first";
    }
    add("closing", bad);
  }
  return report;
}

}  // namespace qmiddle
