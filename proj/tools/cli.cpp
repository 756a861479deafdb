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

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qmiddle/builder.hpp"
#include "qmiddle/certificate.hpp"
#include "qmiddle/errors.hpp"
#include "qmiddle/field.hpp"
#include "qmiddle/geometry.hpp"
#include "qmiddle/numeric.hpp"
#include "qmiddle/orbits.hpp"
#include "qmiddle/verifier.hpp"

namespace qmiddle::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct BuildArgs {
  std::uint32_t q = 2;
  std::uint32_t k = 2;
  std::uint64_t seed = 0;
  std::optional<std::uint32_t> ell;
  std::string poly;
  std::string out;
  bool require_g1 = false;
  std::uint32_t max_retries = 32;
};

struct VerifyArgs {
  std::string path;
  bool json = false;
};

struct PropsArgs {
  std::uint32_t q = 2;
  bool exhaustive = false;
  bool sampled = false;
  bool extra = false;
  std::uint64_t seed = PropertySuiteOptions{}.seed;
  std::uint32_t samples = PropertySuiteOptions{}.samples;
  std::optional<std::uint32_t> fault;
  bool json = false;
};

struct StatsArgs {
  std::uint32_t q = 2;
  bool json = false;
};

// "1,0,1,1" -> {1, 0, 1, 1}
Poly parse_poly(const std::string& text) {
  Poly out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ParseError("bad coefficient '" + item + "' in --poly");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  if (out.empty()) throw ParseError("--poly is empty");
  return out;
}

PrimePower require_prime_power(std::uint32_t q) {
  const auto pp = prime_power(q);
  if (!pp) throw PreconditionError("q = " + std::to_string(q) + " is not a prime power");
  return *pp;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int cmd_build(const BuildArgs& a, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const PrimePower pp = require_prime_power(a.q);
  if (a.k != 1 && a.k != 2) throw PreconditionError("--k must be 1 or 2");
  std::optional<Poly> modulus;
  if (!a.poly.empty()) modulus = parse_poly(a.poly);

  const FieldTable table = FieldTable::build(pp.p, pp.m, 2 * a.k + 1, modulus);
  const Geometry geo(table);

  CycleCertificate cert;
  if (a.k == 1) {
    if (a.require_g1) err << "note: --require-g1 has no effect for k = 1\n";
    cert = build_cycle_k1(geo, a.ell.value_or(1));
  } else {
    if (a.ell) throw PreconditionError("--ell applies to k = 1 only; for k = 2 it comes out of the path search");
    const ClassTable classes(geo);
    const CycleBuilder builder(classes);
    std::uint64_t seed = a.seed;
    for (std::uint32_t attempt = 0;; ++attempt, ++seed) {
      cert = builder.build(seed);
      if (!a.require_g1 || cert.meta.g == 1) break;
      if (attempt + 1 >= a.max_retries) {
        throw ConstructionFailure("no seed in [" + std::to_string(a.seed) + ", " + std::to_string(seed) +
                                  "] gave g = 1");
      }
    }
  }

  const std::string text = serialize_certificate(cert);
  std::ostream& summary = a.out.empty() ? err : out;
  if (a.out.empty()) {
    out << text << '\n';
  } else {
    write_certificate(cert, a.out);
  }
  summary << "vertices " << cert.vertices.size() << "\n"
          << "ell " << cert.meta.ell << "\n"
          << "g " << cert.meta.g << "\n"
          << "flips " << cert.meta.flips << "\n"
          << "seed " << cert.meta.seed << "\n"
          << "elapsed " << seconds_since(start) << " s\n";
  return kExitOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const CycleCertificate cert = read_certificate(a.path);
  const Report report = verify_certificate(cert);
  if (a.json) {
    out << report.to_json() << '\n';
  } else {
    out << report.summary();
    out << (report.ok() ? "VALID" : "INVALID") << ' ' << to_string(cert.verdict) << ' ' << cert.vertices.size()
        << " vertices\n";
  }
  return report.ok() ? kExitOk : kExitInvalid;
}

FieldTable suite_table(std::uint32_t q) {
  const PrimePower pp = require_prime_power(q);
  return FieldTable::build(pp.p, pp.m, 5);
}

int cmd_props(const PropsArgs& a, std::ostream& out) {
  FieldTable table = suite_table(a.q);
  if (a.fault) table = table.with_zech_fault(*a.fault);

  PropertySuiteOptions options = default_suite_options(a.q);
  if (a.exhaustive) options.mode = SweepMode::kExhaustive;
  if (a.sampled) options.mode = SweepMode::kSampled;
  options.seed = a.seed;
  options.samples = a.samples;

  Report report = run_property_suite(table, options);
  if (a.extra) {
    for (auto& c : run_supplementary_checks(table, options).checks) report.checks.push_back(std::move(c));
  }
  if (a.json) {
    out << report.to_json() << '\n';
  } else {
    out << "q " << a.q << ", " << (options.mode == SweepMode::kExhaustive ? "exhaustive" : "sampled") << "\n";
    out << report.summary();
  }
  return report.ok() ? kExitOk : kExitInvalid;
}

int cmd_stats(const StatsArgs& a, std::ostream& out) {
  const FieldTable table = suite_table(a.q);
  const Geometry geo(table);
  const ClassTable classes(geo);
  const std::uint64_t lines = gaussian_coefficient(a.q, 5, 2);
  const std::uint64_t planes = gaussian_coefficient(a.q, 5, 3);

  nlohmann::ordered_json j;
  j["q"] = a.q;
  j["s"] = table.s();
  j["modulus"] = table.modulus();
  j["line_classes"] = classes.classes(2).size();
  j["plane_classes"] = classes.classes(3).size();
  j["lines"] = lines;
  j["planes"] = planes;
  auto& partners = j["special_partners"] = nlohmann::ordered_json::array();
  for (const auto& c : classes.classes(3)) {
    partners.push_back({{"plane_class", c.id},
                        {"plane_rep", c.rep.points},
                        {"size", c.size},
                        {"line_class", classes.special_partner(c.id)},
                        {"line_rep", classes.classes(2).at(classes.special_partner(c.id)).rep.points}});
  }
  if (a.json) {
    out << j.dump() << '\n';
    return kExitOk;
  }

  out << "q " << a.q << "  modulus " << format_poly(table.modulus()) << "\n"
      << "s " << table.s() << "\n"
      << "line classes " << classes.classes(2).size() << ", plane classes " << classes.classes(3).size() << "\n"
      << "lines " << lines << ", planes " << planes << "\n"
      << "special partners (plane class -> line class):\n";
  for (const auto& c : classes.classes(3)) {
    const auto& partner = classes.classes(2).at(classes.special_partner(c.id));
    out << "  P" << c.id << ' ' << to_string(c.rep) << " size " << c.size << " -> L" << partner.id << ' '
        << to_string(partner.rep) << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hamiltonian cycles in the middle levels of projective space graphs"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* b = app.add_subcommand("build", "construct a cycle certificate");
  b->add_option("--q", build.q, "field size, a prime power")->required();
  b->add_option("--k", build.k, "1 for P_q(3), 2 for P_q(5)")->check(CLI::IsMember({1, 2}));
  b->add_option("--seed", build.seed, "path search seed (k = 2)");
  b->add_option("--ell", build.ell, "shift step (k = 1), default 1");
  b->add_option("--poly", build.poly, "modulus override, ascending coefficients c0,c1,...");
  b->add_option("--out", build.out, "certificate path; stdout when omitted");
  b->add_flag("--require-g1", build.require_g1, "retry successive seeds until g = 1");
  b->add_option("--max-retries", build.max_retries, "seed budget for --require-g1")->check(CLI::PositiveNumber);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "check a certificate independently");
  v->add_option("path", verify.path, "certificate file")->required();
  v->add_flag("--json", verify.json, "machine-readable report");

  PropsArgs props;
  auto* p = app.add_subcommand("props", "structural checks on lines and planes of F_q^5");
  p->add_option("--q", props.q, "field size")->required();
  auto* ex = p->add_flag("--exhaustive", props.exhaustive, "every subspace");
  auto* sa = p->add_flag("--sampled", props.sampled, "seeded random sample");
  ex->excludes(sa);
  p->add_option("--seed", props.seed, "sample seed");
  p->add_option("--samples", props.samples, "samples per dimension")->check(CLI::PositiveNumber);
  p->add_option("--inject-fault", props.fault, "corrupt one Zech log entry first");
  p->add_flag("--extra", props.extra, "also run dual incidence and oracle agreement");
  p->add_flag("--json", props.json, "machine-readable report");

  StatsArgs stats;
  auto* s = app.add_subcommand("stats", "class and Grassmannian counts for F_q^5");
  s->add_option("--q", stats.q, "field size")->required();
  s->add_flag("--json", stats.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*b) return cmd_build(build, out, err);
    if (*v) return cmd_verify(verify, out);
    if (*p) return cmd_props(props, out);
    return cmd_stats(stats, out);
  } catch (const ConstructionFailure& e) {
    err << "construction failed: " << e.what() << '\n';
    return kExitConstruction;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SizeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotPrimitiveError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConstruction;
  }
}

}  // namespace qmiddle::cli
