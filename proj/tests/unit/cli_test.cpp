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
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "qmiddle/certificate.hpp"

namespace fs = std::filesystem;
using qmiddle::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qmiddle");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const fs::path kFixtures = QMIDDLE_FIXTURE_DIR;

fs::path scratch(const std::string& name) { return fs::temp_directory_path() / ("qmiddle_cli_" + name); }

}  // namespace

TEST_CASE("build writes a certificate that verifies") {
  const auto path = scratch("q2.json");
  const auto b = run({"build", "--q", "2", "--k", "2", "--seed", "1", "--out", path.string()});
  REQUIRE(b.code == 0);
  CHECK(b.out.find("vertices 310") != std::string::npos);
  CHECK(b.out.find("elapsed") != std::string::npos);
  const auto v = run({"verify", path.string()});
  CHECK(v.code == 0);
  CHECK(v.out.find("VALID HAMILTONIAN_CYCLE 310 vertices") != std::string::npos);
  // Golden file.
  CHECK(slurp(path) == slurp(kFixtures / "valid_q2.json"));
  fs::remove(path);
}

TEST_CASE("build to stdout") {
  const auto b = run({"build", "--q", "2", "--k", "1", "--ell", "1"});
  CHECK(b.code == 0);
  CHECK(qmiddle::parse_certificate(b.out).vertices.size() == 14);
  CHECK(b.err.find("vertices 14") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({"build", "--q", "6", "--k", "2"}).code == 2);
  CHECK(run({"build", "--q", "6", "--k", "2"}).err.find("not a prime power") != std::string::npos);
  CHECK(run({"build", "--q", "2", "--k", "3"}).code == 2);
  CHECK(run({"build", "--q", "2", "--k", "1", "--ell", "7"}).code == 2);
  CHECK(run({"build", "--q", "2", "--k", "2", "--ell", "3"}).code == 2);
  CHECK(run({"build", "--q", "2", "--k", "2", "--poly", "1,x"}).code == 2);
  CHECK(run({"build", "--q", "2", "--k", "2", "--poly", "1,1,0,0,0,1"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"props", "--q", "2", "--exhaustive", "--sampled"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("poly override still yields a valid cycle") {
  const auto path = scratch("alt.json");
  REQUIRE(run({"build", "--q", "2", "--k", "2", "--poly", "1,0,0,1,0,1", "--out", path.string()}).code == 0);
  CHECK(qmiddle::read_certificate(path).field.poly == qmiddle::Poly{1, 0, 0, 1, 0, 1});
  CHECK(run({"verify", path.string()}).code == 0);
  fs::remove(path);
}

TEST_CASE("require-g1 skips seeds with g > 1") {
  const auto path = scratch("g1.json");
  REQUIRE(run({"build", "--q", "3", "--k", "2", "--seed", "17", "--require-g1", "--out", path.string()}).code == 0);
  const auto cert = qmiddle::read_certificate(path);
  CHECK(cert.meta.g == 1);
  CHECK(cert.meta.seed > 17);
  CHECK(run({"build", "--q", "3", "--k", "2", "--seed", "17", "--require-g1", "--max-retries", "1"}).code == 3);
  fs::remove(path);
}

TEST_CASE("verify exit codes on fixtures") {
  CHECK(run({"verify", (kFixtures / "valid_q2.json").string()}).code == 0);
  CHECK(run({"verify", (kFixtures / "natural_g11_q3_seed17.json").string()}).code == 0);
  CHECK(run({"verify", (kFixtures / "swapped_q2.json").string()}).code == 1);
  CHECK(run({"verify", (kFixtures / "deleted_q2.json").string()}).code == 1);
  CHECK(run({"verify", (kFixtures / "duplicated_q2.json").string()}).code == 1);
  CHECK(run({"verify", (kFixtures / "malformed_q2.json").string()}).code == 2);
  CHECK(run({"verify", "/nonexistent/cert.json"}).code == 2);
  const auto j = run({"verify", "--json", (kFixtures / "swapped_q2.json").string()});
  CHECK(j.out.find(R"({"check":"alternation","status":"fail","witness":"index 40)") != std::string::npos);
}

TEST_CASE("props") {
  CHECK(run({"props", "--q", "2", "--exhaustive"}).code == 0);
  const auto r = run({"props", "--q", "2", "--inject-fault", "3"});
  CHECK(r.code != 0);
  CHECK(r.out.find("FAIL plane_incidence_profile") != std::string::npos);
  const auto s = run({"props", "--q", "4", "--sampled", "--samples", "40", "--json"});
  CHECK(s.code == 0);
  CHECK(s.out.find("\"fail\"") == std::string::npos);
  CHECK(run({"props", "--q", "10"}).code == 2);
}

TEST_CASE("stats") {
  const auto two = run({"stats", "--q", "2"});
  CHECK(two.code == 0);
  CHECK(two.out.find("s 31\n") != std::string::npos);
  CHECK(two.out.find("line classes 5, plane classes 5") != std::string::npos);
  CHECK(two.out.find("lines 155, planes 155") != std::string::npos);
  const auto three = run({"stats", "--q", "3"});
  CHECK(three.out.find("s 121\n") != std::string::npos);
  CHECK(three.out.find("line classes 10, plane classes 10") != std::string::npos);
  const auto four = run({"stats", "--q", "4", "--json"});
  CHECK(four.out.find(R"("s":341,)") != std::string::npos);
  CHECK(four.out.find(R"("line_classes":17,"plane_classes":17)") != std::string::npos);
}
