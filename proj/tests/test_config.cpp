// Copyright 2026 The QBA Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "qba/config.hpp"
#include "qba/errors.hpp"
#include "qba/netsim.hpp"

using namespace qba;

namespace {

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("key = value lines with comments and blanks") {
  const Config c = Config::parse(
      "# header\n"
      "\n"
      "  n = 5   # trailing comment\n"
      "name=equivocator\n"
      "list = 1.0, 0.99 ,0.9\n"
      "flag = yes\n");
  CHECK(c.get_int("n", 0) == 5);
  CHECK(c.get_string("name", "") == "equivocator");
  CHECK(c.get_doubles("list", {}) == std::vector<double>{1.0, 0.99, 0.9});
  CHECK(c.get_bool("flag", false));
  CHECK(c.get_int("missing", 11) == 11);
  CHECK_FALSE(c.has("missing"));
}

TEST_CASE("later keys win") {
  CHECK(Config::parse("k = 1\nk = 3\n").get_int("k", 0) == 3);
}

TEST_CASE("malformed input is a ConfigError") {
  CHECK_THROWS_AS(Config::parse("just words\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse(" = 3\n"), ConfigError);
  const Config c = Config::parse("n = five\nf = 0.5x\nb = maybe\nl = 1,two\n");
  CHECK_THROWS_AS(c.get_int("n", 0), ConfigError);
  CHECK_THROWS_AS(c.get_double("f", 0), ConfigError);
  CHECK_THROWS_AS(c.get_bool("b", false), ConfigError);
  CHECK_THROWS_AS(c.get_doubles("l", {}), ConfigError);
  CHECK_THROWS_AS(c.require_string("absent"), ConfigError);
  CHECK_THROWS_AS(Config::load("/nonexistent/qba.cfg"), ConfigError);
}

TEST_CASE("environment overrides file values and known keys") {
  Config c = Config::parse("trials = 10\n");
  ::setenv("QBATEST_TRIALS", "25", 1);
  ::setenv("QBATEST_SEED", "9", 1);
  c.apply_env("QBATEST_");
  CHECK(c.get_int("trials", 0) == 25);
  CHECK_FALSE(c.has("seed"));
  c.apply_env("QBATEST_", {"seed"});
  CHECK(c.get_int("seed", 0) == 9);
  ::unsetenv("QBATEST_TRIALS");
  ::unsetenv("QBATEST_SEED");
}

TEST_CASE("gradecast cost model accepts exact fractions") {
  const auto path = temp_file("qba_model.cfg", "c1 = 2\nc2 = 22/15\n");
  const auto m = GradecastCostModel::load(path);
  CHECK(m.c1 == 2.0);
  CHECK(m.c2 == doctest::Approx(22.0 / 15.0));
  CHECK(m.bits(3, 5) == doctest::Approx(2 * 3 * 4 + 22.0 / 15.0 * 3 * 16));
  CHECK_THROWS_AS(GradecastCostModel::load(temp_file("qba_bad.cfg", "c1 = 1\nc2 = 1/0\n")),
                  ConfigError);
  CHECK_THROWS_AS(GradecastCostModel::load(temp_file("qba_neg.cfg", "c1 = -1\nc2 = 1\n")),
                  ConfigError);
  const auto shipped = GradecastCostModel::shipped();
  CHECK(shipped.c2 == doctest::Approx(22.0 / 15.0));
}

TEST_CASE("shipped default config parses") {
  const Config c = Config::load(std::string(QBA_SOURCE_DIR) + "/configs/default.cfg");
  CHECK(c.get_int("n", 0) == 5);
  CHECK(c.get_int("p", 0) == 7);
  CHECK(c.get_doubles("fidelities", {}).size() == 4);
}
