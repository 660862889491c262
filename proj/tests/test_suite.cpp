#include <doctest.h>

#include "helpers.hpp"
#include "isorep/errors.hpp"
#include "isorep/suite.hpp"

using namespace isorep;
using namespace testing;

TEST_CASE("preset names") {
  CHECK(suite_presets().size() == 6);
  CHECK_THROWS_AS(verify_suite("example9"), InputError);
}

TEST_CASE("random families are reproducible and valid") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const RandomFamily a = random_family(seed);
    const RandomFamily b = random_family(seed);
    CHECK(max_abs(a.family.unitary - b.family.unitary) == 0.0);
    CHECK_NOTHROW(a.family.validate());
    CHECK(a.family.dim() <= 5);
    CHECK(fixed_space_dim(a.family.unitary) == static_cast<Eigen::Index>(a.fixed_dim));
  }
}

TEST_CASE("Example 2 vectors") {
  CHECK(std::abs(example2_vector().norm() - 1.0) < 1e-15);
  CHECK(std::abs(example2_other_vector().norm() - 1.0) < 1e-15);
  CHECK(std::abs(std::abs(example2_other_vector()(0)) - 0.5) > 0.1);
}

TEST_CASE("induced2d preset passes and is deterministic") {
  SuiteOptions o;
  const SuiteReport a = verify_suite("induced2d", o);
  CHECK(a.passed());
  for (const auto& c : a.checks) {
    CAPTURE(c.name);
    CHECK(c.pass);
    CHECK_FALSE(c.anchor.empty());
  }
  const SuiteReport b = verify_suite("induced2d", o);
  CHECK(to_json(a).dump() == to_json(b).dump());
  const std::string csv = to_csv(a);
  CHECK(csv.rfind("name,", 0) == 0);
}
