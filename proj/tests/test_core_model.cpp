#include "doctest.h"

#include <cmath>
#include <numbers>

#include "stargraph/config.hpp"
#include "stargraph/core_model.hpp"
#include "stargraph/error.hpp"

using namespace stargraph;

TEST_CASE("bond lengths validate their input") {
  CHECK_THROWS_AS(BondLengths({}), invalid_argument);
  CHECK_THROWS_AS(BondLengths({1.0, -2.0}), invalid_argument);
  CHECK_THROWS_AS(BondLengths({1.0, 0.0}), invalid_argument);
  CHECK_THROWS_AS(BondLengths({1.0, std::nan("")}), invalid_argument);
  CHECK_THROWS_AS(BondLengths({1.0, 2.0, 1.0}), invalid_argument);
  const BondLengths equal({1.0, 1.0}, BondLengths::Distinctness::allow_equal);
  CHECK_FALSE(equal.pairwise_distinct());
  CHECK_THROWS_AS(equal.require_distinct(), invalid_argument);
}

TEST_CASE("bond length accessors") {
  const BondLengths l({1.0, 3.0, 2.0});
  CHECK(l.size() == 3);
  CHECK(l.total() == doctest::Approx(6.0));
  CHECK(l.min() == 1.0);
  CHECK(l.max() == 3.0);
  CHECK(l[1] == 3.0);
  CHECK(mean_density(l) == doctest::Approx(6.0 / std::numbers::pi));
}

TEST_CASE("generated lengths lie in the box and are reproducible") {
  const LengthBox box{2.0, 0.1};
  const BondLengths a = generate_lengths(box, 70, 11);
  const BondLengths b = generate_lengths(box, 70, 11);
  const BondLengths c = generate_lengths(box, 70, 12);
  REQUIRE(a.size() == 70);
  for (std::size_t j = 0; j < a.size(); ++j) {
    CHECK(a[j] >= 2.0);
    CHECK(a[j] <= 2.1);
    CHECK(a[j] == b[j]);
  }
  CHECK(a[0] != c[0]);
  CHECK(a.pairwise_distinct());
}

TEST_CASE("length generation rejects degenerate requests") {
  CHECK_THROWS_AS(generate_lengths({2.0, 0.1}, 0, 1), invalid_argument);
  CHECK_THROWS_AS(generate_lengths({2.0, 0.0}, 3, 1), invalid_argument);
  CHECK_THROWS_AS(generate_lengths({-1.0, 0.1}, 3, 1), invalid_argument);
  CHECK(generate_lengths({2.0, 0.0}, 1, 1)[0] == 2.0);
}

TEST_CASE("config files") {
  const ConfigValues c = parse_config("# comment\nseed = 42\nv=7\n\nl_bar = 2.5  # trailing\ndelta_l = 0.1\nsample_count = 1000\n");
  CHECK(c.seed == 42u);
  CHECK(c.v == 7u);
  CHECK(*c.l_bar == doctest::Approx(2.5));
  CHECK(*c.delta_l == doctest::Approx(0.1));
  CHECK(c.sample_count == 1000u);

  const ConfigValues empty = parse_config("");
  CHECK_FALSE(empty.seed.has_value());

  CHECK_THROWS_AS(parse_config("colour = red\n"), invalid_argument);
  CHECK_THROWS_AS(parse_config("seed = many\n"), invalid_argument);
  CHECK_THROWS_AS(parse_config("v 7\n"), invalid_argument);
  CHECK_THROWS_AS(load_config("/nonexistent/config.txt"), io_error);
}
