#include <doctest.h>

#include "dimerarc/config.hpp"
#include "dimerarc/error.hpp"

using namespace dimerarc;

TEST_CASE("key values parse typed bindings with comments") {
  KeyValues kv = KeyValues::parse_text(
      "# run settings\n"
      "height = 40\n"
      "eps=0.25\n"
      "name = strip run \n"
      "flag = true\n");
  CHECK(kv.get_int("height") == 40);
  CHECK(kv.get_double("eps") == doctest::Approx(0.25));
  CHECK(kv.get_string("name") == "strip run");
  CHECK(kv.get_bool("flag"));
  kv.finish();
}

TEST_CASE("fallbacks apply only for absent keys") {
  KeyValues kv = KeyValues::parse_text("a = 3\n");
  CHECK(kv.get_int("a", 7) == 3);
  CHECK(kv.get_int("b", 7) == 7);
  kv.finish();
}

TEST_CASE("unconsumed keys are rejected") {
  KeyValues kv = KeyValues::parse_text("good = 1\ntypo = 2\n");
  CHECK(kv.get_int("good") == 1);
  CHECK_THROWS_AS(kv.finish(), Error);
}

TEST_CASE("malformed values and lines are rejected") {
  KeyValues kv = KeyValues::parse_text("n = twelve\n");
  CHECK_THROWS_AS(kv.get_int("n"), Error);
  CHECK_THROWS_AS(KeyValues::parse_text("no equals sign\n"), Error);
  CHECK_THROWS_AS(KeyValues::parse_text("a = 1\na = 2\n"), Error);
}

TEST_CASE("missing key without fallback is an error") {
  KeyValues kv = KeyValues::parse_text("");
  CHECK_THROWS_AS(kv.get_double("absent"), Error);
}

TEST_CASE("digest ignores binding order but not values") {
  KeyValues a = KeyValues::parse_text("x = 1\ny = 2\n");
  KeyValues b = KeyValues::parse_text("y = 2\nx = 1\n");
  KeyValues c = KeyValues::parse_text("x = 1\ny = 3\n");
  CHECK(a.digest() == b.digest());
  CHECK(a.digest() != c.digest());
}
