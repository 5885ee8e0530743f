#include <catch2/catch_amalgamated.hpp>

#include "fcmj/json_io.hpp"
#include "oracles.hpp"

using namespace fcmj;
using Catch::Matchers::ContainsSubstring;

namespace {

const char* kCanonical15 =
    R"({"root":"0","trigger_mode":"descendants","nodes":[{"id":"0","kind":"module","setup_cost":"1"},{"id":"1","kind":"component","setup_cost":"3149","cycle_limit":15},{"id":"2","kind":"component","setup_cost":"0","cycle_limit":13}],"edges":[["0","1"],["0","2"]]})";

}  // namespace

TEST_CASE("parsing the documented instance format") {
  Instance inst = parse_instance(kCanonical15);
  CHECK(inst.root == "0");
  CHECK(inst.trigger_mode == TriggerMode::descendants);
  REQUIRE(inst.modules.size() == 1);
  REQUIRE(inst.components.size() == 2);
  CHECK(inst.components[0].setup_cost == 3149);
  CHECK(inst.components[1].cycle_limit == 13);
  CHECK(inst.edges.size() == 2);
  CHECK(validate(inst).empty());

  // Round-trips through the canonical dump are byte-identical.
  std::string dumped = dump_instance(inst);
  CHECK(dump_instance(parse_instance(dumped)) == dumped);
  CHECK(dumped == dump_instance(build_factoring_instance(15)));
}

TEST_CASE("instance dumps are canonical regardless of construction order") {
  Instance a = oracle::figure1_instance(Rational(3), Rational(2), Rational(1));
  Instance b = a;
  std::swap(b.components[0], b.components[1]);
  std::reverse(b.edges.begin(), b.edges.end());
  CHECK(dump_instance(a) == dump_instance(b));
}

TEST_CASE("rational parsing is exact and canonicalizing") {
  CHECK(parse_rational("3149") == 3149);
  CHECK(parse_rational("7/2") == Rational(7, 2));
  CHECK(to_string(parse_rational("4/6")) == "2/3");  // lowest terms
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("3/"), ParseError);
}

TEST_CASE("schedule parsing") {
  Schedule s = parse_schedule(R"({"1":4,"2":6})");
  CHECK(s == Schedule{{"1", 4}, {"2", 6}});
  CHECK(dump_schedule(s) == R"({"1":4,"2":6})");

  // Values beyond 64 bits travel as strings, exactly.
  Schedule big = parse_schedule(R"({"1":"123456789012345678901234567890"})");
  CHECK(big.at("1") == Int("123456789012345678901234567890"));
  std::string dumped = dump_schedule(big);
  CHECK(dumped == R"({"1":"123456789012345678901234567890"})");
  CHECK(dump_schedule(parse_schedule(dumped)) == dumped);

  CHECK_THROWS_AS(parse_schedule("[4,6]"), ParseError);
  CHECK_THROWS_AS(parse_schedule(R"({"1":1.5})"), ParseError);
  CHECK_THROWS_AS(parse_schedule("{oops"), ParseError);
}

TEST_CASE("instance parse errors") {
  CHECK_THROWS_AS(parse_instance("{nope"), ParseError);
  CHECK_THROWS_WITH(parse_instance(R"({"nodes":[],"edges":[]})"), ContainsSubstring("root"));
  CHECK_THROWS_WITH(
      parse_instance(R"({"root":"0","nodes":[{"id":"0","kind":"widget"}],"edges":[]})"),
      ContainsSubstring("kind"));
  CHECK_THROWS_WITH(
      parse_instance(R"({"root":"0","nodes":[{"id":"0","kind":"component"}],"edges":[]})"),
      ContainsSubstring("cycle_limit"));
  CHECK_THROWS_WITH(
      parse_instance(
          R"({"root":"0","nodes":[{"id":"0","kind":"module","cycle_limit":3}],"edges":[]})"),
      ContainsSubstring("cycle_limit"));
  CHECK_THROWS_WITH(
      parse_instance(R"({"root":"0","nodes":[{"id":"0","kind":"module"}],"edges":[["0"]]})"),
      ContainsSubstring("edge"));
  CHECK_THROWS_AS(parse_instance(R"({"root":"0","trigger_mode":"sideways","nodes":[],"edges":[]})"),
                  ParseError);
}

TEST_CASE("big cycle limits survive the number-or-string convention") {
  Instance inst;
  inst.root = "m";
  inst.modules = {{"m", Rational(1)}};
  inst.components = {{"a", Rational(1), Int(1) << 40}, {"b", Rational(1), Int(1) << 70}};
  inst.edges = {{"m", "a"}, {"m", "b"}};
  std::string dumped = dump_instance(inst);
  Instance back = parse_instance(dumped);
  CHECK(back.components[0].cycle_limit == Int(1) << 40);
  CHECK(back.components[1].cycle_limit == Int(1) << 70);
  CHECK(dump_instance(back) == dumped);
  // The small one is a JSON number, the big one a string.
  CHECK(dumped.find("1099511627776") != std::string::npos);
  CHECK(dumped.find("\"1180591620717411303424\"") != std::string::npos);
}

TEST_CASE("cost breakdown serialization") {
  auto inst = oracle::figure1_instance(Rational(3), Rational(2), Rational(1));
  auto j = breakdown_to_json(cost_rate(inst, Schedule{{"1", 4}, {"2", 6}}));
  CHECK(j.at("total") == "5/3");
  CHECK(j.at("per_component").at("1") == "1/2");
  CHECK(j.at("per_module").at("0") == "1");
}

TEST_CASE("solve report serialization") {
  auto j = solve_report_to_json(solve_two_component(Rational(1), Rational(3149), Rational(0), 15, 13));
  CHECK(j.at("optimal_value") == "3151/15");
  CHECK(j.at("optimal_schedule").at("1") == 15);
  CHECK(j.at("optimal_schedule").at("2") == 10);
  CHECK(j.at("evaluations").get<std::uint64_t>() == 13);
}

TEST_CASE("reduction report serialization") {
  auto j = reduction_report_to_json(verify_reduction(15));
  CHECK(j.at("M") == "15");
  CHECK(j.at("passed") == true);
  CHECK(j.at("divisor") == "5");
  CHECK(j.at("optimal_V") == "1/15");
  auto jp = reduction_report_to_json(verify_reduction(7));
  CHECK(jp.at("input_prime") == true);
  CHECK(jp.at("divisor").is_null());
  CHECK(jp.at("coprime_min_V") == "6/35");
}

TEST_CASE("factor trace serialization") {
  auto [factors, trace] = factorize(12);
  auto j = trace_to_json(trace);
  CHECK(j.at("M") == "12");
  CHECK(j.at("kind") == "composite");
  CHECK(j.at("q1") == "12");
  CHECK(j.contains("instance"));
  REQUIRE(j.at("children").size() == 2);
  // Leaves are prime markers.
  auto leaf = j.at("children")[1];
  CHECK((leaf.at("kind") == "prime" || leaf.at("kind") == "composite"));
}
