#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latsamp/problem.hpp"

#include <string>

using namespace latsamp;

namespace {

const std::string shannon_union = R"({
  "dimension": 1,
  "question": "tight",
  "band_e": [{"lower": ["-1/2"], "upper": ["1/2"]}],
  "system_a": [
    {"matrix": [["2"]], "shift": ["0"]},
    {"matrix": [["2"]], "shift": ["1"]}
  ]
})";

const std::string printed_example = R"({
  "dimension": 1,
  "question": "orthogonal",
  "band_e": [{"lower": ["0"], "upper": ["1"]}],
  "band_f": [{"lower": ["-1"], "upper": ["0"]}],
  "system_a": [
    {"matrix": [["1"]], "shift": ["0"]},
    {"matrix": [["1"]], "shift": ["1/2"]}
  ],
  "system_b": [
    {"matrix": [["1"]], "shift": ["1/2"]},
    {"matrix": [["1"]], "shift": ["0"]}
  ]
})";

}  // namespace

TEST_CASE("minimal spec parses") {
    ProblemSpec s = parse_spec_json(R"({
      "dimension": 1,
      "question": "tight",
      "band_e": [{"lower": ["-1/2"], "upper": ["1/2"]}],
      "system_a": [{"matrix": [["1"]]}]
    })");
    CHECK(s.dimension == 1);
    CHECK(s.question == Question::Tight);
    CHECK(measure(s.band_e) == 1);
    CHECK(s.system_a.size() == 1);
    CHECK(s.system_a.unshifted());
}

TEST_CASE("parse errors carry locations") {
    CHECK_THROWS_WITH_AS(parse_spec_json(R"({
      "dimension": 1,
      "question": "tight",
      "band_e": [{"lower": ["1/0"], "upper": ["1"]}],
      "system_a": [{"matrix": [["1"]]}]
    })"),
                         doctest::Contains("band_e[0].lower[0]"), SpecError);

    CHECK_THROWS_WITH_AS(parse_spec_json(R"({
      "dimension": 2,
      "question": "tight",
      "band_e": [{"lower": ["0", "0"], "upper": ["1", "1"]}],
      "system_a": [{"matrix": [["1", "1"], ["1", "1"]]}]
    })"),
                         doctest::Contains("singular"), SpecError);

    CHECK_THROWS_AS(parse_spec_json(R"({"dimension": 1})"), SpecError);
    CHECK_THROWS_AS(parse_spec_json("not json"), SpecError);

    // Floats are rejected on the exact path.
    CHECK_THROWS_AS(parse_spec_json(R"({
      "dimension": 1,
      "question": "tight",
      "band_e": [{"lower": ["0.5"], "upper": ["1"]}],
      "system_a": [{"matrix": [["1"]]}]
    })"),
                    SpecError);
}

TEST_CASE("orthogonality specs need the partner band and system") {
    CHECK_THROWS_WITH_AS(parse_spec_json(R"({
      "dimension": 1,
      "question": "orthogonal",
      "band_e": [{"lower": ["0"], "upper": ["1"]}],
      "system_a": [{"matrix": [["1"]]}]
    })"),
                         doctest::Contains("band_f"), SpecError);
}

TEST_CASE("spec round-trips through its JSON emission") {
    ProblemSpec a = parse_spec_json(printed_example);
    std::string dumped = spec_to_json(a);
    ProblemSpec b = parse_spec_json(dumped);
    CHECK(spec_to_json(b) == dumped);
    CHECK(a.band_e == b.band_e);
    CHECK(*a.band_f == *b.band_f);
    CHECK(a.system_a.size() == b.system_a.size());
}

TEST_CASE("run answers the Shannon union spec") {
    ProblemSpec s = parse_spec_json(shannon_union);
    Report r = run(s, {});
    CHECK(r.property_holds);
    CHECK(r.mode == VerdictMode::Exact);
    REQUIRE(r.constant.has_value());
    CHECK(*r.constant == 1);
    CHECK(exit_code(r) == 0);

    std::string text = report_to_text(r);
    CHECK(text.find("verdict: holds") != std::string::npos);
    CHECK(text.find("K: 1") != std::string::npos);
}

TEST_CASE("run reports the printed example with a witness") {
    ProblemSpec s = parse_spec_json(printed_example);
    Report r = run(s, {});
    CHECK_FALSE(r.property_holds);
    REQUIRE(r.witness_alpha.has_value());
    CHECK((*r.witness_alpha)[0] == 1);
    REQUIRE(r.witness_group.has_value());
    CHECK((*r.witness_group)[0].rat() == rat(1, 2));
    CHECK(r.witness_sum.has_value());
    CHECK(exit_code(r) == 1);

    std::string json = report_to_json(r);
    CHECK(json.find("\"verdict\": false") != std::string::npos);
    CHECK(json.find("\"alpha\"") != std::string::npos);
}

TEST_CASE("reports are deterministic") {
    ProblemSpec s = parse_spec_json(shannon_union);
    RunFlags flags;
    flags.verify = true;
    flags.radius = 200;
    flags.trials = 2;
    Report a = run(s, flags);
    Report b = run(s, flags);
    CHECK(report_to_json(a) == report_to_json(b));
    CHECK(report_to_text(a) == report_to_text(b));
    CHECK(a.verified);
    CHECK(a.oracle_agrees);
    CHECK(exit_code(a) == 0);
}

TEST_CASE("mixed per-index matrices with shifts are unsupported") {
    ProblemSpec s = parse_spec_json(R"({
      "dimension": 1,
      "question": "orthogonal",
      "band_e": [{"lower": ["0"], "upper": ["1"]}],
      "band_f": [{"lower": ["0"], "upper": ["1"]}],
      "system_a": [
        {"matrix": [["1"]], "shift": ["1/2"]},
        {"matrix": [["2"]], "shift": ["0"]}
      ],
      "system_b": [
        {"matrix": [["2"]], "shift": ["0"]},
        {"matrix": [["1"]], "shift": ["1/3"]}
      ]
    })");
    CHECK_THROWS_WITH_AS(run(s, {}), doctest::Contains("no criterion"),
                         UnsupportedSystemError);
}

TEST_CASE("numeric shifts demote the reported mode") {
    ProblemSpec s = parse_spec_json(R"({
      "dimension": 1,
      "question": "tight",
      "band_e": [{"lower": ["0"], "upper": ["3/2"]}],
      "system_a": [{"matrix": [["1"]], "shift_numeric": [0.7071067811865476]}]
    })");
    Report r = run(s, {});
    CHECK(r.mode == VerdictMode::Numeric);
    std::string text = report_to_text(r);
    CHECK(text.find("mode: numeric") != std::string::npos);
}

TEST_CASE("oracle flags override spec config") {
    ProblemSpec s = parse_spec_json(shannon_union);
    RunFlags flags;
    flags.verify = true;
    flags.radius = 123;
    flags.trials = 2;
    flags.seed = 9;
    flags.tol = 0.05;
    Report r = run(s, flags);
    CHECK(r.config.radius == 123);
    CHECK(r.config.trials == 2);
    CHECK(r.config.seed == 9);
    CHECK(r.config.tolerance == 0.05);
}
