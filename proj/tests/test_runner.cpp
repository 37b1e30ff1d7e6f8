#include <gtest/gtest.h>

#include <regex>

#include "bvk/runner.hpp"

using namespace bvk;

namespace {

std::string suite_path(const std::string& name) { return std::string(BVKIT_SOURCE_DIR) + "/suites/" + name; }

std::pair<int, int> config_error_at(const std::string& text) {
  try {
    parse_suite(text);
  } catch (const ConfigError& e) {
    return {e.line, e.column};
  }
  return {-1, -1};
}

long count(const std::string& hay, const std::string& needle) {
  long n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

const char* kSmall = R"yaml(version: 1
jobs:
  - name: gbva
    suite: verify-gbva
    algebra: "poly(1,1,4)"
    samples: 40
    sweep: {bound: 2, max_total: 2}
  - name: order
    suite: check-order
    algebra: "poly(1,1,4)"
    ops: [{op: bv, r_max: 3, expect: 2}]
  - name: bad-sign
    suite: verify-gbva
    algebra: "poly(1,1,4)"
    samples: 10
    sweep: {bound: 2, max_total: 2}
    expect_brackets:
      - {a: x1, b: t1, value: "-1"}
      - {a: t1, b: x1, value: "1"}
      - {a: x1, b: x1, value: "0"}
  )yaml";

}  // namespace

TEST(Suite, ParseErrorsHaveLineAndColumn) {
  EXPECT_EQ(config_error_at("version: 1\njobs:\n  - name: [x\n"), std::make_pair(4, 1));
  EXPECT_EQ(config_error_at("version: 1\njobs:\n  - name: a\n    suite: nope\n"), std::make_pair(4, 12));
  EXPECT_EQ(config_error_at("version: 2\njobs: []\n"), std::make_pair(1, 10));
  EXPECT_EQ(config_error_at("version: 1\nextra: 1\n"), std::make_pair(2, 1));
  EXPECT_EQ(config_error_at("jobs:\n  - {name: a, suite: weil}\n  - {name: a, suite: weil}\n"), std::make_pair(3, 12));
  EXPECT_EQ(config_error_at("jobs:\n  - {name: a, suite: weil, criterion: x}\n"), std::make_pair(2, 39));
}

TEST(Suite, SeedsDefaultToZero) {
  auto s = parse_suite("jobs:\n  - {name: a, suite: weil}\n");
  ASSERT_EQ(s.jobs.size(), 1u);
  EXPECT_EQ(s.jobs[0].params["seed"], 0);
}

TEST(Suite, EmptyJobListPassesWithWarning) {
  for (const char* text : {"", "version: 1\n", "version: 1\njobs: []\n"}) {
    auto r = run_suite(parse_suite(text), {});
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.exit_code(), 0);
    ASSERT_EQ(r.warnings.size(), 1u);
    EXPECT_EQ(r.warnings[0], "empty job list");
  }
}

TEST(Suite, ConfigurationErrorsInsideJobsExitTwo) {
  auto s = parse_suite("jobs:\n  - name: a\n    suite: verify-gbva\n    algebra: \"poly(1,1,3)\"\n    delta: \"d/dq\"\n");
  auto r = run_suite(s, {});
  ASSERT_EQ(r.jobs.size(), 1u);
  EXPECT_EQ(r.jobs[0].status, JobStatus::Error);
  EXPECT_EQ(r.exit_code(), 2);
  EXPECT_NE(r.jobs[0].error.find("line 5, column 16"), std::string::npos) << r.jobs[0].error;
}

TEST(Suite, CounterexampleOncePerFailedIdentity) {
  auto r = run_suite(parse_suite(kSmall), {});
  EXPECT_EQ(r.exit_code(), 1);
  long failed = 0;
  for (const auto& j : r.jobs)
    for (const auto& id : j.identities) failed += !id.passed;
  EXPECT_EQ(failed, 1);
  EXPECT_EQ(count(emit_text(r), "COUNTEREXAMPLE"), failed);
  EXPECT_EQ(r.jobs[0].status, JobStatus::Pass);
  EXPECT_EQ(r.jobs[2].status, JobStatus::Fail);
}

TEST(Suite, DeterministicAcrossParallelism) {
  auto s = parse_suite(kSmall);
  auto a = run_suite(s, {1, std::nullopt, std::nullopt});
  auto b = run_suite(s, {4, std::nullopt, std::nullopt});
  EXPECT_EQ(emit_text(a), emit_text(b));
  auto ja = to_json(a), jb = to_json(b);
  for (auto* j : {&ja, &jb})
    for (auto& job : (*j)["jobs"]) job["seconds"] = 0;
  EXPECT_EQ(ja.dump(), jb.dump());
  EXPECT_EQ(emit_text(a), emit_text(a));
}

TEST(Suite, SeedAndCapOverrides) {
  auto s = parse_suite(kSmall);
  auto r = run_suite(s, {1, 17, 3});
  for (const auto& j : r.jobs) EXPECT_EQ(j.params["seed"], 17);
  EXPECT_EQ(r.jobs[0].algebra, "poly(1,1,3)");
}

TEST(Suite, FailuresCanBeRerunAlone) {
  auto s = parse_suite(kSmall);
  auto r = run_suite(s, {});
  const JobReport& bad = r.jobs[2];
  JobSpec again;
  again.name = bad.name;
  again.suite = bad.suite;
  again.params = bad.params;
  auto r2 = run_job(again, {});
  EXPECT_EQ(r2.status, JobStatus::Fail);
  EXPECT_EQ(emit_text(RunReport{"", {r2}, {}}).find("COUNTEREXAMPLE") != std::string::npos, true);
}

TEST(Suite, MutationJobsNeedTheirTargets) {
  auto s = parse_suite("jobs:\n  - {name: m, suite: mutation, targets: [missing]}\n");
  auto r = run_suite(s, {});
  EXPECT_EQ(r.exit_code(), 2);
}

TEST(Suite, ParseJobOverrides) {
  auto j = parse_job("", "verify-gbva", "<cli>", {"algebra=\"poly(1,1,3)\"", "samples=5"});
  EXPECT_EQ(j.name, "verify-gbva");
  EXPECT_EQ(j.params["samples"], 5);
  EXPECT_THROW(parse_job("", "verify-gbva", "<cli>", {"samples"}), ConfigError);
}

TEST(BundledSuites, ClassicalPasses) {
  auto r = run_suite_file(suite_path("classical-bv.yaml"), {2, std::nullopt, std::nullopt});
  EXPECT_EQ(r.exit_code(), 0) << emit_text(r);
}

TEST(BundledSuites, CorruptedFailsWithCounterexample) {
  auto r = run_suite_file(suite_path("corrupted.yaml"), {});
  EXPECT_EQ(r.exit_code(), 1);
  EXPECT_EQ(count(emit_text(r), "COUNTEREXAMPLE"), 1);
}

TEST(BundledSuites, EveryCriterionHasAJob) {
  auto s = load_suite(suite_path("acceptance.yaml"));
  std::set<int> seen;
  for (const auto& j : s.jobs) seen.insert(j.criterion);
  for (int c = 1; c <= 13; ++c) EXPECT_TRUE(seen.count(c)) << c;
}
