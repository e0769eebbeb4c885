#include <gtest/gtest.h>

#include <string>

#include "mobmatch/mobmatch.h"

namespace {

struct Inst {
  mm_instance* p = nullptr;
  ~Inst() { mm_instance_free(p); }
};
struct Sol {
  mm_solution* p = nullptr;
  ~Sol() { mm_solution_free(p); }
};
struct Text {
  mm_text* p = nullptr;
  ~Text() { mm_text_free(p); }
  std::string str() const { return {mm_text_data(p), mm_text_size(p)}; }
};

mm_status Parse(const std::string& s, Inst& out) {
  return mm_instance_parse(s.data(), s.size(), &out.p);
}

const std::string kTwoByOne =
    "version 1\nbounds 0 100\nprovider p 1 1 0\ntraveler a 5 1\ntraveler b 3 1\n";

}  // namespace

TEST(CApi, Version) { EXPECT_STREQ(mm_version(), "0.1.0"); }

TEST(CApi, SolveBundled) {
  Inst inst;
  ASSERT_EQ(mm_instance_load("paper_siv", &inst.p), MM_OK);
  EXPECT_EQ(mm_instance_travelers(inst.p), 20u);
  EXPECT_EQ(mm_instance_providers(inst.p), 4u);
  EXPECT_EQ(mm_instance_balanced(inst.p), 1);
  Sol sol;
  ASSERT_EQ(mm_solve(inst.p, &sol.p), MM_OK);
  EXPECT_EQ(mm_solution_has_dual(sol.p), 1);
  int64_t total = 0;
  for (size_t i = 0; i < 20; ++i) {
    int64_t j = -2, phi = 0;
    ASSERT_EQ(mm_solution_match(sol.p, i, &j), MM_OK);
    EXPECT_GE(j, 0);
    ASSERT_EQ(mm_solution_phi_micros(sol.p, i, &phi), MM_OK);
    total += phi;
  }
  const int caps[] = {1, 4, 5, 10};
  for (size_t j = 0; j < 4; ++j) {
    int64_t psi = 0;
    ASSERT_EQ(mm_solution_psi_micros(sol.p, j, &psi), MM_OK);
    total += caps[j] * psi;
  }
  EXPECT_EQ(total, mm_solution_objective_micros(sol.p));
  int64_t j = 0;
  EXPECT_EQ(mm_solution_match(sol.p, 20, &j), MM_ERR_INPUT);
}

TEST(CApi, TextReports) {
  Inst inst;
  ASSERT_EQ(Parse(kTwoByOne, inst), MM_OK);
  Sol sol;
  ASSERT_EQ(mm_solve(inst.p, &sol.p), MM_OK);
  EXPECT_EQ(mm_solution_objective_micros(sol.p), 5'000'000);
  Text report, csv;
  ASSERT_EQ(mm_solution_report(sol.p, &report.p), MM_OK);
  EXPECT_NE(report.str().find("objective 5.000000\n"), std::string::npos);
  ASSERT_EQ(mm_solution_csv(sol.p, &csv.p), MM_OK);
  EXPECT_EQ(csv.str().rfind("traveler,group,provider,payoff,phi,payment\n", 0), 0u);

  Text serialized;
  ASSERT_EQ(mm_instance_serialize(inst.p, &serialized.p), MM_OK);
  Inst again;
  ASSERT_EQ(Parse(serialized.str(), again), MM_OK);
}

TEST(CApi, OracleAgreesAndGuards) {
  Inst inst;
  ASSERT_EQ(Parse(kTwoByOne, inst), MM_OK);
  Sol a, b;
  ASSERT_EQ(mm_solve(inst.p, &a.p), MM_OK);
  ASSERT_EQ(mm_oracle(inst.p, &b.p), MM_OK);
  EXPECT_EQ(mm_solution_objective_micros(a.p), mm_solution_objective_micros(b.p));
  EXPECT_EQ(mm_solution_has_dual(b.p), 0);
  int64_t phi = 0;
  EXPECT_EQ(mm_solution_phi_micros(b.p, 0, &phi), MM_ERR_INPUT);
  Text csv;
  EXPECT_EQ(mm_solution_csv(b.p, &csv.p), MM_ERR_INPUT);

  Inst big;
  ASSERT_EQ(mm_instance_load("paper_siv", &big.p), MM_OK);
  Sol none;
  EXPECT_EQ(mm_oracle(big.p, &none.p), MM_ERR_INPUT);
  EXPECT_EQ(none.p, nullptr);
  EXPECT_NE(std::string(mm_last_error()).find("too-large"), std::string::npos);
}

TEST(CApi, ParseErrorsAreInputErrors) {
  Inst inst;
  EXPECT_EQ(Parse("version 1\nbounds 0 1\nprovider a 1 1 0\ntraveler t 1 0.1234567\n", inst),
            MM_ERR_INPUT);
  EXPECT_NE(std::string(mm_last_error()).find("line 4"), std::string::npos);
  EXPECT_EQ(mm_instance_parse(nullptr, 0, &inst.p), MM_ERR_INPUT);
  EXPECT_EQ(mm_instance_load("/nonexistent/file.inst", &inst.p), MM_ERR_INPUT);
}

TEST(CApi, AuditStatus) {
  Inst inst;
  ASSERT_EQ(Parse(kTwoByOne, inst), MM_OK);
  const std::string good = "match 0 0\nmatch 1 -\nphi 0 2\nphi 1 0\npsi 0 3\n";
  Text ok;
  EXPECT_EQ(mm_audit(inst.p, good.data(), good.size(), &ok.p), MM_OK);
  EXPECT_EQ(ok.str().rfind("stable true\n", 0), 0u);
  const std::string bad = "match 0 0\nmatch 1 -\nphi 0 1\nphi 1 0\npsi 0 3\n";
  Text viol;
  EXPECT_EQ(mm_audit(inst.p, bad.data(), bad.size(), &viol.p), MM_ERR_VIOLATION);
  EXPECT_NE(viol.str().find("violation stability blocking-pair traveler=0 provider=0"),
            std::string::npos);
  const std::string broken = "match 0 0\n";
  Text none;
  EXPECT_EQ(mm_audit(inst.p, broken.data(), broken.size(), &none.p), MM_ERR_INPUT);
}

TEST(CApi, MechanismWithPartialReports) {
  Inst inst;
  ASSERT_EQ(Parse(kTwoByOne, inst), MM_OK);
  Text truthful;
  ASSERT_EQ(mm_mechanism(inst.p, nullptr, 0, &truthful.p), MM_OK);
  EXPECT_NE(truthful.str().find("charge 0 3.000000\n"), std::string::npos);
  EXPECT_NE(truthful.str().find("budget -2.000000\n"), std::string::npos);
  const std::string shade = "traveler 0 0.5\n";
  Text shaded;
  ASSERT_EQ(mm_mechanism(inst.p, shade.data(), shade.size(), &shaded.p), MM_OK);
  EXPECT_NE(shaded.str().find("match 0 -\n"), std::string::npos);
  EXPECT_NE(shaded.str().find("traveler_utility 0 0.000000\n"), std::string::npos);
}

TEST(CApi, GenerateDeterministic) {
  mm_generator_config cfg;
  mm_generator_config_init(&cfg);
  cfg.balanced = 1;
  Inst a, b;
  ASSERT_EQ(mm_instance_generate(&cfg, &a.p), MM_OK);
  ASSERT_EQ(mm_instance_generate(&cfg, &b.p), MM_OK);
  EXPECT_EQ(mm_instance_balanced(a.p), 1);
  Text ta, tb;
  ASSERT_EQ(mm_instance_serialize(a.p, &ta.p), MM_OK);
  ASSERT_EQ(mm_instance_serialize(b.p, &tb.p), MM_OK);
  EXPECT_EQ(ta.str(), tb.str());
  cfg.providers = 0;
  Inst c;
  EXPECT_EQ(mm_instance_generate(&cfg, &c.p), MM_ERR_INPUT);
}

TEST(CApi, Sweeps) {
  mm_suite_config cfg;
  mm_suite_config_init(&cfg);
  cfg.instances = 10;
  Text part;
  size_t violations = 99;
  EXPECT_EQ(mm_verify_participation(&cfg, &part.p, &violations), MM_OK);
  EXPECT_EQ(violations, 0u);
  Text truth;
  cfg.instances = 3;
  EXPECT_EQ(mm_sweep_truthfulness(&cfg, 5, &truth.p, &violations), MM_OK);
  EXPECT_EQ(violations, 0u);
  Text bad;
  EXPECT_EQ(mm_sweep_truthfulness(&cfg, 7, &bad.p, &violations), MM_ERR_INPUT);
  Inst inst;
  ASSERT_EQ(Parse(kTwoByOne, inst), MM_OK);
  Text one;
  EXPECT_EQ(mm_sweep_truthfulness_instance(inst.p, 4, &one.p, &violations), MM_OK);
}
