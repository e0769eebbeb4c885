#include <gtest/gtest.h>

#include <vector>

#include "mobmatch/assign.hpp"
#include "mobmatch/error.hpp"
#include "mobmatch/harness.hpp"
#include "mobmatch/instance_format.hpp"
#include "mobmatch/mechanism.hpp"
#include "mobmatch/model.hpp"
#include "oracle/oracle.hpp"

using namespace mobmatch;

namespace {

Money M(const char* s) { return Money::Parse(s); }
Proportion P(const char* s) { return Proportion::Parse(s); }

// Travelers given as (V, theta) on a single provider with cost scale c.
Instance OneProvider(std::vector<std::pair<const char*, const char*>> vt, const char* c,
                     int cap = 1) {
  std::vector<Traveler> ts;
  for (auto [v, th] : vt) ts.push_back(Traveler{"g", M(v), {P(th)}});
  return Instance(ts, {Provider{"p", cap, Proportion::One(), M(c)}}, {M("0"), M("100")});
}

Report TravelerReport(std::size_t i, const char* theta) {
  return Report{{AgentKind::kTraveler, i}, {P(theta)}};
}

std::vector<Report> With(const Instance& inst, Report r) {
  auto reports = truthful_reports(inst);
  for (auto& x : reports)
    if (x.agent == r.agent) x = r;
  return reports;
}

}  // namespace

TEST(Welfare, Exclusions) {
  const auto m = UtilityMatrix::FromRows({{M("5")}, {M("3")}});
  const std::vector<int> caps{1};
  EXPECT_EQ(gross_welfare(m, caps, {}, {}), M("5"));
  EXPECT_EQ(gross_welfare(m, caps, {0}, {}), M("3"));
  EXPECT_EQ(gross_welfare(m, caps, {}, {0}), M("0"));
  EXPECT_EQ(gross_welfare(m, caps, {0, 1}, {}), M("0"));
}

TEST(Clarke, SecondPriceCharges) {
  const Instance inst = OneProvider({{"5", "1"}, {"3", "1"}}, "0");
  EXPECT_EQ(clarke_charge_traveler(inst, 0), M("3"));
  EXPECT_EQ(clarke_charge_traveler(inst, 1), M("0"));
}

TEST(Clarke, UnmatchedNonPivotalPaysNothing) {
  const Instance inst = OneProvider({{"5", "1"}, {"3", "1"}, {"1", "1"}}, "0");
  EXPECT_EQ(clarke_charge_traveler(inst, 2), M("0"));
}

TEST(Clarke, LoneTravelerPaysNothingWithoutCost) {
  const Instance inst = OneProvider({{"4", "1"}}, "0");
  EXPECT_EQ(clarke_charge_traveler(inst, 0), M("0"));
}

TEST(Clarke, ProviderCompensationIsMarginalContribution) {
  std::vector<Traveler> ts{Traveler{"g", M("5"), {P("1"), P("0.6")}}};
  std::vector<Provider> ps{Provider{"a", 1, P("1"), M("0")}, Provider{"b", 1, P("1"), M("0")}};
  const Instance inst(ts, ps, {M("0"), M("100")});
  EXPECT_EQ(clarke_compensation_provider(inst, 0), M("2"));
  EXPECT_EQ(clarke_compensation_provider(inst, 1), M("0"));
}

TEST(Clarke, SoleProviderGetsEveryoneElsesWelfare) {
  const Instance inst = OneProvider({{"5", "1"}, {"4", "1"}}, "1", 2);
  // without it nobody travels; everyone else's gross welfare is 5 + 4
  EXPECT_EQ(clarke_compensation_provider(inst, 0), M("9"));
}

TEST(Mechanism, SecondPriceOutcome) {
  const Instance inst = OneProvider({{"5", "1"}, {"3", "1"}}, "0");
  const auto out = run_mechanism(inst, truthful_reports(inst));
  EXPECT_EQ(out.assignment.matches, (std::vector<Match>{0, std::nullopt}));
  EXPECT_EQ(out.traveler_charges, (std::vector<Money>{M("3"), M("0")}));
  EXPECT_EQ(out.traveler_utilities, (std::vector<Money>{M("2"), M("0")}));
  EXPECT_EQ(out.provider_compensations, (std::vector<Money>{M("5")}));
  EXPECT_EQ(out.provider_utilities, (std::vector<Money>{M("5")}));
  EXPECT_EQ(out.budget, M("-2"));
}

TEST(Mechanism, SinglePair) {
  const Instance inst = OneProvider({{"6", "1"}}, "0");
  const auto out = run_mechanism(inst, truthful_reports(inst));
  EXPECT_EQ(out.traveler_charges[0], M("0"));
  EXPECT_EQ(out.traveler_utilities[0], M("6"));
  // the provider is pivotal: its compensation is the traveler's value
  EXPECT_EQ(out.provider_compensations[0], M("6"));
}

TEST(Mechanism, NothingWorthMatching) {
  const Instance inst = OneProvider({{"1", "1"}, {"2", "0.5"}}, "3", 2);
  const auto out = run_mechanism(inst, truthful_reports(inst));
  EXPECT_EQ(out.assignment.num_matched(), 0u);
  for (Money t : out.traveler_charges) EXPECT_EQ(t, M("0"));
  for (Money t : out.provider_compensations) EXPECT_EQ(t, M("0"));
  for (Money u : out.traveler_utilities) EXPECT_EQ(u, M("0"));
  for (Money u : out.provider_utilities) EXPECT_EQ(u, M("0"));
  EXPECT_EQ(out.budget, M("0"));
}

TEST(Mechanism, UnderbidLosesTheSlot) {
  const Instance inst = OneProvider({{"5", "1"}, {"3", "1"}}, "0");
  const auto out = run_mechanism(inst, With(inst, TravelerReport(0, "0.5")));
  EXPECT_FALSE(out.assignment.matches[0].has_value());
  EXPECT_EQ(out.traveler_utilities[0], M("0"));
}

TEST(Mechanism, OverbidWinsButPaysTooMuch) {
  const Instance inst = OneProvider({{"5", "1"}, {"6", "0.5"}}, "0");
  const auto truthful = run_mechanism(inst, truthful_reports(inst));
  EXPECT_EQ(truthful.traveler_utilities[1], M("0"));
  const auto out = run_mechanism(inst, With(inst, TravelerReport(1, "1")));
  ASSERT_EQ(out.assignment.matches[1], std::optional<std::size_t>(0));
  EXPECT_EQ(out.traveler_charges[1], M("5"));
  EXPECT_EQ(out.traveler_utilities[1], M("-2"));
}

TEST(Mechanism, MatchesEnumerationOracle) {
  SuiteConfig cfg;
  for (std::size_t k = 0; k < 60; ++k) {
    const Instance inst = suite_instance(cfg, k);
    oracle::Grid v(inst.num_travelers(), std::vector<std::int64_t>(inst.num_providers()));
    std::vector<std::int64_t> c;
    for (std::size_t j = 0; j < inst.num_providers(); ++j) {
      c.push_back(cost(inst.provider(j)).micros());
      for (std::size_t i = 0; i < inst.num_travelers(); ++i)
        v[i][j] = valuation(inst.traveler(i), j).micros();
    }
    const auto ref = oracle::ClarkeByEnumeration(v, c, inst.capacities());
    const auto out = run_mechanism(inst, truthful_reports(inst));
    ASSERT_EQ(out.assignment.objective.micros(), ref.optimum.value) << k;
    for (std::size_t i = 0; i < inst.num_travelers(); ++i)
      ASSERT_EQ(out.traveler_charges[i].micros(), ref.charge[i]) << k << " traveler " << i;
    for (std::size_t j = 0; j < inst.num_providers(); ++j)
      ASSERT_EQ(out.provider_compensations[j].micros(), ref.compensation[j])
          << k << " provider " << j;
  }
}

TEST(Mechanism, EfficientOnReportedTypes) {
  SuiteConfig cfg;
  for (std::size_t k = 0; k < 50; ++k) {
    const Instance inst = suite_instance(cfg, k);
    auto reports = truthful_reports(inst);
    // shade every traveler's first predisposition to 0.5
    for (auto& r : reports)
      if (r.agent.kind == AgentKind::kTraveler) r.type[0] = P("0.5");
    const Market rep = reported_market(inst, reports);
    const auto out = run_mechanism(inst, reports);
    EXPECT_EQ(out.assignment.objective,
              solve_optimal_assignment(rep.payoffs(), rep.capacities).objective);
  }
}

TEST(Mechanism, Deterministic) {
  const Instance inst = suite_instance(SuiteConfig{}, 3);
  EXPECT_EQ(run_mechanism(inst, truthful_reports(inst)),
            run_mechanism(inst, truthful_reports(inst)));
}

TEST(Mechanism, BadReportsRejected) {
  const Instance inst = OneProvider({{"5", "1"}, {"3", "1"}}, "0");
  auto reports = truthful_reports(inst);
  reports.pop_back();
  EXPECT_THROW(run_mechanism(inst, reports), Error);
  reports = truthful_reports(inst);
  reports.push_back(reports.front());
  EXPECT_THROW(run_mechanism(inst, reports), Error);
  reports = truthful_reports(inst);
  reports[0].type.push_back(P("1"));
  EXPECT_THROW(run_mechanism(inst, reports), Error);
  reports = truthful_reports(inst);
  for (auto& r : reports)
    if (r.agent.kind == AgentKind::kProvider) r.type[0] = P("0");
  EXPECT_THROW(run_mechanism(inst, reports), Error);
}

TEST(Participation, DegenerateAndNegative) {
  const auto one = check_participation(OneProvider({{"4", "1"}}, "1"));
  EXPECT_EQ(one.violations, 0u);
  EXPECT_TRUE(one.efficient);
  EXPECT_GE(one.min_traveler_utility, M("0"));
  const auto none = check_participation(OneProvider({{"1", "1"}}, "3"));
  EXPECT_EQ(none.min_traveler_utility, M("0"));
  EXPECT_EQ(none.min_provider_utility, M("0"));
}

TEST(Participation, SeededSuiteHasNoViolations) {
  SuiteConfig cfg;
  cfg.instances = 60;
  const auto report = verify_participation(cfg);
  EXPECT_TRUE(report.ok());
  EXPECT_GE(report.min_utility, M("0"));
  EXPECT_GE(report.min_transfer, M("0"));
}

TEST(Participation, FourModesBundle) {
  const auto row = check_participation(load_instance("paper_siv"));
  EXPECT_EQ(row.violations, 0u);
  EXPECT_TRUE(row.efficient);
}

TEST(Truthfulness, TruthfulPointHasNoRegret) {
  const Instance inst = OneProvider({{"5", "1"}, {"3", "1"}}, "0");
  for (std::size_t i = 0; i < 2; ++i) {
    const auto r = verify_truthfulness(inst, {AgentKind::kTraveler, i}, 20);
    EXPECT_EQ(r.violations, 0u);
    EXPECT_EQ(r.max_regret, M("0"));
    EXPECT_EQ(r.grid_points, 21u);
  }
  const auto p = verify_truthfulness(inst, {AgentKind::kProvider, 0}, 20);
  EXPECT_EQ(p.violations, 0u);
  EXPECT_EQ(p.grid_points, 20u);
}

TEST(Truthfulness, SmallSuiteSweep) {
  SuiteConfig cfg;
  cfg.instances = 8;
  const auto sweep = sweep_truthfulness(cfg, 10);
  EXPECT_TRUE(sweep.ok());
  EXPECT_LE(sweep.max_regret, M("0"));
}

TEST(Truthfulness, RejectsBadGridAndOverride) {
  const Instance inst = OneProvider({{"5", "1"}}, "0");
  EXPECT_THROW(verify_truthfulness(inst, {AgentKind::kTraveler, 0}, 7), Error);
  EXPECT_THROW(verify_truthfulness(inst, {AgentKind::kTraveler, 3}, 20), Error);
  EXPECT_THROW(verify_truthfulness(load_instance("paper_siv"), {AgentKind::kTraveler, 0}, 20),
               Error);
}
