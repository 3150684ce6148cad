#include <gtest/gtest.h>

#include "qck/acceptance.hpp"
#include "qck/errors.hpp"

using namespace qck;

TEST(Acceptance, SuiteFilters) {
  EXPECT_EQ(suite_criteria("all").size(), 11u);
  EXPECT_EQ(suite_criteria("bochner"), (std::vector<int>{6, 9, 10}));
  EXPECT_EQ(suite_criteria("sasaki"), (std::vector<int>{7, 8}));
  EXPECT_THROW(suite_criteria("everything"), ConfigError);
  EXPECT_THROW(run_criterion(12), ConfigError);
}

TEST(Acceptance, ResultCarriesMetricsAndBudget) {
  CriterionResult r = run_criterion(9);
  EXPECT_TRUE(r.pass) << r.detail;
  EXPECT_EQ(r.budget, 5.0);
  ASSERT_TRUE(r.metrics.contains("a.bochner_condition"));
  EXPECT_LT(r.metrics["a.bochner_condition"]["worst"].get<double>(), 1e-10);
  auto j = r.to_json();
  EXPECT_EQ(j["id"], 9);
  EXPECT_EQ(format_line(r).rfind("[PASS]", 0), 0u);
}

TEST(Acceptance, FailureLineShowsDetail) {
  CriterionResult r;
  r.id = 3;
  r.name = "x";
  r.budget = 1.0;
  r.detail = "residual = 1e-3";
  EXPECT_NE(format_line(r).find("[FAIL]"), std::string::npos);
  EXPECT_NE(format_line(r).find("residual"), std::string::npos);
}
