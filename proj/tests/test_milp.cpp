#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hclp/lp_io.hpp"
#include "hclp/milp.hpp"
#include "hclp/oracle.hpp"
#include "hclp/solver.hpp"
#include "random_instances.hpp"

namespace hclp {
namespace {

using namespace milp;
namespace five = testing::five;

bool has_family(const std::vector<std::string>& violations, int family) {
  const std::string tag = "(family " + std::to_string(family) + ")";
  return std::any_of(violations.begin(), violations.end(), [&](const std::string& v) {
    return v.find(tag) != std::string::npos;
  });
}

TEST(ComputeBounds, Examples) {
  const Instance dessert = testing::load_fixture("dessert.hclp");
  EXPECT_EQ(compute_bounds(dessert.matrix, dessert.statements[0]), (Bounds{-7, 5}));
  const Instance inst = testing::load_fixture("five_evaluations.hclp");
  EXPECT_EQ(compute_bounds(inst.matrix, inst.statements[2]), (Bounds{-1, 1}));
}

TEST(BuildFormulation, DessertCounts) {
  const Instance inst = testing::load_fixture("dessert.hclp");
  const auto f = build_formulation(inst.matrix, inst.statements, 3);
  EXPECT_EQ(f.variables().size(), 33u);
  EXPECT_EQ(f.constraints().size(), 49u);
  EXPECT_EQ(variable_count(3, 2), 33u);
  EXPECT_EQ(constraint_count(3, 2, 1), 49u);
}

TEST(BuildFormulation, FiveEvaluationCounts) {
  const Instance inst = testing::load_fixture("five_evaluations.hclp");
  const auto f = build_formulation(inst.matrix, inst.statements, 3);
  EXPECT_EQ(f.variables().size(), 85u);
  EXPECT_EQ(f.constraints().size(), 116u);
}

TEST(BuildFormulation, SingleEvaluationNoStatements) {
  const EvaluationMatrix e(1, 2, {3, 4});
  const auto f = build_formulation(e, {}, 1);
  EXPECT_EQ(f.variables().size(), 1u);
  EXPECT_EQ(f.constraints().size(), 2u);
  EXPECT_TRUE(check_assignment(f, {{"y_0_0", 1}}).empty());
  EXPECT_TRUE(check_assignment(f, {{"y_0_0", 0}}).empty());
}

TEST(BuildFormulation, RejectsNonAdditiveCombiner) {
  struct ShiftedProduct {
    Value identity() const { return 0; }
    Value operator()(Value x, Value y) const { return x + y + x * y; }
  };
  const Instance inst = testing::load_fixture("dessert.hclp");
  EXPECT_THROW(build_formulation(inst.matrix, inst.statements, 3, ShiftedProduct{}),
               UnsupportedOperation);
  EXPECT_THROW(compute_bounds(inst.matrix, inst.statements[0], ShiftedProduct{}),
               UnsupportedOperation);
  EXPECT_THROW(build_formulation(inst.matrix, inst.statements, 0), InputError);
}

TEST(WriteLp, DessertFragments) {
  const Instance inst = testing::load_fixture("dessert.hclp");
  const std::string lp = write_lp(build_formulation(inst.matrix, inst.statements, 3));
  EXPECT_NE(lp.find("Minimize\n obj:\nSubject To\n"), std::string::npos);
  EXPECT_NE(lp.find(" c0: y_0_0 + y_0_1 + y_0_2 <= 1\n"), std::string::npos);
  EXPECT_NE(lp.find(" c1: y_0_0 + y_1_0 + y_2_0 <= 3\n"), std::string::npos);
  // IC - AP per evaluation: c 11-10, s 16-23, f 24-20.
  EXPECT_NE(lp.find(" c6: y_0_0 - 7 y_1_0 + 4 y_2_0 - x_0_0 = 0\n"), std::string::npos);
  EXPECT_NE(lp.find(" -7 <= x_0_0 <= 5\n"), std::string::npos);
  EXPECT_NE(lp.find("Binary\n y_0_0\n"), std::string::npos);
  EXPECT_NE(lp.find("General\n x_0_0\n"), std::string::npos);
  EXPECT_EQ(lp.substr(lp.size() - 4), "End\n");
}

TEST(WriteLp, LongRowsWrap) {
  const EvaluationMatrix e(10, 2, std::vector<Value>(20, 1));
  const std::string lp = write_lp(build_formulation(e, {}, 2));
  EXPECT_NE(lp.find(" c0: y_0_0 + y_0_1 + y_0_2 + y_0_3 + y_0_4 + y_0_5 + y_0_6 + y_0_7\n"
                    "   + y_0_8 + y_0_9 <= 1\n"),
            std::string::npos);
}

TEST(ReadLp, RoundTrips) {
  for (const char* name : {"dessert.hclp", "five_evaluations.hclp", "no_statements.hclp"}) {
    const Instance inst = testing::load_fixture(name);
    const auto f = build_formulation(inst.matrix, inst.statements, 2);
    const std::string lp = write_lp(f);
    const auto back = read_lp(lp);
    EXPECT_TRUE(structurally_equal(f, back)) << name;
    EXPECT_EQ(write_lp(back), lp) << name;
  }
  for (const auto& [inst, t] : testing::small_cases(50, 41)) {
    const auto f = build_formulation(inst.matrix, inst.statements, t);
    ASSERT_TRUE(structurally_equal(f, read_lp(write_lp(f))));
  }
}

TEST(ReadLp, Errors) {
  EXPECT_THROW(read_lp("Minimize\n obj:\nSubject To\n c0: y <= 1\nEnd\n"), LpParseError);
  EXPECT_THROW(read_lp("Minimize\n obj:\nSubject To\n c0: y <=\nEnd\n"), LpParseError);
  EXPECT_THROW(read_lp("Bounds\n 0 <= y <= 1\nEnd\n"), LpParseError);
  EXPECT_THROW(read_lp("Whatever\n"), LpParseError);
  EXPECT_THROW(read_lp(" stray\n"), LpParseError);
  EXPECT_NO_THROW(read_lp("Minimize\n obj:\nSubject To\n c0: y <= 1\nBounds\n"
                          " 0 <= y <= 1\nBinary\n y\nEnd\n"));
}

TEST(AssignmentFromModel, DessertWitness) {
  const Instance inst = testing::load_fixture("dessert.hclp");
  const HclpModel h = HclpModel::singletons({1, 2, 0});
  const auto f = build_formulation(inst.matrix, inst.statements, 3);
  const auto a = assignment_from_model(h, inst.matrix, inst.statements, 3);
  EXPECT_EQ(a.at("y_1_0"), 1);
  EXPECT_EQ(a.at("y_2_1"), 1);
  EXPECT_EQ(a.at("y_0_2"), 1);
  EXPECT_EQ(a.at("y_0_0"), 0);
  EXPECT_EQ(a.at("x_0_0"), -7);
  EXPECT_EQ(a.at("slt_0_0"), 1);
  EXPECT_TRUE(check_assignment(f, a).empty());
}

TEST(AssignmentFromModel, EmptyModelNoStatements) {
  const Instance inst = testing::load_fixture("no_statements.hclp");
  const auto a = assignment_from_model(HclpModel{}, inst.matrix, {}, 1);
  EXPECT_EQ(a.size(), inst.evaluations() * inst.evaluations());
  for (const auto& [name, v] : a) EXPECT_EQ(v, 0) << name;
}

TEST(AssignmentFromModel, FiveEvaluationsPartialModel) {
  const Instance inst = testing::load_fixture("five_evaluations.hclp");
  const HclpModel h{{five::c2}, {five::c1}, {five::c3, five::c5}};
  const auto a = assignment_from_model(h, inst.matrix, inst.statements, 3);
  EXPECT_EQ(a.at(x_name(2, 1)), 0);
  EXPECT_EQ(a.at(seq_name(2, 1)), 1);
  // Gamma is inconsistent, so the model breaks (9) for gamma < delta.
  const auto v = check_assignment(build_formulation(inst.matrix, inst.statements, 3), a);
  EXPECT_FALSE(v.empty());
}

TEST(CheckAssignment, ForcedViolations) {
  const Instance inst = testing::load_fixture("dessert.hclp");
  const auto f = build_formulation(inst.matrix, inst.statements, 3);
  const auto good = assignment_from_model(HclpModel::singletons({1, 2, 0}),
                                          inst.matrix, inst.statements, 3);

  auto twice = good;
  twice["y_1_1"] = 1;
  EXPECT_TRUE(has_family(check_assignment(f, twice), 1));

  auto no_support = good;
  for (std::size_t j = 0; j < 3; ++j) no_support[slt_name(j, 0)] = 0;
  EXPECT_TRUE(has_family(check_assignment(f, no_support), 9));

  auto out_of_bounds = good;
  out_of_bounds["x_0_0"] = -8;
  const auto v = check_assignment(f, out_of_bounds);
  EXPECT_TRUE(std::any_of(v.begin(), v.end(), [](const std::string& s) {
    return s.rfind("bound x_0_0", 0) == 0;
  }));

  auto missing = good;
  missing.erase("seq_2_1");
  EXPECT_THROW(check_assignment(f, missing), InputError);
}

TEST(CheckAssignment, TooLargeLevelBreaksFamilyOne) {
  const Instance inst = testing::load_fixture("dessert.hclp");
  const auto f = build_formulation(inst.matrix, inst.statements, 1);
  auto a = assignment_from_model(HclpModel{{1, 2}, {0}}, inst.matrix,
                                 inst.statements, 2);
  EXPECT_TRUE(has_family(check_assignment(f, a), 1));
}

// Every model of a small instance: the derived assignment is feasible iff
// the model satisfies Gamma.
TEST(Properties, FeasibleExactlyForSatisfyingModels) {
  std::size_t feasible = 0;
  for (const auto& [inst, t] : testing::small_cases(40, 55)) {
    if (inst.evaluations() > 5) continue;
    const auto& e = inst.matrix;
    const auto f = build_formulation(e, inst.statements, t);
    for_each_model(e.all(), t, [&](const HclpModel& h) {
      const auto v = check_assignment(f, assignment_from_model(h, e, inst.statements, t));
      const bool sat = satisfies_all(h, inst.statements, e);
      EXPECT_EQ(v.empty(), sat) << serialize(inst) << to_string(h);
      if (sat) ++feasible;
      return false;
    });
  }
  EXPECT_GT(feasible, 0u);
}

TEST(Properties, WitnessRoundTripAndCounts) {
  for (const auto& [inst, t] : testing::small_cases(200, 66)) {
    const auto& e = inst.matrix;
    const auto f = build_formulation(e, inst.statements, t);
    const std::size_t n = e.evaluations();
    const std::size_t g = inst.statements.size();
    ASSERT_EQ(f.variables().size(), variable_count(n, g));
    ASSERT_EQ(f.constraints().size(), constraint_count(n, g, inst.strict_count()));
    SearchConfig cfg;
    cfg.t = t;
    const auto r = pc_check(e, inst.statements, cfg);
    if (!r.consistent()) continue;
    const auto a = assignment_from_model(*r.witness, e, inst.statements, t);
    const auto v = check_assignment(f, a);
    ASSERT_TRUE(v.empty()) << serialize(inst) << v.front();
  }
}

TEST(Properties, LevelDifferencesStayWithinBounds) {
  for (const auto& [inst, t] : testing::small_cases(60, 88)) {
    const auto& e = inst.matrix;
    if (e.evaluations() > 5) continue;
    std::vector<Bounds> bounds;
    for (const auto& phi : inst.statements) bounds.push_back(compute_bounds(e, phi));
    for_each_model(e.all(), t, [&](const HclpModel& h) {
      const auto a = assignment_from_model(h, e, inst.statements, t);
      for (std::size_t p = 0; p < bounds.size(); ++p) {
        for (std::size_t j = 0; j < e.evaluations(); ++j) {
          const Value x = a.at(x_name(j, p));
          EXPECT_LE(bounds[p].lo, x);
          EXPECT_LE(x, bounds[p].hi);
        }
      }
      return false;
    });
  }
}

TEST(Properties, WriterIsDeterministic) {
  for (const auto& [inst, t] : testing::small_cases(20, 3)) {
    EXPECT_EQ(write_lp(build_formulation(inst.matrix, inst.statements, t)),
              write_lp(build_formulation(inst.matrix, inst.statements, t)));
  }
}

}  // namespace
}  // namespace hclp
