#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace bdt;
using namespace bdt::test;

namespace {

const char* kWeyl1 = R"([variables]
x = x
z = z
[kernel exp]
symbols = E
symmetric = yes
D[x] E = z*E   # exponential
D[z] E = x*E
[system W]
l : z -> D[x]
[system W']
block = z
m : x -> D[z]
[pair P]
primal = W
dual = W'
kernel = exp
)";

Report run(const std::string& tasks, RunOptions opt = {}) {
  return run_session(parse_session(std::string(kWeyl1) + "[tasks]\n" + tasks), opt);
}

template <class E>
E caught(const std::function<void()>& f) {
  try {
    f();
  } catch (const E& e) {
    return e;
  }
  throw std::runtime_error("nothing thrown");
}

}  // namespace

TEST(ParseExpression, Examples) {
  auto r = xz({"x1", "x2"});
  DiffOperator lf = op("D[x1]^2 + D[x2]^2 - x2", r);
  EXPECT_EQ(lf, DiffOperator::derivative(r, Block::x, 0, 2) + DiffOperator::derivative(r, Block::x, 1, 2) -
                    DiffOperator::function(r, Block::x, RationalFunction::variable(r, 1)));
  EXPECT_EQ(fn("(x1-x2)^-1", r), RationalFunction::fraction(Polynomial(1).with_registry(r), poly("x1 - x2", r)));
  auto e = caught<ParseError>([&] { op("D[x1", r); });
  EXPECT_EQ(e.column(), 5u);
  EXPECT_THROW(op("y + 1", r), ParseError);
  EXPECT_THROW(op("D[x1]^-1", r), ParseError);
}

TEST(SessionParser, SectionsAndComments) {
  Session s = parse_session(std::string(kWeyl1) + "[session]\nname = demo\nmax_order = 20\n[tasks]\nverify K = x; L = D[x]; Lt = D[x] # c\n");
  EXPECT_EQ(s.name, "demo");
  EXPECT_EQ(*s.max_order, 20);
  ASSERT_EQ(s.kernels.size(), 1u);
  EXPECT_TRUE(s.kernels[0].symmetric);
  EXPECT_EQ(s.kernels[0].rules.size(), 2u);
  ASSERT_EQ(s.systems.size(), 2u);
  EXPECT_EQ(s.systems[1].block, "z");
  ASSERT_EQ(s.tasks.size(), 1u);
  EXPECT_EQ(s.tasks[0].find("Lt")->text, "D[x]");
  EXPECT_EQ(s.tasks[0].line, 22u);
}

TEST(SessionParser, ErrorsCarryPositions) {
  auto e1 = caught<ParseError>([] { parse_session("[variables]\nx = x\n[bogus]\n"); });
  EXPECT_EQ(e1.line(), 3u);
  auto e2 = caught<ParseError>([] { parse_session("x = 1\n"); });
  EXPECT_EQ(e2.line(), 1u);
  auto e3 = caught<ParseError>([] { parse_session("[tasks]\nverify K = 1; K = 2\n"); });
  EXPECT_EQ(e3.line(), 2u);
  EXPECT_EQ(e3.column(), 15u);
  // expression errors inside a task abort that task only
  Report r = run_session(parse_session("[variables]\nx = x\n[tasks]\nverify K = D[x; L = 1; Lt = 1\n"));
  EXPECT_EQ(r.exit_code(), ExitCode::invalid_input);
  EXPECT_NE(r.tasks.at(0).error.find("line 4, column"), std::string::npos) << r.tasks.at(0).error;
}

TEST(Runner, EmptySession) {
  Report r = run_session(parse_session(kWeyl1));
  EXPECT_TRUE(r.tasks.empty());
  EXPECT_EQ(r.exit_code(), ExitCode::ok);
}

TEST(Runner, FailingCertificatePrintsDefect) {
  Report r = run("verify K = x; L = D[x]; Lt = D[x]\n");
  ASSERT_EQ(r.tasks.size(), 1u);
  EXPECT_EQ(r.exit_code(), ExitCode::certificate_failure);
  EXPECT_NE(r.tasks[0].certificates[0].detail.find("defect"), std::string::npos);
  EXPECT_NE(to_text(r).find("FAIL"), std::string::npos);
}

TEST(Runner, TransformAndRepair) {
  Report r = run(
      "transform pair = P; f = l; g = m; repair = P1; expect.T0 = D[x]^2 - 2/x*D[x]\n"
      "transform pair = P1; f = T0; g = U0; prefix = V; dual_prefix = Y\n",
      {1, 24, std::nullopt});
  ASSERT_EQ(r.tasks.size(), 2u);
  for (const auto& t : r.tasks) EXPECT_TRUE(t.passed()) << to_text(r);
  EXPECT_EQ(r.exit_code(), ExitCode::ok);
}

TEST(Runner, ResourceLimitExitCode) {
  Report r = run("transform pair = P; f = l^3; g = m^3\n", {1, 4, std::nullopt});
  EXPECT_EQ(r.exit_code(), ExitCode::resource_limit);
  EXPECT_NE(r.tasks[0].error.find("exceeds the limit"), std::string::npos);
}

TEST(Runner, InvalidTaskInputExitCode) {
  Report r = run("divide K = D[x]; L = x; pivot = z1\n");
  EXPECT_EQ(r.exit_code(), ExitCode::invalid_input);
  EXPECT_THROW(run("duality pair = Q\n"), ParseError);
  EXPECT_THROW(run("frobnicate x = 1\n"), ParseError);
}

TEST(Runner, VanishingControl) {
  Report r = run("vanishing L = D[x]^2 + x^3; g = x; max = 8; expect = nonterminating\nvanishing pair = P; f = l; g = m\n");
  EXPECT_EQ(r.exit_code(), ExitCode::ok) << to_text(r);
}

TEST(Runner, KernelRulesMustBeLinear) {
  std::string text = kWeyl1;
  text.replace(text.find("D[x] E = z*E"), 12, "D[x] E = z*E^2");
  EXPECT_THROW(run_session(parse_session(text)), ParseError);
}

TEST(Runner, DeterministicJson) {
  const std::string tasks = "duality pair = P; count = 30; length = 4\ntransform pair = P; f = l^2; g = m\n";
  ReportFormat fmt{false};
  std::string a = to_json(run(tasks, {7, std::nullopt, std::nullopt}), fmt).dump();
  std::string b = to_json(run(tasks, {7, std::nullopt, std::nullopt}), fmt).dump();
  EXPECT_EQ(a, b);
  auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j["seed"], 7);
  EXPECT_EQ(j["tasks"][1]["kind"], "transform");
  EXPECT_TRUE(j["tasks"][1].contains("certificates"));
  EXPECT_EQ(j["tasks"][1]["millis"], 0);
}

TEST(Builtin, NamesAndErrors) {
  auto names = builtin_names();
  EXPECT_EQ(names, (std::vector<std::string>{"weyl-n", "airy-product", "cm3", "bk", "sec5-example1", "cm3-iterated"}));
  for (const auto& n : names) EXPECT_NO_THROW(builtin_example(n)) << n;
  try {
    builtin_example("nope");
    FAIL();
  } catch (const ValidationError& e) {
    for (const auto& n : names) EXPECT_NE(std::string(e.what()).find(n), std::string::npos);
  }
}

TEST(Builtin, Cm3VerifiesStandardHamiltonian) {
  Session s = builtin_example("cm3");
  std::map<std::string, std::string> defs;
  for (const auto& [name, text] : s.defines) defs[name] = text.text;
  EXPECT_NE(defs["L2"].find("- 4*((x1-x2)^-2"), std::string::npos);
  Report r = run_session(s);
  EXPECT_EQ(r.tasks[0].task, "standard Hamiltonian");
  EXPECT_TRUE(r.tasks[0].certificates[0].passed);
  EXPECT_EQ(r.exit_code(), ExitCode::ok);
}

TEST(Builtin, BkDeclaresTauAndQ) {
  Session s = builtin_example("bk");
  std::map<std::string, std::string> defs;
  for (const auto& [name, text] : s.defines) defs[name] = text.text;
  EXPECT_EQ(defs["tau"], "x1^2 - x2");
  EXPECT_EQ(defs["Lq"], "D[x1]*D[x2] - lambda");
  EXPECT_EQ(s.params, std::vector<std::string>{"lambda"});
  std::vector<std::string> labels;
  for (const auto& t : s.tasks)
    if (const auto* l = t.find("label")) labels.push_back(l->text);
  EXPECT_NE(std::find(labels.begin(), labels.end(), "x2 q^3"), labels.end());
}

TEST(Runner, LowestSideSkipsFullTransforms) {
  Report r = run("transform pair = P; f = l; g = m; side = lowest\n");
  ASSERT_EQ(r.exit_code(), ExitCode::ok) << to_text(r);
  std::vector<std::string> names;
  for (const auto& c : r.tasks[0].certificates) names.push_back(c.name);
  EXPECT_NE(std::find(names.begin(), names.end(), "lowest intertwining"), names.end());
  EXPECT_EQ(std::find(names.begin(), names.end(), "primal commutativity"), names.end());
  EXPECT_EQ(std::find(names.begin(), names.end(), "dual commutativity"), names.end());
}
