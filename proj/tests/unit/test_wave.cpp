#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace bdt;
using namespace bdt::test;

namespace {

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

WordPoly random_word(Random& rnd, const std::vector<std::string>& letters, int length) {
  WordPoly w;
  for (int t = rnd.integer(1, 3); t > 0; --t) {
    Word word;
    for (int l = rnd.integer(0, length); l > 0; --l) word.push_back(letters[rnd.integer(0, static_cast<int>(letters.size()) - 1)]);
    w += WordPoly::word(word, RationalFunction(rnd.integer(1, 5) * (rnd.integer(0, 1) ? 1 : -1)));
  }
  return w;
}

}  // namespace

TEST(Kernel, ValidDefinitions) {
  auto r = xz({"x1", "x2"}, {"z1", "z2"});
  EXPECT_NO_THROW(exp_kernel(r));
  EXPECT_NO_THROW(airy_kernel(r));
  EXPECT_TRUE(airy_kernel(r)->symmetric());
}

TEST(Kernel, RejectsBadRules) {
  auto r = xz({"x1"}, {"z1"});
  KernelRules rules{{{"E", "x1"}, {{"F", fn("1", r)}}}, {{"E", "z1"}, {{"E", fn("x1", r)}}}};
  EXPECT_NE(error_of([&] { KernelBasis::define(r, "k", {"E"}, rules, false); }).find("basis not closed"), std::string::npos);

  KernelRules missing{{{"E", "x1"}, {{"E", fn("z1", r)}}}};
  EXPECT_NE(error_of([&] { KernelBasis::define(r, "k", {"E"}, missing, false); }).find("no rule"), std::string::npos);

  // D[x1] D[z1] E = (1 + x1 z1) E but D[z1] D[x1] E = x1^2 E
  KernelRules mixed{{{"E", "x1"}, {{"E", fn("z1", r)}}}, {{"E", "z1"}, {{"E", fn("x1^2", r)}}}};
  EXPECT_NE(error_of([&] { KernelBasis::define(r, "k", {"E"}, mixed, false); }).find("mixed partials"), std::string::npos);

  auto r2 = xz({"x1"}, {"z1"});
  KernelRules lopsided{{{"E", "x1"}, {{"E", fn("2*z1", r2)}}}, {{"E", "z1"}, {{"E", fn("2*x1", r2)}}}};
  EXPECT_NO_THROW(KernelBasis::define(r2, "k", {"E"}, lopsided, true));
  KernelRules asym{{{"E", "x1"}, {{"E", fn("1", r2)}}}, {{"E", "z1"}, {{"E", fn("2", r2)}}}};
  EXPECT_THROW(KernelBasis::define(r2, "k", {"E"}, asym, true), ValidationError);
}

TEST(ApplyOperator, Examples) {
  auto r = xz({"x1", "x2"}, {"z1", "z2"});
  WaveFunction e = WaveFunction::seed(exp_kernel(r));
  EXPECT_EQ(apply_operator(op("D[x1]", r), e), e.scaled(fn("z1", r)));
  WaveFunction a = WaveFunction::seed(airy_kernel(r));
  EXPECT_EQ(apply_operator(op("D[x2]^2 - x2", r), a), a.scaled(fn("z2", r)));
  auto r1 = xz({"x"}, {"z"});
  WaveFunction e1 = WaveFunction::seed(exp_kernel(r1));
  EXPECT_EQ(apply_operator(op("x*D[x] - 1", r1), e1), e1.scaled(fn("x*z - 1", r1)));
}

TEST(CheckEigen, Examples) {
  auto r = xz({"x1", "x2"}, {"z1", "z2"});
  WaveFunction e = WaveFunction::seed(exp_kernel(r));
  EXPECT_TRUE(check_eigen(op("D[x1]^2 + D[x2]^2", r), e, fn("z1^2 + z2^2", r)));
  EXPECT_FALSE(check_eigen(op("D[x1]", r), e, fn("z2", r)));
  EXPECT_THROW(check_eigen(op("D[x1]", r), e, fn("x1", r)), ValidationError);
}

TEST(CheckEigen, CalogeroMoser) {
  auto r = xz({"x1", "x2", "x3"}, {"z1", "z2", "z3"});
  DiffOperator k = op(
      "(D[x1]-D[x2])*(D[x1]-D[x3])*(D[x2]-D[x3]) - 2*(x1-x2)^-1*(D[x1]-D[x3])*(D[x2]-D[x3]) - 2*(x1-x3)^-1*(D[x1]-D[x2])*(D[x2]-D[x3]) - 2*(x2-x3)^-1*(D[x1]-D[x2])*(D[x1]-D[x3]) + 4*(x2-x3)^-1*(x1-x3)^-1*(D[x1]-D[x2]) + 4*(x1-x3)^-1*(x1-x2)^-1*(D[x2]-D[x3]) + 4*(x1-x2)^-1*(x2-x3)^-1*(D[x1]-D[x3]) - 12*(x1-x2)^-1*(x1-x3)^-1*(x2-x3)^-1",
      r);
  DiffOperator h2 = op("D[x1]^2 + D[x2]^2 + D[x3]^2 - 4*((x1-x2)^-2 + (x1-x3)^-2 + (x2-x3)^-2)", r);
  WaveFunction psi = apply_operator(k, WaveFunction::seed(exp_kernel(r)));
  EXPECT_TRUE(check_eigen(h2, psi, fn("z1^2 + z2^2 + z3^2", r)));
}

TEST(CheckDuality, Examples) {
  auto r = xz({"x1", "x2"}, {"z1", "z2"});
  auto p = weyl_pair(r);
  EXPECT_TRUE(check_duality(WordPoly::letter("l2"), p.table, p.psi));
  WordPoly w = WordPoly::word({"l1", "m1"});
  EXPECT_TRUE(check_duality(w, p.table, p.psi));
  EXPECT_EQ(apply_word(w, p.table, Block::x, p.psi), p.psi.scaled(fn("1 + x1*z1", r)));

  GeneratorTable bad;
  bad.add({"m1", op("x1", r), "m1'", op("D[z2]", r, Block::z)});
  EXPECT_FALSE(check_duality(WordPoly::letter("m1"), bad, p.psi));
}

TEST(CheckDuality, RandomWords) {
  auto r = xz({"x1", "x2"}, {"z1", "z2"});
  Random rnd(31);
  for (const auto& p : {weyl_pair(r), airy_pair(r)}) {
    std::vector<std::string> letters;
    for (const auto& e : p.table.entries()) letters.push_back(e.name);
    for (int i = 0; i < 50; ++i) ASSERT_TRUE(check_duality(random_word(rnd, letters, 4), p.table, p.psi));
  }
}

TEST(ExchangeXZ, SwapsCoefficients) {
  auto r = xz({"x1", "x2"}, {"z1", "z2"});
  WaveFunction e = WaveFunction::seed(exp_kernel(r));
  EXPECT_EQ(exchange_xz(e.scaled(fn("x1*z2", r))), e.scaled(fn("z1*x2", r)));
  auto r1 = xz({"x"}, {"z"});
  WaveFunction e1 = WaveFunction::seed(exp_kernel(r1));
  WaveFunction k = apply_operator(op("x*D[x] - 1", r1), e1);
  EXPECT_EQ(exchange_xz(k), k);
}
