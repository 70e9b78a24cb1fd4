#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace bdt;
using namespace bdt::test;

namespace {

void expect_all_pass(const TransformResult& t) {
  for (const auto& c : t.certificates) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

const Certificate& cert(const TransformResult& t, const std::string& name) {
  for (const auto& c : t.certificates)
    if (c.name == name) return c;
  throw std::runtime_error("no certificate " + name);
}

}  // namespace

TEST(Localize, AdmitsDenominators) {
  auto r = xz({"x1", "x2", "x3"}, {"z1", "z2", "z3"});
  QuantumSystem s{"S", r, Block::x, {{"h", poly("z1", r), op("D[x1] + (x1-x2)^-1", r)}}, {}};
  EXPECT_FALSE(check_denominators(s).ok);
  QuantumSystem l = localize(s, poly("(x1-x2)*(x1-x3)*(x2-x3)", r));
  EXPECT_TRUE(check_denominators(l).ok);
  EXPECT_EQ(localize(s, poly("1", r)).localizers.size(), 0u);
  EXPECT_THROW(localize(s, Polynomial{}.with_registry(r)), ValidationError);
}

TEST(AdVanishing, Examples) {
  auto r1 = xz({"x"});
  auto v1 = ad_vanishing_order(op("D[x]", r1), op("x", r1), 8);
  EXPECT_TRUE(v1.terminated);
  EXPECT_EQ(v1.order, 1u);
  auto r = xz({"x1", "x2"}, {}, {"s"});
  auto v2 = ad_vanishing_order(op("D[x1]^2 + D[x2]^2 - x2", r), op("x1 + s*x2", r), 8);
  EXPECT_TRUE(v2.terminated);
  EXPECT_EQ(v2.order, 2u);
  auto v3 = ad_vanishing_order(op("D[x1]^2 + x1^3", r), op("x1", r), 8);
  EXPECT_FALSE(v3.terminated);
  EXPECT_EQ(v3.iterations, 8u);
}

TEST(BuildK, WeylOneVariable) {
  auto r = xz({"x"}, {"z"});
  auto p = weyl_pair(r);
  auto [word, k] = build_K(p, letters("l1", p), letters("m1", p));
  EXPECT_EQ(k, op("x*D[x] - 1", r));
  EXPECT_EQ(op("x^2", r) * op("D[x]", r), k * op("x", r));
  EXPECT_EQ(word_eval(word, p.table, Block::x, r), k);
}

TEST(BuildK, AiryDressing) {
  auto r = xz({"x1", "x2"}, {"z1", "z2"}, {"s"});
  auto p = airy_pair(r);
  auto [word, k] = build_K(p, letters("l1^2 + l2", p), letters("m1 + s*m2", p));
  DiffOperator expected = op("(x1+s*x2)^2*(D[x1]^2 + D[x2]^2) - 2*(x1+s*x2)*(D[x1] + s*D[x2]) - x2*(x1+s*x2)^2 + 2 + 2*s^2", r);
  EXPECT_EQ(k, expected);
  DiffOperator g = op("x1 + s*x2", r), lf = op("D[x1]^2 + D[x2]^2 - x2", r);
  EXPECT_EQ(g.pow(3) * lf, k * g);
  EXPECT_EQ(k, conjugate_by_function(fn("x1 + s*x2", r), g.pow(2) * lf));
  EXPECT_EQ(word_eval(word, p.table, Block::x, r), k);
}

TEST(BuildK, RejectsConstantF) {
  auto r = xz({"x"}, {"z"});
  auto p = weyl_pair(r);
  try {
    build_K(p, letters("3", p), letters("m1", p));
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("L_f must have positive order"), std::string::npos);
  }
}

TEST(BuildR, Examples) {
  auto r = xz({"x"}, {"z"});
  auto p = weyl_pair(r);
  auto [rw, rr] = build_R(p, letters("l1", p), letters("m1", p));
  EXPECT_EQ(rr, op("x*D[x] + 2", r));
  EXPECT_EQ(op("D[x]", r) * op("x^2", r), op("x", r) * rr);
  auto [uw, unit_r] = build_R(p, letters("l1^2", p), letters("1", p));
  EXPECT_EQ(unit_r, op("D[x]^2", r));

  auto r2 = xz({"x1", "x2"}, {"z1", "z2"}, {"s"});
  auto a = airy_pair(r2);
  auto [w5, r5] = build_R(a, letters("l1^2 + l2", a), letters("m1 + s*m2", a));
  DiffOperator g = op("x1 + s*x2", r2), lf = op("D[x1]^2 + D[x2]^2 - x2", r2);
  EXPECT_EQ(lf * g.pow(3), g * r5);
}

TEST(BuildQ, Examples) {
  auto r = xz({"x"}, {"z"});
  auto p = weyl_pair(r);
  auto [qw, q] = build_Q(p, letters("l1", p), letters("m1", p));
  EXPECT_EQ(q, op("x*D[x] + 2", r));
  EXPECT_EQ(op("D[x]^2", r) * op("x", r), q * op("D[x]", r));

  auto r2 = xz({"x1", "x2"}, {"z1", "z2"});
  auto w2 = weyl_pair(r2);
  auto [qw2, q2] = build_Q(w2, letters("l1", w2), letters("m2", w2));
  EXPECT_EQ(q2, op("x2*D[x1]", r2));

  auto r3 = xz({"x1", "x2"}, {"z1", "z2"}, {"s"});
  auto a = airy_pair(r3);
  auto [q5w, q5] = build_Q(a, letters("l1^2 + l2", a), letters("m1 + s*m2", a));
  DiffOperator g = op("x1 + s*x2", r3), lf = op("D[x1]^2 + D[x2]^2 - x2", r3);
  EXPECT_EQ(lf.pow(3) * g, q5 * lf);
  EXPECT_EQ(q5, g * lf.pow(2) + op("6*(D[x1] + s*D[x2])", r3) * lf + op("6*s", r3));
  EXPECT_NE(q5, lf.pow(2) * g + op("2", r3) * lf * op("D[x1] + s*D[x2]", r3) + op("2", r3));
}

TEST(Transform, WeylOneVariable) {
  auto r = xz({"x"}, {"z"});
  auto p = weyl_pair(r);
  auto d = build_dressing(p, letters("l1", p), letters("m1", p));
  auto t = darboux_transform(p, d);
  expect_all_pass(t);
  ASSERT_EQ(t.system.generators.size(), 2u);
  EXPECT_EQ(t.system.generators[0].spectral, poly("z^2", r));
  EXPECT_EQ(t.system.generators[1].spectral, poly("z^3", r));
  EXPECT_EQ(t.system.generators[0].image, op("D[x]^2 - 2/x*D[x]", r));
  EXPECT_EQ(t.system.generators[0].image, op("(x*D[x] - 1)*(x*D[x] + 2)*x^-2", r));

  auto u = dual_darboux_transform(p, d);
  expect_all_pass(u);
  ASSERT_EQ(u.system.generators.size(), 2u);
  EXPECT_EQ(u.system.generators[0].image, op("D[z]^2 - 2/z*D[z]", r, Block::z));
  EXPECT_EQ(u.system.generators[0].spectral, poly("x^2", r));
  EXPECT_EQ(u.dressing_operator, op("z*D[z] - 1", r, Block::z));
}

TEST(Transform, AiryDressing) {
  auto r = xz({"x1", "x2"}, {"z1", "z2"}, {"s"});
  auto p = airy_pair(r);
  auto d = build_dressing(p, letters("l1^2 + l2", p), letters("m1 + s*m2", p));
  auto t = darboux_transform(p, d);
  expect_all_pass(t);
  EXPECT_EQ(cert(t, "dimension").detail, "spectral dimension 2 (was 2)");
  auto u = dual_darboux_transform(p, d);
  expect_all_pass(u);
  EXPECT_EQ(apply_operator(d.K, p.psi), apply_operator(u.dressing_operator, p.psi));
}

TEST(MakePair, RejectsInconsistentTable) {
  auto r = xz({"x"}, {"z"});
  QuantumSystem w{"W", r, Block::x, {{"l", poly("z", r), op("D[x]", r)}}, {}};
  QuantumSystem wd{"W'", r, Block::z, {{"m", poly("x", r), op("D[z]^2", r, Block::z)}}, {}};
  EXPECT_THROW(make_pair("bad", w, wd, WaveFunction::seed(exp_kernel(r))), ValidationError);
  QuantumSystem swapped = w;
  swapped.block = Block::z;
  EXPECT_THROW(make_pair("bad", swapped, wd, WaveFunction::seed(exp_kernel(r))), ValidationError);
}

TEST(VerifyIntertwining, Examples) {
  auto r = xz({"x1", "x2"});
  EXPECT_TRUE(verify_intertwining(op("D[x1]", r), op("D[x1]^2", r), op("D[x1]^2", r)).ok);
  auto bad = verify_intertwining(op("x1", r), op("D[x1]", r), op("D[x1]", r));
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.defect, op("-1", r));
}

TEST(DeduceTransformed, Examples) {
  auto r = xz({"x1", "x2"});
  auto a = deduce_transformed(op("D[x1]", r), op("D[x1]^2", r), 0);
  EXPECT_TRUE(a.ok);
  EXPECT_EQ(a.transformed, op("D[x1]^2", r));
  auto b = deduce_transformed(op("D[x1]", r), op("x1", r), 0);
  EXPECT_FALSE(b.ok);
  EXPECT_EQ(b.remainder, op("1", r));
}

TEST(Commutativity, Examples) {
  auto r = xz({"x1", "x2"}, {"z1", "z2"});
  EXPECT_TRUE(check_commutativity(weyl_pair(r).primal).ok);
  QuantumSystem s{"S", r, Block::x, {{"a", poly("z1", r), op("D[x1]", r)}, {"b", poly("z2", r), op("x1", r)}}, {}};
  auto c = check_commutativity(s);
  EXPECT_FALSE(c.ok);
  EXPECT_EQ(c.failing->first, 0u);
  EXPECT_EQ(c.failing->second, 1u);
}

TEST(SpectralDimension, Examples) {
  auto r = xz({"x1", "x2", "x3"}, {"z1", "z2", "z3"});
  auto sys = [&](std::vector<std::string> ps) {
    QuantumSystem s{"S", r, Block::x, {}, {}};
    for (std::size_t i = 0; i < ps.size(); ++i) s.generators.push_back({"g" + std::to_string(i), poly(ps[i], r), op("D[x1]", r)});
    return s;
  };
  EXPECT_EQ(spectral_dimension(sys({"z1", "z2"})), 2u);
  EXPECT_EQ(spectral_dimension(sys({"z1+z2+z3", "z1^2+z2^2+z3^2", "z1^3+z2^3+z3^3"})), 3u);
  EXPECT_EQ(spectral_dimension(sys({"(z1^2+z2)^3", "(z1^2+z2)^3*z1", "(z1^2+z2)^3*z2"})), 2u);
  EXPECT_EQ(spectral_dimension(sys({"z1^2", "z1^3"})), 1u);
}
