#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace bdt;
using namespace bdt::test;

namespace {

WordPoly w(std::initializer_list<std::string> letters) { return WordPoly::word(Word(letters)); }

}  // namespace

TEST(WordEval, WeylExamples) {
  auto r = xz({"x1", "x2"}, {"z1", "z2"});
  auto p = weyl_pair(r);
  EXPECT_EQ(word_eval(w({"l1", "m1"}), p.table, Block::x, r), op("x1*D[x1] + 1", r));
  EXPECT_EQ(word_eval(WordPoly::unit(), p.table, Block::x, r), op("1", r));
  EXPECT_EQ(word_eval(w({"m1'", "l1'"}), p.table, Block::z, r), op("z1*D[z1] + 1", r, Block::z));
  EXPECT_THROW(word_eval(w({"l1'"}), p.table, Block::x, r), Error);
  EXPECT_THROW(word_eval(WordPoly::scalar(fn("x1", r)), p.table, Block::x, r), ValidationError);
}

TEST(AntiMap, ReversesAndSwaps) {
  auto r = xz({"x1"}, {"z1"});
  auto p = weyl_pair(r);
  EXPECT_EQ(anti_map(w({"l1", "m1"}), p.table), w({"m1'", "l1'"}));
  WordPoly x = w({"l1", "l1", "m1"}) + w({"m1"}).scaled(RationalFunction(3)) - WordPoly::unit();
  EXPECT_EQ(anti_map(anti_map(x, p.table), p.table), x);
  // anti-multiplicative
  WordPoly a = w({"l1", "m1"}), b = w({"m1"}) + w({"l1"});
  EXPECT_EQ(anti_map(a * b, p.table), anti_map(b, p.table) * anti_map(a, p.table));
}

TEST(WordEqual, InB) {
  auto r = xz({"x1"}, {"z1"});
  auto p = weyl_pair(r);
  EXPECT_TRUE(word_equal_in_B(w({"l1", "m1"}), w({"m1", "l1"}) + WordPoly::unit(), p.table, r));
  WordPoly x = w({"l1", "m1", "m1"});
  EXPECT_TRUE(word_equal_in_B(x, x, p.table, r));
  EXPECT_FALSE(word_equal_in_B(w({"l1"}), w({"m1"}), p.table, r));
}

TEST(AdWord, Definition) {
  EXPECT_EQ(ad_word("g", "f", 0), w({"f"}));
  EXPECT_EQ(ad_word("g", "f", 1), w({"g", "f"}) - w({"f", "g"}));
  EXPECT_EQ(ad_word("g", "f", 2), w({"g", "g", "f"}) - w({"g", "f", "g"}).scaled(RationalFunction(2)) + w({"f", "g", "g"}));
}

TEST(AdWord, AiryDressingEvaluation) {
  auto r = xz({"x1", "x2"}, {"z1", "z2"}, {"s"});
  auto p = airy_pair(r);
  WordPoly f = w({"l1", "l1"}) + w({"l2"});
  WordPoly g = w({"m1"}) + w({"m2"}).scaled(fn("s", r));
  EXPECT_EQ(word_eval(ad_word(g, f, 2), p.table, Block::x, r), op("2*(1 + s^2)", r));
  EXPECT_EQ(word_eval(ad_word(g, f, 2), p.table, Block::x, r),
            ad_pow(word_eval(g, p.table, Block::x, r), word_eval(f, p.table, Block::x, r), 2));
}

TEST(GeneratorTable, RejectsBadEntries) {
  auto r = xz({"x1"}, {"z1"});
  GeneratorTable t;
  t.add({"a", op("D[x1]", r), "a'", op("z1", r, Block::z)});
  EXPECT_THROW(t.add({"a", op("x1", r), "b'", op("D[z1]", r, Block::z)}), ValidationError);
  EXPECT_THROW(t.add({"c", op("D[z1]", r, Block::z), "c'", op("x1", r, Block::z)}), ValidationError);
  EXPECT_THROW(t.add({"d", op("x1", r), "d", op("D[z1]", r, Block::z)}), ValidationError);
}

TEST(WordsFromCommutative, SortsLettersAndKeepsParameters) {
  auto r = xz({"x1", "x2"}, {"z1", "z2"}, {"s"});
  auto p = airy_pair(r);
  EXPECT_THROW(words_from_commutative(letters("l2*x1", p), p.primal_letters(), r), ValidationError);
  WordPoly f = words_from_commutative(letters("l2*l1^2 + 3", p), p.primal_letters(), r);
  EXPECT_EQ(f, w({"l1", "l1", "l2"}) + WordPoly::scalar(RationalFunction(3)));
}
