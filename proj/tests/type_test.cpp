#include <gtest/gtest.h>

#include <random>
#include <set>

#include <universe/universe.hpp>

using namespace universe;

namespace {

TypeExpr random_type(std::mt19937& rng, int depth, bool relational) {
  std::uniform_int_distribution<int> pick(0, 5);
  std::uniform_int_distribution<std::int64_t> n(1, 9);
  int k = depth <= 0 ? 0 : pick(rng);
  if (relational) {
    switch (k % 4) {
      case 0: return TypeExpr::rel_atom(static_cast<RelKind>(rng() % 3), n(rng), n(rng));
      case 1: return TypeExpr::product(random_type(rng, depth - 1, true), random_type(rng, depth - 1, true));
      case 2: return TypeExpr::sum(random_type(rng, depth - 1, true), random_type(rng, depth - 1, true));
      default: return TypeExpr::neg(random_type(rng, depth - 1, true));
    }
  }
  switch (k) {
    case 0: return rng() % 2 ? TypeExpr::nat() : TypeExpr::continuum();
    case 1: return TypeExpr::product(random_type(rng, depth - 1, false), random_type(rng, depth - 1, false));
    case 2: return TypeExpr::sum(random_type(rng, depth - 1, false), random_type(rng, depth - 1, false));
    case 3: return TypeExpr::arrow({random_type(rng, depth - 1, false), random_type(rng, depth - 1, false)},
                                   {random_type(rng, depth - 1, false)});
    case 4: return TypeExpr::types(static_cast<unsigned>(rng() % 3));
    default: return TypeExpr::excl(random_type(rng, 0, false), random_type(rng, 0, false));
  }
}

// all level-0 types built from exactly `s` binary constructors
std::set<std::string> brute_types(unsigned s) {
  if (s == 0) return {"N", "C"};
  std::set<std::string> out;
  for (unsigned i = 0; i < s; ++i)
    for (const auto& l : brute_types(i))
      for (const auto& r : brute_types(s - 1 - i)) {
        out.insert("(" + l + " x " + r + ")");
        out.insert("(" + l + " + " + r + ")");
        out.insert("(" + l + " -> " + r + ")");
      }
  return out;
}

}  // namespace

TEST(TypeText, ParsesBasicForms) {
  EXPECT_EQ(parse_type("N"), TypeExpr::nat());
  EXPECT_EQ(parse_type("(N x C)"), TypeExpr::product(TypeExpr::nat(), TypeExpr::continuum()));
  EXPECT_EQ(parse_type("(N; N -> Types1)"),
            TypeExpr::arrow({TypeExpr::nat(), TypeExpr::nat()}, {TypeExpr::types(1)}));
  EXPECT_EQ(parse_type("(N || C)"), TypeExpr::excl(TypeExpr::nat(), TypeExpr::continuum()));
  EXPECT_EQ(to_string(parse_type("gt(3;_2)")), "gt(3;_2)");
  EXPECT_THROW(parse_type("(N x"), ParseError);
  EXPECT_THROW(parse_type("N x C"), ParseError);
  EXPECT_THROW(parse_type("eq(0;1)"), Error);
}

TEST(TypeText, RoundTripRandom) {
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    TypeExpr t = random_type(rng, 3, i % 2 == 0);
    TypeExpr back = parse_type(to_string(t));
    EXPECT_EQ(back, t) << to_string(t);
    EXPECT_EQ(to_string(back), to_string(t));
  }
}

TEST(TypeLevels, HierarchyIsCumulative) {
  EXPECT_EQ(level_of(TypeExpr::nat()), 0u);
  EXPECT_EQ(level_of(TypeExpr::types(0)), 1u);
  EXPECT_EQ(level_of(TypeExpr::types(2)), 3u);
  EXPECT_EQ(level_of(parse_type("eq(1;2)")), 1u);
  EXPECT_EQ(level_of(parse_type("(N -> Types1)")), 2u);
  EXPECT_EQ(level_of(TypeExpr::pi(template_family(parse_type("gt(_1;1)"), 1), TypeExpr::nat(), 1)), 2u);
}

TEST(TypeConstructors, LevelOneConstructorsRejectHigherOperands) {
  auto t = level1_constructor(TypeCtor::Sum, TypeExpr::nat(), TypeExpr::continuum());
  EXPECT_EQ(t, parse_type("(N + C)"));
  EXPECT_THROW(level1_constructor(TypeCtor::Product, TypeExpr::types(0), TypeExpr::nat()), TypeError);
  EXPECT_EQ(construct_type(TypeCtor::Arrow, TypeExpr::types(0), TypeExpr::nat()), parse_type("(Types0 -> N)"));
}

TEST(TypeConstructors, DesInvertsConstructors) {
  for (auto k : {TypeCtor::Product, TypeCtor::Sum, TypeCtor::Arrow}) {
    auto t = construct_type(k, parse_type("(N x C)"), TypeExpr::nat());
    auto [l, r] = des(t);
    EXPECT_EQ(l, parse_type("(N x C)"));
    EXPECT_EQ(r, TypeExpr::nat());
  }
  EXPECT_THROW(des(TypeExpr::types(0)), TypeError);
}

TEST(TypeBoards, FlattenFoldRoundTrip) {
  std::vector<TypeExpr> b{TypeExpr::nat(), parse_type("(N || (N x N))"), TypeExpr::continuum(),
                          TypeExpr::excl({TypeExpr::nat(), TypeExpr::nat()}, {TypeExpr::continuum()})};
  auto fb = flatten_board(b);
  EXPECT_EQ(fb.sockets.size(), 7u);
  ASSERT_EQ(fb.groups.size(), 2u);
  EXPECT_EQ(fb.groups[0], (ExclGroup{1, 2, 3}));
  EXPECT_TRUE(board_equal(fold_sockets(fb.sockets, fb.groups), b));
  EXPECT_THROW(TypeExpr::excl(std::vector<TypeExpr>{}, {TypeExpr::nat()}), TypeError);
}

TEST(Enumeration, Ind1IsABijectionOntoLevelZero) {
  std::set<std::string> seen;
  unsigned last_size = 0;
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    TypeExpr t = ind1(n);
    EXPECT_EQ(level_of(t), 0u);
    EXPECT_EQ(ind1_index(t), n);
    EXPECT_TRUE(seen.insert(to_string(t)).second) << to_string(t);
    unsigned s = type_size(t);
    EXPECT_GE(s, last_size);  // sizes never decrease
    last_size = s;
  }
}

TEST(Enumeration, SizeBlocksMatchBruteForce) {
  std::uint64_t start = 1;
  for (unsigned s = 0; s <= 3; ++s) {
    auto expect = brute_types(s);
    std::set<std::string> got;
    for (std::uint64_t n = start; n < start + expect.size(); ++n) got.insert(to_string(ind1(n)));
    EXPECT_EQ(got, expect) << "size " << s;
    start += expect.size();
  }
  EXPECT_EQ(to_string(ind1(1)), "N");
  EXPECT_EQ(to_string(ind1(2)), "C");
}

TEST(Enumeration, TypeCodeIsInjective) {
  std::set<std::uint64_t> codes;
  for (std::uint64_t n = 1; n <= 1000; ++n) EXPECT_TRUE(codes.insert(type_code(ind1(n))).second);
  EXPECT_EQ(type_code(TypeExpr::nat()), 1u);
  EXPECT_THROW(ind1(0), TypeError);
}
