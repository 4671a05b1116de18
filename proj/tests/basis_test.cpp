#include <random>
#include <set>

#include <gtest/gtest.h>

#include "khom/basis.hpp"
#include "khom/basis_operator.hpp"

namespace khom {
namespace {

constexpr Coord kProbe = 80;

CoordSet random_set(std::mt19937_64& rng) {
  std::uniform_int_distribution<Coord> bound(-15, 15), mod(1, 4), coin(0, 2);
  CoordSet s;
  if (coin(rng)) s.lo = bound(rng);
  if (coin(rng)) s.hi = bound(rng);
  s.modulus = mod(rng);
  s.residue = std::uniform_int_distribution<Coord>(0, s.modulus - 1)(rng);
  return s;
}

Affine random_affine(std::mt19937_64& rng) {
  return {std::uniform_int_distribution<Coord>(-6, 6)(rng), std::uniform_int_distribution<Coord>(1, 3)(rng)};
}

TEST(CoordSet, Membership) {
  const CoordSet s{-3, 9, 4, 1};
  std::vector<Coord> in;
  for (Coord x = -10; x <= 10; ++x)
    if (s.contains(x)) in.push_back(x);
  EXPECT_EQ(in, (std::vector<Coord>{-3, 1, 5, 9}));
  EXPECT_TRUE((CoordSet{5, 4, 1, 0}).empty());
  EXPECT_TRUE((CoordSet{1, 3, 5, 0}).empty());
}

TEST(CoordSet, AlgebraAgreesWithEnumeration) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto a = random_set(rng), b = random_set(rng);
    const auto f = random_affine(rng);
    const auto ab = intersect(a, b);
    const auto pre = preimage(a, f);
    const auto img = image(a, f);
    for (Coord x = -kProbe; x <= kProbe; ++x) {
      ASSERT_EQ(ab && ab->contains(x), a.contains(x) && b.contains(x));
      ASSERT_EQ(pre && pre->contains(x), a.contains(f.apply(x)));
      if (a.contains(x)) {
        ASSERT_TRUE(img.contains(f.apply(x)));
      }
    }
    for (Coord y = -kProbe; y <= kProbe; ++y)
      if (img.contains(y)) {
        const Coord x = floor_div(y - f.offset, f.scale);
        ASSERT_EQ(f.apply(x), y);
        ASSERT_TRUE(a.contains(x));
      }
  }
}

TEST(Cell, CountWithSumCongruence) {
  // {0..3} x {0..3}, x + y = 1 mod 3
  Cell c{0, {CoordSet::between(0, 3), CoordSet::between(0, 3)}, SumCongruence{3, 1}};
  EXPECT_EQ(count_points(c).value, 5);
  EXPECT_EQ(enumerate_points(c).size(), 5u);
  for (const auto& b : enumerate_points(c)) EXPECT_EQ((b.coords[0] + b.coords[1]) % 3, 1);
  c.coords[1] = CoordSet::at_least(0);
  EXPECT_TRUE(count_points(c).infinite);
  EXPECT_THROW(enumerate_points(c), std::invalid_argument);
}

TEST(Cell, EmptyBySumButUnboundedCoordinates) {
  Cell c{0, {CoordSet{std::nullopt, std::nullopt, 2, 0}, CoordSet{std::nullopt, std::nullopt, 2, 0}},
         SumCongruence{2, 1}};
  EXPECT_FALSE(count_points(c).infinite);
  EXPECT_EQ(count_points(c).value, 0);
}

TEST(CellMap, ComposeAgreesWithPointwise) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    CellMap first{Cell{0, {random_set(rng), random_set(rng)}, std::nullopt}, 1,
                  {random_affine(rng), random_affine(rng)}};
    CellMap second{Cell{1, {random_set(rng), random_set(rng)}, std::nullopt}, 2,
                   {random_affine(rng), random_affine(rng)}};
    const auto both = compose(second, first);
    for (Coord x = -12; x <= 12; ++x)
      for (Coord y = -12; y <= 12; ++y) {
        const BasisPoint b{0, {x, y}};
        std::optional<BasisPoint> expect;
        if (first.domain.contains(b)) {
          const auto mid = first.apply(b);
          if (second.domain.contains(mid)) expect = second.apply(mid);
        }
        const bool got = both && both->domain.contains(b);
        ASSERT_EQ(got, expect.has_value());
        if (got) {
          ASSERT_EQ(both->apply(b), *expect);
          ASSERT_EQ(both->invert(*expect), b);
        }
      }
  }
}

TEST(CellMap, PreimageRejectsSumWithScaling) {
  CellMap m{Cell{0, {CoordSet::all()}, std::nullopt}, 0, {Affine{0, 2}}};
  Cell target{0, {CoordSet::all()}, SumCongruence{3, 1}};
  EXPECT_THROW(preimage(target, m), std::logic_error);
}

TEST(Window, FlatIndexing) {
  const Window w(2, {{-1, 1}, {0, 2}});
  EXPECT_EQ(w.size(), 18u);
  std::set<BasisPoint> seen;
  for (std::size_t i = 0; i < w.size(); ++i) seen.insert(w.at(i));
  EXPECT_EQ(seen.size(), 18u);
  EXPECT_EQ(w.at(0), (BasisPoint{0, {-1, 0}}));
  EXPECT_EQ(w.at(1), (BasisPoint{0, {-1, 1}}));
  EXPECT_TRUE(w.contains(BasisPoint{1, {1, 2}}));
  EXPECT_FALSE(w.contains(BasisPoint{2, {0, 0}}));
}

TEST(Window, SignShellCoversBothSides) {
  const BasisSpace space{{"a"}, {true, false}, 1};
  const auto shell = sign_shell(space, 3, 2);
  std::set<Coord> signs;
  for (const auto& w : shell)
    for (std::size_t i = 0; i < w.size(); ++i) signs.insert(w.at(i).coords[1]);
  EXPECT_EQ(signs, (std::set<Coord>{-5, -4, 4, 5}));
}

TEST(Arithmetic, FloorCeilMod) {
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(ceil_div(-7, 2), -3);
  EXPECT_EQ(floor_div(7, 2), 3);
  EXPECT_EQ(ceil_div(7, 2), 4);
  EXPECT_EQ(mod_floor(-7, 3), 2);
}

TEST(BasisOperator, ProjectionAndComposition) {
  const auto half = BasisOperator::projection({Cell{0, {CoordSet::at_least(0)}, std::nullopt}});
  const auto shift = BasisOperator::injection(
      {CellMap{Cell{0, {CoordSet::all()}, std::nullopt}, 0, {Affine{-2, 1}}}});
  const auto t = half.after(shift);  // Q S
  EXPECT_EQ(t.apply(BasisPoint{0, {1}}), std::nullopt);
  EXPECT_EQ(t.apply(BasisPoint{0, {5}}), (BasisPoint{0, {3}}));
  EXPECT_TRUE(t.range_projection().in_domain(BasisPoint{0, {0}}));
  EXPECT_FALSE(t.range_projection().in_domain(BasisPoint{0, {-1}}));
  EXPECT_TRUE(t.source_projection().in_domain(BasisPoint{0, {2}}));
  EXPECT_FALSE(t.source_projection().in_domain(BasisPoint{0, {1}}));
}

}  // namespace
}  // namespace khom
