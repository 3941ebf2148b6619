#include <gtest/gtest.h>

#include <map>
#include <queue>

#include "bft/errors.hpp"
#include "bft/flags.hpp"
#include "support/gen.hpp"
#include "support/oracle.hpp"

using namespace bft;

namespace {

Point pt(const ProjSpace& s, Vec v) { return Point(s.field(), std::move(v)); }

Chamber flag(const ProjSpace& s, const std::vector<std::vector<Vec>>& chain) {
  Chamber c;
  for (const auto& rows : chain) c.chain.emplace_back(rref(s.field(), s.ambient(), rows));
  return c;
}

}  // namespace

TEST(Chambers, CountsMatchLatticeEnumeration) {
  EXPECT_EQ(chambers_of(ProjSpace(2, 2)).size(), 21u);
  EXPECT_EQ(chambers_of(ProjSpace(3, 2)).size(), 315u);
  for (auto [n, q] : {std::pair{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {4, 2}}) {
    const ProjSpace s(n, q);
    const auto o = oracle::Gf::of(q);
    EXPECT_EQ(chamber_count(s), oracle::chamber_count(o, s.ambient())) << n << "," << q;
    EXPECT_EQ(Building(s).chambers().size(), chamber_count(s));
    const auto subs = oracle::subspaces(o, s.ambient());
    for (int k = 0; k < n; ++k) EXPECT_EQ(subspace_count(s, k), subs[k + 1].size());
  }
}

TEST(Chambers, EveryEnumeratedChamberIsValid) {
  const ProjSpace s(3, 2);
  for (const Chamber& c : chambers_of(s)) {
    ASSERT_NO_THROW(validate_chamber(s, c));
    ASSERT_EQ(c.point().pdim(), 0);
    ASSERT_EQ(c.hyperplane().pdim(), 2);
  }
}

TEST(Chambers, ValidationRejectsBadChains) {
  const ProjSpace s(2, 2);
  EXPECT_THROW(validate_chamber(s, flag(s, {{{1, 0, 0}}})), InputError);
  EXPECT_THROW(validate_chamber(s, flag(s, {{{1, 0, 0}}, {{0, 1, 0}, {0, 0, 1}}})), InputError);
  EXPECT_THROW(validate_chamber(s, flag(s, {{{1, 0, 0}, {0, 1, 0}}, {{1, 0, 0}}})), InputError);
  EXPECT_NO_THROW(validate_chamber(s, flag(s, {{{1, 0, 0}}, {{1, 0, 0}, {0, 1, 0}}})));
}

TEST(Adjacent, WorkedExamples) {
  const ProjSpace s(2, 2);
  const Chamber a = flag(s, {{{1, 0, 0}}, {{1, 0, 0}, {0, 1, 0}}});
  const Chamber b = flag(s, {{{0, 1, 0}}, {{1, 0, 0}, {0, 1, 0}}});
  const Chamber c = flag(s, {{{0, 0, 1}}, {{0, 1, 0}, {0, 0, 1}}});
  EXPECT_FALSE(adjacent(a, a));
  EXPECT_TRUE(adjacent(a, b));
  EXPECT_FALSE(adjacent(a, c));
}

TEST(BaseCount, MatchesBruteForce) {
  EXPECT_EQ(base_count(ProjSpace(2, 2)), 28u);
  EXPECT_EQ(base_count(ProjSpace(3, 2)), 840u);
  for (auto [n, q] : {std::pair{2, 3}, {2, 4}, {3, 2}}) {
    const ProjSpace s(n, q);
    EXPECT_EQ(base_count(s), oracle::base_count(oracle::Gf::of(q), s.ambient()));
    EXPECT_EQ(Building(s).bases(true).size(), base_count(s));
  }
}

TEST(BaseCount, CapIsEnforced) {
  EXPECT_TRUE(within_base_cap(ProjSpace(3, 3)));
  EXPECT_FALSE(within_base_cap(ProjSpace(2, 4)));
  EXPECT_FALSE(within_base_cap(ProjSpace(5, 2)));
  const Building b(ProjSpace(2, 4));
  EXPECT_THROW(b.bases(), UnsupportedError);
  EXPECT_EQ(b.bases(true).size(), base_count(ProjSpace(2, 4)));
}

TEST(Apartment, SizesAndTraces) {
  for (int n : {2, 3, 4}) {
    const ProjSpace s(n, 2);
    const Apartment ap(s, BasePoints::standard(s));
    std::size_t fact = 1;
    for (int k = 2; k <= n + 1; ++k) fact *= k;
    EXPECT_EQ(ap.chambers().size(), fact);
    const Trace t = trace_of(ap.chambers());
    EXPECT_EQ(t.size(), (1u << (n + 1)) - 2);
    for (const PSubspace& x : t) {
      std::vector<Point> in;
      for (const Point& p : ap.base().points())
        if (x.contains(p)) in.push_back(p);
      EXPECT_EQ(span_points(s, in), x);
    }
    const Chamber one[] = {ap.chambers().front()};
    EXPECT_EQ(trace_of(one).size(), static_cast<std::size_t>(n));
  }
}

TEST(ChamberOfPerm, IdentityAndRoundTrip) {
  const ProjSpace s(3, 2);
  const auto b = BasePoints::standard(s);
  const Chamber id = chamber_of_perm(s, b, {0, 1, 2, 3});
  EXPECT_EQ(id.point().as_point(), pt(s, {1, 0, 0, 0}));
  EXPECT_EQ(id.chain[1], PSubspace(rref(s.field(), 4, std::vector<Vec>{{1, 0, 0, 0}, {0, 1, 0, 0}})));
  std::set<Chamber> seen;
  for (const Perm& p : all_perms(3)) {
    const Chamber c = chamber_of_perm(s, b, p);
    ASSERT_EQ(perm_of_chamber(s, b, c), p);
    seen.insert(c);
  }
  EXPECT_EQ(seen.size(), 24u);
  const Chamber outside = chamber_of_perm(s, BasePoints(s, {pt(s, {1, 1, 0, 0}), pt(s, {0, 1, 0, 0}),
                                                            pt(s, {0, 0, 1, 0}), pt(s, {0, 0, 0, 1})}),
                                          {0, 1, 2, 3});
  EXPECT_FALSE(perm_of_chamber(s, b, outside).has_value());
}

TEST(ChamberOfPerm, PermRankIsLexicographic) {
  const auto perms = all_perms(3);
  ASSERT_EQ(perms.size(), 24u);
  for (std::size_t k = 0; k < perms.size(); ++k) EXPECT_EQ(perm_rank(perms[k]), k);
  EXPECT_TRUE(std::is_sorted(perms.begin(), perms.end()));
}

TEST(ApartmentsContaining, WorkedExamples) {
  const ProjSpace s(2, 2);
  const Building b(s);
  EXPECT_EQ(apartments_containing(b, std::span<const Chamber>{}).size(), 28u);
  const Apartment ap(s, BasePoints::standard(s));
  const auto own = apartments_containing(b, ap.chambers());
  ASSERT_EQ(own.size(), 1u);
  EXPECT_EQ(own.front(), ap.base());
  EXPECT_EQ(Building(ProjSpace(3, 2)).bases().size(), 840u);
}

TEST(ApartmentsContaining, SingleChamberLiesInManyApartments) {
  // a flag of PG(2,q) lies in q^3 apartments: choose the third point off
  // the line (q^2 ways) and the second point on the line off p (q ways)
  for (int q : {2, 3}) {
    const ProjSpace s(2, q);
    const Building b(s);
    const Chamber one[] = {b.chambers()[0]};
    EXPECT_EQ(apartments_containing(b, one).size(), static_cast<std::size_t>(q * q * q));
  }
}

TEST(CommonApartment, ContainsBothChambers) {
  const ProjSpace s(3, 2);
  const Building b(s);
  auto r = gen::rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, b.chambers().size() - 1);
  for (int t = 0; t < 300; ++t) {
    const Chamber& x = b.chambers()[pick(r)];
    const Chamber& y = b.chambers()[pick(r)];
    const Apartment ap(s, common_apartment(s, x, y));
    ASSERT_TRUE(ap.contains(x) && ap.contains(y));
  }
  const Chamber& c = b.chambers()[5];
  EXPECT_EQ(common_apartment(s, c, c), common_apartment(s, c, c));
  EXPECT_TRUE(Apartment(s, common_apartment(s, c, c)).contains(c));
}

TEST(CommonApartment, OppositePlaneFlagsMatchSearch) {
  const ProjSpace s(2, 2);
  const Building b(s);
  const Chamber x = flag(s, {{{1, 0, 0}}, {{1, 0, 0}, {0, 1, 0}}});
  const Chamber y = flag(s, {{{0, 0, 1}}, {{0, 1, 0}, {0, 0, 1}}});
  const Chamber both[] = {x, y};
  const auto found = apartments_containing(b, both);
  ASSERT_FALSE(found.empty());
  const auto base = common_apartment(s, x, y);
  EXPECT_NE(std::find(found.begin(), found.end(), base), found.end());
}

TEST(Building, ThickAndThinPanels) {
  for (auto [n, q] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
    const ProjSpace s(n, q);
    const Building b(s);
    // panel = chamber with one slot removed
    std::map<std::pair<int, std::vector<PSubspace>>, int> panels;
    for (const Chamber& c : b.chambers())
      for (int k = 0; k < n; ++k) {
        auto rest = c.chain;
        rest.erase(rest.begin() + k);
        ++panels[{k, rest}];
      }
    for (const auto& [key, count] : panels) ASSERT_EQ(count, q + 1);
    const Apartment ap(s, BasePoints::standard(s));
    std::map<std::pair<int, std::vector<PSubspace>>, int> thin;
    for (const Chamber& c : ap.chambers())
      for (int k = 0; k < n; ++k) {
        auto rest = c.chain;
        rest.erase(rest.begin() + k);
        ++thin[{k, rest}];
      }
    for (const auto& [key, count] : thin) ASSERT_EQ(count, 2);
  }
}

TEST(Building, AdjacencyGraphConnected) {
  const Building b(ProjSpace(3, 2));
  const auto& ch = b.chambers();
  std::vector<bool> seen(ch.size());
  std::queue<std::size_t> todo;
  todo.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!todo.empty()) {
    const std::size_t c = todo.front();
    todo.pop();
    for (std::size_t d = 0; d < ch.size(); ++d)
      if (!seen[d] && adjacent(ch[c], ch[d])) {
        seen[d] = true;
        ++reached;
        todo.push(d);
      }
  }
  EXPECT_EQ(reached, ch.size());
}

TEST(Building, IndexLookups) {
  const ProjSpace s(2, 3);
  const Building b(s);
  for (std::size_t k = 0; k < b.chambers().size(); ++k) ASSERT_EQ(b.index_of(b.chambers()[k]), k);
  for (std::size_t k = 0; k < b.points().size(); ++k) {
    ASSERT_EQ(b.point_index(b.points()[k]), k);
    ASSERT_EQ(dual_point(s, b.hyperplanes()[k]), b.points()[k]);
  }
  EXPECT_TRUE(std::is_sorted(b.chambers().begin(), b.chambers().end()));
  const auto mask = b.mask_of(Apartment(s, b.bases()[0]).chambers());
  EXPECT_EQ(mask, b.apartment_mask(0));
  EXPECT_EQ(mask.count(), 6u);
}
