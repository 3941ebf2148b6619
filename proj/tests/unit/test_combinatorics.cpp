#include <gtest/gtest.h>

#include "bft/combinatorics.hpp"
#include "bft/errors.hpp"
#include "support/gen.hpp"
#include "support/oracle.hpp"

using namespace bft;

namespace {

std::uint64_t fact(int k) {
  std::uint64_t f = 1;
  for (int t = 2; t <= k; ++t) f *= t;
  return f;
}

template <class Pred>
ChamberSet select(const ApartmentModel& m, Pred pred) {
  ChamberSet s = m.none();
  for (std::size_t c = 0; c < m.size(); ++c) s[c] = pred(m.perms()[c]);
  return s;
}

ChamberSet random_subset(std::mt19937_64& r, const ApartmentModel& m) {
  ChamberSet s = m.none();
  std::bernoulli_distribution coin(0.5);
  for (std::size_t c = 0; c < m.size(); ++c) s[c] = coin(r);
  return s;
}

}  // namespace

TEST(ApartmentModel, GeometricAndCombinatorialModelsAgree) {
  for (int n : {2, 3, 4}) {
    const ProjSpace s(n, 3);
    auto r = gen::rng(n);
    const ApartmentModel geo(Apartment(s, gen::base(r, s)));
    const ApartmentModel comb(n);
    ASSERT_EQ(geo.size(), comb.size());
    for (std::size_t c = 0; c < geo.size(); ++c)
      for (int k = 0; k < n; ++k) ASSERT_EQ(geo.component(c, k), comb.component(c, k));
  }
  EXPECT_THROW(ApartmentModel(1), InputError);
  EXPECT_THROW(ApartmentModel(9), UnsupportedError);
}

TEST(Subfamily, WorkedExamples) {
  const ApartmentModel m(3);
  EXPECT_EQ(point_family(m, 1).count(), 6u);
  EXPECT_EQ(subfamily(m, {FamilyLabel::Kind::Mixed, 1, 2}).count(), 2u);
  EXPECT_EQ(subfamily(m, {FamilyLabel::Kind::Mixed, 2, 2}).count(), 0u);
  EXPECT_EQ(subfamily(m, {FamilyLabel::Kind::Mixed, 1, 2}), point_family(m, 1) & hyperplane_family(m, 2));
}

TEST(Subfamily, MatchesPermutationOracle) {
  for (int n = 2; n <= 5; ++n) {
    const ApartmentModel m(n);
    for (int i = 1; i <= n + 1; ++i) {
      ASSERT_EQ(point_family(m, i), select(m, [&](const Perm& p) { return oracle::in_point_family(p, i); }));
      ASSERT_EQ(hyperplane_family(m, i), select(m, [&](const Perm& p) { return oracle::in_hyperplane_family(p, i); }));
      ASSERT_EQ(point_family(m, i).count(), fact(n));
    }
  }
}

TEST(ComplementSet, MatchesPositionOracle) {
  for (int n = 2; n <= 5; ++n) {
    const ApartmentModel m(n);
    for (const IndexPair& p : all_pairs(n)) {
      ASSERT_EQ(complement_set(m, p), select(m, [&](const Perm& x) { return oracle::in_complement(x, p.i, p.j); }));
      ASSERT_EQ(residual(m, p), select(m, [&](const Perm& x) { return oracle::in_residual(x, p.i, p.j); }));
      ASSERT_EQ(complement_set(m, p) | max_inexact(m, p), m.all());
      ASSERT_TRUE((complement_set(m, p) & max_inexact(m, p)).none());
    }
  }
}

TEST(ComplementSet, PlaneExample) {
  const ProjSpace s(2, 2);
  const Apartment ap(s, BasePoints::standard(s));
  const ApartmentModel m(ap);
  const ChamberSet c12 = complement_set(m, {1, 2});
  ASSERT_EQ(c12.count(), 3u);
  // {p1 in p1p2, p1 in p1p3, p3 in p1p3}
  std::set<Perm> expected{{0, 1, 2}, {0, 2, 1}, {2, 0, 1}};
  std::set<Perm> got;
  for (auto c = c12.find_first(); c != ChamberSet::npos; c = c12.find_next(c)) got.insert(m.perms()[c]);
  EXPECT_EQ(got, expected);
  EXPECT_EQ(max_inexact(m, {1, 2}).count(), 3u);
}

TEST(ComplementSet, SplitsIntoFamiliesAndResidual) {
  for (int n = 2; n <= 5; ++n) {
    const ApartmentModel m(n);
    for (const IndexPair& p : all_pairs(n)) {
      const ChamberSet head = point_family(m, p.i) | hyperplane_family(m, p.j);
      ASSERT_EQ(complement_set(m, p), head | residual(m, p));
      ASSERT_TRUE((head & residual(m, p)).none());
    }
  }
  EXPECT_TRUE(residual(ApartmentModel(2), {1, 2}).none());
}

TEST(Residual, FamilyCountsAtN4) {
  const ApartmentModel m(4);
  for (const IndexPair& p : all_pairs(4))
    for (int k = 1; k <= 5; ++k) {
      if (k == p.i || k == p.j) continue;
      EXPECT_EQ((point_family(m, k) & residual(m, p)).count(), 6u);
      EXPECT_EQ((hyperplane_family(m, k) & residual(m, p)).count(), 6u);
      for (int mm = 1; mm <= 5; ++mm) {
        if (mm == k || mm == p.i || mm == p.j) continue;
        const ChamberSet a = subfamily(m, {FamilyLabel::Kind::Mixed, mm, k});
        EXPECT_EQ((a & residual(m, p)).count(), 3u);
        EXPECT_EQ((a - residual(m, p)).count(), 3u);
      }
    }
}

TEST(Exactness, WorkedExamples) {
  const ApartmentModel m(2);
  EXPECT_TRUE(is_exact_by_trace(m, m.all()));
  EXPECT_FALSE(is_exact_by_trace(m, m.none()));
  for (const IndexPair& p : all_pairs(2)) {
    const ChamberSet x = max_inexact(m, p);
    EXPECT_FALSE(is_exact_by_trace(m, x));
    for (std::size_t c = 0; c < m.size(); ++c) {
      if (x[c]) continue;
      ChamberSet y = x;
      y.set(c);
      EXPECT_TRUE(is_exact_by_trace(m, y));
    }
  }
}

TEST(Exactness, MaximalInexactSetsAreTheXijExhaustive) {
  const ApartmentModel m(2);
  std::set<ChamberSet> xs;
  for (const IndexPair& p : all_pairs(2)) xs.insert(max_inexact(m, p));
  ASSERT_EQ(xs.size(), 6u);
  std::set<ChamberSet> maximal;
  for (unsigned code = 0; code < 64; ++code) {
    ChamberSet s(6, code);
    const bool inexact = !is_exact_by_trace(m, s);
    const bool inside = std::any_of(xs.begin(), xs.end(), [&](const ChamberSet& x) { return s.is_subset_of(x); });
    ASSERT_EQ(inexact, inside) << code;
    bool is_max = inexact;
    for (std::size_t c = 0; c < 6 && is_max; ++c)
      if (!s[c]) is_max = is_exact_by_trace(m, ChamberSet(6, code | (1u << c)));
    if (is_max) maximal.insert(s);
  }
  EXPECT_EQ(maximal, xs);
}

TEST(Exactness, DecidersAgreeOnPlanes) {
  for (int q : {2, 3}) {
    const ProjSpace s(2, q);
    const Building b(s);
    const ApartmentModel m(Apartment(s, b.bases()[q]));
    for (unsigned code = 0; code < 64; ++code) {
      const ChamberSet sub(6, code);
      ASSERT_EQ(is_exact_by_trace(m, sub), is_exact_by_apartments(b, m, sub)) << q << ":" << code;
    }
  }
}

TEST(Exactness, DecidersAgreeOnRandomPG32Subsets) {
  const ProjSpace s(3, 2);
  const Building b(s);
  const ApartmentModel m(Apartment(s, BasePoints::standard(s)));
  auto r = gen::rng(77);
  for (int t = 0; t < 500; ++t) {
    const ChamberSet sub = random_subset(r, m);
    ASSERT_EQ(is_exact_by_trace(m, sub), is_exact_by_apartments(b, m, sub));
  }
  for (const IndexPair& p : all_pairs(3)) EXPECT_FALSE(is_exact_by_apartments(b, m, max_inexact(m, p)));
  EXPECT_THROW(is_exact_by_apartments(b, ApartmentModel(3), m.all()), InputError);
}

TEST(ComplementChamber, InvolutionAndReversal) {
  const ApartmentModel m(3);
  for (std::size_t c = 0; c < m.size(); ++c) {
    const std::size_t d = complement_chamber(m, c);
    ASSERT_EQ(complement_chamber(m, d), c);
    Perm rev = m.perms()[c];
    std::reverse(rev.begin(), rev.end());
    ASSERT_EQ(m.perms()[d], rev);
  }
  const ApartmentModel m2(2);
  EXPECT_EQ(complement_image(m2, point_family(m2, 1)), hyperplane_family(m2, 1));
}

TEST(ComplementChamber, GeometricComplementMatches) {
  // components replaced by the span of the complementary base points
  const ProjSpace s(3, 2);
  const Apartment ap(s, BasePoints::standard(s));
  const ApartmentModel m(ap);
  for (std::size_t c = 0; c < m.size(); ++c) {
    const Chamber& f = ap.chambers()[c];
    const Chamber& g = ap.chambers()[complement_chamber(m, c)];
    for (int k = 0; k < 3; ++k) {
      std::vector<Point> rest;
      for (const Point& p : ap.base().points())
        if (!f.chain[k].contains(p)) rest.push_back(p);
      ASSERT_EQ(g.chain[2 - k], span_points(s, rest));
    }
  }
}

TEST(DTransform, InvolutionWithoutFixedPoints) {
  const ApartmentModel m(3);
  for (const IndexPair& p : all_pairs(3))
    for (std::size_t c = 0; c < m.size(); ++c) {
      const std::size_t d = d_transform(m, p, c);
      ASSERT_NE(d, c);
      ASSERT_EQ(d_transform(m, p, d), c);
    }
}

TEST(Disposition, WorkedExamples) {
  EXPECT_EQ(disposition_of({1, 2}, {2, 1}), 1);
  EXPECT_EQ(disposition_of({1, 2}, {1, 3}), 2);
  EXPECT_EQ(disposition_of({1, 2}, {3, 2}), 3);
  EXPECT_EQ(disposition_of({1, 2}, {3, 1}), 4);
  EXPECT_EQ(disposition_of({1, 2}, {2, 3}), 5);
  EXPECT_EQ(disposition_of({1, 2}, {3, 4}), 6);
  EXPECT_THROW(disposition_of({1, 2}, {1, 2}), InputError);
  EXPECT_THROW(disposition_of({1, 1}, {1, 2}), InputError);
}

TEST(IntersectionCount, MatchesIndependentPositionCounts) {
  // For a uniform permutation, {i before j} and {k before m} are
  // independent when the labels are distinct, etc.
  for (int n = 2; n <= 5; ++n) {
    const ApartmentModel m(n);
    const std::uint64_t total = fact(n + 1);
    const std::uint64_t expected[] = {0, 0, total / 3, total / 3, total / 6, total / 6, total / 4};
    for (const IndexPair& a : all_pairs(n))
      for (const IndexPair& b : all_pairs(n)) {
        if (a == b) continue;
        const int kase = disposition_of(a, b);
        std::uint64_t brute = 0;
        for (const Perm& p : oracle::perms(n + 1))
          brute += oracle::in_complement(p, a.i, a.j) && oracle::in_complement(p, b.i, b.j);
        ASSERT_EQ(intersection_count(m, a, b), brute);
        ASSERT_EQ(brute, expected[kase]) << n << " case " << kase;
      }
  }
}

TEST(IntersectionCount, PublishedValuesAtN3) {
  const ApartmentModel m(3);
  EXPECT_EQ(intersection_count(m, {1, 2}, {2, 1}), 0u);
  EXPECT_EQ(intersection_count(m, {1, 2}, {1, 3}), 8u);
  // the published closed form gives 10 here; enumeration gives 6
  EXPECT_EQ(intersection_count(m, {1, 2}, {3, 4}), 6u);
  EXPECT_EQ(closed_form(3, 6), 10u);
}

TEST(ClosedForm, PublishedValues) {
  EXPECT_EQ(closed_form(2, 1), 0u);
  EXPECT_EQ(closed_form(2, 2), 2u);
  EXPECT_EQ(closed_form(2, 4), 1u);
  EXPECT_EQ(closed_form(3, 2), 8u);
  EXPECT_EQ(closed_form(3, 4), 4u);
  EXPECT_EQ(closed_form(4, 2), 40u);
  EXPECT_EQ(closed_form(4, 4), 20u);
  EXPECT_EQ(closed_form(4, 6), 42u);
  EXPECT_EQ(closed_form(5, 2), 240u);
  EXPECT_EQ(closed_form(5, 4), 120u);
  EXPECT_EQ(closed_form(5, 6), 228u);
  EXPECT_EQ(closed_form(5, 2) - closed_form(5, 6), 12u);
  EXPECT_THROW(closed_form(2, 6), UndefinedValueError);
  EXPECT_THROW(closed_form(3, 7), InputError);
  for (int n = 2; n <= 8; ++n) {
    EXPECT_EQ(closed_form(n, 2), closed_form(n, 3));
    EXPECT_EQ(closed_form(n, 4), closed_form(n, 5));
  }
}

TEST(ClosedForm, CasesTwoAndFourMatchEnumeration) {
  for (int n = 2; n <= 6; ++n) {
    const ApartmentModel m(n);
    EXPECT_EQ(intersection_count(m, {1, 2}, {1, 3}), closed_form(n, 2)) << n;
    EXPECT_EQ(intersection_count(m, {1, 2}, {3, 2}), closed_form(n, 3)) << n;
    EXPECT_EQ(intersection_count(m, {1, 2}, {3, 1}), closed_form(n, 4)) << n;
    EXPECT_EQ(intersection_count(m, {1, 2}, {2, 3}), closed_form(n, 5)) << n;
  }
}

TEST(ClosedForm, CaseSixOvercountsByTwoFactorials) {
  for (int n = 3; n <= 6; ++n)
    EXPECT_EQ(intersection_count(ApartmentModel(n), {1, 2}, {3, 4}) + 2 * fact(n - 1), closed_form(n, 6)) << n;
}

TEST(ComplementAdjacent, WorkedExamples) {
  EXPECT_TRUE(complement_adjacent({1, 2}, {1, 3}));
  EXPECT_TRUE(complement_adjacent({1, 2}, {3, 2}));
  EXPECT_FALSE(complement_adjacent({1, 2}, {2, 1}));
  EXPECT_FALSE(complement_adjacent({1, 2}, {3, 4}));
  EXPECT_FALSE(complement_adjacent({1, 2}, {1, 2}));
}

TEST(StarIntersections, RowsAndColumnsAreFamilies) {
  for (int n = 2; n <= 4; ++n) {
    const ApartmentModel m(n);
    for (int i = 1; i <= n + 1; ++i) {
      const auto st = star_intersections(m, i);
      ASSERT_EQ(st.rows, point_family(m, i));
      ASSERT_EQ(st.columns, hyperplane_family(m, i));
      ASSERT_EQ(complement_image(m, st.rows), st.columns);
    }
  }
  EXPECT_EQ(star_intersections(ApartmentModel(2), 1).rows.count(), 2u);
}

TEST(AdjacentFamily, WorkedExamples) {
  const IndexPair row[] = {{1, 2}, {1, 3}, {1, 4}};
  const IndexPair col[] = {{2, 1}, {3, 1}, {4, 1}};
  EXPECT_EQ(classify_adjacent_family(3, row), (AdjacentFamilyType{1, AdjacentFamilyType::Orientation::Row}));
  EXPECT_EQ(classify_adjacent_family(3, col), (AdjacentFamilyType{1, AdjacentFamilyType::Orientation::Column}));
  const IndexPair loose[] = {{1, 2}, {3, 4}, {1, 4}};
  EXPECT_THROW(classify_adjacent_family(3, loose), InputError);
  const IndexPair short_family[] = {{1, 2}, {1, 3}};
  EXPECT_THROW(classify_adjacent_family(3, short_family), InputError);
}

TEST(AdjacentFamily, ExhaustiveUpToFive) {
  for (int n = 2; n <= 5; ++n) {
    const auto pairs = all_pairs(n);
    std::size_t families = 0;
    std::vector<IndexPair> pick;
    auto rec = [&](auto&& self, std::size_t from) -> void {
      if (pick.size() == static_cast<std::size_t>(n)) {
        ++families;
        const auto t = classify_adjacent_family(n, pick);
        for (const IndexPair& p : pick)
          ASSERT_EQ(t.orientation == AdjacentFamilyType::Orientation::Row ? p.i : p.j, t.i);
        return;
      }
      for (std::size_t k = from; k < pairs.size(); ++k) {
        if (!std::all_of(pick.begin(), pick.end(), [&](const IndexPair& q) { return complement_adjacent(q, pairs[k]); }))
          continue;
        pick.push_back(pairs[k]);
        self(self, k + 1);
        pick.pop_back();
      }
    };
    rec(rec, 0);
    EXPECT_EQ(families, static_cast<std::size_t>(2 * (n + 1))) << n;
  }
}
