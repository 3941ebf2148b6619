#include "bft/combinatorics.hpp"

#include <set>
#include <string>

#include "bft/errors.hpp"

namespace bft {
namespace {

void check_label(const ApartmentModel& m, int i) {
  if (i < 1 || i > m.n() + 1)
    throw InputError("index " + std::to_string(i) + " outside 1.." + std::to_string(m.n() + 1));
}

void check_pair(const ApartmentModel& m, IndexPair p) {
  check_label(m, p.i);
  check_label(m, p.j);
  if (p.i == p.j) throw InputError("index pair needs distinct entries");
}

std::uint32_t bit(int label) { return 1u << (label - 1); }

std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int t = 2; t <= k; ++t) f *= static_cast<std::uint64_t>(t);
  return f;
}

int checked_rank(int n) {
  if (n < 2) throw InputError("apartment model needs n >= 2");
  if (n > 8) throw UnsupportedError("apartment model supports n <= 8");
  return n;
}

}  // namespace

ApartmentModel::ApartmentModel(int n) : n_(checked_rank(n)), perms_(all_perms(n)) {
  masks_.resize(perms_.size() * n_);
  for (std::size_t c = 0; c < perms_.size(); ++c) {
    std::uint32_t acc = 0;
    for (int k = 0; k < n_; ++k) {
      acc |= 1u << perms_[c][k];
      masks_[c * n_ + k] = acc;
    }
  }
}

ApartmentModel::ApartmentModel(const Apartment& ap) : ApartmentModel(ap.space().dim()) {
  const BasePoints& base = ap.base();
  for (std::size_t c = 0; c < size(); ++c) {
    const Chamber& ch = ap.chambers()[c];
    for (int k = 0; k < n_; ++k) {
      std::uint32_t m = 0;
      for (std::size_t l = 0; l < base.size(); ++l)
        if (ch.chain[k].contains(base[l])) m |= 1u << l;
      masks_[c * n_ + k] = m;
    }
  }
  geometry_ = ap;
}

ChamberSet subfamily(const ApartmentModel& m, FamilyLabel label) {
  check_label(m, label.i);
  const std::uint32_t full = (1u << (m.n() + 1)) - 1;
  ChamberSet out = m.none();
  for (std::size_t c = 0; c < m.size(); ++c) {
    const bool through_point = m.component(c, 0) == bit(label.i);
    switch (label.kind) {
      case FamilyLabel::Kind::Point:
        out[c] = through_point;
        break;
      case FamilyLabel::Kind::Hyperplane:
        out[c] = m.component(c, m.n() - 1) == (full & ~bit(label.i));
        break;
      case FamilyLabel::Kind::Mixed:
        check_label(m, label.j);
        out[c] = through_point && m.component(c, m.n() - 1) == (full & ~bit(label.j));
        break;
    }
  }
  return out;
}

ChamberSet point_family(const ApartmentModel& m, int i) { return subfamily(m, {FamilyLabel::Kind::Point, i}); }
ChamberSet hyperplane_family(const ApartmentModel& m, int i) {
  return subfamily(m, {FamilyLabel::Kind::Hyperplane, i});
}

bool is_exact_by_trace(const ApartmentModel& m, const ChamberSet& subset) {
  if (subset.size() != m.size()) throw InputError("subset does not belong to this apartment");
  std::set<std::uint32_t> trace;
  for (auto c = subset.find_first(); c != ChamberSet::npos; c = subset.find_next(c))
    for (int k = 0; k < m.n(); ++k) trace.insert(m.component(c, k));
  const std::uint32_t full = (1u << (m.n() + 1)) - 1;
  for (int i = 1; i <= m.n() + 1; ++i) {
    std::uint32_t meet = full;
    for (std::uint32_t t : trace)
      if (t & bit(i)) meet &= t;
    if (meet != bit(i)) return false;
  }
  return true;
}

bool is_exact_by_apartments(const Building& b, const ApartmentModel& m, const ChamberSet& subset, bool force) {
  if (!m.geometry()) throw InputError("exactness oracle needs an apartment with geometry");
  if (subset.size() != m.size()) throw InputError("subset does not belong to this apartment");
  std::vector<Chamber> chambers;
  for (auto c = subset.find_first(); c != ChamberSet::npos; c = subset.find_next(c))
    chambers.push_back(m.geometry()->chambers()[c]);
  return apartments_containing(b, chambers, force).size() == 1;
}

ChamberSet max_inexact(const ApartmentModel& m, IndexPair ij) {
  check_pair(m, ij);
  const std::uint32_t line = bit(ij.i) | bit(ij.j);
  ChamberSet out = m.none();
  for (std::size_t c = 0; c < m.size(); ++c) {
    bool inside = true;
    for (int k = 0; k < m.n() && inside; ++k) {
      const std::uint32_t t = m.component(c, k);
      inside = (t & line) == line || (t & bit(ij.i)) == 0;
    }
    out[c] = inside;
  }
  return out;
}

ChamberSet complement_set(const ApartmentModel& m, IndexPair ij) { return m.all() - max_inexact(m, ij); }

ChamberSet residual(const ApartmentModel& m, IndexPair ij) {
  check_pair(m, ij);
  ChamberSet out = m.none();
  for (std::size_t c = 0; c < m.size(); ++c) {
    // position of a label = first component containing it, n if none (0-based)
    auto pos = [&](int label) {
      for (int k = 0; k < m.n(); ++k)
        if (m.component(c, k) & bit(label)) return k;
      return m.n();
    };
    const int pi = pos(ij.i);
    const int pj = pos(ij.j);
    out[c] = 0 < pi && pi < pj && pj < m.n();
  }
  return out;
}

std::size_t complement_chamber(const ApartmentModel& m, std::size_t c) {
  if (c >= m.size()) throw InputError("chamber is not in the apartment");
  const std::uint32_t full = (1u << (m.n() + 1)) - 1;
  // component k of F^c is the complement of component n-1-k of F
  std::vector<std::uint32_t> comp(m.n());
  for (int k = 0; k < m.n(); ++k) comp[k] = full & ~m.component(c, m.n() - 1 - k);
  Perm p;
  std::uint32_t prev = 0;
  for (int k = 0; k < m.n(); ++k) {
    const std::uint32_t added = comp[k] & ~prev;
    p.push_back(__builtin_ctz(added));
    prev = comp[k];
  }
  p.push_back(__builtin_ctz(full & ~prev));
  return m.index_of(p);
}

ChamberSet complement_image(const ApartmentModel& m, const ChamberSet& s) {
  ChamberSet out = m.none();
  for (auto c = s.find_first(); c != ChamberSet::npos; c = s.find_next(c)) out.set(complement_chamber(m, c));
  return out;
}

std::size_t d_transform(const ApartmentModel& m, IndexPair ij, std::size_t c) {
  check_pair(m, ij);
  if (c >= m.size()) throw InputError("chamber is not in the apartment");
  Perm p = m.perms()[c];
  for (int& v : p) {
    if (v == ij.i - 1)
      v = ij.j - 1;
    else if (v == ij.j - 1)
      v = ij.i - 1;
  }
  return m.index_of(p);
}

int disposition_of(IndexPair a, IndexPair b) {
  if (a.i == a.j || b.i == b.j) throw InputError("index pair needs distinct entries");
  if (a == b) throw InputError("disposition needs two distinct pairs");
  std::set<int> j{a.i, a.j, b.i, b.j};
  if (j.size() == 2) return 1;  // i = m and j = k
  if (j.size() == 4) return 6;
  if (a.i == b.i) return 2;
  if (a.j == b.j) return 3;
  if (a.i == b.j) return 4;
  return 5;  // a.j == b.i
}

std::size_t intersection_count(const ApartmentModel& m, IndexPair a, IndexPair b) {
  return (complement_set(m, a) & complement_set(m, b)).count();
}

std::uint64_t closed_form(int n, int case_id) {
  if (n < 2) throw InputError("closed forms need n >= 2");
  if (case_id < 1 || case_id > 6) throw InputError("disposition case must be in 1..6");
  const std::uint64_t N = static_cast<std::uint64_t>(n);
  const std::uint64_t f = factorial(n);
  const std::uint64_t g = factorial(n - 1);
  switch (case_id) {
    case 1:
      return 0;
    case 2:
    case 3: {
      std::uint64_t v = f + (N - 2) * g;
      if (n >= 4) v += (N - 2) * (N - 3) * g / 3;
      return v;
    }
    case 4:
    case 5: {
      std::uint64_t v = g + (N - 2) * g;
      if (n >= 4) v += (N - 2) * (N - 3) * g / 6;
      return v;
    }
    default: {
      if (n == 2) throw UndefinedValueError("n6 is undefined at n = 2: case 6 needs four distinct indices");
      std::uint64_t v = f + (N - 1) * g;
      if (n >= 5) v += (N - 3) * (N - 4) * g / 4;
      return v;
    }
  }
}

bool complement_adjacent(IndexPair a, IndexPair b) { return a != b && (a.i == b.i || a.j == b.j); }

StarIntersections star_intersections(const ApartmentModel& m, int i) {
  check_label(m, i);
  StarIntersections out{m.all(), m.all()};
  for (int j = 1; j <= m.n() + 1; ++j) {
    if (j == i) continue;
    out.rows &= complement_set(m, {i, j});
    out.columns &= complement_set(m, {j, i});
  }
  return out;
}

AdjacentFamilyType classify_adjacent_family(int n, std::span<const IndexPair> pairs) {
  if (pairs.size() != static_cast<std::size_t>(n))
    throw InputError("an adjacent family has exactly n = " + std::to_string(n) + " members");
  for (const IndexPair& p : pairs)
    if (p.i == p.j || p.i < 1 || p.j < 1 || p.i > n + 1 || p.j > n + 1) throw InputError("bad index pair");
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = a + 1; b < pairs.size(); ++b)
      if (!complement_adjacent(pairs[a], pairs[b])) throw InputError("family members are not mutually adjacent");

  auto matches = [&](int i, bool row) {
    std::set<IndexPair> want;
    for (int j = 1; j <= n + 1; ++j)
      if (j != i) want.insert(row ? IndexPair{i, j} : IndexPair{j, i});
    return std::set<IndexPair>(pairs.begin(), pairs.end()) == want;
  };
  for (int i = 1; i <= n + 1; ++i) {
    if (matches(i, true)) return {i, AdjacentFamilyType::Orientation::Row};
    if (matches(i, false)) return {i, AdjacentFamilyType::Orientation::Column};
  }
  throw ViolationError("mutually adjacent family is neither a row nor a column family");
}

std::vector<IndexPair> all_pairs(int n) {
  std::vector<IndexPair> out;
  for (int i = 1; i <= n + 1; ++i)
    for (int j = 1; j <= n + 1; ++j)
      if (i != j) out.push_back({i, j});
  return out;
}

}  // namespace bft
