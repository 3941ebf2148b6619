#include "bft/flags.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "bft/errors.hpp"

namespace bft {
namespace {

using u128 = unsigned __int128;

u128 ipow(u128 b, int e) {
  u128 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// bases of PG(4,3) already number about 10^8, far beyond desk scale
constexpr std::uint64_t kMaxEnumeratedBases = 2'000'000;

std::string space_name(const ProjSpace& s) {
  return "PG(" + std::to_string(s.dim()) + "," + std::to_string(s.q()) + ")";
}

}  // namespace

void validate_chamber(const ProjSpace& s, const Chamber& c) {
  if (c.chain.size() != static_cast<std::size_t>(s.dim()))
    throw InputError("a chamber of " + space_name(s) + " has " + std::to_string(s.dim()) + " components, got " +
                     std::to_string(c.chain.size()));
  for (std::size_t k = 0; k < c.chain.size(); ++k) {
    const PSubspace& sub = c.chain[k];
    if (sub.basis().ambient() != s.ambient() || sub.basis().field().order() != s.q())
      throw InputError("chamber component does not belong to " + space_name(s));
    if (sub.pdim() != static_cast<int>(k))
      throw InputError("chamber component " + std::to_string(k) + " has dimension " + std::to_string(sub.pdim()));
    if (k > 0 && !sub.contains(c.chain[k - 1])) throw InputError("chamber components are not nested");
  }
}

bool adjacent(const Chamber& a, const Chamber& b) {
  if (a.chain.size() != b.chain.size()) return false;
  std::size_t agree = 0;
  for (std::size_t k = 0; k < a.chain.size(); ++k)
    if (a.chain[k] == b.chain[k]) ++agree;
  return agree + 1 == a.chain.size();
}

Trace trace_of(std::span<const Chamber> chambers) {
  Trace t;
  for (const Chamber& c : chambers) t.insert(c.chain.begin(), c.chain.end());
  return t;
}

Chamber chamber_of_perm(const ProjSpace& s, const BasePoints& base, const Perm& perm) {
  if (perm.size() != base.size()) throw InputError("permutation has the wrong length");
  std::vector<bool> seen(perm.size(), false);
  for (int v : perm) {
    if (v < 0 || static_cast<std::size_t>(v) >= perm.size() || seen[v]) throw InputError("not a permutation");
    seen[v] = true;
  }
  Chamber c;
  std::vector<Vec> rows;
  for (int k = 0; k < s.dim(); ++k) {
    rows.push_back(base[perm[k]].coords());
    c.chain.emplace_back(rref(s.field(), s.ambient(), rows));
  }
  return c;
}

std::optional<Perm> perm_of_chamber(const ProjSpace& s, const BasePoints& base, const Chamber& c) {
  validate_chamber(s, c);
  Perm perm;
  std::vector<bool> used(base.size(), false);
  for (const PSubspace& sub : c.chain) {
    int added = -1;
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (used[i] || !sub.contains(base[i])) continue;
      if (added >= 0) return std::nullopt;
      added = static_cast<int>(i);
    }
    if (added < 0) return std::nullopt;
    used[added] = true;
    perm.push_back(added);
  }
  for (std::size_t i = 0; i < base.size(); ++i)
    if (!used[i]) perm.push_back(static_cast<int>(i));
  // each component must be spanned by the base points it contains
  if (chamber_of_perm(s, base, perm) != c) return std::nullopt;
  return perm;
}

std::vector<Perm> all_perms(int n) {
  Perm p(static_cast<std::size_t>(n) + 1);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::size_t perm_rank(const Perm& perm) {
  // Lehmer code
  const std::size_t len = perm.size();
  std::size_t rank = 0;
  for (std::size_t i = 0; i < len; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < len; ++j)
      if (perm[j] < perm[i]) ++smaller;
    rank = rank * (len - i) + smaller;
  }
  return rank;
}

Apartment::Apartment(const ProjSpace& s, BasePoints base)
    : space_(s), base_(std::move(base)), perms_(all_perms(s.dim())) {
  if (base_.size() != s.ambient()) throw InputError("base does not belong to this space");
  chambers_.reserve(perms_.size());
  for (const Perm& p : perms_) {
    index_.emplace(chamber_of_perm(s, base_, p), chambers_.size());
    chambers_.push_back(chamber_of_perm(s, base_, p));
  }
}

bool Apartment::contains(const Chamber& c) const { return index_.contains(c); }

std::optional<std::size_t> Apartment::index_of(const Chamber& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Apartment apartment_of(const ProjSpace& s, const BasePoints& base) { return Apartment(s, base); }

std::uint64_t base_count(const ProjSpace& s) {
  const u128 q = static_cast<u128>(s.q());
  const int len = s.dim() + 1;
  u128 ordered = 1;
  for (int k = 0; k < len; ++k) ordered *= (ipow(q, len) - ipow(q, k)) / (q - 1);
  u128 fact = 1;
  for (int k = 2; k <= len; ++k) fact *= static_cast<u128>(k);
  return static_cast<std::uint64_t>(ordered / fact);
}

std::uint64_t subspace_count(const ProjSpace& s, int pdim) {
  const int len = s.dim() + 1;
  const int k = pdim + 1;
  if (k < 0 || k > len) return 0;
  const u128 q = static_cast<u128>(s.q());
  u128 num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= ipow(q, len - i) - 1;
    den *= ipow(q, i + 1) - 1;
  }
  return static_cast<std::uint64_t>(num / den);
}

std::uint64_t chamber_count(const ProjSpace& s) {
  const u128 q = static_cast<u128>(s.q());
  u128 c = 1;
  for (int k = 1; k <= s.dim() + 1; ++k) c *= (ipow(q, k) - 1) / (q - 1);
  return static_cast<std::uint64_t>(c);
}

bool within_base_cap(const ProjSpace& s) {
  return s.dim() <= 4 && s.q() <= 3 && base_count(s) <= kMaxEnumeratedBases;
}

Building::Building(const ProjSpace& s) : space_(s), points_(points_of(s)) {
  for (std::size_t i = 0; i < points_.size(); ++i) point_index_.emplace(points_[i], i);

  // grow chains one dimension at a time; superspaces of S are span(S, x), x outside S
  std::vector<Chamber> partial;
  for (const Point& p : points_) partial.push_back(Chamber{{PSubspace::of(s.field(), p)}});
  for (int k = 1; k < s.dim(); ++k) {
    std::vector<Chamber> next;
    for (const Chamber& c : partial) {
      std::set<PSubspace> ups;
      for (const Point& x : points_)
        if (!c.chain.back().contains(x)) ups.insert(join(c.chain.back(), PSubspace::of(s.field(), x)));
      for (const PSubspace& u : ups) {
        Chamber e = c;
        e.chain.push_back(u);
        next.push_back(std::move(e));
      }
    }
    partial = std::move(next);
  }
  std::sort(partial.begin(), partial.end());
  chambers_ = std::move(partial);
  for (std::size_t i = 0; i < chambers_.size(); ++i) index_.emplace(chambers_[i], i);

  for (const Point& p : points_) hyperplanes_.push_back(hyperplane_of(s, p));
}

std::optional<std::size_t> Building::index_of(const Chamber& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Building::point_index(const Point& p) const {
  auto it = point_index_.find(p);
  if (it == point_index_.end()) return std::nullopt;
  return it->second;
}

void Building::enumerate_bases() const {
  const std::size_t need = space_.ambient();
  std::vector<std::size_t> pick;
  std::vector<PSubspace> spans{PSubspace::empty(space_)};
  // depth-first over increasing point indices, pruning dependent prefixes
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (pick.size() == need) {
      std::vector<Point> pts;
      for (std::size_t i : pick) pts.push_back(points_[i]);
      bases_.emplace_back(space_, std::move(pts));
      return;
    }
    for (std::size_t i = from; i < points_.size(); ++i) {
      if (spans.back().contains(points_[i])) continue;
      pick.push_back(i);
      spans.push_back(join(spans.back(), PSubspace::of(space_.field(), points_[i])));
      self(self, i + 1);
      spans.pop_back();
      pick.pop_back();
    }
  };
  rec(rec, 0);

  const auto perms = all_perms(space_.dim());
  apartment_masks_.reserve(bases_.size());
  for (const BasePoints& b : bases_) {
    boost::dynamic_bitset<> m(chambers_.size());
    for (const Perm& p : perms) m.set(index_.at(chamber_of_perm(space_, b, p)));
    apartment_masks_.push_back(std::move(m));
  }
}

const std::vector<BasePoints>& Building::bases(bool force) const {
  if (!force && !within_base_cap(space_))
    throw UnsupportedError("exhaustive base enumeration of " + space_name(space_) +
                           " exceeds the default cap (n <= 4, q <= 3, at most 2e6 bases); use force to override");
  std::call_once(bases_once_, [this] { enumerate_bases(); });
  return bases_;
}

const boost::dynamic_bitset<>& Building::apartment_mask(std::size_t k, bool force) const {
  bases(force);
  return apartment_masks_.at(k);
}

boost::dynamic_bitset<> Building::mask_of(std::span<const Chamber> chambers) const {
  boost::dynamic_bitset<> m(chambers_.size());
  for (const Chamber& c : chambers) {
    auto idx = index_of(c);
    if (!idx) throw InputError("chamber does not belong to this space");
    m.set(*idx);
  }
  return m;
}

std::vector<Chamber> chambers_of(const ProjSpace& s) { return Building(s).chambers(); }

std::vector<BasePoints> apartments_containing(const Building& b, std::span<const Chamber> subset, bool force) {
  const auto want = b.mask_of(subset);
  const auto& bases = b.bases(force);
  std::vector<BasePoints> out;
  for (std::size_t k = 0; k < bases.size(); ++k)
    if (want.is_subset_of(b.apartment_mask(k, force))) out.push_back(bases[k]);
  return out;
}

BasePoints common_apartment(const ProjSpace& s, const Chamber& a, const Chamber& b) {
  validate_chamber(s, a);
  validate_chamber(s, b);
  auto level = [&](const Chamber& c, int k) {
    if (k < 0) return PSubspace::empty(s);
    if (k >= s.dim()) return PSubspace::whole(s);
    return c.chain[k];
  };
  const auto pts = points_of(s);
  std::vector<Point> chosen;
  for (int i = 0; i <= s.dim(); ++i) {
    const PSubspace lower = level(a, i - 1);
    const PSubspace upper = level(a, i);
    // first member of b's chain whose meet with upper already fills the step
    int j = 0;
    while (join(lower, meet(upper, level(b, j))).pdim() != upper.pdim()) ++j;
    const PSubspace slot = meet(upper, level(b, j));
    auto it = std::find_if(pts.begin(), pts.end(),
                           [&](const Point& p) { return slot.contains(p) && !lower.contains(p); });
    chosen.push_back(*it);
  }
  BasePoints base(s, std::move(chosen));
  const Apartment ap(s, base);
  if (!ap.contains(a) || !ap.contains(b)) throw ViolationError("common_apartment: construction failed");
  return base;
}

}  // namespace bft
