#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "bft/projective.hpp"

namespace bft {

/// A permutation of {0, ..., n}: perm[position] = label of the base point
/// added at that position.
using Perm = std::vector<int>;

/// A maximal flag S_0 < S_1 < ... < S_{n-1}, pdim(S_k) = k.
struct Chamber {
  std::vector<PSubspace> chain;

  const PSubspace& point() const { return chain.front(); }
  const PSubspace& hyperplane() const { return chain.back(); }

  friend bool operator==(const Chamber&, const Chamber&) = default;
  friend auto operator<=>(const Chamber& a, const Chamber& b) { return a.chain <=> b.chain; }
};

/// Throws InputError unless c is a maximal flag of s.
void validate_chamber(const ProjSpace& s, const Chamber& c);
/// True iff the chains agree in exactly n-1 positions.
bool adjacent(const Chamber& a, const Chamber& b);

/// Set of subspaces occurring as components of a chamber set.
using Trace = std::set<PSubspace>;
Trace trace_of(std::span<const Chamber> chambers);

/// S_k = span(p_{perm[0]}, ..., p_{perm[k]}).
Chamber chamber_of_perm(const ProjSpace& s, const BasePoints& base, const Perm& perm);
/// Inverse of chamber_of_perm; nullopt if c is not in the apartment of base.
std::optional<Perm> perm_of_chamber(const ProjSpace& s, const BasePoints& base, const Chamber& c);

/// All (n+1)! permutations in lexicographic order.
std::vector<Perm> all_perms(int n);
/// Position of perm in the lexicographic order of all_perms.
std::size_t perm_rank(const Perm& perm);

/// The chambers of the apartment of a base, indexed by the lexicographic
/// rank of their permutation.
class Apartment {
 public:
  Apartment(const ProjSpace& s, BasePoints base);

  const ProjSpace& space() const { return space_; }
  const BasePoints& base() const { return base_; }
  const std::vector<Chamber>& chambers() const& { return chambers_; }
  std::vector<Chamber> chambers() && { return std::move(chambers_); }
  const std::vector<Perm>& perms() const { return perms_; }
  bool contains(const Chamber& c) const;
  /// Index of c among chambers(), or nullopt.
  std::optional<std::size_t> index_of(const Chamber& c) const;

 private:
  ProjSpace space_;
  BasePoints base_;
  std::vector<Perm> perms_;
  std::vector<Chamber> chambers_;
  std::map<Chamber, std::size_t> index_;
};

Apartment apartment_of(const ProjSpace& s, const BasePoints& base);

/// Default enumeration cap for exhaustive base sweeps: n <= 4 and q <= 3.
bool within_base_cap(const ProjSpace& s);

/// Number of bases of PG(n,q) (unordered independent (n+1)-sets), by formula.
std::uint64_t base_count(const ProjSpace& s);
/// Number of subspaces of pdim k in PG(n,q), by the Gaussian binomial.
std::uint64_t subspace_count(const ProjSpace& s, int pdim);
/// Number of maximal flags of PG(n,q), by formula.
std::uint64_t chamber_count(const ProjSpace& s);

/// Chamber index of one projective space. Points and chambers are built in the
/// constructor; bases are enumerated once on first use and are then shared
/// read-only, so a Building may be queried concurrently.
class Building {
 public:
  explicit Building(const ProjSpace& s);

  const ProjSpace& space() const { return space_; }
  const std::vector<Point>& points() const { return points_; }
  /// Every maximal flag exactly once, in lexicographic order.
  const std::vector<Chamber>& chambers() const& { return chambers_; }
  std::vector<Chamber> chambers() && { return std::move(chambers_); }
  std::optional<std::size_t> index_of(const Chamber& c) const;
  std::optional<std::size_t> point_index(const Point& p) const;
  /// All hyperplanes, ordered by their dual coordinates.
  const std::vector<PSubspace>& hyperplanes() const { return hyperplanes_; }

  /// Every base, each with sorted points. Throws UnsupportedError beyond the
  /// default cap unless force is set.
  const std::vector<BasePoints>& bases(bool force = false) const;
  /// Chamber indices of the apartment of bases()[k].
  const boost::dynamic_bitset<>& apartment_mask(std::size_t k, bool force = false) const;
  boost::dynamic_bitset<> mask_of(std::span<const Chamber> chambers) const;

 private:
  void enumerate_bases() const;

  ProjSpace space_;
  std::vector<Point> points_;
  std::vector<PSubspace> hyperplanes_;
  std::vector<Chamber> chambers_;
  std::map<Chamber, std::size_t> index_;
  std::map<Point, std::size_t> point_index_;

  mutable std::once_flag bases_once_;
  mutable std::vector<BasePoints> bases_;
  mutable std::vector<boost::dynamic_bitset<>> apartment_masks_;
};

std::vector<Chamber> chambers_of(const ProjSpace& s);

/// Every base whose apartment contains all chambers of the subset.
std::vector<BasePoints> apartments_containing(const Building& b, std::span<const Chamber> subset, bool force = false);

/// A base whose apartment contains both chambers, built from the relative
/// position of the two chains; the new point in each step is the
/// lexicographically smallest admissible one.
BasePoints common_apartment(const ProjSpace& s, const Chamber& a, const Chamber& b);

}  // namespace bft
