#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "bft/flags.hpp"

namespace bft {

/// Ordered pair of distinct base labels, 1-based as in I_n = {1, ..., n+1}.
struct IndexPair {
  int i;
  int j;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

/// Subset of one apartment, indexed like ApartmentModel chambers.
using ChamberSet = boost::dynamic_bitset<>;

/// One apartment seen through its labelled base: chamber k corresponds to
/// the k-th permutation in lexicographic order, and each chamber component
/// is recorded as the set of base labels spanning it. Everything in this
/// header works on these label sets; geometry enters only when the model
/// is built from an Apartment and in is_exact_by_apartments.
class ApartmentModel {
 public:
  /// Purely combinatorial apartment of type A_n.
  explicit ApartmentModel(int n);
  /// Reads the label sets off the geometry of ap.
  explicit ApartmentModel(const Apartment& ap);

  int n() const { return n_; }
  std::size_t size() const { return perms_.size(); }
  const std::vector<Perm>& perms() const { return perms_; }
  /// Bit l set iff base point l+1 lies in component k of chamber c.
  std::uint32_t component(std::size_t c, int k) const { return masks_[c * n_ + k]; }
  std::size_t index_of(const Perm& p) const { return perm_rank(p); }
  const std::optional<Apartment>& geometry() const { return geometry_; }

  ChamberSet none() const { return ChamberSet(size()); }
  ChamberSet all() const { return ~none(); }

 private:
  int n_;
  std::vector<Perm> perms_;
  std::vector<std::uint32_t> masks_;
  std::optional<Apartment> geometry_;
};

/// A_i (chambers through p_i), A^i (chambers through p*_i), or A^j_i = A_i ∩ A^j.
struct FamilyLabel {
  enum class Kind { Point, Hyperplane, Mixed };
  Kind kind;
  int i;
  int j = 0;  // only for Mixed: the hyperplane label
};

ChamberSet subfamily(const ApartmentModel& m, FamilyLabel label);
ChamberSet point_family(const ApartmentModel& m, int i);
ChamberSet hyperplane_family(const ApartmentModel& m, int i);

/// Trace criterion: for each label i the intersection of all trace members
/// through p_i is p_i itself.
bool is_exact_by_trace(const ApartmentModel& m, const ChamberSet& subset);
/// Oracle: the apartment is the only one of the building containing the subset.
bool is_exact_by_apartments(const Building& b, const ApartmentModel& m, const ChamberSet& subset,
                            bool force = false);

/// Largest subset whose trace lies in {S : p_i p_j ⊂ S or p_i ∉ S}.
ChamberSet max_inexact(const ApartmentModel& m, IndexPair ij);
/// The apartment minus max_inexact(ij).
ChamberSet complement_set(const ApartmentModel& m, IndexPair ij);
/// Chambers with 1 < pos(i) < pos(j) < n+1 (positions 1-based).
ChamberSet residual(const ApartmentModel& m, IndexPair ij);

/// Index of the complement flag (components replaced by their base
/// complements, order reversed).
std::size_t complement_chamber(const ApartmentModel& m, std::size_t c);
ChamberSet complement_image(const ApartmentModel& m, const ChamberSet& s);
/// F_{σ_ij σ_F}: swaps the roles of labels i and j.
std::size_t d_transform(const ApartmentModel& m, IndexPair ij, std::size_t c);

/// Relative position of two distinct pairs, cases 1..6.
int disposition_of(IndexPair a, IndexPair b);
/// |C_a ∩ C_b| by enumeration.
std::size_t intersection_count(const ApartmentModel& m, IndexPair a, IndexPair b);
/// Closed form for the case-`case_id` intersection count. Throws
/// UndefinedValueError for case 6 at n = 2 and InputError for bad arguments.
std::uint64_t closed_form(int n, int case_id);
/// Cases 2 and 3: i = k or j = m.
bool complement_adjacent(IndexPair a, IndexPair b);

struct StarIntersections {
  ChamberSet rows;     // ∩_{j≠i} C_ij
  ChamberSet columns;  // ∩_{j≠i} C_ji
};
StarIntersections star_intersections(const ApartmentModel& m, int i);

struct AdjacentFamilyType {
  enum class Orientation { Row, Column };
  int i;
  Orientation orientation;
  friend bool operator==(const AdjacentFamilyType&, const AdjacentFamilyType&) = default;
};
/// A family of n mutually adjacent pairs is {(i,j)}_{j≠i} (Row) or
/// {(j,i)}_{j≠i} (Column). Throws ViolationError otherwise.
AdjacentFamilyType classify_adjacent_family(int n, std::span<const IndexPair> pairs);

/// All ordered pairs of distinct labels for A_n.
std::vector<IndexPair> all_pairs(int n);

}  // namespace bft
