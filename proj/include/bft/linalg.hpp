#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "bft/field.hpp"

namespace bft {

using Vec = std::vector<Elem>;

Elem dot(const Field& f, const Vec& a, const Vec& b);
/// Scales v so that its first nonzero entry is 1. Zero vectors are returned unchanged.
Vec normalized(const Field& f, Vec v);

/// Canonical form of a linear subspace of GF(q)^N: the rows of its reduced
/// row-echelon basis (pivots equal to 1, pivot columns strictly increasing,
/// zeros above and below every pivot). Two values compare equal exactly when
/// they describe the same subspace.
class EchelonBasis {
 public:
  /// The zero subspace of GF(q)^ambient.
  EchelonBasis(const Field& f, std::size_t ambient) : field_(&f), ambient_(ambient) {}

  /// Throws InputError unless rows are already the canonical echelon form of their span.
  static EchelonBasis from_canonical_rows(const Field& f, std::size_t ambient, std::vector<Vec> rows);
  static EchelonBasis full(const Field& f, std::size_t ambient);

  const Field& field() const { return *field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<Vec>& rows() const { return rows_; }

  bool contains(const Vec& v) const;
  bool contains(const EchelonBasis& other) const;

  friend bool operator==(const EchelonBasis& a, const EchelonBasis& b) {
    return a.field_->order() == b.field_->order() && a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
  }
  friend std::strong_ordering operator<=>(const EchelonBasis& a, const EchelonBasis& b) {
    if (auto c = a.field_->order() <=> b.field_->order(); c != 0) return c;
    if (auto c = a.ambient_ <=> b.ambient_; c != 0) return c;
    if (auto c = a.rows_.size() <=> b.rows_.size(); c != 0) return c;
    return a.rows_ <=> b.rows_;
  }

 private:
  friend EchelonBasis rref(const Field&, std::size_t, std::span<const Vec>);

  const Field* field_;
  std::size_t ambient_;
  std::vector<Vec> rows_;
};

/// Reduced row-echelon basis of span(rows). Zero rows are dropped.
/// Throws InputError if some row does not have length `ambient`.
EchelonBasis rref(const Field& f, std::size_t ambient, std::span<const Vec> rows);

EchelonBasis subspace_sum(const EchelonBasis& a, const EchelonBasis& b);
EchelonBasis subspace_meet(const EchelonBasis& a, const EchelonBasis& b);
/// {y : y . x = 0 for all x in a} under the standard dot product.
EchelonBasis annihilator(const EchelonBasis& a);

}  // namespace bft
