#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "bft/field.hpp"
#include "bft/linalg.hpp"

namespace bft {

/// PG(n, q) modelled as the lattice of subspaces of V = GF(q)^{n+1}.
class ProjSpace {
 public:
  /// Throws InputError for n < 2 and UnsupportedError for unsupported q.
  ProjSpace(int n, int q);

  int dim() const { return n_; }
  std::size_t ambient() const { return static_cast<std::size_t>(n_) + 1; }
  const Field& field() const { return *field_; }
  int q() const { return field_->order(); }

  friend bool operator==(const ProjSpace& a, const ProjSpace& b) { return a.n_ == b.n_ && a.q() == b.q(); }

 private:
  int n_;
  const Field* field_;
};

/// A point of PG(n,q): a nonzero vector scaled so its first nonzero entry is 1.
class Point {
 public:
  /// Throws InputError for the zero vector.
  Point(const Field& f, Vec coords);

  const Vec& coords() const { return coords_; }
  std::size_t ambient() const { return coords_.size(); }

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;

 private:
  Vec coords_;
};

/// A subspace of PG(n,q); projective dimension is rank - 1, so the empty
/// subspace has pdim -1.
class PSubspace {
 public:
  explicit PSubspace(EchelonBasis basis) : basis_(std::move(basis)) {}
  static PSubspace empty(const ProjSpace& s) { return PSubspace(EchelonBasis(s.field(), s.ambient())); }
  static PSubspace whole(const ProjSpace& s) { return PSubspace(EchelonBasis::full(s.field(), s.ambient())); }
  static PSubspace of(const Field& f, const Point& p);

  const EchelonBasis& basis() const { return basis_; }
  int pdim() const { return static_cast<int>(basis_.rank()) - 1; }
  bool contains(const Point& p) const { return basis_.contains(p.coords()); }
  bool contains(const PSubspace& s) const { return basis_.contains(s.basis_); }
  /// The unique point of a 0-dimensional subspace.
  Point as_point() const;

  friend bool operator==(const PSubspace&, const PSubspace&) = default;
  friend std::strong_ordering operator<=>(const PSubspace& a, const PSubspace& b) { return a.basis_ <=> b.basis_; }

 private:
  EchelonBasis basis_;
};

PSubspace join(const PSubspace& a, const PSubspace& b);
PSubspace meet(const PSubspace& a, const PSubspace& b);

/// A labelled base p_1, ..., p_{n+1}. The label order is kept because the
/// apartment combinatorics indexes chambers by permutations of the labels;
/// equality ignores it.
class BasePoints {
 public:
  /// Throws InputError unless pts are n+1 independent points of the space.
  BasePoints(const ProjSpace& s, std::vector<Point> pts);
  static BasePoints standard(const ProjSpace& s);

  const std::vector<Point>& points() const { return pts_; }
  std::size_t size() const { return pts_.size(); }
  const Point& operator[](std::size_t i) const { return pts_[i]; }
  /// Same points, sorted lexicographically.
  std::vector<Point> sorted() const;

  friend bool operator==(const BasePoints& a, const BasePoints& b) { return a.sorted() == b.sorted(); }

 private:
  std::vector<Point> pts_;
};

/// All (q^{n+1}-1)/(q-1) points in lexicographic coordinate order.
std::vector<Point> points_of(const ProjSpace& s);
/// Smallest subspace containing pts (empty subspace for empty input).
PSubspace span_points(const ProjSpace& s, std::span<const Point> pts);
bool is_independent(const ProjSpace& s, std::span<const Point> pts);
/// Greedy extension: repeatedly appends the lexicographically smallest point
/// that keeps the set independent. Throws InputError if pts are dependent.
BasePoints extend_to_base(const ProjSpace& s, std::span<const Point> pts);

/// P* realised inside the same coordinate space through annihilators:
/// a k-dimensional subspace goes to an (n-k-1)-dimensional one and the map
/// is an inclusion-reversing involution.
PSubspace dual_subspace(const ProjSpace& s, const PSubspace& sub);
/// Coordinates of the hyperplane h as a point of P*.
Point dual_point(const ProjSpace& s, const PSubspace& hyperplane);
/// The hyperplane of P represented by a point of P*.
PSubspace hyperplane_of(const ProjSpace& s, const Point& dual);
/// p*_i = span(B - {p_i}), read as points of P*, in label order.
BasePoints dual_base(const ProjSpace& s, const BasePoints& b);

/// x -> hom(x) . M for an (n+1) x (n'+1) matrix M over the target field
/// (row-vector convention: row k of M is the image of e_k).
class SemilinearMap {
 public:
  /// Throws InputError for a malformed matrix and ViolationError unless M
  /// has full row rank, which for a field embedding is the same as
  /// preserving linear independence.
  SemilinearMap(FieldHom hom, std::vector<Vec> matrix);
  static SemilinearMap identity(const ProjSpace& s);

  const FieldHom& hom() const { return hom_; }
  const std::vector<Vec>& matrix() const { return m_; }
  std::size_t source_ambient() const { return m_.size(); }
  std::size_t target_ambient() const { return m_.front().size(); }

  Vec apply(const Vec& x) const;
  Point apply(const Point& p) const;
  /// span of the image of a subspace (same projective dimension).
  PSubspace apply(const PSubspace& s) const;

 private:
  FieldHom hom_;
  std::vector<Vec> m_;
};

/// The residue at a point p (n >= 3): V / <p> as PG(n-1, q). Subspaces
/// through p of pdim k project to subspaces of pdim k-1, bijectively.
class Residue {
 public:
  /// Throws UnsupportedError for n == 2.
  Residue(const ProjSpace& s, const Point& p);

  const ProjSpace& quotient() const { return quotient_; }
  const Point& center() const { return center_; }
  /// Throws InputError if sub does not contain the center.
  PSubspace project(const PSubspace& sub) const;
  PSubspace lift(const PSubspace& sub) const;

 private:
  Vec project_vec(const Vec& v) const;

  ProjSpace space_;
  ProjSpace quotient_;
  Point center_;
  std::size_t pivot_;
};

Residue residue(const ProjSpace& s, const Point& p);

}  // namespace bft
