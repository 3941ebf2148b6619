#include "bft/projective.hpp"

#include <algorithm>
#include <string>

#include "bft/errors.hpp"

namespace bft {

ProjSpace::ProjSpace(int n, int q) : n_(n), field_(&Field::get(q)) {
  if (n < 2) throw InputError("projective dimension must be at least 2, got " + std::to_string(n));
}

Point::Point(const Field& f, Vec coords) : coords_(normalized(f, std::move(coords))) {
  if (std::all_of(coords_.begin(), coords_.end(), [](Elem x) { return x == 0; }))
    throw InputError("the zero vector is not a point");
}

PSubspace PSubspace::of(const Field& f, const Point& p) {
  const std::vector<Vec> rows{p.coords()};
  return PSubspace(rref(f, p.ambient(), rows));
}

Point PSubspace::as_point() const {
  if (pdim() != 0) throw InputError("subspace of dimension " + std::to_string(pdim()) + " is not a point");
  return Point(basis_.field(), basis_.rows().front());
}

PSubspace join(const PSubspace& a, const PSubspace& b) { return PSubspace(subspace_sum(a.basis(), b.basis())); }
PSubspace meet(const PSubspace& a, const PSubspace& b) { return PSubspace(subspace_meet(a.basis(), b.basis())); }

BasePoints::BasePoints(const ProjSpace& s, std::vector<Point> pts) : pts_(std::move(pts)) {
  for (const Point& p : pts_)
    if (p.ambient() != s.ambient()) throw InputError("base point has wrong number of coordinates");
  if (pts_.size() != s.ambient() || !is_independent(s, pts_))
    throw InputError("a base needs " + std::to_string(s.ambient()) + " independent points");
}

BasePoints BasePoints::standard(const ProjSpace& s) {
  std::vector<Point> pts;
  for (std::size_t k = 0; k < s.ambient(); ++k) {
    Vec e(s.ambient(), 0);
    e[k] = 1;
    pts.emplace_back(s.field(), std::move(e));
  }
  return BasePoints(s, std::move(pts));
}

std::vector<Point> BasePoints::sorted() const {
  auto out = pts_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Point> points_of(const ProjSpace& s) {
  const int q = s.q();
  const std::size_t len = s.ambient();
  std::vector<Point> out;
  // normalized vectors: leading 1 at position lead, zeros before, anything after
  for (std::size_t lead = len; lead-- > 0;) {
    const std::size_t tail = len - lead - 1;
    std::size_t count = 1;
    for (std::size_t k = 0; k < tail; ++k) count *= static_cast<std::size_t>(q);
    for (std::size_t code = 0; code < count; ++code) {
      Vec v(len, 0);
      v[lead] = 1;
      std::size_t c = code;
      for (std::size_t k = len; k-- > lead + 1;) {
        v[k] = static_cast<Elem>(c % q);
        c /= q;
      }
      out.emplace_back(s.field(), std::move(v));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

PSubspace span_points(const ProjSpace& s, std::span<const Point> pts) {
  std::vector<Vec> rows;
  rows.reserve(pts.size());
  for (const Point& p : pts) rows.push_back(p.coords());
  return PSubspace(rref(s.field(), s.ambient(), rows));
}

bool is_independent(const ProjSpace& s, std::span<const Point> pts) {
  if (pts.size() > s.ambient()) return false;
  return span_points(s, pts).pdim() + 1 == static_cast<int>(pts.size());
}

BasePoints extend_to_base(const ProjSpace& s, std::span<const Point> pts) {
  if (!is_independent(s, pts)) throw InputError("cannot extend a dependent point set to a base");
  std::vector<Point> out(pts.begin(), pts.end());
  PSubspace span = span_points(s, out);
  for (const Point& p : points_of(s)) {
    if (out.size() == s.ambient()) break;
    if (span.contains(p)) continue;
    out.push_back(p);
    span = join(span, PSubspace::of(s.field(), p));
  }
  return BasePoints(s, std::move(out));
}

PSubspace dual_subspace(const ProjSpace& s, const PSubspace& sub) {
  if (sub.basis().ambient() != s.ambient()) throw InputError("subspace does not belong to this space");
  return PSubspace(annihilator(sub.basis()));
}

Point dual_point(const ProjSpace& s, const PSubspace& hyperplane) {
  if (hyperplane.pdim() != s.dim() - 1) throw InputError("dual_point expects a hyperplane");
  return dual_subspace(s, hyperplane).as_point();
}

PSubspace hyperplane_of(const ProjSpace& s, const Point& dual) {
  return dual_subspace(s, PSubspace::of(s.field(), dual));
}

BasePoints dual_base(const ProjSpace& s, const BasePoints& b) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    std::vector<Point> rest;
    for (std::size_t k = 0; k < b.size(); ++k)
      if (k != i) rest.push_back(b[k]);
    out.push_back(dual_point(s, span_points(s, rest)));
  }
  return BasePoints(s, std::move(out));
}

SemilinearMap::SemilinearMap(FieldHom hom, std::vector<Vec> matrix) : hom_(hom), m_(std::move(matrix)) {
  if (m_.empty()) throw InputError("empty matrix");
  const std::size_t cols = m_.front().size();
  for (const Vec& row : m_) {
    if (row.size() != cols) throw InputError("ragged matrix");
    for (Elem x : row)
      if (x >= hom_.target().order()) throw InputError("matrix entry outside the target field");
  }
  if (rref(hom_.target(), cols, m_).rank() != m_.size())
    throw ViolationError("matrix is singular; the induced map does not preserve independence");
}

SemilinearMap SemilinearMap::identity(const ProjSpace& s) {
  std::vector<Vec> id(s.ambient(), Vec(s.ambient(), 0));
  for (std::size_t k = 0; k < s.ambient(); ++k) id[k][k] = 1;
  return SemilinearMap(FieldHom::identity(s.field()), std::move(id));
}

Vec SemilinearMap::apply(const Vec& x) const {
  if (x.size() != m_.size()) throw InputError("vector length does not match the map's source");
  const Field& f = hom_.target();
  Vec y(target_ambient(), 0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    const Elem c = hom_(x[k]);
    if (c == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = f.add(y[j], f.mul(c, m_[k][j]));
  }
  return y;
}

Point SemilinearMap::apply(const Point& p) const { return Point(hom_.target(), apply(p.coords())); }

PSubspace SemilinearMap::apply(const PSubspace& s) const {
  std::vector<Vec> rows;
  for (const Vec& r : s.basis().rows()) rows.push_back(apply(r));
  return PSubspace(rref(hom_.target(), target_ambient(), rows));
}

Residue::Residue(const ProjSpace& s, const Point& p)
    : space_(s), quotient_(s.dim() == 2 ? s : ProjSpace(s.dim() - 1, s.q())), center_(p), pivot_(0) {
  if (s.dim() == 2) throw UnsupportedError("the residue of a point in a plane is a line, not a projective space");
  if (p.ambient() != s.ambient()) throw InputError("point does not belong to this space");
  while (center_.coords()[pivot_] == 0) ++pivot_;
}

Vec Residue::project_vec(const Vec& v) const {
  const Field& f = space_.field();
  const Elem c = f.neg(v[pivot_]);
  Vec out;
  out.reserve(v.size() - 1);
  for (std::size_t k = 0; k < v.size(); ++k)
    if (k != pivot_) out.push_back(f.add(v[k], f.mul(c, center_.coords()[k])));
  return out;
}

PSubspace Residue::project(const PSubspace& sub) const {
  if (!sub.contains(center_)) throw InputError("subspace does not pass through the residue center");
  std::vector<Vec> rows;
  for (const Vec& r : sub.basis().rows()) rows.push_back(project_vec(r));
  return PSubspace(rref(space_.field(), quotient_.ambient(), rows));
}

PSubspace Residue::lift(const PSubspace& sub) const {
  std::vector<Vec> rows{center_.coords()};
  for (const Vec& r : sub.basis().rows()) {
    Vec v = r;
    v.insert(v.begin() + static_cast<std::ptrdiff_t>(pivot_), Elem{0});
    rows.push_back(std::move(v));
  }
  return PSubspace(rref(space_.field(), space_.ambient(), rows));
}

Residue residue(const ProjSpace& s, const Point& p) { return Residue(s, p); }

}  // namespace bft
