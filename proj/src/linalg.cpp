#include "bft/linalg.hpp"

#include <string>

#include "bft/errors.hpp"

namespace bft {
namespace {

void require_compatible(const EchelonBasis& a, const EchelonBasis& b) {
  if (a.ambient() != b.ambient() || a.field().order() != b.field().order())
    throw InputError("subspaces live in different ambient spaces");
}

}  // namespace

Elem dot(const Field& f, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw InputError("dot product of vectors with different lengths");
  Elem s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s = f.add(s, f.mul(a[k], b[k]));
  return s;
}

Vec normalized(const Field& f, Vec v) {
  for (Elem x : v) {
    if (x == 0) continue;
    const Elem s = f.inv(x);
    for (Elem& y : v) y = f.mul(y, s);
    break;
  }
  return v;
}

EchelonBasis rref(const Field& f, std::size_t ambient, std::span<const Vec> rows) {
  std::vector<Vec> m;
  m.reserve(rows.size());
  for (const Vec& r : rows) {
    if (r.size() != ambient)
      throw InputError("row of length " + std::to_string(r.size()) + " in ambient dimension " +
                       std::to_string(ambient));
    m.push_back(r);
  }

  std::size_t lead = 0;
  for (std::size_t col = 0; col < ambient && lead < m.size(); ++col) {
    std::size_t piv = lead;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[lead], m[piv]);
    const Elem s = f.inv(m[lead][col]);
    for (Elem& x : m[lead]) x = f.mul(x, s);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == lead || m[r][col] == 0) continue;
      const Elem c = f.neg(m[r][col]);
      for (std::size_t k = col; k < ambient; ++k) m[r][k] = f.add(m[r][k], f.mul(c, m[lead][k]));
    }
    ++lead;
  }
  m.resize(lead);

  EchelonBasis out(f, ambient);
  out.rows_ = std::move(m);
  return out;
}

EchelonBasis EchelonBasis::from_canonical_rows(const Field& f, std::size_t ambient, std::vector<Vec> rows) {
  EchelonBasis b = rref(f, ambient, rows);
  if (b.rows_ != rows) throw InputError("rows are not a reduced row-echelon basis");
  return b;
}

EchelonBasis EchelonBasis::full(const Field& f, std::size_t ambient) {
  std::vector<Vec> id(ambient, Vec(ambient, 0));
  for (std::size_t k = 0; k < ambient; ++k) id[k][k] = 1;
  return rref(f, ambient, id);
}

bool EchelonBasis::contains(const Vec& v) const {
  if (v.size() != ambient_) throw InputError("vector length does not match ambient dimension");
  // reduce v against the pivots; v lies in the span iff nothing is left
  Vec r = v;
  for (const Vec& row : rows_) {
    std::size_t piv = 0;
    while (row[piv] == 0) ++piv;
    if (r[piv] == 0) continue;
    const Elem c = field_->neg(r[piv]);
    for (std::size_t k = piv; k < ambient_; ++k) r[k] = field_->add(r[k], field_->mul(c, row[k]));
  }
  for (Elem x : r)
    if (x != 0) return false;
  return true;
}

bool EchelonBasis::contains(const EchelonBasis& other) const {
  require_compatible(*this, other);
  for (const Vec& row : other.rows_)
    if (!contains(row)) return false;
  return true;
}

EchelonBasis subspace_sum(const EchelonBasis& a, const EchelonBasis& b) {
  require_compatible(a, b);
  std::vector<Vec> rows = a.rows();
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  return rref(a.field(), a.ambient(), rows);
}

EchelonBasis subspace_meet(const EchelonBasis& a, const EchelonBasis& b) {
  require_compatible(a, b);
  return annihilator(subspace_sum(annihilator(a), annihilator(b)));
}

EchelonBasis annihilator(const EchelonBasis& a) {
  const Field& f = a.field();
  const std::size_t n = a.ambient();
  std::vector<bool> is_pivot(n, false);
  std::vector<std::size_t> pivot_of_row;
  for (const Vec& row : a.rows()) {
    std::size_t piv = 0;
    while (row[piv] == 0) ++piv;
    is_pivot[piv] = true;
    pivot_of_row.push_back(piv);
  }
  // one kernel vector per free column: y_free = 1, y_pivot = -row[free]
  std::vector<Vec> kernel;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec y(n, 0);
    y[free] = 1;
    for (std::size_t r = 0; r < a.rows().size(); ++r) y[pivot_of_row[r]] = f.neg(a.rows()[r][free]);
    kernel.push_back(std::move(y));
  }
  return rref(f, n, kernel);
}

}  // namespace bft
