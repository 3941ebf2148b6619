#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bft {

/// Field elements are small integer codes. For GF(p^m) the code of
/// a_0 + a_1 x + ... + a_{m-1} x^{m-1} is a_0 + a_1 p + ... + a_{m-1} p^{m-1},
/// so the prime subfield occupies codes 0..p-1.
using Elem = std::uint8_t;

/// Exact arithmetic over GF(q) for q in {2,3,4,5,7,8,9}, backed by full
/// q x q lookup tables. Instances are immutable singletons obtained via get().
///
/// Reduction polynomials for the non-prime orders:
///   GF(4) = GF(2)[x] / (x^2 + x + 1)
///   GF(8) = GF(2)[x] / (x^3 + x + 1)
///   GF(9) = GF(3)[x] / (x^2 + 1)
class Field {
 public:
  static const Field& get(int q);
  static std::span<const int> supported_orders();
  static bool is_supported(int q);

  int order() const { return q_; }
  int characteristic() const { return p_; }
  int degree() const { return m_; }
  /// Human readable reduction polynomial ("" for prime fields).
  const std::string& polynomial() const { return poly_; }

  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  /// Throws InputError for a == 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  /// a^(p^k), the k-th power of the Frobenius automorphism.
  Elem frobenius(Elem a, int k) const;

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  Field(int p, int m, std::vector<int> modulus, std::string poly);

  int q_;
  int p_;
  int m_;
  std::string poly_;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<Elem> neg_;
  std::vector<Elem> inv_;
};

/// A ring monomorphism GF(q) -> GF(q'): inclusion of GF(q) as a subfield of
/// GF(q') followed by a power of the Frobenius automorphism of GF(q').
class FieldHom {
 public:
  /// Throws UnsupportedError if GF(from) is not a subfield of GF(to).
  FieldHom(const Field& from, const Field& to, int frobenius_power = 0);
  static FieldHom identity(const Field& f) { return FieldHom(f, f, 0); }

  Elem operator()(Elem a) const { return table_[a]; }
  const Field& source() const { return *from_; }
  const Field& target() const { return *to_; }
  int frobenius_power() const { return frob_; }
  bool is_surjective() const { return from_->order() == to_->order(); }

 private:
  const Field* from_;
  const Field* to_;
  int frob_;
  std::vector<Elem> table_;
};

}  // namespace bft
