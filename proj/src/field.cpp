#include "bft/field.hpp"

#include <array>
#include <memory>
#include <mutex>

#include "bft/errors.hpp"

namespace bft {
namespace {

constexpr std::array<int, 7> kSupported{2, 3, 4, 5, 7, 8, 9};

std::vector<int> to_digits(int code, int p, int m) {
  std::vector<int> d(m);
  for (int k = 0; k < m; ++k) {
    d[k] = code % p;
    code /= p;
  }
  return d;
}

int from_digits(const std::vector<int>& d, int p) {
  int code = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) code = code * p + *it;
  return code;
}

}  // namespace

Field::Field(int p, int m, std::vector<int> modulus, std::string poly)
    : q_(1), p_(p), m_(m), poly_(std::move(poly)) {
  for (int k = 0; k < m; ++k) q_ *= p;
  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);

  for (int a = 0; a < q_; ++a) {
    const auto da = to_digits(a, p, m);
    std::vector<int> dn(m);
    for (int k = 0; k < m; ++k) dn[k] = (p - da[k]) % p;
    neg_[a] = static_cast<Elem>(from_digits(dn, p));

    for (int b = 0; b < q_; ++b) {
      const auto db = to_digits(b, p, m);
      std::vector<int> ds(m);
      for (int k = 0; k < m; ++k) ds[k] = (da[k] + db[k]) % p;
      add_[a * q_ + b] = static_cast<Elem>(from_digits(ds, p));

      // schoolbook product, then reduce by the monic modulus of degree m
      std::vector<int> prod(2 * m - 1, 0);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      for (int d = 2 * m - 2; d >= m; --d) {
        const int c = prod[d];
        if (c == 0) continue;
        for (int k = 0; k <= m; ++k) {
          const int idx = d - m + k;
          prod[idx] = ((prod[idx] - c * modulus[k]) % p + p) % p;
        }
      }
      prod.resize(m);
      mul_[a * q_ + b] = static_cast<Elem>(from_digits(prod, p));
    }
  }
  for (int a = 1; a < q_; ++a)
    for (int b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<Elem>(b);
}

const Field& Field::get(int q) {
  static std::once_flag once;
  static std::array<std::unique_ptr<Field>, 10> fields;
  std::call_once(once, [] {
    // modulus coefficients are listed low degree first and include the leading 1
    fields[2].reset(new Field(2, 1, {0, 1}, ""));
    fields[3].reset(new Field(3, 1, {0, 1}, ""));
    fields[5].reset(new Field(5, 1, {0, 1}, ""));
    fields[7].reset(new Field(7, 1, {0, 1}, ""));
    fields[4].reset(new Field(2, 2, {1, 1, 1}, "x^2 + x + 1"));
    fields[8].reset(new Field(2, 3, {1, 1, 0, 1}, "x^3 + x + 1"));
    fields[9].reset(new Field(3, 2, {1, 0, 1}, "x^2 + 1"));
  });
  if (!is_supported(q))
    throw UnsupportedError("unsupported field order " + std::to_string(q) +
                           "; supported q: 2, 3, 4, 5, 7, 8, 9");
  return *fields[q];
}

std::span<const int> Field::supported_orders() { return kSupported; }

bool Field::is_supported(int q) {
  for (int s : kSupported)
    if (s == q) return true;
  return false;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw InputError("inverse of zero");
  return inv_[a];
}

Elem Field::frobenius(Elem a, int k) const {
  k %= m_;
  if (k < 0) k += m_;
  Elem r = a;
  for (int step = 0; step < k; ++step) {
    Elem pow = 1;
    for (int e = 0; e < p_; ++e) pow = mul(pow, r);
    r = pow;
  }
  return r;
}

FieldHom::FieldHom(const Field& from, const Field& to, int frobenius_power)
    : from_(&from), to_(&to), frob_(frobenius_power) {
  const bool same = from.order() == to.order();
  const bool prime_sub = from.degree() == 1 && from.characteristic() == to.characteristic();
  if (!same && !prime_sub)
    throw UnsupportedError("GF(" + std::to_string(from.order()) + ") is not a supported subfield of GF(" +
                           std::to_string(to.order()) + ")");
  table_.resize(from.order());
  // prime subfield elements share codes 0..p-1 in every extension
  for (int a = 0; a < from.order(); ++a) table_[a] = to.frobenius(static_cast<Elem>(a), frob_);
}

}  // namespace bft
