// Seeded generators for property tests.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "bft/linalg.hpp"
#include "bft/projective.hpp"

namespace gen {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed * 0x9E3779B97F4A7C15ULL + 1); }

inline bft::Vec vec(std::mt19937_64& r, const bft::Field& f, std::size_t len) {
  std::uniform_int_distribution<int> d(0, f.order() - 1);
  bft::Vec v(len);
  for (auto& x : v) x = static_cast<bft::Elem>(d(r));
  return v;
}

inline std::vector<bft::Vec> rows(std::mt19937_64& r, const bft::Field& f, std::size_t count, std::size_t len) {
  std::vector<bft::Vec> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(vec(r, f, len));
  return out;
}

/// Rejection-sampled invertible square matrix.
inline std::vector<bft::Vec> invertible(std::mt19937_64& r, const bft::Field& f, std::size_t size) {
  for (;;) {
    auto m = rows(r, f, size, size);
    if (bft::rref(f, size, m).rank() == size) return m;
  }
}

inline bft::Point point(std::mt19937_64& r, const bft::ProjSpace& s) {
  for (;;) {
    auto v = vec(r, s.field(), s.ambient());
    if (std::any_of(v.begin(), v.end(), [](bft::Elem e) { return e != 0; })) return bft::Point(s.field(), v);
  }
}

inline bft::BasePoints base(std::mt19937_64& r, const bft::ProjSpace& s) {
  auto m = invertible(r, s.field(), s.ambient());
  std::vector<bft::Point> pts;
  for (auto& row : m) pts.emplace_back(s.field(), row);
  return bft::BasePoints(s, std::move(pts));
}

}  // namespace gen
