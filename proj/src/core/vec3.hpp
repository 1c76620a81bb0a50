#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdlib>

namespace mis3d {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  double norm2() const { return x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
};

inline double dist(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

// Integer lattice cell.
struct Cell {
  int x = 0, y = 0, z = 0;

  auto operator<=>(const Cell&) const = default;
  Cell operator+(const Cell& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Cell operator-(const Cell& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 to_vec() const { return {double(x), double(y), double(z)}; }
};

inline int l1(const Cell& a, const Cell& b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y) + std::abs(a.z - b.z);
}

inline int chebyshev(const Cell& a, const Cell& b) {
  int dx = std::abs(a.x - b.x), dy = std::abs(a.y - b.y), dz = std::abs(a.z - b.z);
  return std::max(dx, std::max(dy, dz));
}

struct CellHash {
  size_t operator()(const Cell& c) const {
    // 64-bit mix of three 21-bit-ish signed coordinates; fine for desk-scale grids.
    uint64_t h = uint64_t(uint32_t(c.x)) * 0x9e3779b185ebca87ULL;
    h ^= uint64_t(uint32_t(c.y)) * 0xc2b2ae3d27d4eb4fULL;
    h ^= uint64_t(uint32_t(c.z)) * 0x165667b19e3779f9ULL;
    h ^= h >> 29;
    return size_t(h * 0xff51afd7ed558ccdULL);
  }
};

} // namespace mis3d
