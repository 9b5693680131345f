#pragma once

// Geometry of the uniform three-direction triangulation generated by
// e1 = (h,h), e2 = (h,-h), e3 = e1+e2.  Vertices v_{i,j} = i*e1 + j*e2 sit at
// ((i+j)h, (i-j)h); each lattice cell (i,j) splits into a Lower triangle
// T_{i,j} = [v_{i,j}, v_{i+1,j+1}, v_{i+1,j}] and an Upper triangle
// T~_{i,j} = [v_{i,j+1}, v_{i+1,j+1}, v_{i,j}].

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>

#include "rational.hpp"

namespace bbqi {

template <class T>
using Vec2 = std::array<T, 2>;

struct VertexId {
  int i = 0;
  int j = 0;
  friend bool operator==(const VertexId&, const VertexId&) = default;
};

// Hexagon stencil offsets, index l = 0..6. Every mask uses this order.
inline constexpr std::array<VertexId, 7> kStencilOffsets = {
    {{0, 0}, {1, 1}, {1, 0}, {0, -1}, {-1, -1}, {-1, 0}, {0, 1}}};

// The six directions (k,m) of the edge coefficients U_{i,j}^{k,m}.
inline constexpr std::array<std::pair<int, int>, 6> kEdgeDirs = {
    {{1, 1}, {1, 0}, {0, -1}, {-1, -1}, {-1, 0}, {0, 1}}};

enum class PatchKind : std::uint8_t { Lower, Upper };

struct PatchId {
  PatchKind kind = PatchKind::Lower;
  int i = 0;
  int j = 0;
  friend bool operator==(const PatchId&, const PatchId&) = default;
};

enum class CoeffKind : std::uint8_t { V, U, C, Ct };

// Address of one shared BB coefficient: V (vertex), U (edge point, with
// direction dx,dy from kEdgeDirs), C / Ct (Lower / Upper barycenter).
struct CoeffId {
  CoeffKind kind = CoeffKind::V;
  int i = 0;
  int j = 0;
  int dx = 0;
  int dy = 0;
  friend bool operator==(const CoeffId&, const CoeffId&) = default;
};

struct CoeffIdHash {
  std::size_t operator()(const CoeffId& c) const {
    std::size_t h = static_cast<std::size_t>(c.kind);
    auto mix = [&h](std::size_t v) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(static_cast<std::size_t>(static_cast<std::uint32_t>(c.i)));
    mix(static_cast<std::size_t>(static_cast<std::uint32_t>(c.j)));
    mix(static_cast<std::size_t>(static_cast<std::uint32_t>(3 * c.dx + c.dy + 5)));
    return h;
  }
};

template <class T>
Vec2<T> vertex_position(VertexId v, const T& h) {
  return {T(v.i + v.j) * h, T(v.i - v.j) * h};
}

inline long long lattice_floor(double x) {
  return static_cast<long long>(std::floor(x));
}
inline long long lattice_floor(const Rational& q) {
  return floor_int(q).convert_to<long long>();
}

// O(1) point location: u = (x+y)/(2h) and w = (x-y)/(2h) are the lattice
// coordinates; the fractional parts decide Lower vs Upper.  Half-open
// tie-break: boundary points go to the cell of their floor, and shared
// diagonals to Lower.
template <class T>
PatchId locate(const Vec2<T>& p, const T& h) {
  T u = (p[0] + p[1]) / (2 * h);
  T w = (p[0] - p[1]) / (2 * h);
  int i = static_cast<int>(lattice_floor(u));
  int j = static_cast<int>(lattice_floor(w));
  T fu = u - T(i);
  T fw = w - T(j);
  if (fu >= fw) return {PatchKind::Lower, i, j};
  return {PatchKind::Upper, i, j};
}

template <class T>
std::array<Vec2<T>, 3> patch_vertices(const PatchId& t, const T& h) {
  int i = t.i, j = t.j;
  if (t.kind == PatchKind::Lower)
    return {vertex_position({i, j}, h), vertex_position({i + 1, j + 1}, h),
            vertex_position({i + 1, j}, h)};
  return {vertex_position({i, j + 1}, h), vertex_position({i + 1, j + 1}, h),
          vertex_position({i, j}, h)};
}

// Closed-form barycentric coordinates w.r.t. the frozen vertex order of the
// patch.  p need not lie inside; coordinates may be negative.
template <class T>
std::array<T, 3> barycentric(const Vec2<T>& p, const PatchId& t, const T& h) {
  T u = (p[0] + p[1]) / (2 * h);
  T w = (p[0] - p[1]) / (2 * h);
  T fu = u - T(t.i);
  T fw = w - T(t.j);
  if (t.kind == PatchKind::Lower) return {T(1) - fu, fw, fu - fw};
  return {fw - fu, fu, T(1) - fw};
}

inline std::array<VertexId, 7> hexagon_stencil(VertexId v) {
  std::array<VertexId, 7> out;
  for (int l = 0; l < 7; ++l)
    out[l] = {v.i + kStencilOffsets[l].i, v.j + kStencilOffsets[l].j};
  return out;
}

// The 10 coefficient addresses of a patch in the fixed BB multi-index order
// (3,0,0),(2,1,0),(2,0,1),(1,2,0),(1,1,1),(1,0,2),(0,3,0),(0,2,1),(0,1,2),(0,0,3).
inline std::array<CoeffId, 10> patch_coeff_ids(const PatchId& t) {
  int i = t.i, j = t.j;
  auto V = [](int a, int b) { return CoeffId{CoeffKind::V, a, b, 0, 0}; };
  auto U = [](int a, int b, int k, int m) {
    return CoeffId{CoeffKind::U, a, b, k, m};
  };
  if (t.kind == PatchKind::Lower) {
    return {V(i, j),
            U(i, j, 1, 1),
            U(i, j, 1, 0),
            U(i + 1, j + 1, -1, -1),
            CoeffId{CoeffKind::C, i, j, 0, 0},
            U(i + 1, j, -1, 0),
            V(i + 1, j + 1),
            U(i + 1, j + 1, 0, -1),
            U(i + 1, j, 0, 1),
            V(i + 1, j)};
  }
  return {V(i, j + 1),
          U(i, j + 1, 1, 0),
          U(i, j + 1, 0, -1),
          U(i + 1, j + 1, -1, 0),
          CoeffId{CoeffKind::Ct, i, j, 0, 0},
          U(i, j, 0, 1),
          V(i + 1, j + 1),
          U(i + 1, j + 1, -1, -1),
          U(i, j, 1, 1),
          V(i, j)};
}

}  // namespace bbqi
