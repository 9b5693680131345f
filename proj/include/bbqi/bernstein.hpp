#pragma once

// Bernstein-Bezier calculus on a single triangle: basis values, de Casteljau
// evaluation, directional derivative patches, exact monomial -> BB conversion
// by blossoming, and the C0/C1 join residuals across a shared edge.

#include <array>
#include <cassert>
#include <cstddef>
#include <vector>

#include "mesh.hpp"

namespace bbqi {

using MultiIndex = std::array<int, 3>;

// Multi-indices of degree d in the frozen order: a1 descending, then a2.
inline std::vector<MultiIndex> mi_enumerate(int d) {
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>((d + 1) * (d + 2) / 2));
  for (int a1 = d; a1 >= 0; --a1)
    for (int a2 = d - a1; a2 >= 0; --a2) out.push_back({a1, a2, d - a1 - a2});
  return out;
}

inline int mi_index(int d, const MultiIndex& a) {
  // position of a in mi_enumerate(d)
  int skipped = 0;
  for (int a1 = d; a1 > a[0]; --a1) skipped += d - a1 + 1;
  return skipped + (d - a[0] - a[1]);
}

template <class T>
struct BezierPatch {
  int degree = 3;
  std::array<Vec2<T>, 3> verts;
  std::vector<T> coeffs;  // mi_enumerate(degree) order
};

inline long long multinomial(int d, const MultiIndex& a) {
  auto fact = [](int n) {
    long long f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
  };
  return fact(d) / (fact(a[0]) * fact(a[1]) * fact(a[2]));
}

template <class T>
T bernstein_value(const MultiIndex& a, int d, const std::array<T, 3>& tau) {
  assert(a[0] + a[1] + a[2] == d);
  auto ipow = [](const T& x, int e) {
    T r(1);
    for (int k = 0; k < e; ++k) r = r * x;
    return r;
  };
  return T(multinomial(d, a)) * ipow(tau[0], a[0]) * ipow(tau[1], a[1]) *
         ipow(tau[2], a[2]);
}

// de Casteljau evaluation.
template <class T>
T eval(const BezierPatch<T>& p, const std::array<T, 3>& tau) {
  std::vector<T> work = p.coeffs;
  for (int d = p.degree; d >= 1; --d) {
    auto lo = mi_enumerate(d - 1);
    std::vector<T> next(lo.size());
    for (std::size_t k = 0; k < lo.size(); ++k) {
      MultiIndex b = lo[k];
      next[k] = tau[0] * work[mi_index(d, {b[0] + 1, b[1], b[2]})] +
                tau[1] * work[mi_index(d, {b[0], b[1] + 1, b[2]})] +
                tau[2] * work[mi_index(d, {b[0], b[1], b[2] + 1})];
    }
    work = std::move(next);
  }
  return work[0];
}

// Direct basis summation; oracle for eval().
template <class T>
T eval_direct(const BezierPatch<T>& p, const std::array<T, 3>& tau) {
  T s(0);
  auto mis = mi_enumerate(p.degree);
  for (std::size_t k = 0; k < mis.size(); ++k)
    s = s + p.coeffs[k] * bernstein_value(mis[k], p.degree, tau);
  return s;
}

// Barycentric coordinates of p w.r.t. an arbitrary (non-degenerate) triangle.
template <class T>
std::array<T, 3> barycentric_in(const std::array<Vec2<T>, 3>& v,
                                const Vec2<T>& p) {
  T d = (v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) -
        (v[2][0] - v[0][0]) * (v[1][1] - v[0][1]);
  T l2 = ((p[0] - v[0][0]) * (v[2][1] - v[0][1]) -
          (v[2][0] - v[0][0]) * (p[1] - v[0][1])) /
         d;
  T l3 = ((v[1][0] - v[0][0]) * (p[1] - v[0][1]) -
          (p[0] - v[0][0]) * (v[1][1] - v[0][1])) /
         d;
  return {T(1) - l2 - l3, l2, l3};
}

// Barycentric coordinates of a direction vector u (they sum to 0).
template <class T>
std::array<T, 3> bary_direction(const std::array<Vec2<T>, 3>& v,
                                const Vec2<T>& u) {
  T d = (v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) -
        (v[2][0] - v[0][0]) * (v[1][1] - v[0][1]);
  T l2 = (u[0] * (v[2][1] - v[0][1]) - (v[2][0] - v[0][0]) * u[1]) / d;
  T l3 = ((v[1][0] - v[0][0]) * u[1] - u[0] * (v[1][1] - v[0][1])) / d;
  return {-l2 - l3, l2, l3};
}

// Coefficients d * sum_i a_i b_{beta+e_i}; evaluating the result gives the
// derivative of the patch along the Cartesian direction with barycentric
// direction a.
template <class T>
BezierPatch<T> directional_derivative_patch(const BezierPatch<T>& p,
                                            const std::array<T, 3>& a) {
  assert(p.degree >= 1);
  BezierPatch<T> out;
  out.degree = p.degree - 1;
  out.verts = p.verts;
  auto mis = mi_enumerate(out.degree);
  out.coeffs.resize(mis.size());
  for (std::size_t k = 0; k < mis.size(); ++k) {
    MultiIndex b = mis[k];
    out.coeffs[k] =
        T(p.degree) *
        (a[0] * p.coeffs[mi_index(p.degree, {b[0] + 1, b[1], b[2]})] +
         a[1] * p.coeffs[mi_index(p.degree, {b[0], b[1] + 1, b[2]})] +
         a[2] * p.coeffs[mi_index(p.degree, {b[0], b[1], b[2] + 1})]);
  }
  return out;
}

// {value, d/dx, d/dy} at a Cartesian point.
template <class T>
std::array<T, 3> eval_with_gradient(const BezierPatch<T>& p, const Vec2<T>& q) {
  auto tau = barycentric_in(p.verts, q);
  auto ax = bary_direction(p.verts, Vec2<T>{T(1), T(0)});
  auto ay = bary_direction(p.verts, Vec2<T>{T(0), T(1)});
  return {eval(p, tau), eval(directional_derivative_patch(p, ax), tau),
          eval(directional_derivative_patch(p, ay), tau)};
}

// Exact BB coefficients of the monomial x^mu1 * y^mu2 (|mu| <= 3) on the
// given triangle, via the polar form: b_alpha is the blossom evaluated at the
// vertices with multiplicities alpha.
template <class T>
BezierPatch<T> monomial_to_bb(int mu1, int mu2,
                              const std::array<Vec2<T>, 3>& verts, int d = 3) {
  assert(d == 3 && mu1 >= 0 && mu2 >= 0 && mu1 + mu2 <= d);
  // factor list of the trilinear blossom: mu1 x-slots, mu2 y-slots, rest 1.
  std::array<int, 3> fac;  // 0 = x, 1 = y, 2 = const
  {
    int k = 0;
    for (int c = 0; c < mu1; ++c) fac[k++] = 0;
    for (int c = 0; c < mu2; ++c) fac[k++] = 1;
    while (k < 3) fac[k++] = 2;
  }
  static constexpr int kPerm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                      {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  auto polar = [&](const std::array<Vec2<T>, 3>& pts) {
    T s(0);
    for (const auto& perm : kPerm) {
      T t(1);
      for (int k = 0; k < 3; ++k) {
        int f = fac[k];
        if (f == 0)
          t = t * pts[perm[k]][0];
        else if (f == 1)
          t = t * pts[perm[k]][1];
      }
      s = s + t;
    }
    return s / T(6);
  };
  BezierPatch<T> out;
  out.degree = d;
  out.verts = verts;
  for (const auto& a : mi_enumerate(d)) {
    std::array<Vec2<T>, 3> args;
    int k = 0;
    for (int vi = 0; vi < 3; ++vi)
      for (int r = 0; r < a[vi]; ++r) args[k++] = verts[vi];
    out.coeffs.push_back(polar(args));
  }
  return out;
}

// C0/C1 residuals across the shared edge, in the Lemma's indexing: the left
// patch is ordered (v1,v2,v3) with shared edge (v2,v3), the right patch
// (v4,v3,v2); tau_opp has the barycentric coordinates of v4 w.r.t. the left
// triangle.  Returns the 4 residuals b~_{0,j,k} - b_{0,k,j} (j+k = 3)
// followed by the 3 residuals
// b~_{1,j,k} - tau1*b_{1,k,j} - tau2*b_{0,k+1,j} - tau3*b_{0,k,j+1} (j+k = 2).
template <class T>
std::vector<T> c1_join_residuals(const BezierPatch<T>& left,
                                 const BezierPatch<T>& right,
                                 const std::array<T, 3>& tau_opp) {
  assert(left.degree == 3 && right.degree == 3);
  const int d = 3;
  auto L = [&](int a1, int a2, int a3) {
    return left.coeffs[mi_index(d, {a1, a2, a3})];
  };
  auto R = [&](int a1, int a2, int a3) {
    return right.coeffs[mi_index(d, {a1, a2, a3})];
  };
  std::vector<T> res;
  for (int j = 0; j <= d; ++j) {
    int k = d - j;
    res.push_back(R(0, j, k) - L(0, k, j));
  }
  for (int j = 0; j <= d - 1; ++j) {
    int k = d - 1 - j;
    res.push_back(R(1, j, k) - tau_opp[0] * L(1, k, j) -
                  tau_opp[1] * L(0, k + 1, j) - tau_opp[2] * L(0, k, j + 1));
  }
  return res;
}

// Reorders patch vertices: verts_new[k] = verts_old[perm[k]], with the
// coefficients permuted to match.
template <class T>
BezierPatch<T> permute_patch(const BezierPatch<T>& p,
                             const std::array<int, 3>& perm) {
  BezierPatch<T> out;
  out.degree = p.degree;
  for (int k = 0; k < 3; ++k) out.verts[k] = p.verts[perm[k]];
  auto mis = mi_enumerate(p.degree);
  out.coeffs.resize(mis.size());
  for (std::size_t n = 0; n < mis.size(); ++n) {
    MultiIndex old{};
    for (int k = 0; k < 3; ++k) old[perm[k]] = mis[n][k];
    out.coeffs[n] = p.coeffs[mi_index(p.degree, old)];
  }
  return out;
}

}  // namespace bbqi
