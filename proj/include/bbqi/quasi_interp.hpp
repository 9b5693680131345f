#pragma once

// Assembly and evaluation of the quasi-interpolant: each BB coefficient is a
// fixed mask applied to Hermite data (f, fx, fy) on the hexagon stencil of
// its center vertex, with the derivative data scaled by h.

#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "bernstein.hpp"
#include "masks.hpp"
#include "mesh.hpp"

namespace bbqi {

template <class T>
struct HermiteSample {
  T f, fx, fy;
};

template <class T>
using HermiteSource = std::function<HermiteSample<T>(VertexId)>;

// Inclusive rectangle of cell indices; each cell carries both patches.
struct Region {
  int i0 = 0, i1 = 0, j0 = 0, j1 = 0;
  bool contains(int i, int j) const {
    return i >= i0 && i <= i1 && j >= j0 && j <= j1;
  }
};

struct OutOfRegionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T>
struct C1AuditReport {
  T max_edge_residual{};
  std::size_t edges_checked = 0;
  T max_identity_residual{};
  std::size_t identities_checked = 0;
  T max_residual() const {
    return max_edge_residual > max_identity_residual ? max_edge_residual
                                                     : max_identity_residual;
  }
};

namespace detail {
inline double scalar_abs(double x) { return x < 0 ? -x : x; }
inline Rational scalar_abs(const Rational& x) { return abs(x); }

inline long long cell_key(int i, int j) {
  return (static_cast<long long>(i) << 32) ^
         static_cast<unsigned int>(j);
}
}  // namespace detail

template <class T>
class Spline {
 public:
  static Spline assemble(const HermiteSource<T>& src, const MaskSet& masks,
                         const T& h, const Region& region) {
    std::vector<std::pair<int, int>> cells;
    for (int i = region.i0; i <= region.i1; ++i)
      for (int j = region.j0; j <= region.j1; ++j) cells.push_back({i, j});
    return assemble_cells(src, masks, h, cells);
  }

  // Assembles exactly the listed cells (both patches each); used when the
  // needed coverage is not a rectangle.
  static Spline assemble_cells(const HermiteSource<T>& src,
                               const MaskSet& masks, const T& h,
                               const std::vector<std::pair<int, int>>& cells) {
    Spline s;
    s.h_ = h;
    std::array<std::array<std::array<T, 7>, 3>, 9> m;
    for (int tr = 0; tr < 9; ++tr)
      for (int ch = 0; ch < 3; ++ch)
        for (int l = 0; l < 7; ++l)
          m[tr][ch][l] = from_rational<T>(masks.m[tr][ch][l]);

    std::unordered_map<long long, HermiteSample<T>> data;
    auto sample = [&](VertexId v) -> const HermiteSample<T>& {
      long long key = detail::cell_key(v.i, v.j);
      auto it = data.find(key);
      if (it == data.end()) it = data.emplace(key, src(v)).first;
      return it->second;
    };

    for (auto [i, j] : cells) {
      s.cells_.insert(detail::cell_key(i, j));
      for (PatchKind kind : {PatchKind::Lower, PatchKind::Upper}) {
        for (const CoeffId& id : patch_coeff_ids({kind, i, j})) {
          if (s.coeffs_.count(id)) continue;
          const auto& tri = m[triple_index(id)];
          T c(0);
          for (int l = 0; l < 7; ++l) {
            const auto& d = sample({id.i + kStencilOffsets[l].i,
                                    id.j + kStencilOffsets[l].j});
            c = c + tri[0][l] * d.f + h * (tri[1][l] * d.fx + tri[2][l] * d.fy);
          }
          s.coeffs_.emplace(id, c);
        }
      }
    }
    return s;
  }

  const T& h() const { return h_; }
  std::size_t coefficient_count() const { return coeffs_.size(); }

  bool covers(const PatchId& p) const {
    return cells_.count(detail::cell_key(p.i, p.j)) > 0;
  }

  const T& coeff(const CoeffId& id) const {
    auto it = coeffs_.find(id);
    if (it == coeffs_.end()) throw std::out_of_range("coefficient not assembled");
    return it->second;
  }

  BezierPatch<T> patch(const PatchId& p) const {
    BezierPatch<T> out;
    out.degree = 3;
    out.verts = patch_vertices(p, h_);
    for (const CoeffId& id : patch_coeff_ids(p)) out.coeffs.push_back(coeff(id));
    return out;
  }

  T evaluate(const Vec2<T>& q) const {
    PatchId p = located(q);
    return eval(patch(p), barycentric(q, p, h_));
  }

  std::array<T, 2> gradient(const Vec2<T>& q) const {
    auto vdg = eval_with_gradient(patch(located(q)), q);
    return {vdg[1], vdg[2]};
  }

  std::array<T, 3> value_and_gradient(const Vec2<T>& q) const {
    return eval_with_gradient(patch(located(q)), q);
  }

  // Diagnostic helper: a copy with one coefficient shifted by delta (used to
  // confirm that c1_audit actually detects broken joins).
  Spline with_perturbed(const CoeffId& id, const T& delta) const {
    Spline out = *this;
    out.coeffs_.at(id) = out.coeffs_.at(id) + delta;
    return out;
  }

  // Checks every interior edge of the covered set via the C0/C1 join
  // residuals, plus the nine mask-level coefficient identities at every
  // vertex where all participants are assembled.
  C1AuditReport<T> c1_audit() const {
    C1AuditReport<T> rep;
    auto upd = [](T& best, const T& r) {
      T a = detail::scalar_abs(r);
      if (a > best) best = a;
    };
    for (long long key : cells_) {
      int i = static_cast<int>(key >> 32);
      int j = static_cast<int>(static_cast<unsigned int>(key & 0xffffffffull));
      const PatchId lower{PatchKind::Lower, i, j};
      const PatchId upper{PatchKind::Upper, i, j};
      const std::pair<PatchId, PatchId> pairs[] = {
          {lower, upper},
          {PatchId{PatchKind::Upper, i, j - 1}, lower},
          {PatchId{PatchKind::Lower, i - 1, j}, upper},
      };
      for (const auto& [a, b] : pairs) {
        if (!covers(a) || !covers(b)) continue;
        auto res = edge_residuals(a, b);
        for (const T& r : res) upd(rep.max_edge_residual, r);
        ++rep.edges_checked;
      }
      // the nine coefficient identities, translated to this cell
      for (const auto& ident : identities()) {
        T acc(0);
        bool all = true;
        for (const auto& [sign, id0] : ident) {
          CoeffId id = id0;
          id.i += i;
          id.j += j;
          auto it = coeffs_.find(id);
          if (it == coeffs_.end()) {
            all = false;
            break;
          }
          acc = acc + T(sign) * it->second;
        }
        if (!all) continue;
        upd(rep.max_identity_residual, acc);
        ++rep.identities_checked;
      }
    }
    return rep;
  }

  // Residuals across the shared edge of two adjacent patches, reordered to
  // the join convention (left off-edge vertex first, right patch (v4,v3,v2)).
  std::vector<T> edge_residuals(const PatchId& a, const PatchId& b) const {
    auto pa = patch(a);
    auto pb = patch(b);
    // find the two shared vertices
    std::array<int, 3> amap{-1, -1, -1};  // index in pb for each vertex of pa
    for (int k = 0; k < 3; ++k)
      for (int n = 0; n < 3; ++n)
        if (pa.verts[k] == pb.verts[n]) amap[k] = n;
    int offA = -1;
    for (int k = 0; k < 3; ++k)
      if (amap[k] < 0) offA = k;
    std::array<int, 3> permA{offA, (offA + 1) % 3, (offA + 2) % 3};
    auto left = permute_patch(pa, permA);
    int e2 = amap[permA[1]], e3 = amap[permA[2]];
    int offB = 3 - e2 - e3;
    auto right = permute_patch(pb, std::array<int, 3>{offB, e3, e2});
    auto tau = barycentric_in(left.verts, right.verts[0]);
    return c1_join_residuals(left, right, tau);
  }

 private:
  PatchId located(const Vec2<T>& q) const {
    PatchId p = locate(q, h_);
    if (!covers(p)) {
      std::ostringstream os;
      os << "point outside assembled region (cell " << p.i << "," << p.j << ")";
      throw OutOfRegionError(os.str());
    }
    return p;
  }

  // The nine C1 coefficient identities (sign, CoeffId relative to cell (0,0)).
  static const std::vector<std::vector<std::pair<int, CoeffId>>>& identities() {
    auto V = [](int a, int b) { return CoeffId{CoeffKind::V, a, b, 0, 0}; };
    auto U = [](int a, int b, int k, int m) {
      return CoeffId{CoeffKind::U, a, b, k, m};
    };
    auto C = [](int a, int b) { return CoeffId{CoeffKind::C, a, b, 0, 0}; };
    auto Ct = [](int a, int b) { return CoeffId{CoeffKind::Ct, a, b, 0, 0}; };
    static const std::vector<std::vector<std::pair<int, CoeffId>>> ids = {
        // edge [v00, v11]
        {{1, V(0, 0)}, {1, U(0, 0, 1, 1)}, {-1, U(0, 0, 1, 0)}, {-1, U(0, 0, 0, 1)}},
        {{1, C(0, 0)}, {1, Ct(0, 0)}, {-1, U(0, 0, 1, 1)}, {-1, U(1, 1, -1, -1)}},
        {{1, U(1, 1, -1, -1)}, {1, V(1, 1)}, {-1, U(1, 1, 0, -1)}, {-1, U(1, 1, -1, 0)}},
        // edge [v00, v10]
        {{1, U(0, 0, 0, -1)}, {1, U(0, 0, 1, 1)}, {-1, V(0, 0)}, {-1, U(0, 0, 1, 0)}},
        {{1, Ct(0, -1)}, {1, C(0, 0)}, {-1, U(0, 0, 1, 0)}, {-1, U(1, 0, -1, 0)}},
        {{1, U(1, 0, -1, -1)}, {1, U(1, 0, 0, 1)}, {-1, U(1, 0, -1, 0)}, {-1, V(1, 0)}},
        // edge [v00, v01]
        {{1, U(0, 0, -1, 0)}, {1, U(0, 0, 1, 1)}, {-1, V(0, 0)}, {-1, U(0, 0, 0, 1)}},
        {{1, C(-1, 0)}, {1, Ct(0, 0)}, {-1, U(0, 0, 0, 1)}, {-1, U(0, 1, 0, -1)}},
        {{1, U(0, 1, -1, -1)}, {1, U(0, 1, 1, 0)}, {-1, U(0, 1, 0, -1)}, {-1, V(0, 1)}},
    };
    return ids;
  }

  T h_{};
  std::unordered_set<long long> cells_;
  std::unordered_map<CoeffId, T, CoeffIdHash> coeffs_;
};

}  // namespace bbqi
