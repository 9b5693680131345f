#include "bbqi/masks.hpp"

#include <set>

#include "bbqi/bernstein.hpp"

namespace bbqi {

namespace {

struct Frac4 {
  int n0, d0, n1, d1;  // entry(lambda) = n0/d0 + (n1/d1) * lambda
};

// Corrected family, the unique solution of the C1 + exactness +
// superconvergence system parameterized by lambda (the vertex-mask entry at
// stencil index 2).  Triple order: alpha, beta(1,1), beta(1,0), beta(0,-1),
// beta(-1,-1), beta(-1,0), beta(0,1), gamma, gamma_t; channels f, fx, fy.
constexpr Frac4 kCorrected[9][3][7] = {
    {// alpha
     {{1, 3, 0, 1}, {0, 1, 0, 1}, {0, 1, 1, 1}, {-5, 6, 2, 1}, {-2, 3, 0, 1}, {7, 6, -2, 1}, {1, 1, -1, 1}},
     {{-2, 3, 0, 1}, {0, 1, 0, 1}, {1, 36, -1, 2}, {5, 12, -3, 2}, {-2, 9, 0, 1}, {-13, 12, 3, 2}, {-17, 36, 1, 2}},
     {{1, 1, -2, 1}, {0, 1, 0, 1}, {-1, 9, 0, 1}, {5, 18, -1, 1}, {1, 1, -2, 1}, {13, 18, -1, 1}, {1, 9, 0, 1}}},
    {// beta(1,1)
     {{-1, 3, 0, 1}, {0, 1, 0, 1}, {0, 1, 2, 1}, {-5, 6, 1, 1}, {0, 1, 0, 1}, {1, 6, -1, 1}, {2, 1, -2, 1}},
     {{-8, 9, 0, 1}, {0, 1, 0, 1}, {1, 18, -1, 1}, {7, 18, -1, 1}, {0, 1, 0, 1}, {-11, 18, 1, 1}, {-17, 18, 1, 1}},
     {{2, 1, -4, 1}, {0, 1, 0, 1}, {-2, 9, 0, 1}, {7, 18, -1, 1}, {0, 1, 0, 1}, {11, 18, -1, 1}, {2, 9, 0, 1}}},
    {// beta(1,0)
     {{3, 2, -3, 1}, {0, 1, 0, 1}, {0, 1, 2, 1}, {-5, 3, 3, 1}, {1, 6, -1, 1}, {0, 1, 0, 1}, {1, 1, -1, 1}},
     {{-16, 9, 2, 1}, {0, 1, 0, 1}, {1, 18, -1, 1}, {29, 36, -5, 2}, {-11, 18, 1, 1}, {0, 1, 0, 1}, {-17, 36, 1, 2}},
     {{11, 6, -3, 1}, {0, 1, 0, 1}, {-2, 9, 0, 1}, {2, 3, -2, 1}, {11, 18, -1, 1}, {0, 1, 0, 1}, {1, 9, 0, 1}}},
    {// beta(0,-1)
     {{13, 6, -3, 1}, {0, 1, 0, 1}, {0, 1, 1, 1}, {-5, 3, 4, 1}, {-1, 2, -1, 1}, {1, 1, -1, 1}, {0, 1, 0, 1}},
     {{-14, 9, 2, 1}, {0, 1, 0, 1}, {1, 36, -1, 2}, {5, 6, -3, 1}, {-5, 6, 1, 1}, {-17, 36, 1, 2}, {0, 1, 0, 1}},
     {{5, 6, -1, 1}, {0, 1, 0, 1}, {-1, 9, 0, 1}, {5, 9, -2, 1}, {29, 18, -3, 1}, {1, 9, 0, 1}, {0, 1, 0, 1}}},
    {// beta(-1,-1)
     {{1, 1, 0, 1}, {0, 1, 0, 1}, {0, 1, 0, 1}, {-5, 6, 3, 1}, {-4, 3, 0, 1}, {13, 6, -3, 1}, {0, 1, 0, 1}},
     {{-4, 9, 0, 1}, {0, 1, 0, 1}, {0, 1, 0, 1}, {4, 9, -2, 1}, {-4, 9, 0, 1}, {-14, 9, 2, 1}, {0, 1, 0, 1}},
     {{0, 1, 0, 1}, {0, 1, 0, 1}, {0, 1, 0, 1}, {1, 6, -1, 1}, {2, 1, -4, 1}, {5, 6, -1, 1}, {0, 1, 0, 1}}},
    {// beta(-1,0)
     {{-5, 6, 3, 1}, {0, 1, 0, 1}, {0, 1, 0, 1}, {0, 1, 1, 1}, {-3, 2, 1, 1}, {7, 3, -4, 1}, {1, 1, -1, 1}},
     {{4, 9, -2, 1}, {0, 1, 0, 1}, {0, 1, 0, 1}, {1, 36, -1, 2}, {1, 6, -1, 1}, {-13, 6, 3, 1}, {-17, 36, 1, 2}},
     {{1, 6, -1, 1}, {0, 1, 0, 1}, {0, 1, 0, 1}, {-1, 9, 0, 1}, {25, 18, -3, 1}, {13, 9, -2, 1}, {1, 9, 0, 1}}},
    {// beta(0,1)
     {{-3, 2, 3, 1}, {0, 1, 0, 1}, {0, 1, 1, 1}, {0, 1, 0, 1}, {-5, 6, 1, 1}, {4, 3, -3, 1}, {2, 1, -2, 1}},
     {{2, 9, -2, 1}, {0, 1, 0, 1}, {1, 36, -1, 2}, {0, 1, 0, 1}, {7, 18, -1, 1}, {-61, 36, 5, 2}, {-17, 18, 1, 1}},
     {{7, 6, -3, 1}, {0, 1, 0, 1}, {-1, 9, 0, 1}, {0, 1, 0, 1}, {7, 18, -1, 1}, {4, 3, -2, 1}, {2, 9, 0, 1}}},
    {// gamma
     {{2, 3, -3, 1}, {1, 1, -1, 1}, {-5, 6, 4, 1}, {-5, 6, 1, 1}, {0, 1, 0, 1}, {0, 1, 0, 1}, {1, 1, -1, 1}},
     {{-23, 12, 5, 2}, {-17, 36, 1, 2}, {17, 36, -5, 2}, {7, 18, -1, 1}, {0, 1, 0, 1}, {0, 1, 0, 1}, {-17, 36, 1, 2}},
     {{7, 3, -4, 1}, {1, 9, 0, 1}, {1, 18, -1, 1}, {7, 18, -1, 1}, {0, 1, 0, 1}, {0, 1, 0, 1}, {1, 9, 0, 1}}},
    {// gamma_t
     {{-7, 3, 3, 1}, {0, 1, 1, 1}, {0, 1, 1, 1}, {0, 1, 0, 1}, {0, 1, 0, 1}, {1, 6, -1, 1}, {19, 6, -4, 1}},
     {{7, 12, -5, 2}, {1, 36, -1, 2}, {1, 36, -1, 2}, {0, 1, 0, 1}, {0, 1, 0, 1}, {-11, 18, 1, 1}, {-73, 36, 5, 2}},
     {{5, 3, -4, 1}, {-1, 9, 0, 1}, {-1, 9, 0, 1}, {0, 1, 0, 1}, {0, 1, 0, 1}, {11, 18, -1, 1}, {17, 18, -1, 1}}},
};

MaskTable build_table(MaskVariant v) {
  MaskTable t;
  for (int tr = 0; tr < 9; ++tr)
    for (int ch = 0; ch < 3; ++ch)
      for (int l = 0; l < 7; ++l) {
        const Frac4& f = kCorrected[tr][ch][l];
        t.m[tr][ch][l] = {Rational(f.n0, f.d0), Rational(f.n1, f.d1)};
      }
  if (v == MaskVariant::AsPrinted) {
    // The three entries where the published tables differ from the solved
    // family (adjudicated by the derivation module):
    //   alpha f-mask, index 5:      -(7+12L)/6   instead of (7-12L)/6
    //   beta(1,0) fx-mask, index 4: (18L-1)/18   instead of (18L-11)/18
    //   beta(0,1) fy-mask, index 5: 2(2-2L)/3    instead of 2(2-3L)/3
    t.m[0][0][5] = {Rational(-7, 6), Rational(-2)};
    t.m[2][1][4] = {Rational(-1, 18), Rational(1)};
    t.m[6][2][5] = {Rational(4, 3), Rational(-4, 3)};
  }
  return t;
}

}  // namespace

const MaskTable& mask_table(MaskVariant v) {
  static const MaskTable corrected = build_table(MaskVariant::Corrected);
  static const MaskTable printed = build_table(MaskVariant::AsPrinted);
  return v == MaskVariant::Corrected ? corrected : printed;
}

int triple_index(const CoeffId& c) {
  switch (c.kind) {
    case CoeffKind::V:
      return 0;
    case CoeffKind::U:
      for (int k = 0; k < 6; ++k)
        if (kEdgeDirs[k].first == c.dx && kEdgeDirs[k].second == c.dy)
          return 1 + k;
      throw std::invalid_argument("bad edge direction");
    case CoeffKind::C:
      return 7;
    case CoeffKind::Ct:
      return 8;
  }
  throw std::invalid_argument("bad coefficient kind");
}

std::string triple_name(int t) {
  if (t == 0) return "alpha";
  if (t >= 1 && t <= 6)
    return "beta(" + std::to_string(kEdgeDirs[t - 1].first) + "," +
           std::to_string(kEdgeDirs[t - 1].second) + ")";
  if (t == 7) return "gamma";
  if (t == 8) return "gamma_t";
  throw std::invalid_argument("bad triple index");
}

MaskSet mask_set(const Rational& lambda, MaskVariant v) {
  const MaskTable& t = mask_table(v);
  MaskSet out;
  out.lambda = lambda;
  out.variant = v;
  for (int tr = 0; tr < 9; ++tr)
    for (int ch = 0; ch < 3; ++ch)
      for (int l = 0; l < 7; ++l) out.m[tr][ch][l] = t.m[tr][ch][l].at(lambda);
  return out;
}

Rational operator_norm_bound(const MaskSet& m) {
  Rational best(0);
  for (int tr = 0; tr < 9; ++tr) {
    Rational s(0);
    for (int ch = 0; ch < 3; ++ch)
      for (int l = 0; l < 7; ++l) s += abs(m.m[tr][ch][l]);
    if (s > best) best = s;
  }
  return best;
}

ValidationReport validate(const MaskSet& m) {
  static const struct {
    int mu1, mu2;
    const char* name;
  } kMonomials[] = {{0, 0, "unity"}, {1, 0, "x"},  {0, 1, "y"},
                    {2, 0, "xx"},    {1, 1, "xy"}, {0, 2, "yy"}};
  const Rational h(1);
  ValidationReport rep;
  std::set<std::pair<std::array<int, 5>, int>> seen;
  for (PatchKind kind : {PatchKind::Lower, PatchKind::Upper}) {
    PatchId patch{kind, 0, 0};
    auto verts = patch_vertices(patch, h);
    auto ids = patch_coeff_ids(patch);
    for (const auto& mono : kMonomials) {
      auto exact = monomial_to_bb(mono.mu1, mono.mu2, verts);
      for (int slot = 0; slot < 10; ++slot) {
        const CoeffId& id = ids[slot];
        std::array<int, 5> key{static_cast<int>(id.kind), id.i, id.j, id.dx,
                               id.dy};
        if (!seen.insert({key, mono.mu1 * 4 + mono.mu2}).second) continue;
        const auto& tri = m.triple(id);
        Rational got(0);
        for (int l = 0; l < 7; ++l) {
          auto p = vertex_position(
              VertexId{id.i + kStencilOffsets[l].i, id.j + kStencilOffsets[l].j},
              h);
          auto ipow = [](const Rational& x, int e) {
            Rational r(1);
            for (int k = 0; k < e; ++k) r *= x;
            return r;
          };
          Rational f = ipow(p[0], mono.mu1) * ipow(p[1], mono.mu2);
          Rational fx = mono.mu1 > 0 ? Rational(mono.mu1) *
                                           ipow(p[0], mono.mu1 - 1) *
                                           ipow(p[1], mono.mu2)
                                     : Rational(0);
          Rational fy = mono.mu2 > 0 ? Rational(mono.mu2) * ipow(p[0], mono.mu1) *
                                           ipow(p[1], mono.mu2 - 1)
                                     : Rational(0);
          got += tri[0][l] * f + h * (tri[1][l] * fx + tri[2][l] * fy);
        }
        ValidationCheck c;
        c.triple = triple_name(triple_index(id)) + "@(" + std::to_string(id.i) +
                   "," + std::to_string(id.j) + ")";
        c.check = mono.name;
        c.got = got;
        c.expected = exact.coeffs[slot];
        c.pass = (c.got == c.expected);
        rep.checks.push_back(std::move(c));
      }
    }
  }
  return rep;
}

}  // namespace bbqi
