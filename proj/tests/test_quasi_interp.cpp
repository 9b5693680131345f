#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <utility>

#include "bbqi/harness.hpp"
#include "bbqi/quasi_interp.hpp"

using namespace bbqi;

namespace {

struct Quadratic {
  // c[0] + c[1] x + c[2] y + c[3] x^2 + c[4] xy + c[5] y^2
  std::array<Rational, 6> c;
  Rational value(const Vec2<Rational>& p) const {
    return c[0] + c[1] * p[0] + c[2] * p[1] + c[3] * p[0] * p[0] +
           c[4] * p[0] * p[1] + c[5] * p[1] * p[1];
  }
  Rational dx(const Vec2<Rational>& p) const {
    return c[1] + 2 * c[3] * p[0] + c[4] * p[1];
  }
  Rational dy(const Vec2<Rational>& p) const {
    return c[2] + c[4] * p[0] + 2 * c[5] * p[1];
  }
};

HermiteSource<Rational> source_of(const Quadratic& q, const Rational& h) {
  return [q, h](VertexId v) -> HermiteSample<Rational> {
    auto p = vertex_position(v, h);
    return {q.value(p), q.dx(p), q.dy(p)};
  };
}

Rational rnd_rat(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  return Rational(num(rng), den(rng));
}

}  // namespace

TEST_CASE("constant data gives the constant spline") {
  HermiteSource<Rational> one = [](VertexId) -> HermiteSample<Rational> {
    return {Rational(1), Rational(0), Rational(0)};
  };
  auto s = Spline<Rational>::assemble(one, mask_set(Rational(1, 2)),
                                      Rational(1, 2), {-1, 1, -1, 1});
  for (const PatchId pid : {PatchId{PatchKind::Lower, 0, 0},
                            PatchId{PatchKind::Upper, -1, 1}})
    for (const CoeffId& id : patch_coeff_ids(pid)) CHECK(s.coeff(id) == 1);
  CHECK(s.evaluate({Rational(1, 3), Rational(1, 7)}) == 1);
  auto g = s.gradient({Rational(1, 3), Rational(1, 7)});
  CHECK(g[0] == 0);
  CHECK(g[1] == 0);
}

TEST_CASE("quadratic reproduction on the rational path") {
  std::mt19937 rng(41);
  Rational h(1, 3);
  for (const Rational& lambda : {Rational(1, 2), Rational(2, 5)}) {
    Quadratic q{{rnd_rat(rng), rnd_rat(rng), rnd_rat(rng), rnd_rat(rng),
                 rnd_rat(rng), rnd_rat(rng)}};
    auto s = Spline<Rational>::assemble(source_of(q, h), mask_set(lambda), h,
                                        {-2, 2, -2, 2});
    for (int rep = 0; rep < 20; ++rep) {
      Vec2<Rational> p{Rational(std::uniform_int_distribution<int>(-5, 5)(rng), 7),
                       Rational(std::uniform_int_distribution<int>(-5, 5)(rng), 9)};
      CHECK(s.evaluate(p) == q.value(p));
      auto g = s.gradient(p);
      CHECK(g[0] == q.dx(p));
      CHECK(g[1] == q.dy(p));
    }
  }
}

TEST_CASE("evaluation agrees across a shared edge") {
  std::mt19937 rng(43);
  Rational h(1);
  HermiteSource<Rational> src = [&rng](VertexId) -> HermiteSample<Rational> {
    static std::mt19937 r(97);
    return {rnd_rat(r), rnd_rat(r), rnd_rat(r)};
  };
  auto s = Spline<Rational>::assemble(src, mask_set(Rational(1, 2)), h,
                                      {0, 0, 0, 0});
  // midpoint of the shared diagonal edge [v00, v11]
  Vec2<Rational> mid{Rational(1), Rational(0)};
  PatchId lo{PatchKind::Lower, 0, 0}, up{PatchKind::Upper, 0, 0};
  CHECK(eval(s.patch(lo), barycentric(mid, lo, h)) ==
        eval(s.patch(up), barycentric(mid, up, h)));
}

TEST_CASE("c1_audit is exactly zero for random rational data") {
  std::mt19937 rng(47);
  HermiteSource<Rational> src = [&rng](VertexId) -> HermiteSample<Rational> {
    return {rnd_rat(rng), rnd_rat(rng), rnd_rat(rng)};
  };
  auto s = Spline<Rational>::assemble(src, mask_set(Rational(3, 4)),
                                      Rational(2, 5), {-1, 2, -1, 2});
  auto rep = s.c1_audit();
  CHECK(rep.edges_checked > 0);
  CHECK(rep.identities_checked > 0);
  CHECK(rep.max_edge_residual == 0);
  CHECK(rep.max_identity_residual == 0);
}

TEST_CASE("c1_audit floating-point calibration and perturbation detection") {
  auto tf = franke();
  double h = 1.0 / 16;
  HermiteSource<double> src = [&](VertexId v) -> HermiteSample<double> {
    auto p = vertex_position(v, h);
    auto g = tf.grad(p[0], p[1]);
    return {tf.f(p[0], p[1]), g[0], g[1]};
  };
  auto s = Spline<double>::assemble(src, mask_set(Rational(1, 2)), h,
                                    {0, 16, -9, 9});
  auto rep = s.c1_audit();
  CHECK(rep.max_residual() <= 1e-12);

  auto broken = s.with_perturbed({CoeffKind::C, 8, 0, 0, 0}, 1.0);
  auto rep2 = broken.c1_audit();
  CHECK(rep2.max_residual() >= 1.0 - 1e-9);
}

TEST_CASE("out-of-region evaluation raises") {
  HermiteSource<double> zero = [](VertexId) -> HermiteSample<double> {
    return {0, 0, 0};
  };
  auto s = Spline<double>::assemble(zero, mask_set(Rational(1, 2)), 0.5,
                                    {0, 1, 0, 1});
  CHECK_THROWS_AS(s.evaluate({-5.0, 0.0}), OutOfRegionError);
}

TEST_CASE("cubic superconvergence and quartic vertex errors") {
  // epsilon[m] := Qm - m at special points, on the rational path
  auto mono_source = [](int mu1, int mu2, const Rational& h) {
    return HermiteSource<Rational>([mu1, mu2, h](VertexId v) {
      auto p = vertex_position(v, h);
      auto ipow = [](const Rational& x, int e) {
        Rational r(1);
        for (int k = 0; k < e; ++k) r *= x;
        return r;
      };
      return HermiteSample<Rational>{
          ipow(p[0], mu1) * ipow(p[1], mu2),
          mu1 > 0 ? Rational(mu1) * ipow(p[0], mu1 - 1) * ipow(p[1], mu2)
                  : Rational(0),
          mu2 > 0 ? Rational(mu2) * ipow(p[0], mu1) * ipow(p[1], mu2 - 1)
                  : Rational(0)};
    });
  };
  Rational h(1), lambda(1, 2);
  auto masks = mask_set(lambda);

  // m_{3,1} at lambda = 1/2: the vertex error 2h^4(2L-1) vanishes
  auto s31 = Spline<Rational>::assemble(mono_source(3, 1, h), masks, h,
                                        {-2, 2, -2, 2});
  CHECK(s31.evaluate({Rational(0), Rational(0)}) == 0);

  // m_{4,0}: vertex error -(4/3)h^4 at h = 1 and h = 1/2
  for (const Rational& hh : {Rational(1), Rational(1, 2)}) {
    auto s40 = Spline<Rational>::assemble(mono_source(4, 0, hh),
                                          mask_set(lambda), hh, {-2, 2, -2, 2});
    Rational h4 = hh * hh * hh * hh;
    CHECK(s40.evaluate({Rational(0), Rational(0)}) == Rational(-4, 3) * h4);
  }

  // cubics: zero error at the three midpoints of T_{0,0} and at v_{0,0}
  auto vs = patch_vertices({PatchKind::Lower, 0, 0}, h);
  for (int mu1 = 0; mu1 <= 3; ++mu1) {
    int mu2 = 3 - mu1;
    auto s = Spline<Rational>::assemble(mono_source(mu1, mu2, h), masks, h,
                                        {-2, 2, -2, 2});
    auto check_at = [&](const Vec2<Rational>& p) {
      Rational exact(1);
      for (int k = 0; k < mu1; ++k) exact *= p[0];
      for (int k = 0; k < mu2; ++k) exact *= p[1];
      CHECK(s.evaluate(p) == exact);
    };
    check_at({Rational(0), Rational(0)});
    for (int a = 0; a < 3; ++a) {
      int b = (a + 1) % 3;
      check_at({(vs[a][0] + vs[b][0]) / 2, (vs[a][1] + vs[b][1]) / 2});
    }
  }
}

TEST_CASE("coefficients are assembled once per id and region is respected") {
  int calls = 0;
  HermiteSource<double> counting = [&calls](VertexId) -> HermiteSample<double> {
    ++calls;
    return {1.0, 0.0, 0.0};
  };
  auto s = Spline<double>::assemble(counting, mask_set(Rational(1, 2)), 1.0,
                                    {0, 3, 0, 3});
  // 4x4 cells touch a bounded vertex set; the source must be consulted at
  // most once per vertex
  CHECK(calls == static_cast<int>(
                     [&] {
                       std::set<std::pair<int, int>> verts;
                       for (int i = 0; i <= 3; ++i)
                         for (int j = 0; j <= 3; ++j)
                           for (PatchKind k :
                                {PatchKind::Lower, PatchKind::Upper})
                             for (const auto& id : patch_coeff_ids({k, i, j}))
                               for (const auto& off : kStencilOffsets)
                                 verts.insert({id.i + off.i, id.j + off.j});
                       return verts.size();
                     }()));
  CHECK(s.covers({PatchKind::Lower, 3, 3}));
  CHECK(!s.covers({PatchKind::Upper, 4, 0}));
}
