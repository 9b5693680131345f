#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "bbqi/mesh.hpp"

using namespace bbqi;

TEST_CASE("vertex_position") {
  auto p = vertex_position({0, 0}, 1.0);
  CHECK(p[0] == 0.0);
  CHECK(p[1] == 0.0);
  p = vertex_position({1, 0}, 1.0);
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 1.0);
  p = vertex_position({1, 1}, 0.5);
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 0.0);

  auto q = vertex_position({-2, 3}, Rational(1, 3));
  CHECK(q[0] == Rational(1, 3));
  CHECK(q[1] == Rational(-5, 3));
}

TEST_CASE("locate basic cases") {
  CHECK(locate(Vec2<double>{1.0, 0.5}, 1.0) == PatchId{PatchKind::Lower, 0, 0});
  CHECK(locate(Vec2<double>{1.0, -0.5}, 1.0) == PatchId{PatchKind::Upper, 0, 0});
  CHECK(locate(Vec2<double>{0.0, 0.0}, 1.0) == PatchId{PatchKind::Lower, 0, 0});
  // scaled copies
  Rational h(1, 4);
  CHECK(locate(Vec2<Rational>{h, h / 2}, h) == PatchId{PatchKind::Lower, 0, 0});
  CHECK(locate(Vec2<Rational>{h, -h / 2}, h) == PatchId{PatchKind::Upper, 0, 0});
  // negative quadrant
  CHECK(locate(Vec2<Rational>{Rational(-3), Rational(0)}, Rational(1)) ==
        PatchId{PatchKind::Lower, -2, -2});
}

TEST_CASE("barycentric examples") {
  Rational h(1);
  PatchId lower{PatchKind::Lower, 0, 0};
  auto t = barycentric(vertex_position<Rational>({0, 1}, h), lower, h);
  CHECK(t[0] == 1);
  CHECK(t[1] == 1);
  CHECK(t[2] == -1);

  t = barycentric(vertex_position<Rational>({0, 0}, h), lower, h);
  CHECK(t[0] == 1);
  CHECK(t[1] == 0);
  CHECK(t[2] == 0);

  t = barycentric(Vec2<Rational>{Rational(1), Rational(1, 2)}, lower, h);
  CHECK(t[0] == Rational(1, 4));
  CHECK(t[1] == Rational(1, 4));
  CHECK(t[2] == Rational(1, 2));
}

TEST_CASE("barycentric reconstructs the point and sums to 1") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-20, 20);
  Rational h(2, 3);
  for (int rep = 0; rep < 50; ++rep) {
    Vec2<Rational> p{Rational(num(rng), 7), Rational(num(rng), 5)};
    PatchId patch = locate(p, h);
    auto t = barycentric(p, patch, h);
    CHECK(t[0] + t[1] + t[2] == 1);
    CHECK(t[0] >= 0);
    CHECK(t[1] >= 0);
    CHECK(t[2] >= 0);
    auto vs = patch_vertices(patch, h);
    CHECK(t[0] * vs[0][0] + t[1] * vs[1][0] + t[2] * vs[2][0] == p[0]);
    CHECK(t[0] * vs[0][1] + t[1] * vs[1][1] + t[2] * vs[2][1] == p[1]);
  }
}

TEST_CASE("locate tiles the unit square (floating path)") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double h = 1.0 / 16;
  for (int rep = 0; rep < 500; ++rep) {
    Vec2<double> p{uni(rng), uni(rng)};
    auto t = barycentric(p, locate(p, h), h);
    CHECK(t[0] >= -1e-12);
    CHECK(t[1] >= -1e-12);
    CHECK(t[2] >= -1e-12);
  }
}

TEST_CASE("hexagon_stencil order") {
  auto s = hexagon_stencil({0, 0});
  CHECK(s.size() == 7);
  CHECK(s[0] == VertexId{0, 0});
  CHECK(s[1] == VertexId{1, 1});
  CHECK(s[2] == VertexId{1, 0});
  CHECK(s[3] == VertexId{0, -1});
  CHECK(s[4] == VertexId{-1, -1});
  CHECK(s[5] == VertexId{-1, 0});
  CHECK(s[6] == VertexId{0, 1});

  auto s2 = hexagon_stencil({2, 3});
  CHECK(s2[0] == VertexId{2, 3});
  CHECK(s2[1] == VertexId{3, 4});
  CHECK(s2[2] == VertexId{3, 3});
  CHECK(s2[3] == VertexId{2, 2});
  CHECK(s2[4] == VertexId{1, 2});
  CHECK(s2[5] == VertexId{1, 3});
  CHECK(s2[6] == VertexId{2, 4});
}

TEST_CASE("patch_coeff_ids layout") {
  auto lo = patch_coeff_ids({PatchKind::Lower, 0, 0});
  CHECK(lo[0] == CoeffId{CoeffKind::V, 0, 0, 0, 0});
  CHECK(lo[1] == CoeffId{CoeffKind::U, 0, 0, 1, 1});
  CHECK(lo[2] == CoeffId{CoeffKind::U, 0, 0, 1, 0});
  CHECK(lo[4] == CoeffId{CoeffKind::C, 0, 0, 0, 0});
  CHECK(lo[9] == CoeffId{CoeffKind::V, 1, 0, 0, 0});

  auto up = patch_coeff_ids({PatchKind::Upper, 0, 0});
  CHECK(up[0] == CoeffId{CoeffKind::V, 0, 1, 0, 0});
  CHECK(up[1] == CoeffId{CoeffKind::U, 0, 1, 1, 0});
  CHECK(up[2] == CoeffId{CoeffKind::U, 0, 1, 0, -1});
  CHECK(up[4] == CoeffId{CoeffKind::Ct, 0, 0, 0, 0});
  CHECK(up[9] == CoeffId{CoeffKind::V, 0, 0, 0, 0});
}

namespace {
std::set<std::array<int, 5>> id_set(const std::array<CoeffId, 10>& ids) {
  std::set<std::array<int, 5>> out;
  for (const auto& c : ids)
    out.insert({static_cast<int>(c.kind), c.i, c.j, c.dx, c.dy});
  return out;
}

int shared_count(const PatchId& a, const PatchId& b) {
  auto sa = id_set(patch_coeff_ids(a));
  auto sb = id_set(patch_coeff_ids(b));
  int n = 0;
  for (const auto& k : sa)
    if (sb.count(k)) ++n;
  return n;
}
}  // namespace

TEST_CASE("adjacent patches share the 4 edge coefficients") {
  // the three neighbors of Lower(0,0) and of Upper(0,0)
  CHECK(shared_count({PatchKind::Lower, 0, 0}, {PatchKind::Upper, 0, 0}) == 4);
  CHECK(shared_count({PatchKind::Lower, 0, 0}, {PatchKind::Upper, 0, -1}) == 4);
  CHECK(shared_count({PatchKind::Lower, 0, 0}, {PatchKind::Upper, 1, 0}) == 4);
  CHECK(shared_count({PatchKind::Upper, 0, 0}, {PatchKind::Lower, -1, 0}) == 4);
  CHECK(shared_count({PatchKind::Upper, 0, 0}, {PatchKind::Lower, 0, 1}) == 4);
}

TEST_CASE("patch_vertices match the patch orientation") {
  Rational h(1);
  auto lo = patch_vertices({PatchKind::Lower, 0, 0}, h);
  CHECK(lo[0] == vertex_position<Rational>({0, 0}, h));
  CHECK(lo[1] == vertex_position<Rational>({1, 1}, h));
  CHECK(lo[2] == vertex_position<Rational>({1, 0}, h));
  auto up = patch_vertices({PatchKind::Upper, 0, 0}, h);
  CHECK(up[0] == vertex_position<Rational>({0, 1}, h));
  CHECK(up[1] == vertex_position<Rational>({1, 1}, h));
  CHECK(up[2] == vertex_position<Rational>({0, 0}, h));
}
