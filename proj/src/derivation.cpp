#include "bbqi/derivation.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include "bbqi/bernstein.hpp"
#include "bbqi/mesh.hpp"

namespace bbqi {

namespace {

std::string channel_sub(int ch) {
  return ch == 0 ? "0,0" : (ch == 1 ? "1,0" : "0,1");
}

struct SignedCoeff {
  int sign;
  CoeffId id;
};

// The nine C1 identities between BB coefficients, three per edge class at
// v_{0,0} (diagonal, horizontal-lattice, vertical-lattice edge).
const std::vector<std::vector<SignedCoeff>>& c1_identities() {
  auto V = [](int a, int b) { return CoeffId{CoeffKind::V, a, b, 0, 0}; };
  auto U = [](int a, int b, int k, int m) {
    return CoeffId{CoeffKind::U, a, b, k, m};
  };
  auto C = [](int a, int b) { return CoeffId{CoeffKind::C, a, b, 0, 0}; };
  auto Ct = [](int a, int b) { return CoeffId{CoeffKind::Ct, a, b, 0, 0}; };
  static const std::vector<std::vector<SignedCoeff>> ids = {
      {{1, V(0, 0)}, {1, U(0, 0, 1, 1)}, {-1, U(0, 0, 1, 0)}, {-1, U(0, 0, 0, 1)}},
      {{1, C(0, 0)}, {1, Ct(0, 0)}, {-1, U(0, 0, 1, 1)}, {-1, U(1, 1, -1, -1)}},
      {{1, U(1, 1, -1, -1)}, {1, V(1, 1)}, {-1, U(1, 1, 0, -1)}, {-1, U(1, 1, -1, 0)}},
      {{1, U(0, 0, 0, -1)}, {1, U(0, 0, 1, 1)}, {-1, V(0, 0)}, {-1, U(0, 0, 1, 0)}},
      {{1, Ct(0, -1)}, {1, C(0, 0)}, {-1, U(0, 0, 1, 0)}, {-1, U(1, 0, -1, 0)}},
      {{1, U(1, 0, -1, -1)}, {1, U(1, 0, 0, 1)}, {-1, U(1, 0, -1, 0)}, {-1, V(1, 0)}},
      {{1, U(0, 0, -1, 0)}, {1, U(0, 0, 1, 1)}, {-1, V(0, 0)}, {-1, U(0, 0, 0, 1)}},
      {{1, C(-1, 0)}, {1, Ct(0, 0)}, {-1, U(0, 0, 0, 1)}, {-1, U(0, 1, 0, -1)}},
      {{1, U(0, 1, -1, -1)}, {1, U(0, 1, 1, 0)}, {-1, U(0, 1, 0, -1)}, {-1, V(0, 1)}},
  };
  return ids;
}

struct MonomialData {
  int mu1, mu2;
  Rational f(const Vec2<Rational>& p) const {
    return ipow(p[0], mu1) * ipow(p[1], mu2);
  }
  Rational fx(const Vec2<Rational>& p) const {
    return mu1 > 0 ? Rational(mu1) * ipow(p[0], mu1 - 1) * ipow(p[1], mu2)
                   : Rational(0);
  }
  Rational fy(const Vec2<Rational>& p) const {
    return mu2 > 0 ? Rational(mu2) * ipow(p[0], mu1) * ipow(p[1], mu2 - 1)
                   : Rational(0);
  }
  static Rational ipow(const Rational& x, int e) {
    Rational r(1);
    for (int k = 0; k < e; ++k) r *= x;
    return r;
  }
};

// Adds scale * (mask expansion of the coefficient, applied to monomial data
// at mesh scale h) to the row.
void add_masked_data(LinRow& row, const CoeffId& id, const MonomialData& mono,
                     const Rational& h, const Rational& scale) {
  int t = triple_index(id);
  for (int l = 0; l < 7; ++l) {
    auto p = vertex_position(
        VertexId{id.i + kStencilOffsets[l].i, id.j + kStencilOffsets[l].j}, h);
    row.a[unknown_index(t, 0, l)] += scale * mono.f(p);
    row.a[unknown_index(t, 1, l)] += scale * h * mono.fx(p);
    row.a[unknown_index(t, 2, l)] += scale * h * mono.fy(p);
  }
}

void prune_zeros(LinRow& row) {
  for (auto it = row.a.begin(); it != row.a.end();)
    it = (it->second == 0) ? row.a.erase(it) : std::next(it);
}

}  // namespace

std::string unknown_name(int idx) {
  int l = idx % 7;
  int ch = (idx / 7) % 3;
  int t = idx / 21;
  return triple_name(t) + "_{" + channel_sub(ch) + "," + std::to_string(l) + "}";
}

LinearSystem build_c1_rows() {
  LinearSystem sys;
  int ident_no = 0;
  for (const auto& ident : c1_identities()) {
    ++ident_no;
    // collect, per data functional (vertex, channel), the +/-1 coefficients
    // each side's mask expansion contributes
    std::map<std::tuple<int, int, int>, std::map<int, Rational>> funcs;
    for (const auto& [sign, id] : ident) {
      int t = triple_index(id);
      for (int l = 0; l < 7; ++l) {
        int vi = id.i + kStencilOffsets[l].i;
        int vj = id.j + kStencilOffsets[l].j;
        for (int ch = 0; ch < 3; ++ch)
          funcs[{vi, vj, ch}][unknown_index(t, ch, l)] += Rational(sign);
      }
    }
    for (auto& [key, coeffs] : funcs) {
      LinRow row;
      row.a = std::move(coeffs);
      prune_zeros(row);
      if (row.a.empty()) continue;
      auto [vi, vj, ch] = key;
      std::ostringstream tag;
      tag << "C1[" << ident_no << "]@v(" << vi << "," << vj << ")."
          << (ch == 0 ? "f" : ch == 1 ? "fx" : "fy");
      row.tag = tag.str();
      sys.rows.push_back(std::move(row));
    }
  }
  return sys;
}

void append_exactness_rows(LinearSystem& sys, const Rational& h) {
  static const MonomialData kMonomials[] = {{0, 0}, {1, 0}, {0, 1},
                                            {2, 0}, {1, 1}, {0, 2}};
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
        LinRow row;
        add_masked_data(row, id, mono, h, Rational(1));
        prune_zeros(row);
        row.rhs = exact.coeffs[slot];
        std::ostringstream tag;
        tag << "Exactness[x^" << mono.mu1 << "y^" << mono.mu2 << ","
            << triple_name(triple_index(id)) << "@(" << id.i << "," << id.j
            << ")]";
        row.tag = tag.str();
        sys.rows.push_back(std::move(row));
      }
    }
  }
}

void append_superconvergence_rows(LinearSystem& sys, const Rational& h,
                                  int midpoints) {
  static const MonomialData kCubics[] = {{3, 0}, {2, 1}, {1, 2}, {0, 3}};
  const Rational half(1, 2);
  const std::array<std::array<Rational, 3>, 3> taus = {
      {{half, half, Rational(0)},
       {half, Rational(0), half},
       {Rational(0), half, half}}};
  PatchId patch{PatchKind::Lower, 0, 0};
  auto verts = patch_vertices(patch, h);
  auto ids = patch_coeff_ids(patch);
  auto mis = mi_enumerate(3);
  for (const auto& mono : kCubics) {
    for (int mp = 0; mp < midpoints; ++mp) {
      const auto& tau = taus[mp];
      LinRow row;
      for (int slot = 0; slot < 10; ++slot)
        add_masked_data(row, ids[slot], mono, h,
                        bernstein_value(mis[slot], 3, tau));
      prune_zeros(row);
      Vec2<Rational> pt{Rational(0), Rational(0)};
      for (int k = 0; k < 3; ++k) {
        pt[0] += tau[k] * verts[k][0];
        pt[1] += tau[k] * verts[k][1];
      }
      row.rhs = mono.f(pt);
      std::ostringstream tag;
      tag << "Superconvergence[x^" << mono.mu1 << "y^" << mono.mu2
          << ",midpoint" << mp << "]";
      row.tag = tag.str();
      sys.rows.push_back(std::move(row));
    }
  }
}

std::vector<int> named_free_params() {
  // alpha_{1,0,2}, alpha_{0,1,2}, alpha_{0,0,3}, alpha_{1,0,3}, alpha_{0,0,2};
  // the last listed is the last pivot candidate, so it stays free when the
  // superconvergence rows cut the family down to dimension 1.
  return {unknown_index(0, 1, 2), unknown_index(0, 2, 2),
          unknown_index(0, 0, 3), unknown_index(0, 1, 3),
          unknown_index(0, 0, 2)};
}

SolutionFamily solve(const LinearSystem& sys,
                     const std::vector<int>& preferred_free) {
  const int n = kNumUnknowns;
  // column order: everything else first, preferred free columns last
  std::vector<int> order;
  order.reserve(n);
  std::vector<bool> is_pref(n, false);
  for (int c : preferred_free) is_pref[c] = true;
  for (int c = 0; c < n; ++c)
    if (!is_pref[c]) order.push_back(c);
  for (int c : preferred_free) order.push_back(c);

  const int nrows = static_cast<int>(sys.rows.size());
  const int ncols = n + 1;  // rhs appended
  std::vector<std::vector<Int>> M(nrows, std::vector<Int>(ncols, Int(0)));
  std::vector<std::string> tags(nrows);
  for (int r = 0; r < nrows; ++r) {
    const LinRow& row = sys.rows[r];
    tags[r] = row.tag;
    // clear denominators
    Int lcm_den = denominator(row.rhs);
    for (const auto& [c, v] : row.a) lcm_den = lcm(lcm_den, denominator(v));
    for (int pos = 0; pos < n; ++pos) {
      auto it = row.a.find(order[pos]);
      if (it != row.a.end())
        M[r][pos] = numerator(it->second) * (lcm_den / denominator(it->second));
    }
    M[r][n] = numerator(row.rhs) * (lcm_den / denominator(row.rhs));
  }

  // fraction-free forward elimination (Bareiss)
  Int prev(1);
  int r = 0;
  std::vector<int> pivot_pos;
  for (int cpos = 0; cpos < n && r < nrows; ++cpos) {
    int sel = -1;
    for (int q = r; q < nrows; ++q)
      if (M[q][cpos] != 0) {
        sel = q;
        break;
      }
    if (sel < 0) continue;
    std::swap(M[r], M[sel]);
    std::swap(tags[r], tags[sel]);
    for (int q = r + 1; q < nrows; ++q) {
      if (M[q][cpos] == 0) {
        if (prev != 1)
          for (int c = cpos + 1; c < ncols; ++c)
            M[q][c] = M[q][c] * M[r][cpos] / prev;
        else
          for (int c = cpos + 1; c < ncols; ++c) M[q][c] = M[q][c] * M[r][cpos];
        continue;
      }
      for (int c = cpos + 1; c < ncols; ++c)
        M[q][c] = (M[q][c] * M[r][cpos] - M[r][c] * M[q][cpos]) / prev;
      M[q][cpos] = 0;
    }
    prev = M[r][cpos];
    pivot_pos.push_back(cpos);
    ++r;
  }
  for (int q = r; q < nrows; ++q)
    if (M[q][n] != 0)
      throw InfeasibleSystem("inconsistent system, violated row: " + tags[q]);

  SolutionFamily fam;
  fam.rank = r;
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_pos) is_pivot[c] = true;
  std::vector<int> free_pos;
  for (int c = 0; c < n; ++c)
    if (!is_pivot[c]) free_pos.push_back(c);

  // back substitution in rationals; one pass for the particular solution
  // (free vars = 0, rhs column) and one per null-space basis vector
  // (free var = 1, homogeneous).
  auto back_solve = [&](const std::vector<Rational>& seed,
                        bool use_rhs) -> std::vector<Rational> {
    std::vector<Rational> x = seed;  // indexed by column position
    for (int k = static_cast<int>(pivot_pos.size()) - 1; k >= 0; --k) {
      int cpos = pivot_pos[k];
      Rational acc = use_rhs ? Rational(M[k][n]) : Rational(0);
      for (int c = cpos + 1; c < n; ++c)
        if (M[k][c] != 0) acc -= Rational(M[k][c]) * x[c];
      x[cpos] = acc / Rational(M[k][cpos]);
    }
    return x;
  };

  std::vector<Rational> zero(n, Rational(0));
  auto part_pos = back_solve(zero, true);
  fam.particular.assign(n, Rational(0));
  for (int pos = 0; pos < n; ++pos) fam.particular[order[pos]] = part_pos[pos];
  for (int fp : free_pos) {
    std::vector<Rational> seed = zero;
    seed[fp] = Rational(1);
    auto vec_pos = back_solve(seed, false);
    std::vector<Rational> vec(n, Rational(0));
    for (int pos = 0; pos < n; ++pos) vec[order[pos]] = vec_pos[pos];
    fam.basis.push_back(std::move(vec));
    fam.free_cols.push_back(order[fp]);
  }
  return fam;
}

AffineFamily reparameterize(const SolutionFamily& fam) {
  if (fam.dimension() != 1)
    throw std::invalid_argument("family dimension is not 1");
  int a = unknown_index(0, 0, 2);  // alpha_{0,0,2} =: lambda
  const auto& b = fam.basis[0];
  if (b[a] == 0)
    throw std::invalid_argument("family is not parameterizable by alpha_{0,0,2}");
  AffineFamily out;
  for (int i = 0; i < kNumUnknowns; ++i) {
    Rational c1 = b[i] / b[a];
    out.e[i] = {fam.particular[i] - c1 * fam.particular[a], c1};
  }
  return out;
}

namespace {
std::string affine_str(const Rational& c0, const Rational& c1) {
  if (c1 == 0) return to_string(c0);
  std::string s = to_string(c1) + "*L";
  if (c0 != 0) s = to_string(c0) + " + " + s;
  return s;
}
}  // namespace

std::vector<MaskMismatch> compare_with_published(const AffineFamily& fam) {
  const MaskTable& printed = mask_table(MaskVariant::AsPrinted);
  std::vector<MaskMismatch> out;
  for (int t = 0; t < 9; ++t)
    for (int ch = 0; ch < 3; ++ch)
      for (int l = 0; l < 7; ++l) {
        int idx = unknown_index(t, ch, l);
        const MaskAffine& p = printed.m[t][ch][l];
        const auto& d = fam.e[idx];
        if (p.c0 == d[0] && p.c1 == d[1]) continue;
        out.push_back({idx, unknown_name(idx), affine_str(p.c0, p.c1),
                       affine_str(d[0], d[1])});
      }
  return out;
}

nlohmann::json derivation_report(bool superconvergence, bool compare) {
  if (compare) superconvergence = true;
  nlohmann::json rep;

  LinearSystem sys = build_c1_rows();
  std::size_t n_c1 = sys.rows.size();
  append_exactness_rows(sys);
  rep["c1_rows"] = n_c1;
  rep["exactness_rows"] = sys.rows.size() - n_c1;

  auto fam1 = solve(sys, named_free_params());
  rep["dimension_stage1"] = fam1.dimension();
  auto names = [](const std::vector<int>& cols) {
    nlohmann::json arr = nlohmann::json::array();
    for (int c : cols) arr.push_back(unknown_name(c));
    return arr;
  };
  rep["free_params"] = names(fam1.free_cols);

  if (superconvergence) {
    // rank probe: do the second and third midpoints add new constraints?
    LinearSystem sys_one = sys;
    append_superconvergence_rows(sys_one, Rational(1), 1);
    auto fam_one = solve(sys_one, named_free_params());

    append_superconvergence_rows(sys);
    rep["superconvergence_rows"] = 12;
    auto fam2 = solve(sys, named_free_params());
    rep["dimension_stage2"] = fam2.dimension();
    rep["free_params"] = names(fam2.free_cols);
    rep["extra_midpoint_rows_add_rank"] = (fam2.rank != fam_one.rank);

    if (compare) {
      auto aff = reparameterize(fam2);
      auto mism = compare_with_published(aff);
      rep["matches"] = kNumUnknowns - static_cast<int>(mism.size());
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& m : mism)
        arr.push_back({{"mask", m.mask},
                       {"index", m.index},
                       {"printed", m.printed},
                       {"derived", m.derived}});
      rep["mismatches"] = arr;
    }
  }

  // the corrected masks must satisfy every row at three lambda probes
  nlohmann::json probes = nlohmann::json::array();
  for (const char* ls : {"0", "1/2", "1"}) {
    Rational lambda = parse_rational(ls);
    MaskSet ms = mask_set(lambda, MaskVariant::Corrected);
    bool ok = true;
    for (const auto& row : sys.rows) {
      Rational acc(0);
      for (const auto& [c, v] : row.a) {
        int l = c % 7, ch = (c / 7) % 3, t = c / 21;
        acc += v * ms.m[t][ch][l];
      }
      if (acc != row.rhs) {
        ok = false;
        break;
      }
    }
    probes.push_back({{"lambda", ls}, {"all_rows_hold", ok}});
  }
  rep["lambda_probes"] = probes;
  return rep;
}

}  // namespace bbqi
