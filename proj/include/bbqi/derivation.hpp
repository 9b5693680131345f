#pragma once

// Exact-rational constraint engine that rebuilds the mask family from first
// principles: the nine C1 coefficient identities, P2-exactness of every BB
// coefficient of T_{0,0} / T~_{0,0}, and the order-4 midpoint conditions.
// The 189 unknowns are the mask entries, indexed (triple, channel, stencil).

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "masks.hpp"
#include "rational.hpp"

namespace bbqi {

constexpr int kNumUnknowns = 189;

inline int unknown_index(int triple, int channel, int l) {
  return (triple * 3 + channel) * 7 + l;
}

std::string unknown_name(int idx);

struct LinRow {
  std::map<int, Rational> a;  // sparse coefficients over the 189 unknowns
  Rational rhs;
  std::string tag;  // provenance: C1 / Exactness / Superconvergence
};

struct LinearSystem {
  std::vector<LinRow> rows;
};

// One homogeneous row per (vertex, channel) data functional per identity.
LinearSystem build_c1_rows();

// 96 rows: 16 distinct coefficients of T_{0,0} u T~_{0,0} x 6 monomials of
// total degree <= 2.  h only rescales the system; the solution set is
// h-independent.
void append_exactness_rows(LinearSystem& sys, const Rational& h = Rational(1));

// 12 rows: 4 cubic monomials x 3 edge midpoints of T_{0,0}.  midpoints < 3
// restricts to the first midpoints (used to measure whether the remaining
// ones add rank).
void append_superconvergence_rows(LinearSystem& sys,
                                  const Rational& h = Rational(1),
                                  int midpoints = 3);

struct SolutionFamily {
  std::vector<Rational> particular;           // one solution (free vars = 0)
  std::vector<std::vector<Rational>> basis;   // null-space basis
  std::vector<int> free_cols;                 // unknown index per basis vector
  int rank = 0;
  int dimension() const { return static_cast<int>(basis.size()); }
};

struct InfeasibleSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact fraction-free row reduction.  Pivot columns are chosen left to right
// with the columns in preferred_free tried last, so that (when the rank
// allows) exactly those become the free coordinates.
SolutionFamily solve(const LinearSystem& sys,
                     const std::vector<int>& preferred_free = {});

// The five free coordinates used for the C1+exactness stage:
// alpha_{1,0,2}, alpha_{0,1,2}, alpha_{0,0,3}, alpha_{1,0,3}, alpha_{0,0,2}.
std::vector<int> named_free_params();

// entry(lambda) = c0 + c1*lambda for each of the 189 unknowns.
struct AffineFamily {
  std::array<std::array<Rational, 2>, kNumUnknowns> e;
};

// Requires dimension 1; reparameterizes by lambda := alpha_{0,0,2}.
AffineFamily reparameterize(const SolutionFamily& fam);

struct MaskMismatch {
  int index;             // unknown index
  std::string mask;      // human-readable unknown name
  std::string printed;   // as-printed entry, "c0 + c1*L"
  std::string derived;   // solver entry
};

// Diff of the solved 1-parameter family against the as-printed tables.
std::vector<MaskMismatch> compare_with_published(const AffineFamily& fam);

// Full report; superconvergence adds the stage-2 solve, compare adds the
// published-table diff (and implies superconvergence).
nlohmann::json derivation_report(bool superconvergence, bool compare);

}  // namespace bbqi
