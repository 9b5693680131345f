#pragma once

// The lambda-parametric mask family: 9 mask triples (alpha for vertex
// coefficients, beta^{k,m} for the six edge coefficients, gamma / gamma_t for
// the two barycenters), each triple holding an f-, fx- and fy-mask of 7
// rational entries over the hexagon stencil.  Every entry is affine in the
// free parameter lambda.
//
// Two variants ship: "corrected" (the family certified by the derivation
// solver) and "as-printed" (the published tables verbatim, which contain
// three typos; see compare_with_published).

#include <array>
#include <string>
#include <vector>

#include "mesh.hpp"
#include "rational.hpp"

namespace bbqi {

enum class MaskVariant { Corrected, AsPrinted };

inline const char* variant_name(MaskVariant v) {
  return v == MaskVariant::Corrected ? "corrected" : "as-printed";
}

// entry(lambda) = c0 + c1 * lambda
struct MaskAffine {
  Rational c0, c1;
  Rational at(const Rational& lambda) const { return c0 + c1 * lambda; }
};

// Triple order: 0 = alpha, 1..6 = beta in kEdgeDirs order, 7 = gamma,
// 8 = gamma_t.  Channel order: 0 = f, 1 = fx, 2 = fy.
struct MaskTable {
  std::array<std::array<std::array<MaskAffine, 7>, 3>, 9> m;
};

const MaskTable& mask_table(MaskVariant v);

int triple_index(const CoeffId& c);
std::string triple_name(int t);

struct MaskSet {
  Rational lambda;
  MaskVariant variant = MaskVariant::Corrected;
  // [triple][channel][stencil index]
  std::array<std::array<std::array<Rational, 7>, 3>, 9> m;

  const std::array<std::array<Rational, 7>, 3>& triple(const CoeffId& c) const {
    return m[triple_index(c)];
  }
};

MaskSet mask_set(const Rational& lambda, MaskVariant v = MaskVariant::Corrected);

// max over the 9 triples of the sum of the three 7-vector 1-norms.
Rational operator_norm_bound(const MaskSet& m);

struct ValidationCheck {
  std::string triple;  // e.g. "beta(1,-1)@(0,0)"
  std::string check;   // "unity", "x", "y", "xx", "xy", "yy"
  Rational got, expected;
  bool pass = false;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const ValidationCheck* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }
};

// Exact check that every BB coefficient produced on T_{0,0} and T~_{0,0}
// reproduces the monomials 1, x, y, x^2, xy, y^2 (h = 1).  The constant check
// is the partition of unity of the f-mask; the linear ones are the
// first-moment conditions.
ValidationReport validate(const MaskSet& m);

}  // namespace bbqi
