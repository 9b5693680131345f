#pragma once

// Convergence benchmark: assemble the quasi-interpolant for a test function
// on [0,1]^2 at h = 1/n, estimate the sup error by sampling the degree-6
// principal lattice (28 points) of every triangle meeting the square, and
// tabulate numerical convergence orders.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "quasi_interp.hpp"

namespace bbqi {

struct TestFunction {
  std::string name;
  std::function<double(double, double)> f;
  std::function<Vec2<double>(double, double)> grad;
};

TestFunction franke();
TestFunction nielson();
// "franke" or "nielson"; throws std::invalid_argument otherwise.
const TestFunction& test_function(const std::string& name);

struct ScanResult {
  double value_error = 0;    // sup |f - Qf| over the sample points
  double gradient_error = 0; // sup of the gradient-component errors
};

ScanResult error_scan_full(const TestFunction& tf, int n, const Rational& lambda,
                           MaskVariant variant = MaskVariant::Corrected);

inline double error_scan(const TestFunction& tf, int n, const Rational& lambda,
                         MaskVariant variant = MaskVariant::Corrected) {
  return error_scan_full(tf, n, lambda, variant).value_error;
}

// log(e_fine/e_coarse) / log(h_fine/h_coarse); all arguments must be > 0.
double nco(double e_coarse, double e_fine, double h_coarse, double h_fine);

struct ConvergenceRow {
  int n = 0;
  double error = 0;
  double gradient_error = 0;
  bool has_nco = false;
  double nco = 0;
};

// ns must be strictly increasing.
std::vector<ConvergenceRow> convergence_table(const TestFunction& tf,
                                              const std::vector<int>& ns,
                                              const Rational& lambda,
                                              bool with_gradient = false);

// CSV with header n,error,nco (plus gerror when requested); scientific
// notation, 4 significant digits.
void write_convergence_csv(std::ostream& os,
                           const std::vector<ConvergenceRow>& rows,
                           bool with_gradient = false);

}  // namespace bbqi
