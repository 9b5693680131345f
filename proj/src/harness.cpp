#include "bbqi/harness.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace bbqi {

TestFunction franke() {
  TestFunction tf;
  tf.name = "franke";
  tf.f = [](double x, double y) {
    return 0.5 * std::exp(-((9 * x - 7) * (9 * x - 7) +
                            0.25 * (9 * y - 3) * (9 * y - 3))) +
           0.75 * std::exp(-(9 * x + 1) * (9 * x + 1) / 49 - (9 * y + 1) / 10) -
           0.2 * std::exp(-(9 * x - 4) * (9 * x - 4) - (9 * y - 7) * (9 * y - 7)) +
           0.75 * std::exp(-((9 * x - 2) * (9 * x - 2) + (9 * y - 2) * (9 * y - 2)));
  };
  tf.grad = [](double x, double y) -> Vec2<double> {
    double e1 = std::exp(-((9 * x - 7) * (9 * x - 7) +
                           0.25 * (9 * y - 3) * (9 * y - 3)));
    double e2 = std::exp(-(9 * x + 1) * (9 * x + 1) / 49 - (9 * y + 1) / 10);
    double e3 = std::exp(-(9 * x - 4) * (9 * x - 4) - (9 * y - 7) * (9 * y - 7));
    double e4 = std::exp(-((9 * x - 2) * (9 * x - 2) + (9 * y - 2) * (9 * y - 2)));
    double fx = 0.5 * e1 * (-18 * (9 * x - 7)) +
                0.75 * e2 * (-18 * (9 * x + 1) / 49) -
                0.2 * e3 * (-18 * (9 * x - 4)) + 0.75 * e4 * (-18 * (9 * x - 2));
    double fy = 0.5 * e1 * (-4.5 * (9 * y - 3)) + 0.75 * e2 * (-0.9) -
                0.2 * e3 * (-18 * (9 * y - 7)) + 0.75 * e4 * (-18 * (9 * y - 2));
    return {fx, fy};
  };
  return tf;
}

TestFunction nielson() {
  TestFunction tf;
  tf.name = "nielson";
  tf.f = [](double x, double y) {
    double c = std::cos(4 * (x * x + y - 1));
    return 0.5 * y * c * c * c * c;
  };
  tf.grad = [](double x, double y) -> Vec2<double> {
    double u = 4 * (x * x + y - 1);
    double c = std::cos(u), s = std::sin(u);
    return {-16 * x * y * c * c * c * s,
            0.5 * c * c * c * c - 8 * y * c * c * c * s};
  };
  return tf;
}

const TestFunction& test_function(const std::string& name) {
  static const TestFunction f = franke();
  static const TestFunction g = nielson();
  if (name == "franke") return f;
  if (name == "nielson") return g;
  throw std::invalid_argument("unknown test function: " + name);
}

ScanResult error_scan_full(const TestFunction& tf, int n, const Rational& lambda,
                           MaskVariant variant) {
  if (n <= 0) throw std::invalid_argument("n must be positive");
  const double h = 1.0 / n;
  const MaskSet masks = mask_set(lambda, variant);
  HermiteSource<double> src = [&](VertexId v) -> HermiteSample<double> {
    auto p = vertex_position(v, h);
    auto g = tf.grad(p[0], p[1]);
    return {tf.f(p[0], p[1]), g[0], g[1]};
  };
  // cells whose triangles can meet [0,1]^2: x in [0,1] forces i+j in
  // [-1, n], y in [-h, 1+h] forces i-j in [-1, n]; a padded rectangle is
  // cheap and the bounding-box test below discards the rest.
  const int jmax = (n + 1) / 2 + 1;
  Region region{0, n, -jmax, jmax};
  auto spline = Spline<double>::assemble(src, masks, h, region);

  // degree-6 principal lattice, 28 barycentric sample points per triangle
  const int deg = 6;
  std::vector<std::array<double, 3>> lattice;
  for (int a = 0; a <= deg; ++a)
    for (int b = 0; b <= deg - a; ++b)
      lattice.push_back({double(a) / deg, double(b) / deg,
                         double(deg - a - b) / deg});

  const double tol = 1e-12;
  ScanResult res;
  for (int i = region.i0; i <= region.i1; ++i)
    for (int j = region.j0; j <= region.j1; ++j)
      for (PatchKind kind : {PatchKind::Lower, PatchKind::Upper}) {
        PatchId pid{kind, i, j};
        auto vs = patch_vertices(pid, h);
        double xmin = vs[0][0], xmax = vs[0][0], ymin = vs[0][1], ymax = vs[0][1];
        for (int k = 1; k < 3; ++k) {
          xmin = std::min(xmin, vs[k][0]);
          xmax = std::max(xmax, vs[k][0]);
          ymin = std::min(ymin, vs[k][1]);
          ymax = std::max(ymax, vs[k][1]);
        }
        if (xmax < -tol || xmin > 1 + tol || ymax < -tol || ymin > 1 + tol)
          continue;
        auto patch = spline.patch(pid);
        BezierPatch<double> dx_patch, dy_patch;
        for (const auto& tau : lattice) {
          double x = tau[0] * vs[0][0] + tau[1] * vs[1][0] + tau[2] * vs[2][0];
          double y = tau[0] * vs[0][1] + tau[1] * vs[1][1] + tau[2] * vs[2][1];
          if (!(x >= 0 && x <= 1 && y >= 0 && y <= 1)) continue;
          double q = eval(patch, tau);
          res.value_error = std::max(res.value_error, std::abs(tf.f(x, y) - q));
          if (dx_patch.coeffs.empty()) {
            dx_patch = directional_derivative_patch(
                patch, bary_direction(vs, Vec2<double>{1, 0}));
            dy_patch = directional_derivative_patch(
                patch, bary_direction(vs, Vec2<double>{0, 1}));
          }
          auto g = tf.grad(x, y);
          res.gradient_error =
              std::max({res.gradient_error, std::abs(g[0] - eval(dx_patch, tau)),
                        std::abs(g[1] - eval(dy_patch, tau))});
        }
      }
  return res;
}

double nco(double e_coarse, double e_fine, double h_coarse, double h_fine) {
  if (!(e_coarse > 0 && e_fine > 0 && h_coarse > 0 && h_fine > 0))
    throw std::invalid_argument("nco arguments must be positive");
  return std::log(e_fine / e_coarse) / std::log(h_fine / h_coarse);
}

std::vector<ConvergenceRow> convergence_table(const TestFunction& tf,
                                              const std::vector<int>& ns,
                                              const Rational& lambda,
                                              bool with_gradient) {
  for (std::size_t k = 1; k < ns.size(); ++k)
    if (ns[k] <= ns[k - 1])
      throw std::invalid_argument("n list must be strictly increasing");
  std::vector<ConvergenceRow> rows;
  for (int n : ns) {
    auto scan = error_scan_full(tf, n, lambda);
    ConvergenceRow row;
    row.n = n;
    row.error = scan.value_error;
    row.gradient_error = with_gradient ? scan.gradient_error : 0;
    if (!rows.empty()) {
      const auto& prev = rows.back();
      row.has_nco = true;
      row.nco = nco(prev.error, row.error, 1.0 / prev.n, 1.0 / n);
    }
    rows.push_back(row);
  }
  return rows;
}

void write_convergence_csv(std::ostream& os,
                           const std::vector<ConvergenceRow>& rows,
                           bool with_gradient) {
  os << "n,error,nco";
  if (with_gradient) os << ",gerror";
  os << "\n";
  os << std::scientific << std::setprecision(3);
  for (const auto& row : rows) {
    os << row.n << "," << row.error << ",";
    if (row.has_nco) os << std::fixed << std::setprecision(3) << row.nco
                        << std::scientific << std::setprecision(3);
    if (with_gradient) os << "," << row.gradient_error;
    os << "\n";
  }
}

}  // namespace bbqi
