#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "bbqi/derivation.hpp"
#include "bbqi/harness.hpp"
#include "bbqi/masks.hpp"
#include "bbqi/quasi_interp.hpp"

namespace py = pybind11;
using namespace bbqi;

namespace {

MaskVariant variant_from(const std::string& s) {
  if (s == "corrected") return MaskVariant::Corrected;
  if (s == "as-printed") return MaskVariant::AsPrinted;
  throw std::invalid_argument("unknown variant: " + s);
}

// Floating-path quasi-interpolant driven by a python Hermite callback
// (i, j) -> (f, fx, fy).
class QuasiInterpolant {
 public:
  QuasiInterpolant(py::function hermite, double h,
                   std::tuple<int, int, int, int> region,
                   const std::string& lambda)
      : spline_(Spline<double>::assemble(
            [&hermite](VertexId v) -> HermiteSample<double> {
              auto t = hermite(v.i, v.j)
                           .cast<std::tuple<double, double, double>>();
              return {std::get<0>(t), std::get<1>(t), std::get<2>(t)};
            },
            mask_set(parse_rational(lambda)), h,
            Region{std::get<0>(region), std::get<1>(region),
                   std::get<2>(region), std::get<3>(region)})) {}

  double value(double x, double y) const { return spline_.evaluate({x, y}); }

  std::tuple<double, double> gradient(double x, double y) const {
    auto g = spline_.gradient({x, y});
    return {g[0], g[1]};
  }

  std::tuple<double, std::size_t> c1_audit() const {
    auto rep = spline_.c1_audit();
    return {rep.max_residual(), rep.edges_checked + rep.identities_checked};
  }

 private:
  Spline<double> spline_;
};

}  // namespace

PYBIND11_MODULE(_bbqi, m) {
  m.doc() = "C1 cubic Hermite quasi-interpolating splines on the "
            "three-direction mesh";

  py::class_<QuasiInterpolant>(m, "QuasiInterpolant")
      .def(py::init<py::function, double, std::tuple<int, int, int, int>,
                    const std::string&>(),
           py::arg("hermite"), py::arg("h"), py::arg("region"),
           py::arg("lam") = "1/2")
      .def("value", &QuasiInterpolant::value)
      .def("gradient", &QuasiInterpolant::gradient)
      .def("c1_audit", &QuasiInterpolant::c1_audit);

  m.def(
      "mask_set_json",
      [](const std::string& lambda, const std::string& variant) {
        auto ms = mask_set(parse_rational(lambda), variant_from(variant));
        static const char* kChannels[3] = {"f", "fx", "fy"};
        nlohmann::json out;
        out["lambda"] = to_string(ms.lambda);
        out["variant"] = variant_name(ms.variant);
        for (int t = 0; t < 9; ++t) {
          nlohmann::json triple;
          for (int ch = 0; ch < 3; ++ch) {
            nlohmann::json arr = nlohmann::json::array();
            for (int l = 0; l < 7; ++l) arr.push_back(to_string(ms.m[t][ch][l]));
            triple[kChannels[ch]] = arr;
          }
          out[triple_name(t)] = triple;
        }
        return out.dump();
      },
      py::arg("lam") = "1/2", py::arg("variant") = "corrected");

  m.def(
      "validate_masks",
      [](const std::string& lambda, const std::string& variant) {
        auto rep = validate(mask_set(parse_rational(lambda), variant_from(variant)));
        std::string msg = "ok";
        if (const auto* f = rep.first_failure())
          msg = f->triple + " " + f->check + ": got " + to_string(f->got) +
                ", expected " + to_string(f->expected);
        return std::make_tuple(rep.ok(), msg);
      },
      py::arg("lam") = "1/2", py::arg("variant") = "corrected");

  m.def(
      "operator_norm_bound",
      [](const std::string& lambda) {
        return to_double(operator_norm_bound(mask_set(parse_rational(lambda))));
      },
      py::arg("lam") = "1/2");

  m.def(
      "derivation_report_json",
      [](bool superconvergence, bool compare) {
        return derivation_report(superconvergence, compare).dump();
      },
      py::arg("superconvergence") = true, py::arg("compare") = true);

  m.def(
      "error_scan",
      [](const std::string& fn, int n, const std::string& lambda) {
        return error_scan(test_function(fn), n, parse_rational(lambda));
      },
      py::arg("function"), py::arg("n"), py::arg("lam") = "1/2");

  m.def(
      "convergence_table",
      [](const std::string& fn, const std::vector<int>& ns,
         const std::string& lambda) {
        auto rows = convergence_table(test_function(fn), ns,
                                      parse_rational(lambda));
        std::vector<std::tuple<int, double, std::optional<double>>> out;
        for (const auto& r : rows)
          out.emplace_back(r.n, r.error,
                           r.has_nco ? std::optional<double>(r.nco)
                                     : std::nullopt);
        return out;
      },
      py::arg("function"), py::arg("ns"), py::arg("lam") = "1/2");
}
