#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "renyikit/classic.hpp"
#include "renyikit/dist.hpp"
#include "renyikit/exponents.hpp"
#include "renyikit/protocol_sim.hpp"
#include "renyikit/simplex_opt.hpp"
#include "renyikit/two_param.hpp"
#include "renyikit/verify.hpp"
#include "renyikit/version.hpp"

namespace py = pybind11;
using namespace renyikit;

namespace {

using Rows = std::vector<std::vector<double>>;

Rows rows_of(const JointPmf& j) {
  Rows out(j.nx());
  for (std::size_t x = 0; x < j.nx(); ++x) out[x].assign(j.row(x).begin(), j.row(x).end());
  return out;
}

CondEntropyVariant cond_variant(const std::string& name) {
  if (name == "H") return CondEntropyVariant::H;
  if (name == "Hstar") return CondEntropyVariant::Hstar;
  if (name == "Hbar") return CondEntropyVariant::Hbar;
  if (name == "HbarStar") return CondEntropyVariant::HbarStar;
  throw py::value_error("unknown conditional entropy variant '" + name + "'");
}

MutualInfoVariant mi_variant(const std::string& name) {
  if (name == "I") return MutualInfoVariant::I;
  if (name == "Istar") return MutualInfoVariant::Istar;
  if (name == "Ibar") return MutualInfoVariant::Ibar;
  if (name == "IbarStar") return MutualInfoVariant::IbarStar;
  throw py::value_error("unknown mutual information variant '" + name + "'");
}

py::dict two_param_dict(const TwoParamResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["branch"] = to_string(r.branch);
  d["corner_warning"] = r.corner_warning;
  return d;
}

py::dict report_dict(const OptReport& r) {
  py::dict d;
  d["minimum"] = r.minimum;
  d["gap"] = r.gap;
  d["certified"] = r.certified;
  d["argmin"] = rows_of(r.argmin);
  d["method"] = to_string(r.method);
  d["iterations"] = r.iterations;
  d["grid_points"] = r.grid_points;
  return d;
}

py::dict record_dict(const SimRecord& r) {
  py::dict d;
  d["n"] = r.n;
  d["M"] = r.M;
  d["beta"] = r.beta;
  d["estimator"] = r.estimator;
  d["value_bits"] = r.value_bits;
  d["stderr"] = r.stderr_bits ? py::cast(*r.stderr_bits) : py::none();
  d["seed"] = r.seed ? py::cast(*r.seed) : py::none();
  d["rounding_note"] = r.rounding_note;
  d["caveat"] = r.caveat;
  return d;
}

py::dict exponent_dict(const ExponentResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["arg_alpha"] = r.arg_alpha ? py::cast(*r.arg_alpha) : py::none();
  d["dual_value"] = r.dual_value ? py::cast(*r.dual_value) : py::none();
  d["dual_gap"] = r.dual_gap ? py::cast(*r.dual_gap) : py::none();
  d["branch"] = to_string(r.branch);
  return d;
}

}  // namespace

PYBIND11_MODULE(_renyikit, m) {
  m.doc() = "Two-parameter Renyi information measures (values in bits)";
  m.attr("__version__") = kVersion;

  static py::exception<Error> base(m, "RenyiError", PyExc_ValueError);
  static py::exception<UndefinedCorner> corner(m, "UndefinedCorner", base.ptr());
  static py::exception<InvalidOrder> order(m, "InvalidOrder", base.ptr());
  static py::exception<EnumerationCap> cap(m, "EnumerationCap", base.ptr());
  static py::exception<DimensionCap> dim(m, "DimensionCap", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const UndefinedCorner& e) {
      py::set_error(corner, e.what());
    } catch (const InvalidOrder& e) {
      py::set_error(order, e.what());
    } catch (const EnumerationCap& e) {
      py::set_error(cap, e.what());
    } catch (const DimensionCap& e) {
      py::set_error(dim, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  py::class_<JointPmf>(m, "JointPmf")
      .def(py::init([](const Rows& rows) { return JointPmf::make(rows); }), py::arg("rows"))
      .def_static("from_json", [](const std::string& s) { return joint_from_json(s); })
      .def("to_json", [](const JointPmf& j) { return to_json(j); })
      .def_property_readonly("nx", &JointPmf::nx)
      .def_property_readonly("ny", &JointPmf::ny)
      .def_property_readonly("alphabet_x", &JointPmf::alphabet_x)
      .def_property_readonly("alphabet_y", &JointPmf::alphabet_y)
      .def("rows", &rows_of)
      .def("transposed", &JointPmf::transposed)
      .def("__repr__", [](const JointPmf& j) {
        return "JointPmf(" + std::to_string(j.nx()) + "x" + std::to_string(j.ny()) + ")";
      });

  m.def("product", [](const JointPmf& p, const JointPmf& q) { return product(p, q); });
  m.def("power", [](const JointPmf& p, std::size_t n) { return power(p, n); });

  m.def(
      "renyi_divergence",
      [](const std::vector<double>& p, const std::vector<double>& q, double alpha) {
        if (p.size() != q.size()) throw py::value_error("p and q differ in length");
        return renyi_divergence(Pmf::make(p), Pmf::make(q), ExtOrder::from_value(alpha)).value;
      },
      py::arg("p"), py::arg("q"), py::arg("alpha"));
  m.def(
      "renyi_entropy",
      [](const std::vector<double>& p, double alpha) {
        return renyi_entropy(Pmf::make(p), ExtOrder::from_value(alpha)).value;
      },
      py::arg("p"), py::arg("alpha"));
  m.def(
      "cond_entropy",
      [](const JointPmf& j, double alpha, const std::string& variant) {
        return cond_entropy_variant(cond_variant(variant), j, ExtOrder::from_value(alpha)).value;
      },
      py::arg("joint"), py::arg("alpha"), py::arg("variant") = "H");
  m.def(
      "mutual_info",
      [](const JointPmf& j, double alpha, const std::string& variant) {
        return mutual_info_variant(mi_variant(variant), j, ExtOrder::from_value(alpha)).value;
      },
      py::arg("joint"), py::arg("alpha"), py::arg("variant") = "I");
  m.def(
      "h_tilde",
      [](const JointPmf& j, double alpha, double beta, bool strict) {
        return two_param_dict(h_tilde(j, alpha, beta, {.strict_corner = strict}));
      },
      py::arg("joint"), py::arg("alpha"), py::arg("beta"), py::arg("strict_corner") = false);
  m.def(
      "i_tilde",
      [](const JointPmf& j, double alpha, double beta, bool strict) {
        return two_param_dict(i_tilde(j, alpha, beta, {.strict_corner = strict}));
      },
      py::arg("joint"), py::arg("alpha"), py::arg("beta"), py::arg("strict_corner") = false);

  m.def(
      "variational_h",
      [](const JointPmf& j, double alpha, double beta) {
        const auto r = [&] {
          py::gil_scoped_release release;
          return variational_h(j, alpha, beta);
        }();
        return report_dict(r);
      },
      py::arg("joint"), py::arg("alpha"), py::arg("beta"));
  m.def(
      "variational_i",
      [](const JointPmf& j, double alpha, double beta) {
        const auto r = [&] {
          py::gil_scoped_release release;
          return variational_i(j, alpha, beta);
        }();
        return report_dict(r);
      },
      py::arg("joint"), py::arg("alpha"), py::arg("beta"));

  m.def(
      "pa_exponent",
      [](const JointPmf& j, double beta, double rate, bool dual, double grid_step) {
        ExponentConfig cfg;
        cfg.compute_dual = dual;
        cfg.alpha_grid_step = grid_step;
        return exponent_dict(pa_exponent(j, beta, Rate(rate), cfg));
      },
      py::arg("joint"), py::arg("beta"), py::arg("rate"), py::arg("compute_dual") = false,
      py::arg("grid_step") = 1e-3);
  m.def(
      "sc_exponent",
      [](const JointPmf& j, double beta, double rate, bool dual, double grid_step) {
        ExponentConfig cfg;
        cfg.compute_dual = dual;
        cfg.alpha_grid_step = grid_step;
        return exponent_dict(sc_exponent(j, beta, Rate(rate), cfg));
      },
      py::arg("joint"), py::arg("beta"), py::arg("rate"), py::arg("compute_dual") = false,
      py::arg("grid_step") = 1e-3);

  m.def(
      "pa_min_divergence_exhaustive",
      [](const JointPmf& j, std::size_t M, double beta) {
        const auto r = pa_min_divergence_exhaustive(j, M, beta);
        return py::make_tuple(r.value, r.argmin.table);
      },
      py::arg("joint"), py::arg("M"), py::arg("beta"));
  m.def(
      "sc_expected_divergence_exact",
      [](const std::vector<double>& px, const Rows& channel, std::size_t n, std::size_t M,
         double beta) {
        return record_dict(
            sc_expected_divergence_exact(Pmf::make(px), CondPmf::make(channel), n, M, beta));
      },
      py::arg("px"), py::arg("channel"), py::arg("n"), py::arg("M"), py::arg("beta"));
  m.def(
      "sc_expected_divergence_mc",
      [](const std::vector<double>& px, const Rows& channel, std::size_t n, std::size_t M,
         double beta, std::size_t samples, std::uint64_t seed) {
        return record_dict(sc_expected_divergence_mc(Pmf::make(px), CondPmf::make(channel), n,
                                                     M, beta, samples, seed));
      },
      py::arg("px"), py::arg("channel"), py::arg("n"), py::arg("M"), py::arg("beta"),
      py::arg("samples") = 4000, py::arg("seed") = 1);

  m.def(
      "verification_report_json",
      [](const std::vector<std::string>& props, std::uint64_t seed, std::size_t samples) {
        VerifyConfig cfg;
        cfg.props = props;
        cfg.seed = seed;
        cfg.samples = samples;
        py::gil_scoped_release release;
        return run_verification(cfg).to_json();
      },
      py::arg("props") = std::vector<std::string>{}, py::arg("seed") = 20240611,
      py::arg("samples") = 200);
}
