#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trc/bounds.hpp"
#include "trc/certify.hpp"
#include "trc/error.hpp"
#include "trc/io.hpp"
#include "trc/oracle.hpp"
#include "trc/version.hpp"

namespace py = pybind11;
using namespace trc;

// Structured values cross the boundary as JSON text; the package wrapper decodes them.
PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "TrcError", PyExc_ValueError);

  m.def("theorem_rank_lb", [](std::size_t n, std::size_t mm, std::size_t p) {
    return theorem_rank_lb(n, mm, p).get_str();
  });
  m.def("simple_rank_lb", [](std::size_t n, std::size_t mm, std::size_t p) {
    return simple_rank_lb(n, mm, p).get_str();
  });
  m.def("reference_bounds", [](std::size_t n, std::size_t mm) {
    auto r = reference_bounds(n, mm);
    return std::make_pair(r.blaser.get_str(), r.lo_borderrank.get_str());
  });
  m.def("best_p", [](std::size_t n, std::size_t mm) {
    auto b = best_p(n, mm);
    return std::make_pair(b.p, b.bound.get_str());
  });
  m.def("bound_table_csv", [](std::size_t n_min, std::size_t n_max, std::size_t p_max) {
    return bound_table_csv(bound_table(n_min, n_max, std::nullopt, p_max), p_max);
  });

  m.def(
      "certify_matmul",
      [](std::size_t n, std::size_t mm, std::size_t p, std::uint64_t seed, std::size_t retries, bool exact) {
        CertifyOptions o;
        o.seed = seed;
        o.retries = retries;
        o.exact = exact;
        Certificate c;
        {
          py::gil_scoped_release release;
          c = certify_matmul(n, mm, p, o);
        }
        return to_json(c).dump();
      },
      py::arg("n"), py::arg("m"), py::arg("p"), py::arg("seed") = 0, py::arg("retries") = 3, py::arg("exact") = false);
  m.def(
      "certify_tensor",
      [](const std::string& tensor_json, std::size_t p, std::uint64_t seed) {
        CertifyOptions o;
        o.seed = seed;
        return to_json(certify_tensor(tensor_from_json(Json::parse(tensor_json)), p, o)).dump();
      },
      py::arg("tensor"), py::arg("p"), py::arg("seed") = 0);
  m.def(
      "replay",
      [](const std::string& cert_json, const std::optional<std::string>& tensor_json) {
        auto cert = certificate_from_json(Json::parse(cert_json));
        std::optional<Tensor3> t;
        if (tensor_json) t = tensor_from_json(Json::parse(*tensor_json));
        auto r = replay_certificate(cert, t ? &*t : nullptr);
        return r.ranks_match && r.bounds_match;
      },
      py::arg("certificate"), py::arg("tensor") = py::none());

  m.def("matmul_tensor", [](std::size_t mm, std::size_t n, std::size_t l) {
    return to_json(matmul_tensor({mm, n, l})).dump();
  });
  m.def("strassen_7", [] { return to_json(strassen_7().decomposition).dump(); });
  m.def("verify_decomposition", [](const std::string& tensor_json, const std::string& decomp_json) {
    return verify_decomposition(tensor_from_json(Json::parse(tensor_json)),
                                decomposition_from_json(Json::parse(decomp_json)));
  });
  m.def("rank_one_flattening_rank", &rank_one_flattening_rank, py::arg("p"), py::arg("b"), py::arg("seed") = 0);
  m.def(
      "soundness_sweep",
      [](std::size_t a, std::size_t b, std::size_t c, std::size_t p, std::size_t r_max, std::size_t trials,
         std::uint64_t seed) {
        SweepReport r;
        {
          py::gil_scoped_release release;
          r = soundness_sweep({a, b, c}, p, r_max, trials, seed);
        }
        return to_json(r).dump();
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("p"), py::arg("r_max"), py::arg("trials"),
      py::arg("seed") = 0);
}
