#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "arithcoh/hecke.hpp"
#include "arithcoh/pipeline.hpp"

namespace py = pybind11;
using namespace arithcoh;
using json = nlohmann::json;

namespace {

std::shared_ptr<SymbolSpace> make_space(uint32_t q, unsigned h, uint32_t r) {
  return std::make_shared<SymbolSpace>(std::make_shared<CosetTable>(q), std::make_shared<WeightModule>(h, PrimeField(r)));
}

RunConfig config_for(const std::vector<uint32_t>& moduli, const std::vector<uint32_t>& primes, unsigned budget) {
  RunConfig cfg;
  cfg.moduli = moduli;
  cfg.primes = primes;
  cfg.budget = budget;
  cfg.threads = 1;
  return cfg;
}

json certificate_json(const CuspidalCertificate& c) {
  json dims = json::object();
  for (auto& d : c.computed) dims[std::to_string(d.r)] = d.dim;
  return {{"q", c.q},           {"h", c.h},         {"dims", dims},        {"boundary", c.boundary},
          {"verdict", to_string(c.verdict)}, {"value", c.value}, {"reason", c.reason}};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cohomology of Gamma_0(q) in SL(3,Z) with coefficients in V_h over prime fields";
  m.def("code_version", &code_version);

  m.def(
      "weight_module_dim", [](unsigned h, uint32_t r) { return WeightModule(h, PrimeField(r)).dim(); }, py::arg("h"),
      py::arg("r"));
  m.def(
      "h3_dim", [](uint32_t q, unsigned h, uint32_t r) { return h3_dim(q, h, r); }, py::arg("q"), py::arg("h"),
      py::arg("r"), py::call_guard<py::gil_scoped_release>());
  m.def("cuspform_dim", &cuspform_dim, py::arg("w"), py::arg("q"));
  m.def(
      "boundary_dim", [](uint32_t q, unsigned h) { return boundary_dim(q, h).value; }, py::arg("q"), py::arg("h"));
  m.def(
      "certify_cuspidal_json",
      [](uint32_t q, unsigned h, const std::map<uint32_t, size_t>& dims, std::optional<unsigned> cuspidal) {
        std::vector<ModularDim> v;
        for (auto& [r, d] : dims) v.push_back({r, d});
        return certificate_json(certify_cuspidal(q, h, v, cuspidal)).dump();
      },
      py::arg("q"), py::arg("h"), py::arg("dims"), py::arg("cuspidal") = py::none());

  m.def(
      "hecke_matrix",
      [](uint32_t q, unsigned h, uint32_t r, uint32_t ell, unsigned k) {
        auto space = make_space(q, h, r);
        auto t = hecke_matrix(*space, ell, k);
        std::vector<std::vector<uint32_t>> rows(t.rows, std::vector<uint32_t>(t.cols));
        for (size_t i = 0; i < t.rows; ++i)
          for (size_t j = 0; j < t.cols; ++j) rows[i][j] = t(i, j);
        return rows;
      },
      py::arg("q"), py::arg("h"), py::arg("r"), py::arg("ell"), py::arg("k") = 1,
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "hecke_charpoly",
      [](uint32_t q, unsigned h, uint32_t r, uint32_t ell, unsigned k) {
        auto space = make_space(q, h, r);
        const auto& f = space->field();
        std::vector<int64_t> out;
        for (auto c : charpoly(f, hecke_matrix(*space, ell, k)).c) out.push_back(f.to_signed(c));
        return out;
      },
      py::arg("q"), py::arg("h"), py::arg("r"), py::arg("ell"), py::arg("k") = 1,
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "packets_json",
      [](uint32_t q, unsigned h, uint32_t r, const std::vector<uint32_t>& primes, unsigned budget) {
        Pipeline pipe(config_for({r}, primes, budget), nullptr);
        return pipe.packets(q, h, r).dump();
      },
      py::arg("q"), py::arg("h"), py::arg("r"), py::arg("primes"), py::arg("budget"),
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "lift_cuspidal_json",
      [](uint32_t q, unsigned h, const std::vector<uint32_t>& moduli, const std::vector<uint32_t>& primes,
         unsigned budget) {
        LiftOptions o;
        o.moduli = moduli;
        o.primes = primes;
        o.max_degree = budget;
        return lift_to_json(lift_cuspidal(q, h, o)).dump();
      },
      py::arg("q"), py::arg("h"), py::arg("moduli"), py::arg("primes"), py::arg("budget"),
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "quasicuspidal",
      [](const std::string& lift, uint32_t ell, uint32_t p) {
        return quasicuspidal_test(lift_from_json(json::parse(lift)), ell, p);
      },
      py::arg("lift"), py::arg("ell"), py::arg("p"));
  m.def(
      "ordinary", [](const std::string& lift, uint32_t p) { return ordinary_test(lift_from_json(json::parse(lift)), p); },
      py::arg("lift"), py::arg("p"));
  m.def(
      "congruent",
      [](const std::string& a, const std::string& b, uint32_t p, const std::vector<uint32_t>& primes) {
        return congruent_test(lift_from_json(json::parse(a)), lift_from_json(json::parse(b)), p, primes);
      },
      py::arg("a"), py::arg("b"), py::arg("p"), py::arg("primes"));
  m.def(
      "eisenstein_lift_json", [](uint32_t q, const std::vector<uint32_t>& primes) { return lift_to_json(eisenstein_lift(q, primes)).dump(); },
      py::arg("q"), py::arg("primes"));
  m.def(
      "rigidity_json",
      [](uint32_t q, uint32_t p, uint32_t witness, const std::vector<uint32_t>& moduli, const std::vector<uint32_t>& primes,
         unsigned budget) {
        Pipeline pipe(config_for(moduli, primes, budget), nullptr);
        auto rep = pipe.rigid(q, p, witness);
        json j{{"q", rep.q},
               {"p", rep.p},
               {"g0", rep.g0},
               {"witness", rep.witness},
               {"residue_polynomial", rep.residue_polynomial},
               {"quasicuspidal", rep.quasicuspidal},
               {"ordinary", rep.ordinary},
               {"g", rep.g},
               {"vanishing", certificate_json(rep.vanishing)},
               {"lift", lift_to_json(rep.lift)},
               {"verdict", rep.rigid ? "rigid" : "not-certified"}};
        return j.dump();
      },
      py::arg("q"), py::arg("p"), py::arg("witness"), py::arg("moduli"), py::arg("primes"), py::arg("budget"),
      py::call_guard<py::gil_scoped_release>());
}
