#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kmcoh/parse.hpp"
#include "kmcoh/selftest.hpp"
#include "kmcoh/transfers.hpp"
#include "kmcoh/witt.hpp"

namespace py = pybind11;
using namespace kmc;

namespace {

std::vector<std::string> names(int tower) { return var_names(tower + 1, true); }
std::vector<std::string> ground(int tower) { return var_names(tower, false); }

LogForm read(const std::string& text, int tower, int* m) {
  int deg = -1;
  LogForm phi = parse_class(text, names(tower), &deg);
  if (deg < 0) throw std::invalid_argument("class must be nonzero and homogeneous");
  *m = deg;
  return phi;
}

Place read_place(const std::string& text, int tower) {
  if (text == "inf") return Place::infinity(tower + 1);
  Classification c = classify_place(parse_poly(text, names(tower)));
  if (c.status != PlaceStatus::Finite) throw std::invalid_argument("not a certified place: " + text);
  return c.place;
}

ZeroOptions opts(int tower) {
  ZeroOptions o;
  o.names = names(tower);
  return o;
}

}  // namespace

PYBIND11_MODULE(_kmcoh, m) {
  m.doc() = "Kato-Milne cohomology over F_2(t1..tK)(x)";

  m.def("normalize", [](const std::string& text, int tower) {
    int deg;
    return read(text, tower, &deg).str(names(tower));
  }, py::arg("text"), py::arg("tower") = 1);

  m.def("is_zero", [](const std::string& text, int tower) {
    int deg;
    LogForm phi = read(text, tower, &deg);
    ZeroResult z = is_zero(phi, deg, opts(tower));
    py::dict d;
    d["verdict"] = verdict_name(z.verdict);
    d["place"] = z.place;
    d["reason"] = z.reason;
    if (z.verdict == Verdict::Zero) {
      d["omega"] = z.witness.omega.str(names(tower));
      d["eta"] = z.witness.eta.str(names(tower));
    }
    return d;
  }, py::arg("text"), py::arg("tower") = 1);

  m.def("reciprocity", [](const std::string& text, int tower) {
    int deg;
    LogForm phi = read(text, tower, &deg);
    ReciprocityReport r = reciprocity_sum(phi, deg, opts(tower));
    py::dict d;
    d["verdict"] = verdict_name(r.verdict.verdict);
    std::vector<std::string> places, values;
    for (const auto& t : r.terms) {
      places.push_back(t.place.str(names(tower)));
      values.push_back(t.value.str(ground(tower)));
    }
    d["places"] = places;
    d["values"] = values;
    d["sum"] = r.sum.str(ground(tower));
    return d;
  }, py::arg("text"), py::arg("tower") = 1);

  m.def("transfer", [](const std::string& text, const std::string& place, int tower) {
    int deg;
    LogForm phi = read(text, tower, &deg);
    return s_p_star(residue(phi, deg, read_place(place, tower))).str(ground(tower));
  }, py::arg("text"), py::arg("place"), py::arg("tower") = 1);

  m.def("gamma", [](const std::string& place, int count, int tower) {
    std::vector<std::string> out;
    for (const auto& g : read_place(place, tower).gamma(count)) out.push_back(g.str(ground(tower)));
    return out;
  }, py::arg("place"), py::arg("count"), py::arg("tower") = 1);

  m.def("classify", [](const std::string& poly, int tower) {
    const char* st[] = {"FINITE", "REDUCIBLE", "INCONCLUSIVE"};
    return std::string(st[int(classify_place(parse_poly(poly, names(tower))).status)]);
  }, py::arg("poly"), py::arg("tower") = 1);

  m.def("witt_equal", [](const std::string& q1, const std::string& q2, int tower) {
    auto g = ground(tower);
    WittOptions o;
    o.zero.names = g;
    return std::string(witt_verdict_name(witt_equal_bounded(parse_quadform(q1, g), parse_quadform(q2, g), o).verdict));
  }, py::arg("q1"), py::arg("q2"), py::arg("tower") = 1);

  m.def("run_suite", [](const std::string& name, uint64_t seed, int count) {
    SuiteConfig cfg;
    cfg.seed = seed;
    cfg.count = count;
    SuiteReport r = run_suite(name, cfg);
    py::dict d;
    d["pass"] = r.pass;
    d["cases"] = r.cases;
    d["failures"] = r.failures;
    d["summary"] = r.summary;
    d["details"] = r.details;
    return d;
  }, py::arg("name"), py::arg("seed") = 1, py::arg("count") = 0);

  m.attr("suites") = suite_names();
}
