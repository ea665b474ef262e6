#include <CLI11.hpp>
#include <iostream>
#include <iterator>
#include <json.hpp>
#include <string>

#include "kmcoh/parse.hpp"
#include "kmcoh/selftest.hpp"
#include "kmcoh/transfers.hpp"

using json = nlohmann::ordered_json;
using namespace kmc;

namespace {

struct Session {
  int tower = 1;
  uint64_t seed = 1;
  long bound = 1L << 16;
  int teich_depth = 3;
  bool json = false;

  int level() const { return tower + 1; }
  std::vector<std::string> names() const { return var_names(level(), true); }
  std::vector<std::string> ground() const { return var_names(tower, false); }
  ZeroOptions zero() const {
    ZeroOptions o;
    o.factor_budget = bound;
    o.names = names();
    return o;
  }
};

struct Unknown : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_class(const std::string& arg) {
  if (!arg.empty() && arg != "-") return arg;
  std::string s((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

LogForm class_arg(const Session& S, const std::string& arg, int* m, int degree_opt) {
  int deg = -1;
  LogForm phi = parse_class(read_class(arg), S.names(), &deg);
  if (deg == -2) throw std::invalid_argument("class is not homogeneous");
  *m = deg >= 0 ? deg : degree_opt;
  if (*m < 0) throw std::invalid_argument("zero class needs --degree");
  return phi;
}

Place place_arg(const Session& S, const std::string& text) {
  if (text == "inf" || text == "1/x") return Place::infinity(S.level());
  Classification c = classify_place(parse_poly(text, S.names()), S.bound);
  if (c.status == PlaceStatus::Reducible) throw std::invalid_argument("not a place, factor " + c.factor.str(S.names()));
  if (c.status == PlaceStatus::Inconclusive) throw Unknown("irreducibility of " + text + " undecided");
  return c.place;
}

// Adapted ids: ground variables, x, and p for the uniformizer symbol at finite places.
json mask_json(const Session& S, Mask M, bool residue_field) {
  json a = json::array();
  int n = S.level();
  auto nm = S.names();
  for (int i = 0; i <= n; ++i) {
    if (!has(M, i)) continue;
    if (i < n - 1) a.push_back(nm[i]);
    else if (i == n - 1) a.push_back(residue_field ? "xbar" : "x");
    else a.push_back("p");
  }
  return a;
}

std::vector<std::string> residue_names(const Session& S) {
  auto g = S.ground();
  g.push_back("xbar");
  return g;
}

json w1_json(const Session& S, const W1Class& w) {
  auto rn = residue_names(S);
  json j;
  j["place"] = w.place.str(S.names());
  j["m"] = w.m;
  for (const auto* tab : {&w.u, &w.v}) {
    json a = json::array();
    for (const auto& [key, c] : *tab) {
      auto [r, I, J] = key;
      a.push_back({{"r", r}, {"I", mask_json(S, I, false)}, {"J", mask_json(S, J, false)}, {"value", c.str(rn)}});
    }
    j[tab == &w.u ? "u" : "v"] = a;
  }
  json ph = json::array();
  for (const auto& [M, c] : w.phi) ph.push_back({{"S", mask_json(S, M, true)}, {"value", c.str(rn)}});
  j["phi_prime"] = ph;
  j["zero"] = w.polar_zero() && res_is_zero(w.phi);
  return j;
}

json witness_json(const Session& S, const Witness& w, const std::vector<std::string>& nm) {
  (void)S;
  return {{"omega", w.omega.str(nm)}, {"eta", w.eta.str(nm)}};
}

int verdict_exit(Verdict v) { return v == Verdict::Unknown ? 2 : 0; }

void emit(const Session& S, json j) {
  if (S.json) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  for (const auto& [k, v] : j.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  Session S;
  CLI::App app{"Kato-Milne cohomology of F_2(t1..tK)(x): residues, transfers, reciprocity"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tower", S.tower, "number of ground variables K")->check(CLI::Range(0, 8));
  app.add_option("--seed", S.seed, "random seed");
  app.add_option("--bound", S.bound, "factor search budget");
  app.add_option("--teich-depth", S.teich_depth, "Teichmuller depth N for selftest")->check(CLI::Range(1, 4));
  app.add_flag("--json", S.json, "JSON output");

  std::string cls, place, poly, suite = "all";
  int count = 0, degree = -1;
  auto add_class = [&](CLI::App* c) {
    c->add_option("class", cls, "class text; '-' or empty reads stdin");
    c->add_option("--degree", degree, "form degree of a zero class");
  };
  auto* c_res = app.add_subcommand("residue", "W1 residue data at a place");
  auto* c_nf = app.add_subcommand("normalform", "normal form representative at a place");
  auto* c_tr = app.add_subcommand("transfer", "s_p^* of the residue at a place");
  for (auto* c : {c_res, c_nf, c_tr}) {
    add_class(c);
    c->add_option("--place", place, "place polynomial in x, or inf")->required();
  }
  auto* c_rec = app.add_subcommand("reciprocity", "sum of transferred residues over all places");
  auto* c_iz = app.add_subcommand("iszero", "decide whether a class vanishes");
  add_class(c_rec);
  add_class(c_iz);
  auto* c_g = app.add_subcommand("gamma", "gamma_0..gamma_N of a place");
  c_g->add_option("--place", place)->required();
  c_g->add_option("--count", count)->required()->check(CLI::Range(0, 10000));
  auto* c_cl = app.add_subcommand("classify", "classify a monic polynomial as a place");
  c_cl->add_option("--poly", poly)->required();
  auto* c_st = app.add_subcommand("selftest", "run a property suite");
  c_st->add_option("--suite", suite, "suite name or all");
  c_st->add_option("--count", count, "cases per part");

  CLI11_PARSE(app, argc, argv);

  json out;
  out["seed"] = S.seed;
  int code = 0;
  try {
    if (c_res->parsed() || c_nf->parsed() || c_tr->parsed()) {
      int m;
      LogForm phi = class_arg(S, cls, &m, degree);
      Place P = place_arg(S, place);
      W1Class w = residue(phi, m, P);
      if (c_res->parsed()) {
        out["command"] = "residue";
        out["residue"] = w1_json(S, w);
      } else if (c_nf->parsed()) {
        out["command"] = "normalform";
        out["normal_form"] = w1_representative(w).str(S.names());
        out["residue"] = w1_json(S, w);
      } else {
        out["command"] = "transfer";
        out["place"] = P.str(S.names());
        out["value"] = s_p_star(w).str(S.ground());
      }
    } else if (c_rec->parsed()) {
      int m;
      LogForm phi = class_arg(S, cls, &m, degree);
      ReciprocityReport r = reciprocity_sum(phi, m, S.zero());
      out["command"] = "reciprocity";
      out["verdict"] = verdict_name(r.verdict.verdict);
      json places = json::array(), terms = json::array();
      for (const auto& t : r.terms) {
        places.push_back(t.place.str(S.names()));
        terms.push_back({{"place", t.place.str(S.names())}, {"value", t.value.str(S.ground())}});
      }
      out["places"] = places;
      out["terms"] = terms;
      out["sum"] = r.sum.str(S.ground());
      if (r.verdict.verdict == Verdict::Zero) out["witness"] = witness_json(S, r.verdict.witness, S.ground());
      else out["reason"] = r.verdict.reason;
      code = verdict_exit(r.verdict.verdict);
    } else if (c_iz->parsed()) {
      int m;
      LogForm phi = class_arg(S, cls, &m, degree);
      ZeroResult z = is_zero(phi, m, S.zero());
      out["command"] = "iszero";
      out["verdict"] = verdict_name(z.verdict);
      if (z.verdict == Verdict::Zero) out["witness"] = witness_json(S, z.witness, S.names());
      else {
        out["place"] = z.place;
        out["reason"] = z.reason;
      }
      code = verdict_exit(z.verdict);
    } else if (c_g->parsed()) {
      Place P = place_arg(S, place);
      if (P.is_inf()) throw std::invalid_argument("gamma needs a finite place");
      json g = json::array();
      for (const auto& r : P.gamma(count)) g.push_back(r.str(S.ground()));
      out["command"] = "gamma";
      out["place"] = P.str(S.names());
      out["gamma"] = g;
    } else if (c_cl->parsed()) {
      Classification c = classify_place(parse_poly(poly, S.names()), S.bound);
      out["command"] = "classify";
      const char* st[] = {"FINITE", "REDUCIBLE", "INCONCLUSIVE"};
      out["status"] = st[int(c.status)];
      if (c.status == PlaceStatus::Finite) {
        out["degree"] = c.place.d();
        out["separable"] = c.place.separable();
        out["certified"] = c.place.certified();
      } else if (c.status == PlaceStatus::Reducible) {
        out["factor"] = c.factor.str(S.names());
      }
      code = c.status == PlaceStatus::Inconclusive ? 2 : 0;
    } else if (c_st->parsed()) {
      out["command"] = "selftest";
      json rs = json::array();
      bool all = true;
      for (const auto& name : suite_names()) {
        if (suite != "all" && suite != name) continue;
        SuiteConfig cfg;
        cfg.seed = S.seed;
        cfg.count = count;
        cfg.teich_depth = S.teich_depth;
        SuiteReport r = run_suite(name, cfg);
        all = all && r.pass;
        rs.push_back({{"suite", name},
                      {"pass", r.pass},
                      {"cases", r.cases},
                      {"failures", r.failures},
                      {"seconds", r.seconds},
                      {"summary", r.summary},
                      {"details", r.details}});
      }
      if (rs.empty()) throw std::invalid_argument("unknown suite: " + suite);
      out["suites"] = rs;
      out["pass"] = all;
      code = all ? 0 : 1;
    }
  } catch (const Unknown& e) {
    out["verdict"] = "UNKNOWN";
    out["error"] = e.what();
    code = 2;
  } catch (const std::exception& e) {
    out["error"] = e.what();
    code = 1;
  }
  emit(S, out);
  return code;
}
