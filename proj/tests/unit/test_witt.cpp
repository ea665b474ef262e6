#include "doctest.h"
#include "kmcoh/parse.hpp"
#include "kmcoh/sampling.hpp"
#include "kmcoh/transfers.hpp"
#include "kmcoh/witt.hpp"

using namespace kmc;

namespace {

const std::vector<std::string> N1 = {"t1"};
const std::vector<std::string> N2 = {"t1", "x"};

QuadForm qf(const std::string& s) { return parse_quadform(s, N1); }
WittVerdict weq(const QuadForm& a, const QuadForm& b) { return witt_equal_bounded(a, b).verdict; }
Place place(const char* s) { return Place::finite(parse_poly(s, N2)); }

// Slot of a residue-basis id as an element of F(p).
Poly slot_poly(int id, int cnv) {
  if (id == cnv) return Poly::x(cnv);
  return Poly::constant(Rat::var(cnv, id));
}

ResQuadForm res_kato(const ResForm& psi, const Place& P) {
  int cnv = P.level() - 1;
  ResQuadForm q{P, {}};
  for (const auto& [S, c] : psi) {
    std::vector<Poly> slots;
    for (int i = 0; i <= cnv; ++i)
      if (has(S, i)) slots.push_back(slot_poly(i, cnv));
    auto part = res_pfister(slots, c, P);
    q.blocks.insert(q.blocks.end(), part.blocks.begin(), part.blocks.end());
  }
  return q;
}

}  // namespace

TEST_CASE("quadratic form text round trip") {
  QuadForm q = qf("[1, t1] + <<t1; t1+1]]");
  CHECK(q.dim() == 6);
  CHECK(q.str(N1) == "[1, t1] + [1, t1+1] + [t1, (t1+1)/(t1)]");
  CHECK_THROWS_AS(qf("[1, t1"), ParseError);
}

TEST_CASE("kato isomorphism on symbols") {
  LogForm psi = parse_class("(t1+1) dlog(t1)", N1);
  QuadForm q = kato_iso(psi);
  CHECK(q.str(N1) == "[1, t1+1] + [t1, (t1+1)/(t1)]");
  CHECK(kato_inverse(q) == psi);
  CHECK(kato_iso(LogForm(1)).dim() == 0);
  LogForm two = parse_class("(t1) dlog(t1) ^ dlog(x)", N2);
  QuadForm q2 = kato_iso(two);
  CHECK(q2.dim() == 8);
  CHECK(kato_inverse(q2) == two);
}

TEST_CASE("simplification relations") {
  CHECK(witt_simplify(qf("[1, t1] + [1, t1]")).form.dim() == 0);
  CHECK(witt_simplify(qf("[1, t1^2+t1]")).form.dim() == 0);
  Simplified s = witt_simplify(qf("<<t1; t1+1]] + <<t1; 1/t1]]"));
  CHECK(s.form.dim() == 4);
  CHECK(weq(s.form, qf("<<t1; t1+1+1/t1]]")) == WittVerdict::Equal);
  CHECK_FALSE(s.chain.empty());
}

TEST_CASE("bounded witt equality") {
  QuadForm q = qf("[t1, 1/(t1+1)] + <<t1; 1]]");
  CHECK(weq(q, q) == WittVerdict::Equal);
  CHECK(weq(qf("[1, 0]"), QuadForm(1)) == WittVerdict::Equal);
  WittResult r = witt_equal_bounded(qf("[1, 1/t1]"), QuadForm(1));
  CHECK(r.verdict == WittVerdict::NotEqual);
  CHECK(r.invariant.find("Arf") != std::string::npos);
  CHECK(weq(qf("<<t1; 1]]"), QuadForm(1)) == WittVerdict::NotEqual);
  CHECK(weq(qf("<<t1; t1]]"), QuadForm(1)) == WittVerdict::Equal);
}

TEST_CASE("gram transfer examples") {
  Place P = place("x+t1");
  ResQuadForm in{P, {{parse_poly("x+1", N2).mod(P.p()), parse_poly("1", N2)}}};
  QuadForm out = scharlau_transfer_gram(in);
  CHECK(out.str(N1) == "[t1+1, 1]");
  Place Q = place("x^2+t1");
  Rat b = parse_rat("1/(t1+1)", N1);
  CHECK(weq(scharlau_transfer_gram({Q, {{Poly::constant(Rat::one(1)), Poly::constant(b)}}}), QuadForm(1)) ==
        WittVerdict::Equal);
  ResQuadForm px = res_pfister({Poly::x(1)}, Poly::constant(b), Q);
  CHECK(weq(scharlau_transfer_gram(px), QuadForm::pfister({Rat::var(1, 0)}, b)) == WittVerdict::Equal);
}

TEST_CASE("closed forms at x+t1 and x^2+t1") {
  Place P = place("x+t1");
  Rat a = parse_rat("t1+1", N1);
  CHECK(transfer_closed_form(ClosedFormKind::Unit, a, 0, P).str(N1) == "[1, t1+1]");
  CHECK(weq(transfer_closed_form(ClosedFormKind::XPfister, a, 1, P), qf("<<t1; (t1+1)*t1]]")) == WittVerdict::Equal);
  CHECK(transfer_closed_form(ClosedFormKind::InsepConst, a, 0, place("x^2+t1")).str(N1) ==
        QuadForm::pfister({Rat::var(1, 0)}, a).str(N1));
  CHECK_THROWS_AS(transfer_closed_form(ClosedFormKind::InsepConst, a, 0, P), KindPlaceMismatch);
  CHECK_THROWS_AS(transfer_closed_form(ClosedFormKind::XPfister, a, 0, P), KindPlaceMismatch);
}

TEST_CASE("gram transfer agrees with closed forms") {
  Sampler smp(31);
  std::vector<Place> sep = {place("x+t1"), place("x^2+x+t1"), place("x^2+t1*x+1"), place("x^3+t1*x+t1"),
                            place("x^3+x+1")};
  std::vector<Place> insep = {place("x^2+t1"), place("x^2+t1^2+t1+1")};
  int equal = 0, total = 0;
  for (int it = 0; it < 24; ++it) {
    auto kind = ClosedFormKind(it % 3);
    const Place& P = kind == ClosedFormKind::InsepConst ? insep[it % 2] : sep[it % sep.size()];
    int i = kind == ClosedFormKind::InsepConst ? 0 : smp.uniform(kind == ClosedFormKind::XPfister ? 1 : 0, 5);
    Rat a = smp.ground_nonzero(1);
    QuadForm g = scharlau_transfer_gram(closed_form_input(kind, a, i, P));
    WittResult r = witt_equal_bounded(g, transfer_closed_form(kind, a, i, P));
    INFO(it, " ", P.str(N2), " i=", i, " a=", a.str(N1), " ", r.invariant);
    CHECK(r.verdict != WittVerdict::NotEqual);
    equal += r.verdict == WittVerdict::Equal;
    ++total;
  }
  CHECK(equal == total);
}

TEST_CASE("transfer of 2-fold Pfister forms lands in I_q^2") {
  Sampler smp(32);
  auto places = corpus_places();
  for (int it = 0; it < 10; ++it) {
    const Place& P = places[it % (places.size() - 1)];
    Poly s = smp.ground_poly(1, P.d() - 1), b = smp.ground_poly(1, P.d() - 1);
    if (s.is_zero()) s = Poly::x(1);
    QuadForm g = scharlau_transfer_gram(res_pfister({s}, b, P));
    CHECK(g.dim() == 4 * P.d());
    CHECK(is_zero(LogForm::term(arf(g), 0), 0).verdict == Verdict::Zero);
  }
}

TEST_CASE("frobenius reciprocity for the gram transfer") {
  Sampler smp(33);
  std::vector<Place> ps = {place("x^2+x+t1"), place("x^2+t1"), place("x^3+t1*x+t1")};
  for (int it = 0; it < 9; ++it) {
    const Place& P = ps[it % 3];
    ResQuadForm q{P, {}};
    for (int k = 0; k < 2; ++k) {
      Poly a = smp.ground_poly(1, P.d() - 1), b = smp.ground_poly(1, P.d() - 1);
      if (a.is_zero()) a = Poly::x(1);
      q.blocks.push_back({a, b});
    }
    Rat c = smp.ground_nonzero(1);
    ResQuadForm cq = q;
    for (auto& bl : cq.blocks) {
      bl.a = bl.a.scale(c);
      bl.b = bl.b.scale(c.inv());
    }
    CHECK(weq(scharlau_transfer_gram(cq), scharlau_transfer_gram(q).scale(c)) == WittVerdict::Equal);
  }
}

TEST_CASE("t_p_star matches the gram transfer through the kato isomorphism") {
  Sampler smp(34);
  auto places = corpus_places();
  int checked = 0;
  for (int it = 0; it < 60; ++it) {
    const Place& P = places[it % (places.size() - 1)];
    Mask basis = residue_basis(P);
    ResForm psi;
    Mask S = smp.subset(basis, 1);
    res_add(psi, S, smp.ground_poly(1, P.d() - 1), P.p());
    if (res_is_zero(psi)) continue;
    LogForm t = t_p_star(psi, P);
    WittResult r = witt_equal_bounded(scharlau_transfer_gram(res_kato(psi, P)), kato_iso(t));
    INFO(it, " ", P.str(N2), " ", t.str(N1), " ", r.invariant);
    CHECK(r.verdict == WittVerdict::Equal);
    ++checked;
  }
  CHECK(checked > 20);
}
