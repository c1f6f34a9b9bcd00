#pragma once

// Strong approximation on P1: given jet targets at finitely many places and
// an exceptional place x0, build f in the function field with
//   v_x(f - lambda_x) >= n_x at every constrained place, and
//   v_x(f) >= 0 at every other place except possibly x0.
//
// The solver is a Chinese-remainder computation in F_q[t].  Writing
// f = H / Q with Q = prod pi_i^{e_i} * pi_0^M (denominators clear target
// poles, pi_0^M supplies the allowed pole at a finite x0), each finite
// congruence becomes H = lift(Q * lambda_i) mod pi_i^{N_i}, with the jet
// lifted into F_q[t]/(pi^N) through the same Hensel section the expansion
// machinery uses.  A constraint at infinity turns into a congruence on the
// degree-pinned coefficient reversal of H, solved after the CRT step by
// prescribing the top coefficients of the free multiple of prod pi_i^{N_i}.
// The independent verifier re-expands everything from scratch.

#include <json.hpp>

#include "idelic/function.hpp"

namespace idelic {

struct ApproxConstraint {
  PlacePtr place;
  LaurentJet target;
  long order;  // required v(f - target) >= order
};

struct ApproxProblem {
  CurvePtr curve;
  PlacePtr x0;
  std::vector<ApproxConstraint> at;

  void validate() const {
    IDELIC_CHECK(curve && !curve->is_elliptic(),
                 "strong approximation: only P1 is supported");
    IDELIC_CHECK(x0 && x0->curve == curve.get(), "strong approximation: bad x0");
    for (std::size_t i = 0; i < at.size(); ++i) {
      const auto& c = at[i];
      IDELIC_CHECK(c.place && c.place->curve == curve.get(), "approx: foreign place");
      IDELIC_CHECK(c.place->compare(*x0) != 0,
                   "approx: x0 appears among the constrained places");
      IDELIC_CHECK(c.target.place().get() == c.place.get(), "approx: target at wrong place");
      if (c.order > c.target.val())
        IDELIC_CHECK(c.target.prec() >= static_cast<unsigned>(c.order - c.target.val()),
                     "approx: target precision does not cover the required order");
      for (std::size_t j = i + 1; j < at.size(); ++j)
        IDELIC_CHECK(at[j].place->compare(*c.place) != 0, "approx: duplicate places");
    }
  }
};

// Build a constraint from a rational target expression: the jet is the
// expansion of the expression to exactly the digits the congruence needs
// (a zero target is encoded as the monomial t_x^order).
inline ApproxConstraint make_constraint(const CurvePtr& c, const PlacePtr& x,
                                        const FuncElem& expr, long order) {
  if (expr.is_zero()) return ApproxConstraint{x, LaurentJet::monomial(x, order), order};
  long v = valuation(expr, x);
  unsigned prec = order > v ? static_cast<unsigned>(order - v) : 1;
  return ApproxConstraint{x, expand_at(expr, x, prec), order};
}

namespace detail {

// Ring lift of a nonnegative-valuation jet into F_q[t]/(pi^N).
inline Poly jet_to_ring(const LaurentJet& j, unsigned N) {
  const Place& x = *j.place();
  IDELIC_CHECK(x.kind == Place::Kind::P1Finite || x.kind == Place::Kind::P1Infinity,
               "jet_to_ring: P1 places only");
  IDELIC_CHECK(j.val() >= 0, "jet_to_ring: negative valuation");
  const FieldPtr k = x.curve->field();
  if (x.kind == Place::Kind::P1Infinity) {
    // residue field is k and the uniformizer is the polynomial variable s
    std::vector<FF> c(N, k->zero());
    for (unsigned i = 0; i < j.prec() && j.val() + i < N; ++i)
      c[static_cast<std::size_t>(j.val()) + i] = j.coeffs()[i];
    return Poly(k, std::move(c));
  }
  const Poly& pi = x.pi;
  const Poly piN = pi.powu(N);
  const Poly theta = hensel_root(pi, N);
  Poly out = Poly::zero(k);
  Poly pipow = pi.powu(static_cast<std::uint64_t>(j.val())) % piN;
  for (unsigned i = 0; i < j.prec() && j.val() + static_cast<long>(i) < N; ++i) {
    const FF& cf = j.coeffs()[i];
    Poly rep = x.deg == 1 ? Poly::constant(cf) : Poly(k, cf.coeffs());
    out = (out + compose_mod(rep, theta, piN) * pipow) % piN;
    pipow = (pipow * pi) % piN;
  }
  return out;
}

}  // namespace detail

// Seeded nonzero hom_seed adds a random element of the homogeneous solution
// coset; the canonical (minimal) solution is returned for hom_seed = 0.
inline FuncElem strong_approx_solve(const ApproxProblem& p, std::uint64_t hom_seed = 0) {
  p.validate();
  const CurvePtr c = p.curve;
  const FieldPtr k = c->field();
  const bool x0_at_inf = p.x0->kind == Place::Kind::P1Infinity;

  // split off a possible constraint at infinity
  const ApproxConstraint* inf_con = nullptr;
  std::vector<const ApproxConstraint*> finite;
  for (const auto& con : p.at) {
    if (con.place->kind == Place::Kind::P1Infinity)
      inf_con = &con;
    else
      finite.push_back(&con);
  }

  // denominators that clear the target poles
  Poly P = Poly::constant(k->one());
  std::vector<unsigned> clear(finite.size(), 0);
  for (std::size_t i = 0; i < finite.size(); ++i) {
    clear[i] = finite[i]->target.val() < 0
                   ? static_cast<unsigned>(-finite[i]->target.val())
                   : 0;
    P = P * finite[i]->place->pi.powu(clear[i]);
  }

  // moduli
  Poly Mprod = Poly::constant(k->one());
  std::vector<Poly> moduli(finite.size(), Poly::constant(k->one()));
  std::vector<long> Ni(finite.size(), 0);
  for (std::size_t i = 0; i < finite.size(); ++i) {
    Ni[i] = finite[i]->order + static_cast<long>(clear[i]);
    if (Ni[i] <= 0) continue;
    moduli[i] = finite[i]->place->pi.powu(static_cast<std::uint64_t>(Ni[i]));
    Mprod = Mprod * moduli[i];
  }

  // handling of infinity: pick the pole order M at a finite x0 large enough
  long inf_m = 0, inf_n = 0, Ntilde = 0;
  if (inf_con) {
    IDELIC_CHECK(!x0_at_inf, "approx: x0 = inf cannot also be constrained");
    inf_m = inf_con->target.val();
    inf_n = inf_con->order;
    Ntilde = inf_n - std::min(0L, inf_m);
  }
  long M = 0;
  if (!x0_at_inf) {
    const long d0 = static_cast<long>(p.x0->deg);
    const long want = std::max(0L, static_cast<long>(Mprod.degree()) - 1 -
                                       static_cast<long>(P.degree())) +
                      std::max(0L, Ntilde + std::min(0L, inf_m)) + d0;
    M = (want + d0 - 1) / d0 + 1;
  }
  Poly Q = x0_at_inf ? P : P * p.x0->pi.powu(static_cast<std::uint64_t>(M));

  // CRT over the finite congruences H = lift(Q * lambda_i) mod pi_i^{N_i}
  Poly h = Poly::zero(k);
  Poly mcur = Poly::constant(k->one());
  for (std::size_t i = 0; i < finite.size(); ++i) {
    if (Ni[i] <= 0) continue;
    const auto& con = *finite[i];
    Poly Ri = Poly::zero(k);
    if (con.order > con.target.val()) {
      const unsigned nrel = static_cast<unsigned>(con.order - con.target.val());
      LaurentJet qjet = expand_at(FuncElem::from_rat(c, RatFun(Q)), con.place, nrel);
      Ri = detail::jet_to_ring(qjet * con.target.truncated(nrel),
                               static_cast<unsigned>(Ni[i]));
    }
    // otherwise Q*lambda is divisible by pi^{N_i}, so the congruence is H = 0
    Poly u = ((Ri - h) * invmod(mcur % moduli[i], moduli[i])) % moduli[i];
    h = h + mcur * u;
    mcur = mcur * moduli[i];
  }

  Poly H = h;
  long DB = -1;
  if (inf_con && Ntilde > 0) {
    // reversed congruence at infinity: rev_Dh(H) = W mod s^Ntilde
    const long Dh = Q.degree() - std::min(0L, inf_m);
    DB = Dh - Mprod.degree();
    IDELIC_CHECK(DB + 1 >= Ntilde, "approx: internal degree budget too small");
    PlacePtr inf = c->infinity_place();
    Poly W = Poly::zero(k);
    if (inf_n > inf_m) {
      const unsigned nrel = static_cast<unsigned>(inf_n - inf_m);
      LaurentJet qinf = expand_at(FuncElem::from_rat(c, RatFun(Q)), inf, nrel);
      LaurentJet prod = qinf * inf_con->target.truncated(nrel);
      // prod ~ s^{m - degQ} (unit); shifting by Dh gives the power series
      // s^{Dh - degQ} lambda Qhat whose truncation the reversal must match
      LaurentJet shifted(inf, prod.val() + Dh, prod.coeffs());
      W = detail::jet_to_ring(shifted, static_cast<unsigned>(Ntilde));
    }
    Poly sN = Poly::variable(k).powu(static_cast<std::uint64_t>(Ntilde));
    Poly Mhat = Mprod.reverse_at(Mprod.degree());
    Poly V = ((W - h.reverse_at(Dh)) * invmod(Mhat % sN, sN)) % sN;
    // B = rev_DB(V): coefficient DB - j of B is V_j
    std::vector<FF> bc(static_cast<std::size_t>(DB) + 1, k->zero());
    for (int j = 0; j <= V.degree(); ++j)
      bc[static_cast<std::size_t>(DB - j)] = V.coeff(static_cast<std::size_t>(j));
    H = h + Mprod * Poly(k, std::move(bc));
  }

  if (hom_seed) {
    long free_deg;
    if (x0_at_inf)
      free_deg = 2;
    else if (inf_con)
      free_deg = (DB >= 0 ? DB : Q.degree() - Mprod.degree() - std::min(0L, inf_m)) - Ntilde;
    else
      free_deg = Q.degree() - Mprod.degree();
    if (free_deg >= 0) {
      auto rng = SeedSplitter(hom_seed).stream("approx-hom");
      std::vector<FF> rc;
      for (long i = 0; i <= free_deg; ++i) rc.push_back(k->element(rand_below(rng, k->order())));
      H = H + Mprod * Poly(k, std::move(rc));
    }
  }
  return FuncElem::from_rat(c, RatFun(H, Q));
}

// ---------------------------------------------------------------------------
// Independent verification by re-expansion

struct ApproxCheckRow {
  std::string what;
  bool pass = false;
  std::string detail;
};

struct ApproxVerdict {
  bool ok = true;
  std::vector<ApproxCheckRow> rows;

  nlohmann::json to_json() const {
    nlohmann::json j;
    auto arr = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json e;
      e["check"] = r.what;
      e["pass"] = r.pass;
      if (!r.detail.empty()) e["detail"] = r.detail;
      arr.push_back(e);
    }
    j["rows"] = arr;
    j["ok"] = ok;
    return j;
  }
};

inline ApproxVerdict strong_approx_verify(const FuncElem& f, const ApproxProblem& p) {
  p.validate();
  ApproxVerdict v;
  auto push = [&](std::string what, bool pass, std::string detail = "") {
    v.ok = v.ok && pass;
    v.rows.push_back(ApproxCheckRow{std::move(what), pass, std::move(detail)});
  };

  for (const auto& con : p.at) {
    const LaurentJet& lam = con.target;
    bool pass = true;
    std::string why;
    // collect coefficients of f - lambda for exponents < order
    if (f.is_zero()) {
      pass = lam.val() >= con.order;
      if (!pass) why = "f = 0 but target has valuation below the order";
    } else {
      long vf = valuation(f, con.place);
      long start = std::min(vf, lam.val());
      if (con.order > start) {
        LaurentJet jf = expand_at(f, con.place, static_cast<unsigned>(con.order - vf > 0
                                                                          ? con.order - vf
                                                                          : 1));
        for (long e = start; e < con.order && pass; ++e) {
          FF cf = con.place->residue->zero();
          if (e >= vf && e - vf < static_cast<long>(jf.prec()))
            cf = jf.coeffs()[static_cast<std::size_t>(e - vf)];
          FF cl = con.place->residue->zero();
          if (e >= lam.val() && e - lam.val() < static_cast<long>(lam.prec()))
            cl = lam.coeffs()[static_cast<std::size_t>(e - lam.val())];
          if (cf != cl) {
            pass = false;
            why = "coefficient mismatch at exponent " + std::to_string(e);
          }
        }
      }
    }
    push("congruence at " + con.place->name() + " to order " + std::to_string(con.order), pass,
         why);
  }

  // poles only at x0 and constrained places
  if (!f.is_zero()) {
    Divisor d = divisor_of(f);
    for (const auto& [x, n] : d.entries()) {
      if (n >= 0) continue;
      bool allowed = x->compare(*p.x0) == 0;
      for (const auto& con : p.at) allowed = allowed || x->compare(*con.place) == 0;
      if (!allowed) push("no stray pole at " + x->name(), false, "order " + std::to_string(-n));
    }
  }
  push("pole support within constraints + x0", true);
  return v;
}

// Fractional-linear substitution on P1 functions (used by the conjugation
// invariance tests and the CLI).
inline FuncElem mobius_apply(const FuncElem& f, const RatFun& tau) {
  IDELIC_CHECK(!f.curve()->is_elliptic(), "mobius_apply: P1 only");
  if (f.is_zero()) return f;
  return FuncElem::from_rat(f.curve(), f.rat().substitute(tau));
}

}  // namespace idelic
