#pragma once

// The local tame symbol, the global pairing on ideles, Weil reciprocity and
// the symbol axiom suite.
//
// With a = c t^m (1+...) and b = d t^n (1+...) at a place x of degree dx the
// local symbol is (-1)^{dx m n} N_{k(x)/k}(c^n / d^m): it depends only on
// the valuations and leading coefficients, so every pairing path runs on
// precision-1 data (the descent to bar I^1).  The sign is computed inside k
// and is +1 in characteristic 2.

#include "idelic/idele.hpp"

namespace idelic {

class window_escape : public error {
 public:
  explicit window_escape(const std::string& what) : error(what) {}
};

class SymbolValue {
 public:
  explicit SymbolValue(FF v) : v_(std::move(v)) {
    IDELIC_CHECK(!v_.is_zero(), "SymbolValue: must be a unit");
  }
  const FF& value() const { return v_; }
  bool is_one() const { return v_.is_one(); }
  SymbolValue operator*(const SymbolValue& o) const { return SymbolValue(v_ * o.v_); }
  SymbolValue inverse() const { return SymbolValue(v_.inverse()); }
  bool operator==(const SymbolValue& o) const { return v_ == o.v_; }
  bool operator!=(const SymbolValue& o) const { return !(*this == o); }
  std::string to_string() const { return v_.to_string(); }

 private:
  FF v_;
};

inline SymbolValue local_symbol(const LaurentJet& a, const LaurentJet& b) {
  IDELIC_CHECK(a.place().get() == b.place().get(), "local_symbol: place mismatch");
  const Place& x = *a.place();
  const FieldPtr k = x.curve->field();
  const long m = a.val(), n = b.val();
  FF v = a.lead().norm_to(k).pow(n) * b.lead().norm_to(k).pow(-m);
  const bool odd = (x.deg % 2 != 0) && (m % 2 != 0) && (n % 2 != 0);
  if (odd) v = -v;
  return SymbolValue(std::move(v));
}

namespace detail {
inline std::vector<PlacePtr> contributing_places(const Idele& a, const Idele& b) {
  std::map<PlacePtr, bool, PlaceLess> s;
  auto grab = [&](const Idele& x) {
    for (const auto& [pl, n] : x.principal_divisor().entries()) s.emplace(pl, true);
    for (const auto& [pl, j] : x.local()) s.emplace(pl, true);
  };
  grab(a);
  grab(b);
  std::vector<PlacePtr> out;
  out.reserve(s.size());
  for (const auto& [pl, unused] : s) out.push_back(pl);
  return out;
}
}  // namespace detail

// Product of local symbols over the finite contributing set.  Every omitted
// place has valuation 0 on both sides, so its symbol is N(c^0/d^0) = 1
// regardless of residues; the contributing set therefore covers everything.
// The checked variant refuses (rather than truncates) when the contributing
// support escapes the certified windows.
inline SymbolValue global_pairing_unchecked(const Idele& a, const Idele& b) {
  IDELIC_CHECK(a.curve().get() == b.curve().get(), "global_pairing: curve mismatch");
  SymbolValue r(a.curve()->field()->one());
  for (const auto& pl : detail::contributing_places(a, b))
    r = r * local_symbol(a.component(pl, 1), b.component(pl, 1));
  return r;
}

inline SymbolValue global_pairing(const Idele& a, const Idele& b) {
  IDELIC_CHECK(a.curve().get() == b.curve().get(), "global_pairing: curve mismatch");
  const unsigned w = std::min(a.window(), b.window());
  SymbolValue r(a.curve()->field()->one());
  for (const auto& pl : detail::contributing_places(a, b)) {
    if (pl->deg > w)
      throw window_escape("global_pairing: support at " + pl->name() +
                          " escapes window " + std::to_string(w));
    r = r * local_symbol(a.component(pl, 1), b.component(pl, 1));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Weil reciprocity

struct WeilRow {
  PlacePtr place;
  SymbolValue value;
};

struct WeilReport {
  std::vector<WeilRow> rows;
  FF product;
  bool ok = false;

  nlohmann::json to_json() const {
    nlohmann::json j;
    auto arr = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json e;
      e["place"] = r.place->name();
      e["symbol"] = r.value.to_string();
      arr.push_back(e);
    }
    j["table"] = arr;
    j["product"] = product.to_string();
    j["ok"] = ok;
    return j;
  }
};

inline WeilReport weil_check(const FuncElem& f, const FuncElem& g) {
  IDELIC_CHECK(!f.is_zero() && !g.is_zero(), "weil_check: zero function");
  const CurvePtr c = f.curve();
  const Divisor df = divisor_of(f), dg = divisor_of(g);
  std::map<PlacePtr, bool, PlaceLess> places;
  for (const auto& [pl, n] : df.entries()) places.emplace(pl, true);
  for (const auto& [pl, n] : dg.entries()) places.emplace(pl, true);
  WeilReport rep{{}, c->field()->one(), false};
  for (const auto& [pl, unused] : places) {
    SymbolValue s = local_symbol(expand_at(f, pl, 1), expand_at(g, pl, 1));
    rep.rows.push_back(WeilRow{pl, s});
    rep.product = rep.product * s.value();
  }
  rep.ok = rep.product.is_one();
  return rep;
}

// ---------------------------------------------------------------------------
// Axiom suite

struct CheckResult {
  std::string name;
  enum class Status { pass, fail, skipped } status = Status::pass;
  std::string witness;

  static CheckResult passed(std::string n) { return {std::move(n), Status::pass, ""}; }
  static CheckResult failed(std::string n, std::string w) {
    return {std::move(n), Status::fail, std::move(w)};
  }
  static CheckResult skip(std::string n, std::string w) {
    return {std::move(n), Status::skipped, std::move(w)};
  }
  bool ok() const { return status != Status::fail; }
};

inline std::vector<CheckResult> axiom_suite(const Idele& a, const Idele& b, const Idele& c) {
  std::vector<CheckResult> out;
  const CurvePtr cv = a.curve();
  auto pair = [](const Idele& x, const Idele& y) { return global_pairing_unchecked(x, y); };
  auto expect = [&](const std::string& name, const SymbolValue& lhs, const SymbolValue& rhs) {
    if (lhs == rhs)
      out.push_back(CheckResult::passed(name));
    else
      out.push_back(CheckResult::failed(name, lhs.to_string() + " != " + rhs.to_string()));
  };
  const SymbolValue one(cv->field()->one());

  expect("bimultiplicative-left", pair(a * b, c), pair(a, c) * pair(b, c));
  expect("bimultiplicative-right", pair(a, b * c), pair(a, b) * pair(a, c));
  expect("antisymmetry", pair(a, b) * pair(b, a), one);
  expect("alternating-neg", pair(a, a.negated()), one);
  expect("self-vs-minus-one", pair(a, a),
         pair(a, Idele::diagonal(FuncElem::constant(cv, -cv->field()->one()))));
  if (auto om = one_minus(a))
    expect("steinberg", pair(a, *om), one);
  else
    out.push_back(CheckResult::skip("steinberg", "1 - alpha is not determined"));
  if (a.in_I1())
    expect("self-on-I1", pair(a, a), one);
  else
    out.push_back(CheckResult::skip("self-on-I1", "alpha not in I^1"));
  return out;
}

// ---------------------------------------------------------------------------
// Local constancy of the pairing

struct ConstancyVerdict {
  bool ok = true;
  int trials = 0;
  std::string first_failure;
};

// Samples u, v in V_D (congruent to 1 to order n_x on supp D, units at the
// given extra places, untouched elsewhere) and checks that the pairing value
// of (a u, b v) never moves.
inline ConstancyVerdict local_constancy_check(const Idele& a, const Idele& b, const Divisor& D,
                                              const std::vector<PlacePtr>& extra_places,
                                              std::mt19937_64& rng, int trials) {
  IDELIC_CHECK(D.is_effective(), "local_constancy_check: D must be effective");
  // supp D must cover both supports entirely (poles included) and dominate
  // the zero multiplicities, matching what the constancy argument consumes
  Divisor da = a.divisor(), db = b.divisor();
  std::map<PlacePtr, bool, PlaceLess> supp;
  for (const auto& [x, n] : da.entries()) supp.emplace(x, true);
  for (const auto& [x, n] : db.entries()) supp.emplace(x, true);
  for (const auto& [x, unused] : supp)
    IDELIC_CHECK(D.coeff(x) >= std::max({1L, da.coeff(x), db.coeff(x)}),
                 "local_constancy_check: D must dominate 0, D(a), D(b) with full support");
  const SymbolValue base = global_pairing_unchecked(a, b);
  ConstancyVerdict verdict;
  auto sample_vd = [&](const Idele& base_idele) {
    Idele u = base_idele;
    for (const auto& [x, n] : D.entries()) {
      // jet in 1 + m-hat^n with a random tail
      const unsigned prec = static_cast<unsigned>(n) + 2;
      std::vector<FF> cc(prec, x->residue->zero());
      cc[0] = x->residue->one();
      for (unsigned i = static_cast<unsigned>(n); i < prec; ++i)
        cc[i] = x->residue->element(rand_below(rng, x->residue->order()));
      u = u.with_local(x, LaurentJet(x, 0, std::move(cc)));
    }
    for (const auto& x : extra_places) {
      if (D.coeff(x) != 0 || rand_below(rng, 2) == 0) continue;
      std::vector<FF> cc(2, x->residue->zero());
      cc[0] = x->residue->element(1 + rand_below(rng, x->residue->order() - 1));
      cc[1] = x->residue->element(rand_below(rng, x->residue->order()));
      u = u.with_local(x, LaurentJet(x, 0, std::move(cc)));
    }
    return u;
  };
  for (int t = 0; t < trials; ++t) {
    Idele u = sample_vd(Idele::identity(a.curve(), a.window()));
    Idele v = sample_vd(Idele::identity(a.curve(), b.window()));
    SymbolValue got = global_pairing_unchecked(a * u, b * v);
    ++verdict.trials;
    if (got != base) {
      verdict.ok = false;
      verdict.first_failure = "trial " + std::to_string(t) + ": " + got.to_string() +
                              " != " + base.to_string();
      break;
    }
  }
  return verdict;
}

}  // namespace idelic
