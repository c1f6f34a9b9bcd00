#pragma once

// Ideles at finite truncation: a global principal part (a nonzero function,
// diagonally embedded) together with finitely many explicit local jets that
// OVERRIDE the principal component at their places.  Outside the local
// support the component at x is understood to be the expansion of the
// principal part, which is a unit at almost all places automatically.
//
// The window bound B marks the largest place degree any verdict about this
// idele is certified over; local jets may only sit at places of degree <= B.

#include <json.hpp>

#include "idelic/function.hpp"

namespace idelic {

class Idele {
 public:
  static constexpr unsigned kUnbounded = 0xFFFFFFFFu;

  Idele() = default;

  static Idele diagonal(FuncElem f, unsigned window = kUnbounded) {
    IDELIC_CHECK(!f.is_zero(), "Idele: principal part must be nonzero");
    Idele a;
    a.curve_ = f.curve();
    a.pdiv_ = divisor_of(f);
    a.principal_ = std::move(f);
    a.window_ = window;
    return a;
  }

  static Idele identity(const CurvePtr& c, unsigned window = kUnbounded) {
    return diagonal(FuncElem::one(c), window);
  }

  const CurvePtr& curve() const { return curve_; }
  const FuncElem& principal() const { return principal_; }
  const Divisor& principal_divisor() const { return pdiv_; }
  unsigned window() const { return window_; }
  const std::map<PlacePtr, LaurentJet, PlaceLess>& local() const { return local_; }

  Idele with_window(unsigned w) const {
    Idele a = *this;
    for (const auto& [x, j] : local_)
      IDELIC_CHECK(x->deg <= w, "Idele: local jet outside requested window");
    a.window_ = w;
    return a;
  }

  // Replace the component at x by an explicit jet.
  Idele with_local(const PlacePtr& x, LaurentJet jet) const {
    IDELIC_CHECK(x->curve == curve_.get(), "Idele: foreign place");
    IDELIC_CHECK(jet.place().get() == x.get(), "Idele: jet place mismatch");
    IDELIC_CHECK(x->deg <= window_, "Idele: local jet outside window");
    Idele a = *this;
    a.local_.insert_or_assign(x, std::move(jet));
    return a;
  }

  // Multiply the effective component at x by a unit-or-not jet.
  Idele perturbed(const PlacePtr& x, const LaurentJet& jet) const {
    const unsigned p = std::min<unsigned>(jet.prec(), stored_prec(x));
    return with_local(x, component(x, p) * jet.truncated(p));
  }

  // Effective component at x to the requested precision.  Stored jets that
  // are too short fail fast rather than being silently extended.
  LaurentJet component(const PlacePtr& x, unsigned prec) const {
    IDELIC_CHECK(prec >= 1, "Idele: precision must be >= 1");
    auto it = local_.find(x);
    if (it == local_.end()) return expand_at(principal_, x, prec);
    IDELIC_CHECK(it->second.prec() >= prec,
                 "Idele: stored jet precision exhausted at " + x->name());
    return it->second.truncated(prec);
  }

  bool has_local(const PlacePtr& x) const { return local_.count(x) != 0; }

  Divisor divisor() const {
    Divisor d = pdiv_;
    for (const auto& [x, jet] : local_) d.add(x, jet.val() - d.coeff(x));
    return d;
  }

  long degree() const { return divisor().degree(); }
  bool in_I1() const { return degree() == 0; }

  Idele operator*(const Idele& o) const {
    IDELIC_CHECK(curve_.get() == o.curve_.get(), "Idele: curve mismatch");
    Idele r;
    r.curve_ = curve_;
    r.principal_ = principal_ * o.principal_;
    r.pdiv_ = pdiv_ + o.pdiv_;
    r.window_ = std::min(window_, o.window_);
    auto keys = local_;
    for (const auto& [x, j] : o.local_) keys.emplace(x, j);
    for (const auto& [x, unused] : keys) {
      const unsigned p = std::min(stored_prec(x), o.stored_prec(x));
      r.local_.insert_or_assign(x, component(x, p) * o.component(x, p));
    }
    return r;
  }

  Idele inverse() const {
    Idele r;
    r.curve_ = curve_;
    r.principal_ = principal_.inverse();
    r.pdiv_ = pdiv_ * -1;
    r.window_ = window_;
    for (const auto& [x, j] : local_) r.local_.insert_or_assign(x, j.inverse());
    return r;
  }

  Idele negated() const {
    Idele r;
    r.curve_ = curve_;
    r.principal_ = -principal_;
    r.pdiv_ = pdiv_;
    r.window_ = window_;
    const FF m1 = -curve_->field()->one();
    for (const auto& [x, j] : local_) r.local_.insert_or_assign(x, j.scaled(m1));
    return r;
  }

  // Class in bar I^1: every local jet truncated to precision 1.
  Idele bar_reduced() const {
    Idele r = *this;
    for (auto& [x, j] : r.local_) j = j.truncated(1);
    return r;
  }

  // Drop overrides that agree with the principal expansion to their stored
  // precision (used to recognize identity ideles in tests).
  Idele normalized() const {
    Idele r = diagonal(principal_, window_);
    for (const auto& [x, j] : local_)
      if (!expand_at(principal_, x, j.prec()).eq_shared(j)) r.local_.emplace(x, j);
    return r;
  }

  bool is_identity() const {
    if (!(principal_ == FuncElem::one(curve_))) return false;
    for (const auto& [x, j] : local_)
      if (j.val() != 0 || !j.lead().is_one()) return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["principal"] = principal_.to_string();
    j["window"] = window_ == kUnbounded ? nlohmann::json() : nlohmann::json(window_);
    auto arr = nlohmann::json::array();
    for (const auto& [x, jet] : local_) {
      nlohmann::json e;
      e["place"] = x->name();
      e["val"] = jet.val();
      auto cc = nlohmann::json::array();
      for (const auto& c : jet.coeffs()) cc.push_back(c.to_string());
      e["coeffs"] = cc;
      arr.push_back(e);
    }
    j["local"] = arr;
    return j;
  }

  static Idele from_json(const CurvePtr& c, const nlohmann::json& j) {
    FuncElem f = j.contains("principal") ? parse_func(c, j.at("principal").get<std::string>())
                                         : FuncElem::one(c);
    unsigned w = kUnbounded;
    if (j.contains("window") && !j.at("window").is_null()) w = j.at("window").get<unsigned>();
    Idele a = diagonal(std::move(f), w);
    if (j.contains("local"))
      for (const auto& e : j.at("local")) {
        PlacePtr x = c->parse_place(e.at("place").get<std::string>());
        std::vector<FF> cc;
        for (const auto& s : e.at("coeffs"))
          cc.push_back(x->residue->parse_element(s.get<std::string>()));
        a = a.with_local(x, LaurentJet(x, e.at("val").get<long>(), std::move(cc)));
      }
    return a;
  }

 private:
  unsigned stored_prec(const PlacePtr& x) const {
    auto it = local_.find(x);
    return it == local_.end() ? kUnbounded : it->second.prec();
  }

  CurvePtr curve_;
  FuncElem principal_;
  Divisor pdiv_;  // divisor of the principal part, kept alongside it
  std::map<PlacePtr, LaurentJet, PlaceLess> local_;
  unsigned window_ = kUnbounded;
};

// 1 - alpha, componentwise; nullopt when the principal part is 1 (so 1-f
// vanishes) or when some stored jet cannot determine the difference.
inline std::optional<Idele> one_minus(const Idele& a) {
  FuncElem pf = FuncElem::one(a.curve()) - a.principal();
  if (pf.is_zero()) return std::nullopt;
  Idele r = Idele::diagonal(std::move(pf), a.window());
  for (const auto& [x, j] : a.local()) {
    auto om = j.one_minus();
    if (!om) return std::nullopt;
    r = r.with_local(x, *om);
  }
  return r;
}

}  // namespace idelic
