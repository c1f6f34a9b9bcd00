#pragma once

// Elements of the function field, divisors, exact local expansion into
// Laurent jets, and construction of functions with prescribed divisors.
//
// On P1 an element is a reduced rational function in t.  On an elliptic
// curve it is kept in the canonical form u(x) + v(x)*y with u, v rational
// in x (y^2 eliminated through the curve equation), which makes equality
// testing and conjugation trivial.
//
// Local expansions are exact: at a finite P1 place they run in the ring
// F_q[t]/(pi^N) with a Hensel-lifted root of pi as the coefficient-field
// section; on an elliptic curve they run in truncated power-series rings
// where the branch y(t) (or x(t), or the t = x/y chart at O) is produced by
// Newton iteration and then certified against the curve equation, so every
// stored coefficient is exact.  Valuations on the elliptic curve are
// cross-checked against the conjugate-norm oracle inside divisor_of.

#include "idelic/jet.hpp"

namespace idelic {

class FuncElem {
 public:
  FuncElem() = default;

  static FuncElem from_rat(CurvePtr c, RatFun r) {
    FuncElem f;
    f.curve_ = std::move(c);
    f.u_ = std::move(r);
    f.v_ = RatFun::zero(f.curve_->field());
    return f;
  }
  static FuncElem xy(CurvePtr c, RatFun u, RatFun v) {
    IDELIC_CHECK(c->is_elliptic(), "FuncElem: u+v*y form needs an elliptic curve");
    FuncElem f;
    f.curve_ = std::move(c);
    f.u_ = std::move(u);
    f.v_ = std::move(v);
    return f;
  }
  static FuncElem zero(const CurvePtr& c) { return from_rat(c, RatFun::zero(c->field())); }
  static FuncElem one(const CurvePtr& c) { return from_rat(c, RatFun::one(c->field())); }
  static FuncElem constant(const CurvePtr& c, const FF& a) {
    return from_rat(c, RatFun::constant(a));
  }
  static FuncElem coordinate(const CurvePtr& c) {
    return from_rat(c, RatFun::variable(c->field()));  // t on P1, x on E
  }
  static FuncElem y_coord(const CurvePtr& c) {
    return xy(c, RatFun::zero(c->field()), RatFun::one(c->field()));
  }

  const CurvePtr& curve() const { return curve_; }
  const RatFun& u() const { return u_; }
  const RatFun& v() const { return v_; }
  const RatFun& rat() const {
    IDELIC_CHECK(v_.is_zero(), "FuncElem: not a rational function of the coordinate");
    return u_;
  }

  bool is_zero() const { return u_.is_zero() && v_.is_zero(); }
  std::optional<FF> as_constant() const {
    if (!v_.is_zero() || !u_.is_constant()) return std::nullopt;
    return u_.num().is_zero() ? curve_->field()->zero() : u_.num().coeff(0);
  }

  // x^3 + ax + b as a rational function of x.
  RatFun curve_rhs() const {
    const FieldPtr k = curve_->field();
    Poly g(k, {curve_->b(), curve_->a(), k->zero(), k->one()});
    return RatFun(g);
  }

  FuncElem conj() const {
    FuncElem f = *this;
    f.v_ = -f.v_;
    return f;
  }

  // N_{Sigma/k(x)}(f) = u^2 - v^2 (x^3+ax+b), a rational function of x.
  RatFun norm_x() const {
    if (v_.is_zero()) return u_ * u_;
    return u_ * u_ - v_ * v_ * curve_rhs();
  }

  FuncElem operator+(const FuncElem& o) const {
    check_same(o);
    return make(curve_, u_ + o.u_, v_ + o.v_);
  }
  FuncElem operator-(const FuncElem& o) const {
    check_same(o);
    return make(curve_, u_ - o.u_, v_ - o.v_);
  }
  FuncElem operator-() const { return make(curve_, -u_, -v_); }
  FuncElem operator*(const FuncElem& o) const {
    check_same(o);
    if (v_.is_zero() && o.v_.is_zero()) return make(curve_, u_ * o.u_, v_);
    RatFun nu = u_ * o.u_ + v_ * o.v_ * curve_rhs();
    RatFun nv = u_ * o.v_ + v_ * o.u_;
    return make(curve_, std::move(nu), std::move(nv));
  }
  FuncElem inverse() const {
    IDELIC_CHECK(!is_zero(), "FuncElem: inverse of zero");
    if (v_.is_zero()) return make(curve_, u_.inverse(), v_);
    RatFun nm = norm_x();
    return make(curve_, u_ / nm, -v_ / nm);
  }
  FuncElem operator/(const FuncElem& o) const { return *this * o.inverse(); }
  FuncElem pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    FuncElem r = one(curve_);
    FuncElem b = *this;
    std::uint64_t u = static_cast<std::uint64_t>(e);
    while (u) {
      if (u & 1) r = r * b;
      b = b * b;
      u >>= 1;
    }
    return r;
  }

  bool operator==(const FuncElem& o) const {
    return curve_.get() == o.curve_.get() && u_ == o.u_ && v_ == o.v_;
  }
  bool operator!=(const FuncElem& o) const { return !(*this == o); }

  std::string to_string() const {
    if (!curve_->is_elliptic()) return u_.to_string("t");
    if (v_.is_zero()) return u_.to_string("x");
    std::string vs = "(" + v_.to_string("x") + ")*y";
    if (u_.is_zero()) return vs;
    return "(" + u_.to_string("x") + ") + " + vs;
  }

 private:
  static FuncElem make(CurvePtr c, RatFun u, RatFun v) {
    FuncElem f;
    f.curve_ = std::move(c);
    f.u_ = std::move(u);
    f.v_ = std::move(v);
    return f;
  }
  void check_same(const FuncElem& o) const {
    IDELIC_CHECK(curve_.get() == o.curve_.get(), "FuncElem: curve mismatch");
  }

  CurvePtr curve_;
  RatFun u_, v_;
};

namespace detail {
struct FuncCtx {
  using value_type = FuncElem;
  CurvePtr curve;
  FuncElem from_int(std::int64_t n) const {
    return FuncElem::constant(curve, curve->field()->from_int(n));
  }
  FuncElem var(const std::string& name) const {
    if (!curve->is_elliptic() && name == "t") return FuncElem::coordinate(curve);
    if (curve->is_elliptic() && name == "x") return FuncElem::coordinate(curve);
    if (curve->is_elliptic() && name == "y") return FuncElem::y_coord(curve);
    if (name == "g" || name == "G")
      return FuncElem::constant(curve, curve->field()->generator());
    throw error("function parse: unknown identifier '" + name + "'");
  }
  FuncElem add(const FuncElem& a, const FuncElem& b) const { return a + b; }
  FuncElem sub(const FuncElem& a, const FuncElem& b) const { return a - b; }
  FuncElem mul(const FuncElem& a, const FuncElem& b) const { return a * b; }
  FuncElem div(const FuncElem& a, const FuncElem& b) const { return a / b; }
  FuncElem neg(const FuncElem& a) const { return -a; }
  FuncElem pow(const FuncElem& a, std::int64_t e) const { return a.pow(e); }
};
}  // namespace detail

inline FuncElem parse_func(const CurvePtr& c, const std::string& s) {
  detail::FuncCtx ctx{c};
  return detail::ExprParser<detail::FuncCtx>(ctx, s).parse();
}

// ---------------------------------------------------------------------------
// Divisors

class Divisor {
 public:
  Divisor() = default;

  void add(const PlacePtr& x, long n) {
    if (n == 0) return;
    auto it = m_.find(x);
    if (it == m_.end()) {
      m_.emplace(x, n);
    } else {
      it->second += n;
      if (it->second == 0) m_.erase(it);
    }
  }

  long coeff(const PlacePtr& x) const {
    auto it = m_.find(x);
    return it == m_.end() ? 0 : it->second;
  }

  const std::map<PlacePtr, long, PlaceLess>& entries() const { return m_; }
  bool empty() const { return m_.empty(); }

  long degree() const {
    long d = 0;
    for (const auto& [x, n] : m_) d += n * static_cast<long>(x->deg);
    return d;
  }

  unsigned max_place_degree() const {
    unsigned d = 0;
    for (const auto& [x, n] : m_) d = std::max(d, x->deg);
    return d;
  }

  bool is_effective() const {
    for (const auto& [x, n] : m_)
      if (n < 0) return false;
    return true;
  }

  Divisor operator+(const Divisor& o) const {
    Divisor r = *this;
    for (const auto& [x, n] : o.m_) r.add(x, n);
    return r;
  }
  Divisor operator-(const Divisor& o) const {
    Divisor r = *this;
    for (const auto& [x, n] : o.m_) r.add(x, -n);
    return r;
  }
  Divisor operator*(long c) const {
    Divisor r;
    if (c)
      for (const auto& [x, n] : m_) r.add(x, n * c);
    return r;
  }
  bool operator==(const Divisor& o) const {
    if (m_.size() != o.m_.size()) return false;
    auto it = o.m_.begin();
    for (const auto& [x, n] : m_) {
      if (x->compare(*it->first) != 0 || n != it->second) return false;
      ++it;
    }
    return true;
  }
  bool operator!=(const Divisor& o) const { return !(*this == o); }

  std::string to_string() const {
    if (m_.empty()) return "0";
    std::string s;
    for (const auto& [x, n] : m_) {
      if (!s.empty()) s += n >= 0 ? " + " : " - ";
      else if (n < 0) s += "-";
      long a = n < 0 ? -n : n;
      if (a != 1) s += std::to_string(a) + "*";
      s += x->name();
    }
    return s;
  }

 private:
  std::map<PlacePtr, long, PlaceLess> m_;
};

// Parse "2*(t) - (t+1) + 3*inf" against a curve's place syntax.
inline Divisor parse_divisor(const CurvePtr& c, const std::string& s) {
  Divisor d;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip();
  bool first = true;
  while (i < s.size()) {
    long sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else {
      IDELIC_CHECK(first, "parse_divisor: expected '+' or '-'");
    }
    first = false;
    long mult = 1;
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      mult = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
        mult = mult * 10 + (s[i++] - '0');
      skip();
      IDELIC_CHECK(i < s.size() && s[i] == '*', "parse_divisor: expected '*' after multiplicity");
      ++i;
      skip();
    }
    // place token: up to the next top-level '+'/'-'
    int depth = 0;
    std::string tok;
    while (i < s.size()) {
      char ch = s[i];
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (depth == 0 && (ch == '+' || ch == '-')) break;
      tok += ch;
      ++i;
    }
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.pop_back();
    d.add(c->parse_place(tok), sign * mult);
    skip();
  }
  return d;
}

// ---------------------------------------------------------------------------
// Exact expansion machinery

namespace detail {

struct retry_precision {};

// Dense power-series helpers in K[s]/(s^W): vectors of length W, all exact.
inline std::vector<FF> ps_mul(const std::vector<FF>& a, const std::vector<FF>& b,
                              const FieldPtr& K) {
  const std::size_t W = a.size();
  std::vector<FF> r(W, K->zero());
  for (std::size_t i = 0; i < W; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < W; ++j) r[i + j] = r[i + j] + a[i] * b[j];
  }
  return r;
}

inline std::vector<FF> ps_inv(const std::vector<FF>& a, const FieldPtr& K) {
  IDELIC_CHECK(!a[0].is_zero(), "ps_inv: not a unit");
  const std::size_t W = a.size();
  std::vector<FF> b(W, K->zero());
  FF i0 = a[0].inverse();
  b[0] = i0;
  for (std::size_t n = 1; n < W; ++n) {
    FF acc = K->zero();
    for (std::size_t i = 1; i <= n; ++i) acc = acc + a[i] * b[n - i];
    b[n] = -acc * i0;
  }
  return b;
}

// Truncated Laurent series with explicit exactness bound: coefficients for
// exponents [off, off + c.size()) are exact; nothing is known beyond.  An
// empty vector with off = kExactZero means "exactly zero".
constexpr long kExactZero = (1L << 40);

struct LSer {
  long off = 0;
  std::vector<FF> c;
  long end() const { return off + static_cast<long>(c.size()); }
  bool exactly_zero() const { return c.empty() && off == kExactZero; }
};

class ExpandSession {
 public:
  ExpandSession(FieldPtr K, long W) : K_(std::move(K)), W_(W) {}

  const FieldPtr& K() const { return K_; }
  long W() const { return W_; }

  LSer exact_zero() const { return LSer{kExactZero, {}}; }

  LSer from_scalar(const FF& a) const {
    if (a.is_zero()) return exact_zero();
    std::vector<FF> c(static_cast<std::size_t>(W_), K_->zero());
    c[0] = K_->embed(a);
    return LSer{0, std::move(c)};
  }

  LSer from_unit_series(std::vector<FF> ps, long off) const {
    return LSer{off, std::move(ps)};
  }

  LSer add(const LSer& a, const LSer& b) const {
    if (a.exactly_zero()) return b;
    if (b.exactly_zero()) return a;
    const long off = std::min(a.off, b.off);
    const long end = std::min(a.end(), b.end());
    if (end <= off) throw retry_precision{};
    std::vector<FF> c(static_cast<std::size_t>(end - off), K_->zero());
    for (long e = a.off; e < std::min(a.end(), end); ++e)
      c[static_cast<std::size_t>(e - off)] = a.c[static_cast<std::size_t>(e - a.off)];
    for (long e = b.off; e < std::min(b.end(), end); ++e) {
      auto& slot = c[static_cast<std::size_t>(e - off)];
      slot = slot + b.c[static_cast<std::size_t>(e - b.off)];
    }
    return LSer{off, std::move(c)};
  }

  LSer neg(const LSer& a) const {
    LSer r = a;
    for (auto& x : r.c) x = -x;
    return r;
  }

  LSer mul(const LSer& a, const LSer& b) const {
    if (a.exactly_zero() || b.exactly_zero()) return exact_zero();
    const long off = a.off + b.off;
    const long end = std::min(a.off + b.end(), b.off + a.end());
    if (end <= off) throw retry_precision{};
    std::vector<FF> c(static_cast<std::size_t>(end - off), K_->zero());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (a.c[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c.size() && static_cast<long>(i + j) < end - off; ++j)
        c[i + j] = c[i + j] + a.c[i] * b.c[j];
    }
    return LSer{off, std::move(c)};
  }

  // (valuation, unit coefficients); nullopt when the series is exactly zero,
  // retry when zero only to known precision.
  std::optional<std::pair<long, std::vector<FF>>> normalized(const LSer& a) const {
    if (a.exactly_zero()) return std::nullopt;
    std::size_t j = 0;
    while (j < a.c.size() && a.c[j].is_zero()) ++j;
    if (j == a.c.size()) throw retry_precision{};
    return std::make_pair(a.off + static_cast<long>(j),
                          std::vector<FF>(a.c.begin() + static_cast<long>(j), a.c.end()));
  }

  LSer inv(const LSer& a) const {
    auto n = normalized(a);
    IDELIC_CHECK(n.has_value(), "LSer: inverse of zero");
    auto& [val, unit] = *n;
    return LSer{-val, ps_inv_var(unit)};
  }

  LSer div(const LSer& a, const LSer& b) const { return mul(a, inv(b)); }

  LSer eval_poly(const Poly& p, const LSer& x) const {
    LSer r = exact_zero();
    for (std::size_t i = static_cast<std::size_t>(p.degree() + 1); i-- > 0;)
      r = add(mul(r, x), from_scalar(p.coeff(i)));
    return r;
  }

  LSer eval_rat(const RatFun& r, const LSer& x) const {
    if (r.is_zero()) return exact_zero();
    return div(eval_poly(r.num(), x), eval_poly(r.den(), x));
  }

 private:
  std::vector<FF> ps_inv_var(const std::vector<FF>& a) const {
    std::vector<FF> b(a.size(), K_->zero());
    FF i0 = a[0].inverse();
    b[0] = i0;
    for (std::size_t n = 1; n < a.size(); ++n) {
      FF acc = K_->zero();
      for (std::size_t i = 1; i <= n && i < a.size(); ++i) acc = acc + a[i] * b[n - i];
      b[n] = -acc * i0;
    }
    return b;
  }

  FieldPtr K_;
  long W_;
};

// Branch data for an elliptic place: x(s), y(s) exact mod s^W, certified
// against the curve equation.
inline std::pair<LSer, LSer> elliptic_branch(const Place& pl, const ExpandSession& S) {
  const FieldPtr K = S.K();
  const Curve* cv = pl.curve;
  const std::size_t W = static_cast<std::size_t>(S.W());
  const FF a = K->embed(cv->a()), b = K->embed(cv->b());
  auto g_of = [&](const std::vector<FF>& x) {
    std::vector<FF> r = ps_mul(ps_mul(x, x, K), x, K);  // x^3
    for (std::size_t i = 0; i < W; ++i) r[i] = r[i] + a * x[i];
    r[0] = r[0] + b;
    return r;
  };
  unsigned iters = 2;
  for (std::size_t t = 1; t < W; t <<= 1) ++iters;

  if (pl.kind == Place::Kind::EllInfinity) {
    // chart t = x/y: u = 1 - a t^4 / u - b t^6 / u^2, x = t^-2 u, y = t^-3 u
    std::vector<FF> u(W, K->zero());
    u[0] = K->one();
    for (std::size_t it = 0; it < W / 4 + 2; ++it) {
      std::vector<FF> iu = ps_inv(u, K);
      std::vector<FF> iu2 = ps_mul(iu, iu, K);
      std::vector<FF> nu(W, K->zero());
      nu[0] = K->one();
      for (std::size_t i = 0; i + 4 < W; ++i) nu[i + 4] = nu[i + 4] - a * iu[i];
      for (std::size_t i = 0; i + 6 < W; ++i) nu[i + 6] = nu[i + 6] - b * iu2[i];
      u = std::move(nu);
    }
    // certify: u^2 = u^3 + a t^4 u + b t^6 mod t^W
    std::vector<FF> lhs = ps_mul(u, u, K);
    std::vector<FF> rhs = ps_mul(ps_mul(u, u, K), u, K);
    for (std::size_t i = 0; i + 4 < W; ++i) rhs[i + 4] = rhs[i + 4] + a * u[i];
    if (6 < W) rhs[6] = rhs[6] + b;
    IDELIC_CHECK(lhs == rhs, "elliptic_branch: chart identity failed at O");
    LSer xs{-2, u};
    LSer ys{-3, u};
    return {xs, ys};
  }

  const FF xi = pl.xi, eta = pl.eta;
  if (pl.sel == -1) {
    // ramified: coordinate s = y, solve g(x) = s^2 with x(0) = xi
    std::vector<FF> x(W, K->zero());
    x[0] = xi;
    for (unsigned it = 0; it < iters; ++it) {
      std::vector<FF> gx = g_of(x);
      if (W > 2) gx[2] = gx[2] - K->one();
      // g'(x) = 3x^2 + a
      std::vector<FF> gp = ps_mul(x, x, K);
      for (auto& t : gp) t = t * K->from_int(3);
      gp[0] = gp[0] + a;
      std::vector<FF> corr = ps_mul(gx, ps_inv(gp, K), K);
      for (std::size_t i = 0; i < W; ++i) x[i] = x[i] - corr[i];
    }
    std::vector<FF> check = g_of(x);
    if (W > 2) check[2] = check[2] - K->one();
    for (const auto& t : check)
      IDELIC_CHECK(t.is_zero(), "elliptic_branch: ramified branch identity failed");
    std::vector<FF> y(W, K->zero());
    if (W > 1) y[1] = K->one();  // y = s exactly in this chart
    return {LSer{0, std::move(x)}, LSer{0, std::move(y)}};
  }

  // split or inert: coordinate s = x - xi, y(s) = sqrt(g(xi + s)) with
  // y(0) = eta != 0, by Newton y <- (y + g/y)/2
  std::vector<FF> x(W, K->zero());
  x[0] = xi;
  if (W > 1) x[1] = K->one();
  std::vector<FF> gx = g_of(x);
  std::vector<FF> y(W, K->zero());
  y[0] = eta;
  const FF half = K->from_int(2).inverse();
  for (unsigned it = 0; it < iters; ++it) {
    std::vector<FF> t = ps_mul(gx, ps_inv(y, K), K);
    for (std::size_t i = 0; i < W; ++i) y[i] = (y[i] + t[i]) * half;
  }
  IDELIC_CHECK(ps_mul(y, y, K) == gx, "elliptic_branch: square-root branch identity failed");
  return {LSer{0, std::move(x)}, LSer{0, std::move(y)}};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// expand_at / evaluate / valuation

namespace detail {

inline Poly compose_mod(const Poly& p, const Poly& x, const Poly& mod) {
  const FieldPtr k = p.field();
  Poly r = Poly::zero(k);
  for (std::size_t i = static_cast<std::size_t>(p.degree() + 1); i-- > 0;)
    r = (r * x + Poly::constant(p.coeff(i))) % mod;
  return r;
}

inline FF residue_element(const Place& pl, const Poly& rep) {
  // rep has degree < deg(pi); build the residue-field element
  if (pl.deg == 1 || pl.residue.get() == pl.curve->field().get())
    return rep.is_zero() ? pl.residue->zero() : rep.coeff(0);
  std::vector<FF> c(pl.residue->degree(), pl.curve->field()->zero());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = rep.coeff(i);
  return FF(pl.residue, std::move(c));
}

// Hensel lift of the residue-field section: a root of pi in F_q[t]/(pi^N)
// congruent to t mod pi.
inline Poly hensel_root(const Poly& pi, unsigned N) {
  const FieldPtr k = pi.field();
  if (pi.degree() == 1) return Poly::constant(-pi.coeff(0));
  const Poly piN = pi.powu(N);
  Poly theta = Poly::variable(k);
  const Poly dpi = pi.derivative();
  unsigned iters = 1;
  for (unsigned t = 1; t < N; t <<= 1) ++iters;
  for (unsigned it = 0; it < iters; ++it) {
    Poly num = compose_mod(pi, theta, piN);
    Poly den = compose_mod(dpi, theta, piN);
    theta = (theta - num * invmod(den, piN)) % piN;
  }
  IDELIC_CHECK(compose_mod(pi, theta, piN).is_zero(), "hensel_root: lift failed");
  return theta;
}

inline LaurentJet expand_p1_finite(const RatFun& f, const PlacePtr& pl, unsigned N) {
  const FieldPtr k = pl->curve->field();
  const Poly& pi = pl->pi;
  Poly unit_num = Poly::zero(k), unit_den = Poly::zero(k);
  const int vn = f.num().valuation(pi, &unit_num);
  const int vd = f.den().valuation(pi, &unit_den);
  const Poly piN = pi.powu(N);
  Poly U = ((unit_num % piN) * invmod(unit_den % piN, piN)) % piN;
  const Poly theta = hensel_root(pi, N);

  std::vector<FF> digits;
  digits.reserve(N);
  for (unsigned i = 0; i < N; ++i) {
    Poly r = U % pi;
    digits.push_back(residue_element(*pl, r));
    Poly lift = compose_mod(r, theta, piN);
    auto [q, rem] = (U - lift).divmod(pi);
    IDELIC_CHECK(rem.is_zero(), "expand_p1_finite: digit extraction failed");
    U = q;
  }
  return LaurentJet(pl, vn - vd, std::move(digits));
}

inline LaurentJet expand_p1_infinity(const RatFun& f, const PlacePtr& pl, unsigned N) {
  const FieldPtr k = pl->curve->field();
  const long v = f.den().degree() - f.num().degree();
  std::vector<FF> rn(N, k->zero()), rd(N, k->zero());
  for (int i = 0; i <= f.num().degree() && i < static_cast<int>(N); ++i)
    rn[static_cast<std::size_t>(i)] = f.num().coeff(static_cast<std::size_t>(f.num().degree() - i));
  for (int i = 0; i <= f.den().degree() && i < static_cast<int>(N); ++i)
    rd[static_cast<std::size_t>(i)] = f.den().coeff(static_cast<std::size_t>(f.den().degree() - i));
  std::vector<FF> c = ps_mul(rn, ps_inv(rd, k), k);
  return LaurentJet(pl, v, std::move(c));
}

inline LaurentJet expand_elliptic(const FuncElem& f, const PlacePtr& pl, unsigned N) {
  const FieldPtr R = pl->residue;
  long W = static_cast<long>(N) + 8;
  for (;;) {
    try {
      ExpandSession S(R, W);
      auto [xs, ys] = elliptic_branch(*pl, S);
      LSer val = S.eval_rat(f.u(), xs);
      if (!f.v().is_zero()) val = S.add(val, S.mul(S.eval_rat(f.v(), xs), ys));
      auto norm = S.normalized(val);
      IDELIC_CHECK(norm.has_value(), "expand_at: expansion of zero function");
      auto& [v, unit] = *norm;
      if (unit.size() < N) throw retry_precision{};
      unit.resize(N);
      return LaurentJet(pl, v, std::move(unit));
    } catch (const retry_precision&) {
      W *= 2;
      IDELIC_CHECK(W <= 8192, "expand_at: precision cap exceeded");
    }
  }
}

}  // namespace detail

inline LaurentJet expand_at(const FuncElem& f, const PlacePtr& pl, unsigned N) {
  IDELIC_CHECK(N >= 1, "expand_at: precision must be >= 1");
  IDELIC_CHECK(!f.is_zero(), "expand_at: zero function");
  IDELIC_CHECK(pl->curve == f.curve().get(), "expand_at: place belongs to another curve");
  switch (pl->kind) {
    case Place::Kind::P1Finite:
      return detail::expand_p1_finite(f.rat(), pl, N);
    case Place::Kind::P1Infinity:
      return detail::expand_p1_infinity(f.rat(), pl, N);
    default:
      return detail::expand_elliptic(f, pl, N);
  }
}

inline long valuation(const FuncElem& f, const PlacePtr& pl) {
  return expand_at(f, pl, 1).val();
}

inline FF evaluate(const FuncElem& f, const PlacePtr& pl) {
  LaurentJet j = expand_at(f, pl, 1);
  IDELIC_CHECK(j.val() == 0, "evaluate: function has a zero or pole at the place");
  return j.lead();
}

// t_x with v_x(t_x) = 1, as a global function.
inline FuncElem uniformizer(const PlacePtr& pl) {
  CurvePtr c = pl->curve->shared_from_this();
  switch (pl->kind) {
    case Place::Kind::P1Finite:
      return FuncElem::from_rat(c, RatFun(pl->pi));
    case Place::Kind::P1Infinity:
      return FuncElem::from_rat(c, RatFun::one(c->field()) / RatFun::variable(c->field()));
    case Place::Kind::EllFinite:
      if (pl->sel == -1) return FuncElem::y_coord(c);   // 2-torsion: v(y) = 1
      return FuncElem::from_rat(c, RatFun(pl->pi));     // v(pi(x)) = 1 when eta != 0
    case Place::Kind::EllInfinity:
      return FuncElem::coordinate(c) / FuncElem::y_coord(c);  // x/y at O
  }
  throw error("uniformizer: unreachable");
}

// ---------------------------------------------------------------------------
// divisor_of

inline Divisor divisor_of(const FuncElem& f) {
  IDELIC_CHECK(!f.is_zero(), "divisor_of: zero function");
  const CurvePtr c = f.curve();
  Divisor d;
  if (!c->is_elliptic()) {
    const RatFun& r = f.rat();
    for (const auto& [pi, m] : factor(r.num()).factors) d.add(c->p1_place(pi), m);
    for (const auto& [pi, m] : factor(r.den()).factors) d.add(c->p1_place(pi), -m);
    d.add(c->infinity_place(), r.den().degree() - r.num().degree());
    IDELIC_CHECK(d.degree() == 0, "divisor_of: nonzero degree on P1");
    return d;
  }

  // elliptic: candidates are the x-places under the zeros of the numerator
  // norm A^2 - B^2 g and under the poles (common denominator), plus O
  const FieldPtr k = c->field();
  Poly C = poly_lcm(f.u().den(), f.v().den());
  Poly A = f.u().num() * (C / f.u().den());
  Poly B = f.v().num() * (C / f.v().den());
  Poly G(k, {c->b(), c->a(), k->zero(), k->one()});
  Poly norm_num = A * A - B * B * G;
  IDELIC_CHECK(!norm_num.is_zero(), "divisor_of: vanishing norm");

  std::map<std::string, std::pair<Poly, long>> cand;  // pi -> (pi, v_pi(norm))
  for (const auto& [pi, m] : factor(norm_num).factors)
    cand.emplace(pi.to_string(), std::make_pair(pi, 0)).first->second.second += m;
  for (const auto& [pi, m] : factor(C).factors) {
    auto& slot = cand.emplace(pi.to_string(), std::make_pair(pi, 0)).first->second;
    slot.second -= 2 * m;
  }

  for (const auto& [key, pv] : cand) {
    const auto& [pi, vnorm] = pv;
    long sum = 0;
    for (const auto& pl : c->elliptic_places_over(pi)) {
      long v = valuation(f, pl);
      d.add(pl, v);
      if (pl->sel == 0 || pl->sel == 1) sum += v;          // split pair: v0 + v1 = v_pi(N)
      else if (pl->sel == -1) sum += v;                    // ramified: v = v_pi(N)
      else sum += 2 * v;                                   // inert: 2v = v_pi(N)
    }
    IDELIC_CHECK(sum == vnorm, "divisor_of: conjugate-norm oracle disagrees at (" +
                                   pi.to_string() + ")");
  }
  long vO = valuation(f, c->infinity_place());
  d.add(c->infinity_place(), vO);
  RatFun nrm = f.norm_x();
  IDELIC_CHECK(vO == nrm.den().degree() - nrm.num().degree(),
               "divisor_of: conjugate-norm oracle disagrees at O");
  IDELIC_CHECK(d.degree() == 0, "divisor_of: nonzero total degree");
  return d;
}

// ---------------------------------------------------------------------------
// function_with_divisor

class non_principal : public error {
 public:
  non_principal(std::string what, ECPoint cls)
      : error(std::move(what)), obstruction(std::move(cls)) {}
  ECPoint obstruction;
};

// x - x_P (vertical through P and -P).
inline FuncElem vertical_line(const CurvePtr& c, const ECPoint& p) {
  IDELIC_CHECK(!p.at_inf, "vertical_line: affine point required");
  const FieldPtr k = c->field();
  return FuncElem::from_rat(c, RatFun::variable(k) - RatFun::constant(p.x));
}

// Line through P and Q (tangent when P = Q); vertical when Q = -P.
inline FuncElem chord_line(const CurvePtr& c, const ECPoint& p, const ECPoint& q) {
  IDELIC_CHECK(!p.at_inf && !q.at_inf, "chord_line: affine points required");
  if (q == c->ec_neg(p)) return vertical_line(c, p);
  const FieldPtr K = p.x.field();
  FF lambda = K->zero();
  if (p == q)
    lambda = (K->from_int(3) * p.x * p.x + K->embed(c->a())) / (K->from_int(2) * p.y);
  else
    lambda = (q.y - p.y) / (q.x - p.x);
  FF mu = p.y - lambda * p.x;
  Poly l(K, {mu, lambda});
  return FuncElem::xy(c, RatFun(-l), RatFun::one(K));
}

namespace detail {

// Reduce a list of affine points (with multiplicity) to a single point:
// returns (S, h) with div(h) = sum(points) - (S) - (n-1)(O), where (S) is
// read as (O) when S = O.
inline std::pair<ECPoint, FuncElem> reduce_points(const CurvePtr& c,
                                                  std::vector<ECPoint> pts) {
  FuncElem h = FuncElem::one(c);
  while (pts.size() >= 2) {
    ECPoint p = pts.back();
    pts.pop_back();
    ECPoint q = pts.back();
    pts.pop_back();
    if (q == c->ec_neg(p)) {
      h = h * vertical_line(c, p);
    } else {
      ECPoint r = c->ec_add(p, q);
      h = h * (chord_line(c, p, q) / vertical_line(c, r));
      pts.push_back(r);
    }
  }
  return {pts.empty() ? ECPoint::infinity() : pts[0], h};
}

}  // namespace detail

inline FuncElem function_with_divisor(const CurvePtr& c, const Divisor& D) {
  IDELIC_CHECK(D.degree() == 0, "function_with_divisor: divisor degree must be 0");
  if (D.empty()) return FuncElem::one(c);
  if (!c->is_elliptic()) {
    FuncElem f = FuncElem::one(c);
    for (const auto& [pl, n] : D.entries()) {
      IDELIC_CHECK(pl->curve == c.get(), "function_with_divisor: foreign place");
      if (pl->kind == Place::Kind::P1Finite)
        f = f * FuncElem::from_rat(c, RatFun(pl->pi)).pow(n);
    }
    IDELIC_CHECK(divisor_of(f) == D, "function_with_divisor: reconstruction mismatch");
    IDELIC_CHECK(expand_at(f, c->infinity_place(), 1).lead().is_one(),
                 "function_with_divisor: normalization at infinity");
    return f;
  }

  // geometric points over the common field k_L, L = lcm of place degrees
  unsigned L = 1;
  for (const auto& [pl, n] : D.entries()) L = std::lcm(L, pl->deg);
  const FieldPtr KL = c->standard_ext(L);
  CurvePtr cl = L == 1 ? c : Curve::elliptic(KL, KL->embed(c->a()), KL->embed(c->b()));
  std::vector<ECPoint> pos, neg;
  for (const auto& [pl, n] : D.entries()) {
    if (pl->kind == Place::Kind::EllInfinity) continue;
    auto pts = c->geometric_points(pl, KL);
    for (long i = 0; i < (n < 0 ? -n : n); ++i)
      for (const auto& p : pts) (n > 0 ? pos : neg).push_back(p);
  }
  auto [sp, hp] = detail::reduce_points(cl, std::move(pos));
  auto [sn, hn] = detail::reduce_points(cl, std::move(neg));
  if (!(sp == sn)) {
    ECPoint ob = cl->ec_add(sp, cl->ec_neg(sn));
    ECPoint down = ob.at_inf ? ob
                             : ECPoint::affine(ob.x.project_to(c->field()),
                                               ob.y.project_to(c->field()));
    throw non_principal("function_with_divisor: divisor class " +
                            std::string(down.at_inf ? "O" : "(" + down.x.to_string() + "," +
                                                               down.y.to_string() + ")") +
                            " is not trivial",
                        down);
  }
  FuncElem h = hp / hn;
  // normalize the leading coefficient at O to 1, which also forces the
  // coefficients down into the base field
  FF lead = expand_at(h, cl->infinity_place(), 1).lead();
  h = h * FuncElem::constant(cl, lead.inverse());
  FuncElem out = h;
  if (L != 1) {
    auto project_rat = [&](const RatFun& r) {
      std::vector<FF> nc, dc;
      for (int i = 0; i <= r.num().degree(); ++i)
        nc.push_back(r.num().coeff(static_cast<std::size_t>(i)).project_to(c->field()));
      for (int i = 0; i <= r.den().degree(); ++i)
        dc.push_back(r.den().coeff(static_cast<std::size_t>(i)).project_to(c->field()));
      return RatFun(Poly(c->field(), std::move(nc)), Poly(c->field(), std::move(dc)));
    };
    out = FuncElem::xy(c, project_rat(h.u()), project_rat(h.v()));
  }
  IDELIC_CHECK(divisor_of(out) == D, "function_with_divisor: reconstruction mismatch");
  return out;
}

inline FuncElem function_with_divisor(const Divisor& D, const CurvePtr& c) {
  return function_with_divisor(c, D);
}

}  // namespace idelic
