#pragma once

// Curve models and their closed points.
//
// Two models: the projective line over any F_q, and short-Weierstrass
// elliptic curves y^2 = x^3 + ax + b over F_q with characteristic >= 5.
//
// A finite place is keyed by the minimal polynomial pi of its x-coordinate
// over the base field plus, on an elliptic curve, a selector selecting the
// point above pi: the two square roots of x^3+ax+b mod pi give two places
// (sel 0/1, ordered by element index), a vanishing right-hand side gives the
// ramified place (sel -1), and a non-square gives the inert place of doubled
// degree whose residue field is the quadratic tower over k[T]/(pi) (sel 2).
// This keeps every residue field explicitly constructible without mapping
// anything through a standard copy of F_{q^d}.

#include <numeric>
#include <tuple>

#include "idelic/poly.hpp"

namespace idelic {

namespace detail {
// Map an element of k[T]/(pi) (or of k itself when deg pi = 1) into a field
// containing a chosen root of pi, sending the class of T to that root.
inline FF embed_via_root(const FF& e, const FieldPtr& k, const FF& root) {
  const FieldPtr K = root.field();
  if (e.field().get() == k.get()) return K->embed(e);
  FF img = K->zero();
  const auto& co = e.coeffs();
  for (std::size_t i = co.size(); i-- > 0;) img = img * root + K->embed(co[i]);
  return img;
}
}  // namespace detail

struct ECPoint {
  bool at_inf = true;
  FF x, y;

  static ECPoint infinity() { return ECPoint{}; }
  static ECPoint affine(FF px, FF py) { return ECPoint{false, std::move(px), std::move(py)}; }
  bool operator==(const ECPoint& o) const {
    if (at_inf || o.at_inf) return at_inf == o.at_inf;
    return x == o.x && y == o.y;
  }
  bool operator!=(const ECPoint& o) const { return !(*this == o); }
  std::pair<std::uint64_t, std::uint64_t> key() const {
    if (at_inf) return {~std::uint64_t{0}, ~std::uint64_t{0}};
    return {x.index(), y.index()};
  }
};

// Deterministic square root: Tonelli-Shanks with the first quadratic
// non-residue in element order.  Returns the root of smaller index.
inline std::optional<FF> sqrt_in_field(const FF& a) {
  const FieldPtr K = a.field();
  IDELIC_CHECK(K->characteristic() != 2, "sqrt_in_field: odd characteristic only");
  if (a.is_zero()) return K->zero();
  const std::uint64_t Q = K->order();
  if (!a.powu((Q - 1) / 2).is_one()) return std::nullopt;
  FF r = K->zero();
  if (Q % 4 == 3) {
    r = a.powu((Q + 1) / 4);
  } else {
    std::uint64_t s = Q - 1;
    unsigned e = 0;
    while (s % 2 == 0) {
      s /= 2;
      ++e;
    }
    FF n = K->zero();
    for (std::uint64_t i = 2; i < Q; ++i) {
      n = K->element(i);
      if (!n.is_zero() && !n.powu((Q - 1) / 2).is_one()) break;
    }
    FF z = n.powu(s);
    FF x = a.powu((s + 1) / 2);
    FF b = a.powu(s);
    unsigned m = e;
    while (!b.is_one()) {
      unsigned i = 0;
      FF t = b;
      while (!t.is_one()) {
        t = t * t;
        ++i;
      }
      FF c = z;
      for (unsigned j = 0; j + i + 1 < m; ++j) c = c * c;
      x = x * c;
      z = c * c;
      b = b * z;
      m = i;
    }
    r = x;
  }
  FF r2 = -r;
  return r2.index() < r.index() ? r2 : r;
}

// Minimal polynomial of x0 over k (k on the base chain of x0's field).
inline Poly min_poly_over(const FF& x0, const FieldPtr& k) {
  const FieldPtr K = x0.field();
  IDELIC_CHECK(K->on_base_chain(k), "min_poly_over: k not on base chain");
  const std::uint64_t q = k->order();
  std::vector<FF> orbit{x0};
  for (FF t = x0.powu(q); t != x0; t = t.powu(q)) orbit.push_back(t);
  // prod (T - xi) over K, then project coefficients down to k
  std::vector<FF> c{K->one()};
  for (const FF& xi : orbit) {
    std::vector<FF> nc(c.size() + 1, K->zero());
    for (std::size_t i = 0; i < c.size(); ++i) {
      nc[i + 1] = nc[i + 1] + c[i];
      nc[i] = nc[i] - c[i] * xi;
    }
    c = std::move(nc);
  }
  std::vector<FF> ck;
  ck.reserve(c.size());
  for (const FF& x : c) ck.push_back(x.project_to(k));
  return Poly(k, std::move(ck));
}

class Curve;
using CurvePtr = std::shared_ptr<const Curve>;

struct Place {
  enum class Kind { P1Finite, P1Infinity, EllFinite, EllInfinity };

  Kind kind;
  const Curve* curve = nullptr;
  Poly pi;          // finite places: minimal polynomial of the x-coordinate
  int sel = 0;      // EllFinite: 0/1 split, -1 ramified, 2 inert
  unsigned deg = 1;
  FieldPtr residue;
  FF xi, eta;       // EllFinite: representative coordinates inside `residue`

  bool is_finite() const { return kind == Kind::P1Finite || kind == Kind::EllFinite; }
  bool is_infinite() const { return !is_finite(); }

  int compare(const Place& o) const {
    if (deg != o.deg) return deg < o.deg ? -1 : 1;
    const int fa = is_finite() ? 1 : 0, fb = o.is_finite() ? 1 : 0;
    if (fa != fb) return fa < fb ? -1 : 1;
    if (is_finite()) {
      const int c = pi.compare(o.pi);
      if (c) return c;
      if (sel != o.sel) return sel < o.sel ? -1 : 1;
    }
    return 0;
  }

  std::string name() const;
};

using PlacePtr = std::shared_ptr<const Place>;

struct PlaceLess {
  bool operator()(const PlacePtr& a, const PlacePtr& b) const { return a->compare(*b) < 0; }
};

class Curve : public std::enable_shared_from_this<Curve> {
 public:
  static CurvePtr p1(FieldPtr k) {
    auto c = std::shared_ptr<Curve>(new Curve());
    c->k_ = std::move(k);
    c->elliptic_ = false;
    return c;
  }

  static CurvePtr elliptic(FieldPtr k, FF a, FF b) {
    IDELIC_CHECK(k->characteristic() >= 5, "Curve::elliptic: characteristic must be >= 5");
    IDELIC_CHECK(a.field().get() == k.get() && b.field().get() == k.get(),
                 "Curve::elliptic: coefficients must lie in the base field");
    FF disc = k->from_int(4) * a * a * a + k->from_int(27) * b * b;
    IDELIC_CHECK(!disc.is_zero(), "Curve::elliptic: singular curve (4a^3+27b^2 = 0)");
    auto c = std::shared_ptr<Curve>(new Curve());
    c->k_ = std::move(k);
    c->elliptic_ = true;
    c->a_ = a;
    c->b_ = b;
    return c;
  }

  const FieldPtr& field() const { return k_; }
  bool is_elliptic() const { return elliptic_; }
  const FF& a() const { return a_; }
  const FF& b() const { return b_; }

  std::string describe() const {
    if (!elliptic_) return "p1/q=" + std::to_string(k_->order());
    return "ell/q=" + std::to_string(k_->order()) + "/a=" + a_.to_string() +
           "/b=" + b_.to_string();
  }

  // x^3 + ax + b with coefficients embedded into x's field.
  FF rhs_at(const FF& x) const {
    const FieldPtr K = x.field();
    return x * x * x + K->embed(a_) * x + K->embed(b_);
  }

  // Chord-tangent group law; points may live over any extension on the chain.
  ECPoint ec_neg(const ECPoint& p) const {
    if (p.at_inf) return p;
    return ECPoint::affine(p.x, -p.y);
  }

  ECPoint ec_add(const ECPoint& p, const ECPoint& q) const {
    IDELIC_CHECK(elliptic_, "ec_add: not an elliptic curve");
    if (p.at_inf) return q;
    if (q.at_inf) return p;
    const FieldPtr K = p.x.field();
    FF lambda = K->zero();
    if (p.x == q.x) {
      if (p.y == -q.y) return ECPoint::infinity();
      lambda = (K->from_int(3) * p.x * p.x + K->embed(a_)) / (K->from_int(2) * p.y);
    } else {
      lambda = (q.y - p.y) / (q.x - p.x);
    }
    FF x3 = lambda * lambda - p.x - q.x;
    FF y3 = lambda * (p.x - x3) - p.y;
    return ECPoint::affine(x3, y3);
  }

  ECPoint ec_mul(std::int64_t n, ECPoint p) const {
    if (n < 0) {
      p = ec_neg(p);
      n = -n;
    }
    ECPoint r = ECPoint::infinity();
    while (n) {
      if (n & 1) r = ec_add(r, p);
      p = ec_add(p, p);
      n >>= 1;
    }
    return r;
  }

  bool on_curve(const ECPoint& p) const {
    if (p.at_inf) return true;
    return p.y * p.y == rhs_at(p.x);
  }

  // All affine points over K, sorted by (x index, y index).
  std::vector<ECPoint> points_over(const FieldPtr& K) const {
    IDELIC_CHECK(elliptic_, "points_over: not an elliptic curve");
    IDELIC_CHECK(K->order() <= desk_cap(), "points_over: field exceeds desk cap");
    std::vector<ECPoint> out;
    for (std::uint64_t i = 0; i < K->order(); ++i) {
      FF x = K->element(i);
      FF r = rhs_at(x);
      if (r.is_zero()) {
        out.push_back(ECPoint::affine(x, K->zero()));
      } else if (auto y = sqrt_in_field(r)) {
        FF y2 = -*y;
        if (y->index() < y2.index()) {
          out.push_back(ECPoint::affine(x, *y));
          out.push_back(ECPoint::affine(x, y2));
        } else {
          out.push_back(ECPoint::affine(x, y2));
          out.push_back(ECPoint::affine(x, *y));
        }
      }
    }
    return out;
  }

  struct GroupStructure {
    std::uint64_t order = 0;
    std::uint64_t m = 1, n = 1;  // Z/m x Z/n with m | n, m*n = order
    ECPoint g1, g2;              // orders m and n (g1 = O when cyclic)
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::pair<std::uint64_t, std::uint64_t>>
        dlog;  // point key -> (i, j) with point = i*g1 + j*g2
  };

  const GroupStructure& group_structure() const {
    std::call_once(group_once_, [this] { build_group_structure(); });
    return group_;
  }

  // Standard extension k_d used only for orbit() serialization syntax.
  FieldPtr standard_ext(unsigned d) const {
    if (d == 1) return k_;
    std::lock_guard<std::mutex> lock(mu_);
    auto it = std_ext_.find(d);
    if (it != std_ext_.end()) return it->second;
    std::uint64_t q = 1;
    for (unsigned i = 0; i < d; ++i) {
      q *= k_->order();
      IDELIC_CHECK(q <= desk_cap(), "standard_ext: field exceeds desk cap");
    }
    FieldPtr f = Field::extension(k_, lex_least_irreducible(k_, d).coeffs());
    std_ext_[d] = f;
    return f;
  }

  PlacePtr infinity_place() const {
    std::lock_guard<std::mutex> lock(mu_);
    if (!inf_place_) {
      auto p = std::make_shared<Place>();
      p->kind = elliptic_ ? Place::Kind::EllInfinity : Place::Kind::P1Infinity;
      p->curve = this;
      p->pi = Poly::zero(k_);
      p->deg = 1;
      p->residue = k_;
      inf_place_ = p;
    }
    return inf_place_;
  }

  PlacePtr p1_place(const Poly& pi_raw) const {
    IDELIC_CHECK(!elliptic_, "p1_place: curve is elliptic");
    Poly pi = pi_raw.monic();
    IDELIC_CHECK(is_irreducible(pi), "p1_place: polynomial is not irreducible");
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(pi.to_string(), 0);
    auto it = place_cache_.find(key);
    if (it != place_cache_.end()) return it->second;
    auto p = std::make_shared<Place>();
    p->kind = Place::Kind::P1Finite;
    p->curve = this;
    p->pi = pi;
    p->deg = static_cast<unsigned>(pi.degree());
    if (p->deg == 1) {
      p->residue = k_;
      p->xi = -pi.coeff(0);
    } else {
      p->residue = Field::extension(k_, pi.coeffs());
      p->xi = p->residue->adjoined();
    }
    place_cache_[key] = p;
    return p;
  }

  // The places of the elliptic curve lying over the x-place pi.
  std::vector<PlacePtr> elliptic_places_over(const Poly& pi_raw) const {
    IDELIC_CHECK(elliptic_, "elliptic_places_over: curve is not elliptic");
    Poly pi = pi_raw.monic();
    IDELIC_CHECK(is_irreducible(pi), "elliptic_places_over: not irreducible");
    const unsigned d = static_cast<unsigned>(pi.degree());
    std::lock_guard<std::mutex> lock(mu_);
    const std::string pis = pi.to_string();
    auto hit = [&](int sel) -> PlacePtr {
      auto it = place_cache_.find(std::make_pair(pis, sel));
      return it == place_cache_.end() ? nullptr : it->second;
    };
    if (auto p = hit(-1)) return {p};
    if (auto p = hit(2)) return {p};
    if (auto p0 = hit(0)) return {p0, hit(1)};

    FieldPtr kpi;
    FF theta = k_->zero();
    if (d == 1) {
      kpi = k_;
      theta = -pi.coeff(0);
    } else {
      kpi = Field::extension(k_, pi.coeffs());
      theta = kpi->adjoined();
    }
    FF g = rhs_at(theta);
    std::vector<PlacePtr> out;
    auto make = [&](int sel, unsigned deg, FieldPtr residue, FF xi, FF eta) {
      auto p = std::make_shared<Place>();
      p->kind = Place::Kind::EllFinite;
      p->curve = this;
      p->pi = pi;
      p->sel = sel;
      p->deg = deg;
      p->residue = std::move(residue);
      p->xi = std::move(xi);
      p->eta = std::move(eta);
      place_cache_[std::make_pair(pis, sel)] = p;
      return p;
    };
    if (g.is_zero()) {
      out.push_back(make(-1, d, kpi, theta, kpi->zero()));
    } else if (auto eta = sqrt_in_field(g)) {
      FF e0 = *eta, e1 = -*eta;  // sqrt_in_field returns the smaller index
      out.push_back(make(0, d, kpi, theta, e0));
      out.push_back(make(1, d, kpi, theta, e1));
    } else {
      // inert: residue field is the quadratic tower k_pi[U]/(U^2 - g)
      FieldPtr tower = Field::extension(kpi, {-g, kpi->zero(), kpi->one()});
      out.push_back(make(2, 2 * d, tower, tower->embed(theta), tower->adjoined()));
    }
    return out;
  }

  // The place containing an explicit point over some extension of k.
  PlacePtr place_of_point(const ECPoint& pt) const {
    IDELIC_CHECK(elliptic_ && !pt.at_inf, "place_of_point: affine elliptic points only");
    const FieldPtr K = pt.x.field();
    const std::uint64_t q = k_->order();
    unsigned orbit = 1;
    for (ECPoint t = ECPoint::affine(pt.x.powu(q), pt.y.powu(q)); t != pt;
         t = ECPoint::affine(t.x.powu(q), t.y.powu(q)))
      ++orbit;
    Poly pi = min_poly_over(pt.x, k_);
    for (const auto& pl : elliptic_places_over(pi)) {
      if (pl->deg != orbit) continue;
      if (pl->sel == -1 || pl->sel == 2) return pl;
      // split: match the y-root through the embedding theta -> pt.x
      if (detail::embed_via_root(pl->eta, k_, pt.x) == pt.y) return pl;
    }
    throw error("place_of_point: no matching place (point not on curve?)");
  }

  // Geometric points of a finite elliptic place inside E(K); requires the
  // place degree to divide [K:k].
  std::vector<ECPoint> geometric_points(const PlacePtr& pl, const FieldPtr& K) const {
    IDELIC_CHECK(pl->kind == Place::Kind::EllFinite, "geometric_points: finite elliptic places only");
    const std::uint64_t q = k_->order();
    // first root of pi in K, scanning element order
    FF root = K->zero();
    bool found = false;
    for (std::uint64_t i = 0; i < K->order() && !found; ++i) {
      FF x = K->element(i);
      if (pl->pi.eval(x).is_zero()) {
        root = x;
        found = true;
      }
    }
    IDELIC_CHECK(found, "geometric_points: place degree does not divide [K:k]");
    FF g = rhs_at(root);
    FF y = K->zero();
    if (!g.is_zero()) {
      auto s = sqrt_in_field(g);
      IDELIC_CHECK(s.has_value(), "geometric_points: residue field does not embed in K");
      y = *s;
    }
    ECPoint p0 = ECPoint::affine(root, y);
    if (pl->sel == 0 || pl->sel == 1)
      p0 = ECPoint::affine(root, detail::embed_via_root(pl->eta, k_, root));
    std::vector<ECPoint> out{p0};
    for (ECPoint t = ECPoint::affine(p0.x.powu(q), p0.y.powu(q)); t != p0;
         t = ECPoint::affine(t.x.powu(q), t.y.powu(q)))
      out.push_back(t);
    IDELIC_CHECK(out.size() == pl->deg, "geometric_points: orbit size mismatch");
    return out;
  }

  // Orbit sum of a place's points: a rational point (the Abel-Jacobi image
  // of the place shifted by deg * O).
  ECPoint orbit_sum(const PlacePtr& pl) const {
    IDELIC_CHECK(elliptic_, "orbit_sum: not an elliptic curve");
    if (pl->kind == Place::Kind::EllInfinity) return ECPoint::infinity();
    const std::uint64_t q = k_->order();
    ECPoint rep = ECPoint::affine(pl->xi, pl->eta);
    ECPoint acc = rep;
    ECPoint t = ECPoint::affine(rep.x.powu(q), rep.y.powu(q));
    unsigned count = 1;
    while (t != rep) {
      acc = ec_add(acc, t);
      t = ECPoint::affine(t.x.powu(q), t.y.powu(q));
      ++count;
    }
    IDELIC_CHECK(count == pl->deg, "orbit_sum: orbit size mismatch");
    if (acc.at_inf) return acc;
    return ECPoint::affine(acc.x.project_to(k_), acc.y.project_to(k_));
  }

  std::vector<PlacePtr> places_up_to(unsigned B) const {
    IDELIC_CHECK(B >= 1, "places_up_to: bound must be >= 1");
    std::vector<PlacePtr> out{infinity_place()};
    for (const Poly& pi : irreducibles_up_to(k_, B)) {
      if (!elliptic_) {
        out.push_back(p1_place(pi));
      } else {
        for (const auto& pl : elliptic_places_over(pi))
          if (pl->deg <= B) out.push_back(pl);
      }
    }
    std::sort(out.begin(), out.end(), PlaceLess{});
    return out;
  }

  PlacePtr parse_place(const std::string& s) const;

 private:
  Curve() = default;

  void build_group_structure() const {
    IDELIC_CHECK(elliptic_, "group_structure: not an elliptic curve");
    std::vector<ECPoint> pts = points_over(k_);
    pts.insert(pts.begin(), ECPoint::infinity());
    const std::uint64_t N = pts.size();
    auto order_of = [&](const ECPoint& p) {
      std::uint64_t n = 1;
      ECPoint t = p;
      while (!t.at_inf) {
        t = ec_add(t, p);
        ++n;
      }
      return n;
    };
    std::uint64_t expo = 1;
    std::vector<std::uint64_t> orders;
    orders.reserve(N);
    for (const auto& p : pts) {
      std::uint64_t o = order_of(p);
      orders.push_back(o);
      expo = std::lcm(expo, o);
    }
    GroupStructure g;
    g.order = N;
    g.n = expo;
    g.m = N / expo;
    IDELIC_CHECK(g.m * g.n == N && g.n % g.m == 0, "group_structure: invariant factors");
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (orders[i] == g.n) {
        g.g2 = pts[i];
        break;
      }
    if (g.m == 1) {
      g.g1 = ECPoint::infinity();
      ECPoint t = ECPoint::infinity();
      for (std::uint64_t j = 0; j < g.n; ++j) {
        g.dlog[t.key()] = {0, j};
        t = ec_add(t, g.g2);
      }
    } else {
      bool done = false;
      for (std::size_t i = 0; i < pts.size() && !done; ++i) {
        if (orders[i] != g.m) continue;
        std::map<std::pair<std::uint64_t, std::uint64_t>, std::pair<std::uint64_t, std::uint64_t>>
            table;
        ECPoint pi_acc = ECPoint::infinity();
        bool ok = true;
        for (std::uint64_t a = 0; a < g.m && ok; ++a) {
          ECPoint t = pi_acc;
          for (std::uint64_t bj = 0; bj < g.n && ok; ++bj) {
            ok = table.emplace(t.key(), std::make_pair(a, bj)).second;
            t = ec_add(t, g.g2);
          }
          pi_acc = ec_add(pi_acc, pts[i]);
        }
        if (ok && table.size() == N) {
          g.g1 = pts[i];
          g.dlog = std::move(table);
          done = true;
        }
      }
      IDELIC_CHECK(done, "group_structure: no basis found");
    }
    group_ = std::move(g);
  }

  FieldPtr k_;
  bool elliptic_ = false;
  FF a_, b_;

  mutable std::mutex mu_;
  mutable std::map<std::pair<std::string, int>, PlacePtr> place_cache_;
  mutable std::map<unsigned, FieldPtr> std_ext_;
  mutable PlacePtr inf_place_;
  mutable GroupStructure group_;
  mutable std::once_flag group_once_;
};

// ---------------------------------------------------------------------------
// Naming and parsing

inline std::string Place::name() const {
  switch (kind) {
    case Kind::P1Infinity:
      return "inf";
    case Kind::EllInfinity:
      return "O";
    case Kind::P1Finite:
      return "(" + pi.to_string() + ")";
    case Kind::EllFinite:
      break;
  }
  if (deg == 1) return "pt(" + xi.to_string() + "," + eta.to_string() + ")";
  // lex-least orbit representative in the standard extension, when it is
  // constructible under the cap; otherwise a pi-based fallback
  std::uint64_t sz = 1;
  bool fits = true;
  for (unsigned i = 0; i < deg && fits; ++i) {
    sz *= curve->field()->order();
    if (sz > desk_cap()) fits = false;
  }
  if (fits) {
    FieldPtr K = curve->standard_ext(deg);
    auto pts = curve->geometric_points(std::make_shared<Place>(*this), K);
    const ECPoint* best = &pts[0];
    for (const auto& p : pts)
      if (p.key() < best->key()) best = &p;
    return "orbit(" + best->x.to_string() + "," + best->y.to_string() +
           "; d=" + std::to_string(deg) + ")";
  }
  return "ell((" + pi.to_string() + "); s=" + std::to_string(sel) + ")";
}

inline PlacePtr Curve::parse_place(const std::string& raw) const {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  IDELIC_CHECK(!s.empty(), "parse_place: empty string");
  if (s == "inf" || s == "O" || s == "infty") return infinity_place();
  if (s.rfind("pt(", 0) == 0) {
    IDELIC_CHECK(elliptic_, "parse_place: pt(...) needs an elliptic curve");
    IDELIC_CHECK(s.back() == ')', "parse_place: bad pt(...)");
    std::string body = s.substr(3, s.size() - 4);
    auto comma = body.find(',');
    IDELIC_CHECK(comma != std::string::npos, "parse_place: bad pt(...)");
    FF x = k_->parse_element(body.substr(0, comma));
    FF y = k_->parse_element(body.substr(comma + 1));
    IDELIC_CHECK(on_curve(ECPoint::affine(x, y)), "parse_place: point not on curve");
    return place_of_point(ECPoint::affine(x, y));
  }
  if (s.rfind("orbit(", 0) == 0) {
    IDELIC_CHECK(elliptic_, "parse_place: orbit(...) needs an elliptic curve");
    IDELIC_CHECK(s.back() == ')', "parse_place: bad orbit(...)");
    std::string body = s.substr(6, s.size() - 7);
    auto semi = body.find(';');
    IDELIC_CHECK(semi != std::string::npos, "parse_place: orbit(...) needs '; d=k'");
    std::string coords = body.substr(0, semi);
    std::string dpart = body.substr(semi + 1);
    IDELIC_CHECK(dpart.rfind("d=", 0) == 0, "parse_place: orbit(...) needs '; d=k'");
    unsigned d = static_cast<unsigned>(std::strtoul(dpart.c_str() + 2, nullptr, 10));
    auto comma = coords.find(',');
    IDELIC_CHECK(comma != std::string::npos, "parse_place: bad orbit(...)");
    FieldPtr K = standard_ext(d);
    FF x = K->parse_element(coords.substr(0, comma));
    FF y = K->parse_element(coords.substr(comma + 1));
    IDELIC_CHECK(on_curve(ECPoint::affine(x, y)), "parse_place: point not on curve");
    PlacePtr pl = place_of_point(ECPoint::affine(x, y));
    IDELIC_CHECK(pl->deg == d, "parse_place: orbit degree mismatch");
    return pl;
  }
  if (s.rfind("ell(", 0) == 0) {
    IDELIC_CHECK(elliptic_ && s.back() == ')', "parse_place: bad ell(...)");
    std::string body = s.substr(4, s.size() - 5);
    auto semi = body.find(";s=");
    IDELIC_CHECK(semi != std::string::npos, "parse_place: bad ell(...)");
    IDELIC_CHECK(body.front() == '(' && body[semi - 1] == ')', "parse_place: bad ell(...)");
    Poly pi = parse_poly(k_, body.substr(1, semi - 2));
    int sel = std::atoi(body.c_str() + semi + 3);
    for (const auto& pl : elliptic_places_over(pi))
      if (pl->sel == sel) return pl;
    throw error("parse_place: no place with that selector");
  }
  if (s.front() == '(' && s.back() == ')') {
    Poly pi = parse_poly(k_, s.substr(1, s.size() - 2));
    if (!elliptic_) return p1_place(pi);
    auto pls = elliptic_places_over(pi);
    IDELIC_CHECK(pls.size() == 1, "parse_place: x-place splits; use pt/orbit syntax");
    return pls[0];
  }
  throw error("parse_place: cannot parse '" + raw + "'");
}

}  // namespace idelic
