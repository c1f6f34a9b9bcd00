#include "idelic/approx.hpp"

#include <gtest/gtest.h>

using namespace idelic;

namespace {
ApproxProblem hand_problem() {
  auto c = Curve::p1(Field::prime(3));
  ApproxProblem p;
  p.curve = c;
  p.x0 = c->infinity_place();
  p.at.push_back(make_constraint(c, c->p1_place(parse_poly(c->field(), "t")),
                                 parse_func(c, "1+t"), 2));
  p.at.push_back(make_constraint(c, c->p1_place(parse_poly(c->field(), "t+2")),
                                 parse_func(c, "2"), 1));
  return p;
}

// random problem built around a known solution G, so it is always solvable
ApproxProblem random_problem(const CurvePtr& c, std::mt19937_64& rng, FuncElem* witness) {
  const FieldPtr k = c->field();
  auto rand_nz = [&](int dmax) {
    for (;;) {
      std::vector<FF> cc;
      for (int i = 0; i <= dmax; ++i) cc.push_back(k->element(rand_below(rng, k->order())));
      Poly p(k, cc);
      if (!p.is_zero()) return p;
    }
  };
  FuncElem G = FuncElem::from_rat(c, RatFun(rand_nz(3), rand_nz(2)));
  auto places = c->places_up_to(3);
  ApproxProblem p;
  p.curve = c;
  p.x0 = places[rand_below(rng, places.size())];
  std::vector<PlacePtr> chosen;
  const std::size_t want = 1 + rand_below(rng, 4);
  for (const auto& x : places) {
    if (chosen.size() >= want) break;
    if (x->compare(*p.x0) == 0) continue;
    if (rand_below(rng, 2)) continue;
    chosen.push_back(x);
  }
  if (chosen.empty())
    for (const auto& x : places)
      if (x->compare(*p.x0) != 0) {
        chosen.push_back(x);
        break;
      }
  for (const auto& x : chosen) {
    long order = 1 + static_cast<long>(rand_below(rng, 3));
    if (rand_below(rng, 4) == 0) {
      p.at.push_back(make_constraint(c, x, FuncElem::zero(c), order));
    } else {
      p.at.push_back(make_constraint(c, x, G, order));
    }
  }
  *witness = G;
  return p;
}
}  // namespace

TEST(Approx, HandCaseIsExactlyOnePlusT) {
  ApproxProblem p = hand_problem();
  FuncElem f = strong_approx_solve(p);
  EXPECT_EQ(f, parse_func(p.curve, "1+t"));
  EXPECT_TRUE(strong_approx_verify(f, p).ok);
}

TEST(Approx, NoConstraintsGivesZero) {
  auto c = Curve::p1(Field::prime(5));
  ApproxProblem p;
  p.curve = c;
  p.x0 = c->infinity_place();
  FuncElem f = strong_approx_solve(p);
  EXPECT_TRUE(f.is_zero());
  EXPECT_TRUE(strong_approx_verify(f, p).ok);
}

TEST(Approx, PoleTargetAtConstrainedPlace) {
  auto c = Curve::p1(Field::prime(5));
  ApproxProblem p;
  p.curve = c;
  p.x0 = c->infinity_place();
  p.at.push_back(
      make_constraint(c, c->p1_place(parse_poly(c->field(), "t")), parse_func(c, "1/t"), 0));
  FuncElem f = strong_approx_solve(p);
  EXPECT_EQ(f, parse_func(c, "1/t"));
  EXPECT_TRUE(strong_approx_verify(f, p).ok);
}

TEST(Approx, VerifierCatchesViolations) {
  ApproxProblem p = hand_problem();
  // f = 0 against a nonzero target of valuation < order
  auto v0 = strong_approx_verify(FuncElem::zero(p.curve), p);
  EXPECT_FALSE(v0.ok);
  // a function with a stray pole at a place neither constrained nor x0
  ApproxProblem p2 = p;
  p2.x0 = p.curve->p1_place(parse_poly(p.curve->field(), "t+1"));
  FuncElem bad = parse_func(p.curve, "(1+t) + (t^3+2*t+1)/(t^2+1)");
  auto v1 = strong_approx_verify(bad, p2);
  EXPECT_FALSE(v1.ok);
}

TEST(Approx, SeededSolveVerify) {
  for (std::uint64_t q : {2, 3, 5}) {
    auto c = Curve::p1(Field::prime(q));
    auto rng = SeedSplitter(400 + q).stream("approx-problems");
    for (int trial = 0; trial < 40; ++trial) {
      FuncElem G = FuncElem::one(c);
      ApproxProblem p = random_problem(c, rng, &G);
      FuncElem f = strong_approx_solve(p);
      auto v = strong_approx_verify(f, p);
      EXPECT_TRUE(v.ok) << "q=" << q << " trial=" << trial << "\n" << v.to_json().dump(2);
    }
  }
}

TEST(Approx, FiniteExceptionalPlaceIncludingInfinityConstraint) {
  auto c = Curve::p1(Field::prime(3));
  const FieldPtr k = c->field();
  ApproxProblem p;
  p.curve = c;
  p.x0 = c->p1_place(parse_poly(k, "t^2+1"));  // degree-2 exceptional place
  p.at.push_back(make_constraint(c, c->p1_place(parse_poly(k, "t")), parse_func(c, "2+t"), 2));
  p.at.push_back(make_constraint(c, c->infinity_place(), parse_func(c, "t"), 1));
  FuncElem f = strong_approx_solve(p);
  auto v = strong_approx_verify(f, p);
  EXPECT_TRUE(v.ok) << v.to_json().dump(2);

  // and with a pole demanded at infinity through the target
  ApproxProblem p2;
  p2.curve = c;
  p2.x0 = c->p1_place(parse_poly(k, "t+1"));
  p2.at.push_back(make_constraint(c, c->infinity_place(), parse_func(c, "t^2+2*t"), -1));
  p2.at.push_back(make_constraint(c, c->p1_place(parse_poly(k, "t")), parse_func(c, "1"), 2));
  FuncElem f2 = strong_approx_solve(p2);
  EXPECT_TRUE(strong_approx_verify(f2, p2).ok);
}

TEST(Approx, SolutionCoset) {
  auto c = Curve::p1(Field::prime(5));
  auto rng = SeedSplitter(405).stream("approx-coset");
  for (int trial = 0; trial < 20; ++trial) {
    FuncElem G = FuncElem::one(c);
    ApproxProblem p = random_problem(c, rng, &G);
    FuncElem f1 = strong_approx_solve(p, 0);
    FuncElem f2 = strong_approx_solve(p, 1000 + trial);
    EXPECT_TRUE(strong_approx_verify(f2, p).ok);
    FuncElem diff = f1 - f2;
    if (diff.is_zero()) continue;
    // difference vanishes to the required order at constrained places and
    // has poles only at x0 (or constrained places, absorbed by the targets)
    for (const auto& con : p.at)
      EXPECT_GE(valuation(diff, con.place), con.order);
    Divisor d = divisor_of(diff);
    for (const auto& [x, n] : d.entries()) {
      if (n >= 0) continue;
      bool allowed = x->compare(*p.x0) == 0;
      for (const auto& con : p.at) allowed = allowed || x->compare(*con.place) == 0;
      EXPECT_TRUE(allowed) << "stray pole at " << x->name();
    }
  }
}

TEST(Approx, MobiusConjugationInvariance) {
  auto c = Curve::p1(Field::prime(5));
  const FieldPtr k = c->field();
  auto rng = SeedSplitter(406).stream("approx-mobius");
  // tau(t) = 1/(t - 2), tau_inv(t) = 2 + 1/t = (2t+1)/t
  RatFun tau = parse_ratfun(k, "1/(t-2)");
  RatFun tau_inv = parse_ratfun(k, "(2*t+1)/t");
  for (int trial = 0; trial < 10; ++trial) {
    FuncElem G = FuncElem::one(c);
    ApproxProblem p = random_problem(c, rng, &G);

    // pull the whole problem back through tau: a place pi of the original
    // becomes the place under pi(tau(t)), and infinity moves accordingly
    auto move_place = [&](const PlacePtr& x) -> PlacePtr {
      FuncElem probe = x->kind == Place::Kind::P1Infinity
                           ? FuncElem::from_rat(c, RatFun::one(k) / RatFun::variable(k))
                           : FuncElem::from_rat(c, RatFun(x->pi));
      FuncElem moved = mobius_apply(probe, tau);
      Divisor d = divisor_of(moved);
      for (const auto& [y, n] : d.entries())
        if (n > 0) return y;
      throw error("mobius test: no zero place");
    };
    ApproxProblem pt;
    pt.curve = c;
    pt.x0 = move_place(p.x0);
    bool degenerate = false;
    for (const auto& con : p.at) {
      PlacePtr moved = move_place(con.place);
      if (moved->compare(*pt.x0) == 0 || moved->deg != con.place->deg) {
        degenerate = true;
        break;
      }
      pt.at.push_back(make_constraint(c, moved, mobius_apply(G, tau), con.order));
    }
    if (degenerate) continue;
    // constraints built from zero targets do not transport through G
    bool has_zero_target = false;
    for (std::size_t i = 0; i < p.at.size(); ++i)
      if (p.at[i].target.val() >= p.at[i].order) has_zero_target = true;
    if (has_zero_target) continue;

    FuncElem ft = strong_approx_solve(pt);
    EXPECT_TRUE(strong_approx_verify(ft, pt).ok);
    FuncElem pulled = mobius_apply(ft, tau_inv);
    auto v = strong_approx_verify(pulled, p);
    EXPECT_TRUE(v.ok) << v.to_json().dump(2);
  }
}
