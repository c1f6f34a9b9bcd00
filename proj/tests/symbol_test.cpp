#include "idelic/symbol.hpp"

#include <gtest/gtest.h>

using namespace idelic;

namespace {
struct P1F5 {
  CurvePtr c = Curve::p1(Field::prime(5));
  FieldPtr k = c->field();
  PlacePtr pt = c->p1_place(parse_poly(k, "t"));
};

Idele rand_idele(const CurvePtr& c, unsigned B, std::mt19937_64& rng) {
  const FieldPtr k = c->field();
  auto rand_poly = [&](int dmax) {
    for (;;) {
      std::vector<FF> cc;
      for (int i = 0; i <= dmax; ++i) cc.push_back(k->element(rand_below(rng, k->order())));
      Poly p(k, cc);
      if (!p.is_zero()) return p;
    }
  };
  FuncElem f = c->is_elliptic()
                   ? FuncElem::xy(c, RatFun(rand_poly(1), rand_poly(1)),
                                  rand_below(rng, 2) ? RatFun(rand_poly(1), rand_poly(0))
                                                     : RatFun::zero(k))
                   : FuncElem::from_rat(c, RatFun(rand_poly(2), rand_poly(2)));
  if (f.is_zero()) f = FuncElem::one(c);
  Idele a = Idele::diagonal(f, B);
  auto places = c->places_up_to(B);
  const std::size_t count = rand_below(rng, 3);
  for (std::size_t i = 0; i < count; ++i) {
    const PlacePtr& x = places[rand_below(rng, places.size())];
    const unsigned prec = 1 + static_cast<unsigned>(rand_below(rng, 3));
    std::vector<FF> cc(prec, x->residue->zero());
    cc[0] = x->residue->element(1 + rand_below(rng, x->residue->order() - 1));
    for (unsigned j = 1; j < prec; ++j)
      cc[j] = x->residue->element(rand_below(rng, x->residue->order()));
    long val = static_cast<long>(rand_below(rng, 5)) - 2;
    a = a.with_local(x, LaurentJet(x, val, std::move(cc)));
  }
  return a;
}
}  // namespace

TEST(LocalSymbol, HandValues) {
  P1F5 f;
  LaurentJet t_jet = LaurentJet::monomial(f.pt, 1);
  EXPECT_EQ(local_symbol(t_jet, t_jet).value(), f.k->from_int(4));

  LaurentJet u2(f.pt, 0, {f.k->from_int(2)});
  LaurentJet u3(f.pt, 0, {f.k->from_int(3)});
  EXPECT_TRUE(local_symbol(u2, u3).is_one());

  LaurentJet two_t(f.pt, 1, {f.k->from_int(2)});
  EXPECT_EQ(local_symbol(t_jet, two_t).value(), f.k->from_int(2));

  // <t^2+1, t+1> at (t^2+1) over F_3
  auto c3 = Curve::p1(Field::prime(3));
  auto pl = c3->p1_place(parse_poly(c3->field(), "t^2+1"));
  LaurentJet a = expand_at(parse_func(c3, "t^2+1"), pl, 1);
  LaurentJet b = expand_at(parse_func(c3, "t+1"), pl, 1);
  EXPECT_EQ(local_symbol(a, b).value(), c3->field()->from_int(2));
}

TEST(LocalSymbol, DependsOnlyOnLeadingData) {
  P1F5 f;
  auto rng = SeedSplitter(3).stream("local-symbol-tails");
  for (int trial = 0; trial < 50; ++trial) {
    auto rand_jet = [&](unsigned prec) {
      std::vector<FF> cc(prec, f.k->zero());
      cc[0] = f.k->element(1 + rand_below(rng, 4));
      for (unsigned i = 1; i < prec; ++i) cc[i] = f.k->element(rand_below(rng, 5));
      return LaurentJet(f.pt, static_cast<long>(rand_below(rng, 5)) - 2, std::move(cc));
    };
    LaurentJet a = rand_jet(3), b = rand_jet(3);
    EXPECT_EQ(local_symbol(a, b), local_symbol(a.truncated(1), b.truncated(1)));
    // invariance under multiplying by 1 + m-hat elements
    std::vector<FF> unit_tail{f.k->one(), f.k->element(rand_below(rng, 5)),
                              f.k->element(rand_below(rng, 5))};
    LaurentJet u(f.pt, 0, std::move(unit_tail));
    EXPECT_EQ(local_symbol(a * u, b), local_symbol(a, b));
    EXPECT_EQ(local_symbol(a, b * u), local_symbol(a, b));
  }
}

TEST(LocalSymbol, AntisymmetryExhaustiveSmall) {
  // all (valuation, leading coefficient) pairs with |v| <= 2 over residue
  // fields with q^d <= 9
  for (auto [q, maxdeg] : {std::pair<std::uint64_t, unsigned>{2, 3}, {3, 2}}) {
    auto c = Curve::p1(Field::prime(q));
    for (const auto& pl : c->places_up_to(maxdeg)) {
      const auto R = pl->residue;
      for (long m = -2; m <= 2; ++m)
        for (long n = -2; n <= 2; ++n)
          for (std::uint64_t ci = 1; ci < R->order(); ++ci)
            for (std::uint64_t di = 1; di < R->order(); ++di) {
              LaurentJet a(pl, m, {R->element(ci)});
              LaurentJet b(pl, n, {R->element(di)});
              EXPECT_TRUE((local_symbol(a, b) * local_symbol(b, a)).is_one());
            }
    }
  }
}

TEST(GlobalPairing, HandValues) {
  P1F5 f;
  // residue 2 at (t) against diag(t): only (t) contributes N(2)^1
  Idele a = Idele::identity(f.c, 3).with_local(f.pt, LaurentJet(f.pt, 0, {f.k->from_int(2)}));
  Idele b = Idele::diagonal(parse_func(f.c, "t"));
  EXPECT_EQ(global_pairing(a, b).value(), f.k->from_int(2));

  // Weil reciprocity on diagonals
  Idele d1 = Idele::diagonal(parse_func(f.c, "(t+1)/(t^2+2)"));
  Idele d2 = Idele::diagonal(parse_func(f.c, "(t^2+3*t)/(2*t+1)"));
  EXPECT_TRUE(global_pairing(d1, d2).is_one());

  // <alpha, alpha> = 1 on I^1
  auto rng = SeedSplitter(11).stream("i1-self");
  for (int trial = 0; trial < 40; ++trial) {
    Idele x = rand_idele(f.c, 2, rng);
    if (!x.in_I1()) continue;
    EXPECT_TRUE(global_pairing_unchecked(x, x).is_one());
  }
}

TEST(GlobalPairing, ConstantsSeeDegree) {
  P1F5 f;
  FF cgen = f.k->generator();
  Idele dc = Idele::diagonal(FuncElem::constant(f.c, cgen));
  auto rng = SeedSplitter(12).stream("const-pairing");
  for (int trial = 0; trial < 30; ++trial) {
    Idele b = rand_idele(f.c, 2, rng);
    long deg = b.degree();
    EXPECT_EQ(global_pairing_unchecked(dc, b).value(), cgen.pow(deg));
    EXPECT_EQ(global_pairing_unchecked(b, dc).value(), cgen.pow(-deg));
  }
}

TEST(GlobalPairing, BarReductionInvariance) {
  P1F5 f;
  auto rng = SeedSplitter(13).stream("bar-invariance");
  for (int trial = 0; trial < 30; ++trial) {
    Idele a = rand_idele(f.c, 2, rng);
    Idele b = rand_idele(f.c, 2, rng);
    EXPECT_EQ(global_pairing_unchecked(a, b), global_pairing_unchecked(a.bar_reduced(), b));
    EXPECT_EQ(global_pairing_unchecked(a, b), global_pairing_unchecked(a, b.bar_reduced()));
  }
}

TEST(GlobalPairing, Bimultiplicative) {
  P1F5 f;
  auto rng = SeedSplitter(14).stream("bimult");
  for (int trial = 0; trial < 25; ++trial) {
    Idele a = rand_idele(f.c, 2, rng), b = rand_idele(f.c, 2, rng), c = rand_idele(f.c, 2, rng);
    EXPECT_EQ(global_pairing_unchecked(a * b, c),
              global_pairing_unchecked(a, c) * global_pairing_unchecked(b, c));
  }
}

TEST(GlobalPairing, WindowEscapeRefused) {
  P1F5 f;
  Idele a = Idele::identity(f.c, 1);
  Idele b = Idele::diagonal(parse_func(f.c, "t^2+2"), 2);  // support at degree 2
  EXPECT_THROW(global_pairing(a, b), window_escape);
  EXPECT_NO_THROW(global_pairing_unchecked(a, b));
}

TEST(WeilCheck, HandExample) {
  P1F5 f;
  WeilReport rep = weil_check(parse_func(f.c, "t"), parse_func(f.c, "1-t"));
  EXPECT_TRUE(rep.ok);
  ASSERT_EQ(rep.rows.size(), 3u);
  for (const auto& row : rep.rows) EXPECT_TRUE(row.value.is_one()) << row.place->name();
}

TEST(WeilCheck, ConstantsAndElliptic) {
  P1F5 f;
  EXPECT_TRUE(weil_check(parse_func(f.c, "3"), parse_func(f.c, "2")).ok);
  EXPECT_TRUE(weil_check(parse_func(f.c, "3"), parse_func(f.c, "2")).rows.empty());

  auto k = Field::prime(5);
  auto e = Curve::elliptic(k, k->one(), k->zero());
  EXPECT_TRUE(weil_check(FuncElem::y_coord(e), FuncElem::coordinate(e)).ok);
}

TEST(WeilCheck, SeededReciprocity) {
  auto rng = SeedSplitter(21).stream("weil-seeded");
  for (std::uint64_t q : {2, 3, 5}) {
    auto c = Curve::p1(Field::prime(q));
    const FieldPtr k = c->field();
    for (int trial = 0; trial < 40; ++trial) {
      auto rand_nz = [&](int dmax) {
        for (;;) {
          std::vector<FF> cc;
          for (int i = 0; i <= dmax; ++i) cc.push_back(k->element(rand_below(rng, k->order())));
          Poly p(k, cc);
          if (!p.is_zero()) return p;
        }
      };
      FuncElem f = FuncElem::from_rat(c, RatFun(rand_nz(3), rand_nz(3)));
      FuncElem g = FuncElem::from_rat(c, RatFun(rand_nz(3), rand_nz(3)));
      EXPECT_TRUE(weil_check(f, g).ok);
    }
  }
}

TEST(Axioms, SeededTriplesPass) {
  for (std::uint64_t q : {3, 5}) {
    auto c = Curve::p1(Field::prime(q));
    auto rng = SeedSplitter(100 + q).stream("axioms");
    for (int trial = 0; trial < 30; ++trial) {
      Idele a = rand_idele(c, 2, rng), b = rand_idele(c, 2, rng), g = rand_idele(c, 2, rng);
      for (const auto& r : axiom_suite(a, b, g))
        EXPECT_TRUE(r.ok()) << r.name << ": " << r.witness;
    }
  }
}

TEST(Axioms, CharTwoSelfPairingTrivial) {
  auto c = Curve::p1(Field::prime(2));
  auto rng = SeedSplitter(77).stream("char2");
  for (int trial = 0; trial < 20; ++trial) {
    Idele a = rand_idele(c, 2, rng);
    EXPECT_TRUE(global_pairing_unchecked(a, a).is_one());
    EXPECT_TRUE(
        global_pairing_unchecked(a, Idele::diagonal(FuncElem::constant(c, c->field()->one())))
            .is_one());
  }
}

TEST(Constancy, PairingLocallyConstant) {
  P1F5 f;
  auto rng = SeedSplitter(31).stream("constancy");
  auto places = f.c->places_up_to(2);
  for (int trial = 0; trial < 10; ++trial) {
    Idele a = rand_idele(f.c, 2, rng), b = rand_idele(f.c, 2, rng);
    // D covers both supports (poles included) and dominates the zero orders
    Divisor D;
    Divisor da = a.divisor(), db = b.divisor();
    std::vector<PlacePtr> cover;
    for (const auto& [x, n] : da.entries()) cover.push_back(x);
    for (const auto& [x, n] : db.entries()) cover.push_back(x);
    for (const auto& x : cover) {
      long want = std::max({1L, da.coeff(x) + 1, db.coeff(x) + 1});
      if (D.coeff(x) < want) D.add(x, want - D.coeff(x));
    }
    auto v = local_constancy_check(a, b, D, places, rng, 20);
    EXPECT_TRUE(v.ok) << v.first_failure;
  }
}
