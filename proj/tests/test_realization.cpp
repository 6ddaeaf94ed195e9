#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <set>
#include <vector>

#include "qtor/oracle.hpp"
#include "qtor/realization.hpp"

using namespace qtor;

namespace {

SkewExponentMatrix k2_matrix() { return SkewExponentMatrix(2, {{0, 1}, {1, 0}}); }
SkewExponentMatrix k3_matrix() { return SkewExponentMatrix(3, {{0, 2}, {1, 0}}); }

Cyclotomic one_of(const ClockShiftRealization& r) { return Cyclotomic::one(r.torus().order()); }

// Dense rank over the cyclotomic field, for small spans.
int dense_rank(std::vector<std::vector<Cyclotomic>> rows) {
  int rank = 0;
  size_t cols = rows.empty() ? 0 : rows[0].size();
  for (size_t col = 0; col < cols; ++col) {
    size_t pivot = rows.size();
    for (size_t i = rank; i < rows.size(); ++i)
      if (!rows[i][col].is_zero()) {
        pivot = i;
        break;
      }
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    Cyclotomic inv = rows[rank][col].inverse();
    for (auto& v : rows[rank]) v = inv * v;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == rank || rows[i][col].is_zero()) continue;
      Cyclotomic f = rows[i][col];
      for (size_t j = 0; j < cols; ++j) rows[i][j] = rows[i][j] - f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

std::vector<Cyclotomic> flatten(const CycMatrix& m) {
  std::vector<Cyclotomic> out;
  for (const auto& row : m)
    for (const auto& v : row) out.push_back(v);
  return out;
}

}  // namespace

TEST_CASE("clock and shift generators") {
  SECTION("order two block") {
    ClockShiftRealization r = build_realization(k2_matrix());
    REQUIRE(r.matrix_size() == 2);
    auto one = Cyclotomic::one(2), zero = Cyclotomic::zero(2);
    CycMatrix clock{{one, zero}, {zero, -one}};
    CycMatrix shift{{zero, one}, {one, zero}};
    REQUIRE(ClockShiftRealization::toroidal_eq(r.clock(0), clock));
    REQUIRE(ClockShiftRealization::toroidal_eq(r.shift(0), shift));
    // X1 X2 = -X2 X1 for a primitive square root of unity.
    REQUIRE(ClockShiftRealization::toroidal_eq(
        cyc_mul(r.clock(0), r.shift(0)), cyc_scale(-one, cyc_mul(r.shift(0), r.clock(0)))));
  }
  SECTION("order three block") {
    ClockShiftRealization r = build_realization(k3_matrix());
    REQUIRE(r.matrix_size() == 3);
    Cyclotomic z3 = Cyclotomic::root_of_unity(3, 1);
    REQUIRE(r.clock(0)[0][0] == Cyclotomic::one(3));
    REQUIRE(r.clock(0)[1][1] == z3);
    REQUIRE(r.clock(0)[2][2] == z3 * z3);
    CycMatrix c3 = cyc_mul(r.clock(0), cyc_mul(r.clock(0), r.clock(0)));
    CycMatrix s3 = cyc_mul(r.shift(0), cyc_mul(r.shift(0), r.shift(0)));
    CycMatrix id = cyc_mul(r.monomial({0, 0}), r.monomial({0, 0}));
    REQUIRE(ClockShiftRealization::toroidal_eq(c3, id));
    REQUIRE(ClockShiftRealization::toroidal_eq(s3, id));
    // The exchange relation carries the primitive root on the shift-first side.
    REQUIRE(ClockShiftRealization::toroidal_eq(
        cyc_mul(r.shift(0), r.clock(0)), cyc_scale(z3, cyc_mul(r.clock(0), r.shift(0)))));
  }
  SECTION("blockless matrix gives the scalar realization") {
    SkewExponentMatrix q(2, {{0, 0}, {0, 0}});
    ClockShiftRealization r = build_realization(q);
    REQUIRE(r.matrix_size() == 1);
    REQUIRE(r.z() == 0);
    REQUIRE(r.monomial({5, -3})[0][0] == Cyclotomic::one(2));
    REQUIRE(r.gamma().size == 1);
  }
  SECTION("non-normal-form input is rejected") {
    SkewExponentMatrix q(4, {{0, 1, 1, 0}, {3, 0, 0, 0}, {3, 0, 0, 0}, {0, 0, 0, 0}});
    REQUIRE_FALSE(parse_simple_form(q).has_value());
    REQUIRE_THROWS_AS(build_realization(q), std::invalid_argument);
  }
}

TEST_CASE("radical monomials collapse to the identity") {
  for (const auto& q : {k2_matrix(), k3_matrix()}) {
    ClockShiftRealization r = build_realization(q);
    long m = r.torus().order();
    for (const Degree& xi : xi_basis(q))
      REQUIRE(ClockShiftRealization::toroidal_eq(r.monomial(xi),
                                                 detail::cyc_identity(r.matrix_size(), m)));
  }
  // Two blocks, orders (2, 2): N = 4.
  SkewExponentMatrix q(2, {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  ClockShiftRealization r = build_realization(q);
  REQUIRE(r.matrix_size() == 4);
  REQUIRE(r.gamma().size == 16);
  for (const Degree& xi : xi_basis(q))
    REQUIRE(ClockShiftRealization::toroidal_eq(r.monomial(xi),
                                               detail::cyc_identity(4, 2)));
}

TEST_CASE("residue normal form") {
  ClockShiftRealization r = build_realization(k3_matrix());
  const GammaGroup& g = r.gamma();
  REQUIRE(g.residue({4, -1}) == Degree{1, 2});
  REQUIRE(g.residue({3, 3}) == Degree{0, 0});
  REQUIRE(g.residue(g.residue({-7, 11})) == g.residue({-7, 11}));
  for (const Degree& xi : xi_basis(k3_matrix())) REQUIRE(g.residue(xi) == Degree{0, 0});
  REQUIRE(g.same_class({1, 2}, {4, -1}));
  REQUIRE_FALSE(g.same_class({1, 2}, {2, 1}));
  auto reps = g.coset_representatives();
  REQUIRE(reps.size() == 9);
  std::set<Degree> classes;
  for (const Degree& rep : reps) {
    for (Int v : rep) REQUIRE(v > 0);
    classes.insert(g.residue(rep));
  }
  REQUIRE(classes.size() == 9);
}

TEST_CASE("loop embedding is multiplicative against matrix products") {
  for (const auto& q : {k2_matrix(), k3_matrix()}) {
    ClockShiftRealization r = build_realization(q);
    TorusContext ctx = r.torus();
    auto box = degree_box(2, 2);
    long checked = 0;
    for (const Degree& a : box)
      for (const Degree& b : box) {
        TorusElement ta = torus_monomial(ctx, a), tb = torus_monomial(ctx, b);
        LoopElement lhs = loop_multiply(r, loop_hom(r, ta), loop_hom(r, tb));
        LoopElement rhs = loop_hom(r, multiply(ctx, ta, tb));
        if (!(lhs == rhs)) {
          CAPTURE(a, b);
          REQUIRE(lhs == rhs);
        }
        ++checked;
      }
    REQUIRE(checked == 625);
  }
}

TEST_CASE("loop embedding basics") {
  ClockShiftRealization r = build_realization(k2_matrix());
  TorusContext ctx = r.torus();
  LoopElement unit = loop_hom(r, torus_one(ctx));
  REQUIRE(unit.terms.size() == 1);
  REQUIRE(unit.terms.at(Degree{0, 0}) == one_of(r));
  // Distinct degrees stay distinct: the embedding is injective degreewise.
  TorusElement u = torus_monomial(ctx, {1, 0}) + torus_monomial(ctx, {0, 1});
  REQUIRE(loop_hom(r, u).terms.size() == 2);
  // A radical degree maps to the identity matrix line.
  LoopElement xi = loop_hom(r, torus_monomial(ctx, {2, 0}));
  REQUIRE(ClockShiftRealization::toroidal_eq(r.monomial({2, 0}), detail::cyc_identity(2, 2)));
  REQUIRE(xi.terms.count(Degree{2, 0}) == 1);
}

TEST_CASE("matrix quotient kills radical differences and spans the full algebra") {
  for (const auto& q : {k2_matrix(), k3_matrix()}) {
    ClockShiftRealization r = build_realization(q);
    TorusContext ctx = r.torus();
    long n = r.matrix_size();

    TorusElement one = torus_one(ctx);
    REQUIRE(ClockShiftRealization::toroidal_eq(
        quotient_to_matn(r, one), detail::cyc_identity(n, ctx.order())));

    for (const Degree& xi : xi_basis(q)) {
      for (const Degree& a : degree_box(2, 1)) {
        TorusElement diff =
            torus_monomial(ctx, degree_add(a, xi)) - torus_monomial(ctx, a);
        REQUIRE(is_zero_matrix(quotient_to_matn(r, diff)));
      }
    }

    std::vector<std::vector<Cyclotomic>> rows;
    for (const Degree& rep : r.gamma().coset_representatives())
      rows.push_back(flatten(quotient_to_matn(r, torus_monomial(ctx, rep))));
    REQUIRE(rows.size() == static_cast<size_t>(n * n));
    REQUIRE(dense_rank(rows) == n * n);
  }
}

TEST_CASE("direct sum loop model brackets transport through the component isomorphism") {
  for (const auto& q : {k2_matrix(), k3_matrix()}) {
    ClockShiftRealization r = build_realization(q);
    AlgebraContext ctx(r.torus(), 2);

    std::vector<DirectSumLoopElement> sample;
    for (int comp : {0, 1, -1}) {
      for (const Degree& a : degree_box(2, 1)) {
        if (comp == -1 && r.torus().radical.contains(a)) continue;
        DirectSumLoopElement x;
        add_direct_sum_term(x, r, comp, a, one_of(r));
        sample.push_back(x);
      }
    }

    std::function<ToroidalElement(const DirectSumLoopElement&)> phi =
        [&](const DirectSumLoopElement& x) { return prop61_iso(ctx, r, x); };
    std::function<DirectSumLoopElement(const DirectSumLoopElement&,
                                       const DirectSumLoopElement&)>
        dom_br = [&](const DirectSumLoopElement& x, const DirectSumLoopElement& y) {
          return direct_sum_bracket(r, x, y);
        };
    std::function<ToroidalElement(const ToroidalElement&, const ToroidalElement&)> img_br =
        [&](const ToroidalElement& x, const ToroidalElement& y) {
          return ell_bracket(ctx, x, y);
        };
    std::function<bool(const ToroidalElement&, const ToroidalElement&)> eq =
        [](const ToroidalElement& x, const ToroidalElement& y) { return x == y; };
    HomReport rep = hom_check<DirectSumLoopElement, ToroidalElement>(
        "component isomorphism", sample, phi, dom_br, img_br, eq);
    CAPTURE(rep.violations);
    REQUIRE(rep.ok());
    REQUIRE(rep.pairs_checked >= 625);
  }
}

TEST_CASE("direct sum components commute after transport") {
  ClockShiftRealization r = build_realization(k2_matrix());
  AlgebraContext ctx(r.torus(), 2);
  DirectSumLoopElement x0, x1, y;
  add_direct_sum_term(x0, r, 0, {1, 0}, one_of(r));
  add_direct_sum_term(x1, r, 1, {0, 1}, one_of(r));
  add_direct_sum_term(y, r, -1, {1, 0}, one_of(r));
  REQUIRE(direct_sum_bracket(r, x0, x1).is_zero());
  REQUIRE(direct_sum_bracket(r, x0, y).is_zero());
  REQUIRE(ell_bracket(ctx, prop61_iso(ctx, r, x0), prop61_iso(ctx, r, x1)).is_zero());
  REQUIRE(ell_bracket(ctx, prop61_iso(ctx, r, x0), prop61_iso(ctx, r, y)).is_zero());
  REQUIRE(ell_bracket(ctx, prop61_iso(ctx, r, x1), prop61_iso(ctx, r, y)).is_zero());
  // Same-component brackets do not vanish in general.
  DirectSumLoopElement x0b;
  add_direct_sum_term(x0b, r, 0, {0, 1}, one_of(r));
  REQUIRE_FALSE(direct_sum_bracket(r, x0, x0b).is_zero());
}

TEST_CASE("traceless component rejects radical degrees") {
  ClockShiftRealization r = build_realization(k2_matrix());
  DirectSumLoopElement x;
  REQUIRE_THROWS_AS(add_direct_sum_term(x, r, -1, {2, 0}, one_of(r)), std::invalid_argument);
  REQUIRE_THROWS_AS(add_direct_sum_term(x, r, -1, {0, 0}, one_of(r)), std::invalid_argument);
  add_direct_sum_term(x, r, 0, {2, 0}, one_of(r));  // full component accepts them
  REQUIRE_FALSE(x.is_zero());
}

TEST_CASE("component brackets match matrix commutators") {
  ClockShiftRealization r = build_realization(k3_matrix());
  TorusContext ctx = r.torus();
  for (const Degree& a : degree_box(2, 1))
    for (const Degree& b : degree_box(2, 1)) {
      CycMatrix comm = cyc_add(cyc_mul(r.monomial(a), r.monomial(b)),
                               cyc_scale(-Cyclotomic::one(3),
                                         cyc_mul(r.monomial(b), r.monomial(a))));
      auto scalar = detail::scalar_ratio(comm, r.monomial(degree_add(a, b)));
      REQUIRE(scalar.has_value());
      Cyclotomic expected = sigma(ctx, a, b) - sigma(ctx, b, a);
      REQUIRE(*scalar == expected);
    }
}

TEST_CASE("evaluation point powers") {
  ClockShiftRealization r = build_realization(k2_matrix());
  auto one = Cyclotomic::one(2);
  std::vector<Cyclotomic> ones{one, one};
  REQUIRE(xi_eval(r, ones) == ones);
  std::vector<Cyclotomic> flipped{-one, one};
  REQUIRE(xi_eval(r, flipped) == ones);  // squares erase the sign
  REQUIRE_FALSE(xi_distinct(r, flipped, ones));
  std::vector<Cyclotomic> doubled{one + one, one};
  REQUIRE(xi_eval(r, doubled)[0] == Cyclotomic::from_rational(2, Rational(4)));
  REQUIRE(xi_distinct(r, doubled, ones));
  std::vector<Cyclotomic> bad{Cyclotomic::zero(2), one};
  REQUIRE_THROWS_AS(xi_eval(r, bad), std::invalid_argument);
}
