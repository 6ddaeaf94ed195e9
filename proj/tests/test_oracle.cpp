#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "qtor/oracle.hpp"

using namespace qtor;

namespace {

TorusContext zeta2_ctx() { return TorusContext(SkewExponentMatrix(2, {{0, 1}, {1, 0}})); }
TorusContext zeta4_ctx() { return TorusContext(SkewExponentMatrix(4, {{0, -1}, {1, 0}})); }
TorusContext mixed_ctx() {
  return TorusContext(SkewExponentMatrix(4, {{0, -1, -2}, {1, 0, 0}, {2, 0, 0}}));
}

bool radical_degree(const TorusContext& ctx, const Degree& m) { return ctx.radical.contains(m); }

// The symbol <t_i, t^m t_i^{-1}> written as a tensor label: t^m t_i^{-1} =
// sigma(m, -e_i) t^{m - e_i}, so the label is u = e_i with that scalar.
std::map<Degree, Cyclotomic> basis_symbol_vector(const TorusContext& ctx, int i, const Degree& m) {
  Degree ei = unit_degree(ctx.dim(), i);
  return {{ei, sigma(ctx, m, degree_neg(ei))}};
}

}  // namespace

TEST_CASE("quotient model reproduces the graded dimension pattern") {
  SECTION("order two, two variables, full window") {
    TorusContext ctx = zeta2_ctx();
    auto dims = hc1_bruteforce_dims(ctx, 2);
    REQUIRE(dims.size() == 25);
    for (const auto& [m, dim] : dims) {
      CAPTURE(m);
      if (is_zero_degree(m))
        REQUIRE(dim == 2);
      else if (radical_degree(ctx, m))
        REQUIRE(dim == 1);
      else
        REQUIRE(dim == 0);
    }
  }
  SECTION("order four, two variables, spot degrees at radius four") {
    TorusContext ctx = zeta4_ctx();
    REQUIRE(HC1BruteForce(ctx, 4, {0, 0}).dimension() == 2);
    REQUIRE(HC1BruteForce(ctx, 4, {4, 0}).dimension() == 1);
    REQUIRE(HC1BruteForce(ctx, 4, {0, 4}).dimension() == 1);
    REQUIRE(HC1BruteForce(ctx, 4, {4, 4}).dimension() == 1);
    REQUIRE(HC1BruteForce(ctx, 4, {1, 0}).dimension() == 0);
    REQUIRE(HC1BruteForce(ctx, 4, {2, 0}).dimension() == 0);
  }
  SECTION("three variables, spot degrees") {
    TorusContext ctx = mixed_ctx();
    REQUIRE(HC1BruteForce(ctx, 2, {0, 0, 0}).dimension() == 3);
    REQUIRE(HC1BruteForce(ctx, 2, {0, 2, 1}).dimension() == 2);
    REQUIRE(HC1BruteForce(ctx, 2, {0, 0, 2}).dimension() == 2);
    REQUIRE(HC1BruteForce(ctx, 2, {0, 2, 0}).dimension() == 0);
    REQUIRE(HC1BruteForce(ctx, 2, {1, 0, 0}).dimension() == 0);
  }
}

TEST_CASE("elimination relation holds in the quotient model") {
  // sum_i m_i <t_i, t^m t_i^{-1}> must lie in the quotient span at every
  // radical degree m; this licenses the canonical-basis reduction.
  struct Case {
    TorusContext ctx;
    std::vector<Degree> degrees;
  };
  std::vector<Case> cases;
  cases.push_back({zeta2_ctx(), {{2, 0}, {0, 2}, {2, 2}, {-2, 2}, {2, -4}}});
  cases.push_back({zeta4_ctx(), {{4, 0}, {0, 4}, {4, 4}, {-4, 4}}});
  cases.push_back({mixed_ctx(), {{0, 2, 1}, {0, 0, 2}, {0, -2, 1}, {0, 2, -3}}});

  for (const auto& [ctx, degrees] : cases) {
    for (const Degree& m : degrees) {
      CAPTURE(m);
      REQUIRE(radical_degree(ctx, m));
      Int radius = 0;
      for (Int x : m) radius = std::max(radius, x < 0 ? -x : x);
      HC1BruteForce model(ctx, radius, m);
      std::map<Degree, Cyclotomic> relation;
      for (int i = 0; i < ctx.dim(); ++i) {
        if (m[i] == 0) continue;
        auto sym = basis_symbol_vector(ctx, i, m);
        for (const auto& [u, c] : sym)
          relation[u] = (relation.count(u) ? relation[u] : Cyclotomic::zero(ctx.order())) +
                        Rational(static_cast<long>(m[i])) * c;
      }
      REQUIRE(model.in_j_span(relation));
      // <t^m, 1> also dies in the quotient.
      REQUIRE(model.in_j_span({{m, Cyclotomic::one(ctx.order())}}));
    }
  }
}

TEST_CASE("quotient model separates the surviving basis symbols") {
  TorusContext ctx = zeta2_ctx();
  Degree m{2, 0};
  HC1BruteForce model(ctx, 2, m);
  // With m = (2,0) the relation reads 2*B_0 = 0, so B_0 collapses but B_1 survives.
  REQUIRE(model.in_j_span(basis_symbol_vector(ctx, 0, m)));
  REQUIRE_FALSE(model.in_j_span(basis_symbol_vector(ctx, 1, m)));
  // At m = (2,2) the relation ties the two generators together instead.
  Degree m2{2, 2};
  HC1BruteForce model2(ctx, 2, m2);
  REQUIRE_FALSE(model2.in_j_span(basis_symbol_vector(ctx, 0, m2)));
  REQUIRE_FALSE(model2.in_j_span(basis_symbol_vector(ctx, 1, m2)));
  std::map<Degree, Cyclotomic> combined = basis_symbol_vector(ctx, 0, m2);
  for (const auto& [u, c] : basis_symbol_vector(ctx, 1, m2))
    combined[u] = (combined.count(u) ? combined[u] : Cyclotomic::zero(2)) + c;
  REQUIRE(model2.in_j_span(combined));
}

TEST_CASE("exhaustive identity checks pass on the reference contexts") {
  TorusContext ctx = zeta4_ctx();
  for (const std::string& tag : identity_tags()) {
    IdentityReport rep = exhaustive_identity_check(ctx, tag, 2);
    CAPTURE(tag, rep.violations);
    REQUIRE(rep.ok());
    REQUIRE(rep.identity == tag);
    REQUIRE(rep.box == 2);
  }
  REQUIRE(exhaustive_identity_check(ctx, "f-skew", 2).tuples_checked == 625);
  REQUIRE(exhaustive_identity_check(ctx, "sigma-right-additive", 2).tuples_checked == 15625);
  REQUIRE(exhaustive_identity_check(ctx, "f-multiple", 2).tuples_checked == 125);

  TorusContext mctx = mixed_ctx();
  REQUIRE(exhaustive_identity_check(mctx, "f-skew", 1).ok());
  REQUIRE(exhaustive_identity_check(mctx, "commutation", 1).ok());

  REQUIRE_THROWS_AS(exhaustive_identity_check(ctx, "no-such-identity", 2), std::invalid_argument);
}

TEST_CASE("homomorphism checker accepts identities and flags frauds") {
  std::vector<int> sample{-3, -1, 0, 1, 2, 5};
  std::function<int(const int&)> ident = [](const int& x) { return x; };
  std::function<int(const int&, const int&)> add = [](const int& x, const int& y) { return x + y; };
  std::function<bool(const int&, const int&)> eq = [](const int& x, const int& y) { return x == y; };

  HomReport good = hom_check<int, int>("identity", sample, ident, add, add, eq);
  REQUIRE(good.ok());
  REQUIRE(good.pairs_checked == 36);

  std::function<int(const int&)> square = [](const int& x) { return x * x; };
  HomReport bad = hom_check<int, int>("square-vs-add", sample, square, add, add, eq);
  REQUIRE_FALSE(bad.ok());
}
