#include <catch2/catch_amalgamated.hpp>

#include "qtor/cyclotomic.hpp"

using namespace qtor;

TEST_CASE("euler phi") {
  REQUIRE(euler_phi(1) == 1);
  REQUIRE(euler_phi(2) == 1);
  REQUIRE(euler_phi(3) == 2);
  REQUIRE(euler_phi(4) == 2);
  REQUIRE(euler_phi(6) == 2);
  REQUIRE(euler_phi(8) == 4);
  REQUIRE(euler_phi(12) == 4);
  REQUIRE(euler_phi(30) == 8);
  REQUIRE_THROWS_AS(euler_phi(0), std::invalid_argument);
}

TEST_CASE("minimal polynomials of roots of unity") {
  auto coeffs = [](long m) {
    std::vector<long> out;
    for (const auto& c : qtor::detail::cyclotomic_polynomial(m)) out.push_back(c.get_si());
    return out;
  };
  REQUIRE(coeffs(1) == std::vector<long>{-1, 1});
  REQUIRE(coeffs(2) == std::vector<long>{1, 1});
  REQUIRE(coeffs(3) == std::vector<long>{1, 1, 1});
  REQUIRE(coeffs(4) == std::vector<long>{1, 0, 1});
  REQUIRE(coeffs(6) == std::vector<long>{1, -1, 1});
  REQUIRE(coeffs(12) == std::vector<long>{1, 0, -1, 0, 1});
}

TEST_CASE("roots of unity have the stated order") {
  for (long m : {1L, 2L, 3L, 4L, 5L, 6L, 8L, 12L}) {
    Cyclotomic z = Cyclotomic::root_of_unity(m, 1);
    REQUIRE(z.pow(m).is_one());
    for (long j = 1; j < m; ++j) {
      CAPTURE(m, j);
      REQUIRE_FALSE(z.pow(j).is_one());
    }
  }
}

TEST_CASE("sum of all m-th roots of unity vanishes") {
  for (long m : {2L, 3L, 4L, 6L, 8L, 12L}) {
    Cyclotomic sum = Cyclotomic::zero(m);
    for (long k = 0; k < m; ++k) sum = sum + Cyclotomic::root_of_unity(m, k);
    CAPTURE(m);
    REQUIRE(sum.is_zero());
  }
}

TEST_CASE("primitive cube roots sum to minus one") {
  Cyclotomic z = Cyclotomic::root_of_unity(3, 1);
  Cyclotomic sum = z + z * z;
  REQUIRE(sum == Cyclotomic::from_rational(3, -1));
}

TEST_CASE("square of the primitive sixth root") {
  Cyclotomic z = Cyclotomic::root_of_unity(6, 1);
  Cyclotomic sq = z * z;
  // z^2 = z - 1 in the power basis.
  REQUIRE(sq.coeffs() == std::vector<Rational>{Rational(-1), Rational(1)});
  REQUIRE(sq == z - Cyclotomic::one(6));
}

TEST_CASE("inverse of one plus i") {
  Cyclotomic i = Cyclotomic::root_of_unity(4, 1);
  Cyclotomic a = Cyclotomic::one(4) + i;
  Cyclotomic inv = a.inverse();
  REQUIRE(inv.coeffs() == std::vector<Rational>{Rational(1, 2), Rational(-1, 2)});
  REQUIRE((a * inv).is_one());
}

TEST_CASE("inverses of denser elements") {
  Cyclotomic z = Cyclotomic::root_of_unity(12, 1);
  Cyclotomic a = Cyclotomic::from_rational(12, 2) + z - Rational(1, 3) * z.pow(3);
  REQUIRE((a * a.inverse()).is_one());
  Cyclotomic b = Cyclotomic::root_of_unity(8, 3) - Cyclotomic::from_rational(8, Rational(5, 7));
  REQUIRE((b.inverse() * b).is_one());
  REQUIRE_THROWS_AS(Cyclotomic::zero(8).inverse(), std::domain_error);
}

TEST_CASE("negative powers") {
  Cyclotomic z = Cyclotomic::root_of_unity(5, 1);
  REQUIRE(z.pow(-3) == z.pow(2));
  REQUIRE(z.pow(0).is_one());
  REQUIRE((z.pow(-1) * z).is_one());
}

TEST_CASE("changing the ambient root order") {
  // z_3 viewed at order 6 is z_6^2; its minimal relation x^2 + x + 1 = 0 still holds.
  Cyclotomic z3 = Cyclotomic::root_of_unity(3, 1);
  Cyclotomic lifted = z3.rescale_order(6);
  REQUIRE(lifted.coeffs() == std::vector<Rational>{Rational(-1), Rational(1)});
  REQUIRE(lifted == Cyclotomic::root_of_unity(6, 2));
  REQUIRE((lifted * lifted + lifted + Cyclotomic::one(6)).is_zero());

  // Rescaling respects products across a shared order.
  Cyclotomic z4 = Cyclotomic::root_of_unity(4, 1);
  Cyclotomic a = z3, b = z4;
  align_orders(a, b);
  REQUIRE(a.order() == 12);
  REQUIRE(a * b == Cyclotomic::root_of_unity(12, 7));

  REQUIRE_THROWS_AS(z4.rescale_order(6), std::invalid_argument);
}

TEST_CASE("rational predicates and extraction") {
  Cyclotomic q = Cyclotomic::from_rational(4, Rational(3, 2));
  REQUIRE(q.is_rational());
  REQUIRE(q.rational_value() == Rational(3, 2));
  Cyclotomic i = Cyclotomic::root_of_unity(4, 1);
  REQUIRE_FALSE(i.is_rational());
  REQUIRE_THROWS_AS(i.rational_value(), std::domain_error);
  REQUIRE((i * i).is_rational());
  REQUIRE((i * i).rational_value() == -1);
  REQUIRE(Cyclotomic::zero(4).is_zero());
  REQUIRE_FALSE(Cyclotomic::zero(4).is_one());
  REQUIRE(Cyclotomic::one(4).is_one());
}

TEST_CASE("order mismatch is rejected") {
  Cyclotomic a = Cyclotomic::one(3), b = Cyclotomic::one(4);
  REQUIRE_THROWS_AS(a + b, std::invalid_argument);
  REQUIRE_THROWS_AS(a * b, std::invalid_argument);
  REQUIRE_THROWS_AS(a == b, std::invalid_argument);
}

TEST_CASE("printing") {
  REQUIRE(Cyclotomic::one(4).to_string() == "1");
  REQUIRE(Cyclotomic::zero(4).to_string() == "0");
  Cyclotomic i = Cyclotomic::root_of_unity(4, 1);
  REQUIRE((i - Cyclotomic::one(4)).to_string() == "-1 + z");
  REQUIRE((Rational(-1, 2) * i).to_string() == "-1/2*z");
}
