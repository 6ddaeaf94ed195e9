#pragma once

#include <gmpxx.h>

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtor {

using Rational = mpq_class;

inline long euler_phi(long m) {
  if (m <= 0) throw std::invalid_argument("euler_phi: order must be positive");
  long result = m, n = m;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace detail {

// Monic integer coefficients of the m-th cyclotomic polynomial, low degree first.
// Phi_m = (x^m - 1) / prod_{d|m, d<m} Phi_d, by exact polynomial division.
inline const std::vector<mpz_class>& cyclotomic_polynomial(long m) {
  static std::map<long, std::vector<mpz_class>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);

  auto compute = [](long mm, auto&& self) -> const std::vector<mpz_class>& {
    auto it = cache.find(mm);
    if (it != cache.end()) return it->second;
    std::vector<mpz_class> num(mm + 1, 0);  // x^m - 1
    num[0] = -1;
    num[mm] = 1;
    for (long d = 1; d < mm; ++d) {
      if (mm % d != 0) continue;
      const std::vector<mpz_class>& div = self(d, self);
      // Exact division num /= div (div monic).
      long nd = static_cast<long>(num.size()) - 1;
      long dd = static_cast<long>(div.size()) - 1;
      std::vector<mpz_class> quot(nd - dd + 1, 0);
      for (long i = nd; i >= dd; --i) {
        mpz_class c = num[i];
        if (c == 0) continue;
        quot[i - dd] = c;
        for (long j = 0; j <= dd; ++j) num[i - dd + j] -= c * div[j];
      }
      for (const auto& r : num)
        if (r != 0) throw std::logic_error("cyclotomic_polynomial: non-exact division");
      num = std::move(quot);
    }
    return cache.emplace(mm, std::move(num)).first->second;
  };
  return compute(m, compute);
}

}  // namespace detail

// An element of Q(zeta_m) in the power basis 1, z, ..., z^{phi(m)-1} reduced
// modulo Phi_m, with exact rational coefficients. Immutable value semantics;
// arithmetic requires both operands to carry the same order m.
class Cyclotomic {
 public:
  Cyclotomic() : m_(1), c_(1, Rational(0)) {}

  static Cyclotomic zero(long m) { return Cyclotomic(m); }

  static Cyclotomic one(long m) {
    Cyclotomic x(m);
    x.c_[0] = 1;
    return x;
  }

  static Cyclotomic from_rational(long m, const Rational& q) {
    Cyclotomic x(m);
    x.c_[0] = q;
    x.c_[0].canonicalize();
    return x;
  }

  // zeta_m^k (k arbitrary integer).
  static Cyclotomic root_of_unity(long m, long k) {
    long e = ((k % m) + m) % m;
    long phi = euler_phi(m);
    Cyclotomic x(m);
    if (e < phi) {
      x.c_[e] = 1;
      return x;
    }
    std::vector<Rational> p(e + 1, Rational(0));
    p[e] = 1;
    x.c_ = reduce(m, std::move(p));
    return x;
  }

  static Cyclotomic from_coeffs(long m, std::vector<Rational> coeffs) {
    if (static_cast<long>(coeffs.size()) != euler_phi(m))
      throw std::invalid_argument("Cyclotomic: coefficient vector must have length phi(m)");
    Cyclotomic x(m);
    x.c_ = std::move(coeffs);
    return x;
  }

  long order() const { return m_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& q : c_)
      if (q != 0) return false;
    return true;
  }

  bool is_one() const {
    if (c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  Rational rational_value() const {
    if (!is_rational()) throw std::domain_error("Cyclotomic: not a rational value");
    return c_[0];
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    check_orders(a, b, "+");
    Cyclotomic out(a.m_);
    for (size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = a.c_[i] + b.c_[i];
    return out;
  }

  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    check_orders(a, b, "-");
    Cyclotomic out(a.m_);
    for (size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = a.c_[i] - b.c_[i];
    return out;
  }

  Cyclotomic operator-() const {
    Cyclotomic out(m_);
    for (size_t i = 0; i < c_.size(); ++i) out.c_[i] = -c_[i];
    return out;
  }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    check_orders(a, b, "*");
    size_t n = a.c_.size();
    std::vector<Rational> prod(2 * n - 1, Rational(0));
    for (size_t i = 0; i < n; ++i) {
      if (a.c_[i] == 0) continue;
      for (size_t j = 0; j < n; ++j) {
        if (b.c_[j] == 0) continue;
        prod[i + j] += a.c_[i] * b.c_[j];
      }
    }
    Cyclotomic out(a.m_);
    out.c_ = reduce(a.m_, std::move(prod));
    return out;
  }

  friend Cyclotomic operator*(const Rational& q, const Cyclotomic& a) {
    Cyclotomic out(a.m_);
    for (size_t i = 0; i < a.c_.size(); ++i) out.c_[i] = q * a.c_[i];
    return out;
  }

  Cyclotomic inverse() const {
    if (is_zero()) throw std::domain_error("Cyclotomic: division by zero");
    if (is_rational()) return from_rational(m_, Rational(1) / c_[0]);
    // Extended Euclid in Q[x] against Phi_m: s*this + t*Phi = gcd = const.
    const auto& phi_int = detail::cyclotomic_polynomial(m_);
    std::vector<Rational> r0(phi_int.size());
    for (size_t i = 0; i < phi_int.size(); ++i) r0[i] = Rational(phi_int[i]);
    std::vector<Rational> r1 = trimmed(c_);
    std::vector<Rational> s0{Rational(0)}, s1{Rational(1)};  // coeffs of `this`
    while (true) {
      auto [q, rem] = poly_divmod(r0, r1);
      if (rem.empty()) break;
      std::vector<Rational> s2 = poly_sub(s0, poly_mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (r1.size() != 1) throw std::logic_error("Cyclotomic: inverse gcd not constant");
    Rational g = r1[0];
    std::vector<Rational> inv = s1;
    for (auto& x : inv) x /= g;
    inv.resize(2 * c_.size(), Rational(0));
    Cyclotomic out(m_);
    out.c_ = reduce(m_, std::move(inv));
    return out;
  }

  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

  Cyclotomic pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclotomic acc = one(m_), base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    check_orders(a, b, "==");
    return a.c_ == b.c_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  // Re-express in Q(zeta_m2) for m | m2, via z_m = z_{m2}^{m2/m}.
  Cyclotomic rescale_order(long m2) const {
    if (m2 == m_) return *this;
    if (m2 % m_ != 0) throw std::invalid_argument("Cyclotomic: rescale target must be a multiple of the order");
    long step = m2 / m_;
    std::vector<Rational> p(static_cast<size_t>((c_.size() - 1) * step + 1), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) p[i * step] = c_[i];
    Cyclotomic out(m2);
    out.c_ = reduce(m2, std::move(p));
    return out;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      Rational q = c_[i];
      if (first) {
        if (q < 0) { os << "-"; q = -q; }
      } else {
        os << (q < 0 ? " - " : " + ");
        if (q < 0) q = -q;
      }
      first = false;
      bool unit_coeff = (q == 1) && i > 0;
      if (!unit_coeff) os << q.get_str();
      if (i > 0) {
        if (!unit_coeff) os << "*";
        os << "z";
        if (i > 1) os << "^" << i;
      }
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  explicit Cyclotomic(long m) : m_(m), c_(euler_phi(m), Rational(0)) {
    if (m <= 0) throw std::invalid_argument("Cyclotomic: order must be positive");
  }

  static void check_orders(const Cyclotomic& a, const Cyclotomic& b, const char* op) {
    if (a.m_ != b.m_)
      throw std::invalid_argument(std::string("Cyclotomic: order mismatch in '") + op +
                                  "' (" + std::to_string(a.m_) + " vs " + std::to_string(b.m_) + ")");
  }

  // Reduce a dense polynomial modulo Phi_m to length phi(m).
  static std::vector<Rational> reduce(long m, std::vector<Rational> p) {
    const auto& phi = detail::cyclotomic_polynomial(m);
    long d = static_cast<long>(phi.size()) - 1;  // = phi(m), monic
    for (long i = static_cast<long>(p.size()) - 1; i >= d; --i) {
      if (p[i] == 0) continue;
      Rational c = p[i];
      p[i] = 0;
      for (long j = 0; j < d; ++j)
        if (phi[j] != 0) p[i - d + j] -= c * Rational(phi[j]);
    }
    p.resize(d, Rational(0));
    return p;
  }

  static std::vector<Rational> trimmed(std::vector<Rational> p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
  }

  static std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return trimmed(std::move(out));
  }

  static std::vector<Rational> poly_sub(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> out = a;
    if (out.size() < b.size()) out.resize(b.size(), Rational(0));
    for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return trimmed(std::move(out));
  }

  static std::pair<std::vector<Rational>, std::vector<Rational>> poly_divmod(std::vector<Rational> num,
                                                                             const std::vector<Rational>& den) {
    if (den.empty()) throw std::domain_error("poly_divmod: division by zero polynomial");
    std::vector<Rational> quot(num.size() > den.size() - 1 ? num.size() - den.size() + 1 : 0, Rational(0));
    Rational lead = den.back();
    for (long i = static_cast<long>(num.size()) - 1; i >= static_cast<long>(den.size()) - 1; --i) {
      if (num[i] == 0) continue;
      Rational c = num[i] / lead;
      quot[i - (den.size() - 1)] = c;
      for (size_t j = 0; j < den.size(); ++j) num[i - (den.size() - 1) + j] -= c * den[j];
    }
    return {trimmed(std::move(quot)), trimmed(std::move(num))};
  }

  long m_;
  std::vector<Rational> c_;
};

// lcm helper for aligning scalar orders.
inline long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

inline void align_orders(Cyclotomic& a, Cyclotomic& b) {
  long m = lcm_long(a.order(), b.order());
  a = a.rescale_order(m);
  b = b.rescale_order(m);
}

}  // namespace qtor
