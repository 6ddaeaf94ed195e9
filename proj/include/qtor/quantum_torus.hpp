#pragma once
// Quantum torus with root-of-unity commutation scalars: the twisted graded
// product, its Lie bracket, and the center/commutator decomposition.

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "qtor/cyclotomic.hpp"
#include "qtor/lattice.hpp"

namespace qtor {

// Bundles the exponent matrix with its precomputed radical lattice.
struct TorusContext {
  SkewExponentMatrix q;
  RadicalLattice radical;

  explicit TorusContext(SkewExponentMatrix qq) : q(std::move(qq)), radical(radical_basis(q)) {}
  int dim() const { return q.dim(); }
  long order() const { return q.m; }
};

namespace detail {
inline void check_degree(const TorusContext& ctx, const Degree& a) {
  if (static_cast<int>(a.size()) != ctx.dim())
    throw std::invalid_argument("degree dimension does not match torus context");
}
}  // namespace detail

// Exponent of zeta_m in sigma(a, b) = prod_{i <= j} q_{j,i}^{a_j b_i}; always in [0, m).
inline long sigma_exponent(const TorusContext& ctx, const Degree& a, const Degree& b) {
  detail::check_degree(ctx, a);
  detail::check_degree(ctx, b);
  const long m = ctx.order();
  long long e = 0;
  for (int j = 0; j < ctx.dim(); ++j)
    for (int i = 0; i <= j; ++i) e += ctx.q.exponent(j, i) * ((a[j] % m) * (b[i] % m) % m) % m;
  return static_cast<long>(((e % m) + m) % m);
}

inline Cyclotomic sigma(const TorusContext& ctx, const Degree& a, const Degree& b) {
  return Cyclotomic::root_of_unity(ctx.order(), sigma_exponent(ctx, a, b));
}

// f(a, b) = sigma(a, b) * sigma(b, a)^{-1}; the commutation scalar t^a t^b = f(a,b) t^b t^a.
inline long f_exponent(const TorusContext& ctx, const Degree& a, const Degree& b) {
  const long m = ctx.order();
  return ((sigma_exponent(ctx, a, b) - sigma_exponent(ctx, b, a)) % m + m) % m;
}

inline Cyclotomic f_form(const TorusContext& ctx, const Degree& a, const Degree& b) {
  return Cyclotomic::root_of_unity(ctx.order(), f_exponent(ctx, a, b));
}

// Finitely supported sum of monomials c * t^deg; coefficients are kept at the
// context's cyclotomic order and zero terms are never stored.
struct TorusElement {
  std::map<Degree, Cyclotomic> terms;

  bool is_zero() const { return terms.empty(); }
  bool operator==(const TorusElement& o) const { return terms == o.terms; }
  bool operator!=(const TorusElement& o) const { return !(*this == o); }
};

namespace detail {
// Rescales c to the context order; only orders dividing m embed exactly.
inline Cyclotomic to_context_order(const TorusContext& ctx, const Cyclotomic& c) {
  if (ctx.order() % c.order() != 0)
    throw std::invalid_argument("coefficient order does not divide the torus order");
  return c.order() == ctx.order() ? c : c.rescale_order(ctx.order());
}
}  // namespace detail

inline void add_term(TorusElement& u, const Degree& deg, const Cyclotomic& coeff) {
  if (coeff.is_zero()) return;
  auto it = u.terms.find(deg);
  if (it == u.terms.end()) {
    u.terms.emplace(deg, coeff);
    return;
  }
  it->second = it->second + coeff;
  if (it->second.is_zero()) u.terms.erase(it);
}

inline TorusElement torus_monomial(const TorusContext& ctx, const Degree& deg,
                                   const Cyclotomic& coeff) {
  detail::check_degree(ctx, deg);
  TorusElement u;
  add_term(u, deg, detail::to_context_order(ctx, coeff));
  return u;
}

inline TorusElement torus_monomial(const TorusContext& ctx, const Degree& deg) {
  return torus_monomial(ctx, deg, Cyclotomic::one(ctx.order()));
}

inline TorusElement torus_one(const TorusContext& ctx) {
  return torus_monomial(ctx, Degree(ctx.dim(), 0));
}

inline TorusElement operator+(const TorusElement& u, const TorusElement& v) {
  TorusElement r = u;
  for (const auto& [deg, c] : v.terms) add_term(r, deg, c);
  return r;
}

inline TorusElement operator-(const TorusElement& u, const TorusElement& v) {
  TorusElement r = u;
  for (const auto& [deg, c] : v.terms) add_term(r, deg, -c);
  return r;
}

inline TorusElement scalar_multiply(const TorusContext& ctx, const Cyclotomic& c,
                                    const TorusElement& u) {
  Cyclotomic cc = detail::to_context_order(ctx, c);
  TorusElement r;
  for (const auto& [deg, w] : u.terms) add_term(r, deg, cc * w);
  return r;
}

inline TorusElement multiply(const TorusContext& ctx, const TorusElement& u,
                             const TorusElement& v) {
  TorusElement r;
  for (const auto& [da, ca] : u.terms)
    for (const auto& [db, cb] : v.terms)
      add_term(r, degree_add(da, db), ca * cb * sigma(ctx, da, db));
  return r;
}

inline TorusElement lie_bracket(const TorusContext& ctx, const TorusElement& u,
                                const TorusElement& v) {
  return multiply(ctx, u, v) - multiply(ctx, v, u);
}

// (t^a)^{-1} = sigma(a, a) t^{-a}.
inline TorusElement monomial_inverse(const TorusContext& ctx, const Degree& a) {
  return torus_monomial(ctx, degree_neg(a), sigma(ctx, a, a));
}

// Splits u into (part with degrees outside rad f, central part with degrees in rad f).
inline std::pair<TorusElement, TorusElement> center_commutator_split(const TorusContext& ctx,
                                                                     const TorusElement& u) {
  TorusElement commutator_part, central_part;
  for (const auto& [deg, c] : u.terms)
    add_term(ctx.radical.contains(deg) ? central_part : commutator_part, deg, c);
  return {std::move(commutator_part), std::move(central_part)};
}

inline std::string to_string(const Degree& a) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ")";
  return os.str();
}

inline std::string to_string(const TorusElement& u) {
  if (u.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [deg, c] : u.terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")*t^" << to_string(deg);
  }
  return os.str();
}

}  // namespace qtor
