#pragma once
// The full toroidal Lie algebra: matrices over the quantum torus, extended by
// the first cyclic homology and the derivation algebra, with all brackets,
// the triangular grading, and transport along lattice automorphisms.

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qtor/hc1.hpp"
#include "qtor/quantum_torus.hpp"

namespace qtor {

struct AlgebraContext {
  TorusContext torus;
  int d;  // matrix size

  AlgebraContext(TorusContext t, int dd) : torus(std::move(t)), d(dd) {
    if (d < 1) throw std::invalid_argument("matrix size must be positive");
  }
  long order() const { return torus.order(); }
  int nvars() const { return torus.dim(); }
};

using CycMatrix = std::vector<std::vector<Cyclotomic>>;

inline CycMatrix cyc_matrix_zero(int d, long order) {
  return CycMatrix(d, std::vector<Cyclotomic>(d, Cyclotomic::zero(order)));
}

inline bool is_zero_matrix(const CycMatrix& m) {
  for (const auto& row : m)
    for (const auto& c : row)
      if (!c.is_zero()) return false;
  return true;
}

inline CycMatrix cyc_add(const CycMatrix& a, const CycMatrix& b) {
  CycMatrix r = a;
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = 0; j < r.size(); ++j) r[i][j] = r[i][j] + b[i][j];
  return r;
}

inline CycMatrix cyc_scale(const Cyclotomic& c, const CycMatrix& a) {
  CycMatrix r = a;
  for (auto& row : r)
    for (auto& x : row) x = c * x;
  return r;
}

inline CycMatrix cyc_mul(const CycMatrix& a, const CycMatrix& b) {
  const size_t d = a.size();
  CycMatrix r = cyc_matrix_zero(static_cast<int>(d), a[0][0].order());
  for (size_t i = 0; i < d; ++i)
    for (size_t k = 0; k < d; ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < d; ++j) r[i][j] = r[i][j] + a[i][k] * b[k][j];
    }
  return r;
}

inline Cyclotomic cyc_trace(const CycMatrix& a) {
  Cyclotomic t = Cyclotomic::zero(a[0][0].order());
  for (size_t i = 0; i < a.size(); ++i) t = t + a[i][i];
  return t;
}

// Matrix-valued part: finitely supported map degree -> d x d matrix.
struct MatrixTorusElement {
  std::map<Degree, CycMatrix> terms;

  bool is_zero() const { return terms.empty(); }
  bool operator==(const MatrixTorusElement& o) const { return terms == o.terms; }
  bool operator!=(const MatrixTorusElement& o) const { return !(*this == o); }
};

inline void add_matrix_term(MatrixTorusElement& x, const AlgebraContext& ctx, const Degree& deg,
                            const CycMatrix& mat) {
  detail::check_degree(ctx.torus, deg);
  if (static_cast<int>(mat.size()) != ctx.d) throw std::invalid_argument("matrix size mismatch");
  if (is_zero_matrix(mat)) return;
  auto it = x.terms.find(deg);
  if (it == x.terms.end()) {
    x.terms.emplace(deg, mat);
    return;
  }
  it->second = cyc_add(it->second, mat);
  if (is_zero_matrix(it->second)) x.terms.erase(it);
}

inline MatrixTorusElement matrix_monomial(const AlgebraContext& ctx, const CycMatrix& mat,
                                          const Degree& deg) {
  CycMatrix normalized = cyc_matrix_zero(ctx.d, ctx.order());
  for (int i = 0; i < ctx.d; ++i)
    for (int j = 0; j < ctx.d; ++j)
      normalized[i][j] = detail::to_context_order(ctx.torus, mat[i][j]);
  MatrixTorusElement x;
  add_matrix_term(x, ctx, deg, normalized);
  return x;
}

// E_{ij} (x) t^deg, indices 0-based.
inline MatrixTorusElement e_matrix(const AlgebraContext& ctx, int i, int j, const Degree& deg,
                                   const Cyclotomic& coeff) {
  if (i < 0 || j < 0 || i >= ctx.d || j >= ctx.d)
    throw std::invalid_argument("matrix unit index out of range");
  CycMatrix mat = cyc_matrix_zero(ctx.d, ctx.order());
  mat[i][j] = detail::to_context_order(ctx.torus, coeff);
  MatrixTorusElement x;
  add_matrix_term(x, ctx, deg, mat);
  return x;
}

inline MatrixTorusElement e_matrix(const AlgebraContext& ctx, int i, int j, const Degree& deg) {
  return e_matrix(ctx, i, j, deg, Cyclotomic::one(ctx.order()));
}

// Derivations: inner part ad t^s (zero for radical s, hence never stored
// there) plus degree derivations D(u, r) = sum_i u_i t^r d_i with r radical.
struct Derivation {
  std::map<Degree, Cyclotomic> inner;
  std::map<Degree, std::vector<Cyclotomic>> degree_terms;

  bool is_zero() const { return inner.empty() && degree_terms.empty(); }
  bool operator==(const Derivation& o) const {
    return inner == o.inner && degree_terms == o.degree_terms;
  }
  bool operator!=(const Derivation& o) const { return !(*this == o); }
};

inline void add_inner_term(Derivation& x, const AlgebraContext& ctx, const Degree& s,
                           const Cyclotomic& coeff) {
  detail::check_degree(ctx.torus, s);
  Cyclotomic c = detail::to_context_order(ctx.torus, coeff);
  if (c.is_zero()) return;
  // t^s is central for radical s, so ad t^s is the zero derivation.
  if (ctx.torus.radical.contains(s)) return;
  auto it = x.inner.find(s);
  if (it == x.inner.end()) {
    x.inner.emplace(s, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) x.inner.erase(it);
}

inline void add_degree_term(Derivation& x, const AlgebraContext& ctx, const Degree& r,
                            const std::vector<Cyclotomic>& u) {
  detail::check_degree(ctx.torus, r);
  if (static_cast<int>(u.size()) != ctx.nvars())
    throw std::invalid_argument("coefficient vector dimension mismatch");
  if (!ctx.torus.radical.contains(r))
    throw std::invalid_argument("degree derivations require a radical degree");
  std::vector<Cyclotomic> v;
  v.reserve(u.size());
  bool zero = true;
  for (const Cyclotomic& c : u) {
    v.push_back(detail::to_context_order(ctx.torus, c));
    if (!v.back().is_zero()) zero = false;
  }
  if (zero) return;
  auto it = x.degree_terms.find(r);
  if (it == x.degree_terms.end()) {
    x.degree_terms.emplace(r, std::move(v));
    return;
  }
  zero = true;
  for (int l = 0; l < ctx.nvars(); ++l) {
    it->second[l] = it->second[l] + v[l];
    if (!it->second[l].is_zero()) zero = false;
  }
  if (zero) x.degree_terms.erase(it);
}

inline Derivation inner_derivation(const AlgebraContext& ctx, const Degree& s,
                                   const Cyclotomic& coeff) {
  Derivation d;
  add_inner_term(d, ctx, s, coeff);
  return d;
}

inline Derivation inner_derivation(const AlgebraContext& ctx, const Degree& s) {
  return inner_derivation(ctx, s, Cyclotomic::one(ctx.order()));
}

inline Derivation degree_derivation(const AlgebraContext& ctx, const std::vector<Cyclotomic>& u,
                                    const Degree& r) {
  Derivation d;
  add_degree_term(d, ctx, r, u);
  return d;
}

// I(u, r) = D(u, r) - D(u, 0).
inline Derivation i_derivation(const AlgebraContext& ctx, const std::vector<Cyclotomic>& u,
                               const Degree& r) {
  Derivation d = degree_derivation(ctx, u, r);
  std::vector<Cyclotomic> minus_u;
  for (const Cyclotomic& c : u) minus_u.push_back(-detail::to_context_order(ctx.torus, c));
  add_degree_term(d, ctx, Degree(ctx.nvars(), 0), minus_u);
  return d;
}

struct ToroidalElement {
  MatrixTorusElement g;
  HC1Element h;
  Derivation der;

  bool is_zero() const { return g.is_zero() && h.is_zero() && der.is_zero(); }
  bool operator==(const ToroidalElement& o) const {
    return g == o.g && h == o.h && der == o.der;
  }
  bool operator!=(const ToroidalElement& o) const { return !(*this == o); }
};

inline ToroidalElement toroidal(MatrixTorusElement g) { return {std::move(g), {}, {}}; }
inline ToroidalElement toroidal(HC1Element h) { return {{}, std::move(h), {}}; }
inline ToroidalElement toroidal(Derivation d) { return {{}, {}, std::move(d)}; }

inline ToroidalElement operator+(const ToroidalElement& x, const ToroidalElement& y) {
  ToroidalElement r = x;
  for (const auto& [deg, mat] : y.g.terms) {
    auto it = r.g.terms.find(deg);
    if (it == r.g.terms.end()) {
      r.g.terms.emplace(deg, mat);
    } else {
      it->second = cyc_add(it->second, mat);
      if (is_zero_matrix(it->second)) r.g.terms.erase(it);
    }
  }
  r.h = r.h + y.h;
  for (const auto& [s, c] : y.der.inner) {
    auto it = r.der.inner.find(s);
    if (it == r.der.inner.end()) {
      r.der.inner.emplace(s, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) r.der.inner.erase(it);
    }
  }
  for (const auto& [rr, u] : y.der.degree_terms) {
    auto it = r.der.degree_terms.find(rr);
    if (it == r.der.degree_terms.end()) {
      r.der.degree_terms.emplace(rr, u);
    } else {
      bool zero = true;
      for (size_t l = 0; l < u.size(); ++l) {
        it->second[l] = it->second[l] + u[l];
        if (!it->second[l].is_zero()) zero = false;
      }
      if (zero) r.der.degree_terms.erase(it);
    }
  }
  return r;
}

inline ToroidalElement toroidal_scale(const Cyclotomic& c, const ToroidalElement& x) {
  ToroidalElement r;
  if (c.is_zero()) return r;
  for (const auto& [deg, mat] : x.g.terms) {
    CycMatrix s = cyc_scale(c, mat);
    if (!is_zero_matrix(s)) r.g.terms.emplace(deg, std::move(s));
  }
  r.h = hc1_scale(c, x.h);
  for (const auto& [s, w] : x.der.inner) {
    Cyclotomic v = c * w;
    if (!v.is_zero()) r.der.inner.emplace(s, v);
  }
  for (const auto& [rr, u] : x.der.degree_terms) {
    std::vector<Cyclotomic> v;
    bool zero = true;
    for (const Cyclotomic& w : u) {
      v.push_back(c * w);
      if (!v.back().is_zero()) zero = false;
    }
    if (!zero) r.der.degree_terms.emplace(rr, std::move(v));
  }
  return r;
}

inline ToroidalElement operator-(const ToroidalElement& x) {
  ToroidalElement r;
  for (const auto& [deg, mat] : x.g.terms) {
    CycMatrix neg = mat;
    for (auto& row : neg)
      for (auto& c : row) c = -c;
    r.g.terms.emplace(deg, std::move(neg));
  }
  r.h = -x.h;
  for (const auto& [s, c] : x.der.inner) r.der.inner.emplace(s, -c);
  for (const auto& [rr, u] : x.der.degree_terms) {
    std::vector<Cyclotomic> v;
    for (const Cyclotomic& c : u) v.push_back(-c);
    r.der.degree_terms.emplace(rr, std::move(v));
  }
  return r;
}

inline ToroidalElement operator-(const ToroidalElement& x, const ToroidalElement& y) {
  return x + (-y);
}

namespace detail {
inline Cyclotomic degree_pairing(const TorusContext& ctx, const std::vector<Cyclotomic>& u,
                                 const Degree& a) {
  Cyclotomic dot = Cyclotomic::zero(ctx.order());
  for (size_t l = 0; l < u.size(); ++l) {
    if (a[l] == 0) continue;
    dot = dot + Rational(static_cast<long>(a[l])) * u[l];
  }
  return dot;
}
}  // namespace detail

// The Lie bracket of the full algebra: matrix part with its homology tail,
// the derivation action on matrices and homology, and the derivation algebra
// brackets, extended bilinearly.
inline ToroidalElement bracket(const AlgebraContext& ctx, const ToroidalElement& x,
                               const ToroidalElement& y) {
  const TorusContext& T = ctx.torus;
  ToroidalElement out;

  // [x(a), y(b)] = (sigma(a,b) xy - sigma(b,a) yx)(a+b) + Tr(xy) <t^a, t^b>.
  for (const auto& [a, ma] : x.g.terms)
    for (const auto& [b, mb] : y.g.terms) {
      CycMatrix ab = cyc_mul(ma, mb);
      CycMatrix ba = cyc_mul(mb, ma);
      CycMatrix part = cyc_add(cyc_scale(sigma(T, a, b), ab),
                               cyc_scale(-sigma(T, b, a), ba));
      add_matrix_term(out.g, ctx, degree_add(a, b), part);
      out.h = out.h + hc1_scale(cyc_trace(ab), reduce_symbol(T, a, b));
    }

  // Derivations on the matrix part, both orientations.
  auto der_on_matrix = [&](const Derivation& d, const MatrixTorusElement& g, bool negate) {
    for (const auto& [r, u] : d.degree_terms)
      for (const auto& [a, mat] : g.terms) {
        Cyclotomic coeff = detail::degree_pairing(T, u, a) * sigma(T, r, a);
        if (negate) coeff = -coeff;
        add_matrix_term(out.g, ctx, degree_add(r, a), cyc_scale(coeff, mat));
      }
    for (const auto& [s, c] : d.inner)
      for (const auto& [a, mat] : g.terms) {
        Cyclotomic coeff = c * (sigma(T, s, a) - sigma(T, a, s));
        if (negate) coeff = -coeff;
        add_matrix_term(out.g, ctx, degree_add(s, a), cyc_scale(coeff, mat));
      }
  };
  der_on_matrix(x.der, y.g, false);
  der_on_matrix(y.der, x.g, true);

  // Degree derivations on the homology part; inner derivations act as zero.
  for (const auto& [r, u] : x.der.degree_terms)
    out.h = out.h + der_action_on_hc1(T, u, r, y.h);
  for (const auto& [r, u] : y.der.degree_terms)
    out.h = out.h - der_action_on_hc1(T, u, r, x.h);

  // Derivation-derivation brackets.
  for (const auto& [s, c] : x.der.inner)
    for (const auto& [s2, c2] : y.der.inner)
      add_inner_term(out.der, ctx, degree_add(s, s2),
                     c * c2 * (sigma(T, s, s2) - sigma(T, s2, s)));
  auto d_on_inner = [&](const Derivation& dd, const Derivation& ii, bool negate) {
    for (const auto& [r, u] : dd.degree_terms)
      for (const auto& [s, c] : ii.inner) {
        Cyclotomic coeff = detail::degree_pairing(T, u, s) * sigma(T, r, s) * c;
        if (negate) coeff = -coeff;
        add_inner_term(out.der, ctx, degree_add(r, s), coeff);
      }
  };
  d_on_inner(x.der, y.der, false);
  d_on_inner(y.der, x.der, true);
  for (const auto& [r1, u1] : x.der.degree_terms)
    for (const auto& [r2, u2] : y.der.degree_terms) {
      Cyclotomic s12 = sigma(T, r1, r2);
      Cyclotomic p1 = detail::degree_pairing(T, u1, r2);
      Cyclotomic p2 = detail::degree_pairing(T, u2, r1);
      std::vector<Cyclotomic> w;
      w.reserve(u1.size());
      for (size_t l = 0; l < u1.size(); ++l) w.push_back(s12 * (p1 * u2[l] - p2 * u1[l]));
      add_degree_term(out.der, ctx, degree_add(r1, r2), w);
    }

  return out;
}

// Common degree of a homogeneous element; nullopt when parts disagree.
inline std::optional<Degree> degree_of(const ToroidalElement& x, int nvars) {
  std::optional<Degree> deg;
  auto merge = [&](const Degree& d) {
    if (!deg) {
      deg = d;
      return true;
    }
    return *deg == d;
  };
  for (const auto& [d, mat] : x.g.terms)
    if (!merge(d)) return std::nullopt;
  for (const auto& [key, c] : x.h.coords)
    if (!merge(key.second)) return std::nullopt;
  for (const auto& [s, c] : x.der.inner)
    if (!merge(s)) return std::nullopt;
  for (const auto& [r, u] : x.der.degree_terms)
    if (!merge(r)) return std::nullopt;
  if (!deg) deg = Degree(nvars, 0);
  return deg;
}

enum class TriangularClass { plus, zero, minus };

// Classifies a homogeneous element by the sign of its t_0-degree; at zero
// t_0-degree the matrix shape decides (strictly upper/lower/diagonal).
inline TriangularClass triangular_class(const AlgebraContext& ctx, const ToroidalElement& x) {
  std::optional<Degree> deg = degree_of(x, ctx.nvars());
  if (!deg) throw std::invalid_argument("triangular class requires a homogeneous element");
  if ((*deg)[0] > 0) return TriangularClass::plus;
  if ((*deg)[0] < 0) return TriangularClass::minus;

  bool upper = false, lower = false, diagonal = false;
  for (const auto& [d, mat] : x.g.terms)
    for (int i = 0; i < ctx.d; ++i)
      for (int j = 0; j < ctx.d; ++j) {
        if (mat[i][j].is_zero()) continue;
        if (i < j)
          upper = true;
        else if (i > j)
          lower = true;
        else
          diagonal = true;
      }
  bool central = !x.h.is_zero() || !x.der.is_zero();
  if (upper && !lower && !diagonal && !central) return TriangularClass::plus;
  if (lower && !upper && !diagonal && !central) return TriangularClass::minus;
  if (!upper && !lower) return TriangularClass::zero;
  throw std::invalid_argument("element mixes triangular classes at t_0-degree zero");
}

// Context carrying the transported exponent matrix: the transport map below
// goes from this algebra into the one over ctx.
inline AlgebraContext transported_context(const AlgebraContext& ctx,
                                          const LatticeAutomorphism& aut) {
  return AlgebraContext(TorusContext(apply_automorphism(aut, ctx.torus.q)), ctx.d);
}

namespace detail {
// Quadratic twist chi(c) = zeta^{Q(c)} making degree relabelling a
// homomorphism: with N = A^T T A - T' (T = strict lower triangle of the
// exponent matrix, T' its transported counterpart; N is symmetric mod m),
// Q(c) = sum_{i>j} N_ij c_i c_j + sum_i N_ii c_i (c_i - 1) / 2.
class AutomorphismTwist {
 public:
  AutomorphismTwist(const AlgebraContext& target, const LatticeAutomorphism& aut)
      : m_(target.order()) {
    const int n = target.nvars();
    SkewExponentMatrix qp = apply_automorphism(aut, target.torus.q);
    IntMat lower_target(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) lower_target[i][j] = target.torus.q.exponent(i, j);
    IntMat transported = mat_mul(mat_mul(mat_transpose(aut.a), lower_target), aut.a);
    n_ = transported;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) n_[i][j] -= qp.exponent(i, j);
  }

  long exponent(const Degree& c) const {
    long long e = 0;
    const int n = static_cast<int>(n_.size());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) e += (n_[i][j] % m_) * ((c[i] * c[j]) % m_) % m_;
      e += (n_[i][i] % m_) * ((c[i] * (c[i] - 1) / 2) % m_) % m_;
    }
    return static_cast<long>(((e % m_) + m_) % m_);
  }

  Cyclotomic value(const Degree& c) const { return Cyclotomic::root_of_unity(m_, exponent(c)); }

 private:
  long m_;
  IntMat n_;
};
}  // namespace detail

// Transport along a lattice automorphism: maps the algebra over the
// transported exponent matrix into the algebra over ctx. Matrix parts map by
// x(a) -> chi(a) x(A a); homology generators by B_{i,m} -> chi(m) sum_j
// A_{ji} B_{j,A m}; inner derivations by ad t^s -> chi(s) ad t^{A s}; degree
// derivations by D(u, r) -> chi(r) D(B u, A r) with B the inverse transpose,
// preserving the pairing (B u, A a) = (u, a).
inline ToroidalElement apply_toroidal_automorphism(const AlgebraContext& ctx,
                                                   const LatticeAutomorphism& aut,
                                                   const ToroidalElement& x) {
  if (static_cast<int>(aut.a.size()) != ctx.nvars())
    throw std::invalid_argument("automorphism dimension mismatch");
  detail::AutomorphismTwist chi(ctx, aut);
  ToroidalElement out;
  for (const auto& [a, mat] : x.g.terms)
    add_matrix_term(out.g, ctx, aut.apply(a), cyc_scale(chi.value(a), mat));
  for (const auto& [key, c] : x.h.coords) {
    const auto& [i, m] = key;
    Degree am = aut.apply(m);
    Cyclotomic scaled = chi.value(m) * c;
    for (int j = 0; j < ctx.nvars(); ++j) {
      if (aut.a[j][i] == 0) continue;
      add_hc1_term(out.h, ctx.torus, j, am, Rational(static_cast<long>(aut.a[j][i])) * scaled);
    }
  }
  for (const auto& [s, c] : x.der.inner)
    add_inner_term(out.der, ctx, aut.apply(s), chi.value(s) * c);
  for (const auto& [r, u] : x.der.degree_terms) {
    std::vector<Cyclotomic> bu(ctx.nvars(), Cyclotomic::zero(ctx.order()));
    for (int i = 0; i < ctx.nvars(); ++i)
      for (int j = 0; j < ctx.nvars(); ++j) {
        if (aut.b[i][j] == 0) continue;
        bu[i] = bu[i] + Rational(static_cast<long>(aut.b[i][j])) *
                            detail::to_context_order(ctx.torus, u[j]);
      }
    Cyclotomic cr = chi.value(r);
    for (auto& c : bu) c = cr * c;
    add_degree_term(out.der, ctx, aut.apply(r), bu);
  }
  return out;
}

inline std::string to_string(const AlgebraContext& ctx, const ToroidalElement& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " + ";
    first = false;
  };
  for (const auto& [deg, mat] : x.g.terms)
    for (int i = 0; i < ctx.d; ++i)
      for (int j = 0; j < ctx.d; ++j) {
        if (mat[i][j].is_zero()) continue;
        sep();
        os << "(" << mat[i][j].to_string() << ")*E_" << i + 1 << j + 1 << to_string(deg);
      }
  if (!x.h.is_zero()) {
    sep();
    os << to_string(x.h);
  }
  for (const auto& [s, c] : x.der.inner) {
    sep();
    os << "(" << c.to_string() << ")*ad t^" << to_string(s);
  }
  for (const auto& [r, u] : x.der.degree_terms) {
    for (size_t l = 0; l < u.size(); ++l) {
      if (u[l].is_zero()) continue;
      sep();
      os << "(" << u[l].to_string() << ")*t^" << to_string(r) << "d_" << l;
    }
  }
  return os.str();
}

}  // namespace qtor
