#pragma once
// Cartan subalgebra of the toroidal algebra: coordinate vectors over the
// basis {h_1..h_{d-1}, I, C_0..C_n, d_0..d_n}, weight functionals, the
// invariant bilinear form and its dual, and reflections in real roots.

#include <stdexcept>
#include <vector>

#include "qtor/toroidal.hpp"

namespace qtor {

struct CartanVector {
  std::vector<Cyclotomic> h;  // coordinates over h_k = E_kk - E_{k+1,k+1}
  Cyclotomic i;               // coordinate of the identity matrix I
  std::vector<Cyclotomic> c;  // coordinates over C_i = <t_i, t_i^{-1}>
  std::vector<Cyclotomic> d;  // coordinates over the degree derivations d_i

  bool operator==(const CartanVector& o) const {
    return h == o.h && i == o.i && c == o.c && d == o.d;
  }
  bool operator!=(const CartanVector& o) const { return !(*this == o); }
};

// A linear functional on the Cartan, stored by its values on the same basis.
struct WeightFunctional {
  std::vector<Cyclotomic> on_h;
  Cyclotomic on_i;
  std::vector<Cyclotomic> on_c;
  std::vector<Cyclotomic> on_d;

  bool operator==(const WeightFunctional& o) const {
    return on_h == o.on_h && on_i == o.on_i && on_c == o.on_c && on_d == o.on_d;
  }
  bool operator!=(const WeightFunctional& o) const { return !(*this == o); }
};

inline CartanVector cartan_zero(const AlgebraContext& ctx) {
  Cyclotomic z = Cyclotomic::zero(ctx.order());
  return {std::vector<Cyclotomic>(ctx.d - 1, z), z, std::vector<Cyclotomic>(ctx.nvars(), z),
          std::vector<Cyclotomic>(ctx.nvars(), z)};
}

inline WeightFunctional weight_zero(const AlgebraContext& ctx) {
  Cyclotomic z = Cyclotomic::zero(ctx.order());
  return {std::vector<Cyclotomic>(ctx.d - 1, z), z, std::vector<Cyclotomic>(ctx.nvars(), z),
          std::vector<Cyclotomic>(ctx.nvars(), z)};
}

namespace detail {
inline void check_cartan_shape(const AlgebraContext& ctx, size_t h, size_t c, size_t d) {
  if (static_cast<int>(h) != ctx.d - 1 || static_cast<int>(c) != ctx.nvars() ||
      static_cast<int>(d) != ctx.nvars())
    throw std::invalid_argument("cartan coordinate shape mismatch");
}
}  // namespace detail

inline Cyclotomic evaluate(const AlgebraContext& ctx, const WeightFunctional& lam,
                           const CartanVector& v) {
  detail::check_cartan_shape(ctx, lam.on_h.size(), lam.on_c.size(), lam.on_d.size());
  detail::check_cartan_shape(ctx, v.h.size(), v.c.size(), v.d.size());
  Cyclotomic out = lam.on_i * v.i;
  for (int k = 0; k < ctx.d - 1; ++k) out = out + lam.on_h[k] * v.h[k];
  for (int l = 0; l < ctx.nvars(); ++l)
    out = out + lam.on_c[l] * v.c[l] + lam.on_d[l] * v.d[l];
  return out;
}

// Trace form on the diagonal part, (I, I) = 1, (C_i, d_j) = delta_ij, rest zero.
inline Cyclotomic cartan_form(const AlgebraContext& ctx, const CartanVector& x,
                              const CartanVector& y) {
  detail::check_cartan_shape(ctx, x.h.size(), x.c.size(), x.d.size());
  detail::check_cartan_shape(ctx, y.h.size(), y.c.size(), y.d.size());
  Cyclotomic out = x.i * y.i;
  // (h_k, h_l) = tr(h_k h_l): 2 on the diagonal, -1 for adjacent indices.
  for (int k = 0; k < ctx.d - 1; ++k)
    for (int l = 0; l < ctx.d - 1; ++l) {
      int a = k == l ? 2 : (k + 1 == l || l + 1 == k ? -1 : 0);
      if (a != 0) out = out + Rational(a) * (x.h[k] * y.h[l]);
    }
  for (int l = 0; l < ctx.nvars(); ++l) out = out + x.c[l] * y.d[l] + x.d[l] * y.c[l];
  return out;
}

namespace detail {
// Exact inverse of the (d-1) x (d-1) Cartan matrix of the trace form.
inline std::vector<std::vector<Rational>> cartan_matrix_inverse(int size) {
  std::vector<std::vector<Rational>> a(size, std::vector<Rational>(size, 0));
  std::vector<std::vector<Rational>> inv(size, std::vector<Rational>(size, 0));
  for (int k = 0; k < size; ++k) {
    inv[k][k] = 1;
    for (int l = 0; l < size; ++l)
      a[k][l] = k == l ? 2 : (k + 1 == l || l + 1 == k ? -1 : 0);
  }
  for (int col = 0; col < size; ++col) {
    int pivot = -1;
    for (int row = col; row < size; ++row)
      if (a[row][col] != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0) throw std::logic_error("singular Cartan matrix");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational p = a[col][col];
    for (int l = 0; l < size; ++l) {
      a[col][l] /= p;
      inv[col][l] /= p;
    }
    for (int row = 0; row < size; ++row) {
      if (row == col || a[row][col] == 0) continue;
      Rational f = a[row][col];
      for (int l = 0; l < size; ++l) {
        a[row][l] -= f * a[col][l];
        inv[row][l] -= f * inv[col][l];
      }
    }
  }
  return inv;
}
}  // namespace detail

// Induced form on functionals: inverse trace form on the finite part, with the
// C/d pairing swapped.
inline Cyclotomic dual_cartan_form(const AlgebraContext& ctx, const WeightFunctional& lam,
                                   const WeightFunctional& mu) {
  detail::check_cartan_shape(ctx, lam.on_h.size(), lam.on_c.size(), lam.on_d.size());
  detail::check_cartan_shape(ctx, mu.on_h.size(), mu.on_c.size(), mu.on_d.size());
  Cyclotomic out = lam.on_i * mu.on_i;
  auto inv = detail::cartan_matrix_inverse(ctx.d - 1);
  for (int k = 0; k < ctx.d - 1; ++k)
    for (int l = 0; l < ctx.d - 1; ++l) {
      if (inv[k][l] == 0) continue;
      out = out + inv[k][l] * (lam.on_h[k] * mu.on_h[l]);
    }
  for (int l = 0; l < ctx.nvars(); ++l)
    out = out + lam.on_c[l] * mu.on_d[l] + lam.on_d[l] * mu.on_c[l];
  return out;
}

// Real root gamma = eps_p - eps_q + delta_m (0-based matrix indices).
struct RealRoot {
  int p = 0;
  int q = 1;
  Degree m;
};

namespace detail {
inline void check_real_root(const AlgebraContext& ctx, const RealRoot& root) {
  if (root.p == root.q || root.p < 0 || root.q < 0 || root.p >= ctx.d || root.q >= ctx.d)
    throw std::invalid_argument("real root requires distinct matrix indices in range");
  check_degree(ctx.torus, root.m);
}
}  // namespace detail

// gamma as a functional: its finite part evaluated on the h_k, its null part on the d_i.
inline WeightFunctional root_functional(const AlgebraContext& ctx, const RealRoot& root) {
  detail::check_real_root(ctx, root);
  WeightFunctional gamma = weight_zero(ctx);
  auto eps = [&](int idx, int k) { return (idx == k ? 1 : 0) - (idx == k + 1 ? 1 : 0); };
  for (int k = 0; k < ctx.d - 1; ++k)
    gamma.on_h[k] = Cyclotomic::from_rational(ctx.order(), eps(root.p, k) - eps(root.q, k));
  for (int l = 0; l < ctx.nvars(); ++l)
    gamma.on_d[l] = Cyclotomic::from_rational(ctx.order(), static_cast<long>(root.m[l]));
  return gamma;
}

// gamma-vee = alpha-vee + sum_i m_i C_i; always gamma(gamma-vee) = 2.
inline CartanVector coroot(const AlgebraContext& ctx, const RealRoot& root) {
  detail::check_real_root(ctx, root);
  CartanVector gv = cartan_zero(ctx);
  int lo = std::min(root.p, root.q), hi = std::max(root.p, root.q);
  long sign = root.p < root.q ? 1 : -1;
  for (int k = lo; k < hi; ++k) gv.h[k] = Cyclotomic::from_rational(ctx.order(), sign);
  for (int l = 0; l < ctx.nvars(); ++l)
    gv.c[l] = Cyclotomic::from_rational(ctx.order(), static_cast<long>(root.m[l]));
  return gv;
}

// r_gamma(lambda) = lambda - lambda(gamma-vee) gamma.
inline WeightFunctional weyl_reflect(const AlgebraContext& ctx, const WeightFunctional& lam,
                                     const RealRoot& root) {
  WeightFunctional gamma = root_functional(ctx, root);
  Cyclotomic coeff = evaluate(ctx, lam, coroot(ctx, root));
  WeightFunctional out = lam;
  for (int k = 0; k < ctx.d - 1; ++k) out.on_h[k] = out.on_h[k] - coeff * gamma.on_h[k];
  out.on_i = out.on_i - coeff * gamma.on_i;
  for (int l = 0; l < ctx.nvars(); ++l) {
    out.on_c[l] = out.on_c[l] - coeff * gamma.on_c[l];
    out.on_d[l] = out.on_d[l] - coeff * gamma.on_d[l];
  }
  return out;
}

// The Cartan vector as an element of the full algebra: diagonal matrices at
// degree zero, C_i as the degree-zero homology generators, d_i as D(e_i, 0).
inline ToroidalElement cartan_embed(const AlgebraContext& ctx, const CartanVector& v) {
  detail::check_cartan_shape(ctx, v.h.size(), v.c.size(), v.d.size());
  ToroidalElement out;
  Degree zero(ctx.nvars(), 0);
  CycMatrix mat = cyc_matrix_zero(ctx.d, ctx.order());
  for (int k = 0; k < ctx.d - 1; ++k) {
    mat[k][k] = mat[k][k] + v.h[k];
    mat[k + 1][k + 1] = mat[k + 1][k + 1] - v.h[k];
  }
  for (int k = 0; k < ctx.d; ++k) mat[k][k] = mat[k][k] + v.i;
  add_matrix_term(out.g, ctx, zero, mat);
  for (int l = 0; l < ctx.nvars(); ++l) add_hc1_term(out.h, ctx.torus, l, zero, v.c[l]);
  add_degree_term(out.der, ctx, zero, v.d);
  return out;
}

}  // namespace qtor
