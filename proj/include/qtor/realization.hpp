#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qtor/toroidal.hpp"

namespace qtor {

// The quotient group Z^n / rad f' of a block-normal-form torus, with residues
// normalized blockwise: coordinate 2i-1, 2i reduced mod k_i, trailing
// coordinates (central variables) reduced to zero.
struct GammaGroup {
  SimpleFormBlocks blocks;
  int nvars = 0;
  long size = 1;  // prod k_i^2

  [[nodiscard]] long order_of_var(int l) const {
    return l < 2 * blocks.z ? blocks.orders[l / 2] : 1;
  }

  [[nodiscard]] Degree residue(const Degree& a) const {
    if (static_cast<int>(a.size()) != nvars)
      throw std::invalid_argument("GammaGroup: degree dimension mismatch");
    Degree r(a.size(), 0);
    for (int l = 0; l < 2 * blocks.z; ++l) {
      long k = order_of_var(l);
      r[l] = ((a[l] % k) + k) % k;
    }
    return r;
  }

  [[nodiscard]] bool same_class(const Degree& a, const Degree& b) const {
    return residue(a) == residue(b);
  }

  // Coset representatives with every block coordinate in (0, k_i].
  [[nodiscard]] std::vector<Degree> coset_representatives() const {
    std::vector<Degree> reps{Degree(nvars, 0)};
    for (int l = 0; l < 2 * blocks.z; ++l) {
      long k = order_of_var(l);
      std::vector<Degree> next;
      for (const Degree& r : reps)
        for (long v = 1; v <= k; ++v) {
          Degree s = r;
          s[l] = v;
          next.push_back(std::move(s));
        }
      reps = std::move(next);
    }
    return reps;
  }
};

inline GammaGroup gamma_group(const SkewExponentMatrix& q) {
  auto blocks = parse_simple_form(q);
  if (!blocks) throw std::invalid_argument("gamma_group: matrix not in block normal form");
  GammaGroup g;
  g.blocks = *blocks;
  g.nvars = q.dim();
  g.size = 1;
  for (long k : g.blocks.orders) g.size *= k * k;
  return g;
}

namespace detail {

// Kronecker product of square matrices, left factor indexing coarse blocks.
inline CycMatrix kron(const CycMatrix& a, const CycMatrix& b) {
  size_t ar = a.size(), br = b.size();
  long m = a[0][0].order();
  CycMatrix out = cyc_matrix_zero(static_cast<int>(ar * br), m);
  for (size_t p = 0; p < ar; ++p)
    for (size_t q = 0; q < ar; ++q)
      for (size_t r = 0; r < br; ++r)
        for (size_t s = 0; s < br; ++s) out[p * br + r][q * br + s] = a[p][q] * b[r][s];
  return out;
}

inline CycMatrix cyc_identity(size_t n, long m) {
  CycMatrix out = cyc_matrix_zero(static_cast<int>(n), m);
  for (size_t i = 0; i < n; ++i) out[i][i] = Cyclotomic::one(m);
  return out;
}

// If a == c * base for a scalar c, return c; zero matrix gives 0; otherwise nullopt.
inline std::optional<Cyclotomic> scalar_ratio(const CycMatrix& a, const CycMatrix& base) {
  long m = a[0][0].order();
  if (is_zero_matrix(a)) return Cyclotomic::zero(m);
  for (size_t i = 0; i < base.size(); ++i)
    for (size_t j = 0; j < base[i].size(); ++j)
      if (!base[i][j].is_zero()) {
        Cyclotomic c = a[i][j] / base[i][j];
        CycMatrix scaled = cyc_scale(c, base);
        for (size_t p = 0; p < a.size(); ++p)
          for (size_t q = 0; q < a[p].size(); ++q)
            if (!(a[p][q] == scaled[p][q])) return std::nullopt;
        return c;
      }
  return std::nullopt;
}

}  // namespace detail

// Clock-and-shift matrices for a block-normal-form torus: per block,
// C_i = sum_j q_i^{j-1} E_{jj} and S_i = sum_j E_{j,j+1} + E_{k_i,1}, tensored
// into M_N with N = prod k_i.  Monomials t^a land on C^{a_1} S^{a_2} (x) ...,
// one factor per block, and depend only on the residue of a.
class ClockShiftRealization {
 public:
  explicit ClockShiftRealization(const SkewExponentMatrix& q)
      : torus_(q), gamma_(gamma_group(q)) {
    long m = q.m;
    n_dim_ = 1;
    for (long k : gamma_.blocks.orders) n_dim_ *= k;
    for (int i = 0; i < gamma_.blocks.z; ++i) {
      long k = gamma_.blocks.orders[i];
      Int c = gamma_.blocks.entries[i];
      CycMatrix clock = cyc_matrix_zero(static_cast<int>(k), m);
      for (long j = 0; j < k; ++j)
        clock[j][j] = Cyclotomic::root_of_unity(m, static_cast<long>((c * j) % m));
      CycMatrix shift = cyc_matrix_zero(static_cast<int>(k), m);
      for (long j = 0; j + 1 < k; ++j) shift[j][j + 1] = Cyclotomic::one(m);
      shift[k - 1][0] = Cyclotomic::one(m);
      block_clock_.push_back(clock);
      block_shift_.push_back(shift);
      // The defining exchange relation: S C = q_i C S.
      CycMatrix sc = cyc_mul(shift, clock);
      CycMatrix qcs = cyc_scale(Cyclotomic::root_of_unity(m, ((c % m) + m) % m),
                                cyc_mul(clock, shift));
      if (!(toroidal_eq(sc, qcs)))
        throw std::logic_error("ClockShiftRealization: exchange relation failed");
    }
    for (const Degree& rep : gamma_.coset_representatives())
      memo_[gamma_.residue(rep)] = assemble(gamma_.residue(rep));
    // X^r must collapse to the identity for every radical generator.
    for (const auto& xi : xi_basis(q)) {
      if (!toroidal_eq(monomial(xi), detail::cyc_identity(n_dim_, m)))
        throw std::logic_error("ClockShiftRealization: radical monomial not identity");
    }
  }

  [[nodiscard]] const TorusContext& torus() const { return torus_; }
  [[nodiscard]] const GammaGroup& gamma() const { return gamma_; }
  [[nodiscard]] long matrix_size() const { return n_dim_; }
  [[nodiscard]] int z() const { return gamma_.blocks.z; }
  [[nodiscard]] const CycMatrix& clock(int i) const { return block_clock_.at(i); }
  [[nodiscard]] const CycMatrix& shift(int i) const { return block_shift_.at(i); }

  [[nodiscard]] const CycMatrix& monomial(const Degree& a) const {
    auto it = memo_.find(gamma_.residue(a));
    if (it == memo_.end()) throw std::logic_error("ClockShiftRealization: residue not memoized");
    return it->second;
  }

  static bool toroidal_eq(const CycMatrix& a, const CycMatrix& b) {
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < a[i].size(); ++j)
        if (!(a[i][j] == b[i][j])) return false;
    return true;
  }

 private:
  [[nodiscard]] CycMatrix assemble(const Degree& res) const {
    long m = torus_.order();
    CycMatrix out = detail::cyc_identity(1, m);
    for (int i = 0; i < gamma_.blocks.z; ++i) {
      long k = gamma_.blocks.orders[i];
      CycMatrix factor = detail::cyc_identity(k, m);
      for (Int e = 0; e < res[2 * i]; ++e) factor = cyc_mul(factor, block_clock_[i]);
      for (Int e = 0; e < res[2 * i + 1]; ++e) factor = cyc_mul(factor, block_shift_[i]);
      out = detail::kron(out, factor);
    }
    return out;
  }

  TorusContext torus_;
  GammaGroup gamma_;
  long n_dim_ = 1;
  std::vector<CycMatrix> block_clock_, block_shift_;
  std::map<Degree, CycMatrix> memo_;
};

inline ClockShiftRealization build_realization(const SkewExponentMatrix& q) {
  return ClockShiftRealization(q);
}

// An element of the diagonal loop subalgebra sum_a C X^{a-bar} (x) x^a, keyed
// by the Z^n degree a.
struct LoopElement {
  std::map<Degree, Cyclotomic> terms;

  [[nodiscard]] bool is_zero() const { return terms.empty(); }
  bool operator==(const LoopElement& o) const { return terms == o.terms; }
  bool operator!=(const LoopElement& o) const { return !(*this == o); }
};

inline void add_loop_term(LoopElement& x, const ClockShiftRealization& r, const Degree& a,
                          const Cyclotomic& coeff) {
  if (static_cast<int>(a.size()) != r.torus().dim())
    throw std::invalid_argument("add_loop_term: degree dimension mismatch");
  Cyclotomic c = coeff.rescale_order(r.torus().order());
  auto [it, inserted] = x.terms.emplace(a, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) x.terms.erase(it);
  } else if (it->second.is_zero()) {
    x.terms.erase(it);
  }
}

// t^a -> X^{a-bar} (x) x^a, extended linearly; an exact algebra isomorphism
// onto the diagonal subalgebra (no scalar correction is needed once monomials
// are ordered clock-then-shift per block).
inline LoopElement loop_hom(const ClockShiftRealization& r, const TorusElement& u) {
  LoopElement out;
  for (const auto& [a, c] : u.terms) add_loop_term(out, r, a, c);
  return out;
}

// Product computed with honest matrix arithmetic: the matrix part of each
// summand is re-expressed as a scalar multiple of the monomial at the sum
// degree.  Throws if a product ever leaves the diagonal subalgebra (it cannot).
inline LoopElement loop_multiply(const ClockShiftRealization& r, const LoopElement& x,
                                 const LoopElement& y) {
  LoopElement out;
  for (const auto& [a, ca] : x.terms)
    for (const auto& [b, cb] : y.terms) {
      Degree ab = degree_add(a, b);
      CycMatrix prod = cyc_mul(r.monomial(a), r.monomial(b));
      auto scalar = detail::scalar_ratio(prod, r.monomial(ab));
      if (!scalar) throw std::logic_error("loop_multiply: product left the diagonal subalgebra");
      add_loop_term(out, r, ab, ca * cb * *scalar);
    }
  return out;
}

// Evaluation at x = (1,...,1): the composite C_{q'} -> M_N whose kernel is
// spanned by the differences t^{a+r} - t^a, r radical.
inline CycMatrix quotient_to_matn(const ClockShiftRealization& r, const TorusElement& u) {
  long m = r.torus().order();
  CycMatrix out = cyc_matrix_zero(static_cast<int>(r.matrix_size()), m);
  for (const auto& [a, c] : u.terms) out = cyc_add(out, cyc_scale(c, r.monomial(a)));
  return out;
}

// Componentwise powers by the radical diagonal exponents (k_i on block
// variables, 1 on central ones); equal images forbid tensoring evaluation
// modules at the two points.
inline std::vector<Cyclotomic> xi_eval(const ClockShiftRealization& r,
                                       const std::vector<Cyclotomic>& b) {
  if (static_cast<int>(b.size()) != r.torus().dim())
    throw std::invalid_argument("xi_eval: point dimension mismatch");
  std::vector<Cyclotomic> out;
  for (int l = 0; l < r.torus().dim(); ++l) {
    if (b[l].is_zero()) throw std::invalid_argument("xi_eval: zero coordinate");
    out.push_back(b[l].pow(r.gamma().order_of_var(l)));
  }
  return out;
}

inline bool xi_distinct(const ClockShiftRealization& r, const std::vector<Cyclotomic>& b1,
                        const std::vector<Cyclotomic>& b2) {
  return xi_eval(r, b1) != xi_eval(r, b2);
}

// An element of the direct-sum loop model: components 0..d-1 carry the full
// matrix line X_i^{a-bar} (x) x^a, component -1 carries the traceless line
// Y^{a-bar} (x) x^a restricted to non-radical degrees.
struct DirectSumLoopElement {
  std::map<std::pair<int, Degree>, Cyclotomic> terms;

  [[nodiscard]] bool is_zero() const { return terms.empty(); }
  bool operator==(const DirectSumLoopElement& o) const { return terms == o.terms; }
  bool operator!=(const DirectSumLoopElement& o) const { return !(*this == o); }
};

inline void add_direct_sum_term(DirectSumLoopElement& x, const ClockShiftRealization& r,
                                int component, const Degree& a, const Cyclotomic& coeff) {
  if (static_cast<int>(a.size()) != r.torus().dim())
    throw std::invalid_argument("add_direct_sum_term: degree dimension mismatch");
  if (component == -1 && r.torus().radical.contains(a))
    throw std::invalid_argument("add_direct_sum_term: traceless component at radical degree");
  Cyclotomic c = coeff.rescale_order(r.torus().order());
  if (c.is_zero()) return;
  auto key = std::make_pair(component, a);
  auto [it, inserted] = x.terms.emplace(key, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) x.terms.erase(it);
  }
}

inline DirectSumLoopElement direct_sum_add(const DirectSumLoopElement& x,
                                           const DirectSumLoopElement& y,
                                           const ClockShiftRealization& r) {
  DirectSumLoopElement out = x;
  for (const auto& [key, c] : y.terms) add_direct_sum_term(out, r, key.first, key.second, c);
  return out;
}

// Componentwise bracket: distinct components commute, equal components close
// with coefficient sigma(a,b) - sigma(b,a); on the traceless component a sum
// degree in the radical forces that coefficient to vanish.
inline DirectSumLoopElement direct_sum_bracket(const ClockShiftRealization& r,
                                               const DirectSumLoopElement& x,
                                               const DirectSumLoopElement& y) {
  DirectSumLoopElement out;
  for (const auto& [kx, cx] : x.terms)
    for (const auto& [ky, cy] : y.terms) {
      if (kx.first != ky.first) continue;
      const Degree &a = kx.second, &b = ky.second;
      Cyclotomic coeff = sigma(r.torus(), a, b) - sigma(r.torus(), b, a);
      if (coeff.is_zero()) continue;
      add_direct_sum_term(out, r, kx.first, degree_add(a, b), cx * cy * coeff);
    }
  return out;
}

// Bracket of the ambient Lie algebra with the central tail discarded: the
// homology component of the full bracket is dropped, everything else kept.
inline ToroidalElement ell_bracket(const AlgebraContext& ctx, const ToroidalElement& x,
                                   const ToroidalElement& y) {
  ToroidalElement out = bracket(ctx, x, y);
  out.h = HC1Element{};
  return out;
}

// The component isomorphism onto the diagonal-plus-inner ideal:
// X_i^{a-bar} (x) x^a -> E_ii (x) t^a and Y^{a-bar} (x) x^a -> ad t^a - I (x) t^a.
inline ToroidalElement prop61_iso(const AlgebraContext& ctx, const ClockShiftRealization& r,
                                  const DirectSumLoopElement& x) {
  if (!(ctx.torus.q == r.torus().q))
    throw std::invalid_argument("prop61_iso: context does not match realization");
  ToroidalElement out;
  for (const auto& [key, c] : x.terms) {
    const auto& [component, a] = key;
    if (component >= 0) {
      if (component >= ctx.d) throw std::invalid_argument("prop61_iso: component out of range");
      out = out + toroidal(e_matrix(ctx, component, component, a, c));
    } else {
      out = out + toroidal(inner_derivation(ctx, a, c));
      for (int i = 0; i < ctx.d; ++i)
        out = out + toroidal(e_matrix(ctx, i, i, a, -c));
    }
  }
  return out;
}

}  // namespace qtor
