#pragma once
// Degree-graded first cyclic homology of the quantum torus: gated symbols
// <t^a, t^b>, reduction to the canonical B_{i,m} = <t_i, t^m t_i^{-1}> basis,
// graded dimensions, and the action of degree derivations.

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qtor/quantum_torus.hpp"

namespace qtor {

// Canonical coordinates over the basis symbols B_{i,m}, m in rad f. For
// m != 0 the generator with the smallest nonzero coordinate index of m is
// eliminated through sum_i m_i B_{i,m} = 0 and never appears as a key.
struct HC1Element {
  std::map<std::pair<int, Degree>, Cyclotomic> coords;

  bool is_zero() const { return coords.empty(); }
  bool operator==(const HC1Element& o) const { return coords == o.coords; }
  bool operator!=(const HC1Element& o) const { return !(*this == o); }
};

// Index rewritten away at degree m; -1 when m = 0 (no relation there).
inline int eliminated_index(const Degree& m) {
  for (size_t i = 0; i < m.size(); ++i)
    if (m[i] != 0) return static_cast<int>(i);
  return -1;
}

// Adds coeff * B_{i,m} in canonical coordinates.
inline void add_hc1_term(HC1Element& x, const TorusContext& ctx, int i, const Degree& m,
                         const Cyclotomic& coeff) {
  detail::check_degree(ctx, m);
  if (i < 0 || i >= ctx.dim()) throw std::invalid_argument("generator index out of range");
  if (!ctx.radical.contains(m)) throw std::invalid_argument("degree outside the radical");
  Cyclotomic c = detail::to_context_order(ctx, coeff);
  if (c.is_zero()) return;

  auto put = [&](int idx, const Cyclotomic& value) {
    auto key = std::make_pair(idx, m);
    auto it = x.coords.find(key);
    if (it == x.coords.end()) {
      if (!value.is_zero()) x.coords.emplace(key, value);
      return;
    }
    it->second = it->second + value;
    if (it->second.is_zero()) x.coords.erase(it);
  };

  int j = eliminated_index(m);
  if (i != j) {
    put(i, c);
    return;
  }
  // B_{j,m} = -(1/m_j) sum_{l != j} m_l B_{l,m}.
  for (int l = 0; l < ctx.dim(); ++l) {
    if (l == j || m[l] == 0) continue;
    Rational factor = Rational(-static_cast<long>(m[l])) / Rational(static_cast<long>(m[j]));
    put(l, factor * c);
  }
}

inline HC1Element operator+(const HC1Element& x, const HC1Element& y) {
  HC1Element r = x;
  for (const auto& [key, c] : y.coords) {
    auto it = r.coords.find(key);
    if (it == r.coords.end()) {
      r.coords.emplace(key, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) r.coords.erase(it);
    }
  }
  return r;
}

inline HC1Element operator-(const HC1Element& x) {
  HC1Element r;
  for (const auto& [key, c] : x.coords) r.coords.emplace(key, -c);
  return r;
}

inline HC1Element operator-(const HC1Element& x, const HC1Element& y) { return x + (-y); }

inline HC1Element hc1_scale(const Cyclotomic& c, const HC1Element& x) {
  HC1Element r;
  if (c.is_zero()) return r;
  for (const auto& [key, w] : x.coords) {
    Cyclotomic v = c * w;
    if (!v.is_zero()) r.coords.emplace(key, v);
  }
  return r;
}

// <t^a, t^b> = sigma(a,b) sum_i a_i B_{i,a+b}, gated to zero off the radical.
inline HC1Element reduce_symbol(const TorusContext& ctx, const Degree& a, const Degree& b) {
  detail::check_degree(ctx, a);
  detail::check_degree(ctx, b);
  HC1Element x;
  Degree m = degree_add(a, b);
  if (!ctx.radical.contains(m)) return x;
  Cyclotomic s = sigma(ctx, a, b);
  for (int i = 0; i < ctx.dim(); ++i) {
    if (a[i] == 0) continue;
    add_hc1_term(x, ctx, i, m, Rational(static_cast<long>(a[i])) * s);
  }
  return x;
}

inline int graded_dimension(const TorusContext& ctx, const Degree& m) {
  detail::check_degree(ctx, m);
  if (!ctx.radical.contains(m)) return 0;
  return is_zero_degree(m) ? ctx.dim() : ctx.dim() - 1;
}

// Action of the degree derivation D(u, r), r in rad f, on a basis symbol:
// [D(u,r), <t^a,t^b>] = (u,a) sigma(r,a) <t^{a+r},t^b> + (u,b) sigma(r,b) <t^a,t^{b+r}>.
// Inner derivations ad t^s act as zero.
inline HC1Element der_action_on_hc1(const TorusContext& ctx, const std::vector<Cyclotomic>& u,
                                    const Degree& r, const HC1Element& x) {
  detail::check_degree(ctx, r);
  if (static_cast<int>(u.size()) != ctx.dim())
    throw std::invalid_argument("pairing vector dimension mismatch");
  if (!ctx.radical.contains(r))
    throw std::invalid_argument("degree derivations on homology require a radical degree");

  auto pair_with = [&](const Degree& a) {
    Cyclotomic dot = Cyclotomic::zero(ctx.order());
    for (int l = 0; l < ctx.dim(); ++l) {
      if (a[l] == 0) continue;
      dot = dot + Rational(static_cast<long>(a[l])) * detail::to_context_order(ctx, u[l]);
    }
    return dot;
  };

  HC1Element out;
  for (const auto& [key, c] : x.coords) {
    const auto& [i, m] = key;
    Degree a = unit_degree(ctx.dim(), i);
    Degree b = degree_sub(m, a);
    HC1Element term1 = reduce_symbol(ctx, degree_add(a, r), b);
    HC1Element term2 = reduce_symbol(ctx, a, degree_add(b, r));
    out = out + hc1_scale(c * pair_with(a) * sigma(ctx, r, a), term1) +
          hc1_scale(c * pair_with(b) * sigma(ctx, r, b), term2);
  }
  return out;
}

inline HC1Element inner_action_on_hc1(const TorusContext&, const Degree&, const HC1Element&) {
  return HC1Element{};
}

inline std::string to_string(const HC1Element& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : x.coords) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")*<t_" << key.first << ", t^" << to_string(key.second)
       << " t_" << key.first << "^-1>";
  }
  return os.str();
}

}  // namespace qtor
