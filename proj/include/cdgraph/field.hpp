#pragma once

// The finite field F_{p^n} in a polynomial basis over F_p, and F_p-subspaces
// of it in reduced row echelon form.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdgraph/arith.hpp"
#include "cdgraph/cyclotomic.hpp"

namespace cdg {

using Coeffs = std::vector<std::uint32_t>;

namespace detail {

inline std::uint32_t addp(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  const std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<std::uint32_t>(s >= p ? s - p : s);
}
inline std::uint32_t subp(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + p - b);
}
inline std::uint32_t mulp(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
}
inline std::uint32_t invp(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw std::domain_error("inverse of zero in F_p");
  return static_cast<std::uint32_t>(powmod64(a, p - 2, p));
}

// Dense polynomials over F_p, lowest coefficient first, no trailing zeros.
inline void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Coeffs poly_mod(Coeffs a, const Coeffs& f, std::uint32_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint32_t lead_inv = invp(f.back(), p);
  while (a.size() > df) {
    const std::uint32_t coef = mulp(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = subp(a[shift + i], mulp(coef, f[i], p), p);
    }
    trim(a);
  }
  return a;
}

inline Coeffs poly_mul(const Coeffs& a, const Coeffs& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  const std::uint64_t sq = std::uint64_t{p - 1} * (p - 1);
  const bool lazy = sq == 0 || std::min(a.size(), b.size()) <= UINT64_MAX / sq;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (lazy) {
        acc[i + j] += std::uint64_t{a[i]} * b[j];
      } else {
        acc[i + j] = (acc[i + j] + std::uint64_t{a[i]} * b[j]) % p;
      }
    }
  }
  Coeffs out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<std::uint32_t>(acc[i] % p);
  trim(out);
  return out;
}

inline Coeffs poly_mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& f, std::uint32_t p) {
  return poly_mod(poly_mul(a, b, p), f, p);
}

inline Coeffs poly_powmod(Coeffs base, std::uint64_t e, const Coeffs& f, std::uint32_t p) {
  Coeffs result{1};
  base = poly_mod(base, f, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return poly_mod(result, f, p);
}

inline Coeffs poly_sub(Coeffs a, const Coeffs& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = subp(a[i], b[i], p);
  trim(a);
  return a;
}

inline Coeffs poly_gcd(Coeffs a, Coeffs b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Coeffs r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::uint32_t inv = invp(a.back(), p);
    for (auto& c : a) c = mulp(c, inv, p);
  }
  return a;
}

}  // namespace detail

/// Rabin's test: x^{p^n} = x mod f and gcd(x^{p^{n/r}} - x, f) = 1 for each
/// prime r | n. `f` is monic of degree n, lowest coefficient first.
inline bool is_irreducible(const Coeffs& f, std::uint32_t p) {
  Coeffs g = f;
  detail::trim(g);
  if (g.size() < 2) return false;
  const std::uint64_t n = g.size() - 1;
  if (n == 1) return true;
  const Coeffs x{0, 1};
  std::vector<Coeffs> frob_powers{detail::poly_mod(x, g, p)};  // x^{p^k}
  for (std::uint64_t k = 1; k <= n; ++k) {
    frob_powers.push_back(detail::poly_powmod(frob_powers.back(), p, g, p));
  }
  if (detail::poly_sub(frob_powers[n], x, p) != Coeffs{}) return false;
  for (const Nat& r : factor(Nat(n)).primes()) {
    const auto k = static_cast<std::size_t>(n / r.convert_to<std::uint64_t>());
    if (detail::poly_gcd(detail::poly_sub(frob_powers[k], x, p), g, p) != Coeffs{1}) return false;
  }
  return true;
}

/// The monic irreducible of degree n whose coefficient vector
/// (c_{n-1}, ..., c_0) is lexicographically least.
inline Coeffs least_irreducible(std::uint32_t p, unsigned n) {
  if (n == 0) throw std::invalid_argument("least_irreducible: degree must be >= 1");
  Coeffs f(n + 1, 0);
  f[n] = 1;
  while (true) {
    if (is_irreducible(f, p)) return f;
    // Increment (c_{n-1} .. c_0) as a base-p counter, c_0 least significant.
    std::size_t i = 0;
    while (i < n) {
      if (++f[i] < p) break;
      f[i] = 0;
      ++i;
    }
    if (i == n) throw std::logic_error("least_irreducible: exhausted candidates");
  }
}

struct FieldElem {
  Coeffs c;  // coordinates in the basis 1, x, ..., x^{n-1}
  friend bool operator==(const FieldElem&, const FieldElem&) = default;
  friend auto operator<=>(const FieldElem&, const FieldElem&) = default;
};

/// F = F_p[x]/(f). Immutable after construction.
class FieldCtx {
 public:
  FieldCtx(std::uint32_t p, unsigned n) : FieldCtx(p, n, least_irreducible(p, n)) {}

  FieldCtx(std::uint32_t p, unsigned n, Coeffs modulus) : p_(p), n_(n), modulus_(std::move(modulus)) {
    if (!is_prime_u64(p)) throw std::invalid_argument("FieldCtx: p must be prime");
    if (n == 0 || modulus_.size() != n + 1 || modulus_.back() != 1) {
      throw std::invalid_argument("FieldCtx: modulus must be monic of degree n");
    }
    if (!is_irreducible(modulus_, p)) throw std::invalid_argument("FieldCtx: modulus is reducible");
    order_ = cdg::pow(Nat(p), n);
    // Accumulate products without reduction when 3n (p-1)^2 fits in 64 bits.
    const std::uint64_t sq = std::uint64_t{p - 1} * (p - 1);
    lazy_ = sq == 0 || 3 * std::uint64_t{n} <= UINT64_MAX / sq;
    // Columns of the Frobenius map a -> a^p on the polynomial basis.
    frob_.reserve(n);
    for (unsigned i = 0; i < n; ++i) {
      FieldElem basis = zero();
      basis.c[i] = 1;
      frob_.push_back(this->pow(basis, Nat(p)));
    }
  }

  std::uint32_t p() const { return p_; }
  unsigned n() const { return n_; }
  const Coeffs& modulus() const { return modulus_; }
  const Nat& size() const { return order_; }
  Nat unit_order() const { return order_ - 1; }

  FieldElem zero() const { return FieldElem{Coeffs(n_, 0)}; }
  FieldElem one() const {
    FieldElem e = zero();
    e.c[0] = 1;
    return e;
  }
  FieldElem scalar(std::uint32_t s) const {
    FieldElem e = zero();
    e.c[0] = s % p_;
    return e;
  }
  FieldElem basis(unsigned i) const {
    FieldElem e = zero();
    e.c.at(i) = 1;
    return e;
  }

  /// Element whose coordinates are the base-p digits of index (c_0 lowest).
  FieldElem from_index(Nat index) const {
    if (index < 0 || index >= order_) throw std::out_of_range("FieldCtx::from_index");
    FieldElem e = zero();
    for (unsigned i = 0; i < n_; ++i) {
      e.c[i] = static_cast<std::uint32_t>(index % p_);
      index /= p_;
    }
    return e;
  }
  Nat index(const FieldElem& e) const {
    Nat acc = 0;
    for (unsigned i = n_; i-- > 0;) acc = acc * p_ + e.c[i];
    return acc;
  }

  bool is_zero(const FieldElem& a) const {
    for (auto v : a.c) {
      if (v != 0) return false;
    }
    return true;
  }

  FieldElem add(const FieldElem& a, const FieldElem& b) const {
    FieldElem r = a;
    for (unsigned i = 0; i < n_; ++i) r.c[i] = detail::addp(a.c[i], b.c[i], p_);
    return r;
  }
  FieldElem sub(const FieldElem& a, const FieldElem& b) const {
    FieldElem r = a;
    for (unsigned i = 0; i < n_; ++i) r.c[i] = detail::subp(a.c[i], b.c[i], p_);
    return r;
  }
  FieldElem neg(const FieldElem& a) const { return sub(zero(), a); }
  FieldElem scale(const FieldElem& a, std::uint32_t s) const {
    FieldElem r = a;
    for (auto& v : r.c) v = detail::mulp(v, s % p_, p_);
    return r;
  }

  FieldElem mul(const FieldElem& a, const FieldElem& b) const {
    std::vector<std::uint64_t> acc(2 * n_ - 1, 0);
    for (unsigned i = 0; i < n_; ++i) {
      if (a.c[i] == 0) continue;
      for (unsigned j = 0; j < n_; ++j) {
        const std::uint64_t t = std::uint64_t{a.c[i]} * b.c[j];
        acc[i + j] = lazy_ ? acc[i + j] + t : (acc[i + j] + t % p_) % p_;
      }
    }
    // Reduce with the monic modulus from the top degree down.
    for (std::size_t k = acc.size(); k-- > n_;) {
      const std::uint64_t coef = acc[k] % p_;
      acc[k] = 0;
      if (coef == 0) continue;
      const std::size_t shift = k - n_;
      for (unsigned i = 0; i < n_; ++i) {
        const std::uint64_t t = (p_ - coef) * modulus_[i];
        acc[shift + i] = lazy_ ? acc[shift + i] + t : (acc[shift + i] + t % p_) % p_;
      }
    }
    FieldElem r = zero();
    for (unsigned i = 0; i < n_; ++i) r.c[i] = static_cast<std::uint32_t>(acc[i] % p_);
    return r;
  }

  FieldElem pow(FieldElem base, Nat e) const {
    if (e < 0) throw std::invalid_argument("FieldCtx::pow: negative exponent");
    FieldElem result = one();
    while (e > 0) {
      if (boost::multiprecision::bit_test(e, 0)) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  FieldElem inv(const FieldElem& a) const {
    if (is_zero(a)) throw std::domain_error("FieldCtx::inv: zero has no inverse");
    return pow(a, order_ - 2);
  }

  /// a^{p^k}, via the precomputed linear Frobenius map.
  FieldElem frob(const FieldElem& a, std::uint64_t k = 1) const {
    FieldElem cur = a;
    std::vector<std::uint64_t> acc(n_);
    for (std::uint64_t step = 0; step < k % n_; ++step) {
      std::fill(acc.begin(), acc.end(), 0);
      for (unsigned i = 0; i < n_; ++i) {
        if (cur.c[i] == 0) continue;
        for (unsigned j = 0; j < n_; ++j) {
          const std::uint64_t t = std::uint64_t{cur.c[i]} * frob_[i].c[j];
          acc[j] = lazy_ ? acc[j] + t : (acc[j] + t % p_) % p_;
        }
      }
      for (unsigned j = 0; j < n_; ++j) cur.c[j] = static_cast<std::uint32_t>(acc[j] % p_);
    }
    return cur;
  }

  /// Steps a through all field elements in index order; false after the last.
  bool next(FieldElem& a) const {
    for (unsigned i = 0; i < n_; ++i) {
      if (++a.c[i] < p_) return true;
      a.c[i] = 0;
    }
    return false;
  }

  /// Membership in the subfield F_{p^k}: a^{p^k} = a.
  bool in_subfield(const FieldElem& a, unsigned k) const { return frob(a, k) == a; }

  /// Absolute trace to F_p, returned as its F_p value.
  std::uint32_t trace(const FieldElem& a) const {
    FieldElem acc = zero();
    FieldElem cur = a;
    for (unsigned i = 0; i < n_; ++i) {
      acc = add(acc, cur);
      cur = frob(cur);
    }
    for (unsigned i = 1; i < n_; ++i) {
      if (acc.c[i] != 0) throw std::logic_error("trace left F_p");
    }
    return acc.c[0];
  }

  template <class Rng>
  FieldElem random(Rng& rng) const {
    std::uniform_int_distribution<std::uint32_t> dist(0, p_ - 1);
    FieldElem e = zero();
    for (auto& v : e.c) v = dist(rng);
    return e;
  }

  template <class Rng>
  FieldElem random_nonzero(Rng& rng) const {
    while (true) {
      FieldElem e = random(rng);
      if (!is_zero(e)) return e;
    }
  }

  std::string to_string(const FieldElem& a) const {
    std::string out;
    for (unsigned i = n_; i-- > 0;) {
      if (a.c[i] == 0) continue;
      if (!out.empty()) out += " + ";
      if (a.c[i] != 1 || i == 0) out += std::to_string(a.c[i]);
      if (i > 0) out += (a.c[i] != 1 ? "*x" : "x") + (i > 1 ? "^" + std::to_string(i) : std::string());
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::uint32_t p_;
  unsigned n_;
  Coeffs modulus_;
  Nat order_;
  bool lazy_ = false;
  std::vector<FieldElem> frob_;
};

/// Least-index primitive element of F^x, using the cyclotomic factorization
/// of p^n - 1.
inline FieldElem find_generator(const FieldCtx& ctx, const FactorBudget& budget = {}) {
  const Factored order = power_minus_one(Nat(ctx.p()), ctx.n(), budget);
  if (!order.complete()) throw std::runtime_error("find_generator: p^n - 1 not fully factored");
  const Nat unit_order = ctx.unit_order();
  for (Nat idx = 1; idx < ctx.size(); ++idx) {
    const FieldElem g = ctx.from_index(idx);
    bool primitive = true;
    for (const auto& kv : order.factors) {
      if (ctx.pow(g, unit_order / kv.first) == ctx.one()) {
        primitive = false;
        break;
      }
    }
    if (primitive) return g;
  }
  throw std::logic_error("find_generator: no primitive element");
}

// ---------------------------------------------------------------------------
// F_p-subspaces of F_p^n
// ---------------------------------------------------------------------------

/// Subspace stored as the nonzero rows of its reduced row echelon form, so
/// equal subspaces compare equal.
class Subspace {
 public:
  Subspace(std::uint32_t p, unsigned n) : p_(p), n_(n) {}

  static Subspace span(std::uint32_t p, unsigned n, const std::vector<Coeffs>& vectors) {
    Subspace s(p, n);
    s.rows_ = vectors;
    s.reduce();
    return s;
  }

  std::uint32_t p() const { return p_; }
  unsigned ambient_dim() const { return n_; }
  unsigned dim() const { return static_cast<unsigned>(rows_.size()); }
  const std::vector<Coeffs>& rows() const { return rows_; }

  bool contains(const Coeffs& v) const {
    Subspace extended = *this;
    extended.rows_.push_back(v);
    extended.reduce();
    return extended.dim() == dim();
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.rows_ == b.rows_;
  }
  friend bool operator<(const Subspace& a, const Subspace& b) {
    if (a.rows_.size() != b.rows_.size()) return a.rows_.size() < b.rows_.size();
    return a.rows_ < b.rows_;
  }

 private:
  void reduce() {
    std::vector<Coeffs> m = rows_;
    std::size_t rank = 0;
    for (unsigned col = 0; col < n_ && rank < m.size(); ++col) {
      std::size_t pivot = rank;
      while (pivot < m.size() && m[pivot][col] % p_ == 0) ++pivot;
      if (pivot == m.size()) continue;
      std::swap(m[rank], m[pivot]);
      const std::uint32_t inv = detail::invp(m[rank][col], p_);
      for (auto& v : m[rank]) v = detail::mulp(v, inv, p_);
      for (std::size_t r = 0; r < m.size(); ++r) {
        if (r == rank || m[r][col] == 0) continue;
        const std::uint32_t factor = m[r][col];
        for (unsigned j = 0; j < n_; ++j) {
          m[r][j] = detail::subp(m[r][j], detail::mulp(factor, m[rank][j], p_), p_);
        }
      }
      ++rank;
    }
    m.resize(rank);
    rows_ = std::move(m);
  }

  std::uint32_t p_;
  unsigned n_;
  std::vector<Coeffs> rows_;
};

/// Kernel of the F_p-linear map whose images of the basis vectors are `columns`.
inline Subspace kernel_of(std::uint32_t p, unsigned n, const std::vector<Coeffs>& columns) {
  // Row-reduce the n x n matrix A (A[i][j] = columns[j][i]) and read off the
  // null space from the free columns.
  const std::size_t cols = columns.size();
  std::vector<Coeffs> a(n, Coeffs(cols, 0));
  for (std::size_t j = 0; j < cols; ++j) {
    for (unsigned i = 0; i < n; ++i) a[i][j] = columns[j][i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < n; ++col) {
    std::size_t pivot = rank;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) continue;
    std::swap(a[rank], a[pivot]);
    const std::uint32_t inv = detail::invp(a[rank][col], p);
    for (auto& v : a[rank]) v = detail::mulp(v, inv, p);
    for (unsigned r = 0; r < n; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      const std::uint32_t f = a[r][col];
      for (std::size_t j = 0; j < cols; ++j) a[r][j] = detail::subp(a[r][j], detail::mulp(f, a[rank][j], p), p);
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<Coeffs> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Coeffs v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = detail::subp(0, a[r][free], p);
    basis.push_back(std::move(v));
  }
  return Subspace::span(p, static_cast<unsigned>(cols), basis);
}

}  // namespace cdg
