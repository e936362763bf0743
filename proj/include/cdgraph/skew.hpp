#pragma once

// The group P = 1 + J inside F{X}/(X^4) with Xa = a^p X, the actions of the
// cyclic groups C and H = Gal(F/F_p) on it, and the commutator pairing
// <a, b> = a b^p - a^{p^2} b.

#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdgraph/arith.hpp"
#include "cdgraph/field.hpp"

namespace cdg {

/// 1 + a1 x + a2 x^2 + a3 x^3.
struct SkewElem {
  FieldElem a1, a2, a3;
  friend bool operator==(const SkewElem&, const SkewElem&) = default;
};

/// Orders of the subgroups C, D, E of F^x and of H, for the field (p, n).
struct SubgroupOrders {
  Nat c_order;  // (p^n - 1)/(p - 1)
  Nat d_order;  // p^2 + p + 1
  Nat e_order;  // (p^n - 1)/(p^3 - 1)
  Nat h_order;  // n

  static SubgroupOrders of(const Nat& p, std::uint64_t n) {
    if (n % 3 != 0) throw std::invalid_argument("SubgroupOrders: 3 must divide n");
    const Nat pn1 = pow(p, static_cast<unsigned>(n)) - 1;
    return {pn1 / (p - 1), p * p + p + 1, pn1 / (p * p * p - 1), Nat(n)};
  }

  bool product_ok() const { return c_order == d_order * e_order; }
  bool d_e_coprime() const { return gcd(d_order, e_order) == 1; }
};

class SkewRing {
 public:
  explicit SkewRing(const FieldCtx& field) : f_(field) {}

  const FieldCtx& field() const { return f_; }

  SkewElem identity() const { return {f_.zero(), f_.zero(), f_.zero()}; }

  SkewElem make(FieldElem a1, FieldElem a2, FieldElem a3) const {
    return {std::move(a1), std::move(a2), std::move(a3)};
  }

  bool is_identity(const SkewElem& s) const {
    return f_.is_zero(s.a1) && f_.is_zero(s.a2) && f_.is_zero(s.a3);
  }

  /// Truncated product: c1 = a1+b1, c2 = a2+b2+a1 b1^p,
  /// c3 = a3+b3+a1 b2^p+a2 b1^{p^2}.
  SkewElem mul(const SkewElem& s, const SkewElem& t) const {
    check(s);
    check(t);
    SkewElem r;
    r.a1 = f_.add(s.a1, t.a1);
    r.a2 = f_.add(f_.add(s.a2, t.a2), f_.mul(s.a1, f_.frob(t.a1)));
    r.a3 = f_.add(f_.add(s.a3, t.a3),
                  f_.add(f_.mul(s.a1, f_.frob(t.a2)), f_.mul(s.a2, f_.frob(t.a1, 2))));
    return r;
  }

  SkewElem inv(const SkewElem& s) const {
    check(s);
    SkewElem r;
    r.a1 = f_.neg(s.a1);
    r.a2 = f_.sub(f_.mul(s.a1, f_.frob(s.a1)), s.a2);
    r.a3 = f_.neg(f_.add(s.a3, f_.add(f_.mul(s.a1, f_.frob(r.a2)), f_.mul(s.a2, f_.frob(r.a1, 2)))));
    return r;
  }

  /// s^{-1} t^{-1} s t computed in the group.
  SkewElem commutator(const SkewElem& s, const SkewElem& t) const {
    return mul(mul(inv(s), inv(t)), mul(s, t));
  }

  /// <a, b> = a b^p - a^{p^2} b.
  FieldElem bracket(const FieldElem& a, const FieldElem& b) const {
    return f_.sub(f_.mul(a, f_.frob(b)), f_.mul(f_.frob(a, 2), b));
  }

  /// (a1, a2, a3) -> (a1 c, a2 c^{p+1}, a3 c^{p^2+p+1}) for c in C.
  SkewElem c_action(const SkewElem& s, const FieldElem& c) const {
    if (f_.is_zero(c)) throw std::invalid_argument("c_action: c must be nonzero");
    const Nat p = f_.p();
    const Nat c_order = (f_.unit_order()) / (p - 1);
    if (f_.pow(c, c_order) != f_.one()) throw std::invalid_argument("c_action: c is not in C");
    const FieldElem cp = f_.frob(c);
    const FieldElem cp1 = f_.mul(c, cp);
    const FieldElem cp2 = f_.mul(cp1, f_.frob(cp));
    return {f_.mul(s.a1, c), f_.mul(s.a2, cp1), f_.mul(s.a3, cp2)};
  }

  /// Coordinatewise Frobenius^k.
  SkewElem h_action(const SkewElem& s, std::uint64_t k) const {
    return {f_.frob(s.a1, k), f_.frob(s.a2, k), f_.frob(s.a3, k)};
  }

  template <class Rng>
  SkewElem random(Rng& rng) const {
    return {f_.random(rng), f_.random(rng), f_.random(rng)};
  }

 private:
  void check(const SkewElem& s) const {
    if (s.a1.c.size() != f_.n() || s.a2.c.size() != f_.n() || s.a3.c.size() != f_.n()) {
      throw std::invalid_argument("SkewRing: element from a different field context");
    }
  }

  const FieldCtx& f_;
};

struct CommutatorCheck {
  SkewElem direct;
  SkewElem formula;  // 1 + <a, b> x^3
  bool agree = false;
};

/// Commutator of s = 1 + a x + ... and t = 1 + b x^2 + ... (t in P_2) computed
/// in the group and by the bracket formula.
inline CommutatorCheck commutator_check(const SkewRing& ring, const SkewElem& s, const SkewElem& t) {
  const FieldCtx& f = ring.field();
  if (!f.is_zero(t.a1)) throw std::invalid_argument("commutator_check: t must lie in P_2");
  CommutatorCheck out;
  out.direct = ring.commutator(s, t);
  out.formula = ring.make(f.zero(), f.zero(), ring.bracket(s.a1, t.a2));
  out.agree = out.direct == out.formula;
  return out;
}

// ---------------------------------------------------------------------------
// The pairing b -> <a, b> as an F_p-linear map
// ---------------------------------------------------------------------------

/// Images <a, e_i> of the polynomial basis.
inline std::vector<Coeffs> bracket_columns(const SkewRing& ring, const FieldElem& a) {
  const FieldCtx& f = ring.field();
  std::vector<Coeffs> cols;
  cols.reserve(f.n());
  for (unsigned i = 0; i < f.n(); ++i) cols.push_back(ring.bracket(a, f.basis(i)).c);
  return cols;
}

/// The image <a, F> as a subspace.
inline Subspace bracket_image(const SkewRing& ring, const FieldElem& a) {
  const FieldCtx& f = ring.field();
  return Subspace::span(f.p(), f.n(), bracket_columns(ring, a));
}

struct KernelImage {
  Subspace kernel;
  Subspace image;
  bool kernel_is_line_through_a_p1 = false;  // kernel == F_p * a^{p+1}
  bool image_is_hyperplane = false;          // dim = n - 1
};

inline KernelImage bracket_kernel_image(const SkewRing& ring, const FieldElem& a) {
  const FieldCtx& f = ring.field();
  if (f.is_zero(a)) throw std::invalid_argument("bracket_kernel_image: a must be nonzero");
  const auto cols = bracket_columns(ring, a);
  KernelImage out{kernel_of(f.p(), f.n(), cols), Subspace::span(f.p(), f.n(), cols)};
  const FieldElem a_p1 = f.mul(a, f.frob(a));
  out.kernel_is_line_through_a_p1 = out.kernel.dim() == 1 && out.kernel.contains(a_p1.c);
  out.image_is_hyperplane = out.image.dim() + 1 == f.n();
  return out;
}

/// pi_0 = <1, F> = {b^p - b}.
inline Subspace pi0_hyperplane(const SkewRing& ring) { return bracket_image(ring, ring.field().one()); }

/// The kernel of the absolute trace F -> F_p.
inline Subspace trace_kernel(const FieldCtx& f) {
  std::vector<Coeffs> cols;
  for (unsigned i = 0; i < f.n(); ++i) {
    Coeffs v(f.n(), 0);
    v[0] = f.trace(f.basis(i));
    cols.push_back(std::move(v));
  }
  return kernel_of(f.p(), f.n(), cols);
}

/// True iff <a, F> = pi_0.
inline bool hyperplane_class(const SkewRing& ring, const FieldElem& a) {
  if (ring.field().is_zero(a)) throw std::invalid_argument("hyperplane_class: a must be nonzero");
  return bracket_image(ring, a) == pi0_hyperplane(ring);
}

/// u * V as a subspace.
inline Subspace scaled_subspace(const FieldCtx& f, const FieldElem& u, const Subspace& v) {
  std::vector<Coeffs> rows;
  for (const auto& r : v.rows()) rows.push_back(f.mul(u, FieldElem{r}).c);
  return Subspace::span(f.p(), f.n(), rows);
}

inline constexpr std::uint64_t kExhaustiveFieldCap = std::uint64_t{1} << 20;

/// {<a, F> : a != 0}, enumerated exhaustively.
inline std::set<Subspace> orbit_pi0(const SkewRing& ring) {
  const FieldCtx& f = ring.field();
  if (f.size() > kExhaustiveFieldCap) throw std::length_error("orbit_pi0: field too large to enumerate");
  std::set<Subspace> out;
  FieldElem a = f.zero();
  while (f.next(a)) out.insert(bracket_image(ring, a));
  return out;
}

// ---------------------------------------------------------------------------
// Representatives of C, D, E from a fixed generator g of F^x
// ---------------------------------------------------------------------------

class CyclicSubgroups {
 public:
  CyclicSubgroups(const FieldCtx& f, FieldElem generator)
      : f_(f), g_(std::move(generator)), orders_(SubgroupOrders::of(Nat(f.p()), f.n())) {
    const Nat p = f.p();
    c_gen_ = f.pow(g_, p - 1);
    d_gen_ = f.pow(g_, f.unit_order() / orders_.d_order);
    e_gen_ = f.pow(g_, f.unit_order() / orders_.e_order);
  }

  explicit CyclicSubgroups(const FieldCtx& f) : CyclicSubgroups(f, find_generator(f)) {}

  const FieldElem& generator() const { return g_; }
  const SubgroupOrders& orders() const { return orders_; }
  const FieldElem& c_generator() const { return c_gen_; }
  const FieldElem& d_generator() const { return d_gen_; }
  const FieldElem& e_generator() const { return e_gen_; }

  FieldElem c_element(const Nat& k) const { return f_.pow(c_gen_, k); }
  FieldElem d_element(const Nat& k) const { return f_.pow(d_gen_, k); }
  FieldElem e_element(const Nat& k) const { return f_.pow(e_gen_, k); }

  /// Nonzero elements of F_{p^3}: g^{k (p^n-1)/(p^3-1)}.
  std::vector<FieldElem> fp3_units() const {
    const Nat p = f_.p();
    const Nat step = orders_.e_order;
    const Nat count = p * p * p - 1;
    std::vector<FieldElem> out;
    for (Nat k = 0; k < count; ++k) out.push_back(f_.pow(g_, k * step));
    return out;
  }

  template <class Rng>
  Nat random_exponent(const Nat& order, Rng& rng) const {
    Nat acc = 0;
    for (unsigned limb = 0; limb * 64 < bit_length(order) + 64; ++limb) acc = (acc << 64) | Nat(rng());
    return acc % order;
  }

 private:
  const FieldCtx& f_;
  FieldElem g_;
  SubgroupOrders orders_;
  FieldElem c_gen_, d_gen_, e_gen_;
};

/// {e^{p^2+p+1} pi_0 : e in E}, enumerated exhaustively.
inline std::set<Subspace> e_orbit_of_pi0(const SkewRing& ring, const CyclicSubgroups& groups) {
  const FieldCtx& f = ring.field();
  if (f.size() > kExhaustiveFieldCap) throw std::length_error("e_orbit_of_pi0: field too large");
  const Subspace pi0 = pi0_hyperplane(ring);
  const Nat p = f.p();
  const FieldElem step = f.pow(groups.e_generator(), p * p + p + 1);
  std::set<Subspace> out;
  FieldElem u = f.one();
  for (Nat k = 0; k < groups.orders().e_order; ++k) {
    out.insert(scaled_subspace(f, u, pi0));
    u = f.mul(u, step);
  }
  return out;
}

struct FrobeniusQuotientReport {
  Nat gcd_value;  // gcd((p^n-1)/(p-1), p+1)
  bool gcd_ok = false;
  std::uint64_t samples = 0;
  std::uint64_t fixed_points = 0;  // sampled (c != 1, (a1, a2) != 0) fixed mod P_3
  bool ok() const { return gcd_ok && fixed_points == 0; }
};

/// C acts fixed-point-freely on P/P_3: the gcd identity plus a sampled check.
template <class Rng>
FrobeniusQuotientReport check_frobenius_quotient(const SkewRing& ring, const CyclicSubgroups& groups,
                                                 std::uint64_t samples, Rng& rng) {
  const FieldCtx& f = ring.field();
  const Nat p = f.p();
  FrobeniusQuotientReport out;
  out.gcd_value = gcd(groups.orders().c_order, p + 1);
  out.gcd_ok = out.gcd_value == 1;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const FieldElem c = groups.c_element(groups.random_exponent(groups.orders().c_order, rng));
    if (c == f.one()) continue;
    SkewElem s{f.random(rng), f.random(rng), f.zero()};
    if (f.is_zero(s.a1) && f.is_zero(s.a2)) continue;
    ++out.samples;
    const SkewElem image = ring.c_action(s, c);
    if (image.a1 == s.a1 && image.a2 == s.a2) ++out.fixed_points;
  }
  return out;
}

}  // namespace cdg
