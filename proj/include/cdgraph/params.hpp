#pragma once

// Parameter validation for the (p, n) family and the constructive search
// that produces p, n with prescribed prime counts.

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdgraph/arith.hpp"
#include "cdgraph/report.hpp"

namespace cdg {

struct ParamChecks {
  bool p_prime = false;
  bool n_odd = false;
  bool n3_is_3 = false;
  bool n_neq_p = false;
  bool coprime = false;  // gcd(p^n - 1, n) = 1
};

struct Params {
  Nat p;
  std::uint64_t n = 0;
  ParamChecks checks;
  Nat n3;          // 3-part of n
  Nat coprime_gcd; // gcd(p^n - 1, n)

  bool valid() const {
    return checks.p_prime && checks.n_odd && checks.n3_is_3 && checks.n_neq_p && checks.coprime;
  }

  /// Short machine-readable reasons for invalidity, e.g. "n3=9", "gcd=7".
  std::vector<std::string> reasons() const {
    std::vector<std::string> out;
    if (!checks.p_prime) out.push_back("p not prime");
    if (!checks.n_odd) out.push_back("n even");
    if (!checks.n3_is_3) out.push_back("n3=" + n3.str());
    if (!checks.n_neq_p) out.push_back("n=p");
    if (!checks.coprime) out.push_back("gcd=" + coprime_gcd.str());
    return out;
  }
};

inline Params validate(const Nat& p, std::uint64_t n) {
  Params out;
  out.p = p;
  out.n = n;
  out.checks.p_prime = is_prime(p);
  out.checks.n_odd = n % 2 == 1;
  std::uint64_t n3 = 1;
  for (std::uint64_t m = n; m != 0 && m % 3 == 0; m /= 3) n3 *= 3;
  out.n3 = n3;
  out.checks.n3_is_3 = n3 == 3;
  out.checks.n_neq_p = p != n;
  if (n == 0) {
    out.coprime_gcd = 0;
  } else {
    // gcd(p^n - 1, n) = gcd((p^n - 1) mod n, n)
    const Nat nn = n;
    out.coprime_gcd = gcd(mod(powm(p, nn, nn) - 1, nn), nn);
  }
  out.checks.coprime = out.coprime_gcd == 1;
  return out;
}

// ---------------------------------------------------------------------------
// Constructive search
// ---------------------------------------------------------------------------

/// One step r_i -> r_{i+1}: a = prod(r_j - 1), b = prod(r_j),
/// alpha a + beta b = 1 with 0 <= alpha < b, d = 2 alpha a + beta b.
struct RStep {
  Nat a, b, alpha, beta, d;
  Nat prime;                  // r_{i+1}
  std::uint64_t scanned = 0;  // candidates examined in the progression
};

struct SearchWitness {
  std::uint64_t c = 0, l = 0;
  std::vector<Nat> m_list, q_list;
  std::vector<Nat> r_list;
  std::vector<RStep> r_steps;
  // p-search data: m = m_i (mod q_i); alpha Q + beta R = 1; f = -alpha Q + m beta R.
  Nat m, q_product, r_product, alpha, beta, f;
  Nat p;
  Nat n;
  std::uint64_t p_scanned = 0;
};

struct SearchBudget {
  std::uint64_t candidates = 1'000'000;  // per progression scan
};

struct SearchOutcome {
  bool ok = false;
  SearchWitness witness;  // partial on failure
  std::string failure;
};

namespace detail {

// Smallest prime >= start, congruent to residue mod modulus, not in `avoid`.
inline std::optional<Nat> scan_progression(const Nat& residue, const Nat& modulus, const Nat& start,
                                           const std::set<Nat>& avoid, std::uint64_t cap,
                                           std::uint64_t& scanned) {
  Nat candidate = mod(residue, modulus);
  if (candidate < start) candidate += ((start - candidate + modulus - 1) / modulus) * modulus;
  for (scanned = 0; scanned < cap; candidate += modulus) {
    ++scanned;
    if (avoid.count(candidate) == 0 && is_prime(candidate)) return candidate;
  }
  return std::nullopt;
}

}  // namespace detail

inline SearchOutcome search_lemma41(std::uint64_t c, std::uint64_t l, const SearchBudget& budget = {}) {
  if (c < 1 || l < 1) throw std::invalid_argument("search_lemma41: c and l must be >= 1");
  SearchOutcome out;
  SearchWitness& w = out.witness;
  w.c = c;
  w.l = l;

  // (i) q_i | m_i^2 + m_i + 1 with m_1 = 3 and m_i = 3 q_1 ... q_{i-1}.
  std::set<Nat> q_set;
  Nat q_prod = 1;
  for (std::uint64_t i = 0; i < c; ++i) {
    const Nat m = 3 * q_prod;
    const Factored f = factor(m * m + m + 1);
    std::optional<Nat> chosen;
    for (const Nat& prime : f.primes()) {
      if (prime != 3 && q_set.count(prime) == 0) {
        chosen = prime;
        break;
      }
    }
    if (!chosen) {
      out.failure = "no admissible prime factor of m^2+m+1 for m=" + m.str();
      return out;
    }
    w.m_list.push_back(m);
    w.q_list.push_back(*chosen);
    q_set.insert(*chosen);
    q_prod *= *chosen;
  }

  // (ii) r_1 = 3, then r_{i+1} = d (mod ab), r_{i+1} > r_i, r_{i+1} not a q_j.
  w.r_list.push_back(3);
  while (w.r_list.size() < l) {
    RStep step;
    step.a = 1;
    step.b = 1;
    for (const Nat& r : w.r_list) {
      step.a *= r - 1;
      step.b *= r;
    }
    const auto bez = extended_gcd(step.a, step.b);
    if (bez.g != 1) {
      out.failure = "gcd(a, b) != 1";
      return out;
    }
    step.alpha = mod(bez.x, step.b);
    step.beta = (1 - step.alpha * step.a) / step.b;
    step.d = 2 * step.alpha * step.a + step.beta * step.b;
    const Nat modulus = step.a * step.b;
    auto prime = detail::scan_progression(step.d, modulus, w.r_list.back() + 1, q_set, budget.candidates,
                                          step.scanned);
    w.r_steps.push_back(step);
    if (!prime) {
      out.failure = "budget exhausted searching r_" + std::to_string(w.r_list.size() + 1);
      return out;
    }
    w.r_steps.back().prime = *prime;
    w.r_list.push_back(*prime);
  }
  w.n = 1;
  for (const Nat& r : w.r_list) w.n *= r;

  // (iii) m = m_i (mod q_i); f from Bezout on (Q, R); p = f (mod QR).
  std::vector<Congruence> system;
  for (std::size_t i = 0; i < w.q_list.size(); ++i) system.push_back({mod(w.m_list[i], w.q_list[i]), w.q_list[i]});
  w.m = crt(system).remainder;
  w.q_product = q_prod;
  w.r_product = w.n;
  const auto bez = extended_gcd(w.q_product, w.r_product);
  w.alpha = mod(bez.x, w.r_product);
  w.beta = (1 - w.alpha * w.q_product) / w.r_product;
  w.f = -w.alpha * w.q_product + w.m * w.beta * w.r_product;
  auto p = detail::scan_progression(w.f, w.q_product * w.r_product, 2, {}, budget.candidates, w.p_scanned);
  if (!p) {
    out.failure = "budget exhausted searching p";
    return out;
  }
  w.p = *p;
  out.ok = true;
  return out;
}

/// Re-derives every congruence of the search trail and the four conclusions:
/// (a) p^2+p+1 has >= c distinct prime factors, (b) gcd(n, p(p^n-1)) = 1,
/// (c) n odd with 3-part 3, (d) n has exactly l prime factors.
inline Report verify_witness(const SearchWitness& w) {
  Report rep;
  rep.add("list lengths", w.q_list.size() == w.c && w.m_list.size() == w.c && w.r_list.size() == w.l);

  Nat q_prod = 1;
  std::set<Nat> q_set;
  for (std::size_t i = 0; i < w.q_list.size() && i < w.m_list.size(); ++i) {
    const Nat& q = w.q_list[i];
    const Nat& m = w.m_list[i];
    const std::string tag = "q_" + std::to_string(i + 1);
    rep.add(tag + " prime", is_prime(q), q.str());
    rep.add(tag + " != 3", q != 3);
    rep.add(tag + " distinct", q_set.insert(q).second);
    rep.add(tag + " | m^2+m+1", (m * m + m + 1) % q == 0, "m=" + m.str());
    rep.add("m_" + std::to_string(i + 1) + " = 3 q_1...q_{i-1}", m == 3 * q_prod);
    q_prod *= q;
  }

  Nat a = 1, b = 1;
  for (std::size_t i = 0; i < w.r_list.size(); ++i) {
    const Nat& r = w.r_list[i];
    const std::string tag = "r_" + std::to_string(i + 1);
    rep.add(tag + " prime", is_prime(r), r.str());
    rep.add(tag + " not a q", q_set.count(r) == 0);
    if (i == 0) {
      rep.add("r_1 = 3", r == 3);
    } else {
      rep.add(tag + " > r_" + std::to_string(i), r > w.r_list[i - 1]);
      rep.add(tag + " = 1 mod prod(r_j - 1)", mod(r, a) == 1 % a);
      rep.add(tag + " = 2 mod prod(r_j)", mod(r, b) == 2 % b);
      rep.add("gcd(a,b) = 1 before " + tag, gcd(a, b) == 1);
      if (i - 1 < w.r_steps.size()) {
        const RStep& s = w.r_steps[i - 1];
        rep.add(tag + " step a,b", s.a == a && s.b == b);
        rep.add(tag + " bezout", s.alpha * s.a + s.beta * s.b == 1);
        rep.add(tag + " d = 2 alpha a + beta b", s.d == 2 * s.alpha * s.a + s.beta * s.b);
        rep.add(tag + " gcd(d, ab) = 1", gcd(mod(s.d, a * b), a * b) == 1);
        rep.add(tag + " = d mod ab", mod(r, a * b) == mod(s.d, a * b));
      } else {
        rep.add(tag + " step recorded", false);
      }
    }
    a *= r - 1;
    b *= r;
  }

  Nat n = 1;
  for (const Nat& r : w.r_list) n *= r;
  rep.add("n = prod(r_i)", n == w.n, w.n.str());

  for (std::size_t i = 0; i < w.q_list.size() && i < w.m_list.size(); ++i) {
    rep.add("m = m_" + std::to_string(i + 1) + " mod q_" + std::to_string(i + 1),
            mod(w.m, w.q_list[i]) == mod(w.m_list[i], w.q_list[i]));
  }
  rep.add("Q = prod(q_i)", w.q_product == q_prod);
  rep.add("R = prod(r_i)", w.r_product == n);
  rep.add("alpha Q + beta R = 1", w.alpha * w.q_product + w.beta * w.r_product == 1);
  rep.add("f = -alpha Q + m beta R", w.f == -w.alpha * w.q_product + w.m * w.beta * w.r_product);
  const Nat qr = w.q_product * w.r_product;
  rep.add("gcd(f, QR) = 1", qr != 0 && gcd(mod(w.f, qr), qr) == 1);
  rep.add("p prime", is_prime(w.p), w.p.str());
  rep.add("p = f mod QR", qr != 0 && mod(w.p, qr) == mod(w.f, qr));
  rep.add("p = -1 mod r_1...r_l", n != 0 && mod(w.p + 1, n) == 0);

  // Conclusions.
  const Nat cyc = w.p * w.p + w.p + 1;
  bool all_q_divide = true;
  for (const Nat& q : w.q_list) all_q_divide = all_q_divide && cyc % q == 0;
  rep.add("(a) p^2+p+1 divisible by >= c distinct primes", all_q_divide && q_set.size() >= w.c,
          "p^2+p+1=" + cyc.str());
  bool fits = n > 0 && n < Nat(std::uint64_t{1} << 32);
  if (fits) {
    const std::uint64_t n64 = n.convert_to<std::uint64_t>();
    const Nat pn1_mod_n = mod(powm(w.p, n, n) - 1, n);
    rep.add("(b) gcd(n, p(p^n-1)) = 1", gcd(mod(w.p * pn1_mod_n, n), n) == 1);
    const Params params = validate(w.p, n64);
    rep.add("(c) n odd", params.checks.n_odd);
    rep.add("(c) n_3 = 3", params.checks.n3_is_3);
    rep.add("condition (p, n) valid", params.valid());
  } else {
    rep.add("(b)/(c) n within range", false, n.str());
  }
  const Factored fn = factor(n);
  rep.add("(d) n has exactly l prime divisors", fn.complete() && fn.factors.size() == w.l);
  return rep;
}

}  // namespace cdg
