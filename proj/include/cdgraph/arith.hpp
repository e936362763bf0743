#pragma once

// Exact integer utilities: primality, factorization, gcd/CRT, Moebius,
// divisor counts, sigma-parts and multiplicative orders.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cdg {

using Nat = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Conversions
// ---------------------------------------------------------------------------

inline Nat parse_nat(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty numeral");
  for (char ch : text) {
    if (ch < '0' || ch > '9') {
      throw std::invalid_argument("malformed numeral: " + std::string(text));
    }
  }
  return Nat(std::string(text));
}

inline std::string to_string(const Nat& x) { return x.str(); }

inline bool fits_u64(const Nat& x) {
  return x == 0 || (x > 0 && boost::multiprecision::msb(x) < 64);
}

inline std::uint64_t to_u64(const Nat& x) {
  if (!fits_u64(x)) throw std::overflow_error("value exceeds 64 bits: " + x.str());
  return x.convert_to<std::uint64_t>();
}

inline Nat pow(const Nat& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

inline Nat powm(const Nat& base, const Nat& exponent, const Nat& modulus) {
  if (modulus == 1) return 0;
  return boost::multiprecision::powm(base, exponent, modulus);
}

inline Nat gcd(const Nat& a, const Nat& b) { return boost::multiprecision::gcd(a, b); }
inline Nat lcm(const Nat& a, const Nat& b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd(a, b) * b;
}

inline unsigned bit_length(const Nat& x) {
  return x == 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(x)) + 1u;
}

/// Floor of the k-th root of x (k >= 1).
inline Nat iroot(const Nat& x, unsigned k) {
  if (k == 1 || x < 2) return x;
  // Newton iteration from an upper bound.
  Nat r = Nat(1) << ((bit_length(x) + k - 1) / k);
  while (true) {
    Nat next = ((k - 1) * r + x / pow(r, k - 1)) / k;
    if (next >= r) break;
    r = next;
  }
  while (pow(r + 1, k) <= x) ++r;
  while (pow(r, k) > x) --r;
  return r;
}

// ---------------------------------------------------------------------------
// Primality
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mulmod64(result, base, m);
    base = mulmod64(base, base, m);
    e >>= 1;
  }
  return result;
}

inline bool mr_round64(std::uint64_t n, std::uint64_t d, int s, std::uint64_t a) {
  std::uint64_t x = powmod64(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod64(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

inline bool mr_round(const Nat& n, const Nat& d, unsigned s, const Nat& a) {
  Nat x = powm(a, d, n);
  const Nat n1 = n - 1;
  if (x == 1 || x == n1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n1) return true;
  }
  return false;
}

constexpr std::uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace detail

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : detail::kWitnesses) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : detail::kWitnesses) {
    if (!detail::mr_round64(n, d, s, a)) return false;
  }
  return true;
}

/// Deterministic below 2^64; above, the fixed witnesses plus 64 rounds with
/// bases drawn from a generator seeded by the input, so results are
/// reproducible.
inline bool is_prime(const Nat& n) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime_u64(n.convert_to<std::uint64_t>());
  for (std::uint64_t p : detail::kWitnesses) {
    if (n % p == 0) return false;
  }
  Nat d = n - 1;
  unsigned s = 0;
  while (!boost::multiprecision::bit_test(d, 0)) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : detail::kWitnesses) {
    if (!detail::mr_round(n, d, s, Nat(a))) return false;
  }
  std::mt19937_64 rng(static_cast<std::uint64_t>(n & 0xffffffffffffffffULL) ^ 0x9e3779b97f4a7c15ULL);
  const Nat span = n - 3;
  for (int round = 0; round < 64; ++round) {
    Nat a = 0;
    for (unsigned limb = 0; limb * 64 < bit_length(n) + 64; ++limb) a = (a << 64) | Nat(rng());
    a = 2 + a % span;
    if (!detail::mr_round(n, d, s, a)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

struct FactorBudget {
  std::uint64_t trial_bound = 1'000'000;
  std::uint64_t rho_iterations = std::uint64_t{1} << 26;  // per composite
};

/// A computation needed a complete factorization that the budget did not give.
struct BudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// value = cofactor * prod(prime^exponent). A cofactor other than 1 is a
/// composite that resisted the budget; prime sets are then lower bounds.
struct Factored {
  Nat value = 1;
  std::map<Nat, unsigned> factors;
  Nat cofactor = 1;

  bool complete() const { return cofactor == 1; }

  static Factored prime_power(const Nat& prime, unsigned exponent) {
    Factored f;
    if (exponent > 0) {
      f.factors[prime] = exponent;
      f.value = pow(prime, exponent);
    }
    return f;
  }

  Factored& operator*=(const Factored& other) {
    value *= other.value;
    for (const auto& [prime, e] : other.factors) factors[prime] += e;
    cofactor *= other.cofactor;
    return *this;
  }
  friend Factored operator*(Factored a, const Factored& b) { return a *= b; }

  std::vector<Nat> primes() const {
    std::vector<Nat> out;
    out.reserve(factors.size());
    for (const auto& kv : factors) out.push_back(kv.first);
    return out;
  }

  Nat reassemble() const {
    Nat acc = cofactor;
    for (const auto& [prime, e] : factors) acc *= pow(prime, e);
    return acc;
  }
};

/// "7^2 * 127 * 337"; an unfactored cofactor is shown as "[c]".
inline std::string format_factored(const Factored& f) {
  if (f.factors.empty() && f.complete()) return "1";
  std::string out;
  for (const auto& [prime, e] : f.factors) {
    if (!out.empty()) out += " * ";
    out += prime.str();
    if (e > 1) out += "^" + std::to_string(e);
  }
  if (!f.complete()) {
    if (!out.empty()) out += " * ";
    out += "[" + f.cofactor.str() + "]";
  }
  return out;
}

namespace detail {

inline std::vector<std::uint32_t> sieve_primes(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = sieve_primes(1'000'000);
  return primes;
}

// Primes up to limit; `storage` backs limits beyond the cached sieve.
inline std::span<const std::uint32_t> primes_up_to(std::uint64_t limit,
                                                   std::vector<std::uint32_t>& storage) {
  if (limit <= 1'000'000) {
    const auto& all = small_primes();
    auto end = std::upper_bound(all.begin(), all.end(), limit);
    return {all.data(), static_cast<std::size_t>(end - all.begin())};
  }
  storage = sieve_primes(limit);
  return storage;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0 when the
// iteration budget runs out.
inline std::uint64_t rho_brent64(std::uint64_t n, std::uint64_t& budget) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1; budget > 0; ++c) {
    auto f = [&](std::uint64_t v) { return (mulmod64(v, v, n) + c) % n; };
    std::uint64_t y = 2, x = 2, ys = 2, q = 1, g = 1;
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 128;
    while (g == 1 && budget > 0) {
      x = y;
      for (std::uint64_t i = 0; i < r && budget > 0; ++i, --budget) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1 && budget > 0; k += m) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k) && budget > 0; ++i, --budget) {
          y = f(y);
          q = mulmod64(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
      r <<= 1;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
  }
  return 0;
}

inline Nat rho_brent(const Nat& n, std::uint64_t& budget) {
  if (fits_u64(n)) return Nat(rho_brent64(n.convert_to<std::uint64_t>(), budget));
  if (!boost::multiprecision::bit_test(n, 0)) return 2;
  for (unsigned c = 1; budget > 0; ++c) {
    auto f = [&](const Nat& v) { return (v * v + c) % n; };
    Nat y = 2, x = 2, ys = 2, q = 1, g = 1;
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 128;
    while (g == 1 && budget > 0) {
      x = y;
      for (std::uint64_t i = 0; i < r && budget > 0; ++i, --budget) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1 && budget > 0; k += m) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k) && budget > 0; ++i, --budget) {
          y = f(y);
          q = q * (x > y ? Nat(x - y) : Nat(y - x)) % n;
        }
        g = gcd(q, n);
      }
      r <<= 1;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(x > ys ? Nat(x - ys) : Nat(ys - x), n);
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
  }
  return 0;
}

// Returns (root, k) with root^k == n for the largest such k > 1, or (n, 1).
inline std::pair<Nat, unsigned> perfect_power(const Nat& n) {
  const unsigned bits = bit_length(n);
  for (unsigned k = bits; k >= 2; --k) {
    Nat r = iroot(n, k);
    if (r > 1 && pow(r, k) == n) return {r, k};
  }
  return {n, 1};
}

}  // namespace detail

/// Trial division up to the budget's bound, then Pollard-rho (Brent). When the
/// rho budget is exhausted the remaining composite is kept as cofactor.
inline Factored factor(const Nat& x, const FactorBudget& budget = {}) {
  if (x < 1) throw std::invalid_argument("factor: input must be >= 1");
  Factored out;
  out.value = x;
  Nat rem = x;
  std::vector<std::uint32_t> storage;
  const auto primes = detail::primes_up_to(budget.trial_bound, storage);
  for (std::uint32_t p : primes) {
    if (fits_u64(rem)) {
      const std::uint64_t r64 = rem.convert_to<std::uint64_t>();
      if (static_cast<unsigned __int128>(p) * p > r64) break;
      if (r64 % p != 0) continue;
    } else if (rem % p != 0) {
      continue;
    }
    unsigned e = 0;
    while (rem % p == 0) {
      rem /= p;
      ++e;
    }
    out.factors[Nat(p)] = e;
  }
  if (rem == 1) return out;
  const Nat bound = budget.trial_bound;
  if (rem <= bound * bound || is_prime(rem)) {
    out.factors[rem] += 1;
    return out;
  }

  std::vector<std::pair<Nat, unsigned>> pending{{rem, 1}};
  while (!pending.empty()) {
    auto [m, mult] = pending.back();
    pending.pop_back();
    if (m == 1) continue;
    if (is_prime(m)) {
      out.factors[m] += mult;
      continue;
    }
    auto [root, k] = detail::perfect_power(m);
    if (k > 1) {
      pending.emplace_back(root, mult * k);
      continue;
    }
    std::uint64_t iterations = budget.rho_iterations;
    Nat d = detail::rho_brent(m, iterations);
    if (d == 0) {
      out.cofactor *= pow(m, mult);
      continue;
    }
    pending.emplace_back(d, mult);
    pending.emplace_back(m / d, mult);
  }
  return out;
}

inline Factored factor(std::uint64_t x, const FactorBudget& budget = {}) {
  return factor(Nat(x), budget);
}

inline std::vector<Nat> prime_divisors(const Nat& x) { return factor(x).primes(); }

// ---------------------------------------------------------------------------
// Multiplicative functions
// ---------------------------------------------------------------------------

inline int mobius(const Nat& k) {
  if (k < 1) throw std::invalid_argument("mobius: k must be >= 1");
  const Factored f = factor(k);
  if (!f.complete()) throw std::runtime_error("mobius: factorization incomplete");
  for (const auto& kv : f.factors) {
    if (kv.second > 1) return 0;
  }
  return f.factors.size() % 2 == 0 ? 1 : -1;
}

inline Nat divisor_count(const Factored& k) {
  if (!k.complete()) throw std::invalid_argument("divisor_count: incomplete factorization");
  Nat count = 1;
  for (const auto& kv : k.factors) count *= kv.second + 1;
  return count;
}

/// All positive divisors in ascending order.
inline std::vector<Nat> divisors(const Factored& k) {
  if (!k.complete()) throw std::invalid_argument("divisors: incomplete factorization");
  std::vector<Nat> out{1};
  for (const auto& [prime, e] : k.factors) {
    const std::size_t base = out.size();
    Nat pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= prime;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Nat> divisors(const Nat& k) { return divisors(factor(k)); }

/// Largest divisor of k whose prime divisors all lie in sigma.
inline Nat sigma_part(const Factored& k, const std::set<Nat>& sigma) {
  if (!k.complete()) throw std::invalid_argument("sigma_part: incomplete factorization");
  Nat part = 1;
  for (const auto& [prime, e] : k.factors) {
    if (sigma.count(prime) != 0) part *= pow(prime, e);
  }
  return part;
}

// ---------------------------------------------------------------------------
// Congruences
// ---------------------------------------------------------------------------

struct Congruence {
  Nat remainder;
  Nat modulus;
  friend bool operator==(const Congruence&, const Congruence&) = default;
};

struct Bezout {
  boost::multiprecision::cpp_int g, x, y;  // x*a + y*b = g
};

inline Bezout extended_gcd(const Nat& a, const Nat& b) {
  using boost::multiprecision::cpp_int;
  cpp_int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    cpp_int q = old_r / r;
    cpp_int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  return {old_r, old_s, old_t};
}

/// Non-negative remainder of a (possibly negative) value.
inline Nat mod(const Nat& a, const Nat& m) {
  Nat r = a % m;
  if (r < 0) r += m;
  return r;
}

inline Nat inverse_mod(const Nat& a, const Nat& m) {
  auto [g, x, y] = extended_gcd(mod(a, m), m);
  if (g != 1) throw std::invalid_argument("inverse_mod: not invertible");
  return mod(x, m);
}

/// Solves the system for pairwise coprime moduli.
inline Congruence crt(const std::vector<Congruence>& residues) {
  Congruence acc{0, 1};
  for (const auto& [r, m] : residues) {
    if (m < 1) throw std::invalid_argument("crt: modulus must be >= 1");
    if (gcd(acc.modulus, m) != 1) throw std::invalid_argument("crt: moduli are not pairwise coprime");
    // acc.remainder + acc.modulus * t == r (mod m)
    const Nat t = mod((r - acc.remainder) * inverse_mod(acc.modulus, m), m);
    acc.remainder += acc.modulus * t;
    acc.modulus *= m;
    acc.remainder = mod(acc.remainder, acc.modulus);
  }
  return acc;
}

/// True iff a has multiplicative order exactly k modulo m.
inline bool has_order(const Nat& a, const Nat& m, const Factored& k) {
  if (!k.complete()) throw std::invalid_argument("has_order: incomplete factorization of k");
  if (powm(a, k.value, m) != 1 % m) return false;
  for (const auto& kv : k.factors) {
    if (powm(a, k.value / kv.first, m) == 1) return false;
  }
  return true;
}

/// Least k >= 1 with a^k == 1 (mod m), reduced from the Carmichael exponent.
inline Nat mult_order(const Nat& a, const Nat& m, const FactorBudget& budget = {}) {
  if (m < 2) throw std::invalid_argument("mult_order: modulus must be >= 2");
  if (gcd(mod(a, m), m) != 1) throw std::invalid_argument("mult_order: arguments not coprime");
  const Factored fm = factor(m, budget);
  if (!fm.complete()) throw std::runtime_error("mult_order: modulus factorization incomplete");
  Factored lambda;
  auto merge_lcm = [&](const Factored& f) {
    for (const auto& [prime, e] : f.factors) {
      unsigned& slot = lambda.factors[prime];
      slot = std::max(slot, e);
    }
  };
  for (const auto& [prime, e] : fm.factors) {
    if (prime == 2) {
      const unsigned exp2 = e == 1 ? 0u : (e == 2 ? 1u : e - 2);
      if (exp2 > 0) merge_lcm(Factored::prime_power(2, exp2));
    } else {
      if (e > 1) merge_lcm(Factored::prime_power(prime, e - 1));
      const Factored pm1 = factor(prime - 1, budget);
      if (!pm1.complete()) throw std::runtime_error("mult_order: p-1 factorization incomplete");
      merge_lcm(pm1);
    }
  }
  Nat order = 1;
  for (const auto& [prime, e] : lambda.factors) order *= pow(prime, e);
  for (const auto& kv : lambda.factors) {
    for (unsigned i = 0; i < kv.second; ++i) {
      if (powm(a, order / kv.first, m) == 1) {
        order /= kv.first;
      } else {
        break;
      }
    }
  }
  return order;
}

}  // namespace cdg
