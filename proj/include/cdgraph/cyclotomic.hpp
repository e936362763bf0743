#pragma once

// Cyclotomic values lambda_d(q) at integer arguments, evaluated through the
// Moebius product of (q^e - 1) and factored piece by piece.

#include <cstdint>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "cdgraph/arith.hpp"

namespace cdg {

inline std::vector<std::uint64_t> divisors_u64(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (const Nat& d : divisors(Nat(n))) out.push_back(d.convert_to<std::uint64_t>());
  return out;
}

inline int mobius_u64(std::uint64_t k) { return mobius(Nat(k)); }

/// Exact lambda_d(q) = prod_{e | d} (q^e - 1)^{mu(d/e)}.
inline Nat phi_value(std::uint64_t d, const Nat& q) {
  if (d < 1) throw std::invalid_argument("phi_value: d must be >= 1");
  if (q < 2) throw std::invalid_argument("phi_value: q must be >= 2");
  Nat num = 1, den = 1;
  for (std::uint64_t e : divisors_u64(d)) {
    const int mu = mobius_u64(d / e);
    if (mu == 0) continue;
    const Nat term = pow(q, static_cast<unsigned>(e)) - 1;
    (mu > 0 ? num : den) *= term;
  }
  if (num % den != 0) throw std::logic_error("phi_value: Moebius product is not integral");
  return num / den;
}

struct CyclotomicValue {
  std::uint64_t d = 1;
  Nat q = 2;
  Factored value;
};

namespace detail {

// Shared, mutex-guarded memo of factored cyclotomic values.
class PhiCache {
 public:
  using Key = std::tuple<std::uint64_t, Nat, std::uint64_t, std::uint64_t>;

  static PhiCache& instance() {
    static PhiCache cache;
    return cache;
  }

  bool lookup(const Key& key, Factored& out) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = table_.find(key);
    if (it == table_.end()) return false;
    out = it->second;
    return true;
  }

  void store(const Key& key, const Factored& value) {
    std::lock_guard<std::mutex> lock(mutex_);
    table_.emplace(key, value);
  }

 private:
  std::mutex mutex_;
  std::map<Key, Factored> table_;
};

}  // namespace detail

inline CyclotomicValue phi_at(std::uint64_t d, const Nat& q, const FactorBudget& budget = {}) {
  const detail::PhiCache::Key key{d, q, budget.trial_bound, budget.rho_iterations};
  CyclotomicValue out{d, q, {}};
  if (detail::PhiCache::instance().lookup(key, out.value)) return out;
  out.value = factor(phi_value(d, q), budget);
  detail::PhiCache::instance().store(key, out.value);
  return out;
}

/// prod lambda_d(q) over divisors d of n accepted by keep(d); the product is
/// assembled from the per-piece factorizations.
template <class Keep>
Factored cyclotomic_product(const Nat& q, std::uint64_t n, Keep keep,
                            const FactorBudget& budget = {}) {
  Factored acc;
  for (std::uint64_t d : divisors_u64(n)) {
    if (keep(d)) acc *= phi_at(d, q, budget).value;
  }
  return acc;
}

/// (q^n - 1)/(q^m - 1) for m | n, factored via the pieces d | n with d not dividing m.
inline Factored power_quotient(const Nat& q, std::uint64_t n, std::uint64_t m,
                               const FactorBudget& budget = {}) {
  if (m == 0 || n % m != 0) throw std::invalid_argument("power_quotient: m must divide n");
  return cyclotomic_product(q, n, [m](std::uint64_t d) { return m % d != 0; }, budget);
}

/// q^n - 1 as the product of all its cyclotomic pieces.
inline Factored power_minus_one(const Nat& q, std::uint64_t n, const FactorBudget& budget = {}) {
  return cyclotomic_product(q, n, [](std::uint64_t) { return true; }, budget);
}

struct OmegaCount {
  std::size_t count = 0;
  bool complete = true;  // false: count is a lower bound
  std::vector<Nat> primes;
};

/// Distinct primes of (q^n - 1)/(q^m - 1).
inline OmegaCount omega_quotient(const Nat& q, std::uint64_t n, std::uint64_t m,
                                 const FactorBudget& budget = {}) {
  if (q < 2) throw std::invalid_argument("omega_quotient: q must be >= 2");
  const Factored f = power_quotient(q, n, m, budget);
  OmegaCount out;
  out.primes = f.primes();
  out.count = out.primes.size();
  out.complete = f.complete();
  return out;
}

struct LemmaNtRow {
  std::uint64_t m = 1;
  OmegaCount omega;
  std::int64_t bound = 0;  // d(n) - d(m)
  bool ok = false;
};

struct LemmaNtReport {
  Nat q;
  std::uint64_t n = 1;
  Nat hypothesis_gcd;  // gcd(n, (q^n-1)/(q-1))
  bool hypothesis_ok = false;
  std::vector<LemmaNtRow> rows;

  bool all_ok() const {
    if (!hypothesis_ok) return false;
    for (const auto& row : rows) {
      if (!row.ok) return false;
    }
    return true;
  }
};

/// Checks omega((q^n-1)/(q^m-1)) >= d(n) - d(m) for every m | n. When the
/// hypothesis gcd(n, (q^n-1)/(q-1)) = 1 fails the report carries no rows.
inline LemmaNtReport check_lemma_nt(const Nat& q, std::uint64_t n, const FactorBudget& budget = {}) {
  LemmaNtReport report;
  report.q = q;
  report.n = n;
  const Nat repunit = (pow(q, static_cast<unsigned>(n)) - 1) / (q - 1);
  report.hypothesis_gcd = gcd(Nat(n), repunit);
  report.hypothesis_ok = report.hypothesis_gcd == 1;
  if (!report.hypothesis_ok) return report;
  const auto dn = static_cast<std::int64_t>(divisors_u64(n).size());
  for (std::uint64_t m : divisors_u64(n)) {
    LemmaNtRow row;
    row.m = m;
    row.omega = omega_quotient(q, n, m, budget);
    row.bound = dn - static_cast<std::int64_t>(divisors_u64(m).size());
    // An incomplete count is a lower bound, so reaching the bound still certifies.
    row.ok = static_cast<std::int64_t>(row.omega.count) >= row.bound;
    report.rows.push_back(std::move(row));
  }
  return report;
}

/// True iff p^n - 1 has no primitive prime divisor (Zsigmondy exceptions).
inline bool zsigmondy_exception(const Nat& p, std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("zsigmondy_exception: n must be >= 2");
  if (p == 2 && n == 6) return true;
  if (n == 2) {
    const Nat s = p + 1;
    return (s & (s - 1)) == 0;
  }
  return false;
}

}  // namespace cdg
