#pragma once

// Scanner for the lower bound omega(2^n - 1) >= 2^l (l = number of prime
// divisors of n, l >= 3, gcd(2^n - 1, n) = 1), and the weaker bound that
// holds unconditionally for every base p.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cdgraph/arith.hpp"
#include "cdgraph/cyclotomic.hpp"

namespace cdg {

enum class Verdict { pass, fail, inconclusive, excluded };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::excluded: return "excluded";
  }
  return "?";
}

struct ScanRow {
  std::uint64_t n = 0;
  std::uint64_t l = 0;  // number of distinct primes of n
  bool coprime_ok = false;
  std::uint64_t omega = 0;      // certified distinct primes of 2^n - 1
  bool omega_complete = false;  // true: omega is exact
  Nat target;                   // 2^l
  Verdict verdict = Verdict::excluded;
  std::vector<Nat> certificate;  // the primes counted, ascending
};

struct ScanOptions {
  FactorBudget budget;
  bool early_exit = true;  // stop factoring once the target is certified
  unsigned jobs = 1;
};

/// Distinct primes of base^n - 1 gathered piece by piece (d | n ascending),
/// optionally stopping once `stop_at` primes are certified.
struct PieceOmega {
  std::set<Nat> primes;
  bool complete = true;
  bool stopped_early = false;
};

inline PieceOmega omega_by_pieces(const Nat& base, std::uint64_t n, const FactorBudget& budget,
                                  std::optional<std::uint64_t> stop_at) {
  PieceOmega out;
  for (std::uint64_t d : divisors_u64(n)) {
    if (stop_at && out.primes.size() >= *stop_at) {
      out.stopped_early = true;
      break;
    }
    const CyclotomicValue piece = phi_at(d, base, budget);
    for (const auto& kv : piece.value.factors) out.primes.insert(kv.first);
    if (!piece.value.complete()) out.complete = false;
  }
  if (out.stopped_early) out.complete = false;
  return out;
}

inline ScanRow scan_one(std::uint64_t n, const ScanOptions& opts) {
  ScanRow row;
  row.n = n;
  row.l = n == 0 ? 0 : factor(Nat(n)).factors.size();
  row.target = Nat(1) << row.l;
  const Nat nn = n;
  row.coprime_ok = n >= 1 && gcd(mod(powm(Nat(2), nn, nn) - 1, nn), nn) == 1;
  if (!row.coprime_ok || row.l < 3) {
    row.verdict = Verdict::excluded;
    return row;
  }
  const auto target64 = row.target.convert_to<std::uint64_t>();
  const PieceOmega om = omega_by_pieces(2, n, opts.budget,
                                        opts.early_exit ? std::optional<std::uint64_t>(target64) : std::nullopt);
  row.omega = om.primes.size();
  row.omega_complete = om.complete;
  row.certificate.assign(om.primes.begin(), om.primes.end());
  if (row.omega >= target64) {
    row.verdict = Verdict::pass;
  } else if (row.omega_complete) {
    row.verdict = Verdict::fail;
  } else {
    row.verdict = Verdict::inconclusive;
  }
  return row;
}

/// One row per n in [1, n_max], in increasing n regardless of `jobs`.
inline std::vector<ScanRow> scan_conjecture(std::uint64_t n_max, const ScanOptions& opts = {}) {
  if (n_max < 3) throw std::invalid_argument("scan_conjecture: n_max must be >= 3");
  std::vector<ScanRow> rows(n_max);
  std::atomic<std::uint64_t> next{1};
  auto worker = [&] {
    for (std::uint64_t n = next++; n <= n_max; n = next++) rows[n - 1] = scan_one(n, opts);
  };
  const unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

struct ObservationReport {
  Nat p;
  std::uint64_t n = 0;
  std::uint64_t omega = 0;
  bool complete = true;
  Nat bound;  // 2^{|pi(n)|}, minus one when p = 2
  Verdict verdict = Verdict::inconclusive;
};

/// omega(p^n - 1) >= 2^{|pi(n)|} for p >= 3, >= 2^{|pi(n)|} - 1 for p = 2,
/// whenever gcd(p^n - 1, n) = 1.
inline ObservationReport check_observation(const Nat& p, std::uint64_t n, const FactorBudget& budget = {}) {
  if (p < 2 || n < 1) throw std::invalid_argument("check_observation: need p >= 2, n >= 1");
  const Nat nn = n;
  if (gcd(mod(powm(p, nn, nn) - 1, nn), nn) != 1) {
    throw std::invalid_argument("check_observation: gcd(p^n - 1, n) != 1");
  }
  ObservationReport rep;
  rep.p = p;
  rep.n = n;
  const std::size_t k = factor(nn).factors.size();
  rep.bound = (Nat(1) << k) - (p == 2 ? 1 : 0);
  const PieceOmega om = omega_by_pieces(p, n, budget, std::nullopt);
  rep.omega = om.primes.size();
  rep.complete = om.complete;
  if (Nat(rep.omega) >= rep.bound) {
    rep.verdict = Verdict::pass;
  } else {
    rep.verdict = rep.complete ? Verdict::fail : Verdict::inconclusive;
  }
  return rep;
}

}  // namespace cdg
