#pragma once

// Character-degree multisets of the group G(p, n) assembled from closed
// formulas, with the sum-of-squares identity as the consistency oracle.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdgraph/arith.hpp"
#include "cdgraph/cyclotomic.hpp"
#include "cdgraph/params.hpp"

namespace cdg {

enum class DegreeSource { I, IIa, IIb, IIIA, IIIB1, IIIB2a, IIIB2b, IIIB2c };

inline const char* to_string(DegreeSource s) {
  switch (s) {
    case DegreeSource::I: return "I";
    case DegreeSource::IIa: return "II.a";
    case DegreeSource::IIb: return "II.b";
    case DegreeSource::IIIA: return "III.A";
    case DegreeSource::IIIB1: return "III.B.1";
    case DegreeSource::IIIB2a: return "III.B.2a";
    case DegreeSource::IIIB2b: return "III.B.2b";
    case DegreeSource::IIIB2c: return "III.B.2c";
  }
  return "?";
}

struct DegreeRow {
  Factored degree;
  Nat multiplicity;
  DegreeSource source = DegreeSource::I;
};

struct DegreeTable {
  Params params;
  std::vector<DegreeRow> rows;
  Factored group_order;
};

/// Sum of multiplicity * degree^2 over all rows.
inline Nat sum_of_squares(const std::vector<DegreeRow>& rows) {
  Nat acc = 0;
  for (const auto& row : rows) acc += row.multiplicity * row.degree.value * row.degree.value;
  return acc;
}

inline bool check_sum_of_squares(const DegreeTable& table) {
  return sum_of_squares(table.rows) == table.group_order.value;
}

/// Multiplicity per distinct degree value, merged across source tags.
inline std::map<Nat, Nat> merged_degrees(const DegreeTable& table) {
  std::map<Nat, Nat> out;
  for (const auto& row : table.rows) out[row.degree.value] += row.multiplicity;
  return out;
}

namespace detail {

inline void require_valid(const Params& params, const char* who) {
  if (!params.valid()) {
    std::string why;
    for (const auto& r : params.reasons()) why += (why.empty() ? "" : ", ") + r;
    throw std::invalid_argument(std::string(who) + ": invalid parameters (" + why + ")");
  }
}

// Factored atoms shared by the blocks.
struct Atoms {
  Nat p;
  std::uint64_t n;
  Factored repunit;     // (p^n - 1)/(p - 1)
  Factored e_order;     // (p^n - 1)/(p^3 - 1)
  Factored n_factored;  // n

  Atoms(const Params& params, const FactorBudget& budget)
      : p(params.p),
        n(params.n),
        repunit(power_quotient(params.p, params.n, 1, budget)),
        e_order(power_quotient(params.p, params.n, 3, budget)),
        n_factored(factor(Nat(params.n))) {}

  Factored p_power(std::uint64_t k) const { return Factored::prime_power(p, static_cast<unsigned>(k)); }
  static Factored three() { return Factored::prime_power(3, 1); }
};

inline void push_row(std::vector<DegreeRow>& rows, Factored degree, Nat multiplicity, DegreeSource src) {
  if (multiplicity < 0) throw std::logic_error("negative multiplicity");
  if (multiplicity == 0) return;
  rows.push_back({std::move(degree), std::move(multiplicity), src});
}

inline Nat exact_div(const Nat& num, const Nat& den, const char* what) {
  if (num % den != 0) throw std::logic_error(std::string("non-integral ") + what);
  return num / den;
}

}  // namespace detail

/// Degrees d | n with a_d = (n/d^2) sum_{l | d} mu(d/l) (p^l - 1)/(p - 1).
inline std::vector<DegreeRow> block_I(const Params& params) {
  detail::require_valid(params, "block_I");
  const Nat& p = params.p;
  const std::uint64_t n = params.n;
  std::vector<DegreeRow> rows;
  for (std::uint64_t d : divisors_u64(n)) {
    Nat sum = 0;
    for (std::uint64_t l : divisors_u64(d)) {
      sum += mobius_u64(d / l) * ((pow(p, static_cast<unsigned>(l)) - 1) / (p - 1));
    }
    const Nat dd = Nat(d) * d;
    const Nat a_d = detail::exact_div(Nat(n) * sum, dd, "block I multiplicity");
    detail::push_row(rows, factor(Nat(d)), a_d, DegreeSource::I);
  }
  return rows;
}

namespace detail {

inline std::vector<DegreeRow> block_II(const Atoms& at) {
  const Nat& p = at.p;
  const Nat n = at.n;
  std::vector<DegreeRow> rows;
  push_row(rows, at.repunit, n * (p - 1), DegreeSource::IIa);
  push_row(rows, at.p_power((at.n - 1) / 2) * at.repunit, n * p * (p - 1), DegreeSource::IIb);
  return rows;
}

inline std::vector<DegreeRow> block_III(const Atoms& at) {
  const Nat& p = at.p;
  const Nat n = at.n;
  std::vector<DegreeRow> rows;
  push_row(rows, Atoms::three() * at.p_power(at.n) * at.e_order,
           exact_div(n * (p * p * p - p) * (p * p + p + 1), 9, "III.A multiplicity"), DegreeSource::IIIA);
  push_row(rows, at.p_power(at.n - 2) * at.repunit, n * p * (p - 1) * (p - 1), DegreeSource::IIIB1);
  push_row(rows, at.p_power(at.n - 3) * at.repunit, n * (p - 1) * (p - 1), DegreeSource::IIIB2a);
  push_row(rows, at.p_power(at.n - 3) * at.e_order, n * (p - 1), DegreeSource::IIIB2b);
  push_row(rows, Atoms::three() * at.p_power(at.n - 3) * at.e_order,
           exact_div(n * (p - 1) * (p * p + p), 9, "III.B.2c multiplicity"), DegreeSource::IIIB2c);
  return rows;
}

}  // namespace detail

inline std::vector<DegreeRow> block_II(const Params& params, const FactorBudget& budget = {}) {
  detail::require_valid(params, "block_II");
  return detail::block_II(detail::Atoms(params, budget));
}

inline std::vector<DegreeRow> block_III(const Params& params, const FactorBudget& budget = {}) {
  detail::require_valid(params, "block_III");
  return detail::block_III(detail::Atoms(params, budget));
}

/// |G| = n (p^n - 1) p^{3n} / (p - 1), factored.
inline Factored group_order(const Params& params, std::uint64_t p_exponent_factor = 3,
                            const FactorBudget& budget = {}) {
  return factor(Nat(params.n)) * power_quotient(params.p, params.n, 1, budget) *
         Factored::prime_power(params.p, static_cast<unsigned>(p_exponent_factor * params.n));
}

inline DegreeTable build_table(const Params& params, const FactorBudget& budget = {}) {
  detail::require_valid(params, "build_table");
  const detail::Atoms atoms(params, budget);
  DegreeTable table;
  table.params = params;
  table.rows = block_I(params);
  for (auto& r : detail::block_II(atoms)) table.rows.push_back(std::move(r));
  for (auto& r : detail::block_III(atoms)) table.rows.push_back(std::move(r));
  table.group_order = group_order(params, 3, budget);
  if (!check_sum_of_squares(table)) throw std::logic_error("build_table: sum of squares differs from |G|");
  return table;
}

/// Blocks I and II: the degrees of G/P_3, of order n (p^n - 1) p^{2n} / (p - 1).
inline DegreeTable quotient_table(const Params& params, const FactorBudget& budget = {}) {
  detail::require_valid(params, "quotient_table");
  const detail::Atoms atoms(params, budget);
  DegreeTable table;
  table.params = params;
  table.rows = block_I(params);
  for (auto& r : detail::block_II(atoms)) table.rows.push_back(std::move(r));
  table.group_order = group_order(params, 2, budget);
  if (!check_sum_of_squares(table)) throw std::logic_error("quotient_table: sum of squares differs from |G/P_3|");
  return table;
}

}  // namespace cdg
