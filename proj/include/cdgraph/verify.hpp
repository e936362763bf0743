#pragma once

// The full invariant suite for one (p, n): number-theoretic identities, the
// degree table, both prime graphs, and the skew-ring algebra (exhaustive on
// small fields, sampled with a fixed seed otherwise).

#include <cstdint>
#include <random>
#include <string>

#include "cdgraph/arith.hpp"
#include "cdgraph/cyclotomic.hpp"
#include "cdgraph/degrees.hpp"
#include "cdgraph/field.hpp"
#include "cdgraph/graph.hpp"
#include "cdgraph/params.hpp"
#include "cdgraph/report.hpp"
#include "cdgraph/skew.hpp"

namespace cdg {

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::uint64_t samples = 10'000;     // randomized group-law checks
  std::uint64_t random_a = 100;       // elements a for the bracket checks
  std::uint64_t field_cap = kExhaustiveFieldCap;  // exhaustive checks when |F| <= cap
  unsigned max_field_degree = 256;    // skip the skew-ring suite beyond this n
  FactorBudget budget;
};

/// Lemma-level gcd identities: gcd(p^2+p+1, |E|) = 1, gcd(p-1, |C|) = 1,
/// gcd(|C|, p+1) = 1, and |C| = |D| |E|.
inline Report check_gcd_identities(const Params& params) {
  Report rep;
  const SubgroupOrders o = SubgroupOrders::of(params.p, params.n);
  rep.add("|C| = |D| |E|", o.product_ok());
  rep.add("gcd(p^2+p+1, (p^n-1)/(p^3-1)) = 1", o.d_e_coprime());
  rep.add("gcd(p-1, (p^n-1)/(p-1)) = 1", gcd(params.p - 1, o.c_order) == 1);
  rep.add("gcd((p^n-1)/(p-1), p+1) = 1", gcd(o.c_order, params.p + 1) == 1);
  return rep;
}

/// Blocks I+II: two components, both complete, with vertex sets pi(n) and
/// {p} u pi((p^n-1)/(p-1)); the larger one has at least 2^{|smaller|} vertices.
inline Report check_quotient_graph(const Params& params, const FactorBudget& budget = {}) {
  Report rep;
  const DegreeTable qt = quotient_table(params, budget);
  rep.add("quotient sum of squares = |G/P_3|", check_sum_of_squares(qt));
  const PrimeGraph g = build_graph(qt);
  const auto comps = g.components();
  rep.add("quotient graph has two components", comps.size() == 2, std::to_string(comps.size()));
  bool complete = true;
  for (const auto& c : comps) complete = complete && g.is_clique(c);
  rep.add("quotient components are complete", complete);
  const auto n_primes = factor(Nat(params.n)).primes();
  const PrimeSet pi0(n_primes.begin(), n_primes.end());
  PrimeSet pi1 = detail::primes_of(power_quotient(params.p, params.n, 1, budget));
  pi1.insert(params.p);
  const bool sets_match = comps.size() == 2 && ((comps[0] == pi0 && comps[1] == pi1) || (comps[0] == pi1 && comps[1] == pi0));
  rep.add("quotient components are pi(n) and {p} u pi((p^n-1)/(p-1))", sets_match);
  rep.add("|pi1| >= 2^|pi0|", Nat(pi1.size()) >= two_pow(pi0.size()),
          std::to_string(pi1.size()) + " vs 2^" + std::to_string(pi0.size()));
  return rep;
}

struct FullProfile {
  DegreeTable table;
  GraphProfile profile;
};

inline FullProfile build_profile(const Params& params, const FactorBudget& budget = {}) {
  FullProfile out{build_table(params, budget), {}};
  const PrimeGraph g = build_graph(out.table);
  const auto [pi0, pi1] = construction_partition(params, g, budget);
  out.profile = classify(g, pi0, pi1);
  return out;
}

/// Graph-level checks on the full table. For n = 3 the class alpha is empty
/// and the graph has diameter 2, so diameter-3 statements are skipped.
inline Report check_full_graph(const Params& params, const FactorBudget& budget = {}) {
  Report rep;
  const FullProfile fp = build_profile(params, budget);
  const GraphProfile& prof = fp.profile;
  rep.add("sum of squares = |G|", check_sum_of_squares(fp.table));
  rep.add("Palfy three-vertex condition", palfy_check(prof.graph));
  rep.add("pi0 and pi1 are cliques", prof.pi0_clique && prof.pi1_clique);
  if (params.n == 3) {
    rep.skip("diameter 3", "n = 3 gives alpha empty, diameter " + to_string(prof.diameter));
  } else {
    rep.add("diameter 3", prof.is_diameter_three(), to_string(prof.diameter));
    rep.add("alpha-delta pairs at distance 3", prof.alpha_delta_at_three);
    rep.add("other pairs within distance 2", prof.others_within_two);
  }
  rep.add("|pi1| >= 2^|pi0|", prof.bound_ok);
  rep.append(structure_theorem_check(params, prof, budget), "structure ");
  rep.append_info(construction_diagnostics(params, prof, budget), "predicted ");
  return rep;
}

/// The skew-ring suite on F_{p^n}.
inline Report check_skew_ring(const Params& params, const VerifyOptions& opt) {
  Report rep;
  const auto p32 = params.p.convert_to<std::uint32_t>();
  const FieldCtx field(p32, static_cast<unsigned>(params.n));
  rep.add("modulus irreducible", is_irreducible(field.modulus(), p32));
  const SkewRing ring(field);
  std::mt19937_64 rng(opt.seed);
  const bool exhaustive = field.size() <= opt.field_cap;

  std::uint64_t assoc = 0, ident = 0, inverse = 0, comm = 0, c_auto = 0, h_auto = 0, lin = 0;
  for (std::uint64_t i = 0; i < opt.samples; ++i) {
    const SkewElem s = ring.random(rng), t = ring.random(rng), u = ring.random(rng);
    assoc += ring.mul(ring.mul(s, t), u) != ring.mul(s, ring.mul(t, u));
    ident += ring.mul(s, ring.identity()) != s || ring.mul(ring.identity(), s) != s;
    inverse += !ring.is_identity(ring.mul(s, ring.inv(s))) || !ring.is_identity(ring.mul(ring.inv(s), s));
    SkewElem t2 = t;
    t2.a1 = field.zero();
    comm += !commutator_check(ring, s, t2).agree;
    const std::uint64_t k = rng() % field.n();
    h_auto += ring.h_action(ring.mul(s, t), k) != ring.mul(ring.h_action(s, k), ring.h_action(t, k));
    const FieldElem b1 = field.random(rng), b2 = field.random(rng);
    const std::uint32_t lam = static_cast<std::uint32_t>(rng() % p32);
    lin += ring.bracket(s.a1, field.add(field.scale(b1, lam), b2)) !=
           field.add(field.scale(ring.bracket(s.a1, b1), lam), ring.bracket(s.a1, b2));
  }
  const std::string ns = std::to_string(opt.samples) + " samples";
  rep.add("P associative", assoc == 0, ns);
  rep.add("P identity", ident == 0, ns);
  rep.add("P inverses", inverse == 0, ns);
  rep.add("commutator [s,t] = 1 + <a,b> x^3", comm == 0, ns);
  rep.add("H acts by automorphisms", h_auto == 0, ns);
  rep.add("bracket F_p-linear in b", lin == 0, ns);

  // C, D, E need a generator of F^x.
  const Factored unit_order = power_minus_one(params.p, params.n, opt.budget);
  if (!unit_order.complete()) {
    rep.skip("cyclic subgroup checks", "p^n - 1 not fully factored");
  } else {
    const CyclicSubgroups groups(field);
    for (std::uint64_t i = 0; i < opt.samples; ++i) {
      const FieldElem c = groups.c_element(groups.random_exponent(groups.orders().c_order, rng));
      const SkewElem s = ring.random(rng), t = ring.random(rng);
      c_auto += ring.c_action(ring.mul(s, t), c) != ring.mul(ring.c_action(s, c), ring.c_action(t, c));
    }
    rep.add("C acts by automorphisms", c_auto == 0, ns);

    std::uint64_t d_moves = 0;
    for (std::uint64_t i = 0; i < opt.random_a; ++i) {
      const FieldElem d = groups.d_element(groups.random_exponent(groups.orders().d_order, rng));
      const SkewElem s{field.zero(), field.zero(), field.random(rng)};
      d_moves += ring.c_action(s, d) != s;
    }
    rep.add("D centralizes P_3", d_moves == 0);

    std::uint64_t fixed = 0, trials = 0;
    for (std::uint64_t i = 0; i < opt.random_a; ++i) {
      const FieldElem e = groups.e_element(groups.random_exponent(groups.orders().e_order, rng));
      if (e == field.one()) continue;
      for (std::uint64_t j = 0; j < opt.random_a; ++j) {
        const SkewElem s = ring.random(rng);
        if (ring.is_identity(s)) continue;
        ++trials;
        fixed += ring.c_action(s, e) == s;
      }
    }
    rep.add("E acts fixed-point-freely on P", fixed == 0, std::to_string(trials) + " pairs");

    const auto fq = check_frobenius_quotient(ring, groups, opt.samples, rng);
    rep.add("C fixed-point-free on P/P_3", fq.ok(), "gcd=" + fq.gcd_value.str());

    std::uint64_t mismatch = 0;
    const auto fp3 = groups.fp3_units();
    for (const auto& a : fp3) mismatch += hyperplane_class(ring, a) != field.in_subfield(a, 3);
    rep.add("<a,F> = pi0 for all a in F_{p^3}^x", mismatch == 0, std::to_string(fp3.size()) + " elements");
    mismatch = 0;
    for (std::uint64_t i = 0; i < opt.random_a; ++i) {
      const FieldElem a = field.random_nonzero(rng);
      mismatch += hyperplane_class(ring, a) != field.in_subfield(a, 3);
    }
    rep.add("<a,F> = pi0 iff a^{p^3} = a (random a)", mismatch == 0);

    if (exhaustive) {
      const auto orbit = orbit_pi0(ring);
      rep.add("|{<a,F>}| = |E|", Nat(orbit.size()) == groups.orders().e_order,
              std::to_string(orbit.size()) + " hyperplanes");
      rep.add("{<a,F>} = E-orbit of pi0", orbit == e_orbit_of_pi0(ring, groups));
    } else {
      rep.skip("|{<a,F>}| = |E|", "field exceeds exhaustive cap");
      rep.skip("{<a,F>} = E-orbit of pi0", "field exceeds exhaustive cap");
    }
  }

  // Kernel and image of b -> <a, b>.
  std::uint64_t bad_rank = 0, bad_count = 0;
  for (std::uint64_t i = 0; i < opt.random_a; ++i) {
    const FieldElem a = field.random_nonzero(rng);
    const KernelImage ki = bracket_kernel_image(ring, a);
    bad_rank += !(ki.kernel_is_line_through_a_p1 && ki.image_is_hyperplane);
    if (exhaustive) {
      std::uint64_t zeros = 0;
      FieldElem b = field.zero();
      do {
        zeros += field.is_zero(ring.bracket(a, b));
      } while (field.next(b));
      bad_count += zeros != p32;
    }
  }
  rep.add("ker <a,.> = F_p a^{p+1}, image codim 1", bad_rank == 0, std::to_string(opt.random_a) + " elements");
  if (exhaustive) {
    rep.add("|ker <a,.>| = p by enumeration", bad_count == 0);
  } else {
    rep.skip("|ker <a,.>| = p by enumeration", "field exceeds exhaustive cap");
  }
  rep.add("pi0 = ker(Tr)", pi0_hyperplane(ring) == trace_kernel(field));
  rep.add("pi0 is a hyperplane", pi0_hyperplane(ring).dim() + 1 == field.n());
  return rep;
}

/// Everything; the skew-ring suite is skipped (not failed) when the field
/// degree exceeds opt.max_field_degree.
inline Report run_verify_suite(const Params& params, const VerifyOptions& opt = {}) {
  Report rep;
  rep.add("parameters valid", params.valid());
  if (!params.valid()) return rep;
  rep.append(check_gcd_identities(params), "gcd ");
  rep.append(check_quotient_graph(params, opt.budget), "quotient ");
  rep.append(check_full_graph(params, opt.budget), "graph ");
  if (params.n > opt.max_field_degree || !fits_u64(params.p) || params.p > Nat(1u << 31)) {
    rep.skip("skew ring suite", "field degree above cap");
  } else {
    rep.append(check_skew_ring(params, opt), "skew ");
  }
  return rep;
}

}  // namespace cdg
