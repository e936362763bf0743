#include <gtest/gtest.h>

#include <random>

#include "cdgraph/arith.hpp"

using namespace cdg;

namespace {

bool trial_is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::map<Nat, unsigned> trial_factor(std::uint64_t n) {
  std::map<Nat, unsigned> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      ++out[Nat(d)];
      n /= d;
    }
  }
  if (n > 1) ++out[Nat(n)];
  return out;
}

}  // namespace

TEST(Parse, RoundTripAndRejects) {
  EXPECT_EQ(parse_nat("340282366920938463463374607431768211457").str(),
            "340282366920938463463374607431768211457");
  EXPECT_THROW(parse_nat(""), std::invalid_argument);
  EXPECT_THROW(parse_nat("12a"), std::invalid_argument);
  EXPECT_THROW(parse_nat("-5"), std::invalid_argument);
}

TEST(Primality, AgreesWithTrialDivisionBelowOneHundredThousand) {
  for (std::uint64_t n = 0; n < 100'000; ++n) ASSERT_EQ(is_prime(Nat(n)), trial_is_prime(n)) << n;
}

TEST(Primality, StrongPseudoprimesAndCarmichaelNumbers) {
  for (std::uint64_t n : {561ull, 1105ull, 1729ull, 2047ull, 3215031751ull, 341550071728321ull,
                          3825123056546413051ull}) {
    EXPECT_FALSE(is_prime(Nat(n))) << n;
  }
}

TEST(Primality, MersenneNumbers) {
  const std::set<unsigned> prime_exponents{2, 3, 5, 7, 13, 17, 19, 31, 61, 89, 107, 127};
  for (unsigned e = 2; e <= 130; ++e) {
    EXPECT_EQ(is_prime(pow(Nat(2), e) - 1), prime_exponents.count(e) == 1) << e;
  }
}

TEST(Factor, KnownExamples) {
  EXPECT_EQ(format_factored(factor(Nat(32767))), "7 * 31 * 151");
  EXPECT_EQ(format_factored(factor(Nat(1))), "1");
  EXPECT_EQ(format_factored(factor(Nat(16))), "2^4");
  // 2^67 - 1
  EXPECT_EQ(format_factored(factor(pow(Nat(2), 67) - 1)), "193707721 * 761838257287");
  // 2^101 - 1
  EXPECT_EQ(format_factored(factor(pow(Nat(2), 101) - 1)), "7432339208719 * 341117531003194129");
  EXPECT_THROW(factor(Nat(0)), std::invalid_argument);
}

TEST(Factor, PerfectPowersOfLargePrimes) {
  const Nat q = pow(Nat(2), 61) - 1;
  const Factored f = factor(q * q * q);
  ASSERT_TRUE(f.complete());
  ASSERT_EQ(f.factors.size(), 1u);
  EXPECT_EQ(f.factors.at(q), 3u);
}

TEST(Factor, MatchesTrialDivisionOnRandomInputs) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t n = 1 + rng() % 1'000'000'000'000ull;
    const Factored f = factor(Nat(n));
    ASSERT_TRUE(f.complete());
    EXPECT_EQ(f.factors, trial_factor(n)) << n;
  }
}

TEST(Factor, ReassemblesAndPrimesArePrime) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    // Products of two random 40-bit numbers exercise rho above 2^64.
    const Nat n = Nat(rng() >> 24 | 1) * Nat(rng() >> 24 | 1) * Nat(rng() % 1000 + 1);
    const Factored f = factor(n);
    EXPECT_TRUE(f.complete());
    EXPECT_EQ(f.reassemble(), n);
    EXPECT_EQ(f.value, n);
    for (const auto& p : f.primes()) EXPECT_TRUE(is_prime(p));
  }
}

TEST(Factor, ExhaustedBudgetKeepsCofactor) {
  FactorBudget tiny;
  tiny.trial_bound = 100;
  tiny.rho_iterations = 0;
  const Nat semi = Nat(1000003) * Nat(1000033);
  const Factored f = factor(semi * 4, tiny);
  EXPECT_FALSE(f.complete());
  EXPECT_EQ(f.cofactor, semi);
  EXPECT_EQ(f.reassemble(), semi * 4);
  EXPECT_EQ(format_factored(f), "2^2 * [1000036000099]");
}

TEST(Multiplicative, MobiusAndDivisors) {
  EXPECT_EQ(mobius(Nat(1)), 1);
  EXPECT_EQ(mobius(Nat(30)), -1);
  EXPECT_EQ(mobius(Nat(12)), 0);
  EXPECT_EQ(mobius(Nat(15)), 1);
  for (std::uint64_t n = 1; n <= 500; ++n) {
    std::vector<Nat> brute;
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (n % d == 0) brute.push_back(d);
    }
    EXPECT_EQ(divisors(Nat(n)), brute);
    EXPECT_EQ(divisor_count(factor(Nat(n))), Nat(brute.size()));
    int mu_sum = 0;
    for (const auto& d : brute) mu_sum += mobius(d);
    EXPECT_EQ(mu_sum, n == 1 ? 1 : 0);
  }
}

TEST(Multiplicative, SigmaPart) {
  EXPECT_EQ(sigma_part(factor(Nat(360)), {2, 5}), Nat(40));
  EXPECT_EQ(sigma_part(factor(Nat(195)), {}), Nat(1));
}

TEST(Congruences, CrtMatchesExhaustiveScan) {
  std::mt19937_64 rng(3);
  const std::vector<std::uint64_t> moduli{3, 4, 5, 7, 11, 13};
  for (int i = 0; i < 200; ++i) {
    std::vector<Congruence> sys;
    std::uint64_t prod = 1;
    for (auto m : moduli) {
      if (rng() % 2) continue;
      sys.push_back({Nat(rng() % m), Nat(m)});
      prod *= m;
    }
    const Congruence c = crt(sys);
    EXPECT_EQ(c.modulus, Nat(prod));
    std::uint64_t found = prod;
    for (std::uint64_t x = 0; x < prod && found == prod; ++x) {
      bool ok = true;
      for (const auto& [r, m] : sys) ok = ok && Nat(x) % m == r;
      if (ok) found = x;
    }
    EXPECT_EQ(c.remainder, Nat(found));
  }
  EXPECT_THROW(crt({{1, 4}, {1, 6}}), std::invalid_argument);
}

TEST(Congruences, InverseAndMod) {
  EXPECT_EQ(mod(Nat(-7), Nat(5)), Nat(3));
  EXPECT_EQ(inverse_mod(Nat(3), Nat(7)), Nat(5));
  EXPECT_THROW(inverse_mod(Nat(4), Nat(8)), std::invalid_argument);
  const Bezout b = extended_gcd(Nat(240), Nat(46));
  EXPECT_EQ(b.g, Nat(2));
  EXPECT_EQ(Nat(240) * b.x + Nat(46) * b.y, b.g);
}

TEST(Congruences, MultOrderMatchesDirectPowering) {
  for (std::uint64_t m = 2; m <= 300; ++m) {
    for (std::uint64_t a = 1; a < m; a += 7) {
      if (std::gcd(a, m) != 1) {
        EXPECT_THROW(mult_order(Nat(a), Nat(m)), std::invalid_argument);
        continue;
      }
      std::uint64_t k = 1, x = a % m;
      while (x != 1 % m) {
        x = x * a % m;
        ++k;
      }
      ASSERT_EQ(mult_order(Nat(a), Nat(m)), Nat(k)) << a << " mod " << m;
      EXPECT_TRUE(has_order(Nat(a), Nat(m), factor(Nat(k))));
    }
  }
  EXPECT_EQ(mult_order(Nat(2), Nat(7)), Nat(3));
}

TEST(Arith, IntegerRoots) {
  EXPECT_EQ(iroot(Nat(1000), 3), Nat(10));
  EXPECT_EQ(iroot(Nat(999), 3), Nat(9));
  EXPECT_EQ(iroot(pow(Nat(12345), 7), 7), Nat(12345));
  EXPECT_EQ(bit_length(Nat(255)), 8u);
}
