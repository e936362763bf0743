#include <gtest/gtest.h>

#include <random>

#include "cdgraph/field.hpp"

using namespace cdg;

namespace {

// Remainder of a by b over F_p, both lowest coefficient first, b monic.
Coeffs naive_rem(Coeffs a, const Coeffs& b, std::uint32_t p) {
  while (a.size() >= b.size()) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + p - lead * b[i] % p) % p;
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

// Irreducible iff no monic divisor of degree 1..n/2.
bool brute_irreducible(const Coeffs& f, std::uint32_t p) {
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  for (unsigned k = 1; 2 * k <= n; ++k) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < k; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Coeffs g(k + 1, 0);
      g[k] = 1;
      std::uint64_t t = idx;
      for (unsigned i = 0; i < k; ++i, t /= p) g[i] = static_cast<std::uint32_t>(t % p);
      if (naive_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

FieldElem naive_mul(const FieldCtx& f, const FieldElem& a, const FieldElem& b) {
  const std::uint32_t p = f.p();
  Coeffs prod(2 * f.n(), 0);
  for (unsigned i = 0; i < f.n(); ++i) {
    for (unsigned j = 0; j < f.n(); ++j) prod[i + j] = (prod[i + j] + a.c[i] * b.c[j]) % p;
  }
  while (!prod.empty() && prod.back() == 0) prod.pop_back();
  Coeffs r = naive_rem(prod, f.modulus(), p);
  r.resize(f.n(), 0);
  return FieldElem{r};
}

}  // namespace

TEST(Irreducible, RabinAgreesWithBruteForce) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (unsigned n = 1; n <= (p == 2 ? 8u : 4u); ++n) {
      std::uint64_t count = 1;
      for (unsigned i = 0; i < n; ++i) count *= p;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        Coeffs f(n + 1, 0);
        f[n] = 1;
        std::uint64_t t = idx;
        for (unsigned i = 0; i < n; ++i, t /= p) f[i] = static_cast<std::uint32_t>(t % p);
        ASSERT_EQ(is_irreducible(f, p), brute_irreducible(f, p)) << p << " idx " << idx;
      }
    }
  }
}

TEST(Irreducible, LeastModulusIsFirstInOrder) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (unsigned n = 1; n <= 5; ++n) {
      const Coeffs f = least_irreducible(p, n);
      EXPECT_TRUE(brute_irreducible(f, p));
      // Every candidate with a smaller base-p value (c_0 least significant) is reducible.
      std::uint64_t value = 0;
      for (unsigned i = n; i-- > 0;) value = value * p + f[i];
      for (std::uint64_t idx = 0; idx < value; ++idx) {
        Coeffs g(n + 1, 0);
        g[n] = 1;
        std::uint64_t t = idx;
        for (unsigned i = 0; i < n; ++i, t /= p) g[i] = static_cast<std::uint32_t>(t % p);
        EXPECT_FALSE(brute_irreducible(g, p));
      }
    }
  }
  // x^15 + x + 1 over F_2
  Coeffs expect(16, 0);
  expect[0] = expect[1] = expect[15] = 1;
  EXPECT_EQ(least_irreducible(2, 15), expect);
}

TEST(Field, RejectsBadModulus) {
  EXPECT_THROW(FieldCtx(4, 3), std::invalid_argument);
  EXPECT_THROW(FieldCtx(2, 2, Coeffs{1, 0, 1}), std::invalid_argument);
  EXPECT_THROW(FieldCtx(2, 2, Coeffs{1, 1}), std::invalid_argument);
}

class FieldLaws : public ::testing::TestWithParam<std::pair<std::uint32_t, unsigned>> {};

TEST_P(FieldLaws, RingAxiomsAndFrobenius) {
  const auto [p, n] = GetParam();
  const FieldCtx f(p, n);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const FieldElem a = f.random(rng), b = f.random(rng), c = f.random(rng);
    ASSERT_EQ(f.mul(a, b), naive_mul(f, a, b));
    EXPECT_EQ(f.mul(a, b), f.mul(b, a));
    EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
    EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
    EXPECT_EQ(f.add(a, f.neg(a)), f.zero());
    EXPECT_EQ(f.sub(f.add(a, b), b), a);
    EXPECT_EQ(f.mul(a, f.one()), a);
    EXPECT_EQ(f.frob(a), f.pow(a, Nat(p)));
    EXPECT_EQ(f.frob(a, 2), f.pow(a, Nat(p) * p));
    EXPECT_EQ(f.frob(a, n), a);
    EXPECT_EQ(f.frob(f.mul(a, b)), f.mul(f.frob(a), f.frob(b)));
    EXPECT_EQ(f.index(f.from_index(f.index(a))), f.index(a));
    if (!f.is_zero(a)) {
      EXPECT_EQ(f.mul(a, f.inv(a)), f.one());
      EXPECT_EQ(f.pow(a, f.unit_order()), f.one());
    }
    const std::uint32_t t = f.trace(a);
    EXPECT_LT(t, p);
    EXPECT_EQ(f.trace(f.add(a, b)), (t + f.trace(b)) % p);
  }
  EXPECT_THROW(f.inv(f.zero()), std::domain_error);
}

INSTANTIATE_TEST_SUITE_P(SmallFields, FieldLaws,
                         ::testing::Values(std::make_pair(2u, 15u), std::make_pair(2u, 9u), std::make_pair(3u, 15u),
                                           std::make_pair(5u, 3u), std::make_pair(7u, 6u), std::make_pair(65521u, 3u),
                                           std::make_pair(2u, 33u)));

TEST(Field, EnumerationVisitsEveryElementOnce) {
  const FieldCtx f(3, 4);
  FieldElem a = f.zero();
  Nat k = 0;
  do {
    ASSERT_EQ(f.index(a), k);
    ++k;
  } while (f.next(a));
  EXPECT_EQ(k, f.size());
}

TEST(Field, SubfieldMembership) {
  const FieldCtx f(2, 6);
  std::size_t in3 = 0, in2 = 0;
  FieldElem a = f.zero();
  do {
    in3 += f.in_subfield(a, 3);
    in2 += f.in_subfield(a, 2);
  } while (f.next(a));
  EXPECT_EQ(in3, 8u);
  EXPECT_EQ(in2, 4u);
}

TEST(Generator, HasFullOrderByBruteForce) {
  for (const auto& [p, n] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 6}, {3, 3}, {5, 2}, {2, 9}}) {
    const FieldCtx f(p, n);
    const FieldElem g = find_generator(f);
    FieldElem x = g;
    Nat order = 1;
    while (x != f.one()) {
      x = f.mul(x, g);
      ++order;
    }
    EXPECT_EQ(order, f.unit_order());
    // Least index: no smaller nonzero element is primitive.
    for (Nat idx = 1; idx < f.index(g); ++idx) {
      FieldElem y = f.from_index(idx);
      Nat k = 1;
      for (FieldElem z = y; z != f.one(); z = f.mul(z, y)) ++k;
      EXPECT_LT(k, f.unit_order());
    }
  }
}

TEST(Subspace, CanonicalForm) {
  const Subspace a = Subspace::span(3, 3, {{1, 2, 0}, {0, 1, 1}});
  const Subspace b = Subspace::span(3, 3, {{1, 0, 1}, {1, 1, 2}, {2, 1, 0}});
  EXPECT_EQ(a.dim(), 2u);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.contains({2, 1, 0}));
  EXPECT_EQ(Subspace::span(3, 3, {{1, 0, 1}, {2, 1, 1}}).dim(), 2u);
  EXPECT_NE(Subspace::span(3, 3, {{1, 0, 1}, {2, 1, 1}}), a);
  EXPECT_FALSE(a.contains({0, 0, 1}));
  EXPECT_EQ(Subspace::span(3, 3, {{0, 0, 0}}).dim(), 0u);
}

TEST(Subspace, KernelDimensionIsNullity) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t p = trial % 2 ? 2 : 5;
    const unsigned n = 2 + trial % 5;
    std::vector<Coeffs> cols(n, Coeffs(n));
    for (auto& c : cols) {
      for (auto& v : c) v = static_cast<std::uint32_t>(rng() % p);
    }
    const Subspace image = Subspace::span(p, n, cols);
    const Subspace kernel = kernel_of(p, n, cols);
    EXPECT_EQ(image.dim() + kernel.dim(), n);
    for (const auto& v : kernel.rows()) {
      Coeffs sum(n, 0);
      for (unsigned j = 0; j < n; ++j) {
        for (unsigned i = 0; i < n; ++i) sum[i] = (sum[i] + v[j] * cols[j][i]) % p;
      }
      EXPECT_EQ(sum, Coeffs(n, 0));
    }
  }
}
