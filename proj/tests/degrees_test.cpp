#include <gtest/gtest.h>

#include "cdgraph/degrees.hpp"

using namespace cdg;

namespace {

Nat expected_order(unsigned p, std::uint64_t n, unsigned p_exp) {
  const Nat P = p;
  return Nat(n) * (pow(P, static_cast<unsigned>(n)) - 1) * pow(P, static_cast<unsigned>(p_exp * n)) / (P - 1);
}

const DegreeRow* find(const DegreeTable& t, DegreeSource src, const Nat& degree = 0) {
  for (const auto& r : t.rows) {
    if (r.source == src && (degree == 0 || r.degree.value == degree)) return &r;
  }
  return nullptr;
}

std::vector<std::pair<unsigned, std::uint64_t>> valid_pairs() {
  std::vector<std::pair<unsigned, std::uint64_t>> out;
  for (unsigned p : {2u, 3u, 5u, 7u, 11u}) {
    for (std::uint64_t n = 3; n <= 75; n += 2) {
      if (validate(p, n).valid()) out.emplace_back(p, n);
    }
  }
  return out;
}

}  // namespace

TEST(BlockI, Multiplicities) {
  const Params prm = validate(2, 15);
  const auto rows = block_I(prm);
  std::map<Nat, Nat> a;
  for (const auto& r : rows) a[r.degree.value] = r.multiplicity;
  EXPECT_EQ(a.at(1), Nat(15));
  EXPECT_EQ(a.at(3), Nat(10));
  Nat sum = 0;
  for (const auto& [d, m] : a) sum += m * d * d;
  EXPECT_EQ(sum, Nat(15) * 32767);
}

TEST(BlockI, MoebiusSumForAllScannedPairs) {
  for (const auto& [p, n] : valid_pairs()) {
    const auto rows = block_I(validate(p, n));
    Nat sum = 0;
    for (const auto& r : rows) {
      EXPECT_GE(r.multiplicity, 1);
      EXPECT_EQ(Nat(n) % r.degree.value, 0);
      sum += r.multiplicity * r.degree.value * r.degree.value;
    }
    EXPECT_EQ(sum, Nat(n) * ((pow(Nat(p), static_cast<unsigned>(n)) - 1) / (p - 1))) << p << "," << n;
  }
}

TEST(BlockII, Rows) {
  const auto rows = block_II(validate(2, 15));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].degree.value, Nat(32767));
  EXPECT_EQ(rows[0].multiplicity, Nat(15));
  EXPECT_EQ(rows[1].degree.value, Nat(128) * 32767);
  EXPECT_EQ(rows[1].multiplicity, Nat(30));
  const auto rows3 = block_II(validate(3, 15));
  EXPECT_EQ(rows3[0].degree.value, Nat(7174453));
  EXPECT_EQ(rows3[0].multiplicity, Nat(30));
}

TEST(BlockIII, Rows) {
  const DegreeTable t = build_table(validate(2, 15));
  const DegreeRow* a = find(t, DegreeSource::IIIA);
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->multiplicity, Nat(70));
  EXPECT_EQ(a->degree.value, Nat(3) * 32768 * 4681);
  const DegreeRow* b2b = find(t, DegreeSource::IIIB2b);
  ASSERT_NE(b2b, nullptr);
  EXPECT_EQ(b2b->multiplicity, Nat(15));
  EXPECT_EQ(b2b->degree.value, Nat(4096) * 4681);
  const DegreeRow* b2c = find(t, DegreeSource::IIIB2c);
  ASSERT_NE(b2c, nullptr);
  EXPECT_EQ(b2c->multiplicity, Nat(10));
}

TEST(Table, SumOfSquaresReferenceInstances) {
  for (const auto& [p, n] : std::vector<std::pair<unsigned, std::uint64_t>>{{2, 15}, {2, 33}, {3, 15}, {2, 195}}) {
    const DegreeTable t = build_table(validate(p, n));
    EXPECT_EQ(t.group_order.value, expected_order(p, n, 3));
    EXPECT_EQ(sum_of_squares(t.rows), expected_order(p, n, 3));
    const DegreeTable q = quotient_table(validate(p, n));
    EXPECT_EQ(sum_of_squares(q.rows), expected_order(p, n, 2));
    EXPECT_EQ(q.rows.size(), block_I(validate(p, n)).size() + 2);
  }
}

TEST(Table, InvariantsForAllScannedPairs) {
  for (const auto& [p, n] : valid_pairs()) {
    const DegreeTable t = build_table(validate(p, n));
    EXPECT_EQ(sum_of_squares(t.rows), expected_order(p, n, 3)) << p << "," << n;
    const auto primes_of_n = factor(Nat(n)).primes();
    for (const auto& r : t.rows) {
      EXPECT_GE(r.multiplicity, 1);
      EXPECT_TRUE(r.degree.complete());
      EXPECT_EQ(r.degree.reassemble(), r.degree.value);
      EXPECT_EQ(t.group_order.value % r.degree.value, 0);
      if (r.source == DegreeSource::I) continue;
      // Outside block I the only primes of n that can divide a degree are 3 and p.
      for (const auto& q : primes_of_n) {
        if (q != 3 && q != p) {
          EXPECT_NE(r.degree.value % q, 0) << to_string(r.source);
        }
      }
    }
  }
}

TEST(Table, RejectsInvalidParams) {
  EXPECT_THROW(build_table(validate(2, 21)), std::invalid_argument);
  EXPECT_THROW(block_I(validate(2, 9)), std::invalid_argument);
}

TEST(Table, TamperedRowBreaksIdentity) {
  DegreeTable t = build_table(validate(2, 15));
  EXPECT_TRUE(check_sum_of_squares(t));
  t.rows.back().multiplicity += 1;
  EXPECT_FALSE(check_sum_of_squares(t));
}

TEST(Table, MergedDegreesCombineSources) {
  const DegreeTable t = build_table(validate(2, 15));
  const auto merged = merged_degrees(t);
  Nat total = 0;
  for (const auto& [d, m] : merged) total += m * d * d;
  EXPECT_EQ(total, t.group_order.value);
  EXPECT_LE(merged.size(), t.rows.size());
}
