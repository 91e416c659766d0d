#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "oracles.hpp"
#include "rtrop/bergman.hpp"

using namespace rtrop;

namespace {

QVector q(std::initializer_list<long> xs) {
  QVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

/// s-flat test with the naive eliminator.
bool oracle_s_flat(const QMatrix& g, const IndexSet& f, const SignVector& s) {
  std::vector<QVector> eq, strict;
  for (std::size_t j = 0; j < g.cols(); ++j) {
    QVector col = g.column(j);
    if (std::binary_search(f.begin(), f.end(), j)) {
      eq.push_back(col);
    } else {
      if (s[j] < 0)
        for (auto& x : col) x = -x;
      strict.push_back(col);
    }
  }
  return oracle::fm_feasible(eq, strict, g.rows());
}

/// All maximal chains of flats, from rank-by-subset enumeration.
std::vector<FlagOfFlats> oracle_maximal_flags(const QMatrix& g) {
  const std::size_t n = g.cols();
  std::vector<IndexSet> flats;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    IndexSet s;
    for (std::size_t j = 0; j < n; ++j)
      if (mask >> j & 1) s.push_back(j);
    const auto r = oracle::column_rank(g, s);
    bool closed = true;
    for (std::size_t j = 0; j < n && closed; ++j) {
      if (mask >> j & 1) continue;
      auto t = s;
      t.push_back(j);
      if (oracle::column_rank(g, t) == r) closed = false;
    }
    if (closed) flats.push_back(s);
  }
  const auto full_rank = oracle::rank_of(g);
  std::vector<FlagOfFlats> out;
  FlagOfFlats cur;
  std::function<void(const IndexSet&, std::size_t)> go = [&](const IndexSet& f, std::size_t r) {
    if (r == full_rank) {
      out.push_back(cur);
      return;
    }
    for (auto& h : flats)
      if (oracle::column_rank(g, h) == r + 1 && is_subset(f, h)) {
        cur.flats.push_back(h);
        go(h, r + 1);
        cur.flats.pop_back();
      }
  };
  IndexSet loops;
  for (auto& f : flats)
    if (oracle::column_rank(g, f) == 0) loops = f;
  go(loops, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(FlagOfWeight, Examples) {
  EXPECT_EQ(flag_of_weight(q({4, 4, 4})).flats, (std::vector<IndexSet>{{0, 1, 2}}));
  EXPECT_EQ(flag_of_weight(q({3, 1, 2})).flats, (std::vector<IndexSet>{{1}, {1, 2}, {0, 1, 2}}));
  // an order-preserving change of values keeps the flag
  EXPECT_EQ(flag_of_weight(q({30, -7, 2})), flag_of_weight(q({3, 1, 2})));
  auto flag = flag_of_weight(q({5, 0, 5, 2}));
  EXPECT_EQ(flag_of_weight(weight_of_flag(flag, 4)), flag);
}

TEST(SAcyclic, Examples) {
  OrientedMatroid free{3, {}, std::nullopt};
  EXPECT_TRUE(is_s_acyclic(free, SignVector::parse("+-+")));
  auto om = circuits_from_matrix(oracle::example_matrix());
  EXPECT_FALSE(is_s_acyclic(om, SignVector::all_plus(5)));
  for (auto& t : topes(om)) EXPECT_TRUE(is_s_acyclic(om, t));
  EXPECT_THROW(is_s_acyclic(om, SignVector::parse("+0+++")), Error);
}

TEST(SAcyclic, PureAcyclicIffTope) {
  std::mt19937 rng(3);
  for (int it = 0; it < 100; ++it) {
    auto om = circuits_from_matrix(oracle::random_matrix(rng, 1 + rng() % 3, 1 + rng() % 6, -3, 3));
    auto t = topes(om);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << om.ground_size); ++mask) {
      auto s = SignVector::all_plus(om.ground_size);
      for (std::size_t j = 0; j < om.ground_size; ++j)
        if (mask >> j & 1) s.set(j, -1);
      EXPECT_EQ(is_s_acyclic(om, s), std::binary_search(t.begin(), t.end(), s));
    }
  }
}

TEST(SFlag, Examples) {
  auto om = circuits_from_matrix(oracle::example_matrix());
  const FlagOfFlats whole{{full_set(5)}};
  for (auto& t : topes(om)) EXPECT_TRUE(is_s_flag(om, whole, t));
  const FlagOfFlats known{{{2, 3}, full_set(5)}};
  EXPECT_TRUE(is_s_flag(om, known, SignVector::parse("-++-+")));
  EXPECT_FALSE(is_s_flag(om, known, SignVector::all_plus(5)));
  try {
    is_s_flag(om, FlagOfFlats{{{2}, full_set(5)}}, SignVector::parse("-++-+"));
    FAIL() << "expected NotAFlat";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAFlat);
  }
}

TEST(Bergman, ZeroWeightIsAcyclicity) {
  auto om = circuits_from_matrix(oracle::example_matrix());
  QVector zero(5);
  for (std::uint64_t mask = 0; mask < 32; ++mask) {
    auto s = SignVector::all_plus(5);
    for (std::size_t j = 0; j < 5; ++j)
      if (mask >> j & 1) s.set(j, -1);
    EXPECT_EQ(bergman_membership(om, s, zero, {true}).member, is_s_acyclic(om, s));
  }
}

TEST(Bergman, RandomInstancesRoutesAgree) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> wd(-5, 5);
  int members = 0;
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = 1 + rng() % 7;
    auto om = circuits_from_matrix(oracle::random_matrix(rng, 1 + rng() % 3, n, -3, 3));
    auto s = oracle::random_pure(rng, n);
    QVector w(n);
    for (auto& x : w) x = wd(rng);
    auto r = bergman_membership(om, s, w, {true});  // throws on disagreement
    EXPECT_TRUE(r.verified);
    if (r.member) {
      ++members;
      EXPECT_TRUE(is_covector(om, s));
    }
    // weight-class invariance
    QVector w2(n);
    for (std::size_t j = 0; j < n; ++j) w2[j] = 3 * w[j] * w[j] * w[j] + 1;
    EXPECT_EQ(bergman_membership(om, s, w2).member, r.member);
    // reorientation equivariance
    IndexSet a;
    for (std::size_t j = 0; j < n; ++j)
      if (rng() & 1) a.push_back(j);
    auto ro = reorient(om, a);
    EXPECT_EQ(bergman_membership(ro, sign_product(s, SignVector::minus_on(n, a)), w, {true}).member, r.member);
  }
  EXPECT_GT(members, 10);
}

TEST(EnumerateSFlags, NonTopeGivesNothing) {
  auto om = circuits_from_matrix(oracle::example_matrix());
  EXPECT_TRUE(enumerate_s_flags(om, SignVector::all_plus(5)).empty());
}

TEST(EnumerateSFlags, ParallelPair) {
  auto om = circuits_from_matrix(QMatrix::from_rows({{1, 2}}));
  auto flags = enumerate_s_flags(om, SignVector::all_plus(2));
  ASSERT_EQ(flags.size(), 1u);
  EXPECT_EQ(flags[0].flats, (std::vector<IndexSet>{{0, 1}}));
  EXPECT_TRUE(enumerate_s_flags(om, SignVector::parse("+-")).empty());
  // antiparallel columns swap which sign vectors are topes
  auto anti = circuits_from_matrix(QMatrix::from_rows({{1, -1}}));
  EXPECT_EQ(enumerate_s_flags(anti, SignVector::parse("+-")).size(), 1u);
}

TEST(EnumerateSFlags, ExampleContainsKnownFlag) {
  auto om = circuits_from_matrix(oracle::example_matrix());
  auto s = SignVector::parse("-++-+");
  auto flags = enumerate_s_flags(om, s);
  const FlagOfFlats known{{{2, 3}, full_set(5)}};
  EXPECT_NE(std::find(flags.begin(), flags.end(), known), flags.end());
  for (auto& f : flags) EXPECT_TRUE(bergman_membership(om, s, weight_of_flag(f, 5), {true}).member);
}

TEST(EnumerateSFlags, RandomAgainstChainOracle) {
  std::mt19937 rng(23);
  for (int it = 0; it < 60; ++it) {
    const std::size_t n = 1 + rng() % 6;
    auto a = oracle::random_matrix(rng, 1 + rng() % 3, n, -2, 2);
    auto om = circuits_from_matrix(a);
    auto s = oracle::random_pure(rng, n);
    std::vector<FlagOfFlats> expected;
    if (oracle_s_flat(a, {}, s))
      for (auto& f : oracle_maximal_flags(a)) {
        bool ok = true;
        for (auto& h : f.flats) ok = ok && oracle_s_flat(a, h, s);
        if (ok) expected.push_back(f);
      }
    EXPECT_EQ(enumerate_s_flags(om, s), expected) << "instance " << it;
  }
}
