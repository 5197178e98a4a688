#include <gtest/gtest.h>

#include <set>

#include "qfbc/distinguishers.hpp"
#include "qfbc/errors.hpp"
#include "qfbc/oracle.hpp"
#include "qfbc/quantum_sim.hpp"

using namespace qfbc;

namespace {

EncryptionOracle make(Variant v, int n, int r, OracleMode mode, std::uint64_t seed = 21) {
  Rng rng(seed);
  const CipherParams p{v, n, r, rng.next()};
  return EncryptionOracle(p, random_key_schedule(p, rng), mode);
}

}  // namespace

TEST(Oracle, QueriesMatchCipherAndCount) {
  auto o = make(Variant::FbcKF, 8, 4, OracleMode::Q1Classical);
  const auto& keys = o.hidden_keys(WhiteBoxAccess{});
  const State4 pt{1, 2, 3, 4};
  const State4 a = o.query(pt);
  const State4 b = o.query(pt);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, encrypt(o.params(), keys, pt));
  EXPECT_EQ(o.counters().classical_queries, 2u);
  EXPECT_EQ(o.counters().simulated_encryptions, 0u);
}

TEST(Oracle, FeistelShapeAndRangeChecks) {
  auto o = make(Variant::FeistelKF, 6, 3, OracleMode::Q1Classical);
  const FeistelState ct = o.query(FeistelState{1, 2});
  EXPECT_EQ(ct, feistel_encrypt(o.params(), o.hidden_keys(WhiteBoxAccess{}), FeistelState{1, 2}));
  EXPECT_THROW(o.query(State4{}), ParameterError);
  EXPECT_THROW(o.query(FeistelState{64, 0}), ParameterError);
}

TEST(Oracle, ClassicalOracleRefusesSuperposition) {
  auto o = make(Variant::FbcF, 4, 4, OracleMode::Q1Classical);
  EXPECT_THROW(o.superposed_encrypt(State4{}), ModeViolation);
  EXPECT_THROW(query_superposed(o, [](EncryptionOracle&, Word x) { return x; }, "id", 1), ModeViolation);
  EXPECT_THROW(build_f_fbcf_4r(o, DistinguisherConfig{0, 1, 0, 0}), ModeViolation);
}

TEST(Oracle, OneSimonSampleSweepsTheDomainTwice) {
  auto o = make(Variant::FbcF, 4, 4, OracleMode::Q2Superposition);
  const auto f = build_f_fbcf_4r(o, DistinguisherConfig{0, 1, 5, 9});
  Rng rng(1);
  simon_sample(f, rng);
  EXPECT_EQ(o.counters().simulated_encryptions, 2u * 16u);
  EXPECT_EQ(o.counters().superposition_query_units, 1u);
  EXPECT_EQ(o.counters().superposition_oracle_calls, 2u);
  EXPECT_EQ(o.counters().classical_queries, 0u);
}

TEST(Oracle, ImpostorIsAPermutationOfTheBlock) {
  const CipherParams shape{Variant::FbcF, 2, 4, 0};
  auto o = EncryptionOracle::impostor(shape, 5, OracleMode::Q1Classical);
  EXPECT_TRUE(o.is_impostor());
  std::set<std::uint32_t> image;
  for (Word v = 0; v < 256; ++v) {
    const State4 c = o.query(State4{v >> 6, (v >> 4) & 3, (v >> 2) & 3, v & 3});
    EXPECT_LE(std::max({c.x0, c.x1, c.x2, c.x3}), 3u);
    image.insert(c.x0 << 6 | c.x1 << 4 | c.x2 << 2 | c.x3);
  }
  EXPECT_EQ(image.size(), 256u);

  const CipherParams two{Variant::FeistelKF, 4, 3, 0};
  auto t = EncryptionOracle::impostor(two, 5, OracleMode::Q1Classical);
  std::set<std::uint32_t> img2;
  for (Word a = 0; a < 16; ++a) {
    for (Word b = 0; b < 16; ++b) {
      const auto c = t.query(FeistelState{a, b});
      img2.insert(c.a << 4 | c.b);
    }
  }
  EXPECT_EQ(img2.size(), 256u);
}

TEST(Oracle, ImpostorDependsOnSeed) {
  const CipherParams shape{Variant::FbcF, 8, 4, 0};
  auto a = EncryptionOracle::impostor(shape, 1, OracleMode::Q1Classical);
  auto b = EncryptionOracle::impostor(shape, 2, OracleMode::Q1Classical);
  int same = 0;
  for (Word x = 0; x < 64; ++x) same += a.query(State4{x, 0, 0, 0}) == b.query(State4{x, 0, 0, 0});
  EXPECT_LT(same, 2);
}

TEST(Oracle, RejectsMalformedSchedules) {
  const CipherParams p{Variant::FbcF, 4, 4, 0};
  EXPECT_THROW(EncryptionOracle(p, KeySchedule(3), OracleMode::Q1Classical), ParameterError);
  KeySchedule bad(4);
  bad[2].k2 = 16;
  EXPECT_THROW(EncryptionOracle(p, bad, OracleMode::Q1Classical), ParameterError);
}
