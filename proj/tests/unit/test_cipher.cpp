#include <gtest/gtest.h>

#include <set>

#include "qfbc/cipher.hpp"
#include "qfbc/errors.hpp"

using namespace qfbc;

namespace {

// Reference expansion of the round-function PRF, written out from its
// definition (SplitMix64 finalizer over a packed input word).
std::uint64_t ref_mix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Word ref_prf(std::uint64_t seed, int n, int round, int branch, std::uint64_t key_tag, Word x) {
  const std::uint64_t seed_key = ref_mix(seed ^ 0x5EEDF00DCAFEULL);
  std::uint64_t packed = std::uint64_t(round) << 40;
  packed |= std::uint64_t(branch) << 36;
  packed |= key_tag << 16;
  packed |= x;
  return static_cast<Word>(ref_mix(seed_key ^ ref_mix(packed)) & ((1ULL << n) - 1));
}

// Straight-line round, one variant at a time.
State4 ref_round(Variant v, const State4& s, int i, RoundKey k, const RoundFunctionFamily& f) {
  Word t1 = 0, t2 = 0;
  if (v == Variant::FbcF) {
    t1 = f.eval_keyed(i, 1, k.k1, s.x0);
    t2 = f.eval_keyed(i, 2, k.k2, s.x3);
  } else if (v == Variant::FbcKF) {
    t1 = f.eval(i, 1, s.x0 ^ k.k1);
    t2 = f.eval(i, 2, s.x3 ^ k.k2);
  } else {
    t1 = f.eval(i, 1, s.x0) ^ k.k1;
    t2 = f.eval(i, 2, s.x3) ^ k.k2;
  }
  State4 o;
  o.x0 = s.x1 ^ t1;
  o.x1 = s.x0 ^ s.x2 ^ t2;
  o.x2 = s.x3 ^ o.x0;
  o.x3 = s.x2 ^ t2;
  return o;
}

constexpr Variant kFour[] = {Variant::FbcF, Variant::FbcKF, Variant::FbcFK};
constexpr Variant kTwo[] = {Variant::FeistelF, Variant::FeistelKF, Variant::FeistelFK};

}  // namespace

TEST(Prf, MatchesReferenceExpansion) {
  for (int n : {2, 4, 8, 13, 16}) {
    const RoundFunctionFamily f(7, n);
    for (int round : {1, 5, 32}) {
      for (int branch : {1, 2}) {
        for (Word x = 0; x < 40; ++x) {
          const Word xx = x & width_mask(n);
          EXPECT_EQ(f.eval(round, branch, xx), ref_prf(7, n, round, branch, 0, xx));
          EXPECT_EQ(f.eval_keyed(round, branch, 3 & width_mask(n), xx),
                    ref_prf(7, n, round, branch, (3 & width_mask(n)) + 1, xx));
        }
      }
    }
  }
}

TEST(Prf, DeterministicAndRandomLooking) {
  const RoundFunctionFamily f(7, 4);
  EXPECT_EQ(prf_eval(f, 1, 1, std::nullopt, 3), prf_eval(f, 1, 1, std::nullopt, 3));
  // Over many rounds, a random 4-bit function is a permutation with
  // probability 16!/16^16 ~ 1.1e-6, so most tables must collide.
  int permutations = 0;
  for (int round = 1; round <= 32; ++round) {
    std::set<Word> image;
    for (Word x = 0; x < 16; ++x) image.insert(f.eval(round, 1, x));
    permutations += image.size() == 16;
  }
  EXPECT_EQ(permutations, 0);
}

TEST(Prf, ZeroFixtureAndRangeChecks) {
  const auto z = RoundFunctionFamily::zero(6);
  for (Word x = 0; x < 64; ++x) EXPECT_EQ(prf_eval(z, 3, 2, Word{5}, x), 0u);
  const RoundFunctionFamily f(1, 4);
  EXPECT_THROW(prf_eval(f, 1, 1, std::nullopt, 16), ParameterError);
  EXPECT_THROW(prf_eval(f, 0, 1, std::nullopt, 1), ParameterError);
  EXPECT_THROW(prf_eval(f, 1, 3, std::nullopt, 1), ParameterError);
  EXPECT_THROW(prf_eval(f, 1, 1, Word{99}, 1), ParameterError);
  EXPECT_THROW(RoundFunctionFamily(1, 17), ParameterError);
}

TEST(Prf, PermutationModeIsBijective) {
  for (int n : {2, 5, 9}) {
    const RoundFunctionFamily f(3, n, FunctionMode::Permutation);
    for (int round = 1; round <= 4; ++round) {
      std::set<Word> image;
      for (Word x = 0; x <= width_mask(n); ++x) image.insert(f.eval_keyed(round, 2, 1, x));
      EXPECT_EQ(image.size(), std::size_t{1} << n);
    }
  }
}

TEST(Round, ZeroFixtureWiring) {
  const auto z = RoundFunctionFamily::zero(4);
  const State4 p{1, 2, 3, 4};
  EXPECT_EQ(fbc_round(Variant::FbcF, p, 1, RoundKey{}, z), (State4{2, 2, 6, 3}));
  EXPECT_EQ(fbc_round(Variant::FbcFK, p, 1, RoundKey{5, 9}, z), (State4{7, 11, 3, 10}));
  EXPECT_EQ(fbc_round_inverse(Variant::FbcF, State4{2, 2, 6, 3}, 1, RoundKey{}, z), p);
  EXPECT_EQ(feistel_round(Variant::FeistelF, FeistelState{1, 2}, 1, 0, z), (FeistelState{2, 1}));
}

TEST(Round, MatchesStraightLineReference) {
  Rng rng(1);
  for (Variant v : kFour) {
    const RoundFunctionFamily f(rng.next(), 8);
    for (int i = 0; i < 500; ++i) {
      const State4 s = random_state(8, rng);
      const RoundKey k{rng.bits(8), rng.bits(8)};
      const int round = 1 + static_cast<int>(rng.below(32));
      EXPECT_EQ(fbc_round(v, s, round, k, f), ref_round(v, s, round, k, f));
    }
  }
}

TEST(Round, InverseRoundTripsAllVariants) {
  Rng rng(2);
  for (Variant v : kFour) {
    const RoundFunctionFamily f(rng.next(), 7);
    for (int i = 0; i < 1000; ++i) {
      const State4 s = random_state(7, rng);
      const RoundKey k{rng.bits(7), rng.bits(7)};
      EXPECT_EQ(fbc_round_inverse(v, fbc_round(v, s, 3, k, f), 3, k, f), s);
    }
  }
  for (Variant v : kTwo) {
    const RoundFunctionFamily f(rng.next(), 7);
    for (int i = 0; i < 1000; ++i) {
      const FeistelState s{rng.bits(7), rng.bits(7)};
      const Word k = rng.bits(7);
      EXPECT_EQ(feistel_round_inverse(v, feistel_round(v, s, 2, k, f), 2, k, f), s);
    }
  }
}

TEST(Round, VariantShapeIsEnforced) {
  const RoundFunctionFamily f(1, 4);
  EXPECT_THROW(fbc_round(Variant::FeistelKF, State4{}, 1, RoundKey{}, f), ParameterError);
  EXPECT_THROW(feistel_round(Variant::FbcKF, FeistelState{}, 1, 0, f), ParameterError);
}

TEST(Cipher, EncryptAndTraceAgreeWithReference) {
  Rng rng(3);
  for (Variant v : kFour) {
    const CipherParams p{v, 6, 5, rng.next()};
    const auto keys = random_key_schedule(p, rng);
    const auto f = family_of(p);
    const State4 pt = random_state(6, rng);
    const auto trace = encrypt_trace(p, keys, pt);
    ASSERT_EQ(trace.size(), 6u);
    State4 s = pt;
    for (int i = 1; i <= 5; ++i) {
      s = ref_round(v, s, i, keys[i - 1], f);
      EXPECT_EQ(trace[i], s);
    }
    EXPECT_EQ(encrypt(p, keys, pt), s);
    EXPECT_EQ(decrypt(p, keys, s), pt);
  }
}

TEST(Cipher, FeistelClosedFormAtTwoRounds) {
  Rng rng(4);
  const CipherParams p{Variant::FeistelKF, 8, 2, rng.next()};
  const auto keys = random_key_schedule(p, rng);
  const auto f = family_of(p);
  for (int i = 0; i < 50; ++i) {
    const Word a = rng.bits(8), b = rng.bits(8);
    // (a, b) -> (b ^ F1(a ^ k0), a) -> (a ^ F2(b ^ F1(a ^ k0) ^ k1), b ^ F1(a ^ k0))
    const Word a1 = b ^ f.eval(1, 1, a ^ keys[0].k1);
    const FeistelState expect{a ^ f.eval(2, 1, a1 ^ keys[1].k1), a1};
    EXPECT_EQ(feistel_encrypt(p, keys, {a, b}), expect);
    EXPECT_EQ(feistel_decrypt(p, keys, expect), (FeistelState{a, b}));
  }
}

TEST(Cipher, DecryptPartial) {
  Rng rng(5);
  const CipherParams p{Variant::FbcKF, 4, 6, 99};
  const auto keys = random_key_schedule(p, rng);
  const State4 pt = random_state(4, rng);
  const auto trace = encrypt_trace(p, keys, pt);
  const State4 ct = trace.back();
  EXPECT_EQ(decrypt_partial(p.variant, ct, {}, p), ct);
  EXPECT_EQ(decrypt_partial(p.variant, ct, keys, p), pt);
  EXPECT_EQ(decrypt_partial(p.variant, ct, std::span(keys).subspan(4), p), trace[4]);

  int differing = 0;
  for (int t = 0; t < 100; ++t) {
    const State4 x = random_state(4, rng);
    const auto tr = encrypt_trace(p, keys, x);
    std::vector<RoundKey> wrong(keys.end() - 2, keys.end());
    wrong[0].k1 ^= 1 + rng.bits(2);
    differing += decrypt_partial(p.variant, tr.back(), wrong, p) != tr[4];
  }
  EXPECT_GE(differing, 1);
}

TEST(Cipher, ParameterValidation) {
  Rng rng(6);
  EXPECT_THROW((CipherParams{Variant::FbcF, 1, 4, 0}.validate()), ParameterError);
  EXPECT_THROW((CipherParams{Variant::FbcF, 17, 4, 0}.validate()), ParameterError);
  EXPECT_THROW((CipherParams{Variant::FbcF, 8, 33, 0}.validate()), ParameterError);
  const CipherParams p{Variant::FbcF, 4, 4, 0};
  auto keys = random_key_schedule(p, rng);
  EXPECT_THROW(encrypt(p, keys, State4{16, 0, 0, 0}), ParameterError);
  keys.pop_back();
  EXPECT_THROW(encrypt(p, keys, State4{}), ParameterError);
  EXPECT_EQ(parse_variant("FBC-FK"), Variant::FbcFK);
  EXPECT_FALSE(parse_variant("FBC-X"));
}
