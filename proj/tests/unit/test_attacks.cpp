#include <gtest/gtest.h>

#include <algorithm>

#include "qfbc/attacks.hpp"
#include "qfbc/errors.hpp"
#include "qfbc/experiments.hpp"
#include "qfbc/whitebox.hpp"

using namespace qfbc;

namespace {

struct Planted {
  CipherParams params;
  KeySchedule keys;
};

Planted plant(Variant v, int n, int r, std::uint64_t seed) {
  Rng rng(seed);
  const CipherParams p{v, n, r, rng.next()};
  return {p, random_key_schedule(p, rng)};
}

Word value(const Trace& t, const std::string& label) {
  for (const auto& [k, v] : t) {
    if (k == label) return v;
  }
  ADD_FAILURE() << "trace has no " << label;
  return 0;
}

// Index of the solution equal to the planted tuple, or -1.
int planted_index(const AttackReport& rep, const KeySchedule& keys) {
  const auto want = planted_tuple(rep.labels, keys);
  for (std::size_t i = 0; i < rep.solutions.size(); ++i) {
    if (rep.solutions[i] == want) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

TEST(Q1Feistel, RecoversAndMatchesIntermediates) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto pl = plant(Variant::FeistelKF, 8, 3, seed);
    EncryptionOracle o(pl.params, pl.keys, OracleMode::Q1Classical);
    Rng rng(seed);
    const auto rep = q1_recover_feistel_kf_3r(o, rng);
    ASSERT_TRUE(rep.success) << rep.failure_reason;
    const int i = planted_index(rep, pl.keys);
    ASSERT_GE(i, 0);
    const auto f = family_of(pl.params);
    const Word k0 = pl.keys[0].k1, k1 = pl.keys[1].k1;
    EXPECT_EQ(value(rep.traces[i], "beta1"), k1 ^ f.eval(1, 1, k0));
    EXPECT_EQ(value(rep.traces[i], "beta2"), f.eval(1, 1, k0 ^ 1) ^ f.eval(1, 1, k0));
    EXPECT_EQ(rep.counters.classical_queries, 8u);
    EXPECT_EQ(rep.counters.superposition_query_units, 0u);
    EXPECT_EQ(rep.counters.simulated_encryptions, 0u);
  }
}

TEST(Q1Fbckf, RecoversAndMatchesIntermediates) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto pl = plant(Variant::FbcKF, 8, 4, seed);
    EncryptionOracle o(pl.params, pl.keys, OracleMode::Q1Classical);
    Rng rng(seed);
    const auto rep = q1_recover_fbckf_4r(o, rng);
    ASSERT_TRUE(rep.success) << rep.failure_reason;
    const int i = planted_index(rep, pl.keys);
    ASSERT_GE(i, 0);
    EXPECT_EQ(rep.counters.classical_queries, 10u);
    EXPECT_EQ(rep.counters.superposition_query_units, 0u);

    // Rebuild the six chosen plaintexts and their traces with the true key.
    const Trace& t = rep.traces[i];
    const Word c0 = value(t, "x0^0"), c0p = value(t, "x0^0'"), c1 = value(t, "x1^0"),
               c1p = value(t, "x1^0'"), c2 = value(t, "x2^0"), c3 = value(t, "x3^0"),
               c3p = value(t, "x3^0'");
    const State4 p[6] = {{c0, 0, c0, 0}, {c0, 0, 0, 0}, {c0, c1, c2, c3},
                         {c0, c1, c2, c3p}, {c0, c1p, c2, c3}, {c0p, c1, c2, c3}};
    std::vector<std::vector<State4>> tr;
    for (const auto& x : p) tr.push_back(encrypt_trace(pl.params, pl.keys, x));
    const auto f = family_of(pl.params);
    const auto& k = pl.keys;
    auto t14 = [&](int j) { return f.eval(4, 1, k[3].k1 ^ tr[j][3].x0); };
    EXPECT_EQ(value(t, "C1"), t14(2) ^ t14(3));
    EXPECT_EQ(value(t, "C2"), t14(2) ^ t14(4));
    EXPECT_EQ(value(t, "C3"), t14(2) ^ t14(5) ^ c0 ^ c0p);
    EXPECT_EQ(value(t, "beta1"), tr[2][1].x0 ^ k[1].k1);
    EXPECT_EQ(value(t, "beta2"), tr[4][1].x0 ^ k[1].k1);
    EXPECT_EQ(value(t, "beta3"), tr[5][1].x0 ^ k[1].k1);
    EXPECT_EQ(value(t, "beta4"), tr[2][2].x0 ^ k[2].k1);
    EXPECT_EQ(value(t, "beta5"), tr[4][2].x0 ^ k[2].k1);
  }
}

TEST(Q1Fbcfk, RecoversAndMatchesIntermediates) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto pl = plant(Variant::FbcFK, 8, 5, seed);
    EncryptionOracle o(pl.params, pl.keys, OracleMode::Q1Classical);
    Rng rng(seed);
    const auto rep = q1_recover_fbcfk_5r(o, rng);
    ASSERT_TRUE(rep.success) << rep.failure_reason;
    const int i = planted_index(rep, pl.keys);
    ASSERT_GE(i, 0);
    EXPECT_EQ(rep.counters.classical_queries, 9u);
    EXPECT_EQ(rep.counters.superposition_query_units, 0u);

    const Trace& t = rep.traces[i];
    const auto f = family_of(pl.params);
    const Word c0 = value(t, "x0^0"), c0p = value(t, "x0^0'"), c1 = value(t, "x1^0"),
               c1p = value(t, "x1^0'"), c2 = value(t, "x2^0"), c3 = value(t, "x3^0"),
               c3p = value(t, "x3^0'");
    const State4 q[5] = {{c0, f.eval(1, 1, c0), c2, c3}, {c0p, f.eval(1, 1, c0p), c2, c3},
                         {c0, c1, c2, c3}, {c0, c1, c2, c3p}, {c0, c1p, c2, c3}};
    std::vector<std::vector<State4>> tr;
    for (const auto& x : q) tr.push_back(encrypt_trace(pl.params, pl.keys, x));
    EXPECT_EQ(value(t, "delta1"), tr[0][2].x0);
    EXPECT_EQ(value(t, "delta2"), tr[1][2].x0);
    EXPECT_EQ(value(t, "delta1") ^ value(t, "delta2"), c0 ^ c0p);
    EXPECT_EQ(value(t, "delta3"), tr[2][2].x0);
    EXPECT_EQ(value(t, "delta4"), tr[2][2].x3);
    EXPECT_EQ(value(t, "delta5"), tr[4][2].x3);
    EXPECT_EQ(value(t, "C4"), c3 ^ c3p ^ f.eval(3, 1, tr[2][2].x0) ^ f.eval(3, 1, tr[3][2].x0));
    EXPECT_EQ(value(t, "C5"), tr[3][2].x0);
    EXPECT_EQ(value(t, "C6"), tr[2][2].x0);
    EXPECT_EQ(value(t, "C7"), tr[4][2].x0);
  }
}

TEST(Q1, QueryCountIndependentOfWidth) {
  for (int n : {4, 6, 8, 10}) {
    AttackSettings s;
    s.n = n;
    for (auto [t, q] : {std::pair{AttackTarget::Q1FeistelKf3r, 8u}, std::pair{AttackTarget::Q1Fbckf4r, 10u},
                        std::pair{AttackTarget::Q1Fbcfk5r, 9u}}) {
      const auto r = run_attack_trial(t, s, 5, 0);
      EXPECT_TRUE(r.ok()) << to_string(t) << " n=" << n << " " << r.report.failure_reason;
      EXPECT_EQ(r.report.counters.classical_queries, q) << to_string(t) << " n=" << n;
    }
  }
}

TEST(Q1, RequiresClassicalOracleOfRightShape) {
  auto pl = plant(Variant::FbcKF, 6, 4, 1);
  EncryptionOracle q2(pl.params, pl.keys, OracleMode::Q2Superposition);
  Rng rng(1);
  EXPECT_THROW(q1_recover_fbckf_4r(q2, rng), ParameterError);
  EncryptionOracle q1(pl.params, pl.keys, OracleMode::Q1Classical);
  EXPECT_THROW(q1_recover_fbcfk_5r(q1, rng), ParameterError);
  // Q1 attacks never open a superposition channel: the oracle would throw.
  EXPECT_THROW(q1.require_superposition(), ModeViolation);
  EXPECT_NO_THROW(q1_recover_fbckf_4r(q1, rng));
}

TEST(Q1, ZeroFunctionsAreReportedNotCrashed) {
  Rng rng(2);
  CipherParams p{Variant::FeistelKF, 6, 3, 0, FunctionMode::Zero};
  EncryptionOracle o(p, random_key_schedule(p, rng), OracleMode::Q1Classical);
  const auto rep = q1_recover_feistel_kf_3r(o, rng);
  // Under F = 0 the cipher ignores its key, so any surviving tuple is
  // functionally equivalent; failure must be reported explicitly.
  if (!rep.success) EXPECT_FALSE(rep.failure_reason.empty());
  EXPECT_GE(rep.search_evaluations, 64u);
}

TEST(Q1, FailedRunsStillBillOfflineWork) {
  AttackSettings s;
  s.n = 6;
  s.impostor = true;
  for (auto t : {AttackTarget::Q1FeistelKf3r, AttackTarget::Q1Fbckf4r, AttackTarget::Q1Fbcfk5r}) {
    for (std::uint64_t i = 0; i < 10; ++i) {
      const auto rep = run_attack_trial(t, s, 8, i).report;
      if (rep.success) continue;
      EXPECT_GE(rep.counters.offline_evaluations, rep.search_evaluations) << to_string(t);
    }
  }
}

TEST(Q2, PlantedKeysSurvive) {
  for (auto [t, r, n] : {std::tuple{AttackTarget::Q2Fbcf, 6, 4}, std::tuple{AttackTarget::Q2Fbckf, 6, 4},
                         std::tuple{AttackTarget::Q2Fbcf, 7, 3}, std::tuple{AttackTarget::Q2Fbcfk, 7, 5},
                         std::tuple{AttackTarget::Q2Fbcfk, 8, 4}}) {
    AttackSettings s;
    s.n = n;
    s.rounds = r;
    for (std::uint64_t i = 0; i < 3; ++i) {
      const auto tr = run_attack_trial(t, s, 11, i);
      EXPECT_TRUE(tr.report.planted_tuple_contained) << to_string(t) << " r=" << r << " n=" << n;
      const int bits = t == AttackTarget::Q2Fbcfk ? 2 * n * (r - 6) : 2 * n * (r - 6) + 3 * n;
      EXPECT_EQ(tr.report.guessed_bits, bits);
      EXPECT_EQ(tr.report.search_evaluations, std::uint64_t{1} << tr.report.guessed_bits);
      EXPECT_GT(tr.report.counters.superposition_query_units, 0u);
      EXPECT_EQ(tr.report.counters.classical_queries, 0u);
    }
  }
}

TEST(Q2, GuessedBitsAndGuard) {
  EXPECT_EQ(q2_guessed_bits(Variant::FbcF, 4, 6), 12);
  EXPECT_EQ(q2_guessed_bits(Variant::FbcKF, 3, 7), 15);
  EXPECT_EQ(q2_guessed_bits(Variant::FbcFK, 6, 7), 12);
  EXPECT_EQ(q2_guessed_bits(Variant::FbcF, 8, 9), 72);
  EXPECT_THROW(q2_guessed_bits(Variant::FbcF, 4, 5), ParameterError);
  EXPECT_THROW(q2_guessed_bits(Variant::FbcFK, 4, 6), ParameterError);
  EXPECT_THROW(enforce_guard(21, {}), ResourceGuardError);
  EXPECT_NO_THROW(enforce_guard(21, AttackLimits{20, true}));

  auto pl = plant(Variant::FbcF, 8, 9, 1);
  EncryptionOracle o(pl.params, pl.keys, OracleMode::Q2Superposition);
  Rng rng(1);
  EXPECT_THROW(q2_recover_fbcf(o, {0, 1, 0, 0}, {}, rng), ResourceGuardError);
  EXPECT_EQ(o.counters().simulated_encryptions, 0u);
}

TEST(Q2, ClassicalOracleIsAModeViolation) {
  auto pl = plant(Variant::FbcKF, 4, 6, 1);
  EncryptionOracle o(pl.params, pl.keys, OracleMode::Q1Classical);
  Rng rng(1);
  EXPECT_THROW(q2_recover_fbckf(o, {0, 1, 0, 0}, {}, rng), ModeViolation);
}

TEST(Q2, ImpostorRejectionAtSixRounds) {
  AttackSettings s;
  s.n = 4;
  s.rounds = 6;
  s.impostor = true;
  for (auto t : {AttackTarget::Q2Fbcf, AttackTarget::Q2Fbckf}) {
    int empty = 0;
    for (std::uint64_t i = 0; i < 100; ++i) empty += run_attack_trial(t, s, 3, i).report.solutions.empty();
    EXPECT_GE(empty, 95) << to_string(t);
  }
  s.rounds = 7;
  int empty = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    empty += run_attack_trial(AttackTarget::Q2Fbcfk, s, 3, i).report.solutions.empty();
  }
  EXPECT_GE(empty, 95);
}

TEST(Q2, WrongKeySurvivalBelowFivePercent) {
  AttackSettings s;
  s.n = 6;
  s.rounds = 6;
  for (auto t : {AttackTarget::Q2Fbcf, AttackTarget::Q2Fbckf}) {
    const auto tr = run_attack_trial(t, s, 4, 0);
    ASSERT_TRUE(tr.report.planted_tuple_contained);
    const double wrong = static_cast<double>(tr.report.solutions.size() - 1) /
                         static_cast<double>(tr.report.search_evaluations);
    EXPECT_LT(wrong, 0.05) << to_string(t);
  }
  s.rounds = 7;
  const auto tr = run_attack_trial(AttackTarget::Q2Fbcfk, s, 4, 0);
  ASSERT_TRUE(tr.report.planted_tuple_contained);
  EXPECT_LT(static_cast<double>(tr.report.solutions.size()) / tr.report.search_evaluations, 0.05);
}

TEST(Gms, FxRecovery) {
  Rng rng(1);
  for (int t = 0; t < 10; ++t) {
    const auto fx = FxFixture::random(8, 8, rng.next(), rng);
    const auto rep = gms_recover_fx(fx, {}, rng);
    ASSERT_EQ(rep.solutions.size(), 1u);
    EXPECT_EQ(rep.solutions[0], (std::vector<Word>{fx.k0(), fx.k1(), fx.k2()}));
    // k2 from the FX equation at x = 0.
    EXPECT_EQ(fx.k2(), fx.encrypt(0) ^ fx.inner_table(fx.k0())[fx.k1()]);
    EXPECT_EQ(rep.search_evaluations, 256u);
  }
}

TEST(Gms, InnerTablesArePermutations) {
  const FxFixture fx(4, 6, 9, 3, 5, 7);
  for (Word k = 0; k < 16; ++k) {
    auto t = fx.inner_table(k);
    std::sort(t.begin(), t.end());
    for (Word x = 0; x < 64; ++x) ASSERT_EQ(t[x], x);
  }
  EXPECT_THROW(FxFixture(4, 6, 9, 3, 0, 7), ParameterError);
}

TEST(Gms, AperiodicProblemsHaveNoSurvivors) {
  Rng rng(2);
  const auto id = GmsProblem::from_pointwise(5, 6, [](Word, Word x) { return x; });
  EXPECT_TRUE(grover_meets_simon(id, {}, rng).survivors.empty());
  const auto mixed = GmsProblem::from_pointwise(
      5, 8, [](Word, Word x) { return static_cast<Word>(mix64(x) & 0xff); });
  EXPECT_TRUE(grover_meets_simon(mixed, {}, rng).survivors.empty());
}

TEST(Gms, StatevectorDemoFindsTheKey) {
  Rng rng(3);
  const Word k0 = 9, s = 0b101101;
  const auto prob = GmsProblem::from_pointwise(6, 6, [&](Word k, Word x) {
    const Word rep = k == k0 ? std::min(x, x ^ s) : x;
    return static_cast<Word>(mix64(rep * 131 + k) & 0x3f);
  });
  const auto out = grover_meets_simon(prob, {}, rng, true);
  ASSERT_TRUE(out.statevector);
  EXPECT_EQ(out.statevector->marked, 1u);
  EXPECT_NEAR(out.statevector->success_probability, grover_success_closed_form(6, 1, grover_iterations(6)),
              1e-10);
}
