#include <string>
#include <utility>

#include "qfbc/attacks.hpp"
#include "qfbc/errors.hpp"

namespace qfbc {

GmsProblem GmsProblem::from_pointwise(int key_bits, int n, std::function<Word(Word, Word)> f) {
  GmsProblem p;
  p.key_bits = key_bits;
  p.n = n;
  p.restriction = [n, f = std::move(f)](Word k) {
    FunctionTable t(std::size_t{1} << n);
    for (Word x = 0; x < t.size(); ++x) t[x] = f(k, x);
    return t;
  };
  return p;
}

GmsResult grover_meets_simon(const GmsProblem& problem, const SimonConfig& simon_cfg, Rng& rng,
                             bool use_statevector) {
  if (problem.key_bits < 1 || problem.key_bits > 24) throw ParameterError("key bits outside [1,24]");
  if (problem.n < 2 || problem.n > kMaxWidth) throw ParameterError("period width outside [2,16]");
  if (use_statevector && problem.key_bits > 10) {
    throw ParameterError("statevector Grover is limited to 10 key bits here");
  }
  GmsResult out;
  const Word keys = Word{1} << problem.key_bits;
  std::vector<char> periodic(keys, 0);
  for (Word k = 0; k < keys; ++k) {
    const FunctionTable t = problem.restriction(k);
    const auto s = simon_find_period(t, problem.n, simon_cfg, rng);
    ++out.evaluations;
    out.simon_rounds += static_cast<std::uint64_t>(s.rounds_used);
    if (s.period) {
      periodic[k] = 1;
      out.survivors.push_back({k, static_cast<Word>(s.period->bits), s.multiple_periods});
    }
  }
  if (use_statevector) {
    out.statevector = grover_search_statevector([&](Word k) { return periodic[k] != 0; },
                                                problem.key_bits, rng);
  }
  return out;
}

FxFixture::FxFixture(int m, int n, std::uint64_t seed, Word k0, Word k1, Word k2)
    : m_(m), n_(n), seed_(seed), k0_(k0), k1_(k1), k2_(k2) {
  if (m < 1 || m > 24) throw ParameterError("FX key bits outside [1,24]");
  if (n < 2 || n > kMaxWidth) throw ParameterError("FX block width outside [2,16]");
  if (k0 >= (Word{1} << m)) throw ParameterError("k0 exceeds m bits");
  check_word(k1, n, "k1");
  check_word(k2, n, "k2");
  if (k1 == 0) throw ParameterError("k1 must be nonzero for the FX period to exist");
  const FunctionTable e = inner_table(k0);
  enc_.resize(e.size());
  for (Word x = 0; x < e.size(); ++x) enc_[x] = e[x ^ k1] ^ k2;
}

FxFixture FxFixture::random(int m, int n, std::uint64_t seed, Rng& rng) {
  const Word k0 = rng.bits(m);
  Word k1;
  do {
    k1 = rng.bits(n);
  } while (k1 == 0);
  const Word k2 = rng.bits(n);
  return {m, n, seed, k0, k1, k2};
}

FunctionTable FxFixture::inner_table(Word key) const {
  // Fisher-Yates shuffle seeded per key: one ideal-cipher permutation.
  FunctionTable t(std::size_t{1} << n_);
  for (Word x = 0; x < t.size(); ++x) t[x] = x;
  Rng r(split_seed(seed_, key));
  for (std::size_t i = t.size() - 1; i > 0; --i) std::swap(t[i], t[r.below(i + 1)]);
  return t;
}

FunctionTable FxFixture::encryption_table() const { return enc_; }

Word FxFixture::encrypt(Word x) const {
  check_word(x, n_, "plaintext");
  return enc_[x];
}

AttackReport gms_recover_fx(const FxFixture& fx, const SimonConfig& simon_cfg, Rng& rng,
                            const AttackLimits& limits) {
  AttackReport rep;
  rep.attack_id = "gms-fx";
  rep.structure = "FX";
  rep.n = fx.width();
  rep.rounds = 0;
  rep.labels = {"k0", "k1", "k2"};
  rep.guessed_bits = fx.key_bits();
  enforce_guard(rep.guessed_bits, limits);

  // Superposition access to Enc, simulated by tabulating it once.
  const FunctionTable enc = fx.encryption_table();
  rep.counters.simulated_encryptions = enc.size();

  GmsProblem problem;
  problem.key_bits = fx.key_bits();
  problem.n = fx.width();
  problem.restriction = [&](Word k) {
    FunctionTable t = fx.inner_table(k);
    for (Word x = 0; x < t.size(); ++x) t[x] ^= enc[x];
    return t;
  };
  const auto result = grover_meets_simon(problem, simon_cfg, rng);
  rep.search_evaluations = result.evaluations;
  rep.counters.superposition_query_units = result.simon_rounds;
  rep.counters.superposition_oracle_calls = result.simon_rounds;
  rep.counters.offline_evaluations = result.evaluations << fx.width();

  for (const auto& s : result.survivors) {
    const Word k2 = enc[0] ^ fx.inner_table(s.key)[s.period];
    rep.solutions.push_back({s.key, s.period, k2});
    rep.periods.push_back(s.period);
  }
  rep.chain_count = rep.solutions.size();
  rep.grover_exponent = rep.guessed_bits / 2.0;
  rep.grover_iterations = static_cast<std::uint64_t>(grover_iterations(rep.guessed_bits));
  rep.success = !rep.solutions.empty();
  if (!rep.success) rep.failure_reason = "no key guess produced a periodic function";
  return rep;
}

}  // namespace qfbc
