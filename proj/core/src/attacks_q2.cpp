#include <string>

#include "qfbc/attacks.hpp"
#include "qfbc/errors.hpp"

namespace qfbc {

namespace {

// Guesses full round keys from the last round down to `last_pair_round`,
// inverting each round on the whole ciphertext table, then hands the
// peeled table to the leaf.
class TrailingSearch {
 public:
  using Leaf = std::function<void(const std::vector<State4>&, std::vector<Word>&)>;

  TrailingSearch(Variant v, int n, const RoundFunctionFamily& f, int last_pair_round, Leaf leaf)
      : v_(v), n_(n), f_(f), stop_(last_pair_round), leaf_(std::move(leaf)) {}

  void run(const std::vector<State4>& table, int round) {
    if (round < stop_) {
      leaf_(table, guess_);
      return;
    }
    const Word size = Word{1} << n_;
    std::vector<State4> next(table.size());
    for (Word k1 = 0; k1 < size; ++k1) {
      for (Word k2 = 0; k2 < size; ++k2) {
        for (std::size_t i = 0; i < table.size(); ++i) {
          next[i] = fbc_round_inverse(v_, table[i], round, RoundKey{k1, k2}, f_);
        }
        offline += 2 * table.size();
        guess_.push_back(k1);
        guess_.push_back(k2);
        run(next, round - 1);
        guess_.resize(guess_.size() - 2);
      }
    }
  }

  std::uint64_t offline = 0;

 private:
  Variant v_;
  int n_;
  const RoundFunctionFamily& f_;
  int stop_;
  Leaf leaf_;
  std::vector<Word> guess_;
};

void finish_q2(AttackReport& rep, EncryptionOracle& oracle) {
  rep.grover_exponent = rep.guessed_bits / 2.0;
  rep.grover_iterations = static_cast<std::uint64_t>(grover_iterations(rep.guessed_bits));
  rep.counters = oracle.counters();
  rep.chain_count = rep.solutions.size();
  rep.success = !rep.solutions.empty();
  if (!rep.success) rep.failure_reason = "no key guess produced a periodic function";
}

AttackReport q2_fbc_f_or_kf(EncryptionOracle& oracle, const DistinguisherConfig& cfg,
                            const SimonConfig& sc, Rng& rng, const AttackLimits& limits, Variant v,
                            const char* id) {
  const auto& p = oracle.params();
  if (p.variant != v) throw ParameterError(std::string(id) + " needs an oracle of variant " +
                                           std::string(to_string(v)));
  const int n = p.n, r = p.rounds;
  AttackReport rep;
  rep.attack_id = id;
  rep.structure = std::string(to_string(v));
  rep.n = n;
  rep.rounds = r;
  rep.guessed_bits = q2_guessed_bits(v, n, r);
  enforce_guard(rep.guessed_bits, limits);
  oracle.require_superposition();
  cfg.validate(n);
  for (int i = r; i >= 6; --i) {
    rep.labels.push_back("k1^" + std::to_string(i));
    rep.labels.push_back("k2^" + std::to_string(i));
  }
  rep.labels.push_back("k1^5");

  const Word size = Word{1} << n;
  std::vector<State4> table(2 * size);
  for (int b = 0; b < 2; ++b) {
    for (Word x = 0; x < size; ++x) table[b * size + x] = oracle.superposed_encrypt(fbc4_plaintext(cfg, b, x));
  }

  const auto F = oracle.public_family();
  std::uint64_t leaf_offline = 0;
  FunctionTable f(size);
  TrailingSearch search(v, n, F, 6, [&](const std::vector<State4>& x5, std::vector<Word>& guess) {
    for (Word k15 = 0; k15 < size; ++k15) {
      // x_1^4 ^ x_3^4 = T(x_1^5 ^ x_3^5) ^ x_2^5 with T the keyed round-5 function.
      auto half = [&](const State4& s) {
        const Word in = s.x1 ^ s.x3;
        return (v == Variant::FbcF ? F.eval_keyed(5, 1, k15, in) : F.eval(5, 1, in ^ k15)) ^ s.x2;
      };
      for (Word x = 0; x < size; ++x) f[x] = half(x5[x]) ^ half(x5[size + x]);
      leaf_offline += 2 * size;
      ++rep.search_evaluations;
      const auto out = simon_find_period(f, n, sc, rng);
      oracle.record_superposition_units(static_cast<std::uint64_t>(out.rounds_used), 2);
      if (out.period) {
        auto tuple = guess;
        tuple.push_back(k15);
        rep.solutions.push_back(std::move(tuple));
        rep.periods.push_back(static_cast<Word>(out.period->bits));
      }
    }
  });
  search.run(table, r);
  oracle.record_offline(search.offline + leaf_offline);
  finish_q2(rep, oracle);
  return rep;
}

}  // namespace

AttackReport q2_recover_fbcf(EncryptionOracle& oracle, const DistinguisherConfig& cfg,
                             const SimonConfig& simon_cfg, Rng& rng, const AttackLimits& limits) {
  return q2_fbc_f_or_kf(oracle, cfg, simon_cfg, rng, limits, Variant::FbcF, "q2-fbcf");
}

AttackReport q2_recover_fbckf(EncryptionOracle& oracle, const DistinguisherConfig& cfg,
                              const SimonConfig& simon_cfg, Rng& rng, const AttackLimits& limits) {
  return q2_fbc_f_or_kf(oracle, cfg, simon_cfg, rng, limits, Variant::FbcKF, "q2-fbckf");
}

AttackReport q2_recover_fbcfk(EncryptionOracle& oracle, const DistinguisherConfig& cfg,
                              const SimonConfig& sc, Rng& rng, const AttackLimits& limits) {
  const auto& p = oracle.params();
  if (p.variant != Variant::FbcFK) throw ParameterError("q2-fbcfk needs an FBC-FK oracle");
  const int n = p.n, r = p.rounds;
  AttackReport rep;
  rep.attack_id = "q2-fbcfk";
  rep.structure = "FBC-FK";
  rep.n = n;
  rep.rounds = r;
  rep.guessed_bits = q2_guessed_bits(Variant::FbcFK, n, r);
  enforce_guard(rep.guessed_bits, limits);
  oracle.require_superposition();
  cfg.validate(n);
  for (int i = r; i >= 7; --i) {
    rep.labels.push_back("k1^" + std::to_string(i));
    rep.labels.push_back("k2^" + std::to_string(i));
  }

  const auto F = oracle.public_family();
  const Word size = Word{1} << n;
  std::vector<State4> table(2 * size);
  for (int b = 0; b < 2; ++b) {
    for (Word x = 0; x < size; ++x) {
      table[b * size + x] = oracle.superposed_encrypt(fbcfk6_plaintext(cfg, F, b, x));
    }
  }
  oracle.record_offline(4 * size);

  std::uint64_t leaf_offline = 0;
  FunctionTable f(size);
  TrailingSearch search(Variant::FbcFK, n, F, 7, [&](const std::vector<State4>& x6, std::vector<Word>& guess) {
    for (Word x = 0; x < size; ++x) f[x] = fold_fbcfk6(x6[x], F) ^ fold_fbcfk6(x6[size + x], F);
    leaf_offline += 2 * size;
    ++rep.search_evaluations;
    const auto out = simon_find_period(f, n, sc, rng);
    oracle.record_superposition_units(static_cast<std::uint64_t>(out.rounds_used), 2);
    if (out.period) {
      rep.solutions.push_back(guess);
      rep.periods.push_back(static_cast<Word>(out.period->bits));
    }
  });
  search.run(table, r);
  oracle.record_offline(search.offline + leaf_offline);
  finish_q2(rep, oracle);
  return rep;
}

}  // namespace qfbc
