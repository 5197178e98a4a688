#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "qfbc/cipher.hpp"

namespace qfbc {

enum class OracleMode { Q1Classical, Q2Superposition };

struct QueryCounter {
  std::uint64_t classical_queries = 0;
  // One unit per Simon sampling round (a superposition query of f).
  std::uint64_t superposition_query_units = 0;
  // The same rounds billed per oracle call inside one evaluation of f
  // (two for the alpha_0/alpha_1 folds, one for FX).
  std::uint64_t superposition_oracle_calls = 0;
  // Encryptions performed while simulating superposition queries.
  std::uint64_t simulated_encryptions = 0;
  // Attacker-side evaluations of the public round functions.
  std::uint64_t offline_evaluations = 0;

  friend bool operator==(const QueryCounter&, const QueryCounter&) = default;
};

/// Keyed pseudorandom permutation on the same block shape as a cipher,
/// used as the "random permutation" side of a distinguishing experiment.
class BlockImpostor {
 public:
  BlockImpostor(int n, bool four_branch, std::uint64_t seed);
  State4 encrypt(const State4& s) const;
  FeistelState encrypt(const FeistelState& s) const;

 private:
  std::uint64_t permute(std::uint64_t block) const;

  int half_bits_;
  std::uint64_t seed_;
};

/// Tag type gating access to hidden keys; only tests and the trial harness
/// construct it.
struct WhiteBoxAccess {
  explicit WhiteBoxAccess() = default;
};

/// Encryption oracle with a hidden key (or a random-permutation impostor).
/// Not thread-safe; use one oracle per trial.
class EncryptionOracle {
 public:
  EncryptionOracle(CipherParams params, KeySchedule keys, OracleMode mode);
  static EncryptionOracle impostor(CipherParams shape, std::uint64_t impostor_seed, OracleMode mode);

  const CipherParams& params() const { return params_; }
  OracleMode mode() const { return mode_; }
  bool is_impostor() const { return impostor_.has_value(); }
  const QueryCounter& counters() const { return counters_; }

  /// The public round-function family shared with the attacker.
  RoundFunctionFamily public_family() const { return family_of(params_); }

  State4 query(const State4& pt);
  FeistelState query(const FeistelState& pt);

  /// One encryption inside a simulated superposition query. Requires Q2.
  State4 superposed_encrypt(const State4& pt);
  void require_superposition() const;

  void record_superposition_units(std::uint64_t units, std::uint64_t calls_per_eval) {
    counters_.superposition_query_units += units;
    counters_.superposition_oracle_calls += units * calls_per_eval;
  }
  void record_offline(std::uint64_t evals) { counters_.offline_evaluations += evals; }

  const KeySchedule& hidden_keys(WhiteBoxAccess) const { return keys_; }

 private:
  EncryptionOracle(CipherParams params, OracleMode mode, std::uint64_t impostor_seed);
  State4 run(const State4& pt) const;

  CipherParams params_;
  KeySchedule keys_;
  OracleMode mode_;
  std::optional<BlockImpostor> impostor_;
  RoundFunctionFamily family_;
  QueryCounter counters_;
};

/// A function {0,1}^n -> {0,1}^n promised (or suspected) to be periodic.
/// When bound to an oracle, the oracle must outlive the handle; sampling
/// rounds are billed to that oracle.
class PeriodicFunctionHandle {
 public:
  using Evaluator = std::function<Word(Word)>;

  PeriodicFunctionHandle(int n, Evaluator eval, std::string provenance,
                         EncryptionOracle* source = nullptr, int calls_per_eval = 1);

  Word operator()(Word x) const { return eval_(x); }
  int width() const { return n_; }
  const std::string& provenance() const { return provenance_; }
  void note_sampling_rounds(std::uint64_t rounds) const {
    if (source_) source_->record_superposition_units(rounds, static_cast<std::uint64_t>(calls_per_eval_));
  }

 private:
  int n_;
  Evaluator eval_;
  std::string provenance_;
  EncryptionOracle* source_;
  int calls_per_eval_;
};

using SuperposedBuilder = std::function<Word(EncryptionOracle&, Word)>;

/// Wraps an oracle-dependent f as a handle. Throws ModeViolation on Q1.
/// calls_per_eval is the number of oracle encryptions one evaluation of f makes.
PeriodicFunctionHandle query_superposed(EncryptionOracle& oracle, SuperposedBuilder builder,
                                        std::string provenance, int calls_per_eval);

}  // namespace qfbc
