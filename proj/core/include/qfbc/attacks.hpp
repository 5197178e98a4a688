#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qfbc/cipher.hpp"
#include "qfbc/distinguishers.hpp"
#include "qfbc/oracle.hpp"
#include "qfbc/quantum_sim.hpp"

namespace qfbc {

using Trace = std::vector<std::pair<std::string, Word>>;

struct AttackLimits {
  int max_guessed_bits = 20;
  bool override_guard = false;
  std::size_t max_chains = 4096;
};

/// Outcome of a key-recovery run.
///
/// solutions holds one tuple per surviving key hypothesis, ordered like
/// labels. For classical attacks every tuple passed final verification and
/// traces[i] lists the intermediate values of solution i.
struct AttackReport {
  std::string attack_id;
  std::string structure;
  int n = 0;
  int rounds = 0;
  std::uint64_t seed = 0;

  std::vector<std::string> labels;
  std::vector<std::vector<Word>> solutions;
  std::vector<Trace> traces;
  std::vector<Word> periods;  // Simon period per solution (quantum attacks)

  std::map<std::string, bool> planted_contained;
  bool planted_tuple_contained = false;
  bool graded = false;

  QueryCounter counters;
  std::uint64_t search_evaluations = 0;
  std::size_t chain_count = 0;
  int guessed_bits = 0;
  double grover_exponent = 0.0;
  std::uint64_t grover_iterations = 0;
  int redraws = 0;

  bool success = false;
  std::string failure_reason;

  /// Per-label sorted, deduplicated candidate values.
  std::map<std::string, std::vector<Word>> recovered() const;
};

/// Fills planted_contained from the true tuple (ordered like labels).
void grade(AttackReport& report, std::span<const Word> planted);

/// The true tuple for a report's labels, read from a key schedule.
/// Labels of the form "k1^i" / "k2^i" (FBC) or "k<i>" (Feistel, 0-based).
std::vector<Word> planted_tuple(const std::vector<std::string>& labels, const KeySchedule& keys);

// Quantum (Q2) key recovery: exhaustive search over the trailing keys with
// Simon as the test. FBC-F/KF need r >= 6, FBC-FK needs r >= 7.
AttackReport q2_recover_fbcf(EncryptionOracle& oracle, const DistinguisherConfig& cfg,
                             const SimonConfig& simon_cfg, Rng& rng, const AttackLimits& limits = {});
AttackReport q2_recover_fbckf(EncryptionOracle& oracle, const DistinguisherConfig& cfg,
                              const SimonConfig& simon_cfg, Rng& rng, const AttackLimits& limits = {});
AttackReport q2_recover_fbcfk(EncryptionOracle& oracle, const DistinguisherConfig& cfg,
                              const SimonConfig& simon_cfg, Rng& rng, const AttackLimits& limits = {});

/// Guessed key bits of the quantum attacks, checked against the guard.
int q2_guessed_bits(Variant v, int n, int rounds);
void enforce_guard(int guessed_bits, const AttackLimits& limits);

// Classical (Q1) key recovery from chosen plaintexts.
AttackReport q1_recover_feistel_kf_3r(EncryptionOracle& oracle, Rng& rng, const AttackLimits& limits = {});
AttackReport q1_recover_fbckf_4r(EncryptionOracle& oracle, Rng& rng, const AttackLimits& limits = {});
AttackReport q1_recover_fbcfk_5r(EncryptionOracle& oracle, Rng& rng, const AttackLimits& limits = {});

// Grover-meets-Simon.

/// f(k, .) restricted to one key guess, tabulated over {0,1}^n.
struct GmsProblem {
  int key_bits = 0;
  int n = 0;
  std::function<FunctionTable(Word)> restriction;

  static GmsProblem from_pointwise(int key_bits, int n, std::function<Word(Word, Word)> f);
};

struct GmsSurvivor {
  Word key = 0;
  Word period = 0;
  bool multiple_periods = false;
};

struct GmsResult {
  std::vector<GmsSurvivor> survivors;
  std::uint64_t evaluations = 0;
  std::uint64_t simon_rounds = 0;
  std::optional<GroverOutcome> statevector;
};

/// Keys whose restriction has a confirmed Simon period. With
/// use_statevector (key_bits <= 10) a Grover run over that predicate is
/// also simulated.
GmsResult grover_meets_simon(const GmsProblem& problem, const SimonConfig& simon_cfg, Rng& rng,
                             bool use_statevector = false);

/// FX construction Enc(x) = E_{k0}(x ^ k1) ^ k2 over an ideal cipher E
/// with m-bit keys and n-bit blocks (seeded random permutation tables).
class FxFixture {
 public:
  FxFixture(int m, int n, std::uint64_t seed, Word k0, Word k1, Word k2);
  static FxFixture random(int m, int n, std::uint64_t seed, Rng& rng);

  int key_bits() const { return m_; }
  int width() const { return n_; }
  Word k0() const { return k0_; }
  Word k1() const { return k1_; }
  Word k2() const { return k2_; }

  FunctionTable inner_table(Word key) const;
  FunctionTable encryption_table() const;
  Word encrypt(Word x) const;

 private:
  int m_, n_;
  std::uint64_t seed_;
  Word k0_, k1_, k2_;
  FunctionTable enc_;
};

AttackReport gms_recover_fx(const FxFixture& fx, const SimonConfig& simon_cfg, Rng& rng,
                            const AttackLimits& limits = {});

}  // namespace qfbc
