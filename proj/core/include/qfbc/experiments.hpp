#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qfbc/attacks.hpp"
#include "qfbc/distinguishers.hpp"

namespace qfbc {

inline constexpr int kSchemaVersion = 1;

enum class AttackTarget { Q2Fbcf, Q2Fbckf, Q2Fbcfk, Q1FeistelKf3r, Q1Fbckf4r, Q1Fbcfk5r, GmsFx };

std::string_view to_string(AttackTarget t);
std::optional<AttackTarget> parse_attack_target(std::string_view s);
int default_rounds(AttackTarget t);
bool is_quantum(AttackTarget t);

/// Per-trial seed from the run seed, a stream name and the trial index.
std::uint64_t trial_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index);

struct DistinguisherTrial {
  Structure structure = Structure::FbcF4;
  int n = 0;
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  bool impostor = false;
  Verdict verdict;
  std::optional<Word> expected_period;  // genuine trials only
  int redraws = 0;
  QueryCounter counters;
};

DistinguisherTrial run_distinguisher_trial(Structure s, int n, bool impostor, const SimonConfig& simon,
                                           std::uint64_t seed, std::uint64_t trial);

struct AttackSettings {
  int n = 8;
  int rounds = 0;  // 0 selects the target's default
  int key_bits = 8;  // FX only
  bool impostor = false;
  SimonConfig simon;
  AttackLimits limits;
};

struct AttackTrial {
  AttackTarget target = AttackTarget::Q1Fbckf4r;
  std::uint64_t trial = 0;
  bool impostor = false;
  AttackReport report;
  std::vector<Word> planted;  // empty for impostor oracles
  std::optional<double> wall_ms;

  /// Verified recovery on genuine oracles, empty survivor set on impostors.
  bool ok() const;
};

/// Checks the resource guard without running anything.
void check_attack_guard(AttackTarget t, const AttackSettings& s);

AttackTrial run_attack_trial(AttackTarget t, const AttackSettings& s, std::uint64_t seed,
                             std::uint64_t trial);

// One JSON object per line, fixed key order.
std::string to_json_line(const DistinguisherTrial& t);
std::string to_json_line(const AttackTrial& t);

std::string hex_word(Word w, int n);
std::string state_to_json(const State4& s, int n);
State4 state_from_json(std::string_view json);
std::string schedule_to_json(const KeySchedule& k, int n);
KeySchedule schedule_from_json(std::string_view json);

}  // namespace qfbc
