#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qfbc/random.hpp"

namespace qfbc {

using Word = std::uint32_t;

inline constexpr int kMinWidth = 2;
inline constexpr int kMaxWidth = 16;
inline constexpr int kMaxRounds = 32;

constexpr Word width_mask(int n) { return static_cast<Word>((std::uint64_t{1} << n) - 1); }

enum class Variant { FbcF, FbcKF, FbcFK, FeistelF, FeistelKF, FeistelFK };

bool is_four_branch(Variant v);
std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view s);

// Zero is a test fixture that makes every round function the constant 0.
enum class FunctionMode { Random, Permutation, Zero };

struct State4 {
  Word x0 = 0, x1 = 0, x2 = 0, x3 = 0;
  friend bool operator==(const State4&, const State4&) = default;
};

struct FeistelState {
  Word a = 0, b = 0;
  friend bool operator==(const FeistelState&, const FeistelState&) = default;
};

// Two-branch variants only read k1.
struct RoundKey {
  Word k1 = 0, k2 = 0;
  friend bool operator==(const RoundKey&, const RoundKey&) = default;
};

// Entry i holds the key of round i + 1.
using KeySchedule = std::vector<RoundKey>;

struct CipherParams {
  Variant variant = Variant::FbcF;
  int n = 8;
  int rounds = 4;
  std::uint64_t seed = 0;
  FunctionMode mode = FunctionMode::Random;

  void validate() const;
};

/// Seeded family of round functions F_b^i : {0,1}^n -> {0,1}^n.
///
/// Rounds are 1-based, branches are 1 or 2. The keyed form is a distinct
/// function per key value and is what FBC-F uses.
class RoundFunctionFamily {
 public:
  RoundFunctionFamily(std::uint64_t seed, int n, FunctionMode mode = FunctionMode::Random);
  static RoundFunctionFamily zero(int n) { return {0, n, FunctionMode::Zero}; }

  int width() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  FunctionMode mode() const { return mode_; }

  // Unchecked fast paths; callers guarantee ranges.
  Word eval(int round, int branch, Word x) const { return apply(round, branch, 0, x); }
  Word eval_keyed(int round, int branch, Word key, Word x) const {
    return apply(round, branch, std::uint64_t{key} + 1, x);
  }

 private:
  Word apply(int round, int branch, std::uint64_t key_tag, Word x) const;

  std::uint64_t seed_;
  int n_;
  FunctionMode mode_;
  Word mask_;
  std::uint64_t seed_key_;
};

/// Range-checked evaluation of F_branch^round, keyed when key is present.
Word prf_eval(const RoundFunctionFamily& f, int round, int branch, std::optional<Word> key, Word x);

State4 fbc_round(Variant v, const State4& s, int round, RoundKey key, const RoundFunctionFamily& f);
State4 fbc_round_inverse(Variant v, const State4& s, int round, RoundKey key,
                         const RoundFunctionFamily& f);
FeistelState feistel_round(Variant v, const FeistelState& s, int round, Word key,
                           const RoundFunctionFamily& f);
FeistelState feistel_round_inverse(Variant v, const FeistelState& s, int round, Word key,
                                   const RoundFunctionFamily& f);

// Schedule-indexed forms (round is 1-based).
State4 fbc_round(Variant v, const State4& s, int round, const KeySchedule& keys,
                 const RoundFunctionFamily& f);
State4 fbc_round_inverse(Variant v, const State4& s, int round, const KeySchedule& keys,
                         const RoundFunctionFamily& f);

State4 encrypt(const CipherParams& p, const KeySchedule& keys, const State4& pt);
State4 decrypt(const CipherParams& p, const KeySchedule& keys, const State4& ct);
FeistelState feistel_encrypt(const CipherParams& p, const KeySchedule& keys, const FeistelState& pt);
FeistelState feistel_decrypt(const CipherParams& p, const KeySchedule& keys, const FeistelState& ct);

/// States x^0 (plaintext) through x^r.
std::vector<State4> encrypt_trace(const CipherParams& p, const KeySchedule& keys, const State4& pt);

/// Undoes the last t rounds. last_round_keys holds rounds r-t+1..r in
/// ascending order.
State4 decrypt_partial(Variant v, const State4& ct, std::span<const RoundKey> last_round_keys,
                       const CipherParams& p);

KeySchedule random_key_schedule(const CipherParams& p, Rng& rng);
State4 random_state(int n, Rng& rng);
RoundFunctionFamily family_of(const CipherParams& p);

void check_word(Word w, int n, const char* what);
void check_state(const State4& s, int n);
void check_schedule(const KeySchedule& keys, const CipherParams& p);

}  // namespace qfbc
