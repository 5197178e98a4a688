#include "qfbc/cipher.hpp"

#include <string>

#include "qfbc/errors.hpp"

namespace qfbc {

namespace {

constexpr std::uint64_t pack(int round, int branch, std::uint64_t key_tag, Word x) {
  return (static_cast<std::uint64_t>(round) << 40) | (static_cast<std::uint64_t>(branch) << 36) |
         (key_tag << 16) | x;
}

Word term(Variant v, const RoundFunctionFamily& f, int round, int branch, Word key, Word x) {
  switch (v) {
    case Variant::FbcF:
    case Variant::FeistelF:
      return f.eval_keyed(round, branch, key, x);
    case Variant::FbcKF:
    case Variant::FeistelKF:
      return f.eval(round, branch, x ^ key);
    case Variant::FbcFK:
    case Variant::FeistelFK:
      return f.eval(round, branch, x) ^ key;
  }
  return 0;
}

void require_four(Variant v) {
  if (!is_four_branch(v)) throw ParameterError("expected a four-branch variant");
}

void require_two(Variant v) {
  if (is_four_branch(v)) throw ParameterError("expected a two-branch Feistel variant");
}

}  // namespace

bool is_four_branch(Variant v) {
  return v == Variant::FbcF || v == Variant::FbcKF || v == Variant::FbcFK;
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::FbcF: return "FBC-F";
    case Variant::FbcKF: return "FBC-KF";
    case Variant::FbcFK: return "FBC-FK";
    case Variant::FeistelF: return "Feistel-F";
    case Variant::FeistelKF: return "Feistel-KF";
    case Variant::FeistelFK: return "Feistel-FK";
  }
  return "?";
}

std::optional<Variant> parse_variant(std::string_view s) {
  for (Variant v : {Variant::FbcF, Variant::FbcKF, Variant::FbcFK, Variant::FeistelF,
                    Variant::FeistelKF, Variant::FeistelFK}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

void CipherParams::validate() const {
  if (n < kMinWidth || n > kMaxWidth) {
    throw ParameterError("branch width n=" + std::to_string(n) + " outside [2,16]");
  }
  if (rounds < 1 || rounds > kMaxRounds) {
    throw ParameterError("round count " + std::to_string(rounds) + " outside [1,32]");
  }
}

void check_word(Word w, int n, const char* what) {
  if (w & ~width_mask(n)) {
    throw ParameterError(std::string(what) + " exceeds " + std::to_string(n) + " bits");
  }
}

void check_state(const State4& s, int n) {
  check_word(s.x0, n, "x0");
  check_word(s.x1, n, "x1");
  check_word(s.x2, n, "x2");
  check_word(s.x3, n, "x3");
}

void check_schedule(const KeySchedule& keys, const CipherParams& p) {
  if (static_cast<int>(keys.size()) != p.rounds) {
    throw ParameterError("key schedule has " + std::to_string(keys.size()) + " rounds, expected " +
                         std::to_string(p.rounds));
  }
  for (const auto& k : keys) {
    check_word(k.k1, p.n, "k1");
    check_word(k.k2, p.n, "k2");
  }
}

RoundFunctionFamily::RoundFunctionFamily(std::uint64_t seed, int n, FunctionMode mode)
    : seed_(seed), n_(n), mode_(mode), mask_(0), seed_key_(mix64(seed ^ 0x5EEDF00DCAFEULL)) {
  if (n < kMinWidth || n > kMaxWidth) throw ParameterError("family width outside [2,16]");
  mask_ = width_mask(n);
}

Word RoundFunctionFamily::apply(int round, int branch, std::uint64_t key_tag, Word x) const {
  switch (mode_) {
    case FunctionMode::Zero:
      return 0;
    case FunctionMode::Random:
      return static_cast<Word>(mix64(seed_key_ ^ mix64(pack(round, branch, key_tag, x)))) & mask_;
    case FunctionMode::Permutation: {
      // Odd multiply, add and xorshift are each bijective modulo 2^n.
      const std::uint64_t h = mix64(seed_key_ ^ mix64(pack(round, branch, key_tag, 0) | (1ULL << 63)));
      const int shift = (n_ + 1) / 2;
      std::uint64_t v = x;
      for (std::uint64_t i = 0; i < 4; ++i) {
        const std::uint64_t c = mix64(h + i);
        v = (v * (c | 1) + (c >> 32)) & mask_;
        v ^= v >> shift;
      }
      return static_cast<Word>(v);
    }
  }
  return 0;
}

Word prf_eval(const RoundFunctionFamily& f, int round, int branch, std::optional<Word> key, Word x) {
  if (round < 1 || round > kMaxRounds) throw ParameterError("round index outside [1,32]");
  if (branch != 1 && branch != 2) throw ParameterError("branch must be 1 or 2");
  check_word(x, f.width(), "input");
  if (key) {
    check_word(*key, f.width(), "key");
    return f.eval_keyed(round, branch, *key, x);
  }
  return f.eval(round, branch, x);
}

State4 fbc_round(Variant v, const State4& s, int round, RoundKey key, const RoundFunctionFamily& f) {
  require_four(v);
  const Word t1 = term(v, f, round, 1, key.k1, s.x0);
  const Word t2 = term(v, f, round, 2, key.k2, s.x3);
  return {s.x1 ^ t1, s.x0 ^ s.x2 ^ t2, s.x3 ^ s.x1 ^ t1, s.x2 ^ t2};
}

State4 fbc_round_inverse(Variant v, const State4& s, int round, RoundKey key,
                         const RoundFunctionFamily& f) {
  require_four(v);
  const Word x0 = s.x1 ^ s.x3;
  const Word x3 = s.x0 ^ s.x2;
  const Word t1 = term(v, f, round, 1, key.k1, x0);
  const Word t2 = term(v, f, round, 2, key.k2, x3);
  return {x0, s.x0 ^ t1, s.x3 ^ t2, x3};
}

FeistelState feistel_round(Variant v, const FeistelState& s, int round, Word key,
                           const RoundFunctionFamily& f) {
  require_two(v);
  return {s.b ^ term(v, f, round, 1, key, s.a), s.a};
}

FeistelState feistel_round_inverse(Variant v, const FeistelState& s, int round, Word key,
                                   const RoundFunctionFamily& f) {
  require_two(v);
  return {s.b, s.a ^ term(v, f, round, 1, key, s.b)};
}

State4 fbc_round(Variant v, const State4& s, int round, const KeySchedule& keys,
                 const RoundFunctionFamily& f) {
  if (round < 1 || round > static_cast<int>(keys.size())) throw ParameterError("round out of schedule");
  return fbc_round(v, s, round, keys[round - 1], f);
}

State4 fbc_round_inverse(Variant v, const State4& s, int round, const KeySchedule& keys,
                         const RoundFunctionFamily& f) {
  if (round < 1 || round > static_cast<int>(keys.size())) throw ParameterError("round out of schedule");
  return fbc_round_inverse(v, s, round, keys[round - 1], f);
}

RoundFunctionFamily family_of(const CipherParams& p) { return {p.seed, p.n, p.mode}; }

std::vector<State4> encrypt_trace(const CipherParams& p, const KeySchedule& keys, const State4& pt) {
  p.validate();
  require_four(p.variant);
  check_schedule(keys, p);
  check_state(pt, p.n);
  const auto f = family_of(p);
  std::vector<State4> out{pt};
  out.reserve(p.rounds + 1);
  for (int i = 1; i <= p.rounds; ++i) out.push_back(fbc_round(p.variant, out.back(), i, keys[i - 1], f));
  return out;
}

State4 encrypt(const CipherParams& p, const KeySchedule& keys, const State4& pt) {
  return encrypt_trace(p, keys, pt).back();
}

State4 decrypt(const CipherParams& p, const KeySchedule& keys, const State4& ct) {
  return decrypt_partial(p.variant, ct, keys, p);
}

State4 decrypt_partial(Variant v, const State4& ct, std::span<const RoundKey> last_round_keys,
                       const CipherParams& p) {
  p.validate();
  require_four(v);
  const int t = static_cast<int>(last_round_keys.size());
  if (t > p.rounds) throw ParameterError("more partial-decryption keys than rounds");
  check_state(ct, p.n);
  for (const auto& k : last_round_keys) {
    check_word(k.k1, p.n, "k1");
    check_word(k.k2, p.n, "k2");
  }
  const auto f = family_of(p);
  State4 s = ct;
  for (int j = t - 1; j >= 0; --j) {
    s = fbc_round_inverse(v, s, p.rounds - (t - 1 - j), last_round_keys[j], f);
  }
  return s;
}

FeistelState feistel_encrypt(const CipherParams& p, const KeySchedule& keys, const FeistelState& pt) {
  p.validate();
  require_two(p.variant);
  check_schedule(keys, p);
  check_word(pt.a, p.n, "a");
  check_word(pt.b, p.n, "b");
  const auto f = family_of(p);
  FeistelState s = pt;
  for (int i = 1; i <= p.rounds; ++i) s = feistel_round(p.variant, s, i, keys[i - 1].k1, f);
  return s;
}

FeistelState feistel_decrypt(const CipherParams& p, const KeySchedule& keys, const FeistelState& ct) {
  p.validate();
  require_two(p.variant);
  check_schedule(keys, p);
  check_word(ct.a, p.n, "a");
  check_word(ct.b, p.n, "b");
  const auto f = family_of(p);
  FeistelState s = ct;
  for (int i = p.rounds; i >= 1; --i) s = feistel_round_inverse(p.variant, s, i, keys[i - 1].k1, f);
  return s;
}

KeySchedule random_key_schedule(const CipherParams& p, Rng& rng) {
  p.validate();
  KeySchedule keys(p.rounds);
  for (auto& k : keys) {
    k.k1 = rng.bits(p.n);
    k.k2 = is_four_branch(p.variant) ? rng.bits(p.n) : 0;
  }
  return keys;
}

State4 random_state(int n, Rng& rng) {
  State4 s;
  s.x0 = rng.bits(n);
  s.x1 = rng.bits(n);
  s.x2 = rng.bits(n);
  s.x3 = rng.bits(n);
  return s;
}

}  // namespace qfbc
