#include "qfbc/oracle.hpp"

#include <utility>

#include "qfbc/errors.hpp"

namespace qfbc {

namespace {
constexpr int kImpostorRounds = 12;
}

BlockImpostor::BlockImpostor(int n, bool four_branch, std::uint64_t seed)
    : half_bits_(four_branch ? 2 * n : n), seed_(mix64(seed ^ 0x1A905703ULL)) {}

std::uint64_t BlockImpostor::permute(std::uint64_t block) const {
  const std::uint64_t mask = (std::uint64_t{1} << half_bits_) - 1;
  std::uint64_t left = (block >> half_bits_) & mask;
  std::uint64_t right = block & mask;
  for (std::uint64_t r = 0; r < kImpostorRounds; ++r) {
    const std::uint64_t t = left ^ (mix64(seed_ ^ mix64((r << 40) ^ right)) & mask);
    left = right;
    right = t;
  }
  return (left << half_bits_) | right;
}

State4 BlockImpostor::encrypt(const State4& s) const {
  const int n = half_bits_ / 2;
  const std::uint64_t m = (std::uint64_t{1} << n) - 1;
  const std::uint64_t in = (std::uint64_t{s.x0} << (3 * n)) | (std::uint64_t{s.x1} << (2 * n)) |
                           (std::uint64_t{s.x2} << n) | s.x3;
  const std::uint64_t out = permute(in);
  return {static_cast<Word>((out >> (3 * n)) & m), static_cast<Word>((out >> (2 * n)) & m),
          static_cast<Word>((out >> n) & m), static_cast<Word>(out & m)};
}

FeistelState BlockImpostor::encrypt(const FeistelState& s) const {
  const int n = half_bits_;
  const std::uint64_t m = (std::uint64_t{1} << n) - 1;
  const std::uint64_t out = permute((std::uint64_t{s.a} << n) | s.b);
  return {static_cast<Word>((out >> n) & m), static_cast<Word>(out & m)};
}

EncryptionOracle::EncryptionOracle(CipherParams params, KeySchedule keys, OracleMode mode)
    : params_(params), keys_(std::move(keys)), mode_(mode), family_(family_of(params)) {
  params_.validate();
  check_schedule(keys_, params_);
}

EncryptionOracle::EncryptionOracle(CipherParams params, OracleMode mode, std::uint64_t impostor_seed)
    : params_(params),
      mode_(mode),
      impostor_(BlockImpostor(params.n, is_four_branch(params.variant), impostor_seed)),
      family_(family_of(params)) {
  params_.validate();
}

EncryptionOracle EncryptionOracle::impostor(CipherParams shape, std::uint64_t impostor_seed,
                                            OracleMode mode) {
  return EncryptionOracle(shape, mode, impostor_seed);
}

State4 EncryptionOracle::run(const State4& pt) const {
  if (impostor_) return impostor_->encrypt(pt);
  State4 s = pt;
  for (int i = 1; i <= params_.rounds; ++i) s = fbc_round(params_.variant, s, i, keys_[i - 1], family_);
  return s;
}

State4 EncryptionOracle::query(const State4& pt) {
  if (!is_four_branch(params_.variant)) throw ParameterError("oracle is a two-branch cipher");
  check_state(pt, params_.n);
  ++counters_.classical_queries;
  return run(pt);
}

FeistelState EncryptionOracle::query(const FeistelState& pt) {
  if (is_four_branch(params_.variant)) throw ParameterError("oracle is a four-branch cipher");
  check_word(pt.a, params_.n, "a");
  check_word(pt.b, params_.n, "b");
  ++counters_.classical_queries;
  if (impostor_) return impostor_->encrypt(pt);
  FeistelState s = pt;
  for (int i = 1; i <= params_.rounds; ++i) {
    s = feistel_round(params_.variant, s, i, keys_[i - 1].k1, family_);
  }
  return s;
}

void EncryptionOracle::require_superposition() const {
  if (mode_ != OracleMode::Q2Superposition) {
    throw ModeViolation("superposition access requested from a classical (Q1) oracle");
  }
}

State4 EncryptionOracle::superposed_encrypt(const State4& pt) {
  require_superposition();
  if (!is_four_branch(params_.variant)) throw ParameterError("oracle is a two-branch cipher");
  ++counters_.simulated_encryptions;
  return run(pt);
}

PeriodicFunctionHandle::PeriodicFunctionHandle(int n, Evaluator eval, std::string provenance,
                                               EncryptionOracle* source, int calls_per_eval)
    : n_(n), eval_(std::move(eval)), provenance_(std::move(provenance)), source_(source),
      calls_per_eval_(calls_per_eval) {
  if (n < 1 || n > kMaxWidth) throw ParameterError("handle width outside [1,16]");
}

PeriodicFunctionHandle query_superposed(EncryptionOracle& oracle, SuperposedBuilder builder,
                                        std::string provenance, int calls_per_eval) {
  oracle.require_superposition();
  EncryptionOracle* src = &oracle;
  return PeriodicFunctionHandle(
      oracle.params().n, [src, b = std::move(builder)](Word x) { return b(*src, x); },
      std::move(provenance), src, calls_per_eval);
}

}  // namespace qfbc
