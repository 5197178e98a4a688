#pragma once

#include <optional>
#include <string_view>

#include "qfbc/cipher.hpp"
#include "qfbc/oracle.hpp"
#include "qfbc/quantum_sim.hpp"

namespace qfbc {

enum class Structure { FbcF4, FbcKF4, FbcFK6 };

std::string_view to_string(Structure s);
std::optional<Structure> parse_structure(std::string_view s);
Variant variant_of(Structure s);
int rounds_of(Structure s);
/// Structure whose distinguisher applies to these parameters, if any.
std::optional<Structure> structure_for(const CipherParams& p);

/// Constants of the periodic function: two distinct selectors and the
/// two fixed branches.
struct DistinguisherConfig {
  Word alpha0 = 0, alpha1 = 1, c0 = 0, c3 = 0;

  void validate(int n) const;
  static DistinguisherConfig draw(int n, Rng& rng);
};

// Plaintext families shared by the distinguishers and the key-recovery attacks.
State4 fbc4_plaintext(const DistinguisherConfig& cfg, int b, Word x);
State4 fbcfk6_plaintext(const DistinguisherConfig& cfg, const RoundFunctionFamily& f, int b, Word x);

// Post-processing of one ciphertext.
inline Word fold_fbc4(const State4& ct) { return ct.x1 ^ ct.x3; }
inline Word fold_fbcfk6(const State4& ct, const RoundFunctionFamily& f) {
  return f.eval(6, 1, ct.x1 ^ ct.x3) ^ ct.x2;
}

// Each evaluation costs two simulated encryptions; the FK form also uses
// six offline evaluations of the public round functions.
PeriodicFunctionHandle build_f_fbcf_4r(EncryptionOracle& oracle, const DistinguisherConfig& cfg);
PeriodicFunctionHandle build_f_fbckf_4r(EncryptionOracle& oracle, const DistinguisherConfig& cfg);
PeriodicFunctionHandle build_f_fbcfk_6r(EncryptionOracle& oracle, const DistinguisherConfig& cfg);
PeriodicFunctionHandle build_distinguisher_function(EncryptionOracle& oracle,
                                                    const DistinguisherConfig& cfg);

enum class Decision { Cipher, Random };
std::string_view to_string(Decision d);

struct Verdict {
  Decision decision = Decision::Random;
  std::optional<Word> period;
  int rounds_used = 0;
  bool degenerate = false;
  bool multiple_periods = false;
};

/// Runs Simon on the structure's periodic function and answers CIPHER when
/// a confirmed nonzero period is found.
Verdict distinguish(EncryptionOracle& oracle, const DistinguisherConfig& cfg,
                    const SimonConfig& simon_cfg, Rng& rng);

}  // namespace qfbc
