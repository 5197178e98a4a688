#include "qfbc/distinguishers.hpp"

#include <string>

#include "qfbc/errors.hpp"

namespace qfbc {

std::string_view to_string(Structure s) {
  switch (s) {
    case Structure::FbcF4: return "fbc-f-4r";
    case Structure::FbcKF4: return "fbc-kf-4r";
    case Structure::FbcFK6: return "fbc-fk-6r";
  }
  return "?";
}

std::optional<Structure> parse_structure(std::string_view s) {
  for (Structure v : {Structure::FbcF4, Structure::FbcKF4, Structure::FbcFK6}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

Variant variant_of(Structure s) {
  switch (s) {
    case Structure::FbcF4: return Variant::FbcF;
    case Structure::FbcKF4: return Variant::FbcKF;
    case Structure::FbcFK6: return Variant::FbcFK;
  }
  return Variant::FbcF;
}

int rounds_of(Structure s) { return s == Structure::FbcFK6 ? 6 : 4; }

std::optional<Structure> structure_for(const CipherParams& p) {
  for (Structure v : {Structure::FbcF4, Structure::FbcKF4, Structure::FbcFK6}) {
    if (variant_of(v) == p.variant && rounds_of(v) == p.rounds) return v;
  }
  return std::nullopt;
}

std::string_view to_string(Decision d) { return d == Decision::Cipher ? "CIPHER" : "RANDOM"; }

void DistinguisherConfig::validate(int n) const {
  check_word(alpha0, n, "alpha0");
  check_word(alpha1, n, "alpha1");
  check_word(c0, n, "c0");
  check_word(c3, n, "c3");
  if (alpha0 == alpha1) throw ParameterError("alpha0 and alpha1 must differ");
}

DistinguisherConfig DistinguisherConfig::draw(int n, Rng& rng) {
  DistinguisherConfig c;
  c.alpha0 = rng.bits(n);
  do {
    c.alpha1 = rng.bits(n);
  } while (c.alpha1 == c.alpha0);
  c.c0 = rng.bits(n);
  c.c3 = rng.bits(n);
  return c;
}

State4 fbc4_plaintext(const DistinguisherConfig& cfg, int b, Word x) {
  return {cfg.c0, b ? cfg.alpha1 : cfg.alpha0, x, cfg.c3};
}

State4 fbcfk6_plaintext(const DistinguisherConfig& cfg, const RoundFunctionFamily& f, int b, Word x) {
  const Word a = (b ? cfg.alpha1 : cfg.alpha0) ^ cfg.c3;
  return {a, f.eval(1, 1, a) ^ cfg.c0, cfg.c3 ^ f.eval(1, 2, cfg.c0 ^ x), cfg.c0 ^ x};
}

namespace {

void require_shape(const EncryptionOracle& o, Structure s) {
  const auto& p = o.params();
  if (p.variant != variant_of(s) || p.rounds != rounds_of(s)) {
    throw ParameterError(std::string("oracle shape does not match ") + std::string(to_string(s)));
  }
}

PeriodicFunctionHandle build_fbc4(EncryptionOracle& oracle, const DistinguisherConfig& cfg,
                                  Structure s) {
  require_shape(oracle, s);
  cfg.validate(oracle.params().n);
  return query_superposed(
      oracle,
      [cfg](EncryptionOracle& o, Word x) {
        return fold_fbc4(o.superposed_encrypt(fbc4_plaintext(cfg, 0, x))) ^
               fold_fbc4(o.superposed_encrypt(fbc4_plaintext(cfg, 1, x)));
      },
      std::string(to_string(s)), 2);
}

}  // namespace

PeriodicFunctionHandle build_f_fbcf_4r(EncryptionOracle& oracle, const DistinguisherConfig& cfg) {
  return build_fbc4(oracle, cfg, Structure::FbcF4);
}

PeriodicFunctionHandle build_f_fbckf_4r(EncryptionOracle& oracle, const DistinguisherConfig& cfg) {
  return build_fbc4(oracle, cfg, Structure::FbcKF4);
}

PeriodicFunctionHandle build_f_fbcfk_6r(EncryptionOracle& oracle, const DistinguisherConfig& cfg) {
  require_shape(oracle, Structure::FbcFK6);
  cfg.validate(oracle.params().n);
  const auto f = oracle.public_family();
  return query_superposed(
      oracle,
      [cfg, f](EncryptionOracle& o, Word x) {
        o.record_offline(6);
        return fold_fbcfk6(o.superposed_encrypt(fbcfk6_plaintext(cfg, f, 0, x)), f) ^
               fold_fbcfk6(o.superposed_encrypt(fbcfk6_plaintext(cfg, f, 1, x)), f);
      },
      std::string(to_string(Structure::FbcFK6)), 2);
}

PeriodicFunctionHandle build_distinguisher_function(EncryptionOracle& oracle,
                                                    const DistinguisherConfig& cfg) {
  const auto s = structure_for(oracle.params());
  if (!s) throw ParameterError("no distinguisher for this variant and round count");
  switch (*s) {
    case Structure::FbcF4: return build_f_fbcf_4r(oracle, cfg);
    case Structure::FbcKF4: return build_f_fbckf_4r(oracle, cfg);
    case Structure::FbcFK6: return build_f_fbcfk_6r(oracle, cfg);
  }
  throw ParameterError("unreachable structure");
}

Verdict distinguish(EncryptionOracle& oracle, const DistinguisherConfig& cfg,
                    const SimonConfig& simon_cfg, Rng& rng) {
  const auto f = build_distinguisher_function(oracle, cfg);
  const auto out = simon_find_period(f, simon_cfg, rng);
  Verdict v;
  v.rounds_used = out.rounds_used;
  v.degenerate = out.degenerate;
  v.multiple_periods = out.multiple_periods;
  if (out.period) {
    v.decision = Decision::Cipher;
    v.period = static_cast<Word>(out.period->bits);
  }
  return v;
}

}  // namespace qfbc
