#include "qfbc/whitebox.hpp"

namespace qfbc::whitebox {

Word expected_period_fbcf(const RoundFunctionFamily& f, const KeySchedule& k,
                          const DistinguisherConfig& cfg) {
  const Word inner = f.eval_keyed(1, 1, k.at(0).k1, cfg.c0);
  return f.eval_keyed(2, 1, k.at(1).k1, inner ^ cfg.alpha0) ^
         f.eval_keyed(2, 1, k.at(1).k1, inner ^ cfg.alpha1);
}

Word expected_period_fbckf(const RoundFunctionFamily& f, const KeySchedule& k,
                           const DistinguisherConfig& cfg) {
  const Word shift = k.at(1).k1 ^ f.eval(1, 1, cfg.c0 ^ k.at(0).k1);
  return f.eval(2, 1, cfg.alpha0 ^ shift) ^ f.eval(2, 1, cfg.alpha1 ^ shift);
}

Word expected_period_fbcfk(const RoundFunctionFamily& f, const KeySchedule& k,
                           const DistinguisherConfig& cfg) {
  const Word shift = k.at(0).k2 ^ k.at(1).k1 ^ f.eval(2, 1, cfg.c0 ^ k.at(0).k1);
  return f.eval(3, 1, cfg.alpha0 ^ shift) ^ f.eval(3, 1, cfg.alpha1 ^ shift);
}

Word expected_period(Structure s, const RoundFunctionFamily& f, const KeySchedule& k,
                     const DistinguisherConfig& cfg) {
  switch (s) {
    case Structure::FbcF4: return expected_period_fbcf(f, k, cfg);
    case Structure::FbcKF4: return expected_period_fbckf(f, k, cfg);
    case Structure::FbcFK6: return expected_period_fbcfk(f, k, cfg);
  }
  return 0;
}

}  // namespace qfbc::whitebox
