#pragma once

#include "qfbc/cipher.hpp"
#include "qfbc/distinguishers.hpp"

// Closed-form quantities that need the hidden key. Used by tests and by
// the trial harness to grade results and to redraw degenerate constants.
namespace qfbc::whitebox {

Word expected_period_fbcf(const RoundFunctionFamily& f, const KeySchedule& k,
                          const DistinguisherConfig& cfg);
Word expected_period_fbckf(const RoundFunctionFamily& f, const KeySchedule& k,
                           const DistinguisherConfig& cfg);
Word expected_period_fbcfk(const RoundFunctionFamily& f, const KeySchedule& k,
                           const DistinguisherConfig& cfg);
Word expected_period(Structure s, const RoundFunctionFamily& f, const KeySchedule& k,
                     const DistinguisherConfig& cfg);

}  // namespace qfbc::whitebox
