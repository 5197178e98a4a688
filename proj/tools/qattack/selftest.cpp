#include <algorithm>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qattack/cli.hpp"
#include "qfbc/experiments.hpp"
#include "qfbc/gf2.hpp"
#include "qfbc/quantum_sim.hpp"
#include "qfbc/whitebox.hpp"

namespace qattack {

namespace {

using qfbc::Word;

// A suite returns nothing on success or a one-line failure description.
using Suite = std::function<std::optional<std::string>()>;

std::optional<std::string> cipher_roundtrip(bool corrupt) {
  qfbc::Rng rng(11);
  for (auto v : {qfbc::Variant::FbcF, qfbc::Variant::FbcKF, qfbc::Variant::FbcFK}) {
    for (int n : {2, 5, 8, 16}) {
      for (int r : {1, 4, 7}) {
        const qfbc::CipherParams p{v, n, r, rng.next()};
        const auto keys = qfbc::random_key_schedule(p, rng);
        auto dec_keys = keys;
        if (corrupt) dec_keys.back().k1 ^= 1;
        for (int i = 0; i < 8; ++i) {
          const auto pt = qfbc::random_state(n, rng);
          if (qfbc::decrypt(p, dec_keys, qfbc::encrypt(p, keys, pt)) != pt) {
            return "decrypt(encrypt(p)) != p for " + std::string(qfbc::to_string(v)) + " n=" + std::to_string(n);
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> feistel_roundtrip() {
  qfbc::Rng rng(12);
  for (auto v : {qfbc::Variant::FeistelF, qfbc::Variant::FeistelKF, qfbc::Variant::FeistelFK}) {
    const qfbc::CipherParams p{v, 8, 5, rng.next()};
    const auto keys = qfbc::random_key_schedule(p, rng);
    for (int i = 0; i < 16; ++i) {
      const qfbc::FeistelState pt{rng.bits(8), rng.bits(8)};
      if (qfbc::feistel_decrypt(p, keys, qfbc::feistel_encrypt(p, keys, pt)) != pt) return "Feistel round trip";
    }
  }
  return std::nullopt;
}

std::optional<std::string> gf2_rank_nullity() {
  qfbc::Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    const int w = 1 + static_cast<int>(rng.below(10));
    qfbc::BitMatrix m(w);
    const int rows = static_cast<int>(rng.below(12));
    for (int i = 0; i < rows; ++i) m.add_row({rng.next() & ((1ULL << w) - 1), w});
    const auto null = qfbc::nullspace_basis(m);
    if (qfbc::rank(m) + static_cast<int>(null.size()) != w) return "rank + nullity != width";
    for (const auto& v : null) {
      for (auto r : m.rows()) {
        if (qfbc::dot({r, w}, v) != 0) return "nullspace vector not orthogonal";
      }
    }
  }
  return std::nullopt;
}

qfbc::FunctionTable planted_function(int n, Word s, qfbc::Rng& rng) {
  const std::uint64_t salt = rng.next();
  qfbc::FunctionTable t(std::size_t{1} << n);
  for (Word x = 0; x < t.size(); ++x) {
    t[x] = static_cast<Word>(qfbc::mix64(std::min(x, x ^ s) ^ salt) & ((1u << n) - 1));
  }
  return t;
}

std::optional<std::string> simon_orthogonality() {
  qfbc::Rng rng(14);
  for (int n : {3, 6, 9}) {
    const Word s = 1 + static_cast<Word>(rng.below((1u << n) - 1));
    const auto t = planted_function(n, s, rng);
    qfbc::CosetSampler sampler(t, n);
    for (int i = 0; i < 500; ++i) {
      if (qfbc::dot(sampler.sample(rng), {s, n}) != 0) return "sample not orthogonal to the period";
    }
  }
  return std::nullopt;
}

std::optional<std::string> simon_statevector() {
  qfbc::Rng rng(15);
  for (int n = 2; n <= 4; ++n) {
    qfbc::FunctionTable t(std::size_t{1} << n);
    for (auto& v : t) v = rng.bits(n);
    const double tv = qfbc::total_variation(qfbc::simon_distribution_coset(t, n),
                                            qfbc::simon_distribution_statevector(t, n));
    if (tv > 1e-10) return "coset and statevector distributions differ";
  }
  return std::nullopt;
}

std::optional<std::string> grover_closed_form() {
  qfbc::Rng rng(16);
  for (int n = 2; n <= 8; ++n) {
    const auto out = qfbc::grover_search_statevector([](Word x) { return x == 1; }, n, rng);
    if (std::abs(out.success_probability - qfbc::grover_success_closed_form(n, 1, out.iterations)) > 1e-10) {
      return "Grover amplitude differs from closed form at n=" + std::to_string(n);
    }
  }
  return std::nullopt;
}

std::optional<std::string> lemma_periods() {
  qfbc::Rng rng(17);
  for (auto st : {qfbc::Structure::FbcF4, qfbc::Structure::FbcKF4, qfbc::Structure::FbcFK6}) {
    for (int i = 0; i < 10; ++i) {
      const qfbc::CipherParams p{qfbc::variant_of(st), 6, qfbc::rounds_of(st), rng.next()};
      const auto keys = qfbc::random_key_schedule(p, rng);
      auto cfg = qfbc::DistinguisherConfig::draw(6, rng);
      const Word s = qfbc::whitebox::expected_period(st, qfbc::family_of(p), keys, cfg);
      if (s == 0) continue;
      qfbc::EncryptionOracle o(p, keys, qfbc::OracleMode::Q2Superposition);
      const auto t = qfbc::tabulate(qfbc::build_distinguisher_function(o, cfg));
      for (Word x = 0; x < t.size(); ++x) {
        if (t[x] != t[x ^ s]) return "period identity fails for " + std::string(qfbc::to_string(st));
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> distinguishers() {
  for (auto st : {qfbc::Structure::FbcF4, qfbc::Structure::FbcKF4, qfbc::Structure::FbcFK6}) {
    int cipher = 0, random = 0;
    for (std::uint64_t i = 0; i < 10; ++i) {
      cipher += qfbc::run_distinguisher_trial(st, 6, false, {}, 1, i).verdict.decision == qfbc::Decision::Cipher;
      random += qfbc::run_distinguisher_trial(st, 6, true, {}, 1, i).verdict.decision == qfbc::Decision::Random;
    }
    if (cipher < 9 || random < 9) return "distinguisher rates too low for " + std::string(qfbc::to_string(st));
  }
  return std::nullopt;
}

std::optional<std::string> attacks(std::initializer_list<qfbc::AttackTarget> targets, int n, int rounds,
                                   int trials) {
  for (auto t : targets) {
    qfbc::AttackSettings s;
    s.n = n;
    s.rounds = rounds;
    s.key_bits = n;
    for (int i = 0; i < trials; ++i) {
      const auto r = qfbc::run_attack_trial(t, s, 1, static_cast<std::uint64_t>(i));
      if (!r.ok()) return std::string(qfbc::to_string(t)) + " failed on trial " + std::to_string(i);
      if (!qfbc::is_quantum(t) && r.report.counters.superposition_query_units != 0) {
        return std::string(qfbc::to_string(t)) + " used superposition queries";
      }
    }
  }
  return std::nullopt;
}

}  // namespace

int run_selftest(const SelftestOptions& opt, std::ostream& out, std::ostream& err) {
  using T = qfbc::AttackTarget;
  std::vector<std::pair<std::string, Suite>> suites{
      {"cipher-roundtrip", [] { return cipher_roundtrip(false); }},
      {"feistel-roundtrip", feistel_roundtrip},
      {"gf2-rank-nullity", gf2_rank_nullity},
      {"simon-orthogonality", simon_orthogonality},
      {"simon-statevector", simon_statevector},
      {"grover-closed-form", grover_closed_form},
      {"lemma-periods", lemma_periods},
      {"distinguishers", distinguishers},
      {"q1-attacks", [] { return attacks({T::Q1FeistelKf3r, T::Q1Fbckf4r, T::Q1Fbcfk5r}, 6, 0, 5); }},
      {"q2-attacks", [] { return attacks({T::Q2Fbcf, T::Q2Fbckf}, 4, 6, 2); }},
      {"gms-fx", [] { return attacks({T::GmsFx}, 6, 0, 3); }},
  };
  if (opt.inject_fault) suites.emplace_back("injected-fault", [] { return cipher_roundtrip(true); });

  std::vector<std::string> failures;
  for (const auto& [name, run] : suites) {
    std::optional<std::string> result;
    try {
      result = run();
    } catch (const std::exception& e) {
      result = std::string("exception: ") + e.what();
    }
    if (result) {
      failures.push_back(name);
      err << "FAIL " << name << ": " << *result << "\n";
    } else {
      err << "ok   " << name << "\n";
    }
  }
  const std::size_t passed = suites.size() - failures.size();
  if (opt.json) {
    nlohmann::ordered_json j;
    j["schema_version"] = qfbc::kSchemaVersion;
    j["kind"] = "selftest";
    j["passed"] = passed;
    j["failed"] = failures.size();
    j["failures"] = failures;
    out << j.dump() << "\n";
  } else {
    out << "selftest passed=" << passed << " failed=" << failures.size();
    for (const auto& f : failures) out << " " << f;
    out << "\n";
  }
  return failures.empty() ? kOk : kTestFailure;
}

}  // namespace qattack
