#include "qfbc/experiments.hpp"

#include <cstdio>
#include <json.hpp>

#include "qfbc/errors.hpp"
#include "qfbc/whitebox.hpp"

namespace qfbc {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

Variant variant_of(AttackTarget t) {
  switch (t) {
    case AttackTarget::Q2Fbcf: return Variant::FbcF;
    case AttackTarget::Q2Fbckf: return Variant::FbcKF;
    case AttackTarget::Q2Fbcfk: return Variant::FbcFK;
    case AttackTarget::Q1FeistelKf3r: return Variant::FeistelKF;
    case AttackTarget::Q1Fbckf4r: return Variant::FbcKF;
    case AttackTarget::Q1Fbcfk5r: return Variant::FbcFK;
    case AttackTarget::GmsFx: break;
  }
  throw ParameterError("target has no FBC variant");
}

Structure distinguisher_structure(Variant v) {
  switch (v) {
    case Variant::FbcF: return Structure::FbcF4;
    case Variant::FbcKF: return Structure::FbcKF4;
    default: return Structure::FbcFK6;
  }
}

ordered_json counters_json(const QueryCounter& c) {
  ordered_json j;
  j["classical_queries"] = c.classical_queries;
  j["superposition_query_units"] = c.superposition_query_units;
  j["superposition_oracle_calls"] = c.superposition_oracle_calls;
  j["simulated_encryptions"] = c.simulated_encryptions;
  j["offline_evaluations"] = c.offline_evaluations;
  return j;
}

Word parse_hex(const std::string& s) { return static_cast<Word>(std::stoul(s, nullptr, 16)); }

}  // namespace

std::string_view to_string(AttackTarget t) {
  switch (t) {
    case AttackTarget::Q2Fbcf: return "q2-fbcf";
    case AttackTarget::Q2Fbckf: return "q2-fbckf";
    case AttackTarget::Q2Fbcfk: return "q2-fbcfk";
    case AttackTarget::Q1FeistelKf3r: return "q1-feistel-kf-3r";
    case AttackTarget::Q1Fbckf4r: return "q1-fbckf-4r";
    case AttackTarget::Q1Fbcfk5r: return "q1-fbcfk-5r";
    case AttackTarget::GmsFx: return "gms-fx";
  }
  return "?";
}

std::optional<AttackTarget> parse_attack_target(std::string_view s) {
  for (auto t : {AttackTarget::Q2Fbcf, AttackTarget::Q2Fbckf, AttackTarget::Q2Fbcfk,
                 AttackTarget::Q1FeistelKf3r, AttackTarget::Q1Fbckf4r, AttackTarget::Q1Fbcfk5r,
                 AttackTarget::GmsFx}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

int default_rounds(AttackTarget t) {
  switch (t) {
    case AttackTarget::Q2Fbcf:
    case AttackTarget::Q2Fbckf: return 6;
    case AttackTarget::Q2Fbcfk: return 7;
    case AttackTarget::Q1FeistelKf3r: return 3;
    case AttackTarget::Q1Fbckf4r: return 4;
    case AttackTarget::Q1Fbcfk5r: return 5;
    case AttackTarget::GmsFx: return 0;
  }
  return 0;
}

bool is_quantum(AttackTarget t) {
  return t == AttackTarget::Q2Fbcf || t == AttackTarget::Q2Fbckf || t == AttackTarget::Q2Fbcfk ||
         t == AttackTarget::GmsFx;
}

std::uint64_t trial_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
  return split_seed(seed ^ fnv1a(stream), index);
}

DistinguisherTrial run_distinguisher_trial(Structure s, int n, bool impostor, const SimonConfig& simon,
                                           std::uint64_t seed, std::uint64_t trial) {
  DistinguisherTrial out;
  out.structure = s;
  out.n = n;
  out.trial = trial;
  out.seed = trial_seed(seed, to_string(s), trial);
  out.impostor = impostor;
  Rng rng(out.seed);
  const CipherParams p{variant_of(s), n, rounds_of(s), rng.next(), FunctionMode::Random};
  p.validate();
  DistinguisherConfig cfg = DistinguisherConfig::draw(n, rng);
  if (impostor) {
    auto oracle = EncryptionOracle::impostor(p, rng.next(), OracleMode::Q2Superposition);
    out.verdict = distinguish(oracle, cfg, simon, rng);
    out.counters = oracle.counters();
    return out;
  }
  const KeySchedule keys = random_key_schedule(p, rng);
  const auto fam = family_of(p);
  Word expected = whitebox::expected_period(s, fam, keys, cfg);
  while (expected == 0) {
    ++out.redraws;
    cfg = DistinguisherConfig::draw(n, rng);
    expected = whitebox::expected_period(s, fam, keys, cfg);
  }
  out.expected_period = expected;
  EncryptionOracle oracle(p, keys, OracleMode::Q2Superposition);
  out.verdict = distinguish(oracle, cfg, simon, rng);
  out.counters = oracle.counters();
  return out;
}

bool AttackTrial::ok() const {
  if (impostor) return report.solutions.empty();
  return report.success && report.planted_tuple_contained;
}

void check_attack_guard(AttackTarget t, const AttackSettings& s) {
  if (t == AttackTarget::GmsFx) {
    enforce_guard(s.key_bits, s.limits);
    return;
  }
  if (is_quantum(t)) {
    const int r = s.rounds > 0 ? s.rounds : default_rounds(t);
    enforce_guard(q2_guessed_bits(variant_of(t), s.n, r), s.limits);
  }
}

AttackTrial run_attack_trial(AttackTarget t, const AttackSettings& s, std::uint64_t seed,
                             std::uint64_t trial) {
  check_attack_guard(t, s);
  AttackTrial out;
  out.target = t;
  out.trial = trial;
  out.impostor = s.impostor;
  const std::uint64_t tseed = trial_seed(seed, to_string(t), trial);
  Rng rng(tseed);

  if (t == AttackTarget::GmsFx) {
    if (s.impostor) throw ParameterError("gms-fx has no impostor mode");
    const FxFixture fx = FxFixture::random(s.key_bits, s.n, rng.next(), rng);
    out.report = gms_recover_fx(fx, s.simon, rng, s.limits);
    out.planted = {fx.k0(), fx.k1(), fx.k2()};
    grade(out.report, out.planted);
    out.report.seed = tseed;
    return out;
  }

  const int r = s.rounds > 0 ? s.rounds : default_rounds(t);
  if (!is_quantum(t) && r != default_rounds(t)) {
    throw ParameterError(std::string(to_string(t)) + " is defined for r = " +
                         std::to_string(default_rounds(t)) + " only");
  }
  const CipherParams p{variant_of(t), s.n, r, rng.next(), FunctionMode::Random};
  p.validate();
  const OracleMode mode = is_quantum(t) ? OracleMode::Q2Superposition : OracleMode::Q1Classical;

  DistinguisherConfig cfg;
  KeySchedule keys;
  int redraws = 0;
  if (is_quantum(t)) cfg = DistinguisherConfig::draw(s.n, rng);
  if (!s.impostor) {
    keys = random_key_schedule(p, rng);
    if (is_quantum(t)) {
      const auto st = distinguisher_structure(p.variant);
      const auto fam = family_of(p);
      while (whitebox::expected_period(st, fam, keys, cfg) == 0) {
        ++redraws;
        cfg = DistinguisherConfig::draw(s.n, rng);
      }
    }
  }
  auto oracle = s.impostor ? EncryptionOracle::impostor(p, rng.next(), mode)
                           : EncryptionOracle(p, keys, mode);

  switch (t) {
    case AttackTarget::Q2Fbcf: out.report = q2_recover_fbcf(oracle, cfg, s.simon, rng, s.limits); break;
    case AttackTarget::Q2Fbckf: out.report = q2_recover_fbckf(oracle, cfg, s.simon, rng, s.limits); break;
    case AttackTarget::Q2Fbcfk: out.report = q2_recover_fbcfk(oracle, cfg, s.simon, rng, s.limits); break;
    case AttackTarget::Q1FeistelKf3r: out.report = q1_recover_feistel_kf_3r(oracle, rng, s.limits); break;
    case AttackTarget::Q1Fbckf4r: out.report = q1_recover_fbckf_4r(oracle, rng, s.limits); break;
    case AttackTarget::Q1Fbcfk5r: out.report = q1_recover_fbcfk_5r(oracle, rng, s.limits); break;
    case AttackTarget::GmsFx: break;
  }
  out.report.seed = tseed;
  out.report.redraws = redraws;
  if (!s.impostor) {
    out.planted = planted_tuple(out.report.labels, keys);
    grade(out.report, out.planted);
  }
  return out;
}

std::string hex_word(Word w, int n) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%0*x", (n + 3) / 4, static_cast<unsigned>(w));
  return buf;
}

std::string state_to_json(const State4& s, int n) {
  return ordered_json::array({hex_word(s.x0, n), hex_word(s.x1, n), hex_word(s.x2, n), hex_word(s.x3, n)})
      .dump();
}

State4 state_from_json(std::string_view json) {
  const auto j = nlohmann::json::parse(json);
  if (!j.is_array() || j.size() != 4) throw ParameterError("state must be an array of four hex words");
  return {parse_hex(j[0]), parse_hex(j[1]), parse_hex(j[2]), parse_hex(j[3])};
}

std::string schedule_to_json(const KeySchedule& k, int n) {
  ordered_json j = ordered_json::array();
  for (const auto& rk : k) j.push_back({hex_word(rk.k1, n), hex_word(rk.k2, n)});
  return j.dump();
}

KeySchedule schedule_from_json(std::string_view json) {
  const auto j = nlohmann::json::parse(json);
  if (!j.is_array()) throw ParameterError("key schedule must be an array");
  KeySchedule k;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw ParameterError("round key must be a pair of hex words");
    k.push_back({parse_hex(e[0]), parse_hex(e[1])});
  }
  return k;
}

std::string to_json_line(const DistinguisherTrial& t) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "distinguish";
  j["structure"] = to_string(t.structure);
  j["n"] = t.n;
  j["trial"] = t.trial;
  j["seed"] = t.seed;
  j["mode"] = t.impostor ? "impostor" : "genuine";
  j["verdict"] = to_string(t.verdict.decision);
  j["period_hex"] = t.verdict.period ? ordered_json(hex_word(*t.verdict.period, t.n)) : ordered_json(nullptr);
  j["expected_period_hex"] =
      t.expected_period ? ordered_json(hex_word(*t.expected_period, t.n)) : ordered_json(nullptr);
  j["simon_rounds"] = t.verdict.rounds_used;
  j["degenerate_flag"] = t.verdict.degenerate;
  j["multiple_periods"] = t.verdict.multiple_periods;
  j["redraws"] = t.redraws;
  j["counters"] = counters_json(t.counters);
  return j.dump();
}

std::string to_json_line(const AttackTrial& t) {
  const auto& r = t.report;
  const int width = r.n;
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "attack";
  j["attack_id"] = r.attack_id;
  j["structure"] = r.structure;
  j["n"] = r.n;
  j["r"] = r.rounds;
  j["trial"] = t.trial;
  j["seed"] = r.seed;
  j["mode"] = t.impostor ? "impostor" : "genuine";
  j["ok"] = t.ok();
  j["success"] = r.success;
  j["failure_reason"] = r.success ? ordered_json(nullptr) : ordered_json(r.failure_reason);
  ordered_json rec = ordered_json::object();
  for (const auto& [label, vals] : r.recovered()) {
    ordered_json arr = ordered_json::array();
    for (Word v : vals) arr.push_back(hex_word(v, label == "k0" && r.attack_id == "gms-fx" ? r.guessed_bits : width));
    rec[label] = arr;
  }
  j["recovered"] = rec;
  if (r.graded) {
    ordered_json pc = ordered_json::object();
    for (const auto& [label, hit] : r.planted_contained) pc[label] = hit;
    j["planted_contained"] = pc;
    j["planted_tuple_contained"] = r.planted_tuple_contained;
  } else {
    j["planted_contained"] = nullptr;
    j["planted_tuple_contained"] = nullptr;
  }
  j["solutions"] = r.solutions.size();
  j["counters"] = counters_json(r.counters);
  j["search_evaluations"] = r.search_evaluations;
  j["chain_count"] = r.chain_count;
  j["guessed_bits"] = r.guessed_bits;
  j["grover_exponent"] = r.grover_exponent;
  j["grover_iterations"] = r.grover_iterations;
  j["redraws"] = r.redraws;
  j["wall_ms"] = t.wall_ms ? ordered_json(*t.wall_ms) : ordered_json(nullptr);
  return j.dump();
}

}  // namespace qfbc
