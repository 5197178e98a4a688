#include <array>
#include <string>
#include <string_view>

#include "qfbc/attacks.hpp"
#include "qfbc/errors.hpp"

namespace qfbc {

namespace {

constexpr int kVerifyQueries = 4;

// One consistent assignment of the unknowns solved so far. Difference
// equations usually have mirror solutions, so the attack forks a chain per
// solution and lets later equations and the final check prune them.
struct Chain {
  Trace values;

  Word get(std::string_view label) const {
    for (const auto& [k, v] : values) {
      if (k == label) return v;
    }
    throw ParameterError("chain has no value for " + std::string(label));
  }
};

class ChainSet {
 public:
  ChainSet(int n, std::size_t max_chains, AttackReport& rep)
      : n_(n), max_(max_chains), rep_(rep) {}

  void seed(Chain root) { chains_ = {std::move(root)}; }

  template <class Pred>
  bool solve(const std::string& label, Pred pred) {
    if (failed()) return false;
    std::vector<Chain> next;
    for (const auto& c : chains_) {
      auto found = grover_search_exhaustive([&](Word w) { return pred(c, w); }, n_);
      rep_.search_evaluations += found.evaluations;
      for (const auto& s : found.solutions) {
        Chain child = c;
        child.values.emplace_back(label, static_cast<Word>(s.bits));
        next.push_back(std::move(child));
        if (next.size() > max_) {
          overflow_ = true;
          chains_.clear();
          return false;
        }
      }
    }
    chains_ = std::move(next);
    peak_ = std::max(peak_, chains_.size());
    return !chains_.empty();
  }

  template <class Fn>
  void derive(const std::string& label, Fn fn) {
    for (auto& c : chains_) {
      const Word v = fn(c) & width_mask(n_);
      c.values.emplace_back(label, v);
    }
  }

  template <class Pred>
  void keep_if(Pred pred) {
    std::erase_if(chains_, [&](const Chain& c) { return !pred(c); });
  }

  bool failed() const { return overflow_ || chains_.empty(); }
  bool overflowed() const { return overflow_; }
  const std::vector<Chain>& chains() const { return chains_; }
  std::size_t peak() const { return peak_; }

 private:
  int n_;
  std::size_t max_;
  AttackReport& rep_;
  std::vector<Chain> chains_;
  bool overflow_ = false;
  std::size_t peak_ = 1;
};

// Public round functions with attacker-side evaluation counting.
struct PublicF {
  const RoundFunctionFamily& fam;
  std::uint64_t count = 0;
  Word operator()(int round, int branch, Word x) {
    ++count;
    return fam.eval(round, branch, x);
  }
};

Word draw_other(Rng& rng, int n, Word avoid) {
  Word w;
  do {
    w = rng.bits(n);
  } while (w == avoid);
  return w;
}

Word draw_nonzero(Rng& rng, int n) { return draw_other(rng, n, 0); }

void fail(AttackReport& rep, const ChainSet& chains, const std::string& stage) {
  rep.success = false;
  rep.failure_reason = chains.overflowed()
                           ? "candidate chain limit exceeded at " + stage
                           : "no consistent candidate at " + stage;
}

void require_q1(const EncryptionOracle& oracle, Variant v, int rounds, const char* id) {
  const auto& p = oracle.params();
  if (p.variant != v || p.rounds != rounds) {
    throw ParameterError(std::string(id) + " needs a " + std::to_string(rounds) + "-round " +
                         std::string(to_string(v)) + " oracle");
  }
  if (oracle.mode() != OracleMode::Q1Classical) {
    throw ParameterError(std::string(id) + " is a classical attack and expects a Q1 oracle");
  }
}

KeySchedule schedule_from(const Chain& c, const std::vector<std::string>& labels, int rounds) {
  KeySchedule keys(rounds);
  for (const auto& l : labels) {
    const Word v = c.get(l);
    if (l[0] == 'k' && l.size() > 3 && l[2] == '^') {
      auto& k = keys.at(std::stoi(l.substr(3)) - 1);
      (l[1] == '1' ? k.k1 : k.k2) = v;
    } else {
      keys.at(std::stoi(l.substr(1))).k1 = v;
    }
  }
  return keys;
}

// Final check against fresh plaintexts; surviving chains become solutions.
template <class Query, class Encrypt>
void verify_and_report(AttackReport& rep, const ChainSet& chains, Query query, Encrypt encrypt,
                       Rng& rng) {
  rep.chain_count = chains.chains().size();
  std::vector<std::pair<State4, State4>> pairs;
  for (int i = 0; i < kVerifyQueries; ++i) {
    const State4 pt = random_state(rep.n, rng);
    pairs.emplace_back(pt, query(pt));
  }
  for (const auto& c : chains.chains()) {
    const KeySchedule keys = schedule_from(c, rep.labels, rep.rounds);
    bool ok = true;
    for (const auto& [pt, ct] : pairs) ok = ok && encrypt(keys, pt) == ct;
    if (!ok) continue;
    std::vector<Word> tuple;
    for (const auto& l : rep.labels) tuple.push_back(c.get(l));
    rep.solutions.push_back(std::move(tuple));
    rep.traces.push_back(c.values);
  }
  rep.success = !rep.solutions.empty();
  if (!rep.success) rep.failure_reason = "no candidate passed final verification";
}

AttackReport begin(const EncryptionOracle& oracle, const char* id) {
  AttackReport rep;
  rep.attack_id = id;
  rep.structure = std::string(to_string(oracle.params().variant));
  rep.n = oracle.params().n;
  rep.rounds = oracle.params().rounds;
  return rep;
}

}  // namespace

AttackReport q1_recover_feistel_kf_3r(EncryptionOracle& oracle, Rng& rng, const AttackLimits& limits) {
  require_q1(oracle, Variant::FeistelKF, 3, "q1-feistel-kf-3r");
  AttackReport rep = begin(oracle, "q1-feistel-kf-3r");
  rep.labels = {"k0", "k1", "k2"};
  const int n = rep.n;
  const auto fam = oracle.public_family();
  PublicF F{fam};
  // Round i (1-based) uses F(i, 1, .), written F_{i-1} in the usual notation.
  const Word e0 = 1, e1 = 2;

  ChainSet chains(n, limits.max_chains, rep);
  chains.seed({});
  const FeistelState ct_a = oracle.query(FeistelState{0, 0});
  // b3 = F1(beta1) with beta1 = k1 ^ F0(k0).
  if (!chains.solve("beta1", [&](const Chain&, Word b) { return F(2, 1, b) == ct_a.b; })) {
    fail(rep, chains, "beta1");
    oracle.record_offline(F.count);
    rep.counters = oracle.counters();
    return rep;
  }
  const Word beta1_star = chains.chains().front().get("beta1");
  const FeistelState ct_b = oracle.query(FeistelState{e0, beta1_star});
  const FeistelState ct_c = oracle.query(FeistelState{e1, beta1_star});
  // beta2 = F0(k0 ^ e0) ^ F0(k0); the second unit vector gives beta2'.
  chains.solve("beta2", [&](const Chain& c, Word b) {
    return F(2, 1, b ^ beta1_star ^ c.get("beta1")) == (ct_b.b ^ e0);
  });
  chains.solve("beta2'", [&](const Chain& c, Word b) {
    return F(2, 1, b ^ beta1_star ^ c.get("beta1")) == (ct_c.b ^ e1);
  });
  chains.solve("k0", [&](const Chain& c, Word k) {
    const Word base = F(1, 1, k);
    return (F(1, 1, k ^ e0) ^ base) == c.get("beta2") && (F(1, 1, k ^ e1) ^ base) == c.get("beta2'");
  });
  chains.derive("k1", [&](const Chain& c) { return c.get("beta1") ^ F(1, 1, c.get("k0")); });
  if (chains.failed()) {
    fail(rep, chains, "k0");
    oracle.record_offline(F.count);
    rep.counters = oracle.counters();
    return rep;
  }
  const Chain& rep_chain = chains.chains().front();
  const Word a0 = F(2, 1, rep_chain.get("k1"));
  const Word b0 = F(1, 1, rep_chain.get("k0") ^ a0);
  const FeistelState ct_d = oracle.query(FeistelState{a0, b0});
  chains.solve("k2", [&](const Chain& c, Word k) {
    const Word a1 = b0 ^ F(1, 1, a0 ^ c.get("k0"));
    const Word a2 = a0 ^ F(2, 1, a1 ^ c.get("k1"));
    return (a1 ^ F(3, 1, a2 ^ k)) == ct_d.a;
  });
  if (chains.failed()) {
    fail(rep, chains, "k2");
    oracle.record_offline(F.count);
    rep.counters = oracle.counters();
    return rep;
  }

  const auto params = oracle.params();
  auto to_state = [](const FeistelState& s) { return State4{s.a, s.b, 0, 0}; };
  verify_and_report(
      rep, chains,
      [&](const State4& pt) { return to_state(oracle.query(FeistelState{pt.x0, pt.x1})); },
      [&](const KeySchedule& keys, const State4& pt) {
        F.count += 3;
        return to_state(feistel_encrypt(params, keys, FeistelState{pt.x0, pt.x1}));
      },
      rng);
  oracle.record_offline(F.count);
  rep.counters = oracle.counters();
  return rep;
}

AttackReport q1_recover_fbckf_4r(EncryptionOracle& oracle, Rng& rng, const AttackLimits& limits) {
  require_q1(oracle, Variant::FbcKF, 4, "q1-fbckf-4r");
  AttackReport rep = begin(oracle, "q1-fbckf-4r");
  rep.labels = {"k1^1", "k2^1", "k1^2", "k2^2", "k1^3", "k2^3", "k1^4", "k2^4"};
  const int n = rep.n;
  const auto fam = oracle.public_family();
  PublicF F{fam};

  const Word c0 = draw_nonzero(rng, n), c0p = draw_other(rng, n, c0);
  const Word c1 = rng.bits(n), c1p = draw_other(rng, n, c1);
  const Word c2 = rng.bits(n);
  const Word c3 = rng.bits(n), c3p = draw_other(rng, n, c3);
  const std::array<State4, 6> pts{State4{c0, 0, c0, 0}, State4{c0, 0, 0, 0},  State4{c0, c1, c2, c3},
                                  State4{c0, c1, c2, c3p}, State4{c0, c1p, c2, c3}, State4{c0p, c1, c2, c3}};
  std::array<State4, 6> cts;
  for (int i = 0; i < 6; ++i) cts[i] = oracle.query(pts[i]);
  auto u = [&](int i) { return cts[i].x1 ^ cts[i].x3; };

  ChainSet chains(n, limits.max_chains, rep);
  chains.seed({{{"x0^0", c0}, {"x0^0'", c0p}, {"x1^0", c1}, {"x1^0'", c1p}, {"x2^0", c2},
                {"x3^0", c3}, {"x3^0'", c3p}}});

  // y2 = x_0^2 ^ F14(k14 ^ y1 ^ y3); A(c, i) is the chain's value of x_0^2.
  chains.solve("k1^4", [&](const Chain&, Word k) {
    return (F(4, 1, k ^ u(0)) ^ F(4, 1, k ^ u(1))) == (cts[0].x2 ^ cts[1].x2 ^ c0);
  });
  auto A = [&](const Chain& c, int i) { return cts[i].x2 ^ F(4, 1, c.get("k1^4") ^ u(i)); };
  auto T14 = [&](const Chain& c, int i) { return F(4, 1, c.get("k1^4") ^ u(i)); };
  chains.derive("C1", [&](const Chain& c) { return T14(c, 2) ^ T14(c, 3); });
  chains.solve("k2^1", [&](const Chain& c, Word k) {
    return (F(1, 2, c3 ^ k) ^ F(1, 2, c3p ^ k)) == (A(c, 2) ^ A(c, 3));
  });
  chains.derive("C2", [&](const Chain& c) { return T14(c, 2) ^ T14(c, 4); });
  chains.solve("beta1", [&](const Chain& c, Word b) {
    return (F(2, 1, b) ^ F(2, 1, b ^ c1 ^ c1p)) == (A(c, 2) ^ A(c, 4));
  });
  chains.derive("beta2", [&](const Chain& c) { return c.get("beta1") ^ c1 ^ c1p; });
  chains.derive("C3", [&](const Chain& c) { return T14(c, 2) ^ T14(c, 5) ^ c0 ^ c0p; });
  chains.solve("beta3", [&](const Chain& c, Word b) {
    return F(2, 1, b) == (F(2, 1, c.get("beta1")) ^ c0 ^ c0p ^ A(c, 2) ^ A(c, 5));
  });
  chains.solve("k1^1", [&](const Chain& c, Word k) {
    return (F(1, 1, c0 ^ k) ^ F(1, 1, c0p ^ k)) == (c.get("beta1") ^ c.get("beta3"));
  });
  chains.derive("k1^2", [&](const Chain& c) { return c.get("beta1") ^ c1 ^ F(1, 1, c0 ^ c.get("k1^1")); });

  auto x02 = [&](const Chain& c, const State4& p) {
    return p.x0 ^ p.x2 ^ F(1, 2, p.x3 ^ c.get("k2^1")) ^
           F(2, 1, p.x1 ^ c.get("k1^2") ^ F(1, 1, p.x0 ^ c.get("k1^1")));
  };
  chains.keep_if([&](const Chain& c) {
    for (int i = 0; i < 6; ++i) {
      if (x02(c, pts[i]) != A(c, i)) return false;
    }
    return true;
  });
  if (chains.failed()) {
    fail(rep, chains, "first-round keys");
    oracle.record_offline(F.count);
    rep.counters = oracle.counters();
    return rep;
  }

  // y1 ^ y3 = x_0^3 = x_1^2 ^ F13(x_0^2 ^ k13).
  chains.solve("k1^3", [&](const Chain& c, Word k) {
    return (F(3, 1, x02(c, pts[2]) ^ k) ^ F(3, 1, x02(c, pts[4]) ^ k)) == (u(2) ^ u(4));
  });
  chains.derive("beta4", [&](const Chain& c) { return x02(c, pts[2]) ^ c.get("k1^3"); });
  chains.derive("beta5", [&](const Chain& c) { return x02(c, pts[4]) ^ c.get("k1^3"); });
  chains.solve("k2^2", [&](const Chain& c, Word k) {
    return F(2, 2, c2 ^ F(1, 2, c3 ^ c.get("k2^1")) ^ k) == (u(2) ^ c3 ^ F(3, 1, c.get("beta4")));
  });

  auto forward = [&](const Chain& c, const State4& p, int rounds) {
    State4 s = p;
    for (int i = 1; i <= rounds; ++i) {
      const RoundKey k{c.get("k1^" + std::to_string(i)), c.get("k2^" + std::to_string(i))};
      s = fbc_round(Variant::FbcKF, s, i, k, fam);
      F.count += 2;
    }
    return s;
  };
  auto forward_x03 = [&](const Chain& c, const State4& p) {
    const State4 s2 = forward(c, p, 2);
    return s2.x1 ^ F(3, 1, s2.x0 ^ c.get("k1^3"));
  };
  chains.keep_if([&](const Chain& c) {
    for (int i = 0; i < 6; ++i) {
      if (forward_x03(c, pts[i]) != u(i)) return false;
    }
    return true;
  });

  // x_3^3 = y0 ^ y2 = x_2^2 ^ F23(x_3^2 ^ k23).
  chains.solve("k2^3", [&](const Chain& c, Word k) {
    for (int i = 0; i < 6; ++i) {
      const State4 s2 = forward(c, pts[i], 2);
      if ((s2.x2 ^ F(3, 2, s2.x3 ^ k)) != (cts[i].x0 ^ cts[i].x2)) return false;
    }
    return true;
  });
  // y3 = x_2^3 ^ F24(x_3^3 ^ k24).
  chains.solve("k2^4", [&](const Chain& c, Word k) {
    for (int i = 0; i < 6; ++i) {
      const State4 s3 = forward(c, pts[i], 3);
      if ((s3.x2 ^ F(4, 2, s3.x3 ^ k)) != cts[i].x3) return false;
    }
    return true;
  });
  if (chains.failed()) {
    fail(rep, chains, "later-round keys");
    oracle.record_offline(F.count);
    rep.counters = oracle.counters();
    return rep;
  }

  const auto params = oracle.params();
  verify_and_report(
      rep, chains, [&](const State4& pt) { return oracle.query(pt); },
      [&](const KeySchedule& keys, const State4& pt) {
        F.count += 2 * 4;
        return encrypt(params, keys, pt);
      },
      rng);
  oracle.record_offline(F.count);
  rep.counters = oracle.counters();
  return rep;
}

AttackReport q1_recover_fbcfk_5r(EncryptionOracle& oracle, Rng& rng, const AttackLimits& limits) {
  require_q1(oracle, Variant::FbcFK, 5, "q1-fbcfk-5r");
  AttackReport rep = begin(oracle, "q1-fbcfk-5r");
  rep.labels = {"k1^1", "k2^1", "k1^2", "k2^2", "k1^3", "k2^3", "k1^4", "k2^4", "k1^5", "k2^5"};
  const int n = rep.n;
  const auto fam = oracle.public_family();
  PublicF F{fam};

  // Constants are chosen so that no difference equation collapses to 0 = 0.
  const Word c0 = rng.bits(n), c0p = draw_other(rng, n, c0);
  const Word f11c0 = F(1, 1, c0);
  const Word c1 = draw_other(rng, n, f11c0);
  const Word c1p = draw_other(rng, n, c1);
  const Word c2 = rng.bits(n);
  const Word c3 = rng.bits(n);
  Word c3p;
  do {
    c3p = draw_other(rng, n, c3);
  } while (F(1, 2, c3p) == F(1, 2, c3));
  const std::array<State4, 5> q{State4{c0, f11c0, c2, c3}, State4{c0p, F(1, 1, c0p), c2, c3},
                                State4{c0, c1, c2, c3}, State4{c0, c1, c2, c3p}, State4{c0, c1p, c2, c3}};
  std::array<State4, 5> cts;
  for (int i = 0; i < 5; ++i) cts[i] = oracle.query(q[i]);
  // O1 = k15 ^ x_0^3 and O2 = k25 ^ x_3^3.
  std::array<Word, 5> O1, O2;
  for (int i = 0; i < 5; ++i) {
    O1[i] = F(5, 1, cts[i].x1 ^ cts[i].x3) ^ cts[i].x2;
    O2[i] = F(5, 2, cts[i].x0 ^ cts[i].x2) ^ cts[i].x1;
  }

  ChainSet chains(n, limits.max_chains, rep);
  chains.seed({{{"x0^0", c0}, {"x0^0'", c0p}, {"x1^0", c1}, {"x1^0'", c1p}, {"x2^0", c2},
                {"x3^0", c3}, {"x3^0'", c3p}}});

  chains.solve("delta1", [&](const Chain&, Word d) {
    return (F(3, 1, d) ^ F(3, 1, d ^ c0 ^ c0p)) == (O1[0] ^ O1[1]);
  });
  chains.derive("delta2", [&](const Chain& c) { return c.get("delta1") ^ c0 ^ c0p; });
  chains.solve("delta3", [&](const Chain& c, Word d) {
    return F(3, 1, d) == (O1[0] ^ O1[2] ^ F(3, 1, c.get("delta1")));
  });
  chains.solve("k1^1", [&](const Chain& c, Word k) {
    return (F(2, 1, k) ^ F(2, 1, k ^ c1 ^ f11c0)) == (c.get("delta1") ^ c.get("delta3"));
  });
  chains.derive("C4", [&](const Chain& c) {
    const Word d3 = c.get("delta3");
    return c3 ^ c3p ^ F(3, 1, d3) ^ F(3, 1, d3 ^ F(1, 2, c3) ^ F(1, 2, c3p));
  });
  chains.solve("k2^1", [&](const Chain& c, Word k) {
    return (F(2, 2, c2 ^ k ^ F(1, 2, c3)) ^ F(2, 2, c2 ^ k ^ F(1, 2, c3p))) ==
           (O1[2] ^ O1[3] ^ c.get("C4"));
  });
  chains.derive("k1^2", [&](const Chain& c) {
    return c.get("delta1") ^ c0 ^ c2 ^ c.get("k2^1") ^ F(1, 2, c3) ^ F(2, 1, c.get("k1^1"));
  });

  auto first = [&](const Chain& c, const State4& p) {
    F.count += 2;
    return fbc_round(Variant::FbcFK, p, 1, RoundKey{c.get("k1^1"), c.get("k2^1")}, fam);
  };
  auto x02 = [&](const Chain& c, const State4& p) {
    const State4 s1 = first(c, p);
    return s1.x1 ^ c.get("k1^2") ^ F(2, 1, s1.x0);
  };
  chains.keep_if([&](const Chain& c) {
    const Word ref = F(3, 1, x02(c, q[2]));
    for (int i : {0, 1, 4}) {
      if ((O1[i] ^ O1[2]) != (F(3, 1, x02(c, q[i])) ^ ref)) return false;
    }
    return true;
  });
  if (chains.failed()) {
    fail(rep, chains, "first-round keys");
    oracle.record_offline(F.count);
    rep.counters = oracle.counters();
    return rep;
  }

  // x_2^2 = x_3^1 ^ x_0^2, and q3, q5 share x_3^1, so their x_0^2 terms
  // (C6, C7) carry the whole known part of the difference. C5 is the same
  // term at q4.
  chains.derive("C5", [&](const Chain& c) { return x02(c, q[3]); });
  chains.derive("C6", [&](const Chain& c) { return x02(c, q[2]); });
  chains.derive("C7", [&](const Chain& c) { return x02(c, q[4]); });
  chains.solve("delta4", [&](const Chain& c, Word d) {
    return (F(3, 2, d) ^ F(3, 2, d ^ c1 ^ c1p)) == (O2[2] ^ O2[4] ^ c.get("C6") ^ c.get("C7"));
  });
  chains.derive("delta5", [&](const Chain& c) { return c.get("delta4") ^ c1 ^ c1p; });
  chains.derive("k2^2", [&](const Chain& c) {
    const State4 s1 = first(c, q[2]);
    return c.get("delta4") ^ s1.x2 ^ F(2, 2, s1.x3);
  });

  auto second = [&](const Chain& c, const State4& p) {
    F.count += 2;
    return fbc_round(Variant::FbcFK, first(c, p), 2, RoundKey{c.get("k1^2"), c.get("k2^2")}, fam);
  };
  chains.keep_if([&](const Chain& c) {
    const State4 r = second(c, q[2]);
    for (int i : {0, 1, 3, 4}) {
      const State4 s = second(c, q[i]);
      if ((O1[i] ^ O1[2]) != (s.x1 ^ r.x1 ^ F(3, 1, s.x0) ^ F(3, 1, r.x0))) return false;
      if ((O2[i] ^ O2[2]) != (s.x2 ^ r.x2 ^ F(3, 2, s.x3) ^ F(3, 2, r.x3))) return false;
    }
    return true;
  });
  if (chains.failed()) {
    fail(rep, chains, "second-round keys");
    oracle.record_offline(F.count);
    rep.counters = oracle.counters();
    return rep;
  }

  // With x^2 known: y1 ^ y3 ^ x_0^2 ^ x_2^2 ^ F23(x_3^2) = k23 ^ k14 ^ F14(k13 ^ M).
  auto L = [&](const Chain& c, int i) {
    const State4 s = second(c, q[i]);
    return cts[i].x1 ^ cts[i].x3 ^ s.x0 ^ s.x2 ^ F(3, 2, s.x3);
  };
  auto M = [&](const Chain& c, int i) {
    const State4 s = second(c, q[i]);
    return s.x1 ^ F(3, 1, s.x0);
  };
  chains.solve("k1^3", [&](const Chain& c, Word k) {
    const Word l_ref = L(c, 2), m_ref = M(c, 2);
    for (int i : {0, 1, 3, 4}) {
      if ((L(c, i) ^ l_ref) != (F(4, 1, k ^ M(c, i)) ^ F(4, 1, k ^ m_ref))) return false;
    }
    return true;
  });
  // y0 ^ y2 ^ x_2^3 = k24 ^ F24(k23 ^ N) with x_2^3 = x_3^2 ^ x_0^3.
  auto L2 = [&](const Chain& c, int i) {
    const State4 s = second(c, q[i]);
    return cts[i].x0 ^ cts[i].x2 ^ s.x3 ^ c.get("k1^3") ^ M(c, i);
  };
  auto N = [&](const Chain& c, int i) {
    const State4 s = second(c, q[i]);
    return s.x2 ^ F(3, 2, s.x3);
  };
  chains.solve("k2^3", [&](const Chain& c, Word k) {
    const Word l_ref = L2(c, 2), n_ref = N(c, 2);
    for (int i : {0, 1, 3, 4}) {
      if ((L2(c, i) ^ l_ref) != (F(4, 2, k ^ N(c, i)) ^ F(4, 2, k ^ n_ref))) return false;
    }
    return true;
  });
  chains.derive("k1^4", [&](const Chain& c) {
    return L(c, 2) ^ F(4, 1, c.get("k1^3") ^ M(c, 2)) ^ c.get("k2^3");
  });
  chains.derive("k2^4", [&](const Chain& c) { return L2(c, 2) ^ F(4, 2, c.get("k2^3") ^ N(c, 2)); });
  chains.derive("k1^5", [&](const Chain& c) { return O1[2] ^ c.get("k1^3") ^ M(c, 2); });
  chains.derive("k2^5", [&](const Chain& c) { return O2[2] ^ c.get("k2^3") ^ N(c, 2); });
  if (chains.failed()) {
    fail(rep, chains, "later-round keys");
    oracle.record_offline(F.count);
    rep.counters = oracle.counters();
    return rep;
  }

  const auto params = oracle.params();
  verify_and_report(
      rep, chains, [&](const State4& pt) { return oracle.query(pt); },
      [&](const KeySchedule& keys, const State4& pt) {
        F.count += 2 * 5;
        return encrypt(params, keys, pt);
      },
      rng);
  oracle.record_offline(F.count);
  rep.counters = oracle.counters();
  return rep;
}

}  // namespace qfbc
