#include <algorithm>
#include <string>

#include "qfbc/attacks.hpp"
#include "qfbc/errors.hpp"

namespace qfbc {

std::map<std::string, std::vector<Word>> AttackReport::recovered() const {
  std::map<std::string, std::vector<Word>> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto& vals = out[labels[i]];
    for (const auto& s : solutions) vals.push_back(s.at(i));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  }
  return out;
}

void grade(AttackReport& report, std::span<const Word> planted) {
  if (planted.size() != report.labels.size()) throw ParameterError("planted tuple size mismatch");
  report.planted_contained.clear();
  for (std::size_t i = 0; i < report.labels.size(); ++i) {
    bool hit = false;
    for (const auto& s : report.solutions) hit = hit || s.at(i) == planted[i];
    report.planted_contained[report.labels[i]] = hit;
  }
  report.planted_tuple_contained = std::any_of(
      report.solutions.begin(), report.solutions.end(),
      [&](const std::vector<Word>& s) { return std::equal(s.begin(), s.end(), planted.begin()); });
  report.graded = true;
}

std::vector<Word> planted_tuple(const std::vector<std::string>& labels, const KeySchedule& keys) {
  std::vector<Word> out;
  for (const auto& l : labels) {
    if (l.size() > 3 && l[0] == 'k' && l[2] == '^') {
      const int round = std::stoi(l.substr(3));
      const auto& k = keys.at(round - 1);
      out.push_back(l[1] == '1' ? k.k1 : k.k2);
    } else if (l.size() > 1 && l[0] == 'k') {
      out.push_back(keys.at(std::stoi(l.substr(1))).k1);
    } else {
      throw ParameterError("label is not a round key: " + l);
    }
  }
  return out;
}

int q2_guessed_bits(Variant v, int n, int rounds) {
  switch (v) {
    case Variant::FbcF:
    case Variant::FbcKF:
      if (rounds < 6) throw ParameterError("quantum key recovery on FBC-F/KF needs r >= 6");
      return 2 * n * (rounds - 6) + 3 * n;
    case Variant::FbcFK:
      if (rounds < 7) throw ParameterError("quantum key recovery on FBC-FK needs r >= 7");
      return 2 * n * (rounds - 6);
    default:
      throw ParameterError("no quantum key recovery for this variant");
  }
}

void enforce_guard(int guessed_bits, const AttackLimits& limits) {
  if (guessed_bits > limits.max_guessed_bits && !limits.override_guard) {
    throw ResourceGuardError("search over " + std::to_string(guessed_bits) +
                             " guessed key bits exceeds the guard of " +
                             std::to_string(limits.max_guessed_bits) + " bits");
  }
}

}  // namespace qfbc
