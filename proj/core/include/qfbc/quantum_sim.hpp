#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qfbc/cipher.hpp"
#include "qfbc/gf2.hpp"
#include "qfbc/oracle.hpp"
#include "qfbc/random.hpp"

namespace qfbc {

using FunctionTable = std::vector<Word>;

/// Evaluates the handle on the whole domain (2^n evaluations).
FunctionTable tabulate(const PeriodicFunctionHandle& f);

/// Samples Simon's measurement distribution exactly, one coset at a time:
/// draw x0, collect S = f^-1(f(x0)) and sample y with weight
/// |sum_{x in S} (-1)^{y.x}|^2.
class CosetSampler {
 public:
  CosetSampler(std::span<const Word> table, int n);
  BitVec sample(Rng& rng) const;
  int width() const { return n_; }

 private:
  int n_;
  std::vector<Word> table_;
  std::vector<std::uint32_t> order_;  // inputs grouped by output value
  std::vector<std::uint32_t> start_;  // bucket offsets, size 2^n + 1
  mutable std::vector<std::int64_t> scratch_;
};

/// One Simon measurement; sweeps the whole domain of f.
BitVec simon_sample(const PeriodicFunctionHandle& f, Rng& rng);

struct SimonConfig {
  int max_rounds = 0;  // 0 selects 4n
  int verify_samples = 16;
  bool full_domain_confirmation = false;
};

struct SimonOutcome {
  std::optional<BitVec> period;
  int rounds_used = 0;
  int rank = 0;
  bool multiple_periods = false;
  bool degenerate = false;  // every sample was zero
};

SimonOutcome simon_find_period(std::span<const Word> table, int n, const SimonConfig& cfg, Rng& rng);
SimonOutcome simon_find_period(const PeriodicFunctionHandle& f, const SimonConfig& cfg, Rng& rng);

/// All nonzero s with f(x) = f(x ^ s) for every x, ascending.
std::vector<BitVec> brute_force_period(std::span<const Word> table, int n);
std::vector<BitVec> brute_force_period(const PeriodicFunctionHandle& f);

/// Measurement distribution of the first register, computed by the coset
/// formula and by a full 2n-qubit statevector (n <= 5) respectively.
std::vector<double> simon_distribution_coset(std::span<const Word> table, int n);
std::vector<double> simon_distribution_statevector(std::span<const Word> table, int n);

double total_variation(std::span<const double> p, std::span<const double> q);

int grover_iterations(int n);
double grover_success_closed_form(int n, std::uint64_t marked, int iterations);

struct ExhaustiveResult {
  std::vector<BitVec> solutions;
  std::uint64_t evaluations = 0;
};

/// Classical stand-in for Grover: every marked element, 2^n evaluations.
template <class Pred>
ExhaustiveResult grover_search_exhaustive(Pred&& pred, int n) {
  ExhaustiveResult r;
  const std::uint64_t size = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < size; ++x) {
    if (pred(static_cast<Word>(x))) r.solutions.push_back({x, n});
  }
  r.evaluations = size;
  return r;
}

struct GroverOutcome {
  std::optional<BitVec> found;  // measured element, if it is marked
  int iterations = 0;
  double success_probability = 0.0;
  std::uint64_t marked = 0;
  std::uint64_t evaluations = 0;
};

/// Statevector Grover over n <= 20 qubits with real amplitudes.
GroverOutcome grover_search_statevector(const std::function<bool(Word)>& pred, int n, Rng& rng,
                                        std::optional<int> iterations = std::nullopt);

}  // namespace qfbc
