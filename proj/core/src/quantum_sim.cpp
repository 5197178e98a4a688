#include "qfbc/quantum_sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "qfbc/errors.hpp"

namespace qfbc {

namespace {

int parity(std::uint64_t v) { return std::popcount(v) & 1; }

bool confirm(std::span<const Word> table, std::uint64_t s, const SimonConfig& cfg, Rng& rng) {
  const std::uint64_t size = table.size();
  if (cfg.full_domain_confirmation || size <= static_cast<std::uint64_t>(cfg.verify_samples)) {
    for (std::uint64_t x = 0; x < size; ++x) {
      if (table[x] != table[x ^ s]) return false;
    }
    return true;
  }
  for (int i = 0; i < cfg.verify_samples; ++i) {
    const std::uint64_t x = rng.below(size);
    if (table[x] != table[x ^ s]) return false;
  }
  return true;
}

void check_table(std::span<const Word> table, int n) {
  if (n < 1 || n > kMaxWidth) throw ParameterError("function width outside [1,16]");
  if (table.size() != (std::size_t{1} << n)) throw ParameterError("table size is not 2^n");
}

}  // namespace

FunctionTable tabulate(const PeriodicFunctionHandle& f) {
  const std::uint64_t size = std::uint64_t{1} << f.width();
  FunctionTable t(size);
  for (std::uint64_t x = 0; x < size; ++x) t[x] = f(static_cast<Word>(x));
  return t;
}

CosetSampler::CosetSampler(std::span<const Word> table, int n)
    : n_(n), table_(table.begin(), table.end()) {
  check_table(table, n);
  const std::uint32_t size = 1u << n;
  start_.assign(size + 1, 0);
  for (Word v : table_) {
    if (v >= size) throw ParameterError("function output exceeds n bits");
    ++start_[v + 1];
  }
  for (std::uint32_t v = 0; v < size; ++v) start_[v + 1] += start_[v];
  order_.resize(size);
  std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
  for (std::uint32_t x = 0; x < size; ++x) order_[fill[table_[x]]++] = x;
}

BitVec CosetSampler::sample(Rng& rng) const {
  const std::uint64_t size = std::uint64_t{1} << n_;
  const Word v = table_[rng.below(size)];
  const std::uint32_t* first = order_.data() + start_[v];
  const std::uint64_t k = start_[v + 1] - start_[v];
  if (k == 1) return {rng.below(size), n_};

  scratch_.assign(size, 0);
  if (k <= static_cast<std::uint64_t>(2 * n_)) {
    for (std::uint64_t y = 0; y < size; ++y) {
      std::int64_t a = 0;
      for (std::uint64_t i = 0; i < k; ++i) a += parity(first[i] & y) ? -1 : 1;
      scratch_[y] = a;
    }
  } else {
    for (std::uint64_t i = 0; i < k; ++i) scratch_[first[i]] = 1;
    for (std::uint64_t h = 1; h < size; h <<= 1) {
      for (std::uint64_t i = 0; i < size; i += 2 * h) {
        for (std::uint64_t j = i; j < i + h; ++j) {
          const std::int64_t a = scratch_[j], b = scratch_[j + h];
          scratch_[j] = a + b;
          scratch_[j + h] = a - b;
        }
      }
    }
  }
  // Weights a(y)^2 sum to |S| * 2^n, so integer sampling is exact.
  std::uint64_t r = rng.below(k * size);
  for (std::uint64_t y = 0; y < size; ++y) {
    const auto w = static_cast<std::uint64_t>(scratch_[y] * scratch_[y]);
    if (r < w) return {y, n_};
    r -= w;
  }
  return {size - 1, n_};
}

BitVec simon_sample(const PeriodicFunctionHandle& f, Rng& rng) {
  const auto t = tabulate(f);
  CosetSampler sampler(t, f.width());
  f.note_sampling_rounds(1);
  return sampler.sample(rng);
}

SimonOutcome simon_find_period(std::span<const Word> table, int n, const SimonConfig& cfg, Rng& rng) {
  check_table(table, n);
  const int budget = cfg.max_rounds > 0 ? cfg.max_rounds : 4 * n;
  if (budget < n - 1) throw ParameterError("Simon round budget below n-1");
  if (cfg.verify_samples < 1) throw ParameterError("verify_samples must be positive");

  CosetSampler sampler(table, n);
  EchelonBasis basis(n);
  SimonOutcome out;
  bool all_zero = true;
  for (int round = 1; round <= budget; ++round) {
    const BitVec y = sampler.sample(rng);
    out.rounds_used = round;
    all_zero = all_zero && y.is_zero();
    basis.insert(y.bits);
    out.rank = basis.rank();
    if (out.rank == n) return out;
    if (out.rank == n - 1) {
      const BitVec cand = basis.nullspace().front();
      if (confirm(table, cand.bits, cfg, rng)) out.period = cand;
      return out;
    }
  }
  out.degenerate = all_zero;
  if (out.rank == 0) return out;

  // Budget spent with a kernel of dimension >= 2: test every nonzero member.
  const auto null = basis.nullspace();
  const int d = static_cast<int>(null.size());
  if (d > 10) return out;
  std::vector<std::uint64_t> confirmed;
  for (std::uint64_t combo = 1; combo < (std::uint64_t{1} << d); ++combo) {
    std::uint64_t s = 0;
    for (int i = 0; i < d; ++i) {
      if ((combo >> i) & 1) s ^= null[i].bits;
    }
    if (confirm(table, s, cfg, rng)) confirmed.push_back(s);
  }
  if (!confirmed.empty()) {
    std::sort(confirmed.begin(), confirmed.end());
    out.period = BitVec{confirmed.front(), n};
    out.multiple_periods = confirmed.size() > 1;
  }
  return out;
}

SimonOutcome simon_find_period(const PeriodicFunctionHandle& f, const SimonConfig& cfg, Rng& rng) {
  const auto t = tabulate(f);
  auto out = simon_find_period(t, f.width(), cfg, rng);
  f.note_sampling_rounds(static_cast<std::uint64_t>(out.rounds_used));
  return out;
}

std::vector<BitVec> brute_force_period(std::span<const Word> table, int n) {
  check_table(table, n);
  std::vector<BitVec> out;
  const std::uint64_t size = table.size();
  for (std::uint64_t s = 1; s < size; ++s) {
    bool ok = true;
    for (std::uint64_t x = 0; x < size && ok; ++x) ok = table[x] == table[x ^ s];
    if (ok) out.push_back({s, n});
  }
  return out;
}

std::vector<BitVec> brute_force_period(const PeriodicFunctionHandle& f) {
  return brute_force_period(tabulate(f), f.width());
}

std::vector<double> simon_distribution_coset(std::span<const Word> table, int n) {
  check_table(table, n);
  const std::uint64_t size = table.size();
  std::vector<double> p(size, 0.0);
  std::vector<std::vector<std::uint64_t>> classes(size);
  for (std::uint64_t x = 0; x < size; ++x) {
    if (table[x] >= size) throw ParameterError("function output exceeds n bits");
    classes[table[x]].push_back(x);
  }
  const double norm = static_cast<double>(size) * static_cast<double>(size);
  for (const auto& s : classes) {
    if (s.empty()) continue;
    for (std::uint64_t y = 0; y < size; ++y) {
      double a = 0;
      for (auto x : s) a += parity(x & y) ? -1.0 : 1.0;
      p[y] += a * a / norm;
    }
  }
  return p;
}

std::vector<double> simon_distribution_statevector(std::span<const Word> table, int n) {
  check_table(table, n);
  if (n > 5) throw ParameterError("statevector Simon is limited to n <= 5");
  const std::uint64_t size = table.size();
  // Index (x << n) | z: first register x, second register z.
  std::vector<double> amp(size * size, 0.0);
  amp[0] = 1.0;
  const double h = 1.0 / std::numbers::sqrt2;
  auto hadamard_first = [&] {
    for (int b = n; b < 2 * n; ++b) {
      const std::uint64_t bit = std::uint64_t{1} << b;
      for (std::uint64_t i = 0; i < amp.size(); ++i) {
        if (i & bit) continue;
        const double a = amp[i], c = amp[i | bit];
        amp[i] = (a + c) * h;
        amp[i | bit] = (a - c) * h;
      }
    }
  };
  hadamard_first();
  std::vector<double> next(amp.size(), 0.0);
  for (std::uint64_t x = 0; x < size; ++x) {
    for (std::uint64_t z = 0; z < size; ++z) next[(x << n) | (z ^ table[x])] = amp[(x << n) | z];
  }
  amp.swap(next);
  hadamard_first();
  std::vector<double> p(size, 0.0);
  for (std::uint64_t y = 0; y < size; ++y) {
    for (std::uint64_t z = 0; z < size; ++z) p[y] += amp[(y << n) | z] * amp[(y << n) | z];
  }
  return p;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw ParameterError("distributions differ in support size");
  double d = 0;
  for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p[i] - q[i]);
  return d / 2;
}

int grover_iterations(int n) {
  if (n < 1 || n > 62) throw ParameterError("Grover width outside [1,62]");
  return static_cast<int>(std::ceil(std::numbers::pi / 4 * std::pow(2.0, n / 2.0)));
}

double grover_success_closed_form(int n, std::uint64_t marked, int iterations) {
  const double size = std::ldexp(1.0, n);
  if (static_cast<double>(marked) > size) throw ParameterError("more marked elements than domain");
  const double theta = std::asin(std::sqrt(static_cast<double>(marked) / size));
  const double s = std::sin((2.0 * iterations + 1.0) * theta);
  return s * s;
}

GroverOutcome grover_search_statevector(const std::function<bool(Word)>& pred, int n, Rng& rng,
                                        std::optional<int> iterations) {
  if (n < 1 || n > 20) throw ParameterError("statevector Grover is limited to n <= 20");
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<char> mark(size);
  GroverOutcome out;
  for (std::uint64_t x = 0; x < size; ++x) {
    mark[x] = pred(static_cast<Word>(x)) ? 1 : 0;
    out.marked += static_cast<std::uint64_t>(mark[x]);
  }
  out.evaluations = size;
  out.iterations = iterations.value_or(grover_iterations(n));
  if (out.iterations < 0) throw ParameterError("negative Grover iteration count");

  std::vector<double> amp(size, 1.0 / std::sqrt(static_cast<double>(size)));
  for (int it = 0; it < out.iterations; ++it) {
    double sum = 0;
    for (std::uint64_t x = 0; x < size; ++x) {
      if (mark[x]) amp[x] = -amp[x];
      sum += amp[x];
    }
    const double twice_mean = 2.0 * sum / static_cast<double>(size);
    for (auto& a : amp) a = twice_mean - a;
  }
  for (std::uint64_t x = 0; x < size; ++x) {
    if (mark[x]) out.success_probability += amp[x] * amp[x];
  }
  double r = rng.unit();
  std::uint64_t measured = size - 1;
  for (std::uint64_t x = 0; x < size; ++x) {
    r -= amp[x] * amp[x];
    if (r < 0) {
      measured = x;
      break;
    }
  }
  if (mark[measured]) out.found = BitVec{measured, n};
  return out;
}

}  // namespace qfbc
