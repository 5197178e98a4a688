#include "qattack/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>

#include "qfbc/errors.hpp"
#include "qfbc/experiments.hpp"

namespace qattack {

namespace {

struct TrialOutput {
  std::string line;
  bool ok = false;
};

// Runs trials on a pool and hands results to `emit` in trial order.
void run_ordered(std::uint64_t trials, unsigned threads, const std::function<TrialOutput(std::uint64_t)>& job,
                 const std::function<void(const TrialOutput&)>& emit) {
  std::vector<std::optional<TrialOutput>> done(trials);
  std::exception_ptr failure;
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> abort{false};
  unsigned finished = 0;

  auto worker = [&] {
    for (std::uint64_t i = next++; i < trials && !abort; i = next++) {
      try {
        auto r = job(i);
        std::lock_guard lock(mu);
        done[i] = std::move(r);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        abort = true;
      }
      cv.notify_all();
    }
    std::lock_guard lock(mu);
    ++finished;
    cv.notify_all();
  };

  threads = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, std::max<std::uint64_t>(trials, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);

  for (std::uint64_t i = 0; i < trials; ++i) {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return done[i].has_value() || failure || finished == threads; });
    if (!done[i]) break;
    const TrialOutput copy = *done[i];
    lock.unlock();
    emit(copy);
  }
  abort = true;
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

struct Options {
  std::string structure;
  std::string target;
  std::string mode = "genuine";
  int n = 8;
  int r = 0;
  int m = 8;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  int simon_rounds = 0;
  std::string output;
  bool override_guard = false;
  unsigned threads = 0;
  bool json = false;
  bool timing = false;
  bool inject_fault = false;
};

std::ostream& open_output(const Options& o, std::ostream& out, std::ofstream& file) {
  if (o.output.empty() || o.output == "-") return out;
  file.open(o.output, std::ios::binary | std::ios::trunc);
  if (!file) throw qfbc::ParameterError("cannot open output file " + o.output);
  return file;
}

unsigned thread_count(const Options& o) {
  if (o.threads > 0) return o.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_distinguish(const Options& o, std::ostream& out, std::ostream& err) {
  const auto s = qfbc::parse_structure(o.structure);
  if (!s) {
    err << "unknown structure '" << o.structure << "' (expected fbc-f-4r, fbc-kf-4r or fbc-fk-6r)\n";
    return kUsage;
  }
  if (o.mode != "genuine" && o.mode != "impostor") {
    err << "mode must be genuine or impostor\n";
    return kUsage;
  }
  qfbc::SimonConfig sc;
  sc.max_rounds = o.simon_rounds;
  const bool impostor = o.mode == "impostor";
  std::ofstream file;
  std::ostream& sink = open_output(o, out, file);
  std::uint64_t cipher = 0;
  run_ordered(
      o.trials, thread_count(o),
      [&](std::uint64_t i) {
        const auto t = qfbc::run_distinguisher_trial(*s, o.n, impostor, sc, o.seed, i);
        return TrialOutput{qfbc::to_json_line(t), t.verdict.decision == qfbc::Decision::Cipher};
      },
      [&](const TrialOutput& t) {
        sink << t.line << '\n';
        cipher += t.ok ? 1 : 0;
      });
  sink.flush();
  err << o.structure << " n=" << o.n << " " << o.mode << ": CIPHER " << cipher << "/" << o.trials
      << ", RANDOM " << (o.trials - cipher) << "/" << o.trials << " (CIPHER rate " << std::fixed
      << std::setprecision(3) << static_cast<double>(cipher) / static_cast<double>(o.trials) << ")\n";
  return kOk;
}

int cmd_attack(const Options& o, std::ostream& out, std::ostream& err) {
  const auto t = qfbc::parse_attack_target(o.target);
  if (!t) {
    err << "unknown attack target '" << o.target << "'\n";
    return kUsage;
  }
  if (o.mode != "genuine" && o.mode != "impostor") {
    err << "mode must be genuine or impostor\n";
    return kUsage;
  }
  qfbc::AttackSettings s;
  s.n = o.n;
  s.rounds = o.r;
  s.key_bits = o.m;
  s.impostor = o.mode == "impostor";
  s.simon.max_rounds = o.simon_rounds;
  s.limits.override_guard = o.override_guard;
  qfbc::check_attack_guard(*t, s);

  std::ofstream file;
  std::ostream& sink = open_output(o, out, file);
  std::uint64_t ok = 0;
  run_ordered(
      o.trials, thread_count(o),
      [&](std::uint64_t i) {
        const auto start = std::chrono::steady_clock::now();
        auto trial = qfbc::run_attack_trial(*t, s, o.seed, i);
        if (o.timing) {
          trial.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
        return TrialOutput{qfbc::to_json_line(trial), trial.ok()};
      },
      [&](const TrialOutput& r) {
        sink << r.line << '\n';
        ok += r.ok ? 1 : 0;
      });
  sink.flush();
  err << o.target << " n=" << o.n << " " << o.mode << ": " << ok << "/" << o.trials
      << (s.impostor ? " rejected" : " verified") << "\n";
  return ok == o.trials ? kOk : kTestFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qattack: quantum cryptanalysis lab for four-branch Feistel structures", "qattack"};
  app.config_formatter(std::make_shared<CLI::ConfigINI>());
  app.set_config("--config", "", "Key=value configuration file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--n", o.n, "Branch width in bits")->check(CLI::Range(2, 16));
  app.add_option("--r", o.r, "Round count (0 selects the target default)")->check(CLI::Range(0, 32));
  app.add_option("--m", o.m, "FX key bits")->check(CLI::Range(1, 24));
  app.add_option("--trials", o.trials, "Number of trials")->check(CLI::Range(1, 1000000));
  app.add_option("--seed", o.seed, "Run seed");
  app.add_option("--simon-rounds", o.simon_rounds, "Simon sampling budget (0 selects 4n)")->check(CLI::Range(0, 4096));
  app.add_option("--mode", o.mode, "genuine or impostor oracle");
  app.add_option("--output", o.output, "Write JSONL here instead of stdout");
  app.add_flag("--override-guard", o.override_guard, "Allow searches above the guessed-bit guard")
      ->envname("QATTACK_GUARD_OVERRIDE");
  app.add_option("--threads", o.threads, "Worker threads (0 selects machine parallelism)");
  app.add_flag("--json", o.json, "Selftest: print the summary as one JSON object");
  app.add_flag("--timing", o.timing, "Fill wall_ms (output is then no longer reproducible)");
  app.add_flag("--inject-fault", o.inject_fault, "Selftest: add a suite that must fail");
  app.add_option("--structure", o.structure, "fbc-f-4r, fbc-kf-4r or fbc-fk-6r");

  auto* dist = app.add_subcommand("distinguish", "Run distinguisher trials");
  auto* attack = app.add_subcommand("attack", "Run key-recovery trials");
  attack->add_option("target", o.target, "q2-fbcf, q2-fbckf, q2-fbcfk, q1-feistel-kf-3r, q1-fbckf-4r, q1-fbcfk-5r, gms-fx")
      ->required();
  auto* self = app.add_subcommand("selftest", "Run reduced invariant suites");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (dist->parsed()) {
      if (o.structure.empty()) {
        err << "distinguish requires --structure\n";
        return kUsage;
      }
      return cmd_distinguish(o, out, err);
    }
    if (attack->parsed()) return cmd_attack(o, out, err);
    if (self->parsed()) return run_selftest({o.inject_fault, o.json}, out, err);
  } catch (const qfbc::ResourceGuardError& e) {
    err << "resource guard: " << e.what() << " (pass --override-guard or set QATTACK_GUARD_OVERRIDE=1)\n";
    return kResourceGuard;
  } catch (const qfbc::ParameterError& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace qattack
