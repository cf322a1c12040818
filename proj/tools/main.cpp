#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dynachan/engine.hpp"
#include "dynachan/scenario.hpp"

namespace {

constexpr const char* kToolVersion = "dynachan 0.1.0";

std::uint64_t fnv1a_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::uint64_t h = 14695981039346656037ull;
  char buf[8192];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << v;
  return out.str();
}

struct RunRequest {
  dynachan::ScenarioConfig scenario;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = "out";
  bool trace = false;
  bool quiet = false;
};

int execute_run(const RunRequest& req) {
  namespace fs = std::filesystem;
  fs::create_directories(req.out_dir);

  dynachan::Engine engine(req.scenario, req.seed);
  std::ofstream trace_file;
  if (req.trace) {
    trace_file.open(req.out_dir / "trace.txt", std::ios::binary);
    engine.set_trace(&trace_file);
  }

  const dynachan::RunResult result = engine.run();
  const auto files =
      dynachan::write_csv_files(result.metrics, result.summary, req.out_dir.string());

  nlohmann::json manifest;
  manifest["tool_version"] = kToolVersion;
  manifest["seed"] = req.seed;
  manifest["duration_s"] = req.scenario.duration_s;
  manifest["scenario"] = nlohmann::json::parse(dynachan::to_json_string(req.scenario));
  manifest["scaled"] = req.scenario.scaled;
  manifest["trace_hash"] = hex64(result.trace_hash);
  nlohmann::json csvs = nlohmann::json::array();
  for (const auto& name : files) {
    csvs.push_back({{"file", name}, {"fnv1a64", hex64(fnv1a_file(req.out_dir / name))}});
  }
  manifest["csv_files"] = csvs;
  manifest["counters"] = {
      {"generated", result.counters.generated},
      {"delivered", result.counters.delivered},
      {"dropped", result.total_drops()},
      {"residual", result.counters.residual},
      {"seeks", result.counters.seeks_started},
      {"events", result.counters.events_dispatched},
      {"out_of_order_dispatches", result.counters.out_of_order_dispatches},
      {"stay_decisions", result.counters.stay_decisions},
      {"reseek_lqi", result.counters.reseek_decisions[0]},
      {"reseek_class", result.counters.reseek_decisions[1]},
      {"reseek_requirement", result.counters.reseek_decisions[2]},
      {"reseek_drift", result.counters.reseek_decisions[3]},
  };
  std::ofstream mf(req.out_dir / "manifest.json", std::ios::binary);
  mf << manifest.dump(2) << '\n';

  if (!result.conservation_holds()) {
    std::cerr << "error: packet conservation violated (kernel bug)\n";
    return 2;
  }

  if (!req.quiet) {
    std::cout << req.scenario.name << " seed=" << req.seed << ": generated "
              << result.counters.generated << ", delivered " << result.counters.delivered
              << ", dropped " << result.total_drops() << ", aggregate "
              << result.summary.aggregate_kbps << " kbps\n";
  }
  return 0;
}

bool parse_seed_range(const std::string& text, std::uint64_t& lo, std::uint64_t& hi) {
  const auto sep = text.find("..");
  if (sep == std::string::npos) return false;
  try {
    lo = std::stoull(text.substr(0, sep));
    hi = std::stoull(text.substr(sep + 2));
  } catch (const std::exception&) {
    return false;
  }
  return lo <= hi;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-channel WSN allocation protocol simulator"};
  app.require_subcommand(1);

  std::string scenario_arg;
  std::uint64_t seed = 0;
  bool seed_given = false;
  double duration_s = 0.0;
  std::string out_dir = "out";
  bool trace = false;

  CLI::App* run = app.add_subcommand("run", "Execute one scenario and write CSV outputs");
  run->add_option("--scenario", scenario_arg, "Builtin name, scenario JSON, or manifest.json")
      ->required();
  run->add_option("--seed", seed, "Run seed (default: scenario seed)")
      ->each([&](const std::string&) { seed_given = true; });
  run->add_option("--duration-s", duration_s, "Rescale the run to this many simulated seconds");
  run->add_option("--out", out_dir, "Output directory (default: out)");
  run->add_flag("--trace", trace, "Also write a line-oriented event trace");

  CLI::App* list = app.add_subcommand("list", "List builtin scenarios");

  std::string seeds_arg;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a seed range in parallel");
  sweep->add_option("--scenario", scenario_arg, "Builtin name or scenario JSON")->required();
  sweep->add_option("--seeds", seeds_arg, "Inclusive seed range, e.g. 1..5")->required();
  sweep->add_option("--duration-s", duration_s, "Rescale each run");
  sweep->add_option("--out", out_dir, "Parent output directory (default: out)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& name : dynachan::builtin_scenario_names()) std::cout << name << '\n';
      return 0;
    }

    dynachan::ScenarioConfig cfg = dynachan::load_scenario(scenario_arg);
    if (duration_s > 0.0) cfg.rescale_duration(duration_s);

    if (run->parsed()) {
      RunRequest req;
      req.scenario = cfg;
      req.seed = seed_given ? seed : cfg.seed;
      req.out_dir = out_dir;
      req.trace = trace;
      return execute_run(req);
    }

    // sweep
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    if (!parse_seed_range(seeds_arg, lo, hi)) {
      std::cerr << "error: --seeds expects an inclusive range like 1..5\n";
      return 1;
    }
    std::atomic<int> worst_rc{0};
    std::mutex io_mutex;
    std::vector<std::thread> workers;
    for (std::uint64_t s = lo; s <= hi; ++s) {
      workers.emplace_back([&, s] {
        try {
          RunRequest req;
          req.scenario = cfg;
          req.seed = s;
          req.out_dir = std::filesystem::path(out_dir) / ("seed-" + std::to_string(s));
          req.quiet = true;
          const int rc = execute_run(req);
          int expected = worst_rc.load();
          while (rc > expected && !worst_rc.compare_exchange_weak(expected, rc)) {
          }
          std::lock_guard<std::mutex> lock(io_mutex);
          std::cout << "seed " << s << (rc == 0 ? " done -> " : " FAILED -> ")
                    << req.out_dir.string() << '\n';
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(io_mutex);
          std::cerr << "error: seed " << s << ": " << e.what() << '\n';
          worst_rc.store(2);
        }
      });
    }
    for (auto& w : workers) w.join();
    return worst_rc.load();
  } catch (const dynachan::ScenarioError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
