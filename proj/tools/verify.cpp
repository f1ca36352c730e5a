// verify: named checks for identities, component inclusions, centers, and
// generating systems of relatively free Lie-nilpotent associative algebras,
// at bounded degree and in exact arithmetic.

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "lienil/report.hpp"

namespace {

int thread_count() {
  const char* env = std::getenv("VERIFY_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  return n < 1 ? 1 : n;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "verify: bounded-degree verification of identities and T-ideal/T-space "
      "statements in Lie-nilpotent relatively free algebras"};
  app.footer(
      "Examples:\n"
      "  verify --list\n"
      "  verify theorem1 --m 2 --n 3 --char 5 --max-deg 7 --format json\n"
      "  verify --all\n"
      "Set VERIFY_THREADS to run independent checks concurrently.");

  std::vector<std::string> names;
  app.add_option("checks", names, "check names to run (see --list)");
  bool all = false, list = false;
  app.add_flag("--all", all, "run the whole catalog with default parameters");
  app.add_flag("--list", list, "list the catalog and default parameters");
  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}));

  std::map<std::string, long> cli_params;
  auto add_param = [&](const std::string& flag, const std::string& key, const std::string& help) {
    auto cb = [&cli_params, key](long v) { cli_params[key] = v; };
    app.add_option_function<long>(flag, cb, help);
  };
  add_param("--n", "n", "statement parameter n");
  add_param("--m", "m", "statement parameter m");
  add_param("--char", "char", "field characteristic: 0 or a prime >= 5");
  add_param("--max-deg", "max_deg", "total-degree cap for the check");
  add_param("--rank", "rank", "rank override where a check admits one");
  add_param("--p", "p", "prime parameter for arithmetic-only checks");
  add_param("--q", "q", "prime-power parameter");
  add_param("--q-max", "q_max", "exponent sweep bound");
  add_param("--s", "s", "prime-power exponent");
  add_param("--s-max", "s_max", "sweep bound for s");
  add_param("--span-deg", "span_deg", "degree bound for spanning cross-checks");

  CLI11_PARSE(app, argc, argv);

  using namespace lienil;
  if (list) {
    for (auto& info : check_catalog()) {
      std::cout << info.name;
      for (size_t i = info.name.size(); i < 22; ++i) std::cout << ' ';
      std::cout << info.summary << "\n";
      std::cout << "                      defaults:";
      for (auto& [k, v] : info.defaults) std::cout << " " << k << "=" << v;
      std::cout << "\n";
    }
    return 0;
  }

  if (all)
    for (auto& info : check_catalog()) names.push_back(info.name);
  if (names.empty()) {
    std::cerr << "no checks requested; try --all or --list\n";
    return 2;
  }

  std::vector<CheckRequest> requests;
  for (auto& name : names) {
    if (!find_check(name)) {
      std::cerr << "unknown check name: " << name << "\n";
      return 2;
    }
    CheckRequest req;
    req.name = name;
    for (auto& [k, v] : cli_params) req.params[k] = v;
    requests.push_back(std::move(req));
  }

  std::vector<CheckResult> results(requests.size());
  int threads = std::min<int>(thread_count(), static_cast<int>(requests.size()));
  try {
    if (threads <= 1) {
      CheckRunner runner;  // sequential runs share the component caches
      for (size_t i = 0; i < requests.size(); ++i) results[i] = runner.run(requests[i]);
    } else {
      std::mutex mu;
      size_t next = 0;
      std::vector<std::thread> pool;
      std::string error;
      for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
          CheckRunner runner;
          for (;;) {
            size_t i;
            {
              std::lock_guard<std::mutex> lock(mu);
              if (next >= requests.size() || !error.empty()) return;
              i = next++;
            }
            try {
              results[i] = runner.run(requests[i]);
            } catch (const std::exception& e) {
              std::lock_guard<std::mutex> lock(mu);
              if (error.empty()) error = e.what();
              return;
            }
          }
        });
      for (auto& th : pool) th.join();
      if (!error.empty()) throw std::domain_error(error);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::cout << emit_report(results, format);
  for (auto& r : results)
    if (r.status != CheckStatus::Pass) return 1;
  return 0;
}
