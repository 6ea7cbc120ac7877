// Acceptance runner: one PASS/FAIL line per numbered criterion.
//
//   acceptance                 all criteria
//   acceptance --criterion 4   a single criterion (exit status reflects it)

#include "teleclone/app/runs.hpp"

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <vector>

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--criterion N]...\n";
      return 2;
    }
  }
  teleclone::app::CheckOptions opt;
  if (const char* env = std::getenv("TELECLONE_THREADS")) opt.threads = static_cast<unsigned>(std::max(1, std::atoi(env)));
  std::vector<int> run = selected;
  if (run.empty())
    for (int n = 1; n <= 13; ++n) run.push_back(n);
  bool ok = true;
  try {
    const auto rep = teleclone::app::run_validation(opt, run);
    for (const auto& c : rep.checks) {
      std::cout << teleclone::app::check_line(c) << std::endl;
      ok = ok && c.passed;
    }
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << std::endl;
    return 1;
  }
  return ok ? 0 : 1;
}
