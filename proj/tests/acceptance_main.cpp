#include <cstdio>
#include <string>
#include <vector>

#include "wpa/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> only(argv + 1, argv + argc);
  int failed = 0;
  auto results = wpa::run_acceptance(only, [&](const wpa::AcceptanceResult& r) {
    std::printf("criterion %2d %-18s %s (%.2fs) %s\n", r.id, r.name.c_str(), r.pass ? "PASS" : "FAIL", r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  });
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}
