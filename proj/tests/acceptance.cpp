#include <cstdio>

#include "qh/verify.hpp"

int main() {
  bool all = true;
  for (int id : qh::check_ids()) {
    auto r = qh::run_check(id);
    all = all && r.ok;
    std::printf("%s [%d] %s (%.1fs): %s\n", r.ok ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
