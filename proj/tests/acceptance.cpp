// Runs every acceptance criterion through the C interface and prints one
// PASS/FAIL line per criterion.
#include <cstdio>
#include <cstdlib>

#include "stargraph/stargraph.h"

int main(int argc, char** argv) {
  const unsigned long long seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
  const int threads = argc > 2 ? std::atoi(argv[2]) : 0;
  int failures = 0;
  const int count = sg_selfcheck_count();
  for (int id = 1; id <= count; ++id) {
    sg_check_result r{};
    const sg_status status = sg_selfcheck_run(id, seed, threads, &r);
    if (status != SG_OK) {
      std::printf("FAIL %2d  %s\n", id, sg_last_error());
      ++failures;
      continue;
    }
    std::printf("%s %2d %-46s value=%-12.6g threshold=%-12.6g (%.2f s) %s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.name, r.value, r.threshold, r.seconds, r.detail);
    std::fflush(stdout);
    if (!r.passed) ++failures;
  }
  std::printf("%d of %d criteria passed\n", count - failures, count);
  return failures == 0 ? 0 : 1;
}
