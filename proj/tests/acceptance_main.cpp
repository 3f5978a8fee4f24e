// Acceptance suite: one pass/fail line per criterion; nonzero exit on any
// failure. Runs the same driver as `meanlab verify-all`.
#include <algorithm>
#include <cstdio>
#include <cstdlib>

#include "meanlab/verify.hpp"

int main() {
    meanlab::VerifyOptions opts;
    if (const char* env = std::getenv("MEANLAB_CACHE")) opts.cache_dir = env;
    opts.on_result = [](const meanlab::CriterionResult& r) {
        std::printf("[%s] criterion %2d %-18s (%.1fs) %s\n", r.pass ? "PASS" : "FAIL", r.index,
                    r.name.c_str(), r.runtime_s, r.detail.c_str());
        std::fflush(stdout);
    };
    const auto results = meanlab::run_acceptance(opts);
    const bool ok = meanlab::all_passed(results);
    std::printf("%s: %zu/%zu criteria passed\n", ok ? "SUCCESS" : "FAILURE",
                static_cast<std::size_t>(
                    std::count_if(results.begin(), results.end(),
                                  [](const auto& r) { return r.pass; })),
                results.size());
    return ok ? 0 : 1;
}
