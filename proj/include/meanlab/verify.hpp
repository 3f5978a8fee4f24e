#pragma once

#include <functional>
#include <string>
#include <vector>

#include "meanlab/zeros.hpp"

namespace meanlab {

// Returns a certified table of at least this height, consulting/populating
// the cache directory when one is given (keyed by height and format version).
ZeroTable cached_zero_table(double height, const std::string& cache_dir);

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double runtime_s = 0.0;
};

struct VerifyOptions {
    std::string report_dir;   // empty -> no JSON dumps
    std::string cache_dir;    // empty -> no zero-table cache
    std::function<void(const CriterionResult&)> on_result;  // per-criterion callback
};

// Runs the full acceptance suite (criteria 1-10); returns per-criterion
// results. Every tolerance is pinned here.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts);

bool all_passed(const std::vector<CriterionResult>& rs);

}  // namespace meanlab
