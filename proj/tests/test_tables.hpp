#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "meanlab/arith.hpp"
#include "meanlab/zeros.hpp"

// Shared test fixtures: zero tables and arithmetic tables are built once per
// process at a few fixed heights and reused across cases.
namespace testbed {

inline const meanlab::ZeroTable& zeros_to(double min_height) {
    static std::mutex mu;
    static std::map<double, std::unique_ptr<meanlab::ZeroTable>> cache;
    double tier = 2100.0;
    if (min_height > 200060.0) throw std::runtime_error("testbed: no tier that high");
    if (min_height > 21000.0)
        tier = 200060.0;
    else if (min_height > 2100.0)
        tier = 21000.0;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[tier];
    if (!slot) slot = std::make_unique<meanlab::ZeroTable>(meanlab::locate_zeros(tier));
    return *slot;
}

inline const meanlab::ArithTables& arith_to(std::uint64_t min_limit) {
    static std::mutex mu;
    static std::map<std::uint64_t, std::unique_ptr<meanlab::ArithTables>> cache;
    std::uint64_t tier = 1 << 20;
    if (min_limit > (1u << 20)) tier = 4'100'000;
    if (min_limit > 4'100'000) throw std::runtime_error("testbed: arith tier too high");
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[tier];
    if (!slot) slot = std::make_unique<meanlab::ArithTables>(meanlab::ArithTables::build(tier));
    return *slot;
}

}  // namespace testbed
