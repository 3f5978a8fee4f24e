#pragma once

#include <map>
#include <string>
#include <vector>

namespace meanlab {

// A driver run: parameters, the measured quantity, the predicted main
// term(s), and the instantiated error budget. `theoretical` always equals
// the sum of `components` when components are present.
struct ExperimentReport {
    std::string name;
    std::map<std::string, double> params;
    std::map<std::string, std::string> params_text;
    double empirical = 0.0;
    double theoretical = 0.0;
    std::map<std::string, double> components;
    double ratio = 0.0;  // empirical / theoretical where theoretical != 0
    std::string error_budget;
    double runtime_s = 0.0;
    std::vector<std::string> artifacts;
    // Extra per-row output (tail sweeps, per-sample stats); serialized as-is.
    std::vector<std::map<std::string, double>> rows;

    void set_theoretical_from_components();
    void finalize_ratio();
    // Schema-1 JSON. Key order is fixed; byte-identical for identical inputs
    // apart from runtime_s.
    std::string to_json(int indent = 2) const;
    void write_json(const std::string& path, int indent = 2) const;
};

}  // namespace meanlab
