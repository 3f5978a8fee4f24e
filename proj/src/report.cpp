#include "meanlab/report.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "meanlab/kahan.hpp"

namespace meanlab {

void ExperimentReport::set_theoretical_from_components() {
    KahanSum s;
    for (const auto& [k, v] : components) s.add(v);
    theoretical = s.result();
}

void ExperimentReport::finalize_ratio() {
    ratio = theoretical != 0.0 ? empirical / theoretical
                               : std::numeric_limits<double>::quiet_NaN();
}

std::string ExperimentReport::to_json(int indent) const {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["name"] = name;
    j["params"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : params) j["params"][k] = v;
    for (const auto& [k, v] : params_text) j["params"][k] = v;
    j["empirical"] = empirical;
    j["theoretical"] = nlohmann::ordered_json::object();
    j["theoretical"]["total"] = theoretical;
    j["theoretical"]["components"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : components) j["theoretical"]["components"][k] = v;
    if (std::isnan(ratio))
        j["ratio"] = nullptr;
    else
        j["ratio"] = ratio;
    j["error_budget"] = error_budget;
    j["runtime_s"] = runtime_s;
    j["artifacts"] = artifacts;
    if (!rows.empty()) {
        j["rows"] = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
            nlohmann::ordered_json r = nlohmann::ordered_json::object();
            for (const auto& [k, v] : row) r[k] = v;
            j["rows"].push_back(r);
        }
    }
    return j.dump(indent);
}

void ExperimentReport::write_json(const std::string& path, int indent) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_json: cannot open " + path);
    out << to_json(indent) << '\n';
}

}  // namespace meanlab
