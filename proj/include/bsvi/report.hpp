#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace bsvi {

// One row of an estimate report: a named scalar with an optional error bar.
struct ReportEntry {
    std::string term;
    double value = 0.0;
    double stderr_est = 0.0;
    std::string note;
};

// Empirical two-sided check of a named inequality. `pass` is the machine
// verdict; `vacuous` flags studies whose premise never became active.
struct EstimateReport {
    std::string name;
    std::vector<ReportEntry> entries;
    bool pass = true;
    bool vacuous = false;
    double tolerance = 0.0;
    std::string config_hash;
    std::vector<std::string> warnings;

    void add(std::string term, double value, double stderr_est = 0.0, std::string note = "") {
        entries.push_back({std::move(term), value, stderr_est, std::move(note)});
    }

    std::optional<double> value_of(const std::string& term) const {
        for (const auto& e : entries)
            if (e.term == term) return e.value;
        return std::nullopt;
    }

    nlohmann::json to_json() const;
    void write_csv(std::ostream& os) const;
};

// Stable 64-bit content hash used to tag reports with their configuration.
std::uint64_t fnv1a64(const std::string& s);
std::string hash_hex(const std::string& s);

}  // namespace bsvi
