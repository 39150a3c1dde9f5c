#include "bsvi/report.hpp"

#include <cmath>
#include <cstdio>

namespace bsvi {

namespace {

// %.17g round-trips doubles and is deterministic across runs.
std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

nlohmann::json EstimateReport::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["pass"] = pass;
    j["vacuous"] = vacuous;
    j["tolerance"] = tolerance;
    j["config_hash"] = config_hash;
    j["warnings"] = warnings;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& e : entries) {
        nlohmann::json r;
        r["term"] = e.term;
        r["value"] = e.value;
        r["stderr"] = e.stderr_est;
        if (!e.note.empty()) r["note"] = e.note;
        rows.push_back(r);
    }
    j["entries"] = rows;
    return j;
}

void EstimateReport::write_csv(std::ostream& os) const {
    os << "term,value,stderr\n";
    for (const auto& e : entries)
        os << e.term << ',' << fmt_double(e.value) << ',' << fmt_double(e.stderr_est) << '\n';
    os << "pass," << (pass ? 1 : 0) << ",0\n";
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hash_hex(const std::string& s) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(s)));
    return buf;
}

}  // namespace bsvi
