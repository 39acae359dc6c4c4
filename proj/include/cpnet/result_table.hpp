// result_table.hpp -- experiment output rows with CSV/report emission.
#pragma once

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace cpnet {

// shortest round-trip-safe decimal form of a double
inline std::string format_double(double x) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

enum class Verdict { Pass, Fail, Informational };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        default: return "informational";
    }
}

struct ResultRow {
    std::string point;     // parameter point / claim label
    double estimate = 0.0;
    double se = 0.0;
    double target = 0.0;
    std::string band;      // human-readable acceptance band
    Verdict verdict = Verdict::Informational;
};

struct ResultTable {
    std::string experiment;
    std::uint64_t seed = 0;
    std::string config_hash;
    double wall_seconds = 0.0;  // manifest-only; never serialized to CSV
    std::vector<ResultRow> rows;

    bool passed() const {
        for (const auto& r : rows)
            if (r.verdict == Verdict::Fail) return false;
        return true;
    }

    std::string to_csv() const {
        std::ostringstream os;
        os << "# experiment=" << experiment << " seed=" << seed
           << " config_hash=" << config_hash << '\n';
        os << "point,estimate,se,target,band,verdict\n";
        for (const auto& r : rows)
            os << r.point << ',' << format_double(r.estimate) << ','
               << format_double(r.se) << ',' << format_double(r.target) << ','
               << r.band << ',' << to_string(r.verdict) << '\n';
        return os.str();
    }

    std::string report() const {
        std::ostringstream os;
        os << "experiment: " << experiment << "\nseed: " << seed
           << "\nconfig_hash: " << config_hash << "\n\n";
        for (const auto& r : rows)
            os << "  [" << to_string(r.verdict) << "] " << r.point
               << "  estimate=" << format_double(r.estimate)
               << " se=" << format_double(r.se)
               << " target=" << format_double(r.target)
               << " band=" << r.band << '\n';
        os << "\noverall: " << (passed() ? "PASS" : "FAIL") << '\n';
        return os.str();
    }
};

// FNV-1a hash of a configuration string, hex-formatted
inline std::string config_hash(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hex[h & 0xF];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

}  // namespace cpnet
