#pragma once

// Structured run reports. Reports serialize to JSON with a fixed key
// order and no timing or host information, so identical configurations
// and seeds produce byte-identical files.

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace fflab {

inline constexpr const char* kVersion = "1.0.0";

using ordered_json = nlohmann::ordered_json;

// Fixed-format double rendering shared by reports and CSV output.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct CheckResult {
    std::string name;
    std::string measured;
    std::string expected;
    bool pass = false;
};

struct Report {
    std::string command;
    ordered_json config = ordered_json::object();
    std::vector<CheckResult> checks;
    ordered_json extra = ordered_json::object();

    void add(const std::string& name, const std::string& measured, const std::string& expected,
             bool pass) {
        checks.push_back({name, measured, expected, pass});
    }
    void add_bool(const std::string& name, bool pass) {
        checks.push_back({name, pass ? "true" : "false", "true", pass});
    }

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    ordered_json to_json() const {
        ordered_json j;
        j["version"] = kVersion;
        j["command"] = command;
        j["config"] = config;
        ordered_json arr = ordered_json::array();
        for (const auto& c : checks) {
            ordered_json e;
            e["name"] = c.name;
            e["measured"] = c.measured;
            e["expected"] = c.expected;
            e["pass"] = c.pass;
            arr.push_back(std::move(e));
        }
        j["checks"] = std::move(arr);
        if (!extra.empty()) j["extra"] = extra;
        j["pass"] = pass();
        return j;
    }

    void write_file(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open report file: " + path);
        out << to_json().dump(2) << "\n";
    }
};

}  // namespace fflab
