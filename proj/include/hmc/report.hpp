// SPDX-License-Identifier: Apache-2.0
//
// Run reports (JSON) and bulk coefficient output (CSV).

#pragma once

#include <charconv>
#include <cmath>
#include <chrono>
#include <complex>
#include <cstddef>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hmc/common.hpp"
#include "hmc/stats.hpp"

namespace hmc {

inline constexpr int kReportSchemaVersion = 1;

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// 17 significant digits, locale independent.
inline std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return {buf, res.ptr};
}

inline std::string iso_timestamp(std::chrono::system_clock::time_point t)
{
    const std::time_t tt = std::chrono::system_clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct NamedEstimate {
    std::string name;
    EstimateWithError estimate;
    std::optional<double> target;
};

struct NamedVerdict {
    std::string name;
    TestVerdict verdict;
    std::string detail;
};

struct RunReport {
    std::string command;
    std::map<std::string, std::string> params;
    std::string started;
    std::string finished;
    std::vector<NamedEstimate> estimates;
    std::vector<NamedVerdict> verdicts;
    std::vector<std::string> artifact_paths;

    void start() { started = iso_timestamp(std::chrono::system_clock::now()); }
    void finish() { finished = iso_timestamp(std::chrono::system_clock::now()); }

    [[nodiscard]] bool all_pass() const
    {
        for (const auto& v : verdicts) {
            if (!v.verdict.pass) {
                return false;
            }
        }
        return true;
    }

    /// Non-finite numbers become null.
    [[nodiscard]] nlohmann::ordered_json to_json() const
    {
        using nlohmann::ordered_json;
        auto num = [](double x) {
            return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr);
        };
        ordered_json j;
        j["schema_version"] = kReportSchemaVersion;
        j["command"] = command;
        j["params"] = ordered_json::object();
        for (const auto& [k, v] : params) {
            j["params"][k] = v;
        }
        j["started"] = started;
        j["finished"] = finished;
        j["estimates"] = ordered_json::array();
        for (const auto& e : estimates) {
            ordered_json o;
            o["name"] = e.name;
            o["value"] = num(e.estimate.value);
            o["se"] = num(e.estimate.se);
            o["n_samples"] = e.estimate.n_samples;
            if (e.target) {
                o["target"] = num(*e.target);
            }
            j["estimates"].push_back(o);
        }
        j["verdicts"] = ordered_json::array();
        for (const auto& v : verdicts) {
            ordered_json o;
            o["name"] = v.name;
            o["statistic"] = num(v.verdict.statistic);
            o["p_value"] = num(v.verdict.p_value);
            o["threshold"] = num(v.verdict.threshold);
            o["pass"] = v.verdict.pass;
            if (!v.detail.empty()) {
                o["detail"] = v.detail;
            }
            j["verdicts"].push_back(o);
        }
        j["artifact_paths"] = artifact_paths;
        j["pass"] = all_pass();
        return j;
    }

    void write(const std::filesystem::path& path) const
    {
        std::ofstream out(path);
        if (!out) {
            throw IoError("cannot open report file " + path.string());
        }
        out << to_json().dump(2) << '\n';
        if (!out) {
            throw IoError("failed writing report file " + path.string());
        }
    }
};

/// Rows replica,index,re,im. rows[r][i] is written with index = first_index + i.
inline void write_coefficient_csv(const std::filesystem::path& path, const std::vector<std::vector<Complex>>& rows,
                                  std::size_t first_index = 0)
{
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open output file " + path.string());
    }
    out << "replica,index,re,im\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t i = 0; i < rows[r].size(); ++i) {
            out << r << ',' << first_index + i << ',' << format_double(rows[r][i].real()) << ','
                << format_double(rows[r][i].imag()) << '\n';
        }
    }
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

}  // namespace hmc
