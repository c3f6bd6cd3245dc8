#ifndef TDFF_IO_REPORT_HPP
#define TDFF_IO_REPORT_HPP

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tdff/errors.hpp"
#include "tdff/eval.hpp"

namespace tdff::io {

inline std::string format_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

/// Human-readable key/value report. Aggregates use the usual
/// mean±std convention at three decimals; per-split values keep six.
inline void write_report_text(std::ostream& os, const MetricReport& report) {
    char buf[64];
    for (const auto& split : report.per_split) {
        for (const auto& [key, value] : split.values) {
            std::snprintf(buf, sizeof(buf), "%.6f", value);
            os << "split " << split.split_id << ' ' << key << ' ' << buf << '\n';
        }
    }
    for (const auto& [key, ms] : report.aggregate) {
        std::snprintf(buf, sizeof(buf), "%.3f±%.3f", ms.mean, ms.std);
        os << "aggregate " << key << ' ' << buf << '\n';
    }
}

inline void write_report_text(const std::string& path, const MetricReport& report) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path);
    write_report_text(os, report);
}

inline nlohmann::json report_to_json(const MetricReport& report) {
    nlohmann::json j;
    j["splits"] = nlohmann::json::array();
    for (const auto& split : report.per_split) {
        nlohmann::json s;
        s["split_id"] = split.split_id;
        s["metrics"] = nlohmann::json::object();
        for (const auto& [key, value] : split.values) s["metrics"][key] = value;
        j["splits"].push_back(std::move(s));
    }
    j["aggregate"] = nlohmann::json::object();
    for (const auto& [key, ms] : report.aggregate) {
        j["aggregate"][key] = {{"mean", ms.mean}, {"std", ms.std}};
    }
    return j;
}

inline void write_report_json(const std::string& path, const MetricReport& report) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << report_to_json(report).dump(2) << '\n';
}

inline void write_roc_csv(const std::string& path, const std::vector<RocPoint>& roc) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path);
    char buf[128];
    os << "threshold,far,tar\n";
    for (const RocPoint& p : roc) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g", p.threshold, p.far, p.tar);
        os << buf << '\n';
    }
}

inline void write_cmc_csv(const std::string& path, const std::vector<double>& cmc) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path);
    char buf[64];
    os << "rank,accuracy\n";
    for (std::size_t k = 0; k < cmc.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g", k + 1, cmc[k]);
        os << buf << '\n';
    }
}

}  // namespace tdff::io

#endif  // TDFF_IO_REPORT_HPP
