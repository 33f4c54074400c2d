#ifndef AGMSTAR_REPORT_HPP
#define AGMSTAR_REPORT_HPP

#include <cstdlib>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "agmstar/detail/format.hpp"
#include "agmstar/errors.hpp"
#include "agmstar/verify.hpp"

namespace agmstar {

enum class report_format { csv, json };

namespace detail {

// Serializers are hand-rolled: the report contract wants a stable field
// order, 17-significant-digit floats and byte-identical output for
// identical inputs, none of which shortest-round-trip JSON printers
// promise.

inline std::string witness_field(const std::vector<double>& w)
{
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            s += ';';
        s += fmt_g17(w[i]);
    }
    return s;
}

inline double parse_double(std::string_view s)
{
    std::string buf(s);
    char* end = nullptr;
    double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || buf.empty())
        throw error("report parse: bad number '" + buf + "'");
    return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(sep, pos);
        if (next == std::string_view::npos) {
            out.push_back(s.substr(pos));
            return out;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
}

} // namespace detail

inline constexpr const char* report_csv_header =
    "identity,samples,max_residual,tolerance,passed,witness";

inline std::string reports_to_csv(std::span<const identity_report> reports)
{
    std::string out = report_csv_header;
    out += '\n';
    for (const identity_report& r : reports) {
        out += to_string(r.id);
        out += ',';
        out += std::to_string(r.samples);
        out += ',';
        out += detail::fmt_g17(r.max_residual);
        out += ',';
        out += detail::fmt_g17(r.tolerance);
        out += ',';
        out += r.passed ? "true" : "false";
        out += ',';
        out += detail::witness_field(r.witness);
        out += '\n';
    }
    return out;
}

inline std::string reports_to_json(std::span<const identity_report> reports)
{
    std::string out = "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const identity_report& r = reports[i];
        out += "  {\"identity\":\"";
        out += to_string(r.id);
        out += "\",\"samples\":";
        out += std::to_string(r.samples);
        out += ",\"max_residual\":";
        out += detail::fmt_g17(r.max_residual);
        out += ",\"tolerance\":";
        out += detail::fmt_g17(r.tolerance);
        out += ",\"passed\":";
        out += r.passed ? "true" : "false";
        out += ",\"witness\":[";
        for (std::size_t k = 0; k < r.witness.size(); ++k) {
            if (k)
                out += ',';
            out += detail::fmt_g17(r.witness[k]);
        }
        out += "]}";
        out += i + 1 < reports.size() ? ",\n" : "\n";
    }
    out += "]\n";
    return out;
}

inline std::string serialize_reports(std::span<const identity_report> reports, report_format fmt)
{
    return fmt == report_format::csv ? reports_to_csv(reports) : reports_to_json(reports);
}

inline std::vector<identity_report> reports_from_csv(std::string_view text)
{
    std::vector<identity_report> out;
    bool saw_header = false;
    for (std::string_view line : detail::split(text, '\n')) {
        if (line.empty())
            continue;
        if (!saw_header) {
            if (line != report_csv_header)
                throw error("report parse: unexpected CSV header");
            saw_header = true;
            continue;
        }
        auto fields = detail::split(line, ',');
        if (fields.size() != 6)
            throw error("report parse: expected 6 CSV fields, got " +
                        std::to_string(fields.size()));
        identity_report r;
        auto id = identity_from_string(fields[0]);
        if (!id)
            throw error("report parse: unknown identity '" + std::string(fields[0]) + "'");
        r.id = *id;
        r.samples = static_cast<int>(detail::parse_double(fields[1]));
        r.max_residual = detail::parse_double(fields[2]);
        r.tolerance = detail::parse_double(fields[3]);
        if (fields[4] == "true")
            r.passed = true;
        else if (fields[4] == "false")
            r.passed = false;
        else
            throw error("report parse: bad passed flag '" + std::string(fields[4]) + "'");
        if (!fields[5].empty())
            for (std::string_view w : detail::split(fields[5], ';'))
                r.witness.push_back(detail::parse_double(w));
        out.push_back(std::move(r));
    }
    if (!saw_header)
        throw error("report parse: empty CSV input");
    return out;
}

inline std::vector<identity_report> reports_from_json(std::string_view text)
{
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_array())
        throw error("report parse: JSON root must be an array");
    std::vector<identity_report> out;
    for (const auto& item : j) {
        identity_report r;
        auto id = identity_from_string(item.at("identity").get<std::string>());
        if (!id)
            throw error("report parse: unknown identity in JSON");
        r.id = *id;
        r.samples = item.at("samples").get<int>();
        r.max_residual = item.at("max_residual").get<double>();
        r.tolerance = item.at("tolerance").get<double>();
        r.passed = item.at("passed").get<bool>();
        for (const auto& w : item.at("witness"))
            r.witness.push_back(w.get<double>());
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<identity_report> parse_reports(std::string_view text, report_format fmt)
{
    return fmt == report_format::csv ? reports_from_csv(text) : reports_from_json(text);
}

} // namespace agmstar

#endif
