#ifndef AGMSTAR_BATCH_HPP
#define AGMSTAR_BATCH_HPP

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "agmstar/config.hpp"
#include "agmstar/elliptic.hpp"
#include "agmstar/report.hpp"
#include "agmstar/star.hpp"
#include "agmstar/theta.hpp"

namespace agmstar {

/// One batch line after evaluation. Inputs are echoed; a row that failed
/// to parse or compute carries the message in `error` and never aborts
/// the rest of the batch.
struct batch_outcome {
    std::string operation;
    std::vector<double> operands;
    std::optional<double> result;
    std::string backend;               // star rows only
    std::optional<double> residual;    // star rows only
    std::string error;
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline int batch_arity(std::string_view op)
{
    if (op == "theta" || op == "inverse")
        return 1;
    if (op == "agm" || op == "star" || op == "solve" || op == "elliptic")
        return 2;
    return -1;
}

} // namespace detail

/// Evaluate comma-separated request lines "operation,operand[,operand]".
/// Blank lines and lines starting with '#' are ignored; output order
/// matches input order.
inline std::vector<batch_outcome> run_batch(std::string_view text,
                                            const tolerance_config& cfg = {})
{
    std::vector<batch_outcome> out;
    for (std::string_view raw : detail::split(text, '\n')) {
        std::string_view line = detail::trim(raw);
        if (line.empty() || line.front() == '#')
            continue;

        batch_outcome row;
        auto fields = detail::split(line, ',');
        row.operation = std::string(detail::trim(fields[0]));
        try {
            int arity = detail::batch_arity(row.operation);
            if (arity < 0)
                throw error("unknown operation '" + row.operation + "'");
            if (static_cast<int>(fields.size()) - 1 != arity)
                throw error(row.operation + " takes " + std::to_string(arity) +
                            " operand(s), got " + std::to_string(fields.size() - 1));
            for (std::size_t i = 1; i < fields.size(); ++i)
                row.operands.push_back(detail::parse_double(detail::trim(fields[i])));

            if (row.operation == "agm") {
                row.result = agm(row.operands[0], row.operands[1], cfg);
            } else if (row.operation == "star") {
                star_result r = star(row.operands[0], row.operands[1], star_method::automatic, cfg);
                row.result = r.value;
                row.backend = to_string(r.backend);
                row.residual = r.residual;
            } else if (row.operation == "theta") {
                row.result = theta(row.operands[0], cfg);
            } else if (row.operation == "inverse") {
                row.result = star_inverse(row.operands[0], cfg);
            } else if (row.operation == "solve") {
                row.result = solve_right(row.operands[0], row.operands[1], cfg);
            } else { // elliptic
                row.result = elliptic_integral(row.operands[0], row.operands[1], cfg);
            }
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        out.push_back(std::move(row));
    }
    return out;
}

inline constexpr const char* batch_csv_header = "operation,x,y,result,backend,residual,error";

inline std::string batch_to_csv(std::span<const batch_outcome> rows)
{
    std::string out = batch_csv_header;
    out += '\n';
    for (const batch_outcome& r : rows) {
        out += r.operation;
        out += ',';
        out += r.operands.size() > 0 ? detail::fmt_g17(r.operands[0]) : "";
        out += ',';
        out += r.operands.size() > 1 ? detail::fmt_g17(r.operands[1]) : "";
        out += ',';
        out += r.result ? detail::fmt_g17(*r.result) : "";
        out += ',';
        out += r.backend;
        out += ',';
        out += r.residual ? detail::fmt_g17(*r.residual) : "";
        out += ',';
        // keep the CSV grid rectangular: no commas or newlines in messages
        for (char c : r.error)
            out += (c == ',' || c == '\n') ? ';' : c;
        out += '\n';
    }
    return out;
}

inline std::string batch_to_json(std::span<const batch_outcome> rows)
{
    std::string out = "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const batch_outcome& r = rows[i];
        out += "  {\"operation\":";
        out += nlohmann::json(r.operation).dump();
        out += ",\"operands\":[";
        for (std::size_t k = 0; k < r.operands.size(); ++k) {
            if (k)
                out += ',';
            out += detail::fmt_g17(r.operands[k]);
        }
        out += "],\"result\":";
        out += r.result ? detail::fmt_g17(*r.result) : "null";
        out += ",\"backend\":";
        out += r.backend.empty() ? "null" : nlohmann::json(r.backend).dump();
        out += ",\"residual\":";
        out += r.residual ? detail::fmt_g17(*r.residual) : "null";
        out += ",\"error\":";
        out += r.error.empty() ? "null" : nlohmann::json(r.error).dump();
        out += "}";
        out += i + 1 < rows.size() ? ",\n" : "\n";
    }
    out += "]\n";
    return out;
}

} // namespace agmstar

#endif
