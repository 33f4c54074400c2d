// Command-line surface for the AGM star-operation library: scalar
// commands, the identity verification suite and CSV batch evaluation.
//
// Exit codes: 0 success; 1 verification found failing identities;
// 2 domain/parse/I-O errors; 3 convergence failures; 4 a forced backend
// refused the operands.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "agmstar/agmstar.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_domain = 2;
constexpr int exit_convergence = 3;
constexpr int exit_backend_domain = 4;

struct cli_options {
    double tolerance = 0.0; // 0 = library defaults
    int max_iter = 0;
};

enum class tolerance_kind { agm_phase, root_phase, series_phase };

agmstar::tolerance_config make_config(const cli_options& o, tolerance_kind kind)
{
    agmstar::tolerance_config cfg;
    if (o.tolerance > 0.0) {
        switch (kind) {
        case tolerance_kind::agm_phase:
            cfg.agm_rel_tol = o.tolerance;
            cfg.quad_tol = o.tolerance;
            break;
        case tolerance_kind::root_phase:
            cfg.root_abs_tol = o.tolerance;
            break;
        case tolerance_kind::series_phase:
            cfg.series_eps = o.tolerance;
            break;
        }
    }
    if (o.max_iter > 0)
        cfg.max_iter = o.max_iter;
    return cfg;
}

void print_value(double v)
{
    std::printf("%s\n", agmstar::detail::fmt_g17(v).c_str());
}

// Returns the process exit code for an exception thrown by a command.
// forced_backend widens the domain-overflow mapping to exit code 4.
int classify(const std::exception& e, bool forced_backend)
{
    if (dynamic_cast<const agmstar::hypergeom_domain*>(&e))
        return exit_backend_domain;
    if (dynamic_cast<const agmstar::domain_overflow*>(&e))
        return forced_backend ? exit_backend_domain : exit_domain;
    if (dynamic_cast<const agmstar::non_positive_input*>(&e))
        return exit_domain;
    if (dynamic_cast<const agmstar::max_iterations_exceeded*>(&e) ||
        dynamic_cast<const agmstar::quadrature_not_converged*>(&e) ||
        dynamic_cast<const agmstar::bracket_failure*>(&e))
        return exit_convergence;
    return exit_domain;
}

template <class Fn>
int run_command(bool forced_backend, Fn&& fn)
{
    try {
        return fn();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return classify(e, forced_backend);
    }
}

std::optional<std::string> read_all(const std::string& path)
{
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool write_output(const std::string& path, const std::string& data)
{
    if (path.empty() || path == "-") {
        std::fwrite(data.data(), 1, data.size(), stdout);
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        return false;
    out << data;
    return bool(out);
}

agmstar::sample_grid grid_from_file(const std::string& path)
{
    auto text = read_all(path);
    if (!text)
        throw agmstar::error("cannot read grid file '" + path + "'");
    agmstar::sample_grid g;
    g.generator = agmstar::grid_generator::log_grid;
    for (std::string_view raw : agmstar::detail::split(*text, '\n')) {
        std::string_view line = agmstar::detail::trim(raw);
        if (line.empty() || line.front() == '#')
            continue;
        std::vector<double> tuple;
        for (std::string_view f : agmstar::detail::split(line, ','))
            tuple.push_back(agmstar::detail::parse_double(agmstar::detail::trim(f)));
        g.points.push_back(std::move(tuple));
    }
    return g;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Gauss AGM star operation: x (star) y is the value whose "
                 "agm with 1 equals agm(x, y)"};
    app.require_subcommand(1);

    cli_options opt;
    // numeric flags accept decimal and exponent notation via CLI11's
    // double parsing

    double x = 0.0, y = 0.0, q = 0.0, z = 0.0;
    std::string method = "auto";
    bool diagnostics = false;
    std::string format = "csv";
    std::string output;
    std::string grid_spec = "default";
    std::uint64_t seed = agmstar::default_grid_seed;
    double verify_tolerance = 0.0;
    std::string batch_input = "-";
    std::string elliptic_method = "agm";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--tolerance", opt.tolerance,
                        "convergence tolerance for the command's iterative phases");
        cmd->add_option("--max-iter", opt.max_iter, "iteration cap per phase");
    };

    CLI::App* c_agm = app.add_subcommand("agm", "arithmetic-geometric mean of x and y");
    c_agm->add_option("x", x)->required();
    c_agm->add_option("y", y)->required();
    add_common(c_agm);

    CLI::App* c_star = app.add_subcommand("star", "the star operation x (star) y");
    c_star->add_option("x", x)->required();
    c_star->add_option("y", y)->required();
    c_star->add_option("--method", method, "auto|theta|agm-inverse|hypergeom")
        ->check(CLI::IsMember({"auto", "theta", "agm-inverse", "hypergeom"}));
    c_star->add_flag("--diagnostics", diagnostics, "print the full computation record as JSON");
    add_common(c_star);

    CLI::App* c_theta = app.add_subcommand("theta", "Jacobi theta series theta(q)");
    c_theta->add_option("q", q)->required();
    add_common(c_theta);

    CLI::App* c_inverse = app.add_subcommand("inverse", "inverse element of x under star");
    c_inverse->add_option("x", x)->required();
    add_common(c_inverse);

    CLI::App* c_solve = app.add_subcommand("solve", "solve star(x, y) = z for y");
    c_solve->add_option("x", x)->required();
    c_solve->add_option("z", z)->required();
    add_common(c_solve);

    CLI::App* c_elliptic = app.add_subcommand("elliptic", "complete elliptic integral of (x, y)");
    c_elliptic->add_option("x", x)->required();
    c_elliptic->add_option("y", y)->required();
    c_elliptic->add_option("--method", elliptic_method, "agm|quadrature")
        ->check(CLI::IsMember({"agm", "quadrature"}));
    add_common(c_elliptic);

    CLI::App* c_verify = app.add_subcommand("verify", "run the identity verification suite");
    c_verify->add_option("--grid", grid_spec, "'default' or a CSV file of operand tuples");
    c_verify->add_option("--seed", seed, "seed for the default grid's random tuples");
    c_verify->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    c_verify->add_option("--output", output, "report path (stdout when omitted)");
    c_verify->add_option("--tolerance", verify_tolerance,
                         "override every per-identity pass tolerance");
    c_verify->add_option("--max-iter", opt.max_iter, "iteration cap per phase");

    CLI::App* c_batch = app.add_subcommand("batch", "evaluate operation,operand[,operand] lines");
    c_batch->add_option("input", batch_input, "input file ('-' for stdin)");
    c_batch->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    c_batch->add_option("--output", output, "output path (stdout when omitted)");
    add_common(c_batch);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_domain;
    }

    if (c_agm->parsed())
        return run_command(false, [&] {
            print_value(agmstar::agm(x, y, make_config(opt, tolerance_kind::agm_phase)));
            return exit_ok;
        });

    if (c_star->parsed()) {
        bool forced = method != "auto";
        return run_command(forced, [&] {
            agmstar::star_method m = agmstar::star_method::automatic;
            if (method == "theta")
                m = agmstar::star_method::theta;
            else if (method == "agm-inverse")
                m = agmstar::star_method::agm_inverse;
            else if (method == "hypergeom")
                m = agmstar::star_method::hypergeometric;
            agmstar::star_result r = agmstar::star(x, y, m, make_config(opt, tolerance_kind::root_phase));
            if (diagnostics) {
                using agmstar::detail::fmt_g17;
                std::string nome = std::isnan(r.nome) ? "null" : fmt_g17(r.nome);
                std::printf("{\"value\":%s,\"mean\":%s,\"nome\":%s,\"backend\":\"%s\","
                            "\"iterations\":%d,\"residual\":%s}\n",
                            fmt_g17(r.value).c_str(), fmt_g17(r.mean).c_str(), nome.c_str(),
                            to_string(r.backend), r.iterations, fmt_g17(r.residual).c_str());
            } else {
                print_value(r.value);
            }
            return exit_ok;
        });
    }

    if (c_theta->parsed())
        return run_command(false, [&] {
            print_value(agmstar::theta(q, make_config(opt, tolerance_kind::series_phase)));
            return exit_ok;
        });

    if (c_inverse->parsed())
        return run_command(false, [&] {
            print_value(agmstar::star_inverse(x, make_config(opt, tolerance_kind::root_phase)));
            return exit_ok;
        });

    if (c_solve->parsed())
        return run_command(false, [&] {
            print_value(agmstar::solve_right(x, z, make_config(opt, tolerance_kind::root_phase)));
            return exit_ok;
        });

    if (c_elliptic->parsed())
        return run_command(false, [&] {
            auto cfg = make_config(opt, tolerance_kind::agm_phase);
            print_value(elliptic_method == "agm"
                            ? agmstar::elliptic_integral(x, y, cfg)
                            : agmstar::elliptic_integral_quadrature(x, y, cfg));
            return exit_ok;
        });

    if (c_verify->parsed())
        return run_command(false, [&] {
            agmstar::sample_grid grid =
                grid_spec == "default" ? agmstar::default_grid(seed) : grid_from_file(grid_spec);
            std::optional<double> tol_override;
            if (verify_tolerance != 0.0)
                tol_override = verify_tolerance;
            agmstar::tolerance_config cfg;
            if (opt.max_iter > 0)
                cfg.max_iter = opt.max_iter;
            auto reports = agmstar::run_suite(grid, cfg, tol_override);
            auto fmt = format == "csv" ? agmstar::report_format::csv : agmstar::report_format::json;
            if (!write_output(output, agmstar::serialize_reports(reports, fmt))) {
                std::fprintf(stderr, "error: cannot write report to '%s'\n", output.c_str());
                return exit_domain;
            }
            for (const auto& r : reports)
                if (!r.passed)
                    return exit_verify_failed;
            return exit_ok;
        });

    if (c_batch->parsed())
        return run_command(false, [&] {
            auto text = read_all(batch_input);
            if (!text) {
                std::fprintf(stderr, "error: cannot read batch input '%s'\n", batch_input.c_str());
                return exit_domain;
            }
            auto rows = agmstar::run_batch(*text, make_config(opt, tolerance_kind::root_phase));
            std::string rendered = format == "csv" ? agmstar::batch_to_csv(rows)
                                                   : agmstar::batch_to_json(rows);
            if (!write_output(output, rendered)) {
                std::fprintf(stderr, "error: cannot write batch output to '%s'\n", output.c_str());
                return exit_domain;
            }
            return exit_ok;
        });

    return exit_domain; // unreachable: a subcommand is required
}
