#include "meancross/cli.hpp"

#include "meancross/errors.hpp"
#include "meancross/minimizers.hpp"
#include "meancross/records.hpp"
#include "meancross/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace meancross::cli {
namespace {

struct Common {
    std::string format = "text";
    std::string out_path;
};

struct MinimizeArgs {
    std::string family;
    double kappa = 0.0;
};

struct SweepArgs {
    std::string family;
    double kappa_min = 0.0;
    double kappa_max = 0.0;
    int steps = 10;
    std::string scale = "linear";
};

struct VerifyArgs {
    std::string family;
    double kappa = 0.0;
    std::optional<double> alpha;
    std::optional<double> theta;
    std::optional<double> a;
    std::uint64_t mc = 1'000'000;
    std::uint64_t seed = 42;
    unsigned workers = 1;
    std::size_t grid_steps = 500'000;
    double grid_tol = 1e-8;
    bool no_grid = false;
};

struct ChvatalRow {
    std::int64_t n;
    std::int64_t m_star;
    std::int64_t nearest;
    double q_m_star;
    std::vector<std::int64_t> ties;
    [[nodiscard]] bool match() const noexcept { return m_star == nearest; }
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json", "text"}));
    sub->add_option("--out", c.out_path, "Output file (default stdout)");
}

void emit_records(std::ostream& out, const std::string& format, const std::vector<OutputRecord>& rows) {
    if (format == "csv") {
        write_csv(out, rows);
    } else if (format == "json") {
        write_json(out, rows);
    } else {
        write_text(out, rows);
    }
}

nlohmann::json opt_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

std::string opt_cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; }

std::string check_word(bool ok) { return ok ? "pass" : "fail"; }

void emit_report(std::ostream& out, const std::string& format, const verify::VerificationReport& r,
                 const VerifyArgs& args) {
    const std::string grid = r.passed.grid ? check_word(*r.passed.grid) : std::string{};
    if (format == "json") {
        nlohmann::json j = {{"family", std::string(family_name(r.family))},
                            {"kappa", r.kappa},
                            {"closed_form", r.closed_form},
                            {"quadrature", r.quadrature},
                            {"quadrature_err_est", r.quadrature_err_est},
                            {"mc_estimate", r.mc_estimate},
                            {"mc_half_width", r.mc_half_width},
                            {"mc_samples", args.mc},
                            {"seed", args.seed},
                            {"grid_argmin", opt_json(r.grid_argmin)},
                            {"grid_value", opt_json(r.grid_value)},
                            {"minimizer_argmin", opt_json(r.minimizer_argmin)},
                            {"minimizer_value", opt_json(r.minimizer_value)},
                            {"grid_step", opt_json(r.grid_step)},
                            {"quadrature_check", check_word(r.passed.quadrature)},
                            {"monte_carlo_check", check_word(r.passed.monte_carlo)},
                            {"grid_check", r.passed.grid ? nlohmann::json(grid) : nlohmann::json(nullptr)},
                            {"passed", r.all_passed()}};
        out << nlohmann::json::array({j}).dump(2) << '\n';
        return;
    }
    if (format == "csv") {
        out << "family,kappa,closed_form,quadrature,quadrature_err_est,mc_estimate,mc_half_width,mc_samples,seed,"
               "grid_argmin,grid_value,minimizer_argmin,minimizer_value,grid_step,quadrature_check,monte_carlo_check,"
               "grid_check,passed\n";
        out << family_name(r.family) << ',' << format_number(r.kappa) << ',' << format_number(r.closed_form) << ','
            << format_number(r.quadrature) << ',' << format_number(r.quadrature_err_est) << ','
            << format_number(r.mc_estimate) << ',' << format_number(r.mc_half_width) << ',' << args.mc << ','
            << args.seed << ',' << opt_cell(r.grid_argmin) << ',' << opt_cell(r.grid_value) << ','
            << opt_cell(r.minimizer_argmin) << ',' << opt_cell(r.minimizer_value) << ',' << opt_cell(r.grid_step)
            << ',' << check_word(r.passed.quadrature) << ',' << check_word(r.passed.monte_carlo) << ',' << grid << ','
            << (r.all_passed() ? "true" : "false") << '\n';
        return;
    }
    out << "family: " << family_name(r.family) << '\n'
        << "kappa: " << format_number(r.kappa) << '\n'
        << "closed_form: " << format_number(r.closed_form) << '\n'
        << "quadrature: " << format_number(r.quadrature) << " (err_est " << format_number(r.quadrature_err_est)
        << ") " << check_word(r.passed.quadrature) << '\n'
        << "monte_carlo: " << format_number(r.mc_estimate) << " +/- " << format_number(r.mc_half_width) << " ("
        << args.mc << " samples, seed " << args.seed << ") " << check_word(r.passed.monte_carlo) << '\n';
    if (r.passed.grid) {
        out << "grid: argmin " << format_number(*r.grid_argmin) << " value " << format_number(*r.grid_value)
            << " step " << format_number(*r.grid_step) << " vs minimizer argmin "
            << format_number(*r.minimizer_argmin) << " value " << format_number(*r.minimizer_value) << ' ' << grid
            << '\n';
    }
    out << "result: " << (r.all_passed() ? "pass" : "fail") << '\n';
}

std::string join_ties(const std::vector<std::int64_t>& ties) {
    std::string s;
    for (auto t : ties) {
        if (!s.empty()) {
            s += ';';
        }
        s += std::to_string(t);
    }
    return s;
}

void emit_chvatal(std::ostream& out, const std::string& format, const std::vector<ChvatalRow>& rows) {
    if (format == "json") {
        auto arr = nlohmann::json::array();
        for (const auto& r : rows) {
            arr.push_back({{"n", r.n},
                           {"m_star", r.m_star},
                           {"nearest_two_thirds", r.nearest},
                           {"q_m_star", r.q_m_star},
                           {"match", r.match()},
                           {"ties", r.ties}});
        }
        out << arr.dump(2) << '\n';
        return;
    }
    if (format == "csv") {
        out << "n,m_star,nearest_two_thirds,q_m_star,match,ties\n";
        for (const auto& r : rows) {
            out << r.n << ',' << r.m_star << ',' << r.nearest << ',' << format_number(r.q_m_star) << ','
                << (r.match() ? "match" : "mismatch") << ',' << join_ties(r.ties) << '\n';
        }
        return;
    }
    for (const auto& r : rows) {
        out << "n=" << r.n << " m*=" << r.m_star << " round(2n/3)=" << r.nearest
            << " q=" << format_number(r.q_m_star) << ' ' << (r.match() ? "match" : "mismatch");
        if (!r.ties.empty()) {
            out << " ties=" << join_ties(r.ties);
        }
        out << '\n';
    }
}

FamilyParams verify_params(const VerifyArgs& v) {
    const Family f = parse_family(v.family);
    auto reject = [&](const std::optional<double>& x, const char* flag) {
        if (x) {
            throw CLI::ValidationError(std::string(flag) + " does not apply to family " + v.family);
        }
    };
    auto need = [&](const std::optional<double>& x, const char* flag) {
        if (!x) {
            throw CLI::RequiredError(std::string(flag) + " is required for family " + v.family);
        }
        return *x;
    };
    switch (f) {
        case Family::Weibull:
            reject(v.a, "--a");
            return WeibullParams(need(v.alpha, "--alpha"), v.theta.value_or(1.0));
        case Family::Pareto:
            reject(v.alpha, "--alpha");
            return ParetoParams(v.a.value_or(1.0), need(v.theta, "--theta"));
        case Family::Binomial:
            break;
    }
    throw DomainError("verify supports weibull and pareto only");
}

/// Renders into a buffer first so a failing command never leaves a partial file.
int deliver(const std::string& body, const Common& c, std::ostream& out, std::ostream& err) {
    if (c.out_path.empty()) {
        out << body;
        out.flush();
        return kExitOk;
    }
    std::ofstream file(c.out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: cannot open '" << c.out_path << "' for writing\n";
        return kExitUsage;
    }
    file << body;
    file.close();
    if (!file) {
        err << "error: failed writing '" << c.out_path << "'\n";
        return kExitUsage;
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minimum probability of falling below a multiple of the mean", "meancross"};
    app.require_subcommand(1);

    Common common;
    MinimizeArgs min_args;
    SweepArgs sweep_args;
    VerifyArgs verify_args;
    std::int64_t n_max = 0;

    auto* minimize_cmd = app.add_subcommand("minimize", "Minimize P(X <= kappa*EX) over the shape parameter");
    minimize_cmd->add_option("--family", min_args.family, "weibull or pareto")->required();
    minimize_cmd->add_option("--kappa", min_args.kappa, "Multiple of the mean")->required();
    add_common(minimize_cmd, common);

    auto* sweep_cmd = app.add_subcommand("sweep", "Minimize over a grid of kappa values");
    sweep_cmd->add_option("--family", sweep_args.family, "weibull or pareto")->required();
    sweep_cmd->add_option("--kappa-min", sweep_args.kappa_min, "Smallest kappa")->required();
    sweep_cmd->add_option("--kappa-max", sweep_args.kappa_max, "Largest kappa")->required();
    sweep_cmd->add_option("--steps", sweep_args.steps, "Intervals between kappa_min and kappa_max")
        ->capture_default_str();
    sweep_cmd->add_option("--scale", sweep_args.scale, "linear or log")
        ->check(CLI::IsMember({"linear", "log"}))
        ->capture_default_str();
    add_common(sweep_cmd, common);

    auto* verify_cmd = app.add_subcommand("verify", "Cross-check the closed form by quadrature, Monte Carlo and grid");
    verify_cmd->add_option("--family", verify_args.family, "weibull or pareto")->required();
    verify_cmd->add_option("--kappa", verify_args.kappa, "Multiple of the mean")->required();
    verify_cmd->add_option("--alpha", verify_args.alpha, "Weibull shape");
    verify_cmd->add_option("--theta", verify_args.theta, "Weibull scale (default 1) or Pareto shape");
    verify_cmd->add_option("--a", verify_args.a, "Pareto scale (default 1)");
    verify_cmd->add_option("--mc", verify_args.mc, "Monte Carlo sample count")->capture_default_str();
    verify_cmd->add_option("--seed", verify_args.seed, "Monte Carlo seed")->capture_default_str();
    verify_cmd->add_option("--workers", verify_args.workers, "Monte Carlo threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify_cmd->add_option("--grid-steps", verify_args.grid_steps, "Grid intervals for the scan check")
        ->check(CLI::Range(std::size_t{10}, std::size_t{100'000'000}))
        ->capture_default_str();
    verify_cmd->add_option("--grid-tol", verify_args.grid_tol, "Allowed grid/minimizer value gap")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    verify_cmd->add_flag("--no-grid", verify_args.no_grid, "Skip the grid scan");
    add_common(verify_cmd, common);

    auto* chvatal_cmd = app.add_subcommand("chvatal", "Check argmin_m P(B(n, m/n) <= m) against round(2n/3)");
    chvatal_cmd->add_option("--n-max", n_max, "Largest n")->required()->check(CLI::Range(std::int64_t{2}, INT64_MAX));
    add_common(chvatal_cmd, common);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    std::ostringstream body;
    int status = kExitOk;
    try {
        if (minimize_cmd->parsed()) {
            const auto result = minimize(parse_family(min_args.family), KappaQuery(min_args.kappa));
            emit_records(body, common.format, {to_record(result)});
        } else if (sweep_cmd->parsed()) {
            SweepSpec spec{parse_family(sweep_args.family), sweep_args.kappa_min, sweep_args.kappa_max,
                           sweep_args.steps, parse_scale(sweep_args.scale)};
            emit_records(body, common.format, run_sweep(spec));
        } else if (verify_cmd->parsed()) {
            const auto params = verify_params(verify_args);
            verify::VerificationConfig config;
            config.mc_samples = verify_args.mc;
            config.seed = verify::RngSeed{verify_args.seed};
            config.workers = verify_args.workers;
            config.run_grid = !verify_args.no_grid;
            config.grid_steps = verify_args.grid_steps;
            config.grid_value_tol = verify_args.grid_tol;
            const auto report = verify::run_verification(params, KappaQuery(verify_args.kappa), config);
            if (report.error) {
                err << "error: " << *report.error << '\n';
                return kExitUsage;
            }
            emit_report(body, common.format, report, verify_args);
            if (!report.all_passed()) {
                std::string names;
                for (const auto& name : report.failed_checks()) {
                    names += names.empty() ? name : ", " + name;
                }
                err << "verification failed: " << names << '\n';
                status = kExitCheckFailed;
            }
        } else if (chvatal_cmd->parsed()) {
            std::vector<ChvatalRow> rows;
            bool all_match = true;
            for (std::int64_t n = 2; n <= n_max; ++n) {
                const auto r = chvatal_argmin(n);
                rows.push_back({n, r.m_star, nearest_two_thirds(n),
                                r.q_values[static_cast<std::size_t>(r.m_star)], r.ties});
                all_match = all_match && rows.back().match();
            }
            emit_chvatal(body, common.format, rows);
            if (!all_match) {
                err << "chvatal: at least one n has argmin different from round(2n/3)\n";
                status = kExitCheckFailed;
            }
        }
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    const int io = deliver(body.str(), common, out, err);
    return io != kExitOk ? io : status;
}

}  // namespace meancross::cli
