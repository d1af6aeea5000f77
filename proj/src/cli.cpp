#include "liquifbm/cli.hpp"

#include "liquifbm/fbm.hpp"
#include "liquifbm/format.hpp"
#include "liquifbm/kernel.hpp"
#include "liquifbm/montecarlo.hpp"
#include "liquifbm/oracle.hpp"
#include "liquifbm/strategies.hpp"
#include "liquifbm/valuation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace liquifbm {

namespace {

using ojson = nlohmann::ordered_json;

struct Config {
    double h = 0.7;
    double T = 1.0;
    double phi0 = 0.0;
    double lambda = 1.0;
    double s0 = 0.0;
    double mu = 0.0;
    double sigma = 1.0;
    std::string info = "standard";
    double delta = 0.0;
    bool delta_set = false;
    std::size_t n = 256;
    std::size_t paths = 10000;
    std::uint64_t seed = 42;
    double h_min = 0.05, h_max = 0.95;
    std::size_t h_steps = 19;
    std::string out;
    std::string format;
    std::string dump;
    double rel_tol = 0.02;
    double rel_bound = 0.05;
};

[[noreturn]] void bad_flag(const std::string& flag, const std::string& why) {
    throw DomainError(flag + ": " + why);
}

double json_num(double v) {
    if (!std::isfinite(v)) throw NumericalError("non-finite number in output");
    return std::strtod(fmt15(v).c_str(), nullptr);
}

void check_common(const Config& c) {
    if (!(c.h > 0.0 && c.h < 1.0)) bad_flag("--h", "Hurst parameter must lie in (0,1)");
    if (!(c.T > 0.0) || !std::isfinite(c.T)) bad_flag("--t", "horizon must be positive");
    if (!(c.lambda > 0.0) || !std::isfinite(c.lambda)) bad_flag("--lambda", "impact must be positive");
    if (!(c.sigma >= 0.0) || !std::isfinite(c.sigma)) bad_flag("--sigma", "volatility must be non-negative");
    if (!std::isfinite(c.phi0)) bad_flag("--phi0", "must be finite");
    if (!std::isfinite(c.s0)) bad_flag("--s0", "must be finite");
    if (!std::isfinite(c.mu)) bad_flag("--mu", "must be finite");
    if (c.info != "standard" && c.info != "delayed" && c.info != "insider")
        bad_flag("--info", "must be standard, delayed or insider");
    if (c.info != "standard" && !(c.delta > 0.0 && c.delta <= c.T)) bad_flag("--delta", "must lie in (0, T]");
    if (!c.format.empty() && c.format != "csv" && c.format != "json") bad_flag("--format", "must be csv or json");
}

InformationFlow flow_of(const Config& c) {
    const InfoKind k = parse_info_kind(c.info);
    if (k == InfoKind::Standard) return InformationFlow::standard();
    return {k, c.delta};
}

LiquidationProblem problem_of(const Config& c, const InformationFlow& info) {
    LiquidationProblem p;
    p.phi0 = c.phi0;
    p.lambda = c.lambda;
    p.T = c.T;
    p.market = MarketSpec{c.s0, c.mu, c.sigma, c.h};
    p.info = info;
    p.validate();
    return p;
}

std::string json_value(const nlohmann::ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return fmt15(v.get<double>());
    return v.dump();
}

// flat object as a one-row CSV, or as JSON
void emit_object(std::ostream& os, const ojson& obj, const std::string& format) {
    if (format == "csv") {
        std::string head, row;
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (!head.empty()) {
                head += ',';
                row += ',';
            }
            head += it.key();
            row += json_value(it.value());
        }
        os << head << '\n' << row << '\n';
    } else {
        os << obj.dump(2) << '\n';
    }
}

void emit_table(std::ostream& os, const std::vector<std::string>& cols, const std::vector<std::vector<double>>& rows,
                const std::string& format) {
    if (format == "json") {
        ojson arr = ojson::array();
        for (const auto& r : rows) {
            ojson o;
            for (std::size_t k = 0; k < cols.size(); ++k) o[cols[k]] = json_num(r[k]);
            arr.push_back(o);
        }
        os << arr.dump(2) << '\n';
        return;
    }
    for (std::size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << cols[k];
    os << '\n';
    for (const auto& r : rows) {
        for (std::size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << fmt15(r[k]);
        os << '\n';
    }
}

// NaN when the sample has no spread but misses the reference
double z_score(double est, double ref, double se) {
    const double d = est - ref;
    if (se > 0.0) return d / se;
    return d == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
}

int cmd_value(const Config& c, std::ostream& os) {
    const InformationFlow info = flow_of(c);
    const ValueBreakdown v = general_value(problem_of(c, info));
    ojson o;
    o["inventory_term"] = json_num(v.inventory_term);
    o["drift_term"] = json_num(v.drift_term);
    o["tracking_term"] = json_num(v.tracking_term);
    o["total"] = json_num(v.total);
    o["h"] = json_num(c.h);
    o["T"] = json_num(c.T);
    o["info"] = c.info;
    o["delta"] = json_num(info.kind == InfoKind::Standard ? 0.0 : info.delta);
    emit_object(os, o, c.format.empty() ? "json" : c.format);
    return kOk;
}

int cmd_sweep(const Config& c, std::ostream& os) {
    if (!(c.h_min > 0.0 && c.h_min < 1.0)) bad_flag("--h-min", "must lie in (0,1)");
    if (!(c.h_max > 0.0 && c.h_max < 1.0)) bad_flag("--h-max", "must lie in (0,1)");
    if (c.h_max < c.h_min) bad_flag("--h-max", "must not be below --h-min");
    if (c.h_steps < 1) bad_flag("--h-steps", "must be at least 1");
    if (c.h_steps == 1 && c.h_max != c.h_min) bad_flag("--h-steps", "a single step needs --h-min equal to --h-max");
    const double delta = c.delta;
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < c.h_steps; ++k) {
        double h = c.h_steps == 1 ? c.h_min
                                  : c.h_min + (c.h_max - c.h_min) * static_cast<double>(k) /
                                                  static_cast<double>(c.h_steps - 1);
        h = std::round(h * 1e12) / 1e12;  // keep grid points like 0.5 exact
        rows.push_back({h, normalized_value(h, c.T, InformationFlow::standard()),
                        normalized_value(h, c.T, InformationFlow::delayed(delta)),
                        normalized_value(h, c.T, InformationFlow::insider(delta))});
    }
    emit_table(os, {"h", "standard", "delayed", "insider"}, rows, c.format.empty() ? "csv" : c.format);
    return kOk;
}

int cmd_path(const Config& c, std::ostream& os, std::ostream& err) {
    if (c.n < 2) bad_flag("--n", "needs at least 2 steps");
    if (!(c.delta > 0.0 && c.delta <= c.T)) bad_flag("--delta", "must lie in (0, T]");
    const TimeGrid grid(c.T, c.n);
    const KernelTable table = build_table(grid, c.h);
    const PathPair path = simulate_path_pair(table, SeedRecord{c.seed, 0});

    const InformationFlow flows[3] = {InformationFlow::standard(), InformationFlow::delayed(c.delta),
                                      InformationFlow::insider(c.delta)};
    StrategyPath sp[3];
    for (int f = 0; f < 3; ++f) {
        const LiquidationProblem p = problem_of(c, flows[f]);
        sp[f] = generic_strategy(p, table, martingale_repr(table, flows[f]), path);
    }

    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i <= c.n; ++i) {
        const double S = c.s0 + c.mu * grid.t(i) + c.sigma * path.bh[i];
        auto rate = [&](int f) { return i < c.n ? sp[f].phi[i] : 0.0; };
        rows.push_back({grid.t(i), S, rate(0), rate(1), rate(2), sp[0].position[i], sp[1].position[i],
                        sp[2].position[i]});
    }
    emit_table(os,
               {"t", "price", "phi_standard", "phi_delayed", "phi_insider", "pos_standard", "pos_delayed",
                "pos_insider"},
               rows, c.format.empty() ? "csv" : c.format);

    const int max_lag = static_cast<int>(std::min<double>(c.n / 2.0, std::ceil(2.0 * c.delta / grid.dt())));
    err << "lead-lag (steps of " << fmt15(grid.dt()) << "): insider->standard "
        << lead_lag(sp[2].phi, sp[0].phi, max_lag) << ", standard->delayed " << lead_lag(sp[0].phi, sp[1].phi, max_lag)
        << '\n';

    if (!c.dump.empty()) {
        std::ofstream f(c.dump, std::ios::binary);
        if (!f) bad_flag("--dump", "cannot open '" + c.dump + "'");
        write_path_csv(f, path);
    }
    return kOk;
}

int cmd_mc(const Config& c, std::ostream& os) {
    if (c.n < 2) bad_flag("--n", "needs at least 2 steps");
    if (c.paths < 100) bad_flag("--paths", "needs at least 100 paths");
    if (!(c.rel_tol >= 0.0)) bad_flag("--rel-tol", "must be non-negative");
    const LiquidationProblem p = problem_of(c, flow_of(c));
    const MCEstimate est = mc_value(p, TimeGrid(c.T, c.n), c.paths, c.seed);
    const double cf = general_value(p).total;
    const double z = z_score(est.mean, cf, est.std_error);
    const bool pass = (!std::isnan(z) && std::abs(z) <= 4.0) || std::abs(est.mean - cf) <= c.rel_tol * std::abs(cf);
    ojson o;
    o["closed_form"] = json_num(cf);
    o["estimate"] = json_num(est.mean);
    o["std_error"] = json_num(est.std_error);
    if (std::isnan(z)) o["z_score"] = nullptr;
    else o["z_score"] = json_num(z);
    o["n_paths"] = c.paths;
    o["grid_n"] = c.n;
    o["seed"] = c.seed;
    o["pass"] = pass;
    emit_object(os, o, c.format.empty() ? "json" : c.format);
    return pass ? kOk : kGateFailed;
}

int cmd_oracle(const Config& c, std::ostream& os) {
    if (c.n < 1 || c.n > kMaxOracleSteps) bad_flag("--n", "oracle grid must have 1 to 64 steps");
    if (!(c.rel_bound >= 0.0)) bad_flag("--rel-bound", "must be non-negative");
    const LiquidationProblem p = problem_of(c, flow_of(c));
    const double dp = dp_value(p, c.n);
    const double cf = general_value(p).total;
    const double gap = std::abs(dp - cf);
    const double rel = std::abs(cf) > 1e-12 ? gap / std::abs(cf) : gap;
    const bool pass = rel <= c.rel_bound;
    ojson o;
    o["closed_form"] = json_num(cf);
    o["dp_value"] = json_num(dp);
    o["grid_n"] = c.n;
    o["rel_error"] = json_num(rel);
    o["pass"] = pass;
    emit_object(os, o, c.format.empty() ? "json" : c.format);
    return pass ? kOk : kGateFailed;
}

void add_problem_flags(CLI::App* sub, Config& c) {
    sub->add_option("--h", c.h, "Hurst parameter in (0,1)");
    sub->add_option("--t", c.T, "horizon T");
    sub->add_option("--phi0", c.phi0, "initial position");
    sub->add_option("--lambda", c.lambda, "temporary impact coefficient");
    sub->add_option("--s0", c.s0, "initial price");
    sub->add_option("--mu", c.mu, "price drift");
    sub->add_option("--sigma", c.sigma, "price volatility scale");
    sub->add_option("--info", c.info, "standard | delayed | insider");
    sub->add_option("--delta", c.delta, "lag or lead of the information flow (default 0.1 T)");
    sub->add_option("--out", c.out, "write results to this file instead of stdout");
    sub->add_option("--format", c.format, "csv | json");
    sub->add_option("--seed", c.seed, "master random seed (default 42)");
}

}  // namespace

int lead_lag(const std::vector<double>& a, const std::vector<double>& b, int max_lag) {
    const int n = static_cast<int>(std::min(a.size(), b.size()));
    int best = 0;
    double best_c = -2.0;
    for (int k = -max_lag; k <= max_lag; ++k) {
        const int lo = std::max(0, -k), hi = std::min(n, n - k);
        if (hi - lo < 3) continue;
        double ma = 0.0, mb = 0.0;
        for (int i = lo; i < hi; ++i) {
            ma += a[i];
            mb += b[i + k];
        }
        ma /= (hi - lo);
        mb /= (hi - lo);
        double sab = 0.0, saa = 0.0, sbb = 0.0;
        for (int i = lo; i < hi; ++i) {
            const double x = a[i] - ma, y = b[i + k] - mb;
            sab += x * y;
            saa += x * x;
            sbb += y * y;
        }
        const double corr = (saa > 0.0 && sbb > 0.0) ? sab / std::sqrt(saa * sbb) : 0.0;
        if (corr > best_c + 1e-12 || (std::abs(corr - best_c) <= 1e-12 && std::abs(k) < std::abs(best))) {
            best_c = corr;
            best = k;
        }
    }
    return best;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Optimal liquidation under linear temporary impact with fractional Brownian prices", "liquifbm"};
    // --h is the Hurst flag, so help answers to --help only (subcommands inherit this)
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);

    auto* value = app.add_subcommand("value", "closed-form expected value and its decomposition (JSON)");
    add_problem_flags(value, c);

    auto* sweep = app.add_subcommand("sweep", "normalized values of the three flows over a Hurst grid (CSV)");
    add_problem_flags(sweep, c);
    sweep->add_option("--h-min", c.h_min, "first Hurst value");
    sweep->add_option("--h-max", c.h_max, "last Hurst value");
    sweep->add_option("--h-steps", c.h_steps, "number of Hurst values");

    auto* path = app.add_subcommand("path", "one scenario with the three optimal strategies (CSV)");
    add_problem_flags(path, c);
    path->add_option("--n", c.n, "grid steps");
    path->add_option("--dump", c.dump, "also write t,w,bh of the scenario to this file");

    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate against the closed form (JSON)");
    add_problem_flags(mc, c);
    mc->add_option("--n", c.n, "grid steps");
    mc->add_option("--paths", c.paths, "number of simulated paths");
    mc->add_option("--rel-tol", c.rel_tol, "relative discretization allowance of the gate");

    auto* oracle = app.add_subcommand("oracle", "exact discrete dynamic programme against the closed form (JSON)");
    add_problem_flags(oracle, c);
    oracle->add_option("--n", c.n, "grid steps (1..64)");
    oracle->add_option("--rel-bound", c.rel_bound, "largest accepted relative error");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }

    CLI::App* cmd = app.get_subcommands().front();
    // demo defaults
    if (cmd == path) {
        if (path->count("--t") == 0) c.T = 5.0;
        if (path->count("--n") == 0) c.n = 500;
    }
    if (cmd == oracle && oracle->count("--n") == 0) c.n = 32;
    c.delta_set = cmd->count("--delta") > 0;
    if (!c.delta_set) c.delta = 0.1 * c.T;

    std::ostringstream buf;
    try {
        check_common(c);
        int rc = kOk;
        if (cmd == value) rc = cmd_value(c, buf);
        else if (cmd == sweep) rc = cmd_sweep(c, buf);
        else if (cmd == path) rc = cmd_path(c, buf, err);
        else if (cmd == mc) rc = cmd_mc(c, buf);
        else rc = cmd_oracle(c, buf);

        if (c.out.empty()) {
            out << buf.str();
        } else {
            std::ofstream f(c.out, std::ios::binary);
            if (!f) bad_flag("--out", "cannot open '" + c.out + "'");
            f << buf.str();
        }
        return rc;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalError;
    }
}

}  // namespace liquifbm
