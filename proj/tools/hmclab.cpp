// SPDX-License-Identifier: Apache-2.0
//
// hmclab: reproducible experiments on holomorphic multiplicative chaos
// coefficients, circular-ensemble secular coefficients and the constants of
// their limit theory. Every command writes a JSON run report next to its data.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hmc/acceptance.hpp"
#include "hmc/hmc.hpp"

namespace {

namespace fs = std::filesystem;
using hmc::format_double;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/// Parameter errors discovered after flag parsing; reported as usage errors.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

fs::path report_path_for(const fs::path& data)
{
    fs::path out = data;
    out.replace_extension(".report.json");
    return out;
}

void ensure_parent(const fs::path& p)
{
    if (p.has_parent_path()) {
        fs::create_directories(p.parent_path());
    }
}

std::string join(const std::vector<double>& xs)
{
    std::string out;
    for (const double x : xs) {
        out += (out.empty() ? "" : ",") + format_double(x);
    }
    return out;
}

//---------------------------------------------------------------------------//

struct SimulateHmcOptions {
    double theta = 0.5;
    std::size_t n = 64;
    std::size_t samples = 1000;
    std::string seed = "1";
    std::string out = "hmc_coefficients.csv";
    std::string format = "csv";
    std::size_t ell = 0;
    unsigned threads = hmc::default_threads();
};

int run_simulate_hmc(const SimulateHmcOptions& o)
{
    if (!(o.theta > 0.0 && o.theta <= 1.0)) {
        throw UsageError("--theta must lie in (0, 1]");
    }
    if (o.samples < 1) {
        throw UsageError("--samples must be >= 1");
    }
    hmc::RunReport report;
    report.command = "simulate-hmc";
    report.start();
    const std::uint64_t seed = hmc::parse_seed(o.seed);
    report.params = {{"theta", format_double(o.theta)}, {"n", std::to_string(o.n)},
                     {"samples", std::to_string(o.samples)}, {"seed", std::to_string(seed)},
                     {"format", o.format}, {"ell", std::to_string(o.ell)},
                     {"threads", std::to_string(o.threads)}, {"out", o.out}};

    const hmc::ThetaParams theta(o.theta);
    const std::size_t top = o.n + o.ell;
    const double root = std::sqrt(hmc::second_moment(o.n, o.theta));
    const hmc::StreamKey key{seed, 0, hmc::Lane::hmc};
    const auto rows = hmc::map_replicas(o.samples, o.threads, [&](std::size_t r) {
        // A draw needs at least one normal even when n + ell = 0.
        const auto draw = hmc::make_gaussian_draw(key.with_replica(r), std::max<std::size_t>(top, 1));
        const auto c = hmc::hmc_coefficients(draw, theta, top);
        std::vector<hmc::Complex> v(o.ell + 1);
        for (std::size_t k = 0; k <= o.ell; ++k) {
            v[k] = c.values[o.n + k] / root;
        }
        return v;
    });

    const fs::path data(o.out);
    ensure_parent(data);
    if (o.format == "csv") {
        hmc::write_coefficient_csv(data, rows, o.n);
    } else {
        nlohmann::ordered_json j;
        j["theta"] = o.theta;
        j["n"] = o.n;
        j["normalization"] = "sqrt(E|c_n|^2)";
        j["rows"] = nlohmann::ordered_json::array();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (std::size_t k = 0; k <= o.ell; ++k) {
                j["rows"].push_back({{"replica", r}, {"index", o.n + k}, {"re", rows[r][k].real()},
                                     {"im", rows[r][k].imag()}});
            }
        }
        std::ofstream f(data);
        if (!f) {
            throw hmc::IoError("cannot open output file " + data.string());
        }
        f << j.dump(1) << '\n';
    }
    report.artifact_paths.push_back(data.string());

    if (o.samples >= 2) {
        for (std::size_t k = 0; k <= o.ell; ++k) {
            std::vector<double> sq(rows.size());
            for (std::size_t r = 0; r < rows.size(); ++r) {
                sq[r] = std::norm(rows[r][k]);
            }
            const double target = hmc::second_moment(o.n + k, o.theta) / (root * root);
            report.estimates.push_back({"|c_" + std::to_string(o.n + k) + "|^2 / E|c_" + std::to_string(o.n) + "|^2",
                                        hmc::mean_with_error(sq), target});
        }
    }
    report.finish();
    const auto rp = report_path_for(data);
    report.artifact_paths.push_back(rp.string());
    report.write(rp);
    std::cout << "wrote " << data.string() << " and " << rp.string() << '\n';
    return kExitOk;
}

//---------------------------------------------------------------------------//

struct VerifyOptions {
    std::string suite = "all";
    std::string level = "quick";
    std::string seed = "20240611";
    unsigned threads = hmc::default_threads();
    std::string out = "verify.report.json";
};

int run_verify(const VerifyOptions& o)
{
    namespace acc = hmc::acceptance;
    acc::Config cfg;
    cfg.level = o.level == "full" ? acc::Level::full : acc::Level::quick;
    cfg.seed = hmc::parse_seed(o.seed);
    cfg.threads = o.threads;

    hmc::RunReport report;
    report.command = "verify";
    report.start();
    report.params = {{"suite", o.suite}, {"level", o.level}, {"seed", std::to_string(cfg.seed)},
                     {"threads", std::to_string(o.threads)}};
    bool all = true;
    for (const auto& check : acc::checks()) {
        if (o.suite != "all" && o.suite != acc::to_string(check.suite)) {
            continue;
        }
        const auto outcome = acc::run(check, cfg);
        all = all && outcome.pass();
        std::printf("%s %2d%-1s %-10s %s (%.1f s): %s\n", outcome.pass() ? "PASS" : "FAIL", outcome.criterion,
                    outcome.part.c_str(), acc::to_string(outcome.suite), outcome.title.c_str(), outcome.seconds,
                    acc::summarize(outcome).c_str());
        std::fflush(stdout);
        for (auto& v : outcome.verdicts()) {
            report.verdicts.push_back(std::move(v));
        }
        for (const auto& e : outcome.estimates) {
            report.estimates.push_back({std::to_string(outcome.criterion) + outcome.part + "." + e.name, e.estimate,
                                        e.target});
        }
    }
    report.finish();
    const fs::path rp(o.out);
    ensure_parent(rp);
    report.artifact_paths.push_back(rp.string());
    report.write(rp);
    std::printf("%s; report %s\n", all ? "all checks passed" : "some checks FAILED", rp.string().c_str());
    return all ? kExitOk : kExitFailure;
}

//---------------------------------------------------------------------------//

struct ConstantsOptions {
    double theta = 0.5;
    std::vector<double> delta = {0.1};
    std::vector<double> epsilon = {0.1, 0.05, 0.025};
    double ymax = 50.0;
    double grid_step = 0.01;
    std::string out = "constants.csv";
};

int run_constants(const ConstantsOptions& o)
{
    if (!(o.theta > 0.0 && o.theta <= 1.0)) {
        throw UsageError("--theta must lie in (0, 1]");
    }
    for (const double d : o.delta) {
        if (!(d > 0.0 && d <= 1.0)) {
            throw UsageError("--delta values must lie in (0, 1]");
        }
        if (1.0 / d > o.ymax) {
            throw UsageError("--ymax must be >= 1/delta for every delta");
        }
    }
    for (const double e : o.epsilon) {
        if (!(e > 0.0 && e < 1.0)) {
            throw UsageError("--epsilon values must lie in (0, 1)");
        }
    }
    if (!(o.grid_step > 0.0)) {
        throw UsageError("--grid-step must be > 0");
    }
    hmc::RunReport report;
    report.command = "constants";
    report.start();
    report.params = {{"theta", format_double(o.theta)}, {"delta", join(o.delta)}, {"epsilon", join(o.epsilon)},
                     {"ymax", format_double(o.ymax)}, {"grid_step", format_double(o.grid_step)}, {"out", o.out}};

    const auto table = hmc::p_theta_density(o.theta, o.ymax);
    const fs::path main(o.out);
    ensure_parent(main);
    const fs::path stem = main.parent_path() / main.stem();
    const fs::path density_path = stem.string() + "_density.csv";
    const fs::path kingman_path = stem.string() + "_kingman.csv";

    {
        std::ofstream f(density_path);
        if (!f) {
            throw hmc::IoError("cannot open " + density_path.string());
        }
        f << "y,p_theta,cdf\n";
        const auto count = static_cast<std::size_t>(std::floor(table.y_max() / o.grid_step + 1e-9));
        for (std::size_t i = 1; i <= count; ++i) {
            const double y = static_cast<double>(i) * o.grid_step;
            f << format_double(y) << ',' << format_double(table(y)) << ',' << format_double(table.cdf(y)) << '\n';
        }
    }
    {
        std::ofstream f(kingman_path);
        if (!f) {
            throw hmc::IoError("cannot open " + kingman_path.string());
        }
        f << "x,F_theta\n";
        const double x_min = 1.0 / table.y_max();
        const auto count = static_cast<std::size_t>(std::floor(1.0 / o.grid_step + 1e-9));
        for (std::size_t i = 1; i <= count; ++i) {
            const double x = static_cast<double>(i) * o.grid_step;
            if (x + 1e-12 < x_min) {
                continue;
            }
            f << format_double(x) << ',' << format_double(hmc::kingman_cdf(o.theta, x, table)) << '\n';
        }
    }
    {
        std::ofstream f(main);
        if (!f) {
            throw hmc::IoError("cannot open " + main.string());
        }
        f << "theta,delta,epsilon,c_delta_closed,c_delta_integral,a_constant,a_minus_c_delta\n";
        for (const double d : o.delta) {
            const double closed = hmc::c_delta_closed(o.theta, d, table);
            const double integral = hmc::c_delta_integral(o.theta, d, table);
            report.estimates.push_back({"C_delta closed, delta=" + format_double(d), {closed, 0.0, 0}, integral});
            for (const double e : o.epsilon) {
                // A is defined for delta < 1 only.
                const double a = d < 1.0 ? hmc::a_constant(o.theta, d, e, table) : std::nan("");
                f << format_double(o.theta) << ',' << format_double(d) << ',' << format_double(e) << ','
                  << format_double(closed) << ',' << format_double(integral) << ','
                  << (std::isnan(a) ? "" : format_double(a)) << ',' << (std::isnan(a) ? "" : format_double(a - closed))
                  << '\n';
            }
        }
    }
    report.artifact_paths = {main.string(), density_path.string(), kingman_path.string()};
    report.finish();
    const auto rp = report_path_for(main);
    report.artifact_paths.push_back(rp.string());
    report.write(rp);
    std::cout << "wrote " << main.string() << ", " << density_path.string() << ", " << kingman_path.string()
              << " and " << rp.string() << '\n';
    return kExitOk;
}

//---------------------------------------------------------------------------//

struct SimulateCbeOptions {
    double beta = 2.0;
    std::size_t N = 16;
    std::size_t nmax = 8;
    std::size_t samples = 1000;
    std::string seed = "1";
    std::string out = "cbe_coefficients.csv";
    unsigned threads = hmc::default_threads();
};

int run_simulate_cbe(const SimulateCbeOptions& o)
{
    if (o.N < 1) {
        throw UsageError("--N must be >= 1");
    }
    if (o.nmax > o.N) {
        throw UsageError("--nmax must be <= --N");
    }
    if (!(o.beta > 0.0)) {
        throw UsageError("--beta must be > 0");
    }
    if (o.samples < 1) {
        throw UsageError("--samples must be >= 1");
    }
    hmc::RunReport report;
    report.command = "simulate-cbe";
    report.start();
    const std::uint64_t seed = hmc::parse_seed(o.seed);
    report.params = {{"beta", format_double(o.beta)}, {"N", std::to_string(o.N)}, {"nmax", std::to_string(o.nmax)},
                     {"samples", std::to_string(o.samples)}, {"seed", std::to_string(seed)},
                     {"threads", std::to_string(o.threads)}, {"out", o.out}};
    const auto rows =
        hmc::cbe_secular_ensemble(o.N, o.beta, o.nmax, o.samples, {seed, 0, hmc::Lane::cbe}, o.threads);
    const fs::path data(o.out);
    ensure_parent(data);
    hmc::write_coefficient_csv(data, rows, 0);
    report.artifact_paths.push_back(data.string());
    if (o.samples >= 2) {
        for (std::size_t m = 1; m <= o.nmax; ++m) {
            std::vector<double> sq(rows.size());
            for (std::size_t r = 0; r < rows.size(); ++r) {
                sq[r] = std::norm(rows[r][m]);
            }
            const std::optional<double> target =
                o.beta >= 2.0 ? std::optional<double>(hmc::second_moment(m, 2.0 / o.beta)) : std::nullopt;
            report.estimates.push_back({"E|c_" + std::to_string(m) + "|^2", hmc::mean_with_error(sq), target});
        }
    }
    report.finish();
    const auto rp = report_path_for(data);
    report.artifact_paths.push_back(rp.string());
    report.write(rp);
    std::cout << "wrote " << data.string() << " and " << rp.string() << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"hmclab: holomorphic multiplicative chaos experiments"};
    app.require_subcommand(1);

    SimulateHmcOptions hmc_opts;
    auto* sim = app.add_subcommand("simulate-hmc", "Sample c_n (and c_{n+k}, k <= ell) normalized by sqrt(E|c_n|^2)");
    sim->add_option("--theta", hmc_opts.theta, "theta in (0, 1]")->capture_default_str();
    sim->add_option("--n", hmc_opts.n, "coefficient index n >= 0")->capture_default_str();
    sim->add_option("--samples", hmc_opts.samples, "number of replicas")->capture_default_str();
    sim->add_option("--seed", hmc_opts.seed, "seed, decimal or 0x-hex")->capture_default_str();
    sim->add_option("--out", hmc_opts.out, "data file; the report goes to <stem>.report.json")->capture_default_str();
    sim->add_option("--format", hmc_opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sim->add_option("--ell", hmc_opts.ell, "also emit c_{n+1}..c_{n+ell}")->capture_default_str();
    sim->add_option("--threads", hmc_opts.threads, "worker threads")->check(CLI::PositiveNumber);

    VerifyOptions verify_opts;
    auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
    verify->add_option("--suite", verify_opts.suite, "identities, limits, cbe or all")
        ->check(CLI::IsMember({"identities", "limits", "cbe", "all"}))
        ->capture_default_str();
    verify->add_option("--level", verify_opts.level, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}))
        ->capture_default_str();
    verify->add_option("--seed", verify_opts.seed, "base seed")->capture_default_str();
    verify->add_option("--threads", verify_opts.threads, "worker threads")->check(CLI::PositiveNumber);
    verify->add_option("--out", verify_opts.out, "report path")->capture_default_str();
    verify->footer(
        "Sample counts (full / quick):\n"
        "  2  L2 identity, per theta          20000 / 4000\n"
        "  3  truncated covariance            20000 / 4000\n"
        "  5b T_0n/n histogram                20000 / 5000\n"
        "  7  bracket mean                     2000 / 500\n"
        "  8  KS c_n vs sqrt(M) Z, per side    5000 / 1000\n"
        "  9  fourth moment                   40000 / 6000\n"
        "  10 shifted covariance / KS     20000, 5000 / 4000, 1000\n"
        "  11 CbetaE moments / KS         20000, 5000 / 4000, 2000\n"
        "  12 Ewens chi-square / ECDF    100000, 20000 / 20000, 5000\n"
        "Identity checks (1, 4, 5a, 6, 12a) are deterministic and identical at both levels.");

    ConstantsOptions const_opts;
    auto* constants = app.add_subcommand("constants", "Tabulate p_theta, F_theta, C_delta and A(theta, delta, eps)");
    constants->add_option("--theta", const_opts.theta, "theta in (0, 1]")->capture_default_str();
    constants->add_option("--delta", const_opts.delta, "one or more delta in (0, 1]")->capture_default_str();
    constants->add_option("--epsilon", const_opts.epsilon, "one or more epsilon in (0, 1)")->capture_default_str();
    constants->add_option("--ymax", const_opts.ymax, "p_theta table range, >= 1/delta")->capture_default_str();
    constants->add_option("--grid-step", const_opts.grid_step, "spacing of the density and F_theta tables")
        ->capture_default_str();
    constants->add_option("--out", const_opts.out, "constants CSV; density and F_theta go to <stem>_*.csv")
        ->capture_default_str();

    SimulateCbeOptions cbe_opts;
    auto* cbe = app.add_subcommand("simulate-cbe", "Sample CbetaE secular coefficients c_0..c_nmax");
    cbe->add_option("--beta", cbe_opts.beta, "beta > 0")->capture_default_str();
    cbe->add_option("--N", cbe_opts.N, "matrix size")->capture_default_str();
    cbe->add_option("--nmax", cbe_opts.nmax, "largest coefficient index, <= N")->capture_default_str();
    cbe->add_option("--samples", cbe_opts.samples, "number of replicas")->capture_default_str();
    cbe->add_option("--seed", cbe_opts.seed, "seed, decimal or 0x-hex")->capture_default_str();
    cbe->add_option("--out", cbe_opts.out, "data file; the report goes to <stem>.report.json")->capture_default_str();
    cbe->add_option("--threads", cbe_opts.threads, "worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*sim) {
            return run_simulate_hmc(hmc_opts);
        }
        if (*verify) {
            return run_verify(verify_opts);
        }
        if (*constants) {
            return run_constants(const_opts);
        }
        if (*cbe) {
            return run_simulate_cbe(cbe_opts);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
