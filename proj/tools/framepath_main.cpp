// Command-line surface: wires the library into reproducible experiments
// that emit CSV/JSON. Every command is a pure function of its flags; the
// FRAMEPATH_SEED environment variable overrides --seed when set.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "framepath/framepath.hpp"
#include "framepath/io.hpp"
#include "framepath/json_reports.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
    std::uint64_t seed = 0;
    int level = 10;
    unsigned threads = 1;
    std::string out;
    std::string format;
    std::string deterministic;
};

void add_common(CLI::App* cmd, CommonOpts& o, const std::string& default_format) {
    cmd->add_option("--seed", o.seed, "RNG seed (64-bit)");
    cmd->add_option("--level", o.level, "dyadic grid level of the sampled path");
    cmd->add_option("--threads", o.threads, "worker cap; never changes results")
        ->default_val(1u);
    cmd->add_option("--out,-o", o.out, "output file (stdout when omitted)");
    o.format = default_format;
    cmd->add_option("--format", o.format, "output format (csv|json)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--deterministic", o.deterministic,
                    "substitute a deterministic control path (ramp: f(x) = x + 1)")
        ->check(CLI::IsMember({"ramp"}));
}

void apply_seed_env(CommonOpts& o) {
    if (const char* env = std::getenv("FRAMEPATH_SEED")) {
        o.seed = std::strtoull(env, nullptr, 10);
    }
}

framepath::SamplePath make_path(const CommonOpts& o, int level) {
    if (o.deterministic == "ramp") return framepath::ramp_path(level);
    return framepath::sample(level, framepath::Seed{o.seed});
}

void emit(const CommonOpts& o, const std::string& body) {
    if (o.out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f = framepath::open_output(o.out);
    f << body;
    if (!f) throw framepath::io_error("write to '" + o.out + "' failed");
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

// Offsets syntax: "a..b" for the exponent range k = a..b, or a comma list.
std::vector<int> parse_offsets(const std::string& text) {
    std::vector<int> out;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const int a = std::stoi(text.substr(0, dots));
        const int b = std::stoi(text.substr(dots + 2));
        if (b < a) throw framepath::domain_error("offsets: empty range '" + text + "'");
        for (int k = a; k <= b; ++k) out.push_back(k);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    if (out.empty()) throw framepath::domain_error("offsets: nothing to parse");
    return out;
}

json params_json(const CommonOpts& o, int level) {
    json p{{"seed", o.seed}, {"level", level}};
    if (!o.deterministic.empty()) p["deterministic"] = o.deterministic;
    return p;
}

int run(int argc, char** argv) {
    CLI::App app{"Brownian frame process numerics"};
    app.require_subcommand(1);

    // --- sample ---------------------------------------------------------
    CommonOpts sample_opts;
    CLI::App* sample_cmd = app.add_subcommand("sample", "dump one sampled path as CSV");
    add_common(sample_cmd, sample_opts, "csv");

    // --- variation ------------------------------------------------------
    CommonOpts var_opts;
    double var_p = 4.0, var_alpha = 0.8;
    std::string var_h1 = "0", var_h2 = "1/2", var_dump_frame;
    CLI::App* var_cmd = app.add_subcommand(
        "variation", "p-variation norm of T_{h2} - T_{h1} with the dyadic bound");
    add_common(var_cmd, var_opts, "json");
    var_cmd->add_option("--p", var_p, "variation exponent (> 2)");
    var_cmd->add_option("--alpha", var_alpha, "Hoelder weight (> 1 - 1/p)");
    var_cmd->add_option("--h1", var_h1, "left evaluation time (dyadic)");
    var_cmd->add_option("--h2", var_h2, "right evaluation time (dyadic)");
    var_cmd->add_option("--dump-frame", var_dump_frame,
                        "also write the T_{h2} evaluation as CSV to this path");

    // --- tail -----------------------------------------------------------
    CommonOpts tail_opts;
    double tail_p = 4.0, tail_alpha = 0.8;
    std::string tail_h1 = "1/4", tail_h2 = "1/2";
    std::uint64_t tail_trials = 2000;
    std::vector<double> tail_r;
    CLI::App* tail_cmd =
        app.add_subcommand("tail", "Monte-Carlo check of the Gaussian tail estimate");
    add_common(tail_cmd, tail_opts, "json");
    tail_cmd->add_option("--p", tail_p, "variation exponent (> 2)");
    tail_cmd->add_option("--alpha", tail_alpha, "Hoelder weight (> 1 - 1/p)");
    tail_cmd->add_option("--h1", tail_h1, "left evaluation time (dyadic)");
    tail_cmd->add_option("--h2", tail_h2, "right evaluation time (dyadic)");
    tail_cmd->add_option("--trials", tail_trials, "Monte-Carlo trials (>= 100)");
    tail_cmd->add_option("--r", tail_r, "survival thresholds (default 0.5 1 1.5 2 3)");

    // --- area-surface ---------------------------------------------------
    CommonOpts surf_opts;
    int surf_m = 5, surf_n = 12;
    CLI::App* surf_cmd =
        app.add_subcommand("area-surface", "Levy-area surface on the dyadic grid");
    add_common(surf_cmd, surf_opts, "csv");
    surf_cmd->add_option("--m", surf_m, "surface grid level");
    surf_cmd->add_option("--n", surf_n, "double-sum resolution level");

    // --- diagonal -------------------------------------------------------
    CommonOpts diag_opts;
    std::string diag_s = "3/4", diag_offsets = "4..10";
    int diag_n = 14;
    std::uint64_t diag_trials = 200;
    CLI::App* diag_cmd = app.add_subcommand(
        "diagonal", "ensemble Levy area at shrinking offsets from the diagonal");
    add_common(diag_cmd, diag_opts, "json");
    diag_cmd->add_option("--s", diag_s, "diagonal point (dyadic)");
    diag_cmd->add_option("--offsets", diag_offsets,
                         "offset exponents, e.g. 4..10 for 2^-4 .. 2^-10");
    diag_cmd->add_option("--n", diag_n, "resolution level (also the path level)");
    diag_cmd->add_option("--trials", diag_trials, "ensemble size");

    // --- constants ------------------------------------------------------
    CommonOpts const_opts;
    double const_p = 4.0, const_alpha = 0.8, const_tol = 1e-10;
    std::optional<double> const_beta, const_pprime;
    CLI::App* const_cmd =
        app.add_subcommand("constants", "closed-form constants of the bounds");
    add_common(const_cmd, const_opts, "json");
    const_cmd->add_option("--p", const_p, "variation exponent (> 2)");
    const_cmd->add_option("--alpha", const_alpha, "Hoelder weight (> 1 - 1/p)");
    const_cmd->add_option("--beta", const_beta, "second Hoelder weight (default alpha)");
    const_cmd->add_option("--pprime", const_pprime, "moment order (default p)");
    const_cmd->add_option("--tol", const_tol, "certified series truncation error");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (sample_cmd->parsed()) {
        apply_seed_env(sample_opts);
        const framepath::SamplePath path = make_path(sample_opts, sample_opts.level);
        std::ostringstream body;
        framepath::write_csv(path, body);
        emit(sample_opts, body.str());
        return 0;
    }

    if (var_cmd->parsed()) {
        apply_seed_env(var_opts);
        const framepath::DyadicTime h1 = framepath::parse_dyadic(var_h1);
        const framepath::DyadicTime h2 = framepath::parse_dyadic(var_h2);
        if (!(h1 <= h2)) throw framepath::domain_error("variation: requires h1 <= h2");
        const framepath::SamplePath path = make_path(var_opts, var_opts.level);

        json report;
        report["params"] = params_json(var_opts, var_opts.level);
        report["params"]["p"] = var_p;
        report["params"]["alpha"] = var_alpha;
        report["params"]["h1"] = h1.value();
        report["params"]["h2"] = h2.value();

        const framepath::Constants k =
            framepath::d_constants(var_alpha, var_alpha, var_p, var_p);
        report["constants"] = framepath::to_json(k);
        report["constants"]["d_alpha_p_from_n1"] =
            framepath::d_alpha_p_constant(var_alpha, var_p, 1e-10, 1);

        const double prefactor = 4.0 + std::exp2((var_p - 1.0) / var_p);
        if (h1 == h2) {
            report["norms"] = {{"sup", 0.0}, {"pvar", 0.0}, {"pvar_norm", 0.0}};
            report["bound"] = {{"dyadic_bound", 0.0},
                               {"prefactor", prefactor},
                               {"bound_total", 0.0},
                               {"bound_ratio", nullptr}};
        } else {
            const std::vector<double> diff = framepath::frame_diff(path, h1, h2);
            double sup = 0.0;
            for (double x : diff) sup = std::max(sup, std::abs(x));
            const double pvar = framepath::pvar_exact(diff, var_p).value;
            const double norm = sup + pvar;
            const framepath::DyadicTime h = framepath::dyadic_sub(h1, h2);
            const double bound = framepath::dyadic_bound(path, h, var_p, var_alpha);
            report["norms"] = {{"sup", sup}, {"pvar", pvar}, {"pvar_norm", norm}};
            report["bound"] = {{"dyadic_bound", bound},
                               {"prefactor", prefactor},
                               {"bound_total", prefactor * bound},
                               {"bound_ratio", norm > 0.0
                                                   ? json(prefactor * bound / norm)
                                                   : json(nullptr)}};
        }
        if (!var_dump_frame.empty()) {
            std::ofstream f = framepath::open_output(var_dump_frame);
            framepath::write_csv(framepath::frame_eval(path, h2), f);
        }
        emit(var_opts, dump_json(report));
        return 0;
    }

    if (tail_cmd->parsed()) {
        apply_seed_env(tail_opts);
        const framepath::DyadicTime h1 = framepath::parse_dyadic(tail_h1);
        const framepath::DyadicTime h2 = framepath::parse_dyadic(tail_h2);
        const std::vector<double> grid =
            tail_r.empty() ? framepath::default_r_grid() : tail_r;
        std::function<framepath::SamplePath(std::uint64_t)> generator;
        if (tail_opts.deterministic == "ramp") {
            const int level = tail_opts.level;
            generator = [level](std::uint64_t) { return framepath::ramp_path(level); };
        }
        const framepath::TailReport report = framepath::tail_experiment(
            tail_p, tail_alpha, h1, h2, tail_opts.level, tail_trials, grid,
            framepath::Seed{tail_opts.seed}, tail_opts.threads, generator);
        if (tail_opts.format == "csv") {
            std::ostringstream body;
            framepath::write_csv(report, body);
            emit(tail_opts, body.str());
        } else {
            emit(tail_opts, dump_json(framepath::to_json(report)));
        }
        return 0;
    }

    if (surf_cmd->parsed()) {
        apply_seed_env(surf_opts);
        const int level = std::max(surf_opts.level, surf_n);
        const framepath::SamplePath path = make_path(surf_opts, level);
        const framepath::AreaSurface surf =
            framepath::area_surface(path, surf_m, surf_n, surf_opts.threads);
        std::ostringstream body;
        framepath::write_csv(surf, body);
        emit(surf_opts, body.str());
        return 0;
    }

    if (diag_cmd->parsed()) {
        apply_seed_env(diag_opts);
        const framepath::DyadicTime s = framepath::parse_dyadic(diag_s);
        const std::vector<int> ks = parse_offsets(diag_offsets);
        framepath::DiagonalReport report;
        if (diag_opts.deterministic == "ramp") {
            const framepath::SamplePath ramp = framepath::ramp_path(diag_n);
            report = framepath::diagonal_limit(
                [&ramp](std::uint64_t) { return ramp; }, diag_trials, s, ks, diag_n,
                diag_opts.threads);
        } else {
            report = framepath::diagonal_limit(framepath::Seed{diag_opts.seed},
                                               diag_trials, s, ks, diag_n,
                                               diag_opts.threads);
        }
        emit(diag_opts, dump_json(framepath::to_json(report)));
        return 0;
    }

    if (const_cmd->parsed()) {
        apply_seed_env(const_opts);
        const double beta = const_beta.value_or(const_alpha);
        const double pprime = const_pprime.value_or(const_p);
        const framepath::Constants k =
            framepath::d_constants(const_alpha, beta, const_p, pprime, const_tol);
        json report = framepath::to_json(k);
        report["d_alpha_p_from_n1"] =
            framepath::d_alpha_p_constant(const_alpha, const_p, const_tol, 1);
        report["tol"] = const_tol;
        emit(const_opts, dump_json(report));
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const framepath::capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const framepath::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const framepath::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
