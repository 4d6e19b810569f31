#include "lcsbound/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lcsbound/oracles.hpp"
#include "lcsbound/reference_tables.hpp"

namespace lcsbound::cli {

namespace {

constexpr const char* kVersion = "lcsbound 1.0";
constexpr double kTableTolerance = 1e-4;

void apply_thread_env() {
#ifdef _OPENMP
    if (const char* env = std::getenv(kThreadsEnv)) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
#endif
}

std::string signed_fixed(double x, int decimals) {
    std::ostringstream s;
    s << std::showpos << std::fixed << std::setprecision(decimals) << x;
    return s.str();
}

std::string describe_index(const Shape& shape, std::uint64_t index) {
    std::string s = std::to_string(index);
    if (shape.sigma <= 10) s += " (" + format_tuple(decode(index, shape)) + ")";
    return s;
}

std::uint64_t gib_to_bytes(double gib) {
    return static_cast<std::uint64_t>(gib * static_cast<double>(std::uint64_t{1} << 30));
}

struct BoundOptions {
    int sigma = 2;
    int d = 2;
    int l = 1;
    int max_iters = 0;
    double memory_gib = 4.0;
    std::string out_path;
    bool quiet = false;
};

void add_shape_options(CLI::App* cmd, BoundOptions& o, bool with_sigma) {
    if (with_sigma) {
        cmd->add_option("--sigma", o.sigma, "alphabet size")->required()->check(CLI::Range(2, 1 << 20));
    }
    cmd->add_option("--d", o.d, "number of words")->required()->check(CLI::Range(2, 64));
    cmd->add_option("--l", o.l, "word length of the tuple states")->required()->check(CLI::Range(1, 62));
    cmd->add_option("--max-iters", o.max_iters, "iteration budget (default: by state-space size)");
    cmd->add_option("--memory-gib", o.memory_gib, "memory cap for the solver in GiB")
        ->capture_default_str();
    cmd->add_option("--out", o.out_path, "write the certificate to this file");
    cmd->add_flag("--quiet", o.quiet, "suppress per-iteration progress");
}

void print_bound_report(const BoundRun& run, std::ostream& out) {
    const auto& c = run.certificate;
    out << "sigma=" << c.shape.sigma << " d=" << c.shape.d << " l=" << c.shape.l
        << " states=" << c.shape.states() << '\n';
    out << "iterations: " << run.triplet.iterations_run << '\n';
    out << "r = " << format_exact(c.r) << "  epsilon = " << format_exact(c.epsilon) << '\n';
    out << "verification: " << (run.report.passed ? "pass" : "FAIL")
        << " (max violation " << format_exact(run.report.max_violation) << " at index "
        << describe_index(c.shape, run.report.worst_index) << ")\n";
    out << "bound: gamma_{" << c.shape.sigma << "," << c.shape.d
        << "} >= " << format_truncated(run.report.bound) << '\n';
    out << "bound (full precision): " << format_exact(run.report.bound) << '\n';
}

// Solves, prints and writes the certificate; shared by bound and steele.
int solve_and_report(const BoundOptions& o, std::ostream& out, std::ostream& err,
                     BoundRun* result) {
    const Shape shape = Shape::checked(o.sigma, o.d, o.l);
    BoundRun run = compute_bound(shape, o.max_iters, gib_to_bytes(o.memory_gib),
                                 o.quiet ? nullptr : &err);
    print_bound_report(run, out);
    if (!o.out_path.empty()) {
        write_certificate(run.certificate, std::filesystem::path(o.out_path));
        out << "certificate: " << o.out_path << '\n';
    }
    const bool ok = run.report.passed;
    if (result) *result = std::move(run);
    return ok ? kSuccess : kVerificationFailed;
}

int cmd_verify(const std::string& path, double slack, std::ostream& out, std::ostream& err) {
    Certificate cert;
    try {
        cert = read_certificate(std::filesystem::path(path));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kVerificationFailed;
    }
    const VerificationReport rep = verify(cert, slack);
    out << "certificate: sigma=" << cert.shape.sigma << " d=" << cert.shape.d
        << " l=" << cert.shape.l << " entries=" << cert.u.size() << '\n';
    if (!cert.provenance.empty()) out << "provenance: " << cert.provenance << '\n';
    out << "r = " << format_exact(cert.r) << "  epsilon = " << format_exact(cert.epsilon) << '\n';
    out << "max violation = " << format_exact(rep.max_violation) << " at index "
        << describe_index(cert.shape, rep.worst_index) << '\n';
    if (rep.passed) {
        out << "result: PASS" << (rep.certified ? "" : " (non-certified: slack " +
                                                          format_exact(slack) + ")")
            << '\n';
        out << "bound: gamma_{" << cert.shape.sigma << "," << cert.shape.d
            << "} >= " << format_truncated(rep.bound) << '\n';
        out << "bound (full precision): " << format_exact(rep.bound) << '\n';
        return kSuccess;
    }
    out << "result: FAIL\n";
    return kVerificationFailed;
}

struct TableOptions {
    int sigma_max = 10;
    double budget = 2.2e6;
    int max_iters = 0;
    double memory_gib = 4.0;
    std::string format = "human";
    std::string cert_dir;
};

int cmd_table(const TableOptions& o, std::ostream& out, std::ostream& err) {
    const bool tsv = o.format == "tsv";
    if (tsv) {
        out << "sigma\td\tl\tstates\tcomputed\tcomputed_exact\tpublished\tdelta\titerations\tstatus\n";
    } else {
        out << "sigma   d   l     states   computed  published      delta  status\n";
    }
    bool all_ok = true;
    for (const auto& row : kPublishedBounds) {
        if (row.sigma > o.sigma_max) continue;
        const Shape shape = Shape::checked(row.sigma, row.d, row.l);
        std::string computed = "-", exact = "-", delta = "-", status, iters = "-";
        if (static_cast<double>(shape.states()) > o.budget) {
            status = "skipped (budget)";
        } else {
            err << "table: sigma=" << row.sigma << " d=" << row.d << " l=" << row.l << " ...\n";
            try {
                const BoundRun run = compute_bound(shape, o.max_iters,
                                                   gib_to_bytes(o.memory_gib), nullptr);
                computed = format_truncated(run.report.bound);
                exact = format_exact(run.report.bound);
                delta = signed_fixed(run.report.bound - row.bound, 6);
                iters = std::to_string(run.triplet.iterations_run);
                if (!run.report.passed) {
                    status = "verification failed";
                } else if (run.report.bound >= row.bound - kTableTolerance) {
                    status = "ok";
                } else {
                    status = "below reference";
                }
                if (!o.cert_dir.empty()) {
                    const auto path = std::filesystem::path(o.cert_dir) /
                                      ("cert_s" + std::to_string(row.sigma) + "_d" +
                                       std::to_string(row.d) + "_l" + std::to_string(row.l) +
                                       ".txt");
                    write_certificate(run.certificate, path);
                }
            } catch (const std::exception& e) {
                status = std::string("error: ") + e.what();
            }
            all_ok = all_ok && status == "ok";
        }
        char published[32];
        std::snprintf(published, sizeof published, "%.6f", row.bound);
        if (tsv) {
            out << row.sigma << '\t' << row.d << '\t' << row.l << '\t' << shape.states() << '\t'
                << computed << '\t' << exact << '\t' << published << '\t' << delta << '\t' << iters
                << '\t' << status << '\n';
        } else {
            char line[160];
            std::snprintf(line, sizeof line, "%5d %3d %3d %10llu %10s %10s %10s  %s\n", row.sigma,
                          row.d, row.l, static_cast<unsigned long long>(shape.states()),
                          computed.c_str(), published, delta.c_str(), status.c_str());
            out << line;
        }
    }
    if (!tsv) {
        out << "\nearlier lower bounds for two words (Baeza-Yates et al. / Dancik-Deken):\n";
        for (const auto& p : kPriorTwoWordBounds) {
            if (p.sigma > o.sigma_max) continue;
            char baeza[16] = "-";
            if (p.baeza_yates) std::snprintf(baeza, sizeof baeza, "%.5f", *p.baeza_yates);
            char line[96];
            std::snprintf(line, sizeof line, "%5d  %10s  %10.5f\n", p.sigma, baeza,
                          p.dancik_deken);
            out << line;
        }
    }
    return all_ok ? kSuccess : kVerificationFailed;
}

int cmd_steele(const BoundOptions& o, std::ostream& out, std::ostream& err) {
    BoundRun run;
    const int rc = solve_and_report(o, out, err, &run);
    if (rc != kSuccess) return rc;
    const SteeleReport rep = steele_check(run.certificate);
    out << "threshold U^(d-1) = " << format_exact(rep.threshold) << '\n';
    if (rep.strictly_greater) {
        out << format_truncated(rep.bound) << " > " << format_truncated(rep.threshold)
            << " => speculation disproved for d=" << rep.d << '\n';
    } else {
        out << format_truncated(rep.bound) << " <= " << format_truncated(rep.threshold)
            << " => not established by this certificate\n";
    }
    if (rep.via_simple_bound) {
        out << "also: U^(d-1) = " << format_truncated(rep.threshold)
            << " < 1/2 <= gamma_{2," << rep.d << "} by the single-character bound\n";
    }
    return rep.strictly_greater || rep.via_simple_bound ? kSuccess : kVerificationFailed;
}

int cmd_mc(int sigma, int d, int n, const std::string& samples, std::uint64_t seed,
           std::ostream& out) {
    McEstimate est;
    if (samples == "exhaustive") {
        est = exact_mean(sigma, d, n);
    } else {
        std::uint64_t count = 0;
        try {
            count = std::stoull(samples);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--samples", "expected a count or 'exhaustive'");
        }
        est = mc_estimate(sigma, d, n, count, seed);
    }
    out << "sigma=" << est.sigma << " d=" << est.d << " n=" << est.n
        << " samples=" << est.samples << (samples == "exhaustive" ? " (exhaustive)" : "") << '\n';
    out << "mean L/n = " << format_exact(est.mean) << '\n';
    out << "stderr = " << format_exact(est.std_error) << '\n';
    return kSuccess;
}

int cmd_lcs(const std::vector<std::string>& texts, int sigma, int diagonal, std::ostream& out) {
    if (texts.size() < 2) throw CLI::ValidationError("strings", "need at least two strings");
    int max_digit = 1;
    for (const auto& t : texts) {
        for (char ch : t) {
            if (ch >= '0' && ch <= '9') max_digit = std::max(max_digit, ch - '0');
        }
    }
    if (sigma == 0) sigma = max_digit + 1;
    LcsInstance inst{sigma, {}};
    for (const auto& t : texts) inst.words.push_back(parse_word(t, sigma));
    out << lcs(inst) << '\n';
    if (diagonal >= 0) out << "D_" << diagonal << " = " << diagonal_lcs(inst, diagonal) << '\n';
    return kSuccess;
}

}  // namespace

BoundRun compute_bound(const Shape& shape, int max_iterations, std::uint64_t memory_cap,
                       std::ostream* progress) {
    SolverConfig config = SolverConfig::defaults(shape);
    if (max_iterations > 0) config.max_iterations = max_iterations;
    config.memory_cap_bytes = memory_cap;
    ProgressFn report;
    if (progress) {
        report = [progress](const Progress& p) {
            char line[160];
            std::snprintf(line, sizeof line, "iter %d  R=%.12g  E=%.3g  d(R-E)=%.9f  %.2fs\n",
                          p.iteration, p.R, p.E, p.bound, p.seconds);
            *progress << line;
        };
    }
    BoundRun run;
    run.triplet = feasible_triplet(config, report);
    run.certificate.shape = shape;
    run.certificate.r = run.triplet.r;
    run.certificate.epsilon = run.triplet.epsilon;
    run.certificate.u = run.triplet.u;
    run.certificate.provenance = std::string(kVersion) + " iterations=" +
                                 std::to_string(run.triplet.iterations_run);
    run.report = verify(run.certificate, 0.0);
    return run;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    apply_thread_env();
    CLI::App app{"Certified lower bounds for the expected LCS rate of d random words"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    BoundOptions bound_opts;
    auto* bound = app.add_subcommand("bound", "compute and verify a lower bound certificate");
    add_shape_options(bound, bound_opts, true);

    std::string verify_path;
    double slack = 0.0;
    auto* verify_cmd = app.add_subcommand("verify", "re-verify a certificate file");
    verify_cmd->add_option("certificate", verify_path, "cs-cert file")->required();
    verify_cmd->add_option("--slack", slack, "tolerated violation (reports become non-certified)")
        ->check(CLI::NonNegativeNumber);

    TableOptions table_opts;
    auto* table = app.add_subcommand("table", "recompute the published bound table");
    table->add_option("--sigma-max", table_opts.sigma_max, "largest alphabet size")
        ->capture_default_str();
    table->add_option("--budget", table_opts.budget, "largest state space sigma^(l*d) to compute")
        ->capture_default_str();
    table->add_option("--max-iters", table_opts.max_iters, "iteration budget per row");
    table->add_option("--memory-gib", table_opts.memory_gib, "memory cap in GiB")
        ->capture_default_str();
    table->add_option("--format", table_opts.format, "human or tsv")
        ->check(CLI::IsMember({"human", "tsv"}))
        ->capture_default_str();
    table->add_option("--cert-dir", table_opts.cert_dir, "write each certificate here");

    BoundOptions steele_opts;
    auto* steele = app.add_subcommand("steele", "compare a binary bound with U^(d-1)");
    add_shape_options(steele, steele_opts, false);

    int mc_sigma = 2, mc_d = 2, mc_n = 100;
    std::string mc_samples = "100";
    std::uint64_t mc_seed = 1;
    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of E[L]/n");
    mc->add_option("--sigma", mc_sigma)->check(CLI::Range(2, 1 << 20))->capture_default_str();
    mc->add_option("--d", mc_d)->check(CLI::Range(2, 64))->capture_default_str();
    mc->add_option("--n", mc_n)->check(CLI::PositiveNumber)->capture_default_str();
    mc->add_option("--samples", mc_samples, "sample count or 'exhaustive'")->capture_default_str();
    mc->add_option("--seed", mc_seed)->capture_default_str();

    std::vector<std::string> lcs_texts;
    int lcs_sigma = 0;
    int lcs_diagonal = -1;
    auto* lcs_cmd = app.add_subcommand("lcs", "exact LCS length of digit strings");
    lcs_cmd->add_option("strings", lcs_texts, "two or more strings of digits")->required();
    lcs_cmd->add_option("--sigma", lcs_sigma, "alphabet size (default: largest digit + 1)");
    lcs_cmd->add_option("--diagonal", lcs_diagonal, "also report D_n for this n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (*bound) return solve_and_report(bound_opts, out, err, nullptr);
        if (*verify_cmd) return cmd_verify(verify_path, slack, out, err);
        if (*table) return cmd_table(table_opts, out, err);
        if (*steele) {
            steele_opts.sigma = 2;
            return cmd_steele(steele_opts, out, err);
        }
        if (*mc) return cmd_mc(mc_sigma, mc_d, mc_n, mc_samples, mc_seed, out);
        if (*lcs_cmd) return cmd_lcs(lcs_texts, lcs_sigma, lcs_diagonal, out);
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << '\n';
        return kResourceGuard;
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kVerificationFailed;
    }
    return kUsageError;
}

}  // namespace lcsbound::cli
