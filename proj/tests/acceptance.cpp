// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lcsbound/certificate.hpp"
#include "lcsbound/cli.hpp"
#include "lcsbound/operator.hpp"
#include "lcsbound/oracles.hpp"
#include "lcsbound/reference_tables.hpp"
#include "lcsbound/solver.hpp"
#include "reference_operator.hpp"

using namespace lcsbound;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    Criterion(int id, const char* title) : id(id), title(title) {}

    int id;
    const char* title;
    bool passed = true;
    std::string detail;

    void fail(const std::string& why) {
        if (passed) detail = why;
        passed = false;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[200];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

std::vector<ValueVector> random_args(const Shape& s, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    std::vector<ValueVector> args;
    for (int j = 0; j < s.d; ++j) {
        ValueVector v = ValueVector::zeros(s);
        for (auto& x : v.values) x = dist(rng);
        args.push_back(std::move(v));
    }
    return args;
}

// Table rows: solve, verify, compare, keep the certificate file.
struct RowResult {
    ReferenceRow row;
    Certificate cert;
    VerificationReport report;
    fs::path path;
};

std::vector<RowResult> run_table(Criterion& c, const fs::path& dir) {
    std::vector<RowResult> rows;
    for (const auto& row : kPublishedBounds) {
        const Shape shape = Shape::checked(row.sigma, row.d, row.l);
        const auto t0 = std::chrono::steady_clock::now();
        const cli::BoundRun run = cli::compute_bound(shape, 0, kDefaultMemoryCap, nullptr);
        const fs::path path = dir / ("cert_s" + std::to_string(row.sigma) + "_d" +
                                     std::to_string(row.d) + "_l" + std::to_string(row.l) + ".txt");
        write_certificate(run.certificate, path);
        const bool ok = run.report.passed && run.report.certified &&
                        run.report.bound >= row.bound - 1e-4;
        std::printf("  (%d,%d,%d) states=%llu computed=%s published=%.6f iterations=%d %.1fs %s\n",
                    row.sigma, row.d, row.l, static_cast<unsigned long long>(shape.states()),
                    format_truncated(run.report.bound).c_str(), row.bound,
                    run.triplet.iterations_run, seconds_since(t0), ok ? "ok" : "BELOW");
        std::fflush(stdout);
        if (!ok) {
            c.fail(fmt("row sigma=%g d=%g: bound %.9f", row.sigma, row.d, run.report.bound));
        }
        rows.push_back({row, run.certificate, run.report, path});
    }
    if (c.passed) c.detail = std::to_string(rows.size()) + " rows verified, all within 1e-4";
    return rows;
}

void soundness(Criterion& c, const std::vector<RowResult>& rows) {
    int checked = 0;
    double worst = 0.0;
    auto check = [&](const Certificate& cert, const VerificationReport& rep) {
        if (!rep.passed) return;
        ++checked;
        worst = std::max(worst, rep.bound);
        if (!(rep.bound <= KnownConstants::lueker_upper_2_2)) {
            c.fail(fmt("l=%g bound %.9f exceeds the upper bound", cert.shape.l, rep.bound));
        }
    };
    for (const auto& r : rows) {
        if (r.row.sigma == 2 && r.row.d == 2) check(r.cert, r.report);
    }
    for (int l = 1; l <= 8; ++l) {
        const auto run = cli::compute_bound(Shape::checked(2, 2, l), 0, kDefaultMemoryCap, nullptr);
        check(run.certificate, run.report);
    }
    if (checked < 9) c.fail("too few verified (2,2) certificates");
    if (c.passed) c.detail = std::to_string(checked) + " verified (2,2) bounds, largest " + format_exact(worst);
}

void steele(Criterion& c, const std::vector<RowResult>& rows) {
    std::string detail;
    for (int d : {3, 4}) {
        const auto it = std::find_if(rows.begin(), rows.end(), [d](const RowResult& r) {
            return r.row.sigma == 2 && r.row.d == d;
        });
        if (it == rows.end()) {
            c.fail("missing d=" + std::to_string(d));
            continue;
        }
        const SteeleReport rep = steele_check(read_certificate(it->path));
        if (!rep.strictly_greater) c.fail(fmt("d=%g: %.9f <= %.9f", d, rep.bound, rep.threshold));
        detail += (detail.empty() ? "" : ", ") + format_truncated(rep.bound) + " > " +
                  format_truncated(rep.threshold);
    }
    if (c.passed) c.detail = detail;
}

void closed_form(Criterion& c) {
    const auto run = cli::compute_bound(Shape::checked(2, 2, 1), 0, kDefaultMemoryCap, nullptr);
    const double err = std::abs(run.report.bound - 2.0 / 3.0);
    if (!run.report.passed) c.fail("certificate did not verify");
    if (!(err <= 1e-6)) c.fail(fmt("|bound - 2/3| = %.3g", err));
    if (c.passed) c.detail = "bound " + format_exact(run.report.bound) + ", error " + fmt("%.2g", err);
}

void operator_properties(Criterion& c) {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> bump(0.0, 2.0);
    std::uniform_real_distribution<double> shift(-50.0, 50.0);
    double worst_shift = 0.0;
    for (const auto& s : {Shape::checked(2, 2, 2), Shape::checked(2, 3, 1), Shape::checked(3, 2, 2)}) {
        const OperatorContext op(s);
        for (int trial = 0; trial < 1000; ++trial) {
            const auto v = random_args(s, rng);
            auto w = v;
            auto moved = v;
            const double r = shift(rng);
            for (int j = 0; j < s.d; ++j) {
                for (std::size_t k = 0; k < w[j].size(); ++k) {
                    w[j][k] += (rng() % 4 == 0) ? 0.0 : bump(rng);
                    moved[j][k] += r;
                }
            }
            const auto fv = op.apply_F(v);
            const auto fw = op.apply_F(w);
            const auto fm = op.apply_F(moved);
            for (std::size_t k = 0; k < fv.size(); ++k) {
                if (fv[k] > fw[k] + 1e-12) c.fail("monotonicity violated");
                const double dev = std::abs(fm[k] - fv[k] - r);
                worst_shift = std::max(worst_shift, dev);
                if (dev > 1e-12) c.fail(fmt("translation deviates by %.3g", dev));
            }
        }
    }
    if (c.passed) c.detail = "3000 random tuples, max translation deviation " + fmt("%.2g", worst_shift);
}

void recurrence(Criterion& c) {
    int comparisons = 0;
    for (int l = 1; l <= 2; ++l) {
        const Shape s = Shape::checked(2, 2, l);
        const OperatorContext op(s);
        std::vector<ValueVector> w;
        for (int n = 0; n <= 5; ++n) w.push_back(ValueVector{s, exhaustive_w_vector(s, n)});
        for (int n = s.d; n <= 5; ++n) {
            std::vector<ValueVector> args;
            for (int j = 1; j <= s.d; ++j) args.push_back(w[n - j]);
            const auto f = op.apply_F(args);
            for (std::size_t k = 0; k < f.size(); ++k, ++comparisons) {
                if (w[n][k] < f[k] - 1e-12) {
                    c.fail(fmt("l=%g n=%g: w below F at index %g", l, n, static_cast<double>(k)));
                }
            }
        }
    }
    if (c.passed) c.detail = std::to_string(comparisons) + " coordinates with w_n >= F(w_{n-1}, w_{n-2})";
}

void structure(Criterion& c) {
    int pieces = 0;
    for (const auto& s : {Shape::checked(2, 2, 1), Shape::checked(2, 2, 2), Shape::checked(3, 2, 2),
                          Shape::checked(2, 3, 1)}) {
        const OperatorContext op(s);
        for (Symbol z = 0; z < s.sigma; ++z) {
            for (int i = 1; i <= s.d; ++i, ++pieces) {
                const auto formula = fz_nonzero_count(s.sigma, s.d, s.l, i);
                const auto swept = op.count_incidences(z, i);
                const auto enumerated = lcsbound::testing::reference_incidences(s, z, i);
                if (swept != formula || enumerated != formula) {
                    c.fail(fmt("sigma=%g d=%g l=%g", s.sigma, s.d, s.l) + " z=" + std::to_string(z) +
                           " i=" + std::to_string(i));
                }
            }
        }
    }
    if (c.passed) c.detail = std::to_string(pieces) + " pieces match the closed-form count";
}

void oracle_checks(Criterion& c) {
    SplitMix64 rng(777);
    for (int trial = 0; trial < 10000; ++trial) {
        const int sigma = 2 + static_cast<int>(rng.below(3));
        const int d = 2 + static_cast<int>(rng.below(3));
        LcsInstance in{sigma, {}};
        for (int j = 0; j < d; ++j) in.words.push_back(random_word(rng, sigma, static_cast<int>(rng.below(9))));
        const int base = lcs(in);
        auto perm = in;
        for (int j = d - 1; j > 0; --j) std::swap(perm.words[j], perm.words[rng.below(j + 1)]);
        if (lcs(perm) != base) c.fail("permutation changed lcs");
        auto longer = in;
        longer.words[rng.below(d)].push_back(static_cast<Symbol>(rng.below(sigma)));
        const int grown = lcs(longer);
        if (grown < base || grown > base + 1) c.fail("appending a character broke monotonicity");
    }
    std::uint64_t tuples = 0;
    for (int d = 2; d <= 3; ++d) {
        for (int n = 1; n <= 4; ++n) {
            const Shape s = Shape::checked(2, d, n);
            for (std::uint64_t k = 0; k < s.states(); ++k, ++tuples) {
                const LcsInstance in{2, decode(k, s).words()};
                if (lcs(in) > diagonal_lcs(in, n * d)) c.fail("L_n > D_nd");
            }
        }
    }
    if (c.passed) c.detail = "10000 random instances, " + std::to_string(tuples) + " exhaustive tuples";
}

Certificate random_certificate(std::mt19937_64& rng) {
    const Shape s = Shape::checked(2 + static_cast<int>(rng() % 3), 2 + static_cast<int>(rng() % 2),
                                   1 + static_cast<int>(rng() % 2));
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Certificate cert{s, 0.0, 0.0, ValueVector::zeros(s), "random"};
    for (auto& x : cert.u.values) x = dist(rng) * std::pow(10.0, static_cast<int>(rng() % 7) - 3);
    cert.r = dist(rng);
    cert.epsilon = std::abs(dist(rng));
    return cert;
}

// Verification with the combinatorial evaluator instead of the sweep.
double reference_violation(const Certificate& cert) {
    const Shape& s = cert.shape;
    std::vector<std::vector<double>> args;
    for (int j = 0; j < s.d; ++j) {
        std::vector<double> a = cert.u.values;
        for (auto& x : a) x += (s.d - 1 - j) * cert.r;
        args.push_back(std::move(a));
    }
    const auto f = lcsbound::testing::reference_F(s, args);
    double worst = -1e300;
    for (std::size_t k = 0; k < f.size(); ++k) {
        worst = std::max(worst, cert.u[k] + s.d * cert.r - f[k] - cert.epsilon);
    }
    return worst;
}

bool round_trips(const Certificate& cert) {
    std::stringstream io;
    write_certificate(cert, io);
    const Certificate back = read_certificate(io);
    return back == cert && std::memcmp(back.u.values.data(), cert.u.values.data(),
                                       cert.u.size() * sizeof(double)) == 0;
}

bool corruption_detected(const Certificate& cert, std::mt19937_64& rng) {
    std::ostringstream out;
    write_certificate(cert, out);
    std::string text = out.str();
    const std::size_t payload = text.find('\n', text.find("count=")) + 1;
    std::size_t pos = payload + rng() % (text.size() - payload);
    while (!std::isdigit(static_cast<unsigned char>(text[pos]))) pos = payload + rng() % (text.size() - payload);
    text[pos] = text[pos] == '7' ? '3' : '7';
    std::istringstream in(text);
    try {
        read_certificate(in);
    } catch (const CertificateFormatError&) {
        return true;
    }
    return false;
}

void certificates(Criterion& c, const std::vector<RowResult>& rows) {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
        Certificate cert = random_certificate(rng);
        if (!round_trips(cert)) c.fail("random round trip differs");
        if (!corruption_detected(cert, rng)) c.fail("corrupted digit not detected");
        // A random triplet made feasible must agree between both evaluators.
        const double v = reference_violation(cert);
        const auto rep = verify(cert);
        if (std::abs(rep.max_violation - v) > 1e-9) c.fail("evaluators disagree on a random certificate");
        cert.epsilon += std::max(0.0, v) + 1e-9;
        if (!verify(cert).passed || reference_violation(cert) > 0.0) c.fail("raised epsilon does not verify");
        cert.u[rng() % cert.u.size()] += 1.0 + cert.epsilon;
        std::stringstream io;
        write_certificate(cert, io);
        if (read_certificate(io) != cert) c.fail("edited certificate round trip differs");
    }
    int reference_checked = 0;
    double reference_worst = -1e300;
    for (const auto& r : rows) {
        const Certificate cert = read_certificate(r.path);
        if (!round_trips(cert) || cert.bound() != r.cert.bound()) c.fail("table certificate round trip");
        if (!corruption_detected(cert, rng)) c.fail("table certificate corruption not detected");
        const auto rep = verify(cert);
        if (!rep.passed) c.fail("table certificate failed re-verification");
        if (cert.shape.states() <= 20000) {
            ++reference_checked;
            const double v = reference_violation(cert);
            reference_worst = std::max(reference_worst, v);
            if (v > 1e-12) c.fail(fmt("reference evaluator rejects a table certificate by %.3g", v));
        }
        Certificate bad = cert;
        bad.u[rep.worst_index] += 1e-3;
        if (verify(bad).passed) c.fail("perturbed table certificate still passes");
    }
    if (c.passed) {
        c.detail = "100 random + " + std::to_string(rows.size()) + " table certificates, " +
                   std::to_string(reference_checked) + " re-checked by the reference evaluator (max " +
                   fmt("%.2g", reference_worst) + ")";
    }
}

void monte_carlo(Criterion& c) {
    const auto a = mc_estimate(2, 2, 5000, 20, 1);
    const auto b = mc_estimate(2, 2, 5000, 20, 1);
    if (!(a.mean >= 0.77 && a.mean <= 0.84)) c.fail(fmt("mean %.6f outside [0.77, 0.84]", a.mean));
    if (a.mean != b.mean || a.std_error != b.std_error) c.fail("not deterministic");
    if (c.passed) c.detail = "mean " + fmt("%.6f +- %.6f", a.mean, a.std_error);
}

}  // namespace

int main(int argc, char** argv) {
    fs::path cert_dir = fs::temp_directory_path() / "lcsbound_acceptance";
    for (int k = 1; k + 1 < argc; ++k) {
        if (std::strcmp(argv[k], "--cert-dir") == 0) cert_dir = argv[k + 1];
    }
    fs::create_directories(cert_dir);

    std::vector<Criterion> crit = {
        {1, "table reproduction"},     {2, "soundness guard"},       {3, "Steele comparison"},
        {4, "closed form 2/3"},        {5, "operator properties"},   {6, "recurrence oracle"},
        {7, "structure audit"},        {8, "oracle cross-checks"},   {9, "certificate round trip"},
        {10, "Monte Carlo sanity"},
    };
    auto guarded = [&](Criterion& c, auto&& body) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            body();
        } catch (const std::exception& e) {
            c.fail(std::string("exception: ") + e.what());
        }
        std::printf("criterion %d (%s): %s  [%s] %.1fs\n", c.id, c.title, c.passed ? "PASS" : "FAIL",
                    c.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    };

    std::vector<RowResult> rows;
    guarded(crit[0], [&] { rows = run_table(crit[0], cert_dir); });
    guarded(crit[1], [&] { soundness(crit[1], rows); });
    guarded(crit[2], [&] { steele(crit[2], rows); });
    guarded(crit[3], [&] { closed_form(crit[3]); });
    guarded(crit[4], [&] { operator_properties(crit[4]); });
    guarded(crit[5], [&] { recurrence(crit[5]); });
    guarded(crit[6], [&] { structure(crit[6]); });
    guarded(crit[7], [&] { oracle_checks(crit[7]); });
    guarded(crit[8], [&] { certificates(crit[8], rows); });
    guarded(crit[9], [&] { monte_carlo(crit[9]); });

    const auto failed = std::count_if(crit.begin(), crit.end(), [](const Criterion& c) { return !c.passed; });
    std::printf("acceptance: %d/%zu criteria passed\n", static_cast<int>(crit.size() - failed), crit.size());
    return failed == 0 ? 0 : 1;
}
