#include "lcsbound/certificate.hpp"

#include <zlib.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

namespace lcsbound {

namespace {

constexpr std::string_view kMagic = "cs-cert 1";

std::uint32_t crc_update(std::uint32_t crc, std::string_view bytes) {
    return static_cast<std::uint32_t>(
        crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()),
              static_cast<uInt>(bytes.size())));
}

[[noreturn]] void malformed(const std::string& what) {
    throw CertificateFormatError("malformed certificate: " + what);
}

// Splits "key=value" and checks the key.
std::string_view expect_field(std::string_view token, std::string_view key) {
    const auto eq = token.find('=');
    if (eq == std::string_view::npos || token.substr(0, eq) != key) {
        malformed("expected field '" + std::string(key) + "'");
    }
    return token.substr(eq + 1);
}

template <class T>
T parse_number(std::string_view text, std::string_view what, int base = 10) {
    T value{};
    std::from_chars_result res;
    if constexpr (std::is_floating_point_v<T>) {
        res = std::from_chars(text.data(), text.data() + text.size(), value);
    } else {
        res = std::from_chars(text.data(), text.data() + text.size(), value, base);
    }
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        malformed("bad value for " + std::string(what) + ": '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split_spaces(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') ++i;
        const std::size_t j = line.find(' ', i);
        const std::size_t end = j == std::string_view::npos ? line.size() : j;
        if (end > i) out.push_back(line.substr(i, end - i));
        i = end;
    }
    return out;
}

bool next_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

}  // namespace

void Certificate::validate() const {
    Shape::checked(shape.sigma, shape.d, shape.l);
    if (!(u.shape == shape) || u.size() != shape.states()) {
        throw std::invalid_argument("certificate header does not match vector dimension");
    }
    if (!std::isfinite(r) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("certificate r/epsilon must be finite");
    }
    if (epsilon < 0.0) throw std::invalid_argument("certificate epsilon must be >= 0");
    if (!u.all_finite()) throw std::invalid_argument("certificate vector has non-finite entries");
}

VerificationReport verify(const Certificate& cert, double slack) {
    cert.validate();
    if (!(slack >= 0.0)) throw std::invalid_argument("slack must be >= 0");
    const OperatorContext op(cert.shape);
    std::vector<double> gap(cert.u.size());
    feasibility_gap(op, cert.u.values, cert.r, gap);

    VerificationReport rep;
    rep.max_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < gap.size(); ++k) {
        const double v = gap[k] - cert.epsilon;
        if (v > rep.max_violation) {
            rep.max_violation = v;
            rep.worst_index = k;
        }
    }
    rep.passed = rep.max_violation <= slack;
    rep.certified = slack == 0.0;
    rep.bound = cert.bound();
    return rep;
}

double simple_bound(int sigma) {
    if (sigma < 2) throw std::invalid_argument("alphabet size must be >= 2");
    return 1.0 / sigma;
}

double steele_threshold(int d) {
    if (d < 2) throw std::invalid_argument("need d >= 2");
    return std::pow(KnownConstants::lueker_upper_2_2, d - 1);
}

SteeleReport steele_check(const Certificate& cert) {
    if (cert.shape.sigma != 2) {
        throw std::invalid_argument("the comparison applies to the binary alphabet only");
    }
    const VerificationReport v = verify(cert, 0.0);
    if (!v.passed) throw std::runtime_error("certificate failed verification");
    SteeleReport rep;
    rep.d = cert.shape.d;
    rep.bound = v.bound;
    rep.threshold = steele_threshold(rep.d);
    rep.strictly_greater = rep.bound > rep.threshold;
    rep.via_simple_bound = rep.threshold < simple_bound(2);
    return rep;
}

std::string format_exact(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_truncated(double x, int decimals) {
    if (!std::isfinite(x)) return format_exact(x);
    if (decimals < 0 || decimals > 15) throw std::invalid_argument("decimals out of range");
    const long double scale = std::pow(10.0L, decimals);
    auto k = static_cast<long long>(std::floor(static_cast<long double>(x) * scale));
    while (static_cast<long double>(k) / scale > x) --k;
    while (static_cast<long double>(k + 1) / scale <= x) ++k;
    const bool negative = k < 0;
    const unsigned long long mag = negative ? static_cast<unsigned long long>(-k)
                                            : static_cast<unsigned long long>(k);
    const auto p = static_cast<unsigned long long>(scale);
    std::string s = negative ? "-" : "";
    s += std::to_string(mag / p);
    if (decimals > 0) {
        std::string frac = std::to_string(mag % p);
        s += '.';
        s += std::string(static_cast<std::size_t>(decimals) - frac.size(), '0') + frac;
    }
    return s;
}

void write_certificate(const Certificate& cert, std::ostream& out) {
    cert.validate();
    if (cert.provenance.find('\n') != std::string::npos) {
        throw std::invalid_argument("provenance must be a single line");
    }
    std::string payload;
    payload.reserve(cert.u.size() * 24);
    for (double x : cert.u.values) {
        payload += format_exact(x);
        payload += '\n';
    }
    const std::uint32_t crc = crc_update(0, payload);
    char crc_hex[16];
    std::snprintf(crc_hex, sizeof crc_hex, "%08x", crc);

    out << kMagic;
    if (!cert.provenance.empty()) out << ' ' << cert.provenance;
    out << '\n';
    out << "sigma=" << cert.shape.sigma << " d=" << cert.shape.d << " l=" << cert.shape.l
        << " r=" << format_exact(cert.r) << " epsilon=" << format_exact(cert.epsilon) << '\n';
    out << "count=" << cert.u.size() << " crc32=" << crc_hex << '\n';
    out << payload;
    if (!out) throw std::runtime_error("failed writing certificate");
}

void write_certificate(const Certificate& cert, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_certificate(cert, f);
    f.close();
    if (!f) throw std::runtime_error("failed writing " + path.string());
}

Certificate read_certificate(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) malformed("empty input");
    std::string provenance;
    if (line.rfind(kMagic, 0) != 0) malformed("missing 'cs-cert 1' magic");
    if (line.size() > kMagic.size()) {
        if (line[kMagic.size()] != ' ') malformed("unsupported version line");
        provenance = line.substr(kMagic.size() + 1);
    }

    if (!next_line(in, line)) malformed("missing header line");
    const auto header = split_spaces(line);
    if (header.size() != 5) malformed("header must hold sigma, d, l, r, epsilon");
    const int sigma = parse_number<int>(expect_field(header[0], "sigma"), "sigma");
    const int d = parse_number<int>(expect_field(header[1], "d"), "d");
    const int l = parse_number<int>(expect_field(header[2], "l"), "l");
    const double r = parse_number<double>(expect_field(header[3], "r"), "r");
    const double eps = parse_number<double>(expect_field(header[4], "epsilon"), "epsilon");
    Shape shape;
    try {
        shape = Shape::checked(sigma, d, l);
    } catch (const std::invalid_argument& e) {
        malformed(e.what());
    }

    if (!next_line(in, line)) malformed("missing count line");
    const auto counts = split_spaces(line);
    if (counts.size() != 2) malformed("count line must hold count and crc32");
    const auto count = parse_number<std::uint64_t>(expect_field(counts[0], "count"), "count");
    const auto crc = parse_number<std::uint32_t>(expect_field(counts[1], "crc32"), "crc32", 16);
    if (count != shape.states()) malformed("count does not match sigma^(l*d)");

    Certificate cert;
    cert.shape = shape;
    cert.r = r;
    cert.epsilon = eps;
    cert.provenance = std::move(provenance);
    cert.u.shape = shape;
    cert.u.values.reserve(count);
    std::uint32_t actual = 0;
    for (std::uint64_t k = 0; k < count; ++k) {
        if (!next_line(in, line)) malformed("truncated payload");
        cert.u.values.push_back(parse_number<double>(line, "vector entry"));
        actual = crc_update(actual, line);
        actual = crc_update(actual, "\n");
    }
    while (next_line(in, line)) {
        if (!line.empty()) malformed("trailing data after payload");
    }
    if (actual != crc) malformed("crc32 mismatch");
    try {
        cert.validate();
    } catch (const std::invalid_argument& e) {
        malformed(e.what());
    }
    return cert;
}

Certificate read_certificate(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    return read_certificate(f);
}

}  // namespace lcsbound
