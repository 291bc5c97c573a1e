#include "zetagaps/zero_data.hpp"

#include <zlib.h>

#include <httplib.h>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "zetagaps/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary cache I/O assumes a little-endian host");

namespace zetagaps {

OrdinateTable OrdinateTable::from_ordinates(std::vector<double> ordinates,
                                            std::string source_id,
                                            int precision_digits) {
    if (ordinates.empty())
        throw ValidationError("ordinate table is empty");
    double prev = 0.0;
    for (std::size_t i = 0; i < ordinates.size(); ++i) {
        double g = ordinates[i];
        if (!std::isfinite(g) || g <= 0.0)
            throw ValidationError("ordinate " + std::to_string(i + 1) +
                                  " is not strictly positive");
        if (g < prev)
            throw ValidationError("ordinates decrease at position " +
                                  std::to_string(i + 1));
        prev = g;
    }
    OrdinateTable t;
    t.ordinates_ = std::move(ordinates);
    t.height_min_ = 0.0;
    t.height_max_ = t.ordinates_.back();
    t.source_id_ = std::move(source_id);
    t.precision_digits_ = precision_digits;
    return t;
}

double OrdinateTable::ordinate(std::size_t n) const {
    if (n < 1 || n > ordinates_.size())
        throw CoverageError("ordinate index " + std::to_string(n) +
                            " outside table of size " +
                            std::to_string(ordinates_.size()));
    return ordinates_[n - 1];
}

std::size_t OrdinateTable::count_upto(double T) const {
    if (!std::isfinite(T)) throw ArgumentError("count_upto: T must be finite");
    if (T > height_max_)
        throw CoverageError("count_upto: T = " + std::to_string(T) +
                            " beyond table height " +
                            std::to_string(height_max_) +
                            "; the count would only be a lower bound");
    auto it = std::upper_bound(ordinates_.begin(), ordinates_.end(), T);
    return static_cast<std::size_t>(it - ordinates_.begin());
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view tok, std::size_t line_no) {
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError("line " + std::to_string(line_no) +
                         ": malformed number '" + std::string(tok) + "'");
    return v;
}

int decimals_of(std::string_view tok) {
    auto dot = tok.find('.');
    if (dot == std::string_view::npos) return 0;
    int n = 0;
    for (std::size_t i = dot + 1; i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i])); ++i)
        ++n;
    return n;
}

}  // namespace

OrdinateTable parse_ordinates(std::istream& in, TableFormat format,
                              std::string source_id) {
    std::vector<double> ords;
    std::string line;
    std::size_t line_no = 0;
    bool have_base = false;
    double base = 0.0;
    int precision = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view tok = trim(line);
        if (tok.empty() || tok.front() == '#') continue;
        double v = parse_double(tok, line_no);
        precision = std::max(precision, decimals_of(tok));
        if (format == TableFormat::offset && !have_base) {
            base = v;
            have_base = true;
            continue;
        }
        double ord = (format == TableFormat::offset) ? base + v : v;
        if (!ords.empty() && ord < ords.back())
            throw ValidationError("line " + std::to_string(line_no) +
                                  ": ordinate decreases");
        ords.push_back(ord);
    }
    return OrdinateTable::from_ordinates(std::move(ords), std::move(source_id),
                                         precision);
}

OrdinateTable parse_ordinates(std::string_view text, TableFormat format,
                              std::string source_id) {
    std::istringstream in{std::string(text)};
    return parse_ordinates(in, format, std::move(source_id));
}

double rvm_main_term(double T, bool* flagged) {
    if (!std::isfinite(T) || T <= 1.0)
        throw DomainError("rvm_main_term: requires T > 1");
    if (flagged) *flagged = (T <= 2.0 * M_PI);
    double x = T / (2.0 * M_PI);
    return x * std::log(x) - x + 7.0 / 8.0;
}

double s_of_t(const OrdinateTable& table, double t) {
    if (!std::isfinite(t) || t <= 2.0 * M_PI)
        throw DomainError("s_of_t: requires t > 2*pi");
    return static_cast<double>(table.count_upto(t)) - rvm_main_term(t);
}

GapSequence gap_sequence(const OrdinateTable& table, std::size_t n,
                         std::size_t r) {
    if (n < 1)
        throw CoverageError("gap_sequence: indices are 1-based");
    if (n + r > table.size())
        throw CoverageError("gap_sequence: needs ordinates up to index " +
                            std::to_string(n + r) + " but table has " +
                            std::to_string(table.size()));
    GapSequence seq;
    seq.base_index = n;
    seq.gaps.reserve(r);
    auto ords = table.ordinates();
    for (std::size_t j = 0; j < r; ++j)
        seq.gaps.push_back(ords[n + j] - ords[n + j - 1]);
    return seq;
}

namespace {

constexpr char kMagic[4] = {'Z', 'G', 'C', '1'};

void append_bytes(std::string& buf, const void* p, std::size_t n) {
    buf.append(static_cast<const char*>(p), n);
}

std::uint32_t payload_crc(const std::string& payload) {
    return static_cast<std::uint32_t>(
        ::crc32(0L, reinterpret_cast<const Bytef*>(payload.data()),
                static_cast<uInt>(payload.size())));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ArgumentError("cannot open file: " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return std::move(os).str();
}

}  // namespace

void save_cache(const OrdinateTable& table,
                const std::filesystem::path& path) {
    std::string payload;
    std::uint64_t count = table.size();
    payload.reserve(8 + 8 * count);
    append_bytes(payload, &count, 8);
    for (double g : table.ordinates()) append_bytes(payload, &g, 8);
    std::uint32_t crc = payload_crc(payload);

    std::filesystem::path dir = path.parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    // Unique temp name, then atomic rename: concurrent writers race
    // benignly and readers never observe a partial file.
    std::random_device rd;
    std::filesystem::path tmp =
        path.string() + ".tmp" + std::to_string(rd()) + std::to_string(rd());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ArgumentError("cannot write cache file: " + tmp.string());
        out.write(kMagic, 4);
        out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
        out.write(reinterpret_cast<const char*>(&crc), 4);
        if (!out) {
            throw IntegrityError("short write to cache file: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

OrdinateTable load_cache(const std::filesystem::path& path) {
    std::string blob = read_file(path);
    if (blob.size() < 4 + 8 + 4 || std::memcmp(blob.data(), kMagic, 4) != 0)
        throw IntegrityError("cache file has bad magic: " + path.string());
    std::uint64_t count = 0;
    std::memcpy(&count, blob.data() + 4, 8);
    std::size_t expect = 4 + 8 + 8 * count + 4;
    if (blob.size() != expect)
        throw IntegrityError("cache file truncated or oversize: " +
                             path.string());
    std::string payload = blob.substr(4, 8 + 8 * count);
    std::uint32_t stored = 0;
    std::memcpy(&stored, blob.data() + expect - 4, 4);
    if (payload_crc(payload) != stored)
        throw IntegrityError("cache checksum mismatch: " + path.string());
    std::vector<double> ords(count);
    std::memcpy(ords.data(), payload.data() + 8, 8 * count);
    return OrdinateTable::from_ordinates(std::move(ords),
                                         path.filename().string(), 17);
}

OrdinateTable load_table(const std::filesystem::path& path) {
    std::string blob = read_file(path);
    if (blob.size() >= 4 && std::memcmp(blob.data(), kMagic, 4) == 0)
        return load_cache(path);
    return parse_ordinates(std::string_view(blob), TableFormat::plain,
                           path.filename().string());
}

std::uint32_t file_crc32(const std::filesystem::path& path) {
    std::string blob = read_file(path);
    return payload_crc(blob);
}

namespace {

// Supports http://host[:port]/path, file:///path, and bare filesystem
// paths. https would need a TLS build of the embedded client; callers
// get a clear FetchError instead of a silent downgrade.
std::string fetch_url_text(const std::string& url) {
    if (url.rfind("file://", 0) == 0) return read_file(url.substr(7));
    if (url.rfind("https://", 0) == 0)
        throw FetchError("https sources are not supported; serve over http, "
                         "file://, or pass a local path");
    if (url.rfind("http://", 0) == 0) {
        std::string rest = url.substr(7);
        auto slash = rest.find('/');
        std::string host = rest.substr(0, slash);
        std::string path =
            (slash == std::string::npos) ? "/" : rest.substr(slash);
        httplib::Client client(("http://" + host).c_str());
        client.set_connection_timeout(10, 0);
        client.set_read_timeout(30, 0);
        auto res = client.Get(path.c_str());
        if (!res)
            throw FetchError("cannot reach " + url);
        if (res->status != 200)
            throw FetchError("fetch of " + url + " returned status " +
                             std::to_string(res->status));
        return res->body;
    }
    return read_file(url);
}

}  // namespace

OrdinateTable fetch_remote(const std::string& url,
                           const std::filesystem::path& cache_dir) {
    std::string key_base;
    {
        std::uint32_t h = static_cast<std::uint32_t>(
            ::crc32(0L, reinterpret_cast<const Bytef*>(url.data()),
                    static_cast<uInt>(url.size())));
        char buf[16];
        std::snprintf(buf, sizeof buf, "%08x", h);
        key_base = buf;
    }
    std::filesystem::path cache_file = cache_dir / (key_base + ".zgc");
    if (std::filesystem::exists(cache_file)) return load_cache(cache_file);

    std::string text = fetch_url_text(url);
    OrdinateTable table =
        parse_ordinates(std::string_view(text), TableFormat::plain, url);
    std::filesystem::create_directories(cache_dir);
    save_cache(table, cache_file);
    return table;
}

}  // namespace zetagaps
