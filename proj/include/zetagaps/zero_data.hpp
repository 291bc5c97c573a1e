#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zetagaps {

// Immutable nondecreasing sequence of zero ordinates (imaginary parts,
// absolute units). Equal adjacent values model multiple zeros and are
// retained. Indexing is 1-based throughout: ordinate(1) is the lowest.
class OrdinateTable {
public:
    // Validates positivity and monotonicity; throws ValidationError.
    // height_min defaults to 0 (the table claims to know every zero up
    // to its last entry), height_max to the last ordinate.
    static OrdinateTable from_ordinates(std::vector<double> ordinates,
                                        std::string source_id,
                                        int precision_digits);

    std::span<const double> ordinates() const { return ordinates_; }
    std::size_t size() const { return ordinates_.size(); }
    double height_min() const { return height_min_; }
    double height_max() const { return height_max_; }
    const std::string& source_id() const { return source_id_; }
    int precision_digits() const { return precision_digits_; }

    // 1-based access; n outside [1, size] throws CoverageError.
    double ordinate(std::size_t n) const;

    // N(T): number of ordinates <= T. Right-continuous step function by
    // binary search. T > height_max would silently undercount, so it
    // throws CoverageError instead.
    std::size_t count_upto(double T) const;

private:
    std::vector<double> ordinates_;
    double height_min_ = 0.0;
    double height_max_ = 0.0;
    std::string source_id_;
    int precision_digits_ = 0;
};

// r consecutive gaps g_n, ..., g_{n+r-1} where g_k = ordinate(k+1) -
// ordinate(k). base_index is the n of the first gap.
struct GapSequence {
    std::size_t base_index = 0;
    std::vector<double> gaps;
};

enum class TableFormat { plain, offset };

// Text parsing. "plain": one decimal ordinate per line. "offset": the
// first data line is a base height, later lines are offsets added to
// it. '#' comment lines and blank lines are skipped in both.
OrdinateTable parse_ordinates(std::istream& in, TableFormat format,
                              std::string source_id);
OrdinateTable parse_ordinates(std::string_view text, TableFormat format,
                              std::string source_id);

// Loads a table from disk, sniffing the binary-cache magic; falls back
// to plain text.
OrdinateTable load_table(const std::filesystem::path& path);

// Riemann-von Mangoldt main term (T/2pi) log(T/2pi) - T/2pi + 7/8.
// Throws DomainError for T <= 1. Below T = 2pi the log term is
// negative and the value is of limited use; *flagged reports that.
double rvm_main_term(double T, bool* flagged = nullptr);

// Remainder S(t) approximation: count_upto(t) - rvm_main_term(t).
double s_of_t(const OrdinateTable& table, double t);

// The r gaps starting at 1-based index n; requires ordinates n..n+r.
GapSequence gap_sequence(const OrdinateTable& table, std::size_t n,
                         std::size_t r);

// Binary cache: magic "ZGC1", u64 LE count, count binary64 LE
// ordinates, CRC-32 (zlib polynomial, LE) of everything after the
// magic. Bit-exact round trip. save_cache writes via a temp file and
// atomic rename so concurrent writers are safe.
void save_cache(const OrdinateTable& table, const std::filesystem::path& path);
OrdinateTable load_cache(const std::filesystem::path& path);

// Fetches a table from an http(s) or file:// URL (a bare path works
// too), caching the parsed result under cache_dir keyed by the URL.
// A warm cache is served without touching the network; a cold cache
// with an unreachable source throws FetchError.
OrdinateTable fetch_remote(const std::string& url,
                           const std::filesystem::path& cache_dir);

// CRC-32 of a whole file, for input checksumming.
std::uint32_t file_crc32(const std::filesystem::path& path);

}  // namespace zetagaps
