// Command-line surface for the zetagaps library: zero-table statistics,
// sine-kernel model evaluation, GUE sampling, and data acquisition.
// Every command writes deterministic CSV or JSON given identical inputs,
// flags, and seed; --threads only changes speed, never values.

#include <CLI11.hpp>

#include <chrono>
#include <clocale>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zetagaps/analytic.hpp"
#include "zetagaps/errors.hpp"
#include "zetagaps/gap_stats.hpp"
#include "zetagaps/gue.hpp"
#include "zetagaps/window_stats.hpp"
#include "zetagaps/xi_diagnostics.hpp"
#include "zetagaps/zero_data.hpp"

namespace {

using json = nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v ? std::string(v) : fallback;
}

// One emitted table: header + stringified rows for CSV, or an array of
// objects for JSON. Keeping both paths on the same row data guarantees
// the two formats agree.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::initializer_list<std::string> cells) {
        rows.emplace_back(cells);
    }
    std::string to_csv() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < columns.size(); ++i)
            os << (i ? "," : "") << columns[i];
        os << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << row[i];
            os << "\n";
        }
        return std::move(os).str();
    }
    std::string to_json() const {
        json arr = json::array();
        for (const auto& row : rows) {
            json obj;
            for (std::size_t i = 0; i < row.size() && i < columns.size(); ++i)
                obj[columns[i]] = row[i];
            arr.push_back(obj);
        }
        return arr.dump(2) + "\n";
    }
};

struct OutputContext {
    std::string command;
    std::string format = "csv";   // csv | json
    std::string out_path;         // empty or "-": stdout
    std::map<std::string, std::string> parameters;
    std::map<std::string, std::string> input_checksums;
    std::optional<std::uint64_t> seed;
    std::chrono::steady_clock::time_point started =
        std::chrono::steady_clock::now();

    void emit(const Table& table) const {
        std::string payload =
            (format == "json") ? table.to_json() : table.to_csv();
        if (out_path.empty() || out_path == "-") {
            std::cout << payload;
            return;
        }
        {
            std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
            if (!out)
                throw zetagaps::ArgumentError("cannot write output file: " +
                                              out_path);
            out << payload;
        }
        write_manifest();
    }

    // Replay record next to the output file. wall_time_seconds is the
    // one field that varies between byte-identical runs.
    void write_manifest() const {
        json m;
        m["command"] = command;
        m["parameters"] = parameters;
        m["input_checksums"] = input_checksums;
        m["output_paths"] = json::array({out_path});
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - started)
                          .count();
        m["wall_time_seconds"] = secs;
        if (seed) m["seed"] = *seed;
        std::ofstream out(out_path + ".manifest.json",
                          std::ios::binary | std::ios::trunc);
        out << m.dump(2) << "\n";
    }
};

std::string default_cache_dir() {
    return env_or("ZETAGAPS_CACHE_DIR", "zetagaps-cache");
}

zetagaps::OrdinateTable resolve_table(const std::string& data,
                                      OutputContext& ctx) {
    ctx.parameters["data"] = data;
    if (data.find("://") != std::string::npos) {
        ctx.input_checksums["data"] = "url:" + data;
        return zetagaps::fetch_remote(data, default_cache_dir());
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "crc32:%08x", zetagaps::file_crc32(data));
    ctx.input_checksums["data"] = buf;
    return zetagaps::load_table(data);
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> vals;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            double v = std::stod(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            vals.push_back(v);
        } catch (const std::exception&) {
            throw zetagaps::ArgumentError("malformed number in list: '" + tok +
                                          "'");
        }
    }
    if (vals.empty())
        throw zetagaps::ArgumentError("expected a comma-separated list");
    return vals;
}

// ---- subcommand bodies ----

void run_cr_table(int rmax, double tol, OutputContext& ctx) {
    if (rmax < 1) throw zetagaps::ArgumentError("cr-table: rmax must be >= 1");
    if (!(tol > 0.0)) throw zetagaps::ArgumentError("cr-table: tol must be > 0");
    ctx.parameters["rmax"] = std::to_string(rmax);
    ctx.parameters["tol"] = fmt(tol);
    static const int kRows[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 20, 100, 1000};
    Table t;
    t.columns = {"r", "c_r", "f_at_c_r"};
    for (int r : kRows) {
        if (r > rmax) continue;
        double cr = zetagaps::analytic::solve_cr(r, tol);
        double f = zetagaps::analytic::pair_correlation_f(cr, 1e-11).value;
        t.add_row({std::to_string(r), fmt(cr), fmt(f)});
    }
    ctx.emit(t);
}

void run_runs(const std::string& data, int r, double c, double T,
              const std::string& convention, OutputContext& ctx) {
    auto table = resolve_table(data, ctx);
    ctx.parameters["r"] = std::to_string(r);
    ctx.parameters["c"] = fmt(c);
    ctx.parameters["T"] = fmt(T);
    ctx.parameters["convention"] = convention;
    auto conv = zetagaps::gapstats::PartitionConvention::minimal_failure;
    if (convention == "literal")
        conv = zetagaps::gapstats::PartitionConvention::literal_prefix;
    else if (convention != "minimal")
        throw zetagaps::ArgumentError(
            "runs: convention must be 'minimal' or 'literal'");
    auto rep = zetagaps::gapstats::count_runs(table, r, c, T, conv);
    Table t;
    t.columns = {"j", "value", "meaning"};
    t.add_row({"", std::to_string(rep.n_total), "n_total"});
    t.add_row({"", std::to_string(rep.n_runs), "n_runs"});
    for (std::size_t j = 0; j < rep.s_sizes.size(); ++j)
        t.add_row({std::to_string(j + 1), std::to_string(rep.s_sizes[j]),
                   "s_size"});
    t.add_row({"", std::to_string(rep.partition_residual),
               "partition_residual"});
    ctx.emit(t);
}

void run_pc(const std::string& data, const std::string& c_list, double T,
            OutputContext& ctx) {
    auto table = resolve_table(data, ctx);
    ctx.parameters["c"] = c_list;
    ctx.parameters["T"] = fmt(T);
    Table t;
    t.columns = {"c", "threshold_absolute", "empirical", "model_f",
                 "difference"};
    for (double c : parse_list(c_list)) {
        double emp = zetagaps::gapstats::empirical_pair_correlation(table, c, T);
        double model = zetagaps::analytic::pair_correlation_f(c, 1e-10).value;
        t.add_row({fmt(c), fmt(zetagaps::gapstats::moderate_threshold(T, c)),
                   fmt(emp), fmt(model), fmt(emp - model)});
    }
    ctx.emit(t);
}

void run_ah(const std::string& data, double T, OutputContext& ctx) {
    auto table = resolve_table(data, ctx);
    ctx.parameters["T"] = fmt(T);
    auto hist = zetagaps::gapstats::ah_binning(table, T);
    Table t;
    t.columns = {"k", "half_integer", "count", "p_value"};
    for (const auto& [k, cnt] : hist.bin_counts)
        t.add_row({std::to_string(k), fmt(k / 2.0), std::to_string(cnt),
                   fmt(hist.p_values.at(k))});
    ctx.emit(t);
}

void run_windows(const std::string& data, double T, int m, int r,
                 double grid_step, const std::string& convention, double site,
                 OutputContext& ctx) {
    auto table = resolve_table(data, ctx);
    ctx.parameters["T"] = fmt(T);
    ctx.parameters["m"] = std::to_string(m);
    ctx.parameters["r"] = std::to_string(r);
    ctx.parameters["grid_step"] = fmt(grid_step);
    ctx.parameters["convention"] = convention;
    zetagaps::windows::WindowConfig cfg;
    cfg.T = T;
    cfg.m = m;
    cfg.r = r;
    auto conv = zetagaps::windows::GapConvention::boundary_inclusive;
    if (convention == "interior")
        conv = zetagaps::windows::GapConvention::interior_only;
    else if (convention != "inclusive")
        throw zetagaps::ArgumentError(
            "windows: convention must be 'inclusive' or 'interior'");

    if (site > 0.0) {
        ctx.parameters["site"] = fmt(site);
        auto rep = zetagaps::windows::window_report(table, site, cfg, conv);
        Table t;
        t.columns = {"site", "window", "count", "max_gap", "has_moderate_gap"};
        for (std::size_t j = 0; j < rep.counts.size(); ++j)
            t.add_row({fmt(rep.site), std::to_string(j + 1),
                       std::to_string(rep.counts[j]), fmt(rep.max_gaps[j]),
                       rep.has_moderate_gap[j] ? "1" : "0"});
        ctx.emit(t);
        return;
    }

    double h = cfg.h();
    double var = zetagaps::windows::variance_integral(table, T, h);
    double ratio = var / (T * std::log(2.0 * m));
    double good = zetagaps::windows::good_set_measure(table, cfg, grid_step);
    Table t;
    t.columns = {"T", "m", "r", "h", "variance_integral", "fujii_ratio",
                 "good_fraction", "gap_threshold"};
    t.add_row({fmt(T), std::to_string(m), std::to_string(r), fmt(h), fmt(var),
               fmt(ratio), fmt(good),
               fmt(zetagaps::windows::moderate_gap_threshold(T))});
    ctx.emit(t);
}

void run_gue(const std::string& what, double cmax, double step, double s,
             int kmax, int quad_order, int dim, int matrices,
             const std::string& thresholds, double bulk, int threads,
             OutputContext& ctx) {
    ctx.parameters["what"] = what;
    ctx.parameters["quad_order"] = std::to_string(quad_order);
    if (what == "nn-cdf") {
        ctx.parameters["cmax"] = fmt(cmax);
        ctx.parameters["step"] = fmt(step);
        if (!(step > 0.0) || !(cmax > 0.0))
            throw zetagaps::ArgumentError("gue: cmax and step must be > 0");
        Table t;
        t.columns = {"c", "nn_cdf"};
        for (double c = 0.0; c <= cmax + 1e-12; c += step)
            t.add_row({fmt(c), fmt(zetagaps::gue::nn_cdf(c, quad_order))});
        ctx.emit(t);
        return;
    }
    if (what == "levels") {
        ctx.parameters["s"] = fmt(s);
        ctx.parameters["kmax"] = std::to_string(kmax);
        auto lp = zetagaps::gue::level_probabilities(s, kmax, quad_order);
        Table t;
        t.columns = {"k", "e_k"};
        for (std::size_t k = 0; k < lp.probs.size(); ++k)
            t.add_row({std::to_string(k), fmt(lp.probs[k])});
        ctx.emit(t);
        return;
    }

    zetagaps::gue::GueSampleConfig cfg;
    cfg.dim = dim;
    cfg.n_matrices = matrices;
    cfg.seed = ctx.seed.value_or(1);
    cfg.bulk_fraction = bulk;
    ctx.parameters["dim"] = std::to_string(dim);
    ctx.parameters["matrices"] = std::to_string(matrices);
    ctx.parameters["bulk_fraction"] = fmt(bulk);

    if (what == "spacings") {
        ctx.parameters["step"] = fmt(step);
        ctx.parameters["cmax"] = fmt(cmax);
        auto spacings = zetagaps::gue::collect_spacings(cfg, threads);
        std::size_t n_bins = static_cast<std::size_t>(std::ceil(cmax / step));
        std::vector<std::size_t> bins(n_bins, 0);
        for (double x : spacings) {
            auto b = static_cast<std::size_t>(x / step);
            if (x >= 0.0 && b < n_bins) ++bins[b];
        }
        Table t;
        t.columns = {"bin_lo", "bin_hi", "count"};
        for (std::size_t b = 0; b < n_bins; ++b)
            t.add_row({fmt(b * step), fmt((b + 1) * step),
                       std::to_string(bins[b])});
        ctx.emit(t);
        return;
    }
    if (what == "ks") {
        auto spacings = zetagaps::gue::collect_spacings(cfg, threads);
        double ks = zetagaps::gue::ks_distance_vs_nn_cdf(spacings, quad_order);
        Table t;
        t.columns = {"n_spacings", "ks_distance"};
        t.add_row({std::to_string(spacings.size()), fmt(ks)});
        ctx.emit(t);
        return;
    }
    if (what == "joint") {
        ctx.parameters["thresholds"] = thresholds;
        auto thr = parse_list(thresholds);
        auto est = zetagaps::gue::mc_joint_run_probability(cfg, thr, threads);
        Table t;
        t.columns = {"thresholds", "value", "std_error", "n_hits",
                     "n_indices"};
        std::string tstr = thresholds;
        for (char& ch : tstr)
            if (ch == ',') ch = ';';
        t.add_row({tstr, fmt(est.value), fmt(est.std_error),
                   std::to_string(est.n_hits), std::to_string(est.n_indices)});
        ctx.emit(t);
        return;
    }
    throw zetagaps::ArgumentError(
        "gue: --what must be nn-cdf, levels, spacings, ks, or joint");
}

void run_xistar(const std::string& data, std::size_t n, double C, double delta,
                bool conjugates, double tol, OutputContext& ctx) {
    auto table = resolve_table(data, ctx);
    ctx.parameters["n"] = std::to_string(n);
    ctx.parameters["C"] = fmt(C);
    ctx.parameters["delta"] = fmt(delta);
    ctx.parameters["include_conjugates"] = conjugates ? "1" : "0";
    ctx.parameters["tol"] = fmt(tol);
    zetagaps::xi::ZeroSumConfig cfg;
    cfg.delta = delta;
    cfg.include_conjugates = conjugates;
    auto cp = zetagaps::xi::find_gamma_star(table, n, cfg, tol);
    auto tj = zetagaps::xi::construct_tj(table, n, C);
    Table t;
    t.columns = {"n",        "gamma_n",  "gamma_next", "gamma_star",
                 "residual", "dist_lo",  "dist_hi",    "t_j",
                 "below_next"};
    t.add_row({std::to_string(n), fmt(cp.bracket_lo), fmt(cp.bracket_hi),
               fmt(cp.gamma_star), fmt(cp.residual),
               fmt(cp.gamma_star - cp.bracket_lo),
               fmt(cp.bracket_hi - cp.gamma_star), fmt(tj.value),
               tj.below_next ? "1" : "0"});
    ctx.emit(t);
}

void run_fetch(const std::string& url, const std::string& cache_dir,
               OutputContext& ctx) {
    if (url.empty())
        throw zetagaps::ArgumentError(
            "fetch: pass --url or set ZETAGAPS_DATA_URL");
    ctx.parameters["url"] = url;
    ctx.parameters["cache_dir"] = cache_dir;
    ctx.input_checksums["data"] = "url:" + url;
    auto table = zetagaps::fetch_remote(url, cache_dir);
    Table t;
    t.columns = {"count", "first", "last", "source"};
    t.add_row({std::to_string(table.size()), fmt(table.ordinate(1)),
               fmt(table.height_max()), url});
    ctx.emit(t);
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    CLI::App app{"Gap statistics of Riemann zeta zeros: run counts, pair "
                 "correlation, window statistics, and sine-kernel/GUE models"};
    app.require_subcommand(1);

    std::string format = "csv", out_path, data, convention = "minimal";
    std::uint64_t seed = 1;
    bool seed_given = false;
    int threads = 1;
    double tol = 1e-9;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", out_path, "Output file ('-' for stdout)");
        sub->add_option("--threads", threads,
                        "Worker threads (never changes values)");
    };

    // cr-table
    int rmax = 1000;
    auto* sc_cr = app.add_subcommand("cr-table",
                                     "Thresholds c_r with r * f(c_r) = 1");
    sc_cr->add_option("--rmax", rmax, "Largest r to include");
    sc_cr->add_option("--tol", tol, "Root residual tolerance");
    add_common(sc_cr);

    // runs
    int runs_r = 1;
    double runs_c = 1.0, runs_T = 1000.0;
    auto* sc_runs =
        app.add_subcommand("runs", "Moderate-gap run counts and S_j partition");
    sc_runs->add_option("--data", data, "Zero table (path or URL)")->required();
    sc_runs->add_option("--r", runs_r, "Consecutive gaps per run")->required();
    sc_runs->add_option("--c", runs_c, "Threshold in mean-spacing units")
        ->required();
    sc_runs->add_option("--T", runs_T, "Height cutoff")->required();
    sc_runs->add_option("--convention", convention,
                        "S_j convention: minimal or literal");
    add_common(sc_runs);

    // pc
    std::string pc_c = "1.0";
    double pc_T = 1000.0;
    auto* sc_pc = app.add_subcommand(
        "pc", "Empirical pair correlation vs the model integral");
    sc_pc->add_option("--data", data, "Zero table (path or URL)")->required();
    sc_pc->add_option("--c", pc_c, "Threshold(s), comma separated");
    sc_pc->add_option("--T", pc_T, "Height cutoff")->required();
    add_common(sc_pc);

    // ah
    double ah_T = 1000.0;
    auto* sc_ah = app.add_subcommand(
        "ah", "Half-integer binning of rescaled consecutive differences");
    sc_ah->add_option("--data", data, "Zero table (path or URL)")->required();
    sc_ah->add_option("--T", ah_T, "Height cutoff")->required();
    add_common(sc_ah);

    // windows
    double win_T = 5000.0, win_grid = 0.0, win_site = 0.0;
    int win_m = 64, win_r = 3;
    std::string win_conv = "inclusive";
    auto* sc_win = app.add_subcommand(
        "windows", "Short-interval counts, variance integral, good set");
    sc_win->add_option("--data", data, "Zero table (path or URL)")->required();
    sc_win->add_option("--T", win_T, "Base height; sites scan (T, 2T]")
        ->required();
    sc_win->add_option("--m", win_m, "Target count per window");
    sc_win->add_option("--r", win_r, "Windows per site");
    sc_win->add_option("--grid-step", win_grid,
                       "Site grid step (0 = h/16 default)");
    sc_win->add_option("--convention", win_conv,
                       "Gap convention: inclusive or interior");
    sc_win->add_option("--site", win_site,
                       "Dump per-window rows for this site instead");
    add_common(sc_win);

    // gue
    std::string gue_what = "nn-cdf", gue_thresholds = "0.5,1.2";
    double gue_cmax = 3.0, gue_step = 0.05, gue_s = 1.0, gue_bulk = 0.8;
    int gue_kmax = 8, gue_order = 40, gue_dim = 200, gue_matrices = 1000;
    auto* sc_gue = app.add_subcommand(
        "gue", "Sine-kernel model values and Monte-Carlo GUE sampling");
    sc_gue->add_option("--what", gue_what,
                       "nn-cdf | levels | spacings | ks | joint");
    sc_gue->add_option("--cmax", gue_cmax, "Range end for cdf/histogram");
    sc_gue->add_option("--step", gue_step, "Grid/bin step");
    sc_gue->add_option("--s", gue_s, "Interval length for levels");
    sc_gue->add_option("--kmax", gue_kmax, "Largest level count");
    sc_gue->add_option("--quad-order", gue_order, "Nystrom quadrature order");
    sc_gue->add_option("--dim", gue_dim, "Matrix dimension");
    sc_gue->add_option("--matrices", gue_matrices, "Number of matrices");
    sc_gue->add_option("--bulk", gue_bulk, "Central fraction kept");
    sc_gue->add_option("--thresholds", gue_thresholds,
                       "Joint-event thresholds, comma separated");
    sc_gue->add_option("--seed", seed, "Sampler seed")
        ->each([&](const std::string&) { seed_given = true; });
    add_common(sc_gue);

    // xistar
    std::size_t xi_n = 1;
    double xi_C = 3.0, xi_delta = 50.0, xi_tol = 1e-9;
    bool xi_conj = false;
    auto* sc_xi = app.add_subcommand(
        "xistar", "Critical point between consecutive ordinates and T_j");
    sc_xi->add_option("--data", data, "Zero table (path or URL)")->required();
    sc_xi->add_option("--n", xi_n, "Gap index (1-based)")->required();
    sc_xi->add_option("--C", xi_C, "Offset exponent, > 2");
    sc_xi->add_option("--delta", xi_delta, "Zero-sum truncation radius");
    sc_xi->add_flag("--conjugates", xi_conj, "Include mirrored ordinates");
    sc_xi->add_option("--tol", xi_tol, "Bisection tolerance");
    add_common(sc_xi);

    // fetch
    std::string fetch_url = env_or("ZETAGAPS_DATA_URL", "");
    std::string fetch_cache = default_cache_dir();
    auto* sc_fetch =
        app.add_subcommand("fetch", "Download and cache a zero table");
    sc_fetch->add_option("--url", fetch_url,
                         "Source URL (default: ZETAGAPS_DATA_URL)");
    sc_fetch->add_option("--cache-dir", fetch_cache,
                         "Cache directory (default: ZETAGAPS_CACHE_DIR)");
    add_common(sc_fetch);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    OutputContext ctx;
    ctx.format = format;
    ctx.out_path = out_path;
    if (seed_given) ctx.seed = seed;
    ctx.parameters["format"] = format;
    ctx.parameters["threads"] = std::to_string(threads);

    try {
        if (sc_cr->parsed()) {
            ctx.command = "cr-table";
            run_cr_table(rmax, tol, ctx);
        } else if (sc_runs->parsed()) {
            ctx.command = "runs";
            run_runs(data, runs_r, runs_c, runs_T, convention, ctx);
        } else if (sc_pc->parsed()) {
            ctx.command = "pc";
            run_pc(data, pc_c, pc_T, ctx);
        } else if (sc_ah->parsed()) {
            ctx.command = "ah";
            run_ah(data, ah_T, ctx);
        } else if (sc_win->parsed()) {
            ctx.command = "windows";
            run_windows(data, win_T, win_m, win_r, win_grid, win_conv,
                        win_site, ctx);
        } else if (sc_gue->parsed()) {
            ctx.command = "gue";
            if (!ctx.seed) ctx.seed = seed;
            run_gue(gue_what, gue_cmax, gue_step, gue_s, gue_kmax, gue_order,
                    gue_dim, gue_matrices, gue_thresholds, gue_bulk, threads,
                    ctx);
        } else if (sc_xi->parsed()) {
            ctx.command = "xistar";
            run_xistar(data, xi_n, xi_C, xi_delta, xi_conj, xi_tol, ctx);
        } else if (sc_fetch->parsed()) {
            ctx.command = "fetch";
            run_fetch(fetch_url, fetch_cache, ctx);
        }
    } catch (const zetagaps::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return zetagaps::exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
