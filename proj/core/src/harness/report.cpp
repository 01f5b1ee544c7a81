#include "ulnse/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ulnse/harness/csv.hpp"

namespace ulnse::harness {

namespace fs = std::filesystem;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double config_number(const RunManifest& m, const std::string& key) {
    const std::string* v = m.config_value(key);
    if (v == nullptr) throw std::runtime_error("manifest config lacks '" + key + "'");
    return std::stod(*v);
}

std::vector<std::string> artifacts_with(const RunManifest& m, const std::string& prefix) {
    std::vector<std::string> out;
    for (const Artifact& a : m.artifacts) {
        if (a.path.starts_with(prefix) && a.path.ends_with(".csv")) out.push_back(a.path);
    }
    return out;
}

std::string stem(const std::string& file, const std::string& prefix) {
    return file.substr(prefix.size(), file.size() - prefix.size() - 4);
}

SummaryRow info(std::string claim, std::string metric, double value) {
    SummaryRow r{std::move(claim), std::move(metric), value, 0.0, true};
    r.info = true;
    return r;
}

SummaryRow at_most(std::string claim, std::string metric, double value, double threshold) {
    return {std::move(claim), std::move(metric), value, threshold, true};
}

SummaryRow at_least(std::string claim, std::string metric, double value, double threshold) {
    return {std::move(claim), std::move(metric), value, threshold, false};
}

double tolerance(const RunManifest& m) {
    const double dt = config_number(m, "dt");
    const double h = config_number(m, "L") / config_number(m, "n");
    return 10.0 * dt * dt + 10.0 * h * h;
}

std::vector<SummaryRow> max_principle_summary(const RunManifest& m, const fs::path& dir) {
    const double tol = tolerance(m);
    long free = 0;
    long forced = 0;
    bool any_forced = false;
    double worst = -inf;
    for (const std::string& f : artifacts_with(m, "trajectory_")) {
        const CsvTable t = read_csv(dir / f);
        const auto w = t.values("omega_inf");
        const auto env = t.values("envelope");
        long count = 0;
        for (std::size_t k = 0; k < w.size(); ++k) {
            count += w[k] > env[k] + tol;
            worst = std::max(worst, w[k] - env[k]);
        }
        if (f.ends_with("_g1.csv")) {
            forced += count;
            any_forced = true;
        } else {
            free += count;
        }
    }
    std::vector<SummaryRow> rows{at_most("vorticity envelope (g = 0)", "violations", static_cast<double>(free), 0.0)};
    if (any_forced) rows.push_back(at_most("vorticity envelope (forced)", "violations", static_cast<double>(forced), 0.0));
    rows.push_back(info("vorticity envelope", "max(omega_inf - envelope)", worst));
    return rows;
}

std::vector<SummaryRow> dissipative_summary(const RunManifest& m, const fs::path& dir) {
    const double t_end = config_number(m, "t_end");
    const double cfg_level = config_number(m, "level");
    const double cfg_half = config_number(m, "t_half");
    const double t_half = cfg_half > 0.0 ? cfg_half : 0.5 * t_end;
    std::vector<SummaryRow> rows;
    const std::string prefix = "dissipative_";
    for (const std::string& f : artifacts_with(m, prefix)) {
        const CsvTable t = read_csv(dir / f);
        const auto time = t.values("t");
        const auto u = t.values("u_ulR");
        const double level = cfg_level > 0.0 ? cfg_level : 0.5 * u.front();
        double t_enter = inf;
        double after = inf;
        for (std::size_t k = 0; k < u.size(); ++k) {
            if (u[k] <= level) {
                t_enter = time[k];
                after = *std::max_element(u.begin() + static_cast<long>(k), u.end()) / level;
                break;
            }
        }
        const std::string s = stem(f, prefix);
        rows.push_back(at_most("enters level " + format_double(level) + " (" + s + ")", "t_enter", t_enter, t_half));
        rows.push_back(at_most("stays below 1.1 level (" + s + ")", "max u_ulR / level after entry", after, 1.1));
        const auto corr = t.values("corrected_ratio");
        rows.push_back(info("radius schedule overlay (" + s + ")", "sup corrected ratio",
                            *std::max_element(corr.begin(), corr.end())));
    }
    return rows;
}

// Min and max ignoring NaN entries.
std::pair<double, double> finite_range(const std::vector<double>& xs) {
    double lo = inf;
    double hi = -inf;
    for (double x : xs) {
        if (std::isnan(x)) continue;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return {lo, hi};
}

std::vector<SummaryRow> growth_summary(const RunManifest& m, const fs::path& dir) {
    const double tol = tolerance(m);
    std::vector<SummaryRow> rows;
    const std::string prefix = "growth_";
    for (const std::string& f : artifacts_with(m, prefix)) {
        const CsvTable t = read_csv(dir / f);
        const auto time = t.values("t");
        const auto r5 = t.values("ratio5");
        const auto w = t.values("omega_inf");
        const auto wb = t.values("omega_bound");
        const auto capped = t.values("capped");
        double rise = -inf;
        for (std::size_t k = 1; k < r5.size(); ++k) {
            if (time[k - 1] >= 2.0) rise = std::max(rise, (r5[k] - r5[k - 1]) / r5[k - 1]);
        }
        double excess = -inf;
        for (std::size_t k = 0; k < w.size(); ++k) excess = std::max(excess, w[k] - wb[k]);
        double cap_time = inf;
        for (std::size_t k = 0; k < capped.size(); ++k) {
            if (capped[k] != 0.0) {
                cap_time = time[k];
                break;
            }
        }
        const std::string s = stem(f, prefix);
        if (rise > -inf) {
            rows.push_back(at_most("u_ulR/(t+1)^5 non-increasing after t = 2 (" + s + ")", "max relative rise", rise, 0.0));
        }
        rows.push_back(info("polynomial growth (" + s + ")", "sup u_ulR/(t+1)^5", *std::max_element(r5.begin(), r5.end())));
        rows.push_back(at_most("vorticity below |rot u0| + t |rot g| (" + s + ")", "max excess", excess, tol));
        const auto mv = t.values("mean_value_per_t1");
        rows.push_back(info("mean-value quantity (" + s + ")", "sup M(t)/(t+1)", *std::max_element(mv.begin(), mv.end())));
        rows.push_back(info("radius cap (" + s + ")", "first capped t", cap_time));
    }
    for (const std::string name : {"baseline_rest", "baseline_data"}) {
        const std::string file = name + ".csv";
        if (artifacts_with(m, file).empty()) continue;
        const CsvTable t = read_csv(dir / file);
        if (name == std::string("baseline_rest")) {
            const auto err = t.values("mean_err");
            rows.push_back(at_most("constant forcing from rest: mean u = t g", "max |mean_u - t g|",
                                   *std::max_element(err.begin(), err.end()), 1e-12));
        }
        const auto [lo, hi] = finite_range(t.values("linear_ratio"));
        if (name == std::string("baseline_rest")) {
            rows.push_back(at_least("mean-value within factor 2 of linear (" + name + ")", "min M / linear", lo, 0.5));
        } else {
            // From nonzero data the bound is one-sided: the local mass spreads over the growing ball.
            rows.push_back(info("mean-value versus linear (" + name + ")", "min M / linear", lo));
        }
        rows.push_back(at_most("mean-value within factor 2 of linear (" + name + ")", "max M / linear", hi, 2.0));
    }
    return rows;
}

std::vector<SummaryRow> uniqueness_summary(const RunManifest& m, const fs::path& dir) {
    const double spread_max = config_number(m, "max_spread");
    std::vector<SummaryRow> rows;
    const std::string prefix = "uniqueness_";
    for (const std::string& f : artifacts_with(m, prefix)) {
        const CsvTable t = read_csv(dir / f);
        const std::string s = stem(f, prefix);
        std::vector<std::vector<double>> amps;
        for (std::size_t c = 1; c < t.header.size(); ++c) {
            amps.push_back(t.values(t.header[c]));
            const auto& v = amps.back();
            rows.push_back(info("Lipschitz amplification (" + s + ")", "max " + t.header[c],
                                *std::max_element(v.begin(), v.end())));
        }
        // Compared at every recorded time, not only through the maxima (which sit at t = 0).
        double spread = amps.empty() ? inf : 1.0;
        for (std::size_t k = 0; !amps.empty() && k < amps[0].size(); ++k) {
            double lo = inf;
            double hi = 0.0;
            for (const auto& v : amps) {
                lo = std::min(lo, v[k]);
                hi = std::max(hi, v[k]);
            }
            spread = std::max(spread, std::isfinite(hi) && lo > 0.0 ? hi / lo : inf);
        }
        rows.push_back(at_most("amplification independent of delta (" + s + ")", "max over t of max/min over deltas",
                               spread, spread_max));
        rows.push_back(info("amplification at t_end (" + s + ")", "max over deltas",
                            amps.empty() ? inf : [&] {
                                double hi = 0.0;
                                for (const auto& v : amps) hi = std::max(hi, v.back());
                                return hi;
                            }()));
    }
    return rows;
}

std::vector<SummaryRow> smoothing_summary(const RunManifest& m, const fs::path& dir) {
    const double a = config_number(m, "window_start");
    const double b = config_number(m, "window_end");
    const double min_slope = config_number(m, "min_slope");
    std::vector<SummaryRow> rows;
    const std::string prefix = "smoothing_";
    for (const std::string& f : artifacts_with(m, prefix)) {
        const CsvTable t = read_csv(dir / f);
        const auto time = t.values("t");
        const auto grad = t.values("grad_ulR");
        const auto scaled = t.values("scaled_grad");
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, sup = 0.0;
        int count = 0;
        for (std::size_t k = 0; k < time.size(); ++k) {
            if (time[k] > 0.0 && time[k] <= b) sup = std::max(sup, scaled[k]);
            if (time[k] < a || time[k] > b) continue;
            const double x = std::log(time[k]);
            const double y = std::log(grad[k]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++count;
        }
        const double slope = count >= 2 ? (count * sxy - sx * sy) / (count * sxx - sx * sx) : -inf;
        const std::string s = stem(f, prefix);
        rows.push_back(at_least("gradient decays no faster than t^-1/2 (" + s + ")", "log-log slope", slope, min_slope));
        rows.push_back(info("smoothing rate (" + s + ")", "sup t^1/2 |grad u|_ulR", sup));
    }
    return rows;
}

std::vector<SummaryRow> lemmas_summary(const RunManifest& m, const fs::path& dir) {
    const double max_ratio = config_number(m, "max_ratio");
    std::istringstream in(read_text(dir / "estimates.csv"));
    std::string line;
    std::getline(in, line);
    std::map<std::string, double> worst;
    std::map<double, double> lemma02_by_R;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() < 5) throw std::runtime_error("estimates.csv: malformed line '" + line + "'");
        const std::string& name = cells[1];
        if (!worst.count(name)) worst[name] = 0.0;
        if (cells[4] == "skipped") continue;
        const double ratio = std::stod(cells[4]);
        worst[name] = std::isnan(ratio) ? inf : std::max(worst[name], ratio);
        if (name == "lemma02" && cells.size() > 5) {
            std::stringstream ps(cells[5]);
            std::string kv;
            while (std::getline(ps, kv, ';')) {
                if (kv.starts_with("R=")) {
                    const double R = std::stod(kv.substr(2));
                    lemma02_by_R[R] = std::max(lemma02_by_R[R], ratio);
                }
            }
        }
    }
    std::vector<SummaryRow> rows;
    for (const auto& [name, r] : worst) {
        const bool tolerance_type = name == "stream_roundtrip" || name == "truncation_residual";
        rows.push_back(at_most(name, "max ratio", r, tolerance_type ? 1.0 : max_ratio));
    }
    if (!lemma02_by_R.empty()) {
        double lo = inf;
        double hi = 0.0;
        for (const auto& [R, r] : lemma02_by_R) {
            rows.push_back(info("lemma02 at R = " + format_double(R), "max ratio", r));
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        rows.push_back(at_most("lemma02 uniform in R", "max/min of per-R max ratio", lo > 0.0 ? hi / lo : inf, 3.0));
    }
    return rows;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace

bool SummaryRow::pass() const {
    if (info) return true;
    if (std::isnan(value)) return false;
    return upper ? value <= threshold : value >= threshold;
}

std::vector<SummaryRow> summarize_run(const RunManifest& m, const fs::path& dir) {
    if (m.experiment == "max_principle") return max_principle_summary(m, dir);
    if (m.experiment == "dissipative") return dissipative_summary(m, dir);
    if (m.experiment == "growth") return growth_summary(m, dir);
    if (m.experiment == "uniqueness") return uniqueness_summary(m, dir);
    if (m.experiment == "smoothing") return smoothing_summary(m, dir);
    if (m.experiment == "lemmas") return lemmas_summary(m, dir);
    throw std::runtime_error("unknown experiment '" + m.experiment + "' in manifest");
}

std::vector<SummaryRow> summarize(const fs::path& manifest_path) {
    const RunManifest m = read_manifest(manifest_path);
    const fs::path dir = manifest_path.parent_path();
    verify_artifacts(m, dir);
    if (m.status != "ok") throw std::runtime_error("run failed: " + m.error);
    return summarize_run(m, dir);
}

std::string format_summary(const std::string& experiment, const std::vector<SummaryRow>& rows) {
    std::size_t wc = 5, wm = 6;
    for (const SummaryRow& r : rows) {
        wc = std::max(wc, r.claim.size());
        wm = std::max(wm, r.metric.size());
    }
    std::string out = "experiment: " + experiment + "\n";
    out += pad("claim", wc) + "  " + pad("metric", wm) + "  " + pad("value", 12) + "  " + pad("bound", 14) + "  result\n";
    for (const SummaryRow& r : rows) {
        const std::string bound = r.info ? "-" : (r.upper ? "<= " : ">= ") + short_number(r.threshold);
        out += pad(r.claim, wc) + "  " + pad(r.metric, wm) + "  " + pad(short_number(r.value), 12) + "  " +
               pad(bound, 14) + "  " + (r.info ? "info" : (r.pass() ? "PASS" : "FAIL")) + "\n";
    }
    return out;
}

std::string emit_report(const fs::path& manifest_path) {
    const RunManifest m = read_manifest(manifest_path);
    return format_summary(m.experiment, summarize(manifest_path));
}

std::vector<DiffRow> compare_runs(const fs::path& manifest_a, const fs::path& manifest_b, double floor) {
    const RunManifest a = read_manifest(manifest_a);
    const RunManifest b = read_manifest(manifest_b);
    if (a.experiment != b.experiment) {
        throw std::runtime_error("cannot compare runs of different experiments: '" + a.experiment + "' vs '" +
                                 b.experiment + "'");
    }
    const fs::path da = manifest_a.parent_path();
    const fs::path db = manifest_b.parent_path();
    verify_artifacts(a, da);
    verify_artifacts(b, db);
    std::vector<DiffRow> out;
    for (const Artifact& art : a.artifacts) {
        if (!art.path.ends_with(".csv") || art.path == "summary.csv" || art.path == "estimates.csv") continue;
        const bool shared = std::any_of(b.artifacts.begin(), b.artifacts.end(),
                                        [&](const Artifact& x) { return x.path == art.path; });
        if (!shared) continue;
        const CsvTable ta = read_csv(da / art.path);
        const CsvTable tb = read_csv(db / art.path);
        if (std::find(ta.header.begin(), ta.header.end(), "t") == ta.header.end() ||
            std::find(tb.header.begin(), tb.header.end(), "t") == tb.header.end()) {
            continue;
        }
        const auto time_a = ta.values("t");
        const auto time_b = tb.values("t");
        // Row pairs at matching times (both series are increasing).
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0, j = 0; i < time_a.size() && j < time_b.size();) {
            const double scale = 1e-9 * std::max(1.0, std::abs(time_a[i]));
            if (std::abs(time_a[i] - time_b[j]) <= scale) {
                pairs.emplace_back(i++, j++);
            } else if (time_a[i] < time_b[j]) {
                ++i;
            } else {
                ++j;
            }
        }
        for (const std::string& col : ta.header) {
            if (col == "t" || std::find(tb.header.begin(), tb.header.end(), col) == tb.header.end()) continue;
            const std::size_t ca = ta.column(col);
            const std::size_t cb = tb.column(col);
            DiffRow d{art.path, col, pairs.size(), 0.0};
            for (const auto& [i, j] : pairs) {
                const double x = ta.rows[i][ca];
                const double y = tb.rows[j][cb];
                if (std::isnan(x) && std::isnan(y)) continue;
                const double denom = std::max({std::abs(x), std::abs(y), floor});
                d.max_rel_diff = std::max(d.max_rel_diff, x == y ? 0.0 : std::abs(x - y) / denom);
            }
            out.push_back(d);
        }
    }
    return out;
}

std::string format_diff(const std::vector<DiffRow>& rows) {
    std::size_t wf = 4, wc = 6;
    for (const DiffRow& r : rows) {
        wf = std::max(wf, r.file.size());
        wc = std::max(wc, r.column.size());
    }
    std::string out = pad("file", wf) + "  " + pad("column", wc) + "  matched  max_rel_diff\n";
    for (const DiffRow& r : rows) {
        out += pad(r.file, wf) + "  " + pad(r.column, wc) + "  " + pad(std::to_string(r.matched), 7) + "  " +
               short_number(r.max_rel_diff) + "\n";
    }
    return out;
}

}  // namespace ulnse::harness
