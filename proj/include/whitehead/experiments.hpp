#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "whitehead/classify.hpp"
#include "whitehead/sampling.hpp"

namespace whitehead {

/// One Monte Carlo row: fractions of sampled cyclically reduced words of
/// length n that satisfy the frequency criterion, strict minimality, test
/// stability and the Z condition, with binomial standard errors.
struct GenericityRow {
    int n = 0;
    int samples = 0;
    double frac_leps = 0.0;
    double frac_sm = 0.0;
    double frac_ts = 0.0;
    double frac_z = 0.0;
    double se_leps = 0.0;
    double se_sm = 0.0;
    double se_ts = 0.0;
    double se_z = 0.0;

    friend bool operator==(const GenericityRow&, const GenericityRow&) = default;
};

struct GenericityConfig {
    std::vector<int> lengths;
    int samples = 100;
    std::uint64_t seed = 0;
    std::optional<Rational> epsilon; // default_epsilon when absent
};

/// Runs the genericity scan. Sample i of row r uses the per-sample stream
/// (seed, r * samples + i), so the table is deterministic in the config and
/// independent of evaluation order.
inline std::vector<GenericityRow> genericity_experiment(const Alphabet& alphabet,
                                                        const GenericityConfig& config) {
    if (config.samples <= 0)
        throw std::invalid_argument("sample count must be positive");
    const Rational eps = config.epsilon.value_or(default_epsilon(alphabet));
    std::vector<GenericityRow> rows;
    auto standard_error = [&](double p) {
        return std::sqrt(p * (1.0 - p) / static_cast<double>(config.samples));
    };
    for (std::size_t r = 0; r < config.lengths.size(); ++r) {
        const int n = config.lengths[r];
        if (n <= 0) throw std::invalid_argument("lengths must be positive");
        int hits_leps = 0, hits_sm = 0, hits_ts = 0, hits_z = 0;
        for (int i = 0; i < config.samples; ++i) {
            const SamplerConfig sc{n, config.seed,
                                   static_cast<std::uint64_t>(r) * config.samples +
                                       static_cast<std::uint64_t>(i)};
            const CyclicWord w = sample_cyclically_reduced(alphabet, sc);
            if (frequency_criterion(w, alphabet, eps)) ++hits_leps;
            const bool sm = is_strictly_minimal(w, alphabet);
            if (sm) ++hits_sm;
            const bool ts = sm && is_ts(w, alphabet);
            if (ts) ++hits_ts;
            if (ts && is_z(w, alphabet)) ++hits_z;
        }
        GenericityRow row;
        row.n = n;
        row.samples = config.samples;
        row.frac_leps = static_cast<double>(hits_leps) / config.samples;
        row.frac_sm = static_cast<double>(hits_sm) / config.samples;
        row.frac_ts = static_cast<double>(hits_ts) / config.samples;
        row.frac_z = static_cast<double>(hits_z) / config.samples;
        row.se_leps = standard_error(row.frac_leps);
        row.se_sm = standard_error(row.frac_sm);
        row.se_ts = standard_error(row.frac_ts);
        row.se_z = standard_error(row.frac_z);
        rows.push_back(row);
    }
    return rows;
}

enum class ReportFormat { csv, json };

namespace detail {

inline std::string render_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

} // namespace detail

/// Renders rows with numbers at six significant digits. CSV uses the fixed
/// header below; JSON is an array of objects with the same field names.
inline std::string render_report(const std::vector<GenericityRow>& rows, ReportFormat format) {
    std::string out;
    if (format == ReportFormat::csv) {
        out = "n,samples,frac_leps,frac_sm,frac_ts,frac_z,se_leps,se_sm,se_ts,se_z\n";
        for (const auto& row : rows) {
            out += std::to_string(row.n) + "," + std::to_string(row.samples);
            for (double x : {row.frac_leps, row.frac_sm, row.frac_ts, row.frac_z, row.se_leps,
                             row.se_sm, row.se_ts, row.se_z})
                out += "," + detail::render_number(x);
            out += "\n";
        }
        return out;
    }
    out = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        out += i == 0 ? "\n" : ",\n";
        out += "  {\"n\": " + std::to_string(row.n);
        out += ", \"samples\": " + std::to_string(row.samples);
        const char* names[] = {"frac_leps", "frac_sm", "frac_ts", "frac_z",
                               "se_leps",   "se_sm",   "se_ts",   "se_z"};
        const double values[] = {row.frac_leps, row.frac_sm, row.frac_ts, row.frac_z,
                                 row.se_leps,   row.se_sm,   row.se_ts,   row.se_z};
        for (int f = 0; f < 8; ++f)
            out += std::string(", \"") + names[f] + "\": " + detail::render_number(values[f]);
        out += "}";
    }
    out += "\n]\n";
    return out;
}

inline std::vector<GenericityRow> parse_report_json(const std::string& text) {
    const nlohmann::json parsed = nlohmann::json::parse(text);
    if (!parsed.is_array()) throw std::invalid_argument("report must be a JSON array");
    std::vector<GenericityRow> rows;
    for (const auto& item : parsed) {
        GenericityRow row;
        row.n = item.at("n").get<int>();
        row.samples = item.at("samples").get<int>();
        row.frac_leps = item.at("frac_leps").get<double>();
        row.frac_sm = item.at("frac_sm").get<double>();
        row.frac_ts = item.at("frac_ts").get<double>();
        row.frac_z = item.at("frac_z").get<double>();
        row.se_leps = item.at("se_leps").get<double>();
        row.se_sm = item.at("se_sm").get<double>();
        row.se_ts = item.at("se_ts").get<double>();
        row.se_z = item.at("se_z").get<double>();
        rows.push_back(row);
    }
    return rows;
}

/// Writes text to path atomically: a sibling temp file is written, flushed,
/// and renamed over the destination.
inline void write_file_atomic(const std::string& text, const std::filesystem::path& path) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        out.flush();
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

struct OrbitGrowthReport {
    std::map<std::size_t, std::uint64_t> counts; // cyclic length -> orbit classes
    double entropy_estimate = 0.0;               // exp of the fitted log-count slope
    bool saturated = true;
};

/// Enumerates the automorphism orbit of w up to cyclic length max_length,
/// deduplicating by canonical rotation, and fits the exponential growth of
/// the per-length class counts. The entropy estimate is the least-squares
/// slope of log counts over the top half of the populated lengths; it is a
/// desk-scale estimate, not the true growth rate.
inline OrbitGrowthReport orbit_growth_experiment(const Word& w, const Alphabet& alphabet,
                                                 std::size_t max_length,
                                                 std::uint64_t budget = 1'000'000) {
    const MinimizationResult minimal = minimize(w, alphabet);
    if (minimal.minimal.size() > max_length)
        throw std::invalid_argument("length cap is below the minimal cyclic length");
    const auto closure =
        detail::whitehead_closure(minimal.minimal, alphabet, max_length, budget, std::nullopt);
    OrbitGrowthReport out;
    out.saturated = closure.saturated;
    for (const auto& [key, edge] : closure.nodes) ++out.counts[key.size()];

    std::vector<std::pair<double, double>> points; // (n, log count)
    for (const auto& [length, count] : out.counts)
        if (length > 0 && count > 0)
            points.emplace_back(static_cast<double>(length),
                                std::log(static_cast<double>(count)));
    const std::size_t half = points.size() / 2;
    if (points.size() - half >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double m = static_cast<double>(points.size() - half);
        for (std::size_t i = half; i < points.size(); ++i) {
            sx += points[i].first;
            sy += points[i].second;
            sxx += points[i].first * points[i].first;
            sxy += points[i].first * points[i].second;
        }
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        out.entropy_estimate = std::exp(slope);
    }
    return out;
}

} // namespace whitehead
