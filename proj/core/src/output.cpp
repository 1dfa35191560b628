#include "chaoslab/output.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "chaoslab/errors.hpp"

#ifndef CHAOSLAB_VERSION
#define CHAOSLAB_VERSION "0.0.0"
#endif

namespace chaoslab {

std::string version() { return CHAOSLAB_VERSION; }

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

std::string num(double x) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

// RFC 4180 quoting for fields that need it.
std::string field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string series_columns(const SeriesInfo& s) {
    return std::to_string(s.num_qubits) + "," + s.model + "," + std::to_string(s.range) + "," + std::to_string(s.base_seed);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot open " + path.string() + " for writing");
    out << content;
    out.close();
    if (!out) throw OutputError("failed writing " + path.string());
}

}  // namespace

std::string results_csv(const ResultTable& table) {
    std::string s = "measure,J,J_units,value,stderr,n_samples,L,model,l_c,seed\r\n";
    for (const ResultRecord& r : table.records) {
        s += field(r.measure) + "," + num(r.coupling) + "," + to_string(r.series.units) + "," + num(r.value) + "," +
             num(r.std_error) + "," + std::to_string(r.n_samples) + "," + series_columns(r.series) + "\r\n";
    }
    return s;
}

std::string histograms_csv(const ResultTable& table) {
    std::string s = "measure,J,J_units,bin_left,bin_right,density,L,model,l_c,seed\r\n";
    for (const HistogramRecord& h : table.histograms) {
        const std::vector<double> density = h.histogram.density();
        for (std::size_t b = 0; b < density.size(); ++b) {
            s += field(h.measure) + "," + num(h.coupling) + "," + to_string(h.series.units) + "," +
                 num(h.histogram.bin_left(b)) + "," + num(h.histogram.bin_right(b)) + "," + num(density[b]) + "," +
                 series_columns(h.series) + "\r\n";
        }
    }
    return s;
}

std::string maps_csv(const ResultTable& table) {
    std::string s = "state_index,J,value,measure,J_units,L,model,l_c,seed\r\n";
    for (const EigenstateMap& m : table.maps) {
        for (std::size_t j = 0; j < m.grid.size(); ++j) {
            for (Eigen::Index k = 0; k < m.values.rows(); ++k) {
                s += std::to_string(k) + "," + num(m.grid[j]) + "," + num(m.values(k, static_cast<Eigen::Index>(j))) +
                     "," + field(m.measure) + "," + to_string(m.series.units) + "," + series_columns(m.series) + "\r\n";
            }
        }
    }
    return s;
}

std::string metadata_json(const ExperimentConfig& config, const ResultTable& table, const RunTiming& timing) {
    nlohmann::ordered_json j;
    j["program"] = "chaoslab";
    j["version"] = version();
    j["base_seed"] = config.base_seed;
    j["realizations"] = config.realizations;
    j["units"] = to_string(config.units);
    j["grid"] = config.grid();
    j["config"] = serialize(config);
    nlohmann::ordered_json series = nlohmann::ordered_json::array();
    for (const SweepPlan& p : to_plans(config)) {
        series.push_back({{"model", to_string(p.model.kind)},
                          {"L", p.model.num_qubits()},
                          {"l_c", p.model.interaction_range()},
                          {"band_n_up", p.model.default_band()}});
    }
    j["series"] = series;
    j["tasks"] = table.tasks;
    j["failed_tasks"] = table.failed_tasks;
    j["run_timing"] = {{"timestamp", timing.timestamp}, {"wall_seconds", timing.wall_seconds}};
    return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> emit(const ExperimentConfig& config, const ResultTable& table, const RunTiming& timing) {
    if (table.empty()) throw ArgumentError("emit: no results to write");
    const std::filesystem::path dir(config.directory);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw OutputError("cannot create output directory " + dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> written;
    auto put = [&](const std::string& suffix, const std::string& content) {
        const auto path = dir / (config.name + suffix);
        write_file(path, content);
        written.push_back(path);
    };
    for (const std::string& format : config.formats) {
        if (format == "csv") {
            put(".csv", results_csv(table));
            if (!table.histograms.empty()) put("_hist.csv", histograms_csv(table));
            if (!table.maps.empty()) put("_map.csv", maps_csv(table));
        } else if (format == "json") {
            put(".json", metadata_json(config, table, timing));
        }
    }
    return written;
}

}  // namespace chaoslab
