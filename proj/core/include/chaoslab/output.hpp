#pragma once

// Writing results to disk.
//
//   <name>.csv        one row per (series, measure, J): the scalar averages
//   <name>_hist.csv   long-form histograms (pds, clambda)
//   <name>_map.csv    long-form eigenstate maps (cmap)
//   <name>.json       run metadata: config, grid, seeds, version, timing
//
// Numbers are written in shortest round-trip form, so two runs that produce
// the same doubles produce byte-identical files. Only the run_timing object of
// the JSON sidecar changes between identical runs.

#include <filesystem>
#include <string>
#include <vector>

#include "chaoslab/config.hpp"
#include "chaoslab/ensemble.hpp"

namespace chaoslab {

std::string version();

struct RunTiming {
    std::string timestamp;  // ISO 8601, UTC
    double wall_seconds = 0.0;
};

// Current UTC time as an ISO 8601 string.
std::string utc_timestamp();

std::string results_csv(const ResultTable& table);
std::string histograms_csv(const ResultTable& table);
std::string maps_csv(const ResultTable& table);
std::string metadata_json(const ExperimentConfig& config, const ResultTable& table, const RunTiming& timing);

// Writes the files selected by config.formats into config.directory and
// returns their paths. Throws ArgumentError for an empty table, OutputError if
// the directory or a file cannot be written.
std::vector<std::filesystem::path> emit(const ExperimentConfig& config, const ResultTable& table, const RunTiming& timing);

}  // namespace chaoslab
