#pragma once

// Disorder sweeps: for every (J, realization) task build H, diagonalize, pick
// the band and evaluate the requested measures, then average over realizations.
//
// Results are deterministic for a given plan: realization r always uses
// realization_seed(base_seed, r), each task writes to its own slot, and the
// reduction runs in (J, r) order after all workers finish.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chaoslab/hamiltonian.hpp"
#include "chaoslab/histogram.hpp"
#include "chaoslab/spectral_stats.hpp"

namespace chaoslab {

enum class ModelKind { torus2d, chain1d };

// How the J grid is expressed: native J, J L / delta (2D), or J / J_c (1D).
enum class CouplingUnits { native, jl_over_delta, j_over_jc };

// Which eigenstates of the band a measure averages over.
enum class Scope { band, central, central_third };

std::string to_string(ModelKind kind);
std::string to_string(CouplingUnits units);
std::string to_string(Scope scope);
std::string to_string(BandRule rule);
std::string to_string(Unfolding method);
ModelKind parse_model_kind(const std::string& text);
CouplingUnits parse_units(const std::string& text);
Scope parse_scope(const std::string& text);
BandRule parse_band_rule(const std::string& text);
Unfolding parse_unfolding(const std::string& text);

struct ModelTemplate {
    ModelKind kind = ModelKind::torus2d;
    ModelSpec2D torus;
    ModelSpec1D chain;
    std::optional<int> band;  // n_up of the analysed band; default L / 2

    int num_qubits() const { return kind == ModelKind::torus2d ? torus.num_qubits() : chain.num_qubits(); }
    int default_band() const { return band.value_or(num_qubits() / 2); }
    int interaction_range() const { return kind == ModelKind::torus2d ? 0 : chain.range; }
    Geometry geometry() const {
        return kind == ModelKind::torus2d ? torus.geometry() : Geometry::chain(chain.length);
    }
    // Converts a grid value to J. Throws ArgumentError for units that do not apply to the model.
    double native_coupling(double value, CouplingUnits units) const;
};

// One requested observable. Textual form: <name>[:<scope>][@nup=<k>], e.g.
// "C_1", "pn:central", "C_1:third@nup=3". Names:
//   gamma, pds         level statistics of the band (scope is always band)
//   pn                 participation number
//   C_<n>, C_a         concurrence averaged over pair class n, or over all pairs
//   N_<n>              negativity averaged over pair class n
//   S_1                single-qubit entropy averaged over qubits
//   S_block_<n>        entropy of the left block of n qubits
//   S_half             entropy of the left half
//   clambda            c_lambda over all pairs (mean plus histogram)
//   cmap               C_1 for every eigenstate of the spectrum (dense map)
struct MeasureRequest {
    enum class Kind { gamma, pds, pn, concurrence, concurrence_all, negativity, entropy_single, entropy_block,
                      entropy_half, clambda, cmap };
    Kind kind = Kind::gamma;
    int order = 0;  // n of C_n, N_n, S_block_n
    Scope scope = Scope::band;
    std::optional<int> band;

    static MeasureRequest parse(const std::string& text);
    std::string name() const;       // without scope or band
    std::string label() const;      // full textual form, round-trips through parse
    bool scalar() const { return kind != Kind::pds && kind != Kind::cmap; }
    bool needs_pairs() const {
        return kind == Kind::concurrence || kind == Kind::concurrence_all || kind == Kind::negativity ||
               kind == Kind::clambda || kind == Kind::cmap;
    }
    bool operator==(const MeasureRequest&) const = default;
};

struct SweepPlan {
    ModelTemplate model;
    std::vector<double> grid;  // in `units`
    CouplingUnits units = CouplingUnits::native;
    int realizations = 1;
    std::uint64_t base_seed = 0;
    std::vector<MeasureRequest> measures;
    BandRule band_rule = BandRule::count;
    Unfolding unfolding = Unfolding::staircase;
    int unfolding_degree = 9;
    unsigned threads = 1;
    bool real_gauge = true;  // 1D only: diagonalize the real-symmetric gauge-equivalent Hamiltonian
    double pds_bin_width = 0.1;
    double pds_max = 4.0;
    double clambda_bin_width = 0.05;
    std::string eigenvalue_dump_dir;  // empty: no dump
};

// Throws ArgumentError describing the first violated constraint.
void validate(const SweepPlan& plan);

struct SeriesInfo {
    std::string model;  // "2d" or "1d"
    int num_qubits = 0;
    int range = 0;      // l_c, 0 for the torus
    std::uint64_t base_seed = 0;
    CouplingUnits units = CouplingUnits::native;
};

struct ResultRecord {
    std::string measure;
    double coupling = 0.0;  // grid value, in series.units
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
    SeriesInfo series;
};

struct HistogramRecord {
    std::string measure;
    double coupling = 0.0;
    Histogram histogram;
    SeriesInfo series;
};

// Realization-averaged per-eigenstate values: rows are ascending eigenstate
// indices, columns are grid points.
struct EigenstateMap {
    std::string measure;
    std::vector<double> grid;
    Eigen::MatrixXd values;
    SeriesInfo series;
};

struct ResultTable {
    std::vector<ResultRecord> records;
    std::vector<HistogramRecord> histograms;
    std::vector<EigenstateMap> maps;
    std::size_t tasks = 0;
    std::size_t failed_tasks = 0;

    void append(const ResultTable& other);
    bool empty() const { return records.empty() && histograms.empty() && maps.empty(); }
};

using SweepLog = std::function<void(const std::string&)>;

// Failed tasks (solver or validation errors) are logged and dropped from the
// averages; more than 10% failures throws SweepError.
ResultTable run_sweep(const SweepPlan& plan, const SweepLog& log = {});

// The realization-averaged C_1 map over the full spectrum for the plan's model and grid.
EigenstateMap per_eigenstate_map(const SweepPlan& plan, const SweepLog& log = {});

}  // namespace chaoslab
