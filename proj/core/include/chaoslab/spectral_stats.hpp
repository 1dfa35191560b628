#pragma once

// Quantum-chaos diagnostics: band selection, nearest-neighbour level spacings,
// the Poisson/Wigner interpolation parameter gamma and participation numbers.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "chaoslab/eigensolve.hpp"
#include "chaoslab/histogram.hpp"

namespace chaoslab {

// Level-spacing densities with unit mean spacing.
double poisson_density(double s);
double wigner_density(double s);
double poisson_cdf(double s);  // 1 - exp(-s)
double wigner_cdf(double s);   // 1 - exp(-pi s^2 / 4)

// Smallest positive s where the Poisson and Wigner-surmise densities cross
// (~0.4729), solved to machine precision on first use.
double spacing_crossing_point();

// Unperturbed bands: basis states grouped by their number of up spins.
struct BandLayout {
    int num_qubits = 0;
    std::vector<double> centers;       // indexed by n_up: mean unperturbed energy of the sector
    std::vector<std::uint64_t> sizes;  // indexed by n_up: C(L, n_up)
    std::vector<double> lowest;        // indexed by n_up: smallest unperturbed energy in the sector
    std::vector<double> highest;
};

BandLayout band_layout(const Eigen::VectorXd& unperturbed_energies, int num_qubits);

// n_up of the band whose center is closest to `energy`.
int band_nearest(const BandLayout& layout, double energy);

enum class BandRule {
    count,   // C(L, n_up) consecutive levels at the band's unperturbed rank position
    window,  // every level between the midpoints to the neighbouring band centers
};

struct BandSelection {
    int n_up = 0;
    IndexRange members;  // indices into the ascending spectrum
    double center = 0.0;

    // The central eigenfunction of the band.
    Eigen::Index central_index() const { return members.first + members.count / 2; }
    // The central third of the band (at least one state).
    IndexRange central_third() const;
};

// Count rule: needs no eigenvalues, the band occupies the same ranks it has at J = 0.
BandSelection select_band(const BandLayout& layout, int n_up);

BandSelection select_band(const Eigen::VectorXd& eigenvalues, const BandLayout& layout, int n_up, BandRule rule);

struct SpacingSample {
    std::vector<double> spacings;  // unfolded, mean exactly 1 up to rounding
    double mean_spacing = 0.0;     // raw-level normalization constant
};

// s_i = (E_{i+1} - E_i) / mean raw spacing. `levels` must be ascending.
SpacingSample unfolded_spacings(std::span<const double> levels);

enum class Unfolding {
    global,     // one mean spacing for the whole band
    staircase,  // smooth polynomial fit of the level staircase N(E)
};

// Local unfolding: least-squares fit of the level index against energy by a
// Chebyshev series of degree min(degree, levels / 10) (at least 1), then
// s_i = N(E_{i+1}) - N(E_i), rescaled to unit mean. The band's density of
// states is far from flat in both models, and a single mean spacing then
// mixes dense and sparse regions into a spuriously Poisson-like P(s).
// Fit artefacts that would make a spacing negative are clipped to 0.
SpacingSample staircase_unfolded_spacings(std::span<const double> levels, int degree = 9);

SpacingSample unfold(std::span<const double> levels, Unfolding method, int degree = 9);

struct GammaValue {
    double value = 0.0;
    double fraction_below = 0.0;  // empirical fraction of spacings <= s0
};

// gamma = (F(s0) - W(s0)) / (P(s0) - W(s0)) with F the empirical cumulative
// fraction and P, W the Poisson and Wigner cumulative distributions.
GammaValue gamma(const SpacingSample& sample);
double gamma_from_fraction(double fraction_below);

Histogram spacing_histogram(const SpacingSample& sample, double bin_width = 0.1, double max_spacing = 4.0);

// xi = 1 / sum_i |c_i|^4. Throws ValidationError unless |sum |c_i|^2 - 1| <= 1e-10.
double participation_number(std::span<const double> amplitudes);
double participation_number(std::span<const std::complex<double>> amplitudes);

}  // namespace chaoslab
