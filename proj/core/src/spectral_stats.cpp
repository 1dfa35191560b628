#include "chaoslab/spectral_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

#include "chaoslab/errors.hpp"
#include "chaoslab/spin_basis.hpp"

namespace chaoslab {

using std::numbers::pi;

double poisson_density(double s) { return std::exp(-s); }

double wigner_density(double s) { return 0.5 * pi * s * std::exp(-0.25 * pi * s * s); }

double poisson_cdf(double s) { return -std::expm1(-s); }

double wigner_cdf(double s) { return -std::expm1(-0.25 * pi * s * s); }

double spacing_crossing_point() {
    static const double root = [] {
        // Poisson - Wigner is positive at 0.3 and negative at 0.6; the only sign change there.
        double lo = 0.3, hi = 0.6;
        for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            (poisson_density(mid) - wigner_density(mid) > 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }();
    return root;
}

BandLayout band_layout(const Eigen::VectorXd& unperturbed_energies, int num_qubits) {
    if (unperturbed_energies.size() != (Eigen::Index{1} << num_qubits))
        throw ArgumentError("band_layout: energy vector size does not match 2^L");
    BandLayout layout;
    layout.num_qubits = num_qubits;
    const auto bands = static_cast<std::size_t>(num_qubits + 1);
    layout.centers.assign(bands, 0.0);
    layout.sizes.assign(bands, 0);
    layout.lowest.assign(bands, HUGE_VAL);
    layout.highest.assign(bands, -HUGE_VAL);
    for (Eigen::Index n = 0; n < unperturbed_energies.size(); ++n) {
        const auto up = static_cast<std::size_t>(num_qubits - down_count(BasisIndex(n)));
        const double e = unperturbed_energies[n];
        layout.centers[up] += e;
        layout.sizes[up] += 1;
        layout.lowest[up] = std::min(layout.lowest[up], e);
        layout.highest[up] = std::max(layout.highest[up], e);
    }
    for (std::size_t b = 0; b < bands; ++b) layout.centers[b] /= static_cast<double>(layout.sizes[b]);
    return layout;
}

int band_nearest(const BandLayout& layout, double energy) {
    int best = 0;
    for (int b = 1; b < static_cast<int>(layout.centers.size()); ++b)
        if (std::abs(layout.centers[b] - energy) < std::abs(layout.centers[best] - energy)) best = b;
    return best;
}

IndexRange BandSelection::central_third() const {
    const Eigen::Index len = std::max<Eigen::Index>(1, members.count / 3);
    return {members.first + (members.count - len) / 2, std::min(len, members.count)};
}

namespace {

void check_band(const BandLayout& layout, int n_up) {
    if (n_up < 0 || n_up > layout.num_qubits)
        throw ArgumentError("select_band: n_up " + std::to_string(n_up) + " outside [0, " +
                            std::to_string(layout.num_qubits) + "]");
}

// Bands ordered by center energy; ties keep n_up order.
bool below(const BandLayout& layout, int a, int b) {
    return layout.centers[a] < layout.centers[b] || (layout.centers[a] == layout.centers[b] && a < b);
}

}  // namespace

BandSelection select_band(const BandLayout& layout, int n_up) {
    check_band(layout, n_up);
    Eigen::Index offset = 0;
    for (int b = 0; b <= layout.num_qubits; ++b)
        if (b != n_up && below(layout, b, n_up)) offset += static_cast<Eigen::Index>(layout.sizes[b]);
    return {n_up, {offset, static_cast<Eigen::Index>(layout.sizes[n_up])}, layout.centers[n_up]};
}

BandSelection select_band(const Eigen::VectorXd& eigenvalues, const BandLayout& layout, int n_up, BandRule rule) {
    if (rule == BandRule::count) {
        BandSelection sel = select_band(layout, n_up);
        if (sel.members.end() > eigenvalues.size()) throw ArgumentError("select_band: spectrum smaller than layout");
        return sel;
    }
    check_band(layout, n_up);
    double lo = -HUGE_VAL, hi = HUGE_VAL;
    for (int b = 0; b <= layout.num_qubits; ++b) {
        if (b == n_up) continue;
        const double mid = 0.5 * (layout.centers[b] + layout.centers[n_up]);
        if (below(layout, b, n_up))
            lo = std::max(lo, mid);
        else
            hi = std::min(hi, mid);
    }
    const double* begin = eigenvalues.data();
    const double* end = begin + eigenvalues.size();
    const Eigen::Index first = std::lower_bound(begin, end, lo) - begin;
    const Eigen::Index last = std::lower_bound(begin, end, hi) - begin;
    return {n_up, {first, last - first}, layout.centers[n_up]};
}

SpacingSample unfolded_spacings(std::span<const double> levels) {
    if (levels.size() < 2) throw ArgumentError("unfolded_spacings: need at least two levels");
    SpacingSample sample;
    sample.spacings.resize(levels.size() - 1);
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        sample.spacings[i] = levels[i + 1] - levels[i];
        if (sample.spacings[i] < 0.0) throw ArgumentError("unfolded_spacings: levels are not ascending");
    }
    sample.mean_spacing = (levels.back() - levels.front()) / static_cast<double>(sample.spacings.size());
    if (!(sample.mean_spacing > 0.0)) throw ValidationError("unfolded_spacings: all levels degenerate");
    for (double& s : sample.spacings) s /= sample.mean_spacing;
    return sample;
}

SpacingSample staircase_unfolded_spacings(std::span<const double> levels, int degree) {
    SpacingSample raw = unfolded_spacings(levels);
    const auto n = static_cast<Eigen::Index>(levels.size());
    const int p = std::max(1, std::min(degree, static_cast<int>(n / 10)));
    const double lo = levels.front(), hi = levels.back();
    const auto scaled = [&](double e) { return 2.0 * (e - lo) / (hi - lo) - 1.0; };
    Eigen::MatrixXd basis(n, p + 1);
    Eigen::VectorXd rank(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = scaled(levels[static_cast<std::size_t>(i)]);
        basis(i, 0) = 1.0;
        basis(i, 1) = x;
        for (int k = 2; k <= p; ++k) basis(i, k) = 2.0 * x * basis(i, k - 1) - basis(i, k - 2);
        rank[i] = static_cast<double>(i);
    }
    const Eigen::VectorXd coeffs = basis.colPivHouseholderQr().solve(rank);
    const Eigen::VectorXd staircase = basis * coeffs;

    SpacingSample sample;
    sample.mean_spacing = raw.mean_spacing;
    sample.spacings.resize(raw.spacings.size());
    double total = 0.0;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const double s = std::max(0.0, staircase[i + 1] - staircase[i]);
        sample.spacings[static_cast<std::size_t>(i)] = s;
        total += s;
    }
    if (!(total > 0.0)) throw ValidationError("staircase_unfolded_spacings: degenerate fit");
    const double mean = total / static_cast<double>(sample.spacings.size());
    for (double& s : sample.spacings) s /= mean;
    return sample;
}

SpacingSample unfold(std::span<const double> levels, Unfolding method, int degree) {
    return method == Unfolding::global ? unfolded_spacings(levels) : staircase_unfolded_spacings(levels, degree);
}

double gamma_from_fraction(double fraction_below) {
    const double s0 = spacing_crossing_point();
    return (fraction_below - wigner_cdf(s0)) / (poisson_cdf(s0) - wigner_cdf(s0));
}

GammaValue gamma(const SpacingSample& sample) {
    if (sample.spacings.empty()) throw ArgumentError("gamma: empty spacing sample");
    const double s0 = spacing_crossing_point();
    const auto below = std::count_if(sample.spacings.begin(), sample.spacings.end(), [s0](double s) { return s <= s0; });
    GammaValue g;
    g.fraction_below = static_cast<double>(below) / static_cast<double>(sample.spacings.size());
    g.value = gamma_from_fraction(g.fraction_below);
    return g;
}

Histogram spacing_histogram(const SpacingSample& sample, double bin_width, double max_spacing) {
    Histogram h(0.0, max_spacing, bin_width);
    for (double s : sample.spacings) h.add(s);
    return h;
}

namespace {

template <class Scalar>
double participation_impl(std::span<const Scalar> amplitudes) {
    double norm = 0.0, fourth = 0.0;
    for (const Scalar& c : amplitudes) {
        const double p = std::norm(c);
        norm += p;
        fourth += p * p;
    }
    if (std::abs(norm - 1.0) > 1e-10) {
        std::ostringstream msg;
        msg << "participation_number: state norm^2 = " << norm << " differs from 1 by more than 1e-10";
        throw ValidationError(msg.str());
    }
    return 1.0 / fourth;
}

}  // namespace

double participation_number(std::span<const double> amplitudes) { return participation_impl(amplitudes); }

double participation_number(std::span<const std::complex<double>> amplitudes) {
    return participation_impl(amplitudes);
}

}  // namespace chaoslab
