#pragma once

// Dense Hamiltonians of the two disordered spin-1/2 models.
//
// 2D random-Ising lattice on a periodic Lx x Ly torus:
//
//   H = sum_i Gamma_i Z_i + sum_<ij> J_ij X_i X_j,
//   Gamma_i ~ U[Delta0 - delta/2, Delta0 + delta/2],  J_ij ~ U[-J, J].
//
// 1D chain in the effective-field representation, H = H0 + V with
//
//   H0 = 1/2 sum_k eps_k Z_k,            eps_k = sqrt(delta_k^2 + Omega^2), delta_k = a k
//   V  = sum_{j<k<=j+l_c} J_jk [ -1/2 b_j b_k Z_j Z_k - 1/2 a_j a_k Y_j Y_k
//                                + 1/2 (a_j b_k Y_j Z_k + a_k b_j Z_j Y_k) ]
//   a_k = Omega / eps_k,  b_k = -delta_k / eps_k,  J_jk = J xi_jk,  xi ~ U[-1, 1].
//
// Sites are numbered 1..L in the formulas above and 0..L-1 in code (see
// spin_basis.hpp for the bit convention).

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "chaoslab/spin_basis.hpp"

namespace chaoslab {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

struct ModelSpec2D {
    int lx = 3;
    int ly = 3;
    double delta0 = 1.0;   // mean single-qubit splitting
    double delta = 0.09;   // width of the splitting distribution
    double coupling = 0.0; // J

    Geometry geometry() const { return Geometry::torus(lx, ly); }
    int num_qubits() const { return lx * ly; }
};

struct ModelSpec1D {
    int length = 12;
    double gradient = 1.0;  // a
    double rabi = 100.0;    // Omega
    double coupling = 0.0;  // J
    int range = 11;         // l_c; 1 is the NN model, length - 1 the AA model

    int num_qubits() const { return length; }
    // delta_k for 0-based site k.
    double detuning(int k) const { return gradient * (k + 1); }
    double effective_field(int k) const;
    double coefficient_a(int k) const { return rabi / effective_field(k); }
    double coefficient_b(int k) const { return -detuning(k) / effective_field(k); }
    // Delocalization border J_c = 4 a^2 / Omega.
    double critical_coupling() const { return 4.0 * gradient * gradient / rabi; }
};

// Unit-scale disorder draws; the coupling scale J multiplies the couplings at
// build time, so one realization can be swept over J.
struct DisorderRealization {
    struct Coupling {
        QubitPair pair;
        double unit_strength = 0.0;  // xi in [-1, 1]
    };

    std::uint64_t seed = 0;
    std::vector<double> fields;       // Gamma_i (2D only)
    std::vector<Coupling> couplings;  // lattice bonds (2D) or every chain pair (1D)
};

// 2D: fields for sites 0..L-1, then one coupling per lattice bond in
// pairs_at_distance(torus, 1) order.
DisorderRealization sample_realization(const ModelSpec2D& spec, std::uint64_t seed);

// 1D: one coupling for every pair in all_pairs(L) order, independent of the
// interaction range, so models differing only in l_c share their common bonds.
DisorderRealization sample_realization(const ModelSpec1D& spec, std::uint64_t seed);

RealMatrix build_h_2d(const ModelSpec2D& spec, const DisorderRealization& realization);

// Diagonal of H0 for each model, indexed by basis state. For the 2D model this
// is the J = 0 Hamiltonian sum_i Gamma_i Z_i.
Eigen::VectorXd unperturbed_energies(const ModelSpec2D& spec, const DisorderRealization& realization);
Eigen::VectorXd unperturbed_energies(const ModelSpec1D& spec);

ComplexMatrix build_h0_1d(const ModelSpec1D& spec);
ComplexMatrix build_v_1d(const ModelSpec1D& spec, const DisorderRealization& realization);
ComplexMatrix build_h_1d(const ModelSpec1D& spec, const DisorderRealization& realization);

// The 1D Hamiltonian conjugated by U = prod_k diag(1, i)_k, which maps Y_k to
// -X_k and leaves Z_k alone, so U H U^dagger is real symmetric. Eigenvectors
// transform back with to_model_gauge.
RealMatrix build_h_1d_real_gauge(const ModelSpec1D& spec, const DisorderRealization& realization);

// Diagonal entry of U for basis state n: i^popcount(n).
std::complex<double> gauge_phase(BasisIndex n);

// psi_n = conj(gauge_phase(n)) * phi_n for every column phi of real-gauge eigenvectors.
ComplexMatrix to_model_gauge(const RealMatrix& real_gauge_vectors);

// max |H - H^dagger| / max |H| (0 for the zero matrix).
double hermiticity_deviation(const ComplexMatrix& h);
double hermiticity_deviation(const RealMatrix& h);

}  // namespace chaoslab
