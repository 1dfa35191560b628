#pragma once

// Bipartite and pairwise entanglement of pure many-qubit states.
//
// Reduced density matrices use the global bit convention: kept qubits are
// sorted ascending and the t-th kept qubit is bit t of the reduced index, so
// a two-qubit reduction over (q0 < q1) is indexed b_q0 + 2 b_q1 and the
// conjugation basis for concurrence is {|00>, |10>, |01>, |11>} in that order
// (the formulas are symmetric under the qubit swap).

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "chaoslab/hamiltonian.hpp"
#include "chaoslab/histogram.hpp"

namespace chaoslab {

struct DensityMatrix {
    ComplexMatrix rho;
    std::vector<int> qubits;  // kept qubits, ascending

    int num_qubits() const { return static_cast<int>(qubits.size()); }
};

// Throws ValidationError unless rho is Hermitian (1e-12), unit-trace (1e-10)
// and has no eigenvalue below -1e-10. Returns the eigenvalues, negatives clipped to 0.
Eigen::VectorXd validated_spectrum(const ComplexMatrix& rho);

// rho_A = Tr_B |psi><psi| for the kept qubit set A. Throws ArgumentError for an
// empty or full keep set, out-of-range/duplicate qubits, or a state whose
// length is not a power of two.
DensityMatrix partial_trace(std::span<const std::complex<double>> state, std::span<const int> keep);
DensityMatrix partial_trace(std::span<const double> state, std::span<const int> keep);

// Fast paths for the hot loops; same conventions as partial_trace.
Eigen::Matrix2cd single_qubit_rdm(std::span<const std::complex<double>> state, int qubit);
Eigen::Matrix2cd single_qubit_rdm(std::span<const double> state, int qubit);
Eigen::Matrix4cd two_qubit_rdm(std::span<const std::complex<double>> state, int q0, int q1);
Eigen::Matrix4cd two_qubit_rdm(std::span<const double> state, int q0, int q1);

// -sum p log2 p over the spectrum of rho, in bits.
double von_neumann_entropy(const ComplexMatrix& rho);
double von_neumann_entropy(const DensityMatrix& rho);

// Entropy of the contiguous block of qubits [first, first + count).
double block_entropy(std::span<const double> state, int first, int count);
double block_entropy(std::span<const std::complex<double>> state, int first, int count);

// c_lambda = l1 - l2 - l3 - l4, with l_i the descending square roots of the
// eigenvalues of rho (Y x Y) rho^* (Y x Y). Lies in [-1/2, 1] for physical input.
double c_lambda(const Eigen::Matrix4cd& rho);
double c_lambda(const DensityMatrix& rho);

double concurrence(const Eigen::Matrix4cd& rho);
double concurrence(const DensityMatrix& rho);

// h(x) = -x log2 x - (1 - x) log2 (1 - x), with 0 log 0 = 0.
double binary_entropy(double x);
double formation_from_concurrence(double c);
double entanglement_of_formation(const Eigen::Matrix4cd& rho);
double entanglement_of_formation(const DensityMatrix& rho);

// Sum of |negative eigenvalues| of the partial transpose on the second qubit.
double negativity(const Eigen::Matrix4cd& rho);
double negativity(const DensityMatrix& rho);

struct ClambdaSample {
    Histogram histogram;  // on [-1/2, 1]
    double mean = 0.0;
    std::size_t count = 0;
};

ClambdaSample clambda_statistics(std::span<const double> values, double bin_width = 0.05);

}  // namespace chaoslab
