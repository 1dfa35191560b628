#pragma once

#include <functional>

#include <Eigen/Dense>

#include "chaoslab/hamiltonian.hpp"

namespace chaoslab {

// Eigenvalues ascending; column k of `eigenvectors` belongs to eigenvalues[k].
struct EigenSystem {
    Eigen::VectorXd eigenvalues;
    ComplexMatrix eigenvectors;

    Eigen::Index dimension() const { return eigenvalues.size(); }
};

struct RealEigenSystem {
    Eigen::VectorXd eigenvalues;
    RealMatrix eigenvectors;

    Eigen::Index dimension() const { return eigenvalues.size(); }
};

struct IndexRange {
    Eigen::Index first = 0;
    Eigen::Index count = 0;

    Eigen::Index end() const { return first + count; }
    bool contains(Eigen::Index i) const { return i >= first && i < end(); }
    bool operator==(const IndexRange&) const = default;
};

// The full spectrum plus eigenvectors for one contiguous index range of it.
struct PartialEigenSystem {
    Eigen::VectorXd eigenvalues;  // all N, ascending
    IndexRange range;
    RealMatrix eigenvectors;      // N x range.count; column c <-> eigenvalues[range.first + c]
};

// Picks the eigenvector range once the full spectrum is known.
using RangeSelector = std::function<IndexRange(const Eigen::VectorXd& eigenvalues)>;

// Relative Hermiticity tolerance accepted by the solvers.
inline constexpr double kHermitianTolerance = 1e-12;

// Throws ValidationError for non-Hermitian input, SolverError on LAPACK failure.
EigenSystem eig_hermitian(const ComplexMatrix& h);
RealEigenSystem eig_symmetric(const RealMatrix& h);

// Householder tridiagonalization, all eigenvalues from the tridiagonal form,
// then MRRR eigenvectors only for the selected range, back-transformed. Much
// cheaper than a full decomposition when the range is a small slice. Consumes h.
PartialEigenSystem eig_symmetric_partial(RealMatrix h, const RangeSelector& select);

struct DecompositionReport {
    double max_residual = 0.0;       // max_k ||H v_k - lambda_k v_k||_2 / ||H||_2
    double orthonormality = 0.0;     // max |V^dagger V - I|
    double trace_error = 0.0;        // |sum lambda - tr H| / (N max|H|)
    double reconstruction = 0.0;     // max |V Lambda V^dagger - H| / max |H| (full systems only)
    bool ascending = true;
};

DecompositionReport check_decomposition(const ComplexMatrix& h, const EigenSystem& es);
DecompositionReport check_decomposition(const RealMatrix& h, const PartialEigenSystem& es);

}  // namespace chaoslab
