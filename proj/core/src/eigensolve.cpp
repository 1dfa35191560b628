#include "chaoslab/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <lapacke.h>

#include "chaoslab/errors.hpp"

namespace chaoslab {

namespace {

template <class Matrix>
void validate_input(const Matrix& h, const char* who) {
    if (h.rows() != h.cols()) {
        std::ostringstream msg;
        msg << who << ": matrix is " << h.rows() << "x" << h.cols() << ", not square";
        throw ValidationError(msg.str());
    }
    if (!h.allFinite()) throw ValidationError(std::string(who) + ": matrix has non-finite entries");
    const double dev = hermiticity_deviation(h);
    if (dev > kHermitianTolerance) {
        std::ostringstream msg;
        msg << who << ": relative Hermiticity deviation " << dev << " exceeds " << kHermitianTolerance;
        throw ValidationError(msg.str());
    }
}

[[noreturn]] void lapack_failure(const char* routine, lapack_int info, Eigen::Index n) {
    std::ostringstream msg;
    msg << routine << " failed with info = " << info << " (dimension " << n << ")";
    throw SolverError(msg.str(), static_cast<int>(info));
}

lapack_int as_lapack(Eigen::Index n) { return static_cast<lapack_int>(n); }

}  // namespace

EigenSystem eig_hermitian(const ComplexMatrix& h) {
    validate_input(h, "eig_hermitian");
    EigenSystem es;
    const Eigen::Index n = h.rows();
    es.eigenvectors = h;
    es.eigenvalues.resize(n);
    if (n == 0) return es;
    const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'U', as_lapack(n),
                                           reinterpret_cast<lapack_complex_double*>(es.eigenvectors.data()),
                                           as_lapack(n), es.eigenvalues.data());
    if (info != 0) lapack_failure("zheevd", info, n);
    return es;
}

RealEigenSystem eig_symmetric(const RealMatrix& h) {
    validate_input(h, "eig_symmetric");
    RealEigenSystem es;
    const Eigen::Index n = h.rows();
    es.eigenvectors = h;
    es.eigenvalues.resize(n);
    if (n == 0) return es;
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', as_lapack(n), es.eigenvectors.data(),
                                           as_lapack(n), es.eigenvalues.data());
    if (info != 0) lapack_failure("dsyevd", info, n);
    return es;
}

PartialEigenSystem eig_symmetric_partial(RealMatrix h, const RangeSelector& select) {
    validate_input(h, "eig_symmetric_partial");
    const Eigen::Index n = h.rows();
    const lapack_int ln = as_lapack(n);
    PartialEigenSystem es;
    es.eigenvalues.resize(n);
    if (n == 0) return es;

    Eigen::VectorXd diag(n), offdiag(std::max<Eigen::Index>(n - 1, 1)), tau(std::max<Eigen::Index>(n - 1, 1));
    lapack_int info = LAPACKE_dsytrd(LAPACK_COL_MAJOR, 'L', ln, h.data(), ln, diag.data(), offdiag.data(), tau.data());
    if (info != 0) lapack_failure("dsytrd", info, n);

    es.eigenvalues = diag;
    {
        Eigen::VectorXd e = offdiag;
        info = LAPACKE_dsterf(ln, es.eigenvalues.data(), e.data());
        if (info != 0) lapack_failure("dsterf", info, n);
    }

    es.range = select(es.eigenvalues);
    if (es.range.first < 0 || es.range.count < 0 || es.range.end() > n) {
        std::ostringstream msg;
        msg << "eig_symmetric_partial: selected range [" << es.range.first << ", " << es.range.end()
            << ") outside spectrum of size " << n;
        throw ArgumentError(msg.str());
    }
    const Eigen::Index m = es.range.count;
    if (m == 0) return es;

    es.eigenvectors.resize(n, m);
    {
        Eigen::VectorXd d = diag, e(n), w(n);
        e.head(n - 1) = offdiag.head(n - 1);
        e[n - 1] = 0.0;
        std::vector<lapack_int> support(2 * static_cast<std::size_t>(m));
        lapack_logical tryrac = 1;
        lapack_int found = 0;
        const bool all = (m == n);
        info = LAPACKE_dstemr(LAPACK_COL_MAJOR, 'V', all ? 'A' : 'I', ln, d.data(), e.data(), 0.0, 0.0,
                              as_lapack(es.range.first + 1), as_lapack(es.range.end()), &found, w.data(),
                              es.eigenvectors.data(), ln, as_lapack(m), support.data(), &tryrac);
        if (info != 0 || found != m) {
            // MRRR gave up; divide and conquer on the full tridiagonal always converges in practice.
            RealMatrix z(n, n);
            d = diag;
            e.head(n - 1) = offdiag.head(n - 1);
            info = LAPACKE_dstedc(LAPACK_COL_MAJOR, 'I', ln, d.data(), e.data(), z.data(), ln);
            if (info != 0) lapack_failure("dstedc", info, n);
            es.eigenvectors = z.middleCols(es.range.first, m);
        }
    }

    info = LAPACKE_dormtr(LAPACK_COL_MAJOR, 'L', 'L', 'N', ln, as_lapack(m), h.data(), ln, tau.data(),
                          es.eigenvectors.data(), ln);
    if (info != 0) lapack_failure("dormtr", info, n);
    return es;
}

namespace {

template <class Matrix, class Vectors>
DecompositionReport report_for(const Matrix& h, const Eigen::VectorXd& values, const Vectors& vectors,
                               Eigen::Index first) {
    DecompositionReport r;
    const Eigen::Index n = values.size();
    if (n == 0) return r;
    const double norm2 = std::max(std::abs(values[0]), std::abs(values[n - 1]));
    const double max_abs = h.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 1; k < n; ++k)
        if (values[k] < values[k - 1]) r.ascending = false;

    if (norm2 > 0.0) {
        for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
            const double res = (h * vectors.col(c) - values[first + c] * vectors.col(c)).norm();
            r.max_residual = std::max(r.max_residual, res / norm2);
        }
    }
    const Eigen::Index m = vectors.cols();
    r.orthonormality = m == 0 ? 0.0
                              : (vectors.adjoint() * vectors - Matrix::Identity(m, m)).cwiseAbs().maxCoeff();
    if (max_abs > 0.0)
        r.trace_error = std::abs(values.sum() - std::real(h.trace())) / (static_cast<double>(n) * max_abs);
    if (m == n && max_abs > 0.0) {
        const Matrix rebuilt = vectors * values.cast<typename Matrix::Scalar>().asDiagonal() * vectors.adjoint();
        r.reconstruction = (rebuilt - h).cwiseAbs().maxCoeff() / max_abs;
    }
    return r;
}

}  // namespace

DecompositionReport check_decomposition(const ComplexMatrix& h, const EigenSystem& es) {
    return report_for(h, es.eigenvalues, es.eigenvectors, 0);
}

DecompositionReport check_decomposition(const RealMatrix& h, const PartialEigenSystem& es) {
    return report_for(h, es.eigenvalues, es.eigenvectors, es.range.first);
}

}  // namespace chaoslab
