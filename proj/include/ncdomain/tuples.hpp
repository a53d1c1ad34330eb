#pragma once

#include <vector>

#include "ncdomain/fock.hpp"

namespace ncdomain {

// An n-tuple of d x d complex matrices on a common space.
struct OperatorTuple {
    std::vector<Matrix> T;

    Eigen::Index dim() const { return T.empty() ? 0 : T.front().rows(); }
    int n() const { return static_cast<int>(T.size()); }

    void validate() const; // square, equal sizes, finite entries
    Matrix word_product(const Word& alpha) const; // T_alpha
    OperatorTuple scaled(double r) const;
};

// Phi_{f,T}(X) = sum_{|alpha|>=1} a_alpha T_alpha X T_alpha*.
Matrix phi_apply(const FreeSymbol& f, const OperatorTuple& T, const Matrix& X);

// Phi*_{f,T}(X) = sum a_alpha T_alpha* X T_alpha.
Matrix phi_star_apply(const FreeSymbol& f, const OperatorTuple& T, const Matrix& X);

struct DomainReport {
    bool member = false;
    double defect_min_eig = 0.0;
    double eps_psd = 0.0;
    bool pure = false;
    bool cnc = false;
    double q_norm = 0.0;              // ||Phi^k_max(I)||
    double q_max_eig = 0.0;
    std::vector<double> q_norm_trend; // ||Phi^k(I)|| along the iteration
    bool trend_stabilized = true;
    double spectral_radius = 0.0;
    std::vector<double> radius_trend; // ||Phi^k(I)||^{1/2k}
};

// Membership test: lambda_min(I - Phi(I)) >= -eps_psd with
// eps_psd = 1e-9 (1 + ||Phi(I)||).
DomainReport membership(const FreeSymbol& f, const OperatorTuple& T);

// Membership plus purity / c.n.c. classification via the Phi-power trend.
DomainReport classify(const FreeSymbol& f, const OperatorTuple& T, int k_max = 200);

struct SpectralRadiusEstimate {
    double value = 0.0;
    std::vector<double> sequence; // ||Phi^k(I)||^{1/2k}
};

SpectralRadiusEstimate spectral_radius(const FreeSymbol& f, const OperatorTuple& T,
                                       int k_max = 200);

// Kronecker product with the Fock factor first: index = fock * d + h.
Matrix kron(const Matrix& A, const Matrix& B);

// The reconstruction operator sum_{a_beta != 0} a_beta Lambda_{reverse(beta)} (x) T_beta*
// on Fock_m (x) C^d.
Matrix reconstruction_operator(const FreeSymbol& f, const OperatorTuple& T,
                               const TruncatedFock& F);

// Cauchy kernel (I - reconstruction)^{-1}; fails on a numerically singular
// solve.  Warns via the returned flag when the spectral-radius trend is
// within 1e-3 of 1.
struct CauchyKernel {
    Matrix C;
    bool borderline = false;
    double radius_estimate = 0.0;
};

CauchyKernel cauchy_kernel(const FreeSymbol& f, const OperatorTuple& T,
                           const TruncatedFock& F, int k_max = 200);

// g(T) = sum_k sum_{|alpha|=k} c_alpha T_alpha, exact for polynomials;
// guards against divergence for truncated-series input.
Matrix series_calculus(const FreeSymbol& f, const OperatorTuple& T, const CoeffMap& c,
                       int k_max = 200);

} // namespace ncdomain
