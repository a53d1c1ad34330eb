#pragma once

#include "ncdomain/tuples.hpp"

namespace ncdomain {

// Poisson kernel of a domain tuple at truncation level m: the row block at
// word alpha is sqrt(b_alpha) * delta * T_alpha^*, with delta the defect
// factor (I - Phi(I))^{1/2} after rank truncation.
struct PoissonKernel {
    Matrix K;            // (dim * defect_rank) x d
    Matrix delta;        // defect_rank x d, delta^* delta ~= I - Phi(I)
    Eigen::Index defect_rank = 0;
    double tail_bound = 0.0; // ||Phi^{m+1}(I)||
    int level = 0;
};

PoissonKernel build_poisson(const FreeSymbol& f, const OperatorTuple& T,
                            const TruncatedFock& F);

// ||K^*K - I||; for pure tuples this is bounded by the tail.
double kk_residual(const PoissonKernel& P);

// max_i || K T_i^* - (W_i^* (x) I) K || on rows of degree <= m-1 (the only
// rows the truncated shift sees exactly).
double intertwine_residual(const PoissonKernel& P, const TruncatedFock& F,
                           const OperatorTuple& T);

// || K^* (W_alpha W_beta^* (x) I) K - T_alpha T_beta^* ||.
double poisson_transform_residual(const PoissonKernel& P, const TruncatedFock& F,
                                  const OperatorTuple& T, const Word& alpha,
                                  const Word& beta);

// Row stack sqrt(b_alpha) Delta T_alpha^* with the full (un-truncated) d x d
// defect square root, so K K^* lives on Fock (x) C^d.
Matrix poisson_rows_ambient(const FreeSymbol& f, const OperatorTuple& T,
                            const TruncatedFock& F);

// (A (x) I_fiber) M where A acts on the Fock index (outer index of the rows).
Matrix fock_kron_apply(const SparseMatrix& A, const Matrix& M, int fiber);

// max_i of the interior compression of M (W_i (x) I_in) - (W_i (x) I_out) M,
// rows/columns cut at Fock degree <= max_degree.
double multi_analytic_residual(const TruncatedFock& F, const Matrix& M,
                               int fiber_in, int fiber_out, int max_degree);

struct BeurlingFactorization {
    Matrix psi;                    // (dim * h) x (dim * defect_rank)
    double factor_residual = 0.0;  // ||Psi Psi^* - Y|| on the interior block
    double analytic_residual = 0.0;
    double subharmonic_min_eig = 0.0;
    Eigen::Index rank = 0;         // rank of Y after the cut
};

// Factorizes a positive Y on Fock_m (x) C^h with Phi_{f,W(x)I}(Y) <= Y as
// Y = Psi Psi^* with Psi commuting with the W_i (x) I up to truncation.
BeurlingFactorization beurling_factorize(const FreeSymbol& f, const TruncatedFock& F,
                                         const Matrix& Y);

} // namespace ncdomain
