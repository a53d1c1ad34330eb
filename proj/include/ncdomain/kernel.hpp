#pragma once

#include <vector>

#include "ncdomain/fock.hpp"

namespace ncdomain {

enum class PointClass { Interior, Boundary, Exterior };

struct DomainPoint {
    std::vector<Complex> lambda;
    double gauge = 0.0; // sum a_alpha |lambda_alpha|^2
    PointClass where = PointClass::Interior;
};

// Scalar membership: interior iff gauge < 1, with a +-1e-10 boundary band.
DomainPoint point_in_domain(const FreeSymbol& f, const std::vector<Complex>& lambda);

struct ZVector {
    Vector v;               // sum sqrt(b_beta) conj(lambda_beta) e_beta, degree <= m
    double norm_sq = 0.0;
    double top_sq = 0.0;    // exact top-degree mass sum_{|beta|=m} b_beta |lambda_beta|^2
    double tail_bound = 0.0; // geometric bound on the omitted degrees > m
};

// Truncated joint eigenvector of the adjoint shifts: W_i^* z = conj(lambda_i) z
// up to the top-degree leak.
ZVector z_vector(const FreeSymbol& f, const TruncatedFock& F,
                 const std::vector<Complex>& lambda);

// max_i ||W_i^* z - conj(lambda_i) z|| / ||z||.
double eigen_residual(const TruncatedFock& F, const ZVector& z,
                      const std::vector<Complex>& lambda);

// K_f(mu, lambda) = 1 / (1 - sum a_alpha mu_alpha conj(lambda_alpha)).
Complex kernel_value(const FreeSymbol& f, const std::vector<Complex>& mu,
                     const std::vector<Complex>& lambda);

struct SymmetricBasisEntry {
    std::vector<int> k;   // multidegree
    double gamma_k = 0.0; // sum of b_alpha over the degree class
    Vector w;             // (1/gamma_k) sum sqrt(b_alpha) e_alpha, in Fock_m
};

// Orthogonal basis of the symmetric part, one entry per multidegree |k| <= m.
std::vector<SymmetricBasisEntry> symmetric_basis(const FreeSymbol& f, const BTable& b,
                                                 int m);

struct PickProblem {
    std::vector<std::vector<Complex>> nodes;
    std::vector<Matrix> targets; // common size q x q
};

struct PickResult {
    bool feasible = false;
    double min_eig = 0.0;
    double eps = 0.0;
    double asymmetry = 0.0; // pre-symmetrization Hermitian mismatch
    Matrix pick;
};

// Block matrix [(I - A_i A_j^*) K_f(lambda_i, lambda_j)], Hermitian-symmetrized.
Matrix pick_matrix(const FreeSymbol& f, const PickProblem& P, double* asymmetry = nullptr);

// Feasibility certificate: smallest eigenvalue against the scale-aware tolerance
// 1e-9 (1 + trace) / size.
PickResult pick_feasible(const FreeSymbol& f, const PickProblem& P);

// Exact norm of the compression of the right-multiplier with coefficients c
// to polynomials of degree <= m_sc.
double schur_caratheodory_value(const TruncatedFock& F, const CoeffMap& c, int m_sc);

// Smallest eigenvalue of the interior compression of sum phi_i(W) phi_i(W)^*;
// positive values witness a corona-type lower bound at this truncation.
double corona_delta(const TruncatedFock& F, const std::vector<CoeffMap>& phis);

} // namespace ncdomain
