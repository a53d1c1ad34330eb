#pragma once

#include <string>
#include <vector>

#include "ncdomain/poisson.hpp"

namespace ncdomain {

// Row operator C(T) = [sqrt(a_beta) T_beta : beta in support], support in
// graded-lex order, plus the two defect factors.
struct CharData {
    std::vector<Word> support;
    Matrix C;           // d x (d N)
    Matrix delta_c;     // d x d, (I - C C^*)^{1/2}
    Matrix delta_cstar; // dN x dN, (I - C^* C)^{1/2}
    double defect_min_eig = 0.0;
};

CharData build_char_data(const FreeSymbol& f, const OperatorTuple& T);

// Theta(z) = -C + Delta_C (I - sum a_beta z_beta T_beta^*)^{-1}
//            [sqrt(a_beta) z_beta I] Delta_{C^*}, a d x dN contraction.
Matrix char_point(const FreeSymbol& f, const OperatorTuple& T,
                  const std::vector<Complex>& z);

// Truncated multi-analytic characteristic matrix, Fock (x) C^{dN} -> Fock (x) C^d.
Matrix char_operator(const FreeSymbol& f, const OperatorTuple& T,
                     const TruncatedFock& F);

// || (I - Theta Theta^*) - K K^* || over the whole truncated block; both sides
// preserve the degree filtration, so truncation introduces no extra error.
double factorization_residual(const FreeSymbol& f, const OperatorTuple& T,
                              const TruncatedFock& F);

struct CurvatureTrace {
    std::vector<double> numerator;   // trace(I - Phi^k(I))
    std::vector<double> denominator;
    std::vector<double> ratio;
    double value = 0.0;
    double alt_value = 0.0;     // second branch when the branch test is ambiguous
    bool two_branches = false;
    std::string branch;
    bool converged = false;
    double spread = 0.0;        // relative spread over the plateau window
    double trace_defect = 0.0;  // trace(I - Phi(I))
    Eigen::Index defect_rank = 0;
};

// Ratio sequence trace(I - Phi^k(I)) / sum_{j<k} gamma^j; for gamma = 1 the
// equivalent form trace Phi^k(I - Phi(I)) is used.
CurvatureTrace curvature(const FreeSymbol& p, const OperatorTuple& T, int k_max = 200);

// Same machinery with ||Phi^*(I)|| in place of gamma; the branch below /at /
// above 1 is selected with a 1e-9 band and reported.
CurvatureTrace star_curvature(const FreeSymbol& p, const OperatorTuple& T,
                              int k_max = 200);

struct EllipsoidReport {
    CurvatureTrace curv;
    CurvatureTrace star_curv;
    Eigen::Index defect_rank = 0;
    bool pure = false;
    bool model_tuple_candidate = false; // pure and curvature matches the defect rank
};

// Diagnostics for the ellipsoid symbol sum a_i X_i.
EllipsoidReport ellipsoid_report(const std::vector<double>& a, const OperatorTuple& T,
                                 int k_max = 200);

} // namespace ncdomain
