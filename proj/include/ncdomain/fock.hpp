#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <vector>

#include "ncdomain/symbol.hpp"

namespace ncdomain {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

inline constexpr std::size_t kDefaultDimCap = std::size_t{1} << 20;

// Level-m truncation of the weighted Fock space with the universal model:
// W_i e_alpha = sqrt(b_alpha / b_{g_i alpha}) e_{g_i alpha} for |alpha| < m
// (zero at the top degree), and likewise the right shifts L_i appending g_i.
struct TruncatedFock {
    FreeSymbol f;
    int level = 0;
    std::vector<Word> basis; // graded-lex
    BTable b;                // to degree level + 1
    std::vector<SparseMatrix> W; // n weighted left creation operators
    std::vector<SparseMatrix> L; // n weighted right creation operators

    Eigen::Index dim() const { return static_cast<Eigen::Index>(basis.size()); }
    std::size_t index_of(const Word& w) const { return word_index(f.n, w); }

    // Largest degree on which defect-identity products see no truncation.
    int interior_degree() const { return level - f.support_degree() - 1; }

    // W_beta (resp. L applied so that beta is appended on the right) as a
    // sparse product, applied to a coefficient vector.
    Vector apply_left_word(const Word& beta, const Vector& x) const;
    Vector apply_left_word_adjoint(const Word& beta, const Vector& x) const;
};

TruncatedFock build_fock(const FreeSymbol& f, int level,
                         std::size_t dim_cap = kDefaultDimCap);

// Max over interior basis vectors of the diagonal defect mismatch
// |<(I - sum a_beta W_beta W_beta*) e_alpha, e_alpha> - delta_{alpha,e}|.
double defect_residual(const TruncatedFock& F);

// Largest singular value computed from the smaller Gram factor; Eigen's
// operatorNorm always forms the rows x rows product, which is ruinous for
// tall stacked-row matrices.
double spec_norm(const Matrix& A);

enum class Side { Left, Right };

// sum c_beta W_beta, or sum c_{reverse(beta)} L_beta for Side::Right,
// as a dense matrix.
Matrix eval_poly(const TruncatedFock& F, Side side, const CoeffMap& c);

// Largest singular value of the compression of A to degrees <= d.
double interior_norm(const TruncatedFock& F, const Matrix& A, int d);

// rho(c1, c2) = sum_m 2^{-m} d_{r_m} / (1 + d_{r_m}) with
// d_r = ||c1(rW) - c2(rW)|| at full interior compression.
double hol_metric(const TruncatedFock& F, const CoeffMap& c1, const CoeffMap& c2,
                  const std::vector<double>& radii);

// Per-degree Wiener data for the normalized symbol c / normUB:
// lhs_k = (sum_{|beta|=k} |c_beta|^2 / b_beta)^{1/2}, margin_k = (1-|c_0|^2) - lhs_k.
struct WienerReport {
    double c0_abs = 0.0;
    std::vector<double> lhs;    // k = 1..level
    std::vector<double> margin;
};

WienerReport wiener_check(const TruncatedFock& F, const CoeffMap& c, double norm_ub);

struct BohrReport {
    double margin = 0.0;      // normUB - sum |c_beta| |lambda_beta|
    double coeff_sum = 0.0;
    double gauge_3lambda = 0.0;
    bool theorem_applies = false; // whether lambda is inside D_{f,1/3}(C)
};

// Bohr margin at a scalar point.  Rejects points outside D_f(C); points
// outside the 1/3-scaled domain are reported with theorem_applies=false
// rather than rejected (the inequality is only guaranteed inside).
BohrReport bohr_check(const TruncatedFock& F, const CoeffMap& c,
                      const std::vector<Complex>& lambda, double norm_ub);

} // namespace ncdomain
