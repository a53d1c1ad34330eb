#pragma once

#include <complex>
#include <map>
#include <unordered_map>
#include <vector>

#include "ncdomain/words.hpp"

namespace ncdomain {

using Complex = std::complex<double>;

// Coefficient map of a noncommutative polynomial / truncated series,
// keyed by word in graded-lex order.
using CoeffMap = std::map<Word, Complex>;

// A positive regular free holomorphic function given by its coefficient
// table a_alpha.  Only finitely supported symbols are accepted; series
// must be pre-truncated by the caller.
struct FreeSymbol {
    int n = 0;
    std::map<Word, double> a; // only nonzero coefficients stored

    double coeff(const Word& w) const;
    int support_degree() const;

    // Throws ValidationError unless a_e = 0, a_{g_i} > 0 for every
    // generator, and all coefficients are >= 0 with letters < n.
    void validate() const;
};

// The derived coefficients b_alpha of (1-f)^{-1}, up to a fixed degree.
struct BTable {
    int n = 0;
    int degree = 0;
    std::unordered_map<Word, double, WordHash> b;

    double at(const Word& w) const;
    bool covers(const Word& w) const { return static_cast<int>(w.length()) <= degree; }
};

// Prefix recursion b_gamma = sum_{beta alpha = gamma, |beta|>=1} a_beta b_alpha,
// with b_e = 1, computed in graded order.
BTable compute_b(const FreeSymbol& f, int max_degree);

// gamma = sum over the support of a_alpha / b_alpha; >= n, with equality
// exactly for linear symbols.
double gamma_constant(const FreeSymbol& f, const BTable& b);

// M = max over |alpha| <= m, i of sqrt(b_{g_i alpha} / b_alpha).
double schwarz_constant(const FreeSymbol& f, const BTable& b, int m);

// Symbol with coefficient of alpha equal to a_{reverse(alpha)}.
FreeSymbol reverse_symbol(const FreeSymbol& f);

// Per-degree values rho_k = (sum_{|beta|=k} |c_beta|^2 / b_beta)^{1/2k}
// and a trailing-window heuristic for membership in Hol(D_f).  A finite-
// data heuristic, never a theorem.
struct RadiusDiagnostic {
    std::vector<double> per_degree; // rho_1 .. rho_m
    double trailing_max = 0.0;      // max over the trailing window
    int window = 0;
    bool plausibly_holomorphic = false;
};

RadiusDiagnostic radius_test(const CoeffMap& c, const BTable& b, int m,
                             double tolerance = 1e-9);

// lambda_alpha = lambda_{i_1} ... lambda_{i_k} for alpha = g_{i_1}...g_{i_k}.
Complex eval_word_at_point(const std::vector<Complex>& lambda, const Word& w);

// Scalar membership gauge sum_{|alpha|>=1} a_alpha |lambda_alpha|^2.
double point_gauge(const FreeSymbol& f, const std::vector<Complex>& lambda);

} // namespace ncdomain
