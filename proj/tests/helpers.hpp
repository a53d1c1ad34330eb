#pragma once

#include <map>
#include <random>

#include "ncdomain/symbol.hpp"
#include "ncdomain/tuples.hpp"

namespace ncdomain::testing {

inline FreeSymbol linear_symbol(int n) {
    FreeSymbol f;
    f.n = n;
    for (int i = 0; i < n; ++i) f.a[Word({i})] = 1.0;
    return f;
}

// f = X_1 + X_2 + X_1 X_2
inline FreeSymbol mixed_symbol() {
    FreeSymbol f = linear_symbol(2);
    f.a[Word({0, 1})] = 1.0;
    return f;
}

inline FreeSymbol single_var() { return linear_symbol(1); }

// truncated product of noncommutative polynomials, for the series oracle
inline std::map<Word, double> poly_mult(const std::map<Word, double>& p,
                                        const std::map<Word, double>& q, int max_deg) {
    std::map<Word, double> r;
    for (const auto& [u, cu] : p)
        for (const auto& [v, cv] : q) {
            if (static_cast<int>(u.length() + v.length()) > max_deg) continue;
            r[u.concat(v)] += cu * cv;
        }
    return r;
}

// coefficients of (1 - f)^{-1} = sum_k f^k, truncated; an inversion oracle
// independent of the prefix recursion
inline std::map<Word, double> geometric_inverse(const FreeSymbol& f, int max_deg) {
    std::map<Word, double> fmap;
    for (const auto& [w, a] : f.a)
        if (a != 0.0) fmap[w] = a;
    std::map<Word, double> sum{{Word::empty(), 1.0}};
    std::map<Word, double> term{{Word::empty(), 1.0}};
    for (int k = 1; k <= max_deg; ++k) {
        term = poly_mult(term, fmap, max_deg);
        for (const auto& [w, c] : term) sum[w] += c;
    }
    return sum;
}

inline Matrix random_matrix(std::mt19937& rng, Eigen::Index d) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
    return m;
}

// random tuple scaled so that the membership gauge ||Phi(I)|| equals `target`
inline OperatorTuple random_member(std::mt19937& rng, const FreeSymbol& f,
                                   Eigen::Index d, double target,
                                   bool strictly_upper = false) {
    OperatorTuple T;
    for (int i = 0; i < f.n; ++i) {
        Matrix m = random_matrix(rng, d);
        if (strictly_upper)
            m = m.triangularView<Eigen::StrictlyUpper>();
        T.T.push_back(m);
    }
    // bisect the scale: ||Phi_{f,rT}(I)|| is continuous and increasing in r
    double lo = 0.0, hi = 1.0;
    auto norm_at = [&](double r) {
        OperatorTuple S = T.scaled(r);
        return phi_apply(f, S, Matrix::Identity(d, d)).operatorNorm();
    };
    while (norm_at(hi) < target) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = (lo + hi) / 2.0;
        (norm_at(mid) < target ? lo : hi) = mid;
    }
    return T.scaled((lo + hi) / 2.0);
}

} // namespace ncdomain::testing
