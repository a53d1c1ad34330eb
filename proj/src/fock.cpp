#include "ncdomain/fock.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <vector>

#include "ncdomain/errors.hpp"

namespace ncdomain {

namespace {

SparseMatrix shift_matrix(const TruncatedFock& F, int gen, bool right) {
    const Eigen::Index d = F.dim();
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(static_cast<std::size_t>(d));
    for (const Word& alpha : F.basis) {
        if (static_cast<int>(alpha.length()) >= F.level) continue; // truncation cut
        Word target = right ? alpha.concat(Word({gen})) : Word({gen}).concat(alpha);
        double w = std::sqrt(F.b.at(alpha) / F.b.at(target));
        trip.emplace_back(static_cast<Eigen::Index>(F.index_of(target)),
                          static_cast<Eigen::Index>(F.index_of(alpha)), Complex(w, 0.0));
    }
    SparseMatrix M(d, d);
    M.setFromTriplets(trip.begin(), trip.end());
    return M;
}

} // namespace

Vector TruncatedFock::apply_left_word(const Word& beta, const Vector& x) const {
    Vector v = x;
    for (auto it = beta.letters.rbegin(); it != beta.letters.rend(); ++it)
        v = W[static_cast<std::size_t>(*it)] * v;
    return v;
}

Vector TruncatedFock::apply_left_word_adjoint(const Word& beta, const Vector& x) const {
    Vector v = x;
    for (int l : beta.letters)
        v = W[static_cast<std::size_t>(l)].adjoint() * v;
    return v;
}

TruncatedFock build_fock(const FreeSymbol& f, int level, std::size_t dim_cap) {
    f.validate();
    if (level < 1) throw ValidationError("fock: level must be >= 1");
    if (count_words(f.n, level) > dim_cap)
        throw NumericalError("fock: basis size " + std::to_string(count_words(f.n, level)) +
                             " exceeds cap " + std::to_string(dim_cap));
    TruncatedFock F;
    F.f = f;
    F.level = level;
    F.basis = enumerate_words(f.n, level);
    F.b = compute_b(f, level + 1);
    F.W.reserve(static_cast<std::size_t>(f.n));
    F.L.reserve(static_cast<std::size_t>(f.n));
    for (int i = 0; i < f.n; ++i) {
        F.W.push_back(shift_matrix(F, i, false));
        F.L.push_back(shift_matrix(F, i, true));
    }
    return F;
}

double spec_norm(const Matrix& A) {
    if (A.rows() == 0 || A.cols() == 0) return 0.0;
    Matrix gram = A.rows() <= A.cols() ? (A * A.adjoint()).eval()
                                       : (A.adjoint() * A).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

double defect_residual(const TruncatedFock& F) {
    const int interior = F.level - F.f.support_degree();
    double worst = 0.0;
    for (const Word& alpha : F.basis) {
        if (static_cast<int>(alpha.length()) > interior) continue;
        Vector e = Vector::Zero(F.dim());
        e[static_cast<Eigen::Index>(F.index_of(alpha))] = 1.0;
        Complex acc = 1.0;
        for (const auto& [beta, a_beta] : F.f.a) {
            if (a_beta == 0.0 || beta.is_empty()) continue;
            Vector v = F.apply_left_word(beta, F.apply_left_word_adjoint(beta, e));
            acc -= a_beta * e.dot(v);
        }
        double expected = alpha.is_empty() ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(acc - expected));
    }
    return worst;
}

Matrix eval_poly(const TruncatedFock& F, Side side, const CoeffMap& c) {
    const Eigen::Index d = F.dim();
    Matrix A = Matrix::Zero(d, d);
    for (const auto& [beta, coeff] : c) {
        if (coeff == Complex{}) continue;
        if (static_cast<int>(beta.length()) > F.level)
            throw ValidationError("eval_poly: coefficient word " + to_string(beta) +
                                  " exceeds truncation level");
        // one nonzero per column; Lambda_{reverse(beta)} appends beta, so the
        // right-side sum c_{reverse(beta)} Lambda_beta appends the key word
        for (const Word& gamma : F.basis) {
            Word target = (side == Side::Left) ? beta.concat(gamma) : gamma.concat(beta);
            if (static_cast<int>(target.length()) > F.level) continue;
            double w = std::sqrt(F.b.at(gamma) / F.b.at(target));
            A(static_cast<Eigen::Index>(F.index_of(target)),
              static_cast<Eigen::Index>(F.index_of(gamma))) += coeff * w;
        }
    }
    return A;
}

double interior_norm(const TruncatedFock& F, const Matrix& A, int d) {
    if (d > F.level) throw ValidationError("interior_norm: degree exceeds level");
    const Eigen::Index nd = static_cast<Eigen::Index>(count_words(F.f.n, d));
    Matrix block = A.topLeftCorner(nd, nd);
    return block.jacobiSvd().singularValues()(0);
}

double hol_metric(const TruncatedFock& F, const CoeffMap& c1, const CoeffMap& c2,
                  const std::vector<double>& radii) {
    double prev = 0.0;
    for (double r : radii) {
        if (!(r > 0.0 && r < 1.0))
            throw ValidationError("hol_metric: radii must lie in (0,1)");
        if (r <= prev) throw ValidationError("hol_metric: radii must be strictly increasing");
        prev = r;
    }
    CoeffMap diff = c1;
    for (const auto& [w, v] : c2) diff[w] -= v;
    double rho = 0.0;
    double weight = 0.5;
    for (double r : radii) {
        CoeffMap scaled;
        for (const auto& [w, v] : diff)
            if (v != Complex{})
                scaled[w] = v * std::pow(r, static_cast<double>(w.length()));
        double d = scaled.empty() ? 0.0
                                  : interior_norm(F, eval_poly(F, Side::Left, scaled), F.level);
        rho += weight * d / (1.0 + d);
        weight *= 0.5;
    }
    return rho;
}

WienerReport wiener_check(const TruncatedFock& F, const CoeffMap& c, double norm_ub) {
    if (!(norm_ub > 0.0)) throw ValidationError("wiener_check: normUB must be positive");
    WienerReport rep;
    std::vector<double> level_sum(static_cast<std::size_t>(F.level) + 1, 0.0);
    Complex c0{};
    for (const auto& [w, v] : c) {
        Complex scaled = v / norm_ub;
        if (w.is_empty()) {
            c0 = scaled;
            continue;
        }
        level_sum[w.length()] += std::norm(scaled) / F.b.at(w);
    }
    rep.c0_abs = std::abs(c0);
    for (int k = 1; k <= F.level; ++k) {
        double lhs = std::sqrt(level_sum[static_cast<std::size_t>(k)]);
        rep.lhs.push_back(lhs);
        rep.margin.push_back((1.0 - std::norm(c0)) - lhs);
    }
    return rep;
}

BohrReport bohr_check(const TruncatedFock& F, const CoeffMap& c,
                      const std::vector<Complex>& lambda, double norm_ub) {
    if (!(norm_ub > 0.0)) throw ValidationError("bohr_check: normUB must be positive");
    if (point_gauge(F.f, lambda) > 1.0 + 1e-10)
        throw ValidationError("bohr_check: point outside D_f(C)");
    std::vector<Complex> three(lambda);
    for (auto& z : three) z *= 3.0;
    BohrReport rep;
    rep.gauge_3lambda = point_gauge(F.f, three);
    rep.theorem_applies = rep.gauge_3lambda <= 1.0 + 1e-10;
    for (const auto& [w, v] : c)
        rep.coeff_sum += std::abs(v) * std::abs(eval_word_at_point(lambda, w));
    rep.margin = norm_ub - rep.coeff_sum;
    return rep;
}

} // namespace ncdomain
