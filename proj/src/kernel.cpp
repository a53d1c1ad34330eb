#include "ncdomain/kernel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "ncdomain/errors.hpp"

namespace ncdomain {

DomainPoint point_in_domain(const FreeSymbol& f, const std::vector<Complex>& lambda) {
    f.validate();
    DomainPoint p;
    p.lambda = lambda;
    p.gauge = point_gauge(f, lambda);
    if (p.gauge < 1.0 - 1e-10)
        p.where = PointClass::Interior;
    else if (p.gauge <= 1.0 + 1e-10)
        p.where = PointClass::Boundary;
    else
        p.where = PointClass::Exterior;
    return p;
}

ZVector z_vector(const FreeSymbol& f, const TruncatedFock& F,
                 const std::vector<Complex>& lambda) {
    DomainPoint p = point_in_domain(f, lambda);
    if (p.where != PointClass::Interior)
        throw ValidationError("z_vector: point has gauge " + std::to_string(p.gauge) +
                              ", not interior");
    ZVector z;
    z.v = Vector::Zero(F.dim());
    for (const Word& beta : F.basis) {
        Complex lb = eval_word_at_point(lambda, beta);
        double bb = F.b.at(beta);
        z.v[static_cast<Eigen::Index>(F.index_of(beta))] = std::sqrt(bb) * std::conj(lb);
        double mass = bb * std::norm(lb);
        z.norm_sq += mass;
        if (static_cast<int>(beta.length()) == F.level) z.top_sq += mass;
    }
    // a word of length > m needs more than m / deg f factors from the support
    int k0 = F.level / f.support_degree() + 1;
    z.tail_bound = std::pow(p.gauge, k0) / (1.0 - p.gauge);
    return z;
}

double eigen_residual(const TruncatedFock& F, const ZVector& z,
                      const std::vector<Complex>& lambda) {
    double worst = 0.0;
    for (int i = 0; i < F.f.n; ++i) {
        Vector r = F.W[static_cast<std::size_t>(i)].adjoint() * z.v -
                   std::conj(lambda[static_cast<std::size_t>(i)]) * z.v;
        worst = std::max(worst, r.norm());
    }
    return worst / std::sqrt(z.norm_sq);
}

Complex kernel_value(const FreeSymbol& f, const std::vector<Complex>& mu,
                     const std::vector<Complex>& lambda) {
    for (const auto* pt : {&mu, &lambda})
        if (point_in_domain(f, *pt).where == PointClass::Exterior)
            throw ValidationError("kernel_value: point outside the closed domain");
    Complex s{};
    for (const auto& [alpha, a] : f.a)
        if (a != 0.0 && !alpha.is_empty())
            s += a * eval_word_at_point(mu, alpha) *
                 std::conj(eval_word_at_point(lambda, alpha));
    Complex den = Complex{1.0, 0.0} - s;
    if (std::abs(den) < 1e-14)
        throw NumericalError("kernel_value: kernel singular at this pair of points");
    return Complex{1.0, 0.0} / den;
}

std::vector<SymmetricBasisEntry> symmetric_basis(const FreeSymbol& f, const BTable& b,
                                                 int m) {
    f.validate();
    if (b.degree < m) throw ValidationError("symmetric_basis: b-table too short");
    const Eigen::Index dim = static_cast<Eigen::Index>(count_words(f.n, m));
    std::vector<SymmetricBasisEntry> out;
    for (const auto& k : multidegrees_up_to(f.n, m)) {
        SymmetricBasisEntry e;
        e.k = k;
        e.w = Vector::Zero(dim);
        for (const Word& alpha : degree_class(k).members) {
            double ba = b.at(alpha);
            e.gamma_k += ba;
            e.w[static_cast<Eigen::Index>(word_index(f.n, alpha))] = std::sqrt(ba);
        }
        e.w /= e.gamma_k;
        out.push_back(std::move(e));
    }
    return out;
}

Matrix pick_matrix(const FreeSymbol& f, const PickProblem& P, double* asymmetry) {
    f.validate();
    const std::size_t k = P.nodes.size();
    if (k == 0 || P.targets.size() != k)
        throw ValidationError("pick: need matching nonempty node and target lists");
    const Eigen::Index q = P.targets.front().rows();
    for (const Matrix& A : P.targets)
        if (A.rows() != q || A.cols() != q)
            throw ValidationError("pick: all targets must share one square size");
    for (std::size_t i = 0; i < k; ++i) {
        if (point_in_domain(f, P.nodes[i]).where != PointClass::Interior)
            throw ValidationError("pick: node " + std::to_string(i) + " is not interior");
        for (std::size_t j = 0; j < i; ++j) {
            double dist = 0.0;
            for (int t = 0; t < f.n; ++t)
                dist += std::norm(P.nodes[i][static_cast<std::size_t>(t)] -
                                  P.nodes[j][static_cast<std::size_t>(t)]);
            if (std::sqrt(dist) <= 1e-10)
                throw ValidationError("pick: nodes " + std::to_string(j) + " and " +
                                      std::to_string(i) + " coincide");
        }
    }
    Matrix M(static_cast<Eigen::Index>(k) * q, static_cast<Eigen::Index>(k) * q);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            Complex kv = kernel_value(f, P.nodes[i], P.nodes[j]);
            M.block(static_cast<Eigen::Index>(i) * q, static_cast<Eigen::Index>(j) * q,
                    q, q) =
                kv * (Matrix::Identity(q, q) -
                      P.targets[i] * P.targets[j].adjoint());
        }
    double asym = (M - M.adjoint()).operatorNorm();
    if (asymmetry) *asymmetry = asym;
    return (M + M.adjoint()) / 2.0;
}

PickResult pick_feasible(const FreeSymbol& f, const PickProblem& P) {
    PickResult r;
    r.pick = pick_matrix(f, P, &r.asymmetry);
    Eigen::SelfAdjointEigenSolver<Matrix> es(r.pick);
    r.min_eig = es.eigenvalues().minCoeff();
    r.eps = 1e-9 * (1.0 + r.pick.trace().real()) / static_cast<double>(r.pick.rows());
    r.feasible = r.min_eig >= -r.eps;
    return r;
}

double schur_caratheodory_value(const TruncatedFock& F, const CoeffMap& c, int m_sc) {
    if (m_sc > F.interior_degree())
        throw ValidationError("schur_caratheodory: degree exceeds the interior degree");
    for (const auto& [w, v] : c)
        if (v != Complex{} && static_cast<int>(w.length()) > m_sc)
            throw ValidationError("schur_caratheodory: coefficient word " + to_string(w) +
                                  " exceeds the requested degree");
    // the compression to degrees <= m_sc only touches shifts that stay below
    // the truncation cut, so the value is exact
    Matrix A = eval_poly(F, Side::Right, c);
    return interior_norm(F, A, m_sc);
}

double corona_delta(const TruncatedFock& F, const std::vector<CoeffMap>& phis) {
    if (phis.empty()) throw ValidationError("corona: need at least one polynomial");
    const int interior = F.interior_degree();
    for (const auto& c : phis)
        for (const auto& [w, v] : c)
            if (v != Complex{} && static_cast<int>(w.length()) > interior)
                throw ValidationError("corona: polynomial degree exceeds the interior "
                                      "degree " + std::to_string(interior));
    Matrix S = Matrix::Zero(F.dim(), F.dim());
    for (const auto& c : phis) {
        Matrix A = eval_poly(F, Side::Left, c);
        S += A * A.adjoint();
    }
    const Eigen::Index nd = static_cast<Eigen::Index>(count_words(F.f.n, interior));
    Eigen::SelfAdjointEigenSolver<Matrix> es(S.topLeftCorner(nd, nd).eval());
    return es.eigenvalues().minCoeff();
}

} // namespace ncdomain
