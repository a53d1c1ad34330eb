#include "ncdomain/tuples.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>

#include "ncdomain/errors.hpp"

namespace ncdomain {

void OperatorTuple::validate() const {
    if (T.empty()) throw ValidationError("tuple: at least one matrix required");
    const Eigen::Index d = T.front().rows();
    for (std::size_t i = 0; i < T.size(); ++i) {
        if (T[i].rows() != T[i].cols())
            throw ValidationError("tuple: matrix " + std::to_string(i) + " is not square");
        if (T[i].rows() != d)
            throw ValidationError("tuple: matrix " + std::to_string(i) +
                                  " has a different size than matrix 0");
        if (!T[i].allFinite())
            throw ValidationError("tuple: matrix " + std::to_string(i) +
                                  " has a non-finite entry");
    }
}

Matrix OperatorTuple::word_product(const Word& alpha) const {
    const Eigen::Index d = dim();
    Matrix P = Matrix::Identity(d, d);
    for (int l : alpha.letters) P *= T[static_cast<std::size_t>(l)];
    return P;
}

OperatorTuple OperatorTuple::scaled(double r) const {
    OperatorTuple out;
    out.T.reserve(T.size());
    for (const auto& M : T) out.T.push_back(r * M);
    return out;
}

Matrix phi_apply(const FreeSymbol& f, const OperatorTuple& T, const Matrix& X) {
    Matrix Y = Matrix::Zero(X.rows(), X.cols());
    for (const auto& [alpha, a] : f.a) {
        if (a == 0.0 || alpha.is_empty()) continue;
        Matrix Ta = T.word_product(alpha);
        Y += a * Ta * X * Ta.adjoint();
    }
    return Y;
}

Matrix phi_star_apply(const FreeSymbol& f, const OperatorTuple& T, const Matrix& X) {
    Matrix Y = Matrix::Zero(X.rows(), X.cols());
    for (const auto& [alpha, a] : f.a) {
        if (a == 0.0 || alpha.is_empty()) continue;
        Matrix Ta = T.word_product(alpha);
        Y += a * Ta.adjoint() * X * Ta;
    }
    return Y;
}

namespace {

double min_eig_hermitian(const Matrix& A) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(((A + A.adjoint()) / 2.0).eval());
    return es.eigenvalues().minCoeff();
}

double max_eig_hermitian(const Matrix& A) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(((A + A.adjoint()) / 2.0).eval());
    return es.eigenvalues().maxCoeff();
}

} // namespace

DomainReport membership(const FreeSymbol& f, const OperatorTuple& T) {
    f.validate();
    T.validate();
    if (f.n != T.n())
        throw ValidationError("tuple: symbol has " + std::to_string(f.n) +
                              " generators but tuple has " + std::to_string(T.n()));
    const Eigen::Index d = T.dim();
    Matrix PhiI = phi_apply(f, T, Matrix::Identity(d, d));
    DomainReport rep;
    rep.eps_psd = 1e-9 * (1.0 + PhiI.operatorNorm());
    rep.defect_min_eig = min_eig_hermitian(Matrix::Identity(d, d) - PhiI);
    rep.member = rep.defect_min_eig >= -rep.eps_psd;
    return rep;
}

DomainReport classify(const FreeSymbol& f, const OperatorTuple& T, int k_max) {
    DomainReport rep = membership(f, T);
    const Eigen::Index d = T.dim();
    Matrix Q = Matrix::Identity(d, d);
    rep.q_norm_trend.clear();
    for (int k = 0; k < k_max; ++k) {
        Q = phi_apply(f, T, Q);
        double nrm = Q.operatorNorm();
        rep.q_norm_trend.push_back(nrm);
        if (nrm <= 1e-8) break;
    }
    rep.q_norm = rep.q_norm_trend.back();
    rep.pure = rep.q_norm <= 1e-8;
    rep.q_max_eig = max_eig_hermitian(Q);
    rep.cnc = rep.q_max_eig < 1.0 - 1e-8;
    // stabilized if the last two norms moved by < 1e-6 relative, or went to 0
    if (rep.q_norm_trend.size() >= 2 && !rep.pure) {
        double last = rep.q_norm_trend.back();
        double prev = rep.q_norm_trend[rep.q_norm_trend.size() - 2];
        rep.trend_stabilized = std::abs(last - prev) <= 1e-6 * (1.0 + prev);
    }
    SpectralRadiusEstimate sr = spectral_radius(f, T, k_max);
    rep.spectral_radius = sr.value;
    rep.radius_trend = std::move(sr.sequence);
    return rep;
}

SpectralRadiusEstimate spectral_radius(const FreeSymbol& f, const OperatorTuple& T,
                                       int k_max) {
    f.validate();
    T.validate();
    const Eigen::Index d = T.dim();
    SpectralRadiusEstimate est;
    Matrix Q = Matrix::Identity(d, d);
    double log_rescale = 0.0; // accumulated log of factors pulled out of Q
    for (int k = 1; k <= k_max; ++k) {
        Q = phi_apply(f, T, Q);
        double nrm = Q.operatorNorm();
        if (nrm == 0.0) {
            est.sequence.push_back(0.0);
            est.value = 0.0;
            return est;
        }
        // operatorNorm squares internally, so rescale well before 1e308
        if (nrm > 1e150 || nrm < 1e-150) {
            log_rescale += std::log(nrm);
            Q /= nrm;
            nrm = 1.0;
        }
        double val = std::exp((std::log(nrm) + log_rescale) / (2.0 * k));
        est.sequence.push_back(val);
    }
    est.value = est.sequence.back();
    return est;
}

Matrix kron(const Matrix& A, const Matrix& B) {
    Matrix K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

Matrix reconstruction_operator(const FreeSymbol& f, const OperatorTuple& T,
                               const TruncatedFock& F) {
    const Eigen::Index d = T.dim();
    const Eigen::Index N = F.dim() * d;
    Matrix R = Matrix::Zero(N, N);
    for (const auto& [beta, a] : f.a) {
        if (a == 0.0 || beta.is_empty()) continue;
        CoeffMap single;
        single[beta] = Complex(a, 0.0);
        Matrix Lb = eval_poly(F, Side::Right, single); // a_beta Lambda_{reverse(beta)}
        R += kron(Lb, T.word_product(beta).adjoint());
    }
    return R;
}

CauchyKernel cauchy_kernel(const FreeSymbol& f, const OperatorTuple& T,
                           const TruncatedFock& F, int k_max) {
    f.validate();
    T.validate();
    if (f.n != T.n())
        throw ValidationError("tuple: symbol has " + std::to_string(f.n) +
                              " generators but tuple has " + std::to_string(T.n()));
    CauchyKernel ck;
    SpectralRadiusEstimate sr = spectral_radius(f, T, k_max);
    ck.radius_estimate = sr.value;
    ck.borderline = sr.value > 1.0 - 1e-3;
    Matrix R = reconstruction_operator(f, T, F);
    const Eigen::Index N = R.rows();
    Matrix A = Matrix::Identity(N, N) - R;
    Eigen::FullPivLU<Matrix> lu(A);
    if (!lu.isInvertible())
        throw NumericalError("cauchy kernel: I - reconstruction operator is singular");
    ck.C = lu.solve(Matrix::Identity(N, N));
    return ck;
}

Matrix series_calculus(const FreeSymbol& f, const OperatorTuple& T, const CoeffMap& c,
                       int k_max) {
    f.validate();
    T.validate();
    const Eigen::Index d = T.dim();
    int max_deg = 0;
    for (const auto& [w, v] : c)
        if (v != Complex{}) max_deg = std::max(max_deg, static_cast<int>(w.length()));
    if (max_deg > k_max)
        throw ValidationError("series calculus: coefficient degree exceeds k_max");
    std::vector<double> level_norm(static_cast<std::size_t>(max_deg) + 1, 0.0);
    Matrix G = Matrix::Zero(d, d);
    for (const auto& [w, v] : c) {
        if (v == Complex{}) continue;
        Matrix term = v * T.word_product(w);
        level_norm[w.length()] += term.operatorNorm();
        G += term;
    }
    // divergence guard: per-degree partial norms must not grow geometrically
    if (max_deg >= 6) {
        double head = 0.0, tail = 0.0;
        for (int k = 1; k <= max_deg; ++k)
            (k <= max_deg / 2 ? head : tail) += level_norm[static_cast<std::size_t>(k)];
        if (tail > 1e6 * (1.0 + head))
            throw NumericalError("series calculus: partial sums diverge");
    }
    return G;
}

} // namespace ncdomain
