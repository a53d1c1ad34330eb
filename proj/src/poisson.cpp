#include "ncdomain/poisson.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "ncdomain/errors.hpp"

namespace ncdomain {

namespace {

// eigendecomposition of a Hermitian PSD matrix with a relative rank cut;
// returns the factor R (rank x d) with R^* R = A
Matrix rank_factor(const Matrix& A, double eps_reject, double rel_cut,
                   const char* what) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(((A + A.adjoint()) / 2.0).eval());
    const auto& ev = es.eigenvalues();
    if (ev.minCoeff() < -eps_reject)
        throw ValidationError(std::string(what) + ": matrix has eigenvalue " +
                              std::to_string(ev.minCoeff()) + " below -tolerance");
    double cut = rel_cut * std::max(ev.maxCoeff(), 0.0);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index j = 0; j < ev.size(); ++j)
        if (ev(j) > cut) keep.push_back(j);
    Matrix R(static_cast<Eigen::Index>(keep.size()), A.rows());
    for (std::size_t r = 0; r < keep.size(); ++r)
        R.row(static_cast<Eigen::Index>(r)) =
            std::sqrt(ev(keep[r])) * es.eigenvectors().col(keep[r]).adjoint();
    return R;
}

Matrix psd_sqrt_full(const Matrix& A, double eps_reject, const char* what) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(((A + A.adjoint()) / 2.0).eval());
    const auto& ev = es.eigenvalues();
    if (ev.minCoeff() < -eps_reject)
        throw ValidationError(std::string(what) + ": matrix has eigenvalue " +
                              std::to_string(ev.minCoeff()) + " below -tolerance");
    Vector s(ev.size());
    for (Eigen::Index j = 0; j < ev.size(); ++j)
        s(j) = std::sqrt(std::max(ev(j), 0.0));
    return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix stack_rows(const OperatorTuple& T, const TruncatedFock& F,
                  const Matrix& delta) {
    const Eigen::Index d = T.dim();
    const Eigen::Index dp = delta.rows();
    Matrix K = Matrix::Zero(F.dim() * dp, d);
    for (const Word& alpha : F.basis) {
        double w = std::sqrt(F.b.at(alpha));
        K.middleRows(static_cast<Eigen::Index>(F.index_of(alpha)) * dp, dp) =
            w * delta * T.word_product(alpha).adjoint();
    }
    return K;
}

double phi_tail_norm(const FreeSymbol& f, const OperatorTuple& T, int power) {
    Matrix Q = Matrix::Identity(T.dim(), T.dim());
    for (int k = 0; k < power; ++k) Q = phi_apply(f, T, Q);
    return Q.operatorNorm();
}

SparseMatrix word_shift(const TruncatedFock& F, const Word& alpha) {
    SparseMatrix P(F.dim(), F.dim());
    P.setIdentity();
    for (auto it = alpha.letters.rbegin(); it != alpha.letters.rend(); ++it)
        P = (F.W[static_cast<std::size_t>(*it)] * P).eval();
    return P;
}

} // namespace

PoissonKernel build_poisson(const FreeSymbol& f, const OperatorTuple& T,
                            const TruncatedFock& F) {
    f.validate();
    T.validate();
    if (f.n != T.n())
        throw ValidationError("poisson: symbol has " + std::to_string(f.n) +
                              " generators but tuple has " + std::to_string(T.n()));
    const Eigen::Index d = T.dim();
    Matrix PhiI = phi_apply(f, T, Matrix::Identity(d, d));
    double eps = 1e-9 * (1.0 + PhiI.operatorNorm());
    PoissonKernel P;
    P.level = F.level;
    P.delta = rank_factor(Matrix::Identity(d, d) - PhiI, eps, 1e-12, "poisson defect");
    P.defect_rank = P.delta.rows();
    P.K = stack_rows(T, F, P.delta);
    P.tail_bound = phi_tail_norm(f, T, F.level + 1);
    return P;
}

double kk_residual(const PoissonKernel& P) {
    const Eigen::Index d = P.K.cols();
    return spec_norm(P.K.adjoint() * P.K - Matrix::Identity(d, d));
}

Matrix fock_kron_apply(const SparseMatrix& A, const Matrix& M, int fiber) {
    Matrix R = Matrix::Zero(M.rows(), M.cols());
    for (int k = 0; k < A.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(A, k); it; ++it)
            R.middleRows(it.row() * fiber, fiber) +=
                it.value() * M.middleRows(it.col() * fiber, fiber);
    return R;
}

double intertwine_residual(const PoissonKernel& P, const TruncatedFock& F,
                           const OperatorTuple& T) {
    const int dp = static_cast<int>(P.defect_rank);
    const Eigen::Index rows =
        static_cast<Eigen::Index>(count_words(F.f.n, F.level - 1)) * dp;
    double worst = 0.0;
    for (int i = 0; i < F.f.n; ++i) {
        SparseMatrix Wadj = F.W[static_cast<std::size_t>(i)].adjoint();
        Matrix lhs = P.K * T.T[static_cast<std::size_t>(i)].adjoint();
        Matrix rhs = fock_kron_apply(Wadj, P.K, dp);
        worst = std::max(worst, spec_norm((lhs - rhs).topRows(rows)));
    }
    return worst;
}

double poisson_transform_residual(const PoissonKernel& P, const TruncatedFock& F,
                                  const OperatorTuple& T, const Word& alpha,
                                  const Word& beta) {
    const int dp = static_cast<int>(P.defect_rank);
    SparseMatrix Wb_adj = word_shift(F, beta).adjoint();
    Matrix M = fock_kron_apply(Wb_adj, P.K, dp);
    M = fock_kron_apply(word_shift(F, alpha), M, dp);
    Matrix lhs = P.K.adjoint() * M;
    Matrix rhs = T.word_product(alpha) * T.word_product(beta).adjoint();
    return spec_norm(lhs - rhs);
}

Matrix poisson_rows_ambient(const FreeSymbol& f, const OperatorTuple& T,
                            const TruncatedFock& F) {
    const Eigen::Index d = T.dim();
    Matrix PhiI = phi_apply(f, T, Matrix::Identity(d, d));
    double eps = 1e-9 * (1.0 + PhiI.operatorNorm());
    Matrix delta = psd_sqrt_full(Matrix::Identity(d, d) - PhiI, eps, "poisson defect");
    return stack_rows(T, F, delta);
}

double multi_analytic_residual(const TruncatedFock& F, const Matrix& M,
                               int fiber_in, int fiber_out, int max_degree) {
    const Eigen::Index rows =
        static_cast<Eigen::Index>(count_words(F.f.n, max_degree)) * fiber_out;
    const Eigen::Index cols =
        static_cast<Eigen::Index>(count_words(F.f.n, max_degree)) * fiber_in;
    double worst = 0.0;
    for (int i = 0; i < F.f.n; ++i) {
        const SparseMatrix& Wi = F.W[static_cast<std::size_t>(i)];
        SparseMatrix Wadj = Wi.adjoint();
        Matrix right = fock_kron_apply(Wadj, M.adjoint(), fiber_in).adjoint();
        Matrix left = fock_kron_apply(Wi, M, fiber_out);
        worst = std::max(worst,
                         spec_norm((right - left).topLeftCorner(rows, cols)));
    }
    return worst;
}

BeurlingFactorization beurling_factorize(const FreeSymbol& f, const TruncatedFock& F,
                                         const Matrix& Y) {
    f.validate();
    if (Y.rows() != Y.cols() || Y.rows() % F.dim() != 0)
        throw ValidationError("beurling: Y must be square on Fock (x) C^h");
    const int h = static_cast<int>(Y.rows() / F.dim());
    Matrix Ys = (Y + Y.adjoint()) / 2.0;

    Matrix PhiY = Matrix::Zero(Y.rows(), Y.cols());
    for (const auto& [beta, a] : f.a) {
        if (a == 0.0 || beta.is_empty()) continue;
        SparseMatrix Wb = word_shift(F, beta);
        Matrix Z = fock_kron_apply(Wb, Ys.adjoint(), h);
        PhiY += a * fock_kron_apply(Wb, Z.adjoint(), h);
    }
    const int interior = F.interior_degree();
    const Eigen::Index nint =
        static_cast<Eigen::Index>(count_words(F.f.n, interior)) * h;
    Matrix gap = (Ys - PhiY).topLeftCorner(nint, nint);
    Eigen::SelfAdjointEigenSolver<Matrix> gs(((gap + gap.adjoint()) / 2.0).eval());
    BeurlingFactorization out;
    out.subharmonic_min_eig = gs.eigenvalues().minCoeff();
    double eps = 1e-9 * (1.0 + Ys.operatorNorm());
    if (out.subharmonic_min_eig < -eps)
        throw ValidationError("beurling: Y - Phi(Y) fails positivity on the interior "
                              "block by " + std::to_string(-out.subharmonic_min_eig));

    Eigen::SelfAdjointEigenSolver<Matrix> es(Ys);
    const auto& ev = es.eigenvalues();
    if (ev.minCoeff() < -eps)
        throw ValidationError("beurling: Y is not positive semidefinite");
    double cut = 1e-12 * std::max(ev.maxCoeff(), 0.0);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index j = 0; j < ev.size(); ++j)
        if (ev(j) > cut) keep.push_back(j);
    const Eigen::Index r = static_cast<Eigen::Index>(keep.size());
    out.rank = r;
    Matrix Vr(Y.rows(), r);
    Vector s(r);
    for (Eigen::Index j = 0; j < r; ++j) {
        Vr.col(j) = es.eigenvectors().col(keep[static_cast<std::size_t>(j)]);
        s(j) = ev(keep[static_cast<std::size_t>(j)]);
    }
    Vector s_half = s.array().sqrt().matrix();
    Vector s_halfinv = s_half.array().inverse().matrix();

    // A_i Y^{1/2} x = Y^{1/2} (W_i (x) I)^* x, in range-of-Y coordinates
    OperatorTuple T;
    T.T.reserve(static_cast<std::size_t>(f.n));
    for (int i = 0; i < f.n; ++i) {
        SparseMatrix Wadj = F.W[static_cast<std::size_t>(i)].adjoint();
        Matrix Ai = s_half.asDiagonal() * (Vr.adjoint() * fock_kron_apply(Wadj, Vr, h)) *
                    s_halfinv.asDiagonal();
        T.T.push_back(Ai.adjoint());
    }

    PoissonKernel P = build_poisson(f, T, F);
    out.psi = Vr * s_half.asDiagonal() * P.K.adjoint();
    const Eigen::Index dp = P.defect_rank;
    Matrix diff = out.psi * out.psi.adjoint() - Ys;
    out.factor_residual = spec_norm(diff.topLeftCorner(nint, nint));
    out.analytic_residual =
        multi_analytic_residual(F, out.psi, static_cast<int>(dp), h, interior);
    return out;
}

} // namespace ncdomain
