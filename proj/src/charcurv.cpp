#include "ncdomain/charcurv.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>

#include "ncdomain/errors.hpp"

namespace ncdomain {

namespace {

Matrix psd_sqrt(const Matrix& A, double eps_reject, const char* what) {
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

// M <- (I (x) X) M, fiber-wise on the inner index
Matrix left_fiber_mult(const Matrix& X, const Matrix& M) {
    const Eigen::Index fib = X.rows();
    Matrix R(M.rows(), M.cols());
    for (Eigen::Index i = 0; i < M.rows() / fib; ++i)
        R.middleRows(i * fib, fib) = X * M.middleRows(i * fib, fib);
    return R;
}

Matrix right_fiber_mult(const Matrix& M, const Matrix& X) {
    const Eigen::Index fib = X.rows();
    Matrix R(M.rows(), M.cols());
    for (Eigen::Index g = 0; g < M.cols() / fib; ++g)
        R.middleCols(g * fib, fib) = M.middleCols(g * fib, fib) * X;
    return R;
}

Eigen::Index psd_rank(const Matrix& A) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(((A + A.adjoint()) / 2.0).eval());
    const auto& ev = es.eigenvalues();
    double cut = std::max(1e-9 * std::max(ev.maxCoeff(), 0.0), 1e-12);
    Eigen::Index r = 0;
    for (Eigen::Index j = 0; j < ev.size(); ++j)
        if (ev(j) > cut) ++r;
    return r;
}

std::vector<double> phi_trace_sequence(const FreeSymbol& f, const OperatorTuple& T,
                                       int k_max) {
    const Eigen::Index d = T.dim();
    std::vector<double> tr;
    tr.reserve(static_cast<std::size_t>(k_max) + 1);
    Matrix Q = Matrix::Identity(d, d);
    tr.push_back(static_cast<double>(d));
    for (int k = 1; k <= k_max; ++k) {
        Q = phi_apply(f, T, Q);
        tr.push_back(Q.trace().real());
    }
    return tr;
}

void plateau(CurvatureTrace& c) {
    const std::size_t len = c.ratio.size();
    const std::size_t w = std::min<std::size_t>(5, len);
    double lo = c.ratio[len - w], hi = c.ratio[len - w];
    for (std::size_t j = len - w; j < len; ++j) {
        lo = std::min(lo, c.ratio[j]);
        hi = std::max(hi, c.ratio[j]);
    }
    double scale = std::max(std::abs(lo), std::abs(hi));
    double floor = 1e-12 * (1.0 + c.trace_defect);
    c.spread = scale <= floor ? 0.0 : (hi - lo) / scale;
    c.converged = c.spread < 1e-3;
    c.value = c.ratio.back();
}

void require_member(const FreeSymbol& p, const OperatorTuple& T) {
    DomainReport rep = membership(p, T);
    if (!rep.member)
        throw ValidationError("curvature: tuple is outside the domain (defect "
                              "eigenvalue " + std::to_string(rep.defect_min_eig) + ")");
}

} // namespace

CharData build_char_data(const FreeSymbol& f, const OperatorTuple& T) {
    f.validate();
    T.validate();
    if (f.n != T.n())
        throw ValidationError("char: symbol has " + std::to_string(f.n) +
                              " generators but tuple has " + std::to_string(T.n()));
    CharData cd;
    for (const auto& [beta, a] : f.a)
        if (a != 0.0 && !beta.is_empty()) cd.support.push_back(beta);
    const Eigen::Index d = T.dim();
    const Eigen::Index N = static_cast<Eigen::Index>(cd.support.size());
    cd.C = Matrix(d, d * N);
    for (Eigen::Index j = 0; j < N; ++j)
        cd.C.middleCols(j * d, d) =
            std::sqrt(f.coeff(cd.support[static_cast<std::size_t>(j)])) *
            T.word_product(cd.support[static_cast<std::size_t>(j)]);
    Matrix CC = cd.C * cd.C.adjoint(); // equals Phi_{f,T}(I)
    double eps = 1e-9 * (1.0 + CC.operatorNorm());
    Eigen::SelfAdjointEigenSolver<Matrix> es((Matrix::Identity(d, d) - CC).eval());
    cd.defect_min_eig = es.eigenvalues().minCoeff();
    cd.delta_c = psd_sqrt(Matrix::Identity(d, d) - CC, eps, "char row defect");
    cd.delta_cstar = psd_sqrt(Matrix::Identity(d * N, d * N) - cd.C.adjoint() * cd.C,
                              eps, "char column defect");
    return cd;
}

Matrix char_point(const FreeSymbol& f, const OperatorTuple& T,
                  const std::vector<Complex>& z) {
    CharData cd = build_char_data(f, T);
    if (static_cast<int>(z.size()) != f.n)
        throw ValidationError("char_point: expected " + std::to_string(f.n) +
                              " coordinates");
    const Eigen::Index d = T.dim();
    const Eigen::Index N = static_cast<Eigen::Index>(cd.support.size());
    Matrix M = Matrix::Identity(d, d);
    for (const Word& beta : cd.support)
        M -= f.coeff(beta) * eval_word_at_point(z, beta) *
             T.word_product(beta).adjoint();
    Eigen::FullPivLU<Matrix> lu(M);
    if (!lu.isInvertible()) {
        std::string pt;
        for (Complex c : z)
            pt += " (" + std::to_string(c.real()) + "," + std::to_string(c.imag()) + ")";
        throw NumericalError("char_point: resolvent singular at" + pt);
    }
    Matrix R(d, d * N);
    for (Eigen::Index j = 0; j < N; ++j) {
        const Word& beta = cd.support[static_cast<std::size_t>(j)];
        R.middleCols(j * d, d) = std::sqrt(f.coeff(beta)) * eval_word_at_point(z, beta) *
                                 Matrix::Identity(d, d);
    }
    return -cd.C + cd.delta_c * lu.solve(R) * cd.delta_cstar;
}

Matrix char_operator(const FreeSymbol& f, const OperatorTuple& T,
                     const TruncatedFock& F) {
    CharData cd = build_char_data(f, T);
    const Eigen::Index d = T.dim();
    const Eigen::Index N = static_cast<Eigen::Index>(cd.support.size());
    const Eigen::Index dim = F.dim();

    Matrix R = reconstruction_operator(f, T, F);
    Eigen::PartialPivLU<Matrix> lu(Matrix::Identity(dim * d, dim * d) - R);

    // block row of weighted right shifts, one C^d slice per support word
    Matrix col = Matrix::Zero(dim * d, dim * d * N);
    for (Eigen::Index j = 0; j < N; ++j) {
        const Word& beta = cd.support[static_cast<std::size_t>(j)];
        CoeffMap single;
        single[beta] = Complex(std::sqrt(f.coeff(beta)), 0.0);
        Matrix Lb = eval_poly(F, Side::Right, single);
        for (Eigen::Index g = 0; g < dim; ++g)
            for (Eigen::Index i = 0; i < dim; ++i) {
                if (Lb(i, g) == Complex{}) continue;
                for (Eigen::Index s = 0; s < d; ++s)
                    col(i * d + s, g * (d * N) + j * d + s) = Lb(i, g);
            }
    }

    Matrix mid = lu.solve(col);
    Matrix theta = left_fiber_mult(cd.delta_c, mid);
    theta = right_fiber_mult(theta, cd.delta_cstar);
    // subtract I (x) C
    for (Eigen::Index g = 0; g < dim; ++g)
        theta.block(g * d, g * (d * N), d, d * N) -= cd.C;
    return theta;
}

double factorization_residual(const FreeSymbol& f, const OperatorTuple& T,
                              const TruncatedFock& F) {
    Matrix theta = char_operator(f, T, F);
    Matrix K = poisson_rows_ambient(f, T, F);
    const Eigen::Index n = theta.rows();
    Matrix lhs = Matrix::Identity(n, n) - theta * theta.adjoint();
    return spec_norm(lhs - K * K.adjoint());
}

CurvatureTrace curvature(const FreeSymbol& p, const OperatorTuple& T, int k_max) {
    p.validate();
    T.validate();
    require_member(p, T);
    if (k_max < 6) throw ValidationError("curvature: k_max must be at least 6");
    BTable b = compute_b(p, p.support_degree());
    double gamma = gamma_constant(p, b);
    std::vector<double> tr = phi_trace_sequence(p, T, k_max + 1);
    const double d = tr[0];
    CurvatureTrace c;
    c.trace_defect = d - tr[1];
    c.defect_rank =
        psd_rank(Matrix::Identity(T.dim(), T.dim()) -
                 phi_apply(p, T, Matrix::Identity(T.dim(), T.dim())));
    bool gamma_one = std::abs(gamma - 1.0) <= 1e-9;
    c.branch = gamma_one ? "gamma=1" : "gamma>1";
    for (int k = 1; k <= k_max; ++k) {
        c.numerator.push_back(d - tr[static_cast<std::size_t>(k)]);
        if (gamma_one) {
            c.denominator.push_back(static_cast<double>(k));
            c.ratio.push_back(tr[static_cast<std::size_t>(k)] -
                              tr[static_cast<std::size_t>(k) + 1]);
        } else {
            double den = (std::pow(gamma, k) - 1.0) / (gamma - 1.0);
            c.denominator.push_back(den);
            c.ratio.push_back(c.numerator.back() / den);
        }
    }
    plateau(c);
    return c;
}

CurvatureTrace star_curvature(const FreeSymbol& p, const OperatorTuple& T, int k_max) {
    p.validate();
    T.validate();
    require_member(p, T);
    if (k_max < 6) throw ValidationError("curvature: k_max must be at least 6");
    const Eigen::Index dd = T.dim();
    double tstar = phi_star_apply(p, T, Matrix::Identity(dd, dd)).operatorNorm();
    std::vector<double> tr = phi_trace_sequence(p, T, k_max);
    const double d = tr[0];
    CurvatureTrace c;
    c.trace_defect = d - tr[1];
    c.defect_rank = psd_rank(Matrix::Identity(dd, dd) -
                             phi_apply(p, T, Matrix::Identity(dd, dd)));
    for (int k = 1; k <= k_max; ++k)
        c.numerator.push_back(d - tr[static_cast<std::size_t>(k)]);
    if (tstar > 1.0 + 1e-9) {
        c.branch = "norm>1";
        for (int k = 1; k <= k_max; ++k) {
            double den = (std::pow(tstar, k) - 1.0) / (tstar - 1.0);
            c.denominator.push_back(den);
            c.ratio.push_back(c.numerator[static_cast<std::size_t>(k) - 1] / den);
        }
        plateau(c);
    } else if (tstar < 1.0 - 1e-9) {
        c.branch = "norm<1";
        for (int k = 1; k <= k_max; ++k) {
            c.denominator.push_back(1.0);
            c.ratio.push_back((1.0 - tstar) * c.numerator[static_cast<std::size_t>(k) - 1]);
        }
        plateau(c);
    } else {
        // ambiguous at the branch point: report both adjacent closed forms
        c.branch = "norm~1";
        c.two_branches = true;
        for (int k = 1; k <= k_max; ++k) {
            c.denominator.push_back(static_cast<double>(k));
            c.ratio.push_back(c.numerator[static_cast<std::size_t>(k) - 1] / k);
        }
        plateau(c);
        c.alt_value = (1.0 - tstar) * c.numerator.back();
    }
    return c;
}

EllipsoidReport ellipsoid_report(const std::vector<double>& a, const OperatorTuple& T,
                                 int k_max) {
    FreeSymbol p;
    p.n = static_cast<int>(a.size());
    for (int i = 0; i < p.n; ++i)
        p.a[Word({i})] = a[static_cast<std::size_t>(i)];
    p.validate();
    EllipsoidReport rep;
    rep.curv = curvature(p, T, k_max);
    rep.star_curv = star_curvature(p, T, k_max);
    rep.defect_rank = rep.curv.defect_rank;
    rep.pure = classify(p, T, k_max).pure;
    rep.model_tuple_candidate =
        rep.pure && std::abs(rep.curv.value - static_cast<double>(rep.defect_rank)) < 1e-3;
    return rep;
}

} // namespace ncdomain
