#include "doctest.h"

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "ncdomain/errors.hpp"
#include "ncdomain/poisson.hpp"
#include "ncdomain/tuples.hpp"

using namespace ncdomain;
using namespace ncdomain::testing;

namespace {

OperatorTuple jordan_pair(double t) {
    Matrix J = Matrix::Zero(2, 2);
    J(0, 1) = 1.0;
    OperatorTuple T;
    T.T = {t * J, t * J};
    return T;
}

OperatorTuple fock_as_tuple(const TruncatedFock& F) {
    OperatorTuple T;
    for (const auto& W : F.W) T.T.push_back(Matrix(W));
    return T;
}

} // namespace

TEST_CASE("tuple validation") {
    OperatorTuple T;
    CHECK_THROWS_AS(T.validate(), ValidationError);
    T.T = {Matrix::Zero(2, 3)};
    CHECK_THROWS_AS(T.validate(), ValidationError);
    T.T = {Matrix::Zero(2, 2), Matrix::Zero(3, 3)};
    CHECK_THROWS_AS(T.validate(), ValidationError);
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 0) = std::nan("");
    T.T = {bad};
    CHECK_THROWS_AS(T.validate(), ValidationError);
}

TEST_CASE("phi on simple tuples") {
    FreeSymbol f1 = single_var();
    OperatorTuple T;
    Matrix J = Matrix::Zero(2, 2);
    J(0, 1) = 1.0;
    T.T = {J};
    Matrix P = phi_apply(f1, T, Matrix::Identity(2, 2));
    CHECK(P(0, 0) == Complex(1.0, 0.0));
    CHECK(P(1, 1) == Complex(0.0, 0.0));

    // oracle: brute-force word-product sum over the three support words
    FreeSymbol f = mixed_symbol();
    OperatorTuple S = jordan_pair(0.4);
    Matrix expect = Matrix::Zero(2, 2);
    for (const Word& w : {Word({0}), Word({1}), Word({0, 1})}) {
        Matrix Tw = S.word_product(w);
        expect += Tw * Tw.adjoint();
    }
    CHECK((phi_apply(f, S, Matrix::Identity(2, 2)) - expect).norm() <= 1e-14);
}

TEST_CASE("phi preserves positivity and hermiticity") {
    std::mt19937 rng(0);
    FreeSymbol f = mixed_symbol();
    for (int rep = 0; rep < 5; ++rep) {
        OperatorTuple T = random_member(rng, f, 3, 0.9);
        Matrix G = random_matrix(rng, 3);
        Matrix X = G * G.adjoint();
        Matrix Y = phi_apply(f, T, X);
        CHECK((Y - Y.adjoint()).norm() <= 1e-12 * X.norm());
        Eigen::SelfAdjointEigenSolver<Matrix> es(((Y + Y.adjoint()) / 2.0).eval());
        CHECK(es.eigenvalues().minCoeff() >= -1e-12 * X.operatorNorm());
    }
}

TEST_CASE("membership verdicts") {
    FreeSymbol f1 = single_var();
    OperatorTuple big;
    big.T = {2.0 * Matrix::Identity(2, 2)};
    CHECK_FALSE(membership(f1, big).member);

    TruncatedFock F = build_fock(mixed_symbol(), 4);
    CHECK(membership(mixed_symbol(), fock_as_tuple(F)).member);

    std::mt19937 rng(1);
    OperatorTuple T = random_member(rng, mixed_symbol(), 3, 1.0);
    OperatorTuple small = T.scaled(0.5);
    CHECK(membership(mixed_symbol(), small).member);
}

TEST_CASE("classification: pure, unitary, mixed spectrum") {
    FreeSymbol f1 = single_var();
    TruncatedFock F = build_fock(linear_symbol(2), 4);
    OperatorTuple W = fock_as_tuple(F);
    DomainReport r = classify(linear_symbol(2), W.scaled(0.5), 50);
    CHECK(r.member);
    CHECK(r.pure);
    CHECK(r.cnc);

    Matrix rot(2, 2);
    double th = 0.7;
    rot << Complex(std::cos(th)), Complex(-std::sin(th)), Complex(std::sin(th)),
        Complex(std::cos(th));
    OperatorTuple U;
    U.T = {rot};
    DomainReport ru = classify(f1, U, 50);
    CHECK(ru.member);
    CHECK_FALSE(ru.pure);
    CHECK_FALSE(ru.cnc);
    CHECK(ru.q_max_eig == doctest::Approx(1.0));

    OperatorTuple D;
    Matrix d2 = Matrix::Zero(2, 2);
    d2(0, 0) = 1.0;
    d2(1, 1) = 0.5;
    D.T = {d2};
    DomainReport rd = classify(f1, D, 100);
    CHECK_FALSE(rd.pure);
    CHECK_FALSE(rd.cnc);
    CHECK(rd.q_norm == doctest::Approx(1.0));
}

TEST_CASE("scaling into the pure class") {
    std::mt19937 rng(2);
    FreeSymbol f = mixed_symbol();
    OperatorTuple T = random_member(rng, f, 3, 1.0);
    for (double r : {0.3, 0.7, 0.95}) CHECK(classify(f, T.scaled(r), 200).pure);
}

TEST_CASE("spectral radius closed forms") {
    FreeSymbol f1 = single_var();
    Matrix J = Matrix::Zero(3, 3);
    J(0, 1) = 1.0;
    J(1, 2) = 1.0;
    OperatorTuple N;
    N.T = {J};
    CHECK(spectral_radius(f1, N, 20).value == 0.0);

    FreeSymbol f2 = linear_symbol(2);
    OperatorTuple S;
    S.T = {Complex(0.3, 0.1) * Matrix::Identity(2, 2),
           Complex(0.2, -0.4) * Matrix::Identity(2, 2)};
    double expect = std::sqrt(std::norm(Complex(0.3, 0.1)) + std::norm(Complex(0.2, -0.4)));
    CHECK(spectral_radius(f2, S, 50).value == doctest::Approx(expect));

    TruncatedFock F = build_fock(f2, 5);
    SpectralRadiusEstimate est = spectral_radius(f2, fock_as_tuple(F), 60);
    CHECK(est.value < 1.0); // nilpotent truncation of a radius-1 model

    // overflow guard: large scalar keeps the limit finite
    OperatorTuple big;
    big.T = {Matrix::Identity(1, 1) * 40.0};
    CHECK(spectral_radius(f1, big, 200).value == doctest::Approx(40.0));
}

TEST_CASE("cauchy kernel") {
    FreeSymbol f1 = single_var();
    TruncatedFock F = build_fock(f1, 6);
    OperatorTuple Z;
    Z.T = {Matrix::Zero(1, 1)};
    CauchyKernel ck = cauchy_kernel(f1, Z, F);
    CHECK((ck.C - Matrix::Identity(F.dim(), F.dim())).norm() <= 1e-14);

    double t = 0.6;
    OperatorTuple T;
    T.T = {t * Matrix::Identity(1, 1)};
    CauchyKernel ct = cauchy_kernel(f1, T, F);
    // Fourier form: sum_delta b_delta Lambda_{reverse(delta)} (x) T_delta^*
    Matrix fourier = Matrix::Zero(F.dim(), F.dim());
    for (const Word& delta : F.basis) {
        CoeffMap single;
        single[delta] = 1.0;
        fourier += F.b.at(delta) * std::pow(t, static_cast<double>(delta.length())) *
                   eval_poly(F, Side::Right, single);
    }
    CHECK((ct.C - fourier).operatorNorm() <= 1e-10);
    // block-Toeplitz entries t^k on the single-variable chain
    CHECK(ct.C(3, 0).real() == doctest::Approx(std::pow(t, 3)));

    // Fourier cross-check for a random small pair
    std::mt19937 rng(3);
    FreeSymbol f = mixed_symbol();
    TruncatedFock F2 = build_fock(f, 5);
    OperatorTuple R = random_member(rng, f, 2, 1.0).scaled(0.5);
    CauchyKernel cr = cauchy_kernel(f, R, F2);
    Matrix four2 = Matrix::Zero(F2.dim() * 2, F2.dim() * 2);
    for (const Word& delta : F2.basis) {
        CoeffMap single;
        single[delta] = 1.0;
        four2 += F2.b.at(delta) *
                 kron(eval_poly(F2, Side::Right, single),
                      R.word_product(delta).adjoint());
    }
    CHECK((cr.C - four2).operatorNorm() <= 1e-10);
    CHECK_FALSE(cr.borderline);
}

TEST_CASE("series calculus") {
    FreeSymbol f1 = single_var();
    OperatorTuple T;
    T.T = {0.5 * Matrix::Identity(1, 1)};
    CoeffMap id;
    id[Word::empty()] = 1.0;
    CHECK(series_calculus(f1, T, id).isApprox(Matrix::Identity(1, 1)));

    CoeffMap geo;
    int K = 30;
    for (int k = 0; k <= K; ++k) geo[Word(std::vector<int>(k, 0))] = 1.0;
    Matrix g = series_calculus(f1, T, geo, 64);
    CHECK(std::abs(g(0, 0) - 2.0) <= std::pow(2.0, -K));

    // Cauchy-transform identity on random vectors
    FreeSymbol f = mixed_symbol();
    TruncatedFock F = build_fock(f, 6);
    std::mt19937 rng(4);
    OperatorTuple R = random_member(rng, f, 2, 1.0).scaled(0.4);
    CauchyKernel ck = cauchy_kernel(f, R, F);
    CoeffMap poly;
    poly[Word({0})] = Complex(0.5, 0.2);
    poly[Word({1, 0})] = Complex(-0.3, 0.1);
    Matrix gT = series_calculus(f, R, poly);
    Matrix gW = eval_poly(F, Side::Left, poly);
    std::normal_distribution<double> gauss;
    Vector x(2), y(2);
    for (int i = 0; i < 2; ++i) {
        x[i] = Complex(gauss(rng), gauss(rng));
        y[i] = Complex(gauss(rng), gauss(rng));
    }
    x.normalize();
    y.normalize();
    Complex lhs = y.dot(gT * x); // <g(T)x, y>
    Vector ex = Vector::Zero(F.dim() * 2), ey = ex;
    ex.head(2) = x;
    ey.head(2) = y;
    Vector rhs_vec = ck.C * ey;
    Complex rhs = rhs_vec.dot(kron(gW, Matrix::Identity(2, 2)) * ex);
    double tail = std::pow(0.2, F.level / f.support_degree() + 1);
    CHECK(std::abs(lhs - rhs) <= std::max(tail, 1e-10));
}

TEST_CASE("von Neumann inequality for co-invariant compressions") {
    FreeSymbol f = linear_symbol(2);
    TruncatedFock F = build_fock(f, 5);
    std::mt19937 rng(5);
    // co-invariant subspace: span of W_beta^* v over random v
    std::normal_distribution<double> gauss;
    Vector v = Vector::Zero(F.dim());
    for (const Word& w : F.basis)
        if (w.length() <= 3)
            v[static_cast<Eigen::Index>(F.index_of(w))] = Complex(gauss(rng), gauss(rng));
    std::vector<Vector> gen;
    for (const Word& beta : enumerate_words(2, F.level))
        gen.push_back(F.apply_left_word_adjoint(beta, v));
    Matrix G(F.dim(), static_cast<Eigen::Index>(gen.size()));
    for (std::size_t j = 0; j < gen.size(); ++j)
        G.col(static_cast<Eigen::Index>(j)) = gen[j];
    Eigen::JacobiSVD<Matrix> svd(G, Eigen::ComputeThinU);
    Eigen::Index rank = 0;
    while (rank < svd.singularValues().size() &&
           svd.singularValues()(rank) > 1e-10 * svd.singularValues()(0))
        ++rank;
    Matrix Q = svd.matrixU().leftCols(rank);
    OperatorTuple T;
    for (int i = 0; i < 2; ++i)
        T.T.push_back(Q.adjoint() * Matrix(F.W[static_cast<std::size_t>(i)]) * Q);
    for (int rep = 0; rep < 10; ++rep) {
        CoeffMap q;
        for (const Word& w : enumerate_words(2, 2))
            q[w] = Complex(gauss(rng), gauss(rng));
        Matrix qW = eval_poly(F, Side::Left, q);
        Matrix qT = series_calculus(f, T, q);
        CHECK(qT.operatorNorm() <= qW.operatorNorm() + 1e-10);
    }
}
