#include "doctest.h"

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "ncdomain/errors.hpp"
#include "ncdomain/kernel.hpp"

using namespace ncdomain;
using namespace ncdomain::testing;

namespace {

std::vector<Complex> random_interior_point(std::mt19937& rng, const FreeSymbol& f,
                                           double max_gauge = 0.8) {
    std::normal_distribution<double> g;
    std::vector<Complex> lam(static_cast<std::size_t>(f.n));
    for (;;) {
        for (auto& z : lam) z = Complex(g(rng), g(rng));
        double scale = 1.0;
        while (point_gauge(f, lam) > max_gauge) {
            scale *= 0.7;
            for (auto& z : lam) z *= 0.7;
        }
        (void)scale;
        return lam;
    }
}

} // namespace

TEST_CASE("point classification with boundary band") {
    FreeSymbol f2 = linear_symbol(2);
    CHECK(point_in_domain(f2, {Complex(0), Complex(0)}).where == PointClass::Interior);
    auto b = point_in_domain(f2, {Complex(1), Complex(0)});
    CHECK(b.where == PointClass::Boundary);
    CHECK(b.gauge == doctest::Approx(1.0));
    CHECK(point_in_domain(f2, {Complex(1.1), Complex(0)}).where ==
          PointClass::Exterior);
    FreeSymbol f = mixed_symbol();
    auto p = point_in_domain(f, {Complex(0.5), Complex(0.5)});
    CHECK(p.gauge == doctest::Approx(0.5625));
    CHECK(p.where == PointClass::Interior);
}

TEST_CASE("z vectors are truncated joint eigenvectors") {
    FreeSymbol f1 = single_var();
    TruncatedFock F1 = build_fock(f1, 10);
    ZVector z0 = z_vector(f1, F1, {Complex(0)});
    CHECK(z0.norm_sq == doctest::Approx(1.0));
    CHECK(std::abs(z0.v[0]) == doctest::Approx(1.0));

    ZVector zh = z_vector(f1, F1, {Complex(0.5)});
    for (int k = 0; k <= 10; ++k)
        CHECK(std::abs(zh.v[k]) == doctest::Approx(std::pow(0.5, k)));
    CHECK(zh.norm_sq <= 4.0 / 3.0);
    CHECK(4.0 / 3.0 - zh.norm_sq <= zh.tail_bound);
    CHECK(eigen_residual(F1, zh, {Complex(0.5)}) <=
          0.5 * std::sqrt(zh.top_sq) / std::sqrt(zh.norm_sq) + 1e-14);

    CHECK_THROWS_AS(z_vector(f1, F1, {Complex(1.2)}), ValidationError);

    FreeSymbol f = mixed_symbol();
    TruncatedFock F = build_fock(f, 8);
    std::mt19937 rng(11);
    for (int rep = 0; rep < 5; ++rep) {
        auto lam = random_interior_point(rng, f);
        ZVector z = z_vector(f, F, lam);
        double lmax = 0.0;
        for (Complex c : lam) lmax = std::max(lmax, std::abs(c));
        CHECK(eigen_residual(F, z, lam) <=
              lmax * std::sqrt(z.top_sq / z.norm_sq) + 1e-12);
        CHECK(z.top_sq <= z.tail_bound + 1e-12);
    }
}

TEST_CASE("polynomials in the adjoint shifts act as evaluation on z") {
    FreeSymbol f = mixed_symbol();
    TruncatedFock F = build_fock(f, 8);
    std::mt19937 rng(12);
    auto lam = random_interior_point(rng, f, 0.5);
    ZVector z = z_vector(f, F, lam);
    CoeffMap phi;
    phi[Word::empty()] = Complex(0.2, 0.1);
    phi[Word({0})] = Complex(1.0, -0.5);
    phi[Word({1, 0})] = Complex(0.0, 0.3);
    Matrix A = eval_poly(F, Side::Left, phi);
    Complex val{};
    for (const auto& [w, c] : phi) val += c * eval_word_at_point(lam, w);
    Vector r = A.adjoint() * z.v - std::conj(val) * z.v;
    // the leak lives in the top degrees reached by the polynomial
    CHECK(r.norm() / z.v.norm() <= 2.0 * std::sqrt(z.tail_bound) + 1e-10);
}

TEST_CASE("kernel values and positivity") {
    FreeSymbol f2 = linear_symbol(2);
    CHECK(kernel_value(f2, {Complex(0), Complex(0)}, {Complex(0), Complex(0)}) ==
          Complex(1.0, 0.0));
    CHECK(kernel_value(f2, {Complex(0.5), Complex(0)}, {Complex(0.5), Complex(0)})
              .real() == doctest::Approx(4.0 / 3.0));

    FreeSymbol f = mixed_symbol();
    std::mt19937 rng(13);
    std::vector<std::vector<Complex>> pts;
    for (int i = 0; i < 8; ++i) pts.push_back(random_interior_point(rng, f));
    Matrix G(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            G(i, j) = kernel_value(f, pts[static_cast<std::size_t>(i)],
                                   pts[static_cast<std::size_t>(j)]);
            CHECK(std::abs(G(i, j) -
                           std::conj(kernel_value(
                               f, pts[static_cast<std::size_t>(j)],
                               pts[static_cast<std::size_t>(i)]))) <= 1e-13);
        }
    Eigen::SelfAdjointEigenSolver<Matrix> es(((G + G.adjoint()) / 2.0).eval());
    CHECK(es.eigenvalues().minCoeff() >= -1e-10 * G.trace().real());

    // truncated inner products approximate the closed form
    TruncatedFock F = build_fock(f, 10);
    for (int i = 0; i < 3; ++i) {
        ZVector zi = z_vector(f, F, pts[static_cast<std::size_t>(i)]);
        ZVector zj = z_vector(f, F, pts[static_cast<std::size_t>(i + 1)]);
        Complex ip = zj.v.dot(zi.v); // <z_i, z_j> = K_f(mu, lambda), mu = pts[i+1]
        Complex kv = kernel_value(f, pts[static_cast<std::size_t>(i + 1)],
                                  pts[static_cast<std::size_t>(i)]);
        CHECK(std::abs(ip - kv) <= std::sqrt(zi.tail_bound * zj.tail_bound) + 1e-12);
    }
}

TEST_CASE("symmetric basis") {
    FreeSymbol f2 = linear_symbol(2);
    BTable b = compute_b(f2, 4);
    auto basis = symmetric_basis(f2, b, 4);
    for (const auto& e : basis) {
        if (e.k == std::vector<int>{0, 0}) {
            CHECK(e.gamma_k == 1.0);
            CHECK(std::abs(e.w[0]) == doctest::Approx(1.0));
        }
        if (e.k == std::vector<int>{1, 1}) {
            CHECK(e.gamma_k == 2.0);
            CHECK(e.w.norm() == doctest::Approx(1.0 / std::sqrt(2.0)));
        }
        CHECK(e.w.norm() == doctest::Approx(1.0 / std::sqrt(e.gamma_k)));
    }
    // pairwise orthogonal
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            CHECK(std::abs(basis[i].w.dot(basis[j].w)) <= 1e-14);

    // z reconstruction: z_lambda = sum_k conj(lambda)^k gamma_k w^k
    FreeSymbol f = mixed_symbol();
    BTable bm = compute_b(f, 6);
    TruncatedFock F = build_fock(f, 6);
    std::mt19937 rng(14);
    auto lam = random_interior_point(rng, f, 0.6);
    ZVector z = z_vector(f, F, lam);
    Vector rec = Vector::Zero(F.dim());
    for (const auto& e : symmetric_basis(f, bm, 6)) {
        Complex lk{1.0, 0.0};
        for (int i = 0; i < f.n; ++i)
            lk *= std::pow(lam[static_cast<std::size_t>(i)],
                           e.k[static_cast<std::size_t>(i)]);
        rec += std::conj(lk) * e.gamma_k * e.w;
        // <w^k, z_lambda> = lambda^k
        CHECK(std::abs(z.v.dot(e.w) - lk) <= 1e-12);
    }
    CHECK((rec - z.v).norm() <= 1e-12);
}

TEST_CASE("pick feasibility on classical two-point problems") {
    FreeSymbol f1 = single_var();
    PickProblem P;
    P.nodes = {{Complex(0)}, {Complex(0.5)}};
    Matrix a0(1, 1), a1(1, 1);
    a0(0, 0) = 0.0;
    a1(0, 0) = 0.5;
    P.targets = {a0, a1};
    PickResult r = pick_feasible(f1, P);
    CHECK(r.feasible);
    CHECK(std::abs(r.min_eig) <= 1e-12);
    CHECK((r.pick - Matrix::Ones(2, 2)).norm() <= 1e-12);

    a1(0, 0) = 0.9;
    P.targets = {a0, a1};
    PickResult r2 = pick_feasible(f1, P);
    CHECK_FALSE(r2.feasible);
    CHECK(r2.min_eig < -0.1);

    // single node, zero target
    PickProblem P1;
    P1.nodes = {{Complex(0.3, 0.2)}};
    P1.targets = {a0};
    CHECK(pick_feasible(f1, P1).feasible);

    // coincident nodes rejected
    PickProblem Pd;
    Pd.nodes = {{Complex(0.1)}, {Complex(0.1)}};
    Pd.targets = {a0, a0};
    CHECK_THROWS_AS(pick_feasible(f1, Pd), ValidationError);

    // non-interior node rejected
    PickProblem Pb;
    Pb.nodes = {{Complex(1.0)}, {Complex(0.5)}};
    Pb.targets = {a0, a0};
    CHECK_THROWS_AS(pick_feasible(f1, Pb), ValidationError);
}

TEST_CASE("matrix-valued pick blocks") {
    FreeSymbol f = linear_symbol(2);
    PickProblem P;
    P.nodes = {{Complex(0), Complex(0)}, {Complex(0.3), Complex(0.2)}};
    Matrix A0 = Matrix::Zero(2, 2);
    Matrix A1 = Matrix::Zero(2, 2);
    // Schwarz bound: with F(0) = 0 the second target needs norm <= |lambda_1|
    A1(0, 1) = 0.3;
    P.targets = {A0, A1};
    PickResult r = pick_feasible(f, P);
    CHECK(r.pick.rows() == 4);
    CHECK(r.asymmetry <= 1e-12);
    CHECK(r.feasible);

    P.targets[1](0, 1) = 0.4; // exceeds |lambda_1| = sqrt(0.13)
    CHECK_FALSE(pick_feasible(f, P).feasible);
}

TEST_CASE("schur caratheodory compressed norm") {
    FreeSymbol f1 = single_var();
    TruncatedFock F = build_fock(f1, 6);
    CoeffMap id;
    id[Word::empty()] = 1.0;
    CHECK(schur_caratheodory_value(F, id, 3) == doctest::Approx(1.0));
    CoeffMap sh;
    sh[Word({0})] = 1.0;
    CHECK(schur_caratheodory_value(F, sh, 3) == doctest::Approx(1.0));
    CoeffMap sh2;
    sh2[Word({0})] = 2.0;
    CHECK(schur_caratheodory_value(F, sh2, 3) == doctest::Approx(2.0));
    CHECK_THROWS_AS(schur_caratheodory_value(F, sh, 5), ValidationError);
}

TEST_CASE("corona lower bound") {
    FreeSymbol f1 = single_var();
    TruncatedFock F = build_fock(f1, 6);
    CoeffMap one;
    one[Word::empty()] = 1.0;
    CHECK(corona_delta(F, {one}) == doctest::Approx(1.0));
    CoeffMap w;
    w[Word({0})] = 1.0;
    CHECK(corona_delta(F, {w}) == doctest::Approx(0.0).epsilon(1e-12));
    CoeffMap one_minus_w;
    one_minus_w[Word::empty()] = 1.0;
    one_minus_w[Word({0})] = -1.0;
    CHECK(corona_delta(F, {w, one_minus_w}) > 0.0);
}

TEST_CASE("right joint spectrum witness") {
    FreeSymbol f = mixed_symbol();
    std::mt19937 rng(15);
    auto lam = random_interior_point(rng, f, 0.5);
    double prev = 1e300;
    for (int m : {4, 6, 8}) {
        TruncatedFock F = build_fock(f, m);
        Matrix S = Matrix::Zero(F.dim(), F.dim());
        for (int i = 0; i < f.n; ++i) {
            Matrix D = lam[static_cast<std::size_t>(i)] *
                           Matrix::Identity(F.dim(), F.dim()) -
                       Matrix(F.W[static_cast<std::size_t>(i)]);
            S += D * D.adjoint();
        }
        ZVector z = z_vector(f, F, lam);
        Vector zn = z.v / z.v.norm();
        double rayleigh = zn.dot(S * zn).real();
        CHECK(rayleigh <= prev + 1e-12);
        prev = rayleigh;
    }
    CHECK(prev <= 0.5); // decays toward 0 as the level grows
}
