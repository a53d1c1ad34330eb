#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncdomain/charcurv.hpp"
#include "ncdomain/errors.hpp"
#include "ncdomain/io.hpp"
#include "ncdomain/kernel.hpp"
#include "ncdomain/poisson.hpp"
#include "ncdomain/symbol.hpp"
#include "ncdomain/tuples.hpp"

using namespace ncdomain;

namespace {

std::size_t dim_cap_from_env() {
    const char* env = std::getenv("NCDOMAIN_DIM_CAP");
    if (!env || !*env) return kDefaultDimCap;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
        throw ValidationError("NCDOMAIN_DIM_CAP must be a positive integer");
    return static_cast<std::size_t>(v);
}

struct Options {
    std::string symbol_path;
    std::string tuple_path;
    std::string point_path;
    std::string problem_path;
    std::vector<std::string> coeff_paths;
    std::string output_path;
    int level = 0;
    int degree = 0;
    int kmax = 200;
    int m_sc = -1;
    unsigned seed = 0;
    bool star = false;
};

Json base_report(const FreeSymbol& f, const Options& opt) {
    Json rep;
    rep["schema"] = "ncdomain/1";
    rep["symbol_hash"] = symbol_hash(f);
    rep["seed"] = opt.seed;
    rep["tolerances"] = {{"eps_psd_scale", 1e-9},
                         {"eps_pure", 1e-8},
                         {"boundary_band", 1e-10},
                         {"rank_cut", 1e-12}};
    return rep;
}

void attach_level(Json& rep, const FreeSymbol& f, int level) {
    rep["level"] = level;
    rep["interior_degree"] = level - f.support_degree() - 1;
}

void emit(const Json& rep, const Options& opt) {
    if (opt.output_path.empty()) {
        std::cout << rep.dump(2) << "\n";
    } else {
        std::ofstream out(opt.output_path);
        if (!out) throw ValidationError("cannot write output file: " + opt.output_path);
        out << rep.dump(2) << "\n";
    }
}

void run_symbol_coeffs(const Options& opt) {
    FreeSymbol f = parse_symbol(load_json_file(opt.symbol_path));
    BTable b = compute_b(f, opt.degree);
    Json rep = base_report(f, opt);
    rep["degree"] = opt.degree;
    Json table = Json::array();
    for (const Word& w : enumerate_words(f.n, opt.degree))
        table.push_back({{"word", w.letters}, {"b", b.at(w)}});
    rep["b_table"] = table;
    rep["gamma_constant"] = gamma_constant(f, compute_b(f, f.support_degree()));
    emit(rep, opt);
}

void run_fock_build(const Options& opt) {
    FreeSymbol f = parse_symbol(load_json_file(opt.symbol_path));
    TruncatedFock F = build_fock(f, opt.level, dim_cap_from_env());
    Json rep = base_report(f, opt);
    attach_level(rep, f, opt.level);
    rep["dim"] = F.dim();
    rep["defect_residual"] = defect_residual(F);
    rep["schwarz_constant"] = schwarz_constant(f, F.b, opt.level);
    emit(rep, opt);
}

void run_tuple_classify(const Options& opt) {
    FreeSymbol f = parse_symbol(load_json_file(opt.symbol_path));
    OperatorTuple T = parse_tuple(load_json_file(opt.tuple_path));
    DomainReport r = classify(f, T, opt.kmax);
    Json rep = base_report(f, opt);
    rep["k_max"] = opt.kmax;
    rep["member"] = r.member;
    rep["defect_min_eig"] = r.defect_min_eig;
    rep["pure"] = r.pure;
    rep["cnc"] = r.cnc;
    rep["q_norm"] = r.q_norm;
    rep["q_max_eig"] = r.q_max_eig;
    rep["q_norm_trend"] = r.q_norm_trend;
    rep["trend_stabilized"] = r.trend_stabilized;
    rep["spectral_radius"] = r.spectral_radius;
    rep["radius_trend"] = r.radius_trend;
    emit(rep, opt);
}

void run_poisson_verify(const Options& opt) {
    FreeSymbol f = parse_symbol(load_json_file(opt.symbol_path));
    OperatorTuple T = parse_tuple(load_json_file(opt.tuple_path));
    TruncatedFock F = build_fock(f, opt.level, dim_cap_from_env());
    PoissonKernel P = build_poisson(f, T, F);
    Json rep = base_report(f, opt);
    attach_level(rep, f, opt.level);
    rep["defect_rank"] = P.defect_rank;
    rep["tail_bound"] = P.tail_bound;
    rep["kk_residual"] = kk_residual(P);
    rep["intertwine_residual"] = intertwine_residual(P, F, T);
    double worst = 0.0;
    for (const Word& alpha : enumerate_words(f.n, 1))
        for (const Word& beta : enumerate_words(f.n, 1))
            worst = std::max(worst, poisson_transform_residual(P, F, T, alpha, beta));
    rep["transform_residual"] = worst;
    emit(rep, opt);
}

void run_kernel_point(const Options& opt) {
    FreeSymbol f = parse_symbol(load_json_file(opt.symbol_path));
    std::vector<Complex> lambda = parse_point(load_json_file(opt.point_path));
    DomainPoint p = point_in_domain(f, lambda);
    Json rep = base_report(f, opt);
    rep["gauge"] = p.gauge;
    rep["classification"] = p.where == PointClass::Interior   ? "interior"
                            : p.where == PointClass::Boundary ? "boundary"
                                                              : "exterior";
    if (p.where == PointClass::Interior) {
        rep["kernel_value_diag"] = {{"re", kernel_value(f, lambda, lambda).real()},
                                    {"im", kernel_value(f, lambda, lambda).imag()}};
        if (opt.level >= 1) {
            TruncatedFock F = build_fock(f, opt.level, dim_cap_from_env());
            attach_level(rep, f, opt.level);
            ZVector z = z_vector(f, F, lambda);
            rep["z_norm_sq"] = z.norm_sq;
            rep["z_tail_bound"] = z.tail_bound;
            rep["eigen_residual"] = eigen_residual(F, z, lambda);
        }
    }
    emit(rep, opt);
}

void run_pick_feasible(const Options& opt) {
    FreeSymbol f = parse_symbol(load_json_file(opt.symbol_path));
    PickProblem P = parse_pick(load_json_file(opt.problem_path));
    PickResult r = pick_feasible(f, P);
    Json rep = base_report(f, opt);
    rep["feasible"] = r.feasible;
    rep["min_eig"] = r.min_eig;
    rep["eps"] = r.eps;
    rep["asymmetry"] = r.asymmetry;
    rep["pick_matrix"] = matrix_to_json(r.pick);
    emit(rep, opt);
}

void run_charfn_point(const Options& opt) {
    FreeSymbol f = parse_symbol(load_json_file(opt.symbol_path));
    OperatorTuple T = parse_tuple(load_json_file(opt.tuple_path));
    std::vector<Complex> z = parse_point(load_json_file(opt.point_path));
    Matrix theta = char_point(f, T, z);
    Json rep = base_report(f, opt);
    rep["theta"] = matrix_to_json(theta);
    rep["theta_norm"] = theta.operatorNorm();
    emit(rep, opt);
}

void run_charfn_operator(const Options& opt) {
    FreeSymbol f = parse_symbol(load_json_file(opt.symbol_path));
    OperatorTuple T = parse_tuple(load_json_file(opt.tuple_path));
    TruncatedFock F = build_fock(f, opt.level, dim_cap_from_env());
    Matrix theta = char_operator(f, T, F);
    Json rep = base_report(f, opt);
    attach_level(rep, f, opt.level);
    rep["theta_norm"] = theta.operatorNorm();
    rep["factorization_residual"] = factorization_residual(f, T, F);
    int nsup = 0;
    for (const auto& [w, a] : f.a)
        if (a != 0.0 && !w.is_empty()) ++nsup;
    rep["analytic_residual"] = multi_analytic_residual(
        F, theta, static_cast<int>(T.dim()) * nsup, static_cast<int>(T.dim()),
        F.interior_degree());
    emit(rep, opt);
}

void run_curvature(const Options& opt) {
    FreeSymbol f = parse_symbol(load_json_file(opt.symbol_path));
    OperatorTuple T = parse_tuple(load_json_file(opt.tuple_path));
    CurvatureTrace c = opt.star ? star_curvature(f, T, opt.kmax)
                                : curvature(f, T, opt.kmax);
    Json rep = base_report(f, opt);
    rep["k_max"] = opt.kmax;
    rep["variant"] = opt.star ? "star" : "plain";
    rep["branch"] = c.branch;
    rep["value"] = c.value;
    if (c.two_branches) rep["alt_value"] = c.alt_value;
    rep["converged"] = c.converged;
    rep["spread"] = c.spread;
    rep["trace_defect"] = c.trace_defect;
    rep["defect_rank"] = c.defect_rank;
    rep["numerator"] = c.numerator;
    rep["denominator"] = c.denominator;
    rep["ratio"] = c.ratio;
    emit(rep, opt);
}

void run_corona(const Options& opt) {
    FreeSymbol f = parse_symbol(load_json_file(opt.symbol_path));
    TruncatedFock F = build_fock(f, opt.level, dim_cap_from_env());
    std::vector<CoeffMap> phis;
    for (const auto& path : opt.coeff_paths)
        phis.push_back(parse_coeff_map(load_json_file(path)));
    Json rep = base_report(f, opt);
    attach_level(rep, f, opt.level);
    rep["delta_sq"] = corona_delta(F, phis);
    if (opt.m_sc >= 0 && phis.size() == 1)
        rep["schur_caratheodory_value"] =
            schur_caratheodory_value(F, phis.front(), opt.m_sc);
    emit(rep, opt);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ncdomain: truncated weighted Fock models, Poisson kernels, "
                 "Pick interpolation, characteristic functions and curvature"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--seed", opt.seed, "seed for randomized checks");
    app.add_option("--output", opt.output_path, "write the JSON report here");

    auto add_symbol = [&](CLI::App* c) {
        c->add_option("--symbol", opt.symbol_path, "symbol JSON file")->required();
    };

    auto* symbol = app.add_subcommand("symbol", "symbol-level computations");
    auto* coeffs = symbol->add_subcommand("coeffs", "coefficient table of (1-f)^{-1}");
    add_symbol(coeffs);
    coeffs->add_option("--degree", opt.degree, "table degree")->required();
    coeffs->callback([&] { run_symbol_coeffs(opt); });

    auto* fock = app.add_subcommand("fock", "truncated Fock model");
    auto* fbuild = fock->add_subcommand("build", "build and verify the model");
    add_symbol(fbuild);
    fbuild->add_option("--level", opt.level, "truncation level")->required();
    fbuild->callback([&] { run_fock_build(opt); });

    auto* tuple = app.add_subcommand("tuple", "matrix tuple analysis");
    auto* tclassify = tuple->add_subcommand("classify", "membership and purity");
    add_symbol(tclassify);
    tclassify->add_option("--tuple", opt.tuple_path, "tuple JSON file")->required();
    tclassify->add_option("--kmax", opt.kmax, "iteration budget");
    tclassify->callback([&] { run_tuple_classify(opt); });

    auto* poisson = app.add_subcommand("poisson", "Poisson kernel checks");
    auto* pverify = poisson->add_subcommand("verify", "kernel identity residuals");
    add_symbol(pverify);
    pverify->add_option("--tuple", opt.tuple_path, "tuple JSON file")->required();
    pverify->add_option("--level", opt.level, "truncation level")->required();
    pverify->callback([&] { run_poisson_verify(opt); });

    auto* kernel = app.add_subcommand("kernel", "scalar point theory");
    auto* kpoint = kernel->add_subcommand("point", "gauge and kernel data at a point");
    add_symbol(kpoint);
    kpoint->add_option("--point", opt.point_path, "point JSON file")->required();
    kpoint->add_option("--level", opt.level, "optional truncation level");
    kpoint->callback([&] { run_kernel_point(opt); });

    auto* pick = app.add_subcommand("pick", "interpolation feasibility");
    auto* pfeas = pick->add_subcommand("feasible", "Pick matrix certificate");
    add_symbol(pfeas);
    pfeas->add_option("--problem", opt.problem_path, "pick problem JSON")->required();
    pfeas->callback([&] { run_pick_feasible(opt); });

    auto* charfn = app.add_subcommand("charfn", "characteristic functions");
    auto* cpoint = charfn->add_subcommand("point", "scalar-point evaluation");
    add_symbol(cpoint);
    cpoint->add_option("--tuple", opt.tuple_path, "tuple JSON file")->required();
    cpoint->add_option("--z", opt.point_path, "point JSON file")->required();
    cpoint->callback([&] { run_charfn_point(opt); });
    auto* coper = charfn->add_subcommand("operator", "truncated multi-analytic matrix");
    add_symbol(coper);
    coper->add_option("--tuple", opt.tuple_path, "tuple JSON file")->required();
    coper->add_option("--level", opt.level, "truncation level")->required();
    coper->callback([&] { run_charfn_operator(opt); });

    auto* curv = app.add_subcommand("curvature", "curvature estimators");
    add_symbol(curv);
    curv->add_option("--tuple", opt.tuple_path, "tuple JSON file")->required();
    curv->add_option("--kmax", opt.kmax, "iteration budget");
    curv->add_flag("--star", opt.star, "use the *-variant");
    curv->callback([&] { run_curvature(opt); });

    auto* corona = app.add_subcommand("corona", "corona-type lower bound");
    add_symbol(corona);
    corona->add_option("--level", opt.level, "truncation level")->required();
    corona->add_option("--coeffs", opt.coeff_paths, "coefficient map JSON files")
        ->required();
    corona->add_option("--schur-degree", opt.m_sc,
                       "also report the compressed multiplier norm at this degree");
    corona->callback([&] { run_corona(opt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
