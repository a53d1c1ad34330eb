#include "ncdomain/symbol.hpp"

#include <algorithm>
#include <cmath>

#include "ncdomain/errors.hpp"

namespace ncdomain {

double FreeSymbol::coeff(const Word& w) const {
    auto it = a.find(w);
    return it == a.end() ? 0.0 : it->second;
}

int FreeSymbol::support_degree() const {
    int d = 0;
    for (const auto& [w, v] : a)
        if (v != 0.0) d = std::max(d, static_cast<int>(w.length()));
    return d;
}

void FreeSymbol::validate() const {
    if (n < 1) throw ValidationError("symbol: generator count must be >= 1");
    for (const auto& [w, v] : a) {
        for (int l : w.letters)
            if (l < 0 || l >= n)
                throw ValidationError("symbol: word " + to_string(w) +
                                      " has a letter outside 0.." + std::to_string(n - 1));
        if (!(v >= 0.0) || !std::isfinite(v))
            throw ValidationError("symbol: coefficient of " + to_string(w) +
                                  " must be finite and nonnegative");
        if (w.is_empty() && v != 0.0)
            throw ValidationError("symbol: constant coefficient must be zero");
    }
    for (int i = 0; i < n; ++i) {
        Word gi({i});
        if (coeff(gi) <= 0.0)
            throw ValidationError("symbol: linear coefficient of " + to_string(gi) +
                                  " must be strictly positive");
    }
}

double BTable::at(const Word& w) const {
    auto it = b.find(w);
    if (it == b.end())
        throw NumericalError("b-table: word " + to_string(w) + " beyond computed degree " +
                             std::to_string(degree));
    return it->second;
}

BTable compute_b(const FreeSymbol& f, int max_degree) {
    f.validate();
    if (max_degree < 0) throw ValidationError("compute_b: degree must be >= 0");
    BTable t;
    t.n = f.n;
    t.degree = max_degree;
    // graded order: each b_gamma only needs strictly shorter words
    for (const Word& gamma : enumerate_words(f.n, max_degree)) {
        if (gamma.is_empty()) {
            t.b.emplace(gamma, 1.0);
            continue;
        }
        double sum = 0.0;
        for (const auto& [beta, alpha] : prefix_splits(gamma)) {
            double ab = f.coeff(beta);
            if (ab != 0.0) sum += ab * t.b.at(alpha);
        }
        t.b.emplace(gamma, sum);
    }
    return t;
}

double gamma_constant(const FreeSymbol& f, const BTable& b) {
    double g = 0.0;
    for (const auto& [w, v] : f.a) {
        if (v == 0.0 || w.is_empty()) continue;
        g += v / b.at(w);
    }
    return g;
}

double schwarz_constant(const FreeSymbol& f, const BTable& b, int m) {
    double best = 0.0;
    for (const Word& alpha : enumerate_words(f.n, m)) {
        for (int i = 0; i < f.n; ++i) {
            Word gia = Word({i}).concat(alpha);
            best = std::max(best, std::sqrt(b.at(gia) / b.at(alpha)));
        }
    }
    return best;
}

FreeSymbol reverse_symbol(const FreeSymbol& f) {
    FreeSymbol out;
    out.n = f.n;
    for (const auto& [w, v] : f.a)
        if (v != 0.0) out.a[w.reversed()] = v;
    return out;
}

RadiusDiagnostic radius_test(const CoeffMap& c, const BTable& b, int m,
                             double tolerance) {
    RadiusDiagnostic diag;
    std::vector<double> level_sum(static_cast<std::size_t>(m) + 1, 0.0);
    for (const auto& [w, v] : c) {
        int k = static_cast<int>(w.length());
        if (k == 0 || k > m) continue;
        level_sum[static_cast<std::size_t>(k)] += std::norm(v) / b.at(w);
    }
    for (int k = 1; k <= m; ++k) {
        double s = level_sum[static_cast<std::size_t>(k)];
        diag.per_degree.push_back(s == 0.0 ? 0.0 : std::pow(s, 1.0 / (2.0 * k)));
    }
    diag.window = std::min<int>(5, static_cast<int>(diag.per_degree.size()));
    diag.trailing_max = 0.0;
    for (int j = 0; j < diag.window; ++j)
        diag.trailing_max = std::max(diag.trailing_max,
                                     diag.per_degree[diag.per_degree.size() - 1 - j]);
    diag.plausibly_holomorphic = diag.trailing_max <= 1.0 + tolerance;
    return diag;
}

Complex eval_word_at_point(const std::vector<Complex>& lambda, const Word& w) {
    Complex v{1.0, 0.0};
    for (int l : w.letters) v *= lambda.at(static_cast<std::size_t>(l));
    return v;
}

double point_gauge(const FreeSymbol& f, const std::vector<Complex>& lambda) {
    if (static_cast<int>(lambda.size()) != f.n)
        throw ValidationError("point: expected " + std::to_string(f.n) + " coordinates");
    double g = 0.0;
    for (const auto& [w, v] : f.a)
        if (v != 0.0 && !w.is_empty())
            g += v * std::norm(eval_word_at_point(lambda, w));
    return g;
}

} // namespace ncdomain
