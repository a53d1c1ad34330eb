#include "ncdomain/io.hpp"

#include <cstdio>
#include <fstream>

#include "ncdomain/errors.hpp"

namespace ncdomain {

namespace {

double require_number(const Json& j, const char* field) {
    if (!j.is_number())
        throw ValidationError(std::string("json: field '") + field +
                              "' must be a number");
    return j.get<double>();
}

Complex parse_complex(const Json& j, const char* field) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (!j.is_object())
        throw ValidationError(std::string("json: field '") + field +
                              "' must be a number or {re, im}");
    double re = j.contains("re") ? require_number(j.at("re"), field) : 0.0;
    double im = j.contains("im") ? require_number(j.at("im"), field) : 0.0;
    return Complex(re, im);
}

Word parse_word(const Json& j) {
    if (!j.is_array()) throw ValidationError("json: 'word' must be an array of letters");
    std::vector<int> letters;
    for (const auto& l : j) {
        if (!l.is_number_integer())
            throw ValidationError("json: 'word' entries must be integers");
        letters.push_back(l.get<int>());
    }
    return Word(std::move(letters));
}

Matrix parse_matrix_entries(const Json& j, const char* field) {
    if (!j.is_array() || j.empty())
        throw ValidationError(std::string("json: '") + field +
                              "' must be a nonempty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.at(0).size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j.at(static_cast<std::size_t>(r));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw ValidationError(std::string("json: '") + field +
                                  "' rows must have equal length");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = parse_complex(row.at(static_cast<std::size_t>(c)), field);
    }
    return m;
}

} // namespace

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ValidationError("malformed JSON in " + path + ": " + e.what());
    }
}

FreeSymbol parse_symbol(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("coeffs"))
        throw ValidationError("json: symbol needs fields 'n' and 'coeffs'");
    if (!j.at("n").is_number_integer())
        throw ValidationError("json: symbol field 'n' must be an integer");
    FreeSymbol f;
    f.n = j.at("n").get<int>();
    if (!j.at("coeffs").is_array())
        throw ValidationError("json: symbol field 'coeffs' must be an array");
    for (const auto& e : j.at("coeffs")) {
        if (!e.is_object() || !e.contains("word") || !e.contains("a"))
            throw ValidationError("json: each coeff needs fields 'word' and 'a'");
        Word w = parse_word(e.at("word"));
        double a = require_number(e.at("a"), "a");
        if (f.a.count(w))
            throw ValidationError("json: duplicate coeff for word " + to_string(w));
        if (a != 0.0) f.a[w] = a;
    }
    f.validate();
    return f;
}

Json symbol_to_json(const FreeSymbol& f) {
    Json coeffs = Json::array();
    for (const auto& [w, a] : f.a) {
        if (a == 0.0) continue;
        coeffs.push_back({{"word", w.letters}, {"a", a}});
    }
    return {{"n", f.n}, {"coeffs", coeffs}};
}

CoeffMap parse_coeff_map(const Json& j) {
    if (!j.is_array()) throw ValidationError("json: coefficient map must be an array");
    CoeffMap c;
    for (const auto& e : j) {
        if (!e.is_object() || !e.contains("word"))
            throw ValidationError("json: each coefficient needs a 'word' field");
        Word w = parse_word(e.at("word"));
        double re = e.contains("re") ? require_number(e.at("re"), "re") : 0.0;
        double im = e.contains("im") ? require_number(e.at("im"), "im") : 0.0;
        if (c.count(w))
            throw ValidationError("json: duplicate coefficient for word " + to_string(w));
        c[w] = Complex(re, im);
    }
    return c;
}

Json coeff_map_to_json(const CoeffMap& c) {
    Json out = Json::array();
    for (const auto& [w, v] : c)
        out.push_back({{"word", w.letters}, {"re", v.real()}, {"im", v.imag()}});
    return out;
}

OperatorTuple parse_tuple(const Json& j) {
    if (!j.is_object() || !j.contains("d") || !j.contains("mats"))
        throw ValidationError("json: tuple needs fields 'd' and 'mats'");
    if (!j.at("d").is_number_integer())
        throw ValidationError("json: tuple field 'd' must be an integer");
    const auto d = j.at("d").get<Eigen::Index>();
    OperatorTuple T;
    if (!j.at("mats").is_array() || j.at("mats").empty())
        throw ValidationError("json: tuple field 'mats' must be a nonempty array");
    for (const auto& mj : j.at("mats")) {
        Matrix m = parse_matrix_entries(mj, "mats");
        if (m.rows() != d || m.cols() != d)
            throw ValidationError("json: tuple matrix size does not match 'd'");
        T.T.push_back(std::move(m));
    }
    T.validate();
    return T;
}

std::vector<Complex> parse_point(const Json& j) {
    if (!j.is_array()) throw ValidationError("json: point must be an array");
    std::vector<Complex> p;
    for (const auto& e : j) p.push_back(parse_complex(e, "point"));
    return p;
}

PickProblem parse_pick(const Json& j) {
    if (!j.is_object() || !j.contains("nodes") || !j.contains("targets"))
        throw ValidationError("json: pick problem needs 'nodes' and 'targets'");
    PickProblem P;
    for (const auto& nj : j.at("nodes")) P.nodes.push_back(parse_point(nj));
    for (const auto& tj : j.at("targets")) {
        if (tj.is_array()) {
            P.targets.push_back(parse_matrix_entries(tj, "targets"));
        } else {
            Matrix m(1, 1);
            m(0, 0) = parse_complex(tj, "targets");
            P.targets.push_back(std::move(m));
        }
    }
    return P;
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back({{"re", m(r, c).real()}, {"im", m(r, c).imag()}});
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string symbol_hash(const FreeSymbol& f) {
    std::string canon = "n=" + std::to_string(f.n) + ";";
    char buf[64];
    for (const auto& [w, a] : f.a) {
        if (a == 0.0) continue;
        canon += to_string(w);
        std::snprintf(buf, sizeof(buf), ":%.17g;", a);
        canon += buf;
    }
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : canon) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace ncdomain
