#pragma once

#include "enumgeom/catalog.hpp"
#include "enumgeom/linear_solve.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testing_support {

using namespace enumgeom;

inline std::string data_path(const std::string& name) { return std::string(ENUMGEOM_DATA_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Polynomial poly(const Context& ctx, std::string_view text) { return parse_polynomial(text, ctx); }
inline Polynomial poly(const Ring& ring, std::string_view text) { return parse_polynomial(text, ring->context()); }

/// Random polynomial with small integer coefficients and weighted degree <= max_degree.
inline Polynomial random_polynomial(std::mt19937& rng, const Context& ctx, int max_degree, int terms, int magnitude = 5) {
    std::uniform_int_distribution<int> coeff(-magnitude, magnitude);
    std::uniform_int_distribution<int> deg(0, max_degree / 2);
    Polynomial p(ctx);
    for (int i = 0; i < terms; ++i) {
        auto monos = monomials_of_degree(*ctx, 2 * deg(rng));
        if (monos.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
        p.add_term(monos[pick(rng)], Rational(coeff(rng)));
    }
    return p;
}

inline Polynomial random_homogeneous(std::mt19937& rng, const Context& ctx, int degree, int magnitude = 5) {
    std::uniform_int_distribution<int> coeff(-magnitude, magnitude);
    Polynomial p(ctx);
    for (const auto& m : monomials_of_degree(*ctx, degree)) p.add_term(m, Rational(coeff(rng)));
    return p;
}

/// Dimension of (Q[x]/I)_d by dense row reduction of the degree-d Macaulay
/// matrix of all monomial multiples of the relations. Independent of Buchberger.
inline std::size_t macaulay_dimension(const RingPresentation& ring, int degree) {
    const auto& ctx = *ring.context();
    auto cols = monomials_of_degree(ctx, degree);
    RationalMatrix rows;
    for (const auto& g : ring.relations()) {
        auto d = g.homogeneous_degree();
        if (!d || *d > degree) continue;
        for (const auto& m : monomials_of_degree(ctx, degree - *d)) {
            auto mg = g.times_term(m, Rational(1));
            RationalVector row(cols.size(), Rational(0));
            for (std::size_t j = 0; j < cols.size(); ++j) row[j] = mg.coefficient(cols[j]);
            rows.push_back(std::move(row));
        }
    }
    return cols.size() - matrix_rank(std::move(rows));
}

/// Golden table rows "r,s,t,value" as (exponents, value).
inline std::vector<std::pair<std::vector<int>, Rational>> read_golden(const std::string& path) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    std::vector<std::pair<std::vector<int>, Rational>> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        std::vector<int> e;
        for (std::size_t i = 0; i + 1 < cells.size(); ++i) e.push_back(std::stoi(cells[i]));
        out.emplace_back(e, Rational::parse(cells.back()));
    }
    return out;
}

/// Random expression text paired with the polynomial it denotes, built with
/// the polynomial API rather than the parser.
class ExpressionGenerator {
public:
    ExpressionGenerator(std::uint32_t seed, Context ctx) : rng_(seed), ctx_(std::move(ctx)) {}

    std::pair<std::string, Polynomial> next() { return sum(3); }

private:
    int roll(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    std::string space() {
        switch (roll(0, 5)) {
            case 0: return " ";
            case 1: return "  ";
            default: return "";
        }
    }

    std::string minus() { return roll(0, 3) == 0 ? "−" : "-"; }

    std::pair<std::string, Polynomial> sum(int depth) {
        int n = roll(1, 3);
        std::string text;
        Polynomial value(ctx_);
        for (int i = 0; i < n; ++i) {
            bool negative = roll(0, 2) == 0;
            auto [t, v] = term(depth);
            if (i == 0) {
                text += negative ? minus() + space() : "";
            } else {
                text += space() + (negative ? minus() : "+") + space();
            }
            text += t;
            value += negative ? -v : v;
        }
        return {text, value};
    }

    std::pair<std::string, Polynomial> term(int depth) {
        int n = roll(1, 3);
        std::string text;
        Polynomial value = Polynomial::constant(ctx_, Rational(1));
        for (int i = 0; i < n; ++i) {
            auto [t, v] = factor(depth);
            text += (i ? space() + "*" + space() : "") + t;
            value = value * v;
        }
        return {text, value};
    }

    std::pair<std::string, Polynomial> factor(int depth) {
        auto [t, v] = base(depth);
        if (roll(0, 3) == 0) {
            unsigned e = static_cast<unsigned>(roll(0, 3));
            return {t + space() + "^" + space() + std::to_string(e), v.pow(e)};
        }
        return {t, v};
    }

    std::pair<std::string, Polynomial> base(int depth) {
        int kind = depth > 0 ? roll(0, 3) : roll(0, 1);
        if (kind == 0) {
            long num = roll(0, 40);
            long den = roll(0, 2) == 0 ? roll(1, 9) : 1;
            std::string t = std::to_string(num) + (den != 1 ? "/" + std::to_string(den) : "");
            // A bare fraction followed by '^' would bind the exponent to the fraction; keep it parenthesized.
            if (den != 1) t = "(" + t + ")";
            return {t, Polynomial::constant(ctx_, Rational(num, den))};
        }
        if (kind == 1 || kind == 2) {
            auto i = static_cast<std::size_t>(roll(0, static_cast<int>(ctx_->arity()) - 1));
            return {ctx_->name(i), Polynomial::variable(ctx_, i)};
        }
        auto [t, v] = sum(depth - 1);
        return {"(" + space() + t + space() + ")", v};
    }

    std::mt19937 rng_;
    Context ctx_;
};

}  // namespace testing_support
