#pragma once

#include "enumgeom/errors.hpp"
#include "enumgeom/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace enumgeom {

/// Ordered, named generators with positive (cohomological) weights.
/// Declaration order is the default variable precedence.
class VariableContext {
public:
    static constexpr int kDefaultWeight = 2;

    VariableContext(std::vector<std::string> names, std::vector<int> weights)
        : names_(std::move(names)), weights_(std::move(weights)) {
        if (names_.size() != weights_.size())
            throw std::invalid_argument("variable names and weights differ in length");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i].empty()) throw std::invalid_argument("empty variable name");
            if (weights_[i] <= 0)
                throw std::invalid_argument("variable '" + names_[i] + "' has non-positive weight");
            for (std::size_t j = 0; j < i; ++j)
                if (names_[j] == names_[i])
                    throw std::invalid_argument("duplicate variable '" + names_[i] + "'");
        }
    }

    std::size_t arity() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::vector<int>& weights() const noexcept { return weights_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    int weight(std::size_t i) const { return weights_.at(i); }

    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    friend bool operator==(const VariableContext&, const VariableContext&) = default;

private:
    std::vector<std::string> names_;
    std::vector<int> weights_;
};

using Context = std::shared_ptr<const VariableContext>;

inline Context make_context(std::vector<std::string> names, std::vector<int> weights) {
    return std::make_shared<const VariableContext>(std::move(names), std::move(weights));
}

/// All variables get the default weight 2.
inline Context make_context(std::vector<std::string> names) {
    std::vector<int> weights(names.size(), VariableContext::kDefaultWeight);
    return make_context(std::move(names), std::move(weights));
}

inline bool same_context(const Context& a, const Context& b) {
    return a == b || (a && b && *a == *b);
}

/// Exponent vector, one entry per context variable.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t arity) : exps_(arity, 0) {}
    Monomial(std::initializer_list<int> exps) : exps_(exps) {}
    explicit Monomial(std::vector<int> exps) : exps_(std::move(exps)) {}

    std::size_t arity() const noexcept { return exps_.size(); }
    int operator[](std::size_t i) const { return exps_[i]; }
    int& operator[](std::size_t i) { return exps_[i]; }
    const std::vector<int>& exponents() const noexcept { return exps_; }

    bool is_one() const {
        return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
    }

    int total_degree() const {
        int d = 0;
        for (int e : exps_) d += e;
        return d;
    }

    int weighted_degree(std::span<const int> weights) const {
        int d = 0;
        for (std::size_t i = 0; i < exps_.size(); ++i) d += weights[i] * exps_[i];
        return d;
    }

    bool divides(const Monomial& other) const {
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] > other.exps_[i]) return false;
        return true;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r(a.arity());
        for (std::size_t i = 0; i < a.arity(); ++i) r.exps_[i] = a.exps_[i] + b.exps_[i];
        return r;
    }

    /// a / b, requires b | a.
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        Monomial r(a.arity());
        for (std::size_t i = 0; i < a.arity(); ++i) r.exps_[i] = a.exps_[i] - b.exps_[i];
        return r;
    }

    friend Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a.arity());
        for (std::size_t i = 0; i < a.arity(); ++i) r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
        return r;
    }

    friend bool coprime(const Monomial& a, const Monomial& b) {
        for (std::size_t i = 0; i < a.arity(); ++i)
            if (a.exps_[i] > 0 && b.exps_[i] > 0) return false;
        return true;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
    std::vector<int> exps_;
};

/// "x^3*y^5"; "1" for the unit monomial.
inline std::string format_monomial(const Monomial& m, const VariableContext& ctx) {
    std::string out;
    for (std::size_t i = 0; i < m.arity(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += ctx.name(i);
        if (m[i] > 1) out += '^' + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

/// Term orders on monomials of one context, graded by the context weights.
class MonomialOrder {
public:
    enum class Kind { GradedReverseLex, Lex, BlockElimination };

    static MonomialOrder grevlex(const VariableContext& ctx) {
        return MonomialOrder(Kind::GradedReverseLex, ctx.weights(), 0);
    }
    static MonomialOrder lex(const VariableContext& ctx) {
        return MonomialOrder(Kind::Lex, ctx.weights(), 0);
    }
    /// Variables [0, split) are eliminated: any monomial containing one of
    /// them exceeds every monomial free of them.
    static MonomialOrder elimination(const VariableContext& ctx, std::size_t split) {
        if (split > ctx.arity()) throw std::invalid_argument("elimination split beyond arity");
        return MonomialOrder(Kind::BlockElimination, ctx.weights(), split);
    }

    Kind kind() const noexcept { return kind_; }
    std::size_t split() const noexcept { return split_; }
    const std::vector<int>& weights() const noexcept { return weights_; }

    std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
        switch (kind_) {
            case Kind::Lex:
                return a <=> b;
            case Kind::GradedReverseLex:
                return graded_revlex(a, b, 0, a.arity());
            case Kind::BlockElimination: {
                auto c = graded_revlex(a, b, 0, split_);
                if (c != 0) return c;
                return graded_revlex(a, b, split_, a.arity());
            }
        }
        return std::strong_ordering::equal;
    }

    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

    std::string name() const {
        switch (kind_) {
            case Kind::Lex: return "lex";
            case Kind::GradedReverseLex: return "grevlex";
            case Kind::BlockElimination: return "elim(" + std::to_string(split_) + ")";
        }
        return "?";
    }

    friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

private:
    MonomialOrder(Kind kind, std::vector<int> weights, std::size_t split)
        : kind_(kind), weights_(std::move(weights)), split_(split) {}

    std::strong_ordering graded_revlex(const Monomial& a, const Monomial& b, std::size_t lo,
                                       std::size_t hi) const {
        int da = 0, db = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            da += weights_[i] * a[i];
            db += weights_[i] * b[i];
        }
        if (da != db) return da <=> db;
        for (std::size_t i = hi; i-- > lo;) {
            if (a[i] != b[i]) return b[i] <=> a[i];
        }
        return std::strong_ordering::equal;
    }

    Kind kind_;
    std::vector<int> weights_;
    std::size_t split_;
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms never carry a zero coefficient. Internal storage is keyed by the
/// plain exponent vector; every order-dependent view goes through a
/// MonomialOrder.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational>;

    explicit Polynomial(Context ctx) : ctx_(std::move(ctx)) {
        if (!ctx_) throw std::invalid_argument("polynomial without context");
    }

    static Polynomial constant(Context ctx, const Rational& c) {
        Polynomial p(std::move(ctx));
        if (!c.is_zero()) p.terms_.emplace(Monomial(p.ctx_->arity()), c);
        return p;
    }

    static Polynomial term(Context ctx, Monomial m, const Rational& c) {
        if (m.arity() != ctx->arity()) throw std::invalid_argument("monomial arity mismatch");
        Polynomial p(std::move(ctx));
        if (!c.is_zero()) p.terms_.emplace(std::move(m), c);
        return p;
    }

    static Polynomial variable(Context ctx, std::size_t index) {
        Monomial m(ctx->arity());
        m[index] = 1;
        return term(std::move(ctx), std::move(m), Rational(1));
    }

    static Polynomial variable(Context ctx, std::string_view name) {
        auto idx = ctx->index_of(name);
        if (!idx) throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
        return variable(std::move(ctx), *idx);
    }

    const Context& context() const noexcept { return ctx_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational constant_term() const { return coefficient(Monomial(ctx_->arity())); }

    /// Adds c·m in place.
    void add_term(const Monomial& m, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Weighted degrees of all terms are equal (the zero polynomial counts).
    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int d = terms_.begin()->first.weighted_degree(ctx_->weights());
        for (const auto& [m, c] : terms_)
            if (m.weighted_degree(ctx_->weights()) != d) return false;
        return true;
    }

    /// Weighted degree of a nonzero homogeneous polynomial; nullopt otherwise.
    std::optional<int> homogeneous_degree() const {
        if (terms_.empty() || !is_homogeneous()) return std::nullopt;
        return terms_.begin()->first.weighted_degree(ctx_->weights());
    }

    int max_weighted_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.weighted_degree(ctx_->weights()));
        return d;
    }

    bool uses_variable(std::size_t i) const {
        for (const auto& [m, c] : terms_)
            if (m[i] > 0) return true;
        return false;
    }

    /// Terms sorted descending by the given order.
    std::vector<std::pair<Monomial, Rational>> sorted_terms(const MonomialOrder& order) const {
        std::vector<std::pair<Monomial, Rational>> out(terms_.begin(), terms_.end());
        std::sort(out.begin(), out.end(),
                  [&](const auto& a, const auto& b) { return order.greater(a.first, b.first); });
        return out;
    }

    std::pair<Monomial, Rational> leading_term(const MonomialOrder& order) const {
        if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
        auto best = terms_.begin();
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
            if (order.greater(it->first, best->first)) best = it;
        return *best;
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_context(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check_context(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Polynomial& operator*=(const Rational& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) {
        for (auto& [m, c] : a.terms_) c = -c;
        return a;
    }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_context(b);
        Polynomial r(a.ctx_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    /// c·m·p
    Polynomial times_term(const Monomial& m, const Rational& c) const {
        Polynomial r(ctx_);
        if (c.is_zero()) return r;
        for (const auto& [pm, pc] : terms_) r.terms_.emplace(pm * m, pc * c);
        return r;
    }

    Polynomial pow(unsigned n) const {
        Polynomial result = constant(ctx_, Rational(1));
        Polynomial base = *this;
        while (n > 0) {
            if (n & 1u) result *= base;
            n >>= 1u;
            if (n > 0) base = base * base;
        }
        return result;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return same_context(a.ctx_, b.ctx_) && a.terms_ == b.terms_;
    }

    /// Canonical printed form: descending in the given order, "p/q" coefficients.
    std::string str(const MonomialOrder& order) const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : sorted_terms(order)) {
            bool negative = c.sign() < 0;
            Rational a = negative ? -c : c;
            std::string body;
            if (m.is_one()) {
                body = a.str();
            } else if (a.is_one()) {
                body = format_monomial(m, *ctx_);
            } else {
                body = a.str() + "*" + format_monomial(m, *ctx_);
            }
            if (first) {
                out = negative ? "-" + body : body;
                first = false;
            } else {
                out += negative ? " - " : " + ";
                out += body;
            }
        }
        return out;
    }

    std::string str() const { return str(MonomialOrder::grevlex(*ctx_)); }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

    void check_context(const Polynomial& o) const {
        if (!same_context(ctx_, o.ctx_)) throw ContextMismatch();
    }

private:
    Context ctx_;
    TermMap terms_;
};

/// Simultaneous substitution x_i -> images[i], expanded in the target context.
inline Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images,
                             const Context& target) {
    const auto& ctx = *p.context();
    if (images.size() != ctx.arity())
        throw std::invalid_argument("substitution needs one image per variable (" +
                                    std::to_string(ctx.arity()) + "), got " +
                                    std::to_string(images.size()));
    for (const auto& img : images)
        if (!same_context(img.context(), target)) throw ContextMismatch();

    // power cache per variable
    std::vector<std::vector<Polynomial>> powers(ctx.arity());
    auto power = [&](std::size_t i, int e) -> const Polynomial& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(Polynomial::constant(target, Rational(1)));
        while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[i]);
        return cache[e];
    };

    Polynomial result(target);
    for (const auto& [m, c] : p.terms()) {
        Polynomial t = Polynomial::constant(target, c);
        for (std::size_t i = 0; i < m.arity() && !t.is_zero(); ++i)
            if (m[i] > 0) t = t * power(i, m[i]);
        result += t;
    }
    return result;
}

/// Substitution that additionally demands every image be homogeneous of its
/// source variable's weight (zero images are accepted).
inline Polynomial substitute_homogeneous(const Polynomial& p, std::span<const Polynomial> images,
                                         const Context& target) {
    const auto& ctx = *p.context();
    for (std::size_t i = 0; i < images.size() && i < ctx.arity(); ++i) {
        if (images[i].is_zero()) continue;
        auto d = images[i].homogeneous_degree();
        if (!d || *d != ctx.weight(i))
            throw DegreeError("image of '" + ctx.name(i) + "' is not homogeneous of degree " +
                              std::to_string(ctx.weight(i)));
    }
    return substitute(p, images, target);
}

/// Homogeneous components by weighted degree, ascending; empty for 0.
inline std::vector<std::pair<int, Polynomial>> weighted_degree_split(const Polynomial& p) {
    std::map<int, Polynomial> parts;
    const auto& w = p.context()->weights();
    for (const auto& [m, c] : p.terms()) {
        int d = m.weighted_degree(w);
        auto it = parts.try_emplace(d, p.context()).first;
        it->second.add_term(m, c);
    }
    return {parts.begin(), parts.end()};
}

/// Homogeneous component of the given weighted degree.
inline Polynomial degree_part(const Polynomial& p, int degree) {
    Polynomial out(p.context());
    for (const auto& [m, c] : p.terms())
        if (m.weighted_degree(p.context()->weights()) == degree) out.add_term(m, c);
    return out;
}

/// Every monomial of the exact weighted degree, descending in grevlex.
inline std::vector<Monomial> monomials_of_degree(const VariableContext& ctx, int degree) {
    std::vector<Monomial> out;
    if (degree < 0) return out;
    Monomial cur(ctx.arity());
    auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
        if (i == ctx.arity()) {
            if (remaining == 0) out.push_back(cur);
            return;
        }
        int w = ctx.weight(i);
        for (int e = 0; e * w <= remaining; ++e) {
            cur[i] = e;
            self(self, i + 1, remaining - e * w);
        }
        cur[i] = 0;
    };
    rec(rec, 0, degree);
    auto order = MonomialOrder::grevlex(ctx);
    std::sort(out.begin(), out.end(),
              [&](const Monomial& a, const Monomial& b) { return order.greater(a, b); });
    return out;
}

}  // namespace enumgeom
