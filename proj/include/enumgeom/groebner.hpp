#pragma once

#include "enumgeom/polynomial.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace enumgeom {

/// Outcome of multivariate division: p = sum(quotients[i] * basis[i]) + remainder.
struct DivisionResult {
    std::vector<Polynomial> quotients;
    Polynomial remainder;
};

namespace detail {

struct DescendingBy {
    const MonomialOrder* order;
    bool operator()(const Monomial& a, const Monomial& b) const { return order->greater(a, b); }
};

using OrderedTerms = std::map<Monomial, Rational, DescendingBy>;

struct LeadData {
    Monomial monomial;
    Rational coefficient;
};

inline std::vector<LeadData> leads_of(std::span<const Polynomial> basis, const MonomialOrder& order) {
    std::vector<LeadData> leads;
    leads.reserve(basis.size());
    for (const auto& g : basis) {
        if (g.is_zero()) {
            leads.push_back({Monomial(), Rational(0)});
            continue;
        }
        auto [m, c] = g.leading_term(order);
        leads.push_back({std::move(m), std::move(c)});
    }
    return leads;
}

/// Full reduction: repeatedly cancels the largest reducible term using the
/// first basis element (in list order) whose leading monomial divides it.
inline Polynomial reduce(const Polynomial& p, std::span<const Polynomial> basis,
                         const MonomialOrder& order, std::vector<Polynomial>* quotients) {
    auto leads = leads_of(basis, order);
    OrderedTerms work(DescendingBy{&order});
    for (const auto& [m, c] : p.terms()) work.emplace(m, c);

    Polynomial remainder(p.context());
    auto it = work.begin();
    while (it != work.end()) {
        std::optional<std::size_t> hit;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (leads[i].coefficient.is_zero()) continue;
            if (leads[i].monomial.divides(it->first)) {
                hit = i;
                break;
            }
        }
        if (!hit) {
            ++it;
            continue;
        }
        const Monomial current = it->first;
        const Rational factor = it->second / leads[*hit].coefficient;
        const Monomial shift = current / leads[*hit].monomial;
        if (quotients) (*quotients)[*hit].add_term(shift, factor);
        for (const auto& [gm, gc] : basis[*hit].terms()) {
            Monomial m = gm * shift;
            Rational delta = -(factor * gc);
            auto [pos, inserted] = work.try_emplace(std::move(m), delta);
            if (!inserted) {
                pos->second += delta;
                if (pos->second.is_zero()) work.erase(pos);
            }
        }
        it = work.lower_bound(current);
    }
    for (auto& [m, c] : work) remainder.add_term(m, c);
    return remainder;
}

}  // namespace detail

/// Remainder of p modulo the list `basis`; no term of the result is divisible
/// by a leading monomial of the basis. Deterministic for a fixed list order.
inline Polynomial normal_form(const Polynomial& p, std::span<const Polynomial> basis,
                              const MonomialOrder& order) {
    for (const auto& g : basis) p.check_context(g);
    return detail::reduce(p, basis, order, nullptr);
}

/// Same as normal_form but also records the quotients.
inline DivisionResult divide(const Polynomial& p, std::span<const Polynomial> basis,
                             const MonomialOrder& order) {
    for (const auto& g : basis) p.check_context(g);
    std::vector<Polynomial> quotients(basis.size(), Polynomial(p.context()));
    auto r = detail::reduce(p, basis, order, &quotients);
    return {std::move(quotients), std::move(r)};
}

inline Polynomial make_monic(const Polynomial& p, const MonomialOrder& order) {
    if (p.is_zero()) return p;
    return p * p.leading_term(order).second.inverse();
}

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
    auto [mf, cf] = f.leading_term(order);
    auto [mg, cg] = g.leading_term(order);
    Monomial l = lcm(mf, mg);
    return f.times_term(l / mf, cf.inverse()) - g.times_term(l / mg, cg.inverse());
}

/// Reduced Gröbner basis: monic elements, no term of one element divisible by
/// another's leading monomial, listed by ascending leading monomial. Unique
/// for a given ideal and order.
class GroebnerBasis {
public:
    GroebnerBasis(Context ctx, MonomialOrder order, std::vector<Polynomial> elements)
        : ctx_(std::move(ctx)), order_(std::move(order)), elements_(std::move(elements)) {
        leads_.reserve(elements_.size());
        for (const auto& g : elements_) leads_.push_back(g.leading_term(order_).first);
    }

    const Context& context() const noexcept { return ctx_; }
    const MonomialOrder& order() const noexcept { return order_; }
    const std::vector<Polynomial>& elements() const noexcept { return elements_; }
    const std::vector<Monomial>& leading_monomials() const noexcept { return leads_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool reduced() const noexcept { return true; }

    /// The ideal is the whole ring.
    bool is_unit() const { return elements_.size() == 1 && elements_.front().is_constant(); }

    bool is_standard(const Monomial& m) const {
        return std::none_of(leads_.begin(), leads_.end(),
                            [&](const Monomial& l) { return l.divides(m); });
    }

    Polynomial reduce(const Polynomial& p) const { return normal_form(p, elements_, order_); }

private:
    Context ctx_;
    MonomialOrder order_;
    std::vector<Polynomial> elements_;
    std::vector<Monomial> leads_;
};

namespace detail {

/// Minimal + interreduced + monic + sorted.
inline std::vector<Polynomial> reduce_basis(std::vector<Polynomial> g, const MonomialOrder& order) {
    std::vector<Monomial> leads;
    for (const auto& p : g) leads.push_back(p.leading_term(order).first);

    std::vector<Polynomial> minimal;
    std::vector<Monomial> minimal_leads;
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
            if (i == j || !leads[j].divides(leads[i])) continue;
            // equal leading monomials: keep the earliest
            redundant = leads[j] != leads[i] || j < i;
        }
        if (!redundant) {
            minimal.push_back(g[i]);
            minimal_leads.push_back(leads[i]);
        }
    }

    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        out.push_back(make_monic(normal_form(minimal[i], others, order), order));
    }
    std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
        return order.greater(b.leading_term(order).first, a.leading_term(order).first);
    });
    return out;
}

}  // namespace detail

/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// first) and the coprime and chain criteria. Zero generators are ignored; a
/// nonzero constant yields the basis {1}.
inline GroebnerBasis buchberger(const Context& ctx, std::span<const Polynomial> generators,
                                const MonomialOrder& order) {
    std::vector<Polynomial> g;
    for (const auto& p : generators) {
        if (!same_context(p.context(), ctx)) throw ContextMismatch();
        if (p.is_zero()) continue;
        if (p.is_constant()) {
            return GroebnerBasis(ctx, order, {Polynomial::constant(ctx, Rational(1))});
        }
        g.push_back(make_monic(p, order));
    }
    if (g.empty()) return GroebnerBasis(ctx, order, {});

    std::vector<Monomial> leads;
    for (const auto& p : g) leads.push_back(p.leading_term(order).first);

    struct Pair {
        std::size_t i, j;
        Monomial lcm;
    };
    auto pair_less = [&](const Pair& a, const Pair& b) {
        auto c = order.compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        if (a.j != b.j) return a.j < b.j;
        return a.i < b.i;
    };
    std::vector<Pair> pending;
    std::set<std::pair<std::size_t, std::size_t>> open;

    auto add_pairs_for = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            pending.push_back({i, j, lcm(leads[i], leads[j])});
            open.insert({i, j});
        }
    };
    for (std::size_t j = 1; j < g.size(); ++j) add_pairs_for(j);

    while (!pending.empty()) {
        auto best = std::min_element(pending.begin(), pending.end(), pair_less);
        Pair pr = *best;
        pending.erase(best);
        open.erase({pr.i, pr.j});

        if (coprime(leads[pr.i], leads[pr.j])) continue;

        bool chain = false;
        for (std::size_t k = 0; k < g.size() && !chain; ++k) {
            if (k == pr.i || k == pr.j || !leads[k].divides(pr.lcm)) continue;
            auto key = [](std::size_t a, std::size_t b) { return std::pair{std::min(a, b), std::max(a, b)}; };
            chain = !open.contains(key(pr.i, k)) && !open.contains(key(pr.j, k));
        }
        if (chain) continue;

        Polynomial s = s_polynomial(g[pr.i], g[pr.j], order);
        Polynomial r = normal_form(s, g, order);
        if (r.is_zero()) continue;
        if (r.is_constant()) return GroebnerBasis(ctx, order, {Polynomial::constant(ctx, Rational(1))});
        g.push_back(make_monic(r, order));
        leads.push_back(g.back().leading_term(order).first);
        add_pairs_for(g.size() - 1);
    }
    return GroebnerBasis(ctx, order, detail::reduce_basis(std::move(g), order));
}

inline GroebnerBasis buchberger(const Context& ctx, std::span<const Polynomial> generators) {
    return buchberger(ctx, generators, MonomialOrder::grevlex(*ctx));
}

inline Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb) {
    return normal_form(p, gb.elements(), gb.order());
}

inline bool ideal_member(const Polynomial& p, const GroebnerBasis& gb) {
    return normal_form(p, gb).is_zero();
}

/// Equality of ideals via uniqueness of the reduced basis.
inline bool ideal_equal(const GroebnerBasis& a, const GroebnerBasis& b) {
    if (!(a.order() == b.order())) throw MathError("ideal_equal: bases use different monomial orders");
    if (!same_context(a.context(), b.context())) throw ContextMismatch();
    return a.elements() == b.elements();
}

}  // namespace enumgeom
