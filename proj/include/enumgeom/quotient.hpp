#pragma once

#include "enumgeom/groebner.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace enumgeom {

/// Fundamental-class normalization: the integral of `monomial` is `value`.
struct Reference {
    Monomial monomial;
    Rational value;
};

/// Graded ring Q[x_1..x_k]/<relations>, modelling H*(M;Q). Immutable; the
/// reduced grevlex basis is computed eagerly at construction.
class RingPresentation {
public:
    const std::string& name() const noexcept { return name_; }
    const Context& context() const noexcept { return ctx_; }
    const std::vector<Polynomial>& relations() const noexcept { return relations_; }
    int top_degree() const noexcept { return top_degree_; }
    const std::optional<Reference>& reference() const noexcept { return reference_; }
    const GroebnerBasis& basis() const noexcept { return *basis_; }

    Polynomial zero() const { return Polynomial(ctx_); }
    Polynomial one() const { return Polynomial::constant(ctx_, Rational(1)); }
    Polynomial constant(const Rational& c) const { return Polynomial::constant(ctx_, c); }
    Polynomial var(std::string_view name) const { return Polynomial::variable(ctx_, name); }
    Polynomial var(std::size_t i) const { return Polynomial::variable(ctx_, i); }

    Polynomial reduce(const Polynomial& p) const { return basis_->reduce(p); }

    friend std::shared_ptr<const RingPresentation> make_presentation(
        Context, std::vector<Polynomial>, int, std::optional<Reference>, std::string);

private:
    RingPresentation() = default;

    std::string name_;
    Context ctx_;
    std::vector<Polynomial> relations_;
    int top_degree_ = 0;
    std::optional<Reference> reference_;
    std::shared_ptr<const GroebnerBasis> basis_;
};

using Ring = std::shared_ptr<const RingPresentation>;

/// Monomials of the given degree not divisible by any leading monomial of
/// the reduced basis; a vector-space basis of that graded piece.
inline std::vector<Monomial> standard_basis(const RingPresentation& ring, int degree) {
    std::vector<Monomial> out;
    for (auto& m : monomials_of_degree(*ring.context(), degree))
        if (ring.basis().is_standard(m)) out.push_back(std::move(m));
    return out;
}

/// Validated presentation. Throws DegreeError for inhomogeneous relations or
/// a misplaced reference, DegenerateRing when the ideal is the unit ideal or
/// the reference vanishes or the top piece is not one-dimensional.
inline Ring make_presentation(Context ctx, std::vector<Polynomial> relations, int top_degree,
                              std::optional<Reference> reference = std::nullopt,
                              std::string name = {}) {
    if (top_degree < 0 || top_degree % 2 != 0)
        throw DegreeError("top degree must be a non-negative even integer, got " + std::to_string(top_degree));
    for (const auto& r : relations) {
        if (!same_context(r.context(), ctx)) throw ContextMismatch();
        if (!r.is_homogeneous()) throw DegreeError("relation " + r.str() + " is not homogeneous");
    }
    auto basis = std::make_shared<const GroebnerBasis>(buchberger(ctx, relations));
    if (basis->is_unit()) throw DegenerateRing("relations generate the unit ideal");

    std::shared_ptr<RingPresentation> ring(new RingPresentation());
    ring->name_ = std::move(name);
    ring->ctx_ = std::move(ctx);
    ring->relations_ = std::move(relations);
    ring->top_degree_ = top_degree;
    ring->basis_ = std::move(basis);

    if (reference) {
        const auto& ref = *reference;
        if (ref.monomial.arity() != ring->ctx_->arity())
            throw std::invalid_argument("reference monomial arity mismatch");
        if (ref.value.is_zero()) throw DegenerateRing("reference value must be nonzero");
        int d = ref.monomial.weighted_degree(ring->ctx_->weights());
        if (d != top_degree)
            throw DegreeError("reference has degree " + std::to_string(d) + ", expected top degree " +
                              std::to_string(top_degree));
        auto ref_poly = Polynomial::term(ring->ctx_, ref.monomial, Rational(1));
        if (ring->reduce(ref_poly).is_zero())
            throw DegenerateRing("reference monomial " + format_monomial(ref.monomial, *ring->ctx_) +
                                 " reduces to zero");
        auto top = standard_basis(*ring, top_degree);
        if (top.size() != 1)
            throw DegenerateRing("top graded piece has dimension " + std::to_string(top.size()) +
                                 ", expected 1");
        ring->reference_ = reference;
    }
    return ring;
}

inline Polynomial nf_in_ring(const RingPresentation& ring, const Polynomial& p) {
    p.check_context(ring.one());
    return ring.reduce(p);
}

inline bool equal_in_ring(const RingPresentation& ring, const Polynomial& p, const Polynomial& q) {
    return nf_in_ring(ring, p - q).is_zero();
}

/// Characteristic number of a top-degree class: the scalar λ with
/// nf(p) = λ·nf(reference), times the reference value.
inline Rational integrate(const RingPresentation& ring, const Polynomial& p) {
    if (!ring.reference()) throw MathError("ring has no reference class; integration is undefined");
    if (p.is_zero()) return Rational(0);
    auto d = p.homogeneous_degree();
    if (!d) throw DegreeError("integrand " + p.str() + " is not homogeneous");
    if (*d != ring.top_degree())
        throw DegreeError("integrand has degree " + std::to_string(*d) + ", top degree is " +
                          std::to_string(ring.top_degree()));
    const auto& ref = *ring.reference();
    Polynomial nf_p = nf_in_ring(ring, p);
    Polynomial nf_ref = nf_in_ring(ring, Polynomial::term(ring.context(), ref.monomial, Rational(1)));
    if (nf_p.is_zero()) return Rational(0);

    // nf_ref is nonzero (validated); find λ on its leading term and confirm.
    const auto& [m0, c0] = *nf_ref.terms().begin();
    Rational lambda = nf_p.coefficient(m0) / c0;
    if (!(nf_p - nf_ref * lambda).is_zero())
        throw MathError("normal forms of " + p.str() + " and the reference are not proportional");
    return lambda * ref.value;
}

inline Rational integrate_monomial(const RingPresentation& ring, const Monomial& m) {
    return integrate(ring, Polynomial::term(ring.context(), m, Rational(1)));
}

/// ∫ divisor^n, reducing after each multiplication.
inline Rational intersection_power(const RingPresentation& ring, const Polynomial& divisor, unsigned n) {
    auto d = divisor.homogeneous_degree();
    if (!d || *d != 2) throw DegreeError("divisor class must be homogeneous of degree 2");
    if (2 * static_cast<int>(n) != ring.top_degree())
        throw DegreeError("power " + std::to_string(n) + " of a divisor does not reach top degree " +
                          std::to_string(ring.top_degree()));
    Polynomial acc = ring.one();
    for (unsigned i = 0; i < n; ++i) acc = nf_in_ring(ring, acc * divisor);
    return integrate(ring, acc);
}

/// Smallest exponent e with x_i^e in the ideal, when it does not exceed the
/// top degree.
inline std::vector<std::optional<int>> vanishing_powers(const RingPresentation& ring) {
    const auto& ctx = *ring.context();
    std::vector<std::optional<int>> out(ctx.arity());
    for (std::size_t i = 0; i < ctx.arity(); ++i) {
        Monomial m(ctx.arity());
        for (int e = 1; e * ctx.weight(i) <= ring.top_degree(); ++e) {
            m[i] = e;
            if (!ring.basis().is_standard(m) &&
                ring.reduce(Polynomial::term(ring.context(), m, Rational(1))).is_zero()) {
                out[i] = e;
                break;
            }
        }
    }
    return out;
}

struct TableEntry {
    Monomial monomial;
    Rational value;
};

/// ∫ of every top-degree monomial, descending in grevlex. Monomials divisible
/// by a vanishing pure power x_i^e (e.g. x^4 on a P^3 factor) are omitted.
inline std::vector<TableEntry> characteristic_table(const RingPresentation& ring) {
    if (!ring.reference()) throw MathError("ring has no reference class; integration is undefined");
    auto bounds = vanishing_powers(ring);
    std::vector<TableEntry> out;
    for (auto& m : monomials_of_degree(*ring.context(), ring.top_degree())) {
        bool trivially_zero = false;
        for (std::size_t i = 0; i < m.arity(); ++i)
            if (bounds[i] && m[i] >= *bounds[i]) trivially_zero = true;
        if (trivially_zero) continue;
        Rational v = integrate_monomial(ring, m);
        out.push_back({std::move(m), std::move(v)});
    }
    return out;
}

/// Dimensions of the graded pieces in degrees 0..top.
inline std::vector<std::size_t> hilbert_function(const RingPresentation& ring) {
    std::vector<std::size_t> dims;
    for (int d = 0; d <= ring.top_degree(); ++d) dims.push_back(standard_basis(ring, d).size());
    return dims;
}

/// Homomorphism source -> target given by generator images.
class RingMap {
public:
    /// Violations of degree preservation and well-definedness, one per line.
    static std::vector<std::string> check(const Ring& source, const Ring& target,
                                          const std::vector<Polynomial>& images) {
        std::vector<std::string> failures;
        const auto& sctx = *source->context();
        if (images.size() != sctx.arity()) {
            failures.push_back("expected " + std::to_string(sctx.arity()) + " images, got " +
                               std::to_string(images.size()));
            return failures;
        }
        bool degrees_ok = true;
        for (std::size_t i = 0; i < images.size(); ++i) {
            if (!same_context(images[i].context(), target->context())) {
                failures.push_back("image of " + sctx.name(i) + " is not in the target ring");
                degrees_ok = false;
                continue;
            }
            if (images[i].is_zero()) continue;
            auto d = images[i].homogeneous_degree();
            if (!d || *d != sctx.weight(i)) {
                failures.push_back("image of " + sctx.name(i) + " (" + images[i].str() +
                                   ") is not homogeneous of degree " + std::to_string(sctx.weight(i)));
                degrees_ok = false;
            }
        }
        if (!degrees_ok) return failures;
        for (const auto& rel : source->relations()) {
            auto img = substitute(rel, images, target->context());
            if (!target->reduce(img).is_zero())
                failures.push_back("relation " + rel.str() + " does not map into the target ideal");
        }
        return failures;
    }

    RingMap(Ring source, Ring target, std::vector<Polynomial> images)
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
        auto failures = check(source_, target_, images_);
        if (!failures.empty()) throw ValidationError(std::move(failures));
    }

    const Ring& source() const noexcept { return source_; }
    const Ring& target() const noexcept { return target_; }
    const std::vector<Polynomial>& images() const noexcept { return images_; }

    /// Image of a source polynomial, in target normal form.
    Polynomial operator()(const Polynomial& p) const {
        p.check_context(source_->one());
        return target_->reduce(substitute(p, images_, target_->context()));
    }

private:
    Ring source_;
    Ring target_;
    std::vector<Polynomial> images_;
};

namespace detail {

/// Name not present in `taken`, derived from `base` by appending primes.
inline std::string fresh_name(std::string base, const std::vector<std::string>& taken) {
    while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += '\'';
    return base;
}

/// Context holding `front` variables first, then `back` variables; names
/// of the front block are primed where they clash with the back block.
inline Context joined_context(const VariableContext& front, const VariableContext& back) {
    std::vector<std::string> names;
    std::vector<int> weights;
    std::vector<std::string> taken = back.names();
    for (std::size_t i = 0; i < front.arity(); ++i) {
        auto n = fresh_name(front.name(i), taken);
        taken.push_back(n);
        names.push_back(n);
        weights.push_back(front.weight(i));
    }
    for (std::size_t i = 0; i < back.arity(); ++i) {
        names.push_back(back.name(i));
        weights.push_back(back.weight(i));
    }
    return make_context(std::move(names), std::move(weights));
}

/// Images of a context's variables as variables offset into a joined context.
inline std::vector<Polynomial> embed_variables(const VariableContext& ctx, const Context& joined,
                                               std::size_t offset) {
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < ctx.arity(); ++i) out.push_back(Polynomial::variable(joined, offset + i));
    return out;
}

/// Elements of an elimination basis free of the first `split` variables,
/// pulled back into `ctx` (whose variables are the trailing block).
inline std::vector<Polynomial> eliminated_part(const GroebnerBasis& gb, std::size_t split,
                                               const Context& ctx) {
    std::vector<Polynomial> out;
    for (const auto& g : gb.elements()) {
        bool free = true;
        for (std::size_t i = 0; i < split && free; ++i) free = !g.uses_variable(i);
        if (!free) continue;
        Polynomial p(ctx);
        for (const auto& [m, c] : g.terms()) {
            Monomial mm(ctx->arity());
            for (std::size_t i = 0; i < ctx->arity(); ++i) mm[i] = m[split + i];
            p.add_term(mm, c);
        }
        out.push_back(std::move(p));
    }
    return out;
}

/// Drops generators already in the ideal of `base` plus the kept ones.
inline std::vector<Polynomial> prune_generators(const Context& ctx, std::vector<Polynomial> base,
                                                const std::vector<Polynomial>& candidates) {
    std::vector<Polynomial> kept;
    auto current = buchberger(ctx, base);
    for (const auto& h : candidates) {
        auto r = normal_form(h, current);
        if (r.is_zero()) continue;
        kept.push_back(r);
        base.push_back(r);
        current = buchberger(ctx, base);
    }
    return kept;
}

}  // namespace detail

/// Generators h_1..h_s of the kernel of the induced map source -> target,
/// modulo the source relations (reduced against the source basis).
///
/// Computed by eliminating the target variables from
/// (target relations) + <y_i - image(y_i)> in the joined polynomial ring.
inline std::vector<Polynomial> ring_map_kernel(const Ring& source, const Ring& target,
                                               const std::vector<Polynomial>& images) {
    const auto& sctx = *source->context();
    if (images.size() != sctx.arity()) throw std::invalid_argument("ring_map_kernel: wrong image count");
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (!same_context(images[i].context(), target->context())) throw ContextMismatch();
        if (images[i].is_zero()) continue;
        auto d = images[i].homogeneous_degree();
        if (!d) throw DegreeError("image of " + sctx.name(i) + " is not homogeneous");
        if (*d != sctx.weight(i))
            throw DegreeError("image of " + sctx.name(i) + " has degree " + std::to_string(*d) +
                              ", generator has weight " + std::to_string(sctx.weight(i)));
    }

    const auto& tctx = *target->context();
    Context joined = detail::joined_context(tctx, sctx);
    auto tvars = detail::embed_variables(tctx, joined, 0);
    auto svars = detail::embed_variables(sctx, joined, tctx.arity());

    std::vector<Polynomial> gens;
    for (const auto& rel : target->relations()) gens.push_back(substitute(rel, tvars, joined));
    for (std::size_t i = 0; i < images.size(); ++i)
        gens.push_back(svars[i] - substitute(images[i], tvars, joined));

    auto gb = buchberger(joined, gens, MonomialOrder::elimination(*joined, tctx.arity()));
    auto kernel = detail::eliminated_part(gb, tctx.arity(), source->context());

    std::vector<Polynomial> reduced;
    for (const auto& h : kernel) {
        auto r = source->reduce(h);
        if (!r.is_zero()) reduced.push_back(make_monic(r, MonomialOrder::grevlex(sctx)));
    }
    return detail::prune_generators(source->context(), source->relations(), reduced);
}

}  // namespace enumgeom
