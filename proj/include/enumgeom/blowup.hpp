#pragma once

#include "enumgeom/chern.hpp"
#include "enumgeom/linear_solve.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace enumgeom {

/// Cohomology of the projectivization of a rank-m bundle with Chern classes
/// c_1..c_m over `base`: base relations plus t^m + c_1 t^{m-1} + ... + c_m,
/// with t of weight 2. No reference is attached unless one is passed.
inline Ring projective_bundle_presentation(const Ring& base, const std::vector<Polynomial>& chern,
                                           const std::string& t_name,
                                           std::optional<Reference> reference = std::nullopt,
                                           std::string name = {}) {
    const auto& bctx = *base->context();
    if (chern.empty()) throw std::invalid_argument("bundle of rank 0");
    if (bctx.index_of(t_name)) throw std::invalid_argument("variable " + t_name + " already exists");
    auto names = bctx.names();
    auto weights = bctx.weights();
    names.push_back(t_name);
    weights.push_back(2);
    auto ctx = make_context(names, weights);
    auto incl = detail::embed_variables(bctx, ctx, 0);

    std::vector<Polynomial> rels;
    for (const auto& r : base->relations()) rels.push_back(substitute(r, incl, ctx));
    auto t = Polynomial::variable(ctx, t_name);
    std::size_t m = chern.size();
    Polynomial rel = t.pow(static_cast<unsigned>(m));
    for (std::size_t i = 1; i <= m; ++i) {
        const auto& c = chern[i - 1];
        if (!c.is_zero()) {
            auto d = c.homogeneous_degree();
            if (!d || *d != 2 * static_cast<int>(i))
                throw DegreeError("bundle Chern class c_" + std::to_string(i) + " has the wrong degree");
        }
        rel += substitute(c, incl, ctx) * t.pow(static_cast<unsigned>(m - i));
    }
    rels.push_back(std::move(rel));
    return make_presentation(ctx, std::move(rels), base->top_degree() + 2 * static_cast<int>(m - 1),
                             std::move(reference), std::move(name));
}

/// Data for the cohomology of the blow-up of `base` along `center`.
struct BlowupInput {
    Ring base;
    Ring center;
    std::vector<Polynomial> restriction;               ///< images of base generators in the center ring
    std::optional<std::vector<Polynomial>> section;    ///< images of center generators in the base ring
    std::vector<Polynomial> normal_chern;              ///< c_1..c_k of the normal bundle, in the center ring
    Polynomial dual_class;                             ///< class of the center in the base ring
    std::string exceptional_name = "z";

    int codimension() const {
        auto d = dual_class.homogeneous_degree();
        return d ? *d / 2 : 0;
    }
};

/// Every violated input condition, one message each; empty when valid.
inline std::vector<std::string> validate_blowup_input(const BlowupInput& in) {
    std::vector<std::string> failures;
    if (!in.base || !in.center) return {"base and center rings are required"};
    const auto& bctx = *in.base->context();
    const auto& cctx = *in.center->context();

    for (auto& f : RingMap::check(in.base, in.center, in.restriction)) failures.push_back("restriction: " + f);

    if (bctx.index_of(in.exceptional_name))
        failures.push_back("exceptional generator " + in.exceptional_name + " clashes with a base variable");

    int k = 0;
    if (!same_context(in.dual_class.context(), in.base->context())) {
        failures.push_back("dual class is not in the base ring");
    } else {
        auto d = in.dual_class.homogeneous_degree();
        if (in.dual_class.is_zero() || !d || *d % 2 != 0 || *d == 0)
            failures.push_back("dual class must be a nonzero homogeneous class of positive even degree");
        else
            k = *d / 2;
    }
    if (k > 0 && static_cast<int>(in.normal_chern.size()) != k)
        failures.push_back("normal bundle has " + std::to_string(in.normal_chern.size()) +
                           " Chern classes, codimension is " + std::to_string(k));

    bool chern_ok = true;
    for (std::size_t i = 0; i < in.normal_chern.size(); ++i) {
        const auto& c = in.normal_chern[i];
        if (!same_context(c.context(), in.center->context())) {
            failures.push_back("normal Chern class c_" + std::to_string(i + 1) + " is not in the center ring");
            chern_ok = false;
            continue;
        }
        if (c.is_zero()) continue;
        auto d = c.homogeneous_degree();
        if (!d || *d != 2 * static_cast<int>(i + 1)) {
            failures.push_back("normal Chern class c_" + std::to_string(i + 1) + " is not homogeneous of degree " +
                               std::to_string(2 * (i + 1)));
            chern_ok = false;
        }
    }

    bool restriction_ok = failures.empty() || std::none_of(failures.begin(), failures.end(), [](const auto& f) {
                              return f.rfind("restriction: ", 0) == 0;
                          });
    if (restriction_ok && k > 0 && chern_ok && static_cast<int>(in.normal_chern.size()) == k &&
        same_context(in.dual_class.context(), in.base->context())) {
        auto restricted = in.center->reduce(substitute(in.dual_class, in.restriction, in.center->context()));
        if (!(restricted == in.center->reduce(in.normal_chern[k - 1])))
            failures.push_back("restriction of the dual class is " + restricted.str() +
                               ", top normal Chern class is " + in.center->reduce(in.normal_chern[k - 1]).str());
    }

    if (in.section) {
        const auto& sec = *in.section;
        bool sec_ok = true;
        if (sec.size() != cctx.arity()) {
            failures.push_back("section: expected " + std::to_string(cctx.arity()) + " images, got " +
                               std::to_string(sec.size()));
            sec_ok = false;
        } else {
            for (std::size_t i = 0; i < sec.size(); ++i) {
                if (!same_context(sec[i].context(), in.base->context())) {
                    failures.push_back("section: image of " + cctx.name(i) + " is not in the base ring");
                    sec_ok = false;
                    continue;
                }
                if (sec[i].is_zero()) continue;
                auto d = sec[i].homogeneous_degree();
                if (!d || *d != cctx.weight(i)) {
                    failures.push_back("section: image of " + cctx.name(i) + " is not homogeneous of degree " +
                                       std::to_string(cctx.weight(i)));
                    sec_ok = false;
                }
            }
        }
        if (sec_ok && restriction_ok) {
            for (std::size_t i = 0; i < sec.size(); ++i) {
                auto back = in.center->reduce(substitute(sec[i], in.restriction, in.center->context()));
                auto var = in.center->reduce(in.center->var(i));
                if (!(back == var))
                    failures.push_back("section: restriction of section(" + cctx.name(i) + ") is " + back.str() +
                                       ", expected " + var.str());
            }
        }
    }
    return failures;
}

namespace detail {

/// Generators of the blow-up ring in context base + z, via the kernel of
/// the restriction and a section carrying center classes to the base.
inline std::vector<Polynomial> blowup_relations_via_section(const BlowupInput& in, const Context& ctx) {
    const auto& bctx = *in.base->context();
    auto incl = embed_variables(bctx, ctx, 0);
    auto z = Polynomial::variable(ctx, bctx.arity());
    int k = in.codimension();

    std::vector<Polynomial> rels;
    for (const auto& r : in.base->relations()) rels.push_back(substitute(r, incl, ctx));
    for (const auto& h : ring_map_kernel(in.base, in.center, in.restriction))
        rels.push_back(substitute(h, incl, ctx) * z);

    std::vector<Polynomial> sigma_then_incl;
    for (const auto& s : *in.section) sigma_then_incl.push_back(substitute(s, incl, ctx));
    auto sigma = [&](int j) {
        if (j == 0) return Polynomial::constant(ctx, Rational(1));
        return substitute(in.normal_chern[j - 1], sigma_then_incl, ctx);
    };
    Polynomial rel = substitute(in.dual_class, incl, ctx);
    for (int r = 1; r <= k; ++r) {
        Polynomial t = sigma(k - r) * z.pow(static_cast<unsigned>(r));
        rel += (r % 2 == 1) ? -t : t;
    }
    rels.push_back(std::move(rel));
    return rels;
}

/// Gysin images i_*(x) in the base ring of the standard monomials x of the
/// center, fixed by the duality ∫_M i_*(x)·b = ∫_X x·i*(b). Integration on
/// the center is normalized through ∫_X i*(b) = ∫_M ω·b.
inline std::vector<std::pair<Monomial, Polynomial>> gysin_images(const BlowupInput& in) {
    const auto& base = *in.base;
    const auto& center = *in.center;
    if (!base.reference()) throw MathError("the base ring needs a reference class to push classes forward");
    int top_m = base.top_degree();
    int top_x = center.top_degree();
    int shift = top_m - top_x;
    if (shift != 2 * in.codimension())
        throw DegreeError("top degrees differ by " + std::to_string(shift) + ", expected twice the codimension");

    auto top_std = standard_basis(center, top_x);
    if (top_std.size() != 1) throw DegenerateRing("top graded piece of the center is not one-dimensional");
    auto top_poly = Polynomial::term(center.context(), top_std[0], Rational(1));
    auto restrict = [&](const Polynomial& b) {
        return center.reduce(substitute(b, in.restriction, center.context()));
    };
    auto center_value = [&](const Polynomial& x) { return center.reduce(x).coefficient(top_std[0]); };

    // ∫_X top_std[0], from any base class of degree top_x restricting to it nontrivially.
    std::optional<Rational> top_integral;
    for (const auto& m : standard_basis(base, top_x)) {
        auto b = Polynomial::term(base.context(), m, Rational(1));
        auto lambda = center_value(restrict(b));
        if (lambda.is_zero()) continue;
        top_integral = integrate(base, in.dual_class * b) / lambda;
        break;
    }
    if (!top_integral || top_integral->is_zero())
        throw DegenerateRing("no base class restricts to the top class of the center");
    (void)top_poly;

    std::vector<std::pair<Monomial, Polynomial>> out;
    for (int d = 0; d <= top_x; d += 2) {
        auto targets = standard_basis(base, d + shift);
        auto duals = standard_basis(base, top_m - d - shift);
        for (const auto& x : standard_basis(center, d)) {
            auto xp = Polynomial::term(center.context(), x, Rational(1));
            RationalMatrix a(duals.size(), RationalVector(targets.size(), Rational(0)));
            RationalVector rhs(duals.size(), Rational(0));
            for (std::size_t i = 0; i < duals.size(); ++i) {
                auto b = Polynomial::term(base.context(), duals[i], Rational(1));
                for (std::size_t j = 0; j < targets.size(); ++j)
                    a[i][j] = integrate_monomial(base, targets[j] * duals[i]);
                rhs[i] = center_value(xp * restrict(b)) * *top_integral;
            }
            auto sol = linear_solve(a, rhs, targets.size());
            if (!sol || !sol->nullspace.empty())
                throw DegenerateRing("intersection pairing of the base ring is singular");
            Polynomial img = base.zero();
            for (std::size_t j = 0; j < targets.size(); ++j)
                if (!sol->particular[j].is_zero()) img.add_term(targets[j], sol->particular[j]);
            out.emplace_back(x, std::move(img));
        }
    }
    return out;
}

/// Element of the additive decomposition H(M) ⊕ H(X)·z ⊕ ... ⊕ H(X)·z^{k-1},
/// every piece in normal form of its ring.
struct DecomposedClass {
    Polynomial base;
    std::vector<Polynomial> parts;  ///< parts[r-1] is the coefficient of z^r
};

/// Multiplication by the generators of the blow-up on the additive
/// decomposition. Base generators act through the restriction on the
/// z-parts; z shifts the parts up and folds x·z^k back through
/// x·(Σ (-1)^{r-1} c_{k-r} z^r) = i_*(x).
class DecomposedAction {
public:
    explicit DecomposedAction(const BlowupInput& in) : in_(in), k_(in.codimension()) {
        for (auto& [x, img] : gysin_images(in)) pushed_.emplace(x, img);
        if (!(pushed_.at(Monomial(in.center->context()->arity())) == in.base->reduce(in.dual_class)))
            throw ValidationError({"pushforward of 1 differs from the dual class"});
    }

    DecomposedClass unit() const {
        DecomposedClass e{in_.base->one(), {}};
        e.parts.assign(static_cast<std::size_t>(k_ - 1), in_.center->zero());
        return e;
    }

    DecomposedClass times_base_variable(const DecomposedClass& e, std::size_t i) const {
        DecomposedClass out{in_.base->reduce(e.base * in_.base->var(i)), {}};
        for (const auto& p : e.parts) out.parts.push_back(in_.center->reduce(p * in_.restriction[i]));
        return out;
    }

    DecomposedClass times_z(const DecomposedClass& e) const {
        std::vector<Polynomial> q;  // q[r-1]: coefficient of z^r, r = 1..k
        q.push_back(in_.center->reduce(substitute(e.base, in_.restriction, in_.center->context())));
        for (const auto& p : e.parts) q.push_back(p);
        DecomposedClass out{in_.base->zero(), {}};
        for (int r = 1; r < k_; ++r) out.parts.push_back(q[static_cast<std::size_t>(r - 1)]);
        const auto& top = q.back();
        Rational sign = (k_ % 2 == 1) ? Rational(1) : Rational(-1);
        out.base = pushforward(top) * sign;
        for (int r = 1; r < k_; ++r) {
            Rational s = sign * ((r % 2 == 1) ? Rational(-1) : Rational(1));
            auto idx = static_cast<std::size_t>(r - 1);
            out.parts[idx] = in_.center->reduce(out.parts[idx] + top * in_.normal_chern[k_ - r - 1] * s);
        }
        return out;
    }

    Polynomial pushforward(const Polynomial& x) const {
        Polynomial out = in_.base->zero();
        auto nf = in_.center->reduce(x);
        for (const auto& [m, c] : nf.terms()) {
            auto it = pushed_.find(m);
            if (it == pushed_.end())
                throw MathError("no pushforward for " + format_monomial(m, *in_.center->context()));
            out += it->second * c;
        }
        return out;
    }

private:
    const BlowupInput& in_;
    int k_;
    std::map<Monomial, Polynomial> pushed_;
};

/// Same ring without a section: relations are read off degree by degree as
/// the kernel of evaluation on the additive decomposition. Needs a base
/// reference for the pushforward.
inline std::vector<Polynomial> blowup_relations_via_pushforward(const BlowupInput& in, const Context& ctx) {
    const auto& bctx = *in.base->context();
    const auto& base = *in.base;
    const auto& center = *in.center;
    int k = in.codimension();
    DecomposedAction act(in);
    std::size_t zi = bctx.arity();

    std::map<Monomial, DecomposedClass> cache;
    std::function<const DecomposedClass&(const Monomial&)> eval = [&](const Monomial& m) -> const DecomposedClass& {
        if (auto it = cache.find(m); it != cache.end()) return it->second;
        DecomposedClass value = act.unit();
        if (!m.is_one()) {
            std::size_t i = 0;
            while (m[i] == 0) ++i;
            auto exps = m.exponents();
            --exps[i];
            const auto& prev = eval(Monomial(exps));
            value = i == zi ? act.times_z(prev) : act.times_base_variable(prev, i);
        }
        return cache.emplace(m, std::move(value)).first->second;
    };

    int max_weight = *std::max_element(ctx->weights().begin(), ctx->weights().end());
    std::vector<Polynomial> candidates;
    for (int d = 2; d <= base.top_degree() + max_weight; d += 2) {
        auto monos = monomials_of_degree(*ctx, d);
        if (monos.empty()) continue;
        std::vector<std::pair<int, Monomial>> coords;  // (-1, base monomial) or (r, center monomial)
        for (auto& m : standard_basis(base, d)) coords.emplace_back(0, m);
        for (int r = 1; r < k; ++r)
            for (auto& m : standard_basis(center, d - 2 * r)) coords.emplace_back(r, m);
        RationalMatrix a(coords.size(), RationalVector(monos.size(), Rational(0)));
        for (std::size_t j = 0; j < monos.size(); ++j) {
            const auto& e = eval(monos[j]);
            for (std::size_t i = 0; i < coords.size(); ++i) {
                const auto& [r, m] = coords[i];
                a[i][j] = r == 0 ? e.base.coefficient(m) : e.parts[static_cast<std::size_t>(r - 1)].coefficient(m);
            }
        }
        if (coords.empty()) {
            for (const auto& m : monos) candidates.push_back(Polynomial::term(ctx, m, Rational(1)));
            continue;
        }
        if (matrix_rank(a) != coords.size())
            throw MathError("blow-up ring is not generated by the base classes and the exceptional class "
                            "in degree " + std::to_string(d));
        auto sol = linear_solve(a, RationalVector(coords.size(), Rational(0)));
        for (const auto& v : sol->nullspace) {
            Polynomial p(ctx);
            for (std::size_t j = 0; j < monos.size(); ++j)
                if (!v[j].is_zero()) p.add_term(monos[j], v[j]);
            candidates.push_back(make_monic(p, MonomialOrder::grevlex(*ctx)));
        }
    }
    return prune_generators(ctx, {}, candidates);
}

inline Context blowup_context(const BlowupInput& in) {
    auto names = in.base->context()->names();
    auto weights = in.base->context()->weights();
    names.push_back(in.exceptional_name);
    weights.push_back(2);
    return make_context(std::move(names), std::move(weights));
}

inline void require_valid(const BlowupInput& in) {
    auto failures = validate_blowup_input(in);
    if (!failures.empty()) throw ValidationError(std::move(failures));
}

}  // namespace detail

enum class BlowupRoute { Automatic, Section, Pushforward };

/// Presentation of the blow-up: base generators plus the exceptional class
/// z of weight 2. The base reference (if any) is inherited unchanged.
inline Ring blowup_presentation(const BlowupInput& in, BlowupRoute route = BlowupRoute::Automatic) {
    detail::require_valid(in);
    if (route == BlowupRoute::Section && !in.section) throw MathError("no section supplied");
    if (route == BlowupRoute::Automatic) route = in.section ? BlowupRoute::Section : BlowupRoute::Pushforward;

    auto ctx = detail::blowup_context(in);
    auto rels = route == BlowupRoute::Section ? detail::blowup_relations_via_section(in, ctx)
                                              : detail::blowup_relations_via_pushforward(in, ctx);
    std::optional<Reference> ref;
    if (in.base->reference()) {
        auto exps = in.base->reference()->monomial.exponents();
        exps.push_back(0);
        ref = Reference{Monomial(exps), in.base->reference()->value};
    }
    std::string name = in.base->name().empty() ? std::string() : in.base->name() + "-blowup";
    return make_presentation(ctx, std::move(rels), in.base->top_degree(), std::move(ref), std::move(name));
}

/// Chern classes of the blow-up from those of the base; requires a section.
/// `base_chern` holds c_1..c_n of the base tangent bundle.
struct BlowupChern {
    Ring ring;
    GradedSeries character;
    GradedSeries chern;
};

inline BlowupChern blowup_chern(const BlowupInput& in, const std::vector<Polynomial>& base_chern) {
    if (!in.section) throw MathError("Chern classes of the blow-up need a section");
    auto ring = blowup_presentation(in, BlowupRoute::Section);
    const auto& bctx = *in.base->context();
    int n = in.base->top_degree() / 2;
    int k = in.codimension();

    std::vector<Polynomial> cm{in.base->one()};
    cm.insert(cm.end(), base_chern.begin(), base_chern.end());
    auto ch_base = character_from_chern(GradedSeries::from_components(in.base, cm), Rational(n));
    auto incl = inclusion_images(bctx, ring);
    auto ch_M = pull_back(ch_base, incl, ring);

    std::vector<Polynomial> cg{in.center->one()};
    cg.insert(cg.end(), in.normal_chern.begin(), in.normal_chern.end());
    auto ch_normal_center = character_from_chern(GradedSeries::from_components(in.center, cg), Rational(k));
    std::vector<Polynomial> sigma;
    for (const auto& s : *in.section) sigma.push_back(substitute(s, incl, ring->context()));
    auto ch_normal = pull_back(ch_normal_center, sigma, ring);

    auto z = ring->var(in.exceptional_name);
    auto character = blowup_character(ring, ch_M, ch_normal, z);
    return {ring, character, chern_from_character(character)};
}

/// Affine family of classes ω of the given degree in the base ring whose
/// restriction to the center equals `target`, with optional pinned
/// coefficients on base standard monomials.
struct DualClassFamily {
    Polynomial particular;
    std::vector<Polynomial> directions;
};

inline DualClassFamily solve_dual_class(const Ring& base, const Ring& center,
                                        const std::vector<Polynomial>& restriction, const Polynomial& target,
                                        int degree,
                                        const std::vector<std::pair<Monomial, Rational>>& pins = {}) {
    auto failures = RingMap::check(base, center, restriction);
    if (!failures.empty()) throw ValidationError(std::move(failures));
    auto cols = standard_basis(*base, degree);
    auto rows = standard_basis(*center, degree);
    auto tnf = center->reduce(target);
    if (!tnf.is_zero() && tnf.homogeneous_degree() != degree)
        throw DegreeError("target class is not homogeneous of degree " + std::to_string(degree));

    RationalMatrix a(rows.size() + pins.size(), RationalVector(cols.size(), Rational(0)));
    RationalVector b(rows.size() + pins.size(), Rational(0));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        auto img = center->reduce(
            substitute(Polynomial::term(base->context(), cols[j], Rational(1)), restriction, center->context()));
        for (std::size_t i = 0; i < rows.size(); ++i) a[i][j] = img.coefficient(rows[i]);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) b[i] = tnf.coefficient(rows[i]);
    for (std::size_t p = 0; p < pins.size(); ++p) {
        auto it = std::find(cols.begin(), cols.end(), pins[p].first);
        if (it == cols.end())
            throw MathError("pinned monomial " + format_monomial(pins[p].first, *base->context()) +
                            " is not a standard monomial of degree " + std::to_string(degree));
        a[rows.size() + p][static_cast<std::size_t>(it - cols.begin())] = Rational(1);
        b[rows.size() + p] = pins[p].second;
    }
    auto sol = linear_solve(a, b, cols.size());
    if (!sol) throw MathError("no class restricts to " + tnf.str());

    auto assemble = [&](const RationalVector& v) {
        Polynomial p = base->zero();
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (!v[j].is_zero()) p.add_term(cols[j], v[j]);
        return p;
    };
    DualClassFamily fam{assemble(sol->particular), {}};
    for (const auto& v : sol->nullspace) fam.directions.push_back(assemble(v));
    return fam;
}

}  // namespace enumgeom
