#pragma once

#include "enumgeom/blowup.hpp"
#include "enumgeom/spec_format.hpp"

#include <array>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace enumgeom {

struct Model {
    std::string name;
    Ring ring;
    std::vector<std::pair<std::string, Polynomial>> classes;
    std::vector<std::string> maps;  ///< names of stored maps with this model as source or target
    std::string notes;
    /// Classical condition classes μ, ν, ϱ in ring generators, where defined.
    std::optional<std::array<Polynomial, 3>> schubert;

    RingModel ring_model() const { return {ring, classes}; }
    const Polynomial& cls(std::string_view n) const {
        for (const auto& [k, p] : classes)
            if (k == n) return p;
        throw std::out_of_range("model " + name + " has no class " + std::string(n));
    }
};

/// A stored homomorphism between two models, images given as text in the
/// target's variables (in source generator order).
struct MapSpec {
    std::string name;
    std::string source;
    std::string target;
    std::vector<std::string> images;
    std::string description;
};

struct MapReport {
    std::string name;
    std::string source;
    std::string target;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

namespace detail {

inline Ring presented(const std::vector<std::string>& names, const std::vector<int>& weights,
                      const std::vector<std::string>& rels, int top, std::optional<std::vector<int>> ref,
                      const std::string& name) {
    auto ctx = make_context(names, weights);
    std::vector<Polynomial> polys;
    for (const auto& r : rels) polys.push_back(parse_polynomial(r, ctx));
    std::optional<Reference> reference;
    if (ref) reference = Reference{Monomial(*ref), Rational(1)};
    return make_presentation(ctx, std::move(polys), top, reference, name);
}

inline std::vector<std::pair<std::string, Polynomial>> named(const Ring& ring,
                                                            const std::vector<std::pair<std::string, std::string>>& defs) {
    std::vector<std::pair<std::string, Polynomial>> out;
    for (const auto& [n, text] : defs) {
        auto p = parse_polynomial(text, ring->context());
        if (p.homogeneous_degree() != 2) throw DegreeError("class " + n + " is not of degree 2");
        out.emplace_back(n, std::move(p));
    }
    return out;
}

inline std::array<Polynomial, 3> schubert_classes(const Ring& ring, const char* mu, const char* nu, const char* rho) {
    return {parse_polynomial(mu, ring->context()), parse_polynomial(nu, ring->context()),
            parse_polynomial(rho, ring->context())};
}

inline Ring projective_space(int n) {
    return presented({"x"}, {2}, {"x^" + std::to_string(n + 1)}, 2 * n, std::vector<int>{n},
                     "p" + std::to_string(n));
}

inline Ring grassmannian_lines_p3() {
    return presented({"c1", "c2"}, {2, 4}, {"2*c1*c2 - c1^3", "c2^2 - c1^2*c2"}, 8, std::nullopt, "g42");
}

inline std::vector<Polynomial> chern_components(const Ring& ring, const std::vector<std::string>& texts) {
    std::vector<Polynomial> out;
    for (const auto& t : texts) out.push_back(parse_polynomial(t, ring->context()));
    return out;
}

inline const char* kConicsIntegralNotes =
    "Integral cohomology of complete conics: Z[x,y]/<x^4, y^6+4xy^5+10x^2y^4+20x^3y^3> "
    "(+) Z[x,rho]/<x^4, rho^3+rho^2x+rhox^2+x^3>{z, z^2}, subject to "
    "4y^3+8xy^2+8x^2y = (30rho^2+20rhox+6x^2)z - (3x+9rho)z^2 + z^3 and yz = 2rho z. "
    "Over Q, rho^r z = y^r z / 2^r gives the presentation stored here.";

inline const char* kQuadricsIntegralNotes =
    "Integral cohomology of complete quadrics: Z[u]/<u^10> (+) Z[y]/<y^4>{v,...,v^5} "
    "(+) Z[c1,c2,t]/<2c1c2-c1^3, c2^2-c1^2c2, t^3+3t^2c1+t(2c1^2+4c2)+2c1^3>{w, w^2}, subject to "
    "v^6+16v^5y+110v^4y^2+420v^3y^3+8u^6 = 0, uv = 2yv, uw = tw, vw = -2(c1+t)w, "
    "10u^3+22u^2v+16uv^2+4v^3 = (30c1^2+18c1t+3t^2-4c2)w + (9c1+3t)w^2 + w^3. "
    "Here v = -omega_E of the first blow-up and w = omega of the second.";

inline Model build_model(const std::string& name) {
    Model m;
    m.name = name;
    if (name.size() == 2 && name[0] == 'p' && name[1] >= '1' && name[1] <= '9') {
        int n = name[1] - '0';
        m.ring = projective_space(n);
        m.classes = named(m.ring, {{"H", "x"}});
        m.notes = "Projective space of complex dimension " + std::to_string(n) + "; x is the hyperplane class.";
        return m;
    }
    if (name == "conics-p2") {
        m.ring = presented({"y", "z"}, {2, 2}, {"8*y^3 - 15*y^2*z + 9*y*z^2 - 2*z^3", "y^3*z", "y^6"}, 10,
                           std::vector<int>{5, 0}, name);
        m.classes = named(m.ring, {{"tangent", "6*y - 2*z"}});
        m.notes = "Complete conics in a plane: the complete-conics ring restricted to x = 0. "
                  "The class of conics tangent to a fixed conic is 6y - 2z.";
        return m;
    }
    if (name == "conics-p3") {
        m.ring = presented({"x", "y", "z"}, {2, 2, 2},
                           {"x^4",
                            "2*z^3 - (6*x + 9*y)*z^2 + (15*y^2 + 20*x*y + 12*x^2)*z - 8*y^3 - 16*x*y^2 - 16*x^2*y",
                            "(y^3 + 2*x*y^2 + 4*x^2*y + 8*x^3)*z",
                            "y^6 + 4*x*y^5 + 10*x^2*y^4 + 20*x^3*y^3"},
                           16, std::vector<int>{3, 5, 0}, name);
        m.classes = named(m.ring, {{"V_l", "2*x + y"}, {"V_L", "2*x + 2*y - z"}, {"V_S", "8*x + 6*y - 2*z"}});
        m.schubert = schubert_classes(m.ring, "x", "2*x + y", "2*x + 2*y - z");
        m.notes = kConicsIntegralNotes;
        m.maps = {"iN"};
        return m;
    }
    if (name == "quadrics-p3") {
        std::string h = "(3*u + 2*v - w)";
        m.ring = presented(
            {"u", "v", "w"}, {2, 2, 2},
            {"-8*u^4 - 14*u^3*v - 9*u^2*v^2 - 2*u*v^3 + 2*(2*u + v)^3*" + h + " - 3*(2*u + v)^2*" + h +
                 "^2 + 2*(2*u + v)*" + h + "^3",
             "8*u^4 + 4*u^3*v - 6*u^2*v^2 - 7*u*v^3 - 2*v^4 - (16*u^3 + 14*u^2*v - v^3 + 2*u*v^2)*" + h +
                 " + 6*(2*u^2 + u*v)*" + h + "^2 - 4*u*" + h + "^3",
             "(2*w - 4*u - 3*v)*" + h + "^4", "u^4*v",
             "16*u^6 + 105*u^3*v^3 + 55*u^2*v^4 + 16*u*v^5 + 2*v^6"},
            18, std::vector<int>{9, 0, 0}, name);
        m.classes = named(m.ring, {{"W_p", "u"}, {"W_l", "2*u + v"}, {"W_L", "3*u + 2*v - w"},
                                   {"W_S", "12*u + 6*v - 2*w"}});
        m.schubert = schubert_classes(m.ring, "u", "2*u + v", "3*u + 2*v - w");
        m.notes = kQuadricsIntegralNotes;
        m.maps = {"iN"};
        return m;
    }
    if (name == "ptilde9") {
        m.ring = presented({"u", "v"}, {2, 2},
                           {"u^10", "u^4*v", "2*v^6 + 16*u*v^5 + 55*u^2*v^4 + 105*u^3*v^3 + 16*u^6"}, 18,
                           std::vector<int>{9, 0}, name);
        // The sextic relation comes from the integral one by y*v = (u/2)*v.
        auto integral = make_context({"u", "y", "v"});
        auto sextic = parse_polynomial("v^6 + 16*v^5*y + 110*v^4*y^2 + 420*v^3*y^3 + 8*u^6", integral);
        auto u = m.ring->var("u");
        std::vector<Polynomial> images{u, u * Rational(1, 2), m.ring->var("v")};
        if (!m.ring->reduce(substitute(sextic, images, m.ring->context())).is_zero())
            throw DegenerateRing("ptilde9: rationalized sextic relation is not in the ideal");
        m.classes = named(m.ring, {{"H", "u"}, {"E", "-v"}});
        m.notes = "Blow-up of P^9 along the Veronese P^3. u is the hyperplane class; v = -omega_E, "
                  "the opposite of the exceptional class (sign flip relative to the blow-up builder, "
                  "which names omega_E itself).";
        m.maps = {"gE", "j"};
        return m;
    }
    if (name == "veronese-bundle") {
        auto p3 = projective_space(3);
        auto x = p3->var("x");
        m.ring = projective_bundle_presentation(p3, {x, x.pow(2), x.pow(3)}, "rho", std::nullopt, name);
        m.notes = "Projectivization of a rank-3 bundle over P^3 with total Chern class 1 + x + x^2 + x^3; "
                  "no reference class.";
        m.maps = {"i", "gX"};
        return m;
    }
    if (name == "conic-bundle") {
        auto p3 = projective_space(3);
        auto x = p3->var("x");
        auto zero = p3->zero();
        m.ring = projective_bundle_presentation(p3, {x * Rational(4), x.pow(2) * Rational(10),
                                                     x.pow(3) * Rational(20), zero, zero, zero},
                                                "y", Reference{Monomial{3, 5}, Rational(1)}, name);
        m.notes = "Projectivization of the symmetric square of the rank-3 bundle over P^3 "
                  "(total Chern class 1 + 4x + 10x^2 + 20x^3); reference x^3 y^5 = 1.";
        m.maps = {"gE", "i"};
        return m;
    }
    if (name == "x-variety") {
        auto g = grassmannian_lines_p3();
        m.ring = projective_bundle_presentation(
            g, chern_components(g, {"3*c1", "2*c1^2 + 4*c2", "2*c1^3"}), "t", std::nullopt, name);
        m.notes = "Projectivization of the symmetric square of the tautological rank-2 bundle over the "
                  "Grassmannian of lines in P^3; no reference class.";
        m.maps = {"gX", "j"};
        return m;
    }
    throw std::out_of_range("unknown model '" + name + "'");
}

}  // namespace detail

inline const std::vector<std::string>& model_names() {
    static const std::vector<std::string> names{"p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8", "p9",
                                                "conics-p2", "conics-p3", "quadrics-p3", "ptilde9",
                                                "veronese-bundle", "conic-bundle", "x-variety"};
    return names;
}

inline bool is_model_name(std::string_view name) {
    const auto& n = model_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

/// Built-in model by name; constructed on first use and cached.
inline const Model& builtin(const std::string& name) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<Model>> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(name); it != cache.end()) return *it->second;
    if (!is_model_name(name)) throw std::out_of_range("unknown model '" + name + "'");
    auto m = std::make_unique<Model>(detail::build_model(name));
    return *cache.emplace(name, std::move(m)).first->second;
}

inline const std::vector<MapSpec>& map_specs() {
    static const std::vector<MapSpec> specs{
        {"gE", "ptilde9", "conic-bundle", {"2*x", "-2*x + y"},
         "restriction to the exceptional divisor of the first quadric blow-up"},
        {"i", "conic-bundle", "veronese-bundle", {"x", "2*rho"},
         "restriction from the conic bundle to the double-line locus"},
        {"gX", "x-variety", "veronese-bundle", {"-(x + rho)", "x*rho", "2*x"},
         "restriction from the rank-2 quadric locus to its intersection with the exceptional divisor"},
        {"j", "ptilde9", "x-variety", {"t", "-2*(c1 + t)"},
         "restriction from the first blow-up to the rank-2 quadric locus"},
        {"iN", "quadrics-p3", "conics-p3", {"2*x", "-2*x + y", "z"},
         "restriction from complete quadrics to complete conics"},
    };
    return specs;
}

inline const MapSpec& map_spec(std::string_view name) {
    for (const auto& s : map_specs())
        if (s.name == name) return s;
    throw std::out_of_range("unknown map '" + std::string(name) + "'");
}

inline std::vector<Polynomial> map_images(const MapSpec& spec) {
    const auto& target = builtin(spec.target);
    std::vector<Polynomial> images;
    for (const auto& t : spec.images) images.push_back(parse_polynomial(t, target.ring->context()));
    return images;
}

inline RingMap catalog_map(std::string_view name) {
    const auto& spec = map_spec(name);
    return RingMap(builtin(spec.source).ring, builtin(spec.target).ring, map_images(spec));
}

inline MapReport validate_map(const MapSpec& spec) {
    MapReport r{spec.name, spec.source, spec.target, {}};
    r.failures = RingMap::check(builtin(spec.source).ring, builtin(spec.target).ring, map_images(spec));
    return r;
}

inline std::vector<MapReport> validate_maps() {
    std::vector<MapReport> out;
    for (const auto& s : map_specs()) out.push_back(validate_map(s));
    return out;
}

/// ∫ μ^r ν^s ϱ^t in a model carrying classical condition classes.
inline Rational schubert_convert(const Model& model, unsigned r, unsigned s, unsigned t) {
    if (!model.schubert) throw MathError("model " + model.name + " has no classical condition classes");
    if (static_cast<int>(2 * (r + s + t)) != model.ring->top_degree())
        throw DegreeError("exponents must sum to " + std::to_string(model.ring->top_degree() / 2));
    const auto& [mu, nu, rho] = *model.schubert;
    auto p = model.ring->reduce(mu.pow(r) * nu.pow(s));
    p = model.ring->reduce(p * rho.pow(t));
    return integrate(*model.ring, p);
}

// ---------------------------------------------------------------- blow-up data

/// Complete conics: conic bundle blown up along the double-line locus.
inline BlowupInput complete_conics_input() {
    const auto& base = builtin("conic-bundle").ring;
    const auto& center = builtin("veronese-bundle").ring;
    auto bc = base->context();
    auto cc = center->context();
    return BlowupInput{
        base,
        center,
        {parse_polynomial("x", cc), parse_polynomial("2*rho", cc)},
        std::vector<Polynomial>{parse_polynomial("x", bc), parse_polynomial("1/2*y", bc)},
        detail::chern_components(center, {"3*x + 9*rho", "30*rho^2 + 20*x*rho + 6*x^2",
                                          "32*rho^3 + 32*x*rho^2 + 16*x^2*rho"}),
        parse_polynomial("4*y^3 + 8*x*y^2 + 8*x^2*y", bc),
        "z"};
}

/// Complete quadrics: the first blow-up blown up along the rank-2 locus.
/// No ring section exists here; the pushforward route is used.
inline BlowupInput complete_quadrics_input() {
    const auto& base = builtin("ptilde9").ring;
    const auto& center = builtin("x-variety").ring;
    auto cc = center->context();
    return BlowupInput{
        base,
        center,
        {parse_polynomial("t", cc), parse_polynomial("-2*(c1 + t)", cc)},
        std::nullopt,
        detail::chern_components(center, {"-(9*c1 + 3*t)", "30*c1^2 + 18*c1*t + 3*t^2 - 4*c2",
                                          "-(32*c1^3 + 32*c1^2*t + 12*c1*t^2 + 2*t^3)"}),
        parse_polynomial("10*u^3 + 22*u^2*v + 16*u*v^2 + 4*v^3", base->context()),
        "w"};
}

/// Real 6-sphere (rationally, one class s of degree 6) blown up at a point.
inline BlowupInput sphere_at_point_input() {
    auto base = detail::presented({"s"}, {6}, {"s^2"}, 6, std::vector<int>{1}, "s6");
    auto point = make_presentation(make_context({}), {}, 0, Reference{Monomial(std::size_t{0}), Rational(1)}, "point");
    auto pc = point->context();
    return BlowupInput{base, point, {Polynomial(pc)}, std::vector<Polynomial>{},
                       {Polynomial(pc), Polynomial(pc), Polynomial(pc)}, base->var("s"), "z"};
}

/// P^9 blown up along the Veronese P^3 (u -> 2y), normal classes from
/// (1+2y)^10 / (1+y)^4.
inline BlowupInput veronese_p9_input() {
    auto base = detail::projective_space(9);
    auto center = detail::presented({"y"}, {2}, {"y^4"}, 6, std::vector<int>{3}, "p3");
    auto bc = base->context();
    auto cc = center->context();
    return BlowupInput{base,
                       center,
                       {parse_polynomial("2*y", cc)},
                       std::vector<Polynomial>{parse_polynomial("1/2*x", bc)},
                       detail::chern_components(center, {"16*y", "110*y^2", "420*y^3", "0", "0", "0"}),
                       parse_polynomial("8*x^6", bc),
                       "z"};
}

}  // namespace enumgeom
