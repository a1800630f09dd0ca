#pragma once

#include "enumgeom/quotient.hpp"

#include <span>
#include <string>
#include <vector>

namespace enumgeom {

/// Degree-truncated sum of homogeneous classes in a presented ring.
/// Component k lives in cohomological degree 2k and is kept in normal form;
/// nothing above the ring's top degree is stored. Component 0 is the rank.
class GradedSeries {
public:
    explicit GradedSeries(Ring ring) : ring_(std::move(ring)) {
        parts_.assign(static_cast<std::size_t>(ring_->top_degree() / 2 + 1), ring_->zero());
    }

    /// Splits p by weighted degree, truncating above the top degree.
    static GradedSeries from_polynomial(Ring ring, const Polynomial& p) {
        GradedSeries s(std::move(ring));
        for (auto& [deg, part] : weighted_degree_split(p)) {
            if (deg % 2 != 0) throw DegreeError("graded series components must have even degree");
            if (deg > s.ring_->top_degree()) continue;
            s.parts_[deg / 2] = s.ring_->reduce(part);
        }
        return s;
    }

    /// components[k] must be homogeneous of degree 2k (or zero).
    static GradedSeries from_components(Ring ring, std::span<const Polynomial> components) {
        GradedSeries s(std::move(ring));
        for (std::size_t k = 0; k < components.size(); ++k) {
            if (components[k].is_zero()) continue;
            auto d = components[k].homogeneous_degree();
            if (!d || *d != 2 * static_cast<int>(k))
                throw DegreeError("component " + std::to_string(k) + " is not homogeneous of degree " +
                                  std::to_string(2 * k));
            if (k < s.parts_.size()) s.parts_[k] = s.ring_->reduce(components[k]);
        }
        return s;
    }

    const Ring& ring() const noexcept { return ring_; }
    std::size_t length() const noexcept { return parts_.size(); }
    const Polynomial& operator[](std::size_t k) const { return parts_.at(k); }
    Rational rank() const { return parts_[0].constant_term(); }

    Polynomial total() const {
        Polynomial t = ring_->zero();
        for (const auto& p : parts_) t += p;
        return t;
    }

    void set(std::size_t k, const Polynomial& p) {
        if (!p.is_zero()) {
            auto d = p.homogeneous_degree();
            if (!d || *d != 2 * static_cast<int>(k)) throw DegreeError("component has the wrong degree");
        }
        parts_.at(k) = ring_->reduce(p);
    }

    friend GradedSeries operator+(const GradedSeries& a, const GradedSeries& b) {
        check_same(a, b);
        GradedSeries r(a.ring_);
        for (std::size_t k = 0; k < a.parts_.size(); ++k) r.parts_[k] = a.parts_[k] + b.parts_[k];
        return r;
    }
    friend GradedSeries operator-(const GradedSeries& a, const GradedSeries& b) {
        check_same(a, b);
        GradedSeries r(a.ring_);
        for (std::size_t k = 0; k < a.parts_.size(); ++k) r.parts_[k] = a.parts_[k] - b.parts_[k];
        return r;
    }
    friend GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) {
        check_same(a, b);
        GradedSeries r(a.ring_);
        for (std::size_t k = 0; k < a.parts_.size(); ++k) {
            Polynomial acc = a.ring_->zero();
            for (std::size_t i = 0; i <= k; ++i)
                if (!a.parts_[i].is_zero() && !b.parts_[k - i].is_zero()) acc += a.parts_[i] * b.parts_[k - i];
            r.parts_[k] = a.ring_->reduce(acc);
        }
        return r;
    }
    friend GradedSeries operator*(const Rational& s, const GradedSeries& a) {
        GradedSeries r(a.ring_);
        for (std::size_t k = 0; k < a.parts_.size(); ++k) r.parts_[k] = a.parts_[k] * s;
        return r;
    }

    friend bool operator==(const GradedSeries& a, const GradedSeries& b) {
        return a.ring_ == b.ring_ && a.parts_ == b.parts_;
    }

    std::string str() const {
        std::string out;
        for (std::size_t k = 0; k < parts_.size(); ++k) {
            if (parts_[k].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + parts_[k].str() + ")";
        }
        return out.empty() ? "0" : out;
    }

private:
    static void check_same(const GradedSeries& a, const GradedSeries& b) {
        if (a.ring_ != b.ring_) throw ContextMismatch("graded series over different rings");
    }

    Ring ring_;
    std::vector<Polynomial> parts_;
};

/// Context e_1..e_n of elementary symmetric functions, e_i of weight 2i.
inline Context elementary_symmetric_context(unsigned n) {
    std::vector<std::string> names;
    std::vector<int> weights;
    for (unsigned i = 1; i <= n; ++i) {
        names.push_back("e" + std::to_string(i));
        weights.push_back(2 * static_cast<int>(i));
    }
    return make_context(std::move(names), std::move(weights));
}

/// s_k(e_1..e_n) = t_1^k + ... + t_n^k, by Newton's recurrence
/// s_k = e_1 s_{k-1} - e_2 s_{k-2} + ... + (-1)^{k-1} k e_k  (e_i = 0 for i > n).
inline Polynomial newton_polynomial(unsigned k, unsigned n) {
    if (k == 0 || n == 0) throw std::invalid_argument("newton_polynomial needs k >= 1 and n >= 1");
    auto ctx = elementary_symmetric_context(n);
    auto e = [&](unsigned i) {
        return i <= n ? Polynomial::variable(ctx, i - 1) : Polynomial(ctx);
    };
    std::vector<Polynomial> s{Polynomial(ctx)};
    for (unsigned j = 1; j <= k; ++j) {
        Polynomial sj = e(j) * Rational(static_cast<long>(j) * ((j % 2 == 1) ? 1 : -1));
        for (unsigned i = 1; i < j; ++i) {
            Polynomial t = e(i) * s[j - i];
            sj += (i % 2 == 1) ? t : -t;
        }
        s.push_back(std::move(sj));
    }
    return s[k];
}

/// Ch(ξ) = rank + Σ s_k(c_1, c_2, ...)/k!, truncated at the ring's top degree.
inline GradedSeries character_from_chern(const GradedSeries& c, const Rational& rank) {
    if (!(c[0] == c.ring()->one())) throw MathError("total Chern class must start with 1");
    const auto& ring = c.ring();
    std::size_t len = c.length();
    std::vector<Polynomial> p(len, ring->zero());  // power sums
    GradedSeries ch(ring);
    ch.set(0, ring->constant(rank));
    for (std::size_t k = 1; k < len; ++k) {
        Polynomial pk = c[k] * Rational(static_cast<long>(k) * ((k % 2 == 1) ? 1 : -1));
        for (std::size_t i = 1; i < k; ++i) {
            Polynomial t = c[i] * p[k - i];
            pk += (i % 2 == 1) ? t : -t;
        }
        p[k] = ring->reduce(pk);
        ch.set(k, p[k] * factorial(static_cast<unsigned>(k)).inverse());
    }
    return ch;
}

/// Inverse of character_from_chern: e_k = (1/k) Σ_{i=1..k} (-1)^{i-1} e_{k-i} p_i
/// with p_i = i!·ch_i.
inline GradedSeries chern_from_character(const GradedSeries& ch) {
    const auto& ring = ch.ring();
    std::size_t len = ch.length();
    std::vector<Polynomial> p(len, ring->zero());
    for (std::size_t i = 1; i < len; ++i) p[i] = ch[i] * factorial(static_cast<unsigned>(i));
    GradedSeries c(ring);
    c.set(0, ring->one());
    for (std::size_t k = 1; k < len; ++k) {
        Polynomial acc = ring->zero();
        for (std::size_t i = 1; i <= k; ++i) {
            Polynomial t = c[k - i] * p[i];
            acc += (i % 2 == 1) ? t : -t;
        }
        c.set(k, acc * Rational(1, static_cast<long>(k)));
    }
    return c;
}

/// e^{±x} truncated at the top degree; x homogeneous of degree 2.
inline GradedSeries exp_class(const Ring& ring, const Polynomial& x, int sign = 1) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("exp_class sign must be +1 or -1");
    if (!x.is_zero()) {
        auto d = x.homogeneous_degree();
        if (!d || *d != 2) throw DegreeError("exp_class argument must be homogeneous of degree 2");
    }
    GradedSeries s(ring);
    Polynomial sx = x * Rational(sign);
    Polynomial power = ring->one();
    for (std::size_t j = 0; j < s.length(); ++j) {
        s.set(j, power * factorial(static_cast<unsigned>(j)).inverse());
        power = ring->reduce(power * sx);
    }
    return s;
}

/// Transports a series along generator images (a ring map or a section).
inline GradedSeries pull_back(const GradedSeries& s, std::span<const Polynomial> images, const Ring& target) {
    GradedSeries out(target);
    for (std::size_t k = 0; k < std::min(s.length(), out.length()); ++k)
        out.set(k, substitute(s[k], images, target->context()));
    return out;
}

/// Images of base variables as the same-named variables of a larger ring.
inline std::vector<Polynomial> inclusion_images(const VariableContext& base, const Ring& target) {
    std::vector<Polynomial> out;
    for (const auto& n : base.names()) out.push_back(target->var(n));
    return out;
}

/// C(P(α)) = π*C(N)·G with G = Σ_{i=0..m} (1+t)^{m-i} π*c_i, for a rank-m
/// bundle α with Chern classes c_1..c_m on N, and t the new generator.
inline GradedSeries projective_bundle_chern(const GradedSeries& base_chern,
                                            std::span<const Polynomial> bundle_chern,
                                            const Ring& bundle_ring, std::string_view t_name) {
    const auto& base_ctx = *base_chern.ring()->context();
    auto pi = inclusion_images(base_ctx, bundle_ring);
    std::size_t m = bundle_chern.size();
    if (m == 0) throw std::invalid_argument("bundle of rank 0");
    Polynomial one_plus_t = bundle_ring->one() + bundle_ring->var(t_name);
    Polynomial g = bundle_ring->zero();
    for (std::size_t i = 0; i <= m; ++i) {
        Polynomial ci = bundle_ring->one();
        if (i > 0) {
            const auto& c = bundle_chern[i - 1];
            if (!c.is_zero()) {
                auto d = c.homogeneous_degree();
                if (!d || *d != 2 * static_cast<int>(i))
                    throw DegreeError("bundle Chern class c_" + std::to_string(i) + " has the wrong degree");
            }
            ci = substitute(c, pi, bundle_ring->context());
        }
        g += one_plus_t.pow(static_cast<unsigned>(m - i)) * ci;
    }
    return pull_back(base_chern, pi, bundle_ring) * GradedSeries::from_polynomial(bundle_ring, g);
}

/// Ch(τ_P(α)) = π*Ch(τ_N) + e^t·π*Ch(α) - 1.
inline GradedSeries projective_bundle_character(const GradedSeries& base_character,
                                                const GradedSeries& bundle_character,
                                                const Ring& bundle_ring, std::string_view t_name) {
    auto pi = inclusion_images(*base_character.ring()->context(), bundle_ring);
    auto one = GradedSeries::from_polynomial(bundle_ring, bundle_ring->one());
    return pull_back(base_character, pi, bundle_ring) +
           exp_class(bundle_ring, bundle_ring->var(t_name)) * pull_back(bundle_character, pi, bundle_ring) -
           one;
}

/// Ch(τ_M~) = f*Ch(τ_M) + (e^{-ω_E} - 1)(Ch(γ_X) - e^{ω_E}).
///
/// `ch_normal` is Ch(γ_X) already written in blow-up generators through a
/// section; that is only meaningful on multiples of ω_E, so the ω_E-divisible
/// factor (e^{-ω_E} - 1) multiplies it before any reduction mixes terms.
inline GradedSeries blowup_character(const Ring& blowup_ring, const GradedSeries& ch_M,
                                     const GradedSeries& ch_normal, const Polynomial& omega_E) {
    auto d = omega_E.homogeneous_degree();
    if (!d || *d != 2) throw DegreeError("exceptional class must be homogeneous of degree 2");
    if (ch_M.ring() != blowup_ring || ch_normal.ring() != blowup_ring)
        throw ContextMismatch("series must live in the blow-up ring");
    auto one = GradedSeries::from_polynomial(blowup_ring, blowup_ring->one());
    auto divisible = exp_class(blowup_ring, omega_E, -1) - one;
    auto correction = divisible * (ch_normal - exp_class(blowup_ring, omega_E, 1));
    return ch_M + correction;
}

inline GradedSeries blowup_chern_classes(const Ring& blowup_ring, const GradedSeries& ch_M,
                                         const GradedSeries& ch_normal, const Polynomial& omega_E) {
    return chern_from_character(blowup_character(blowup_ring, ch_M, ch_normal, omega_E));
}

}  // namespace enumgeom
