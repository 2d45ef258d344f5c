#pragma once

#include <optional>
#include <string>

#include "supergeo/poly.hpp"

namespace supergeo {

/// Quotient num/den of SuperPoly values.  Class invariant maintained by every
/// constructor: den is nonzero, odd-free (no odd generator appears at all)
/// and parameter-free, so it lives in the commutative Laurent subring where
/// nonzero elements are regular.  A denominator given with nilpotent terms is
/// rationalized on construction by the terminating conjugate series
///   (b + s) * sum_i (-1)^i b^(N-i) s^i = b^(N+1),   s^(N+1) = 0.
/// Equality is by cross-multiplication, which the regularity of denominators
/// makes a genuine equivalence.
class SuperFrac {
public:
    explicit SuperFrac(const ContextPtr& ctx)
        : num_(SuperPoly::zero(ctx)), den_(SuperPoly::one(ctx)) {}
    SuperFrac(const ContextPtr& ctx, const Rational& c)
        : num_(SuperPoly::constant(ctx, c)), den_(SuperPoly::one(ctx)) {}
    explicit SuperFrac(SuperPoly num);
    SuperFrac(SuperPoly num, SuperPoly den);

    static SuperFrac zero(const ContextPtr& ctx) { return SuperFrac(ctx); }
    static SuperFrac one(const ContextPtr& ctx) { return SuperFrac(ctx, 1); }
    static SuperFrac variable(const ContextPtr& ctx, const std::string& name,
                              int exp = 1) {
        return SuperFrac(SuperPoly::variable(ctx, name, exp));
    }

    const SuperPoly& num() const { return num_; }
    const SuperPoly& den() const { return den_; }
    const ContextPtr& context() const { return num_.context(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }
    std::optional<Parity> parity() const { return num_.parity(); }
    bool is_homogeneous(Parity p) const { return num_.is_homogeneous(p); }

    SuperFrac operator-() const;
    SuperFrac operator+(const SuperFrac& o) const;
    SuperFrac operator-(const SuperFrac& o) const;
    SuperFrac operator*(const SuperFrac& o) const;
    SuperFrac operator*(const Rational& c) const;
    bool operator==(const SuperFrac& o) const;
    bool operator!=(const SuperFrac& o) const { return !(*this == o); }

    // Multiplicative inverse for elements with invertible body, regardless of
    // how the soul terms sit; throws NonInvertibleBodyError otherwise.
    SuperFrac invert_unit() const;

    // Left partial derivative; quotient rule on even variables.
    SuperFrac partial(const std::string& var) const;

    SuperFrac specialize_param(const std::string& name, const Rational& value) const;

    // Nilpotent-free part num.body()/den as a fraction.
    SuperFrac body() const;

    // When this value is a Laurent polynomial (denominator a unit monomial,
    // or dividing the numerator exactly), return it; otherwise nullopt.
    std::optional<SuperPoly> as_laurent_polynomial() const;

    // Evaluate the body at a rational point (odd generators to zero).
    Rational eval_body(const std::vector<Rational>& even_values,
                       const std::vector<Rational>& param_values) const;

    std::string to_string() const;

private:
    void normalize();

    SuperPoly num_, den_;
};

inline SuperFrac operator*(const Rational& c, const SuperFrac& f) { return f * c; }

// Checked inverse of a parity-even fraction: throws OddInverseError when odd
// terms are present, NonInvertibleBodyError when the body vanishes.
SuperFrac invert_even(const SuperFrac& u);

}  // namespace supergeo
