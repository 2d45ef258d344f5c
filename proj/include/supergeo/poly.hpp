#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "supergeo/monomial.hpp"
#include "supergeo/rational.hpp"

namespace supergeo {

/// Element of the supercommutative Laurent ring
///   Q[params][even^{+-1}] (x) Lambda(odd),
/// stored as a sorted term map with exact rational coefficients.  Zero
/// coefficients are never stored, so structural equality is ring equality.
/// Values are immutable in practice: every operation returns a new poly.
class SuperPoly {
public:
    using TermMap = std::map<SuperMonomial, Rational>;

    explicit SuperPoly(ContextPtr ctx) : ctx_(std::move(ctx)) {}
    SuperPoly(ContextPtr ctx, const Rational& c);

    static SuperPoly zero(const ContextPtr& ctx) { return SuperPoly(ctx); }
    static SuperPoly constant(const ContextPtr& ctx, const Rational& c) {
        return SuperPoly(ctx, c);
    }
    static SuperPoly one(const ContextPtr& ctx) { return SuperPoly(ctx, 1); }
    // Any declared generator or parameter by name, with an integer exponent
    // (negative only for even variables).
    static SuperPoly variable(const ContextPtr& ctx, const std::string& name,
                              int exp = 1);

    const ContextPtr& context() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
    }
    std::size_t term_count() const { return terms_.size(); }

    Rational coefficient(const SuperMonomial& m) const;

    // Nilpotent-free part: the terms with no odd factors.
    SuperPoly body() const;
    // Complement of body(): every term containing at least one odd factor.
    SuperPoly soul() const;

    bool is_homogeneous(Parity p) const;
    // Parity when homogeneous (zero counts as both); nullopt for mixed terms.
    std::optional<Parity> parity() const;

    bool has_negative_even_exponent() const;
    int min_even_exponent(std::size_t var_index) const;  // 0 when zero poly

    SuperPoly operator-() const;
    SuperPoly operator+(const SuperPoly& o) const;
    SuperPoly operator-(const SuperPoly& o) const;
    SuperPoly operator*(const SuperPoly& o) const;
    SuperPoly operator*(const Rational& c) const;
    bool operator==(const SuperPoly& o) const;
    bool operator!=(const SuperPoly& o) const { return !(*this == o); }

    SuperPoly pow(unsigned n) const;

    // Left partial derivative by a declared even or odd variable.  Odd
    // derivative: commute the factor to the front, then delete it.  Even
    // derivative handles Laurent exponents (d/dz z^-k = -k z^-k-1).
    SuperPoly partial(const std::string& var) const;

    // Substitute a rational value for a parameter (e.g. a concrete lambda).
    // The parameter stays declared in the context.
    SuperPoly specialize_param(const std::string& name, const Rational& value) const;

    // Evaluate even variables at rational points and kill all odd generators.
    // Every even variable must be assigned; used for body evaluation.
    Rational eval_body(const std::vector<Rational>& even_values,
                       const std::vector<Rational>& param_values) const;

    // Multiply by the Laurent monomial with the given even exponent shifts.
    SuperPoly shift_even(const std::vector<int>& shifts) const;

    void add_term(const SuperMonomial& m, const Rational& c);  // used by builders

    std::string to_string() const;

private:
    ContextPtr ctx_;
    TermMap terms_;
};

inline SuperPoly operator*(const Rational& c, const SuperPoly& p) { return p * c; }

// Exact division a / d in the commutative part of the ring: d must be
// nonzero and odd-free; each odd stratum of a is divided separately.
// Returns nullopt when d does not divide a exactly.
std::optional<SuperPoly> divide_exact(const SuperPoly& a, const SuperPoly& d);

}  // namespace supergeo
