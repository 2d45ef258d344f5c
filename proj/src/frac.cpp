#include "supergeo/frac.hpp"

namespace supergeo {

namespace {

bool depends_on_params(const SuperPoly& p) {
    for (const auto& [m, c] : p.terms())
        for (int e : m.param_exps)
            if (e != 0) return true;
    return false;
}

}  // namespace

SuperFrac::SuperFrac(SuperPoly num)
    : num_(std::move(num)), den_(SuperPoly::one(num_.context())) {
    normalize();
}

SuperFrac::SuperFrac(SuperPoly num, SuperPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
    require_same_context(num_.context(), den_.context(), "SuperFrac");
    if (den_.is_zero()) throw ConstraintViolationError("SuperFrac: zero denominator");

    SuperPoly s = den_.soul();
    if (!s.is_zero()) {
        // Clear nilpotents: multiply through by sum_i (-1)^i b^(N-i) s^i.
        SuperPoly b = den_.body();
        if (b.is_zero())
            throw NonInvertibleBodyError("SuperFrac: denominator body vanishes");
        std::vector<SuperPoly> spow{SuperPoly::one(b.context())};
        while (!spow.back().is_zero()) spow.push_back(spow.back() * s);
        const std::size_t N = spow.size() - 2;  // smallest N with s^(N+1) = 0
        SuperPoly conj = SuperPoly::zero(b.context());
        for (std::size_t i = 0; i <= N; ++i) {
            SuperPoly t = b.pow(static_cast<unsigned>(N - i)) * spow[i];
            conj = (i & 1) ? conj - t : conj + t;
        }
        num_ = num_ * conj;
        den_ = b.pow(static_cast<unsigned>(N + 1));
    }
    if (depends_on_params(den_))
        throw ConstraintViolationError("SuperFrac: parameters are never inverted");
    normalize();
}

void SuperFrac::normalize() {
    const ContextPtr& ctx = num_.context();
    if (num_.is_zero()) {
        den_ = SuperPoly::one(ctx);
        return;
    }
    // Cancel common even-variable monomial content.
    std::vector<int> shift(ctx->even_count(), 0);
    bool any = false;
    for (std::size_t i = 0; i < shift.size(); ++i) {
        int lo = std::min(num_.min_even_exponent(i), den_.min_even_exponent(i));
        if (lo != 0) { shift[i] = -lo; any = true; }
    }
    if (any) {
        num_ = num_.shift_even(shift);
        den_ = den_.shift_even(shift);
    }
    // Make the denominator's leading coefficient 1.
    const Rational& lead = den_.terms().rbegin()->second;
    if (lead != 1) {
        Rational inv = Rational(1) / lead;
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

SuperFrac SuperFrac::operator-() const {
    SuperFrac r(context());
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

SuperFrac SuperFrac::operator+(const SuperFrac& o) const {
    require_same_context(context(), o.context(), "SuperFrac::operator+");
    if (den_ == o.den_) return SuperFrac(num_ + o.num_, den_);
    return SuperFrac(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

SuperFrac SuperFrac::operator-(const SuperFrac& o) const {
    require_same_context(context(), o.context(), "SuperFrac::operator-");
    if (den_ == o.den_) return SuperFrac(num_ - o.num_, den_);
    return SuperFrac(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

SuperFrac SuperFrac::operator*(const SuperFrac& o) const {
    require_same_context(context(), o.context(), "SuperFrac::operator*");
    return SuperFrac(num_ * o.num_, den_ * o.den_);
}

SuperFrac SuperFrac::operator*(const Rational& c) const {
    SuperFrac r(context());
    r.num_ = num_ * c;
    r.den_ = c == 0 ? SuperPoly::one(context()) : den_;
    return r;
}

bool SuperFrac::operator==(const SuperFrac& o) const {
    if (!same_context(context(), o.context())) return false;
    return num_ * o.den_ == o.num_ * den_;
}

SuperFrac SuperFrac::invert_unit() const {
    if (num_.body().is_zero())
        throw NonInvertibleBodyError("invert: body of the element vanishes");
    return SuperFrac(den_, num_);
}

SuperFrac invert_even(const SuperFrac& u) {
    if (!u.num().is_homogeneous(Parity::Even))
        throw OddInverseError("invert_even: element has odd-parity terms");
    return u.invert_unit();
}

SuperFrac SuperFrac::partial(const std::string& var) const {
    const ContextPtr& ctx = context();
    if (ctx->odd_index(var) >= 0) {
        // Denominators are odd-free, so only the numerator differentiates.
        SuperFrac r(ctx);
        r.num_ = num_.partial(var);
        r.den_ = r.num_.is_zero() ? SuperPoly::one(ctx) : den_;
        return r;
    }
    return SuperFrac(num_.partial(var) * den_ - num_ * den_.partial(var), den_ * den_);
}

SuperFrac SuperFrac::specialize_param(const std::string& name, const Rational& value) const {
    SuperFrac r(context());
    r.num_ = num_.specialize_param(name, value);
    r.den_ = den_;  // denominators are parameter-free
    r.normalize();
    return r;
}

SuperFrac SuperFrac::body() const {
    SuperFrac r(context());
    r.num_ = num_.body();
    r.den_ = r.num_.is_zero() ? SuperPoly::one(context()) : den_;
    return r;
}

std::optional<SuperPoly> SuperFrac::as_laurent_polynomial() const {
    if (num_.is_zero()) return SuperPoly::zero(context());
    if (den_.term_count() == 1) {
        const auto& [m, c] = *den_.terms().begin();
        if (m.odd_mask != 0) return std::nullopt;  // cannot happen by invariant
        std::vector<int> shift(m.even_exps.size());
        for (std::size_t i = 0; i < shift.size(); ++i) shift[i] = -m.even_exps[i];
        return num_.shift_even(shift) * (Rational(1) / c);
    }
    return divide_exact(num_, den_);
}

Rational SuperFrac::eval_body(const std::vector<Rational>& even_values,
                              const std::vector<Rational>& param_values) const {
    Rational d = den_.eval_body(even_values, param_values);
    if (d == 0)
        throw ConstraintViolationError("eval_body: denominator vanishes at the point");
    return num_.eval_body(even_values, param_values) / d;
}

std::string SuperFrac::to_string() const {
    if (den_ == SuperPoly::one(context())) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace supergeo
