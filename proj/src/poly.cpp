#include "supergeo/poly.hpp"

#include <algorithm>
#include <sstream>

namespace supergeo {

SuperPoly::SuperPoly(ContextPtr ctx, const Rational& c) : ctx_(std::move(ctx)) {
    if (c != 0) {
        SuperMonomial m;
        m.even_exps.assign(ctx_->even_count(), 0);
        m.param_exps.assign(ctx_->param_count(), 0);
        terms_.emplace(std::move(m), c);
    }
}

SuperPoly SuperPoly::variable(const ContextPtr& ctx, const std::string& name, int exp) {
    SuperPoly p(ctx);
    if (exp == 0) return one(ctx);
    SuperMonomial m;
    m.even_exps.assign(ctx->even_count(), 0);
    m.param_exps.assign(ctx->param_count(), 0);
    if (int i = ctx->even_index(name); i >= 0) {
        m.even_exps[i] = exp;
    } else if (int j = ctx->odd_index(name); j >= 0) {
        if (exp > 1) return zero(ctx);  // odd generators square to zero
        if (exp < 0) throw OddInverseError("negative power of odd generator " + name);
        m.odd_mask = std::uint64_t{1} << j;
    } else if (int k = ctx->param_index(name); k >= 0) {
        if (exp < 0) throw ConstraintViolationError("parameter " + name + " is never inverted");
        m.param_exps[k] = exp;
    } else {
        throw UnknownVariableError("variable not declared: " + name);
    }
    p.terms_.emplace(std::move(m), Rational(1));
    return p;
}

Rational SuperPoly::coefficient(const SuperMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

SuperPoly SuperPoly::body() const {
    SuperPoly r(ctx_);
    for (const auto& [m, c] : terms_)
        if (m.odd_mask == 0) r.terms_.emplace(m, c);
    return r;
}

SuperPoly SuperPoly::soul() const {
    SuperPoly r(ctx_);
    for (const auto& [m, c] : terms_)
        if (m.odd_mask != 0) r.terms_.emplace(m, c);
    return r;
}

bool SuperPoly::is_homogeneous(Parity p) const {
    for (const auto& [m, c] : terms_)
        if (m.parity() != p) return false;
    return true;
}

std::optional<Parity> SuperPoly::parity() const {
    if (terms_.empty()) return Parity::Even;
    Parity p = terms_.begin()->first.parity();
    return is_homogeneous(p) ? std::optional<Parity>(p) : std::nullopt;
}

bool SuperPoly::has_negative_even_exponent() const {
    for (const auto& [m, c] : terms_)
        for (int e : m.even_exps)
            if (e < 0) return true;
    return false;
}

int SuperPoly::min_even_exponent(std::size_t var_index) const {
    int lo = 0;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        int e = m.even_exps[var_index];
        if (first || e < lo) lo = e;
        first = false;
    }
    return lo;
}

void SuperPoly::add_term(const SuperMonomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

SuperPoly SuperPoly::operator-() const {
    SuperPoly r(ctx_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

SuperPoly SuperPoly::operator+(const SuperPoly& o) const {
    require_same_context(ctx_, o.ctx_, "SuperPoly::operator+");
    SuperPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

SuperPoly SuperPoly::operator-(const SuperPoly& o) const {
    require_same_context(ctx_, o.ctx_, "SuperPoly::operator-");
    SuperPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

SuperPoly SuperPoly::operator*(const SuperPoly& o) const {
    require_same_context(ctx_, o.ctx_, "SuperPoly::operator*");
    SuperPoly r(ctx_);
    const std::size_t ne = ctx_->even_count(), np = ctx_->param_count();
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            int sign = koszul_sign(ma.odd_mask, mb.odd_mask);
            if (sign == 0) continue;
            SuperMonomial m;
            m.even_exps.resize(ne);
            for (std::size_t i = 0; i < ne; ++i)
                m.even_exps[i] = ma.even_exps[i] + mb.even_exps[i];
            m.param_exps.resize(np);
            for (std::size_t i = 0; i < np; ++i)
                m.param_exps[i] = ma.param_exps[i] + mb.param_exps[i];
            m.odd_mask = ma.odd_mask | mb.odd_mask;
            Rational c = ca * cb;
            if (sign < 0) c = -c;
            r.add_term(m, c);
        }
    }
    return r;
}

SuperPoly SuperPoly::operator*(const Rational& c) const {
    SuperPoly r(ctx_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

bool SuperPoly::operator==(const SuperPoly& o) const {
    return same_context(ctx_, o.ctx_) && terms_ == o.terms_;
}

SuperPoly SuperPoly::pow(unsigned n) const {
    SuperPoly acc = one(ctx_);
    SuperPoly base = *this;
    while (n) {
        if (n & 1) acc = acc * base;
        base = (n >>= 1) ? base * base : base;
    }
    return acc;
}

SuperPoly SuperPoly::partial(const std::string& var) const {
    if (int i = ctx_->even_index(var); i >= 0) {
        SuperPoly r(ctx_);
        for (const auto& [m, c] : terms_) {
            int e = m.even_exps[i];
            if (e == 0) continue;
            SuperMonomial d = m;
            d.even_exps[i] = e - 1;
            r.add_term(d, c * e);
        }
        return r;
    }
    if (int j = ctx_->odd_index(var); j >= 0) {
        const std::uint64_t bit = std::uint64_t{1} << j;
        SuperPoly r(ctx_);
        for (const auto& [m, c] : terms_) {
            if (!(m.odd_mask & bit)) continue;
            SuperMonomial d = m;
            d.odd_mask &= ~bit;
            int s = odd_prefix_sign(m.odd_mask, j);
            r.add_term(d, s < 0 ? -c : c);
        }
        return r;
    }
    throw UnknownVariableError("partial: variable not declared: " + var);
}

SuperPoly SuperPoly::specialize_param(const std::string& name, const Rational& value) const {
    int k = ctx_->param_index(name);
    if (k < 0) throw UnknownVariableError("specialize_param: unknown parameter " + name);
    SuperPoly r(ctx_);
    for (const auto& [m, c] : terms_) {
        SuperMonomial d = m;
        int e = d.param_exps[k];
        d.param_exps[k] = 0;
        Rational scale = c;
        for (int t = 0; t < e; ++t) scale *= value;
        r.add_term(d, scale);
    }
    return r;
}

Rational SuperPoly::eval_body(const std::vector<Rational>& even_values,
                              const std::vector<Rational>& param_values) const {
    if (even_values.size() != ctx_->even_count() ||
        param_values.size() != ctx_->param_count())
        throw ConstraintViolationError("eval_body: wrong number of values");
    Rational acc = 0;
    for (const auto& [m, c] : terms_) {
        if (m.odd_mask != 0) continue;
        Rational t = c;
        for (std::size_t i = 0; i < even_values.size(); ++i) {
            int e = m.even_exps[i];
            if (e == 0) continue;
            if (even_values[i] == 0) {
                if (e < 0)
                    throw ConstraintViolationError("eval_body: negative power at zero");
                t = 0;
                break;
            }
            Rational v = even_values[i];
            if (e < 0) { v = Rational(1) / v; e = -e; }
            for (int k = 0; k < e; ++k) t *= v;
        }
        if (t == 0) { continue; }
        for (std::size_t i = 0; i < param_values.size(); ++i)
            for (int k = 0; k < m.param_exps[i]; ++k) t *= param_values[i];
        acc += t;
    }
    return acc;
}

SuperPoly SuperPoly::shift_even(const std::vector<int>& shifts) const {
    if (shifts.size() != ctx_->even_count())
        throw ConstraintViolationError("shift_even: wrong shift vector size");
    SuperPoly r(ctx_);
    for (const auto& [m, c] : terms_) {
        SuperMonomial d = m;
        for (std::size_t i = 0; i < shifts.size(); ++i) d.even_exps[i] += shifts[i];
        r.terms_.emplace(std::move(d), c);
    }
    return r;
}

std::string SuperPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a < 0) { out << "-"; a = -a; }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        std::vector<std::string> factors;
        for (std::size_t i = 0; i < ctx_->even_count(); ++i) {
            int e = m.even_exps[i];
            if (e == 0) continue;
            factors.push_back(e == 1 ? ctx_->even_names()[i]
                                     : ctx_->even_names()[i] + "^" + std::to_string(e));
        }
        for (std::size_t i = 0; i < ctx_->param_count(); ++i) {
            int e = m.param_exps[i];
            if (e == 0) continue;
            factors.push_back(e == 1 ? ctx_->param_names()[i]
                                     : ctx_->param_names()[i] + "^" + std::to_string(e));
        }
        for (std::size_t j = 0; j < ctx_->odd_count(); ++j)
            if (m.odd_mask & (std::uint64_t{1} << j)) factors.push_back(ctx_->odd_names()[j]);
        if (factors.empty()) {
            out << rational_to_string(a);
        } else {
            if (a != 1) out << rational_to_string(a) << "*";
            for (std::size_t i = 0; i < factors.size(); ++i) {
                if (i) out << "*";
                out << factors[i];
            }
        }
    }
    return out.str();
}

namespace {

// Division inside one odd stratum: both sides are odd-free Laurent polys.
// Shift into the ordinary polynomial ring, then eliminate leading terms in
// the monomial order; exact divisibility means the remainder hits zero.
std::optional<SuperPoly> divide_commutative(const SuperPoly& a, const SuperPoly& d) {
    const ContextPtr& ctx = a.context();
    const std::size_t ne = ctx->even_count();
    std::vector<int> shift(ne, 0);
    for (std::size_t i = 0; i < ne; ++i) {
        int lo = std::min(a.is_zero() ? 0 : a.min_even_exponent(i), d.min_even_exponent(i));
        shift[i] = lo < 0 ? -lo : 0;
    }
    SuperPoly num = a.shift_even(shift);
    SuperPoly den = d.shift_even(shift);
    // Divisor leading term in the map's term order (last entry = maximal).
    const auto& dl = *den.terms().rbegin();
    SuperPoly q(ctx);
    SuperPoly r = num;
    while (!r.is_zero()) {
        const auto& rl = *r.terms().rbegin();
        SuperMonomial qm;
        qm.even_exps.resize(ne);
        for (std::size_t i = 0; i < ne; ++i) {
            int e = rl.first.even_exps[i] - dl.first.even_exps[i];
            if (e < 0) return std::nullopt;
            qm.even_exps[i] = e;
        }
        qm.param_exps.resize(ctx->param_count());
        for (std::size_t i = 0; i < ctx->param_count(); ++i) {
            int e = rl.first.param_exps[i] - dl.first.param_exps[i];
            if (e < 0) return std::nullopt;
            qm.param_exps[i] = e;
        }
        SuperPoly qt(ctx);
        qt.add_term(qm, rl.second / dl.second);
        q = q + qt;
        r = r - qt * den;
    }
    return q;
}

}  // namespace

std::optional<SuperPoly> divide_exact(const SuperPoly& a, const SuperPoly& d) {
    require_same_context(a.context(), d.context(), "divide_exact");
    if (d.is_zero()) throw ConstraintViolationError("divide_exact: zero divisor");
    if (!d.soul().is_zero())
        throw ConstraintViolationError("divide_exact: divisor must be odd-free");
    if (a.is_zero()) return SuperPoly::zero(a.context());

    // Split a by odd mask and divide each stratum independently.
    std::map<std::uint64_t, SuperPoly> strata;
    for (const auto& [m, c] : a.terms()) {
        auto it = strata.find(m.odd_mask);
        if (it == strata.end())
            it = strata.emplace(m.odd_mask, SuperPoly(a.context())).first;
        SuperMonomial bare = m;
        bare.odd_mask = 0;
        it->second.add_term(bare, c);
    }
    SuperPoly result(a.context());
    for (const auto& [mask, part] : strata) {
        auto q = divide_commutative(part, d);
        if (!q) return std::nullopt;
        for (const auto& [m, c] : q->terms()) {
            SuperMonomial withmask = m;
            withmask.odd_mask = mask;
            result.add_term(withmask, c);
        }
    }
    return result;
}

}  // namespace supergeo
