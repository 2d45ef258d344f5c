#include "supergeo/cohomology.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdlib>
#include <map>

#include "supergeo/linalg.hpp"

namespace supergeo {

namespace {

long binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void check_degree(int q, int top, const char* who) {
    if (q < 0 || q > top)
        throw ConstraintViolationError(std::string(who) + ": degree " + std::to_string(q) +
                                       " outside 0.." + std::to_string(top));
}

// Count exponent vectors over the slots [0, slots) with each entry >= lo
// (and <= hi when bounded) summing to total, by direct enumeration.
long count_exponents(int slots, long total, long lo, std::optional<long> hi) {
    if (slots == 0) return total == 0 ? 1 : 0;
    long count = 0;
    const long top = hi ? *hi : total - lo * (slots - 1);
    for (long e = lo; e <= top; ++e)
        count += count_exponents(slots - 1, total - e, lo, hi);
    return count;
}

// Alternating complex of the sets S with N included in S included in V,
// |V| = n+1, graded by p = |S| - 1: returns dim H^q computed by ranks of the
// explicit face-sum differentials.
long subset_complex_h(int n, unsigned mask_n, int q) {
    const unsigned full = (1u << (n + 1)) - 1u;
    std::vector<std::vector<unsigned>> grade(static_cast<std::size_t>(n) + 1);
    for (unsigned s = 0; s <= full; ++s) {
        if ((s & mask_n) != mask_n || s == 0) continue;
        grade[static_cast<std::size_t>(std::popcount(s)) - 1].push_back(s);
    }

    auto delta_rank = [&](int p) -> std::size_t {
        if (p < 0 || p >= n) return 0;
        const auto& src = grade[static_cast<std::size_t>(p)];
        const auto& dst = grade[static_cast<std::size_t>(p) + 1];
        if (src.empty() || dst.empty()) return 0;
        std::map<unsigned, std::size_t> src_col;
        for (std::size_t c = 0; c < src.size(); ++c) src_col.emplace(src[c], c);
        QMat m(dst.size(), QVec(src.size(), Rational(0)));
        for (std::size_t r = 0; r < dst.size(); ++r) {
            int pos = 0;
            for (int v = 0; v <= n; ++v) {
                const unsigned bit = 1u << v;
                if (!(dst[r] & bit)) continue;
                if (!(mask_n & bit)) {
                    auto it = src_col.find(dst[r] & ~bit);
                    if (it != src_col.end())
                        m[r][it->second] = Rational(pos % 2 == 0 ? 1 : -1);
                }
                ++pos;
            }
        }
        return rank(m);
    };

    const long dim_q = static_cast<long>(grade[static_cast<std::size_t>(q)].size());
    return dim_q - static_cast<long>(delta_rank(q)) - static_cast<long>(delta_rank(q - 1));
}

}  // namespace

int space_dim(Space s) { return s == Space::P1 ? 1 : 2; }

long h_line(int n, int d, int q) {
    if (n < 0) throw ConstraintViolationError("h_line: negative ambient dimension");
    check_degree(q, n, "h_line");
    if (q == 0 && d >= 0) return binom(n + d, n);
    if (q == n && d <= -n - 1) return binom(-d - 1, n);
    return 0;
}

long h_line_cech(int n, int d, int q) {
    if (n < 0) throw ConstraintViolationError("h_line_cech: negative ambient dimension");
    check_degree(q, n, "h_line_cech");
    if (n > 3 || std::abs(d) > 12)
        throw ResourceCapError("h_line_cech: supports n <= 3 and |d| <= 12");

    // The differential preserves each Laurent monomial, so the complex is a
    // direct sum over sign patterns N = {variables with negative exponent};
    // a pattern contributes its subset-complex cohomology once per monomial.
    long total = 0;
    const unsigned full = (1u << (n + 1)) - 1u;
    for (unsigned mask = 0; mask <= full; ++mask) {
        const long h = subset_complex_h(n, mask, q);
        if (h == 0) continue;
        long monomials = 0;
        if (mask == 0) {
            monomials = count_exponents(n + 1, d, 0, std::nullopt);
        } else if (mask == full) {
            monomials = count_exponents(n + 1, d, d + n, -1);
        } else {
            // Mixed patterns hold infinitely many monomials; their complex
            // is exact, so a nonzero h here cannot be accounted for.
            throw Error("h_line_cech: cohomology on an unbounded sign pattern");
        }
        total += monomials * h;
    }
    return total;
}

long h_product(int d1, int d2, int q) {
    check_degree(q, 2, "h_product");
    long total = 0;
    for (int i = 0; i <= q; ++i)
        if (i <= 1 && q - i <= 1) total += h_line(1, d1, i) * h_line(1, d2, q - i);
    return total;
}

namespace {

struct Propagated {
    std::vector<std::optional<long>> dims;
    std::vector<std::optional<long>> ranks;
};

// Forced propagation of exactness: dim t_i = r_i + r_{i+1} with r_0 and
// r_{k+1} zero at the closed ends, every rank nonnegative.
Propagated propagate(const std::vector<std::optional<long>>& dims) {
    Propagated st;
    st.dims = dims;
    st.ranks.assign(dims.size() + 1, std::nullopt);
    if (dims.empty()) return st;
    st.ranks.front() = 0;
    st.ranks.back() = 0;

    auto set_rank = [&](std::size_t i, long v) {
        if (v < 0) throw ConstraintViolationError("exact sequence forces a negative rank");
        if (st.ranks[i] && *st.ranks[i] != v)
            throw ConstraintViolationError("exact sequence is inconsistent");
        if (!st.ranks[i]) {
            st.ranks[i] = v;
            return true;
        }
        return false;
    };

    for (const auto& d : dims)
        if (d && *d < 0) throw ConstraintViolationError("negative dimension in exact sequence");

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < st.dims.size(); ++i) {
            const auto& d = st.dims[i];
            if (d) {
                if (*d == 0) {
                    changed |= set_rank(i, 0);
                    changed |= set_rank(i + 1, 0);
                } else if (st.ranks[i]) {
                    changed |= set_rank(i + 1, *d - *st.ranks[i]);
                } else if (st.ranks[i + 1]) {
                    changed |= set_rank(i, *d - *st.ranks[i + 1]);
                }
            } else if (st.ranks[i] && st.ranks[i + 1]) {
                st.dims[i] = *st.ranks[i] + *st.ranks[i + 1];
                changed = true;
            }
        }
    }
    return st;
}

}  // namespace

std::vector<long> les_solve(const std::vector<std::optional<long>>& dims) {
    const Propagated st = propagate(dims);
    std::vector<long> out;
    out.reserve(dims.size());
    for (const auto& d : st.dims) {
        if (!d)
            throw AmbiguousExactSequenceError(
                "exact sequence does not force every unknown dimension");
        out.push_back(*d);
    }
    return out;
}

long h_tangent_twist(int d, int q) {
    check_degree(q, 2, "h_tangent_twist");
    std::vector<std::optional<long>> dims;
    for (int deg = 0; deg <= 2; ++deg) {
        dims.emplace_back(h_line(2, d, deg));
        dims.emplace_back(3 * h_line(2, d + 1, deg));
        dims.emplace_back(std::nullopt);
    }
    const Propagated st = propagate(dims);
    const auto& value = st.dims[static_cast<std::size_t>(3 * q) + 2];
    if (!value)
        throw AmbiguousExactSequenceError("tangent twist " + std::to_string(d) + " in degree " +
                                          std::to_string(q) +
                                          " is not forced by the Euler sequence");
    return *value;
}

namespace {

long atom_value(const SheafAtom& a, int q) {
    if (q > space_dim(a.space)) return 0;
    switch (a.space) {
        case Space::P1:
            // The tangent sheaf of a line is its degree-2 twisting sheaf.
            return h_line(1, a.tangent ? a.d1 + 2 : a.d1, q);
        case Space::P2:
            return a.tangent ? h_tangent_twist(a.d1, q) : h_line(2, a.d1, q);
        case Space::P1xP1:
            if (a.tangent)
                throw ConstraintViolationError("eval_sheaf: tangent atoms live on P1 or P2");
            return h_product(a.d1, a.d2, q);
    }
    throw Error("eval_sheaf: unsupported atom");
}

}  // namespace

SuperDim eval_sheaf(const SheafExpr& e, int q) {
    if (q < 0) throw ConstraintViolationError("eval_sheaf: negative degree");
    SuperDim total;
    for (const SheafAtom& a : e.atoms) {
        if (a.multiplicity < 0)
            throw ConstraintViolationError("eval_sheaf: negative multiplicity");
        const long v = a.multiplicity * atom_value(a, q);
        (a.pi ? total.odd : total.even) += v;
    }
    return total;
}

CohomologyTable sheaf_table(const SheafExpr& e) {
    int top = -1;
    for (const SheafAtom& a : e.atoms) top = std::max(top, space_dim(a.space));
    CohomologyTable table;
    for (int q = 0; q <= top; ++q) table.h.push_back(eval_sheaf(e, q));
    return table;
}

namespace {

struct Lexer {
    std::string text;
    std::size_t pos = 0;

    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip();
        return pos >= text.size();
    }
    bool eat(char c) {
        skip();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool eat_word(const std::string& w) {
        skip();
        if (text.compare(pos, w.size(), w) != 0) return false;
        const std::size_t end = pos + w.size();
        if (end < text.size() && (std::isalnum(static_cast<unsigned char>(text[end]))))
            return false;
        pos = end;
        return true;
    }
    int integer() {
        skip();
        const std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
            throw ParseError("sheaf expression: expected an integer at '" + text.substr(start) +
                             "'");
        return std::stoi(text.substr(start, pos - start));
    }
};

SheafAtom parse_atom(Lexer& lx) {
    SheafAtom atom;
    lx.skip();
    const std::size_t mark = lx.pos;
    const int first = [&] {
        // Optional multiplicity prefix "k*".
        if (lx.pos < lx.text.size() && std::isdigit(static_cast<unsigned char>(lx.text[lx.pos]))) {
            const int k = lx.integer();
            if (lx.eat('*')) return k;
            lx.pos = mark;
        }
        return 1;
    }();
    atom.multiplicity = first;
    while (lx.eat_word("Pi")) atom.pi = !atom.pi;
    if (lx.eat_word("T"))
        atom.tangent = true;
    else if (!lx.eat_word("O"))
        throw ParseError("sheaf expression: expected O(...) or T(...)");
    if (!lx.eat('(')) throw ParseError("sheaf expression: expected '('");
    atom.d1 = lx.integer();
    if (lx.eat(',')) {
        if (atom.tangent) throw ParseError("sheaf expression: T takes a single twist");
        atom.d2 = lx.integer();
        atom.space = Space::P1xP1;
    }
    if (!lx.eat(')')) throw ParseError("sheaf expression: expected ')'");
    return atom;
}

}  // namespace

SheafExpr parse_sheaf(const std::string& text) {
    Lexer lx{text};
    SheafExpr e;
    std::vector<bool> twin;
    do {
        SheafAtom atom = parse_atom(lx);
        twin.push_back(atom.space == Space::P1xP1);
        e.atoms.push_back(atom);
    } while (lx.eat('+'));
    if (!lx.eat_word("on")) throw ParseError("sheaf expression: expected 'on <space>'");
    Space space = Space::P2;
    if (lx.eat_word("P1xP1"))
        space = Space::P1xP1;
    else if (lx.eat_word("P1"))
        space = Space::P1;
    else if (lx.eat_word("P2"))
        space = Space::P2;
    else
        throw ParseError("sheaf expression: unknown space");
    if (!lx.done()) throw ParseError("sheaf expression: trailing input");

    for (std::size_t i = 0; i < e.atoms.size(); ++i) {
        SheafAtom& a = e.atoms[i];
        if (twin[i] != (space == Space::P1xP1))
            throw ParseError("sheaf expression: twist arity does not match the space");
        a.space = space;
        if (a.tangent && space == Space::P1xP1)
            throw ParseError("sheaf expression: tangent atoms live on P1 or P2");
    }
    return e;
}

}  // namespace supergeo
