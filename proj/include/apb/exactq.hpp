#pragma once

// Exact scalars (Gaussian rationals over GMP fractions) and sparse
// multivariate polynomials with a packed graded-lex monomial order.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "apb/errors.hpp"

namespace apb {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
    if (den == 0)
        throw DomainError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p", "p/q" or "-p/q". Rejects q = 0 and anything else.
inline Rational parse_rational(std::string_view text)
{
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+'))
            s.remove_prefix(1);
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+')
        throw DomainError("malformed rational '" + std::string(text) + "'");
    mpz_class n{std::string(num.front() == '+' ? num.substr(1) : num)};
    mpz_class d{std::string(den)};
    if (d == 0)
        throw DomainError("rational with zero denominator '" + std::string(text) + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

/// Complex number with exact rational real and imaginary parts.
class GaussRational {
public:
    GaussRational() = default;
    GaussRational(long n) : re_(n) {}
    GaussRational(Rational re) : re_(std::move(re)) {}
    GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_real() const { return sgn(im_) == 0; }
    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return is_real() && re_ == 1; }

    GaussRational conj() const { return {re_, -im_}; }

    GaussRational operator-() const { return {-re_, -im_}; }

    GaussRational& operator+=(const GaussRational& o)
    {
        re_ += o.re_;
        if (sgn(o.im_) != 0)
            im_ += o.im_;
        return *this;
    }
    GaussRational& operator-=(const GaussRational& o)
    {
        re_ -= o.re_;
        if (sgn(o.im_) != 0)
            im_ -= o.im_;
        return *this;
    }
    GaussRational& operator*=(const GaussRational& o)
    {
        if (is_real() && o.is_real()) {
            re_ *= o.re_;
            return *this;
        }
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }
    GaussRational& operator/=(const GaussRational& o)
    {
        if (o.is_zero())
            throw DomainError("division by zero");
        if (o.is_real()) {
            re_ /= o.re_;
            if (sgn(im_) != 0)
                im_ /= o.re_;
            return *this;
        }
        const Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
        *this *= o.conj();
        re_ /= norm;
        im_ /= norm;
        return *this;
    }

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }

    friend bool operator==(const GaussRational& a, const GaussRational& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

    /// "1/6", "-i", "3/2*i", "1/2-2*i".
    std::string str() const
    {
        if (is_real())
            return re_.get_str();
        std::string imag;
        const Rational mag = abs(im_);
        imag = mag == 1 ? "i" : mag.get_str() + "*i";
        if (sgn(re_) == 0)
            return (sgn(im_) < 0 ? "-" : "") + imag;
        return re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + imag;
    }

    /// Inverse of str(); also accepts plain "p/q".
    static GaussRational parse(std::string_view text);

private:
    Rational re_{0};
    Rational im_{0};
};

inline GaussRational pow(const GaussRational& base, unsigned e)
{
    GaussRational r(1);
    GaussRational b = base;
    while (e != 0) {
        if (e & 1U)
            r *= b;
        e >>= 1U;
        if (e != 0)
            b *= b;
    }
    return r;
}

inline std::ostream& operator<<(std::ostream& os, const GaussRational& g) { return os << g.str(); }

// ---------------------------------------------------------------------------
// Variable sets

inline constexpr std::size_t max_vars = 8;

/// Ordered list of variable names; exponent vectors index into this order.
class VarSet {
public:
    explicit VarSet(std::vector<std::string> names)
    {
        if (names.empty() || names.size() > max_vars)
            throw VariableError("a variable set holds between 1 and 8 names");
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i].empty() || names[i] == "i" || !std::isalpha(static_cast<unsigned char>(names[i][0])))
                throw VariableError("invalid variable name '" + names[i] + "'");
            for (std::size_t j = 0; j < i; ++j)
                if (names[i] == names[j])
                    throw VariableError("duplicate variable name '" + names[i] + "'");
        }
        names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
    }

    std::size_t size() const { return names_->size(); }
    const std::string& name(std::size_t slot) const { return (*names_)[slot]; }
    const std::vector<std::string>& names() const { return *names_; }

    std::optional<std::size_t> find(std::string_view name) const
    {
        for (std::size_t i = 0; i < names_->size(); ++i)
            if ((*names_)[i] == name)
                return i;
        return std::nullopt;
    }

    std::size_t slot(std::string_view name) const
    {
        if (auto s = find(name))
            return *s;
        throw VariableError("unknown variable '" + std::string(name) + "'");
    }

    friend bool operator==(const VarSet& a, const VarSet& b) { return a.names_ == b.names_ || *a.names_ == *b.names_; }
    friend bool operator!=(const VarSet& a, const VarSet& b) { return !(a == b); }

private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

/// The ring every family lives in: x, y, z plus the auxiliary shift symbols
/// k, w (omega), h, a (alpha), b (beta).
inline const VarSet& standard_ring()
{
    static const VarSet ring({"x", "y", "z", "k", "w", "h", "a", "b"});
    return ring;
}

// ---------------------------------------------------------------------------
// Monomials: eight 8-bit exponents packed into one word, slot 0 in the top
// byte, so that for equal total degree the integer order is the lex order.

class Monomial {
public:
    constexpr Monomial() = default;

    static Monomial var(std::size_t slot, unsigned exp = 1)
    {
        if (exp > 255)
            throw DomainError("exponent overflow");
        return Monomial(static_cast<std::uint64_t>(exp) << shift(slot));
    }

    unsigned exponent(std::size_t slot) const { return static_cast<unsigned>((bits_ >> shift(slot)) & 0xffU); }

    unsigned degree() const
    {
        unsigned d = 0;
        for (std::uint64_t b = bits_; b != 0; b >>= 8U)
            d += static_cast<unsigned>(b & 0xffU);
        return d;
    }

    bool is_one() const { return bits_ == 0; }

    Monomial with_exponent(std::size_t slot, unsigned exp) const
    {
        if (exp > 255)
            throw DomainError("exponent overflow");
        const std::uint64_t mask = std::uint64_t{0xff} << shift(slot);
        return Monomial((bits_ & ~mask) | (static_cast<std::uint64_t>(exp) << shift(slot)));
    }

    friend Monomial operator*(Monomial a, Monomial b)
    {
        if (a.degree() + b.degree() > 255)
            throw DomainError("monomial degree overflow");
        return Monomial(a.bits_ + b.bits_);
    }

    friend bool operator==(Monomial a, Monomial b) { return a.bits_ == b.bits_; }

    /// Graded lexicographic order, greatest first.
    struct Descending {
        bool operator()(Monomial a, Monomial b) const
        {
            const unsigned da = a.degree();
            const unsigned db = b.degree();
            if (da != db)
                return da > db;
            return a.bits_ > b.bits_;
        }
    };

private:
    explicit constexpr Monomial(std::uint64_t bits) : bits_(bits) {}
    static unsigned shift(std::size_t slot) { return static_cast<unsigned>(8 * (max_vars - 1 - slot)); }

    std::uint64_t bits_ = 0;
};

// ---------------------------------------------------------------------------
// Sparse multivariate polynomials

class MultiPoly {
public:
    using Terms = std::map<Monomial, GaussRational, Monomial::Descending>;

    explicit MultiPoly(VarSet ring) : ring_(std::move(ring)) {}
    MultiPoly(VarSet ring, const GaussRational& c) : ring_(std::move(ring))
    {
        if (!c.is_zero())
            terms_.emplace(Monomial{}, c);
    }

    static MultiPoly variable(const VarSet& ring, std::string_view name, unsigned exp = 1)
    {
        MultiPoly p(ring);
        p.terms_.emplace(Monomial::var(ring.slot(name), exp), GaussRational(1));
        return p;
    }

    static MultiPoly monomial(const VarSet& ring, const GaussRational& c, Monomial m)
    {
        MultiPoly p(ring);
        if (!c.is_zero())
            p.terms_.emplace(m, c);
        return p;
    }

    const VarSet& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

    GaussRational constant_term() const
    {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? GaussRational(0) : it->second;
    }

    GaussRational coeff(Monomial m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? GaussRational(0) : it->second;
    }

    unsigned total_degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

    unsigned degree_in(std::string_view var) const
    {
        const std::size_t s = ring_.slot(var);
        unsigned d = 0;
        for (const auto& [m, c] : terms_)
            d = std::max(d, m.exponent(s));
        return d;
    }

    bool involves(std::string_view var) const { return degree_in(var) > 0; }

    /// Adds c·m in place, dropping the term if it cancels.
    void add_term(Monomial m, const GaussRational& c)
    {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    MultiPoly operator-() const
    {
        MultiPoly r(ring_);
        for (const auto& [m, c] : terms_)
            r.terms_.emplace_hint(r.terms_.end(), m, -c);
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o)
    {
        require_same_ring(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o)
    {
        require_same_ring(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }
    MultiPoly& operator*=(const GaussRational& s)
    {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_)
            c *= s;
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, const GaussRational& s) { return a *= s; }
    friend MultiPoly operator*(const GaussRational& s, MultiPoly a) { return a *= s; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.ring_ == b.ring_ && a.terms_ == b.terms_; }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    void require_same_ring(const MultiPoly& o) const
    {
        if (ring_ != o.ring_)
            throw RingMismatchError("polynomials over different variable sets");
    }

    /// Canonical text: graded-lex order, "p/q" coefficients, "i" for the unit.
    std::string str() const;

private:
    VarSet ring_;
    Terms terms_;
};

inline MultiPoly poly_mul(const MultiPoly& a, const MultiPoly& b)
{
    a.require_same_ring(b);
    MultiPoly r(a.ring());
    if (a.is_zero() || b.is_zero())
        return r;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            r.add_term(ma * mb, ca * cb);
    return r;
}

inline MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return poly_mul(a, b); }

inline MultiPoly poly_pow(const MultiPoly& base, unsigned e)
{
    MultiPoly r(base.ring(), GaussRational(1));
    for (unsigned i = 0; i < e; ++i)
        r = r * base;
    return r;
}

/// Partial derivative with respect to `var`.
inline MultiPoly poly_diff(const MultiPoly& p, std::string_view var)
{
    const std::size_t s = p.ring().slot(var);
    MultiPoly r(p.ring());
    for (const auto& [m, c] : p.terms()) {
        const unsigned e = m.exponent(s);
        if (e == 0)
            continue;
        r.add_term(m.with_exponent(s, e - 1), c * GaussRational(static_cast<long>(e)));
    }
    return r;
}

inline MultiPoly poly_diff(const MultiPoly& p, std::string_view var, unsigned times)
{
    MultiPoly r = p;
    for (unsigned i = 0; i < times && !r.is_zero(); ++i)
        r = poly_diff(r, var);
    return r;
}

/// Antiderivative in `var` with zero constant of integration.
inline MultiPoly poly_integrate(const MultiPoly& p, std::string_view var)
{
    const std::size_t s = p.ring().slot(var);
    MultiPoly r(p.ring());
    for (const auto& [m, c] : p.terms()) {
        const unsigned e = m.exponent(s);
        r.add_term(m.with_exponent(s, e + 1), c / GaussRational(static_cast<long>(e + 1)));
    }
    return r;
}

/// Replaces `var` by the polynomial `replacement`.
inline MultiPoly poly_subst(const MultiPoly& p, std::string_view var, const MultiPoly& replacement)
{
    p.require_same_ring(replacement);
    const std::size_t s = p.ring().slot(var);
    // Group by the exponent of var.
    std::map<unsigned, MultiPoly> groups;
    for (const auto& [m, c] : p.terms()) {
        const unsigned e = m.exponent(s);
        auto it = groups.try_emplace(e, p.ring()).first;
        it->second.add_term(m.with_exponent(s, 0), c);
    }
    MultiPoly r(p.ring());
    MultiPoly power(p.ring(), GaussRational(1));
    unsigned at = 0;
    for (const auto& [e, part] : groups) {
        while (at < e) {
            power = power * replacement;
            ++at;
        }
        r += part * power;
    }
    return r;
}

inline MultiPoly poly_subst(const MultiPoly& p, std::string_view var, const GaussRational& value)
{
    return poly_subst(p, var, MultiPoly(p.ring(), value));
}

using Assignment = std::map<std::string, GaussRational, std::less<>>;

/// Full evaluation. Every variable occurring in p must be bound.
inline GaussRational poly_eval(const MultiPoly& p, const Assignment& assignment)
{
    const VarSet& ring = p.ring();
    std::vector<std::optional<GaussRational>> values(ring.size());
    for (std::size_t s = 0; s < ring.size(); ++s)
        if (auto it = assignment.find(ring.name(s)); it != assignment.end())
            values[s] = it->second;
    GaussRational total(0);
    for (const auto& [m, c] : p.terms()) {
        GaussRational term = c;
        for (std::size_t s = 0; s < ring.size(); ++s) {
            const unsigned e = m.exponent(s);
            if (e == 0)
                continue;
            if (!values[s])
                throw VariableError("unbound variable '" + ring.name(s) + "'");
            term *= pow(*values[s], e);
        }
        total += term;
    }
    return total;
}

/// Substitutes the bound variables and keeps the rest symbolic.
inline MultiPoly poly_eval_partial(const MultiPoly& p, const Assignment& assignment)
{
    MultiPoly r = p;
    for (const auto& [name, value] : assignment)
        if (p.ring().find(name))
            r = poly_subst(r, name, value);
    return r;
}

inline MultiPoly real_part(const MultiPoly& p)
{
    MultiPoly r(p.ring());
    for (const auto& [m, c] : p.terms())
        r.add_term(m, GaussRational(c.re()));
    return r;
}

inline MultiPoly imag_part(const MultiPoly& p)
{
    MultiPoly r(p.ring());
    for (const auto& [m, c] : p.terms())
        r.add_term(m, GaussRational(c.im()));
    return r;
}

// ---------------------------------------------------------------------------
// Text

inline std::string monomial_str(const VarSet& ring, Monomial m)
{
    std::string out;
    for (std::size_t s = 0; s < ring.size(); ++s) {
        const unsigned e = m.exponent(s);
        if (e == 0)
            continue;
        if (!out.empty())
            out += '*';
        out += ring.name(s);
        if (e > 1)
            out += '^' + std::to_string(e);
    }
    return out;
}

inline std::string MultiPoly::str() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const std::string mono = monomial_str(ring_, m);
        bool negative = false;
        std::string body;
        if (c.is_real() || sgn(c.re()) == 0) {
            const bool imaginary = !c.is_real();
            const Rational& part = imaginary ? c.im() : c.re();
            negative = sgn(part) < 0;
            const Rational mag = abs(part);
            std::string scalar = mag == 1 ? "" : mag.get_str();
            if (imaginary)
                scalar = scalar.empty() ? "i" : scalar + "*i";
            if (mono.empty())
                body = scalar.empty() ? "1" : scalar;
            else
                body = scalar.empty() ? mono : scalar + "*" + mono;
        } else {
            body = "(" + c.str() + ")" + (mono.empty() ? "" : "*" + mono);
        }
        if (first)
            out += negative ? "-" + body : body;
        else
            out += (negative ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.str(); }

namespace detail {

// Recursive-descent reader for + - * / ^ ( ) integers, variables and i.
class PolyParser {
public:
    PolyParser(const VarSet& ring, std::string_view text) : ring_(ring), text_(text) {}

    MultiPoly parse()
    {
        MultiPoly r = expr();
        skip();
        if (pos_ != text_.size())
            fail("unexpected character");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw DomainError("cannot parse polynomial '" + std::string(text_) + "': " + what + " at offset " + std::to_string(pos_));
    }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MultiPoly expr()
    {
        MultiPoly r = term();
        for (;;) {
            if (eat('+'))
                r += term();
            else if (eat('-'))
                r -= term();
            else
                return r;
        }
    }

    MultiPoly term()
    {
        MultiPoly r = factor();
        for (;;) {
            if (eat('*')) {
                r = r * factor();
            } else if (eat('/')) {
                MultiPoly d = factor();
                if (!d.is_constant() || d.is_zero())
                    fail("division by a non-constant or zero");
                r *= GaussRational(1) / d.constant_term();
            } else {
                return r;
            }
        }
    }

    MultiPoly factor()
    {
        if (eat('-'))
            return -factor();
        if (eat('+'))
            return factor();
        MultiPoly base = primary();
        if (eat('^')) {
            skip();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected exponent");
            base = poly_pow(base, static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
        }
        return base;
    }

    MultiPoly primary()
    {
        skip();
        if (pos_ >= text_.size())
            fail("unexpected end");
        if (eat('(')) {
            MultiPoly r = expr();
            if (!eat(')'))
                fail("expected ')'");
            return r;
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            return MultiPoly(ring_, GaussRational(Rational(mpz_class(std::string(text_.substr(start, pos_ - start))))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            const std::string_view name = text_.substr(start, pos_ - start);
            if (name == "i")
                return MultiPoly(ring_, GaussRational::i());
            if (!ring_.find(name))
                fail("unknown variable '" + std::string(name) + "'");
            return MultiPoly::variable(ring_, name);
        }
        fail("unexpected character");
    }

    const VarSet& ring_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Reads canonical polynomial text (and any other well-formed expression in
/// + - * / ^ and parentheses) back into a polynomial over `ring`.
inline MultiPoly parse_poly(const VarSet& ring, std::string_view text) { return detail::PolyParser(ring, text).parse(); }

inline GaussRational GaussRational::parse(std::string_view text)
{
    // A one-variable scratch ring; a scalar expression never mentions it.
    static const VarSet scratch({"s"});
    const MultiPoly p = parse_poly(scratch, text);
    if (!p.is_constant())
        throw DomainError("not a scalar: '" + std::string(text) + "'");
    return p.constant_term();
}

// ---------------------------------------------------------------------------
// Combinatorics

inline Rational factorial(unsigned n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

inline Rational binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n)
        return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

} // namespace apb
