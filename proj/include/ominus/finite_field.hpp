#ifndef OMINUS_FINITE_FIELD_HPP
#define OMINUS_FINITE_FIELD_HPP

/**
 * Arithmetic in GF(2^r), 1 <= r <= 16, in the polynomial basis.
 *
 * An element is an integer in [0, q) whose bit k is the coefficient of z^k.
 * The modulus uses the same little-endian bitmask encoding with bit r set,
 * e.g. z^3 + z + 1 <-> 0xB. Multiplication and inversion go through
 * exponential/logarithm tables built from a generator found by search, so any
 * irreducible modulus works (primitive or not).
 *
 * FieldCtx is an immutable value; copies share the tables.
 */

#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace ominus {

using Elem = std::uint32_t;

inline constexpr unsigned kMaxFieldDegree = 16;

namespace detail {

inline int poly_degree(std::uint64_t p) {
    int d = -1;
    while (p) {
        p >>= 1;
        ++d;
    }
    return d;
}

inline std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    while (b) {
        if (b & 1u) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

inline std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
    const int dm = poly_degree(m);
    for (int da = poly_degree(a); da >= dm; da = poly_degree(a)) a ^= m << (da - dm);
    return a;
}

/// Exhaustive factor search: no divisor of degree 1..deg/2.
inline bool is_irreducible(std::uint64_t p) {
    const int d = poly_degree(p);
    if (d < 1) return false;
    if (d == 1) return true;
    const std::uint64_t limit = std::uint64_t{1} << (d / 2 + 1);
    for (std::uint64_t f = 2; f < limit; ++f)
        if (poly_mod(p, f) == 0) return false;
    return true;
}

inline std::string hex(std::uint64_t x) {
    std::ostringstream os;
    os << "0x" << std::hex << x;
    return os.str();
}

}  // namespace detail

class FieldCtx;
FieldCtx make_field(unsigned r, std::optional<std::uint32_t> modulus = std::nullopt,
                    std::optional<Elem> a_param = std::nullopt);

class FieldCtx {
   public:
    unsigned r() const { return t_->r; }
    Elem q() const { return t_->q; }
    std::uint32_t modulus() const { return t_->modulus; }
    /// Parameter a of the quadratic form x^2 + xy + a y^2; tr(a) = 1.
    Elem a_param() const { return t_->a_param; }

    bool contains(Elem x) const { return x < q(); }

    static Elem add(Elem x, Elem y) { return x ^ y; }
    Elem mul(Elem x, Elem y) const {
        if (x == 0 || y == 0) return 0;
        return t_->exp[t_->log[x] + t_->log[y]];
    }
    Elem square(Elem x) const { return mul(x, x); }
    Elem inv(Elem x) const {
        if (x == 0) throw DomainError("GF(2^r): inverse of zero");
        const Elem order = q() - 1;
        return t_->exp[(order - t_->log[x]) % order];
    }
    Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }
    Elem pow(Elem x, std::uint64_t e) const {
        Elem result = 1;
        Elem base = x;
        while (e) {
            if (e & 1u) result = mul(result, base);
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    }

    /// Absolute trace to GF(2).
    int trace(Elem x) const { return t_->trace[x]; }
    /// Canonical additive character (-1)^tr(x).
    int lambda(Elem x) const { return trace(x) ? -1 : 1; }

    /// Image of the Artin-Schreier map x -> x^2 + x, sorted.
    std::vector<Elem> theta_subgroup() const {
        std::vector<bool> hit(q(), false);
        for (Elem x = 0; x < q(); ++x) hit[add(square(x), x)] = true;
        std::vector<Elem> out;
        for (Elem x = 0; x < q(); ++x)
            if (hit[x]) out.push_back(x);
        return out;
    }

    std::string describe() const {
        return "GF(2^" + std::to_string(r()) + ") mod " + detail::hex(modulus()) + ", a=" + detail::hex(a_param());
    }

    friend bool operator==(const FieldCtx& x, const FieldCtx& y) {
        return x.modulus() == y.modulus() && x.a_param() == y.a_param();
    }

   private:
    struct Tables {
        unsigned r = 0;
        Elem q = 0;
        std::uint32_t modulus = 0;
        Elem a_param = 0;
        std::vector<Elem> exp;  // length 2(q-1), so exp[log x + log y] needs no reduction
        std::vector<std::uint32_t> log;
        std::vector<std::uint8_t> trace;
    };

    explicit FieldCtx(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}
    std::shared_ptr<const Tables> t_;

    friend FieldCtx make_field(unsigned, std::optional<std::uint32_t>, std::optional<Elem>);
};

/// Smallest-bitmask irreducible polynomial of degree r.
inline std::uint32_t default_modulus(unsigned r) {
    if (r < 1 || r > kMaxFieldDegree) throw DomainError("field degree r must lie in [1, 16], got " + std::to_string(r));
    for (std::uint32_t p = 1u << r; p < (2u << r); ++p)
        if (detail::is_irreducible(p)) return p;
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

/// All irreducible moduli of degree r in increasing bitmask order.
inline std::vector<std::uint32_t> irreducible_moduli(unsigned r) {
    if (r < 1 || r > kMaxFieldDegree) throw DomainError("field degree r must lie in [1, 16], got " + std::to_string(r));
    std::vector<std::uint32_t> out;
    for (std::uint32_t p = 1u << r; p < (2u << r); ++p)
        if (detail::is_irreducible(p)) out.push_back(p);
    return out;
}

inline FieldCtx make_field(unsigned r, std::optional<std::uint32_t> modulus, std::optional<Elem> a_param) {
    if (r < 1 || r > kMaxFieldDegree) throw DomainError("field degree r must lie in [1, 16], got " + std::to_string(r));
    const std::uint32_t m = modulus.value_or(default_modulus(r));
    if (detail::poly_degree(m) != static_cast<int>(r))
        throw DomainError("modulus " + detail::hex(m) + " does not have degree " + std::to_string(r));
    if (!detail::is_irreducible(m)) throw DomainError("modulus " + detail::hex(m) + " is reducible over GF(2)");

    auto t = std::make_shared<FieldCtx::Tables>();
    t->r = r;
    t->q = Elem{1} << r;
    t->modulus = m;
    const Elem q = t->q;
    const Elem order = q - 1;

    auto slow_mul = [m](Elem x, Elem y) { return static_cast<Elem>(detail::poly_mod(detail::clmul(x, y), m)); };

    // Find a generator of the multiplicative group.
    Elem gen = 0;
    for (Elem g = 1; g < q && gen == 0; ++g) {
        Elem x = g;
        std::uint32_t ord = 1;
        while (x != 1) {
            x = slow_mul(x, g);
            ++ord;
        }
        if (ord == order) gen = g;
    }
    t->exp.assign(2 * static_cast<std::size_t>(order), 0);
    t->log.assign(q, 0);
    Elem x = 1;
    for (std::uint32_t i = 0; i < order; ++i) {
        t->exp[i] = x;
        t->exp[i + order] = x;
        t->log[x] = i;
        x = slow_mul(x, gen);
    }

    t->trace.assign(q, 0);
    for (Elem e = 0; e < q; ++e) {
        Elem acc = 0;
        Elem s = e;
        for (unsigned k = 0; k < r; ++k) {
            acc ^= s;
            s = slow_mul(s, s);
        }
        if (acc > 1) throw std::logic_error("trace left GF(2)");  // cannot happen for an irreducible modulus
        t->trace[e] = static_cast<std::uint8_t>(acc);
    }

    if (a_param) {
        if (*a_param >= q) throw DomainError("a_param " + detail::hex(*a_param) + " is not a field element");
        if (t->trace[*a_param] != 1)
            throw DomainError("a_param " + detail::hex(*a_param) + " has trace 0, so z^2+z+a is reducible");
        t->a_param = *a_param;
    } else {
        Elem a = 0;
        while (t->trace[a] != 1) ++a;
        t->a_param = a;
    }
    return FieldCtx(std::move(t));
}

/// Elements with trace 1, in encoding order (the admissible a_param values).
inline std::vector<Elem> trace_one_elements(const FieldCtx& f) {
    std::vector<Elem> out;
    for (Elem x = 0; x < f.q(); ++x)
        if (f.trace(x) == 1) out.push_back(x);
    return out;
}

}  // namespace ominus

#endif
