#ifndef OMINUS_MOMENT_RECURSION_HPP
#define OMINUS_MOMENT_RECURSION_HPP

/**
 * Recursive formulas for power moments of Kloosterman sums obtained from the
 * Pless power moment identity applied to the duals C(DC)^perp = {c(a)}.
 *
 * For a dual of dimension r over F_2 the identity reads
 *
 *   sum_{a != 0} w(c(a))^h = 2^-h q R_h,
 *   R_h = sum_{j <= min(N,h)} (-1)^j C_j sum_{t=j..h} t! S(h,t) 2^(h-t) binom(N-j, N-t),
 *
 * and the weights are w(c(a)) = A/2 (base + s X(a)) with
 *
 *   family 1, 3:  X = K,    s = -1 (plus) / +1 (minus), base = B
 *   family 2:     X = K^2,  s = +-1, base = B          or X = K_2, base = B +- q
 *   family 4:     X = K^2,  s = +-1, base = B +- (q^2-q) or X = K_2, base = B +- q^2.
 *
 * Expanding (base + s X)^h and isolating the l = h term gives
 *
 *   s^h A^h M_h = q R_h - A^h sum_{l<h} s^l binom(h,l) base^(h-l) M_l,   M_0 = q - 1.
 */

#include <optional>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "coset_codes.hpp"
#include "finite_field.hpp"
#include "kloosterman.hpp"
#include "ominus_groups.hpp"

namespace ominus {

inline constexpr unsigned kMaxMomentOrder = 32;

/// S(h,t) from the triangle S(h,t) = t S(h-1,t) + S(h-1,t-1); 0 outside 0 <= t <= h.
inline BigInt stirling2(unsigned h, unsigned t) {
    if (t > h) return 0;
    std::vector<BigInt> row(t + 1, 0);
    row[0] = 1;  // S(0,0)
    for (unsigned i = 1; i <= h; ++i) {
        for (unsigned k = std::min(i, t); k >= 1; --k) row[k] = BigInt(k) * row[k] + row[k - 1];
        row[0] = 0;
    }
    return row[t];
}

namespace detail {

// sum_{t=j..h} t! S(h,t) 2^(h-t) binom(N-j, N-t)
inline BigInt pless_inner(const BigInt& n, unsigned j, unsigned h) {
    BigInt s = 0;
    for (unsigned t = j; t <= h; ++t) {
        if (n < t) break;  // binom(N-j, N-t) = 0
        s += factorial(t) * stirling2(h, t) * ipow(BigInt(2), h - t) * binomial(n - j, t - j);
    }
    return s;
}

// R_h from the weight prefix C_0..C_{>=min(N,h)}.
inline BigInt pless_sum(const BigInt& n, const std::vector<BigInt>& c, unsigned h) {
    BigInt total = 0;
    for (unsigned j = 0; j <= h && n >= j; ++j) {
        if (j >= c.size()) throw DomainError("pless: weight prefix is too short");
        const BigInt term = c[j] * pless_inner(n, j, h);
        if (j % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

}  // namespace detail

/// Which moment series a recursion produces.
enum class MomentKind {
    kloosterman,       // MK^h (families 1, 3)
    kloosterman_even,  // MK^{2h} (families 2, 4)
    kloosterman2,      // MK_2^h (families 2, 4)
};

inline std::string kind_name(MomentKind k) {
    switch (k) {
        case MomentKind::kloosterman: return "MK";
        case MomentKind::kloosterman_even: return "MK_even";
        default: return "MK2";
    }
}

inline MomentKind parse_kind(const std::string& s) {
    if (s == "MK" || s == "k") return MomentKind::kloosterman;
    if (s == "MK_even" || s == "even") return MomentKind::kloosterman_even;
    if (s == "MK2" || s == "k2") return MomentKind::kloosterman2;
    throw DomainError("unknown moment kind '" + s + "' (expected MK, MK_even or MK2)");
}

inline MomentKind default_kind(int family) {
    return family == 1 || family == 3 ? MomentKind::kloosterman : MomentKind::kloosterman2;
}

/// Throws DomainError naming the violated condition when no recursive formula
/// is available for the spec.
inline void require_recursion_domain(const DoubleCosetSpec& s) {
    validate(s);
    const bool plus = s.sign == Sign::plus;
    const unsigned long q = s.q();
    const std::string who = s.name() + ": ";
    switch (s.family) {
        case 1:
            if (plus && (s.n < 2 || s.n % 2 != 0)) throw DomainError(who + "family 1 plus needs n >= 2 even");
            if (!plus && s.n % 2 != 1) throw DomainError(who + "family 1 minus needs n >= 1 odd");
            break;
        case 3:
            if (plus && s.n == 2 && q < 8)
                throw DomainError(who + "family 3 plus with n = 2 needs q >= 8 (the dual map has kernel F_2 for q <= 4)");
            if (plus && (s.n < 2 || s.n % 2 != 0)) throw DomainError(who + "family 3 plus needs n >= 4 even, or n = 2 and q >= 8");
            if (!plus && (s.n < 3 || s.n % 2 != 1)) throw DomainError(who + "family 3 minus needs n >= 3 odd");
            break;
        case 2:
        case 4:
            if (q < 4) throw DomainError(who + "families 2 and 4 need q >= 4");
            if (plus && (s.n < (s.family == 2 ? 2u : 4u) || s.n % 2 != 0))
                throw DomainError(who + "family " + std::to_string(s.family) + " plus needs n >= " +
                                  (s.family == 2 ? "2" : "4") + " even");
            if (!plus && (s.n < 3 || s.n % 2 != 1))
                throw DomainError(who + "family " + std::to_string(s.family) + " minus needs n >= 3 odd");
            break;
        default: throw DomainError(who + "family must be 1..4");
    }
}

inline void require_kind(const DoubleCosetSpec& s, MomentKind k) {
    const bool odd_family = s.family == 1 || s.family == 3;
    if (odd_family != (k == MomentKind::kloosterman))
        throw DomainError(s.name() + ": moment kind " + kind_name(k) + " is not produced by family " +
                          std::to_string(s.family));
}

/// (s, base) in w(c(a)) = A/2 (base + s X(a)).
struct WeightShape {
    int s = 1;
    BigInt base;
};

inline WeightShape weight_shape(const DoubleCosetSpec& sp, const Cardinality& c, MomentKind k) {
    require_kind(sp, k);
    const int pm = sign_value(sp.sign);
    const BigInt q = sp.q();
    if (sp.family == 1 || sp.family == 3) return {-pm, c.B};
    BigInt shift;
    if (sp.family == 2)
        shift = k == MomentKind::kloosterman2 ? q : BigInt(0);
    else
        shift = k == MomentKind::kloosterman2 ? BigInt(q * q) : BigInt(q * q - q);
    return {pm, pm > 0 ? BigInt(c.B + shift) : BigInt(c.B - shift)};
}

inline bool oracle_within_budget(const FieldCtx& f) {
    return static_cast<std::uint64_t>(f.q()) * (f.q() - 1) <= kEnumerationBudget;
}

/// MK^h, MK^{2h} or MK_2^h for h = 0..h_max by direct summation.
inline MomentSeries oracle_series(const FieldCtx& f, MomentKind k, unsigned h_max, unsigned workers = 1) {
    switch (k) {
        case MomentKind::kloosterman: return power_moment_oracle(f, 1, h_max, workers);
        case MomentKind::kloosterman2: return power_moment_oracle(f, 2, h_max, workers);
        default:
            if (!oracle_within_budget(f)) throw BudgetExceeded("oracle_series: q(q-1) exceeds the budget of 10^8");
            return moments_from_values(kloosterman_table(f, workers), 1, h_max, 2);
    }
}

struct RecursionReport {
    DoubleCosetSpec spec;
    MomentKind kind = MomentKind::kloosterman;
    unsigned h_max = 0;
    MomentSeries recursion;
    std::optional<MomentSeries> oracle;
    std::vector<bool> agree;  // per h; empty without an oracle

    bool verified() const {
        if (!oracle) return false;
        for (bool a : agree)
            if (!a) return false;
        return true;
    }
};

inline void attach_oracle(RecursionReport& rep, unsigned workers) {
    rep.oracle = oracle_series(rep.spec.field, rep.kind, rep.h_max, workers);
    rep.agree.clear();
    for (unsigned h = 0; h <= rep.h_max; ++h) rep.agree.push_back(rep.oracle->values[h] == rep.recursion.values[h]);
}

inline MomentSeries series_shape(MomentKind k, unsigned h_max) {
    MomentSeries s;
    s.m = k == MomentKind::kloosterman2 ? 2 : 1;
    s.stride = k == MomentKind::kloosterman_even ? 2 : 1;
    s.values.assign(h_max + 1, 0);
    return s;
}

/// Solves the recursion for h = 1..h_max from the weight prefix C_0..C_{h_max}.
/// With verify, the report carries the direct-summation series (when q(q-1) <= 10^8).
inline RecursionReport recursive_moments(const DoubleCosetSpec& s, unsigned h_max, std::optional<MomentKind> kind = {},
                                         bool verify = true, unsigned workers = 1) {
    require_recursion_domain(s);
    if (h_max > kMaxMomentOrder) throw DomainError("recursive_moments: h_max must not exceed 32");
    const MomentKind k = kind.value_or(default_kind(s.family));
    const Cardinality c = dc_cardinality(s);
    const WeightShape w = weight_shape(s, c, k);
    const WeightPrefix prefix = weight_distribution_prefix(s, h_max);
    const BigInt q = s.q();

    RecursionReport rep{s, k, h_max, series_shape(k, h_max), std::nullopt, {}};
    auto& m = rep.recursion.values;
    m[0] = q - 1;
    for (unsigned h = 1; h <= h_max; ++h) {
        BigInt lower = 0;
        for (unsigned l = 0; l < h; ++l) {
            BigInt term = binomial(BigInt(h), l) * ipow(w.base, h - l) * m[l];
            if (w.s < 0 && l % 2 == 1) term = -term;
            lower += term;
        }
        const BigInt ah = ipow(c.A, h);
        BigInt rhs = q * detail::pless_sum(c.N, prefix.counts, h) - ah * lower;
        BigInt mh = exact_div(rhs, ah, "recursion step");
        if (w.s < 0 && h % 2 == 1) mh = -mh;
        m[h] = std::move(mh);
    }
    if (verify && oracle_within_budget(s.field)) attach_oracle(rep, workers);
    return rep;
}

/// sum_{a != 0} w(c(a))^h with the closed-form weights.
inline BigInt weight_power_sum(const DoubleCosetSpec& s, unsigned h) {
    const auto w = dual_weights_closed(s);
    BigInt total = 0;
    for (std::size_t a = 1; a < w.size(); ++a) total += ipow(w[a], h);
    return total;
}

/// 2^-h A^h sum_l s^l binom(h,l) base^(h-l) M_l with M from direct summation.
inline BigInt moment_lhs_expansion(const DoubleCosetSpec& s, unsigned h, std::optional<MomentKind> kind = {}) {
    validate(s);
    const MomentKind k = kind.value_or(default_kind(s.family));
    const Cardinality c = dc_cardinality(s);
    const WeightShape w = weight_shape(s, c, k);
    const MomentSeries m = oracle_series(s.field, k, h);
    BigInt total = 0;
    for (unsigned l = 0; l <= h; ++l) {
        BigInt term = binomial(BigInt(h), l) * ipow(w.base, h - l) * m.values[l];
        if (w.s < 0 && l % 2 == 1) term = -term;
        total += term;
    }
    return exact_div(ipow(c.A, h) * total, ipow(BigInt(2), h), "weight moment expansion");
}

/// Both sides of the Pless identity for C(DC)^perp = {c(a)}: lhs = sum_a w(c(a))^h
/// (the zero word only counts at h = 0, as 0^0),
/// rhs = sum_j (-1)^j C_j sum_t t! S(h,t) 2^(r-t) binom(N-j, N-t).
struct PlessResult {
    BigInt lhs;
    BigRational rhs;
    bool holds() const { return rhs.get_den() == 1 && rhs.get_num() == lhs; }
};

/// Weight prefix for the Pless check: the closed-form DP where it applies,
/// otherwise the DP over the enumerated trace counts.
inline WeightPrefix pless_prefix(const DoubleCosetSpec& s, unsigned j_max) {
    if ((s.family == 2 || s.family == 4) && s.q() < 4)
        return weight_prefix_from_distribution(s.field, trace_distribution(s, TraceMode::enumerated), j_max);
    return weight_distribution_prefix(s, j_max);
}

inline PlessResult pless_check(const DoubleCosetSpec& s, unsigned h) {
    validate(s);
    if (has_degenerate_kernel(s))
        throw DomainError(s.name() + ": the dual map a -> c(a) has kernel F_2, so the dual has fewer than q words");
    if (h > kMaxMomentOrder) throw DomainError("pless_check: h must not exceed 32");
    const Cardinality c = dc_cardinality(s);
    const WeightPrefix prefix = pless_prefix(s, h);
    PlessResult out;
    out.lhs = weight_power_sum(s, h) + (h == 0 ? 1 : 0);
    out.rhs = BigRational(BigInt(s.q()) * detail::pless_sum(c.N, prefix.counts, h), ipow(BigInt(2), h));
    out.rhs.canonicalize();
    return out;
}

enum class SpecialCase { plus_n2, minus_n1 };

/// The n = 2 (plus) and n = 1 (minus) specialisations of the family-1 recursion,
/// evaluated from their explicit binomial class sizes.
inline RecursionReport specialized_moments(const FieldCtx& f, SpecialCase variant, unsigned h_max,
                                             bool verify = true, unsigned workers = 1) {
    if (h_max > kMaxMomentOrder) throw DomainError("specialized_moments: h_max must not exceed 32");
    const BigInt q = f.q();
    const bool va = variant == SpecialCase::plus_n2;
    const DoubleCosetSpec spec{1, va ? Sign::plus : Sign::minus, va ? 2u : 1u, f};

    BigInt n, c0, c_tr0, c_tr1;
    if (va) {
        n = ipow(q, 4) * (q * q - 1);
        c0 = q * q * (q - 1) * (q * q + q + 1);
        c_tr0 = q * q * (q + 1) * (q * q - 1);
        c_tr1 = q * q * (q - 1) * (q * q + 1);
    } else {
        n = q + 1;
        c0 = 1;
        c_tr0 = 0;
        c_tr1 = 2;
    }
    TraceDistribution dist;
    dist.counts.assign(f.q(), 0);
    dist.counts[0] = c0;
    for (Elem beta = 1; beta < f.q(); ++beta) dist.counts[beta] = f.trace(f.inv(beta)) == 0 ? c_tr0 : c_tr1;
    const WeightPrefix prefix = weight_prefix_from_distribution(f, dist, h_max);

    RecursionReport rep{spec, MomentKind::kloosterman, h_max, series_shape(MomentKind::kloosterman, h_max),
                        std::nullopt, {}};
    auto& m = rep.recursion.values;
    m[0] = q - 1;
    for (unsigned h = 1; h <= h_max; ++h) {
        BigRational acc = 0;
        BigRational tail = 0;
        for (unsigned j = 0; j <= h && n >= j; ++j) {
            BigInt term = prefix.counts[j] * detail::pless_inner(n, j, h);
            const unsigned parity = va ? h + j : j;  // (-1)^(h+j) for n = 2, (-1)^j for n = 1
            tail += parity % 2 == 0 ? term : BigInt(-term);
        }
        for (unsigned l = 0; l < h; ++l) {
            BigInt term = binomial(BigInt(h), l) * ipow(va ? BigInt(q * q + q) : BigInt(q + 1), h - l) * m[l];
            if (va)
                acc += (h + l + 1) % 2 == 0 ? term : BigInt(-term);
            else
                acc -= term;
        }
        if (va) {
            // q^(1-3h) (q-1)^-h
            acc += tail * BigRational(q, ipow(q, 3 * h) * ipow(BigInt(q - 1), h));
        } else {
            acc += tail * BigRational(q);
        }
        acc.canonicalize();
        if (acc.get_den() != 1) throw ExactnessError("specialized_moments: non-integral moment at h = " + std::to_string(h));
        m[h] = acc.get_num();
    }
    if (verify && oracle_within_budget(f)) attach_oracle(rep, workers);
    return rep;
}

}  // namespace ominus

#endif
