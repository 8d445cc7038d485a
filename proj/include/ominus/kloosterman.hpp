#ifndef OMINUS_KLOOSTERMAN_HPP
#define OMINUS_KLOOSTERMAN_HPP

/**
 * Kloosterman-type character sums over GF(2^r) with the canonical additive
 * character lambda(x) = (-1)^tr(x):
 *
 *   K_m(a)  = sum over (alpha_1..alpha_m) in (F_q^*)^m of
 *             lambda(alpha_1 + ... + alpha_m + a / (alpha_1 ... alpha_m)),
 *   MK_m^h  = sum over a in F_q^* of K_m(a)^h,
 *
 * together with the Kloosterman sums of GL(t, q), the Carlitz relation
 * K_2 = K^2 - q and a few identities used to cross-check the coding-theory
 * side. All sums are exact integers.
 */

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "finite_field.hpp"
#include "parallel.hpp"

namespace ominus {

/// Largest number of summands a direct evaluation may visit.
inline constexpr std::uint64_t kEnumerationBudget = 100'000'000;

namespace detail {

inline void require_nonzero(const FieldCtx& f, Elem a, const char* what) {
    if (a == 0) throw DomainError(std::string(what) + ": argument must be nonzero");
    if (!f.contains(a)) throw DomainError(std::string(what) + ": " + hex(a) + " is not a field element");
}

inline std::int64_t kloosterman_m(const FieldCtx& f, unsigned depth, Elem sum, Elem prod, Elem a) {
    const Elem q = f.q();
    std::int64_t total = 0;
    if (depth == 0) return f.lambda(FieldCtx::add(sum, f.div(a, prod)));
    for (Elem alpha = 1; alpha < q; ++alpha)
        total += kloosterman_m(f, depth - 1, FieldCtx::add(sum, alpha), f.mul(prod, alpha), a);
    return total;
}

}  // namespace detail

/// K(a) = K_1(lambda; a) by direct summation over F_q^*.
inline std::int64_t kloosterman(const FieldCtx& f, Elem a) {
    detail::require_nonzero(f, a, "kloosterman_sum");
    std::int64_t s = 0;
    for (Elem x = 1; x < f.q(); ++x) s += f.lambda(FieldCtx::add(x, f.div(a, x)));
    return s;
}

/// K_m(lambda; a) by direct summation over (F_q^*)^m.
inline std::int64_t kloosterman_sum(const FieldCtx& f, unsigned m, Elem a) {
    if (m == 0) throw DomainError("kloosterman_sum: dimension m must be positive");
    detail::require_nonzero(f, a, "kloosterman_sum");
    BigInt terms = ipow(static_cast<long>(f.q() - 1), m);
    if (terms > BigInt(std::to_string(kEnumerationBudget)))
        throw BudgetExceeded("kloosterman_sum: (q-1)^m = " + terms.get_str() + " terms exceeds the budget of 10^8" +
                             (m == 2 ? "; use carlitz_k2 for m = 2" : ""));
    if (m == 1) return kloosterman(f, a);
    return detail::kloosterman_m(f, m, 0, 1, a);
}

/// K_2(lambda; a) through the Carlitz identity K_2 = K^2 - q.
inline std::int64_t carlitz_k2(const FieldCtx& f, Elem a) {
    const std::int64_t k = kloosterman(f, a);
    return k * k - static_cast<std::int64_t>(f.q());
}

/// K(a) for every a; slot 0 is unused and holds 0.
inline std::vector<std::int64_t> kloosterman_table(const FieldCtx& f, unsigned workers = 1) {
    std::vector<std::int64_t> table(f.q(), 0);
    parallel_chunks(f.q() - 1, workers, [&](std::size_t b, std::size_t e, unsigned) {
        for (std::size_t i = b; i < e; ++i) table[i + 1] = kloosterman(f, static_cast<Elem>(i + 1));
    });
    return table;
}

/// Exact power moments: values[h] = sum over a != 0 of K_m(a)^(stride * h).
struct MomentSeries {
    unsigned m = 1;
    unsigned stride = 1;
    std::vector<BigInt> values;

    unsigned h_max() const { return values.empty() ? 0 : static_cast<unsigned>(values.size() - 1); }
    friend bool operator==(const MomentSeries&, const MomentSeries&) = default;
};

inline MomentSeries moments_from_values(const std::vector<std::int64_t>& per_a, unsigned m, unsigned h_max,
                                        unsigned stride = 1) {
    MomentSeries s{m, stride, std::vector<BigInt>(h_max + 1, 0)};
    for (std::size_t a = 1; a < per_a.size(); ++a) {
        const BigInt base = static_cast<long>(per_a[a]);
        const BigInt step = ipow(base, stride);
        BigInt p = 1;
        for (unsigned h = 0; h <= h_max; ++h) {
            s.values[h] += p;
            p *= step;
        }
    }
    return s;
}

/// MK_m^h for h = 0..h_max by direct summation (m = 2 goes through Carlitz).
inline MomentSeries power_moment_oracle(const FieldCtx& f, unsigned m, unsigned h_max, unsigned workers = 1) {
    if (m != 1 && m != 2) throw DomainError("power_moment_oracle: m must be 1 or 2");
    if (static_cast<std::uint64_t>(f.q()) * (f.q() - 1) > kEnumerationBudget)
        throw BudgetExceeded("power_moment_oracle: q(q-1) exceeds the budget of 10^8");
    auto table = kloosterman_table(f, workers);
    if (m == 2)
        for (std::size_t a = 1; a < table.size(); ++a) table[a] = table[a] * table[a] - static_cast<std::int64_t>(f.q());
    return moments_from_values(table, m, h_max);
}

/// K_GL(t,q) from the value K = K(psi; a) via the three-term recursion,
/// with K_GL(0) = 1 and K_GL(1) = K.
inline BigInt kgl_from_k(unsigned long q, long k, unsigned t) {
    BigInt prev2 = 1;
    if (t == 0) return prev2;
    BigInt prev1 = k;
    const BigInt Q = q;
    for (unsigned s = 2; s <= t; ++s) {
        BigInt cur = ipow(Q, s - 1) * prev1 * k + ipow(Q, 2 * s - 2) * (ipow(Q, s - 1) - 1) * prev2;
        prev2 = std::move(prev1);
        prev1 = std::move(cur);
    }
    return prev1;
}

inline BigInt kgl_recursive(const FieldCtx& f, unsigned t, Elem a) {
    detail::require_nonzero(f, a, "kgl_recursive");
    return kgl_from_k(f.q(), static_cast<long>(kloosterman(f, a)), t);
}

namespace detail {

// Sum over j_nu >= ... >= j_{l-1} >= 2l-1 with j_nu <= upper of prod (q^(j_mu - 2 mu) - 1).
inline BigInt kgl_chain_sum(const BigInt& q, unsigned nu, unsigned last, unsigned lower, unsigned upper) {
    if (nu > last) return 1;
    BigInt s = 0;
    for (unsigned j = lower; j <= upper; ++j) s += (ipow(q, j - 2 * nu) - 1) * kgl_chain_sum(q, nu + 1, last, lower, j);
    return s;
}

}  // namespace detail

/// K_GL(t,q) from K through the closed form
///   q^((t-2)(t+1)/2) sum_l q^l K^(t+2-2l) sum_chains prod (q^(j_nu - 2nu) - 1).
inline BigInt kgl_closed_from_k(unsigned long q, long k, unsigned t) {
    if (t == 0) throw DomainError("kgl_closed: t must be positive");
    const BigInt Q = q;
    BigInt total = 0;
    const long base_exp = (static_cast<long>(t) - 2) * (static_cast<long>(t) + 1) / 2;
    for (unsigned l = 1; l <= (t + 2) / 2; ++l) {
        const long e = base_exp + static_cast<long>(l);  // >= 0 for t >= 1
        BigInt inner = l == 1 ? BigInt(1) : detail::kgl_chain_sum(Q, 1, l - 1, 2 * l - 1, t + 1);
        total += ipow(Q, static_cast<unsigned long>(e)) * ipow(BigInt(k), t + 2 - 2 * l) * inner;
    }
    return total;
}

inline BigInt kgl_closed(const FieldCtx& f, unsigned t, Elem a) {
    detail::require_nonzero(f, a, "kgl_closed");
    return kgl_closed_from_k(f.q(), static_cast<long>(kloosterman(f, a)), t);
}

/// Both sides of sum_{a != 0} lambda(-a beta) K_m(a) = q K_{m-1}(beta^-1) + (-1)^(m+1)
/// (just (-1)^(m+1) when beta = 0), with K_0(x) = lambda(x).
inline std::pair<std::int64_t, std::int64_t> twisted_sum_check(const FieldCtx& f, unsigned m, Elem beta) {
    if (m != 1 && m != 2) throw DomainError("twisted_sum_check: m must be 1 or 2");
    if (!f.contains(beta)) throw DomainError("twisted_sum_check: beta is not a field element");
    std::int64_t lhs = 0;
    for (Elem a = 1; a < f.q(); ++a) lhs += f.lambda(f.mul(a, beta)) * kloosterman_sum(f, m, a);
    const std::int64_t sign = (m % 2 == 1) ? 1 : -1;  // (-1)^(m+1)
    std::int64_t rhs = sign;
    if (beta != 0) {
        const Elem binv = f.inv(beta);
        const std::int64_t prev = m == 1 ? f.lambda(binv) : kloosterman(f, binv);
        rhs += static_cast<std::int64_t>(f.q()) * prev;
    }
    return {lhs, rhs};
}

/// (S0, S1) with S0 = sum_{alpha not in {0,1}} lambda(beta / (alpha^2 + alpha))
/// and S1 = sum_alpha lambda(beta / (alpha^2 + alpha + a_param)).
inline std::pair<std::int64_t, std::int64_t> artin_schreier_sums(const FieldCtx& f, Elem beta) {
    detail::require_nonzero(f, beta, "artin_schreier_sums");
    std::int64_t s0 = 0, s1 = 0;
    for (Elem x = 0; x < f.q(); ++x) {
        const Elem t = FieldCtx::add(f.square(x), x);
        if (x > 1) s0 += f.lambda(f.div(beta, t));
        s1 += f.lambda(f.div(beta, FieldCtx::add(t, f.a_param())));
    }
    return {s0, s1};
}

/// { K(a) : a in F_q^* }.
inline std::set<std::int64_t> range_spectrum(const FieldCtx& f) {
    if (f.r() < 2) throw DomainError("range_spectrum: requires r >= 2");
    std::set<std::int64_t> out;
    for (Elem a = 1; a < f.q(); ++a) out.insert(kloosterman(f, a));
    return out;
}

/// { tau : |tau| < 2 sqrt(q), tau = -1 mod 4 }.
inline std::set<std::int64_t> predicted_kloosterman_range(unsigned long q) {
    std::set<std::int64_t> out;
    const auto four_q = static_cast<std::int64_t>(4 * q);
    for (std::int64_t tau = -1; tau * tau < four_q; tau -= 4) out.insert(tau);
    for (std::int64_t tau = 3; tau * tau < four_q; tau += 4) out.insert(tau);
    return out;
}

inline bool within_weil_bound(std::int64_t k, unsigned long q) { return k * k <= static_cast<std::int64_t>(4 * q); }

}  // namespace ominus

#endif
