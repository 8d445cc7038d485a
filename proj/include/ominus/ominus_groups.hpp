#ifndef OMINUS_OMINUS_GROUPS_HPP
#define OMINUS_OMINUS_GROUPS_HPP

/**
 * The orthogonal group O-(2n, q), q = 2^r, of the minus-type quadratic form
 *
 *   theta(x) = sum_{i<n} x_i x_{n-1+i} + x_{2n-1}^2 + x_{2n-1} x_{2n} + a x_{2n}^2,
 *
 * its maximal parabolic subgroup P- and the index-2 subgroup Q- (Levi factor
 * GL(n-1) x SO-(2)), the Weyl elements sigma_r and rho, and the double cosets
 *
 *   Q sigma_r Q  and  rho Q sigma_r Q   (0 <= r <= n-1)
 *
 * that partition O-(2n, q). Eight of them, DC_i^{+-}(n, q), carry codes.
 *
 * Everything comes in two flavours: closed-form counts and character sums
 * valid for any (n, q), and exhaustive constructive enumeration for small
 * (n, q) that serves as the oracle for the closed forms.
 */

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "finite_field.hpp"
#include "kloosterman.hpp"
#include "matrix.hpp"
#include "parallel.hpp"

namespace ominus {

/// Largest Q-(2n,q) the constructive enumeration will build.
inline constexpr std::uint64_t kGroupBudget = 10'000;
/// Largest |Q|^2 product loop for a double coset.
inline constexpr std::uint64_t kProductBudget = 10'000'000;

enum class Sign { plus, minus };

inline int sign_value(Sign s) { return s == Sign::plus ? 1 : -1; }
inline std::string sign_name(Sign s) { return s == Sign::plus ? "plus" : "minus"; }
inline char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

// ---------------------------------------------------------------------------
// Closed-form orders and indices
// ---------------------------------------------------------------------------

namespace detail {

inline unsigned long quarter(long numerator, const char* what) {
    if (numerator < 0 || numerator % 4 != 0)
        throw ExactnessError(std::string(what) + ": exponent " + std::to_string(numerator) + "/4 is not a natural number");
    return static_cast<unsigned long>(numerator / 4);
}

inline unsigned long half(long numerator, const char* what) {
    if (numerator < 0 || numerator % 2 != 0)
        throw ExactnessError(std::string(what) + ": exponent " + std::to_string(numerator) + "/2 is not a natural number");
    return static_cast<unsigned long>(numerator / 2);
}

/// prod_{j=1}^{k} (q^(step*j - shift) - 1)
inline BigInt qprod(const BigInt& q, long k, unsigned step, unsigned shift) {
    BigInt p = 1;
    for (long j = 1; j <= k; ++j) p *= ipow(q, step * static_cast<unsigned long>(j) - shift) - 1;
    return p;
}

}  // namespace detail

/// |GL(n, q)| = prod_{j<n} (q^n - q^j).
inline BigInt gl_order(unsigned long q, unsigned n) {
    const BigInt Q = q;
    BigInt g = 1;
    for (unsigned j = 0; j < n; ++j) g *= ipow(Q, n) - ipow(Q, j);
    return g;
}

/// Gaussian binomial [n choose k]_q; zero outside 0 <= k <= n.
inline BigInt q_binomial(unsigned long q, long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    const BigInt Q = q;
    BigInt num = 1, den = 1;
    for (long j = 0; j < k; ++j) {
        num *= ipow(Q, static_cast<unsigned long>(n - j)) - 1;
        den *= ipow(Q, static_cast<unsigned long>(k - j)) - 1;
    }
    return exact_div(num, den, "q_binomial");
}

/// |P-(2n, q)| = 2 (q+1) g_{n-1} q^((n-1)(n+2)/2).
inline BigInt p_minus_order(unsigned long q, unsigned n) {
    const long nn = n;
    return 2 * BigInt(q + 1) * gl_order(q, n - 1) * ipow(BigInt(q), detail::half((nn - 1) * (nn + 2), "|P-|"));
}

inline BigInt q_minus_order(unsigned long q, unsigned n) { return p_minus_order(q, n) / 2; }

/// |O-(2n, q)| = 2 q^(n(n-1)) (q^n + 1) prod_{i<n} (q^(2i) - 1).
inline BigInt o_minus_order(unsigned long q, unsigned n) {
    const BigInt Q = q;
    return 2 * ipow(Q, static_cast<unsigned long>(n) * (n - 1)) * (ipow(Q, n) + 1) * detail::qprod(Q, n - 1, 2, 0);
}

/// |A_r-| = 2 (q+1) g_r g_{n-1-r} q^((n-1)(n+2)/2) q^(r(2n-3r-5)/2).
inline BigInt a_r_order(unsigned long q, unsigned n, unsigned r) {
    if (r >= n) throw DomainError("parabolic index: r must satisfy 0 <= r <= n-1");
    const long nn = n, rr = r;
    const long e2 = (nn - 1) * (nn + 2) + rr * (2 * nn - 3 * rr - 5);
    return 2 * BigInt(q + 1) * gl_order(q, r) * gl_order(q, n - 1 - r) * ipow(BigInt(q), detail::half(e2, "|A_r-|"));
}

/// |B_r- \ Q-| = [n-1 choose r]_q q^(r(r+3)/2).
inline BigInt coset_index(unsigned long q, unsigned n, unsigned r) {
    if (r >= n) throw DomainError("parabolic index: r must satisfy 0 <= r <= n-1");
    const long rr = r;
    return q_binomial(q, n - 1, r) * ipow(BigInt(q), detail::half(rr * (rr + 3), "coset index"));
}

/// (|A_r-|, |B_r- \ Q-|).
inline std::pair<BigInt, BigInt> parabolic_indices(unsigned long q, unsigned n, unsigned r) {
    return {a_r_order(q, n, r), coset_index(q, n, r)};
}

/// |Q sigma_r Q| = |rho Q sigma_r Q| as the product
/// (q+1) q^(n^2-n) prod_{j<n} (q^j - 1) [n-1 choose r]_q q^(r choose 2) q^(2r).
inline BigInt double_coset_size(unsigned long q, unsigned n, unsigned r) {
    if (r >= n) throw DomainError("double_coset_size: r must satisfy 0 <= r <= n-1");
    const BigInt Q = q;
    const unsigned long rr = r;
    const unsigned long e = static_cast<unsigned long>(n) * n - n + (rr == 0 ? 0 : rr * (rr - 1) / 2) + 2 * rr;
    return BigInt(q + 1) * ipow(Q, e) * detail::qprod(Q, n - 1, 1, 0) * q_binomial(q, n - 1, r);
}

// ---------------------------------------------------------------------------
// Double-coset specs and the constants A, B, N
// ---------------------------------------------------------------------------

struct DoubleCosetSpec {
    int family = 1;  // i in {1,2,3,4}
    Sign sign = Sign::plus;
    unsigned n = 2;
    FieldCtx field;

    /// r of sigma_r: n-1 for i=1, n-2 for i=2,3, n-3 for i=4.
    unsigned sigma_index() const {
        static constexpr unsigned drop[] = {0, 1, 2, 2, 3};
        return n - drop[family];
    }
    bool rho_twisted() const { return family == 3 || family == 4; }
    unsigned long q() const { return field.q(); }

    std::string name() const {
        return "DC_" + std::to_string(family) + sign_char(sign) + "(" + std::to_string(n) + "," + std::to_string(q()) + ")";
    }
};

/// Throws DomainError unless the (family, sign, n) triple is one of the eight
/// families at an admissible n.
inline void validate(const DoubleCosetSpec& s) {
    if (s.family < 1 || s.family > 4) throw DomainError("double coset family must be 1, 2, 3 or 4");
    const bool even = s.n % 2 == 0;
    bool ok = false;
    std::string rule;
    if (s.sign == Sign::plus) {
        const unsigned min_n = s.family == 4 ? 4 : 2;
        ok = even && s.n >= min_n;
        rule = "n even and n >= " + std::to_string(min_n);
    } else {
        const unsigned min_n = s.family == 1 ? 1 : 3;
        ok = !even && s.n >= min_n;
        rule = "n odd and n >= " + std::to_string(min_n);
    }
    if (!ok) throw DomainError(s.name() + " is undefined: family " + std::to_string(s.family) + sign_char(s.sign) + " needs " + rule);
}

struct Cardinality {
    BigInt A, B, N;
};

/// A_i^{+-}(n,q), B_i^{+-}(n,q) and N = A B.
inline Cardinality dc_cardinality(const DoubleCosetSpec& s) {
    validate(s);
    const BigInt Q = s.q();
    const unsigned long q = s.q();
    const long n = s.n;
    using detail::qprod;
    using detail::quarter;
    Cardinality c;
    if (s.sign == Sign::plus) {
        const long k = (n - 2) / 2;
        const BigInt odd = qprod(Q, k, 2, 1), even = qprod(Q, k, 2, 0);
        const BigInt qn1 = ipow(Q, n - 1) - 1;
        switch (s.family) {
            case 1:
                c.A = ipow(Q, quarter(5 * n * n - 2 * n - 4, "A1+")) * qn1 * odd;
                c.B = (Q + 1) * ipow(Q, quarter(n * n, "B1+")) * even;
                break;
            case 2:
                c.A = ipow(Q, quarter(5 * n * n - 2 * n - 8, "A2+")) * q_binomial(q, n - 1, 1) * odd;
                c.B = (Q + 1) * ipow(Q, quarter((n - 2) * (n - 2), "B2+")) * qn1 * even;
                break;
            case 3:
                c.A = (Q + 1) * ipow(Q, quarter(5 * n * n - 2 * n - 8, "A3+")) * q_binomial(q, n - 1, 1) * odd;
                c.B = ipow(Q, quarter((n - 2) * (n - 2), "B3+")) * qn1 * even;
                break;
            default:
                c.A = (Q + 1) * ipow(Q, quarter(5 * n * n - 6 * n - 4, "A4+")) * q_binomial(q, n - 1, 2) * odd;
                c.B = ipow(Q, quarter((n - 2) * (n - 2), "B4+")) * qn1 * even;
                break;
        }
    } else {
        const long k = (n - 1) / 2;
        const BigInt odd = qprod(Q, k, 2, 1), even = qprod(Q, k, 2, 0);
        switch (s.family) {
            case 1:
                c.A = ipow(Q, quarter(5 * (n * n - 1), "A1-")) * odd;
                c.B = (Q + 1) * ipow(Q, quarter((n - 1) * (n - 1), "B1-")) * even;
                break;
            case 2:
                c.A = ipow(Q, quarter(5 * n * n - 4 * n - 5, "A2-")) * q_binomial(q, n - 1, 1) * odd;
                c.B = (Q + 1) * ipow(Q, quarter((n - 1) * (n - 1), "B2-")) * even;
                break;
            case 3:
                c.A = (Q + 1) * ipow(Q, quarter(5 * n * n - 4 * n - 5, "A3-")) * q_binomial(q, n - 1, 1) * odd;
                c.B = ipow(Q, quarter((n - 1) * (n - 1), "B3-")) * even;
                break;
            default: {
                const long k3 = (n - 3) / 2;
                c.A = (Q + 1) * ipow(Q, quarter(5 * n * n - 4 * n - 9, "A4-")) * q_binomial(q, n - 1, 2) *
                      qprod(Q, k3, 2, 1);
                c.B = ipow(Q, quarter((n - 3) * (n - 3), "B4-")) * (ipow(Q, n - 2) - 1) * (ipow(Q, n - 1) - 1) *
                      qprod(Q, k3, 2, 0);
                break;
            }
        }
    }
    c.N = c.A * c.B;
    return c;
}

// ---------------------------------------------------------------------------
// The quadratic form and isometries
// ---------------------------------------------------------------------------

inline Elem theta_minus(const FieldCtx& f, unsigned n, std::span<const Elem> v) {
    if (n == 0) throw DomainError("theta_minus: n must be positive");
    if (v.size() != 2 * static_cast<std::size_t>(n)) throw DomainError("theta_minus: vector length must be 2n");
    Elem s = 0;
    for (unsigned i = 0; i + 1 < n; ++i) s ^= f.mul(v[i], v[n - 1 + i]);
    const Elem x = v[2 * n - 2], y = v[2 * n - 1];
    return s ^ f.square(x) ^ f.mul(x, y) ^ f.mul(f.a_param(), f.square(y));
}

/// Upper-triangular Gram matrix S with theta(x) = tx S x.
inline MatrixGF theta_gram(const FieldCtx& f, unsigned n) {
    MatrixGF s(2 * n, 2 * n);
    for (unsigned i = 0; i + 1 < n; ++i) s(i, n - 1 + i) = 1;
    s(2 * n - 2, 2 * n - 2) = 1;
    s(2 * n - 2, 2 * n - 1) = 1;
    s(2 * n - 1, 2 * n - 1) = f.a_param();
    return s;
}

inline bool is_alternating(const MatrixGF& m) {
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (m(i, i) != 0) return false;
        for (std::size_t j = i + 1; j < m.cols; ++j)
            if (m(i, j) != m(j, i)) return false;
    }
    return true;
}

/// The block isometry relations (alternating conditions on tAC + tg d g,
/// tBD + th d h, te f + ti d i + d, and the three bilinear identities) are
/// together equivalent to tM S M + S being alternating.
inline bool is_isometry(const FieldCtx& f, unsigned n, const MatrixGF& m) {
    if (m.rows != 2 * static_cast<std::size_t>(n) || !m.square()) return false;
    const MatrixGF s = theta_gram(f, n);
    return is_alternating(add(multiply(f, transpose(m), multiply(f, s, m)), s));
}

// ---------------------------------------------------------------------------
// Constructive enumeration
// ---------------------------------------------------------------------------

/// SO-(2,q) = { [[d1, a d2], [d2, d1 + d2]] : d1^2 + d1 d2 + a d2^2 = 1 }, sorted.
inline std::vector<MatrixGF> enumerate_so2(const FieldCtx& f) {
    std::vector<MatrixGF> out;
    const Elem a = f.a_param();
    for (Elem d1 = 0; d1 < f.q(); ++d1)
        for (Elem d2 = 0; d2 < f.q(); ++d2) {
            if ((f.square(d1) ^ f.mul(d1, d2) ^ f.mul(a, f.square(d2))) != 1) continue;
            out.emplace_back(2, 2, std::vector<Elem>{d1, f.mul(a, d2), d2, d1 ^ d2});
        }
    std::sort(out.begin(), out.end());
    return out;
}

/// O-(2,q) = SO-(2,q) u [[1,1],[0,1]] SO-(2,q), sorted.
inline std::vector<MatrixGF> enumerate_o2(const FieldCtx& f) {
    auto out = enumerate_so2(f);
    const MatrixGF u(2, 2, {1, 1, 0, 1});
    const std::size_t m = out.size();
    for (std::size_t i = 0; i < m; ++i) out.push_back(multiply(f, u, out[i]));
    std::sort(out.begin(), out.end());
    return out;
}

/// All invertible k x k matrices (k = 0 gives the single empty matrix).
inline std::vector<MatrixGF> enumerate_gl(const FieldCtx& f, unsigned k) {
    std::vector<MatrixGF> out;
    for_each_matrix(f, k, k, [&](const MatrixGF& m) {
        if (k == 0 || inverse(f, m)) out.push_back(m);
    });
    return out;
}

struct WeylElements {
    std::vector<MatrixGF> sigma;  // sigma_0 .. sigma_{n-1}
    MatrixGF rho;
};

/// sigma_r swaps coordinates k and n-1+k for k < r.
inline MatrixGF weyl_sigma(unsigned n, unsigned r) {
    if (r >= n) throw DomainError("sigma_r: r must satisfy 0 <= r <= n-1");
    MatrixGF m = MatrixGF::identity(2 * n);
    for (unsigned k = 0; k < r; ++k) {
        m(k, k) = 0;
        m(n - 1 + k, n - 1 + k) = 0;
        m(k, n - 1 + k) = 1;
        m(n - 1 + k, k) = 1;
    }
    return m;
}

/// rho = diag(1_{2n-2}, [[1,1],[0,1]]).
inline MatrixGF weyl_rho(unsigned n) {
    MatrixGF m = MatrixGF::identity(2 * n);
    m(2 * n - 2, 2 * n - 1) = 1;
    return m;
}

inline WeylElements weyl_elements(unsigned n) {
    WeylElements w;
    for (unsigned r = 0; r < n; ++r) w.sigma.push_back(weyl_sigma(n, r));
    w.rho = weyl_rho(n);
    return w;
}

/// Q-(2n,q), built as products diag(A, tA^-1, i) * U(B, h) over A in GL(n-1),
/// i in SO-(2), h in F^{2 x (n-1)} and B with tB + th d_a h alternating.
/// Sorted, distinct.
inline std::vector<MatrixGF> enumerate_q_minus(const FieldCtx& f, unsigned n, std::uint64_t budget = kGroupBudget) {
    if (n == 0) throw DomainError("enumerate_q_minus: n must be positive");
    const BigInt expected = q_minus_order(f.q(), n);
    if (expected > BigInt(std::to_string(budget)))
        throw BudgetExceeded("enumerate_q_minus: |Q-(" + std::to_string(2 * n) + "," + std::to_string(f.q()) +
                             ")| = " + expected.get_str() + " exceeds the budget of " + std::to_string(budget));
    const auto so2 = enumerate_so2(f);
    if (n == 1) return so2;

    const unsigned k = n - 1;
    const unsigned dim = 2 * n;
    const auto gl = enumerate_gl(f, k);
    const MatrixGF delta(2, 2, {1, 1, 0, f.a_param()});
    const MatrixGF eta(2, 2, {0, 1, 1, 0});

    std::vector<std::pair<std::size_t, std::size_t>> upper;  // free entries of an alternating k x k
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) upper.emplace_back(i, j);

    std::vector<MatrixGF> unipotent;
    for_each_matrix(f, 2, k, [&](const MatrixGF& h) {
        const MatrixGF th = transpose(h);
        const MatrixGF base = transpose(multiply(f, th, multiply(f, delta, h)));
        const MatrixGF e = multiply(f, th, eta);
        MatrixGF x(1, upper.size());
        for_each_matrix(f, 1, upper.size(), [&](const MatrixGF& free) {
            MatrixGF b = base;
            for (std::size_t t = 0; t < upper.size(); ++t) {
                b(upper[t].first, upper[t].second) ^= free.entries[t];
                b(upper[t].second, upper[t].first) ^= free.entries[t];
            }
            MatrixGF u = MatrixGF::identity(dim);
            set_block(u, 0, k, b);
            set_block(u, 0, 2 * k, e);
            set_block(u, 2 * k, k, h);
            unipotent.push_back(std::move(u));
        });
    });

    std::vector<MatrixGF> out;
    for (const auto& a : gl) {
        const MatrixGF ainv_t = transpose(*inverse(f, a));
        for (const auto& i : so2) {
            MatrixGF levi(dim, dim);
            set_block(levi, 0, 0, a);
            set_block(levi, k, k, ainv_t);
            set_block(levi, 2 * k, 2 * k, i);
            for (const auto& u : unipotent) out.push_back(multiply(f, levi, u));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// The double coset Q sigma_r Q (or rho Q sigma_r Q), sorted. `q_elements`
/// must be Q-(2n,q) as returned by enumerate_q_minus.
inline std::vector<MatrixGF> double_coset(const FieldCtx& f, unsigned n, unsigned r, bool rho,
                                          const std::vector<MatrixGF>& q_elements, unsigned workers = 1) {
    const std::uint64_t m = q_elements.size();
    if (m * m > kProductBudget)
        throw BudgetExceeded("double_coset: |Q-|^2 = " + std::to_string(m * m) + " products exceeds the budget of 10^7");
    const MatrixGF sigma = weyl_sigma(n, r);
    const MatrixGF prefix = rho ? weyl_rho(n) : MatrixGF::identity(2 * n);
    std::vector<MatrixGF> left;
    left.reserve(q_elements.size());
    for (const auto& x : q_elements) left.push_back(multiply(f, multiply(f, prefix, x), sigma));

    std::vector<std::vector<MatrixGF>> parts(std::max(1u, workers));
    parallel_chunks(left.size(), workers, [&](std::size_t b, std::size_t e, unsigned w) {
        std::unordered_set<MatrixGF, MatrixHash> seen;
        for (std::size_t i = b; i < e; ++i)
            for (const auto& y : q_elements) seen.insert(multiply(f, left[i], y));
        parts[w].assign(seen.begin(), seen.end());
    });
    std::vector<MatrixGF> out;
    for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<MatrixGF> double_coset_elements(const DoubleCosetSpec& s, unsigned workers = 1) {
    validate(s);
    const auto qm = enumerate_q_minus(s.field, s.n);
    return double_coset(s.field, s.n, s.sigma_index(), s.rho_twisted(), qm, workers);
}

/// Matrix traces of the elements, in the given order.
inline std::vector<Elem> element_traces(const std::vector<MatrixGF>& elements) {
    std::vector<Elem> out;
    out.reserve(elements.size());
    for (const auto& g : elements) out.push_back(matrix_trace(g));
    return out;
}

// ---------------------------------------------------------------------------
// Exponential sums
// ---------------------------------------------------------------------------

/// sum over the given traces of lambda(a Tr w).
inline BigInt exp_sum_enumerated(const FieldCtx& f, const std::vector<Elem>& traces, Elem a) {
    long s = 0;
    for (Elem t : traces) s += f.lambda(f.mul(a, t));
    return s;
}

/// sum_{w in DC} lambda(a Tr w) in closed form:
/// +-A K (i = 1, 3), -+A K^2 (i = 2), -+A (K^2 + q^2 - q) (i = 4).
inline BigInt exp_sum_closed_from_k(const DoubleCosetSpec& s, const Cardinality& c, long k) {
    const BigInt Q = s.q();
    const int pm = sign_value(s.sign);
    switch (s.family) {
        case 1:
        case 3:
            return pm * c.A * k;
        case 2:
            return -pm * c.A * BigInt(k) * k;
        default:
            return -pm * c.A * (BigInt(k) * k + Q * Q - Q);
    }
}

inline BigInt exp_sum_dc(const DoubleCosetSpec& s, Elem a) {
    detail::require_nonzero(s.field, a, "exp_sum_dc");
    return exp_sum_closed_from_k(s, dc_cardinality(s), static_cast<long>(kloosterman(s.field, a)));
}

/// sum over Q sigma_r Q (rho = false) or rho Q sigma_r Q (rho = true) of
/// lambda(a Tr w), through the general Gauss-sum evaluation for every r.
inline BigInt exp_sum_double_coset(const FieldCtx& f, unsigned n, unsigned r, bool rho, Elem a) {
    if (r >= n) throw DomainError("exp_sum_double_coset: r must satisfy 0 <= r <= n-1");
    detail::require_nonzero(f, a, "exp_sum_double_coset");
    const unsigned long q = f.q();
    const BigInt Q = q;
    const long k = static_cast<long>(kloosterman(f, a));
    const long nn = n, rr = r;
    BigInt weyl;
    if (r % 2 == 0)
        weyl = -ipow(Q, static_cast<unsigned long>(rr * nn - rr * rr / 4)) * detail::qprod(Q, rr / 2, 2, 1);
    else
        weyl = ipow(Q, static_cast<unsigned long>(rr * nn - (rr + 1) * (rr + 1) / 4)) * detail::qprod(Q, (rr + 1) / 2, 2, 1);
    BigInt s = ipow(Q, detail::half((nn - 1) * (nn + 2), "exp sum")) * q_binomial(q, n - 1, r) *
               kgl_from_k(q, k, n - 1 - r) * weyl;
    if (rho) return -(Q + 1) * s;
    return s * k;
}

// ---------------------------------------------------------------------------
// Trace distributions
// ---------------------------------------------------------------------------

/// counts[beta] = |{ w in DC : Tr w = beta }|.
struct TraceDistribution {
    std::vector<BigInt> counts;

    BigInt total() const {
        BigInt t = 0;
        for (const auto& c : counts) t += c;
        return t;
    }
    /// sum_beta N(beta) beta in F_q.
    Elem weighted_sum() const {
        Elem s = 0;
        for (std::size_t b = 0; b < counts.size(); ++b)
            if (mpz_odd_p(counts[b].get_mpz_t())) s ^= static_cast<Elem>(b);
        return s;
    }
    friend bool operator==(const TraceDistribution&, const TraceDistribution&) = default;
};

enum class TraceMode { enumerated, closed_form };

inline TraceDistribution trace_distribution_of(const FieldCtx& f, const std::vector<Elem>& traces) {
    TraceDistribution d{std::vector<BigInt>(f.q(), 0)};
    for (Elem t : traces) d.counts[t] += 1;
    return d;
}

/// Closed-form counts N_DC(beta) = (A B + sign A c(beta)) / q, with c(beta)
/// keyed by tr(1/beta) for i = 1, 3 and by K(1/beta) for i = 2, 4.
inline TraceDistribution trace_distribution_closed(const DoubleCosetSpec& s) {
    const Cardinality c = dc_cardinality(s);
    const FieldCtx& f = s.field;
    const BigInt Q = s.q();
    const int pm = sign_value(s.sign);
    std::vector<std::int64_t> ktab;
    if (s.family == 2 || s.family == 4) ktab = kloosterman_table(f);
    TraceDistribution d{std::vector<BigInt>(f.q(), 0)};
    for (Elem beta = 0; beta < f.q(); ++beta) {
        BigInt cls;
        BigInt sgn = pm;
        if (s.family == 1 || s.family == 3) {
            if (beta == 0)
                cls = 1;
            else
                cls = f.trace(f.inv(beta)) == 0 ? BigInt(Q + 1) : BigInt(1 - Q);
        } else {
            sgn = -pm;
            const BigInt shift = s.family == 2 ? Q : BigInt(Q * Q);  // q (i=2) or q^2 (i=4)
            if (beta == 0)
                cls = Q * shift - shift - 1;
            else
                cls = Q * static_cast<long>(ktab[f.inv(beta)]) - shift - 1;
        }
        d.counts[beta] = exact_div(c.A * c.B + sgn * c.A * cls, Q, "trace distribution");
        if (d.counts[beta] < 0) throw ExactnessError(s.name() + ": negative trace count");
    }
    return d;
}

inline TraceDistribution trace_distribution(const DoubleCosetSpec& s, TraceMode mode, unsigned workers = 1) {
    validate(s);
    if (mode == TraceMode::closed_form) return trace_distribution_closed(s);
    return trace_distribution_of(s.field, element_traces(double_coset_elements(s, workers)));
}

/// positive[beta]: whether N_DC(beta) > 0 according to the positivity and
/// vanishing statements for the trace counts (three exceptional cosets vanish
/// on a class).
inline std::vector<bool> expected_positive_classes(const DoubleCosetSpec& s) {
    validate(s);
    const FieldCtx& f = s.field;
    std::vector<bool> pos(f.q(), true);
    for (Elem beta = 1; beta < f.q(); ++beta) {
        const int t = f.trace(f.inv(beta));
        if (s.family == 3 && s.sign == Sign::plus && s.n == 2) pos[beta] = t == 0;
        if (s.family == 1 && s.sign == Sign::minus && s.n == 1) pos[beta] = t == 1;
        if (s.family == 4 && s.sign == Sign::minus && s.n == 3 && f.q() == 2) pos[beta] = false;
    }
    return pos;
}

// ---------------------------------------------------------------------------
// The b_r Gauss sums
// ---------------------------------------------------------------------------

/// Closed form of b_r: q^(r(r+6)/4) prod_{j<=r/2} (q^(2j-1) - 1) for r even,
/// -q^((r^2+4r-1)/4) prod_{j<=(r+1)/2} (q^(2j-1) - 1) for r odd.
inline BigInt b_r_closed(unsigned long q, unsigned r) {
    const BigInt Q = q;
    const long rr = r;
    if (r % 2 == 0) return ipow(Q, detail::quarter(rr * (rr + 6), "b_r")) * detail::qprod(Q, rr / 2, 2, 1);
    return -ipow(Q, detail::quarter(rr * rr + 4 * rr - 1, "b_r")) * detail::qprod(Q, (rr + 1) / 2, 2, 1);
}

/// sum over nonsingular symmetric r x r B and h in F^{r x 2} of
/// lambda(c Tr(d_a th B h)), by enumeration.
inline BigInt b_r_sum(const FieldCtx& f, unsigned r, Elem c = 1) {
    if (r == 0) throw DomainError("b_r_sum: r must be positive");
    detail::require_nonzero(f, c, "b_r_sum");
    const BigInt cost = ipow(BigInt(f.q()), r * (r + 1) / 2 + 2 * r);
    if (cost > BigInt(std::to_string(kProductBudget)))
        throw BudgetExceeded("b_r_sum: " + cost.get_str() + " terms exceeds the budget of 10^7");
    const MatrixGF delta(2, 2, {1, 1, 0, f.a_param()});
    std::vector<MatrixGF> omega;
    const unsigned free = r * (r + 1) / 2;
    for_each_matrix(f, 1, free, [&](const MatrixGF& v) {
        MatrixGF b(r, r);
        std::size_t t = 0;
        for (unsigned i = 0; i < r; ++i)
            for (unsigned j = i; j < r; ++j) {
                b(i, j) = v.entries[t];
                b(j, i) = v.entries[t];
                ++t;
            }
        if (inverse(f, b)) omega.push_back(std::move(b));
    });
    long total = 0;
    for_each_matrix(f, r, 2, [&](const MatrixGF& h) {
        const MatrixGF th = transpose(h);
        for (const auto& b : omega) {
            const Elem tr = matrix_trace(multiply(f, delta, multiply(f, th, multiply(f, b, h))));
            total += f.lambda(f.mul(c, tr));
        }
    });
    return total;
}

}  // namespace ominus

#endif
