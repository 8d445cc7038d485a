#ifndef OMINUS_COSET_CODES_HPP
#define OMINUS_COSET_CODES_HPP

/**
 * Binary codes attached to a double coset DC = {g_1, ..., g_N} (canonical
 * lexicographic order). The code C(DC) is
 *
 *   { u in F_2^N : sum_j u_j Tr(g_j) = 0 in F_q },
 *
 * and its dual is { c(a) = (tr(a Tr g_1), ..., tr(a Tr g_N)) : a in F_q }.
 *
 * The weight distribution of C(DC) only depends on the trace counts
 * N_DC(beta): a word with nu_beta ones on the coordinates of trace beta lies
 * in C(DC) iff sum nu_beta beta = 0, so
 *
 *   C_j = sum over {nu_beta} with sum nu_beta = j, sum nu_beta beta = 0
 *         of prod_beta binomial(N_DC(beta), nu_beta),
 *
 * which weight_distribution_prefix evaluates by dynamic programming over
 * beta with state (weight so far, partial field sum).
 */

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "finite_field.hpp"
#include "kloosterman.hpp"
#include "ominus_groups.hpp"

namespace ominus {

/// Largest j_max accepted by weight_distribution_prefix.
inline constexpr unsigned kMaxPrefix = 1000;

class Codeword {
   public:
    Codeword() = default;
    explicit Codeword(std::size_t length) : length_(length), words_((length + 63) / 64, 0) {}

    std::size_t length() const { return length_; }
    bool bit(std::size_t j) const { return (words_[j / 64] >> (j % 64)) & 1u; }
    void set(std::size_t j, bool v) {
        const std::uint64_t m = std::uint64_t{1} << (j % 64);
        if (v)
            words_[j / 64] |= m;
        else
            words_[j / 64] &= ~m;
    }
    std::size_t weight() const {
        std::size_t w = 0;
        for (auto x : words_) w += static_cast<std::size_t>(std::popcount(x));
        return w;
    }
    bool is_zero() const {
        return std::all_of(words_.begin(), words_.end(), [](std::uint64_t x) { return x == 0; });
    }

    /// Hex-packed bits; the first coordinate is the most significant bit of the
    /// first digit, the final digit is zero-padded on the right.
    std::string to_hex() const {
        static constexpr char digits[] = "0123456789abcdef";
        std::string out;
        for (std::size_t j = 0; j < length_; j += 4) {
            unsigned nib = 0;
            for (std::size_t k = 0; k < 4; ++k) nib = (nib << 1) | (j + k < length_ && bit(j + k) ? 1u : 0u);
            out.push_back(digits[nib]);
        }
        return out;
    }

    Codeword& operator^=(const Codeword& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
        return *this;
    }
    friend Codeword operator^(Codeword a, const Codeword& b) { return a ^= b; }
    friend auto operator<=>(const Codeword&, const Codeword&) = default;
    friend bool operator==(const Codeword&, const Codeword&) = default;

   private:
    std::size_t length_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Tr(g_j) for the canonically ordered elements of the double coset.
inline std::vector<Elem> coset_traces(const DoubleCosetSpec& s, unsigned workers = 1) {
    return element_traces(double_coset_elements(s, workers));
}

inline Codeword dual_codeword(const FieldCtx& f, const std::vector<Elem>& traces, Elem a) {
    Codeword c(traces.size());
    if (a == 0) return c;
    for (std::size_t j = 0; j < traces.size(); ++j) c.set(j, f.trace(f.mul(a, traces[j])) == 1);
    return c;
}

inline Codeword dual_codeword(const DoubleCosetSpec& s, Elem a) {
    if (!s.field.contains(a)) throw DomainError("dual_codeword: a is not a field element");
    return dual_codeword(s.field, coset_traces(s), a);
}

/// w(c(a)) = (N - sum_{w in DC} lambda(a Tr w)) / 2:
/// A(B -+ K)/2 for i = 1, 3; A(B +- K^2)/2 for i = 2; A(B +- (q^2 - q + K^2))/2 for i = 4.
inline BigInt codeword_weight_closed(const DoubleCosetSpec& s, Elem a) {
    detail::require_nonzero(s.field, a, "codeword_weight_closed");
    const Cardinality c = dc_cardinality(s);
    return exact_div(c.N - exp_sum_closed_from_k(s, c, static_cast<long>(kloosterman(s.field, a))), 2,
                     "codeword weight");
}

/// Weights of all nonzero-index dual words; slot 0 holds 0.
inline std::vector<BigInt> dual_weights_closed(const DoubleCosetSpec& s) {
    const Cardinality c = dc_cardinality(s);
    const auto ktab = kloosterman_table(s.field);
    std::vector<BigInt> w(s.q(), 0);
    for (Elem a = 1; a < s.field.q(); ++a)
        w[a] = exact_div(c.N - exp_sum_closed_from_k(s, c, static_cast<long>(ktab[a])), 2, "codeword weight");
    return w;
}

struct WeightPrefix {
    unsigned j_max = 0;
    std::vector<BigInt> counts;  // C_0 .. C_{j_max}
};

/// The exact counts C_0..C_{j_max} of the binary code determined by the given
/// trace counts. By orthogonality of the additive characters,
///
///   C_j = q^-1 sum_a [x^j] (1+x)^P(a) (1-x)^(N-P(a)),  P(a) = sum_{tr(a beta)=0} N(beta),
///
/// which equals the sum over compositions {nu_beta} of j with sum nu_beta beta = 0.
/// The character sums sum_beta N(beta) lambda(a beta) come from one Walsh-Hadamard
/// transform, since tr(a beta) is linear in the bits of beta.
inline WeightPrefix weight_prefix_from_distribution(const FieldCtx& f, const TraceDistribution& dist, unsigned j_max) {
    if (j_max > kMaxPrefix) throw DomainError("weight prefix: j_max must not exceed 1000");
    if (dist.counts.size() != f.q()) throw DomainError("weight prefix: trace distribution does not match the field");
    const std::size_t q = f.q();
    const BigInt n = dist.total();

    std::vector<BigInt> h = dist.counts;
    for (std::size_t len = 1; len < q; len <<= 1)
        for (std::size_t i = 0; i < q; i += 2 * len)
            for (std::size_t k = i; k < i + len; ++k) {
                BigInt u = h[k] + h[k + len];
                h[k + len] = h[k] - h[k + len];
                h[k] = std::move(u);
            }

    // group a by P(a) = (N + sum_beta N(beta) lambda(a beta)) / 2
    std::map<BigInt, unsigned long> multiplicity;
    for (Elem a = 0; a < q; ++a) {
        std::size_t v = 0;
        for (unsigned i = 0; i < f.r(); ++i) v |= static_cast<std::size_t>(f.trace(f.mul(a, Elem{1} << i))) << i;
        multiplicity[exact_div(n + h[v], 2, "weight prefix")] += 1;
    }

    auto binomial_row = [j_max](const BigInt& m) {  // binom(m, 0..j_max)
        std::vector<BigInt> row{1};
        for (unsigned t = 1; t <= j_max; ++t) row.push_back(m < t ? BigInt(0) : BigInt(row.back() * (m - (t - 1)) / t));
        return row;
    };
    std::vector<BigInt> acc(j_max + 1, 0);
    for (const auto& [p, mult] : multiplicity) {
        const auto plus = binomial_row(p), minus = binomial_row(n - p);
        for (unsigned j = 0; j <= j_max; ++j) {
            BigInt c = 0;
            for (unsigned t = 0; t <= j; ++t) {
                if (plus[t] == 0) break;
                if ((j - t) % 2)
                    c -= plus[t] * minus[j - t];
                else
                    c += plus[t] * minus[j - t];
            }
            acc[j] += c * mult;
        }
    }
    WeightPrefix out{j_max, {}};
    for (auto& c : acc) out.counts.push_back(exact_div(c, BigInt(static_cast<unsigned long>(q)), "weight prefix"));
    return out;
}

/// C_{i,0}..C_{i,j_max} of C(DC) from the closed-form trace counts (any n).
/// Families 2 and 4 need q >= 4.
inline WeightPrefix weight_distribution_prefix(const DoubleCosetSpec& s, unsigned j_max) {
    validate(s);
    if ((s.family == 2 || s.family == 4) && s.q() < 4)
        throw DomainError(s.name() + ": weight distributions of families 2 and 4 are stated only for q >= 4");
    return weight_prefix_from_distribution(s.field, trace_distribution_closed(s), j_max);
}

/// The dual words c(a) for a = 0..q-1.
inline std::vector<Codeword> dual_code(const FieldCtx& f, const std::vector<Elem>& traces) {
    std::vector<Codeword> out;
    for (Elem a = 0; a < f.q(); ++a) out.push_back(dual_codeword(f, traces, a));
    return out;
}

/// { a : c(a) = 0 }, i.e. tr(a beta) = 0 for every trace value beta that occurs.
inline std::vector<Elem> dual_map_kernel(const FieldCtx& f, const TraceDistribution& dist) {
    std::vector<Elem> out;
    for (Elem a = 0; a < f.q(); ++a) {
        bool zero = true;
        for (Elem beta = 0; beta < f.q() && zero; ++beta)
            if (dist.counts[beta] != 0 && f.trace(f.mul(a, beta)) == 1) zero = false;
        if (zero) out.push_back(a);
    }
    return out;
}

/// The three cosets whose dual map a -> c(a) has kernel F_2 instead of {0}:
/// DC_3^+(2,q) for q in {2,4} and DC_4^-(3,2).
inline bool has_degenerate_kernel(const DoubleCosetSpec& s) {
    if (s.family == 3 && s.sign == Sign::plus && s.n == 2 && s.q() <= 4) return true;
    return s.family == 4 && s.sign == Sign::minus && s.n == 3 && s.q() == 2;
}

struct FullDistribution {
    std::vector<BigInt> counts;  // C_0..C_N
    unsigned dual_rank = 0;
};

/// Complete weight distribution of C(DC) through the MacWilliams transform of
/// the explicitly built dual: C(x) = |D|^-1 sum_w B_w (1 - x)^w (1 + x)^(N - w).
inline FullDistribution macwilliams_from_dual(const std::vector<Codeword>& dual_words, std::size_t n) {
    std::set<Codeword> distinct(dual_words.begin(), dual_words.end());
    const std::size_t size = distinct.size();
    if (!std::has_single_bit(size)) throw ExactnessError("dual code size is not a power of two");
    std::vector<BigInt> b(n + 1, 0);
    for (const auto& w : distinct) b[w.weight()] += 1;

    std::vector<BigInt> total(n + 1, 0);
    for (std::size_t w = 0; w <= n; ++w) {
        if (b[w] == 0) continue;
        std::vector<BigInt> poly{1};
        auto mul_linear = [&poly](int sign) {  // poly *= (1 + sign x)
            poly.push_back(0);
            for (std::size_t k = poly.size() - 1; k > 0; --k) poly[k] += sign * poly[k - 1];
        };
        for (std::size_t k = 0; k < w; ++k) mul_linear(-1);
        for (std::size_t k = w; k < n; ++k) mul_linear(+1);
        for (std::size_t j = 0; j <= n; ++j) total[j] += b[w] * poly[j];
    }
    FullDistribution out;
    out.dual_rank = static_cast<unsigned>(std::countr_zero(size));
    for (auto& t : total) out.counts.push_back(exact_div(t, BigInt(static_cast<unsigned long>(size)), "MacWilliams"));
    return out;
}

inline FullDistribution full_weight_distribution_small(const DoubleCosetSpec& s) {
    validate(s);
    const Cardinality c = dc_cardinality(s);
    if (c.N > 64) throw BudgetExceeded(s.name() + ": full weight distribution needs N <= 64, N = " + c.N.get_str());
    if (s.field.r() > 16) throw BudgetExceeded("full weight distribution needs dual rank <= 16");
    const auto traces = coset_traces(s);
    return macwilliams_from_dual(dual_code(s.field, traces), traces.size());
}

struct DelsarteReport {
    bool dual_matches = false;        // dual of C(DC) equals {c(a)}
    std::size_t code_size = 0;        // |C(DC)| found by the scan
    std::size_t distinct_duals = 0;   // |{c(a)}|
    std::vector<Elem> kernel;         // {a : c(a) = 0}
    bool kernel_expected = false;     // {0}, or F_2 for the degenerate cosets
    bool passed() const { return dual_matches && kernel_expected; }
};

/// Exhaustive check, for N <= 24, that the binary dual of C(DC) is exactly
/// {c(a) : a in F_q} and that a -> c(a) has the expected kernel.
inline DelsarteReport delsarte_check(const DoubleCosetSpec& s) {
    validate(s);
    const Cardinality card = dc_cardinality(s);
    if (card.N > 24) throw BudgetExceeded(s.name() + ": delsarte_check needs N <= 24, N = " + card.N.get_str());
    const FieldCtx& f = s.field;
    const auto traces = coset_traces(s);
    const std::size_t n = traces.size();

    // Gray-code scan of F_2^N, keeping a row-echelon basis of C(DC).
    std::vector<std::uint32_t> basis;  // basis[i] has leading bit lead[i]
    auto insert = [&basis](std::uint32_t v) {
        for (auto b : basis)
            if ((v ^ b) < v) v ^= b;
        if (v == 0) return;
        basis.push_back(v);
        std::sort(basis.begin(), basis.end(), std::greater<>());
    };
    std::size_t code_size = 1;
    std::uint32_t u = 0;
    Elem syndrome = 0;
    for (std::uint64_t k = 1; k < (std::uint64_t{1} << n); ++k) {
        const unsigned j = static_cast<unsigned>(std::countr_zero(k));
        u ^= std::uint32_t{1} << j;
        syndrome ^= traces[j];
        if (syndrome == 0) {
            ++code_size;
            insert(u);
        }
    }

    // Dual of C(DC): all x with <x, b> = 0 for each basis vector b.
    std::set<std::uint32_t> dual_from_code;
    {
        // Reduced row echelon form with pivots at the leading bits.
        std::vector<std::uint32_t> rref = basis;
        for (std::size_t i = 0; i < rref.size(); ++i) {
            const std::uint32_t lead = std::bit_floor(rref[i]);
            for (std::size_t k = 0; k < rref.size(); ++k)
                if (k != i && (rref[k] & lead)) rref[k] ^= rref[i];
        }
        std::uint32_t pivots = 0;
        for (auto r : rref) pivots |= std::bit_floor(r);
        std::vector<std::uint32_t> null_basis;
        for (unsigned col = 0; col < n; ++col) {
            const std::uint32_t bit = std::uint32_t{1} << col;
            if (pivots & bit) continue;
            std::uint32_t v = bit;
            for (auto r : rref)
                if (r & bit) v |= std::bit_floor(r);
            null_basis.push_back(v);
        }
        for (std::uint64_t combo = 0; combo < (std::uint64_t{1} << null_basis.size()); ++combo) {
            std::uint32_t v = 0;
            for (std::size_t i = 0; i < null_basis.size(); ++i)
                if ((combo >> i) & 1u) v ^= null_basis[i];
            dual_from_code.insert(v);
        }
    }

    std::set<std::uint32_t> dual_from_traces;
    for (Elem a = 0; a < f.q(); ++a) {
        std::uint32_t v = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (f.trace(f.mul(a, traces[j]))) v |= std::uint32_t{1} << j;
        dual_from_traces.insert(v);
    }

    DelsarteReport rep;
    rep.code_size = code_size;
    rep.distinct_duals = dual_from_traces.size();
    rep.dual_matches = dual_from_code == dual_from_traces && code_size == (std::size_t{1} << basis.size());
    rep.kernel = dual_map_kernel(f, trace_distribution_of(f, traces));
    const std::vector<Elem> expected = has_degenerate_kernel(s) ? std::vector<Elem>{0, 1} : std::vector<Elem>{0};
    rep.kernel_expected = rep.kernel == expected;
    return rep;
}

}  // namespace ominus

#endif
