#ifndef OMINUS_VERIFY_HPP
#define OMINUS_VERIFY_HPP

/**
 * verify_all: every property suite of the library at desk-scale parameters
 * q = 2^r, r <= max_r. Failures are recorded, never thrown.
 */

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coset_codes.hpp"
#include "finite_field.hpp"
#include "kloosterman.hpp"
#include "moment_recursion.hpp"
#include "ominus_groups.hpp"

namespace ominus {

inline constexpr unsigned kMaxVerifyDegree = 8;

struct Check {
    std::string name;
    std::string params;
    bool passed = true;
    std::string detail;
};

struct Suite {
    std::string name;
    std::vector<Check> checks;
    std::vector<std::string> skipped;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    }
    void add(std::string check, std::string params, bool ok, std::string detail = {}) {
        checks.push_back({std::move(check), std::move(params), ok, ok ? std::string{} : std::move(detail)});
    }
    /// Runs body; a thrown exception is a failed check.
    void run(std::string check, std::string params, const std::function<std::pair<bool, std::string>()>& body) {
        try {
            auto [ok, detail] = body();
            add(std::move(check), std::move(params), ok, std::move(detail));
        } catch (const std::exception& e) {
            add(std::move(check), std::move(params), false, std::string("exception: ") + e.what());
        }
    }
};

struct VerifyOptions {
    unsigned max_r = 2;
    std::optional<std::uint32_t> modulus;  // replaces the default modulus at its degree
    unsigned workers = 1;
};

struct VerifySummary {
    std::vector<Suite> suites;
    bool passed() const {
        return std::all_of(suites.begin(), suites.end(), [](const Suite& s) { return s.passed(); });
    }
};

namespace detail {

inline std::string qname(unsigned long q) { return "q=" + std::to_string(q); }

using Fields = std::map<unsigned, FieldCtx>;

inline std::pair<bool, std::string> ok() { return {true, {}}; }
inline std::pair<bool, std::string> fail(std::string why) { return {false, std::move(why)}; }

inline Suite field_suite(const VerifyOptions& o, Fields& fields) {
    Suite s{"finite_field", {}, {}};
    for (unsigned r = 1; r <= o.max_r; ++r) {
        std::uint32_t mod = default_modulus(r);
        if (o.modulus && poly_degree(*o.modulus) == static_cast<int>(r)) mod = *o.modulus;
        const std::string p = "r=" + std::to_string(r) + " modulus=" + hex(mod);
        if (!is_irreducible(mod)) {
            s.add("modulus is irreducible", p, false, hex(mod) + " is reducible over GF(2)");
            s.skipped.push_back("r=" + std::to_string(r) + ": no field without an irreducible modulus");
            continue;
        }
        s.add("modulus is irreducible", p, true);
        const FieldCtx f = make_field(r, mod, std::nullopt);
        fields.emplace(r, f);
        const Elem q = f.q();
        s.run("multiplication agrees with carry-less product mod m", p, [&] {
            for (Elem x = 0; x < q; ++x)
                for (Elem y = 0; y < q; ++y)
                    if (f.mul(x, y) != poly_mod(clmul(x, y), mod)) return fail("x=" + hex(x) + " y=" + hex(y));
            return ok();
        });
        s.run("every nonzero element is invertible", p, [&] {
            for (Elem x = 1; x < q; ++x)
                if (f.mul(x, f.inv(x)) != 1) return fail("x=" + hex(x));
            return ok();
        });
        s.run("trace is F_2-linear, Frobenius invariant and balanced", p, [&] {
            unsigned ones = 0;
            for (Elem x = 0; x < q; ++x) {
                ones += f.trace(x);
                if (f.trace(f.square(x)) != f.trace(x)) return fail("tr(x^2) != tr(x) at " + hex(x));
                for (Elem y = 0; y < q; ++y)
                    if (f.trace(x ^ y) != (f.trace(x) ^ f.trace(y))) return fail("x=" + hex(x) + " y=" + hex(y));
            }
            if (ones != q / 2) return fail("trace-one count " + std::to_string(ones));
            return ok();
        });
        s.run("a_param has trace one", p, [&] { return f.trace(f.a_param()) == 1 ? ok() : fail(hex(f.a_param())); });
    }
    return s;
}

inline Suite kloosterman_suite(const VerifyOptions& o, const Fields& fields) {
    Suite s{"kloosterman", {}, {}};
    for (const auto& [r, f] : fields) {
        const unsigned long q = f.q();
        const std::string p = qname(q);
        const auto ktab = kloosterman_table(f, o.workers);
        s.run("MK^1 = 1 and MK^2 = q^2 - q - 1", p, [&] {
            const auto m = moments_from_values(ktab, 1, 2);
            if (m.values[1] != 1) return fail("MK^1 = " + m.values[1].get_str());
            if (m.values[2] != BigInt(q * q - q - 1)) return fail("MK^2 = " + m.values[2].get_str());
            return ok();
        });
        s.run("Weil bound |K(a)| <= 2 sqrt(q)", p, [&] {
            for (Elem a = 1; a < q; ++a)
                if (!within_weil_bound(ktab[a], q)) return fail("a=" + hex(a));
            return ok();
        });
        if (q <= 64)
            s.run("Carlitz identity K_2 = K^2 - q (direct double sum)", p, [&] {
                for (Elem a = 1; a < q; ++a)
                    if (kloosterman_sum(f, 2, a) != ktab[a] * ktab[a] - static_cast<std::int64_t>(q))
                        return fail("a=" + hex(a));
                return ok();
            });
        if (r >= 2)
            s.run("range of K equals {tau : |tau| < 2 sqrt(q), tau = -1 mod 4}", p,
                  [&] { return range_spectrum(f) == predicted_kloosterman_range(q) ? ok() : fail("range differs"); });
        else
            s.skipped.push_back("range of K at q=2 (needs r >= 2)");
        if (q <= 16)
            s.run("K_GL closed form equals the three-term recursion, t <= 6", p, [&] {
                for (Elem a = 1; a < q; ++a)
                    for (unsigned t = 1; t <= 6; ++t)
                        if (kgl_closed(f, t, a) != kgl_recursive(f, t, a))
                            return fail("a=" + hex(a) + " t=" + std::to_string(t));
                return ok();
            });
        if (q <= 64) {
            s.run("twisted sums of K_m, m = 1, 2", p, [&] {
                for (unsigned m = 1; m <= 2; ++m)
                    for (Elem b = 0; b < q; ++b) {
                        const auto [lhs, rhs] = twisted_sum_check(f, m, b);
                        if (lhs != rhs) return fail("m=" + std::to_string(m) + " beta=" + hex(b));
                    }
                return ok();
            });
            s.run("Artin-Schreier sums equal K(beta) - 1 and -K(beta) - 1", p, [&] {
                for (Elem b = 1; b < q; ++b) {
                    const auto [s0, s1] = artin_schreier_sums(f, b);
                    if (s0 != ktab[b] - 1 || s1 != -ktab[b] - 1) return fail("beta=" + hex(b));
                }
                return ok();
            });
        }
    }
    return s;
}

struct GroupCase {
    unsigned n;
    unsigned r;
};

inline std::vector<GroupCase> group_cases(unsigned max_r) {
    std::vector<GroupCase> out;
    for (unsigned r = 1; r <= std::min(max_r, 8u); ++r) out.push_back({1, r});
    if (max_r >= 1) {
        out.push_back({2, 1});
        out.push_back({3, 1});
    }
    if (max_r >= 2) out.push_back({2, 2});
    return out;
}

/// The family specs that exist at (n, field).
inline std::vector<DoubleCosetSpec> specs_at(unsigned n, const FieldCtx& f) {
    std::vector<DoubleCosetSpec> out;
    for (Sign sg : {Sign::plus, Sign::minus})
        for (int i = 1; i <= 4; ++i) {
            DoubleCosetSpec s{i, sg, n, f};
            try {
                validate(s);
                out.push_back(s);
            } catch (const DomainError&) {
            }
        }
    return out;
}

inline Suite group_suite(const VerifyOptions& o, const Fields& fields) {
    Suite s{"ominus_groups", {}, {}};
    for (auto [n, r] : group_cases(o.max_r)) {
        auto it = fields.find(r);
        if (it == fields.end()) continue;
        const FieldCtx& f = it->second;
        const unsigned long q = f.q();
        const std::string p = "n=" + std::to_string(n) + " " + qname(q);
        if (n == 1)
            s.run("|SO-(2,q)| = q + 1", p, [&] {
                const auto so = enumerate_so2(f);
                return so.size() == q + 1 ? ok() : fail("size " + std::to_string(so.size()));
            });
        std::vector<MatrixGF> qm;
        s.run("|Q-| matches the order formula and Q- preserves theta", p, [&] {
            qm = enumerate_q_minus(f, n);
            if (BigInt(static_cast<unsigned long>(qm.size())) != q_minus_order(q, n))
                return fail("size " + std::to_string(qm.size()));
            for (const auto& g : qm)
                if (!is_isometry(f, n, g)) return fail("non-isometry found");
            return ok();
        });
        if (qm.empty()) continue;
        std::vector<std::vector<MatrixGF>> cosets;
        std::vector<std::pair<unsigned, bool>> labels;
        s.run("double coset sizes match the product formula", p, [&] {
            for (unsigned rr = 0; rr < n; ++rr)
                for (bool rho : {false, true}) {
                    cosets.push_back(double_coset(f, n, rr, rho, qm, o.workers));
                    labels.emplace_back(rr, rho);
                    if (BigInt(static_cast<unsigned long>(cosets.back().size())) != double_coset_size(q, n, rr))
                        return fail("r=" + std::to_string(rr) + " rho=" + std::to_string(rho));
                }
            return ok();
        });
        s.run("the double cosets partition O-(2n,q)", p, [&] {
            std::vector<MatrixGF> all;
            for (const auto& c : cosets) all.insert(all.end(), c.begin(), c.end());
            std::sort(all.begin(), all.end());
            if (std::adjacent_find(all.begin(), all.end()) != all.end()) return fail("cosets overlap");
            if (BigInt(static_cast<unsigned long>(all.size())) != o_minus_order(q, n))
                return fail("union has " + std::to_string(all.size()) + " elements");
            return ok();
        });
        s.run("exponential sums over double cosets match the Gauss-sum evaluation", p, [&] {
            for (std::size_t c = 0; c < cosets.size(); ++c) {
                const auto tr = element_traces(cosets[c]);
                for (Elem a = 1; a < q; ++a)
                    if (exp_sum_enumerated(f, tr, a) != exp_sum_double_coset(f, n, labels[c].first, labels[c].second, a))
                        return fail("r=" + std::to_string(labels[c].first) + " a=" + hex(a));
            }
            return ok();
        });
        for (const auto& spec : specs_at(n, f)) {
            const std::string sp = spec.name();
            s.run("coset size = A B, exponential sums and trace counts in closed form", sp, [&] {
                const auto el = double_coset_elements(spec, o.workers);
                const Cardinality card = dc_cardinality(spec);
                if (BigInt(static_cast<unsigned long>(el.size())) != card.N) return fail("size");
                const auto tr = element_traces(el);
                for (Elem a = 1; a < q; ++a)
                    if (exp_sum_enumerated(f, tr, a) != exp_sum_dc(spec, a)) return fail("exp sum a=" + hex(a));
                const auto dist = trace_distribution_of(f, tr);
                if (dist != trace_distribution_closed(spec)) return fail("trace counts");
                const auto pos = expected_positive_classes(spec);
                for (Elem b = 0; b < q; ++b)
                    if ((dist.counts[b] > 0) != pos[b]) return fail("vanishing class beta=" + hex(b));
                return ok();
            });
        }
    }
    for (unsigned r = 1; r <= std::min(o.max_r, 2u); ++r) {
        auto it = fields.find(r);
        if (it == fields.end()) continue;
        for (unsigned k = 1; k <= 2; ++k)
            s.run("b_r Gauss sum matches its closed form", "k=" + std::to_string(k) + " " + qname(it->second.q()), [&] {
                for (Elem c = 1; c < it->second.q(); ++c)
                    if (b_r_sum(it->second, k, c) != b_r_closed(it->second.q(), k)) return fail("c=" + hex(c));
                return ok();
            });
    }
    return s;
}

inline std::pair<bool, std::string> check_full_distribution(const DoubleCosetSpec& spec) {
    const FullDistribution full = full_weight_distribution_small(spec);
    const std::size_t n = full.counts.size() - 1;
    for (std::size_t j = 0; j <= n; ++j)
        if (full.counts[j] != full.counts[n - j]) return fail("not symmetric at j=" + std::to_string(j));
    BigInt total = 0;
    for (const auto& c : full.counts) total += c;
    if (total != ipow(BigInt(2), n - full.dual_rank)) return fail("sum of counts");
    const unsigned j_max = static_cast<unsigned>(std::min<std::size_t>(n, 12));
    const WeightPrefix pre = pless_prefix(spec, j_max);
    for (unsigned j = 0; j <= j_max; ++j)
        if (pre.counts[j] != full.counts[j]) return fail("prefix differs at j=" + std::to_string(j));
    return ok();
}

inline Suite code_suite(const VerifyOptions& o, const Fields& fields) {
    Suite s{"coset_codes", {}, {}};
    for (auto [n, r] : group_cases(o.max_r)) {
        auto it = fields.find(r);
        if (it == fields.end()) continue;
        const FieldCtx& f = it->second;
        for (const auto& spec : specs_at(n, f)) {
            const std::string sp = spec.name();
            const Cardinality card = dc_cardinality(spec);
            s.run("closed-form weights equal popcounts of c(a)", sp, [&] {
                const auto tr = coset_traces(spec, o.workers);
                const auto w = dual_weights_closed(spec);
                for (Elem a = 1; a < f.q(); ++a)
                    if (BigInt(static_cast<unsigned long>(dual_codeword(f, tr, a).weight())) != w[a])
                        return fail("a=" + hex(a));
                return ok();
            });
            if (card.N <= 24)
                s.run("dual of C(DC) is {c(a)} with the expected kernel", sp, [&] {
                    const auto rep = delsarte_check(spec);
                    if (!rep.dual_matches) return fail("dual differs");
                    if (!rep.kernel_expected) return fail("kernel has " + std::to_string(rep.kernel.size()) + " elements");
                    return ok();
                });
            if (card.N <= 64)
                s.run("MacWilliams distribution: symmetric, sums to 2^(N-rank), matches the prefix", sp,
                      [&] { return check_full_distribution(spec); });
            if (!has_degenerate_kernel(spec))
                s.run("Pless power moment identity, h <= 10", sp, [&] {
                    for (unsigned h = 0; h <= 10; ++h)
                        if (!pless_check(spec, h).holds()) return fail("h=" + std::to_string(h));
                    return ok();
                });
        }
    }
    return s;
}

/// The smallest n at which each family has a recursive formula over F_q.
inline std::vector<DoubleCosetSpec> recursion_specs(const FieldCtx& f) {
    const bool big = f.q() >= 4;
    std::vector<DoubleCosetSpec> out{{1, Sign::plus, 2, f}, {3, Sign::plus, f.q() >= 8 ? 2u : 4u, f},
                                     {1, Sign::minus, 1, f}, {1, Sign::minus, 3, f}, {3, Sign::minus, 3, f}};
    if (big) {
        out.push_back({2, Sign::plus, 2, f});
        out.push_back({2, Sign::minus, 3, f});
        out.push_back({4, Sign::plus, 4, f});
        out.push_back({4, Sign::minus, 3, f});
    }
    return out;
}

inline std::vector<MomentKind> kinds_of(int family) {
    if (family == 1 || family == 3) return {MomentKind::kloosterman};
    return {MomentKind::kloosterman2, MomentKind::kloosterman_even};
}

inline Suite moment_suite(const VerifyOptions& o, const Fields& fields) {
    Suite s{"moment_recursion", {}, {}};
    s.run("Stirling recurrence equals the alternating-sum formula, h <= 20", "", [&] {
        for (unsigned h = 0; h <= 20; ++h)
            for (unsigned t = 0; t <= h; ++t) {
                BigInt acc = 0;
                for (unsigned j = 0; j <= t; ++j) {
                    BigInt term = binomial(BigInt(t), j) * ipow(BigInt(j), h);
                    acc += (t - j) % 2 == 0 ? term : BigInt(-term);
                }
                if (stirling2(h, t) != exact_div(acc, factorial(t), "stirling"))
                    return fail("S(" + std::to_string(h) + "," + std::to_string(t) + ")");
            }
        return ok();
    });
    for (const auto& [r, f] : fields) {
        const unsigned long q = f.q();
        if (q < 4) s.skipped.push_back("families 2 and 4 at q=2 (recursions need q >= 4)");
        for (const auto& spec : recursion_specs(f))
            for (MomentKind k : kinds_of(spec.family)) {
                const unsigned h_max = 8;
                s.run("recursion equals direct summation (" + kind_name(k) + "), h <= 8", spec.name(), [&] {
                    const auto rep = recursive_moments(spec, h_max, k, true, o.workers);
                    if (!rep.verified()) return fail("disagreement");
                    return ok();
                });
            }
        if (q >= 4)
            s.run("MK2 series is the binomial transform of the MK_even series", qname(q), [&] {
                const DoubleCosetSpec sp{2, Sign::plus, 2, f};
                const auto k2 = recursive_moments(sp, 6, MomentKind::kloosterman2, false).recursion.values;
                const auto ev = recursive_moments(sp, 6, MomentKind::kloosterman_even, false).recursion.values;
                for (unsigned h = 0; h <= 6; ++h) {
                    BigInt acc = 0;
                    for (unsigned l = 0; l <= h; ++l) acc += binomial(BigInt(h), l) * ipow(BigInt(-static_cast<long>(q)), h - l) * ev[l];
                    if (acc != k2[h]) return fail("h=" + std::to_string(h));
                }
                return ok();
            });
        for (SpecialCase v : {SpecialCase::plus_n2, SpecialCase::minus_n1}) {
            const bool va = v == SpecialCase::plus_n2;
            s.run(std::string("specialised family-1 recursion (") + (va ? "n = 2" : "n = 1") + ") equals the general one",
                  qname(q), [&] {
                      const auto c2 = specialized_moments(f, v, 6, true, o.workers);
                      const auto gen = recursive_moments(c2.spec, 6, MomentKind::kloosterman, false);
                      if (!c2.verified()) return fail("oracle disagreement");
                      if (c2.recursion != gen.recursion) return fail("differs from the general recursion");
                      return ok();
                  });
        }
        s.run("binomial expansion of sum_a w(c(a))^h, h <= 4", qname(q), [&] {
            for (const auto& spec : recursion_specs(f))
                for (MomentKind k : kinds_of(spec.family))
                    for (unsigned h = 0; h <= 4; ++h)
                        if (moment_lhs_expansion(spec, h, k) != weight_power_sum(spec, h))
                            return fail(spec.name() + " h=" + std::to_string(h));
            return ok();
        });
        if (r >= 3) {
            const auto mods = irreducible_moduli(r);
            const auto ones = trace_one_elements(f);
            std::vector<FieldCtx> alts;
            if (mods.size() > 1) alts.push_back(make_field(r, mods[1] == f.modulus() ? mods[0] : mods[1], std::nullopt));
            if (ones.size() > 1) alts.push_back(make_field(r, f.modulus(), ones[1] == f.a_param() ? ones[0] : ones[1]));
            s.run("recursions are independent of the modulus and of a_param", qname(q), [&] {
                for (const auto& spec : recursion_specs(f))
                    for (MomentKind k : kinds_of(spec.family)) {
                        const auto base = recursive_moments(spec, 5, k, false).recursion;
                        for (const auto& g : alts) {
                            DoubleCosetSpec other = spec;
                            other.field = g;
                            if (recursive_moments(other, 5, k, false).recursion != base)
                                return fail(spec.name() + " under " + g.describe());
                        }
                    }
                return ok();
            });
        }
    }
    return s;
}

}  // namespace detail

inline VerifySummary verify_all(const VerifyOptions& o) {
    if (o.max_r == 0 || o.max_r > kMaxVerifyDegree) throw DomainError("verify-all: max_r must be in 1..8");
    VerifySummary out;
    detail::Fields fields;
    out.suites.push_back(detail::field_suite(o, fields));
    out.suites.push_back(detail::kloosterman_suite(o, fields));
    out.suites.push_back(detail::group_suite(o, fields));
    out.suites.push_back(detail::code_suite(o, fields));
    out.suites.push_back(detail::moment_suite(o, fields));
    return out;
}

}  // namespace ominus

#endif
