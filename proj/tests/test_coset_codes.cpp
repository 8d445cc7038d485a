#include <gtest/gtest.h>

#include <ominus/coset_codes.hpp>

#include "oracles.hpp"

using namespace ominus;

namespace {

std::vector<DoubleCosetSpec> small_specs() {
    // every admissible coset with N <= 64 that we can enumerate
    std::vector<DoubleCosetSpec> out;
    for (unsigned r = 1; r <= 6; ++r) {
        const FieldCtx f = make_field(r);
        for (unsigned n = 1; n <= 3; ++n)
            for (Sign s : {Sign::plus, Sign::minus})
                for (int i = 1; i <= 4; ++i) {
                    DoubleCosetSpec spec{i, s, n, f};
                    try {
                        validate(spec);
                    } catch (const DomainError&) {
                        continue;
                    }
                    if (dc_cardinality(spec).N <= 64) out.push_back(spec);
                }
    }
    return out;
}

std::vector<oracle::Big> big(const std::vector<BigInt>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Codeword, BitsAndHex) {
    Codeword c(70);
    EXPECT_TRUE(c.is_zero());
    c.set(0, true);
    c.set(5, true);
    c.set(69, true);
    EXPECT_EQ(c.weight(), 3u);
    EXPECT_TRUE(c.bit(69));
    EXPECT_FALSE(c.bit(68));
    const std::string h = c.to_hex();
    EXPECT_EQ(h.size(), 18u);
    EXPECT_EQ(h.substr(0, 2), "84");
    EXPECT_EQ(h.back(), '4');  // coordinate 69 is the second bit of the last digit
    c.set(5, false);
    EXPECT_EQ(c.weight(), 2u);
    EXPECT_TRUE((c ^ c).is_zero());
}

TEST(CosetCodes, WeightExamples) {
    const FieldCtx f = make_field(1);
    EXPECT_EQ(codeword_weight_closed({1, Sign::minus, 1, f}, 1), 2);
    EXPECT_EQ(codeword_weight_closed({1, Sign::plus, 2, f}, 1), 20);
    EXPECT_EQ(dual_codeword(DoubleCosetSpec{1, Sign::plus, 2, f}, 1).weight(), 20u);
    EXPECT_THROW(codeword_weight_closed({1, Sign::plus, 2, f}, 0), DomainError);
    EXPECT_THROW(dual_codeword(DoubleCosetSpec{1, Sign::plus, 2, f}, 2), DomainError);
}

TEST(CosetCodes, ClosedWeightsMatchBuiltWords) {
    for (const auto& s : small_specs()) {
        const auto traces = coset_traces(s);
        const auto w = dual_weights_closed(s);
        EXPECT_EQ(w[0], 0);
        for (Elem a = 1; a < s.q(); ++a) EXPECT_EQ(BigInt(static_cast<unsigned long>(dual_codeword(s.field, traces, a).weight())), w[a]) << s.name();
    }
}

TEST(CosetCodes, PrefixExamples) {
    const FieldCtx f = make_field(1);
    const auto p = weight_distribution_prefix({1, Sign::minus, 1, f}, 3);
    EXPECT_EQ(p.counts, (std::vector<BigInt>{1, 1, 1, 1}));
    const auto p2 = weight_distribution_prefix({1, Sign::plus, 2, f}, 2);
    EXPECT_EQ(p2.counts[0], 1);
    EXPECT_EQ(p2.counts[1], 28);
    EXPECT_EQ(p2.counts[2], oracle::binom(28, 2) + oracle::binom(20, 2));
    // beyond N the prefix is zero
    EXPECT_EQ(weight_distribution_prefix({1, Sign::minus, 1, f}, 6).counts[5], 0);
}

TEST(CosetCodes, PrefixGateForSmallFields) {
    const FieldCtx f = make_field(1);
    EXPECT_THROW(weight_distribution_prefix({2, Sign::plus, 2, f}, 3), DomainError);
    EXPECT_THROW(weight_distribution_prefix({4, Sign::minus, 3, f}, 3), DomainError);
    EXPECT_NO_THROW(weight_distribution_prefix({2, Sign::plus, 2, make_field(2)}, 3));
}

TEST(CosetCodes, PrefixMatchesCompositionOracle) {
    for (unsigned r = 1; r <= 3; ++r) {
        const FieldCtx f = make_field(r);
        for (const DoubleCosetSpec& s : {DoubleCosetSpec{1, Sign::plus, 2, f}, DoubleCosetSpec{1, Sign::minus, 3, f},
                                         DoubleCosetSpec{3, Sign::minus, 3, f}, DoubleCosetSpec{2, Sign::plus, 4, f}}) {
            const auto dist = trace_distribution_closed(s);
            const auto p = weight_prefix_from_distribution(f, dist, 6);
            for (unsigned j = 0; j <= 6; ++j) EXPECT_EQ(p.counts[j], oracle::constrained_compositions(big(dist.counts), j)) << s.name() << " j=" << j;
        }
    }
}

TEST(CosetCodes, FullDistributionExamples) {
    const auto full = [](unsigned r) { return full_weight_distribution_small({1, Sign::minus, 1, make_field(r)}); };
    EXPECT_EQ(full(1).counts, (std::vector<BigInt>{1, 1, 1, 1}));
    EXPECT_EQ(full(2).counts, (std::vector<BigInt>{1, 1, 2, 2, 1, 1}));
    EXPECT_EQ(full(2).dual_rank, 2u);
    EXPECT_EQ(full(3).counts, (std::vector<BigInt>{1, 1, 4, 12, 14, 14, 12, 4, 1, 1}));
    EXPECT_EQ(full(3).dual_rank, 3u);
}

TEST(CosetCodes, FullDistributionAtN48) {
    const DoubleCosetSpec s{1, Sign::plus, 2, make_field(1)};
    const auto full = full_weight_distribution_small(s);
    ASSERT_EQ(full.counts.size(), 49u);
    BigInt total = 0;
    for (const auto& c : full.counts) total += c;
    EXPECT_EQ(total, oracle::power(2, 47));
    EXPECT_EQ(full.dual_rank, 1u);
    const auto p = weight_distribution_prefix(s, 48);
    EXPECT_EQ(p.counts, full.counts);
}

TEST(CosetCodes, FullDistributionMatchesBruteForce) {
    for (const auto& s : small_specs()) {
        if (dc_cardinality(s).N > 24) continue;
        const auto traces = coset_traces(s);
        const auto full = full_weight_distribution_small(s);
        EXPECT_EQ(big(full.counts), oracle::code_weights_bruteforce({traces.begin(), traces.end()})) << s.name();
    }
}

TEST(CosetCodes, FullDistributionAgreesWithPrefix) {
    for (const auto& s : small_specs()) {
        if ((s.family == 2 || s.family == 4) && s.q() < 4) continue;
        const auto full = full_weight_distribution_small(s);
        const auto p = weight_distribution_prefix(s, static_cast<unsigned>(full.counts.size() - 1));
        EXPECT_EQ(p.counts, full.counts) << s.name();
    }
    EXPECT_THROW(full_weight_distribution_small({1, Sign::plus, 2, make_field(2)}), BudgetExceeded);
}

TEST(CosetCodes, FullDistributionSymmetryAndSize) {
    for (const auto& s : small_specs()) {
        const auto full = full_weight_distribution_small(s);
        const std::size_t n = full.counts.size() - 1;
        BigInt total = 0;
        for (std::size_t j = 0; j <= n; ++j) {
            EXPECT_EQ(full.counts[j], full.counts[n - j]) << s.name() << " j=" << j;
            total += full.counts[j];
        }
        EXPECT_EQ(total, oracle::power(2, static_cast<unsigned>(n - full.dual_rank))) << s.name();
        EXPECT_EQ(full.dual_rank, has_degenerate_kernel(s) ? s.field.r() - 1 : s.field.r()) << s.name();
    }
}

TEST(CosetCodes, Delsarte) {
    std::size_t checked = 0;
    for (const auto& s : small_specs()) {
        if (dc_cardinality(s).N > 24) continue;
        const auto rep = delsarte_check(s);
        EXPECT_TRUE(rep.passed()) << s.name();
        EXPECT_EQ(rep.kernel.size(), has_degenerate_kernel(s) ? 2u : 1u) << s.name();
        EXPECT_EQ(rep.distinct_duals, s.q() / rep.kernel.size()) << s.name();
        EXPECT_EQ(rep.code_size * rep.distinct_duals, std::size_t{1} << dc_cardinality(s).N.get_ui()) << s.name();
        ++checked;
    }
    EXPECT_GE(checked, 4u);
    EXPECT_THROW(delsarte_check({1, Sign::plus, 2, make_field(1)}), BudgetExceeded);
}

TEST(CosetCodes, DegenerateKernels) {
    const FieldCtx f2 = make_field(1), f4 = make_field(2), f8 = make_field(3);
    EXPECT_TRUE(has_degenerate_kernel({3, Sign::plus, 2, f2}));
    EXPECT_TRUE(has_degenerate_kernel({3, Sign::plus, 2, f4}));
    EXPECT_FALSE(has_degenerate_kernel({3, Sign::plus, 2, f8}));
    EXPECT_TRUE(has_degenerate_kernel({4, Sign::minus, 3, f2}));
    EXPECT_FALSE(has_degenerate_kernel({4, Sign::minus, 3, f4}));
    for (const DoubleCosetSpec& s : {DoubleCosetSpec{3, Sign::plus, 2, f2}, DoubleCosetSpec{3, Sign::plus, 2, f4},
                                     DoubleCosetSpec{3, Sign::plus, 2, f8}, DoubleCosetSpec{1, Sign::plus, 2, f4}}) {
        const auto mode = s.q() <= 4 ? TraceMode::enumerated : TraceMode::closed_form;  // |Q-(4,8)|^2 is over budget
        const auto kernel = dual_map_kernel(s.field, trace_distribution(s, mode));
        EXPECT_EQ(kernel.size(), has_degenerate_kernel(s) ? 2u : 1u) << s.name();
        EXPECT_EQ(kernel.front(), 0u);
    }
    EXPECT_EQ(dual_map_kernel(f2, trace_distribution({4, Sign::minus, 3, f2}, TraceMode::enumerated)).size(), 2u);
}

TEST(CosetCodes, HexExport) {
    const DoubleCosetSpec s{1, Sign::minus, 1, make_field(1)};
    EXPECT_EQ(dual_codeword(s, 0).to_hex(), "0");
    const auto traces = coset_traces(s);
    Codeword expect(traces.size());
    for (std::size_t j = 0; j < traces.size(); ++j) expect.set(j, traces[j] == 1);
    EXPECT_EQ(dual_codeword(s, 1), expect);
    EXPECT_EQ(dual_codeword(s, 1).weight(), 2u);
}
