#ifndef OMINUS_CLI_HPP
#define OMINUS_CLI_HPP

// Command dispatch behind the ominus executable. run() never throws: domain
// and usage errors become exit status 2, verification mismatches exit 1.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "coset_codes.hpp"
#include "errors.hpp"
#include "finite_field.hpp"
#include "kloosterman.hpp"
#include "moment_recursion.hpp"
#include "ominus_groups.hpp"
#include "serialize.hpp"
#include "verify.hpp"
#include "version.hpp"

namespace ominus {

enum ExitCode { kExitOk = 0, kExitMismatch = 1, kExitUsage = 2 };

struct RunConfig {
    std::string command;  // field | kloos | enumerate | weights | moments | verify-all
    unsigned r = 1;
    std::optional<std::uint32_t> modulus;
    std::optional<Elem> a_param;
    int family = 1;
    Sign sign = Sign::plus;
    unsigned n = 2;
    unsigned m = 1;            // kloos: dimension of K_m
    std::optional<Elem> a;     // kloos: single argument instead of all of F_q^*
    unsigned h_max = 4;
    unsigned j_max = 4;
    std::optional<std::string> kind;  // moments: MK, MK_even or MK2
    bool verify = false;
    unsigned max_r = 2;
    std::string output = "-";
    std::string export_path;  // enumerate: NDJSON of the elements
    unsigned workers = 1;
};

/// Parses "0x1f" or "1f".
inline std::uint32_t parse_hex(const std::string& s) {
    std::size_t pos = 0;
    const std::string body = s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0 ? s.substr(2) : s;
    unsigned long v = 0;
    try {
        v = std::stoul(body, &pos, 16);
    } catch (const std::exception&) {
        throw DomainError("not a hexadecimal value: '" + s + "'");
    }
    if (pos != body.size() || body.empty() || v > 0xFFFFFFFFul) throw DomainError("not a hexadecimal value: '" + s + "'");
    return static_cast<std::uint32_t>(v);
}

inline Sign parse_sign(const std::string& s) {
    if (s == "plus" || s == "+") return Sign::plus;
    if (s == "minus" || s == "-") return Sign::minus;
    throw DomainError("sign must be plus or minus, got '" + s + "'");
}

namespace detail {

inline Json params_json(const RunConfig& c) {
    Json p{{"command", c.command}};
    if (c.command == "verify-all") {
        p["max_r"] = dec(c.max_r);
        if (c.modulus) p["modulus"] = hex(*c.modulus);
        return p;
    }
    p["r"] = dec(c.r);
    if (c.command == "enumerate" || c.command == "weights" || c.command == "moments") {
        p["family"] = dec(c.family);
        p["sign"] = sign_name(c.sign);
        p["n"] = dec(c.n);
    }
    if (c.command == "kloos") {
        p["m"] = dec(c.m);
        p["h_max"] = dec(c.h_max);
        if (c.a) p["a"] = hex(*c.a);
    }
    if (c.command == "weights") p["j_max"] = dec(c.j_max);
    if (c.command == "moments") {
        p["h_max"] = dec(c.h_max);
        p["kind"] = kind_name(c.kind ? parse_kind(*c.kind) : default_kind(c.family));
        p["verify"] = c.verify;
    }
    return p;
}

inline Json envelope(const RunConfig& c) { return Json{{"version", kVersion}, {"params", params_json(c)}}; }

inline int cmd_field(const FieldCtx& f, Json& out) {
    out["field"] = field_json(f);
    out["field"]["trace_one_count"] = dec(trace_one_elements(f).size());
    out["field"]["irreducible_moduli"] = dec(irreducible_moduli(f.r()).size());
    if (f.q() <= 16) {
        Json els = Json::array();
        for (Elem x = 0; x < f.q(); ++x)
            els.push_back(Json{{"x", hex(x)}, {"trace", dec(f.trace(x))}, {"inverse", x ? Json(hex(f.inv(x))) : Json(nullptr)}});
        out["field"]["elements"] = std::move(els);
    }
    return kExitOk;
}

inline int cmd_kloos(const RunConfig& c, const FieldCtx& f, Json& out) {
    if (c.m != 1 && c.m != 2) throw DomainError("kloos: --m must be 1 or 2");
    if (c.a) require_nonzero(f, *c.a, "kloos");
    Json values = Json::object();
    std::vector<std::int64_t> table(f.q(), 0);
    for (Elem a = 1; a < f.q(); ++a) {
        if (c.a && *c.a != a) continue;
        table[a] = c.m == 1 ? kloosterman(f, a) : carlitz_k2(f, a);
        values[hex(a)] = dec(table[a]);
    }
    out["values"] = std::move(values);
    if (!c.a) {
        out["moments"] = series_json(moments_from_values(table, c.m, c.h_max));
        if (c.m == 1 && f.r() >= 2) out["range"] = dec_array(range_spectrum(f));
    }
    return kExitOk;
}

inline int cmd_enumerate(const RunConfig& c, const DoubleCosetSpec& s, Json& out) {
    const auto elements = double_coset_elements(s, c.workers);
    const auto enumerated = trace_distribution_of(s.field, element_traces(elements));
    const auto closed = trace_distribution_closed(s);
    const Cardinality card = dc_cardinality(s);
    out["spec"] = spec_json(s);
    out["size"] = dec(elements.size());
    out["closed_size"] = dec(card.N);
    out["A"] = dec(card.A);
    out["B"] = dec(card.B);
    out["trace_distribution"] = distribution_json(enumerated);
    out["closed_trace_distribution"] = distribution_json(closed);
    const bool agree = enumerated == closed && BigInt(static_cast<unsigned long>(elements.size())) == card.N;
    out["agree"] = agree;
    if (!c.export_path.empty()) {
        std::ofstream ex(c.export_path);
        if (!ex) throw DomainError("cannot open export file " + c.export_path);
        for (std::size_t i = 0; i < elements.size(); ++i)
            ex << Json{{"index", dec(i)}, {"rows", dec(elements[i].rows)}, {"entries", to_hex_entries(elements[i])}}.dump()
               << '\n';
        out["exported"] = c.export_path;
    }
    return agree ? kExitOk : kExitMismatch;
}

inline int cmd_weights(const RunConfig& c, const DoubleCosetSpec& s, Json& out) {
    const WeightPrefix prefix = weight_distribution_prefix(s, c.j_max);
    const Cardinality card = dc_cardinality(s);
    out["spec"] = spec_json(s);
    out["N"] = dec(card.N);
    out["prefix"] = dec_array(prefix.counts);
    const auto w = dual_weights_closed(s);
    Json dual = Json::object();
    for (Elem a = 1; a < s.field.q(); ++a) dual[hex(a)] = dec(w[a]);
    out["dual_weights"] = std::move(dual);
    int code = kExitOk;
    if (card.N <= 64) {
        const FullDistribution full = full_weight_distribution_small(s);
        out["full_distribution"] = dec_array(full.counts);
        out["dual_rank"] = dec(full.dual_rank);
        bool agree = true;
        for (unsigned j = 0; j <= c.j_max && j < full.counts.size(); ++j) agree = agree && full.counts[j] == prefix.counts[j];
        out["agree"] = agree;
        if (!agree) code = kExitMismatch;
    }
    return code;
}

inline int cmd_moments(const RunConfig& c, const DoubleCosetSpec& s, Json& out) {
    const auto kind = c.kind ? std::optional<MomentKind>(parse_kind(*c.kind)) : std::nullopt;
    const RecursionReport rep = recursive_moments(s, c.h_max, kind, c.verify, c.workers);
    out["report"] = report_json(rep);
    if (c.verify && rep.oracle && !rep.verified()) return kExitMismatch;
    return kExitOk;
}

inline int cmd_verify_all(const RunConfig& c, Json& out) {
    const VerifySummary sum = verify_all(VerifyOptions{c.max_r, c.modulus, c.workers});
    Json suites = Json::array();
    for (const auto& s : sum.suites) {
        Json checks = Json::array();
        std::size_t failed = 0;
        for (const auto& ch : s.checks) {
            Json j{{"check", ch.name}, {"params", ch.params}, {"passed", ch.passed}};
            if (!ch.passed) {
                j["detail"] = ch.detail;
                ++failed;
            }
            checks.push_back(std::move(j));
        }
        suites.push_back(Json{{"suite", s.name},
                              {"passed", s.passed()},
                              {"checks_run", dec(s.checks.size())},
                              {"checks_failed", dec(failed)},
                              {"skipped", s.skipped},
                              {"checks", std::move(checks)}});
    }
    out["suites"] = std::move(suites);
    out["passed"] = sum.passed();
    return sum.passed() ? kExitOk : kExitMismatch;
}

inline int dispatch(const RunConfig& c, Json& out) {
    if (c.command == "verify-all") return cmd_verify_all(c, out);
    const FieldCtx f = make_field(c.r, c.modulus, c.a_param);
    out["field"] = field_json(f);
    if (c.command == "field") return cmd_field(f, out);
    if (c.command == "kloos") return cmd_kloos(c, f, out);
    const DoubleCosetSpec s{c.family, c.sign, c.n, f};
    if (c.command == "enumerate") return cmd_enumerate(c, s, out);
    if (c.command == "weights") return cmd_weights(c, s, out);
    if (c.command == "moments") return cmd_moments(c, s, out);
    throw DomainError("unknown command '" + c.command + "'");
}

}  // namespace detail

/// Runs one command and writes its JSON document to c.output ("-" = out).
inline int run(const RunConfig& c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    Json doc;
    int code = kExitOk;
    try {
        doc = detail::envelope(c);
        code = detail::dispatch(c, doc);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitMismatch;
    }
    const std::string text = doc.dump(2) + "\n";
    if (c.output.empty() || c.output == "-") {
        out << text;
    } else {
        std::ofstream f(c.output);
        if (!f) {
            err << "error: cannot open " << c.output << '\n';
            return kExitUsage;
        }
        f << text;
    }
    return code;
}

}  // namespace ominus

#endif
