#ifndef OMINUS_SERIALIZE_HPP
#define OMINUS_SERIALIZE_HPP

// JSON shapes for reports. Every number is written as a decimal string.

#include <json.hpp>
#include <string>
#include <type_traits>

#include "bigint.hpp"
#include "coset_codes.hpp"
#include "finite_field.hpp"
#include "moment_recursion.hpp"
#include "ominus_groups.hpp"

namespace ominus {

using Json = nlohmann::ordered_json;

inline std::string dec(const BigInt& x) { return to_decimal(x); }
inline std::string dec(const BigRational& x) { return to_decimal(x); }
template <class T>
    requires std::is_integral_v<T>
std::string dec(T x) {
    return std::to_string(x);
}

template <class Seq>
Json dec_array(const Seq& values) {
    Json a = Json::array();
    for (const auto& v : values) a.push_back(dec(v));
    return a;
}

inline Json field_json(const FieldCtx& f) {
    return Json{{"r", dec(f.r())}, {"q", dec(f.q())}, {"modulus", detail::hex(f.modulus())}, {"a_param", detail::hex(f.a_param())}};
}

inline Json spec_json(const DoubleCosetSpec& s) {
    Json j{{"family", dec(s.family)}, {"sign", sign_name(s.sign)}, {"n", dec(s.n)}};
    const Json field = field_json(s.field);
    for (const auto& [k, v] : field.items()) j[k] = v;
    return j;
}

/// {beta_hex: count} in element order.
inline Json distribution_json(const TraceDistribution& d) {
    Json j = Json::object();
    for (std::size_t b = 0; b < d.counts.size(); ++b) j[detail::hex(b)] = dec(d.counts[b]);
    return j;
}

inline Json series_json(const MomentSeries& s) {
    return Json{{"m", dec(s.m)}, {"stride", dec(s.stride)}, {"values", dec_array(s.values)}};
}

/// {family, sign, n, r, q, modulus, a_param, kind, h: [{h, recursion, oracle|null, agree|null}], verified}
inline Json report_json(const RecursionReport& rep) {
    Json j = spec_json(rep.spec);
    j["kind"] = kind_name(rep.kind);
    Json rows = Json::array();
    for (unsigned h = 0; h <= rep.h_max; ++h) {
        Json row{{"h", dec(h)}, {"recursion", dec(rep.recursion.values[h])}};
        row["oracle"] = rep.oracle ? Json(dec(rep.oracle->values[h])) : Json(nullptr);
        row["agree"] = rep.oracle ? Json(static_cast<bool>(rep.agree[h])) : Json(nullptr);
        rows.push_back(std::move(row));
    }
    j["h"] = std::move(rows);
    j["verified"] = rep.verified();
    return j;
}

}  // namespace ominus

#endif
