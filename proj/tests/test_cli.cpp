#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <ominus/cli.hpp>

using namespace ominus;

namespace {

struct Outcome {
    int code;
    std::string text;
    std::string err;
    Json doc() const { return Json::parse(text); }
};

Outcome invoke(const RunConfig& c) {
    std::ostringstream out, err;
    const int code = run(c, out, err);
    return {code, out.str(), err.str()};
}

RunConfig config(const std::string& command) {
    RunConfig c;
    c.command = command;
    return c;
}

// Walks a document and reports any number that is not carried as a string.
bool only_string_numerics(const Json& j) {
    if (j.is_number()) return false;
    if (j.is_structured())
        for (const auto& item : j) if (!only_string_numerics(item)) return false;
    return true;
}

}  // namespace

TEST(Cli, ParseHex) {
    EXPECT_EQ(parse_hex("0x1f"), 31u);
    EXPECT_EQ(parse_hex("1F"), 31u);
    EXPECT_THROW(parse_hex("0x"), DomainError);
    EXPECT_THROW(parse_hex("zz"), DomainError);
    EXPECT_THROW(parse_hex("0x1g"), DomainError);
    EXPECT_EQ(parse_sign("-"), Sign::minus);
    EXPECT_THROW(parse_sign("both"), DomainError);
}

TEST(Cli, Field) {
    RunConfig c = config("field");
    c.r = 2;
    const auto o = invoke(c);
    ASSERT_EQ(o.code, kExitOk);
    const Json d = o.doc();
    EXPECT_EQ(d["version"], kVersion);
    EXPECT_EQ(d["field"]["modulus"], "0x7");
    EXPECT_EQ(d["field"]["a_param"], "0x2");
    EXPECT_EQ(d["field"]["q"], "4");
    EXPECT_EQ(d["field"]["elements"].size(), 4u);
    EXPECT_TRUE(only_string_numerics(d));
}

TEST(Cli, Kloos) {
    RunConfig c = config("kloos");
    c.r = 2;
    const Json d = invoke(c).doc();
    EXPECT_EQ(d["values"]["0x1"], "3");
    EXPECT_EQ(d["values"]["0x2"], "-1");
    EXPECT_EQ(d["moments"]["values"][1], "1");
    EXPECT_EQ(d["moments"]["values"][2], "11");
    c.a = 0;
    EXPECT_EQ(invoke(c).code, kExitUsage);
    c.a = 1;
    c.m = 3;
    EXPECT_EQ(invoke(c).code, kExitUsage);
}

TEST(Cli, Enumerate) {
    RunConfig c = config("enumerate");
    c.r = 1;
    c.n = 2;
    const auto o = invoke(c);
    ASSERT_EQ(o.code, kExitOk) << o.err;
    const Json d = o.doc();
    EXPECT_EQ(d["size"], "48");
    EXPECT_EQ(d["trace_distribution"], (Json{{"0x0", "28"}, {"0x1", "20"}}));
    EXPECT_EQ(d["closed_trace_distribution"], d["trace_distribution"]);
    EXPECT_TRUE(d["agree"].get<bool>());
    EXPECT_TRUE(only_string_numerics(d));
}

TEST(Cli, EnumerateExport) {
    const auto path = std::filesystem::temp_directory_path() / "ominus_cli_export.ndjson";
    RunConfig c = config("enumerate");
    c.r = 1;
    c.n = 1;
    c.sign = Sign::minus;
    c.export_path = path.string();
    ASSERT_EQ(invoke(c).code, kExitOk);
    std::ifstream in(path);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
        const Json j = Json::parse(line);
        EXPECT_EQ(j["rows"], "2");
        EXPECT_EQ(j["entries"].size(), 4u);
        ++lines;
    }
    EXPECT_EQ(lines, 3u);
    std::filesystem::remove(path);
}

TEST(Cli, Weights) {
    RunConfig c = config("weights");
    c.r = 1;
    c.n = 1;
    c.sign = Sign::minus;
    c.j_max = 3;
    const Json d = invoke(c).doc();
    EXPECT_EQ(d["prefix"], (Json{"1", "1", "1", "1"}));
    EXPECT_EQ(d["full_distribution"], (Json{"1", "1", "1", "1"}));
    EXPECT_EQ(d["dual_weights"]["0x1"], "2");
    EXPECT_TRUE(d["agree"].get<bool>());
    c.family = 2;
    c.sign = Sign::plus;
    c.n = 2;
    EXPECT_EQ(invoke(c).code, kExitUsage);
}

TEST(Cli, MomentsVerify) {
    RunConfig c = config("moments");
    c.family = 1;
    c.sign = Sign::minus;
    c.n = 1;
    c.r = 2;
    c.h_max = 4;
    c.verify = true;
    const auto o = invoke(c);
    ASSERT_EQ(o.code, kExitOk) << o.err;
    const Json rep = o.doc()["report"];
    EXPECT_TRUE(rep["verified"].get<bool>());
    ASSERT_EQ(rep["h"].size(), 5u);
    for (const auto& row : rep["h"]) {
        EXPECT_TRUE(row["agree"].get<bool>());
        EXPECT_EQ(row["recursion"], row["oracle"]);
    }
    EXPECT_EQ(rep["h"][2]["recursion"], "11");
    EXPECT_EQ(rep["modulus"], "0x7");
    EXPECT_TRUE(only_string_numerics(o.doc()));
}

TEST(Cli, MomentsWithoutVerifyHasNullOracle) {
    RunConfig c = config("moments");
    c.r = 3;
    c.h_max = 3;
    const Json rep = invoke(c).doc()["report"];
    EXPECT_TRUE(rep["h"][1]["oracle"].is_null());
    EXPECT_FALSE(rep["verified"].get<bool>());
}

TEST(Cli, DomainErrorsExitTwo) {
    RunConfig c = config("moments");
    c.family = 2;
    c.r = 1;
    const auto o = invoke(c);
    EXPECT_EQ(o.code, kExitUsage);
    EXPECT_NE(o.err.find("q >= 4"), std::string::npos);
    EXPECT_TRUE(o.text.empty());

    RunConfig bad = config("field");
    bad.r = 3;
    bad.modulus = 0x9;  // x^3 + 1
    EXPECT_EQ(invoke(bad).code, kExitUsage);
    bad.modulus = std::nullopt;
    bad.a_param = 0x2;  // trace 0 in GF(8)
    EXPECT_EQ(invoke(bad).code, kExitUsage);
    EXPECT_EQ(invoke(config("nonsense")).code, kExitUsage);

    RunConfig kind = config("moments");
    kind.r = 2;
    kind.kind = "MK2";
    EXPECT_EQ(invoke(kind).code, kExitUsage);
}

TEST(Cli, VerifyAllSmall) {
    for (unsigned max_r : {1u, 2u}) {
        RunConfig c = config("verify-all");
        c.max_r = max_r;
        const auto o = invoke(c);
        ASSERT_EQ(o.code, kExitOk) << o.text;
        const Json d = o.doc();
        EXPECT_TRUE(d["passed"].get<bool>());
        EXPECT_EQ(d["suites"].size(), 5u);
        for (const auto& s : d["suites"]) EXPECT_TRUE(s["passed"].get<bool>()) << s["suite"];
        if (max_r == 1) {
            bool range_skipped = false;
            for (const auto& s : d["suites"])
                for (const auto& sk : s["skipped"]) range_skipped |= sk.get<std::string>().find("range") != std::string::npos;
            EXPECT_TRUE(range_skipped);
        }
    }
}

TEST(Cli, VerifyAllReportsReducibleModulus) {
    RunConfig c = config("verify-all");
    c.max_r = 2;
    c.modulus = 0x5;  // x^2 + 1 = (x + 1)^2
    const auto o = invoke(c);
    EXPECT_EQ(o.code, kExitMismatch);
    const Json d = o.doc();
    EXPECT_FALSE(d["passed"].get<bool>());
    bool found = false;
    for (const auto& s : d["suites"])
        for (const auto& ch : s["checks"])
            if (ch["check"] == "modulus is irreducible" && !ch["passed"].get<bool>()) found = true;
    EXPECT_TRUE(found);
    c.max_r = 9;
    EXPECT_EQ(invoke(c).code, kExitUsage);
}

TEST(Cli, OutputIndependentOfWorkers) {
    for (const std::string cmd : {"enumerate", "moments", "weights"}) {
        RunConfig c = config(cmd);
        c.r = 1;
        c.n = 3;
        c.sign = Sign::minus;
        c.family = 3;
        c.h_max = 5;
        c.verify = true;
        RunConfig c4 = c;
        c4.workers = 4;
        const auto a = invoke(c), b = invoke(c4);
        EXPECT_EQ(a.code, b.code) << cmd;
        EXPECT_EQ(a.text, b.text) << cmd;
        EXPECT_EQ(a.text, invoke(c).text) << cmd;
    }
}

TEST(Cli, WritesToFile) {
    const auto path = std::filesystem::temp_directory_path() / "ominus_cli_out.json";
    RunConfig c = config("field");
    c.output = path.string();
    const auto o = invoke(c);
    EXPECT_EQ(o.code, kExitOk);
    EXPECT_TRUE(o.text.empty());
    std::ifstream in(path);
    const Json d = Json::parse(in);
    EXPECT_EQ(d["field"]["q"], "2");
    std::filesystem::remove(path);
}
