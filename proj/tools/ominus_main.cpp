#include <CLI11.hpp>

#include <ominus/cli.hpp>

namespace {

struct RawFlags {
    std::string modulus, a_param, a, sign = "plus", kind;
};

void add_field_flags(CLI::App* cmd, ominus::RunConfig& c, RawFlags& raw) {
    cmd->add_option("--r", c.r, "field degree, q = 2^r")->required()->check(CLI::Range(1, 16));
    cmd->add_option("--modulus", raw.modulus, "irreducible modulus as a hex bitmask (default: smallest)");
    cmd->add_option("--a-param", raw.a_param, "trace-one element for the quadratic form, hex (default: smallest)");
}

void add_spec_flags(CLI::App* cmd, ominus::RunConfig& c, RawFlags& raw) {
    cmd->add_option("--family", c.family, "double coset family i")->required()->check(CLI::Range(1, 4));
    cmd->add_option("--sign", raw.sign, "plus or minus")->required();
    cmd->add_option("--n", c.n, "rank parameter n")->required();
}

}  // namespace

int main(int argc, char** argv) {
    ominus::RunConfig c;
    RawFlags raw;
    CLI::App app{"Exact power moments of Kloosterman sums from codes over O-(2n,q) double cosets"};
    app.set_version_flag("--version", ominus::kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("-o,--output", c.output, "output file, - for stdout")->capture_default_str();
    app.add_option("-j,--workers", c.workers, "worker threads")->check(CLI::Range(1, 256))->capture_default_str();

    auto* field = app.add_subcommand("field", "describe GF(2^r)");
    add_field_flags(field, c, raw);

    auto* kloos = app.add_subcommand("kloos", "Kloosterman sums K_m(a) and their power moments");
    add_field_flags(kloos, c, raw);
    kloos->add_option("--m", c.m, "1 or 2")->capture_default_str();
    kloos->add_option("--a", raw.a, "single argument a (hex)");
    kloos->add_option("--hmax", c.h_max, "highest moment")->capture_default_str();

    auto* enumerate = app.add_subcommand("enumerate", "enumerate a double coset and its trace distribution");
    add_field_flags(enumerate, c, raw);
    add_spec_flags(enumerate, c, raw);
    enumerate->add_option("--export", c.export_path, "write the elements as NDJSON");

    auto* weights = app.add_subcommand("weights", "weight distribution prefix and dual weights");
    add_field_flags(weights, c, raw);
    add_spec_flags(weights, c, raw);
    weights->add_option("--jmax", c.j_max, "last weight of the prefix")->capture_default_str();

    auto* moments = app.add_subcommand("moments", "power moments from the recursive formula");
    add_field_flags(moments, c, raw);
    add_spec_flags(moments, c, raw);
    moments->add_option("--hmax", c.h_max, "highest moment")->capture_default_str();
    moments->add_option("--kind", raw.kind, "MK, MK_even or MK2");
    moments->add_flag("--verify", c.verify, "compare with direct summation");

    auto* verify = app.add_subcommand("verify-all", "run every property suite");
    verify->add_option("--max-r", c.max_r, "largest field degree")->capture_default_str();
    verify->add_option("--modulus", raw.modulus, "modulus to use at its degree (hex)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ominus::kExitUsage;
    }

    c.command = app.get_subcommands().front()->get_name();
    try {
        if (!raw.modulus.empty()) c.modulus = ominus::parse_hex(raw.modulus);
        if (!raw.a_param.empty()) c.a_param = ominus::parse_hex(raw.a_param);
        if (!raw.a.empty()) c.a = ominus::parse_hex(raw.a);
        if (!raw.kind.empty()) c.kind = raw.kind;
        c.sign = ominus::parse_sign(raw.sign);
    } catch (const ominus::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return ominus::kExitUsage;
    }
    return ominus::run(c);
}
