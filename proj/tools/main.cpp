#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "cohomotopy/cohomotopy.hpp"
#include "cohomotopy/factory.hpp"
#include "cohomotopy/parallel.hpp"
#include "cohomotopy/report.hpp"

namespace {

using namespace cohomotopy;

enum Exit { kOk = 0, kInvalid = 1, kCrossCheck = 2, kUsage = 3 };

// Complexes above this many simplices need --allow-slow.
constexpr std::size_t kSlowThreshold = 1'000'000;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Input {
    std::string label;
    std::string bytes;
    FacetComplex complex;
};

std::string sha256_hex(const std::string& bytes)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    std::ostringstream out;
    out << "sha256:";
    for (unsigned int i = 0; i < len; ++i)
        out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return out.str();
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Input load_input(const std::string& arg)
{
    Input in;
    in.label = arg;
    std::string path = arg;
    if (arg.rfind("fixture:", 0) == 0) {
        path = fixture_directory() + "/" + arg.substr(8);
        if (path.size() < 7 || path.substr(path.size() - 7) != ".facets")
            path += ".facets";
    }
    in.bytes = read_file(path);
    in.complex = load_complex(in.bytes);
    if (in.complex.name().empty())
        in.complex.set_name(arg);
    return in;
}

// Simplex count of a validated closed pseudomanifold, or a lower bound
// above `limit` when the exact count is not needed to compare against it.
struct SizeEstimate {
    std::size_t simplices = 0;
    bool exact = true;
};

SizeEstimate estimate_size(const FacetComplex& k, std::size_t limit)
{
    const std::size_t facets = k.facets().size();
    const auto d = static_cast<std::size_t>(k.dimension());
    // Facets plus ridges: every ridge lies in exactly two facets.
    const std::size_t lower = facets + facets * (d + 1) / 2;
    if (lower > limit)
        return {lower, false};
    std::size_t total = 0;
    for (int j = 0; j <= k.dimension(); ++j)
        total += skeleton(k, j).size();
    return {total, true};
}

std::string join_spec(const std::string& family, const std::vector<std::string>& params)
{
    if (params.empty())
        return family;
    if (family == "product") {
        if (params.size() != 2)
            throw UsageError("product needs two factor specs");
        return "product(" + params[0] + "," + params[1] + ")";
    }
    if (family == "subdivide") {
        if (params.size() != 1)
            throw UsageError("subdivide needs one spec");
        return "subdivide(" + params[0] + ")";
    }
    if (params.size() != 1)
        throw UsageError(family + " takes one parameter");
    return family + ":" + params[0];
}

int cmd_generate(const std::string& family, const std::vector<std::string>& params, const std::string& out_path)
{
    GeneratorSpec spec = GeneratorSpec::parse(join_spec(family, params));
    FacetComplex k = generate(spec);
    std::string text = write_complex(k);
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out)
            throw UsageError("cannot write " + out_path);
        out << text;
        std::cerr << "wrote " << out_path << ": " << k.vertex_count() << " vertices, " << k.facets().size()
                  << " facets\n";
    }
    return kOk;
}

int cmd_verify(const std::string& file, bool json)
{
    Input in = load_input(file);
    ValidationReport v = validate_closed_pseudomanifold(in.complex);
    if (json)
        std::cout << render_validation_json(in.complex, v, ReportMeta{in.label, sha256_hex(in.bytes), false});
    else
        std::cout << render_validation_text(in.complex, v);
    return v.ok() ? kOk : kInvalid;
}

struct AnalyzeFlags {
    bool text = false;
    bool allow_slow = false;
    bool skip_crosscheck = false;
    bool no_timing = false;
    int max_degree = -1;
};

int cmd_analyze(const std::string& file, const AnalyzeFlags& flags)
{
    Input in = load_input(file);
    ReportMeta meta{in.label, sha256_hex(in.bytes), !flags.no_timing};

    ValidationReport v = validate_closed_pseudomanifold(in.complex);
    if (!v.ok()) {
        std::cerr << "validation failed for " << in.label << "\n";
        for (const auto& m : v.messages())
            std::cerr << "  " << m << "\n";
        if (flags.text)
            std::cout << render_validation_text(in.complex, v);
        else
            std::cout << render_validation_json(in.complex, v, meta);
        return kInvalid;
    }

    if (!flags.allow_slow) {
        SizeEstimate size = estimate_size(in.complex, kSlowThreshold);
        if (size.simplices > kSlowThreshold) {
            // About 50 microseconds and 600 bytes per simplex, measured on RP^5 and RP^6.
            double minutes = static_cast<double>(size.simplices) * 5e-5 / 60.0;
            double gigabytes = static_cast<double>(size.simplices) * 600.0 / 1e9;
            std::cerr << in.label << " has " << (size.exact ? "" : "at least ") << size.simplices
                      << " simplices (limit " << kSlowThreshold << " without --allow-slow).\n"
                      << std::fixed << std::setprecision(1) << "estimated cost: " << (size.exact ? "" : "over ")
                      << minutes << " min of CPU time, " << gigabytes
                      << " GB of memory. Re-run with --allow-slow to proceed.\n";
            return kUsage;
        }
    }

    PipelineOptions options;
    options.crosscheck = !flags.skip_crosscheck;
    options.max_table_degree = flags.max_degree;
    CohomotopyReport r = compute_F1(in.complex, options);
    std::cout << (flags.text ? render_text(r, meta) : render_json(r, meta));
    if (!r.checks_passed()) {
        std::cerr << "cross-check failure; see the report\n";
        return kCrossCheck;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cohomotopy groups pi^n(X) of triangulated closed (n+1)-manifolds"};
    app.require_subcommand(1);
    app.set_version_flag("--version", cohomotopy::tool_version());

    auto* gen = app.add_subcommand("generate", "Write a generated triangulation as a facet list");
    std::string family;
    std::vector<std::string> params;
    std::string out_path;
    gen->add_option("family", family, "sphere | rp | circle | product | subdivide | fixture, or a full spec")
        ->required();
    gen->add_option("params", params, "Dimension, vertex count, fixture name or factor specs");
    gen->add_option("-o,--output", out_path, "Output file (default: standard output)");

    auto* analyze = app.add_subcommand("analyze", "Run the full pipeline and print a report");
    std::string analyze_file;
    AnalyzeFlags flags;
    bool json_flag = false;
    unsigned threads = 0;
    analyze->add_option("file", analyze_file, "Facet-list file or fixture:NAME")->required();
    auto* json_opt = analyze->add_flag("--json", json_flag, "JSON report (default)");
    analyze->add_flag("--text", flags.text, "Human-readable report")->excludes(json_opt);
    analyze->add_flag("--allow-slow", flags.allow_slow, "Allow inputs above the size limit");
    analyze->add_flag("--skip-crosscheck", flags.skip_crosscheck, "Skip the Steenrod sequence cross-check");
    analyze->add_flag("--no-timing", flags.no_timing, "Omit timings so reports are byte-identical");
    analyze->add_option("--threads", threads, "Worker thread cap")->check(CLI::Range(1U, 1024U));
    analyze->add_option("--max-degree", flags.max_degree, "Highest degree shown in the homology table")
        ->check(CLI::NonNegativeNumber);

    auto* verify = app.add_subcommand("verify", "Check that a facet list is a closed connected pseudomanifold");
    std::string verify_file;
    bool verify_json = false;
    verify->add_option("file", verify_file, "Facet-list file or fixture:NAME")->required();
    verify->add_flag("--json", verify_json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    if (threads > 0)
        cohomotopy::set_thread_count(threads);

    if (gen->parsed()) {
        try {
            return cmd_generate(family, params, out_path);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kUsage;
        }
    }
    try {
        if (verify->parsed())
            return cmd_verify(verify_file, verify_json);
        return cmd_analyze(analyze_file, flags);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const cohomotopy::ComplexError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return kCrossCheck;
    }
}
