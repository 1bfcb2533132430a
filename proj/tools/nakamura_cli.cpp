// Command-line front end: analyze | example | fibre | diamond | verify | sweep.
// Exit codes: 0 success, 2 validation/input error, 3 unsupported resonant
// mode, 4 internal certification error.

#include <CLI11.hpp>

#include <future>
#include <iostream>

#include "nakamura/cache.hpp"
#include "nakamura/report.hpp"

namespace {

using namespace nakamura;

int exit_code_for(errc c) {
    switch (c) {
        case errc::resonant_tau_unsupported: return 3;
        case errc::precision_exhausted:
        case errc::symbolic_non_zero:
        case errc::sampling_exhausted:
        case errc::no_witness: return 4;
        default: return 2;
    }
}

void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(errc::bad_input, "cannot write " + path);
    out << content;
}

std::string report_bytes(const json& rep) { return rep.dump(2) + "\n"; }

struct AnalyzeFlags {
    std::string spec_path;
    std::string out_path;
    std::string latex_path, csv_path;
    std::string cache_dir;
    int crosscheck = 0;
    uint64_t seed = AnalyzeOptions{}.seed;
    long precision_cap = default_precision_cap_bits;
    int jobs = 1;
    bool timings = false;
};

// Returns the report bytes plus the analysis exit code, going through the
// content-addressed cache when a directory is configured.
std::pair<std::string, int> run_analysis(const json& spec_doc, const AnalyzeFlags& flags) {
    std::string key;
    if (!flags.cache_dir.empty()) {
        key = cache_key(canonical_bytes(spec_doc), engine_version, flags.seed, flags.crosscheck,
                        flags.precision_cap);
        if (auto hit = cache_lookup(flags.cache_dir, key)) {
            json rep = json::parse(*hit);
            return {*hit, rep.value("status", "") == "resonance_unknown" ? 3 : 0};
        }
    }
    ValidateOptions vopts;
    vopts.precision_cap = flags.precision_cap;
    NakamuraSpec spec = spec_from_json(spec_doc, vopts);
    AnalyzeOptions aopts;
    aopts.crosscheck_trials = flags.crosscheck;
    aopts.seed = flags.seed;
    aopts.precision_cap = flags.precision_cap;
    aopts.include_timings = flags.timings;
    aopts.jobs = flags.jobs;
    AnalysisResult res = analyze(spec, aopts);
    std::string bytes = report_bytes(res.report);
    if (!flags.cache_dir.empty() && !flags.timings) cache_store(flags.cache_dir, key, bytes);
    return {bytes, res.exit_code};
}

int cmd_analyze(const AnalyzeFlags& flags) {
    json spec_doc = load_json_file(flags.spec_path);
    auto [bytes, code] = run_analysis(spec_doc, flags);
    write_text(flags.out_path, bytes);
    json rep = json::parse(bytes);
    bool have_hodge = rep.contains("hodge") && !rep["hodge"].is_null();
    if (!flags.latex_path.empty() || !flags.csv_path.empty()) {
        if (have_hodge) {
            if (!flags.latex_path.empty()) write_text(flags.latex_path, hodge_latex(rep));
            if (!flags.csv_path.empty()) write_text(flags.csv_path, hodge_csv(rep));
        } else {
            std::cerr << "note: no Hodge table in a resonance-unknown report; diamond skipped\n";
        }
    }
    return code;
}

int cmd_sweep(long from, long to, const std::string& out_dir, AnalyzeFlags flags) {
    if (from < 2 || to < from) fail(errc::bad_parameter, "sweep needs 2 <= from <= to");
    std::filesystem::create_directories(out_dir);
    if (flags.cache_dir.empty()) flags.cache_dir = out_dir + "/cache";
    std::vector<long> ms;
    for (long m = from; m <= to; ++m) ms.push_back(m);

    std::mutex io_mu;
    std::atomic<int> worst{0};
    auto work = [&](long m) {
        json spec_doc = spec_to_json(example_am(m));
        auto [bytes, code] = run_analysis(spec_doc, flags);
        std::string path = out_dir + "/am" + std::to_string(m) + ".json";
        write_text(path, bytes);
        std::lock_guard<std::mutex> g(io_mu);
        std::cout << "A_" << m << " -> " << path << " (exit " << code << ")\n";
        int cur = worst.load();
        while (code > cur && !worst.compare_exchange_weak(cur, code)) {
        }
    };

    int jobs = std::max(1, flags.jobs);
    std::vector<std::future<void>> running;
    for (long m : ms) {
        if (static_cast<int>(running.size()) >= jobs) {
            running.front().get();
            running.erase(running.begin());
        }
        running.push_back(std::async(std::launch::async, work, m));
    }
    for (auto& f : running) f.get();
    return worst.load();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic engine for generalized Nakamura manifolds"};
    app.require_subcommand(1);

    AnalyzeFlags flags;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", flags.seed, "random seed for the rank cross-check");
        cmd->add_option("--precision-cap", flags.precision_cap, "refinement bit cap");
        cmd->add_option("--jobs", flags.jobs, "parallel workers");
    };

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "run the full pipeline on a spec file");
    analyze_cmd->add_option("spec", flags.spec_path, "spec JSON file")->required();
    analyze_cmd->add_option("--out", flags.out_path, "report output path (default stdout)");
    analyze_cmd->add_option("--latex", flags.latex_path, "write the LaTeX Hodge diamond here");
    analyze_cmd->add_option("--csv", flags.csv_path, "write the CSV Hodge diamond here");
    analyze_cmd->add_option("--crosscheck", flags.crosscheck, "exact-rank cross-check trials");
    analyze_cmd->add_option("--cache", flags.cache_dir, "content-addressed report cache dir");
    analyze_cmd->add_flag("--timings", flags.timings, "include wall-clock timings (breaks byte determinism)");
    add_common(analyze_cmd);

    // example
    auto* example_cmd = app.add_subcommand("example", "emit a built-in spec");
    long am_m = 2;
    int dim_n = 4;
    std::string example_out;
    std::string tau_value;
    auto* am_cmd = example_cmd->add_subcommand("am", "the 2x2 family [[m, m^2-1], [1, m]]");
    am_cmd->add_option("--m", am_m, "family parameter, m >= 2")->required();
    auto* fourfold_cmd = example_cmd->add_subcommand("fourfold", "the symmetric 3x3 example");
    auto* dim_cmd = example_cmd->add_subcommand("dim", "fibre-product composition of dimension n");
    dim_cmd->add_option("--n", dim_n, "fibre dimension, n >= 2")->required();
    for (auto* sub : {am_cmd, fourfold_cmd, dim_cmd}) sub->fallthrough();
    example_cmd->require_subcommand(1);
    example_cmd->add_option("--out", example_out, "spec output path (default stdout)");
    example_cmd->add_option("--tau", tau_value, "explicit tau (decimal); default admissible mode");

    // fibre
    std::string fibre_a, fibre_b, fibre_out;
    auto* fibre_cmd = app.add_subcommand("fibre", "combine two spec files as a fibre product");
    fibre_cmd->add_option("left", fibre_a, "left spec JSON file")->required();
    fibre_cmd->add_option("right", fibre_b, "right spec JSON file")->required();
    fibre_cmd->add_option("--out", fibre_out, "spec output path (default stdout)");

    // diamond
    std::string diamond_report, diamond_latex, diamond_csv;
    auto* diamond_cmd = app.add_subcommand("diamond", "render the Hodge diamond from a report");
    diamond_cmd->add_option("report", diamond_report, "report JSON file")->required();
    diamond_cmd->add_option("--latex", diamond_latex, "LaTeX output path (default stdout)");
    diamond_cmd->add_option("--csv", diamond_csv, "CSV output path");

    // verify
    std::string verify_report_path;
    auto* verify_cmd = app.add_subcommand("verify", "re-verify all certificates in a report");
    verify_cmd->add_option("report", verify_report_path, "report JSON file")->required();

    // sweep
    long sweep_from = 2, sweep_to = 10;
    std::string sweep_out_dir;
    auto* sweep_cmd = app.add_subcommand("sweep", "batch-analyze the A_m family with a cache");
    sweep_cmd->add_option("--from", sweep_from, "first m")->required();
    sweep_cmd->add_option("--to", sweep_to, "last m")->required();
    sweep_cmd->add_option("--out-dir", sweep_out_dir, "report output directory")->required();
    sweep_cmd->add_option("--crosscheck", flags.crosscheck, "exact-rank cross-check trials");
    sweep_cmd->add_option("--cache", flags.cache_dir, "cache dir (default <out-dir>/cache)");
    add_common(sweep_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze_cmd) return cmd_analyze(flags);

        if (*example_cmd) {
            TauSpec tau = tau_value.empty() ? TauSpec::admissible()
                                            : TauSpec::explicit_value(q_from_decimal(tau_value));
            NakamuraSpec spec = *am_cmd         ? example_am(am_m, tau)
                                : *fourfold_cmd ? example_fourfold(tau)
                                                : example_dim(dim_n, tau);
            write_text(example_out, spec_to_json(spec).dump(2) + "\n");
            return 0;
        }

        if (*fibre_cmd) {
            NakamuraSpec a = spec_from_json(load_json_file(fibre_a));
            NakamuraSpec b = spec_from_json(load_json_file(fibre_b));
            write_text(fibre_out, spec_to_json(fibre_product(a, b)).dump(2) + "\n");
            return 0;
        }

        if (*diamond_cmd) {
            json rep = load_json_file(diamond_report);
            if (!diamond_csv.empty()) write_text(diamond_csv, hodge_csv(rep));
            write_text(diamond_latex, hodge_latex(rep));
            return 0;
        }

        if (*verify_cmd) {
            json rep = load_json_file(verify_report_path);
            VerifyResult vr = verify_report(rep);
            for (const auto& [name, good] : vr.reverified)
                std::cout << (good ? "[ ok ] " : "[FAIL] ") << name << "  reverified: "
                          << (good ? "true" : "false") << "\n";
            std::cout << vr.message << "\n";
            return vr.ok ? 0 : 1;
        }

        if (*sweep_cmd) return cmd_sweep(sweep_from, sweep_to, sweep_out_dir, flags);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
