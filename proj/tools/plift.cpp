// Command-line front end: verify pMCs over parameter regions, transform and
// substitute models, analyze explicit iMCs, and generate example models.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "plift/builtin.hpp"
#include "plift/engine.hpp"
#include "plift/parse.hpp"

using nlohmann::json;

namespace {

constexpr int kExitSat = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitInputError = 3;

std::string read_input(std::string const& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw plift::Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// -r accepts either a literal region or a path to a file holding one.
std::string region_text(std::string const& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) return read_input(arg);
    return arg;
}

struct EngineFlags {
    std::string bigstep = "on";
    std::string split = "roundrobin";
    plift::EngineOptions opts;

    void attach(CLI::App* cmd) {
        cmd->add_option("--bigstep", bigstep, "apply the big-step transformation (on|off)")
            ->check(CLI::IsMember({"on", "off"}))
            ->capture_default_str();
        cmd->add_option("--split", split, "region splitting strategy")
            ->check(CLI::IsMember({"roundrobin", "width"}))
            ->capture_default_str();
        cmd->add_option("--split-arity", opts.split_arity, "coordinates split per refinement")
            ->capture_default_str();
        cmd->add_option("--precision", opts.precision, "value-iteration precision")
            ->capture_default_str();
        cmd->add_option("--max-regions", opts.max_regions, "region budget")
            ->capture_default_str();
        cmd->add_option("--timeout-s", opts.timeout_s, "wall-clock budget in seconds (0 = none)")
            ->capture_default_str();
        cmd->add_option("--samples-per-region", opts.samples_per_region,
                        "sampled points per undecided region")
            ->capture_default_str();
        cmd->add_option("--seed", opts.seed, "sampling seed")->capture_default_str();
        cmd->add_option("--workers", opts.workers, "parallel region checks")
            ->capture_default_str();
    }

    plift::EngineOptions resolve() {
        opts.bigstep = bigstep == "on";
        opts.split =
            split == "width" ? plift::SplitKind::WidthHeuristic : plift::SplitKind::RoundRobin;
        return opts;
    }
};

char const* kind_name(plift::Verdict::Kind kind) {
    switch (kind) {
        case plift::Verdict::Kind::AllSat: return "AllSat";
        case plift::Verdict::Kind::AllViolate: return "AllViolate";
        case plift::Verdict::Kind::Refuted: return "Refuted";
        case plift::Verdict::Kind::Unknown: return "Unknown";
    }
    return "?";
}

json assignment_to_json(plift::Assignment const& u) {
    json j = json::object();
    for (auto const& [p, v] : u)
        j[plift::param_name(p)] = plift::rational_to_string(v);
    return j;
}

json verdict_to_json(plift::Verdict const& verdict) {
    auto const& s = verdict.stats;
    json j{{"verdict", kind_name(verdict.kind)},
           {"regions_checked", s.regions_checked},
           {"regions_proven", s.regions_proven},
           {"vacuous_regions", s.vacuous_regions},
           {"max_depth", s.max_depth},
           {"depth_histogram", s.depth_histogram},
           {"vi_sweeps", s.vi_sweeps},
           {"vi_style", s.vi_style},
           {"bigstep", s.bigstep_enabled},
           {"elapsed_s", s.elapsed_s}};
    if (s.bigstep_enabled)
        j["bigstep_stats"] = {{"shortcuts", s.bigstep.shortcuts},
                              {"groupings", s.bigstep.groupings},
                              {"states_before", s.bigstep.states_before},
                              {"states_after", s.bigstep.states_after}};
    if (verdict.witness) j["witness"] = assignment_to_json(*verdict.witness);
    if (verdict.witness_value) j["witness_value"] = plift::rational_to_string(*verdict.witness_value);
    if (!verdict.unknown_reason.empty()) j["reason"] = verdict.unknown_reason;
    return j;
}

void print_human(plift::Verdict const& verdict) {
    auto const& s = verdict.stats;
    std::cout << "verdict: " << kind_name(verdict.kind) << "\n";
    if (verdict.witness) {
        std::cout << "witness:";
        for (auto const& [p, v] : *verdict.witness)
            std::cout << " " << plift::param_name(p) << "=" << plift::rational_to_string(v);
        std::cout << "  (reachability " << plift::rational_to_string(*verdict.witness_value)
                  << ")\n";
    }
    if (!verdict.unknown_reason.empty()) std::cout << "reason: " << verdict.unknown_reason << "\n";
    std::cout << "regions: " << s.regions_checked << " checked, " << s.regions_proven
              << " proven";
    if (s.vacuous_regions > 0) std::cout << ", " << s.vacuous_regions << " vacuous";
    std::cout << ", max depth " << s.max_depth << "\n";
    if (s.bigstep_enabled)
        std::cout << "big-step: " << s.bigstep.states_before << " -> " << s.bigstep.states_after
                  << " states, " << s.bigstep.shortcuts << " shortcuts, " << s.bigstep.groupings
                  << " groupings\n";
    std::cout << "value iteration: " << s.vi_sweeps << " sweeps (" << s.vi_style << ")\n";
    std::cout << "time: " << s.elapsed_s << " s\n";
}

int run_verify(std::string const& model_path, std::string const& region_arg,
               std::string const& property_arg, EngineFlags& flags, bool as_json,
               std::string const& dump_path) {
    plift::PMC pmc = plift::parse_model(read_input(model_path));
    plift::Region region = plift::parse_region(region_text(region_arg), pmc);
    plift::Property prop = plift::parse_property(property_arg);
    plift::EngineOptions opts = flags.resolve();

    std::ofstream dump;
    plift::RegionSink sink;
    if (!dump_path.empty()) {
        dump.open(dump_path);
        if (!dump) throw plift::Error("cannot open " + dump_path);
        sink = [&dump](plift::RegionRecord const& rec) {
            json j{{"region", rec.region.to_string()},
                   {"depth", rec.depth},
                   {"estimate", {rec.lo, rec.hi}},
                   {"status", rec.status}};
            dump << j.dump() << "\n";
        };
    }

    plift::Verdict verdict = plift::verify(pmc, region, prop, opts, sink);
    if (as_json)
        std::cout << verdict_to_json(verdict).dump() << "\n";
    else
        print_human(verdict);
    switch (verdict.kind) {
        case plift::Verdict::Kind::AllSat: return kExitSat;
        case plift::Verdict::Kind::AllViolate:
        case plift::Verdict::Kind::Refuted: return kExitViolated;
        case plift::Verdict::Kind::Unknown: return kExitUnknown;
    }
    return kExitUnknown;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parameter lifting verifier for parametric Markov chains"};
    app.require_subcommand(1);

    std::string model_path = "-";
    std::string region_arg, property_arg, dump_path, gen_name, out_path;
    bool as_json = false;
    unsigned dn_n = 2;
    double precision = 1e-6;
    EngineFlags flags;

    auto* verify = app.add_subcommand("verify", "verify a property over a parameter region");
    verify->add_option("-m,--model", model_path, "model file (- for stdin)")
        ->capture_default_str();
    verify->add_option("-r,--region", region_arg, "region (literal or file)")->required();
    verify->add_option("-p,--property", property_arg, "property, e.g. 'P<0.2 [F \"good\"]'")
        ->required();
    verify->add_flag("--json", as_json, "machine-readable verdict record");
    verify->add_option("--dump-regions", dump_path, "write decided regions as JSON lines");
    flags.attach(verify);

    auto* transform = app.add_subcommand("transform", "apply the big-step transformation");
    transform->add_option("-m,--model", model_path, "model file (- for stdin)")
        ->capture_default_str();

    auto* substitute = app.add_subcommand("substitute", "interval-substitute a region");
    substitute->add_option("-m,--model", model_path, "model file (- for stdin)")
        ->capture_default_str();
    substitute->add_option("-r,--region", region_arg, "region (literal or file)")->required();
    substitute->add_option("--precision", precision, "range bounding tolerance")
        ->capture_default_str();

    auto* analyze = app.add_subcommand("analyze-imc", "reachability interval of an explicit iMC");
    analyze->add_option("-m,--model", model_path, "iMC file (- for stdin)")
        ->capture_default_str();
    analyze->add_option("--precision", precision, "value-iteration precision")
        ->capture_default_str();
    analyze->add_flag("--json", as_json, "machine-readable output");

    auto* gen = app.add_subcommand("gen", "print a generated or built-in model");
    gen->add_option("name", gen_name, "dn or a built-in model name")->required();
    gen->add_option("--n", dn_n, "size for the dn family");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed())
            return run_verify(model_path, region_arg, property_arg, flags, as_json, dump_path);
        if (transform->parsed()) {
            plift::PMC pmc = plift::parse_model(read_input(model_path));
            std::cout << plift::serialize_model(plift::big_step(pmc));
            return kExitSat;
        }
        if (substitute->parsed()) {
            plift::PMC pmc = plift::parse_model(read_input(model_path));
            plift::Region region = plift::parse_region(region_text(region_arg), pmc);
            std::cout << plift::serialize_imc(
                plift::interval_substitute(pmc, region, plift::rational_from_double(precision)));
            return kExitSat;
        }
        if (analyze->parsed()) {
            plift::IMC imc = plift::parse_imc(read_input(model_path));
            plift::Interval estimate = plift::reachability_interval(imc, precision);
            if (as_json) {
                json j{{"lo", plift::to_double(estimate.lo)}, {"hi", plift::to_double(estimate.hi)}};
                std::cout << j.dump() << "\n";
            } else {
                std::cout << "reachability interval: [" << plift::to_double(estimate.lo) << ", "
                          << plift::to_double(estimate.hi) << "]\n";
            }
            return kExitSat;
        }
        if (gen->parsed()) {
            if (gen_name == "dn") {
                std::cout << plift::serialize_model(plift::gen_dn(dn_n));
                return kExitSat;
            }
            if (auto text = plift::builtin_model(gen_name)) {
                std::cout << *text;
                return kExitSat;
            }
            std::cerr << "error: unknown model '" << gen_name << "'; available: dn";
            for (auto const& n : plift::builtin_model_names()) std::cerr << " " << n;
            std::cerr << "\n";
            return kExitInputError;
        }
    } catch (plift::ParseError const& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitInputError;
    } catch (plift::Error const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
