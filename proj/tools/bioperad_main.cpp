#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "biop/suite.hpp"

// Command-line front end.  Every subcommand prints one JSON report to stdout
// (and optionally to a file via -o) and exits 0 iff the report passed.

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"checker for operadic, dioperadic and bioperadic categories"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string output;
    bool no_timing = false;
    app.add_option("-o,--output", output, "also write the report to this file (atomically)");
    app.add_flag("--no-timing", no_timing, "omit wall-clock timing from the report");

    std::string selector, morphism;
    auto* opcat = app.add_subcommand("check-opcat", "check both unary structures are operadic");
    opcat->add_option("selector", selector)->required();
    auto* dio = app.add_subcommand("check-dioperad", "classify the pair up to dioperadicity");
    dio->add_option("selector", selector)->required();
    auto* bio = app.add_subcommand("check-bioperad", "check the bioperadic axioms");
    bio->add_option("selector", selector)->required();

    auto* fib = app.add_subcommand("fibers", "list fibers and cofibers of one morphism");
    fib->add_option("selector", selector)->required();
    fib->add_option("morphism", morphism)->required();

    std::string field = "f2";
    int dims = 2;
    biop::DetCheckOptions det_opt;
    bool exhaustive = false;
    auto* det = app.add_subcommand("bicharade-det", "verify the determinant diagrams");
    det->add_option("--field", field, "f2, f3, ... or q");
    det->add_option("--dims", dims, "dimension bound");
    det->add_flag("--exhaustive", exhaustive, "enumerate every composable pair");
    det->add_option("--samples", det_opt.samples, "number of random pairs");
    det->add_option("--seed", det_opt.seed, "random seed")->envname("BIOPERAD_SEED");
    det->add_flag("--sign-slip", det_opt.sign_slip, "negative control: misorder one pairing");

    std::string structure, data_file, only_h, only_g;
    auto* law = app.add_subcommand("law-check", "check algebraic data against a structure");
    law->add_option("--instance", selector)->required();
    law->add_option("--structure", structure,
                    "operad|cooperad|bimodule|algebra|coalgebra|trace")
        ->required();
    law->add_option("--data", data_file, "JSON data file")->required();
    law->add_option("--only-h", only_h, "restrict to one morphism, by name");
    law->add_option("--only-g", only_g, "restrict the composition partner, by name");

    std::string example;
    auto* ex = app.add_subcommand("paper-example", "run a worked example from the registry");
    ex->add_option("name", example)->required();

    std::string report_file;
    auto* rep = app.add_subcommand("replay", "re-verify the witness of a failing report");
    rep->add_option("report", report_file)->required();

    CLI11_PARSE(app, argc, argv);

    json out;
    try {
        if (opcat->parsed() || dio->parsed() || bio->parsed()) {
            biop::SuiteConfig cfg;
            cfg.selector = selector;
            cfg.timing = !no_timing;
            if (opcat->parsed()) cfg.checks = {"operadic-left", "operadic-right"};
            if (dio->parsed()) cfg.checks = {"dioperadic"};
            if (bio->parsed()) cfg.checks = {"bioperadic"};
            out = biop::run_suite(cfg);
            out["command"] = app.get_subcommands().front()->get_name();
        } else if (fib->parsed()) {
            out = biop::fibers_json(selector, morphism);
        } else if (det->parsed()) {
            det_opt.exhaustive = exhaustive;
            out = biop::bicharade_det_json(field, dims, det_opt, !no_timing);
        } else if (law->parsed()) {
            out = biop::law_check_json(selector, structure, load_json(data_file), !no_timing,
                                       only_h, only_g);
        } else if (ex->parsed()) {
            out = biop::paper_example_json(example);
        } else if (rep->parsed()) {
            out = biop::replay_json(load_json(report_file));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::string bytes = out.dump(2) + "\n";
    std::cout << bytes;
    if (!output.empty()) biop::write_report_atomic(output, bytes);
    return biop::report_ok(out) ? 0 : 1;
}
