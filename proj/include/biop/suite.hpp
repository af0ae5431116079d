#ifndef BIOP_SUITE_HPP
#define BIOP_SUITE_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "biop/diop.hpp"
#include "biop/exactla.hpp"

// Suite plumbing shared by the command-line tool and the end-to-end tests:
// instance selectors, report assembly, the worked-example registry, and
// witness replay.  All entry points return the versioned report object that
// the tool prints.

namespace biop {

inline constexpr const char* kReportSchema = "bioperad-report/1";

// sfset2:<bound> | bbq:<c1,c2,..>:<bound> | pset:<bound> |
// arr:<path3|terminal|file> | fdvec:<bound> | benv:path3
DiopPair pair_from_selector(const std::string& sel);

struct SuiteConfig {
    std::string selector;
    std::vector<std::string> checks;  // default: operadic-left, operadic-right,
                                      // dioperadic, bioperadic
    bool timing = true;
};

nlohmann::json run_suite(const SuiteConfig& cfg);

// the analysis of one morphism, resolved by name
nlohmann::json fibers_json(const std::string& selector, const std::string& morphism);

nlohmann::json bicharade_det_json(const std::string& field, int dims, DetCheckOptions opt,
                                  bool timing);

// registry: bbq-phi, pset-counterexample, rho-linearized, arr-bioperadic,
// cycl-trace, aug-trace, det-chi
nlohmann::json paper_example_json(const std::string& name);

// data: the parsed contents of a law-check data file (see README for the
// format); only_h / only_g restrict to a single instance when nonempty
nlohmann::json law_check_json(const std::string& selector, const std::string& structure,
                              const nlohmann::json& data, bool timing,
                              const std::string& only_h = "",
                              const std::string& only_g = "");

// re-verifies the witness of a previously emitted failing report in
// isolation; the result's "reproduced" field tells whether it still fails
nlohmann::json replay_json(const nlohmann::json& report);

bool report_ok(const nlohmann::json& report);
void write_report_atomic(const std::string& path, const std::string& bytes);

}  // namespace biop

#endif
