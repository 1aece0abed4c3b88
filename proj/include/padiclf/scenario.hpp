#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padiclf/heckechar.hpp"
#include "padiclf/qexp.hpp"

namespace padiclf::cli {

// Scenario: plain-text sections of key = value pairs (see docs/scenario-format.md).
struct Scenario {
    // [scenario]
    std::string form = "delta";    // delta | file:<path>
    long d = 7;
    long p = 11;
    long a = 13;
    long c = 1;                    // conductor generator of xi_a
    long lambda = 5;
    long c_lambda = 1;
    long nu_order = 2;
    std::vector<long> m_list = {13, 23, 33};
    long qexp_bound = 150;
    int padic_precision = 12;
    int lambda_degree = 16;
    int precision_digits = 60;
    unsigned long seed = 1;
    int alpha_branch = 0;
    // [tolerances] by check name; fall back to defaults
    std::vector<std::pair<std::string, double>> tolerances;

    double tol(const std::string& name, double dflt) const;
    std::string canonical() const;     // canonical text (for hashing)
    std::string hash() const;          // FNV-1a of the canonical text
};

// exit codes: 0 pass, 1 check failures, 2 schema violation, 3 hypothesis
// violation, 4 budget exhaustion
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Scenario parse_scenario(const std::string& path);
Scenario parse_scenario_text(const std::string& text);

struct CheckRecord {
    std::string name;
    std::string anchor;  // which identity/construction the check exercises
    std::string lhs, rhs;
    double error = 0;
    double tolerance = 0;
    bool pass = false;
    std::string inputs;  // provenance of the inputs used
};

struct Report {
    int schema_version = 1;
    std::string subcommand;
    std::string scenario_hash;
    std::vector<std::pair<std::string, std::string>> environment;
    std::vector<CheckRecord> checks;
    bool all_pass() const;
    std::string to_json() const;
};

// Validated fixture assembled from a scenario (throws HypothesisError with
// the violated clause names).
struct Fixture {
    Scenario sc;
    quadfield::QuadField K{7};
    heckechar::PadicAlpha alpha;
    heckechar::FiniteType nu;
    heckechar::HeckeCharacter xi_a;
    heckechar::PhiPsiEta pp;
    long k = 12;   // weight of f
    long N0 = 1;   // prime-to-p level of f
    long r0 = 0;
    qexp::QExpQ f; // the newform fixture (rational coefficients)
};

Fixture build_fixture(const Scenario& sc);

// run one subcommand; names: cm-form, stabilize, petersson, verify-euler,
// local-integral, family, constants, full-ledger
Report run_subcommand(const std::string& name, const Scenario& sc,
                      const std::vector<std::string>& only_checks = {});

std::vector<std::string> subcommand_names();

} // namespace padiclf::cli
