#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "padiclf/scenario.hpp"

using namespace padiclf;

int main(int argc, char** argv) {
    CLI::App app{"desk-scale verification pipelines for anticyclotomic p-adic L-function constants"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string scenario_path, out_path, checks_csv;
    int digits = -1, padic_prec = -1;
    long qexp_bound = -1;
    app.add_option("--scenario", scenario_path, "scenario file (key = value sections)");
    app.add_option("--out", out_path, "write the JSON report here (default stdout)");
    app.add_option("--precision-digits", digits, "override working precision (decimal digits)");
    app.add_option("--padic-precision", padic_prec, "override p-adic precision");
    app.add_option("--qexp-bound", qexp_bound, "override q-expansion truncation");
    app.add_option("--check", checks_csv, "comma-separated list of checks to run (subset)");

    for (const auto& name : cli::subcommand_names()) app.add_subcommand(name, "");

    CLI11_PARSE(app, argc, argv);

    try {
        cli::Scenario sc;
        if (!scenario_path.empty()) sc = cli::parse_scenario(scenario_path);
        if (digits > 0) sc.precision_digits = digits;
        if (padic_prec > 0) sc.padic_precision = padic_prec;
        if (qexp_bound > 0) sc.qexp_bound = qexp_bound;
        std::vector<std::string> only;
        if (!checks_csv.empty()) {
            std::istringstream ss(checks_csv);
            std::string tok;
            while (std::getline(ss, tok, ',')) only.push_back(tok);
        }
        std::string sub = app.get_subcommands().front()->get_name();
        auto report = cli::run_subcommand(sub, sc, only);
        std::string j = report.to_json();
        if (out_path.empty()) {
            std::cout << j << std::endl;
        } else {
            std::ofstream out(out_path);
            out << j << "\n";
        }
        return report.all_pass() ? 0 : 1;
    } catch (const cli::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << std::endl;
        return 2;
    } catch (const cli::HypothesisError& e) {
        std::cerr << e.what() << std::endl;
        return 3;
    } catch (const cli::BudgetError& e) {
        std::cerr << "budget exhausted: " << e.what() << std::endl;
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
}
