// SPDX-License-Identifier: Apache-2.0
// Re-aggregates a sweep CSV into per-cell means and sample deviations.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nfsec/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Summarize a sweep CSV"};
    std::string input, output;
    app.add_option("csv", input, "Sweep CSV written by simulate")->required()->check(CLI::ExistingFile);
    app.add_option("--out", output, "Summary path (default: <csv stem>_summary.csv)");
    CLI11_PARSE(app, argc, argv);

    try {
        std::cout << nfsec::summarize(input, output).string() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
