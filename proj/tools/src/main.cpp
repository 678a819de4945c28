#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "pseudomode_cli/cli.hpp"

int main(int argc, char** argv)
{
    using pseudomode::cli::OutputFormat;

    CLI::App app{"pseudomode: fixed-sector resolvents, channel reductions and pseudomode dynamics"};
    std::string config;
    std::optional<std::string> output;
    std::optional<OutputFormat> format;
    bool verbose = false;
    app.add_option("config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    app.add_option("-o,--output", output, "Output path (overrides output.path; '-' for stdout)");
    const std::map<std::string, OutputFormat> formats{{"delimited", OutputFormat::Delimited},
                                                      {"structured", OutputFormat::Structured}};
    app.add_option("-f,--format", format, "Output format (overrides output.format)")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    app.add_flag("-v,--verbose", verbose, "Report the command and exit status on stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : pseudomode::cli::kExitValidation;
    }
    if (output && *output == "-") output = std::string{};

    const int status = pseudomode::cli::run_file(config, std::cout, std::cerr, output, format);
    if (verbose) std::cerr << "pseudomode: " << config << " -> exit " << status << '\n';
    return status;
}
