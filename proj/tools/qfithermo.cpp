// qfithermo: QFI, ensemble-entropy and erasure-heat calculations from the
// command line.
//
//   qfithermo bounds|rabi|dicke|erasure-scan --config <path> [--output <path>]
//             [--format csv|json] [--verify] [--bits] [--threads N]

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qfithermo/cli.hpp"

namespace {

struct Args {
  std::string config;
  std::string output;
  std::string format = "csv";
  bool verify = false;
  bool bits = false;
  unsigned threads = 1;
};

void add_common_options(CLI::App* sub, Args& args) {
  sub->add_option("--config", args.config, "JSON configuration file")->required();
  sub->add_option("--output", args.output, "Write results here instead of stdout");
  sub->add_option("--format", args.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--verify", args.verify, "Re-derive the inequalities before writing");
  sub->add_flag("--bits", args.bits, "Report entropies in bits instead of nats");
  sub->add_option("--threads", args.threads, "Worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = qfithermo::cli;

  CLI::App app{"Thermodynamic bounds for quantum metrology"};
  app.require_subcommand(1);
  Args args;
  std::map<CLI::App*, std::string> commands;
  for (const char* name : {"bounds", "rabi", "dicke", "erasure-scan"}) {
    static const std::map<std::string, std::string> help = {
        {"bounds", "QFI, ensemble entropy and heat floors for one probe state"},
        {"rabi", "QFI erasure through a thermal bosonic mode, one row per c0"},
        {"dicke", "Entropy and weighted QFI scaling of symmetric multi-qubit families"},
        {"erasure-scan", "Scan the erasure time of the Rabi probe"},
    };
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    add_common_options(sub, args);
    commands[sub] = name;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitValidation;
  }

  std::string command;
  for (const auto& [sub, name] : commands) {
    if (sub->parsed()) command = name;
  }

  try {
    cli::OutputOptions options;
    options.format = args.format == "json" ? cli::Format::json : cli::Format::csv;
    options.verify = args.verify;
    options.bits = args.bits;
    options.threads = args.threads;

    const std::string text = cli::run_command(command, cli::load_config(args.config), options);
    if (args.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(args.output, std::ios::binary);
      if (!out) throw qfithermo::ValidationError("cannot write " + args.output);
      out << text;
    }
    return cli::kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "qfithermo " << command << ": " << e.what() << '\n';
    return cli::exit_code_for(e);
  }
}
