// Command-line front end: monge <command> [--config FILE] [--format json|csv|plain]
//                                         [--out PATH] [--fail-on-violation]

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "monge/cli/commands.hpp"
#include "monge/cli/config.hpp"

namespace {

namespace cli = monge::cli;

enum ExitCode { kOk = 0, kViolation = 1, kUsage = 2, kNumerical = 3, kInternal = 4 };

struct Flags {
  std::string config_path;
  std::optional<std::string> format;
  std::optional<std::string> out;
  bool fail_on_violation = false;
  std::optional<std::string> kind;
  std::optional<double> beta;
  std::optional<double> k;
  std::optional<std::string> audit_name;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config_path, "JSON run configuration (unknown keys are rejected)")
      ->check(CLI::ExistingFile);
  sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv", "plain"}));
  sub->add_option("--out", f.out, "Write output here instead of stdout (plot-data: directory for CSV files)");
  sub->add_flag("--fail-on-violation", f.fail_on_violation, "Exit 1 when any audit verdict is violated");
}

std::string render(const cli::RunConfig& c, const cli::CommandOutput& out, double elapsed_ms) {
  if (c.output.format == "csv") {
    std::string s;
    for (std::size_t i = 0; i < out.tables.size(); ++i) {
      if (i) s += '\n';
      s += out.tables[i].csv();
    }
    return s;
  }
  if (c.output.format == "plain") {
    std::string s;
    for (const auto& line : out.plain) s += line + '\n';
    return s;
  }
  return cli::to_text(cli::envelope(c, out, elapsed_ms)) + '\n';
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw monge::InvalidArgument("cannot write output file '" + path.string() + "'");
  f << text;
}

int run(const std::string& command, const Flags& f) {
  cli::RunConfig c = f.config_path.empty() ? cli::RunConfig{} : cli::RunConfig::load(f.config_path);
  if (!c.command.empty() && c.command != command) {
    throw cli::ConfigError("config key 'command' is '" + c.command + "' but the subcommand is '" + command + "'");
  }
  c.command = command;
  if (f.format) c.output.format = *f.format;
  if (f.out) c.output.path = *f.out;
  if (f.fail_on_violation) c.fail_on_violation = true;
  if (f.kind) c.elliptic.kind = *f.kind;
  if (f.beta) c.elliptic.beta = *f.beta;
  if (f.k) c.elliptic.k = *f.k;
  if (f.audit_name) c.audit.name = *f.audit_name;
  c.validate();

  const auto start = std::chrono::steady_clock::now();
  const cli::CommandOutput out = cli::run_command(c);
  const double elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  const std::string text = render(c, out, elapsed_ms);
  if (c.output.path && command == "plot-data") {
    const std::filesystem::path dir(*c.output.path);
    std::filesystem::create_directories(dir);
    for (const auto& t : out.tables) write_file(dir / (t.name + ".csv"), t.csv());
    std::cout << text;
  } else if (c.output.path) {
    write_file(*c.output.path, text);
  } else {
    std::cout << text;
  }
  return out.any_violation && c.fail_on_violation ? kViolation : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for the Monge equation lambda*lambda_x = lambda_t"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cli::kToolVersion);
  Flags flags;

  auto* elliptic = app.add_subcommand("elliptic", "Incomplete elliptic integral F or E (modulus convention)");
  elliptic->add_option("--kind", flags.kind, "F or E")->check(CLI::IsMember({"F", "E"}));
  elliptic->add_option("--beta", flags.beta, "Amplitude in [0, pi/2]");
  elliptic->add_option("--k", flags.k, "Modulus in [0, 1)");
  auto* residual = app.add_subcommand("residual", "Residual lambda*lambda_x - s*lambda_t over a grid");
  auto* solve = app.add_subcommand("solve", "All real roots of an implicit solution at each grid point");
  auto* breaking = app.add_subcommand("breaking-time", "First gradient catastrophe of an initial profile");
  auto* audit = app.add_subcommand("audit", "Run one audit or all of them");
  audit->add_option("name", flags.audit_name, "Audit name (default: all)")
      ->check(CLI::IsMember(cli::audit_names()));
  auto* plot = app.add_subcommand("plot-data", "CSV profiles and characteristic lines for plotting");
  for (auto* sub : {elliptic, residual, solve, breaking, audit, plot}) add_common(sub, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "monge: error: " << e.what() << '\n';
    return kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, flags);
  } catch (const monge::InvalidArgument& e) {
    std::cerr << "monge: error: " << e.what() << '\n';
    return kUsage;
  } catch (const monge::Error& e) {
    std::cerr << "monge: error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "monge: internal error: " << e.what() << '\n';
    return kInternal;
  }
}
