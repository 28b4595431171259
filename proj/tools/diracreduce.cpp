#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "diracreduce_io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact pointwise reduction of generalized complex structures"};
  app.require_subcommand(1);

  std::string file;
  std::string format = "text";
  std::optional<std::size_t> points;
  std::optional<std::uint64_t> seed;

  const std::pair<const char*, const char*> commands[] = {
      {"check", "evaluate the seven reduction conditions for a [datum]"},
      {"reduce", "check, then build the reduced structure J_G"},
      {"gk-reduce", "reduce a generalized Kahler pair or quadruple"},
      {"bracket", "Courant bracket of two polynomial sections, optional Nijenhuis defect"},
      {"sweep", "pointwise reduction at every sample point of a chart scenario"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, "input file (diracreduce-v1)")->required();
    sub->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "machine"}));
    sub->add_option("--seed", seed, "with --points, choose the kept points by this seed");
    sub->add_option("--points", points, "keep only k sample points (sweep)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : diracreduce::kInvalid;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    std::cerr << "diracreduce: cannot read '" << file << "'\n";
    return diracreduce::kInvalid;
  }
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};

  diracreduce::Report report = diracreduce::run(command, file, bytes, {points, seed});
  std::cout << diracreduce::render(report, format == "machine");
  if (report.exit_code == diracreduce::kInvalid && report.doc.contains("error"))
    std::cerr << "diracreduce: " << report.doc["error"].get<std::string>() << "\n";
  return report.exit_code;
}
