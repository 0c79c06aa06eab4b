#include "mvkit/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace mvkit;
  CLI::App app{"Exact sequences and Mayer-Vietoris checks for finitely generated abelian groups"};
  app.require_subcommand(1);

  std::string file, ladder, emit = "human";
  auto add_emit = [&](CLI::App* sub) {
    sub->add_option("--emit", emit, "Report format")->check(CLI::IsMember({"human", "machine"}));
  };

  auto* parse = app.add_subcommand("parse", "Parse and validate a model file");
  parse->add_option("file", file)->required();

  auto* check = app.add_subcommand("check", "Check exactness claims, squares and ladders");
  check->add_option("file", file)->required();
  check->add_option("--ladder", ladder, "Only this row or ladder");

  std::string which;
  for (const char* name : {"mv1", "mv2", "phi"}) {
    auto* sub = app.add_subcommand(name, std::string("Run the ") + name + " analysis on a ladder");
    sub->add_option("file", file)->required();
    sub->add_option("--ladder", ladder, "Milnor ladder name");
    add_emit(sub);
    sub->callback([&which, name] { which = name; });
  }

  TrialConfig cfg;
  std::string suite, dump_dir;
  bool inject = false;
  auto* props = app.add_subcommand("props", "Run a seeded property suite");
  props->add_option("--suite", suite)->required()->check(CLI::IsMember(suite_names()));
  props->add_option("--trials", cfg.trials);
  props->add_option("--seed", cfg.seed);
  props->add_option("--max-order", cfg.max_order);
  props->add_option("--max-rank", cfg.max_rank);
  props->add_option("--max-factors", cfg.max_factors);
  props->add_flag("--inject-fault", inject, "Break every instance to exercise counterexample dumps");
  props->add_option("--dump-dir", dump_dir, "Write counterexample files here");
  add_emit(props);

  auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix file");
  snf->add_option("file", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const ReportFormat format = emit == "machine" ? ReportFormat::machine : ReportFormat::human;
  CommandResult r;
  if (*parse) r = cmd_parse(file);
  else if (*check) r = cmd_check(file, ladder);
  else if (*props) r = cmd_props(suite, cfg, format, inject, dump_dir);
  else if (*snf) r = cmd_snf(file);
  else r = cmd_analysis(which, file, ladder, format);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
