#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tautrig/cli.hpp"

namespace {

int emit(const tautrig::CmdResult& r, const std::string& copy_path) {
  std::cout << r.report;
  if (!copy_path.empty()) {
    std::ofstream os(copy_path, std::ios::binary);
    if (!os) {
      std::cerr << "error: cannot open " << copy_path << " for writing\n";
      return 2;
    }
    os << r.report;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tau-trigger front-end simulator: streaming top-16 seed "
               "selection and parity-addressed candidate gathering"};
  app.require_subcommand(1);

  tautrig::RunConfig cfg;
  std::string arch = "spatial";
  std::string addressing = "parity";
  std::string report_copy;
  int reference_s = 0;

  auto* gen = app.add_subcommand("gen", "generate deterministic synthetic events");
  gen->add_option("--events", cfg.events, "number of events")->default_val(100);
  gen->add_option("--seed", cfg.seed, "generator seed")->default_val(0);
  gen->add_option("--out", cfg.out_path, "event file to write")->required();

  auto* run = app.add_subcommand("run", "run one sorter architecture, "
                                        "oracle-verified, and report latency");
  run->add_option("--in", cfg.in_path, "event file")->required();
  run->add_option("--arch", arch, "spatial|modified|mergetree")
      ->default_val("spatial");
  run->add_option("--buffering-cycles", cfg.buffering_cycles, "B")
      ->default_val(tautrig::kDefaultBufferingCycles);
  run->add_option("--out", report_copy, "also write the report here");

  auto* cmp = app.add_subcommand("compare", "run all architectures plus the "
                                            "oracle and compare latencies");
  cmp->add_option("--in", cfg.in_path, "event file")->required();
  cmp->add_option("--buffering-cycles", cfg.buffering_cycles, "B")
      ->default_val(tautrig::kDefaultBufferingCycles);
  auto* ref = cmp->add_option("--reference-s", reference_s,
                              "reference sorting latency for percent deltas");
  cmp->add_option("--out", report_copy, "also write the report here");

  auto* sel = app.add_subcommand("select", "seed selection plus step-2 "
                                           "candidate gathering with fan-in stats");
  sel->add_option("--in", cfg.in_path, "event file")->required();
  sel->add_option("--addressing", addressing, "naive|parity")
      ->default_val("parity");
  sel->add_option("--buffering-cycles", cfg.buffering_cycles, "B")
      ->default_val(tautrig::kDefaultBufferingCycles);
  sel->add_flag("--verify", cfg.verify,
                "also run the other addressing mode and check equivalence");
  sel->add_option("--out", report_copy, "also write the report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return emit(tautrig::cmd_gen(cfg), "");
    cfg.arch = tautrig::architecture_from(arch);
    cfg.addressing = tautrig::addressing_from(addressing);
    if (ref->count() > 0) cfg.reference_s = reference_s;
    if (run->parsed()) return emit(tautrig::cmd_run(cfg), report_copy);
    if (cmp->parsed()) return emit(tautrig::cmd_compare(cfg), report_copy);
    if (sel->parsed()) return emit(tautrig::cmd_select(cfg), report_copy);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  }
  return 2;
}
