// bbenum: enumerate Turing machines in Tree Normal Form, decide halting
// through a decider pipeline, verify nonhalting certificates and render
// space-time diagrams.
//
// Exit codes: 0 success, 1 UNKNOWN verdict / holdouts / failed verification,
// 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "bb/decider_loops.hpp"
#include "bb/pipeline.hpp"
#include "bb/simulate.hpp"
#include "bb/spacetime.hpp"
#include "bb/tnf.hpp"
#include "bb/verifier_far.hpp"
#include "bb/verifier_wfar.hpp"

using namespace bb;

namespace {

int default_jobs() {
  if (const char* env = std::getenv("BBENUM_JOBS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

Pipeline load_pipeline(const std::string& name, const std::string& tables) {
  if (Pipeline::is_builtin(name)) return Pipeline::builtin(name, tables);
  return Pipeline::from_config_file(name);
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Busy Beaver enumeration and deciding engine"};
  app.require_subcommand(1);

  std::string machine, pipeline_name = "s4", tables_dir, out_path, cert_path;
  int n_states = 4, n_symbols = 2;
  int jobs = default_jobs();
  bool quasi = false;
  int64_t max_steps = 1000000;
  std::string summary_json;

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate a TNF tree");
  enumerate->add_option("--states", n_states, "State count")->required();
  enumerate->add_option("--symbols", n_symbols, "Symbol count (default 2)");
  enumerate->add_option("--pipeline", pipeline_name,
                        "Builtin name (s2, s3, s4, s2x3, s2x4, s5-partial) or "
                        "config file (default s4)");
  enumerate->add_option("--tables", tables_dir,
                        "Directory with table files for s5-partial");
  enumerate->add_option("--out", out_path, "Record list output file");
  enumerate->add_option("--jobs", jobs,
                        "Worker count (default: cores or $BBENUM_JOBS)");
  enumerate->add_flag("--quasi", quasi,
                      "Quasi-TNF: no order imposed on non-0 symbols");
  enumerate->add_option("--summary-json", summary_json,
                        "Write the machine-readable summary here");

  auto* decide = app.add_subcommand("decide", "Decide one machine");
  decide->add_option("--machine", machine, "Machine text")->required();
  decide->add_option("--pipeline", pipeline_name, "Pipeline (default s4)");
  decide->add_option("--tables", tables_dir, "Table directory");

  auto* simulate_cmd = app.add_subcommand("simulate", "Run one machine");
  simulate_cmd->add_option("--machine", machine, "Machine text")->required();
  simulate_cmd->add_option("--max-steps", max_steps,
                           "Step budget (default 10^6)");

  int64_t budget = 1 << 20;
  auto* normalize = app.add_subcommand("normalize", "TNF-normalize a machine");
  normalize->add_option("--machine", machine, "Machine text")->required();
  normalize->add_option("--budget", budget, "Simulation budget");

  DiagramSpec spec;
  auto* render = app.add_subcommand("render", "Write a space-time diagram");
  render->add_option("--machine", machine, "Machine text")->required();
  render->add_option("--steps", spec.steps, "Rows minus one (default 45)");
  render->add_option("--width", spec.width, "Tape cells shown (default 400)");
  render->add_option("--offset", spec.offset, "Window shift (default 0)");
  render->add_flag("--colored", spec.colored, "Color the head by state (PPM)");
  render->add_option("--out", out_path, "Output file (.pgm or .ppm)")
      ->required();

  auto* vfar = app.add_subcommand("verify-far", "Check a FAR certificate");
  vfar->add_option("--machine", machine, "Machine text")->required();
  vfar->add_option("--cert", cert_path, "Certificate JSON")->required();

  auto* vwfar = app.add_subcommand("verify-wfar", "Check a WFAR certificate");
  vwfar->add_option("--machine", machine, "Machine text")->required();
  vwfar->add_option("--cert", cert_path, "Certificate JSON")->required();

  auto* search = app.add_subcommand("search", "Certificate/parameter search");
  search->require_subcommand(1);
  int l_min = 1, l_max = 8, t_min = 2, t_max = 4;
  int64_t block_budget = 320, max_nodes = 150001;
  auto* grid = search->add_subcommand("repwl-grid",
                                      "Grid-search RepWL parameters");
  grid->add_option("--machine", machine, "Machine text")->required();
  grid->add_option("--l-min", l_min, "Smallest block length (default 1)");
  grid->add_option("--l-max", l_max, "Largest block length (default 8)");
  grid->add_option("--t-min", t_min, "Smallest threshold (default 2)");
  grid->add_option("--t-max", t_max, "Largest threshold (default 4)");
  grid->add_option("--block-budget", block_budget, "B (default 320)");
  grid->add_option("--max-nodes", max_nodes, "N (default 150001)");

  int max_dfa_states = 4;
  int64_t dfa_budget = -1;
  auto* far_search = search->add_subcommand("far", "Brute-force DFA search");
  far_search->add_option("--machine", machine, "Machine text")->required();
  far_search->add_option("--max-dfa-states", max_dfa_states,
                         "Largest precursor DFA (default 4)");
  far_search->add_option("--budget", dfa_budget,
                         "Max DFAs to try (-1: unbounded)");
  far_search->add_option("--out", out_path, "Certificate output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*enumerate) {
      Pipeline pipeline = load_pipeline(pipeline_name, tables_dir);
      RunOptions opts;
      opts.jobs = jobs;
      opts.symbol_order = quasi ? SymbolOrder::Quasi : SymbolOrder::Strict;
      std::ofstream file;
      if (!out_path.empty()) {
        std::ostream& os = open_out(file, out_path);
        opts.sink = [&os](const MachineRecord& rec) {
          os << rec.to_line() << '\n';
        };
      }
      std::cerr << "enumerating " << n_states << "x" << n_symbols
                << " with pipeline " << pipeline.name() << " (" << jobs
                << " worker" << (jobs == 1 ? "" : "s") << ")\n";
      RunSummary sum = run_value(n_states, n_symbols, pipeline, opts);
      std::cout << sum.to_text();
      if (!summary_json.empty()) {
        std::ofstream js(summary_json);
        js << sum.to_json() << '\n';
      }
      return sum.unknown ? 1 : 0;
    }

    if (*decide) {
      Pipeline pipeline = load_pipeline(pipeline_name, tables_dir);
      DecideOutcome out = pipeline.decide(parse_machine(machine));
      std::string line = status_name(out.status);
      if (out.status != Status::Unknown) line += "," + out.decider_id;
      if (out.halt) line += ",steps=" + std::to_string(out.halt->steps);
      std::cout << line << "\n";
      return out.status == Status::Unknown ? 1 : 0;
    }

    if (*simulate_cmd) {
      SimOutcome out = simulate(parse_machine(machine), max_steps);
      if (out.halted)
        std::cout << "halted,steps=" << out.steps << ",sigma=" << out.sigma
                  << ",space=" << out.space << "\n";
      else
        std::cout << "still-running,steps=" << out.steps << "\n";
      return 0;
    }

    if (*normalize) {
      TnfResult r = tnf_normalize(parse_machine(machine), budget);
      std::cout << emit_machine(r.table) << "\n";
      if (!r.complete)
        std::cerr << "partial: budget exhausted before halting; unreached "
                     "transitions were kept\n";
      return 0;
    }

    if (*render) {
      std::string bytes = render_spacetime(parse_machine(machine), spec);
      std::ofstream file;
      open_out(file, out_path) << bytes;
      return 0;
    }

    if (*vfar) {
      FarOutcome out =
          check_far(parse_machine(machine), NfaCertificate::load(cert_path));
      if (out.verified) {
        std::cout << "Verified\n";
        return 0;
      }
      std::cout << "Failed(" << far_condition_name(out.failed) << ")\n";
      return 1;
    }

    if (*vwfar) {
      WfarOutcome out =
          check_wfar(parse_machine(machine), WfarCertificate::load(cert_path));
      if (out.verified) {
        std::cout << "Verified\n";
        return 0;
      }
      std::cout << "Failed(" << wfar_failure_name(out.failure) << ")\n";
      return 1;
    }

    if (*grid) {
      auto lt = grid_search_repwl(parse_machine(machine), l_min, l_max, t_min,
                                  t_max, block_budget, max_nodes);
      if (!lt) {
        std::cout << "no parameters found\n";
        return 1;
      }
      std::cout << "l=" << lt->first << ",T=" << lt->second << "\n";
      return 0;
    }

    if (*far_search) {
      auto cert =
          search_far(parse_machine(machine), max_dfa_states, dfa_budget);
      if (!cert) {
        std::cout << "no certificate found\n";
        return 1;
      }
      std::ofstream file;
      open_out(file, out_path) << cert->to_json() << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
