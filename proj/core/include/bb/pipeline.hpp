#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bb/decider_ngram_cps.hpp"
#include "bb/decider_repwl.hpp"
#include "bb/enumerate.hpp"
#include "bb/machine.hpp"
#include "bb/record.hpp"
#include "bb/verifier_far.hpp"
#include "bb/verifier_wfar.hpp"

namespace bb {

enum class StageKind : uint8_t {
  Loop,          // LOOP1_params_<L>
  NgramCps,      // NGRAM_CPS_{IMPL1,IMPL2,LRU}_params_...
  RepWl,         // REPWL_params_<l>_<T>[_<B>_<N>]
  HaltMax,       // HALT_MAX_params_<bound> / HALT_DECIDER_<bound>
  RepWlTable,    // REPWL_params_custom <file of machine,l,T rows>
  NgramTable,    // NGRAM_CPS_params_custom <file of machine,stage-id rows>
  LoopTable,     // LOOP1_params_custom <file of machine,L rows>
  FarTable,      // FAR_certificates <file of machine,cert-path rows>
  WfarTable,     // WFAR_certificates <file of machine,cert-path rows>
  AssumeTable,   // SPORADIC_MACHINES <file of machine rows>
  NormalForm,    // NORMAL_FORM_TABLE_BASED: 1RB-reduction into the tables
};

struct PipelineStage {
  StageKind kind;
  std::string id;  // Appendix-style decider ID

  int64_t loop_limit = 0;
  NgramParams ngram;
  RepwlParams repwl;
  int64_t halt_bound = 0;

  // Table stages: canonical machine text -> entry.
  std::shared_ptr<const std::unordered_map<std::string, RepwlParams>>
      repwl_table;
  std::shared_ptr<const std::unordered_map<std::string, NgramParams>>
      ngram_table;
  std::shared_ptr<const std::unordered_map<std::string, int64_t>> loop_table;
  std::shared_ptr<const std::unordered_map<std::string, NfaCertificate>>
      far_table;
  std::shared_ptr<const std::unordered_map<std::string, WfarCertificate>>
      wfar_table;
  std::shared_ptr<const std::unordered_map<std::string, bool>> assume_table;
};

// Parses an Appendix-style stage ID (no table path). Round-trips: the parsed
// stage's `id` equals the input.
PipelineStage parse_stage_id(const std::string& id);

class Pipeline {
 public:
  Pipeline() = default;
  explicit Pipeline(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  const std::vector<PipelineStage>& stages() const { return stages_; }
  std::vector<std::string> stage_ids() const;
  bool has_assumptions() const;

  void add_stage(PipelineStage stage);

  // First non-UNKNOWN stage verdict wins; residual UNKNOWN is a holdout.
  DecideOutcome decide(const TransitionTable& tm) const;

  // Built-in names: s2, s3, s4, s2x3, s2x4, s5-partial. The s5-partial
  // pipeline loads its tables from `tables_dir` when present.
  static Pipeline builtin(const std::string& name,
                          const std::string& tables_dir = "");
  static bool is_builtin(const std::string& name);

  // Config file: one stage ID per line, table stages followed by a path
  // (relative to the config file); '#' comments allowed.
  static Pipeline from_config_file(const std::string& path);

 private:
  std::string name_;
  std::vector<PipelineStage> stages_;
};

struct StageStats {
  std::string id;
  int64_t nonhalt = 0;
  int64_t halt = 0;
  std::vector<std::string> machines;  // capped sample of decided machines
};

struct RunSummary {
  int n_states = 0;
  int n_symbols = 0;
  std::string pipeline_name;
  SymbolOrder symbol_order = SymbolOrder::Strict;

  int64_t total = 0;
  int64_t halt = 0;
  int64_t nonhalt = 0;
  int64_t unknown = 0;
  int64_t assumed_nonhalt = 0;

  int64_t best_steps = 0;
  std::vector<std::string> steps_winners;
  int64_t best_sigma = 0;
  std::vector<std::string> sigma_winners;
  int64_t best_space = 0;
  std::vector<std::string> space_winners;

  std::vector<StageStats> stages;
  std::vector<std::string> holdouts;  // capped; `unknown` holds the count
  bool conditional = false;  // an assumption list contributed verdicts

  static constexpr size_t kStageSampleCap = 16;
  static constexpr size_t kHoldoutCap = 1000;

  void absorb(const MachineRecord& rec);

  std::string to_text() const;
  std::string to_json() const;
};

struct RunOptions {
  int jobs = 1;
  SymbolOrder symbol_order = SymbolOrder::Strict;
  // When set, records are appended here in canonical DFS order.
  RecordSink sink;
};

// Full enumeration plus aggregation for one (n_states, n_symbols) cell.
RunSummary run_value(int n_states, int n_symbols, const Pipeline& pipeline,
                     const RunOptions& opts = {});

// Simulates to the bound; HALT record fields when the machine halts in time.
std::optional<HaltStats> long_halt_probe(const TransitionTable& tm,
                                         int64_t bound);

// First (l, T) in row-major order of the ranges for which RepWL returns
// NONHALT, or nothing.
std::optional<std::pair<int, int>> grid_search_repwl(
    const TransitionTable& tm, int l_min, int l_max, int t_min, int t_max,
    int64_t block_budget = 320, int64_t max_nodes = 150001);

}  // namespace bb
