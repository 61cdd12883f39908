#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nwfs/onestep.hpp"

namespace nwfs {

/// Successor steps come in blocks; a chain colimit (an omega step) joins
/// consecutive blocks. The step 0 -> 1 counts as a successor.
struct OrdinalBudget {
  std::size_t successors_per_block = 32;
  std::size_t omega_blocks = 1;
};

enum class SequenceMode { Garner, Quillen };
enum class StageKind { Initial, Successor, Limit };

std::string to_string(SequenceMode mode);
std::string to_string(StageKind kind);

struct RunOptions {
  /// Keep stepping after convergence until the budget is spent.
  bool run_full_budget = false;
};

struct Stage {
  StageKind kind = StageKind::Initial;
  Presheaf K;
  PresheafMap lambda;  // C -> K
  PresheafMap rho;     // K -> D
  /// K_{i-1} -> K_i; absent at stage 0.
  std::optional<PresheafMap> connect_in;
  /// Garner only: sigma_in: K'(rho_pred) -> K_i. For a successor i = b + 1
  /// this is sigma_b with pred = b; at a limit it is the last leg after the
  /// sigma of the last stage of the block.
  std::optional<std::size_t> pred;
  std::optional<PresheafMap> sigma_in;
  /// Garner successors past stage 1: the pair whose coequalizer is sigma_in.
  std::optional<std::pair<PresheafMap, PresheafMap>> coequalized;
  /// Limit stages: the colimit of stages limit_from .. i-1.
  std::optional<Cocone> limit;
  std::size_t limit_from = 0;
  /// One-step factorisation of rho; present once a step was taken from here.
  std::shared_ptr<const OneStepFactorization> onestep;
};

struct SequenceState {
  SequenceMode mode = SequenceMode::Garner;
  GeneratingSet gens;
  ArrowObj input;
  OrdinalBudget budget;
  RunOptions options;
  std::vector<Stage> stages;
  std::optional<std::size_t> converged_at;
  std::size_t successor_steps = 0;
  std::size_t omega_steps = 0;

  bool converged() const { return converged_at.has_value(); }
  bool exhausted() const { return !converged_at.has_value(); }

  /// K_a -> K_b for a <= b.
  PresheafMap connect(std::size_t a, std::size_t b) const;
  /// sigma_a: K'(rho_a) -> K_{a+1} (Garner, a + 1 a successor stage).
  const PresheafMap& sigma(std::size_t a) const;
  /// Per-stage, per-object carrier sizes of K.
  std::vector<std::vector<std::size_t>> cardinalities() const;
};

SequenceState run_garner(const GeneratingSet& gens, const ArrowObj& g,
                         const OrdinalBudget& budget = {}, const RunOptions& options = {});

SequenceState run_quillen(const GeneratingSet& gens, const ArrowObj& g,
                          const OrdinalBudget& budget = {}, const RunOptions& options = {});

/// q_i: K^Q_i -> K^G_i over the common stage range. Throws IncompatibleInputs
/// if the runs differ in input, generators, or stage layout.
std::vector<PresheafMap> build_comparison(const SequenceState& garner, const SequenceState& quillen);

/// Checks every per-stage invariant: factorisation, connect maps commuting
/// with lambda and rho, successor connect = sigma o lambda', coequalized
/// pairs, limit cocones, and the convergence claim.
ValidationReport verify_sequence(const SequenceState& state);

}  // namespace nwfs
