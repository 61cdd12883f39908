#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nwfs/rules.hpp"

namespace nwfs {

struct Counterexample {
  std::string rule;
  std::string axiom;
  PresheafMap arrow;
  PresheafMap lhs;
  PresheafMap rhs;
  /// First differing element, rendered "object:element lhs=.. rhs=..".
  std::string witness;
};

struct AxiomVerdict {
  std::string axiom;
  std::size_t checked = 0;
  std::size_t failed = 0;
};

struct RuleLawReport {
  std::string rule;
  std::vector<AxiomVerdict> axioms;
  std::vector<Counterexample> counterexamples;  // at most a few per axiom
};

struct LawReport {
  std::size_t sample_size = 0;
  std::vector<RuleLawReport> rules;

  std::size_t failures() const;
  bool ok() const { return failures() == 0; }
};

/// Axiom names in check order.
const std::vector<std::string>& law_axioms();

/// Every arrow X -> Y of finite sets with |X|, |Y| <= max_size, then
/// `extras` arrows with |X|, |Y| <= extra_size drawn from a generator seeded
/// with `seed`.
std::vector<PresheafMap> law_sample(std::size_t max_size, std::uint64_t seed,
                                    std::size_t extras = 8, std::size_t extra_size = 5);

/// Checks unit/counit, (co)associativity, the distributivity square and the
/// four bialgebra diagrams at middle components for each rule and arrow.
/// Rules lacking sigma or pi skip the axioms that need them.
LawReport check_laws(const std::vector<FactorizationRule>& rules,
                     const std::vector<PresheafMap>& sample,
                     std::size_t max_counterexamples_per_axiom = 3);

enum class StructureComponent { Sigma, Pi };

/// The rule with one entry of sigma_f (or pi_f) changed at every f: entry
/// index seed mod |source|, new value (old + 1 + seed) mod |target| at that
/// object. Arrows where the entry cannot change are left alone.
FactorizationRule mutate_rule(const FactorizationRule& rule, StructureComponent which,
                              std::uint64_t seed);

/// Graph rule with pi((x, y'), y) = (x, y').
FactorizationRule graph_rule_with_wrong_pi();

}  // namespace nwfs
