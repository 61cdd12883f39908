#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nwfs/lifting.hpp"
#include "nwfs/laws.hpp"
#include "nwfs_cli/json_io.hpp"

namespace nwfs::io {

inline constexpr const char* kSchema = "nwfs-certificate/1";

/// Exit codes shared by the CLI and the certificates it writes.
enum ExitCode : int { kOk = 0, kExhausted = 2, kRefuted = 3, kInputError = 4 };

struct RunInputs {
  FinCategory base;
  GeneratingSet gens;
  ArrowObj map;
  OrdinalBudget budget;
};

struct LawInputs {
  std::vector<std::string> rules;
  std::size_t max_size = 4;
  std::uint64_t seed = 0;
  /// "sigma:N" or "pi:N" applied to every rule.
  std::optional<std::string> mutation;
};

/// Certificates are deterministic functions of their inputs; `timing`
/// (wall-clock milliseconds) is the only field excluded from re-validation.
json factorize_certificate(const RunInputs& in, SequenceMode mode);
json compare_certificate(const RunInputs& in);
json enumerate_certificate(const RunInputs& in);
json laws_certificate(const LawInputs& in);

json run_json(const SequenceState& st);
json algebra_json(const AlgebraStructure& a, std::size_t stage);
json table_json(const LiftingTable& t);

/// Rebuilds the recorded runs and structures from the serialized data,
/// re-checks every commutation, quotient, algebra and table equation, then
/// recomputes the certificate from its embedded inputs and compares.
ValidationReport validate_certificate(const json& cert);

/// Stable-ordered, line-oriented summary of a certificate.
std::string text_report(const json& cert);

/// Inverse of the "inputs" section.
RunInputs parse_run_inputs(const json& cert);

/// The recorded run, rebuilt with one-step data, cocones and coequalized
/// pairs; throws InputError on structural mismatches.
SequenceState parse_run(const json& run, const RunInputs& in, ValidationReport& report,
                        const std::string& at);

}  // namespace nwfs::io
