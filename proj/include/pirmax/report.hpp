#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pirmax/capacity.hpp"
#include "pirmax/code.hpp"
#include "pirmax/exec.hpp"
#include "pirmax/pir.hpp"

namespace pirmax {

enum class Status { kPass, kFail, kSkip };

const char* status_name(Status s);

struct CheckResult {
  std::string name;
  Status status = Status::kPass;
  std::string summary;      ///< one line, witnesses verbatim
  nlohmann::json details;   ///< machine-readable fields
};

struct Report {
  std::string kind;  ///< "verify" or "pir-audit"
  std::string subject;
  std::string content_hash;
  CodeParams params;
  std::vector<CheckResult> checks;

  bool pass() const;
};

/// "correctness", "smoothness", ... in execution order.
const std::vector<std::string>& verify_check_names();
const std::vector<std::string>& default_verify_checks();

struct VerifyOptions {
  std::vector<std::string> checks;  ///< empty: default_verify_checks()
  Exec exec = Exec::kParallel;
  std::uint64_t tree_budget = 100000;  ///< enumerate every tree up to this many
  std::size_t tree_samples = 100;
  std::uint64_t seed = 1;
  std::optional<Rational> delta;  ///< corruption fraction; default (ceil(M/N) - 1) / M
  std::size_t exact_limit = 24;   ///< M above which min-distance and corruption are skipped
};

/// Runs the requested checks; throws std::invalid_argument on an unknown or empty check list.
Report run_verify(const LinearCode& code, const VerifyOptions& options = {});

/// Privacy, deniability and costs of a scheme.
Report run_pir_audit(const PirScheme& scheme);

/// One line per check, then the overall verdict.
std::string render_text(const Report& report);
/// {"version", "kind": "report", "report": kind, "code": {...}, "checks": [...], "verdict"}.
nlohmann::json render_json(const Report& report);
/// format is "text" or "json"; anything else throws std::invalid_argument.
std::string render_report(const Report& report, const std::string& format);

}  // namespace pirmax
