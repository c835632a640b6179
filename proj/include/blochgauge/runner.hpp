#pragma once

#include "blochgauge/config.hpp"

namespace blochgauge {

// Command entry points. Each writes its CSV/JSON outputs and returns 0 on
// completion; verdicts live in the reports. Bad specs throw config_error,
// numerical breakdowns throw numerical_error.
int run_check(const AuditConfig& cfg);
int run_lemma(const AuditConfig& cfg);
int run_thm2(const AuditConfig& cfg);
int run_little_bloch(const AuditConfig& cfg);
int run_weights(const AuditConfig& cfg);

// Dispatch on cfg.command with exceptions mapped to exit codes:
// 0 completed, 2 config error, 3 numerical failure.
int run_audit(const AuditConfig& cfg);

} // namespace blochgauge
