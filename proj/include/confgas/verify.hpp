#pragma once

// Cross-module verification: heat-kernel traces from exact spectra against
// the Weyl expansion, and the thermodynamic identities against finite
// differences and exact sums. Each row carries the measured residual and the
// tolerance it is held to.

#include <string>
#include <vector>

namespace confgas {

enum class CheckStatus { Pass, Fail, Info };

const char* to_string(CheckStatus s);

struct CheckRow {
  std::string suite;
  std::string check;
  double measured = 0.0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::Pass;
  std::string note;
};

struct VerifyOptions {
  std::vector<double> t_list{0.1, 0.05, 0.025};
  int samples = 24;  // random states per dimensionality in the thermo suite
  int threads = 1;
};

std::vector<CheckRow> verify_heatkernel(const VerifyOptions& opts = {});
std::vector<CheckRow> verify_thermo(const VerifyOptions& opts = {});

/// True when no row failed (informational rows never fail).
bool all_passed(const std::vector<CheckRow>& rows);

}  // namespace confgas
