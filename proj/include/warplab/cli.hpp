#pragma once

#include "warplab/config.hpp"

#include <iosfwd>
#include <string>

namespace warplab {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitHypothesisFail = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNonConvergence = 3;

int run_describe(const Config& cfg, std::ostream& out, std::ostream& err);
int run_check(const Config& cfg, std::ostream& out, std::ostream& err);
int run_solve(const Config& cfg, std::ostream& csv, std::ostream& diag_csv, std::ostream& err);
int run_norms(const Config& cfg, std::ostream& csv, std::ostream& err);
int run_resolvent(const Config& cfg, std::ostream& csv, std::ostream& err);
int run_scatter(const Config& cfg, std::ostream& csv, std::ostream& err);

}  // namespace warplab
