#pragma once

#include <iosfwd>

namespace braggsim {

/// Runs the built-in cross-validation suites (propagator vs RK4 integration,
/// conditional state vs the brute-force reconstruction, partial-transpose
/// spectra vs the Schmidt formula, inequality closed forms vs the transposed
/// variance oracle), printing one line per suite. Returns true when all pass.
bool run_self_checks(std::ostream& out);

}  // namespace braggsim
