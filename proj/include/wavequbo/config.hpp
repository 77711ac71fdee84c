#pragma once

#include "wavequbo/harness.hpp"

#include <iosfwd>
#include <string>

namespace wavequbo {

/// Flat `key = value` scenario file. Blank lines and lines starting with '#'
/// are skipped; unknown or repeated keys are errors.
///
///     scenario    exp1..exp5 | custom
///     tau alpha beta driving   custom problem; driving = "k:cos:sin; ..."
///     ansatz      tfa | ca | aa
///     n nspin     basis size and bits per weight
///     aa_params   path to a JSON file written by `aa optimize`
///     sampler     sa | brute
///     runs seed sweeps beta_start beta_end
///     gap         true | false
///     gap_grid gap_refine mse_points threads
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::string& path);

/// "k:cos:sin; k:cos:sin" -> TrigPolynomial; the empty string is F = 0.
TrigPolynomial parse_driving(const std::string& text);

/// JSON holding {"N": .., "params": [..]} plus optional metadata.
Vector read_aa_params(const std::string& path);

}  // namespace wavequbo
