#pragma once

#include "wavequbo/encoder.hpp"

#include <iosfwd>
#include <string>

namespace wavequbo {

/// Text form of a QUBO.
///
///     QUBO <r> <offset>
///     <i> <j> <value>        one line per nonzero entry of Q + diag(L), i <= j
///
/// Indices are 0-based; values use 17 significant digits so they round-trip
/// exactly. Off-diagonal lines carry the symmetric entry M_ij (the energy
/// contribution of the pair is 2 M_ij w_i w_j).
void write_qubo_text(std::ostream& out, const QuboProblem& q);
std::string qubo_to_text(const QuboProblem& q);

/// Parses the format above back into (Q, L, offset) with L = diag, Q off-diag.
QuboProblem read_qubo_text(std::istream& in);
QuboProblem qubo_from_text(const std::string& text);

}  // namespace wavequbo
