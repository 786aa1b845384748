#pragma once

#include <string>

#include "proxkit/oracle.hpp"

namespace proxkit {

/// Builds a 1D oracle from the JSON function-spec format:
///
///   {
///     "name": "huber_like",            // optional
///     "domain": [-4, 4],               // optional sampling window
///     "breakpoints": [-1.0, 1.0],      // strictly increasing
///     "pieces": [                      // breakpoints.size() + 1 entries
///       {"coeffs": [-0.5, -1.0]},      // polynomial sum_i c_i x^i on (-inf, -1]
///       {"coeffs": [0.0, 0.0, 0.5]},
///       {"infinite": true}             // +inf piece (indicator-style)
///     ]
///   }
///
/// At a breakpoint where the two adjacent pieces agree in value the generator
/// set is {left derivative, right derivative}; at a jump the function takes
/// the lower one-sided limit and the generator comes from the attaining side.
/// Throws SpecParseError with field diagnostics on malformed input.
FunctionOracle parse_piecewise_json(const std::string& json_text);

/// Loads and parses a UTF-8 JSON spec file.
FunctionOracle load_piecewise_file(const std::string& path);

}  // namespace proxkit
