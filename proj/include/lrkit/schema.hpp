#pragma once

// JSON file formats.  Indices in files are one-based.
//
//   algebroid:  {nvars, rank, basis_names, brackets: [{i, j, coords: [poly]}],
//                anchors: [[poly]]}
//   cochain:    {degree, coeff_rank, entries: [{indices: [i..], value: [poly]}]}
//   connection: {rank, matrices: [[[poly]]]}
//   operator:   {rank, entries: [[u-element]]}
//
// Omitted brackets, anchors and cochain entries are zero.

#include <string>
#include <string_view>

#include <json.hpp>

#include "lrkit/cohomology.hpp"
#include "lrkit/diff_operators.hpp"
#include "lrkit/lie_rinehart.hpp"

namespace lrk::schema {

using json = nlohmann::ordered_json;

/// Parse JSON text; throws ParseError on malformed input.
json parse_json(std::string_view text);

LieRinehartAlgebra algebroid_from_json(const json& j);
json algebroid_to_json(const LieRinehartAlgebra& a);

/// Rank and ring come from the algebroid the cochain lives on.
Cochain cochain_from_json(const json& j, std::size_t rank, std::size_t nvars);
json cochain_to_json(const Cochain& c);

/// Lines "name(dI,dJ,...) = value", as printed by Cochain::to_string.
/// A single "0" line is the zero cochain of the given degree.
Cochain cochain_from_text(std::string_view text, std::size_t degree, std::size_t rank, std::size_t nvars);
/// Degree read from the first line; throws ParseError if there is none.
std::size_t cochain_text_degree(std::string_view text);

Connection connection_from_json(const json& j, std::size_t rank, std::size_t nvars);
json connection_to_json(const Connection& c);

OperatorElement operator_from_json(const json& j, std::size_t nvars);
json operator_to_json(const OperatorElement& t);

}  // namespace lrk::schema
