// Canonical JSON encodings for every artifact the tools exchange: sorted
// keys, integers only, newline-terminated dumps, so identical inputs always
// serialize to identical bytes.
//
// Encodings: field elements are plain integers over prime fields and
// little-endian prime-digit arrays over extension fields; polynomials are
// ascending coefficient arrays (empty = zero).  Matrices over F_q use the
// canonical integer codes 0..q-1 per entry, one array per row.  Function
// field elements carry their denominator exponent and numerator
// coefficients as {e, A}.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "sdesign/carlitz.hpp"
#include "sdesign/design.hpp"
#include "sdesign/expander.hpp"
#include "sdesign/field.hpp"
#include "sdesign/linalg.hpp"
#include "sdesign/poly.hpp"
#include "sdesign/riemannroch.hpp"

namespace sdesign {

// Two-space indented dump with a trailing newline; keys are always sorted.
std::string canonical_json(const nlohmann::json& j);

nlohmann::json elem_to_json(const Field& F, elem_t a);
elem_t elem_from_json(const Field& F, const nlohmann::json& j);

nlohmann::json poly_to_json(const Field& F, const Poly& f);
Poly poly_from_json(const Field& F, const nlohmann::json& j);

nlohmann::json ffe_to_json(const Field& F, const FFElem& f);
FFElem ffe_from_json(const Field& F, const nlohmann::json& j);

nlohmann::json mat_to_json(const Mat& M);
// cols > 0 enforces the expected width (a 0-row matrix parses to that
// width); every entry must be an integer code below q.
Mat mat_from_json(const Field& F, const nlohmann::json& j,
                  std::uint32_t cols = 0);

// One matrix row per line, comma-separated integer codes.
std::string csv_matrix(const Mat& M);

nlohmann::json design_to_json(const DesignInstance& D);
DesignInstance design_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const VerificationReport& rep);

nlohmann::json expander_to_json(const ExpanderInstance& E);
ExpanderInstance expander_from_json(const nlohmann::json& j);

nlohmann::json expander_report_to_json(const ExpanderReport& rep);

nlohmann::json places_to_json(const CycCtx& C,
                              const std::vector<PlaceOrbit>& orbits,
                              std::uint32_t r);

nlohmann::json rrbasis_to_json(const CycCtx& C, const RRBasis& B);

}  // namespace sdesign
