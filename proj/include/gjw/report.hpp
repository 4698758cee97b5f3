#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "gjw/model.hpp"
#include "gjw/spectrum.hpp"
#include "gjw/verifier.hpp"

namespace gjw::report {

using Json = nlohmann::ordered_json;

// Bumped whenever a field is renamed, removed or changes meaning.
inline constexpr int kSchemaVersion = 1;

/// Graph, pair, units and confinement, plus the matching table row if any.
Json model_summary(const ModelSpec& model);
/// Term inventory: per-edge two-body terms, wedges, contact couplings, constants.
Json term_inventory(const ModelSpec& model);
Json breakdown(const PotentialBreakdown& b);
Json verification(const VerificationReport& rep);
Json spectrum(const SpectrumReport& rep);

/// Top-level document: schema_version, command, model, then `body` keys in order.
Json document(const std::string& command, const ModelSpec& model, const Json& body);

/// Two-space indented dump with a trailing newline. Throws Error on non-finite numbers.
std::string dump(const Json& doc);

// Residual rows: `seed,x0,...,residual,h` (D = 1) or `seed,x0_0,x0_1,...,residual,h`.
void write_residual_csv(std::ostream& out, const VerificationReport& rep, std::size_t dim);

}  // namespace gjw::report
