#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "tempvar/bvp.hpp"
#include "tempvar/grid.hpp"
#include "tempvar/mountain_pass.hpp"
#include "tempvar/noether.hpp"
#include "tempvar/tempered_ops.hpp"
#include "tempvar/variational.hpp"

namespace tempvar {

using Json = nlohmann::ordered_json;

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

/// CSV with header "t,value", one node per row.
void write_csv(std::ostream& out, const GridFunction& u);
void write_csv(const std::string& path, const GridFunction& u);

/// Reads a "t,value" CSV. The nodes must be uniformly spaced; a, b and n are
/// taken from the file, alpha and sigma from params. Throws std::runtime_error
/// on malformed input.
GridFunction read_csv(const std::string& path, const TemperedParams& params);

/// Dense operator matrix, one row per line, no header.
void write_matrix_csv(std::ostream& out, const OperatorMatrix& m);

Json to_json(const TemperedParams& p);
Json to_json(const GridFunction& u);  ///< {"t": [...], "value": [...]}
Json to_json(const CompositionReport& r);
Json to_json(const IntegrationByPartsReport& r);
Json to_json(const SolveReport& r, bool with_profile = false);
Json to_json(const HypothesisReport& r);
Json to_json(const NoetherReport& r);
Json to_json(const MomentumReport& r);
Json to_json(const InvarianceReport& r);
Json to_json(const CoherenceReport& r);
Json to_json(const GeometryReport& r);
Json to_json(const MountainPassReport& r);
Json to_json(const ConvergenceEntry& e);

}  // namespace tempvar
