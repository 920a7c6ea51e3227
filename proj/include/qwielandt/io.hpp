#ifndef QWIELANDT_IO_HPP
#define QWIELANDT_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "qwielandt/dynamics.hpp"
#include "qwielandt/multdomain.hpp"
#include "qwielandt/primitivity.hpp"
#include "qwielandt/spectral.hpp"

namespace qwl {

using Json = nlohmann::ordered_json;

//=========================================================================
// Matrix and channel JSON
//
// Channel schema: {"d": int, "repr": "kraus"|"choi"|"transfer",
//                  "data": nested [re, im] pairs, "name": optional string}.
// Readers reject inconsistent shapes with Error(bad_input).
//=========================================================================

Json mat_to_json(const MatC& m);
MatC mat_from_json(const Json& j);

Json channel_to_json(const SuperOperator& s, const std::string& repr = "transfer",
                     const std::string& name = "");
SuperOperator channel_from_json(const Json& j);

// {"d": int, "rows": [[real, ...], ...]}
MatR classical_matrix_from_json(const Json& j);
Json classical_matrix_to_json(const MatR& w);

// Partial override; unknown keys are rejected.
ToleranceConfig tolerances_from_json(const Json& j, ToleranceConfig base = {});

//=========================================================================
// Report serialization
//=========================================================================

Json to_json(const PredicateVerdict& v, bool include_witness = true);
Json to_json(const MapPredicates& p);
Json to_json(const SpectralReport& r);
Json to_json(const OperatorSubspace& s, bool emit_basis);
Json to_json(const ChainReport& r, bool emit_basis = false);
Json to_json(const MultDomainResult& r, bool emit_basis = false);
Json to_json(const BoundRow& b);
Json to_json(const IndexReport& r);
Json to_json(const StrictPositivityResult& r);
Json to_json(const ContractionReport& r);
Json to_json(const PowerContraction& r);
Json to_json(const ZeroErrorCertificate& c);

Json error_to_json(const Error& e);

//=========================================================================
// Sweep CSV
//=========================================================================

struct SweepRow {
  int instance_id = 0;
  std::string family;
  int d = 0;
  uint64_t seed = 0;
  std::string primitive;  // verdict name
  std::optional<int> omega_lower;
  std::optional<int> omega_upper;
  std::optional<int> kappa;
  std::optional<int> i_index;
  std::optional<bool> bound_classical;
  std::optional<bool> bound_quantum;
  std::optional<bool> bound_main;
  std::optional<bool> bound_corollary;
  std::optional<bool> bound_ppt_eb;
  std::optional<double> c_lower;
  std::optional<long> runtime_ms;
};

// Shortest round-trip decimal formatting (matches the JSON emitter).
std::string format_double(double v);

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

}  // namespace qwl

#endif
