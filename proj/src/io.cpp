#include "qwielandt/io.hpp"

#include <charconv>

namespace qwl {

//=========================================================================
// Matrices
//=========================================================================

Json mat_to_json(const MatC& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

MatC mat_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw Error(Errc::bad_input, "matrix JSON must be a non-empty array");
  }
  const size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) {
    throw Error(Errc::bad_input, "matrix JSON rows must be non-empty arrays");
  }
  const size_t cols = j[0].size();
  MatC m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw Error(Errc::bad_input, "matrix JSON has ragged rows");
    }
    for (size_t k = 0; k < cols; ++k) {
      const Json& cell = j[i][k];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
          !cell[1].is_number()) {
        throw Error(Errc::bad_input,
                    "matrix JSON entries must be [re, im] number pairs");
      }
      m(i, k) = Complex(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  require_finite(m, "mat_from_json");
  return m;
}

//=========================================================================
// Channels
//=========================================================================

Json channel_to_json(const SuperOperator& s, const std::string& repr,
                     const std::string& name) {
  Json j;
  j["d"] = s.dim();
  j["repr"] = repr;
  if (repr == "kraus") {
    Json ops = Json::array();
    const std::vector<MatC> kraus = s.has_kraus() ? s.kraus() : to_kraus(s);
    for (const auto& a : kraus) ops.push_back(mat_to_json(a));
    j["data"] = std::move(ops);
  } else if (repr == "choi") {
    j["data"] = mat_to_json(s.choi());
  } else if (repr == "transfer") {
    j["data"] = mat_to_json(s.transfer());
  } else {
    throw Error(Errc::bad_params, "channel_to_json: unknown repr '" + repr + "'");
  }
  if (!name.empty()) j["name"] = name;
  return j;
}

SuperOperator channel_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("repr") ||
      !j.contains("data")) {
    throw Error(Errc::bad_input,
                "channel JSON requires fields d, repr and data");
  }
  if (!j["d"].is_number_integer()) {
    throw Error(Errc::bad_input, "channel JSON: d must be an integer");
  }
  const int d = j["d"].get<int>();
  if (d < 1) throw Error(Errc::bad_input, "channel JSON: d must be positive");
  const std::string repr = j["repr"].get<std::string>();

  if (repr == "kraus") {
    if (!j["data"].is_array() || j["data"].empty()) {
      throw Error(Errc::bad_input, "channel JSON: kraus data must be a list");
    }
    std::vector<MatC> ops;
    for (const auto& item : j["data"]) {
      MatC a = mat_from_json(item);
      if (a.rows() != d || a.cols() != d) {
        throw Error(Errc::bad_input,
                    "channel JSON: Kraus operator shape mismatch");
      }
      ops.push_back(std::move(a));
    }
    return SuperOperator::from_kraus(ops);
  }
  MatC m = mat_from_json(j["data"]);
  if (m.rows() != d * d || m.cols() != d * d) {
    throw Error(Errc::bad_input,
                "channel JSON: " + repr + " matrix must be d^2 x d^2");
  }
  if (repr == "choi") return SuperOperator::from_choi(m);
  if (repr == "transfer") return SuperOperator::from_transfer(std::move(m));
  throw Error(Errc::bad_input, "channel JSON: unknown repr '" + repr + "'");
}

MatR classical_matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("rows")) {
    throw Error(Errc::bad_input, "classical matrix JSON requires d and rows");
  }
  const int d = j["d"].get<int>();
  if (d < 1 || !j["rows"].is_array() ||
      static_cast<int>(j["rows"].size()) != d) {
    throw Error(Errc::bad_input, "classical matrix JSON: bad row count");
  }
  MatR w(d, d);
  for (int i = 0; i < d; ++i) {
    const Json& row = j["rows"][i];
    if (!row.is_array() || static_cast<int>(row.size()) != d) {
      throw Error(Errc::bad_input, "classical matrix JSON: ragged rows");
    }
    for (int k = 0; k < d; ++k) {
      if (!row[k].is_number()) {
        throw Error(Errc::bad_input, "classical matrix JSON: non-numeric entry");
      }
      w(i, k) = row[k].get<double>();
    }
  }
  return w;
}

Json classical_matrix_to_json(const MatR& w) {
  Json j;
  j["d"] = static_cast<int>(w.rows());
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < w.cols(); ++k) row.push_back(w(i, k));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

ToleranceConfig tolerances_from_json(const Json& j, ToleranceConfig base) {
  if (!j.is_object()) {
    throw Error(Errc::bad_input, "tolerance JSON must be an object");
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "psd_tol") base.psd_tol = value.get<double>();
    else if (key == "rank_rel_tol") base.rank_rel_tol = value.get<double>();
    else if (key == "peripheral_tol") base.peripheral_tol = value.get<double>();
    else if (key == "strict_pos_tol") base.strict_pos_tol = value.get<double>();
    else if (key == "subspace_tol") base.subspace_tol = value.get<double>();
    else if (key == "chain_dim_cap") base.chain_dim_cap = value.get<int>();
    else {
      throw Error(Errc::bad_input, "unknown tolerance field '" + key + "'");
    }
  }
  base.validate();
  return base;
}

//=========================================================================
// Reports
//=========================================================================

namespace {

Json complex_list_to_json(const std::vector<Complex>& zs) {
  Json out = Json::array();
  for (const auto& z : zs) out.push_back(Json::array({z.real(), z.imag()}));
  return out;
}

}  // namespace

Json to_json(const PredicateVerdict& v, bool include_witness) {
  Json j;
  j["verdict"] = verdict_name(v.verdict);
  j["margin"] = v.margin;
  j["samples_used"] = v.samples_used;
  if (include_witness && v.witness) j["witness"] = mat_to_json(*v.witness);
  return j;
}

Json to_json(const MapPredicates& p) {
  Json j;
  j["is_trace_preserving"] = to_json(p.trace_preserving);
  j["is_unital"] = to_json(p.unital);
  j["is_hermiticity_preserving"] = to_json(p.hermiticity_preserving);
  j["is_cp"] = to_json(p.cp);
  j["is_ppt"] = to_json(p.ppt);
  j["is_positive_sampled"] = to_json(p.positive_sampled);
  j["schwarz_check"] = to_json(p.schwarz);
  return j;
}

Json to_json(const SpectralReport& r) {
  Json j;
  j["eigenvalues"] = complex_list_to_json(r.eigenvalues);
  j["spectral_radius"] = r.spectral_radius;
  j["peripheral"] = complex_list_to_json(r.peripheral);
  j["second_modulus"] = r.second_modulus;
  j["fixed_point"] = mat_to_json(r.fixed_point);
  j["irreducible"] = to_json(r.irreducible);
  j["primitive"] = to_json(r.primitive);
  if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
  return j;
}

Json to_json(const OperatorSubspace& s, bool emit_basis) {
  Json j;
  j["d"] = s.d;
  j["dim"] = s.dim();
  j["verified_star_closed"] = s.verified_star_closed;
  j["verified_mult_closed"] = s.verified_mult_closed;
  if (emit_basis) {
    Json basis = Json::array();
    for (const auto& b : s.basis) basis.push_back(mat_to_json(b));
    j["basis"] = std::move(basis);
  }
  return j;
}

Json to_json(const ChainReport& r, bool emit_basis) {
  Json j;
  j["dims"] = r.dims;
  j["kappa"] = r.kappa;
  j["trivial"] = r.trivial;
  j["stabilized"] = to_json(r.stabilized, emit_basis);
  return j;
}

Json to_json(const MultDomainResult& r, bool emit_basis) {
  Json j;
  j["domain"] = to_json(r.domain, emit_basis);
  j["routes_agree"] = r.routes_agree;
  if (r.isometry_domain) {
    j["isometry_domain"] = to_json(*r.isometry_domain, emit_basis);
    j["route_distance"] = r.route_distance;
  }
  if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
  return j;
}

Json to_json(const BoundRow& b) {
  Json j;
  j["name"] = b.name;
  j["claimed"] = b.claimed;
  j["observed"] = b.observed;
  j["satisfied"] = b.satisfied;
  j["applicable"] = b.applicable;
  return j;
}

Json to_json(const IndexReport& r) {
  Json j;
  j["d"] = r.d;
  j["omega_lower"] = r.omega_lower;
  if (r.omega_upper) {
    j["omega_upper"] = *r.omega_upper;
  } else {
    j["omega_upper"] = nullptr;
  }
  j["omega_upper_source"] = certificate_source_name(r.omega_upper_source);
  if (r.i_index) j["i_index"] = *r.i_index; else j["i_index"] = nullptr;
  if (r.kappa) j["kappa"] = *r.kappa; else j["kappa"] = nullptr;
  if (r.n_kraus) j["n_kraus"] = *r.n_kraus; else j["n_kraus"] = nullptr;
  Json bounds = Json::array();
  for (const auto& row : r.bounds) bounds.push_back(to_json(row));
  j["bounds"] = std::move(bounds);
  Json hyp;
  hyp["trace_preserving"] = verdict_name(r.hypotheses.trace_preserving);
  hyp["unital"] = verdict_name(r.hypotheses.unital);
  hyp["cp"] = verdict_name(r.hypotheses.cp);
  hyp["ppt"] = verdict_name(r.hypotheses.ppt);
  hyp["eb"] = verdict_name(r.hypotheses.eb);
  hyp["schwarz"] = verdict_name(r.hypotheses.schwarz);
  hyp["primitive"] = verdict_name(r.hypotheses.primitive);
  j["hypotheses"] = std::move(hyp);
  if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
  return j;
}

Json to_json(const StrictPositivityResult& r) {
  Json j;
  j["verdict"] = positivity_verdict_name(r.verdict);
  j["min_eig_found"] = r.min_eig_found;
  j["certificate_source"] = certificate_source_name(r.source);
  if (r.witness) {
    Json w = Json::array();
    for (Eigen::Index i = 0; i < r.witness->size(); ++i) {
      w.push_back(Json::array({(*r.witness)(i).real(), (*r.witness)(i).imag()}));
    }
    j["witness"] = std::move(w);
  }
  return j;
}

Json to_json(const ContractionReport& r) {
  Json j;
  j["c_lower"] = r.c_lower;
  j["delta_star"] = r.delta_star;
  j["delta_capped"] = r.delta_capped;
  j["c_upper_from_delta"] = r.c_upper_from_delta;
  j["strictly_contractive"] = r.strictly_contractive;
  return j;
}

Json to_json(const PowerContraction& r) {
  Json j;
  j["omega_power"] = r.omega_power;
  j["at_omega"] = to_json(r.at_omega);
  if (r.i_power) {
    j["i_power"] = *r.i_power;
    j["at_i"] = to_json(*r.at_i);
  } else {
    j["i_power"] = nullptr;
  }
  return j;
}

Json to_json(const ZeroErrorCertificate& c) {
  Json j;
  j["branch"] = zero_error_branch_name(c.branch);
  if (c.span_dim) j["span_dim"] = *c.span_dim; else j["span_dim"] = nullptr;
  if (c.projection) {
    j["projection"] = mat_to_json(*c.projection);
  } else {
    j["projection"] = nullptr;
  }
  j["recovery_checked_n"] = c.recovery_checked_n;
  j["max_recovery_residual"] = c.max_recovery_residual;
  return j;
}

Json error_to_json(const Error& e) {
  Json j;
  j["error"] = Json{{"code", errc_name(e.code())}, {"message", e.what()}};
  return j;
}

//=========================================================================
// CSV
//=========================================================================

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string sweep_csv_header() {
  return "instance_id,family,d,seed,primitive,omega_lower,omega_upper,kappa,"
         "i_index,bound_classical,bound_quantum,bound_main,bound_corollary,"
         "bound_ppt_eb,c_lower,runtime_ms";
}

namespace {

std::string opt_int(const std::optional<int>& v) {
  return v ? std::to_string(*v) : std::string();
}

std::string opt_bool(const std::optional<bool>& v) {
  if (!v) return {};
  return *v ? "true" : "false";
}

}  // namespace

std::string sweep_csv_row(const SweepRow& row) {
  std::string out;
  out += std::to_string(row.instance_id);
  out += ',';
  out += row.family;
  out += ',';
  out += std::to_string(row.d);
  out += ',';
  out += std::to_string(row.seed);
  out += ',';
  out += row.primitive;
  out += ',';
  out += opt_int(row.omega_lower);
  out += ',';
  out += opt_int(row.omega_upper);
  out += ',';
  out += opt_int(row.kappa);
  out += ',';
  out += opt_int(row.i_index);
  out += ',';
  out += opt_bool(row.bound_classical);
  out += ',';
  out += opt_bool(row.bound_quantum);
  out += ',';
  out += opt_bool(row.bound_main);
  out += ',';
  out += opt_bool(row.bound_corollary);
  out += ',';
  out += opt_bool(row.bound_ppt_eb);
  out += ',';
  out += row.c_lower ? format_double(*row.c_lower) : std::string();
  out += ',';
  out += row.runtime_ms ? std::to_string(*row.runtime_ms) : std::string();
  return out;
}

}  // namespace qwl
