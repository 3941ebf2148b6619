#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bft/flag_map.hpp"

namespace bft {

/// Machine-readable result of one command. The JSON form is deterministic
/// for fixed inputs and seed: no timings, stable key and check order.
struct RunReport {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json checks = nlohmann::json::array();
  nlohmann::json extra = nlohmann::json::object();
  bool pass = true;

  void add_check(const std::string& name, const nlohmann::json& expected, const nlohmann::json& actual, bool ok);
  nlohmann::json to_json() const;
};

/// Point, subspace, chamber and apartment counts of PG(n,q).
RunReport space_report(int n, int q);

/// Base (standard base if `base_literal` is empty), dual base and chambers.
RunReport apartment_report(int n, int q, const std::string& base_literal);

struct LemmaSelection {
  /// "all", "counts", "equalities", "distinctness", "decomposition",
  /// "residual", "complement", "stars", "adjacent-families", "maximal-inexact"
  std::string lemma = "all";
  /// restricts "counts" to one disposition case (1..6)
  std::optional<int> case_id;
};

/// Enumerated values against closed forms inside one apartment of PG(n,q).
/// Throws UnsupportedError for n > 5 unless force is set.
RunReport lemma_report(int n, int q, const LemmaSelection& sel, bool force);

/// classify() plus the reconstructed point table and σ_f per base.
RunReport analysis_report(const ChamberMap& f, const PreservationMode& mode, const std::vector<BasePoints>& bases);

}  // namespace bft
