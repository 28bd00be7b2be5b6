#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "qes/jacobi.hpp"
#include "qes/models.hpp"

namespace qes {

inline constexpr const char* kToolName = "qes";
inline constexpr const char* kToolVersion = "0.1.0";

/// One eigenpair of the full pipeline with its physical reading.
struct EigenpairReport {
  std::complex<double> eigenvalue;
  std::vector<std::complex<double>> poly;  // monic, ascending powers
  bool physical = true;
  bool degenerate = false;
  bool admissible = true;
  std::vector<std::string> reasons;
  std::string interpretation_name;
  double interpretation_value = 0.0;
  std::map<std::string, double> outputs;
};

struct SolveReport {
  std::string model;
  std::map<std::string, double> params;
  int n = 0;
  double energy = 0.0;
  std::string eigenvalue_role;
  AlgebraizationCertificate certificate;
  std::map<std::string, double> derived;
  std::vector<EigenpairReport> eigenpairs;
  std::string version = kToolVersion;
};

/// build -> build_jacobi -> eigensolve -> interpret, assembled into a report.
SolveReport solve_model(ModelId model, const ModelParams& params, int n);

/// Fixed-format float serialization: 17 significant digits, C locale.
std::string fmt_g17(double v);

std::string report_to_json(const SolveReport& r);
std::string report_csv_header(const SolveReport& r);
std::string report_to_csv_row(const SolveReport& r);

}  // namespace qes
