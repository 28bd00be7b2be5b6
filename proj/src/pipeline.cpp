#include "qes/pipeline.hpp"

#include <cstdio>
#include <sstream>

namespace qes {

SolveReport solve_model(ModelId model, const ModelParams& params, int n) {
  const PreparedProblem pp = build(model, params, n);
  const JacobiMatrix jm = build_jacobi(pp.hprime, n);
  const SpectralSolution sol = eigensolve(jm);

  SolveReport rep;
  rep.model = to_string(model);
  rep.params = params.values();
  rep.n = n;
  rep.energy = pp.energy;
  rep.eigenvalue_role = pp.eigenvalue_role;
  rep.certificate = pp.certificate;
  rep.derived = pp.derived;

  for (size_t i = 0; i < sol.eigenvalues.size(); ++i) {
    EigenpairReport e;
    e.eigenvalue = sol.eigenvalues[i];
    e.poly = sol.eigen_polys[i];
    e.physical = sol.flags[i].physical;
    e.degenerate = sol.flags[i].degenerate;
    e.reasons = sol.flags[i].reasons;
    if (sol.is_real(i)) {
      const Interpretation it =
          interpret_eigenvalue(model, sol.eigenvalues[i].real(), params, n);
      e.admissible = it.admissible;
      e.interpretation_name = it.name;
      e.interpretation_value = it.value;
      e.outputs = it.outputs;
      for (const auto& f : it.flags) e.reasons.push_back(f);
      if (!it.admissible) e.physical = false;
    } else {
      e.admissible = false;
    }
    rep.eigenpairs.push_back(std::move(e));
  }
  return rep;
}

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out.push_back('\\');
      out.push_back(c);
    } else if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "\\u%04x", c);
      out += buf;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

void put_complex(std::ostringstream& os, const std::complex<double>& z) {
  os << "{\"re\":" << fmt_g17(z.real()) << ",\"im\":" << fmt_g17(z.imag()) << "}";
}

void put_scalar_map(std::ostringstream& os, const std::map<std::string, double>& m) {
  os << "{";
  bool first = true;
  for (const auto& [k, v] : m) {
    if (!first) os << ",";
    first = false;
    os << "\"" << json_escape(k) << "\":" << fmt_g17(v);
  }
  os << "}";
}

}  // namespace

std::string report_to_json(const SolveReport& r) {
  std::ostringstream os;
  os << "{";
  os << "\"tool\":{\"name\":\"" << kToolName << "\",\"version\":\"" << r.version << "\"},";
  os << "\"model\":\"" << json_escape(r.model) << "\",";
  os << "\"n\":" << r.n << ",";
  os << "\"params\":";
  put_scalar_map(os, r.params);
  os << ",\"derived\":";
  put_scalar_map(os, r.derived);
  os << ",\"energy\":" << fmt_g17(r.energy) << ",";
  os << "\"eigenvalue_role\":\"" << json_escape(r.eigenvalue_role) << "\",";
  os << "\"certificate\":{\"n\":" << r.certificate.n << ",\"residuals\":["
     << fmt_g17(r.certificate.residuals[0]) << "," << fmt_g17(r.certificate.residuals[1])
     << "," << fmt_g17(r.certificate.residuals[2]) << "],\"scale\":"
     << fmt_g17(r.certificate.scale) << ",\"passed\":"
     << (r.certificate.passed ? "true" : "false") << "},";
  os << "\"eigenvalues\":[";
  for (size_t i = 0; i < r.eigenpairs.size(); ++i) {
    if (i) os << ",";
    put_complex(os, r.eigenpairs[i].eigenvalue);
  }
  os << "],\"eigenpairs\":[";
  for (size_t i = 0; i < r.eigenpairs.size(); ++i) {
    const auto& e = r.eigenpairs[i];
    if (i) os << ",";
    os << "{\"eigenvalue\":";
    put_complex(os, e.eigenvalue);
    os << ",\"poly\":[";
    for (size_t j = 0; j < e.poly.size(); ++j) {
      if (j) os << ",";
      put_complex(os, e.poly[j]);
    }
    os << "],\"physical\":" << (e.physical ? "true" : "false");
    os << ",\"degenerate\":" << (e.degenerate ? "true" : "false");
    os << ",\"admissible\":" << (e.admissible ? "true" : "false");
    os << ",\"reasons\":[";
    for (size_t j = 0; j < e.reasons.size(); ++j) {
      if (j) os << ",";
      os << "\"" << json_escape(e.reasons[j]) << "\"";
    }
    os << "]";
    if (!e.interpretation_name.empty()) {
      os << ",\"interpretation\":{\"name\":\"" << json_escape(e.interpretation_name)
         << "\",\"value\":" << fmt_g17(e.interpretation_value) << "}";
    }
    os << ",\"outputs\":";
    put_scalar_map(os, e.outputs);
    os << "}";
  }
  os << "]}";
  return os.str();
}

std::string report_csv_header(const SolveReport& r) {
  std::ostringstream os;
  os << "model,n";
  for (const auto& [k, v] : r.params) os << "," << k;
  os << ",energy,eigenvalues,admissible,constrained";
  return os.str();
}

std::string report_to_csv_row(const SolveReport& r) {
  std::ostringstream os;
  os << r.model << "," << r.n;
  for (const auto& [k, v] : r.params) os << "," << fmt_g17(v);
  os << "," << fmt_g17(r.energy) << ",";
  for (size_t i = 0; i < r.eigenpairs.size(); ++i) {
    if (i) os << ";";
    os << fmt_g17(r.eigenpairs[i].eigenvalue.real()) << "@"
       << fmt_g17(r.eigenpairs[i].eigenvalue.imag());
  }
  os << ",";
  for (size_t i = 0; i < r.eigenpairs.size(); ++i) {
    if (i) os << ";";
    os << (r.eigenpairs[i].admissible ? 1 : 0);
  }
  os << ",";
  for (size_t i = 0; i < r.eigenpairs.size(); ++i) {
    if (i) os << ";";
    if (!r.eigenpairs[i].interpretation_name.empty())
      os << r.eigenpairs[i].interpretation_name << "="
         << fmt_g17(r.eigenpairs[i].interpretation_value);
  }
  return os.str();
}

}  // namespace qes
