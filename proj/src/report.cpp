#include "homspec/report.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace homspec::report {

namespace {

using Json = nlohmann::ordered_json;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json lemma_json(const LemmaReport& l) {
  Json j;
  j["id"] = l.id;
  j["inequality"] = l.inequality;
  j["n_begin"] = l.n_begin;
  j["n_end"] = l.n_end;
  j["delta"] = l.delta ? Json(*l.delta) : Json(nullptr);
  j["violations"] = l.violations;
  j["pass"] = l.pass();
  return j;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string dims_csv(const GeometryParams& params, std::int64_t n_max) {
  std::ostringstream os;
  os << "space,m,n,d_n,tau_n,lambda_n\n";
  BigInt partial = 0;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    const BigInt d = eigenspace_dim(params, n);
    partial += d;
    const bool closed_form = params.kind() != SpaceKind::RealProjective || n % 2 == 0;
    const BigInt tau = closed_form ? cumulative_dim(params, n) : partial;
    os << space_name(params.kind()) << ',' << params.m() << ',' << n << ',' << d << ',' << tau << ','
       << laplace_eigenvalue(params, n) << '\n';
  }
  return os.str();
}

std::string quadrature_csv(const QuadratureRule& rule) {
  std::ostringstream os;
  os << "index,node,weight\n";
  for (std::size_t i = 0; i < rule.size(); ++i) {
    os << i << ',' << format_double(rule.nodes[i]) << ',' << format_double(rule.weights[i]) << '\n';
  }
  return os.str();
}

std::string spectrum_csv(const Spectrum& s) {
  std::ostringstream os;
  os << "index,degree,value\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    os << i + 1 << ',' << s.entries[i].degree << ',' << format_double(s.entries[i].value) << '\n';
  }
  return os.str();
}

std::string nystrom_check_json(const NystromCheck& c) {
  Json j;
  j["grid"] = std::to_string(c.n_polar) + "x" + std::to_string(c.n_azimuthal);
  j["top_k"] = c.top_k;
  j["max_rel_error"] = c.max_rel_error;
  j["tolerance"] = c.tolerance;
  j["pass"] = c.pass;
  return dump(j);
}

std::string verify_json(const DecayReport& r) {
  Json j;
  j["theorem"] = std::string(theorem_label(r.theorem));
  j["space"] = std::string(space_name(r.space));
  j["m"] = r.m;
  j["r"] = r.r;
  j["p"] = r.p;
  j["family"] = r.family;
  j["gamma"] = r.gamma;
  j["count"] = r.count;
  j["tail_fraction"] = r.tail_fraction;
  j["fitted_slope"] = r.fitted_slope;
  j["intercept"] = r.intercept;
  j["residual_rms"] = r.residual_rms;
  j["theorem_exponent"] = r.theoretical_exponent;
  j["constructed_exponent"] = r.constructed_exponent;
  j["margin"] = r.margin;
  j["slack"] = r.slack;
  j["verdict"] = r.pass ? "pass" : "fail";
  return dump(j);
}

std::string verify_csv_header() { return "theorem,space,m,r,p,gamma,fitted_slope,theorem_exponent,verdict\n"; }

std::string verify_csv_row(const DecayReport& r) {
  std::ostringstream os;
  os << theorem_label(r.theorem) << ',' << space_name(r.space) << ',' << r.m << ',' << r.r << ','
     << format_double(r.p) << ',' << format_double(r.gamma) << ',' << format_double(r.fitted_slope) << ','
     << format_double(r.theoretical_exponent) << ',' << (r.pass ? "pass" : "fail") << '\n';
  return os.str();
}

std::string lemmas_json(const GeometryParams& params, std::int64_t n_max, const std::vector<LemmaReport>& lemmas) {
  Json j;
  j["space"] = std::string(space_name(params.kind()));
  j["m"] = params.m();
  j["n_max"] = n_max;
  Json list = Json::array();
  bool pass = true;
  for (const auto& l : lemmas) {
    list.push_back(lemma_json(l));
    pass = pass && l.pass();
  }
  j["lemmas"] = std::move(list);
  j["pass"] = pass;
  return dump(j);
}

std::string weyl_json(const WeylSweep& w) {
  Json j;
  j["kind"] = std::string(weyl_case_name(w.kind));
  j["max_order"] = w.max_order;
  j["matrices"] = w.matrices;
  j["seed"] = w.seed;
  j["holds"] = w.holds;
  j["equalities"] = w.equalities;
  j["pass"] = w.pass;
  return dump(j);
}

}  // namespace homspec::report
