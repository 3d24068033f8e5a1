#pragma once

#include <string>
#include <vector>

#include "homspec/analysis.hpp"
#include "homspec/jacobi.hpp"
#include "homspec/zonal.hpp"

// CSV and JSON renderings of module results. CSV files start with a header
// row; JSON reports are single objects terminated by a newline. Doubles use
// the shortest representation that round-trips.

namespace homspec::report {

std::string format_double(double v);

/// space,m,n,d_n,tau_n,lambda_n for n = 0..n_max. On the real projective
/// space tau_n at odd n is the partial sum d_0 + ... + d_n.
std::string dims_csv(const GeometryParams& params, std::int64_t n_max);

/// index,node,weight
std::string quadrature_csv(const QuadratureRule& rule);

/// index,degree,value (index 1-based)
std::string spectrum_csv(const Spectrum& s);

struct NystromCheck {
  int n_polar;
  int n_azimuthal;
  std::size_t top_k;
  double max_rel_error;
  double tolerance;
  bool pass;
};
std::string nystrom_check_json(const NystromCheck& c);

std::string verify_json(const DecayReport& r);
std::string verify_csv_header();
std::string verify_csv_row(const DecayReport& r);

std::string weyl_json(const WeylSweep& w);

std::string lemmas_json(const GeometryParams& params, std::int64_t n_max, const std::vector<LemmaReport>& lemmas);

}  // namespace homspec::report
