#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rateless/mixture.hpp"
#include "rateless/sim.hpp"

namespace rateless::accept {

struct Options {
  std::uint64_t seed = kDefaultSeed;
  bool quick = false;          // reduced trial counts, <= 60 s total
  std::vector<int> only;       // criterion ids to run; empty means all
  double oracle_kt_alpha = 0.5;  // test hook: Dirichlet exponent of the quadrature oracle
  int workers = 0;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Runs the requested verification criteria and returns one result per
// criterion, in id order.
std::vector<CriterionResult> run_acceptance(const Options& opts);

// Numerical integration of the Dirichlet mixture over the parameter simplex,
// independent of the Gamma-function closed form it cross-checks.
double quadrature_mixture_log_prob(const CountMatrix& cm, double alpha = 0.5,
                                   int panels = 2048);

std::string format_result_line(const CriterionResult& r);

}  // namespace rateless::accept
