#pragma once

// Computational checks of every structural claim, grouped per strand count.

#include <cstdint>
#include <random>
#include <vector>

#include "lkb/action.hpp"
#include "lkb/arrangement.hpp"
#include "lkb/report.hpp"

namespace lkb {

// Random Laurent polynomial with exponents in [-neg, deg - neg] and
// coefficients in [-coeff, coeff].
Poly random_poly(std::mt19937_64& rng, int deg, int coeff, int neg = 1, int terms = 4);

// Random arrangement of up to max_lines distinct lines with small rational
// coefficients.
std::vector<Line> random_arrangement(std::mt19937_64& rng, int max_lines);

CheckReport check_differential_formulas(int n);
CheckReport check_kernel_basis(int n);
CheckReport check_h1_fn(int n);
CheckReport check_integral_basis(int n, std::mt19937_64& rng, int round_trips);
CheckReport check_lkb_matrices(int n);
CheckReport check_chain_and_homology_action(int n);
CheckReport check_not_in_v(int n);
CheckReport check_eigen_structure(int n);
CheckReport check_forks(int n);
CheckReport check_h1_action(int n);
CheckReport check_sal_an_quotient(int n);
CheckReport check_arrangement(const std::vector<Line>& lines, const std::string& name);

struct VerifyOptions {
  int max_n = 6;
  std::uint64_t seed = 0;
};

// Rows ordered by check, then n. Any exception inside a check becomes a
// failed row carrying the message.
std::vector<CheckReport> run_verify_suite(const VerifyOptions& opt);

}  // namespace lkb
