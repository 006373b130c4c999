#pragma once

// Cycles and bases of H_2(F_n; Gamma_pi): the V-chains, the cycles E_ij, the
// rational kernel, the integral basis with its reduction algorithm, and H_1.

#include <map>
#include <utility>
#include <vector>

#include "lkb/complex.hpp"

namespace lkb {

using IndexPair = std::pair<int, int>;
template <class T>
using PairMap = std::map<IndexPair, T>;

// Cached Sal(F_n); safe to call from several threads.
const TwistedComplex& sal_fn_cached(int n);

// (y-1)(xy+1), the A_ij-coefficient of E_ij.
Poly e_leading();

enum class VKind { b, a, zero };

TwistedChain v_chain(int i, VKind kind, int n);
TwistedChain e_cycle(int i, int j, int n);
std::vector<IndexPair> index_pairs(int n);

// Columns are the E_ij in pair order, rows the 2-cells of Sal(F_n).
RingMatrix e_matrix(int n);

struct KernelReport {
  std::size_t dimension = 0;
  bool e_independent = false;
  bool e_spans = false;
};
KernelReport kernel_rank(int n);

struct EtaReport {
  RingMatrix matrix;  // eta o d on B_{n,1..3}, ..., B_{1,1..3}
  bool triangular = false;
  bool diagonal_nonzero = false;
  std::vector<Poly> diagonal;
};
// eta of an edge, as a 2-chain supported on B-cells.
TwistedChain eta(const CellLabel& edge, int n);
EtaReport verify_eta_triangular(int n);

// Coordinates over {E_ij}. Throws std::invalid_argument if u is not a cycle
// and std::logic_error if u is not in the rational span of the E_ij.
PairMap<RationalFunction> e_coordinates(const TwistedChain& u, int n);

// Z[H]-coordinates over {E_ij}, or nullopt if u is not in V.
std::optional<PairMap<Poly>> v_membership(const TwistedChain& u, int n);

// Linear combination sum c_ij E_ij of Z[H] coefficients.
TwistedChain e_combination(const PairMap<Poly>& coeffs, int n);

// The integral basis element X_ij in its explicit cell form; the rational
// E-form is re-derived and checked equal.
TwistedChain integral_x(int i, int j, int n);

// A_ij < A_ls iff j-i < s-l, or j-i = s-l and i < l.
struct AOrder {
  bool operator()(const IndexPair& u, const IndexPair& v) const {
    const int gu = u.second - u.first, gv = v.second - v.first;
    return gu != gv ? gu < gv : u.first < v.first;
  }
};

// Coordinates of a Z[H]-cycle over {X_ij}. Any failed division or nonzero
// remainder throws std::logic_error.
PairMap<Poly> reduce_to_integral_basis(const TwistedChain& u, int n);

struct H1Report {
  std::size_t rank = 0;
  std::vector<Integer> torsion;
  bool c_relations = false;  // c_i - c_1 in the boundary lattice
  bool b_relations = false;  // b_i - a_i in the boundary lattice
};
H1Report h1_fn(int n);

}  // namespace lkb
