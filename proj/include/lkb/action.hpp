#pragma once

// The LKB matrices, the chain-level braid action on Sal(F_n), the induced
// action on H_2 and H_1, and the fork basis.

#include <string>
#include <vector>

#include "lkb/homology.hpp"
#include "lkb/report.hpp"

namespace lkb {

struct BraidWord {
  int n = 2;
  std::vector<int> letters;  // k or -k for sigma_k^{+-1}

  // Parses "1 2 -1"; throws std::invalid_argument on bad tokens or bounds.
  static BraidWord parse(int n, const std::string& text);
  void validate() const;
};

// Rows and columns labelled e_ij in pair order; column (i,j) is rho_k(e_ij).
RingMatrix lkb_generator(int k, int n);
// Throws std::logic_error if an inverse leaves Z[H].
RingMatrix lkb_word(const BraidWord& w);

// Image of an edge of Sal(F_n) under the combinatorial twist S_k.
EdgeWord s_edge_word(int k, const CellLabel& e, int n);
// (S_k)_* on a 2-cell.
TwistedChain s_cell_image(int k, const CellLabel& cell, int n);
// U_i = (x-1)(B_{i,1} - B_{i,2} - B_{i+1,2} + B_{i+1,3}) - y A_{i,i+1}.
TwistedChain u_chain(int i, int n);

struct ChainEndo {
  RingMatrix c2;  // on the 2-cells of Sal(F_n)
  RingMatrix c1;  // on the edges of Sal(F_n)
};

// Throws std::logic_error if d o S_2 != S_1 o d or if S_k changes pi.
ChainEndo chain_action(int k, int n);
TwistedChain apply(const RingMatrix& c2, const TwistedChain& u, int n);

// Action of sigma_k on the E_ij, read off the chain action. Throws
// std::logic_error on a non-Z[H] coordinate or a mismatch with lkb_generator.
RingMatrix homology_action(int k, int n);

// Action on H_1 in the basis [a_1], ..., [a_n], [c_1].
IntMatrix h1_action(int k, int n);

// Eigenvectors of sigma_1 and the basis they form.
CheckReport eigen_structure_check(int n);

enum class ForkPart { X1, X2, Class };
TwistedChain fork_chain(int p, int q, int n, ForkPart part);
CheckReport verify_fork_boundary(int p, int q, int n);
// E-coordinates of the fork class, checked against the closed form.
PairMap<Poly> fork_in_e_basis(int p, int q, int n);
// Columns are fork classes in E-coordinates; upper triangular.
RingMatrix fork_change_of_basis(int n);
RingMatrix fork_basis_action(int k, int n);

enum class ActionLevel { Matrix, Chain, Homology, Fork };
ActionLevel parse_level(const std::string& s);
std::string to_string(ActionLevel level);
CheckReport check_braid_relations(int n, ActionLevel level);

// det rho_k and its inverse both lie in Z[H].
CheckReport check_generator_units(int n);

}  // namespace lkb
