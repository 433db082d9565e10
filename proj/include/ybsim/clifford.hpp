#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ybsim/circuit.hpp"
#include "ybsim/solutions.hpp"

namespace ybsim {

// i^phase * prod_j X_j^{x_j} Z_j^{z_j}
struct PauliElement {
  int phase = 0;  // exponent of i, mod 4
  std::vector<uint8_t> x;
  std::vector<uint8_t> z;
};

PauliElement pauli_identity(int n);
CMatrix dense_pauli(const PauliElement& s);

enum class CliffordKind { H, P, CNOT, X, Y, Z };

struct CliffordGate {
  CliffordKind kind = CliffordKind::H;
  int wire = 0;
  int target = -1;  // CNOT only
};

struct CliffordCircuit {
  int n_wires = 0;
  std::vector<CliffordGate> gates;
};

CMatrix dense_clifford(const CliffordCircuit& c);

// 2-qubit Clifford circuit whose dense matrix equals s4t_matrix() entrywise
CliffordCircuit s4t_clifford();

// V^dagger sigma V for the whole circuit
PauliElement conjugate_pauli(const CliffordCircuit& c, PauliElement sigma);

struct Observable {
  std::vector<int> wires;  // distinct, m = wires.size() <= 12
  CMatrix matrix;          // 2^m x 2^m Hermitian
};

void validate_observable(const Observable& m, int n_wires,
                         double tol = 1e-10);

// M = sum_sigma coeff * sigma over the Hermitian Pauli basis
// (phase i^{x.z} folded in so coefficients are real)
std::vector<std::pair<PauliElement, double>> pauli_expand(const CMatrix& M);

struct ProductState {
  std::vector<std::array<cx, 2>> qubits;  // per-wire amplitude pairs
};

using R4Registry = std::map<std::string, CliffordGateRecord>;

// the concatenated S4T Clifford circuits of an R4 gate sequence (inverse ops
// as reversed inverse generator sequences)
CliffordCircuit r4_circuit_to_clifford(const Circuit& c);

// exact <psi| U^dagger (M x I) U |phi> for a circuit over family-four gates
// sharing one Q1
cx expectation(const Circuit& c, const R4Registry& gates, const Observable& M,
               const ProductState& psi, const ProductState& phi);

}  // namespace ybsim
