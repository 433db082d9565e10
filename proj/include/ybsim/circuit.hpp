#pragma once

#include <map>
#include <string>
#include <vector>

#include "ybsim/linalg.hpp"

namespace ybsim {

struct CircuitOp {
  std::string gate_id;
  std::vector<int> wires;
  bool inverse = false;
};

struct Circuit {
  int n_wires = 0;
  int d = 2;
  std::vector<CircuitOp> ops;
};

// gate_id -> dense matrix, the resolution table for the brute-force oracle
using DenseGateTable = std::map<std::string, CMatrix>;

// exact matrix of the circuit, gates applied in sequence order
// (operator = op_m * ... * op_1); subject to the oracle cap
CMatrix dense_circuit(const Circuit& c, const DenseGateTable& gates);

// circuit applied to a state vector; same cap
CVector apply_circuit(const Circuit& c, const DenseGateTable& gates,
                      CVector state);

// oracle amplitude <x|U|z>
cx oracle_amplitude(const Circuit& c, const DenseGateTable& gates,
                    const DitString& x, const DitString& z);

}  // namespace ybsim
