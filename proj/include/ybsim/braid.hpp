#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ybsim/circuit.hpp"

namespace ybsim {

// generators are 1-indexed as usual for braid groups; sign -1 means inverse
struct BraidLetter {
  int index = 1;
  int sign = 1;
};

struct BraidWord {
  int n_strands = 2;
  std::vector<BraidLetter> letters;
};

// grammar: word := term (space term)*; term := "s" index ["^-1"];
// an optional leading "n=<count>" sets the strand count, otherwise
// n = max index + 1 (n = 2 for an empty word)
BraidWord parse_braid(const std::string& text);

std::string render_braid(const BraidWord& word);

// sigma_i -> gate on wires (i-1, i); letter order = application order
Circuit braid_to_circuit(const BraidWord& word, const std::string& gate_id,
                         int d);

// dense check of far commutation and the braid relation on all adjacent
// triples for the representation induced by `gate` on n strands
bool representation_check(const CMatrix& gate, int d, int n,
                          double tol = 1e-10);

// line-oriented text form: optional "circuit n=<n> d=<d>" header, then one
// "gate_id wire,wire[,wire...] [inv]" per line
std::string render_circuit_text(const Circuit& c);
Circuit parse_circuit_text(const std::string& text, int default_d = 2);

}  // namespace ybsim
