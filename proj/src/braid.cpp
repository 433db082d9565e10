#include "ybsim/braid.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ybsim {

namespace {

[[noreturn]] void parse_fail(const std::string& msg, size_t pos) {
  throw ValidationError(msg + " (at position " + std::to_string(pos + 1) + ")");
}

}  // namespace

BraidWord parse_braid(const std::string& text) {
  BraidWord word;
  bool declared = false;
  int max_index = 0;
  size_t pos = 0;
  bool first_token = true;
  std::vector<std::pair<BraidLetter, size_t>> letters;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    size_t start = pos;
    while (pos < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    std::string tok = text.substr(start, pos - start);
    if (first_token && tok.rfind("n=", 0) == 0) {
      first_token = false;
      size_t idx = 2;
      if (idx >= tok.size()) parse_fail("missing strand count after n=", start);
      int n = 0;
      for (; idx < tok.size(); ++idx) {
        if (!std::isdigit(static_cast<unsigned char>(tok[idx])))
          parse_fail("malformed strand count '" + tok + "'", start);
        n = n * 10 + (tok[idx] - '0');
        if (n > 1000000) parse_fail("strand count too large", start);
      }
      if (n < 2) parse_fail("strand count must be at least 2", start);
      word.n_strands = n;
      declared = true;
      continue;
    }
    first_token = false;
    if (tok[0] != 's')
      parse_fail("malformed token '" + tok + "', expected s<index>[^-1]",
                 start);
    size_t idx = 1;
    int gen = 0;
    bool have_digit = false;
    while (idx < tok.size() &&
           std::isdigit(static_cast<unsigned char>(tok[idx]))) {
      gen = gen * 10 + (tok[idx] - '0');
      if (gen > 1000000) parse_fail("generator index too large", start);
      have_digit = true;
      ++idx;
    }
    if (!have_digit)
      parse_fail("malformed token '" + tok + "', expected s<index>[^-1]",
                 start);
    int sign = 1;
    if (idx < tok.size()) {
      if (tok.substr(idx) != "^-1")
        parse_fail("malformed token '" + tok + "', expected s<index>[^-1]",
                   start);
      sign = -1;
    }
    if (gen == 0) parse_fail("generator index must be at least 1", start);
    letters.push_back({{gen, sign}, start});
    max_index = std::max(max_index, gen);
  }
  if (!declared) word.n_strands = std::max(2, max_index + 1);
  for (const auto& [letter, start] : letters) {
    if (letter.index >= word.n_strands)
      parse_fail("generator index " + std::to_string(letter.index) +
                     " out of range for " + std::to_string(word.n_strands) +
                     " strands",
                 start);
    word.letters.push_back(letter);
  }
  return word;
}

std::string render_braid(const BraidWord& word) {
  std::ostringstream out;
  out << "n=" << word.n_strands;
  for (const BraidLetter& l : word.letters) {
    out << " s" << l.index;
    if (l.sign < 0) out << "^-1";
  }
  return out.str();
}

Circuit braid_to_circuit(const BraidWord& word, const std::string& gate_id,
                         int d) {
  Circuit c;
  c.n_wires = word.n_strands;
  c.d = d;
  for (const BraidLetter& l : word.letters) {
    if (l.index < 1 || l.index >= word.n_strands)
      throw ValidationError("braid letter out of range");
    c.ops.push_back({gate_id, {l.index - 1, l.index}, l.sign < 0});
  }
  return c;
}

bool representation_check(const CMatrix& gate, int d, int n, double tol) {
  if (n < 2) throw ValidationError("representation_check needs n >= 2");
  checked_dim(d, n);
  std::vector<CMatrix> rep;
  for (int i = 0; i + 1 < n; ++i)
    rep.push_back(embed_gate(gate, {i, i + 1}, n, d));
  for (int i = 0; i + 1 < int(rep.size()); ++i)
    if (frob_dist(rep[i] * rep[i + 1] * rep[i], rep[i + 1] * rep[i] * rep[i + 1]) >
        tol)
      return false;
  for (size_t i = 0; i < rep.size(); ++i)
    for (size_t j = i + 2; j < rep.size(); ++j)
      if (frob_dist(rep[i] * rep[j], rep[j] * rep[i]) > tol) return false;
  return true;
}

std::string render_circuit_text(const Circuit& c) {
  std::ostringstream out;
  out << "circuit n=" << c.n_wires << " d=" << c.d << "\n";
  for (const CircuitOp& op : c.ops) {
    out << op.gate_id << " ";
    for (size_t i = 0; i < op.wires.size(); ++i) {
      if (i) out << ",";
      out << op.wires[i];
    }
    if (op.inverse) out << " inv";
    out << "\n";
  }
  return out.str();
}

Circuit parse_circuit_text(const std::string& text, int default_d) {
  Circuit c;
  c.d = default_d;
  int declared_n = -1;
  int max_wire = -1;
  std::istringstream in(text);
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "circuit") {
      std::string field;
      while (ls >> field) {
        if (field.rfind("n=", 0) == 0)
          declared_n = std::stoi(field.substr(2));
        else if (field.rfind("d=", 0) == 0)
          c.d = std::stoi(field.substr(2));
        else
          throw ValidationError("bad circuit header field '" + field +
                                "' on line " + std::to_string(line_no));
      }
      continue;
    }
    CircuitOp op;
    op.gate_id = head;
    std::string wire_field;
    if (!(ls >> wire_field))
      throw ValidationError("missing wires on line " + std::to_string(line_no));
    size_t p = 0;
    while (p < wire_field.size()) {
      size_t comma = wire_field.find(',', p);
      std::string num = wire_field.substr(
          p, comma == std::string::npos ? std::string::npos : comma - p);
      try {
        op.wires.push_back(std::stoi(num));
      } catch (const std::exception&) {
        throw ValidationError("bad wire '" + num + "' on line " +
                              std::to_string(line_no));
      }
      if (op.wires.back() < 0)
        throw ValidationError("negative wire on line " +
                              std::to_string(line_no));
      max_wire = std::max(max_wire, op.wires.back());
      if (comma == std::string::npos) break;
      p = comma + 1;
    }
    std::string tail;
    if (ls >> tail) {
      if (tail != "inv")
        throw ValidationError("unexpected trailing token '" + tail +
                              "' on line " + std::to_string(line_no));
      op.inverse = true;
    }
    c.ops.push_back(op);
  }
  c.n_wires = declared_n > 0 ? declared_n : max_wire + 1;
  if (c.n_wires < 1)
    throw ValidationError("circuit has no wires");
  for (const CircuitOp& op : c.ops)
    for (int w : op.wires)
      if (w >= c.n_wires)
        throw ValidationError("wire " + std::to_string(w) +
                              " out of range for n=" +
                              std::to_string(c.n_wires));
  return c;
}

}  // namespace ybsim
