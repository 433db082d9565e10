#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "ybsim/clifford.hpp"
#include "ybsim/mc_sim.hpp"
#include "ybsim/solutions.hpp"

// Structured text documents: JSON with complex numbers as [re, im] pairs and
// matrices as row arrays of pairs. The text output format renders the same
// documents as "key: value" lines.
namespace ybsim {

using json = nlohmann::json;

json complex_to_json(const cx& v);
cx json_to_complex(const json& j, const std::string& what);

json matrix_to_json(const CMatrix& m);
CMatrix json_to_matrix(const json& j, const std::string& what);

// a built gate, a family-four Clifford record, or a raw matrix
struct GateDocument {
  std::string name;
  std::string family;  // r1|r2|r3|r4|diag|commuting, empty for raw matrices
  int local_dim = 2;
  std::variant<YbNormalForm, CliffordGateRecord, CMatrix> payload;
};

// dispatches on the "family" field and runs the matching builder
GateDocument build_gate_from_spec(const json& spec);

json gate_document_to_json(const GateDocument& doc);
GateDocument gate_document_from_json(const json& j);

GateDocument load_gate_document(const std::string& path);

// dense matrix of whatever the document holds (normal forms reconstructed)
CMatrix gate_dense_matrix(const GateDocument& doc);

Observable observable_from_json(const json& j);
ProductState product_state_from_json(const json& j);

json estimate_to_json(const AmplitudeEstimate& e);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
json parse_json(const std::string& text, const std::string& what);

// flat "key: value" rendering for --output text; nested values stay JSON
std::string render_text(const json& doc);

}  // namespace ybsim
