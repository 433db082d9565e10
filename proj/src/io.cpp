#include "ybsim/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace ybsim {

json complex_to_json(const cx& v) { return json::array({v.real(), v.imag()}); }

cx json_to_complex(const json& j, const std::string& what) {
  if (j.is_number()) return cx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cx(j[0].get<double>(), j[1].get<double>());
  throw ValidationError(what + " must be a number or an [re, im] pair");
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (long r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (long c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix json_to_matrix(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty())
    throw ValidationError(what + " must be a non-empty array of rows");
  long rows = long(j.size());
  if (!j[0].is_array() || j[0].empty())
    throw ValidationError(what + " rows must be non-empty arrays");
  long cols = long(j[0].size());
  CMatrix m(rows, cols);
  for (long r = 0; r < rows; ++r) {
    if (!j[r].is_array() || long(j[r].size()) != cols)
      throw ValidationError(what + " must be rectangular");
    for (long c = 0; c < cols; ++c)
      m(r, c) = json_to_complex(j[r][c], what + " entry");
  }
  return m;
}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  return s;
}

cx field_or(const json& j, const char* key, cx fallback) {
  if (!j.contains(key)) return fallback;
  return json_to_complex(j.at(key), std::string("field '") + key + "'");
}

FamilyParams params_from_spec(const json& spec, Family fam) {
  FamilyParams p;
  p.family = fam;
  p.a = field_or(spec, "a", p.a);
  p.b = field_or(spec, "b", p.b);
  p.c = field_or(spec, "c", p.c);
  p.d_entry = field_or(spec, "d_entry", p.d_entry);
  p.p = field_or(spec, "p", p.p);
  p.q = field_or(spec, "q", p.q);
  p.r_phase = field_or(spec, "r_phase", p.r_phase);
  p.k = field_or(spec, "k", p.k);
  return p;
}

std::vector<int> json_to_perm(const json& j, int d, const std::string& what) {
  if (!j.is_array() || int(j.size()) != d)
    throw ValidationError(what + " must be a length-d integer array");
  std::vector<int> perm(d);
  std::vector<bool> seen(d, false);
  for (int i = 0; i < d; ++i) {
    if (!j[i].is_number_integer())
      throw ValidationError(what + " entries must be integers");
    int v = j[i].get<int>();
    if (v < 0 || v >= d || seen[v])
      throw ValidationError(what + " must be a permutation of [0, d)");
    perm[i] = v;
    seen[v] = true;
  }
  return perm;
}

}  // namespace

GateDocument build_gate_from_spec(const json& spec) {
  if (!spec.is_object()) throw ValidationError("gate spec must be an object");
  if (!spec.contains("family") || !spec.at("family").is_string())
    throw ValidationError("gate spec needs a string 'family' field");
  std::string fam = lower(spec.at("family").get<std::string>());
  GateDocument doc;
  doc.name = spec.value("name", std::string("gate"));
  if (fam == "f1" || fam == "r1") {
    doc.family = "r1";
    doc.local_dim = 2;
    doc.payload = build_r1(params_from_spec(spec, Family::F1));
  } else if (fam == "f2" || fam == "r2") {
    doc.family = "r2";
    doc.local_dim = 2;
    doc.payload = build_r2(params_from_spec(spec, Family::F2));
  } else if (fam == "f3" || fam == "r3") {
    doc.family = "r3";
    doc.local_dim = 2;
    doc.payload = build_r3(params_from_spec(spec, Family::F3));
  } else if (fam == "f4" || fam == "r4") {
    doc.family = "r4";
    doc.local_dim = 2;
    doc.payload = build_r4(params_from_spec(spec, Family::F4));
  } else if (fam == "diag" || fam == "diagonal") {
    int d = spec.value("local_dim", 2);
    if (!spec.contains("lambdas"))
      throw ValidationError("diagonal gate spec needs a 'lambdas' array");
    const json& lj = spec.at("lambdas");
    if (!lj.is_array())
      throw ValidationError("'lambdas' must be an array of complex pairs");
    std::vector<cx> lambdas;
    for (const auto& e : lj) lambdas.push_back(json_to_complex(e, "lambda"));
    BuiltGate built = build_diagonal_solution(d, lambdas);
    doc.family = "diag";
    doc.local_dim = d;
    doc.payload = built.nf;
  } else if (fam == "commuting") {
    if (!spec.contains("A") || !spec.contains("B"))
      throw ValidationError("commuting gate spec needs 'A' and 'B' matrices");
    CMatrix A = json_to_matrix(spec.at("A"), "A");
    CMatrix B = json_to_matrix(spec.at("B"), "B");
    BuiltGate built = build_commuting_swap_solution(A, B);
    doc.family = "commuting";
    doc.local_dim = int(A.rows());
    doc.payload = built.nf;
  } else {
    throw ValidationError("unknown family: " + fam);
  }
  return doc;
}

json gate_document_to_json(const GateDocument& doc) {
  json j;
  j["name"] = doc.name;
  j["local_dim"] = doc.local_dim;
  if (std::holds_alternative<YbNormalForm>(doc.payload)) {
    const YbNormalForm& nf = std::get<YbNormalForm>(doc.payload);
    j["kind"] = "normal_form";
    j["family"] = doc.family.empty() ? "custom" : doc.family;
    j["k"] = complex_to_json(nf.k);
    j["Q"] = matrix_to_json(nf.Q);
    json dj = json::array();
    for (const cx& v : nf.D) dj.push_back(complex_to_json(v));
    j["D"] = std::move(dj);
    j["P"] = nf.P == PFlag::Swap ? "swap" : "identity";
    j["C"] = nf.C;
  } else if (std::holds_alternative<CliffordGateRecord>(doc.payload)) {
    const CliffordGateRecord& rec = std::get<CliffordGateRecord>(doc.payload);
    j["kind"] = "clifford";
    j["family"] = doc.family.empty() ? "r4" : doc.family;
    j["k"] = complex_to_json(rec.k);
    j["Q1"] = matrix_to_json(rec.Q1);
    j["gate"] = matrix_to_json(rec.gate);
  } else {
    j["kind"] = "matrix";
    if (!doc.family.empty()) j["family"] = doc.family;
    j["matrix"] = matrix_to_json(std::get<CMatrix>(doc.payload));
  }
  return j;
}

GateDocument gate_document_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("gate document must be an object");
  GateDocument doc;
  doc.name = j.value("name", std::string("gate"));
  doc.family = j.value("family", std::string());
  doc.local_dim = j.value("local_dim", 2);
  if (doc.local_dim < 2) throw ValidationError("local_dim must be >= 2");
  std::string kind = j.value("kind", std::string());
  if (kind == "normal_form") {
    YbNormalForm nf;
    nf.local_dim = doc.local_dim;
    int d = doc.local_dim;
    nf.k = j.contains("k") ? json_to_complex(j.at("k"), "k") : cx(1.0, 0.0);
    if (!j.contains("Q")) throw ValidationError("normal form needs Q");
    nf.Q = json_to_matrix(j.at("Q"), "Q");
    if (nf.Q.rows() != d || nf.Q.cols() != d)
      throw ValidationError("Q must be local_dim x local_dim");
    if (!j.contains("D") || !j.at("D").is_array() ||
        long(j.at("D").size()) != long(d) * d)
      throw ValidationError("D must be a length d^2 array");
    for (const auto& e : j.at("D"))
      nf.D.push_back(json_to_complex(e, "D entry"));
    std::string p = lower(j.value("P", std::string("swap")));
    if (p == "swap")
      nf.P = PFlag::Swap;
    else if (p == "identity")
      nf.P = PFlag::Identity;
    else
      throw ValidationError("P must be \"swap\" or \"identity\"");
    if (j.contains("C"))
      nf.C = json_to_perm(j.at("C"), d, "C");
    else {
      nf.C.resize(d);
      for (int i = 0; i < d; ++i) nf.C[i] = i;
    }
    doc.payload = std::move(nf);
  } else if (kind == "clifford") {
    CliffordGateRecord rec;
    rec.k = j.contains("k") ? json_to_complex(j.at("k"), "k") : cx(1.0, 0.0);
    if (!j.contains("Q1")) throw ValidationError("clifford record needs Q1");
    rec.Q1 = json_to_matrix(j.at("Q1"), "Q1");
    if (rec.Q1.rows() != 2 || rec.Q1.cols() != 2)
      throw ValidationError("Q1 must be 2 x 2");
    if (!j.contains("gate")) throw ValidationError("clifford record needs gate");
    rec.gate = json_to_matrix(j.at("gate"), "gate");
    if (rec.gate.rows() != 4 || rec.gate.cols() != 4)
      throw ValidationError("clifford gate must be 4 x 4");
    if (doc.local_dim != 2)
      throw ValidationError("clifford records have local_dim 2");
    doc.payload = std::move(rec);
  } else if (kind == "matrix") {
    if (!j.contains("matrix")) throw ValidationError("matrix document needs matrix");
    CMatrix m = json_to_matrix(j.at("matrix"), "matrix");
    if (m.rows() != m.cols()) throw ValidationError("matrix must be square");
    doc.payload = std::move(m);
  } else {
    throw ValidationError("unknown gate document kind: '" + kind + "'");
  }
  return doc;
}

GateDocument load_gate_document(const std::string& path) {
  return gate_document_from_json(parse_json(read_file(path), path));
}

CMatrix gate_dense_matrix(const GateDocument& doc) {
  if (std::holds_alternative<YbNormalForm>(doc.payload))
    return reconstruct_gate(std::get<YbNormalForm>(doc.payload));
  if (std::holds_alternative<CliffordGateRecord>(doc.payload))
    return std::get<CliffordGateRecord>(doc.payload).gate;
  return std::get<CMatrix>(doc.payload);
}

Observable observable_from_json(const json& j) {
  if (!j.is_object() || !j.contains("wires") || !j.contains("matrix"))
    throw ValidationError("observable needs 'wires' and 'matrix' fields");
  Observable obs;
  if (!j.at("wires").is_array())
    throw ValidationError("observable wires must be an array");
  for (const auto& w : j.at("wires")) {
    if (!w.is_number_integer())
      throw ValidationError("observable wires must be integers");
    obs.wires.push_back(w.get<int>());
  }
  obs.matrix = json_to_matrix(j.at("matrix"), "observable matrix");
  return obs;
}

ProductState product_state_from_json(const json& j) {
  const json* qj = nullptr;
  if (j.is_object() && j.contains("qubits"))
    qj = &j.at("qubits");
  else if (j.is_array())
    qj = &j;
  else
    throw ValidationError("product state needs a 'qubits' array");
  if (!qj->is_array() || qj->empty())
    throw ValidationError("product state must list at least one qubit");
  ProductState st;
  for (const auto& pair : *qj) {
    if (!pair.is_array() || pair.size() != 2)
      throw ValidationError("each qubit is a pair of complex amplitudes");
    st.qubits.push_back(
        {json_to_complex(pair[0], "amplitude"), json_to_complex(pair[1], "amplitude")});
  }
  return st;
}

json estimate_to_json(const AmplitudeEstimate& e) {
  json j;
  j["value"] = complex_to_json(e.value);
  j["n_samples"] = e.n_samples;
  j["epsilon"] = e.epsilon;
  j["failure_bound"] = e.failure_bound;
  j["rho"] = e.rho;
  j["seed"] = e.seed;
  j["certified_zero"] = e.certified_zero;
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << content;
  if (!out) throw ValidationError("write failed: " + path);
}

json parse_json(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ValidationError("invalid JSON in " + what);
  return j;
}

std::string render_text(const json& doc) {
  std::ostringstream out;
  if (!doc.is_object()) {
    out << doc.dump() << "\n";
    return out.str();
  }
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    out << it.key() << ": ";
    if (it.value().is_string())
      out << it.value().get<std::string>();
    else
      out << it.value().dump();
    out << "\n";
  }
  return out.str();
}

}  // namespace ybsim
