#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ybsim/braid.hpp"
#include "ybsim/clifford.hpp"
#include "ybsim/io.hpp"
#include "ybsim/mc_sim.hpp"
#include "ybsim/solutions.hpp"
#include "ybsim/ybe.hpp"

namespace {

using namespace ybsim;

using Clock = std::chrono::steady_clock;

ybsim::DitString parse_ditstring(const std::string& s, int n, int d,
                                 const char* what) {
  if (d > 10)
    throw ValidationError(
        "command-line ditstrings support local dimension up to 10");
  if (int(s.size()) != n)
    throw ValidationError(std::string(what) + " must have one digit per wire (" +
                          std::to_string(n) + ")");
  ybsim::DitString out(n, 0);
  for (int i = 0; i < n; ++i) {
    char c = s[i];
    if (c < '0' || c > '9')
      throw ValidationError(std::string(what) + " must be a digit string");
    int v = c - '0';
    if (v >= d)
      throw ValidationError(std::string(what) + " digit " + std::string(1, c) +
                            " is outside [0, " + std::to_string(d) + ")");
    out[i] = v;
  }
  return out;
}

// word arguments may be literal text or @path to a file holding the text
std::string resolve_word_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return read_file(arg.substr(1));
  return arg;
}

void emit(const json& doc, const std::string& format,
          const std::string& out_path) {
  std::string text =
      format == "text" ? render_text(doc) : doc.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

json property_g_to_json(const PropertyGReport& rep) {
  json j;
  j["holds"] = rep.holds;
  j["max_sum"] = rep.max_sum;
  j["group_order"] = rep.group_order;
  return j;
}

std::vector<std::vector<int>> identity_generators(int d) {
  std::vector<int> id(d);
  for (int i = 0; i < d; ++i) id[i] = i;
  return {id};
}

struct CommonOut {
  std::string format = "text";
  std::string out_path;
  bool timing = false;
  Clock::time_point start = Clock::now();

  void finish(json doc) const {
    if (timing) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    Clock::now() - start)
                    .count();
      doc["wall_time_ms"] = ms;
    }
    emit(doc, format, out_path);
  }
};

void add_output_flags(CLI::App* cmd, CommonOut& out) {
  cmd->add_option("--output", out.format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  cmd->add_option("-o,--out", out.out_path, "write the result to a file");
  cmd->add_flag("--timing", out.timing, "include wall_time_ms in the output");
}

Circuit circuit_from_flags(const std::string& braid_text,
                           const std::string& circuit_path,
                           const std::string& gate_id, int d) {
  if (!braid_text.empty() && !circuit_path.empty())
    throw ValidationError("give either --braid or --circuit, not both");
  if (!braid_text.empty())
    return braid_to_circuit(parse_braid(resolve_word_arg(braid_text)), gate_id,
                            d);
  if (!circuit_path.empty()) {
    Circuit c = parse_circuit_text(read_file(circuit_path), d);
    if (c.d != d)
      throw ValidationError(
          "circuit local dimension does not match the gate file");
    return c;
  }
  throw ValidationError("need a circuit source: --braid or --circuit");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Yang-Baxter gate toolkit: build unitary solutions of the braiding "
      "equation, compile braid words into circuits, and compute amplitudes "
      "and expectation values"};
  app.require_subcommand(1);

  // ---- gate build ----------------------------------------------------
  CLI::App* gate = app.add_subcommand("gate", "build and check gates");
  gate->require_subcommand(1);

  struct {
    std::string spec_path;
    std::string gate_out;
    CommonOut out;
  } gb;
  CLI::App* gate_build =
      gate->add_subcommand("build", "build a gate from a parameter spec");
  gate_build->add_option("spec", gb.spec_path, "JSON parameter spec file")
      ->required();
  gate_build->add_option("--gate-out", gb.gate_out,
                         "write the built gate document to this file");
  add_output_flags(gate_build, gb.out);
  gate_build->callback([&] {
    gb.out.start = Clock::now();
    json spec = parse_json(read_file(gb.spec_path), gb.spec_path);
    GateDocument doc = build_gate_from_spec(spec);
    CMatrix dense = gate_dense_matrix(doc);
    CheckResult qybe = check_qybe(dense, doc.local_dim);
    json report;
    report["name"] = doc.name;
    report["family"] = doc.family;
    report["local_dim"] = doc.local_dim;
    report["constraints"] = "ok";
    report["unitary"] = is_unitary(dense);
    report["qybe_pass"] = qybe.ok;
    report["qybe_residual"] = qybe.residual;
    if (std::holds_alternative<YbNormalForm>(doc.payload)) {
      const YbNormalForm& nf = std::get<YbNormalForm>(doc.payload);
      report["property_g"] = property_g_to_json(check_property_g(nf.Q, {nf.C}));
    } else if (std::holds_alternative<CliffordGateRecord>(doc.payload)) {
      const CliffordGateRecord& rec = std::get<CliffordGateRecord>(doc.payload);
      report["property_g"] =
          property_g_to_json(check_property_g(rec.Q1, symmetric_group(2)));
    }
    if (!gb.gate_out.empty())
      write_file(gb.gate_out, gate_document_to_json(doc).dump(2) + "\n");
    gb.out.finish(report);
  });

  // ---- gate check ----------------------------------------------------
  struct {
    std::string path;
    double tolerance = 1e-9;
    std::string pg_mode = "generated";
    CommonOut out;
  } gc;
  CLI::App* gate_check =
      gate->add_subcommand("check", "validate a gate or Q-candidate file");
  gate_check->add_option("file", gc.path, "gate document file")->required();
  gate_check->add_option("--tolerance", gc.tolerance, "residual tolerance")
      ->capture_default_str();
  gate_check
      ->add_option("--property-g", gc.pg_mode,
                   "permutation group for the normalization-soundness check: "
                   "the gate's generated group or the full symmetric group")
      ->check(CLI::IsMember({"generated", "full"}))
      ->capture_default_str();
  add_output_flags(gate_check, gc.out);
  gate_check->callback([&] {
    gc.out.start = Clock::now();
    GateDocument doc = load_gate_document(gc.path);
    int d = doc.local_dim;
    json report;
    report["name"] = doc.name;
    report["local_dim"] = d;
    if (std::holds_alternative<YbNormalForm>(doc.payload)) {
      const YbNormalForm& nf = std::get<YbNormalForm>(doc.payload);
      CMatrix dense = reconstruct_gate(nf);
      CheckResult qybe = check_qybe(dense, d, gc.tolerance);
      report["kind"] = "normal_form";
      report["unitary"] = is_unitary(dense, gc.tolerance);
      report["qybe_pass"] = qybe.ok;
      report["qybe_residual"] = qybe.residual;
      auto gens = gc.pg_mode == "full" ? symmetric_group(d)
                                       : std::vector<std::vector<int>>{nf.C};
      report["property_g"] = property_g_to_json(check_property_g(nf.Q, gens));
    } else if (std::holds_alternative<CliffordGateRecord>(doc.payload)) {
      const CliffordGateRecord& rec = std::get<CliffordGateRecord>(doc.payload);
      CheckResult qybe = check_qybe(rec.gate, 2, gc.tolerance);
      report["kind"] = "clifford";
      report["unitary"] = is_unitary(rec.gate, gc.tolerance);
      report["qybe_pass"] = qybe.ok;
      report["qybe_residual"] = qybe.residual;
      auto gens = gc.pg_mode == "full" ? symmetric_group(2)
                                       : identity_generators(2);
      report["property_g"] = property_g_to_json(check_property_g(rec.Q1, gens));
    } else {
      const CMatrix& m = std::get<CMatrix>(doc.payload);
      if (m.rows() == d) {
        // d x d matrix: a Q candidate, no gate to run the braiding check on
        report["kind"] = "q_candidate";
        report["unitary"] = is_unitary(m, gc.tolerance);
        auto gens = gc.pg_mode == "full" ? symmetric_group(d)
                                         : identity_generators(d);
        report["property_g"] = property_g_to_json(check_property_g(m, gens));
      } else if (m.rows() == long(d) * d) {
        CheckResult qybe = check_qybe(m, d, gc.tolerance);
        report["kind"] = "gate_matrix";
        report["unitary"] = is_unitary(m, gc.tolerance);
        report["qybe_pass"] = qybe.ok;
        report["qybe_residual"] = qybe.residual;
      } else {
        throw ValidationError(
            "matrix must be d x d (Q candidate) or d^2 x d^2 (gate) for the "
            "declared local_dim");
      }
    }
    gc.out.finish(report);
  });

  // ---- braid parse ---------------------------------------------------
  struct {
    std::string word;
    CommonOut out;
  } bp;
  CLI::App* braid = app.add_subcommand("braid", "parse and compile braid words");
  braid->require_subcommand(1);
  CLI::App* braid_parse = braid->add_subcommand(
      "parse", "parse a braid word and report its normalized form");
  braid_parse
      ->add_option("word", bp.word, "braid word text, or @file to read one")
      ->required();
  add_output_flags(braid_parse, bp.out);
  braid_parse->callback([&] {
    bp.out.start = Clock::now();
    BraidWord w = parse_braid(resolve_word_arg(bp.word));
    json report;
    report["word"] = render_braid(w);
    report["n_strands"] = w.n_strands;
    report["length"] = w.letters.size();
    bp.out.finish(report);
  });

  // ---- braid compile -------------------------------------------------
  struct {
    std::string word;
    std::string gate_id = "g";
    int local_dim = 2;
    std::string out_path;
  } bc;
  CLI::App* braid_compile = braid->add_subcommand(
      "compile", "compile a braid word into a circuit over one gate");
  braid_compile
      ->add_option("word", bc.word, "braid word text, or @file to read one")
      ->required();
  braid_compile->add_option("--gate", bc.gate_id, "gate id to reference")
      ->capture_default_str();
  braid_compile->add_option("--local-dim", bc.local_dim, "qudit dimension")
      ->capture_default_str();
  braid_compile->add_option("-o,--out", bc.out_path,
                            "write the circuit text to a file");
  braid_compile->callback([&] {
    BraidWord w = parse_braid(resolve_word_arg(bc.word));
    Circuit c = braid_to_circuit(w, bc.gate_id, bc.local_dim);
    std::string text = render_circuit_text(c);
    if (bc.out_path.empty())
      std::cout << text;
    else
      write_file(bc.out_path, text);
  });

  // ---- simulate --------------------------------------------------------
  struct {
    std::string gate_path;
    std::string braid_text;
    std::string circuit_path;
    std::string x_str;
    std::string z_str;
    double epsilon = 0.1;
    long samples = -1;
    std::uint64_t seed = 0;
    int threads = 1;
    bool exact = false;
    CommonOut out;
  } sim;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "compute <x|U|z> for a braid circuit by sampling or exactly");
  simulate->add_option("--gate", sim.gate_path, "gate document file")
      ->required();
  simulate->add_option("--braid", sim.braid_text,
                       "braid word (or @file) naming the circuit");
  simulate->add_option("--circuit", sim.circuit_path, "circuit text file");
  simulate->add_option("--x", sim.x_str, "output ditstring")->required();
  simulate->add_option("--z", sim.z_str, "input ditstring")->required();
  simulate->add_option("--epsilon", sim.epsilon, "additive error target")
      ->capture_default_str();
  simulate->add_option("--samples", sim.samples,
                       "sample count override (default ceil(8n/eps^3))");
  simulate->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
  simulate->add_option("--threads", sim.threads, "worker thread count")
      ->capture_default_str();
  simulate->add_flag("--exact", sim.exact,
                     "use the dense oracle instead of sampling");
  add_output_flags(simulate, sim.out);
  simulate->callback([&] {
    sim.out.start = Clock::now();
    GateDocument doc = load_gate_document(sim.gate_path);
    int d = doc.local_dim;
    Circuit c =
        circuit_from_flags(sim.braid_text, sim.circuit_path, doc.name, d);
    DitString x = parse_ditstring(sim.x_str, c.n_wires, d, "--x");
    DitString z = parse_ditstring(sim.z_str, c.n_wires, d, "--z");
    json report;
    if (sim.exact) {
      DenseGateTable table;
      table[doc.name] = gate_dense_matrix(doc);
      cx value = oracle_amplitude(c, table, x, z);
      report["value"] = complex_to_json(value);
      report["exact"] = true;
    } else {
      if (!std::holds_alternative<YbNormalForm>(doc.payload))
        throw GateMismatchError(
            "the sampling estimator requires monomial normal-form gates; use "
            "--exact or the expectation command for family-four gates");
      NormalFormRegistry reg;
      reg[doc.name] = std::get<YbNormalForm>(doc.payload);
      AmplitudeEstimate est = estimate_amplitude(
          c, reg, x, z, sim.epsilon, sim.seed, sim.samples, sim.threads);
      report = estimate_to_json(est);
    }
    sim.out.finish(report);
  });

  // ---- expectation -----------------------------------------------------
  struct {
    std::string gate_path;
    std::string braid_text;
    std::string circuit_path;
    std::string observable_path;
    std::string psi_path;
    std::string phi_path;
    CommonOut out;
  } ex;
  CLI::App* expect = app.add_subcommand(
      "expectation",
      "exact <psi|U^dag (M x I) U|phi> for circuits over family-four gates");
  expect->add_option("--gate", ex.gate_path, "gate document file")->required();
  expect->add_option("--braid", ex.braid_text,
                     "braid word (or @file) naming the circuit");
  expect->add_option("--circuit", ex.circuit_path, "circuit text file");
  expect->add_option("--observable", ex.observable_path,
                     "observable JSON file (wires + Hermitian matrix)")
      ->required();
  expect->add_option("--psi", ex.psi_path, "bra product-state JSON file")
      ->required();
  expect->add_option("--phi", ex.phi_path,
                     "ket product-state JSON file (default: same as --psi)");
  add_output_flags(expect, ex.out);
  expect->callback([&] {
    ex.out.start = Clock::now();
    GateDocument doc = load_gate_document(ex.gate_path);
    if (!std::holds_alternative<CliffordGateRecord>(doc.payload))
      throw GateMismatchError("expectation requires family-four gates");
    Circuit c = circuit_from_flags(ex.braid_text, ex.circuit_path, doc.name, 2);
    Observable obs =
        observable_from_json(parse_json(read_file(ex.observable_path),
                                        ex.observable_path));
    ProductState psi = product_state_from_json(
        parse_json(read_file(ex.psi_path), ex.psi_path));
    ProductState phi =
        ex.phi_path.empty()
            ? psi
            : product_state_from_json(
                  parse_json(read_file(ex.phi_path), ex.phi_path));
    R4Registry reg;
    reg[doc.name] = std::get<CliffordGateRecord>(doc.payload);
    cx value = expectation(c, reg, obs, psi, phi);
    json report;
    report["value"] = complex_to_json(value);
    ex.out.finish(report);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ybsim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
