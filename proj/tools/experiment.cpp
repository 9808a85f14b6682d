// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

#include "experiment.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "qmaexp/errors.hpp"
#include "qmaexp/instance_io.hpp"
#include "qmaexp/protocols.hpp"
#include "qmaexp/rtm.hpp"
#include "qmaexp/spectral.hpp"

namespace qmaexp::tools {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_cell(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return fmt::format("{:.17g}", *d);
  return std::get<std::string>(c);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::int64_t as_int(std::uint64_t v) { return static_cast<std::int64_t>(v); }

Report spectrum(const ExperimentConfig& cfg) {
  const BlockKind kind = cfg.kind == "cycle" ? BlockKind::Cycle : BlockKind::Path;
  if (cfg.kind != "path" && cfg.kind != "cycle") throw ContractError("spectrum: kind must be path or cycle");
  const StructuredBlock block = structured_matrix(kind, cfg.ell);
  DenseMatrix dense{block.matrix.cast<double>(), true, false};
  const RealVector numeric = symmetric_eigenvalues(dense);
  const auto convention = cfg.printed_angle ? AngleConvention::AsPrinted : AngleConvention::Corrected;
  const std::vector<double> closed =
      kind == BlockKind::Path ? closed_form_eigenvalues(cfg.ell, convention) : cycle_closed_form_eigenvalues(cfg.ell);
  Report r{"spectrum", {"ell", "k", "closed_form", "eigensolver", "abs_err"}, {}, kExitOk, {}};
  for (std::size_t k = 0; k < closed.size(); ++k) {
    const double e = numeric(static_cast<Eigen::Index>(k));
    r.rows.push_back({as_int(cfg.ell), static_cast<std::int64_t>(k + 1), closed[k], e, std::abs(closed[k] - e)});
  }
  return r;
}

Report det(const ExperimentConfig& cfg) {
  Report r{"det", {"label", "dim", "det_exact", "det_cycle_cover"}, {}, kExitOk, {}};
  IntMatrix a;
  std::string label;
  if (cfg.instance) {
    const MatrixInstance inst = matrix_instance_from_file(*cfg.instance);
    a = materialize_integer(inst.matrix);
    label = inst.label;
  } else {
    if (cfg.dim < 1) throw RangeError("det: dim must be positive");
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> entry(-2, 2);
    a.resize(cfg.dim, cfg.dim);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = entry(rng);
    }
    label = "random_seed_" + std::to_string(cfg.seed);
  }
  const Cell cover = a.rows() <= 10 ? Cell{det_cycle_cover(a)} : Cell{std::string{}};
  r.rows.push_back({label, static_cast<std::int64_t>(a.rows()), det_exact(a), cover});
  return r;
}

Report reduce(const ExperimentConfig& cfg) {
  if (!cfg.machine) throw ContractError("reduce: --machine is required");
  const ReversibleTM m = load_machine(*cfg.machine, cfg.space);
  const ValidationReport valid = validate(m);
  if (!valid.ok()) throw ContractError("reduce: " + valid.message);
  const RowOracleMatrix adj = augmented_adjacency(m, cfg.input);
  const GappedInstance g = reduce_to_gapped(m, cfg.input);
  const IntMatrix gram = materialize_integer(g.matrix);
  Report r{"reduce",
           {"input", "space", "dim", "accepts", "det", "ata_max_entry", "lambda_min", "gap_bound", "gap_exponent"},
           {},
           kExitOk,
           {}};
  r.rows.push_back({cfg.input, static_cast<std::int64_t>(m.space()), as_int(m.config_count()),
                    static_cast<std::int64_t>(m.accepts(cfg.input)), det_exact(materialize_integer(adj)),
                    gram.maxCoeff(), min_eigenvalue(materialize(g.matrix)), g.gap_lower_bound,
                    static_cast<std::int64_t>(g.gap_exponent)});
  return r;
}

MatrixInstance instance_for_verify(const ExperimentConfig& cfg) {
  if (cfg.instance) return matrix_instance_from_file(*cfg.instance);
  if (!cfg.machine) throw ContractError("verify: --instance or --machine is required");
  const ReversibleTM m = load_machine(*cfg.machine, cfg.space);
  GappedInstance g = reduce_to_gapped(m, cfg.input);
  return {std::filesystem::path(*cfg.machine).stem().string() + ":" + cfg.input, std::move(g.matrix), g.gap_exponent,
          m.accepts(cfg.input)};
}

Report verify(const ExperimentConfig& cfg) {
  const MatrixInstance inst = instance_for_verify(cfg);
  const auto g = cfg.gap_exponent ? cfg.gap_exponent : inst.gap_exponent;
  if (!g) throw ContractError("verify: no gap exponent; pass --g");
  const GappedDecision d = decide_gapped(inst.matrix, *g);
  Report r{"verify",
           {"label", "dim", "g", "decision", "best_acceptance", "completeness", "soundness", "separation", "epsilon",
            "evo_time", "taylor_order", "lambda_min"},
           {},
           kExitOk,
           {}};
  r.rows.push_back({inst.label, as_int(inst.matrix.dim()), static_cast<std::int64_t>(*g), to_string(d.decision),
                    d.best_acceptance, d.config.completeness_bound, d.config.soundness_bound, d.separation,
                    d.config.epsilon, d.config.evo_time, static_cast<std::int64_t>(d.config.taylor_order),
                    d.lambda_min});
  return r;
}

Verifier load_verifier(const ExperimentConfig& cfg) {
  if (!cfg.verifier) throw ContractError(cfg.command + ": --verifier is required");
  return Verifier::from_file(*cfg.verifier);
}

Report amplify(const ExperimentConfig& cfg) {
  const Verifier v = load_verifier(cfg);
  const auto params = AmplificationParams::make(v.completeness_c, v.soundness_s, cfg.trials_r, cfg.precision_bits);
  Report r{"amplify",
           {"witness", "r", "precision_bits", "p_yes", "p_no", "p_violation", "decision"},
           {},
           kExitOk,
           {}};
  const auto wdim = std::uint64_t{1} << v.witness_qubits;
  std::vector<std::uint64_t> witnesses;
  if (cfg.witness) {
    witnesses.push_back(*cfg.witness);
  } else {
    for (std::uint64_t w = 0; w < wdim; ++w) witnesses.push_back(w);
  }
  for (std::uint64_t w : witnesses) {
    const AmplificationResult res = nwz_amplify(v, params, Statevector::basis(v.witness_qubits, w));
    r.rows.push_back({std::to_string(w), static_cast<std::int64_t>(params.trials_r),
                      static_cast<std::int64_t>(params.precision_bits), res.p_yes, res.p_no, res.p_violation,
                      to_string(res.decision)});
    if (res.decision == Decision::PromiseViolated) {
      r.exit_code = kExitPromiseViolation;
      r.diagnostic = "median phase fell between the thresholds for witness " + std::to_string(w);
    }
  }
  if (!cfg.witness) {
    const RealVector e = hermitian_eigenvalues(amplified_accept_operator(v, params).matrix);
    r.rows.push_back({std::string("max"), static_cast<std::int64_t>(params.trials_r),
                      static_cast<std::int64_t>(params.precision_bits), e(e.size() - 1), std::string{},
                      std::string{}, std::string{}});
  }
  return r;
}

Report kitaev(const ExperimentConfig& cfg) {
  const Verifier v = load_verifier(cfg);
  const PreciseLHInstance h = kitaev_hamiltonian(v);
  if (cfg.emit) {
    std::ofstream out(*cfg.emit);
    if (!out) throw ResourceError("cannot write " + *cfg.emit);
    out << precise_lh_to_json_text(h) << '\n';
  }
  Report r{"kitaev", {"qubits", "locality", "terms", "gate_count", "a", "b"}, {}, kExitOk, {}};
  r.rows.push_back({static_cast<std::int64_t>(h.num_qubits), static_cast<std::int64_t>(h.locality),
                    static_cast<std::int64_t>(h.terms.size()), static_cast<std::int64_t>(v.gate_count()),
                    h.threshold_a, h.threshold_b});
  return r;
}

Report energy(const ExperimentConfig& cfg) {
  EnergySearch s;
  if (cfg.verifier) {
    s = binary_search_energy(kitaev_hamiltonian(load_verifier(cfg)), cfg.bits);
  } else if (cfg.instance) {
    const std::string text = read_file(*cfg.instance);
    if (nlohmann::json::parse(text).contains("terms")) {
      s = binary_search_energy(precise_lh_from_json_text(text), cfg.bits);
    } else {
      const auto base = std::filesystem::path(*cfg.instance).parent_path();
      s = binary_search_energy(materialize(matrix_instance_from_json_text(text, base).matrix), cfg.bits);
    }
  } else {
    throw ContractError("energy: --verifier or --instance is required");
  }
  Report r{"energy", {"iteration", "lower", "upper"}, {}, kExitOk, {}};
  for (std::size_t i = 0; i < s.brackets.size(); ++i) {
    r.rows.push_back({static_cast<std::int64_t>(i), s.brackets[i].first, s.brackets[i].second});
  }
  return r;
}

}  // namespace

Report run_experiment(const ExperimentConfig& cfg) {
  try {
    if (cfg.command == "spectrum") return spectrum(cfg);
    if (cfg.command == "det") return det(cfg);
    if (cfg.command == "reduce") return reduce(cfg);
    if (cfg.command == "verify") return verify(cfg);
    if (cfg.command == "amplify") return amplify(cfg);
    if (cfg.command == "kitaev") return kitaev(cfg);
    if (cfg.command == "energy") return energy(cfg);
  } catch (const PromiseViolation& e) {
    return Report{cfg.command, {}, {}, kExitPromiseViolation, e.what()};
  }
  throw ContractError("unknown command '" + cfg.command + "'");
}

std::string emit_report(const Report& report, const std::string& format) {
  std::string out;
  if (format == "csv") {
    for (std::size_t i = 0; i < report.columns.size(); ++i) out += (i ? "," : "") + csv_field(report.columns[i]);
    out += '\n';
    for (const auto& row : report.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(format_cell(row[i]));
      out += '\n';
    }
    return out;
  }
  if (format != "json") throw ContractError("format must be csv or json");
  // Numbers are written by hand so every double carries 17 significant digits.
  auto quote = [](const std::string& s) { return nlohmann::json(s).dump(); };
  out = "{\"command\":" + quote(report.command) + ",\"columns\":[";
  for (std::size_t i = 0; i < report.columns.size(); ++i) out += (i ? "," : "") + quote(report.columns[i]);
  out += "],\"rows\":[";
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    out += r ? ",{" : "{";
    const auto& row = report.rows[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += (i ? "," : "") + quote(report.columns[i]) + ":";
      out += std::holds_alternative<std::string>(row[i]) ? quote(std::get<std::string>(row[i])) : format_cell(row[i]);
    }
    out += "}";
  }
  out += "]}\n";
  return out;
}

void write_report(const Report& report, const ExperimentConfig& cfg) {
  const std::string text = emit_report(report, cfg.format);
  if (!cfg.output) {
    std::cout << text;
    return;
  }
  std::ofstream out(*cfg.output);
  if (!out) throw ResourceError("cannot write " + *cfg.output);
  out << text;
}

}  // namespace qmaexp::tools
