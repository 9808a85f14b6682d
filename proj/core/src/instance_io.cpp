// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmaexp/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qmaexp/errors.hpp"

namespace qmaexp {

namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RowOracleMatrix maybe_gram(RowOracleMatrix a, bool gram) { return gram ? ata_oracle(a) : a; }

}  // namespace

ReversibleTM load_machine(const std::filesystem::path& path, std::optional<int> space) {
  if (!space) return ReversibleTM::from_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("RTM JSON: ") + e.what());
  }
  j["space"] = *space;
  return ReversibleTM::from_json_text(j.dump());
}

MatrixInstance matrix_instance_from_json_text(std::string_view text, const std::filesystem::path& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("instance JSON: ") + e.what());
  }
  try {
    if (j.contains("entries")) {
      std::vector<Triplet> entries;
      for (const auto& e : j.at("entries")) {
        entries.emplace_back(e.at(0).get<std::uint64_t>(), e.at(1).get<std::uint64_t>(), e.at(2).get<std::int64_t>());
      }
      const auto dim = j.at("dim").get<std::uint64_t>();
      return {j.value("label", "explicit"), explicit_oracle(dim, entries), std::nullopt, std::nullopt};
    }
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "path" || kind == "cycle") {
      const auto ell = j.at("ell").get<std::uint64_t>();
      const bool gram = j.value("gram", false);
      auto a = kind == "path" ? path_adjacency_oracle(ell) : cycle_adjacency_oracle(ell);
      return {kind + "_" + std::to_string(ell), maybe_gram(std::move(a), gram), std::nullopt, std::nullopt};
    }
    if (kind == "rtm") {
      std::filesystem::path machine_path = j.at("machine").get<std::string>();
      if (machine_path.is_relative()) machine_path = base_dir / machine_path;
      std::optional<int> space;
      if (j.contains("space")) space = j.at("space").get<int>();
      const ReversibleTM m = load_machine(machine_path, space);
      const auto input = j.value("input", std::string{});
      const std::string label = machine_path.stem().string() + ":" + input;
      if (j.value("gram", true)) {
        GappedInstance g = reduce_to_gapped(m, input);
        return {label, std::move(g.matrix), g.gap_exponent, m.accepts(input)};
      }
      return {label, augmented_adjacency(m, input), std::nullopt, m.accepts(input)};
    }
    throw ParseError("instance JSON: unknown kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("instance JSON: ") + e.what());
  }
}

MatrixInstance matrix_instance_from_file(const std::filesystem::path& path) {
  return matrix_instance_from_json_text(read_text(path), path.parent_path());
}

std::string precise_lh_to_json_text(const PreciseLHInstance& h) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : h.terms) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < t.matrix.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < t.matrix.cols(); ++c) row.push_back({t.matrix(r, c).real(), t.matrix(r, c).imag()});
      rows.push_back(std::move(row));
    }
    terms.push_back({{"label", t.label}, {"qubits", t.qubits}, {"matrix", std::move(rows)}});
  }
  nlohmann::json j{{"qubits", h.num_qubits}, {"locality", h.locality}, {"terms", std::move(terms)},
                   {"a", h.threshold_a},     {"b", h.threshold_b}};
  return j.dump();
}

PreciseLHInstance precise_lh_from_json_text(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    PreciseLHInstance h;
    h.num_qubits = j.at("qubits").get<int>();
    h.locality = j.at("locality").get<int>();
    h.threshold_a = j.at("a").get<double>();
    h.threshold_b = j.at("b").get<double>();
    for (const auto& t : j.at("terms")) {
      LocalTerm term;
      term.label = t.value("label", std::string{});
      term.qubits = t.at("qubits").get<std::vector<int>>();
      const auto& rows = t.at("matrix");
      const auto n = static_cast<Eigen::Index>(rows.size());
      term.matrix.resize(n, n);
      for (Eigen::Index r = 0; r < n; ++r) {
        const auto& row = rows.at(static_cast<std::size_t>(r));
        if (static_cast<Eigen::Index>(row.size()) != n) throw ParseError("Hamiltonian JSON: term matrix not square");
        for (Eigen::Index c = 0; c < n; ++c) {
          const auto& z = row.at(static_cast<std::size_t>(c));
          term.matrix(r, c) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
        }
      }
      h.terms.push_back(std::move(term));
    }
    return h;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("Hamiltonian JSON: ") + e.what());
  }
}

}  // namespace qmaexp
