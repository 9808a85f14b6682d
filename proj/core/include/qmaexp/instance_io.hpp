// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "qmaexp/protocols.hpp"
#include "qmaexp/rtm.hpp"
#include "qmaexp/sparse_oracle.hpp"

namespace qmaexp {

/// A matrix instance loaded from JSON, with whatever provenance it carries.
struct MatrixInstance {
  std::string label;
  RowOracleMatrix matrix;
  std::optional<int> gap_exponent;     // set for reduced machine instances
  std::optional<bool> machine_accepts;  // set for machine instances
};

/// Accepted forms:
///   {"dim": n, "entries": [[i, j, v], ...]}
///   {"kind": "path" | "cycle", "ell": l, "gram": bool}     adjacency unless gram is true
///   {"kind": "rtm", "machine": "file.json", "input": "...", "space": S, "gram": bool}
/// Relative machine paths resolve against `base_dir`. For "rtm", gram defaults to true.
[[nodiscard]] MatrixInstance matrix_instance_from_json_text(std::string_view text,
                                                           const std::filesystem::path& base_dir = {});
[[nodiscard]] MatrixInstance matrix_instance_from_file(const std::filesystem::path& path);

/// Machine file with its declared space optionally replaced.
[[nodiscard]] ReversibleTM load_machine(const std::filesystem::path& path, std::optional<int> space = std::nullopt);

/// {"qubits": n, "locality": l, "terms": [{"label", "qubits", "matrix": [[[re, im], ...], ...]}], "a": a, "b": b}
[[nodiscard]] std::string precise_lh_to_json_text(const PreciseLHInstance& h);
[[nodiscard]] PreciseLHInstance precise_lh_from_json_text(std::string_view text);

}  // namespace qmaexp
