// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmaexp/rtm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qmaexp/errors.hpp"

namespace qmaexp {

namespace {

constexpr std::uint64_t kValidationCap = std::uint64_t{1} << 24;

int find_name(const std::vector<std::string>& names, const std::string& name, const char* what) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw ParseError(std::string("unknown ") + what + " '" + name + "'");
  return static_cast<int>(it - names.begin());
}

Move parse_move(const std::string& m) {
  if (m == "L") return Move::Left;
  if (m == "R") return Move::Right;
  if (m == "S") return Move::Stay;
  throw ParseError("head move must be L, R or S, got '" + m + "'");
}

}  // namespace

ReversibleTM::ReversibleTM(std::vector<std::string> states, std::string start, std::string accept,
                           std::vector<std::string> alphabet, std::string blank, int space,
                           std::vector<Transition> transitions, std::optional<std::string> left_marker)
    : states_(std::move(states)), alphabet_(std::move(alphabet)), space_(space), transitions_(std::move(transitions)) {
  if (states_.empty() || alphabet_.empty()) throw ParseError("machine needs at least one state and symbol");
  if (space_ <= 0) throw ParseError("space bound must be positive");
  start_ = find_name(states_, start, "start state");
  accept_ = find_name(states_, accept, "accept state");
  if (start_ == accept_) throw ParseError("start and accept states must differ");
  blank_ = find_name(alphabet_, blank, "blank symbol");
  if (left_marker) left_marker_ = find_name(alphabet_, *left_marker, "left marker");

  const auto nq = states_.size();
  const auto na = alphabet_.size();
  table_.assign(nq * na, -1);
  for (std::size_t t = 0; t < transitions_.size(); ++t) {
    const auto& tr = transitions_[t];
    if (tr.from_state < 0 || tr.from_state >= static_cast<int>(nq) || tr.to_state < 0 ||
        tr.to_state >= static_cast<int>(nq) || tr.read < 0 || tr.read >= static_cast<int>(na) || tr.write < 0 ||
        tr.write >= static_cast<int>(na)) {
      throw ParseError("transition references unknown state or symbol");
    }
    auto& slot = table_[static_cast<std::size_t>(tr.from_state) * na + static_cast<std::size_t>(tr.read)];
    if (slot != -1) {
      throw ParseError("transitions are not a partial function: duplicate (" + states_[tr.from_state] + ", " +
                       alphabet_[tr.read] + ")");
    }
    slot = static_cast<int>(t);
  }

  // |Q| * S * |A|^S with overflow detection.
  long double count = static_cast<long double>(nq) * space_ * std::pow(static_cast<long double>(na), space_);
  if (count > static_cast<long double>(std::uint64_t{1} << 62)) {
    throw ResourceError("configuration space does not fit in 62 bits");
  }
  std::uint64_t c = nq * static_cast<std::uint64_t>(space_);
  for (int i = 0; i < space_; ++i) c *= na;
  config_count_ = c;
}

ReversibleTM ReversibleTM::from_json_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    auto states = j.at("states").get<std::vector<std::string>>();
    auto alphabet = j.at("alphabet").get<std::vector<std::string>>();
    std::vector<Transition> transitions;
    for (const auto& t : j.at("transitions")) {
      if (!t.is_array() || t.size() != 5) throw ParseError("transition must be [q, a, q2, a2, move]");
      Transition tr;
      tr.from_state = find_name(states, t[0].get<std::string>(), "state");
      tr.read = find_name(alphabet, t[1].get<std::string>(), "symbol");
      tr.to_state = find_name(states, t[2].get<std::string>(), "state");
      tr.write = find_name(alphabet, t[3].get<std::string>(), "symbol");
      tr.move = parse_move(t[4].get<std::string>());
      transitions.push_back(tr);
    }
    std::optional<std::string> marker;
    if (j.contains("left_marker")) marker = j.at("left_marker").get<std::string>();
    return ReversibleTM(std::move(states), j.at("start").get<std::string>(), j.at("accept").get<std::string>(),
                        std::move(alphabet), j.at("blank").get<std::string>(), j.at("space").get<int>(),
                        std::move(transitions), std::move(marker));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("RTM JSON: ") + e.what());
  }
}

ReversibleTM ReversibleTM::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open machine file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::uint64_t ReversibleTM::encode(const Configuration& c) const {
  const auto nq = states_.size();
  const auto na = alphabet_.size();
  if (c.state < 0 || c.state >= static_cast<int>(nq) || c.head < 0 || c.head >= space_ ||
      c.tape.size() != static_cast<std::size_t>(space_)) {
    throw RangeError("encode: configuration outside machine bounds");
  }
  std::uint64_t tape = 0;
  for (int i = space_ - 1; i >= 0; --i) {
    const int s = c.tape[static_cast<std::size_t>(i)];
    if (s < 0 || s >= static_cast<int>(na)) throw RangeError("encode: tape symbol out of range");
    tape = tape * na + static_cast<std::uint64_t>(s);
  }
  return static_cast<std::uint64_t>(c.state) + nq * (static_cast<std::uint64_t>(c.head) + space_ * tape);
}

Configuration ReversibleTM::decode(std::uint64_t index) const {
  if (index >= config_count_) throw RangeError("decode: index out of range");
  const auto nq = states_.size();
  const auto na = alphabet_.size();
  Configuration c;
  c.state = static_cast<int>(index % nq);
  index /= nq;
  c.head = static_cast<int>(index % static_cast<std::uint64_t>(space_));
  index /= static_cast<std::uint64_t>(space_);
  c.tape.resize(static_cast<std::size_t>(space_));
  for (auto& s : c.tape) {
    s = static_cast<int>(index % na);
    index /= na;
  }
  return c;
}

std::vector<int> ReversibleTM::input_tape(std::string_view input) const {
  std::vector<int> tape(static_cast<std::size_t>(space_), blank_);
  std::size_t pos = 0;
  if (left_marker_) tape[pos++] = *left_marker_;
  for (char ch : input) {
    if (pos >= tape.size()) throw RangeError("input does not fit in the space bound");
    tape[pos++] = find_name(alphabet_, std::string(1, ch), "input symbol");
  }
  return tape;
}

Configuration ReversibleTM::start_config(std::string_view input) const {
  return Configuration{start_, 0, input_tape(input)};
}

Configuration ReversibleTM::accept_config(std::string_view input) const {
  return Configuration{accept_, 0, input_tape(input)};
}

const Transition* ReversibleTM::lookup(int state, int symbol) const {
  const int t = table_[static_cast<std::size_t>(state) * alphabet_.size() + static_cast<std::size_t>(symbol)];
  return t < 0 ? nullptr : &transitions_[static_cast<std::size_t>(t)];
}

std::optional<Configuration> ReversibleTM::step(const Configuration& c) const {
  const Transition* t = lookup(c.state, c.tape.at(static_cast<std::size_t>(c.head)));
  if (t == nullptr) return std::nullopt;
  const int head = c.head + static_cast<int>(t->move);
  if (head < 0 || head >= space_) return std::nullopt;  // falling off halts
  Configuration next = c;
  next.tape[static_cast<std::size_t>(c.head)] = t->write;
  next.state = t->to_state;
  next.head = head;
  return next;
}

std::optional<std::uint64_t> ReversibleTM::step_index(std::uint64_t index) const {
  auto next = step(decode(index));
  if (!next) return std::nullopt;
  return encode(*next);
}

std::vector<std::uint64_t> ReversibleTM::predecessors(std::uint64_t index) const {
  const Configuration after = decode(index);
  std::vector<std::uint64_t> out;
  for (const auto& t : transitions_) {
    if (t.to_state != after.state) continue;
    const int head = after.head - static_cast<int>(t.move);
    if (head < 0 || head >= space_) continue;
    if (after.tape[static_cast<std::size_t>(head)] != t.write) continue;
    Configuration before = after;
    before.state = t.from_state;
    before.head = head;
    before.tape[static_cast<std::size_t>(head)] = t.read;
    out.push_back(encode(before));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Configuration> ReversibleTM::run(std::string_view input) const {
  std::vector<Configuration> trace{start_config(input)};
  // A halting run visits each configuration at most once.
  for (std::uint64_t steps = 0; steps < config_count_; ++steps) {
    auto next = step(trace.back());
    if (!next) return trace;
    trace.push_back(std::move(*next));
  }
  throw ContractError("run: machine does not halt on input '" + std::string(input) + "'");
}

bool ReversibleTM::accepts(std::string_view input) const { return run(input).back() == accept_config(input); }

ValidationReport validate(const ReversibleTM& m) {
  ValidationReport report;
  for (const auto& t : m.transitions()) {
    if (t.from_state == m.accept_state()) {
      report.failure = ValidationFailure::AcceptHasTransition;
      report.message = "accept state '" + m.states()[static_cast<std::size_t>(m.accept_state())] +
                       "' has an outgoing transition";
      return report;
    }
  }

  const std::uint64_t n = m.config_count();
  if (n > kValidationCap) throw ResourceError("validate: configuration space above exhaustive cap");
  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  const auto nq = static_cast<std::uint64_t>(m.states().size());
  std::vector<std::uint64_t> succ(n, kNone);
  std::vector<std::uint64_t> pred(n, kNone);

  for (std::uint64_t i = 0; i < n; ++i) {
    const auto next = m.step_index(i);
    if (!next) continue;
    succ[i] = *next;
    if (pred[*next] != kNone) {
      report.failure = ValidationFailure::NotInjective;
      report.witness = std::make_pair(pred[*next], i);
      report.message = "configurations " + std::to_string(pred[*next]) + " and " + std::to_string(i) +
                       " share successor " + std::to_string(*next);
      return report;
    }
    pred[*next] = i;
  }

  for (std::uint64_t i = 0; i < n; ++i) {
    if (succ[i] != kNone && succ[i] % nq == static_cast<std::uint64_t>(m.start_state())) {
      report.failure = ValidationFailure::StartHasPredecessor;
      report.witness = std::make_pair(i, succ[i]);
      report.message = "start-state configuration " + std::to_string(succ[i]) + " has predecessor " +
                       std::to_string(i);
      return report;
    }
  }

  // With in- and out-degree <= 1, nodes not reachable from a source lie on cycles.
  std::vector<char> visited(n, 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (pred[i] != kNone) continue;
    for (std::uint64_t v = i; v != kNone && !visited[v]; v = succ[v]) visited[v] = 1;
  }
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!visited[i]) {
      report.failure = ValidationFailure::Cycle;
      report.witness = std::make_pair(i, succ[i]);
      report.message = "configuration " + std::to_string(i) + " lies on a cycle";
      return report;
    }
  }
  report.message = "ok";
  return report;
}

RowOracleMatrix augmented_adjacency(const ReversibleTM& m, std::string_view input) {
  if (const auto report = validate(m); !report.ok()) {
    throw ContractError("augmented_adjacency: invalid machine: " + report.message);
  }
  auto machine = std::make_shared<const ReversibleTM>(m);
  const std::uint64_t s = m.encode(m.start_config(input));
  const std::uint64_t t = m.encode(m.accept_config(input));

  auto rows = [machine, s, t](std::uint64_t i) {
    if (i == t) return SparseRow{{s, 1}};
    SparseRow r;
    if (const auto next = machine->step_index(i)) r.push_back({*next, 1});
    if (i != s) r.push_back({i, 1});
    return r;
  };
  auto cols = [machine, s, t](std::uint64_t j) {
    SparseRow c;
    for (auto p : machine->predecessors(j)) {
      if (p != t) c.push_back({p, 1});
    }
    if (j == s) {
      c.push_back({t, 1});
    } else if (j != t) {
      c.push_back({j, 1});
    }
    return c;
  };
  return RowOracleMatrix(m.config_count(), 2, 1, rows, 2, cols);
}

double reduction_gap_bound(std::uint64_t dim) {
  // 2(1 - cos x) = 4 sin^2(x/2), evaluated without cancellation.
  const double x = std::numbers::pi / (2.0 * static_cast<double>(dim) + 1.0);
  const double s = std::sin(x / 2.0);
  return 4.0 * s * s;
}

GappedInstance reduce_to_gapped(const ReversibleTM& m, std::string_view input) {
  RowOracleMatrix gram = ata_oracle(augmented_adjacency(m, input));
  const double bound = reduction_gap_bound(gram.dim());
  int g = static_cast<int>(std::ceil(-std::log2(bound)));
  while (std::ldexp(1.0, -g) > bound) ++g;
  return GappedInstance{std::move(gram), g, bound};
}

}  // namespace qmaexp
