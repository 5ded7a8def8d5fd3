#pragma once

// CNF data model: variables, literals, clauses, formulas, assignments,
// restriction F_a, evaluation and DIMACS I/O.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ppsz {

/// A Boolean variable, identified by a positive index. Index 0 is reserved
/// (the frozen-tree dummy label uses it).
struct Var {
  std::uint32_t index = 0;

  constexpr Var() = default;
  constexpr explicit Var(std::uint32_t i) : index(i) {}

  friend constexpr auto operator<=>(Var, Var) = default;
};

/// Literal over a variable. Encoded as 2*var + polarity so that the natural
/// order is (variable, negative before positive).
class Literal {
 public:
  constexpr Literal() = default;
  constexpr Literal(Var v, bool positive) : code_(2 * v.index + (positive ? 1u : 0u)) {}

  static constexpr Literal positive(Var v) { return {v, true}; }
  static constexpr Literal negative(Var v) { return {v, false}; }

  static Literal from_dimacs(long value) {
    if (value == 0) throw std::invalid_argument("literal 0 is the clause terminator");
    return {Var(static_cast<std::uint32_t>(value < 0 ? -value : value)), value > 0};
  }

  constexpr Var var() const { return Var(code_ >> 1); }
  constexpr bool is_positive() const { return (code_ & 1u) != 0; }
  constexpr Literal operator~() const {
    Literal l;
    l.code_ = code_ ^ 1u;
    return l;
  }
  constexpr std::uint32_t code() const { return code_; }
  long to_dimacs() const {
    return is_positive() ? static_cast<long>(var().index) : -static_cast<long>(var().index);
  }

  friend constexpr auto operator<=>(Literal, Literal) = default;

 private:
  std::uint32_t code_ = 0;
};

inline std::string to_string(Literal l) { return std::to_string(l.to_dimacs()); }

/// A clause: a set of literals over distinct variables, kept sorted.
/// The empty clause is the falsified sentinel.
class Clause {
 public:
  Clause() = default;

  /// Sorts and deduplicates; throws if the clause contains both x and its negation.
  explicit Clause(std::vector<Literal> lits) : lits_(std::move(lits)) {
    std::sort(lits_.begin(), lits_.end());
    lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
    for (std::size_t i = 1; i < lits_.size(); ++i) {
      if (lits_[i].var() == lits_[i - 1].var())
        throw std::invalid_argument("tautological clause: variable " +
                                    std::to_string(lits_[i].var().index) +
                                    " occurs with both polarities");
    }
  }
  Clause(std::initializer_list<long> dimacs) {
    std::vector<Literal> lits;
    for (long v : dimacs) lits.push_back(Literal::from_dimacs(v));
    *this = Clause(std::move(lits));
  }

  std::span<const Literal> literals() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }

  bool contains(Literal l) const { return std::binary_search(lits_.begin(), lits_.end(), l); }
  bool mentions(Var v) const {
    return contains(Literal::negative(v)) || contains(Literal::positive(v));
  }

  friend auto operator<=>(const Clause& a, const Clause& b) { return a.lits_ <=> b.lits_; }
  friend bool operator==(const Clause& a, const Clause& b) = default;

 private:
  std::vector<Literal> lits_;
};

enum class Provenance : std::uint8_t { fixed, forced, guessed };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::forced: return "forced";
    case Provenance::guessed: return "guessed";
    default: return "fixed";
  }
}

/// Ordered list of literals over distinct variables with per-entry
/// provenance. Lookup by variable is O(1).
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::span<const Literal> lits, Provenance p = Provenance::fixed) {
    for (Literal l : lits) add(l, p);
  }
  Assignment(std::initializer_list<long> dimacs) {
    for (long v : dimacs) add(Literal::from_dimacs(v));
  }

  void add(Literal l, Provenance p = Provenance::fixed) {
    const auto i = l.var().index;
    if (i >= value_.size()) value_.resize(i + 1, kUnassigned);
    if (value_[i] != kUnassigned)
      throw std::logic_error("variable " + std::to_string(i) + " assigned twice");
    value_[i] = l.is_positive() ? 1 : 0;
    lits_.push_back(l);
    prov_.push_back(p);
  }

  void pop_back() {
    value_[lits_.back().var().index] = kUnassigned;
    lits_.pop_back();
    prov_.pop_back();
  }

  void clear() {
    for (Literal l : lits_) value_[l.var().index] = kUnassigned;
    lits_.clear();
    prov_.clear();
  }

  std::optional<bool> value(Var v) const {
    if (v.index >= value_.size() || value_[v.index] == kUnassigned) return std::nullopt;
    return value_[v.index] == 1;
  }
  bool assigns(Var v) const { return v.index < value_.size() && value_[v.index] != kUnassigned; }
  bool satisfies(Literal l) const {
    auto val = value(l.var());
    return val && *val == l.is_positive();
  }
  bool falsifies(Literal l) const {
    auto val = value(l.var());
    return val && *val != l.is_positive();
  }

  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  std::span<const Literal> literals() const { return lits_; }
  Provenance provenance(std::size_t i) const { return prov_[i]; }

  /// Literals sorted by variable: the canonical form used for set equality.
  std::vector<Literal> sorted_literals() const {
    std::vector<Literal> out = lits_;
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Var> variables() const {
    std::vector<Var> out;
    out.reserve(lits_.size());
    for (Literal l : lits_) out.push_back(l.var());
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Set equality, ignoring order and provenance.
  bool same_literals(const Assignment& other) const {
    return sorted_literals() == other.sorted_literals();
  }

 private:
  static constexpr std::int8_t kUnassigned = -1;
  std::vector<Literal> lits_;
  std::vector<Provenance> prov_;
  std::vector<std::int8_t> value_;
};

/// A CNF formula: a set of clauses over an explicit variable set V.
///
/// V is kept explicitly (not derived from the clauses) so that variables
/// that occur in no clause still count as free, and so that restriction
/// removes exactly the assigned variables. Clauses are stored sorted and
/// deduplicated, which makes every "choose a clause" step deterministic.
class Formula {
 public:
  Formula() = default;

  Formula(std::vector<Var> vars, std::vector<Clause> clauses, std::size_t width_bound = 0)
      : vars_(std::move(vars)), clauses_(std::move(clauses)) {
    std::sort(vars_.begin(), vars_.end());
    if (std::adjacent_find(vars_.begin(), vars_.end()) != vars_.end())
      throw std::invalid_argument("duplicate variable in formula");
    if (!vars_.empty() && vars_.front().index == 0)
      throw std::invalid_argument("variable index 0 is reserved");
    std::sort(clauses_.begin(), clauses_.end());
    clauses_.erase(std::unique(clauses_.begin(), clauses_.end()), clauses_.end());
    width_ = width_bound;
    for (const Clause& c : clauses_) {
      width_ = std::max(width_, c.size());
      if (c.empty()) has_empty_ = true;
      for (Literal l : c) {
        if (!std::binary_search(vars_.begin(), vars_.end(), l.var()))
          throw std::invalid_argument("clause mentions variable " +
                                      std::to_string(l.var().index) + " outside V");
      }
    }
    build_occurrences();
  }

  /// Formula over V = {x1..xn}.
  static Formula over(std::uint32_t n, std::vector<Clause> clauses) {
    std::vector<Var> vars;
    vars.reserve(n);
    for (std::uint32_t i = 1; i <= n; ++i) vars.emplace_back(i);
    return Formula(std::move(vars), std::move(clauses));
  }

  /// Formula whose variable set is exactly the variables of its clauses.
  static Formula over_own_variables(std::vector<Clause> clauses) {
    std::vector<Var> vars;
    for (const Clause& c : clauses)
      for (Literal l : c) vars.push_back(l.var());
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return Formula(std::move(vars), std::move(clauses));
  }

  std::span<const Var> variables() const { return vars_; }
  std::size_t variable_count() const { return vars_.size(); }
  std::span<const Clause> clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  /// Upper bound on clause width (k). Restriction preserves the parent's k.
  std::size_t width() const { return width_; }
  bool has_empty_clause() const { return has_empty_; }
  bool has_variable(Var v) const { return std::binary_search(vars_.begin(), vars_.end(), v); }
  std::uint32_t max_variable() const { return vars_.empty() ? 0 : vars_.back().index; }

  /// Indices of clauses containing literal l.
  std::span<const std::uint32_t> occurrences(Literal l) const {
    if (l.code() >= occ_.size()) return {};
    return occ_[l.code()];
  }

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.vars_ == b.vars_ && a.clauses_ == b.clauses_;
  }

 private:
  void build_occurrences() {
    occ_.assign(2 * (max_variable() + 1), {});
    for (std::uint32_t i = 0; i < clauses_.size(); ++i)
      for (Literal l : clauses_[i]) occ_[l.code()].push_back(i);
  }

  std::vector<Var> vars_;
  std::vector<Clause> clauses_;
  std::vector<std::vector<std::uint32_t>> occ_;
  std::size_t width_ = 0;
  bool has_empty_ = false;
};

/// F_a: drop clauses satisfied by a, delete falsified literals from the rest,
/// and remove V(a) from the variable set. May produce the empty clause.
inline Formula restrict(const Formula& f, const Assignment& a) {
  std::vector<Clause> out;
  out.reserve(f.size());
  for (const Clause& c : f.clauses()) {
    bool sat = false;
    std::vector<Literal> rest;
    rest.reserve(c.size());
    for (Literal l : c) {
      if (a.satisfies(l)) {
        sat = true;
        break;
      }
      if (!a.falsifies(l)) rest.push_back(l);
    }
    if (!sat) out.emplace_back(std::move(rest));
  }
  std::vector<Var> vars;
  vars.reserve(f.variable_count());
  for (Var v : f.variables())
    if (!a.assigns(v)) vars.push_back(v);
  return Formula(std::move(vars), std::move(out), f.width());
}

enum class Evaluation { satisfied, falsified, undetermined };

inline const char* to_string(Evaluation e) {
  switch (e) {
    case Evaluation::satisfied: return "satisfied";
    case Evaluation::falsified: return "falsified";
    default: return "undetermined";
  }
}

inline bool clause_satisfied(const Clause& c, const Assignment& a) {
  return std::any_of(c.begin(), c.end(), [&](Literal l) { return a.satisfies(l); });
}

inline bool clause_falsified(const Clause& c, const Assignment& a) {
  return std::all_of(c.begin(), c.end(), [&](Literal l) { return a.falsifies(l); });
}

inline Evaluation evaluate(const Formula& f, const Assignment& a) {
  bool all_sat = true;
  for (const Clause& c : f.clauses()) {
    if (clause_falsified(c, a)) return Evaluation::falsified;
    if (all_sat && !clause_satisfied(c, a)) all_sat = false;
  }
  return all_sat ? Evaluation::satisfied : Evaluation::undetermined;
}

/// True iff a satisfies every clause and assigns every variable of f.
inline bool is_solution(const Formula& f, const Assignment& a) {
  if (evaluate(f, a) != Evaluation::satisfied) return false;
  return std::all_of(f.variables().begin(), f.variables().end(),
                     [&](Var v) { return a.assigns(v); });
}

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses DIMACS CNF. Duplicate literals inside a clause are merged;
/// tautological clauses and out-of-range literals are rejected.
inline Formula parse_dimacs(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  long declared_vars = -1;
  long declared_clauses = -1;
  std::vector<Clause> clauses;
  std::vector<Literal> current;
  std::size_t clause_line = 0;

  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    char c0 = line[first];
    if (c0 == 'c') continue;
    if (c0 == '%') break;  // SATLIB end marker
    if (c0 == 'p') {
      if (declared_vars >= 0) throw ParseError(lineno, "duplicate problem line");
      std::istringstream hs(line.substr(first));
      std::string p, fmt, extra;
      if (!(hs >> p >> fmt >> declared_vars >> declared_clauses) || p != "p" || fmt != "cnf" ||
          declared_vars < 0 || declared_clauses < 0 || (hs >> extra))
        throw ParseError(lineno, "malformed problem line, expected 'p cnf <vars> <clauses>'");
      continue;
    }
    if (declared_vars < 0) throw ParseError(lineno, "clause data before 'p cnf' header");
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      char* end = nullptr;
      long v = std::strtol(tok.c_str(), &end, 10);
      if (end == tok.c_str() || *end != '\0') throw ParseError(lineno, "invalid token '" + tok + "'");
      if (current.empty() && v != 0) clause_line = lineno;
      if (v == 0) {
        try {
          clauses.emplace_back(std::move(current));
        } catch (const std::invalid_argument& e) {
          throw ParseError(clause_line ? clause_line : lineno, e.what());
        }
        current.clear();
        clause_line = 0;
        continue;
      }
      if (std::labs(v) > declared_vars)
        throw ParseError(lineno, "literal " + tok + " exceeds declared variable count " +
                                     std::to_string(declared_vars));
      current.push_back(Literal::from_dimacs(v));
    }
  }
  if (declared_vars < 0) throw ParseError(lineno, "missing 'p cnf' header");
  if (!current.empty()) throw ParseError(clause_line, "clause not terminated by 0");
  return Formula::over(static_cast<std::uint32_t>(declared_vars), std::move(clauses));
}

inline Formula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

/// Canonical DIMACS: header with the largest variable index, clauses in
/// stored (sorted) order.
inline std::string to_dimacs(const Formula& f) {
  std::ostringstream out;
  out << "p cnf " << f.max_variable() << ' ' << f.size() << '\n';
  for (const Clause& c : f.clauses()) {
    for (Literal l : c) out << l.to_dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

}  // namespace ppsz
