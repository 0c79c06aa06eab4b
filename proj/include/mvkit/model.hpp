#pragma once

// Text format for groups, homs, rows and ladders.
//
//   # comment
//   group G = [2, 4, 0]                    Z/2 + Z/4 + Z
//   group P = relations [[2, 1], [0, 3]]   generators x relators
//   hom f : G -> H = [[1, 0, 0], [0, 2, 0]]   column j = image of generator j
//   hom z : G -> H = zero
//   hom e : G -> G = id
//   row R : G -f-> H -g-> K
//   ladder L { top: R, bottom: S, verticals: [u, v, w] }
//   ladder M degree 0 { arow groups: ...; arow homs: ...; brow groups: ...;
//                       brow homs: ...; verticals: ... }
//
// Lines starting with '@' are report records and are skipped.

#include "mvkit/milnor.hpp"

#include <map>
#include <string>
#include <vector>

namespace mvkit {

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct NamedLadder {
  std::string name;
  std::size_t line = 0;
  KLadder ladder;
};

struct NamedDiagram {
  std::string name;
  std::size_t line = 0;
  LadderDiagram diagram;
};

struct Model {
  std::map<std::string, FgGroup> groups;
  std::map<std::string, Hom> homs;
  std::map<std::string, ExactRow> rows;
  std::vector<NamedDiagram> diagrams;
  std::vector<NamedLadder> ladders;
  /// Declaration order as (kind, name).
  std::vector<std::pair<std::string, std::string>> order;

  const NamedLadder* find_ladder(const std::string& name) const;
  const NamedDiagram* find_diagram(const std::string& name) const;
};

/// With validate set, every Milnor ladder must pass validate_ladder; the
/// first failure throws InvalidLadder naming the ladder and its line.
Model parse_model(const std::string& text, bool validate = true);
Model parse_model_file(const std::string& path, bool validate = true);

/// One integer matrix, either as a literal [[..], ..] or as whitespace
/// separated rows of integers, one row per line.
IntMatrix parse_matrix(const std::string& text);

std::string read_file(const std::string& path);

/// Emits declarations that parse back to the same objects. Groups are written
/// in canonical form and shared between equal invariant lists.
class ModelWriter {
 public:
  /// Generated group names are prefix + "G" + index.
  explicit ModelWriter(std::string prefix = "") : prefix_(std::move(prefix)) {}

  std::string group(const FgGroup& g);
  std::string hom(const std::string& name, const Hom& h);
  std::string row(const std::string& name, const ExactRow& r);
  void diagram(const std::string& name, const LadderDiagram& d);
  void ladder(const std::string& name, const KLadder& k);
  void comment(const std::string& text);

  std::string str() const { return out_; }

 private:
  std::string prefix_;
  std::map<std::vector<Integer>, std::string> group_names_;
  std::string out_;
};

}  // namespace mvkit
