#pragma once

// Exact rows, ladders, pullbacks/pushouts with their universal maps, the
// stability and lifting constructions for exactness, and the five lemma.

#include "mvkit/group.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mvkit {

/// A universal-property commuting condition failed.
class CommuteError : public Error {
 public:
  CommuteError(const std::string& what, std::size_t witness) : Error(what), witness_(witness) {}
  /// Source generator on which the two composites differ.
  std::size_t witness() const { return witness_; }

 private:
  std::size_t witness_;
};

/// A hypothesis of a construction (exactness, injectivity, surjectivity) fails.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Chain G_0 -> G_1 -> ... -> G_n. Nodes are numbered from 0; only interior
/// nodes 1..n-1 can carry an exactness claim.
class ExactRow {
 public:
  ExactRow() = default;
  /// Claims exactness at every interior node.
  explicit ExactRow(std::vector<Hom> homs);
  ExactRow(std::vector<Hom> homs, std::set<std::size_t> claimed);

  std::size_t num_nodes() const { return homs_.empty() ? 0 : homs_.size() + 1; }
  std::size_t num_maps() const { return homs_.size(); }
  const FgGroup& node(std::size_t k) const;
  const Hom& map(std::size_t k) const { return homs_.at(k); }
  const std::vector<Hom>& maps() const { return homs_; }
  const std::set<std::size_t>& claimed() const { return claimed_; }

 private:
  std::vector<Hom> homs_;
  std::set<std::size_t> claimed_;
};

struct NodeExactness {
  std::size_t node = 0;
  bool complex_ok = true;  // im(in) inside ker(out)
  bool ker_in_im = true;   // ker(out) inside im(in)
  /// Offending generator: of the incoming source when !complex_ok, of the
  /// kernel of the outgoing map when !ker_in_im.
  std::optional<std::size_t> witness;

  bool exact() const { return complex_ok && ker_in_im; }
};

struct ExactnessReport {
  std::vector<NodeExactness> nodes;

  bool all_exact() const;
  /// One line per failing node, e.g. "not exact at node 2: ker not in im (kernel generator 0)".
  std::vector<std::string> failures() const;
};

NodeExactness check_node_exact(const Hom& in, const Hom& out, std::size_t node);
ExactnessReport check_row_exact(const ExactRow& row);

struct Cospan {
  Hom f;  // B -> D
  Hom g;  // C -> D
};

struct Span {
  Hom f;  // A -> B
  Hom g;  // A -> C
};

/// P = ker(B + C -> D, (b, c) |-> f b - g c).
struct Pullback {
  Cospan cospan;
  FgGroup object;
  Hom to_b;
  Hom to_c;
  Hom incl;  // P -> B + C
  DirectSum sum;
  bool jointly_monic = false;
};
Pullback pullback(const Cospan& cospan);

/// Q = coker(A -> B + C, a |-> (f a, -g a)).
struct Pushout {
  Span span;
  FgGroup object;
  Hom from_b;
  Hom from_c;
  Hom proj;  // B + C -> Q
  DirectSum sum;
  bool jointly_epic = false;
};
Pushout pushout(const Span& span);

/// The map T -> P induced by u: T -> B, v: T -> C with f u = g v. Throws
/// CommuteError otherwise.
Hom into_pullback(const Pullback& p, const Hom& u, const Hom& v);
/// The map Q -> T induced by u: B -> T, v: C -> T with u f = v g.
Hom from_pushout(const Pushout& q, const Hom& u, const Hom& v);

/// Output of the four exactness constructions. The new row is always
/// A -> X -> Y -> D; the two comparison maps connect its middle nodes to the
/// middle nodes of the given row (direction as in the construction).
struct ConstructedRow {
  ExactRow row;
  ExactnessReport report;
  Hom compare_b;
  Hom compare_c;
};

/// Row A -f-> B -g-> C -h-> D exact at B and C, i2: C1 -> C injective.
/// Returns A -> B1 -> C1 -> D with B1 the pullback of g along i2.
ConstructedRow stability_pullback(const ExactRow& row, const Hom& i2);
/// Row exact at B and C, pi1: B -> B2 surjective. Returns A -> B2 -> C2 -> D
/// with C2 the pushout of g along pi1.
ConstructedRow stability_pushout(const ExactRow& row, const Hom& pi1);
/// Top row A -> B1 -> C1 -> D exact, i1: B1 -> B injective. Returns the
/// bottom row A -> B -> C -> D with C the pushout of g1 along i1.
ConstructedRow lifting_pushout(const ExactRow& top, const Hom& i1);
/// Bottom row A -> B2 -> C2 -> D exact, pi2: C -> C2 surjective and c: A -> C
/// with pi2 c = g2 f2. Returns A -> B -> C -> D with B the pullback of g2
/// along pi2 and f = (f2, c).
ConstructedRow lifting_pullback(const ExactRow& bottom, const Hom& pi2, const Hom& c);

/// Two rows joined by one vertical map per node.
struct LadderDiagram {
  ExactRow top;
  ExactRow bottom;
  std::vector<Hom> verticals;

  /// Throws InputError on shape or endpoint mismatch.
  void check_shape() const;
  /// Index of a source generator where square k (nodes k -> k+1) fails.
  std::optional<std::size_t> square_failure(std::size_t k) const;
};

/// Structural violations of a ladder: exactness claims of both rows and the
/// commuting squares, each as a one-line description.
std::vector<std::string> ladder_violations(const LadderDiagram& ladder,
                                           const std::string& top_label = "top row",
                                           const std::string& bottom_label = "bottom row");

struct FiveLemmaReport {
  std::vector<std::string> violations;  // failed hypotheses, empty if all hold
  bool conclusion_claimed = false;
  bool middle_is_iso = false;

  bool passed() const { return violations.empty() && middle_is_iso; }
};

/// Five-node ladder. When both rows are exact at nodes 1..3, all squares
/// commute and verticals 0, 1, 3, 4 are isomorphisms, re-checks that
/// vertical 2 is an isomorphism. Otherwise lists the failed hypotheses.
FiveLemmaReport five_lemma_verify(const LadderDiagram& ladder);

}  // namespace mvkit
