#pragma once

// Mayer-Vietoris constructions on the K-group ladder of a Milnor square
//
//     A  --f-->  B
//     |          |
//    A/I --f̄--> B/I
//
// One KLadder holds one degree window: the rows
//   K_{i+1}(R,I) -> K_{i+1}(R) -> K_{i+1}(R/I) -> K_i(R,I) -> K_i(R) -> K_i(R/I)
// for R = A (a_row) and R = B (b_row), joined by the maps induced by f.
// Node 3's vertical is the relative map eps_i, node 0's is eps_{i+1}.

#include "mvkit/diagram.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mvkit {

/// Positions of a ladder row (0-based).
enum LadderNode : std::size_t {
  kRelHi = 0,  // K_{i+1}(R, I)
  kAbsHi = 1,  // K_{i+1}(R)
  kQuoHi = 2,  // K_{i+1}(R/I)
  kRelLo = 3,  // K_i(R, I)
  kAbsLo = 4,  // K_i(R)
  kQuoLo = 5,  // K_i(R/I)
};

struct KLadder {
  int degree = 0;
  ExactRow a_row;
  ExactRow b_row;
  std::vector<Hom> verticals;

  const FgGroup& a(LadderNode n) const { return a_row.node(n); }
  const FgGroup& b(LadderNode n) const { return b_row.node(n); }

  const Hom& eps() const { return verticals.at(kRelLo); }
  const Hom& eps_hi() const { return verticals.at(kRelHi); }
  /// K_{i+1}(A/I) -> K_i(A, I)
  const Hom& boundary_a() const { return a_row.map(kQuoHi); }
  /// K_i(A, I) -> K_i(A)
  const Hom& alpha() const { return a_row.map(kRelLo); }
  /// K_{i+1}(B/I) -> K_i(B, I)
  const Hom& beta() const { return b_row.map(kQuoHi); }

  LadderDiagram as_ladder() const { return {a_row, b_row, verticals}; }
};

struct LadderValidation {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

class InvalidLadder : public Error {
 public:
  explicit InvalidLadder(LadderValidation report);
  const LadderValidation& report() const { return report_; }

 private:
  LadderValidation report_;
};

/// Rows exact at interior nodes 1..4 and all five squares commuting. Shape
/// errors (wrong node count, mismatched endpoints) throw InputError.
LadderValidation validate_ladder(const KLadder& k);
void require_valid(const KLadder& k);

enum class Level { lo, hi };

/// ker(eps) inside K(A, I) at degree i (lo) or i+1 (hi).
Subgroup excision_kernel(const KLadder& k, Level level);

/// eps_i = i2 o pi1 through K_i(A,I)/ker(eps_i).
struct EpsilonFactorization {
  Subgroup ker_eps;
  FgGroup quotient;  // K_i(A,I)/ker eps_i
  Hom pi1;           // K_i(A,I) ->> quotient
  Hom i2;            // quotient >-> K_i(B,I)
};
EpsilonFactorization factor_epsilon(const KLadder& k);

/// quo-K_i(A) = K_i(A)/alpha(ker eps_i), built as a pushout and compared
/// with the direct quotient.
struct QuoK {
  FgGroup group;
  Hom pi;  // K_i(A) -> quo-K
  Hom q;   // K_i(A,I)/ker eps -> quo-K
  Pushout pushout;
  Quotient direct;
  Hom comparison;  // pushout object -> direct quotient
  bool constructions_agree = false;
};

/// sub-K_{i+1}(B/I) = { x : beta x in im eps_i }, built as a pullback and
/// compared with the preimage.
struct SubK {
  FgGroup group;
  Hom incl;  // sub-K >-> K_{i+1}(B/I)
  Hom proj;  // sub-K -> K_i(A,I)/ker eps
  Pullback pullback;
  Subgroup direct;
  bool constructions_agree = false;
};

struct MVSegment {
  std::vector<FgGroup> terms;
  std::vector<Hom> maps;
  ExactnessReport report;

  ExactRow row() const { return ExactRow(maps); }
};

/// The pullback X_i of (dbar, pi) and phi: X_i -> K_{i+1}(B/I).
struct XData {
  FgGroup group;
  Hom proj_sub;  // X -> sub-K
  Hom proj_a;    // X -> K_i(A)
  Hom phi;
  Pullback pullback;
  bool kernel_ok = false;     // ker phi = alpha(ker eps) via proj_a
  bool image_ok = false;      // im phi = sub-K
  bool proj_sub_onto = false;
};

/// Every piece derived from one valid ladder.
struct MilnorAnalysis {
  KLadder ladder;
  EpsilonFactorization eps;
  QuoK quo;
  SubK sub;
  Hom dbar;         // sub-K -> quo-K
  Hom h1;           // K_{i+1}(A/I) -> sub-K
  Hom g;            // K_{i+1}(B) -> sub-K
  Hom h2;           // quo-K -> K_i(B)
  Hom h2_quo;       // quo-K -> K_i(A/I)
  DirectSum sum_hi;  // K_{i+1}(A/I) + K_{i+1}(B)
  DirectSum sum_lo;  // K_i(A/I) + K_i(B)
  /// The stacked rows a_row, pushout row, pullback row, b_row as three ladders.
  std::vector<LadderDiagram> glued;
  std::vector<std::string> glued_violations;
  XData x;
};

/// Throws InvalidLadder for invalid input and CommuteError naming the square
/// if a universal map cannot be induced.
MilnorAnalysis analyze(const KLadder& k);

QuoK quo_k(const KLadder& k);
SubK sub_k(const KLadder& k);
Hom connecting_bar(const KLadder& k);

/// K_{i+1}(A/I) + K_{i+1}(B) -> sub-K -> quo-K -> K_i(A/I) + K_i(B).
MVSegment weibel_segment(const MilnorAnalysis& m);
MVSegment weibel_segment(const KLadder& k);

XData build_x_and_phi(const KLadder& k);

/// K_{i+1}(A/I) + K_{i+1}(B) -> X_i -> K_i(A) -> K_i(A/I) + K_i(B).
MVSegment mv2_segment(const MilnorAnalysis& m);
MVSegment mv2_segment(const KLadder& k);

/// When every vertical is an isomorphism: the classical window
/// K_{i+1}(A/I) + K_{i+1}(B) -> K_{i+1}(B/I) -> K_i(A) -> K_i(A/I) + K_i(B)
/// with boundary alpha o eps^-1 o beta, and its comparison with mv2 along phi.
struct ExcisionReport {
  std::vector<std::string> violations;
  MVSegment classical;
  bool passed() const { return violations.empty(); }
};
ExcisionReport excision_check(const MilnorAnalysis& m);

/// Group-level data for K_i(A, B, I) and the maps around it.
struct BirelativeData {
  FgGroup group;
  Hom to_relative;    // K_i(A,B,I) -> K_i(A,I)
  Hom from_cokernel;  // coker(eps_{i+1}) -> K_i(A,B,I)
  std::optional<Hom> psi;    // K_i(A,B,I) -> X_i
  std::optional<Hom> delta;  // K_{i+1}(B/I) -> K_{i-1}(A,B,I)
};

struct BirelativeReport {
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

/// coker(eps_{i+1}) of the ladder, as used for BirelativeData endpoints.
Quotient eps_hi_cokernel(const KLadder& k);

/// Throws InputError when endpoints do not match the window.
BirelativeReport check_birelative(const MilnorAnalysis& m, const BirelativeData& data);
BirelativeReport check_birelative(const KLadder& k, const BirelativeData& data);

/// Data for the split extension coker(eps_{i+1}) + ker(eps_i), with psi and
/// delta. delta lands in coker(eps_i) + extra.
BirelativeData split_birelative_data(const MilnorAnalysis& m, const FgGroup& extra = FgGroup());

}  // namespace mvkit
