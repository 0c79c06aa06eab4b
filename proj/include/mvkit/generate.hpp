#pragma once

// Seeded random groups, homs, exact rows and valid Milnor ladders.
//
// Rows are homology sequences of two-term complexes C_1 -> C_0 that are
// degreewise split extensions C' -> C -> C'' with differential
// [[d', kappa], [0, d'']]. Ladders come from chain maps between two such
// complexes that respect the splitting, so exactness and commutativity hold
// by construction.

#include "mvkit/milnor.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace mvkit {

struct TrialConfig {
  std::uint64_t seed = 42;
  std::size_t trials = 500;
  unsigned max_order = 64;   // largest torsion invariant
  unsigned max_rank = 2;     // largest free rank
  unsigned max_factors = 3;  // largest number of cyclic factors

  /// InputError unless max_order >= 1 and max_factors >= 1.
  void check() const;
};

/// mt19937_64 with bounded draws by rejection, so sequences are identical on
/// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [lo, hi].
  long uniform(long lo, long hi);
  bool coin() { return uniform(0, 1) == 1; }
  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Independent stream for trial t of a suite.
Rng trial_rng(std::uint64_t seed, std::size_t trial);

FgGroup gen_random_group(const TrialConfig& cfg, Rng& rng);
/// Free coordinates of images are drawn from [-bound, bound].
Hom gen_random_hom(const FgGroup& src, const FgGroup& tgt, Rng& rng, long bound = 3);

/// Automorphism of g given by a random unimodular change of presentation.
Hom random_automorphism(const FgGroup& g, Rng& rng);
/// Injective hom into g from a subgroup generated by random elements.
Hom random_injection_into(const FgGroup& g, Rng& rng);
/// Surjective hom from g onto a quotient by random elements.
Hom random_surjection_from(const FgGroup& g, Rng& rng);

struct SplitComplex {
  FgGroup c1p, c0p, c1pp, c0pp;  // C'_1, C'_0, C''_1, C''_0
  Hom dp;     // C'_1 -> C'_0
  Hom kappa;  // C''_1 -> C'_0
  Hom dpp;    // C''_1 -> C''_0

  DirectSum c1() const { return direct_sum(c1p, c1pp); }
  DirectSum c0() const { return direct_sum(c0p, c0pp); }
  Hom differential() const;
};

/// Degreewise maps [[phi', sigma], [0, phi'']] commuting with the differentials.
struct SplitMorphism {
  Hom phi1p, phi0p, phi1pp, phi0pp;
  Hom sigma1, sigma0;  // C''_k -> C'_k of the target
};

SplitComplex gen_random_complex(const TrialConfig& cfg, Rng& rng);

/// H_1 C' -> H_1 C -> H_1 C'' -> H_0 C' -> H_0 C -> H_0 C''.
ExactRow homology_row(const SplitComplex& c);
/// The six maps induced on homology by a chain map.
std::vector<Hom> induced_verticals(const SplitComplex& a, const SplitComplex& b,
                                   const SplitMorphism& f);
/// InputError if f is not a chain map.
void check_chain_map(const SplitComplex& a, const SplitComplex& b, const SplitMorphism& f);

ExactRow gen_random_exact_row(const TrialConfig& cfg, Rng& rng);

enum class LadderStrategy { extension, identity, zero, isomorphism };
const char* strategy_name(LadderStrategy s);

/// Picks a strategy at random (mostly extension).
KLadder gen_random_ladder(const TrialConfig& cfg, Rng& rng);
KLadder gen_random_ladder(const TrialConfig& cfg, Rng& rng, LadderStrategy strategy);
/// Conjugates the b_row by random automorphisms of its nodes.
KLadder transport_ladder(const KLadder& k, Rng& rng);

/// Both rows conjugated by random automorphisms theta_a, theta_b of their
/// nodes; verticals become theta_b v theta_a^-1.
struct Relabeled {
  KLadder ladder;
  std::vector<Hom> theta_a;
  std::vector<Hom> theta_b;
};
Relabeled relabel_ladder(const KLadder& k, Rng& rng);

}  // namespace mvkit
