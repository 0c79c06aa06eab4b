#pragma once

// Finitely generated abelian groups, their elements and homomorphisms.
//
// A group is given by a presentation Z^n / R Z^k and canonicalized through the
// Smith form of R into Z/d_1 + ... + Z/d_t + Z^f (d_1 | ... | d_t, d_j > 1).
// Homomorphism matrices and element coordinates always live in canonical
// coordinates, so two groups with the same invariant list are the same
// object as far as composition is concerned.

#include "mvkit/linalg.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mvkit {

/// A hom whose matrix does not respect the source relations.
class PresentationError : public Error {
 public:
  PresentationError(const std::string& what, std::size_t generator)
      : Error(what), generator_(generator) {}
  std::size_t generator() const { return generator_; }

 private:
  std::size_t generator_;
};

class FgGroup {
 public:
  /// The zero group.
  FgGroup();

  /// Cokernel of the relation matrix (rows = generators, columns = relators).
  static FgGroup from_relations(const IntMatrix& relations);
  /// Z/d_1 + Z/d_2 + ... with d = 0 meaning Z; entries need not be canonical.
  static FgGroup from_invariants(const std::vector<Integer>& factors);

  std::size_t presented_gens() const;
  const IntMatrix& relations() const;

  const std::vector<Integer>& invariants() const;
  std::size_t num_factors() const { return invariants().size(); }
  std::size_t free_rank() const;
  std::size_t torsion_factors() const { return num_factors() - free_rank(); }
  bool is_trivial() const { return num_factors() == 0; }
  bool is_finite() const { return free_rank() == 0; }
  /// Order of a finite group; InputError for infinite ones.
  Integer order() const;

  /// Presented coordinates -> canonical coordinates (num_factors x presented_gens).
  const IntMatrix& to_canonical() const;
  /// Canonical coordinates -> presented coordinates (presented_gens x num_factors).
  const IntMatrix& from_canonical() const;

  /// Relation lattice in canonical coordinates: one column d_j e_j per torsion factor.
  const IntMatrix& canonical_relations() const;

  /// Reduces every column of m (canonical coordinates) in place.
  void reduce(IntMatrix& m) const;
  bool is_zero_element(const IntMatrix& column) const;

  /// "Z/2 + Z/4 + Z", or "0".
  std::string str() const;
  /// "[2, 4, 0]", the literal form accepted by the model parser.
  std::string literal() const;

  /// Canonical groups compare by invariant list.
  friend bool operator==(const FgGroup& a, const FgGroup& b) {
    return a.invariants() == b.invariants();
  }

 private:
  struct Data;
  explicit FgGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

FgGroup make_group(const IntMatrix& relations);

/// Element in canonical coordinates; torsion coordinates lie in [0, d_j).
class GroupElement {
 public:
  GroupElement(FgGroup parent, IntMatrix coords);
  static GroupElement zero(const FgGroup& parent);

  const FgGroup& parent() const { return parent_; }
  const IntMatrix& coords() const { return coords_; }
  bool is_zero() const { return coords_.is_zero(); }

  friend GroupElement operator+(const GroupElement& a, const GroupElement& b);
  friend GroupElement operator-(const GroupElement& a);
  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.parent_ == b.parent_ && a.coords_ == b.coords_;
  }

 private:
  FgGroup parent_;
  IntMatrix coords_;
};

class Hom {
 public:
  /// Validating constructor; throws PresentationError naming the first source
  /// generator whose relation is not respected.
  Hom(FgGroup src, FgGroup tgt, IntMatrix mat);
  /// The map 0 -> 0.
  Hom() = default;

  /// For maps built from already well-defined ones (sums, composites, matrix
  /// changes of coordinates). Only reduces, does not validate.
  static Hom trusted(FgGroup src, FgGroup tgt, IntMatrix mat);

  static Hom identity(const FgGroup& g);
  static Hom zero(const FgGroup& src, const FgGroup& tgt);

  const FgGroup& src() const { return src_; }
  const FgGroup& tgt() const { return tgt_; }
  const IntMatrix& matrix() const { return mat_; }

  GroupElement operator()(const GroupElement& x) const;
  /// Image of a canonical coordinate column, reduced.
  IntMatrix apply(const IntMatrix& column) const;

 private:
  FgGroup src_;
  FgGroup tgt_;
  IntMatrix mat_;
};

Hom make_hom(const FgGroup& src, const FgGroup& tgt, const IntMatrix& mat);
/// Matrix given on presented generators of src and tgt; validated against the
/// presentation relations and then converted to canonical coordinates.
Hom make_hom_presented(const FgGroup& src, const FgGroup& tgt, const IntMatrix& mat);

/// g after f; InputError unless f.tgt == g.src.
Hom compose(const Hom& g, const Hom& f);
Hom operator+(const Hom& a, const Hom& b);
Hom operator-(const Hom& a, const Hom& b);
Hom operator-(const Hom& a);
Hom scale(const Integer& k, const Hom& h);

bool hom_equal(const Hom& f, const Hom& g);
bool is_zero_hom(const Hom& h);
/// Index of the first source generator on which f and g differ.
std::optional<std::size_t> first_difference(const Hom& f, const Hom& g);

/// Subgroup of an ambient group, represented by an injective hom into it.
class Subgroup {
 public:
  /// Throws InputError if incl is not injective.
  explicit Subgroup(Hom incl);
  /// The zero subgroup of the zero group.
  Subgroup() = default;

  static Subgroup whole(const FgGroup& g);
  static Subgroup zero(const FgGroup& g);

  const FgGroup& ambient() const { return incl_.tgt(); }
  const FgGroup& group() const { return incl_.src(); }
  const Hom& incl() const { return incl_; }

  bool contains(const IntMatrix& column) const;
  bool contains(const GroupElement& x) const { return contains(x.coords()); }
  /// Every generator of other lies in this subgroup.
  bool contains(const Subgroup& other) const;

 private:
  struct Trusted {};
  Subgroup(Trusted, Hom incl) : incl_(std::move(incl)) {}
  friend Subgroup subgroup_generated(const FgGroup&, const IntMatrix&);
  Hom incl_;
};

/// Equality as subgroups of one ambient group (mutual membership).
bool same_subgroup(const Subgroup& a, const Subgroup& b);

/// Subgroup generated by the columns of gens (canonical coordinates of g).
Subgroup subgroup_generated(const FgGroup& g, const IntMatrix& gens);

/// Whether column lies in the subgroup of g generated by the columns of gens.
bool in_span(const FgGroup& g, const IntMatrix& gens, const IntMatrix& column);

struct KernelResult {
  FgGroup group;
  Hom incl;
};
KernelResult kernel(const Hom& h);
Subgroup kernel_subgroup(const Hom& h);

Subgroup image(const Hom& h);

struct Quotient {
  FgGroup group;
  Hom proj;
};
Quotient cokernel(const Hom& h);
/// Quotient of the ambient group by a subgroup.
Quotient quotient(const Subgroup& s);
/// Quotient by the subgroup generated by incl's image; rejects non-injective
/// input.
Quotient quotient_by_injection(const Hom& incl);

struct DirectSum {
  FgGroup sum;
  Hom in1, in2, pr1, pr2;
};
DirectSum direct_sum(const FgGroup& g, const FgGroup& h);
/// T -> G + H, t |-> (u t, v t).
Hom pair_into(const DirectSum& ds, const Hom& u, const Hom& v);
/// G + H -> T, (x, y) |-> u x + v y.
Hom copair(const DirectSum& ds, const Hom& u, const Hom& v);

/// Elements of h.src that h sends into s.
Subgroup preimage(const Hom& h, const Subgroup& s);

/// Image of a subgroup under h, as a subgroup of h.tgt.
Subgroup image_of(const Hom& h, const Subgroup& s);

struct HomClass {
  bool injective = false;
  bool surjective = false;
  bool isomorphism() const { return injective && surjective; }
};
HomClass hom_classify(const Hom& h);

/// The unique l with incl o l = w, when w lands in the image of the injection.
std::optional<Hom> lift_through(const Hom& incl, const Hom& w);
/// The unique l with l o proj = w, when w kills ker(proj); proj surjective.
std::optional<Hom> descend_through(const Hom& proj, const Hom& w);
/// Inverse of an isomorphism; InputError otherwise.
Hom inverse(const Hom& iso);

std::string describe(const Hom& h);

}  // namespace mvkit
