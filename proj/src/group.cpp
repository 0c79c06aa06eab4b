#include "mvkit/group.hpp"

#include <sstream>

namespace mvkit {

struct FgGroup::Data {
  IntMatrix relations;
  std::vector<Integer> invariants;
  std::size_t free_rank = 0;
  IntMatrix to_canonical;
  IntMatrix from_canonical;
  IntMatrix canonical_relations;
};

FgGroup::FgGroup() : d_(std::make_shared<const Data>()) {}

namespace {

// Diagonal entries when relations is already Z/d_1 + ... + Z^f with d_1 | d_2 | ..., d_j > 1.
std::optional<std::vector<Integer>> canonical_diagonal(const IntMatrix& r) {
  std::vector<Integer> diag(r.rows(), Integer(0));
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) {
      if (r(i, j) == 0) continue;
      if (i != j) return std::nullopt;
      diag[i] = r(i, j);
    }
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] == 0) {
      for (std::size_t j = i; j < diag.size(); ++j)
        if (diag[j] != 0) return std::nullopt;
      break;
    }
    if (diag[i] < 2) return std::nullopt;
    if (i > 0 && diag[i] % diag[i - 1] != 0) return std::nullopt;
  }
  return diag;
}

}  // namespace

FgGroup FgGroup::from_relations(const IntMatrix& relations) {
  auto d = std::make_shared<Data>();
  d->relations = relations;
  const std::size_t n = relations.rows();
  if (auto diag = canonical_diagonal(relations)) {
    d->invariants = *diag;
    for (const auto& f : *diag)
      if (f == 0) ++d->free_rank;
    d->to_canonical = IntMatrix::identity(n);
    d->from_canonical = IntMatrix::identity(n);
    const std::size_t torsion = n - d->free_rank;
    d->canonical_relations = IntMatrix(n, torsion);
    for (std::size_t j = 0; j < torsion; ++j) d->canonical_relations(j, j) = (*diag)[j];
    return FgGroup(std::move(d));
  }
  SmithResult s = snf(relations);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    Integer factor = i < s.rank ? s.D(i, i) : Integer(0);
    if (factor == 1) continue;
    kept.push_back(i);
    d->invariants.push_back(factor);
    if (factor == 0) ++d->free_rank;
  }
  d->to_canonical = s.U.select_rows(kept);
  d->from_canonical = unimodular_inverse(s.U).select_cols(kept);
  const std::size_t torsion = d->invariants.size() - d->free_rank;
  d->canonical_relations = IntMatrix(d->invariants.size(), torsion);
  for (std::size_t j = 0; j < torsion; ++j) d->canonical_relations(j, j) = d->invariants[j];
  return FgGroup(std::move(d));
}

FgGroup FgGroup::from_invariants(const std::vector<Integer>& factors) {
  for (const auto& f : factors)
    if (sgn(f) < 0) throw InputError("group factor must be nonnegative");
  return from_relations(IntMatrix::diagonal(factors));
}

FgGroup make_group(const IntMatrix& relations) { return FgGroup::from_relations(relations); }

std::size_t FgGroup::presented_gens() const { return d_->relations.rows(); }
const IntMatrix& FgGroup::relations() const { return d_->relations; }
const std::vector<Integer>& FgGroup::invariants() const { return d_->invariants; }
std::size_t FgGroup::free_rank() const { return d_->free_rank; }
const IntMatrix& FgGroup::to_canonical() const { return d_->to_canonical; }
const IntMatrix& FgGroup::from_canonical() const { return d_->from_canonical; }
const IntMatrix& FgGroup::canonical_relations() const { return d_->canonical_relations; }

Integer FgGroup::order() const {
  if (!is_finite()) throw InputError("order of an infinite group");
  Integer n = 1;
  for (const auto& d : invariants()) n *= d;
  return n;
}

void FgGroup::reduce(IntMatrix& m) const {
  if (m.rows() != num_factors()) throw InputError("reduce: coordinate count mismatch");
  const std::size_t torsion = torsion_factors();
  for (std::size_t i = 0; i < torsion; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = floor_mod(m(i, j), invariants()[i]);
}

bool FgGroup::is_zero_element(const IntMatrix& column) const {
  if (column.rows() != num_factors()) throw InputError("element: coordinate count mismatch");
  const std::size_t torsion = torsion_factors();
  for (std::size_t i = 0; i < column.rows(); ++i)
    for (std::size_t j = 0; j < column.cols(); ++j) {
      if (i < torsion ? sgn(column(i, j) % invariants()[i]) != 0 : sgn(column(i, j)) != 0)
        return false;
    }
  return true;
}

std::string FgGroup::str() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < num_factors(); ++i) {
    if (i) os << " + ";
    if (invariants()[i] == 0)
      os << "Z";
    else
      os << "Z/" << invariants()[i];
  }
  return os.str();
}

std::string FgGroup::literal() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < num_factors(); ++i) os << (i ? ", " : "") << invariants()[i];
  os << ']';
  return os.str();
}

GroupElement::GroupElement(FgGroup parent, IntMatrix coords)
    : parent_(std::move(parent)), coords_(std::move(coords)) {
  if (coords_.cols() != 1 || coords_.rows() != parent_.num_factors())
    throw InputError("element: coordinate count mismatch");
  parent_.reduce(coords_);
}

GroupElement GroupElement::zero(const FgGroup& parent) {
  return {parent, IntMatrix(parent.num_factors(), 1)};
}

GroupElement operator+(const GroupElement& a, const GroupElement& b) {
  if (!(a.parent_ == b.parent_)) throw InputError("element sum: different groups");
  return {a.parent_, a.coords_ + b.coords_};
}

GroupElement operator-(const GroupElement& a) { return {a.parent_, -a.coords_}; }

Hom::Hom(FgGroup src, FgGroup tgt, IntMatrix mat)
    : src_(std::move(src)), tgt_(std::move(tgt)), mat_(std::move(mat)) {
  if (mat_.rows() != tgt_.num_factors() || mat_.cols() != src_.num_factors()) {
    std::ostringstream msg;
    msg << "hom matrix is " << mat_.rows() << "x" << mat_.cols() << ", expected "
        << tgt_.num_factors() << "x" << src_.num_factors();
    throw InputError(msg.str());
  }
  for (std::size_t j = 0; j < src_.torsion_factors(); ++j) {
    const Integer& d = src_.invariants()[j];
    if (!tgt_.is_zero_element(d * mat_.col(j))) {
      std::ostringstream msg;
      msg << "ill-defined hom: generator " << j << " has order " << d << " but " << d
          << " * image is nonzero in " << tgt_.str();
      throw PresentationError(msg.str(), j);
    }
  }
  tgt_.reduce(mat_);
}

Hom Hom::trusted(FgGroup src, FgGroup tgt, IntMatrix mat) {
  if (mat.rows() != tgt.num_factors() || mat.cols() != src.num_factors())
    throw InputError("hom matrix shape does not match endpoints");
  Hom h;
  h.src_ = std::move(src);
  h.tgt_ = std::move(tgt);
  h.mat_ = std::move(mat);
  h.tgt_.reduce(h.mat_);
  return h;
}

Hom Hom::identity(const FgGroup& g) {
  return trusted(g, g, IntMatrix::identity(g.num_factors()));
}

Hom Hom::zero(const FgGroup& src, const FgGroup& tgt) {
  return trusted(src, tgt, IntMatrix(tgt.num_factors(), src.num_factors()));
}

GroupElement Hom::operator()(const GroupElement& x) const {
  if (!(x.parent() == src_)) throw InputError("hom applied to an element of another group");
  return {tgt_, mat_ * x.coords()};
}

IntMatrix Hom::apply(const IntMatrix& column) const {
  IntMatrix y = mat_ * column;
  tgt_.reduce(y);
  return y;
}

Hom make_hom(const FgGroup& src, const FgGroup& tgt, const IntMatrix& mat) {
  return Hom(src, tgt, mat);
}

Hom make_hom_presented(const FgGroup& src, const FgGroup& tgt, const IntMatrix& mat) {
  if (mat.rows() != tgt.presented_gens() || mat.cols() != src.presented_gens()) {
    std::ostringstream msg;
    msg << "hom matrix is " << mat.rows() << "x" << mat.cols() << ", expected "
        << tgt.presented_gens() << "x" << src.presented_gens();
    throw InputError(msg.str());
  }
  const IntMatrix& rel = src.relations();
  for (std::size_t k = 0; k < rel.cols(); ++k) {
    IntMatrix image = tgt.to_canonical() * (mat * rel.col(k));
    if (!tgt.is_zero_element(image)) {
      std::vector<std::size_t> support;
      for (std::size_t i = 0; i < rel.rows(); ++i)
        if (sgn(rel(i, k)) != 0) support.push_back(i);
      std::ostringstream msg;
      if (support.size() == 1) {
        const std::size_t j = support[0];
        msg << "ill-defined hom: generator " << j << " has order " << abs(rel(j, k)) << " but "
            << abs(rel(j, k)) << " * image is nonzero in " << tgt.str();
        throw PresentationError(msg.str(), j);
      }
      msg << "ill-defined hom: relation " << k << " of the source is not sent into the"
          << " relations of " << tgt.str();
      throw PresentationError(msg.str(), k);
    }
  }
  return Hom::trusted(src, tgt, tgt.to_canonical() * mat * src.from_canonical());
}

namespace {

void require_same(const FgGroup& a, const FgGroup& b, const char* what) {
  if (!(a == b)) {
    std::ostringstream msg;
    msg << what << ": endpoint mismatch (" << a.str() << " vs " << b.str() << ")";
    throw InputError(msg.str());
  }
}

void require_parallel(const Hom& a, const Hom& b, const char* what) {
  require_same(a.src(), b.src(), what);
  require_same(a.tgt(), b.tgt(), what);
}

}  // namespace

Hom compose(const Hom& g, const Hom& f) {
  require_same(f.tgt(), g.src(), "compose");
  return Hom::trusted(f.src(), g.tgt(), g.matrix() * f.matrix());
}

Hom operator+(const Hom& a, const Hom& b) {
  require_parallel(a, b, "hom sum");
  return Hom::trusted(a.src(), a.tgt(), a.matrix() + b.matrix());
}

Hom operator-(const Hom& a, const Hom& b) {
  require_parallel(a, b, "hom difference");
  return Hom::trusted(a.src(), a.tgt(), a.matrix() - b.matrix());
}

Hom operator-(const Hom& a) { return Hom::trusted(a.src(), a.tgt(), -a.matrix()); }

Hom scale(const Integer& k, const Hom& h) { return Hom::trusted(h.src(), h.tgt(), k * h.matrix()); }

std::optional<std::size_t> first_difference(const Hom& f, const Hom& g) {
  require_parallel(f, g, "hom comparison");
  IntMatrix diff = f.matrix() - g.matrix();
  for (std::size_t j = 0; j < diff.cols(); ++j)
    if (!f.tgt().is_zero_element(diff.col(j))) return j;
  return std::nullopt;
}

bool hom_equal(const Hom& f, const Hom& g) { return !first_difference(f, g).has_value(); }

bool is_zero_hom(const Hom& h) { return h.tgt().is_zero_element(h.matrix()); }

bool in_span(const FgGroup& g, const IntMatrix& gens, const IntMatrix& column) {
  if (g.is_zero_element(column)) return true;
  return solve_linear(hcat(gens, g.canonical_relations()), column).has_value();
}

Subgroup::Subgroup(Hom incl) : incl_(std::move(incl)) {
  if (!kernel(incl_).group.is_trivial()) throw InputError("subgroup inclusion is not injective");
}

Subgroup Subgroup::whole(const FgGroup& g) { return Subgroup(Trusted{}, Hom::identity(g)); }

Subgroup Subgroup::zero(const FgGroup& g) { return Subgroup(Trusted{}, Hom::zero(FgGroup(), g)); }

bool Subgroup::contains(const IntMatrix& column) const {
  return in_span(ambient(), incl_.matrix(), column);
}

bool Subgroup::contains(const Subgroup& other) const {
  require_same(ambient(), other.ambient(), "subgroup membership");
  const IntMatrix& gens = other.incl().matrix();
  for (std::size_t j = 0; j < gens.cols(); ++j)
    if (!contains(gens.col(j))) return false;
  return true;
}

bool same_subgroup(const Subgroup& a, const Subgroup& b) {
  return a.contains(b) && b.contains(a);
}

Subgroup subgroup_generated(const FgGroup& g, const IntMatrix& gens) {
  if (gens.rows() != g.num_factors()) throw InputError("subgroup generators: wrong coordinate count");
  const IntMatrix& rel = g.canonical_relations();
  IntMatrix basis = column_lattice_basis(hcat(gens, rel));
  IntMatrix syzygies = kernel_basis(hcat(basis, -rel)).select_rows(0, basis.cols());
  FgGroup s = FgGroup::from_relations(syzygies);
  return Subgroup(Subgroup::Trusted{}, Hom::trusted(s, g, basis * s.from_canonical()));
}

Subgroup kernel_subgroup(const Hom& h) {
  const std::size_t m = h.src().num_factors();
  IntMatrix lattice =
      kernel_basis(hcat(h.matrix(), -h.tgt().canonical_relations())).select_rows(0, m);
  return subgroup_generated(h.src(), lattice);
}

KernelResult kernel(const Hom& h) {
  Subgroup k = kernel_subgroup(h);
  return {k.group(), k.incl()};
}

Subgroup image(const Hom& h) { return subgroup_generated(h.tgt(), h.matrix()); }

Quotient cokernel(const Hom& h) {
  FgGroup q = FgGroup::from_relations(hcat(h.tgt().canonical_relations(), h.matrix()));
  return {q, Hom::trusted(h.tgt(), q, q.to_canonical())};
}

Quotient quotient(const Subgroup& s) { return cokernel(s.incl()); }

Quotient quotient_by_injection(const Hom& incl) {
  if (!kernel(incl).group.is_trivial())
    throw InputError("quotient by a non-injective map (not a subgroup)");
  return cokernel(incl);
}

DirectSum direct_sum(const FgGroup& g, const FgGroup& h) {
  const std::size_t m = g.num_factors();
  const std::size_t n = h.num_factors();
  FgGroup s = FgGroup::from_relations(
      block_diagonal(g.canonical_relations(), h.canonical_relations()));
  return {s,
          Hom::trusted(g, s, s.to_canonical().select_cols(0, m)),
          Hom::trusted(h, s, s.to_canonical().select_cols(m, m + n)),
          Hom::trusted(s, g, s.from_canonical().select_rows(0, m)),
          Hom::trusted(s, h, s.from_canonical().select_rows(m, m + n))};
}

Hom pair_into(const DirectSum& ds, const Hom& u, const Hom& v) {
  return compose(ds.in1, u) + compose(ds.in2, v);
}

Hom copair(const DirectSum& ds, const Hom& u, const Hom& v) {
  return compose(u, ds.pr1) + compose(v, ds.pr2);
}

Subgroup preimage(const Hom& h, const Subgroup& s) {
  require_same(h.tgt(), s.ambient(), "preimage");
  Quotient q = quotient(s);
  return kernel_subgroup(compose(q.proj, h));
}

Subgroup image_of(const Hom& h, const Subgroup& s) {
  return image(compose(h, s.incl()));
}

HomClass hom_classify(const Hom& h) {
  return {kernel(h).group.is_trivial(), cokernel(h).group.is_trivial()};
}

std::optional<Hom> lift_through(const Hom& incl, const Hom& w) {
  require_same(incl.tgt(), w.tgt(), "lift_through");
  const IntMatrix system = hcat(incl.matrix(), incl.tgt().canonical_relations());
  const std::size_t k = incl.src().num_factors();
  IntMatrix lifted(k, w.src().num_factors());
  for (std::size_t j = 0; j < lifted.cols(); ++j) {
    auto x = solve_linear(system, w.matrix().col(j));
    if (!x) return std::nullopt;
    lifted.set_col(j, x->select_rows(0, k));
  }
  return Hom(w.src(), incl.src(), lifted);
}

std::optional<Hom> descend_through(const Hom& proj, const Hom& w) {
  require_same(proj.src(), w.src(), "descend_through");
  if (!is_zero_hom(compose(w, kernel(proj).incl))) return std::nullopt;
  const FgGroup& q = proj.tgt();
  const IntMatrix system = hcat(proj.matrix(), q.canonical_relations());
  const std::size_t m = proj.src().num_factors();
  IntMatrix section(m, q.num_factors());
  for (std::size_t j = 0; j < q.num_factors(); ++j) {
    auto x = solve_linear(system, IntMatrix::unit_column(q.num_factors(), j));
    if (!x) throw InputError("descend_through: map is not surjective");
    section.set_col(j, x->select_rows(0, m));
  }
  return Hom(q, w.tgt(), w.matrix() * section);
}

Hom inverse(const Hom& iso) {
  if (!hom_classify(iso).isomorphism()) throw InputError("inverse of a non-isomorphism");
  return *descend_through(iso, Hom::identity(iso.src()));
}

std::string describe(const Hom& h) {
  std::ostringstream os;
  os << h.src().str() << " -> " << h.tgt().str() << " " << to_literal(h.matrix());
  return os.str();
}

}  // namespace mvkit
