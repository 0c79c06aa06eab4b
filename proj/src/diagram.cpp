#include "mvkit/diagram.hpp"

#include <sstream>

namespace mvkit {

ExactRow::ExactRow(std::vector<Hom> homs) : homs_(std::move(homs)) {
  for (std::size_t k = 1; k < homs_.size(); ++k) claimed_.insert(k);
  for (std::size_t k = 0; k + 1 < homs_.size(); ++k)
    if (!(homs_[k].tgt() == homs_[k + 1].src())) {
      std::ostringstream msg;
      msg << "row is not composable at node " << k + 1 << " (" << homs_[k].tgt().str() << " vs "
          << homs_[k + 1].src().str() << ")";
      throw InputError(msg.str());
    }
}

ExactRow::ExactRow(std::vector<Hom> homs, std::set<std::size_t> claimed)
    : ExactRow(std::move(homs)) {
  for (std::size_t k : claimed)
    if (k == 0 || k >= homs_.size())
      throw InputError("exactness can only be claimed at interior nodes");
  claimed_ = std::move(claimed);
}

const FgGroup& ExactRow::node(std::size_t k) const {
  if (k < homs_.size()) return homs_[k].src();
  if (k == homs_.size() && k > 0) return homs_.back().tgt();
  throw InputError("row node index out of range");
}

bool ExactnessReport::all_exact() const {
  for (const auto& n : nodes)
    if (!n.exact()) return false;
  return true;
}

std::vector<std::string> ExactnessReport::failures() const {
  std::vector<std::string> out;
  for (const auto& n : nodes) {
    if (n.exact()) continue;
    std::ostringstream os;
    os << "not exact at node " << n.node << ": ";
    if (!n.complex_ok)
      os << "im not in ker (source generator " << n.witness.value_or(0) << ")";
    else
      os << "ker not in im (kernel generator " << n.witness.value_or(0) << ")";
    out.push_back(os.str());
  }
  return out;
}

NodeExactness check_node_exact(const Hom& in, const Hom& out, std::size_t node) {
  NodeExactness r;
  r.node = node;
  Hom composite = compose(out, in);
  if (auto j = first_difference(composite, Hom::zero(composite.src(), composite.tgt()))) {
    r.complex_ok = false;
    r.witness = *j;
    return r;
  }
  const IntMatrix ker = kernel(out).incl.matrix();
  for (std::size_t j = 0; j < ker.cols(); ++j)
    if (!in_span(out.src(), in.matrix(), ker.col(j))) {
      r.ker_in_im = false;
      r.witness = j;
      break;
    }
  return r;
}

ExactnessReport check_row_exact(const ExactRow& row) {
  ExactnessReport report;
  for (std::size_t k : row.claimed())
    report.nodes.push_back(check_node_exact(row.map(k - 1), row.map(k), k));
  return report;
}

Pullback pullback(const Cospan& cospan) {
  if (!(cospan.f.tgt() == cospan.g.tgt())) throw InputError("pullback: cospan legs have different targets");
  DirectSum sum = direct_sum(cospan.f.src(), cospan.g.src());
  Hom difference = compose(cospan.f, sum.pr1) - compose(cospan.g, sum.pr2);
  KernelResult k = kernel(difference);
  Pullback p{cospan, k.group, compose(sum.pr1, k.incl), compose(sum.pr2, k.incl), k.incl, sum};
  p.jointly_monic = kernel(pair_into(sum, p.to_b, p.to_c)).group.is_trivial();
  return p;
}

Pushout pushout(const Span& span) {
  if (!(span.f.src() == span.g.src())) throw InputError("pushout: span legs have different sources");
  DirectSum sum = direct_sum(span.f.tgt(), span.g.tgt());
  Quotient q = cokernel(pair_into(sum, span.f, -span.g));
  Pushout p{span, q.group, compose(q.proj, sum.in1), compose(q.proj, sum.in2), q.proj, sum};
  p.jointly_epic = cokernel(copair(sum, p.from_b, p.from_c)).group.is_trivial();
  return p;
}

Hom into_pullback(const Pullback& p, const Hom& u, const Hom& v) {
  if (!(u.src() == v.src()) || !(u.tgt() == p.cospan.f.src()) || !(v.tgt() == p.cospan.g.src()))
    throw InputError("into_pullback: test maps do not match the cospan");
  if (auto j = first_difference(compose(p.cospan.f, u), compose(p.cospan.g, v))) {
    std::ostringstream msg;
    msg << "into_pullback: f u != g v on generator " << *j;
    throw CommuteError(msg.str(), *j);
  }
  if (!p.jointly_monic) throw Error("into_pullback: pullback legs are not jointly monic");
  auto lifted = lift_through(p.incl, pair_into(p.sum, u, v));
  if (!lifted) throw Error("into_pullback: commuting pair does not factor through the kernel");
  if (!hom_equal(compose(p.to_b, *lifted), u) || !hom_equal(compose(p.to_c, *lifted), v))
    throw Error("into_pullback: induced map does not reproduce the test pair");
  return *lifted;
}

Hom from_pushout(const Pushout& q, const Hom& u, const Hom& v) {
  if (!(u.tgt() == v.tgt()) || !(u.src() == q.span.f.tgt()) || !(v.src() == q.span.g.tgt()))
    throw InputError("from_pushout: test maps do not match the span");
  if (auto j = first_difference(compose(u, q.span.f), compose(v, q.span.g))) {
    std::ostringstream msg;
    msg << "from_pushout: u f != v g on generator " << *j;
    throw CommuteError(msg.str(), *j);
  }
  if (!q.jointly_epic) throw Error("from_pushout: pushout legs are not jointly epic");
  auto descended = descend_through(q.proj, copair(q.sum, u, v));
  if (!descended) throw Error("from_pushout: commuting pair does not vanish on the relations");
  if (!hom_equal(compose(*descended, q.from_b), u) || !hom_equal(compose(*descended, q.from_c), v))
    throw Error("from_pushout: induced map does not reproduce the test pair");
  return *descended;
}

namespace {

void require_four_term_exact(const ExactRow& row, const char* what) {
  if (row.num_maps() != 3) throw InputError(std::string(what) + ": expected a row A -> B -> C -> D");
  ExactnessReport r;
  r.nodes.push_back(check_node_exact(row.map(0), row.map(1), 1));
  r.nodes.push_back(check_node_exact(row.map(1), row.map(2), 2));
  if (!r.all_exact()) {
    std::string msg = std::string(what) + ": input row ";
    for (const auto& line : r.failures()) msg += line + "; ";
    throw PreconditionError(msg);
  }
}

ConstructedRow finish(std::vector<Hom> maps, Hom compare_b, Hom compare_c) {
  ExactRow row(std::move(maps));
  ExactnessReport report = check_row_exact(row);
  return {std::move(row), std::move(report), std::move(compare_b), std::move(compare_c)};
}

}  // namespace

ConstructedRow stability_pullback(const ExactRow& row, const Hom& i2) {
  require_four_term_exact(row, "stability_pullback");
  const Hom& f = row.map(0);
  const Hom& g = row.map(1);
  const Hom& h = row.map(2);
  if (!(i2.tgt() == g.tgt())) throw InputError("stability_pullback: inclusion does not land in C");
  if (!hom_classify(i2).injective) throw PreconditionError("stability_pullback: i2 is not injective");
  Pullback b1 = pullback({g, i2});
  Hom f1 = into_pullback(b1, f, Hom::zero(f.src(), i2.src()));
  return finish({f1, b1.to_c, compose(h, i2)}, b1.to_b, i2);
}

ConstructedRow stability_pushout(const ExactRow& row, const Hom& pi1) {
  require_four_term_exact(row, "stability_pushout");
  const Hom& f = row.map(0);
  const Hom& g = row.map(1);
  const Hom& h = row.map(2);
  if (!(pi1.src() == g.src())) throw InputError("stability_pushout: projection does not start at B");
  if (!hom_classify(pi1).surjective) throw PreconditionError("stability_pushout: pi1 is not surjective");
  Pushout c2 = pushout({g, pi1});
  Hom h2 = from_pushout(c2, h, Hom::zero(pi1.tgt(), h.tgt()));
  return finish({compose(pi1, f), c2.from_c, h2}, pi1, c2.from_b);
}

ConstructedRow lifting_pushout(const ExactRow& top, const Hom& i1) {
  require_four_term_exact(top, "lifting_pushout");
  const Hom& f1 = top.map(0);
  const Hom& g1 = top.map(1);
  const Hom& h1 = top.map(2);
  if (!(i1.src() == g1.src())) throw InputError("lifting_pushout: inclusion does not start at B1");
  if (!hom_classify(i1).injective) throw PreconditionError("lifting_pushout: i1 is not injective");
  Pushout c = pushout({g1, i1});
  Hom h = from_pushout(c, h1, Hom::zero(i1.tgt(), h1.tgt()));
  return finish({compose(i1, f1), c.from_c, h}, i1, c.from_b);
}

ConstructedRow lifting_pullback(const ExactRow& bottom, const Hom& pi2, const Hom& c) {
  require_four_term_exact(bottom, "lifting_pullback");
  const Hom& f2 = bottom.map(0);
  const Hom& g2 = bottom.map(1);
  const Hom& h2 = bottom.map(2);
  if (!(pi2.tgt() == g2.tgt())) throw InputError("lifting_pullback: projection does not land in C2");
  if (!hom_classify(pi2).surjective) throw PreconditionError("lifting_pullback: pi2 is not surjective");
  Pullback b = pullback({g2, pi2});
  Hom f = into_pullback(b, f2, c);
  return finish({f, b.to_c, compose(h2, pi2)}, b.to_b, pi2);
}

void LadderDiagram::check_shape() const {
  const std::size_t n = top.num_nodes();
  if (bottom.num_nodes() != n || verticals.size() != n)
    throw InputError("ladder: rows and verticals have different lengths");
  for (std::size_t k = 0; k < n; ++k)
    if (!(verticals[k].src() == top.node(k)) || !(verticals[k].tgt() == bottom.node(k))) {
      std::ostringstream msg;
      msg << "ladder: vertical " << k << " does not connect node " << k << " of the rows";
      throw InputError(msg.str());
    }
}

std::optional<std::size_t> LadderDiagram::square_failure(std::size_t k) const {
  return first_difference(compose(verticals[k + 1], top.map(k)),
                          compose(bottom.map(k), verticals[k]));
}

namespace {

void row_violations(const ExactRow& row, const std::set<std::size_t>& nodes,
                    const std::string& label, std::vector<std::string>& out) {
  for (std::size_t k : nodes) {
    ExactnessReport r;
    r.nodes.push_back(check_node_exact(row.map(k - 1), row.map(k), k));
    for (const auto& line : r.failures()) out.push_back(label + " " + line);
  }
}

void square_violations(const LadderDiagram& ladder, std::vector<std::string>& out) {
  for (std::size_t k = 0; k + 1 < ladder.verticals.size(); ++k)
    if (auto j = ladder.square_failure(k)) {
      std::ostringstream os;
      os << "square " << k << " does not commute (source generator " << *j << ")";
      out.push_back(os.str());
    }
}

}  // namespace

std::vector<std::string> ladder_violations(const LadderDiagram& ladder,
                                           const std::string& top_label,
                                           const std::string& bottom_label) {
  ladder.check_shape();
  std::vector<std::string> out;
  row_violations(ladder.top, ladder.top.claimed(), top_label, out);
  row_violations(ladder.bottom, ladder.bottom.claimed(), bottom_label, out);
  square_violations(ladder, out);
  return out;
}

FiveLemmaReport five_lemma_verify(const LadderDiagram& ladder) {
  ladder.check_shape();
  if (ladder.top.num_nodes() != 5) throw InputError("five lemma: ladder must have five nodes");
  FiveLemmaReport report;
  const std::set<std::size_t> interior{1, 2, 3};
  row_violations(ladder.top, interior, "top row", report.violations);
  row_violations(ladder.bottom, interior, "bottom row", report.violations);
  square_violations(ladder, report.violations);
  for (std::size_t k : {0, 1, 3, 4})
    if (!hom_classify(ladder.verticals[k]).isomorphism())
      report.violations.push_back("vertical " + std::to_string(k) + " is not an isomorphism");
  if (report.violations.empty()) {
    report.conclusion_claimed = true;
    report.middle_is_iso = hom_classify(ladder.verticals[2]).isomorphism();
  }
  return report;
}

}  // namespace mvkit
