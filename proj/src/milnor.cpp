#include "mvkit/milnor.hpp"

#include <sstream>

namespace mvkit {

namespace {

std::string join_violations(const LadderValidation& r) {
  std::string out = "invalid ladder";
  for (const auto& v : r.violations) out += "; " + v;
  return out;
}

template <class F>
Hom induced(const std::string& square, F&& make) {
  try {
    return make();
  } catch (const CommuteError& e) {
    throw CommuteError(square + ": " + e.what(), e.witness());
  }
}

Hom must_descend(const Hom& proj, const Hom& w, const char* what) {
  auto d = descend_through(proj, w);
  if (!d) throw Error(std::string(what) + ": map does not vanish on the kernel");
  return *d;
}

EpsilonFactorization factor_valid(const KLadder& k) {
  EpsilonFactorization f{kernel_subgroup(k.eps()), {}, {}, {}};
  Quotient q = quotient(f.ker_eps);
  f.quotient = q.group;
  f.pi1 = q.proj;
  f.i2 = must_descend(f.pi1, k.eps(), "eps factorization");
  return f;
}

QuoK quo_valid(const KLadder& k, const EpsilonFactorization& e) {
  const Hom& alpha = k.alpha();
  Pushout po = pushout({alpha, e.pi1});
  Quotient direct = cokernel(compose(alpha, e.ker_eps.incl()));
  Hom through = must_descend(e.pi1, compose(direct.proj, alpha), "quo-K");
  Hom comparison = induced("quo-K pushout", [&] { return from_pushout(po, direct.proj, through); });
  bool agree = hom_classify(comparison).isomorphism();
  return {po.object, po.from_b, po.from_c, po, direct, comparison, agree};
}

SubK sub_valid(const KLadder& k, const EpsilonFactorization& e) {
  Pullback pb = pullback({k.beta(), e.i2});
  Subgroup direct = preimage(k.beta(), image(k.eps()));
  bool agree = hom_classify(pb.to_b).injective && same_subgroup(Subgroup(pb.to_b), direct);
  return {pb.object, pb.to_b, pb.to_c, pb, direct, agree};
}

XData x_valid(const KLadder& k, const EpsilonFactorization& e, const QuoK& quo, const SubK& sub,
              const Hom& dbar) {
  XData x;
  x.pullback = pullback({dbar, quo.pi});
  x.group = x.pullback.object;
  x.proj_sub = x.pullback.to_b;
  x.proj_a = x.pullback.to_c;
  x.phi = compose(sub.incl, x.proj_sub);

  Subgroup ker_phi = kernel_subgroup(x.phi);
  Subgroup transported = image_of(x.proj_a, ker_phi);
  Subgroup expected = image_of(k.alpha(), e.ker_eps);
  x.kernel_ok = same_subgroup(transported, expected) &&
                hom_classify(compose(x.proj_a, ker_phi.incl())).injective;
  x.image_ok = same_subgroup(image(x.phi), Subgroup(sub.incl));
  x.proj_sub_onto = hom_classify(x.proj_sub).surjective;
  return x;
}

MVSegment make_segment(std::vector<Hom> maps) {
  MVSegment s;
  s.terms.push_back(maps.front().src());
  for (const auto& h : maps) s.terms.push_back(h.tgt());
  s.maps = std::move(maps);
  s.report = check_row_exact(s.row());
  return s;
}

}  // namespace

InvalidLadder::InvalidLadder(LadderValidation report)
    : Error(join_violations(report)), report_(std::move(report)) {}

LadderValidation validate_ladder(const KLadder& k) {
  if (k.a_row.num_nodes() != 6 || k.b_row.num_nodes() != 6)
    throw InputError("ladder rows must have six nodes");
  LadderDiagram d{ExactRow(k.a_row.maps(), {1, 2, 3, 4}), ExactRow(k.b_row.maps(), {1, 2, 3, 4}),
                  k.verticals};
  return {ladder_violations(d, "a_row", "b_row")};
}

void require_valid(const KLadder& k) {
  LadderValidation r = validate_ladder(k);
  if (!r.valid()) throw InvalidLadder(std::move(r));
}

Subgroup excision_kernel(const KLadder& k, Level level) {
  require_valid(k);
  return kernel_subgroup(level == Level::lo ? k.eps() : k.eps_hi());
}

EpsilonFactorization factor_epsilon(const KLadder& k) {
  require_valid(k);
  return factor_valid(k);
}

QuoK quo_k(const KLadder& k) {
  require_valid(k);
  return quo_valid(k, factor_valid(k));
}

SubK sub_k(const KLadder& k) {
  require_valid(k);
  return sub_valid(k, factor_valid(k));
}

Hom connecting_bar(const KLadder& k) { return analyze(k).dbar; }

MilnorAnalysis analyze(const KLadder& k) {
  require_valid(k);
  const Hom& dA = k.boundary_a();
  const Hom& v = k.verticals[kQuoHi];
  const Hom& v_abs = k.verticals[kAbsLo];
  MilnorAnalysis m;
  m.ladder = k;
  m.eps = factor_valid(k);
  m.sum_hi = direct_sum(k.a(kQuoHi), k.b(kAbsHi));
  m.sum_lo = direct_sum(k.a(kQuoLo), k.b(kAbsLo));
  m.quo = quo_valid(k, m.eps);
  m.sub = sub_valid(k, m.eps);
  m.dbar = compose(m.quo.q, m.sub.proj);

  const Hom pi1_dA = compose(m.eps.pi1, dA);
  m.h1 = induced("square 2 (h1 into sub-K)",
                 [&] { return into_pullback(m.sub.pullback, v, pi1_dA); });
  m.g = induced("square 1 (g into sub-K)", [&] {
    return into_pullback(m.sub.pullback, k.b_row.map(kAbsHi), Hom::zero(k.b(kAbsHi), m.eps.quotient));
  });
  const Hom b34_i2 = compose(k.b_row.map(kRelLo), m.eps.i2);
  m.h2 = induced("square 3 (h2 out of quo-K)",
                 [&] { return from_pushout(m.quo.pushout, v_abs, b34_i2); });
  m.h2_quo = induced("square 4 (h2' out of quo-K)", [&] {
    return from_pushout(m.quo.pushout, k.a_row.map(kAbsLo), Hom::zero(m.eps.quotient, k.a(kQuoLo)));
  });

  ExactRow row1({k.a_row.map(1), k.a_row.map(2), k.a_row.map(3), k.a_row.map(4)});
  ExactRow row2({k.a_row.map(1), pi1_dA, m.quo.q, m.h2_quo}, {2, 3});
  ExactRow row3({m.g, m.sub.proj, b34_i2, k.b_row.map(4)}, {1, 2});
  ExactRow row4({k.b_row.map(1), k.b_row.map(2), k.b_row.map(3), k.b_row.map(4)});
  const Hom& v1 = k.verticals[kAbsHi];
  const Hom& v5 = k.verticals[kQuoLo];
  m.glued.push_back({row1, row2,
                     {Hom::identity(k.a(kAbsHi)), Hom::identity(k.a(kQuoHi)), m.eps.pi1, m.quo.pi,
                      Hom::identity(k.a(kQuoLo))}});
  m.glued.push_back({row2, row3, {v1, m.h1, Hom::identity(m.eps.quotient), m.h2, v5}});
  m.glued.push_back({row3, row4,
                     {Hom::identity(k.b(kAbsHi)), m.sub.incl, m.eps.i2, Hom::identity(k.b(kAbsLo)),
                      Hom::identity(k.b(kQuoLo))}});
  for (std::size_t j = 0; j < m.glued.size(); ++j) {
    const std::string rows[] = {"a_row", "pushout row", "pullback row", "b_row"};
    for (const auto& line : ladder_violations(m.glued[j], rows[j], rows[j + 1]))
      m.glued_violations.push_back("glued ladder " + std::to_string(j) + ": " + line);
  }

  m.x = x_valid(k, m.eps, m.quo, m.sub, m.dbar);
  return m;
}

MVSegment weibel_segment(const MilnorAnalysis& m) {
  Hom first = copair(m.sum_hi, m.h1, -m.g);
  Hom third = pair_into(m.sum_lo, m.h2_quo, m.h2);
  return make_segment({first, m.dbar, third});
}

MVSegment weibel_segment(const KLadder& k) { return weibel_segment(analyze(k)); }

XData build_x_and_phi(const KLadder& k) { return analyze(k).x; }

MVSegment mv2_segment(const MilnorAnalysis& m) {
  const KLadder& k = m.ladder;
  Hom m1 = copair(m.sum_hi, m.h1, -m.g);
  Hom m2 = copair(m.sum_hi, compose(k.alpha(), k.boundary_a()), Hom::zero(k.b(kAbsHi), k.a(kAbsLo)));
  Hom first = induced("X square (dbar m1 = pi m2)", [&] { return into_pullback(m.x.pullback, m1, m2); });
  Hom third = pair_into(m.sum_lo, k.a_row.map(kAbsLo), k.verticals[kAbsLo]);
  return make_segment({first, m.x.proj_a, third});
}

MVSegment mv2_segment(const KLadder& k) { return mv2_segment(analyze(k)); }

ExcisionReport excision_check(const MilnorAnalysis& m) {
  const KLadder& k = m.ladder;
  ExcisionReport r;
  for (std::size_t j = 0; j < k.verticals.size(); ++j)
    if (!hom_classify(k.verticals[j]).isomorphism())
      r.violations.push_back("vertical " + std::to_string(j) + " is not an isomorphism");
  if (!r.violations.empty()) return r;

  Hom first = copair(m.sum_hi, k.verticals[kQuoHi], -k.b_row.map(kAbsHi));
  Hom boundary = compose(k.alpha(), compose(inverse(k.eps()), k.beta()));
  Hom third = pair_into(m.sum_lo, k.a_row.map(kAbsLo), k.verticals[kAbsLo]);
  r.classical = make_segment({first, boundary, third});
  for (const auto& line : r.classical.report.failures())
    r.violations.push_back("classical window " + line);

  if (!hom_classify(m.x.phi).isomorphism())
    r.violations.push_back("phi is not an isomorphism");
  MVSegment mv2 = mv2_segment(m);
  LadderDiagram cmp{mv2.row(), r.classical.row(),
                    {Hom::identity(m.sum_hi.sum), m.x.phi, Hom::identity(k.a(kAbsLo)),
                     Hom::identity(m.sum_lo.sum)}};
  for (std::size_t j = 0; j + 1 < cmp.verticals.size(); ++j)
    if (auto w = cmp.square_failure(j)) {
      std::ostringstream os;
      os << "comparison square " << j << " does not commute (source generator " << *w << ")";
      r.violations.push_back(os.str());
    }
  return r;
}

Quotient eps_hi_cokernel(const KLadder& k) { return cokernel(k.eps_hi()); }

BirelativeReport check_birelative(const MilnorAnalysis& m, const BirelativeData& data) {
  const KLadder& k = m.ladder;
  Quotient coker = eps_hi_cokernel(k);
  if (!(data.to_relative.src() == data.group) || !(data.to_relative.tgt() == k.a(kRelLo)))
    throw InputError("birelative: to_relative must map the group into K_i(A,I) = " +
                     k.a(kRelLo).str());
  if (!(data.from_cokernel.src() == coker.group) || !(data.from_cokernel.tgt() == data.group))
    throw InputError("birelative: from_cokernel must map coker(eps_{i+1}) = " + coker.group.str() +
                     " into the group");
  if (data.psi && (!(data.psi->src() == data.group) || !(data.psi->tgt() == m.x.group)))
    throw InputError("birelative: psi must map the group into X = " + m.x.group.str());
  if (data.delta && !(data.delta->src() == k.b(kQuoHi)))
    throw InputError("birelative: delta must start at K_{i+1}(B/I) = " + k.b(kQuoHi).str());

  BirelativeReport r;
  if (auto w = first_difference(compose(k.eps(), data.to_relative),
                                Hom::zero(data.group, k.b(kRelLo))))
    r.violations.push_back("to_relative does not land in ker eps_i (generator " +
                           std::to_string(*w) + ")");
  else if (!same_subgroup(image(data.to_relative), m.eps.ker_eps))
    r.violations.push_back("to_relative is not onto ker eps_i");
  if (!hom_classify(data.from_cokernel).injective)
    r.violations.push_back("from_cokernel is not injective");
  NodeExactness mid = check_node_exact(data.from_cokernel, data.to_relative, 1);
  if (!mid.exact()) {
    ExactnessReport rep{{mid}};
    r.violations.push_back("short exact sequence " + rep.failures().front());
  }
  if (data.psi && !same_subgroup(image(*data.psi), kernel_subgroup(m.x.phi)))
    r.violations.push_back("im psi differs from ker phi");
  if (data.delta && !same_subgroup(kernel_subgroup(*data.delta), Subgroup(m.sub.incl)))
    r.violations.push_back("ker delta differs from sub-K");
  return r;
}

BirelativeReport check_birelative(const KLadder& k, const BirelativeData& data) {
  return check_birelative(analyze(k), data);
}

BirelativeData split_birelative_data(const MilnorAnalysis& m, const FgGroup& extra) {
  const KLadder& k = m.ladder;
  Quotient coker_hi = eps_hi_cokernel(k);
  const Subgroup& ker = m.eps.ker_eps;
  DirectSum ds = direct_sum(coker_hi.group, ker.group());
  Hom to_relative = compose(ker.incl(), ds.pr2);
  Hom psi = into_pullback(m.x.pullback, Hom::zero(ds.sum, m.sub.group),
                          compose(k.alpha(), to_relative));
  Quotient coker_lo = cokernel(k.eps());
  DirectSum target = direct_sum(coker_lo.group, extra);
  Hom delta = compose(target.in1, compose(coker_lo.proj, k.beta()));
  return {ds.sum, to_relative, ds.in1, psi, delta};
}

}  // namespace mvkit
