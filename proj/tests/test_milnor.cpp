#include "ladders.hpp"
#include "mvkit/generate.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace mvkit;

namespace {

FgGroup Zmod(long n) { return FgGroup::from_invariants({n}); }

bool mentions(const std::vector<std::string>& lines, const std::string& what) {
  for (const auto& l : lines)
    if (l.find(what) != std::string::npos) return true;
  return false;
}

bool ladder_small(const KLadder& k, std::size_t cap) {
  for (std::size_t n = 0; n < 6; ++n)
    if (!oracle::small(k.a_row.node(n), cap) || !oracle::small(k.b_row.node(n), cap)) return false;
  return true;
}

}  // namespace

TEST_CASE("LADDER-1") {
  KLadder k = fixture::ladder1();
  CHECK(validate_ladder(k).valid());

  Subgroup ker = excision_kernel(k, Level::lo);
  CHECK(ker.group() == Zmod(2));
  CHECK(oracle::subgroup(ker) == std::set<oracle::Elem>{{0}, {2}});
  CHECK(excision_kernel(k, Level::hi).group().is_trivial());

  MilnorAnalysis m = analyze(k);
  CHECK(m.quo.group == Zmod(2));
  CHECK(m.quo.pi.matrix() == IntMatrix{{1}});
  CHECK(m.quo.constructions_agree);
  CHECK(m.sub.group == Zmod(2));
  CHECK(same_subgroup(Subgroup(m.sub.incl), Subgroup::whole(Zmod(2))));
  CHECK(m.sub.constructions_agree);
  CHECK(m.dbar.matrix() == IntMatrix{{1}});
  CHECK(m.glued_violations.empty());

  MVSegment w = weibel_segment(m);
  REQUIRE(w.maps.size() == 3);
  CHECK(is_zero_hom(w.maps[0]));
  CHECK(w.maps[1].matrix() == IntMatrix{{1}});
  CHECK(is_zero_hom(w.maps[2]));
  CHECK(w.report.all_exact());
  CHECK(w.report.nodes.size() == 2);

  CHECK(m.x.group == Zmod(2));
  CHECK(hom_classify(m.x.phi).isomorphism());
  CHECK(m.x.kernel_ok);
  CHECK(m.x.image_ok);
  CHECK(m.x.proj_sub_onto);

  MVSegment v = mv2_segment(m);
  CHECK(v.terms == std::vector<FgGroup>{Zmod(2), Zmod(2), Zmod(2), Zmod(2)});
  CHECK(is_zero_hom(v.maps[0]));
  CHECK(hom_classify(v.maps[1]).isomorphism());
  CHECK(is_zero_hom(v.maps[2]));
  CHECK(v.report.all_exact());

  // The map into X induced by (h1, alpha o boundary) is mv2's first map on the A/I summand.
  Hom section = into_pullback(m.x.pullback, m.h1, compose(k.alpha(), k.boundary_a()));
  CHECK(hom_equal(section, compose(v.maps[0], m.sum_hi.in1)));
  CHECK(is_zero_hom(section));
}

TEST_CASE("ladder validation") {
  KLadder k = fixture::ladder1();
  k.verticals[kRelLo] = Hom::identity(Zmod(4));
  LadderValidation v = validate_ladder(k);
  CHECK_FALSE(v.valid());
  CHECK(mentions(v.violations, "square 3 does not commute"));
  CHECK_THROWS_AS(analyze(k), InvalidLadder);

  KLadder z;
  z.a_row = ExactRow(std::vector<Hom>(5));
  z.b_row = z.a_row;
  z.verticals.assign(6, Hom());
  CHECK(validate_ladder(z).valid());
  MilnorAnalysis m = analyze(z);
  for (const auto& h : weibel_segment(m).maps) CHECK(is_zero_hom(h));
  CHECK(weibel_segment(m).report.all_exact());
  CHECK(mv2_segment(m).report.all_exact());

  KLadder short_row = fixture::ladder1();
  short_row.a_row = ExactRow({Hom(), Hom()});
  CHECK_THROWS_AS(validate_ladder(short_row), InputError);
}

TEST_CASE("excision and zero cases") {
  TrialConfig cfg;
  for (std::size_t t = 0; t < 20; ++t) {
    Rng rng = trial_rng(31, t);
    KLadder id = gen_random_ladder(cfg, rng, LadderStrategy::identity);
    MilnorAnalysis m = analyze(id);
    CHECK(excision_kernel(id, Level::lo).group().is_trivial());
    CHECK(m.quo.group == id.a(kAbsLo));
    CHECK(hom_classify(m.quo.pi).isomorphism());
    CHECK(m.sub.group == id.b(kQuoHi));
    CHECK(hom_classify(m.x.phi).isomorphism());
    CHECK(excision_check(m).passed());

    KLadder zero = gen_random_ladder(cfg, rng, LadderStrategy::zero);
    MilnorAnalysis z = analyze(zero);
    CHECK(same_subgroup(excision_kernel(zero, Level::lo), Subgroup::whole(zero.a(kRelLo))));
    CHECK(same_subgroup(Subgroup(z.sub.incl), kernel_subgroup(zero.beta())));
    CHECK(z.quo.group == cokernel(zero.alpha()).group);
  }
}

TEST_CASE("random ladders against enumeration") {
  TrialConfig cfg;
  cfg.max_rank = 0;
  cfg.max_order = 6;
  cfg.max_factors = 2;
  std::size_t checked = 0;
  for (std::size_t t = 0; t < 120; ++t) {
    Rng rng = trial_rng(2024, t);
    KLadder k = gen_random_ladder(cfg, rng);
    if (!ladder_small(k, 2000)) continue;
    ++checked;
    MilnorAnalysis m = analyze(k);
    CAPTURE(t);

    auto ker = oracle::kernel(k.eps());
    CHECK(oracle::subgroup(m.eps.ker_eps) == ker);

    std::set<oracle::Elem> alpha_ker;
    for (const auto& x : ker) alpha_ker.insert(oracle::apply(k.alpha(), x));
    CHECK(oracle::Finite(m.quo.group).order() * alpha_ker.size() ==
          oracle::Finite(k.a(kAbsLo)).order());

    auto im_eps = oracle::image(k.eps());
    std::set<oracle::Elem> sub;
    for (const auto& x : oracle::Finite(k.b(kQuoHi)).elements())
      if (im_eps.count(oracle::apply(k.beta(), x))) sub.insert(x);
    CHECK(oracle::image(m.sub.incl) == sub);

    MVSegment w = weibel_segment(m);
    CHECK(oracle::exact_at(w.maps[0], w.maps[1]));
    CHECK(oracle::exact_at(w.maps[1], w.maps[2]));

    CHECK(oracle::Finite(m.x.group).order() == oracle::pullback_order(m.dbar, m.quo.pi));
    CHECK(oracle::kernel(m.x.phi).size() == alpha_ker.size());
    CHECK(oracle::image(m.x.phi) == sub);
    MVSegment v = mv2_segment(m);
    CHECK(oracle::exact_at(v.maps[0], v.maps[1]));
    CHECK(oracle::exact_at(v.maps[1], v.maps[2]));
  }
  CHECK(checked > 40);
}

TEST_CASE("relabeling invariance") {
  TrialConfig cfg;
  for (std::size_t t = 0; t < 30; ++t) {
    Rng rng = trial_rng(8, t);
    KLadder k = gen_random_ladder(cfg, rng);
    Relabeled r = relabel_ladder(k, rng);
    CHECK(validate_ladder(r.ladder).valid());
    MilnorAnalysis m = analyze(k), n = analyze(r.ladder);
    CHECK(m.quo.group == n.quo.group);
    CHECK(m.sub.group == n.sub.group);
    CHECK(m.x.group == n.x.group);
  }
}

TEST_CASE("birelative") {
  KLadder k = fixture::ladder1();
  MilnorAnalysis m = analyze(k);
  CHECK(eps_hi_cokernel(k).group.is_trivial());
  BirelativeData d = split_birelative_data(m);
  CHECK(d.group == Zmod(2));
  CHECK(check_birelative(m, d).passed());

  BirelativeData psi0 = d;
  psi0.psi = Hom::zero(d.group, m.x.group);
  CHECK(check_birelative(m, psi0).passed());

  BirelativeData wrong = d;
  wrong.from_cokernel = Hom::identity(Zmod(2));
  CHECK_THROWS_AS(check_birelative(m, wrong), InputError);

  BirelativeData broken = d;
  broken.to_relative = Hom::zero(d.group, k.a(kRelLo));
  CHECK_FALSE(check_birelative(m, broken).passed());

  TrialConfig cfg;
  for (std::size_t t = 0; t < 20; ++t) {
    Rng rng = trial_rng(77, t);
    KLadder r = gen_random_ladder(cfg, rng, LadderStrategy::identity);
    MilnorAnalysis a = analyze(r);
    BirelativeData e = split_birelative_data(a);
    CHECK(e.group.is_trivial());
    CHECK(check_birelative(a, e).passed());
  }
}
