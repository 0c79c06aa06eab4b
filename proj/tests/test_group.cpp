#include "mvkit/generate.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace mvkit;

namespace {

FgGroup Zmod(long n) { return FgGroup::from_invariants({n}); }
const FgGroup Z = FgGroup::from_invariants({0});

std::vector<Integer> inv(std::initializer_list<long> l) { return {l.begin(), l.end()}; }

}  // namespace

TEST_CASE("group canonical form") {
  CHECK(FgGroup::from_relations(IntMatrix(2, 0)).invariants() == inv({0, 0}));
  CHECK(FgGroup::from_relations(IntMatrix{{2, 4}, {6, 8}}).invariants() == inv({2, 4}));
  CHECK(FgGroup::from_relations(IntMatrix::identity(3)).is_trivial());
  CHECK(FgGroup::from_invariants({2, 3}).invariants() == inv({6}));
  CHECK(FgGroup::from_invariants({0, 4, 1, 6}).invariants() == inv({2, 12, 0}));
  CHECK(FgGroup::from_invariants({4, 2}).str() == "Z/2 + Z/4");
  CHECK(FgGroup::from_invariants({2, 0}).literal() == "[2, 0]");
  CHECK(FgGroup().str() == "0");
  CHECK(FgGroup::from_invariants({3, 5}).order() == 15);
  CHECK_THROWS_AS(Z.order(), InputError);
}

TEST_CASE("canonical literals have identity coordinates") {
  FgGroup g = FgGroup::from_invariants({2, 4, 0});
  CHECK(g.to_canonical() == IntMatrix::identity(3));
  CHECK(g.from_canonical() == IntMatrix::identity(3));
  Hom h = make_hom_presented(g, g, IntMatrix{{1, 0, 0}, {0, 3, 0}, {0, 0, -1}});
  CHECK(h.matrix() == IntMatrix{{1, 0, 0}, {0, 3, 0}, {0, 0, -1}});
}

TEST_CASE("hom validation") {
  CHECK_THROWS_AS(make_hom(Zmod(2), Zmod(4), IntMatrix{{1}}), PresentationError);
  try {
    make_hom(FgGroup::from_invariants({2, 2}), Zmod(4), IntMatrix{{2, 1}});
    FAIL("accepted an ill-defined hom");
  } catch (const PresentationError& e) {
    CHECK(e.generator() == 1);
  }
  CHECK_NOTHROW(make_hom(Zmod(2), Zmod(4), IntMatrix{{2}}));
  CHECK_NOTHROW(make_hom(Zmod(4), Zmod(2), IntMatrix{{1}}));
}

TEST_CASE("composition and equality") {
  Hom times2 = make_hom(Zmod(4), Zmod(4), IntMatrix{{2}});
  CHECK(is_zero_hom(compose(times2, times2)));
  CHECK(hom_equal(make_hom(Zmod(4), Zmod(4), IntMatrix{{3}}), make_hom(Zmod(4), Zmod(4), IntMatrix{{-1}})));
  CHECK(hom_equal(compose(Hom::identity(Zmod(4)), times2), times2));
  CHECK_THROWS_AS(compose(times2, Hom::identity(Zmod(2))), InputError);
  CHECK(first_difference(times2, Hom::zero(Zmod(4), Zmod(4))) == std::optional<std::size_t>(0));
}

TEST_CASE("kernel, image, cokernel") {
  CHECK(kernel(Hom::identity(Zmod(5))).group.is_trivial());
  KernelResult k = kernel(make_hom(Zmod(4), Zmod(4), IntMatrix{{2}}));
  CHECK(k.group == Zmod(2));
  CHECK(k.incl.matrix() == IntMatrix{{2}});
  KernelResult kz = kernel(make_hom(Z, Zmod(2), IntMatrix{{1}}));
  CHECK(kz.group == Z);
  CHECK(abs(kz.incl.matrix()(0, 0)) == 2);

  Hom zero = Hom::zero(Zmod(3), Zmod(4));
  CHECK(image(zero).group().is_trivial());
  CHECK(cokernel(zero).group == Zmod(4));
  CHECK(cokernel(make_hom(Z, Z, IntMatrix{{2}})).group == Zmod(2));
  CHECK(quotient(image(make_hom(Zmod(2), Zmod(4), IntMatrix{{2}}))).group == Zmod(2));
}

TEST_CASE("direct sums") {
  CHECK(direct_sum(Zmod(2), Zmod(2)).sum.invariants() == inv({2, 2}));
  CHECK(direct_sum(Zmod(2), Zmod(3)).sum.invariants() == inv({6}));
  DirectSum ds = direct_sum(Zmod(2), Zmod(3));
  CHECK(hom_equal(compose(ds.pr1, ds.in1), Hom::identity(Zmod(2))));
  CHECK(hom_equal(compose(ds.pr2, ds.in2), Hom::identity(Zmod(3))));
  CHECK(is_zero_hom(compose(ds.pr2, ds.in1)));
  CHECK(hom_equal(compose(ds.in1, ds.pr1) + compose(ds.in2, ds.pr2), Hom::identity(ds.sum)));
  CHECK(direct_sum(Zmod(12), FgGroup()).sum == Zmod(12));
}

TEST_CASE("preimage and classification") {
  Hom h = make_hom(Zmod(2), Zmod(4), IntMatrix{{2}});
  Subgroup s = subgroup_generated(Zmod(4), IntMatrix{{2}});
  CHECK(same_subgroup(preimage(h, s), Subgroup::whole(Zmod(2))));
  CHECK(same_subgroup(preimage(h, Subgroup::whole(Zmod(4))), Subgroup::whole(Zmod(2))));
  CHECK(same_subgroup(preimage(Hom::identity(Zmod(4)), s), s));

  HomClass c = hom_classify(Hom::identity(Z));
  CHECK(c.isomorphism());
  c = hom_classify(make_hom(Z, Z, IntMatrix{{2}}));
  CHECK(c.injective);
  CHECK_FALSE(c.surjective);
  c = hom_classify(h);
  CHECK(c.injective);
  CHECK_FALSE(c.surjective);
}

TEST_CASE("lift, descend, inverse") {
  Hom incl = make_hom(Zmod(2), Zmod(4), IntMatrix{{2}});
  auto l = lift_through(incl, make_hom(Zmod(2), Zmod(4), IntMatrix{{2}}));
  REQUIRE(l);
  CHECK(hom_equal(*l, Hom::identity(Zmod(2))));
  CHECK_FALSE(lift_through(incl, Hom::identity(Zmod(4))));

  Hom proj = make_hom(Zmod(4), Zmod(2), IntMatrix{{1}});
  CHECK(descend_through(proj, make_hom(Zmod(4), Zmod(4), IntMatrix{{2}})));
  CHECK_FALSE(descend_through(proj, Hom::identity(Zmod(4))));

  Hom u = make_hom(Zmod(5), Zmod(5), IntMatrix{{2}});
  CHECK(hom_equal(compose(inverse(u), u), Hom::identity(Zmod(5))));
  CHECK_THROWS_AS(inverse(incl), InputError);
}

TEST_CASE("random homs against enumeration") {
  TrialConfig cfg;
  cfg.max_rank = 0;
  cfg.max_order = 12;
  for (std::size_t t = 0; t < 200; ++t) {
    Rng rng = trial_rng(99, t);
    FgGroup a = gen_random_group(cfg, rng), b = gen_random_group(cfg, rng);
    Hom h = gen_random_hom(a, b, rng);
    CHECK(oracle::well_defined(h));
    CAPTURE(a.str());
    CAPTURE(b.str());
    CAPTURE(h.matrix());

    auto ker = oracle::kernel(h);
    auto im = oracle::image(h);
    CHECK(ker.size() * im.size() == oracle::Finite(a).order());
    CHECK(oracle::Finite(kernel(h).group).order() == ker.size());
    CHECK(oracle::subgroup(image(h)) == im);
    CHECK(oracle::subgroup(kernel_subgroup(h)) == ker);
    CHECK(oracle::Finite(cokernel(h).group).order() * im.size() == oracle::Finite(b).order());
    HomClass c = hom_classify(h);
    CHECK(c.injective == oracle::injective(h));
    CHECK(c.surjective == oracle::surjective(h));

    Subgroup s = image(gen_random_hom(a, b, rng));
    auto sset = oracle::subgroup(s);
    std::set<oracle::Elem> pre;
    for (const auto& x : oracle::Finite(a).elements())
      if (sset.count(oracle::apply(h, x))) pre.insert(x);
    CHECK(oracle::subgroup(preimage(h, s)) == pre);
  }
}

TEST_CASE("random automorphisms, injections, surjections") {
  TrialConfig cfg;
  for (std::size_t t = 0; t < 100; ++t) {
    Rng rng = trial_rng(5, t);
    FgGroup g = gen_random_group(cfg, rng);
    CHECK(hom_classify(random_automorphism(g, rng)).isomorphism());
    CHECK(hom_classify(random_injection_into(g, rng)).injective);
    CHECK(hom_classify(random_surjection_from(g, rng)).surjective);
  }
}
