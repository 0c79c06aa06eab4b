#include "mvkit/generate.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace mvkit;

namespace {

FgGroup Zmod(long n) { return FgGroup::from_invariants({n}); }
const FgGroup Z = FgGroup::from_invariants({0});
const FgGroup O;

bool mentions(const std::vector<std::string>& lines, const std::string& what) {
  for (const auto& l : lines)
    if (l.find(what) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("row exactness") {
  ExactRow ses({Hom::zero(O, Z), make_hom(Z, Z, IntMatrix{{2}}), make_hom(Z, Zmod(2), IntMatrix{{1}}),
                Hom::zero(Zmod(2), O)});
  CHECK(check_row_exact(ses).all_exact());
  CHECK(check_row_exact(ses).nodes.size() == 3);

  Hom two = make_hom(Z, Z, IntMatrix{{2}});
  ExactnessReport r = check_row_exact(ExactRow({two, two}));
  REQUIRE(r.nodes.size() == 1);
  CHECK_FALSE(r.nodes[0].complex_ok);
  CHECK(r.failures().size() == 1);

  CHECK(check_row_exact(ExactRow({Hom(), Hom(), Hom()})).all_exact());

  ExactRow partial({two, two}, {});
  CHECK(partial.claimed().empty());
  CHECK_THROWS_AS(ExactRow({two, Hom::identity(Zmod(2))}), InputError);
}

TEST_CASE("pullback examples") {
  Hom mod2 = make_hom(Z, Zmod(2), IntMatrix{{1}});
  Pullback p = pullback({mod2, mod2});
  CHECK(p.object.invariants() == std::vector<Integer>{0, 0});
  CHECK(hom_equal(compose(mod2, p.to_b), compose(mod2, p.to_c)));

  FgGroup b = FgGroup::from_invariants({4, 0});
  Pullback q = pullback({Hom::identity(b), Hom::identity(b)});
  CHECK(q.object == b);
  CHECK(pullback({Hom(), Hom()}).object.is_trivial());

  CHECK(hom_equal(into_pullback(p, p.to_b, p.to_c), Hom::identity(p.object)));
  CHECK(is_zero_hom(into_pullback(p, Hom::zero(O, Z), Hom::zero(O, Z))));
  try {
    into_pullback(p, Hom::identity(Z), Hom::zero(Z, Z));
    FAIL("induced a map from non-commuting legs");
  } catch (const CommuteError& e) {
    CHECK(e.witness() == 0);
  }
}

TEST_CASE("pushout examples") {
  Pushout p = pushout({make_hom(Z, Z, IntMatrix{{2}}), make_hom(Z, Z, IntMatrix{{3}})});
  CHECK(p.object == Z);
  CHECK(pushout({Hom::identity(Zmod(6)), Hom::identity(Zmod(6))}).object == Zmod(6));
  CHECK(pushout({Hom::zero(O, Zmod(2)), Hom::zero(O, Zmod(3))}).object == Zmod(6));
  CHECK(hom_equal(from_pushout(p, p.from_b, p.from_c), Hom::identity(p.object)));
  CHECK_THROWS_AS(from_pushout(p, Hom::identity(Z), Hom::identity(Z)), CommuteError);
}

TEST_CASE("universal objects against enumeration") {
  TrialConfig cfg;
  cfg.max_rank = 0;
  cfg.max_order = 8;
  cfg.max_factors = 2;
  for (std::size_t t = 0; t < 150; ++t) {
    Rng rng = trial_rng(17, t);
    FgGroup a = gen_random_group(cfg, rng), b = gen_random_group(cfg, rng),
            c = gen_random_group(cfg, rng);
    Hom f = gen_random_hom(b, a, rng), g = gen_random_hom(c, a, rng);
    Pullback p = pullback({f, g});
    CHECK(oracle::Finite(p.object).order() == oracle::pullback_order(f, g));
    CHECK(oracle::injective(p.incl));

    Hom f2 = gen_random_hom(a, b, rng), g2 = gen_random_hom(a, c, rng);
    Pushout q = pushout({f2, g2});
    CHECK(oracle::Finite(q.object).order() == oracle::pushout_order(f2, g2));
    CHECK(oracle::surjective(q.proj));
  }
}

TEST_CASE("stability and lifting identity cases") {
  FgGroup a = Zmod(2), b = Zmod(4), c = Zmod(2);
  ExactRow row({make_hom(a, b, IntMatrix{{2}}), make_hom(b, c, IntMatrix{{1}}), Hom::zero(c, O)});
  ConstructedRow s = stability_pullback(row, Hom::identity(c));
  CHECK(s.report.all_exact());
  CHECK(s.row.node(1) == b);
  CHECK(hom_classify(s.compare_b).isomorphism());

  ConstructedRow s0 = stability_pullback(row, Hom::zero(O, c));
  CHECK(s0.report.all_exact());
  CHECK(s0.row.node(1) == Zmod(2));

  ConstructedRow p = stability_pushout(row, Hom::identity(b));
  CHECK(p.report.all_exact());
  CHECK(p.row.node(2) == c);

  ConstructedRow p0 = stability_pushout(row, Hom::zero(b, O));
  CHECK(p0.report.all_exact());
  CHECK(p0.row.node(1).is_trivial());

  ConstructedRow l = lifting_pushout(row, Hom::identity(b));
  CHECK(l.report.all_exact());

  ConstructedRow lb = lifting_pullback(row, Hom::identity(c), compose(row.map(1), row.map(0)));
  CHECK(lb.report.all_exact());
}

TEST_CASE("lifting pullback depends on the second component") {
  FgGroup z2 = Zmod(2);
  ExactRow bottom({Hom::identity(z2), Hom::zero(z2, O), Hom::zero(O, O)});
  Hom pi2 = Hom::zero(z2, O);
  ConstructedRow good = lifting_pullback(bottom, pi2, Hom::zero(z2, z2));
  CHECK(good.report.all_exact());
  ConstructedRow bad = lifting_pullback(bottom, pi2, Hom::identity(z2));
  CHECK_FALSE(bad.report.all_exact());
  CHECK_FALSE(bad.report.nodes[0].exact());
  ExactRow iso({Hom::zero(O, z2), Hom::identity(z2), Hom::zero(z2, O)});
  CHECK_THROWS_AS(lifting_pullback(iso, Hom::zero(z2, z2), Hom::zero(O, z2)), PreconditionError);
}

TEST_CASE("construction preconditions") {
  FgGroup z4 = Zmod(4);
  ExactRow row({Hom::zero(O, z4), Hom::identity(z4), Hom::zero(z4, O)});
  CHECK_THROWS_AS(stability_pullback(row, make_hom(z4, z4, IntMatrix{{2}})), PreconditionError);
  CHECK_THROWS_AS(stability_pushout(row, make_hom(z4, z4, IntMatrix{{2}})), PreconditionError);
}

TEST_CASE("five lemma") {
  TrialConfig cfg;
  for (std::size_t t = 0; t < 30; ++t) {
    Rng rng = trial_rng(23, t);
    ExactRow row = gen_random_exact_row(cfg, rng);
    std::vector<Hom> homs(row.maps().begin(), row.maps().begin() + 4);
    ExactRow five(homs);
    std::vector<Hom> ids;
    for (std::size_t k = 0; k < 5; ++k) ids.push_back(Hom::identity(five.node(k)));
    FiveLemmaReport r = five_lemma_verify({five, five, ids});
    CHECK(r.passed());
    CHECK(r.conclusion_claimed);
  }

  FgGroup z3 = Zmod(3);
  ExactRow five({Hom::zero(O, O), Hom::zero(O, z3), Hom::identity(z3), Hom::zero(z3, O)});
  std::vector<Hom> v{Hom(), Hom(), scale(2, Hom::identity(z3)), Hom::identity(z3), Hom()};
  FiveLemmaReport r = five_lemma_verify({five, five, v});
  CHECK_FALSE(r.conclusion_claimed);
  CHECK(mentions(r.violations, "square 2"));

  std::vector<Hom> w{Hom(), Hom(), Hom::identity(z3), Hom::zero(z3, z3), Hom()};
  FiveLemmaReport r2 = five_lemma_verify({five, five, w});
  CHECK_FALSE(r2.conclusion_claimed);
  CHECK(mentions(r2.violations, "vertical 3 is not an isomorphism"));
}
