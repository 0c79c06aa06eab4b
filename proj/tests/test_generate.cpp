#include "mvkit/generate.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace mvkit;

TEST_CASE("bound forcing") {
  TrialConfig cfg;
  cfg.max_rank = 0;
  cfg.max_factors = 1;
  cfg.max_order = 2;
  Rng rng(1);
  std::set<std::string> seen;
  for (int i = 0; i < 200; ++i) seen.insert(gen_random_group(cfg, rng).str());
  CHECK(seen == std::set<std::string>{"0", "Z/2"});

  cfg.max_factors = 0;
  CHECK_THROWS_AS(cfg.check(), InputError);
}

TEST_CASE("groups respect bounds") {
  TrialConfig cfg;
  Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    FgGroup g = gen_random_group(cfg, rng);
    CHECK(g.num_factors() <= cfg.max_factors);
    CHECK(g.free_rank() <= cfg.max_rank);
    for (const auto& d : g.invariants()) CHECK(d <= cfg.max_order);
  }
}

TEST_CASE("determinism") {
  TrialConfig cfg;
  Rng a(123), b(123);
  for (int i = 0; i < 50; ++i) CHECK(gen_random_group(cfg, a) == gen_random_group(cfg, b));
  Rng c = trial_rng(9, 4), d = trial_rng(9, 4);
  CHECK(c.raw() == d.raw());
  CHECK(trial_rng(9, 4).raw() != trial_rng(9, 5).raw());

  Rng l1 = trial_rng(3, 0), l2 = trial_rng(3, 0);
  KLadder x = gen_random_ladder(cfg, l1), y = gen_random_ladder(cfg, l2);
  for (std::size_t k = 0; k < 6; ++k) CHECK(hom_equal(x.verticals[k], y.verticals[k]));
}

TEST_CASE("uniform draws stay in range") {
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    long v = rng.uniform(-3, 5);
    CHECK(v >= -3);
    CHECK(v <= 5);
  }
  CHECK(rng.uniform(7, 7) == 7);
}

TEST_CASE("generated homs are well defined") {
  TrialConfig cfg;
  for (std::size_t t = 0; t < 1000; ++t) {
    Rng rng = trial_rng(10, t);
    FgGroup a = gen_random_group(cfg, rng), b = gen_random_group(cfg, rng);
    Hom h = gen_random_hom(a, b, rng);
    CHECK_NOTHROW(make_hom(a, b, h.matrix()));
  }
}

TEST_CASE("generated rows and ladders are valid") {
  TrialConfig cfg;
  for (std::size_t t = 0; t < 500; ++t) {
    Rng rng = trial_rng(11, t);
    ExactRow row = gen_random_exact_row(cfg, rng);
    CHECK(row.num_nodes() == 6);
    CHECK(check_row_exact(row).all_exact());
  }
  for (std::size_t t = 0; t < 300; ++t) {
    Rng rng = trial_rng(12, t);
    CHECK(validate_ladder(gen_random_ladder(cfg, rng)).valid());
  }
}

TEST_CASE("special complexes") {
  FgGroup o, z = FgGroup::from_invariants({0}), z6 = FgGroup::from_invariants({6});
  SplitComplex c{z, z, z6, z6, Hom::zero(z, z), Hom::zero(z6, z), Hom::zero(z6, z6)};
  ExactRow split = homology_row(c);
  CHECK(check_row_exact(split).all_exact());
  CHECK(is_zero_hom(split.map(2)));

  SplitComplex only{o, o, z6, z, Hom(), Hom::zero(z6, o), Hom::zero(z6, z)};
  ExactRow row = homology_row(only);
  CHECK(row.node(1) == row.node(2));
  CHECK(is_zero_hom(row.map(2)));

  TrialConfig cfg;
  Rng rng(13);
  KLadder id = gen_random_ladder(cfg, rng, LadderStrategy::identity);
  for (const auto& v : id.verticals) CHECK(hom_classify(v).isomorphism());
  KLadder zero = gen_random_ladder(cfg, rng, LadderStrategy::zero);
  for (const auto& v : zero.verticals) CHECK(is_zero_hom(v));
  CHECK(validate_ladder(zero).valid());
}
