#include "mvkit/generate.hpp"

#include <algorithm>
#include <limits>

namespace mvkit {

void TrialConfig::check() const {
  if (max_order < 1) throw InputError("max_order must be positive");
  if (max_factors < 1) throw InputError("max_factors must be positive");
}

long Rng::uniform(long lo, long hi) {
  if (hi < lo) throw InputError("Rng::uniform: empty range");
  const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (range == 0) return static_cast<long>(engine_());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t r;
  do r = engine_();
  while (r >= limit);
  return static_cast<long>(static_cast<std::uint64_t>(lo) + r % range);
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

FgGroup free_group(std::size_t rank) {
  return FgGroup::from_invariants(std::vector<Integer>(rank, Integer(0)));
}

Hom sum_map(const DirectSum& src, const DirectSum& tgt, const Hom& tl, const Hom& tr,
            const Hom& br) {
  return copair(src, compose(tgt.in1, tl), compose(tgt.in1, tr) + compose(tgt.in2, br));
}

Hom must_lift(const Hom& incl, const Hom& w) {
  auto l = lift_through(incl, w);
  if (!l) throw Error("map does not land in the kernel");
  return *l;
}

Hom must_descend(const Hom& proj, const Hom& w) {
  auto d = descend_through(proj, w);
  if (!d) throw Error("map does not vanish on the image");
  return *d;
}

}  // namespace

Rng trial_rng(std::uint64_t seed, std::size_t trial) {
  return Rng(splitmix(seed ^ splitmix(static_cast<std::uint64_t>(trial) + 1)));
}

FgGroup gen_random_group(const TrialConfig& cfg, Rng& rng) {
  const long factors = rng.uniform(0, cfg.max_factors);
  const long free = rng.uniform(0, std::min<long>(cfg.max_rank, factors));
  long torsion = factors - free;
  if (cfg.max_order < 2) torsion = 0;
  std::vector<Integer> inv;
  if (torsion > 0) {
    long d = rng.uniform(2, cfg.max_order);
    inv.push_back(d);
    for (long j = 1; j < torsion; ++j) {
      std::vector<long> divisors;
      for (long e = 2; e <= d; ++e)
        if (d % e == 0) divisors.push_back(e);
      d = divisors[rng.uniform(0, static_cast<long>(divisors.size()) - 1)];
      inv.push_back(d);
    }
    std::reverse(inv.begin(), inv.end());
  }
  for (long j = 0; j < free; ++j) inv.push_back(0);
  return FgGroup::from_invariants(inv);
}

Hom gen_random_hom(const FgGroup& src, const FgGroup& tgt, Rng& rng, long bound) {
  const auto& d = src.invariants();
  const auto& e = tgt.invariants();
  IntMatrix m(e.size(), d.size());
  for (std::size_t j = 0; j < d.size(); ++j)
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) {
        if (d[j] == 0) m(i, j) = rng.uniform(-bound, bound);
        continue;
      }
      Integer step = 1;
      if (d[j] != 0) step = e[i] / gcd(d[j], e[i]);
      const Integer count = e[i] / step;
      m(i, j) = step * rng.uniform(0, count.get_si() - 1);
    }
  return make_hom(src, tgt, m);
}

Hom random_automorphism(const FgGroup& g, Rng& rng) {
  const std::size_t n = g.presented_gens();
  if (n == 0) return Hom::identity(g);
  IntMatrix w = IntMatrix::identity(n);
  const long steps = rng.uniform(1, 2 * static_cast<long>(n) + 1);
  for (long s = 0; s < steps; ++s) {
    const std::size_t i = rng.uniform(0, static_cast<long>(n) - 1);
    const std::size_t j = rng.uniform(0, static_cast<long>(n) - 1);
    if (i == j) {
      if (rng.coin()) w.negate_row(i);
      continue;
    }
    w.add_row_multiple(i, j, Integer(rng.uniform(-2, 2)));
  }
  FgGroup moved = FgGroup::from_relations(w * g.relations());
  return make_hom_presented(g, moved, w);
}

Hom random_injection_into(const FgGroup& g, Rng& rng) {
  const std::size_t k = rng.uniform(0, static_cast<long>(g.num_factors()) + 1);
  IntMatrix gens = gen_random_hom(free_group(k), g, rng).matrix();
  return subgroup_generated(g, gens).incl();
}

Hom random_surjection_from(const FgGroup& g, Rng& rng) {
  const std::size_t k = rng.uniform(0, 2);
  IntMatrix gens = gen_random_hom(free_group(k), g, rng).matrix();
  return quotient(subgroup_generated(g, gens)).proj;
}

Hom SplitComplex::differential() const { return sum_map(c1(), c0(), dp, kappa, dpp); }

SplitComplex gen_random_complex(const TrialConfig& cfg, Rng& rng) {
  SplitComplex c;
  c.c1p = gen_random_group(cfg, rng);
  c.c0p = gen_random_group(cfg, rng);
  c.c1pp = gen_random_group(cfg, rng);
  c.c0pp = gen_random_group(cfg, rng);
  c.dp = gen_random_hom(c.c1p, c.c0p, rng);
  c.kappa = gen_random_hom(c.c1pp, c.c0p, rng);
  c.dpp = gen_random_hom(c.c1pp, c.c0pp, rng);
  return c;
}

ExactRow homology_row(const SplitComplex& c) {
  const DirectSum s1 = c.c1();
  const DirectSum s0 = c.c0();
  const Hom d = c.differential();
  KernelResult k = kernel(d), kp = kernel(c.dp), kpp = kernel(c.dpp);
  Quotient q = cokernel(d), qp = cokernel(c.dp), qpp = cokernel(c.dpp);
  return ExactRow({must_lift(k.incl, compose(s1.in1, kp.incl)),
                   must_lift(kpp.incl, compose(s1.pr2, k.incl)),
                   compose(qp.proj, compose(c.kappa, kpp.incl)),
                   must_descend(qp.proj, compose(q.proj, s0.in1)),
                   must_descend(q.proj, compose(qpp.proj, s0.pr2))});
}

void check_chain_map(const SplitComplex& a, const SplitComplex& b, const SplitMorphism& f) {
  if (!hom_equal(compose(b.dp, f.phi1p), compose(f.phi0p, a.dp)))
    throw Error("chain map: C' square does not commute");
  if (!hom_equal(compose(b.dpp, f.phi1pp), compose(f.phi0pp, a.dpp)))
    throw Error("chain map: C'' square does not commute");
  if (!hom_equal(compose(b.dp, f.sigma1) + compose(b.kappa, f.phi1pp),
                 compose(f.phi0p, a.kappa) + compose(f.sigma0, a.dpp)))
    throw Error("chain map: off-diagonal square does not commute");
}

std::vector<Hom> induced_verticals(const SplitComplex& a, const SplitComplex& b,
                                   const SplitMorphism& f) {
  check_chain_map(a, b, f);
  const Hom f1 = sum_map(a.c1(), b.c1(), f.phi1p, f.sigma1, f.phi1pp);
  const Hom f0 = sum_map(a.c0(), b.c0(), f.phi0p, f.sigma0, f.phi0pp);
  const Hom da = a.differential(), db = b.differential();
  auto on_h1 = [](const Hom& src_d, const Hom& tgt_d, const Hom& map) {
    return must_lift(kernel(tgt_d).incl, compose(map, kernel(src_d).incl));
  };
  auto on_h0 = [](const Hom& src_d, const Hom& tgt_d, const Hom& map) {
    return must_descend(cokernel(src_d).proj, compose(cokernel(tgt_d).proj, map));
  };
  return {on_h1(a.dp, b.dp, f.phi1p),   on_h1(da, db, f1), on_h1(a.dpp, b.dpp, f.phi1pp),
          on_h0(a.dp, b.dp, f.phi0p),   on_h0(da, db, f0), on_h0(a.dpp, b.dpp, f.phi0pp)};
}

ExactRow gen_random_exact_row(const TrialConfig& cfg, Rng& rng) {
  return homology_row(gen_random_complex(cfg, rng));
}

const char* strategy_name(LadderStrategy s) {
  switch (s) {
    case LadderStrategy::extension: return "extension";
    case LadderStrategy::identity: return "identity";
    case LadderStrategy::zero: return "zero";
    case LadderStrategy::isomorphism: return "isomorphism";
  }
  return "?";
}

KLadder gen_random_ladder(const TrialConfig& cfg, Rng& rng) {
  const long r = rng.uniform(0, 9);
  LadderStrategy s = r < 7 ? LadderStrategy::extension
                     : r == 7 ? LadderStrategy::isomorphism
                     : r == 8 ? LadderStrategy::identity
                              : LadderStrategy::zero;
  return gen_random_ladder(cfg, rng, s);
}

KLadder gen_random_ladder(const TrialConfig& cfg, Rng& rng, LadderStrategy strategy) {
  const SplitComplex a = gen_random_complex(cfg, rng);
  SplitComplex b;
  SplitMorphism f;
  switch (strategy) {
    case LadderStrategy::identity:
      b = a;
      f = {Hom::identity(a.c1p), Hom::identity(a.c0p), Hom::identity(a.c1pp),
           Hom::identity(a.c0pp), Hom::zero(a.c1pp, a.c1p), Hom::zero(a.c0pp, a.c0p)};
      break;
    case LadderStrategy::zero:
      b = gen_random_complex(cfg, rng);
      f = {Hom::zero(a.c1p, b.c1p), Hom::zero(a.c0p, b.c0p), Hom::zero(a.c1pp, b.c1pp),
           Hom::zero(a.c0pp, b.c0pp), Hom::zero(a.c1pp, b.c1p), Hom::zero(a.c0pp, b.c0p)};
      break;
    case LadderStrategy::isomorphism: {
      f.phi1p = random_automorphism(a.c1p, rng);
      f.phi0p = random_automorphism(a.c0p, rng);
      f.phi1pp = random_automorphism(a.c1pp, rng);
      f.phi0pp = random_automorphism(a.c0pp, rng);
      f.sigma1 = gen_random_hom(a.c1pp, a.c1p, rng);
      f.sigma0 = gen_random_hom(a.c0pp, a.c0p, rng);
      b.c1p = a.c1p;
      b.c0p = a.c0p;
      b.c1pp = a.c1pp;
      b.c0pp = a.c0pp;
      b.dp = compose(f.phi0p, compose(a.dp, inverse(f.phi1p)));
      b.dpp = compose(f.phi0pp, compose(a.dpp, inverse(f.phi1pp)));
      b.kappa = compose(compose(f.phi0p, a.kappa) + compose(f.sigma0, a.dpp) -
                            compose(b.dp, f.sigma1),
                        inverse(f.phi1pp));
      break;
    }
    case LadderStrategy::extension: {
      b.c0p = gen_random_group(cfg, rng);
      b.c0pp = gen_random_group(cfg, rng);
      f.phi0p = gen_random_hom(a.c0p, b.c0p, rng);
      f.phi0pp = gen_random_hom(a.c0pp, b.c0pp, rng);
      const DirectSum rp = direct_sum(a.c1p, gen_random_group(cfg, rng));
      const DirectSum rpp = direct_sum(a.c1pp, gen_random_group(cfg, rng));
      b.c1p = rp.sum;
      b.c1pp = rpp.sum;
      f.phi1p = rp.in1;
      f.phi1pp = rpp.in1;
      b.dp = copair(rp, compose(f.phi0p, a.dp), gen_random_hom(rp.in2.src(), b.c0p, rng));
      b.dpp = copair(rpp, compose(f.phi0pp, a.dpp), gen_random_hom(rpp.in2.src(), b.c0pp, rng));
      f.sigma0 = gen_random_hom(a.c0pp, b.c0p, rng);
      f.sigma1 = gen_random_hom(a.c1pp, b.c1p, rng);
      Hom forced = compose(f.phi0p, a.kappa) + compose(f.sigma0, a.dpp) - compose(b.dp, f.sigma1);
      b.kappa = copair(rpp, forced, gen_random_hom(rpp.in2.src(), b.c0p, rng));
      break;
    }
  }
  return {0, homology_row(a), homology_row(b), induced_verticals(a, b, f)};
}

namespace {

ExactRow conjugate(const ExactRow& row, const std::vector<Hom>& theta) {
  std::vector<Hom> maps;
  for (std::size_t j = 0; j < row.num_maps(); ++j)
    maps.push_back(compose(theta[j + 1], compose(row.map(j), inverse(theta[j]))));
  return ExactRow(std::move(maps));
}

std::vector<Hom> node_automorphisms(const ExactRow& row, Rng& rng) {
  std::vector<Hom> theta;
  for (std::size_t j = 0; j < row.num_nodes(); ++j)
    theta.push_back(random_automorphism(row.node(j), rng));
  return theta;
}

}  // namespace

KLadder transport_ladder(const KLadder& k, Rng& rng) {
  std::vector<Hom> theta = node_automorphisms(k.b_row, rng);
  std::vector<Hom> verticals;
  for (std::size_t j = 0; j < k.verticals.size(); ++j)
    verticals.push_back(compose(theta[j], k.verticals[j]));
  return {k.degree, k.a_row, conjugate(k.b_row, theta), std::move(verticals)};
}

Relabeled relabel_ladder(const KLadder& k, Rng& rng) {
  Relabeled r;
  r.theta_a = node_automorphisms(k.a_row, rng);
  r.theta_b = node_automorphisms(k.b_row, rng);
  std::vector<Hom> verticals;
  for (std::size_t j = 0; j < k.verticals.size(); ++j)
    verticals.push_back(compose(r.theta_b[j], compose(k.verticals[j], inverse(r.theta_a[j]))));
  r.ladder = {k.degree, conjugate(k.a_row, r.theta_a), conjugate(k.b_row, r.theta_b),
              std::move(verticals)};
  return r;
}

}  // namespace mvkit
