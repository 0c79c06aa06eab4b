#include "mvkit/suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

namespace mvkit {

namespace {

constexpr std::size_t kMaxDumps = 5;

const std::vector<std::string> kSuites = {"snf",     "group",   "pullback", "pushout", "prop21a",
                                          "prop21b", "prop22a", "prop22b",  "five",    "mv1",
                                          "mv2",     "phi",     "excision", "birelative-ses"};

class Recorder {
 public:
  Recorder(ReportDocument& doc, std::vector<std::string> names) : doc_(doc) {
    for (auto& n : names) doc_.properties.push_back({std::move(n), 0, 0, ""});
  }

  void check(const std::string& name, std::size_t trial, bool ok, const std::string& detail = "") {
    PropertyResult& p = find(name);
    ++p.checked;
    if (ok) return;
    ++p.failed;
    if (p.first_failure.empty())
      p.first_failure = "trial " + std::to_string(trial) + (detail.empty() ? "" : ": " + detail);
  }

  void dump(Counterexample c) {
    if (doc_.counterexamples.size() < kMaxDumps) doc_.counterexamples.push_back(std::move(c));
  }

  bool want_dump() const { return doc_.counterexamples.size() < kMaxDumps; }

 private:
  PropertyResult& find(const std::string& name) {
    for (auto& p : doc_.properties)
      if (p.name == name) return p;
    doc_.properties.push_back({name, 0, 0, ""});
    return doc_.properties.back();
  }

  ReportDocument& doc_;
};

std::string trial_name(std::size_t t) { return "t" + std::to_string(t); }

std::string ladder_dump(std::size_t t, const KLadder& k) {
  ModelWriter w(trial_name(t) + "_");
  w.comment("counterexample from trial " + std::to_string(t));
  w.ladder(trial_name(t), k);
  return w.str();
}

std::string diagram_dump(std::size_t t, const LadderDiagram& d) {
  ModelWriter w(trial_name(t) + "_");
  w.comment("counterexample from trial " + std::to_string(t));
  w.diagram(trial_name(t), d);
  return w.str();
}

std::string row_dump(std::size_t t, const ExactRow& r) {
  ModelWriter w(trial_name(t) + "_");
  w.comment("counterexample from trial " + std::to_string(t));
  w.row(trial_name(t), r);
  return w.str();
}

std::vector<std::string> replay_check(const std::string& model, const std::string& only = "") {
  return check_model(parse_model(model, false), only);
}

std::string first_or(const std::vector<std::string>& lines, const std::string& fallback) {
  return lines.empty() ? fallback : lines.front();
}

// Runs body, turning library errors into a failed "completed" property.
void guarded(Recorder& rec, std::size_t t, const std::function<void()>& body) {
  try {
    body();
    rec.check("completed without error", t, true);
  } catch (const std::exception& e) {
    rec.check("completed without error", t, false, e.what());
  }
}

IntMatrix random_matrix(Rng& rng) {
  const std::size_t r = rng.uniform(0, 6);
  const std::size_t c = rng.uniform(0, 6);
  IntMatrix m(r, c);
  if (r > 0 && c > 0 && rng.uniform(0, 4) == 0) {
    const std::size_t inner = rng.uniform(1, std::min(r, c));
    IntMatrix a(r, inner), b(inner, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < inner; ++j) a(i, j) = rng.uniform(-10, 10);
    for (std::size_t i = 0; i < inner; ++i)
      for (std::size_t j = 0; j < c; ++j) b(i, j) = rng.uniform(-10, 10);
    return a * b;
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (rng.uniform(0, 3) != 0) m(i, j) = rng.uniform(-100, 100);
  return m;
}

bool is_diagonal(const IntMatrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  return true;
}

bool divisibility_chain(const SmithResult& s) {
  const std::vector<Integer> diag = s.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (i < s.rank) {
      if (diag[i] <= 0) return false;
      if (i + 1 < s.rank && diag[i + 1] % diag[i] != 0) return false;
    } else if (diag[i] != 0) {
      return false;
    }
  }
  return true;
}

void run_snf(ReportDocument& doc) {
  Recorder rec(doc, {"U M V = D", "U unimodular", "V unimodular", "D diagonal",
                     "divisibility chain", "rank agrees with elimination", "completed without error"});
  for (std::size_t t = 0; t < doc.cfg.trials; ++t) {
    Rng rng = trial_rng(doc.cfg.seed, t);
    IntMatrix m = random_matrix(rng);
    guarded(rec, t, [&] {
      SmithResult s = snf(m);
      bool ok = true;
      auto chk = [&](const char* name, bool cond) {
        rec.check(name, t, cond, to_literal(m));
        ok = ok && cond;
      };
      chk("U M V = D", s.U * m * s.V == s.D);
      chk("U unimodular", abs(determinant(s.U)) == 1);
      chk("V unimodular", abs(determinant(s.V)) == 1);
      chk("D diagonal", is_diagonal(s.D));
      chk("divisibility chain", divisibility_chain(s));
      chk("rank agrees with elimination", rank(m) == s.rank);
      if (!ok && rec.want_dump())
        rec.dump({t, "snf", {"matrix " + to_literal(m)}, to_literal(m) + "\n", "mvkit snf FILE"});
    });
  }
}

bool canonical_invariants(const FgGroup& g) {
  const auto& inv = g.invariants();
  for (std::size_t i = 0; i < inv.size(); ++i) {
    if (i < g.torsion_factors()) {
      if (inv[i] < 2) return false;
      if (i > 0 && inv[i] % inv[i - 1] != 0) return false;
    } else if (inv[i] != 0) {
      return false;
    }
  }
  return true;
}

void run_group(ReportDocument& doc) {
  Recorder rec(doc, {"invariants canonical", "presentation round trip", "hom respects relations",
                     "first isomorphism theorem", "kernel and cokernel exact",
                     "completed without error"});
  for (std::size_t t = 0; t < doc.cfg.trials; ++t) {
    Rng rng = trial_rng(doc.cfg.seed, t);
    guarded(rec, t, [&] {
      const std::size_t n = rng.uniform(1, 4), k = rng.uniform(0, 4);
      IntMatrix rel(n, k);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) rel(i, j) = rng.uniform(-12, 12);
      FgGroup p = FgGroup::from_relations(rel);
      rec.check("invariants canonical", t, canonical_invariants(p), "relations " + to_literal(rel));
      IntMatrix images = p.to_canonical() * rel;
      bool round = p.to_canonical() * p.from_canonical() == IntMatrix::identity(p.num_factors());
      for (std::size_t j = 0; j < images.cols(); ++j) round = round && p.is_zero_element(images.col(j));
      rec.check("presentation round trip", t, round, "relations " + to_literal(rel));

      FgGroup g = gen_random_group(doc.cfg, rng), h = gen_random_group(doc.cfg, rng);
      Hom f = gen_random_hom(g, h, rng);
      bool respects = true;
      for (std::size_t j = 0; j < g.torsion_factors(); ++j) {
        IntMatrix col = f.matrix().col(j);
        for (std::size_t i = 0; i < col.rows(); ++i) col(i, 0) *= g.invariants()[j];
        respects = respects && h.is_zero_element(col);
      }
      rec.check("hom respects relations", t, respects, describe(f));
      Subgroup ker = kernel_subgroup(f);
      rec.check("first isomorphism theorem", t, quotient(ker).group == image(f).group(), describe(f));
      Quotient coker = cokernel(f);
      ExactnessReport r = check_row_exact(ExactRow({ker.incl(), f, coker.proj}));
      const bool ends = hom_classify(ker.incl()).injective && hom_classify(coker.proj).surjective;
      rec.check("kernel and cokernel exact", t, r.all_exact() && ends, describe(f));
    });
  }
}

void run_pullback(ReportDocument& doc) {
  Recorder rec(doc, {"square commutes", "legs jointly monic", "commuting pair factors",
                     "induced map unique", "factorization iff commuting", "completed without error"});
  for (std::size_t t = 0; t < doc.cfg.trials; ++t) {
    Rng rng = trial_rng(doc.cfg.seed, t);
    guarded(rec, t, [&] {
      FgGroup b = gen_random_group(doc.cfg, rng), c = gen_random_group(doc.cfg, rng),
              d = gen_random_group(doc.cfg, rng), x = gen_random_group(doc.cfg, rng);
      Hom f = gen_random_hom(b, d, rng), g = gen_random_hom(c, d, rng);
      Pullback p = pullback({f, g});
      const std::string what = describe(f) + " / " + describe(g);
      rec.check("square commutes", t, hom_equal(compose(f, p.to_b), compose(g, p.to_c)), what);
      rec.check("legs jointly monic", t, p.jointly_monic, what);
      Hom w = gen_random_hom(x, p.object, rng);
      bool factors = false, unique = false;
      try {
        Hom l = into_pullback(p, compose(p.to_b, w), compose(p.to_c, w));
        factors = hom_equal(compose(p.to_b, l), compose(p.to_b, w)) &&
                  hom_equal(compose(p.to_c, l), compose(p.to_c, w));
        unique = hom_equal(l, w);
      } catch (const CommuteError&) {
      }
      rec.check("commuting pair factors", t, factors, what);
      rec.check("induced map unique", t, unique, what);
      Hom u = gen_random_hom(x, b, rng), v = gen_random_hom(x, c, rng);
      if (rng.coin()) v = compose(p.to_c, gen_random_hom(x, p.object, rng));
      const bool commutes = hom_equal(compose(f, u), compose(g, v));
      bool induced = true;
      try {
        into_pullback(p, u, v);
      } catch (const CommuteError&) {
        induced = false;
      }
      rec.check("factorization iff commuting", t, induced == commutes, what);
    });
  }
}

void run_pushout(ReportDocument& doc) {
  Recorder rec(doc, {"square commutes", "legs jointly epic", "commuting pair factors",
                     "induced map unique", "factorization iff commuting", "completed without error"});
  for (std::size_t t = 0; t < doc.cfg.trials; ++t) {
    Rng rng = trial_rng(doc.cfg.seed, t);
    guarded(rec, t, [&] {
      FgGroup a = gen_random_group(doc.cfg, rng), b = gen_random_group(doc.cfg, rng),
              c = gen_random_group(doc.cfg, rng), x = gen_random_group(doc.cfg, rng);
      Hom f = gen_random_hom(a, b, rng), g = gen_random_hom(a, c, rng);
      Pushout q = pushout({f, g});
      const std::string what = describe(f) + " / " + describe(g);
      rec.check("square commutes", t, hom_equal(compose(q.from_b, f), compose(q.from_c, g)), what);
      rec.check("legs jointly epic", t, q.jointly_epic, what);
      Hom w = gen_random_hom(q.object, x, rng);
      bool factors = false, unique = false;
      try {
        Hom l = from_pushout(q, compose(w, q.from_b), compose(w, q.from_c));
        factors = hom_equal(compose(l, q.from_b), compose(w, q.from_b)) &&
                  hom_equal(compose(l, q.from_c), compose(w, q.from_c));
        unique = hom_equal(l, w);
      } catch (const CommuteError&) {
      }
      rec.check("commuting pair factors", t, factors, what);
      rec.check("induced map unique", t, unique, what);
      Hom u = gen_random_hom(b, x, rng), v = gen_random_hom(c, x, rng);
      if (rng.coin()) v = compose(gen_random_hom(q.object, x, rng), q.from_c);
      const bool commutes = hom_equal(compose(u, f), compose(v, g));
      bool induced = true;
      try {
        from_pushout(q, u, v);
      } catch (const CommuteError&) {
        induced = false;
      }
      rec.check("factorization iff commuting", t, induced == commutes, what);
    });
  }
}

ExactRow random_four_term(const TrialConfig& cfg, Rng& rng) {
  ExactRow six = gen_random_exact_row(cfg, rng);
  const std::size_t k = rng.uniform(0, 2);
  return ExactRow({six.map(k), six.map(k + 1), six.map(k + 2)});
}

std::vector<std::string> square_failures(const LadderDiagram& d) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k + 1 < d.verticals.size(); ++k)
    if (auto w = d.square_failure(k))
      out.push_back("square " + std::to_string(k) + " fails on generator " + std::to_string(*w));
  return out;
}

// Shared driver of the four construction suites. build returns the
// constructed row and the comparison ladder between it and the input.
void run_construction(ReportDocument& doc,
                      const std::function<std::pair<ConstructedRow, LadderDiagram>(
                          const ExactRow&, Rng&)>& build) {
  Recorder rec(doc, {"input row exact", "output row exact", "comparison squares commute",
                     "completed without error"});
  for (std::size_t t = 0; t < doc.cfg.trials; ++t) {
    Rng rng = trial_rng(doc.cfg.seed, t);
    guarded(rec, t, [&] {
      ExactRow input = random_four_term(doc.cfg, rng);
      ExactnessReport in_report = check_row_exact(input);
      rec.check("input row exact", t, in_report.all_exact(), first_or(in_report.failures(), ""));
      auto [out, cmp] = build(input, rng);
      ExactRow row = out.row;
      if (doc.inject_fault && !is_zero_hom(row.map(1))) row = zero_map(row, 2);
      ExactnessReport r = check_row_exact(row);
      rec.check("output row exact", t, r.all_exact(), first_or(r.failures(), ""));
      if (!r.all_exact() && rec.want_dump()) {
        std::string model = row_dump(t, row);
        rec.dump({t, "output row exact", replay_check(model), model, "mvkit check FILE"});
      }
      std::vector<std::string> sq = square_failures(cmp);
      rec.check("comparison squares commute", t, sq.empty(), first_or(sq, ""));
    });
  }
}

LadderDiagram ladder_of(const ExactRow& top, const ExactRow& bottom, const Hom& vb, const Hom& vc) {
  return {top, bottom,
          {Hom::identity(top.node(0)), vb, vc, Hom::identity(top.node(3))}};
}

void run_prop21a(ReportDocument& doc) {
  run_construction(doc, [](const ExactRow& row, Rng& rng) {
    Hom i2 = random_injection_into(row.node(2), rng);
    ConstructedRow c = stability_pullback(row, i2);
    return std::make_pair(c, ladder_of(c.row, row, c.compare_b, c.compare_c));
  });
}

void run_prop21b(ReportDocument& doc) {
  run_construction(doc, [](const ExactRow& row, Rng& rng) {
    Hom pi1 = random_surjection_from(row.node(1), rng);
    ConstructedRow c = stability_pushout(row, pi1);
    return std::make_pair(c, ladder_of(row, c.row, c.compare_b, c.compare_c));
  });
}

void run_prop22a(ReportDocument& doc, const TrialConfig& cfg) {
  run_construction(doc, [&cfg](const ExactRow& row, Rng& rng) {
    const FgGroup& b1 = row.node(1);
    DirectSum ds = direct_sum(b1, gen_random_group(cfg, rng));
    Hom i1 = pair_into(ds, Hom::identity(b1), gen_random_hom(b1, ds.pr2.tgt(), rng));
    ConstructedRow c = lifting_pushout(row, i1);
    return std::make_pair(c, ladder_of(row, c.row, c.compare_b, c.compare_c));
  });
}

void run_prop22b(ReportDocument& doc, const TrialConfig& cfg) {
  run_construction(doc, [&cfg](const ExactRow& row, Rng& rng) {
    const FgGroup& c2 = row.node(2);
    DirectSum ds = direct_sum(c2, gen_random_group(cfg, rng));
    Hom pi2 = copair(ds, Hom::identity(c2), gen_random_hom(ds.pr2.tgt(), c2, rng));
    ConstructedRow c = lifting_pullback(row, pi2, Hom::zero(row.node(0), ds.sum));
    return std::make_pair(c, ladder_of(c.row, row, c.compare_b, c.compare_c));
  });
}

ExactRow slice(const ExactRow& row, std::size_t from, std::size_t maps) {
  std::vector<Hom> out(row.maps().begin() + from, row.maps().begin() + from + maps);
  return ExactRow(std::move(out));
}

bool two_invertible(const FgGroup& g) { return g.is_finite() && g.order() % 2 != 0; }

bool has_prefix(const std::vector<std::string>& lines, const std::string& prefix) {
  return std::any_of(lines.begin(), lines.end(),
                     [&](const std::string& l) { return l.rfind(prefix, 0) == 0; });
}

void run_five(ReportDocument& doc) {
  Recorder rec(doc, {"hypotheses hold", "middle vertical is an isomorphism",
                     "violation detected without iso claim", "violated hypothesis named",
                     "completed without error"});
  const TrialConfig& cfg = doc.cfg;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    Rng rng = trial_rng(cfg.seed, t);
    guarded(rec, t, [&] {
      KLadder k = transport_ladder(gen_random_ladder(cfg, rng, LadderStrategy::isomorphism), rng);
      const std::size_t from = rng.uniform(0, 1);
      std::vector<Hom> verts(k.verticals.begin() + from, k.verticals.begin() + from + 5);
      LadderDiagram d{slice(k.a_row, from, 4), slice(k.b_row, from, 4), verts};
      if (doc.inject_fault && !is_zero_hom(d.top.map(1))) d.top = zero_map(d.top, 2);
      FiveLemmaReport r = five_lemma_verify(d);
      rec.check("hypotheses hold", t, r.violations.empty(), first_or(r.violations, ""));
      if (!r.violations.empty() && rec.want_dump()) {
        std::string model = diagram_dump(t, d);
        rec.dump({t, "hypotheses hold", replay_check(model, trial_name(t)), model,
                  "mvkit check FILE --ladder " + trial_name(t)});
      }
      if (r.conclusion_claimed)
        rec.check("middle vertical is an isomorphism", t, r.middle_is_iso, "");
    });
  }
  // Hypothesis-violating ladders: all verticals 2, one vertical -1, or a
  // row with a zeroed map. Indices continue after the valid trials.
  const std::size_t violating = cfg.trials / 6;
  for (std::size_t v = 0; v < violating; ++v) {
    const std::size_t t = cfg.trials + v;
    Rng rng = trial_rng(cfg.seed, t);
    guarded(rec, t, [&] {
      const int kind = static_cast<int>(v % 3);
      for (int attempt = 0; attempt < 50; ++attempt) {
        ExactRow row = slice(gen_random_exact_row(cfg, rng), rng.uniform(0, 1), 4);
        std::vector<Hom> id;
        for (std::size_t j = 0; j < 5; ++j) id.push_back(Hom::identity(row.node(j)));
        LadderDiagram d{row, row, id};
        std::vector<std::string> expected;
        bool exact_set = true;
        if (kind == 0) {
          for (std::size_t j = 0; j < 5; ++j) d.verticals[j] = scale(2, id[j]);
          for (std::size_t j : {0, 1, 3, 4})
            if (!two_invertible(row.node(j)))
              expected.push_back("vertical " + std::to_string(j) + " is not an isomorphism");
        } else if (kind == 1) {
          const std::size_t j = rng.uniform(0, 4);
          d.verticals[j] = -id[j];
          if (j >= 1 && !is_zero_hom(scale(2, row.map(j - 1))))
            expected.push_back("square " + std::to_string(j - 1) + " does not commute");
          if (j <= 3 && !is_zero_hom(scale(2, row.map(j))))
            expected.push_back("square " + std::to_string(j) + " does not commute");
        } else {
          const std::size_t m = is_zero_hom(row.map(1)) ? 2 : 1;
          if (is_zero_hom(row.map(m))) continue;
          d.top = d.bottom = zero_map(row, m + 1);
          exact_set = false;
          for (const char* side : {"top row", "bottom row"})
            expected.push_back(std::string(side) + " not exact at node " + std::to_string(m + 1));
        }
        if (expected.empty()) continue;
        FiveLemmaReport r = five_lemma_verify(d);
        rec.check("violation detected without iso claim", t,
                  !r.violations.empty() && !r.conclusion_claimed);
        bool named = true;
        for (const auto& e : expected) named = named && has_prefix(r.violations, e);
        if (exact_set) named = named && r.violations.size() == expected.size();
        else
          for (const auto& line : r.violations)
            named = named && (line.rfind("top row", 0) == 0 || line.rfind("bottom row", 0) == 0);
        rec.check("violated hypothesis named", t, named, first_or(r.violations, "no violation"));
        return;
      }
      throw Error("could not draw a violating ladder");
    });
  }
}

KLadder with_fault(const KLadder& k) {
  if (is_zero_hom(k.alpha())) return k;
  return {k.degree, zero_map(k.a_row, kAbsLo), k.b_row, k.verticals};
}

// Shared driver of the ladder suites: draws a ladder, checks validity (with
// fault injection applied first) and hands valid ladders to body.
void run_ladders(ReportDocument& doc, std::vector<std::string> props,
                 const std::function<KLadder(Rng&)>& draw,
                 const std::function<void(Recorder&, std::size_t, const KLadder&, Rng&)>& body) {
  props.insert(props.begin(), "ladder valid");
  props.push_back("completed without error");
  Recorder rec(doc, props);
  for (std::size_t t = 0; t < doc.cfg.trials; ++t) {
    Rng rng = trial_rng(doc.cfg.seed, t);
    guarded(rec, t, [&] {
      KLadder k = draw(rng);
      if (doc.inject_fault) k = with_fault(k);
      LadderValidation v = validate_ladder(k);
      rec.check("ladder valid", t, v.valid(), first_or(v.violations, ""));
      if (!v.valid()) {
        if (rec.want_dump()) {
          std::string model = ladder_dump(t, k);
          rec.dump({t, "ladder valid", replay_check(model, trial_name(t)), model,
                    "mvkit check FILE --ladder " + trial_name(t)});
        }
        return;
      }
      body(rec, t, k, rng);
    });
  }
}

void dump_analysis(Recorder& rec, std::size_t t, const KLadder& k, const std::string& property,
                   const std::string& command) {
  if (!rec.want_dump()) return;
  std::string model = ladder_dump(t, k);
  Model parsed = parse_model(model);
  MilnorAnalysis m = analyze(parsed.find_ladder(trial_name(t))->ladder);
  rec.dump({t, property, analysis_failures(m, command), model,
            "mvkit " + command + " FILE --ladder " + trial_name(t)});
}

void run_mv1(ReportDocument& doc) {
  const TrialConfig cfg = doc.cfg;
  run_ladders(
      doc,
      {"quo-K pushout = quotient", "sub-K pullback = preimage", "glued diagram commutes and is exact",
       "exact at sub-K", "exact at quo-K"},
      [&](Rng& rng) { return gen_random_ladder(cfg, rng); },
      [](Recorder& rec, std::size_t t, const KLadder& k, Rng&) {
        MilnorAnalysis m = analyze(k);
        MVSegment s = weibel_segment(m);
        rec.check("quo-K pushout = quotient", t, m.quo.constructions_agree);
        rec.check("sub-K pullback = preimage", t, m.sub.constructions_agree);
        rec.check("glued diagram commutes and is exact", t, m.glued_violations.empty(),
                  first_or(m.glued_violations, ""));
        rec.check("exact at sub-K", t, s.report.nodes[0].exact());
        rec.check("exact at quo-K", t, s.report.nodes[1].exact());
        if (!analysis_failures(m, "mv1").empty()) dump_analysis(rec, t, k, "mv1", "mv1");
      });
}

void run_mv2(ReportDocument& doc) {
  const TrialConfig cfg = doc.cfg;
  run_ladders(
      doc, {"exact at X", "exact at K_i(A)"},
      [&](Rng& rng) { return gen_random_ladder(cfg, rng); },
      [](Recorder& rec, std::size_t t, const KLadder& k, Rng&) {
        MilnorAnalysis m = analyze(k);
        MVSegment s = mv2_segment(m);
        rec.check("exact at X", t, s.report.nodes[0].exact());
        rec.check("exact at K_i(A)", t, s.report.nodes[1].exact());
        if (!s.report.all_exact()) dump_analysis(rec, t, k, "mv2", "mv2");
      });
}

void run_phi(ReportDocument& doc) {
  const TrialConfig cfg = doc.cfg;
  run_ladders(
      doc,
      {"ker phi = alpha(ker eps)", "im phi = sub-K", "proj_sub surjective",
       "relabeling gives isomorphic quo-K, sub-K, X"},
      [&](Rng& rng) { return gen_random_ladder(cfg, rng); },
      [](Recorder& rec, std::size_t t, const KLadder& k, Rng& rng) {
        MilnorAnalysis m = analyze(k);
        rec.check("ker phi = alpha(ker eps)", t, m.x.kernel_ok);
        rec.check("im phi = sub-K", t, m.x.image_ok);
        rec.check("proj_sub surjective", t, m.x.proj_sub_onto);
        if (!analysis_failures(m, "phi").empty()) dump_analysis(rec, t, k, "phi", "phi");

        Relabeled r = relabel_ladder(k, rng);
        MilnorAnalysis n = analyze(r.ladder);
        const Hom& ta = r.theta_a[kAbsLo];
        const Hom& tb = r.theta_b[kQuoHi];
        bool ok = m.quo.group == n.quo.group && m.sub.group == n.sub.group && m.x.group == n.x.group;
        if (ok) {
          auto quo_iso = descend_through(m.quo.pi, compose(n.quo.pi, ta));
          auto sub_iso = lift_through(n.sub.incl, compose(tb, m.sub.incl));
          ok = quo_iso && sub_iso && hom_classify(*quo_iso).isomorphism() &&
               hom_classify(*sub_iso).isomorphism();
          if (ok) {
            Hom x_iso = into_pullback(n.x.pullback, compose(*sub_iso, m.x.proj_sub),
                                      compose(ta, m.x.proj_a));
            ok = hom_classify(x_iso).isomorphism();
          }
        }
        rec.check("relabeling gives isomorphic quo-K, sub-K, X", t, ok);
      });
}

void run_excision(ReportDocument& doc) {
  const TrialConfig cfg = doc.cfg;
  run_ladders(
      doc,
      {"verticals are isomorphisms", "phi is an isomorphism", "classical window exact",
       "comparison squares commute"},
      [&](Rng& rng) {
        return transport_ladder(gen_random_ladder(cfg, rng, LadderStrategy::isomorphism), rng);
      },
      [](Recorder& rec, std::size_t t, const KLadder& k, Rng&) {
        MilnorAnalysis m = analyze(k);
        ExcisionReport r = excision_check(m);
        auto any = [&](const char* prefix) { return has_prefix(r.violations, prefix); };
        rec.check("verticals are isomorphisms", t, !any("vertical"));
        rec.check("phi is an isomorphism", t, !any("phi"));
        rec.check("classical window exact", t, !any("classical window"));
        rec.check("comparison squares commute", t, !any("comparison square"));
        if (!r.passed() && rec.want_dump()) {
          std::string model = ladder_dump(t, k);
          rec.dump({t, "excision", r.violations, model,
                    "mvkit phi FILE --ladder " + trial_name(t)});
        }
      });
}

void run_birelative(ReportDocument& doc) {
  const TrialConfig cfg = doc.cfg;
  run_ladders(
      doc, {"split data passes", "mismatched endpoints rejected"},
      [&](Rng& rng) { return gen_random_ladder(cfg, rng); },
      [](Recorder& rec, std::size_t t, const KLadder& k, Rng& rng) {
        MilnorAnalysis m = analyze(k);
        const FgGroup z2 = FgGroup::from_invariants({2});
        BirelativeData data = split_birelative_data(m, rng.coin() ? z2 : FgGroup());
        BirelativeReport r = check_birelative(m, data);
        rec.check("split data passes", t, r.passed(), first_or(r.violations, ""));

        auto rejected = [&](const BirelativeData& bad) {
          try {
            check_birelative(m, bad);
          } catch (const InputError&) {
            return true;
          }
          return false;
        };
        DirectSum wide = direct_sum(data.from_cokernel.src(), z2);
        BirelativeData bad_src = data;
        bad_src.from_cokernel = compose(data.from_cokernel, wide.pr1);
        DirectSum wider = direct_sum(k.a(kRelLo), z2);
        BirelativeData bad_tgt = data;
        bad_tgt.to_relative = compose(wider.in1, data.to_relative);
        rec.check("mismatched endpoints rejected", t, rejected(bad_src) && rejected(bad_tgt));
      });
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

bool ReportDocument::passed() const {
  for (const auto& p : properties)
    if (p.failed) return false;
  return true;
}

const std::vector<std::string>& suite_names() { return kSuites; }

bool suite_supports_faults(const std::string& name) {
  return name != "snf" && name != "group" && name != "pullback" && name != "pushout" &&
         std::find(kSuites.begin(), kSuites.end(), name) != kSuites.end();
}

ExactRow zero_map(const ExactRow& row, std::size_t k) {
  std::vector<Hom> maps = row.maps();
  maps.at(k - 1) = Hom::zero(maps[k - 1].src(), maps[k - 1].tgt());
  return ExactRow(std::move(maps), row.claimed());
}

std::vector<std::string> analysis_failures(const MilnorAnalysis& m, const std::string& which) {
  std::vector<std::string> out;
  if (which == "mv1") {
    if (!m.quo.constructions_agree) out.push_back("quo-K: pushout and quotient constructions differ");
    if (!m.sub.constructions_agree) out.push_back("sub-K: pullback and preimage constructions differ");
    out.insert(out.end(), m.glued_violations.begin(), m.glued_violations.end());
    for (const auto& l : weibel_segment(m).report.failures()) out.push_back("mv1 segment " + l);
  } else if (which == "mv2") {
    for (const auto& l : mv2_segment(m).report.failures()) out.push_back("mv2 segment " + l);
  } else if (which == "phi") {
    if (!m.x.kernel_ok) out.push_back("ker phi differs from alpha(ker eps)");
    if (!m.x.image_ok) out.push_back("im phi differs from sub-K");
    if (!m.x.proj_sub_onto) out.push_back("proj_sub is not surjective");
  } else {
    throw InputError("unknown analysis " + which);
  }
  return out;
}

std::vector<std::string> check_model(const Model& m, const std::string& only) {
  std::vector<std::string> out;
  bool found = only.empty();
  for (const auto& [kind, name] : m.order) {
    if (!only.empty() && name != only) continue;
    if (kind == "row") {
      found = true;
      for (const auto& l : check_row_exact(m.rows.at(name)).failures())
        out.push_back("row " + name + ": " + l);
    } else if (kind == "ladder") {
      found = true;
      if (const NamedDiagram* d = m.find_diagram(name)) {
        for (const auto& l : ladder_violations(d->diagram)) out.push_back("ladder " + name + ": " + l);
      } else if (const NamedLadder* k = m.find_ladder(name)) {
        for (const auto& l : validate_ladder(k->ladder).violations)
          out.push_back("ladder " + name + ": " + l);
      }
    }
  }
  if (!found) throw InputError("no row or ladder named " + only);
  return out;
}

ReportDocument run_suite(const std::string& name, const TrialConfig& cfg, bool inject_fault) {
  if (std::find(kSuites.begin(), kSuites.end(), name) == kSuites.end())
    throw InputError("unknown suite " + name);
  if (inject_fault && !suite_supports_faults(name))
    throw InputError("suite " + name + " has no fault injection");
  cfg.check();
  ReportDocument doc;
  doc.suite = name;
  doc.cfg = cfg;
  doc.inject_fault = inject_fault;
  const auto start = std::chrono::steady_clock::now();
  if (name == "snf") run_snf(doc);
  else if (name == "group") run_group(doc);
  else if (name == "pullback") run_pullback(doc);
  else if (name == "pushout") run_pushout(doc);
  else if (name == "prop21a") run_prop21a(doc);
  else if (name == "prop21b") run_prop21b(doc);
  else if (name == "prop22a") run_prop22a(doc, cfg);
  else if (name == "prop22b") run_prop22b(doc, cfg);
  else if (name == "five") run_five(doc);
  else if (name == "mv1") run_mv1(doc);
  else if (name == "mv2") run_mv2(doc);
  else if (name == "phi") run_phi(doc);
  else if (name == "excision") run_excision(doc);
  else run_birelative(doc);
  doc.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  return doc;
}

std::string report_body(const ReportDocument& doc, ReportFormat format) {
  std::ostringstream os;
  const TrialConfig& c = doc.cfg;
  const bool vacuous = c.trials == 0;
  if (format == ReportFormat::machine) {
    os << "@ suite=" << doc.suite << " seed=" << c.seed << " trials=" << c.trials
       << " max_order=" << c.max_order << " max_rank=" << c.max_rank
       << " max_factors=" << c.max_factors << " inject_fault=" << (doc.inject_fault ? 1 : 0) << "\n";
    for (const auto& p : doc.properties) {
      os << "@ property=" << quote(p.name) << " checked=" << p.checked << " failed=" << p.failed
         << " status=" << (p.failed ? "fail" : "pass");
      if (!p.first_failure.empty()) os << " first=" << quote(p.first_failure);
      os << "\n";
    }
    for (const auto& ce : doc.counterexamples) {
      os << "@ counterexample trial=" << ce.trial << " property=" << quote(ce.property)
         << " replay=" << quote(ce.replay) << "\n";
      for (const auto& l : ce.failures) os << "@ failure trial=" << ce.trial << " line=" << quote(l) << "\n";
      const bool model = ce.model.rfind("[", 0) != 0;
      std::istringstream lines(ce.model);
      std::string line;
      while (std::getline(lines, line)) os << (model ? "" : "# ") << line << "\n";
    }
    os << "@ result=" << (doc.passed() ? "pass" : "fail") << " trials=" << c.trials
       << (vacuous ? " note=\"0 trials\"" : "") << "\n";
    return os.str();
  }
  std::size_t width = 8;
  for (const auto& p : doc.properties) width = std::max(width, p.name.size());
  os << "suite     " << doc.suite << "\n";
  os << "config    seed=" << c.seed << " trials=" << c.trials << " max_order=" << c.max_order
     << " max_rank=" << c.max_rank << " max_factors=" << c.max_factors << "\n";
  if (doc.inject_fault) os << "fault     injected\n";
  os << "\n" << std::left << std::setw(width + 2) << "property" << std::right << std::setw(8)
     << "checked" << std::setw(8) << "failed" << "\n";
  for (const auto& p : doc.properties) {
    os << std::left << std::setw(width + 2) << p.name << std::right << std::setw(8) << p.checked
       << std::setw(8) << p.failed << "\n";
    if (!p.first_failure.empty()) os << "    first failure: " << p.first_failure << "\n";
  }
  for (const auto& ce : doc.counterexamples) {
    os << "\ncounterexample (trial " << ce.trial << ", " << ce.property << ")\n";
    for (const auto& l : ce.failures) os << "  " << l << "\n";
    os << "  replay: " << ce.replay << "\n";
    std::istringstream lines(ce.model);
    std::string line;
    while (std::getline(lines, line)) os << "    " << line << "\n";
  }
  os << "\nresult    " << (doc.passed() ? "PASS" : "FAIL") << " (" << c.trials << " trials"
     << (vacuous ? ", vacuous" : "") << ")\n";
  return os.str();
}

std::string emit_report(const ReportDocument& doc, ReportFormat format) {
  std::string out = report_body(doc, format);
  if (format == ReportFormat::machine)
    out += "@ duration_ms=" + std::to_string(doc.duration_ms) + "\n";
  else
    out += "duration  " + std::to_string(doc.duration_ms) + " ms\n";
  return out;
}

}  // namespace mvkit
