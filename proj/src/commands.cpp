#include "mvkit/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace mvkit {

namespace {

template <class F>
CommandResult guarded(F&& body) {
  CommandResult r;
  try {
    body(r);
  } catch (const InvalidLadder& e) {
    r.exit_code = 1;
    for (const auto& v : e.report().violations) r.out += v + "\n";
  } catch (const InputError& e) {
    r.exit_code = 2;
    r.err += std::string("error: ") + e.what() + "\n";
  } catch (const Error& e) {
    r.exit_code = 1;
    r.out += std::string("failure: ") + e.what() + "\n";
  }
  return r;
}

const NamedLadder& select_ladder(const Model& m, const std::string& name) {
  if (name.empty()) {
    if (m.ladders.size() != 1)
      throw InputError("file has " + std::to_string(m.ladders.size()) +
                       " Milnor ladders; pick one with --ladder");
    return m.ladders.front();
  }
  if (const NamedLadder* l = m.find_ladder(name)) return *l;
  throw InputError("no Milnor ladder named " + name);
}

std::string pad(const std::string& s, std::size_t w) {
  return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' ');
}

std::string yes(bool b) { return b ? "yes" : "no"; }

MVSegment segment_of(const std::string& which, const MilnorAnalysis& m) {
  return which == "mv1" ? weibel_segment(m) : mv2_segment(m);
}

std::string sum_label(const FgGroup& a, const FgGroup& b) { return a.str() + " (+) " + b.str(); }

}  // namespace

std::string analysis_text(const std::string& which, const std::string& name,
                          const MilnorAnalysis& m, ReportFormat format) {
  const KLadder& k = m.ladder;
  std::vector<std::string> failures = analysis_failures(m, which);
  std::ostringstream os;
  const bool segment = which != "phi";
  MVSegment s;
  if (segment) s = segment_of(which, m);

  if (format == ReportFormat::machine) {
    os << "@ command=" << which << " ladder=" << name << " degree=" << k.degree << "\n";
    os << "@ group role=ker_eps value=" << m.eps.ker_eps.group().literal() << "\n";
    os << "@ group role=quo_K value=" << m.quo.group.literal() << "\n";
    os << "@ group role=sub_K value=" << m.sub.group.literal() << "\n";
    os << "@ group role=X value=" << m.x.group.literal() << "\n";
    ModelWriter w(name + "_" + which + "_");
    if (segment) {
      for (std::size_t j = 0; j < s.terms.size(); ++j)
        os << "@ term index=" << j << " value=" << s.terms[j].literal() << "\n";
      for (std::size_t j = 0; j < s.maps.size(); ++j)
        os << "@ map index=" << j << " matrix=" << to_literal(s.maps[j].matrix()) << "\n";
      for (const auto& n : s.report.nodes)
        os << "@ exact node=" << n.node << " status=" << (n.exact() ? "pass" : "fail") << "\n";
      w.row(name + "_" + which, s.row());
    } else {
      os << "@ check name=kernel status=" << (m.x.kernel_ok ? "pass" : "fail") << "\n";
      os << "@ check name=image status=" << (m.x.image_ok ? "pass" : "fail") << "\n";
      os << "@ check name=proj_sub_onto status=" << (m.x.proj_sub_onto ? "pass" : "fail") << "\n";
      w.hom(name + "_phi", m.x.phi);
      w.hom(name + "_proj_sub", m.x.proj_sub);
      w.hom(name + "_proj_a", m.x.proj_a);
    }
    for (const auto& f : failures) os << "@ failure line=\"" << f << "\"\n";
    os << "@ result=" << (failures.empty() ? "pass" : "fail") << "\n";
    os << w.str();
    return os.str();
  }

  const std::size_t w = 18;
  os << "ladder " << name << " degree " << k.degree << "\n";
  os << pad("ker eps_i", w) << m.eps.ker_eps.group().str() << "\n";
  os << pad("quo-K", w) << m.quo.group.str() << "  (pushout and quotient agree: "
     << yes(m.quo.constructions_agree) << ")\n";
  os << pad("pi", w) << describe(m.quo.pi) << "\n";
  os << pad("sub-K", w) << m.sub.group.str() << "  (pullback and preimage agree: "
     << yes(m.sub.constructions_agree) << ")\n";
  os << pad("dbar", w) << describe(m.dbar) << "\n";
  if (which == "mv1")
    os << pad("glued diagram", w)
       << (m.glued_violations.empty() ? "commutes, exact where claimed" : "VIOLATED") << "\n";
  if (which != "mv1") {
    os << pad("X", w) << m.x.group.str() << "\n";
    os << pad("phi", w) << describe(m.x.phi) << "\n";
  }
  if (which == "phi") {
    os << pad("ker phi = alpha(ker eps)", 28) << yes(m.x.kernel_ok) << "\n";
    os << pad("im phi = sub-K", 28) << yes(m.x.image_ok) << "\n";
    os << pad("proj_sub surjective", 28) << yes(m.x.proj_sub_onto) << "\n";
  }
  if (segment) {
    os << "segment\n";
    for (std::size_t j = 0; j < s.terms.size(); ++j) {
      std::string label = s.terms[j].str();
      if (j == 0) label = sum_label(k.a(kQuoHi), k.b(kAbsHi));
      if (j + 1 == s.terms.size()) label = sum_label(k.a(kQuoLo), k.b(kAbsLo));
      os << "  term " << j << "  " << label << "\n";
      if (j < s.maps.size()) os << "  map " << j << "   " << to_literal(s.maps[j].matrix()) << "\n";
    }
    for (const auto& n : s.report.nodes)
      os << "  node " << n.node << (n.exact() ? " exact" : " NOT exact") << "\n";
  }
  for (const auto& f : failures) os << f << "\n";
  os << "result " << (failures.empty() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

CommandResult cmd_parse(const std::string& path) {
  return guarded([&](CommandResult& r) {
    Model m = parse_model_file(path);
    std::ostringstream os;
    for (const auto& [kind, name] : m.order) {
      if (kind == "group") {
        os << "group " << name << " = " << m.groups.at(name).str() << "\n";
      } else if (kind == "hom") {
        os << "hom " << name << " : " << describe(m.homs.at(name)) << "\n";
      } else if (kind == "row") {
        os << "row " << name << " : " << m.rows.at(name).num_nodes() << " nodes\n";
      } else if (const NamedLadder* l = m.find_ladder(name)) {
        os << "ladder " << name << " degree " << l->ladder.degree << " : valid\n";
      } else {
        os << "ladder " << name << " : " << m.find_diagram(name)->diagram.verticals.size()
           << " verticals\n";
      }
    }
    r.out = os.str();
  });
}

CommandResult cmd_check(const std::string& path, const std::string& ladder) {
  return guarded([&](CommandResult& r) {
    Model m = parse_model_file(path, false);
    std::vector<std::string> lines = check_model(m, ladder);
    for (const auto& l : lines) r.out += l + "\n";
    if (lines.empty())
      r.out = "ok: " + std::to_string(m.rows.size()) + " rows, " +
              std::to_string(m.ladders.size() + m.diagrams.size()) + " ladders\n";
    r.exit_code = lines.empty() ? 0 : 1;
  });
}

CommandResult cmd_analysis(const std::string& which, const std::string& path,
                           const std::string& ladder, ReportFormat format) {
  return guarded([&](CommandResult& r) {
    if (which != "mv1" && which != "mv2" && which != "phi")
      throw InputError("unknown analysis " + which);
    Model m = parse_model_file(path);
    const NamedLadder& l = select_ladder(m, ladder);
    MilnorAnalysis a = analyze(l.ladder);
    r.out = analysis_text(which, l.name, a, format);
    r.exit_code = analysis_failures(a, which).empty() ? 0 : 1;
  });
}

CommandResult cmd_props(const std::string& suite, const TrialConfig& cfg, ReportFormat format,
                        bool inject_fault, const std::string& dump_dir) {
  return guarded([&](CommandResult& r) {
    ReportDocument doc = run_suite(suite, cfg, inject_fault);
    if (!dump_dir.empty()) {
      std::filesystem::create_directories(dump_dir);
      for (const auto& ce : doc.counterexamples) {
        const std::string ext = suite == "snf" ? ".mat" : ".mv";
        const auto file =
            std::filesystem::path(dump_dir) / (suite + "-t" + std::to_string(ce.trial) + ext);
        std::ofstream(file) << ce.model;
      }
    }
    r.out = emit_report(doc, format);
    r.exit_code = doc.passed() ? 0 : 1;
  });
}

CommandResult cmd_snf(const std::string& path) {
  return guarded([&](CommandResult& r) {
    IntMatrix m = parse_matrix(read_file(path));
    SmithResult s = snf(m);
    std::ostringstream os;
    os << "size " << m.rows() << "x" << m.cols() << "\n";
    os << "rank " << s.rank << "\n";
    os << "invariant factors";
    for (std::size_t i = 0; i < s.rank; ++i) os << " " << s.D(i, i);
    os << "\n";
    os << "cokernel " << FgGroup::from_relations(m).str() << "\n";
    os << "D = " << to_literal(s.D) << "\n";
    os << "U = " << to_literal(s.U) << "\n";
    os << "V = " << to_literal(s.V) << "\n";
    const bool ok = s.U * m * s.V == s.D;
    os << "U M V = D: " << (ok ? "verified" : "FAILED") << "\n";
    r.out = os.str();
    r.exit_code = ok ? 0 : 1;
  });
}

}  // namespace mvkit
