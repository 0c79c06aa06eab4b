#include "mvkit/model.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace mvkit {

namespace {

enum class Tok { ident, integer, punct, arrow, labeled_arrow, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t line = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
}
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t line = 1;
  bool line_start = true;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip_line = [&] {
    while (i < n && text[i] != '\n') ++i;
  };
  while (i < n) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      line_start = true;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#' || (c == '@' && line_start)) {
      skip_line();
      continue;
    }
    line_start = false;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < n && ident_char(text[j])) ++j;
      out.push_back({Tok::ident, text.substr(i, j - i), line});
      i = j;
      continue;
    }
    if (digit(c) || (c == '-' && i + 1 < n && digit(text[i + 1]))) {
      std::size_t j = i + 1;
      while (j < n && digit(text[j])) ++j;
      out.push_back({Tok::integer, text.substr(i, j - i), line});
      i = j;
      continue;
    }
    if (c == '-' && i + 1 < n && text[i + 1] == '>') {
      out.push_back({Tok::arrow, "->", line});
      i += 2;
      continue;
    }
    if (c == '-' && i + 1 < n && ident_start(text[i + 1])) {
      std::size_t j = i + 1;
      while (j < n && ident_char(text[j]) && text[j] != '-') ++j;
      if (j + 1 < n && text[j] == '-' && text[j + 1] == '>') {
        out.push_back({Tok::labeled_arrow, text.substr(i + 1, j - i - 1), line});
        i = j + 2;
        continue;
      }
      throw ParseError(line, "malformed arrow");
    }
    if (std::string("[]{},;:=()").find(c) != std::string::npos) {
      out.push_back({Tok::punct, std::string(1, c), line});
      ++i;
      continue;
    }
    throw ParseError(line, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::end, "", line});
  return out;
}

using Rows = std::vector<std::vector<Integer>>;

class Parser {
 public:
  Parser(const std::string& text, bool validate) : toks_(tokenize(text)), validate_(validate) {}

  Model run() {
    while (peek().kind != Tok::end) {
      const Token& t = peek();
      if (t.kind != Tok::ident) throw ParseError(t.line, "expected a declaration");
      if (t.text == "group")
        parse_group();
      else if (t.text == "hom")
        parse_hom();
      else if (t.text == "row")
        parse_row();
      else if (t.text == "ladder")
        parse_ladder();
      else
        throw ParseError(t.line, "unknown declaration '" + t.text + "'");
    }
    return std::move(m_);
  }

  Rows matrix_literal() {
    expect("[");
    Rows rows;
    if (accept("]")) return rows;
    do {
      expect("[");
      std::vector<Integer> row;
      if (!accept("]")) {
        do row.push_back(integer());
        while (accept(","));
        expect("]");
      }
      rows.push_back(std::move(row));
    } while (accept(","));
    expect("]");
    return rows;
  }

  bool at_end() const { return peek().kind == Tok::end; }
  std::size_t line() const { return peek().line; }

 private:
  const Token& peek() const { return toks_[pos_]; }
  /// Line for error messages; at end of input, the line of the last token.
  std::size_t here() const {
    return peek().kind == Tok::end && pos_ > 0 ? toks_[pos_ - 1].line : peek().line;
  }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool accept(const std::string& punct) {
    if (peek().kind == Tok::punct && peek().text == punct) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept_word(const std::string& w) {
    if (peek().kind == Tok::ident && peek().text == w) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const std::string& punct) {
    if (!accept(punct))
      throw ParseError(here(), "expected '" + punct + "' near '" + peek().text + "'");
  }
  void expect_word(const std::string& w) {
    if (!accept_word(w))
      throw ParseError(here(), "expected '" + w + "' near '" + peek().text + "'");
  }
  std::string ident() {
    if (peek().kind != Tok::ident)
      throw ParseError(here(), "expected a name near '" + peek().text + "'");
    return next().text;
  }
  Integer integer() {
    if (peek().kind != Tok::integer)
      throw ParseError(here(), "expected an integer near '" + peek().text + "'");
    return Integer(next().text);
  }

  void declare(std::size_t line, const std::string& kind, const std::string& name) {
    if (!names_.insert(name).second) throw ParseError(line, "duplicate name '" + name + "'");
    m_.order.emplace_back(kind, name);
  }

  const FgGroup& group_ref(std::size_t line, const std::string& name) const {
    auto it = m_.groups.find(name);
    if (it == m_.groups.end()) throw ParseError(line, "unknown group '" + name + "'");
    return it->second;
  }
  const Hom& hom_ref(std::size_t line, const std::string& name) const {
    auto it = m_.homs.find(name);
    if (it == m_.homs.end()) throw ParseError(line, "unknown hom '" + name + "'");
    return it->second;
  }
  const ExactRow& row_ref(std::size_t line, const std::string& name) const {
    auto it = m_.rows.find(name);
    if (it == m_.rows.end()) throw ParseError(line, "unknown row '" + name + "'");
    return it->second;
  }

  static IntMatrix to_matrix(std::size_t line, const Rows& rows, std::size_t r, std::size_t c) {
    IntMatrix m(r, c);
    if (rows.empty() && (r == 0 || c == 0)) return m;
    if (rows.size() != r)
      throw ParseError(line, "matrix has " + std::to_string(rows.size()) + " rows, expected " +
                                 std::to_string(r));
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c)
        throw ParseError(line, "matrix row " + std::to_string(i) + " has " +
                                   std::to_string(rows[i].size()) + " entries, expected " +
                                   std::to_string(c));
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  void parse_group() {
    const std::size_t line = next().line;
    std::string name = ident();
    expect("=");
    FgGroup g;
    if (accept_word("relations")) {
      Rows rows = matrix_literal();
      if (rows.empty()) throw ParseError(line, "relation matrix needs at least one generator");
      g = FgGroup::from_relations(to_matrix(line, rows, rows.size(), rows.front().size()));
    } else {
      expect("[");
      std::vector<Integer> factors;
      if (!accept("]")) {
        do {
          Integer f = integer();
          if (f < 0) throw ParseError(line, "group factor must be nonnegative");
          factors.push_back(f);
        } while (accept(","));
        expect("]");
      }
      g = FgGroup::from_invariants(factors);
    }
    declare(line, "group", name);
    m_.groups.emplace(name, g);
  }

  void parse_hom() {
    const std::size_t line = next().line;
    std::string name = ident();
    expect(":");
    const FgGroup src = group_ref(line, ident());
    if (peek().kind != Tok::arrow) throw ParseError(line, "expected '->'");
    next();
    const FgGroup tgt = group_ref(line, ident());
    expect("=");
    Hom h;
    if (accept_word("zero")) {
      h = Hom::zero(src, tgt);
    } else if (accept_word("id")) {
      if (!(src == tgt)) throw ParseError(line, "id needs equal source and target");
      h = Hom::identity(src);
    } else {
      IntMatrix mat = to_matrix(line, matrix_literal(), tgt.presented_gens(), src.presented_gens());
      try {
        h = make_hom_presented(src, tgt, mat);
      } catch (const PresentationError& e) {
        throw ParseError(line, "hom " + name + " is not well defined: " + e.what());
      }
    }
    declare(line, "hom", name);
    m_.homs.emplace(name, h);
  }

  void parse_row() {
    const std::size_t line = next().line;
    std::string name = ident();
    expect(":");
    std::vector<Hom> maps;
    FgGroup current = group_ref(line, ident());
    while (peek().kind == Tok::labeled_arrow) {
      const Token arrow = next();
      const Hom& h = hom_ref(arrow.line, arrow.text);
      const FgGroup tgt = group_ref(arrow.line, ident());
      if (!(h.src() == current) || !(h.tgt() == tgt))
        throw ParseError(arrow.line, "hom " + arrow.text + " is " + h.src().str() + " -> " +
                                         h.tgt().str() + ", not " + current.str() + " -> " +
                                         tgt.str());
      maps.push_back(h);
      current = tgt;
    }
    if (maps.empty()) throw ParseError(line, "row needs at least one map");
    declare(line, "row", name);
    m_.rows.emplace(name, ExactRow(std::move(maps)));
  }

  std::vector<std::string> name_list() {
    std::vector<std::string> out;
    bool bracket = accept("[");
    while (peek().kind == Tok::ident) {
      out.push_back(next().text);
      accept(",");
    }
    if (bracket) expect("]");
    return out;
  }

  void parse_ladder() {
    const std::size_t line = next().line;
    std::string name = ident();
    if (accept_word("degree")) {
      const Integer deg = integer();
      parse_milnor(line, name, static_cast<int>(deg.get_si()));
      return;
    }
    expect("{");
    std::map<std::string, std::vector<std::string>> fields;
    while (!accept("}")) {
      const std::size_t fl = peek().line;
      std::string key = ident();
      expect(":");
      if (!fields.emplace(key, name_list()).second) throw ParseError(fl, "repeated field " + key);
      if (!accept(",")) accept(";");
    }
    for (const char* key : {"top", "bottom", "verticals"})
      if (!fields.count(key)) throw ParseError(line, std::string("ladder needs field ") + key);
    for (const auto& [key, _] : fields)
      if (key != "top" && key != "bottom" && key != "verticals")
        throw ParseError(line, "unknown ladder field " + key);
    if (fields["top"].size() != 1 || fields["bottom"].size() != 1)
      throw ParseError(line, "top and bottom each name one row");
    LadderDiagram d{row_ref(line, fields["top"][0]), row_ref(line, fields["bottom"][0]), {}};
    for (const auto& v : fields["verticals"]) d.verticals.push_back(hom_ref(line, v));
    try {
      d.check_shape();
    } catch (const InputError& e) {
      throw ParseError(line, e.what());
    }
    declare(line, "ladder", name);
    m_.diagrams.push_back({name, line, std::move(d)});
  }

  void parse_milnor(std::size_t line, const std::string& name, int degree) {
    expect("{");
    std::map<std::string, std::vector<std::string>> fields;
    while (!accept("}")) {
      const std::size_t fl = peek().line;
      std::string key = ident();
      if (key == "arow" || key == "brow") key += " " + ident();
      expect(":");
      if (!fields.emplace(key, name_list()).second) throw ParseError(fl, "repeated field " + key);
      accept(";");
    }
    const std::pair<const char*, std::size_t> required[] = {
        {"arow groups", 6}, {"arow homs", 5}, {"brow groups", 6}, {"brow homs", 5}, {"verticals", 6}};
    for (const auto& [key, count] : required) {
      auto it = fields.find(key);
      if (it == fields.end()) throw ParseError(line, std::string("ladder needs field '") + key + "'");
      if (it->second.size() != count)
        throw ParseError(line, std::string("field '") + key + "' needs " + std::to_string(count) +
                                   " names");
    }
    if (fields.size() != std::size(required)) throw ParseError(line, "unknown ladder field");

    auto build_row = [&](const char* prefix) {
      const auto& groups = fields[std::string(prefix) + " groups"];
      const auto& homs = fields[std::string(prefix) + " homs"];
      std::vector<Hom> maps;
      for (std::size_t j = 0; j < 5; ++j) {
        const Hom& h = hom_ref(line, homs[j]);
        const FgGroup& s = group_ref(line, groups[j]);
        const FgGroup& t = group_ref(line, groups[j + 1]);
        if (!(h.src() == s) || !(h.tgt() == t))
          throw ParseError(line, std::string(prefix) + " hom " + homs[j] + " is " + h.src().str() +
                                     " -> " + h.tgt().str() + ", expected " + s.str() + " -> " +
                                     t.str());
        maps.push_back(h);
      }
      return ExactRow(std::move(maps));
    };
    KLadder k{degree, build_row("arow"), build_row("brow"), {}};
    for (const auto& v : fields["verticals"]) k.verticals.push_back(hom_ref(line, v));
    try {
      k.as_ladder().check_shape();
    } catch (const InputError& e) {
      throw ParseError(line, e.what());
    }
    if (validate_) {
      LadderValidation r = validate_ladder(k);
      if (!r.valid()) {
        for (auto& v : r.violations) v = "ladder " + name + " (line " + std::to_string(line) + "): " + v;
        throw InvalidLadder(std::move(r));
      }
    }
    declare(line, "ladder", name);
    m_.ladders.push_back({name, line, std::move(k)});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool validate_;
  Model m_;
  std::set<std::string> names_;
};

}  // namespace

const NamedLadder* Model::find_ladder(const std::string& name) const {
  for (const auto& l : ladders)
    if (l.name == name) return &l;
  return nullptr;
}

const NamedDiagram* Model::find_diagram(const std::string& name) const {
  for (const auto& d : diagrams)
    if (d.name == name) return &d;
  return nullptr;
}

Model parse_model(const std::string& text, bool validate) { return Parser(text, validate).run(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Model parse_model_file(const std::string& path, bool validate) {
  return parse_model(read_file(path), validate);
}

IntMatrix parse_matrix(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  while (first != std::string::npos && text[first] == '#') {
    first = text.find('\n', first);
    if (first != std::string::npos) first = text.find_first_not_of(" \t\r\n", first);
  }
  if (first != std::string::npos && text[first] == '[') {
    Parser p(text, false);
    Rows rows = p.matrix_literal();
    if (!p.at_end()) throw ParseError(p.line(), "trailing input after the matrix");
    if (rows.empty()) return IntMatrix(0, 0);
    IntMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols()) throw ParseError(1, "ragged matrix rows");
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  Rows rows;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = line.substr(0, line.find('#'));
    std::istringstream ls(line);
    std::vector<Integer> row;
    std::string word;
    while (ls >> word) {
      try {
        row.emplace_back(word);
      } catch (const std::invalid_argument&) {
        throw ParseError(lineno, "not an integer: " + word);
      }
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError(lineno, "ragged matrix rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return IntMatrix(0, 0);
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  return m;
}

std::string ModelWriter::group(const FgGroup& g) {
  auto it = group_names_.find(g.invariants());
  if (it != group_names_.end()) return it->second;
  std::string name = prefix_ + "G" + std::to_string(group_names_.size());
  group_names_.emplace(g.invariants(), name);
  out_ += "group " + name + " = " + g.literal() + "\n";
  return name;
}

std::string ModelWriter::hom(const std::string& name, const Hom& h) {
  std::string s = group(h.src());
  std::string t = group(h.tgt());
  const IntMatrix& m = h.matrix();
  std::string lit = (m.rows() == 0 || m.cols() == 0) ? "[]" : to_literal(m);
  out_ += "hom " + name + " : " + s + " -> " + t + " = " + lit + "\n";
  return name;
}

std::string ModelWriter::row(const std::string& name, const ExactRow& r) {
  std::vector<std::string> homs;
  for (std::size_t j = 0; j < r.num_maps(); ++j)
    homs.push_back(hom(name + "_" + std::to_string(j), r.map(j)));
  std::string line = "row " + name + " : " + group(r.node(0));
  for (std::size_t j = 0; j < r.num_maps(); ++j)
    line += " -" + homs[j] + "-> " + group(r.node(j + 1));
  out_ += line + "\n";
  return name;
}

void ModelWriter::diagram(const std::string& name, const LadderDiagram& d) {
  row(name + "_top", d.top);
  row(name + "_bottom", d.bottom);
  std::string verts;
  for (std::size_t j = 0; j < d.verticals.size(); ++j)
    verts += (j ? ", " : "") + hom(name + "_v" + std::to_string(j), d.verticals[j]);
  out_ += "ladder " + name + " { top: " + name + "_top; bottom: " + name + "_bottom; verticals: [" +
          verts + "] }\n";
}

void ModelWriter::ladder(const std::string& name, const KLadder& k) {
  auto list = [&](const std::string& prefix, const ExactRow& r) {
    std::string groups, homs;
    for (std::size_t j = 0; j < r.num_nodes(); ++j) groups += (j ? ", " : "") + group(r.node(j));
    for (std::size_t j = 0; j < r.num_maps(); ++j)
      homs += (j ? ", " : "") + hom(name + "_" + prefix + std::to_string(j), r.map(j));
    return std::make_pair(groups, homs);
  };
  auto [ag, ah] = list("a", k.a_row);
  auto [bg, bh] = list("b", k.b_row);
  std::string verts;
  for (std::size_t j = 0; j < k.verticals.size(); ++j)
    verts += (j ? ", " : "") + hom(name + "_v" + std::to_string(j), k.verticals[j]);
  out_ += "ladder " + name + " degree " + std::to_string(k.degree) + " {\n  arow groups: " + ag +
          ";\n  arow homs: " + ah + ";\n  brow groups: " + bg + ";\n  brow homs: " + bh +
          ";\n  verticals: " + verts + "\n}\n";
}

void ModelWriter::comment(const std::string& text) { out_ += "# " + text + "\n"; }

}  // namespace mvkit
