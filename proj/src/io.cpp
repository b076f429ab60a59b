#include "uea/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace uea {

const char* kind_name(AlgebraKind k) {
  switch (k) {
    case AlgebraKind::LInfinity:
      return "l-infinity";
    case AlgebraKind::DgLie:
      return "dg-lie";
    case AlgebraKind::AInfinity:
      return "a-infinity";
  }
  return "?";
}

namespace {

std::vector<std::string> tokens(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else if (ch == ',') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
      out.emplace_back(",");
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty() || s == "->" || s == ",") return false;
  for (char ch : s)
    if (ch == '#' || ch == ',') return false;
  return true;
}

int parse_int(const std::string& s, int line, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": " + what + " '" + s + "' is not an integer");
  }
}

struct Statement {
  int line;
  std::vector<std::string> inputs;
  std::vector<std::pair<Scalar, std::string>> outputs;
  std::string text;
};

}  // namespace

AlgebraFile parse_algebra(std::string_view text) {
  AlgebraFile f;
  bool have_format = false, have_kind = false;
  int arity = -1;
  int top_degree = INT_MAX;
  auto space = std::make_shared<GradedSpace>();
  std::vector<Statement> structure;
  std::string structure_keyword;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = tokens(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }
    auto fail = [&](const std::string& msg) { throw ParseError("line " + std::to_string(line_no) + ": " + msg); };
    const std::string& key = tok[0];
    if (key == "format") {
      if (tok.size() != 2) fail("expected 'format 1'");
      f.format = parse_int(tok[1], line_no, "format version");
      if (f.format != 1) fail("unsupported format version " + tok[1]);
      have_format = true;
    } else if (key == "kind") {
      if (tok.size() != 2) fail("expected 'kind l-infinity|dg-lie|a-infinity'");
      if (tok[1] == "l-infinity") f.kind = AlgebraKind::LInfinity;
      else if (tok[1] == "dg-lie") f.kind = AlgebraKind::DgLie;
      else if (tok[1] == "a-infinity") f.kind = AlgebraKind::AInfinity;
      else fail("unknown kind '" + tok[1] + "'");
      have_kind = true;
    } else if (key == "arity") {
      if (tok.size() != 2) fail("expected 'arity K'");
      arity = parse_int(tok[1], line_no, "arity");
      if (arity < 1) fail("arity must be >= 1");
    } else if (key == "top-degree") {
      if (tok.size() != 2) fail("expected 'top-degree N'");
      top_degree = parse_int(tok[1], line_no, "top degree");
    } else if (key == "generator") {
      if (tok.size() != 3) fail("expected 'generator NAME DEGREE'");
      if (!valid_name(tok[1])) fail("invalid generator name '" + tok[1] + "'");
      int deg = parse_int(tok[2], line_no, "degree");
      if (deg < 1) fail("generator " + tok[1] + " has degree " + tok[2] + "; degrees must be >= 1");
      if (space->find(tok[1])) fail("duplicate generator " + tok[1]);
      space->add({tok[1], deg, -1});
    } else if (key == "bracket" || key == "product") {
      if (!structure_keyword.empty() && structure_keyword != key) fail("mixed 'bracket' and 'product' statements");
      structure_keyword = key;
      Statement st;
      st.line = line_no;
      st.text = std::string(line);
      std::size_t t = 1;
      while (t < tok.size() && tok[t] != "->") st.inputs.push_back(tok[t++]);
      if (t == tok.size()) fail("missing '->'");
      if (st.inputs.empty()) fail(key + " with no inputs");
      ++t;
      while (t < tok.size()) {
        if (t + 1 >= tok.size()) fail("expected 'COEF NAME' after '->'");
        auto coef = parse_scalar(tok[t]);
        if (!coef) fail("coefficient '" + tok[t] + "' is not an exact fraction");
        st.outputs.push_back({*coef, tok[t + 1]});
        t += 2;
        if (t < tok.size()) {
          if (tok[t] != ",") fail("expected ',' between output terms");
          ++t;
          if (t == tok.size()) fail("trailing ','");
        }
      }
      structure.push_back(std::move(st));
    } else {
      fail("unknown statement '" + key + "'");
    }
  }
  if (!have_format) throw ParseError("missing 'format 1' line");
  if (!have_kind) throw ParseError("missing 'kind' line");
  const bool lie = f.kind != AlgebraKind::AInfinity;
  if (!structure_keyword.empty() && (structure_keyword == "bracket") != lie)
    throw ParseError(std::string("'") + structure_keyword + "' statements do not match kind " + kind_name(f.kind));
  if (lie && top_degree != INT_MAX) throw ParseError("'top-degree' applies only to a-infinity files");

  std::map<Word, Vec> data;
  int max_seen = 0;
  for (const auto& st : structure) {
    auto fail = [&](const std::string& msg) {
      throw ParseError("line " + std::to_string(st.line) + " (" + st.text + "): " + msg);
    };
    Word w;
    int out_deg = static_cast<int>(st.inputs.size()) - 2;
    for (const auto& name : st.inputs) {
      auto id = space->find(name);
      if (!id) fail("unknown generator '" + name + "'");
      w.push_back(*id);
      out_deg += space->degree(*id);
    }
    if (lie) {
      std::vector<int> degs(space->size());
      for (int i = 0; i < space->size(); ++i) degs[i] = space->degree(i);
      auto c = canonical_l_word(w, degs);
      if (!c || c->word != w || c->sign != 1)
        fail("inputs must be in canonical order (non-decreasing, only odd generators repeat)");
    }
    if (data.count(w)) fail("duplicate statement for these inputs");
    Vec v;
    for (const auto& [coef, name] : st.outputs) {
      auto id = space->find(name);
      if (!id) fail("unknown generator '" + name + "'");
      if (space->degree(*id) != out_deg)
        fail("output " + name + " has degree " + std::to_string(space->degree(*id)) + ", expected " +
             std::to_string(out_deg) + " (sum of input degrees + arity - 2)");
      add_term(v, *id, coef);
    }
    max_seen = std::max(max_seen, static_cast<int>(w.size()));
    data.emplace(std::move(w), std::move(v));
  }
  if (arity < 0) arity = std::max(2, max_seen);
  if (max_seen > arity) throw ParseError("structure maps of arity " + std::to_string(max_seen) + " exceed 'arity " +
                                         std::to_string(arity) + "'");
  try {
    if (lie) {
      f.lie = make_l_infinity(space, std::move(data), arity);
      if (f.kind == AlgebraKind::DgLie && f.lie.top_arity() > 2)
        throw ParseError("dg-lie files may only contain brackets of arity 1 and 2");
    } else {
      f.assoc = std::make_shared<AInfinityAlgebra>(space, std::move(data), arity, top_degree);
    }
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
  return f;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

AlgebraFile load_algebra(const std::string& path) { return parse_algebra(read_file(path)); }

StrictMorphism parse_morphism(std::string_view text, const std::string& base_dir) {
  bool have_format = false, have_kind = false;
  std::string source_path, target_path;
  std::vector<Statement> maps;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = tokens(line);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& msg) { throw ParseError("line " + std::to_string(line_no) + ": " + msg); };
    const std::string& key = tok[0];
    if (key == "format") {
      if (tok.size() != 2 || tok[1] != "1") fail("expected 'format 1'");
      have_format = true;
    } else if (key == "kind") {
      if (tok.size() != 2 || tok[1] != "morphism") fail("expected 'kind morphism'");
      have_kind = true;
    } else if (key == "source" || key == "target") {
      if (tok.size() != 2) fail("expected '" + key + " PATH'");
      (key == "source" ? source_path : target_path) = tok[1];
    } else if (key == "map") {
      Statement st;
      st.line = line_no;
      st.text = std::string(line);
      if (tok.size() < 3 || tok[2] != "->") fail("expected 'map NAME -> COEF NAME, ...'");
      st.inputs.push_back(tok[1]);
      for (std::size_t t = 3; t < tok.size();) {
        if (t + 1 >= tok.size()) fail("expected 'COEF NAME' after '->'");
        auto coef = parse_scalar(tok[t]);
        if (!coef) fail("coefficient '" + tok[t] + "' is not an exact fraction");
        st.outputs.push_back({*coef, tok[t + 1]});
        t += 2;
        if (t < tok.size()) {
          if (tok[t] != ",") fail("expected ',' between output terms");
          if (++t == tok.size()) fail("trailing ','");
        }
      }
      maps.push_back(std::move(st));
    } else {
      fail("unknown statement '" + key + "'");
    }
  }
  if (!have_format) throw ParseError("missing 'format 1' line");
  if (!have_kind) throw ParseError("missing 'kind morphism' line");
  if (source_path.empty() || target_path.empty()) throw ParseError("morphism needs 'source' and 'target' lines");
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return (fp.is_absolute() ? fp : std::filesystem::path(base_dir) / fp).string();
  };
  AlgebraFile src = load_algebra(resolve(source_path));
  AlgebraFile tgt = load_algebra(resolve(target_path));
  if (src.kind == AlgebraKind::AInfinity || tgt.kind == AlgebraKind::AInfinity)
    throw ParseError("morphism source and target must be l-infinity or dg-lie files");
  StrictMorphism f{src.lie, tgt.lie, GradedMap(src.lie.space, tgt.lie.space, 0)};
  std::vector<bool> seen(src.lie.space->size(), false);
  for (const auto& st : maps) {
    auto fail = [&](const std::string& msg) {
      throw ParseError("line " + std::to_string(st.line) + " (" + st.text + "): " + msg);
    };
    auto x = src.lie.space->find(st.inputs[0]);
    if (!x) fail("unknown source generator '" + st.inputs[0] + "'");
    if (seen[*x]) fail("duplicate map for " + st.inputs[0]);
    seen[*x] = true;
    Vec v;
    for (const auto& [coef, name] : st.outputs) {
      auto y = tgt.lie.space->find(name);
      if (!y) fail("unknown target generator '" + name + "'");
      if (tgt.lie.space->degree(*y) != src.lie.space->degree(*x)) fail("map does not preserve degree");
      add_term(v, *y, coef);
    }
    f.linear.set_column(*x, std::move(v));
  }
  return f;
}

StrictMorphism load_morphism(const std::string& path) {
  return parse_morphism(read_file(path), std::filesystem::path(path).parent_path().string());
}

namespace {

std::string structure_lines(const SpacePtr& sp, const std::map<Word, Vec>& data, const char* keyword) {
  std::string out;
  for (const auto& [w, v] : data) {
    if (v.empty()) continue;
    out += keyword;
    for (int x : w) out += " " + sp->name(x);
    out += " ->";
    bool first = true;
    for (const auto& [o, c] : v) {
      out += first ? " " : ", ";
      out += to_string(c) + " " + sp->name(o);
      first = false;
    }
    out += "\n";
  }
  return out;
}

std::string generator_lines(const SpacePtr& sp) {
  std::string out;
  for (int i = 0; i < sp->size(); ++i) out += "generator " + sp->name(i) + " " + std::to_string(sp->degree(i)) + "\n";
  return out;
}

}  // namespace

std::string serialize_lie(const LInfinityAlgebra& g, AlgebraKind kind) {
  std::string out = "format 1\nkind ";
  out += kind_name(kind);
  out += "\narity " + std::to_string(g.max_arity) + "\n";
  out += generator_lines(g.space);
  out += structure_lines(g.space, g.brackets, "bracket");
  return out;
}

std::string serialize_assoc(const AInfinityAlgebra& a) {
  std::string out = "format 1\nkind a-infinity\narity " + std::to_string(a.max_arity()) + "\n";
  if (a.top_degree() != INT_MAX) out += "top-degree " + std::to_string(a.top_degree()) + "\n";
  out += generator_lines(a.space());
  out += structure_lines(a.space(), a.products(), "product");
  return out;
}

std::string serialize(const AlgebraFile& f) {
  if (f.kind == AlgebraKind::AInfinity) return serialize_assoc(*f.assoc);
  return serialize_lie(f.lie, f.kind);
}

}  // namespace uea
