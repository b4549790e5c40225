// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

#include "okbody/instance.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "okbody/error.hpp"

namespace okbody {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_top_level(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.emplace_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.emplace_back(trim(cur));
  return out;
}

// "[a, b, c]" -> {"a", "b", "c"}
std::vector<std::string> parse_list(std::string_view s, int line) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw ParseError(line, "expected a bracketed list");
  auto inner = trim(s.substr(1, s.size() - 2));
  if (inner.empty()) return {};
  return split_top_level(inner, ',');
}

// "name(a, b)" -> ("name", {"a", "b"})
std::optional<std::pair<std::string, std::vector<std::string>>> parse_call(std::string_view s) {
  s = trim(s);
  auto open = s.find('(');
  if (open == std::string_view::npos || s.back() != ')') return std::nullopt;
  std::string name(trim(s.substr(0, open)));
  auto inner = trim(s.substr(open + 1, s.size() - open - 2));
  std::vector<std::string> args;
  if (!inner.empty()) args = split_top_level(inner, ',');
  return std::make_pair(name, args);
}

Scalar scalar_at(std::string_view s, int line) {
  try {
    return parse_scalar(s);
  } catch (const ParseError& e) {
    throw ParseError(line, e.what());
  }
}

unsigned positive_at(std::string_view s, int line) {
  Scalar q = scalar_at(s, line);
  if (q.get_den() != 1 || sgn(q) <= 0 || !q.get_num().fits_uint_p())
    throw ParseError(line, "expected a positive integer, got '" + std::string(s) + "'");
  return static_cast<unsigned>(q.get_num().get_ui());
}

// ---------------------------------------------------------------------------
// Element expressions

struct Value {
  RationalFunction rf;
  // When set, the numerator is scalar * prod(factors), with no denominator.
  bool factored = false;
  Scalar scalar = 1;
  Factorization factors;
};

class ExprParser {
 public:
  ExprParser(std::string_view text, const Variables& vars) : s_(text), vars_(vars) {}

  RationalFunction parse() {
    Value v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v.rf;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(0, "element '" + std::string(s_) + "': " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Value from_poly(const Poly& p) {
    Value v;
    v.rf = RationalFunction(p);
    if (p.is_zero()) return v;
    v.factored = true;
    if (p.is_constant()) {
      v.scalar = p.leading_coefficient();
    } else {
      v.scalar = p.leading_coefficient();
      v.factors[p * Scalar(1 / v.scalar)] = 1;
    }
    return v;
  }

  Value expr() {
    Value v = term();
    for (;;) {
      if (eat('+')) {
        v = sum(v, term(), false);
      } else if (eat('-')) {
        v = sum(v, term(), true);
      } else {
        return v;
      }
    }
  }

  Value sum(const Value& a, const Value& b, bool minus) {
    RationalFunction r = minus ? a.rf - b.rf : a.rf + b.rf;
    if (r.factors().empty()) return from_poly(r.numerator());
    Value v;
    v.rf = r;
    return v;
  }

  Value term() {
    Value v = unary();
    for (;;) {
      if (eat('*')) {
        Value b = unary();
        Value r;
        r.rf = v.rf * b.rf;
        if (v.factored && b.factored) {
          r.factored = true;
          r.scalar = v.scalar * b.scalar;
          r.factors = v.factors;
          for (const auto& [f, k] : b.factors) r.factors[f] += k;
        }
        v = r;
      } else if (eat('/')) {
        Value b = unary();
        if (!b.factored) fail("divisor must be a polynomial");
        if (sgn(b.scalar) == 0 || b.rf.is_zero()) fail("division by zero");
        Value r;
        Poly one = Poly::constant(vars_, 1 / b.scalar);
        r.rf = v.rf * RationalFunction(one, b.factors);
        v = r;
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (eat('-')) {
      Value v = unary();
      v.rf = v.rf * Scalar(-1);
      v.scalar = -v.scalar;
      return v;
    }
    if (eat('+')) return unary();
    Value v = primary();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an exponent");
      unsigned k = static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
      Value r;
      r.rf = v.rf.pow(k);
      if (v.factored) {
        r.factored = true;
        r.scalar = 1;
        for (unsigned i = 0; i < k; ++i) r.scalar *= v.scalar;
        for (const auto& [f, e] : v.factors) r.factors[f] = e * k;
      }
      return r;
    }
    return v;
  }

  Value primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return from_poly(Poly::constant(vars_, Scalar(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      for (std::size_t j = 0; j < vars_.size(); ++j)
        if (vars_[j] == name) return from_poly(Poly::variable(vars_, j));
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const Variables& vars_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Blocks

struct Entry {
  std::string value;
  int line;
};

struct Block {
  int first_line = 0;
  std::map<std::string, Entry> entries;
  std::vector<Entry> imports;
};

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"curve", {"points", "coeffs", "convergent"}},
      {"monomial", {"slice", "vertices"}},
      {"generated", {"ambient", "generators", "degree_bound"}},
      {"rescale", {"base", "k"}},
  };
  return keys;
}

const std::set<std::string>& common_keys() {
  static const std::set<std::string> keys = {"name", "kind", "truncation", "flag", "validation"};
  return keys;
}

std::vector<Block> split_blocks(std::string_view text) {
  std::vector<Block> blocks(1);
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    auto line = trim(raw);
    if (line.empty()) continue;
    if (line == "---") {
      blocks.emplace_back();
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (value.empty()) throw ParseError(line_no, "empty value for '" + key + "'");
    Block& b = blocks.back();
    if (b.first_line == 0) b.first_line = line_no;
    if (key == "import") {
      b.imports.push_back({value, line_no});
      continue;
    }
    if (!b.entries.emplace(key, Entry{value, line_no}).second)
      throw ParseError(line_no, "duplicate key '" + key + "'");
  }
  std::vector<Block> out;
  for (auto& b : blocks)
    if (!b.entries.empty() || !b.imports.empty()) out.push_back(std::move(b));
  return out;
}

std::optional<Scalar> parse_point(const std::string& s, int line) {
  if (s == "inf" || s == "infinity") return std::nullopt;
  return scalar_at(s, line);
}

ModelPtr build_curve(const Block& b, unsigned truncation, const std::string& name) {
  InfiniteDivisorSpec spec;
  std::vector<std::optional<Scalar>> points;
  int points_line = b.first_line;
  if (auto it = b.entries.find("points"); it != b.entries.end()) {
    points_line = it->second.line;
    std::set<std::optional<Scalar>> seen;
    for (const auto& p : parse_list(it->second.value, points_line)) {
      auto q = parse_point(p, points_line);
      if (!seen.insert(q).second) throw ParseError(points_line, "duplicate support point " + p);
      points.push_back(q);
    }
  }
  auto cit = b.entries.find("coeffs");
  if (cit == b.entries.end()) throw ParseError(b.first_line, "curve instance needs 'coeffs'");
  const int cline = cit->second.line;
  bool convergent = true;
  if (auto it = b.entries.find("convergent"); it != b.entries.end()) {
    if (it->second.value == "true") {
      convergent = true;
    } else if (it->second.value == "false") {
      convergent = false;
    } else {
      throw ParseError(it->second.line, "convergent must be true or false");
    }
  }

  const std::string& cv = cit->second.value;
  if (!cv.empty() && cv.front() == '[') {
    auto coeffs = parse_list(cv, cline);
    if (coeffs.size() != points.size())
      throw ParseError(cline, "coeffs has " + std::to_string(coeffs.size()) + " entries for " +
                                  std::to_string(points.size()) + " points");
    for (std::size_t i = 0; i < points.size(); ++i) spec.support.push_back({points[i], scalar_at(coeffs[i], cline)});
  } else {
    auto call = parse_call(cv);
    if (!call) throw ParseError(cline, "coeffs must be a list or a named rule");
    const auto& [rule, args] = *call;
    std::vector<Scalar> params;
    for (const auto& a : args) params.push_back(scalar_at(a, cline));
    TailRule tail;
    if (rule == "geometric") {
      if (params.size() != 2) throw ParseError(cline, "geometric(scale, ratio) takes two arguments");
      tail = {TailRule::Kind::Geometric, params[0], params[1], 1};
    } else if (rule == "inverse-square" || rule == "harmonic-squares") {
      if (params.size() != 1) throw ParseError(cline, rule + "(c) takes one argument");
      tail = {TailRule::Kind::InverseSquare, params[0], 0, 1};
    } else if (rule == "harmonic") {
      if (params.size() != 1) throw ParseError(cline, "harmonic(c) takes one argument");
      tail = {TailRule::Kind::Harmonic, params[0], 0, 1};
    } else {
      throw ParseError(cline, "unknown coefficient rule '" + rule + "'");
    }
    if (convergent && !tail.summable())
      throw ParseError(cline, "coefficient rule '" + rule + "' is not summable; set convergent = false to allow it");
    // Listed points take a_1..a_k; the tail continues on the remaining positive integers.
    for (std::size_t i = 0; i < points.size(); ++i) spec.support.push_back({points[i], tail.coefficient(i + 1)});
    tail.first_index = points.size() + 1;
    spec.tail = tail;
  }
  try {
    return curve_section_ring(std::move(spec), truncation, name);
  } catch (const ModelError& e) {
    throw ParseError(cline, e.what());
  }
}

std::vector<Point> parse_vertices(const std::string& s, int line) {
  std::vector<Point> out;
  for (const auto& item : parse_list(s, line)) {
    auto t = trim(item);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')') throw ParseError(line, "vertex must be '(a,b,...)'");
    Point p;
    for (const auto& c : split_top_level(t.substr(1, t.size() - 2), ',')) p.push_back(scalar_at(c, line));
    if (!out.empty() && p.size() != out.front().size()) throw ParseError(line, "vertices of mixed dimension");
    out.push_back(std::move(p));
  }
  if (out.empty()) throw ParseError(line, "no vertices");
  return out;
}

ModelPtr build_monomial(const Block& b, std::optional<unsigned> truncation, const std::string& name) {
  auto sit = b.entries.find("slice");
  if (sit == b.entries.end()) throw ParseError(b.first_line, "monomial instance needs 'slice'");
  const auto& slice = sit->second.value;
  if (slice == "parity") {
    if (b.entries.count("vertices")) throw ParseError(b.entries.at("vertices").line, "parity slice takes no vertices");
    return laurent_monomial(parity_slice(), truncation.value_or(512), name);
  }
  if (slice == "polytope") {
    auto vit = b.entries.find("vertices");
    if (vit == b.entries.end()) throw ParseError(sit->second.line, "polytope slice needs 'vertices'");
    try {
      return laurent_monomial(polytope_slice(parse_vertices(vit->second.value, vit->second.line)),
                              truncation.value_or(128), name);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Parse) throw;
      throw ParseError(vit->second.line, e.what());
    }
  }
  throw ParseError(sit->second.line, "unknown slice rule '" + slice + "'");
}

}  // namespace

RationalFunction parse_element(std::string_view text, const Variables& vars) {
  return ExprParser(text, vars).parse();
}

Flag parse_flag(std::string_view text) {
  auto t = trim(text);
  if (t == "coordinate") throw ParseError(0, "coordinate flag needs an order and a center");
  auto call = parse_call(t);
  if (!call) throw ParseError(0, "unrecognized flag '" + std::string(t) + "'");
  const auto& [name, args] = *call;
  if (name == "point") {
    if (args.size() != 1) throw ParseError(0, "point(q) takes one argument");
    if (args[0] == "inf" || args[0] == "infinity") return Flag::at_infinity();
    return Flag::curve_point(parse_scalar(args[0]));
  }
  if (name == "coordinate") {
    if (args.size() != 2) throw ParseError(0, "coordinate([order],[center]) takes two lists");
    std::vector<std::size_t> order;
    for (const auto& o : parse_list(args[0], 0)) {
      Scalar q = parse_scalar(o);
      if (q.get_den() != 1 || sgn(q) <= 0) throw ParseError(0, "flag order entries are 1-based indices");
      order.push_back(q.get_num().get_ui() - 1);
    }
    std::vector<Scalar> center;
    for (const auto& c : parse_list(args[1], 0)) center.push_back(parse_scalar(c));
    try {
      return Flag::coordinate(std::move(order), std::move(center));
    } catch (const FlagInapplicable& e) {
      throw ParseError(0, e.what());
    }
  }
  throw ParseError(0, "unknown flag '" + name + "'");
}

InstanceDocument parse_instance(std::string_view text, const ParseOptions& options) {
  InstanceDocument doc;
  const auto blocks = split_blocks(text);
  if (blocks.empty()) throw ParseError(0, "empty instance file");

  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const Block& b = blocks[bi];
    for (const auto& imp : b.imports) {
      std::filesystem::path path = imp.value;
      if (path.is_relative()) path = options.base_dir / path;
      ParseOptions sub = options;
      sub.validate = false;
      InstanceDocument imported;
      try {
        imported = load_instance(path, sub);
      } catch (const IoError& e) {
        throw ParseError(imp.line, e.what());
      } catch (const ParseError& e) {
        throw ParseError(imp.line, "in " + path.string() + ": " + e.what());
      }
      for (auto& [n, m] : imported.declared) doc.declared[n] = m;
      for (auto& [n, f] : imported.flags) doc.flags[n] = f;
    }
    if (b.entries.empty()) continue;

    auto kit = b.entries.find("kind");
    if (kit == b.entries.end()) throw ParseError(b.first_line, "block has no 'kind'");
    const std::string& kind = kit->second.value;
    auto allowed = allowed_keys().find(kind);
    if (allowed == allowed_keys().end()) throw ParseError(kit->second.line, "unknown kind '" + kind + "'");
    for (const auto& [key, entry] : b.entries)
      if (!common_keys().count(key) && !allowed->second.count(key))
        throw ParseError(entry.line, "unknown key '" + key + "' for kind " + kind);

    std::string name = kind + std::to_string(bi + 1);
    if (auto it = b.entries.find("name"); it != b.entries.end()) name = it->second.value;
    std::optional<unsigned> truncation;
    if (auto it = b.entries.find("truncation"); it != b.entries.end())
      truncation = positive_at(it->second.value, it->second.line);
    bool strict = true;
    if (auto it = b.entries.find("validation"); it != b.entries.end()) {
      if (it->second.value == "report") {
        strict = false;
      } else if (it->second.value != "strict") {
        throw ParseError(it->second.line, "validation must be strict or report");
      }
    }
    std::optional<Flag> flag;
    if (auto it = b.entries.find("flag"); it != b.entries.end()) {
      try {
        flag = parse_flag(it->second.value);
      } catch (const ParseError& e) {
        throw ParseError(it->second.line, e.what());
      }
    }

    auto lookup = [&](const char* key) -> ModelPtr {
      auto it = b.entries.find(key);
      if (it == b.entries.end()) throw ParseError(b.first_line, kind + " instance needs '" + key + "'");
      auto found = doc.declared.find(it->second.value);
      if (found == doc.declared.end())
        throw ParseError(it->second.line, "instance '" + it->second.value + "' is not declared earlier or imported");
      return found->second;
    };

    ModelPtr model;
    if (kind == "curve") {
      model = build_curve(b, truncation.value_or(512), name);
    } else if (kind == "monomial") {
      model = build_monomial(b, truncation, name);
    } else if (kind == "generated") {
      ModelPtr ambient = lookup("ambient");
      auto git = b.entries.find("generators");
      if (git == b.entries.end()) throw ParseError(b.first_line, "generated instance needs 'generators'");
      std::vector<Generator> gens;
      for (const auto& item : split_top_level(git->second.value, ';')) {
        if (item.empty()) continue;
        auto colon = item.find(':');
        if (colon == std::string::npos) throw ParseError(git->second.line, "generator must be '<degree>: <expr>'");
        unsigned deg = positive_at(trim(std::string_view(item).substr(0, colon)), git->second.line);
        try {
          gens.push_back({deg, parse_element(std::string_view(item).substr(colon + 1), ambient->geometry().variables)});
        } catch (const ParseError& e) {
          throw ParseError(git->second.line, e.what());
        }
      }
      if (gens.empty()) throw ParseError(git->second.line, "no generators");
      unsigned bound = 64;
      if (auto it = b.entries.find("degree_bound"); it != b.entries.end())
        bound = positive_at(it->second.value, it->second.line);
      if (truncation) bound = std::min(bound, *truncation);
      try {
        model = generated_subalgebra(ambient, std::move(gens), bound, name);
      } catch (const ValidationError& e) {
        throw ParseError(git->second.line, e.what());
      }
    } else {
      ModelPtr base = lookup("base");
      auto it = b.entries.find("k");
      if (it == b.entries.end()) throw ParseError(b.first_line, "rescale instance needs 'k'");
      model = subalgebra_rescale(base, positive_at(it->second.value, it->second.line));
      if (truncation && *truncation < model->truncation())
        throw ParseError(b.entries.at("truncation").line, "truncation of a rescaled model follows its base");
    }

    if (flag && flag->dimension() != model->dimension())
      throw ParseError(b.entries.at("flag").line, "flag dimension does not match the model");
    if (doc.declared.count(name))
      throw ParseError(b.first_line, "instance '" + name + "' declared twice");
    doc.declared[name] = model;
    doc.flags[name] = flag;
    doc.model = model;
    doc.flag = flag;
    doc.strict_validation = strict;
  }
  if (!doc.model) throw ParseError(0, "no instance block");

  if (options.validate) {
    auto report = validate_model(*doc.model, options.validation_samples, options.seed, 8);
    if (!report.passed) {
      if (doc.strict_validation) throw ValidationError("instance failed validation\n" + report.to_string());
      doc.validation_failure = std::move(report);
    }
  }
  return doc;
}

InstanceDocument load_instance(const std::filesystem::path& path, ParseOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read instance file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (options.base_dir.empty() || path.has_parent_path()) options.base_dir = path.parent_path();
  return parse_instance(buf.str(), options);
}

}  // namespace okbody
