#include "confseq/algebra_file.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace confseq {

namespace {

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

int parse_int(const std::string& token, std::size_t line, const std::string& what) {
  if (token.empty()) throw ParseError(line, "missing " + what);
  std::size_t i = (token[0] == '-') ? 1 : 0;
  if (i == token.size()) throw ParseError(line, "malformed " + what + " '" + token + "'");
  for (; i < token.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(token[i]))) throw ParseError(line, "malformed " + what + " '" + token + "'");
  if (token.size() > 6) throw ParseError(line, what + " '" + token + "' out of range");
  return std::stoi(token);
}

bool valid_label(const std::string& s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return s == "1";
  for (char c : s)
    if (c == '+' || c == '-' || c == '*' || c == '=' || c == '#' || c == '/') return false;
  return true;
}

/// c * f1 * f2 * ... with the factors left as labels.
struct Term {
  Scalar coef;
  std::vector<std::string> factors;
};

std::vector<Term> parse_sum(const std::string& text, const Field& field, std::size_t line) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError(line, "empty right-hand side");
  std::vector<Term> out;
  if (s == "0") return out;
  std::size_t i = 0;
  while (i < s.size()) {
    Scalar sign(1);
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = Scalar(-1);
      ++i;
    } else if (!out.empty()) {
      throw ParseError(line, "expected '+' or '-' in '" + text + "'");
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string body = s.substr(i, j - i);
    if (body.empty()) throw ParseError(line, "empty term in '" + text + "'");
    Term t{sign * Scalar::in_field(1, field), {}};
    std::size_t k = 0;
    bool first = true;
    while (k <= body.size()) {
      std::size_t star = body.find('*', k);
      if (star == std::string::npos) star = body.size();
      std::string f = body.substr(k, star - k);
      if (f.empty()) throw ParseError(line, "empty factor in '" + text + "'");
      if (first && (std::isdigit(static_cast<unsigned char>(f[0])) && f != "1")) {
        try {
          t.coef = t.coef * Scalar::parse(f, field);
        } catch (const std::exception&) {
          throw ParseError(line, "malformed coefficient '" + f + "'");
        }
      } else if (first && f == "1" && star != body.size()) {
        // "1*x": a unit coefficient
      } else {
        t.factors.push_back(f);
      }
      first = false;
      k = star + 1;
    }
    out.push_back(std::move(t));
    i = j;
  }
  return out;
}

std::string coefficient_prefix(const Scalar& c, bool first) {
  std::string s = c.to_string();
  bool neg = s.front() == '-';
  if (neg) s.erase(0, 1);
  std::string out = first ? (neg ? "-" : "") : (neg ? " - " : " + ");
  if (s != "1") out += s + "*";
  return out;
}

std::string render_sum(const std::vector<std::pair<Scalar, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) out += coefficient_prefix(terms[i].first, i == 0) + terms[i].second;
  return out;
}

struct Parsed {
  std::string kind;
  std::string name;
  Field field = Field::rationals();
  std::vector<std::pair<std::string, int>> items;  // basis elements or generators
  std::map<std::string, std::size_t> index;
  std::optional<std::string> unit, top;
  std::optional<int> truncate;
  struct Rhs {
    std::size_t line;
    std::vector<std::string> lhs;
    std::string text;
  };
  std::vector<Rhs> products, differentials;
};

std::size_t lookup(const Parsed& p, const std::string& label, std::size_t line) {
  auto it = p.index.find(label);
  if (it == p.index.end()) throw ParseError(line, "unknown label '" + label + "'");
  return it->second;
}

Element basis_element(const Parsed& p, const std::string& text, std::size_t line) {
  Element e;
  for (const auto& t : parse_sum(text, p.field, line)) {
    if (t.factors.size() > 1) throw ParseError(line, "products of basis labels are not allowed on a right-hand side");
    std::size_t k = t.factors.empty() ? lookup(p, *p.unit, line) : lookup(p, t.factors[0], line);
    e.add(k, t.coef);
  }
  return e;
}

Algebra build_basis_form(const Parsed& p) {
  std::vector<BasisElement> basis;
  for (const auto& [l, d] : p.items) basis.push_back({l, d});
  Algebra a(p.name, p.field, basis);
  a.set_unit(lookup(p, *p.unit, 0));
  for (const auto& r : p.products) {
    std::size_t i = lookup(p, r.lhs[0], r.line), j = lookup(p, r.lhs[1], r.line);
    if (a.product_set(i, j)) throw ParseError(r.line, "product " + r.lhs[0] + " " + r.lhs[1] + " given twice");
    if (r.text == "overflow")
      a.set_product_overflow(i, j);
    else
      a.set_product(i, j, basis_element(p, r.text, r.line));
  }
  std::vector<char> seen(a.dim(), 0);
  for (const auto& r : p.differentials) {
    std::size_t i = lookup(p, r.lhs[0], r.line);
    if (seen[i]) throw ParseError(r.line, "differential of " + r.lhs[0] + " given twice");
    seen[i] = 1;
    if (r.text == "overflow")
      a.set_differential_overflow(i);
    else
      a.set_differential(i, basis_element(p, r.text, r.line));
  }
  a.complete();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (!a.product_set(i, j)) a.set_product(i, j, Element{});
  if (p.top) a.set_top(lookup(p, *p.top, 0));
  a.set_truncation(p.truncate);
  a.validate();
  return a;
}

Algebra build_free_form(const Parsed& p) {
  if (!p.truncate) throw ParseError(0, "cdga-free needs a 'truncate N' line");
  std::vector<Generator> gens;
  for (const auto& [l, d] : p.items) gens.push_back({l, d});
  std::vector<WordPolynomial> d(gens.size());
  std::vector<char> seen(gens.size(), 0);
  for (const auto& r : p.differentials) {
    std::size_t g = lookup(p, r.lhs[0], r.line);
    if (seen[g]) throw ParseError(r.line, "differential of " + r.lhs[0] + " given twice");
    seen[g] = 1;
    for (const auto& t : parse_sum(r.text, p.field, r.line)) {
      WordTerm w{t.coef, {}};
      for (const auto& f : t.factors) w.word.push_back(lookup(p, f, r.line));
      if (w.word.empty()) throw ParseError(r.line, "constant term in a differential");
      d[g].push_back(std::move(w));
    }
  }
  try {
    return truncated_free_cdga(p.name, p.field, gens, d, *p.truncate);
  } catch (const PreconditionError& e) {
    throw ParseError(0, e.what());
  }
}

}  // namespace

Algebra parse_algebra(const std::string& text) {
  Parsed p;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  bool ended = false;
  while (std::getline(in, raw)) {
    ++line;
    for (std::size_t i = 0; i < raw.size(); ++i)
      if (raw[i] == '#' && (i == 0 || std::isspace(static_cast<unsigned char>(raw[i - 1])))) {
        raw.erase(i);
        break;
      }
    auto w = words(raw);
    if (w.empty()) continue;
    if (ended) throw ParseError(line, "text after 'end'");
    const std::string& key = w[0];
    if (p.kind.empty()) {
      if ((key != "algebra" && key != "cdga-free") || w.size() != 2)
        throw ParseError(line, "expected 'algebra NAME' or 'cdga-free NAME'");
      p.kind = key;
      p.name = w[1];
      continue;
    }
    const bool free = p.kind == "cdga-free";
    if (key == "end") {
      ended = true;
    } else if (key == "field") {
      if (w.size() != 2) throw ParseError(line, "expected 'field Q' or 'field Fp'");
      try {
        p.field = Field::parse(w[1]);
      } catch (const std::exception& e) {
        throw ParseError(line, e.what());
      }
    } else if ((key == "basis" && !free) || (key == "generator" && free)) {
      if (w.size() != 4 || w[2] != "degree") throw ParseError(line, "expected '" + key + " LABEL degree D'");
      if (!valid_label(w[1])) throw ParseError(line, "invalid label '" + w[1] + "'");
      int d = parse_int(w[3], line, "degree");
      if (d < 0) throw ParseError(line, "negative degree");
      if (p.index.count(w[1])) throw ParseError(line, "duplicate label '" + w[1] + "'");
      p.index[w[1]] = p.items.size();
      p.items.emplace_back(w[1], d);
    } else if ((key == "unit" || key == "top") && !free) {
      if (w.size() != 2) throw ParseError(line, "expected '" + key + " LABEL'");
      lookup(p, w[1], line);
      (key == "unit" ? p.unit : p.top) = w[1];
    } else if (key == "truncate") {
      if (w.size() != 2) throw ParseError(line, "expected 'truncate N'");
      p.truncate = parse_int(w[1], line, "truncation bound");
    } else if (key == "product" && !free) {
      auto eq = raw.find('=');
      if (w.size() < 5 || w[3] != "=" || eq == std::string::npos) throw ParseError(line, "expected 'product A B = ...'");
      lookup(p, w[1], line);
      lookup(p, w[2], line);
      std::string rhs = raw.substr(eq + 1);
      auto rw = words(rhs);
      p.products.push_back({line, {w[1], w[2]}, rw.size() == 1 && rw[0] == "overflow" ? "overflow" : rhs});
    } else if (key == "d") {
      auto eq = raw.find('=');
      if (w.size() < 4 || w[2] != "=" || eq == std::string::npos) throw ParseError(line, "expected 'd A = ...'");
      lookup(p, w[1], line);
      std::string rhs = raw.substr(eq + 1);
      auto rw = words(rhs);
      p.differentials.push_back({line, {w[1]}, rw.size() == 1 && rw[0] == "overflow" ? "overflow" : rhs});
    } else {
      throw ParseError(line, "unexpected '" + key + "'");
    }
  }
  if (p.kind.empty()) throw ParseError(line, "empty algebra text");
  if (!ended) throw ParseError(line + 1, "missing 'end'");
  if (p.kind == "cdga-free") return build_free_form(p);
  if (!p.unit) {
    for (const auto& [l, d] : p.items)
      if (d == 0) {
        if (p.unit) throw ParseError(0, "several degree-zero labels and no 'unit' line");
        p.unit = l;
      }
    if (!p.unit) throw ParseError(0, "no unit");
  }
  return build_basis_form(p);
}

std::string serialize_algebra(const Algebra& a) {
  std::ostringstream out;
  if (const auto& pres = a.presentation()) {
    out << "cdga-free " << a.name() << "\n";
    out << "field " << a.field().name() << "\n";
    for (const auto& g : pres->generators) out << "generator " << g.label << " degree " << g.degree << "\n";
    for (std::size_t g = 0; g < pres->generators.size(); ++g) {
      if (pres->differential[g].empty()) continue;
      std::vector<std::pair<Scalar, std::string>> terms;
      for (const auto& w : pres->differential[g]) {
        std::string word;
        for (std::size_t k = 0; k < w.word.size(); ++k) word += (k ? "*" : "") + pres->generators[w.word[k]].label;
        terms.emplace_back(w.coef, word);
      }
      out << "d " << pres->generators[g].label << " = " << render_sum(terms) << "\n";
    }
    out << "truncate " << pres->bound << "\n";
    out << "end\n";
    return out.str();
  }
  auto sum = [&](const Element& e) {
    std::vector<std::pair<Scalar, std::string>> terms;
    for (const auto& [k, c] : e.entries()) terms.emplace_back(c, a.label(k));
    return render_sum(terms);
  };
  out << "algebra " << a.name() << "\n";
  out << "field " << a.field().name() << "\n";
  for (const auto& b : a.basis()) out << "basis " << b.label << " degree " << b.degree << "\n";
  out << "unit " << a.label(a.unit()) << "\n";
  if (a.top()) out << "top " << a.label(*a.top()) << "\n";
  if (a.truncation()) out << "truncate " << *a.truncation() << "\n";
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j) {
      if (i == a.unit() || j == a.unit()) continue;
      if (a.product_overflows(i, j)) {
        out << "product " << a.label(i) << " " << a.label(j) << " = overflow\n";
        continue;
      }
      const Element& p = a.product(i, j);
      if (!p.is_zero()) out << "product " << a.label(i) << " " << a.label(j) << " = " << sum(p) << "\n";
    }
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.differential_overflows(i)) {
      out << "d " << a.label(i) << " = overflow\n";
      continue;
    }
    const Element& d = a.d_basis(i);
    if (!d.is_zero()) out << "d " << a.label(i) << " = " << sum(d) << "\n";
  }
  out << "end\n";
  return out.str();
}

Algebra retruncate(const Algebra& a, int bound) {
  const auto& pres = a.presentation();
  if (!pres) throw PreconditionError("algebra '" + a.name() + "' is not a truncated free model");
  return truncated_free_cdga(a.name(), a.field(), pres->generators, pres->differential, bound);
}

}  // namespace confseq
