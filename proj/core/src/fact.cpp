#include "sqa/fact.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "sqa/error.hpp"

namespace sqa {

std::string to_string(const Fact& f) {
  std::string out;
  if (f.negated) out += "not ";
  out += to_string(f.rel);
  out += '(';
  out += f.head;
  out += ',';
  out += f.tail;
  out += ')';
  return out;
}

FactBase::FactBase(const std::vector<Fact>& facts) {
  for (const Fact& f : facts) add_fact(f);
}

void FactBase::add_entity(const EntityId& id) {
  if (!has_entity(id)) entities_.push_back(id);
}

void FactBase::add_fact(const Fact& f) {
  if (f.head == f.tail && f.rel != Relation::EQ) {
    throw Error("reflexive fact rejected: " + to_string(f));
  }
  add_entity(f.head);
  add_entity(f.tail);
  if (std::find(facts_.begin(), facts_.end(), f) == facts_.end()) {
    facts_.push_back(f);
  }
}

bool FactBase::has_entity(const EntityId& id) const {
  return std::find(entities_.begin(), entities_.end(), id) != entities_.end();
}

namespace {

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// relname(arg1,arg2) -> {relname, arg1, arg2}
struct Atom {
  std::string rel, a, b;
};

Atom parse_atom(const std::string& text, int line) {
  auto open = text.find('(');
  auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    throw ParseError("expected `relname(entity1,entity2)`, got `" + text + "`",
                     line);
  }
  std::string rel = strip(text.substr(0, open));
  std::string args = text.substr(open + 1, close - open - 1);
  auto comma = args.find(',');
  if (comma == std::string::npos) {
    throw ParseError("expected two comma-separated arguments in `" + text + "`",
                     line);
  }
  Atom atom{rel, strip(args.substr(0, comma)), strip(args.substr(comma + 1))};
  if (atom.rel.empty() || atom.a.empty() || atom.b.empty()) {
    throw ParseError("empty relation or argument in `" + text + "`", line);
  }
  return atom;
}

}  // namespace

FactBase parse_facts(const std::string& text) {
  FactBase base;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = strip(raw);
    if (s.empty() || s[0] == '#' || s[0] == '%') continue;
    if (s.back() == '.') s = strip(s.substr(0, s.size() - 1));
    Atom atom = parse_atom(s, line);
    auto rel = relation_from_string(atom.rel);
    if (!rel) throw ParseError("unknown relation `" + atom.rel + "`", line);
    if (atom.a == "?" || atom.b == "?") {
      throw ParseError("`?` is only allowed in queries", line);
    }
    try {
      base.add_fact(make_fact(*rel, atom.a, atom.b));
    } catch (const Error& e) {
      throw ParseError(e.what(), line);
    }
  }
  return base;
}

FactBase parse_facts_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open facts file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_facts(buf.str());
}

Query parse_query(const std::string& text) {
  Atom atom = parse_atom(strip(text), 0);
  auto rel = relation_from_string(atom.rel);
  if (!rel) throw ParseError("unknown relation `" + atom.rel + "`");
  Query q;
  q.rel = *rel;
  if (atom.a != "?") q.head = atom.a;
  if (atom.b != "?") q.tail = atom.b;
  if (!q.head && !q.tail) {
    throw ParseError("at most one `?` slot is supported");
  }
  return q;
}

}  // namespace sqa
