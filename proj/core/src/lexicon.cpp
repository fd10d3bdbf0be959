#include "sqa/lexicon.hpp"

#include <fstream>
#include <sstream>

#include "sqa/error.hpp"

namespace sqa {

std::string_view to_string(LexiconVariant v) {
  switch (v) {
    case LexiconVariant::Simple: return "simple";
    case LexiconVariant::Full: return "full";
    case LexiconVariant::Clock: return "clock";
  }
  return "?";
}

std::optional<LexiconVariant> lexicon_variant_from_string(
    std::string_view name) {
  if (name == "simple") return LexiconVariant::Simple;
  if (name == "full") return LexiconVariant::Full;
  if (name == "clock") return LexiconVariant::Clock;
  return std::nullopt;
}

namespace {

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

// Reads `key "value"` pairs from a line, e.g.
//   expr "{tr} is in {lm}" indicator "in"
std::vector<std::pair<std::string, std::string>> parse_quoted_pairs(
    const std::string& line, int lineno) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos >= line.size()) break;
    std::size_t key_end = line.find('"', pos);
    if (key_end == std::string::npos) {
      throw ParseError("expected quoted value in `" + line + "`", lineno);
    }
    std::string key = strip(line.substr(pos, key_end - pos));
    std::size_t val_end = line.find('"', key_end + 1);
    if (val_end == std::string::npos) {
      throw ParseError("unterminated string in `" + line + "`", lineno);
    }
    out.emplace_back(key, line.substr(key_end + 1, val_end - key_end - 1));
    pos = val_end + 1;
  }
  return out;
}

void validate_expression(const RelationExpression& e, int lineno) {
  auto tr = e.template_text.find("{tr}");
  auto lm = e.template_text.find("{lm}");
  if (tr == std::string::npos || lm == std::string::npos) {
    throw ParseError("template needs one {tr} and one {lm} slot", lineno);
  }
  if (e.template_text.find("{tr}", tr + 1) != std::string::npos ||
      e.template_text.find("{lm}", lm + 1) != std::string::npos) {
    throw ParseError("template slots must appear exactly once", lineno);
  }
  if (e.indicator.empty() ||
      e.template_text.find(e.indicator) == std::string::npos) {
    throw ParseError("indicator must occur verbatim inside the template",
                     lineno);
  }
}

}  // namespace

Lexicon Lexicon::load(const std::string& text) {
  Lexicon lex;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::optional<Relation> current;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("lexicon ", 0) == 0) {
      lex.name_ = strip(line.substr(8));
      continue;
    }
    if (line.rfind("relation ", 0) == 0) {
      std::string name = strip(line.substr(9));
      auto rel = relation_from_string(name);
      if (!rel) throw ParseError("unknown relation `" + name + "`", lineno);
      current = *rel;
      continue;
    }
    if (line.rfind("expr ", 0) == 0) {
      if (!current) {
        throw ParseError("expr outside of a relation block", lineno);
      }
      RelationExpression e;
      for (const auto& [key, value] : parse_quoted_pairs(line, lineno)) {
        if (key == "expr") {
          e.template_text = value;
        } else if (key == "indicator") {
          e.indicator = value;
        } else {
          throw ParseError("unknown key `" + key + "`", lineno);
        }
      }
      validate_expression(e, lineno);
      lex.expressions_[*current].push_back(e);
      continue;
    }
    if (line.rfind("shapes ", 0) == 0) {
      lex.vocab_.shapes = split_words(line.substr(7));
      continue;
    }
    if (line.rfind("colors ", 0) == 0) {
      lex.vocab_.colors = split_words(line.substr(7));
      continue;
    }
    if (line.rfind("sizes ", 0) == 0) {
      lex.vocab_.sizes = split_words(line.substr(6));
      continue;
    }
    throw ParseError("unrecognized line `" + line + "`", lineno);
  }

  std::string missing;
  for (Relation r : generator_relations().to_vector()) {
    if (!lex.has_expressions(r)) {
      if (!missing.empty()) missing += ", ";
      missing += to_string(r);
    }
  }
  if (!missing.empty()) {
    throw ParseError("lexicon covers no expression for: " + missing);
  }
  if (lex.vocab_.shapes.empty() || lex.vocab_.colors.empty() ||
      lex.vocab_.sizes.empty()) {
    throw ParseError("lexicon must list shapes, colors, and sizes");
  }
  return lex;
}

Lexicon Lexicon::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load(buf.str());
}

const Lexicon& Lexicon::builtin(LexiconVariant v) {
  static const Lexicon simple = load(builtin_lexicon_text(LexiconVariant::Simple));
  static const Lexicon full = load(builtin_lexicon_text(LexiconVariant::Full));
  static const Lexicon clock = load(builtin_lexicon_text(LexiconVariant::Clock));
  switch (v) {
    case LexiconVariant::Simple: return simple;
    case LexiconVariant::Full: return full;
    case LexiconVariant::Clock: return clock;
  }
  return full;
}

const std::vector<RelationExpression>& Lexicon::expressions(Relation r) const {
  static const std::vector<RelationExpression> empty;
  auto it = expressions_.find(r);
  return it == expressions_.end() ? empty : it->second;
}

bool Lexicon::has_expressions(Relation r) const {
  return !expressions(r).empty();
}

bool Lexicon::knows_indicator(Relation r, const std::string& surface) const {
  for (const auto& e : expressions(r)) {
    if (e.indicator == surface) return true;
    if (infinitive_phrase(e.indicator) == surface) return true;
  }
  return false;
}

int Lexicon::expression_count() const {
  int n = 0;
  for (const auto& [rel, exprs] : expressions_) {
    n += static_cast<int>(exprs.size());
  }
  return n;
}

std::string infinitive_phrase(const std::string& phrase) {
  static const std::map<std::string, std::string> irregular = {
      {"has", "have"},       {"is", "are"},        {"covers", "cover"},
      {"contains", "contain"}, {"touches", "touch"}, {"overlaps", "overlap"},
  };
  std::string out;
  for (const std::string& word : split_words(phrase)) {
    auto it = irregular.find(word);
    if (!out.empty()) out += ' ';
    out += (it != irregular.end()) ? it->second : word;
  }
  return out;
}

}  // namespace sqa
