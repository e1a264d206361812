#pragma once

/** @file instance_io.hpp
 *  @brief Line-oriented instance documents.
 *
 *  @code
 *  ground: 1 2 3 4
 *  set A: 1 2
 *  set B: 2 3
 *  coat: empty omega A B
 *  value empty: 0/1
 *  value A&B: 1/4        # refinement member by expression
 *  value A&!B: 1/4
 *  @endcode
 *
 *  `#` starts a comment. Expressions combine set names, `empty`, `omega`
 *  and brace literals such as `{1,2}` with `&` (intersection), `!`
 *  (complement) and parentheses. Every refinement member needs exactly one
 *  value; several expressions may denote one member if their values agree.
 */

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "testkit.hpp"

namespace quasi {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(format(line, column, message)), line_(line), column_(column), message_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  static std::string format(std::size_t line, std::size_t column, const std::string& message) {
    if (line == 0) return message;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

namespace detail {

inline bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline bool valid_label(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || std::string_view("#,{}:&!()").find(c) != std::string_view::npos) {
      return false;
    }
  }
  return true;
}

/// Recursive-descent evaluator for set expressions. `offset` is the column
/// of expr[0] in its line, for error positions.
class ExpressionParser {
 public:
  ExpressionParser(std::string_view expr, const GroundSet& ground, const std::map<std::string, SubsetMask>& sets,
                   std::size_t line, std::size_t offset)
      : s_(expr), ground_(ground), sets_(sets), line_(line), offset_(offset) {}

  SubsetMask parse() {
    auto m = parse_meet();
    skip_space();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "' in expression");
    return m;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, offset_ + pos_, msg); }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  SubsetMask parse_meet() {
    auto m = parse_term();
    for (;;) {
      skip_space();
      if (pos_ < s_.size() && s_[pos_] == '&') {
        ++pos_;
        m = m & parse_term();
      } else {
        return m;
      }
    }
  }

  SubsetMask parse_term() {
    skip_space();
    if (pos_ >= s_.size()) fail("expression expected");
    const char c = s_[pos_];
    if (c == '!') {
      ++pos_;
      return complement(parse_term());
    }
    if (c == '(') {
      ++pos_;
      auto m = parse_meet();
      skip_space();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("')' expected");
      ++pos_;
      return m;
    }
    if (c == '{') return parse_literal();
    if (is_name_start(c)) {
      const auto start = pos_;
      while (pos_ < s_.size() && is_name_char(s_[pos_])) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      if (name == "empty") return ground_.empty_set();
      if (name == "omega") return ground_.omega();
      auto it = sets_.find(name);
      if (it == sets_.end()) {
        pos_ = start;
        fail("unknown set '" + name + "'");
      }
      return it->second;
    }
    fail("unexpected '" + std::string(1, c) + "' in expression");
  }

  SubsetMask parse_literal() {
    ++pos_;  // '{'
    SubsetMask m = ground_.empty_set();
    for (;;) {
      skip_space();
      if (pos_ >= s_.size()) fail("'}' expected");
      if (s_[pos_] == '}') {
        ++pos_;
        return m;
      }
      const auto start = pos_;
      while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != '}' && !std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      }
      const std::string label(s_.substr(start, pos_ - start));
      auto idx = ground_.index_of(label);
      if (!idx) {
        pos_ = start;
        fail("unknown element label '" + label + "'");
      }
      m = m | SubsetMask::singleton(*idx, ground_.width());
      skip_space();
      if (pos_ < s_.size() && s_[pos_] == ',') ++pos_;
    }
  }

  std::string_view s_;
  const GroundSet& ground_;
  const std::map<std::string, SubsetMask>& sets_;
  std::size_t line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> split_words(std::string_view s, std::size_t offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    const auto start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    out.push_back({std::string(s.substr(start, i - start)), offset + start});
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Evaluates a set expression against a ground set and named sets.
inline SubsetMask parse_set_expression(std::string_view expr, const GroundSet& ground,
                                       const std::map<std::string, SubsetMask>& sets = {}) {
  return detail::ExpressionParser(expr, ground, sets, 0, 1).parse();
}

inline InstanceSpec parse_instance(std::string_view document) {
  std::optional<GroundSet> ground;
  std::map<std::string, SubsetMask> sets;
  std::vector<NamedSet> named;
  std::optional<std::vector<SetExpression>> coat;
  std::size_t coat_line = 0;
  std::vector<ValueEntry> values;
  std::vector<std::size_t> value_lines;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= document.size()) {
    auto eol = document.find('\n', pos);
    if (eol == std::string_view::npos) eol = document.size();
    std::string_view line = document.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (detail::trim(line).empty()) continue;

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      const auto first = line.find_first_not_of(" \t");
      throw ParseError(line_no, first + 1, "syntax error: expected 'header: ...'");
    }
    const auto header_tokens = detail::split_words(line.substr(0, colon), 1);
    const std::string_view body = line.substr(colon + 1);
    const std::size_t body_col = colon + 2;
    if (header_tokens.empty()) throw ParseError(line_no, 1, "syntax error: missing header");
    const auto& keyword = header_tokens[0];

    auto need_ground = [&] {
      if (!ground) throw ParseError(line_no, keyword.column, "'ground' must be declared first");
    };

    if (keyword.text == "ground") {
      if (header_tokens.size() != 1) throw ParseError(line_no, header_tokens[1].column, "syntax error in ground header");
      if (ground) throw ParseError(line_no, keyword.column, "duplicate ground declaration");
      std::vector<std::string> labels;
      for (const auto& t : detail::split_words(body, body_col)) {
        if (!detail::valid_label(t.text)) throw ParseError(line_no, t.column, "invalid element label '" + t.text + "'");
        labels.push_back(t.text);
      }
      try {
        ground.emplace(std::move(labels));
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, body_col, e.what());
      }
    } else if (keyword.text == "set") {
      need_ground();
      if (header_tokens.size() != 2) throw ParseError(line_no, keyword.column, "syntax error: expected 'set NAME:'");
      const auto& name = header_tokens[1];
      if (!detail::is_name_start(name.text[0]) ||
          name.text.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_") !=
              std::string::npos) {
        throw ParseError(line_no, name.column, "invalid set name '" + name.text + "'");
      }
      if (name.text == "empty" || name.text == "omega") {
        throw ParseError(line_no, name.column, "'" + name.text + "' is reserved");
      }
      if (sets.contains(name.text)) throw ParseError(line_no, name.column, "duplicate set definition '" + name.text + "'");
      SubsetMask m = ground->empty_set();
      for (const auto& t : detail::split_words(body, body_col)) {
        auto idx = ground->index_of(t.text);
        if (!idx) throw ParseError(line_no, t.column, "unknown element label '" + t.text + "'");
        m = m | SubsetMask::singleton(*idx, ground->width());
      }
      sets.emplace(name.text, m);
      named.push_back({name.text, m});
    } else if (keyword.text == "coat") {
      need_ground();
      if (header_tokens.size() != 1) throw ParseError(line_no, header_tokens[1].column, "syntax error in coat header");
      if (coat) throw ParseError(line_no, keyword.column, "duplicate coat declaration");
      coat.emplace();
      coat_line = line_no;
      for (const auto& t : detail::split_words(body, body_col)) {
        auto m = detail::ExpressionParser(t.text, *ground, sets, line_no, t.column).parse();
        for (const auto& prev : *coat) {
          if (prev.mask == m) throw ParseError(line_no, t.column, "duplicate coat member " + ground->format(m));
        }
        coat->push_back({t.text, m});
      }
      bool has_empty = false, has_omega = false;
      for (const auto& c : *coat) {
        has_empty = has_empty || c.mask.is_empty();
        has_omega = has_omega || c.mask.is_full();
      }
      if (!has_empty) throw ParseError(line_no, keyword.column, "coat must contain empty");
      if (!has_omega) throw ParseError(line_no, keyword.column, "coat must contain omega");
    } else if (keyword.text == "value") {
      need_ground();
      if (header_tokens.size() < 2) throw ParseError(line_no, keyword.column, "syntax error: expected 'value EXPR:'");
      const auto expr_col = header_tokens[1].column;
      const auto expr = detail::trim(line.substr(expr_col - 1, colon - (expr_col - 1)));
      auto m = detail::ExpressionParser(expr, *ground, sets, line_no, expr_col).parse();
      const auto words = detail::split_words(body, body_col);
      if (words.size() != 1) throw ParseError(line_no, body_col, "syntax error: expected one rational p/q");
      Rational r;
      try {
        r = parse_rational(words[0].text);
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, words[0].column, e.what());
      }
      if (r < 0 || r > 1) throw ParseError(line_no, words[0].column, "value outside [0,1]");
      values.push_back({std::string(expr), m, QValue(r)});
      value_lines.push_back(line_no);
    } else {
      throw ParseError(line_no, keyword.column, "syntax error: unknown header '" + keyword.text + "'");
    }
  }

  if (!ground) throw ParseError(0, 0, "missing ground declaration");
  if (!coat) throw ParseError(0, 0, "missing coat declaration");

  InstanceSpec spec{*ground, std::move(named), std::move(*coat), std::vector<ValueEntry>{}, 0};
  const Coat c = spec.make_coat();
  const Refinement r = refine(c);
  std::map<SubsetMask, std::size_t> seen;  // mask -> index into values
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& v = values[i];
    if (!r.contains(v.mask)) {
      throw ParseError(value_lines[i], 1,
                       "value assigned to " + ground->format(v.mask) + " (" + v.expr + "), which is not in the refinement");
    }
    if (v.mask.is_empty() && v.value != QValue::zero()) throw ParseError(value_lines[i], 1, "value of empty must be 0");
    if (v.mask.is_full() && v.value != QValue::one()) throw ParseError(value_lines[i], 1, "value of omega must be 1");
    auto [it, inserted] = seen.emplace(v.mask, i);
    if (!inserted && values[it->second].value != v.value) {
      throw ParseError(value_lines[i], 1, "conflicting values for " + ground->format(v.mask) + ": " + v.expr + " = " +
                                              v.value.str() + " but " + values[it->second].expr + " = " +
                                              values[it->second].value.str());
    }
  }
  for (auto m : r.members()) {
    if (!seen.contains(m)) {
      throw ParseError(coat_line, 1, "missing value for refinement member " + ground->format(m));
    }
  }
  spec.values = std::move(values);
  return spec;
}

/// Writes a document that parse_instance reads back to the same instance.
/// Specs backed by a true measure are written with explicit induced values.
inline std::string render_instance(const InstanceSpec& spec) {
  std::ostringstream os;
  os << "ground:";
  for (const auto& l : spec.ground.labels()) os << ' ' << l;
  os << '\n';
  auto labels_of = [&](SubsetMask m) {
    std::string out;
    for (unsigned i = 0; i < spec.ground.width(); ++i) {
      if (m.contains(i)) out += ' ' + spec.ground.label(i);
    }
    return out;
  };
  for (const auto& s : spec.sets) os << "set " << s.name << ":" << labels_of(s.mask) << '\n';
  os << "coat:";
  for (const auto& c : spec.coat) os << ' ' << c.expr;
  os << '\n';
  if (const auto* explicit_values = std::get_if<std::vector<ValueEntry>>(&spec.values)) {
    for (const auto& v : *explicit_values) os << "value " << v.expr << ": " << v.value.str() << '\n';
  } else {
    const auto qm = spec.materialize();
    const auto& r = qm.refinement();
    for (std::size_t i = 0; i < r.size(); ++i) {
      os << "value " << spec.ground.format(r.members()[i]) << ": " << qm.values()[i].str() << '\n';
    }
  }
  return os.str();
}

}  // namespace quasi
