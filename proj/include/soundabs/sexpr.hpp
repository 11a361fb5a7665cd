#ifndef SOUNDABS_SEXPR_HPP
#define SOUNDABS_SEXPR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace soundabs {

struct SourcePos {
  int line = 0;
  int col = 0;
};

// Error thrown by the reader and by the file-format parsers built on top of
// it.  `where` carries the position of the offending token.
class InputError : public std::runtime_error {
 public:
  InputError(std::string msg, SourcePos where, std::string origin = "")
      : std::runtime_error(format(msg, where, origin)), pos(where) {}
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
  SourcePos pos;

 private:
  static std::string format(const std::string& msg, SourcePos where,
                            const std::string& origin) {
    std::string out;
    if (!origin.empty()) out += origin + ":";
    out += std::to_string(where.line) + ":" + std::to_string(where.col) + ": " + msg;
    return out;
  }
};

// A parsed S-expression: either a bare atom or a parenthesized list.
struct Sexpr {
  enum class Kind { Atom, List };
  Kind kind = Kind::Atom;
  std::string atom;          // valid when kind == Atom
  std::vector<Sexpr> items;  // valid when kind == List
  SourcePos pos;
  std::string origin;  // file name (or other source label) for error messages

  static Sexpr atom_node(std::string a) {
    Sexpr e;
    e.kind = Kind::Atom;
    e.atom = std::move(a);
    return e;
  }
  static Sexpr list_node() {
    Sexpr e;
    e.kind = Kind::List;
    return e;
  }

  bool is_atom() const { return kind == Kind::Atom; }
  bool is_list() const { return kind == Kind::List; }
  bool is_atom(std::string_view s) const { return is_atom() && atom == s; }
  std::size_t size() const { return items.size(); }
  const Sexpr& at(std::size_t i) const {
    if (!is_list() || i >= items.size())
      throw InputError("malformed expression: missing element " + std::to_string(i), pos, origin);
    return items[i];
  }
  // Head symbol of a list like (head arg ...), or "" if not that shape.
  std::string head() const {
    if (is_list() && !items.empty() && items[0].is_atom()) return items[0].atom;
    return "";
  }
};

namespace detail {

class SexprReader {
 public:
  SexprReader(std::string_view text, std::string origin)
      : text_(text), origin_(std::move(origin)) {}

  std::vector<Sexpr> read_all() {
    std::vector<Sexpr> out;
    skip_space();
    while (!eof()) {
      out.push_back(read_expr());
      skip_space();
    }
    return out;
  }

 private:
  std::string_view text_;
  std::string origin_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;

  bool eof() const { return i_ >= text_.size(); }
  char peek() const { return text_[i_]; }
  SourcePos pos() const { return {line_, col_}; }

  char advance() {
    char c = text_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {
        while (!eof() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  static bool atom_char(char c) {
    return c != '(' && c != ')' && c != ';' && c != ' ' && c != '\t' &&
           c != '\r' && c != '\n';
  }

  Sexpr read_expr() {
    SourcePos start = pos();
    if (peek() == '(') {
      advance();
      Sexpr list;
      list.kind = Sexpr::Kind::List;
      list.pos = start;
      list.origin = origin_;
      skip_space();
      while (!eof() && peek() != ')') {
        list.items.push_back(read_expr());
        skip_space();
      }
      if (eof()) throw InputError("unterminated list", start, origin_);
      advance();  // ')'
      return list;
    }
    if (peek() == ')') throw InputError("unexpected ')'", start, origin_);
    Sexpr a;
    a.kind = Sexpr::Kind::Atom;
    a.pos = start;
    a.origin = origin_;
    while (!eof() && atom_char(peek())) a.atom.push_back(advance());
    if (a.atom.empty()) throw InputError("empty token", start, origin_);
    return a;
  }
};

}  // namespace detail

inline std::vector<Sexpr> read_sexprs(std::string_view text, std::string origin = "") {
  return detail::SexprReader(text, std::move(origin)).read_all();
}

inline Sexpr read_one_sexpr(std::string_view text, std::string origin = "") {
  auto all = read_sexprs(text, origin);
  if (all.size() != 1)
    throw InputError("expected exactly one expression, found " + std::to_string(all.size()),
                     SourcePos{1, 1}, origin);
  return all[0];
}

inline void write_sexpr(const Sexpr& e, std::string& out) {
  if (e.is_atom()) {
    out += e.atom;
    return;
  }
  out += '(';
  for (std::size_t i = 0; i < e.items.size(); ++i) {
    if (i) out += ' ';
    write_sexpr(e.items[i], out);
  }
  out += ')';
}

inline std::string write_sexpr(const Sexpr& e) {
  std::string out;
  write_sexpr(e, out);
  return out;
}

}  // namespace soundabs

#endif  // SOUNDABS_SEXPR_HPP
