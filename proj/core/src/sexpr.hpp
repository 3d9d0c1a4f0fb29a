#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace infectio::sexpr {

struct Value {
  enum class Kind { atom, string, list };

  Kind kind = Kind::atom;
  std::string text;
  std::vector<Value> items;
  std::size_t offset = 0;

  bool is_atom() const { return kind == Kind::atom; }
  bool is_string() const { return kind == Kind::string; }
  bool is_list() const { return kind == Kind::list; }
  /// True for a list whose first item is the atom `head`.
  bool is_form(std::string_view head) const;
};

/// Parses exactly one value; `;` starts a comment running to end of line.
/// Throws ParseError.
Value parse(std::string_view text);

std::string quote(std::string_view s);

}  // namespace infectio::sexpr
