#include "sexpr.hpp"

#include <cctype>

#include "infectio/error.hpp"

namespace infectio::sexpr {

bool Value::is_form(std::string_view head) const {
  return is_list() && !items.empty() && items[0].is_atom() && items[0].text == head;
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  Value read_top() {
    Value v = read();
    skip();
    if (pos_ != text_.size()) throw ParseError("unexpected text after proof", pos_);
    return v;
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  Value read() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    Value v;
    v.offset = pos_;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      v.kind = Value::Kind::list;
      while (true) {
        skip();
        if (pos_ >= text_.size()) throw ParseError("unclosed '('", v.offset);
        if (text_[pos_] == ')') {
          ++pos_;
          return v;
        }
        v.items.push_back(read());
      }
    }
    if (c == ')') throw ParseError("unexpected ')'", pos_);
    if (c == '"') {
      ++pos_;
      v.kind = Value::Kind::string;
      while (true) {
        if (pos_ >= text_.size()) throw ParseError("unterminated string", v.offset);
        const char d = text_[pos_++];
        if (d == '"') return v;
        if (d == '\\') {
          if (pos_ >= text_.size()) throw ParseError("unterminated string", v.offset);
          v.text.push_back(text_[pos_++]);
        } else {
          v.text.push_back(d);
        }
      }
    }
    while (pos_ < text_.size()) {
      const char d = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == '"' ||
          d == ';') {
        break;
      }
      v.text.push_back(d);
      ++pos_;
    }
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Value parse(std::string_view text) { return Reader(text).read_top(); }

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace infectio::sexpr
