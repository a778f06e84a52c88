#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "serp_audit/util/strings.hpp"

// A small, tolerant HTML parser: enough to extract links and titles from
// archived result pages without ever crashing on malformed markup. Not a
// spec-compliant browser tree builder.

namespace serp_audit::ingest {

struct HtmlNode {
  enum class Type { Document, Element, Text };

  Type type = Type::Document;
  std::string tag;  // lowercase, elements only
  std::vector<std::pair<std::string, std::string>> attrs;
  std::string text;  // text nodes only
  HtmlNode* parent = nullptr;
  std::vector<std::unique_ptr<HtmlNode>> children;

  const std::string* attr(std::string_view name) const {
    for (const auto& [k, v] : attrs)
      if (util::iequals(k, name)) return &v;
    return nullptr;
  }

  bool has_class(std::string_view cls) const {
    const std::string* v = attr("class");
    if (!v) return false;
    std::string_view rest = *v;
    while (!rest.empty()) {
      while (!rest.empty() && util::is_ascii_space(rest.front())) rest.remove_prefix(1);
      std::size_t end = 0;
      while (end < rest.size() && !util::is_ascii_space(rest[end])) ++end;
      if (rest.substr(0, end) == cls) return true;
      rest.remove_prefix(end);
    }
    return false;
  }

  // Concatenated text of all descendant text nodes, in document order.
  std::string text_content() const {
    std::string out;
    append_text(out);
    return out;
  }

 private:
  void append_text(std::string& out) const {
    if (type == Type::Text) out += text;
    for (const auto& child : children) child->append_text(out);
  }
};

namespace html_detail {

inline bool is_void_element(std::string_view tag) {
  static constexpr std::string_view kVoid[] = {
      "area", "base", "br", "col", "embed", "hr", "img", "input",
      "link", "meta", "param", "source", "track", "wbr"};
  for (auto v : kVoid)
    if (tag == v) return true;
  return false;
}

inline bool is_rawtext_element(std::string_view tag) {
  return tag == "script" || tag == "style";
}

// Opening `incoming` implicitly closes an open `open_tag`.
inline bool implicitly_closes(std::string_view open_tag, std::string_view incoming) {
  if (open_tag == "li" && incoming == "li") return true;
  if (open_tag == "p" && (incoming == "p" || incoming == "div" || incoming == "ul" ||
                          incoming == "ol" || incoming == "table"))
    return true;
  if ((open_tag == "td" || open_tag == "th") &&
      (incoming == "td" || incoming == "th" || incoming == "tr"))
    return true;
  if (open_tag == "tr" && incoming == "tr") return true;
  if (open_tag == "option" && incoming == "option") return true;
  if ((open_tag == "dt" || open_tag == "dd") && (incoming == "dt" || incoming == "dd"))
    return true;
  return false;
}

inline void decode_entities(std::string_view in, std::string& out) {
  out.reserve(out.size() + in.size());
  std::size_t i = 0;
  while (i < in.size()) {
    if (in[i] != '&') {
      out.push_back(in[i++]);
      continue;
    }
    const std::size_t semi = in.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(in[i++]);
      continue;
    }
    const std::string_view entity = in.substr(i + 1, semi - i - 1);
    char32_t cp = 0;
    bool ok = true;
    if (entity.empty()) {
      ok = false;
    } else if (entity[0] == '#') {
      std::size_t p = 1;
      int base = 10;
      if (p < entity.size() && (entity[p] == 'x' || entity[p] == 'X')) {
        base = 16;
        ++p;
      }
      if (p >= entity.size()) ok = false;
      for (; ok && p < entity.size(); ++p) {
        const char c = entity[p];
        int digit;
        if (c >= '0' && c <= '9') digit = c - '0';
        else if (base == 16 && c >= 'a' && c <= 'f') digit = c - 'a' + 10;
        else if (base == 16 && c >= 'A' && c <= 'F') digit = c - 'A' + 10;
        else { ok = false; break; }
        cp = cp * base + digit;
        if (cp > 0x10ffff) { ok = false; break; }
      }
    } else if (entity == "amp") cp = '&';
    else if (entity == "lt") cp = '<';
    else if (entity == "gt") cp = '>';
    else if (entity == "quot") cp = '"';
    else if (entity == "apos") cp = '\'';
    else if (entity == "nbsp") cp = 0xa0;
    else if (entity == "mdash") cp = 0x2014;
    else if (entity == "ndash") cp = 0x2013;
    else if (entity == "hellip") cp = 0x2026;
    else if (entity == "rsquo") cp = 0x2019;
    else if (entity == "lsquo") cp = 0x2018;
    else if (entity == "rdquo") cp = 0x201d;
    else if (entity == "ldquo") cp = 0x201c;
    else ok = false;

    if (!ok || cp == 0) {
      out.push_back(in[i++]);
      continue;
    }
    // inline UTF-8 encode
    if (cp < 0x80) out.push_back(static_cast<char>(cp));
    else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
      out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
    i = semi + 1;
  }
}

struct Parser {
  std::string_view src;
  std::size_t pos = 0;

  bool eof() const { return pos >= src.size(); }
  char peek(std::size_t off = 0) const {
    return pos + off < src.size() ? src[pos + off] : '\0';
  }

  void skip_until(std::string_view needle) {
    const auto at = src.find(needle, pos);
    pos = (at == std::string_view::npos) ? src.size() : at + needle.size();
  }

  std::string read_tag_name() {
    std::string name;
    while (!eof()) {
      const char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == ':') {
        name.push_back(util::ascii_lower(c));
        ++pos;
      } else {
        break;
      }
    }
    return name;
  }

  void skip_ws() {
    while (!eof() && util::is_ascii_space(peek())) ++pos;
  }

  // Parses attributes up to (not including) '>' or '/>'.
  std::vector<std::pair<std::string, std::string>> read_attrs() {
    std::vector<std::pair<std::string, std::string>> attrs;
    while (true) {
      skip_ws();
      if (eof() || peek() == '>' || (peek() == '/' && peek(1) == '>')) break;
      std::string name;
      while (!eof()) {
        const char c = peek();
        if (c == '=' || c == '>' || c == '/' || util::is_ascii_space(c)) break;
        name.push_back(util::ascii_lower(c));
        ++pos;
      }
      if (name.empty()) {  // stray character; skip it to make progress
        ++pos;
        continue;
      }
      std::string value;
      skip_ws();
      if (peek() == '=') {
        ++pos;
        skip_ws();
        const char quote = peek();
        if (quote == '"' || quote == '\'') {
          ++pos;
          const auto end = src.find(quote, pos);
          const std::string_view raw =
              src.substr(pos, (end == std::string_view::npos ? src.size() : end) - pos);
          decode_entities(raw, value);
          pos = (end == std::string_view::npos) ? src.size() : end + 1;
        } else {
          std::string raw;
          while (!eof() && !util::is_ascii_space(peek()) && peek() != '>') {
            raw.push_back(peek());
            ++pos;
          }
          decode_entities(raw, value);
        }
      }
      attrs.emplace_back(std::move(name), std::move(value));
    }
    return attrs;
  }
};

}  // namespace html_detail

// Never throws; unparseable regions are recovered as text or skipped.
inline std::unique_ptr<HtmlNode> parse_html(std::string_view html) {
  auto doc = std::make_unique<HtmlNode>();
  doc->type = HtmlNode::Type::Document;

  std::vector<HtmlNode*> stack{doc.get()};
  html_detail::Parser p{html};
  std::string pending_text;

  const auto flush_text = [&] {
    if (pending_text.empty()) return;
    auto node = std::make_unique<HtmlNode>();
    node->type = HtmlNode::Type::Text;
    html_detail::decode_entities(pending_text, node->text);
    node->parent = stack.back();
    stack.back()->children.push_back(std::move(node));
    pending_text.clear();
  };

  while (!p.eof()) {
    if (p.peek() != '<') {
      pending_text.push_back(p.peek());
      ++p.pos;
      continue;
    }
    // '<' — decide what it starts
    if (p.peek(1) == '!') {
      flush_text();
      if (p.peek(2) == '-' && p.peek(3) == '-') {
        p.pos += 4;
        p.skip_until("-->");
      } else {
        p.pos += 2;
        p.skip_until(">");
      }
      continue;
    }
    if (p.peek(1) == '?') {
      flush_text();
      p.pos += 2;
      p.skip_until(">");
      continue;
    }
    if (p.peek(1) == '/') {
      const std::size_t save = p.pos;
      p.pos += 2;
      const std::string tag = p.read_tag_name();
      if (tag.empty()) {  // "</ " is text
        p.pos = save;
        pending_text.push_back('<');
        ++p.pos;
        continue;
      }
      p.skip_until(">");
      flush_text();
      // pop to the matching open element, tolerating stray closers
      for (std::size_t i = stack.size(); i-- > 1;) {
        if (stack[i]->tag == tag) {
          stack.resize(i);
          break;
        }
      }
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(p.peek(1)))) {
      pending_text.push_back('<');
      ++p.pos;
      continue;
    }

    // opening tag
    ++p.pos;
    const std::string tag = p.read_tag_name();
    auto attrs = p.read_attrs();
    bool self_closing = false;
    if (p.peek() == '/' && p.peek(1) == '>') {
      self_closing = true;
      p.pos += 2;
    } else if (p.peek() == '>') {
      ++p.pos;
    } else {
      p.skip_until(">");
    }
    flush_text();

    while (stack.size() > 1 && html_detail::implicitly_closes(stack.back()->tag, tag))
      stack.pop_back();

    auto node = std::make_unique<HtmlNode>();
    node->type = HtmlNode::Type::Element;
    node->tag = tag;
    node->attrs = std::move(attrs);
    node->parent = stack.back();
    HtmlNode* raw = node.get();
    stack.back()->children.push_back(std::move(node));

    if (html_detail::is_rawtext_element(tag) && !self_closing) {
      // swallow raw text up to the matching close tag
      const std::string close = "</" + tag;
      std::size_t at = p.pos;
      while (true) {
        at = p.src.find('<', at);
        if (at == std::string_view::npos) {
          p.pos = p.src.size();
          break;
        }
        if (util::starts_with_ci(p.src.substr(at), close)) {
          p.pos = at;
          p.skip_until(">");
          break;
        }
        ++at;
      }
      continue;
    }
    if (!self_closing && !html_detail::is_void_element(tag)) stack.push_back(raw);
  }
  flush_text();
  return doc;
}

// CSS-flavored selectors: compound parts made of tag, .class, #id,
// [attr] and [attr=value], combined with descendant (space) and child
// ('>') combinators. '*' matches any element.
class Selector {
 public:
  static Selector parse(std::string_view text) {
    Selector sel;
    std::size_t i = 0;
    bool child_combinator = false;
    while (i < text.size()) {
      while (i < text.size() && util::is_ascii_space(text[i])) ++i;
      if (i < text.size() && text[i] == '>') {
        child_combinator = true;
        ++i;
        continue;
      }
      if (i >= text.size()) break;
      Compound c;
      c.direct_child = child_combinator && !sel.parts_.empty();
      child_combinator = false;
      while (i < text.size() && !util::is_ascii_space(text[i]) && text[i] != '>') {
        if (text[i] == '.') {
          ++i;
          c.classes.push_back(read_name(text, i));
        } else if (text[i] == '#') {
          ++i;
          c.id = read_name(text, i);
        } else if (text[i] == '[') {
          ++i;
          std::string name, value;
          bool has_value = false;
          while (i < text.size() && text[i] != ']' && text[i] != '=')
            name.push_back(util::ascii_lower(text[i++]));
          if (i < text.size() && text[i] == '=') {
            has_value = true;
            ++i;
            if (i < text.size() && (text[i] == '"' || text[i] == '\'')) {
              const char q = text[i++];
              while (i < text.size() && text[i] != q) value.push_back(text[i++]);
              if (i < text.size()) ++i;
            } else {
              while (i < text.size() && text[i] != ']') value.push_back(text[i++]);
            }
          }
          if (i < text.size() && text[i] == ']') ++i;
          c.attr_checks.push_back({std::move(name), std::move(value), has_value});
        } else if (text[i] == '*') {
          ++i;
        } else {
          c.tag = read_tag(text, i);
        }
      }
      sel.parts_.push_back(std::move(c));
    }
    return sel;
  }

  bool empty() const { return parts_.empty(); }

  bool matches(const HtmlNode& node) const {
    if (parts_.empty() || node.type != HtmlNode::Type::Element) return false;
    if (!matches_compound(node, parts_.back())) return false;
    // walk ancestors right to left
    const HtmlNode* current = node.parent;
    for (std::size_t i = parts_.size() - 1; i-- > 0;) {
      const bool direct = parts_[i + 1].direct_child;
      bool found = false;
      while (current != nullptr && current->type == HtmlNode::Type::Element) {
        if (matches_compound(*current, parts_[i])) {
          found = true;
          current = current->parent;
          break;
        }
        if (direct) break;
        current = current->parent;
      }
      if (!found) return false;
    }
    return true;
  }

 private:
  struct AttrCheck {
    std::string name;
    std::string value;
    bool check_value = false;
  };
  struct Compound {
    std::string tag;  // empty = any
    std::vector<std::string> classes;
    std::string id;
    std::vector<AttrCheck> attr_checks;
    bool direct_child = false;  // relation to the previous compound
  };

  static std::string read_name(std::string_view text, std::size_t& i) {
    std::string out;
    while (i < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '-' ||
            text[i] == '_')) {
      out.push_back(text[i++]);
    }
    return out;
  }
  static std::string read_tag(std::string_view text, std::size_t& i) {
    std::string out;
    while (i < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '-')) {
      out.push_back(util::ascii_lower(text[i++]));
    }
    if (out.empty()) ++i;  // unknown character; skip to make progress
    return out;
  }

  static bool matches_compound(const HtmlNode& node, const Compound& c) {
    if (!c.tag.empty() && node.tag != c.tag) return false;
    if (!c.id.empty()) {
      const std::string* id = node.attr("id");
      if (!id || *id != c.id) return false;
    }
    for (const auto& cls : c.classes)
      if (!node.has_class(cls)) return false;
    for (const auto& check : c.attr_checks) {
      const std::string* v = node.attr(check.name);
      if (!v) return false;
      if (check.check_value && *v != check.value) return false;
    }
    return true;
  }

  std::vector<Compound> parts_;
};

namespace html_detail {
inline void select_into(const HtmlNode& node, const Selector& sel,
                        std::vector<const HtmlNode*>& out) {
  if (sel.matches(node)) out.push_back(&node);
  for (const auto& child : node.children) select_into(*child, sel, out);
}
}  // namespace html_detail

// All matches in document order.
inline std::vector<const HtmlNode*> select_all(const HtmlNode& root, const Selector& sel) {
  std::vector<const HtmlNode*> out;
  html_detail::select_into(root, sel, out);
  return out;
}

inline const HtmlNode* select_first(const HtmlNode& root, const Selector& sel) {
  auto all = select_all(root, sel);
  return all.empty() ? nullptr : all.front();
}

}  // namespace serp_audit::ingest
