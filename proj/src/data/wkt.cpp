#include "e2ecd/data/wkt.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>

#include "e2ecd/core/error.hpp"

namespace e2ecd::data {
namespace {

class WktCursor {
 public:
  explicit WktCursor(std::string_view text) : text_(text) {}

  std::size_t pos() const noexcept { return pos_; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string keyword() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string word(text_.substr(start, pos_ - start));
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return word;
  }

  double number() {
    skip_space();
    std::size_t start = pos_;
    if (start < text_.size() && text_[start] == '+') ++start;
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + text_.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("WKT: " + what, std::min(pos_, text_.size()));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

BuildingPolygon parse_wkt_polygon(std::string_view text) {
  WktCursor cur(text);
  const std::size_t kind_at = (cur.skip_space(), cur.pos());
  const std::string kind = cur.keyword();
  if (kind.empty()) cur.fail("expected a geometry keyword");
  if (kind != "POLYGON") {
    if (kind == "MULTIPOLYGON" || kind == "POINT" || kind == "LINESTRING" ||
        kind == "MULTIPOINT" || kind == "MULTILINESTRING" || kind == "GEOMETRYCOLLECTION") {
      throw UnsupportedGeometry("WKT geometry '" + kind + "' is not supported (at byte " +
                                std::to_string(kind_at) + ")");
    }
    throw ParseError("WKT: unknown geometry keyword '" + kind + "'", kind_at);
  }
  if (cur.peek() != '(') {
    const std::string next = cur.keyword();
    if (next == "EMPTY") cur.fail("empty polygon");
    cur.fail("expected '('");
  }

  cur.expect('(');
  const std::size_t ring_at = cur.pos();
  cur.expect('(');
  BuildingPolygon polygon;
  while (true) {
    const double x = cur.number();
    const double y = cur.number();
    polygon.vertices.push_back({x, y});
    const char next = cur.peek();
    if (next == ',') {
      cur.expect(',');
      continue;
    }
    if (next == ')') break;
    cur.fail("expected ',' or ')' in coordinate list");
  }
  cur.expect(')');
  if (cur.peek() == ',') {
    throw UnsupportedGeometry("WKT polygon with interior rings is not supported (at byte " +
                              std::to_string(cur.pos()) + ")");
  }
  cur.expect(')');
  if (!cur.at_end()) cur.fail("unexpected trailing characters");

  auto& v = polygon.vertices;
  if (v.size() > 1 && v.front().x == v.back().x && v.front().y == v.back().y) v.pop_back();

  std::vector<Point2> distinct;
  for (const auto& p : v) {
    const bool seen = std::any_of(distinct.begin(), distinct.end(),
                                  [&](const Point2& q) { return q.x == p.x && q.y == p.y; });
    if (!seen) distinct.push_back(p);
  }
  if (distinct.size() < 3) {
    throw ParseError("WKT: ring has fewer than 3 distinct vertices", ring_at);
  }
  return polygon;
}

}  // namespace e2ecd::data
