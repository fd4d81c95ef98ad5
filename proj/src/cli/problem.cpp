#include "reescalc/problem.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <string>

#include "reescalc/closures.hpp"
#include "reescalc/polynomial.hpp"

namespace reescalc {
namespace {

struct Block;

struct Entry {
  std::string key;
  std::size_t line = 0;
  std::string value;                    // for `key = value`
  std::shared_ptr<Block> block;         // for `key { ... }`
};

struct Block {
  std::vector<Entry> entries;
};

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw InputError("line " + std::to_string(line) + ": " + msg);
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

class Reader {
 public:
  explicit Reader(std::string_view text) : s_(text) {}

  Block parse() {
    Block top = block(false);
    if (pos_ < s_.size()) fail(line_, "unmatched '}'");
    return top;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0, line_ = 1;

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void advance() {
    if (s_[pos_] == '\n') ++line_;
    ++pos_;
  }
  void skip_comment() {
    while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
  }
  void skip_blank_inline() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }
  void skip_separators() {
    for (;;) {
      char c = peek();
      if (c == '#') {
        skip_comment();
      } else if (c != '\0' && (std::isspace(static_cast<unsigned char>(c)) || c == ';')) {
        advance();
      } else {
        return;
      }
    }
  }

  Block block(bool nested) {
    Block out;
    const std::size_t open_line = line_;
    for (;;) {
      skip_separators();
      char c = peek();
      if (c == '\0') {
        if (nested) fail(open_line, "block is not closed");
        return out;
      }
      if (c == '}') {
        if (!nested) return out;
        advance();
        return out;
      }
      Entry e;
      e.line = line_;
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      if (pos_ == start) fail(line_, std::string("unexpected character '") + c + "'");
      e.key = std::string(s_.substr(start, pos_ - start));
      skip_blank_inline();
      if (peek() == '{') {
        advance();
        e.block = std::make_shared<Block>(block(true));
      } else if (peek() == '=') {
        advance();
        start = pos_;
        while (pos_ < s_.size() && s_[pos_] != '\n' && s_[pos_] != ';' && s_[pos_] != '}' && s_[pos_] != '#') ++pos_;
        e.value = trim(s_.substr(start, pos_ - start));
        if (e.value.empty()) fail(e.line, "empty value for '" + e.key + "'");
      } else {
        fail(line_, "expected '=' or '{' after '" + e.key + "'");
      }
      out.entries.push_back(std::move(e));
    }
  }
};

/// Comma split at parenthesis depth zero.
std::vector<std::string> split_list(const std::string& s, std::size_t line) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || (s[i] == ',' && depth == 0)) {
      out.push_back(trim(std::string_view(s).substr(start, i - start)));
      if (out.back().empty()) fail(line, "empty list item");
      start = i + 1;
    } else if (s[i] == '(') {
      ++depth;
    } else if (s[i] == ')') {
      if (--depth < 0) fail(line, "unbalanced ')'");
    }
  }
  if (depth != 0) fail(line, "unbalanced '('");
  return out;
}

template <class T>
T parse_number(const Entry& e) {
  T v{};
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  auto [p, ec] = std::from_chars(b, end, v);
  if (ec != std::errc() || p != end) fail(e.line, "'" + e.key + "' expects a number, got '" + e.value + "'");
  return v;
}

double parse_seconds(const Entry& e) {
  try {
    std::size_t used = 0;
    double v = std::stod(e.value, &used);
    if (used != e.value.size() || !(v > 0)) throw std::invalid_argument("");
    return v;
  } catch (const std::logic_error&) {
    fail(e.line, "'deadline' expects a positive number of seconds");
  }
}

Polynomial poly(const std::string& s, const Ring& r, std::size_t line) {
  try {
    return parse_polynomial(s, r);
  } catch (const InputError& err) {
    fail(line, std::string(err.what()) + " in '" + s + "'");
  }
}

std::vector<Polynomial> poly_list(const Entry& e, const Ring& r) {
  std::vector<Polynomial> out;
  for (const auto& s : split_list(e.value, e.line)) out.push_back(poly(s, r, e.line));
  return out;
}

const Block& need_block(const Entry& e) {
  if (!e.block) fail(e.line, "'" + e.key + "' must be a block");
  return *e.block;
}
void need_value(const Entry& e) {
  if (e.block) fail(e.line, "'" + e.key + "' must be a value, not a block");
}

Submodule ideal_entry(const Entry& e, const Ring& r) {
  need_value(e);
  Submodule i = Submodule::ideal(r, poly_list(e, r));
  if (e.key == "ideal") return i;
  if (e.key == "closure") {
    if (!i.is_monomial()) fail(e.line, "'closure' needs a monomial ideal");
    return integral_closure_monomial(i).value;
  }
  fail(e.line, "unknown entry '" + e.key + "', expected 'ideal' or 'closure'");
}

}  // namespace

Problem parse_problem(std::string_view text, std::optional<std::uint32_t> characteristic) {
  Block top = Reader(text).parse();

  std::map<std::string, const Entry*> seen;
  for (const auto& e : top.entries) {
    static const char* const kKnown[] = {"ring", "rank", "generators", "candidates", "factors", "scale", "options"};
    bool known = false;
    for (const char* k : kKnown) known = known || e.key == k;
    if (!known) fail(e.line, "unknown section '" + e.key + "'");
    if (!seen.emplace(e.key, &e).second) fail(e.line, "duplicate section '" + e.key + "'");
  }

  std::vector<std::string> vars{"X", "Y"};
  std::uint32_t p = 0;
  if (auto it = seen.find("ring"); it != seen.end()) {
    for (const auto& e : need_block(*it->second).entries) {
      need_value(e);
      if (e.key == "vars") {
        vars = split_list(e.value, e.line);
        if (vars.size() != 2) fail(e.line, "the base ring has exactly two variables");
      } else if (e.key == "char") {
        p = parse_number<std::uint32_t>(e);
      } else {
        fail(e.line, "unknown ring entry '" + e.key + "'");
      }
    }
  }
  if (characteristic) p = *characteristic;

  Problem out;
  out.ring = RingContext::make(Field(p), vars);
  const Ring& a = out.ring;

  auto gen_it = seen.find("generators");
  if (gen_it == seen.end()) throw InputError("missing 'generators' section");
  std::vector<std::vector<Polynomial>> rows, cols;
  for (const auto& e : need_block(*gen_it->second).entries) {
    need_value(e);
    if (e.key == "row") {
      rows.push_back(poly_list(e, a));
    } else if (e.key == "col") {
      cols.push_back(poly_list(e, a));
    } else {
      fail(e.line, "unknown generator entry '" + e.key + "', expected 'row' or 'col'");
    }
  }
  const std::size_t gen_line = gen_it->second->line;
  if (!rows.empty() && !cols.empty()) fail(gen_line, "mix of 'row' and 'col' entries");
  if (rows.empty() && cols.empty()) fail(gen_line, "no generators");

  std::optional<std::size_t> rank;
  if (auto it = seen.find("rank"); it != seen.end()) {
    need_value(*it->second);
    rank = parse_number<std::size_t>(*it->second);
    if (*rank == 0) fail(it->second->line, "rank must be positive");
  }
  std::vector<PolyVector> columns;
  if (!rows.empty()) {
    if (rank && *rank != rows.size())
      fail(gen_line, "rank is " + std::to_string(*rank) + " but " + std::to_string(rows.size()) + " rows given");
    for (const auto& row : rows)
      if (row.size() != rows.front().size()) fail(gen_line, "rows have different lengths");
    rank = rows.size();
    for (std::size_t j = 0; j < rows.front().size(); ++j) {
      PolyVector c;
      for (const auto& row : rows) c.push_back(row[j]);
      columns.push_back(std::move(c));
    }
  } else {
    if (!rank) rank = cols.front().size();
    for (auto& c : cols) {
      if (c.size() != *rank) fail(gen_line, "a column does not have " + std::to_string(*rank) + " entries");
      columns.push_back(std::move(c));
    }
  }
  out.embedding = ModuleEmbedding(a, *rank, std::move(columns));

  if (auto it = seen.find("candidates"); it != seen.end()) {
    for (const auto& e : need_block(*it->second).entries) {
      need_value(e);
      if (e.key != "col") fail(e.line, "candidates are given as 'col' entries");
      auto c = poly_list(e, a);
      if (c.size() != *rank) fail(e.line, "a candidate does not have " + std::to_string(*rank) + " entries");
      out.candidates.push_back(std::move(c));
    }
  }
  if (auto it = seen.find("factors"); it != seen.end())
    for (const auto& e : need_block(*it->second).entries) out.factors.push_back(ideal_entry(e, a));
  if (auto it = seen.find("scale"); it != seen.end())
    for (const auto& e : need_block(*it->second).entries) out.scales.push_back(ideal_entry(e, a));

  if (auto it = seen.find("options"); it != seen.end()) {
    auto& o = out.options;
    for (const auto& e : need_block(*it->second).entries) {
      need_value(e);
      if (e.key == "lmax") o.lmax = parse_number<unsigned>(e);
      else if (e.key == "window") o.window = parse_number<unsigned>(e);
      else if (e.key == "nmax") o.nmax = parse_number<unsigned>(e);
      else if (e.key == "degree") o.degree = parse_number<unsigned>(e);
      else if (e.key == "deadline") o.deadline_seconds = parse_seconds(e);
      else fail(e.line, "unknown option '" + e.key + "'");
    }
  }
  return out;
}

}  // namespace reescalc
