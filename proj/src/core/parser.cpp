#include "parser.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <regex>
#include <string>

#include "error.hpp"

namespace milnor {
namespace {

constexpr int kMaxExponent = 100000;

class Parser {
 public:
  Parser(std::string_view text, int n) : text_(text), n_(n) {}

  MixedPolynomial parse() {
    std::vector<MixedMonomial> terms;
    skip_ws();
    if (at_end()) fail("empty expression");
    double sign = 1.0;
    if (peek() == '-' || peek() == '+') {
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
    }
    terms.push_back(term(sign));
    for (;;) {
      skip_ws();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail(std::string("unexpected '") + c + "'");
      ++pos_;
      terms.push_back(term(c == '-' ? -1.0 : 1.0));
    }
    return MixedPolynomial::from_terms(n_, terms);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  MixedMonomial term(double sign) {
    MixedMonomial m{Complex(sign, 0.0), std::vector<int>(n_, 0), std::vector<int>(n_, 0)};
    factor(m);
    for (;;) {
      skip_ws();
      if (at_end() || peek() != '*') break;
      ++pos_;
      factor(m);
    }
    return m;
  }

  void factor(MixedMonomial& m) {
    skip_ws();
    if (at_end()) fail("expected a factor");
    const char c = peek();
    if (c == 'z' || c == '~') {
      variable(m);
    } else if (c == '(') {
      ++pos_;
      m.coeff *= complex_literal();
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      m.coeff *= real_literal();
    } else {
      fail(std::string("unexpected '") + c + "'");
    }
  }

  void variable(MixedMonomial& m) {
    bool conj = false;
    if (peek() == '~') {
      conj = true;
      ++pos_;
      if (at_end() || peek() != 'z') fail("expected 'z' after '~'");
    }
    ++pos_;  // 'z'
    const std::size_t index_pos = pos_;
    const long index = integer("variable index");
    if (index < 1 || index > n_) {
      pos_ = index_pos;
      fail("variable index " + std::to_string(index) + " out of range [1, " + std::to_string(n_) + "]");
    }
    long exponent = 1;
    skip_ws();
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_ws();
      const std::size_t exp_pos = pos_;
      exponent = integer("exponent");
      if (exponent < 1 || exponent > kMaxExponent) {
        pos_ = exp_pos;
        fail("exponent must be a positive integer <= " + std::to_string(kMaxExponent));
      }
    }
    auto& slot = (conj ? m.mu : m.nu)[index - 1];
    if (slot + exponent > kMaxExponent) fail("exponent overflow");
    slot += static_cast<int>(exponent);
  }

  long integer(const char* what) {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    if (pos_ - start > 9) {
      pos_ = start;
      fail(std::string(what) + " too large");
    }
    return std::stol(std::string(text_.substr(start, pos_ - start)));
  }

  double real_literal() {
    skip_ws();
    const std::size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) ++pos_;
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto res = std::from_chars(first, last, value);
    if (start == pos_ || res.ec != std::errc() || res.ptr != last) {
      pos_ = start;
      fail("malformed number");
    }
    return value;
  }

  double signed_real() {
    skip_ws();
    double sign = 1.0;
    if (!at_end() && (peek() == '-' || peek() == '+')) {
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
    }
    return sign * real_literal();
  }

  Complex complex_literal() {
    const double re = signed_real();
    skip_ws();
    if (at_end() || (peek() != '+' && peek() != '-')) fail("expected '+' or '-' in complex literal");
    const double sign = peek() == '-' ? -1.0 : 1.0;
    ++pos_;
    const double im = real_literal();
    skip_ws();
    if (at_end() || peek() != 'i') fail("expected 'i' in complex literal");
    ++pos_;
    skip_ws();
    if (at_end() || peek() != ')') fail("expected ')'");
    ++pos_;
    return Complex(re, sign * im);
  }

  std::string_view text_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace

MixedPolynomial parse_polynomial(std::string_view text, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "variable count must be >= 1");
  return Parser(text, n).parse();
}

MixedPolynomial parse_polynomial_file(std::string_view content) {
  // Comment lines are blanked so that error offsets still index the file.
  std::string body(content);
  std::optional<int> n;
  static const std::regex header(R"(^#\s*n\s*=\s*(\d+)\s*$)");
  std::size_t line_start = 0;
  while (line_start <= body.size()) {
    std::size_t line_end = body.find('\n', line_start);
    if (line_end == std::string::npos) line_end = body.size();
    std::size_t first = line_start;
    while (first < line_end && (body[first] == ' ' || body[first] == '\t')) ++first;
    if (first < line_end && body[first] == '#') {
      std::string line = body.substr(first, line_end - first);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::smatch m;
      if (!n && std::regex_match(line, m, header)) n = std::stoi(m[1].str());
      for (std::size_t i = line_start; i < line_end; ++i) body[i] = ' ';
    }
    line_start = line_end + 1;
  }
  if (!n) throw ParseError("missing '# n = <count>' header", 0);
  if (*n < 1) throw ParseError("variable count must be >= 1", 0);
  return parse_polynomial(body, *n);
}

}  // namespace milnor
