#include "qpsh/field_language.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <vector>

#include "qpsh/errors.hpp"

namespace qpsh {

namespace {

struct Piece {
  Expression expr;
  std::optional<Polynomial> poly;
};

Polynomial exact(double v) { return Polynomial(GaussRational(exact_rational(v))); }

class Parser {
 public:
  Parser(std::string_view text, int n) : s_(text), n_(n), dim_(4 * n) {}

  Piece parse() {
    skip();
    bool negate = false;
    if (peek() == '-') {
      ++pos_;
      negate = true;
    }
    Piece acc = term();
    if (negate) acc = scale(acc, -1.0);
    for (;;) {
      skip();
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Piece t = term();
      acc = add(acc, c == '+' ? t : scale(t, -1.0));
    }
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return acc;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument("field: " + what + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool starts_number() const {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+';
  }
  double number() {
    skip();
    std::size_t p = pos_;
    if (p < s_.size() && s_[p] == '+') ++p;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s_.data() + p, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }
  std::vector<double> numbers(char sep, char close) {
    std::vector<double> v;
    skip();
    if (peek() == close) return v;
    v.push_back(number());
    for (;;) {
      skip();
      if (peek() != sep) break;
      ++pos_;
      v.push_back(number());
    }
    return v;
  }
  std::string identifier() {
    skip();
    const std::size_t b = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (b == pos_) fail("expected a name");
    return std::string(s_.substr(b, pos_ - b));
  }

  static Piece scale(const Piece& p, double c) {
    Piece r{c * p.expr, std::nullopt};
    if (p.poly) r.poly = *p.poly * GaussRational(exact_rational(c));
    return r;
  }
  static Piece add(const Piece& a, const Piece& b) {
    Piece r{a.expr + b.expr, std::nullopt};
    if (a.poly && b.poly) r.poly = *a.poly + *b.poly;
    return r;
  }

  Piece term() {
    skip();
    if (starts_number() && !std::isalpha(static_cast<unsigned char>(peek()))) {
      const double c = number();
      skip();
      if (peek() != '*') fail("expected '*' after a coefficient");
      ++pos_;
      return scale(atom(), c);
    }
    return atom();
  }

  Piece atom() {
    const std::string name = identifier();
    if (name == "norm2") {
      Polynomial p;
      for (int c = 0; c < 2 * n_; ++c) p += Polynomial::z(c) * Polynomial::zbar(c);
      return {Expression::norm2(), p};
    }
    expect('(');
    Piece out;
    if (name == "sqrt_norm2_eps" || name == "logcosh_norm_eps") {
      const double eps = number();
      if (!(eps > 0.0)) fail("eps must be positive");
      out.expr = name == "sqrt_norm2_eps" ? (Expression::norm2() + eps * eps).sqrt() : Expression::log_cosh_radius(eps);
    } else if (name == "quadratic") {
      const std::vector<double> m = numbers(',', ')');
      if (static_cast<int>(m.size()) != dim_ * dim_) fail("quadratic expects (4n)^2 entries");
      Eigen::MatrixXd mm(dim_, dim_);
      Polynomial p;
      for (int u = 0; u < dim_; ++u)
        for (int v = 0; v < dim_; ++v) {
          const double e = m[static_cast<std::size_t>(u * dim_ + v)];
          mm(u, v) = e;
          if (e != 0.0) p += exact(e) * Polynomial::real_variable(u) * Polynomial::real_variable(v);
        }
      out = {Expression::quadratic(mm), p};
    } else if (name == "affine") {
      const std::vector<double> c = numbers(',', ')');
      if (static_cast<int>(c.size()) != dim_ + 1) fail("affine expects 4n + 1 numbers");
      Eigen::VectorXd cv(dim_);
      Polynomial p = exact(c[0]);
      for (int v = 0; v < dim_; ++v) {
        cv(v) = c[static_cast<std::size_t>(v + 1)];
        if (cv(v) != 0.0) p += exact(cv(v)) * Polynomial::real_variable(v);
      }
      out = {Expression::affine(c[0], cv), p};
    } else if (name == "poly") {
      Polynomial p;
      for (;;) {
        const double coef = number();
        expect('@');
        const std::vector<double> e = numbers(',', ')');
        if (static_cast<int>(e.size()) != dim_) fail("each monomial needs 4n exponents");
        RealExponents ex{};
        for (int v = 0; v < dim_; ++v) {
          const double ev = e[static_cast<std::size_t>(v)];
          if (ev < 0 || ev > 15 || ev != static_cast<int>(ev)) fail("exponents must be integers in [0, 15]");
          ex[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(ev);
        }
        p += Polynomial::real_monomial(ex, GaussRational(exact_rational(coef)));
        skip();
        if (peek() != ';') break;
        ++pos_;
      }
      out = {Expression::polynomial(p), p};
    } else if (name == "x") {
      const double v = number();
      if (v < 0 || v >= dim_ || v != static_cast<int>(v)) fail("coordinate index out of range");
      out = {Expression::variable(static_cast<int>(v)), Polynomial::real_variable(static_cast<int>(v))};
    } else {
      fail("unknown field '" + name + "'");
    }
    expect(')');
    return out;
  }

  std::string_view s_;
  int n_;
  int dim_;
  std::size_t pos_ = 0;
};

}  // namespace

ScalarField parse_field(std::string_view text, int n, Backend backend) {
  if (n < 1 || n > 4) throw InvalidArgument("field: n must be in [1, 4]");
  const Piece p = Parser(text, n).parse();
  switch (backend) {
    case Backend::autodiff: return ScalarField(n, p.expr);
    case Backend::polynomial:
      if (!p.poly) throw UnsupportedBackend("field: expression is not polynomial");
      return ScalarField(n, *p.poly);
    case Backend::trig: break;
  }
  throw UnsupportedBackend("field: the text form has no trig backend");
}

}  // namespace qpsh
