#include "evo/rational.hpp"

#include <cctype>

namespace evo {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::optional<mpz_class> exact_integer_root(const mpz_class& z, int n) {
  if (z < 0) {
    if (n % 2 == 0) return std::nullopt;
    auto r = exact_integer_root(mpz_class(-z), n);
    if (!r) return std::nullopt;
    return mpz_class(-*r);
  }
  mpz_class root;
  if (mpz_root(root.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(n)) == 0) {
    return std::nullopt;
  }
  return root;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) return std::nullopt;

  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) return std::nullopt;
  Rational q(negative ? mpz_class(-n) : n, d);
  q.canonicalize();
  return q;
}

std::optional<Rational> exact_root(const Rational& q, int n) {
  if (n == 1) return q;
  auto num = exact_integer_root(q.get_num(), n);
  if (!num) return std::nullopt;
  auto den = exact_integer_root(q.get_den(), n);
  if (!den) return std::nullopt;
  Rational r(*num, *den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace evo
