#include "pirmax/capacity.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace pirmax {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw DomainError("rational overflow");
  }
  return static_cast<std::int64_t>(v);
}

Rational make(i128 num, i128 den) {
  if (den == 0) throw DomainError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num;
  i128 b = den;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(narrow(num), narrow(den));
}

void require_positive(std::uint32_t n, std::uint32_t k) {
  if (n == 0 || k == 0) {
    throw DomainError("N and K must be at least 1 (got N=" + std::to_string(n) +
                      ", K=" + std::to_string(k) + ")");
  }
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const std::int64_t v = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return Rational(v);
    }
    const std::string a = text.substr(0, slash);
    const std::string b = text.substr(slash + 1);
    const std::int64_t num = std::stoll(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const std::int64_t den = std::stoll(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    return Rational(num, den);
  } catch (const std::logic_error&) {
    throw DomainError("not a rational number: '" + text + "'");
  }
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw DomainError("division by zero");
  return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return i128(a.num_) * b.den_ <=> i128(b.num_) * a.den_;
}

std::uint64_t checked_power(std::uint64_t base, std::uint32_t exp) {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  std::uint64_t out = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (base != 0 && out > kLimit / base) {
      throw DomainError(std::to_string(base) + "^" + std::to_string(exp) +
                        " exceeds the representable range");
    }
    out *= base;
  }
  return out;
}

Rational capacity_uldc(std::uint32_t n, std::uint32_t k) {
  require_positive(n, k);
  if (n == 1) return Rational(1, k);
  const std::uint64_t nk = checked_power(n, k);
  return make(i128(nk) * (n - 1), i128(nk) - 1);
}

std::uint64_t min_length(std::uint32_t n, std::uint32_t k) {
  require_positive(n, k);
  return checked_power(n, k);
}

Rational pir_capacity(std::uint32_t n, std::uint32_t k) {
  return capacity_uldc(n, k) / Rational(n);
}

double min_upload_bits(std::uint32_t n, std::uint32_t k) {
  if (n < 2) throw DomainError("upload cost needs N >= 2 databases (got N=" + std::to_string(n) + ")");
  if (k == 0) throw DomainError("K must be at least 1");
  return static_cast<double>(k - 1) * std::log2(static_cast<double>(n));
}

std::pair<Rational, Rational> symbol_and_code_rate(const CodeParams& p) {
  if (p.symbol_bits == 0) throw DomainError("L_x = 0: rates undefined");
  if (p.length == 0) throw DomainError("M = 0: code rate undefined");
  const auto lw = static_cast<std::int64_t>(p.source_bits);
  const auto lx = static_cast<std::int64_t>(p.symbol_bits);
  return {Rational(lw, lx),
          make(i128(p.sources) * lw, i128(static_cast<std::int64_t>(p.length)) * lx)};
}

}  // namespace pirmax
