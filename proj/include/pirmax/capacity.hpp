#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace pirmax {

/// Raised when a closed-form quantity is requested outside its domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact rational with a positive denominator, always in lowest terms.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  /// Parses "p/q" or an integer.
  static Rational parse(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& b) { return *this = *this + b; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Parameters of a locally decodable code (and of the matching retrieval scheme).
struct CodeParams {
  std::uint32_t locality = 0;     ///< N: decoding-set size, also the number of databases
  std::uint32_t sources = 0;      ///< K: number of source symbols / messages
  std::uint64_t length = 0;       ///< M: number of coded symbols
  std::uint64_t source_bits = 0;  ///< L_w
  std::uint64_t symbol_bits = 0;  ///< L_x

  friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

/// Checked N^K; throws DomainError on overflow past 2^62.
std::uint64_t checked_power(std::uint64_t base, std::uint32_t exp);

/// Maximum symbol rate of a universal LDC: N^K(N-1)/(N^K-1), or 1/K when N = 1.
Rational capacity_uldc(std::uint32_t n, std::uint32_t k);

/// Minimum length of a capacity-achieving universal LDC: N^K.
std::uint64_t min_length(std::uint32_t n, std::uint32_t k);

/// Capacity of PIR_max (equivalently RIR_max): (1 + 1/N + ... + 1/N^{K-1})^{-1}.
Rational pir_capacity(std::uint32_t n, std::uint32_t k);

/// Minimum upload per database of a capacity-achieving PIR_max scheme, (K-1) log2 N bits.
double min_upload_bits(std::uint32_t n, std::uint32_t k);

/// (symbol rate L_w/L_x, code rate K L_w / (M L_x)).
std::pair<Rational, Rational> symbol_and_code_rate(const CodeParams& p);

}  // namespace pirmax
