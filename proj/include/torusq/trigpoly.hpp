#pragma once

#include <compare>
#include <complex>
#include <iosfwd>
#include <map>
#include <string>

namespace torusq {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Frequency pair of the monomial e^{2πi(mx+ny)}.
struct FourierMode {
  int m = 0;
  int n = 0;

  auto operator<=>(const FourierMode&) const = default;
};

/// Chern class of the prequantum line bundle; fixes ω = N dx∧dy.
class ChernLevel {
 public:
  explicit ChernLevel(int n);

  int value() const { return n_; }
  /// Number of Zak components, |N|.
  int components() const { return n_ < 0 ? -n_ : n_; }

  bool operator==(const ChernLevel&) const = default;

 private:
  int n_;
};

/**
 * Trigonometric polynomial on the torus R²/Z², stored as a sparse map from
 * Fourier mode to complex coefficient. Exact zeros are never stored.
 */
class TrigPoly {
 public:
  using Coefficients = std::map<FourierMode, Complex>;

  TrigPoly() = default;
  explicit TrigPoly(Coefficients coeffs);

  static TrigPoly monomial(int m, int n, Complex c = 1.0);
  static TrigPoly constant(Complex c);
  /// cos(2π(mx+ny)) and sin(2π(mx+ny)).
  static TrigPoly cosine(int m, int n);
  static TrigPoly sine(int m, int n);

  const Coefficients& coefficients() const { return coeffs_; }
  Complex coeff(FourierMode mode) const;
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }

  /// max(|m|, |n|) over stored modes; 0 for the zero polynomial.
  int degree() const;

  TrigPoly& operator+=(const TrigPoly& other);
  TrigPoly& operator-=(const TrigPoly& other);
  TrigPoly& operator*=(Complex scale);

  bool operator==(const TrigPoly&) const = default;

 private:
  void prune();

  Coefficients coeffs_;
};

TrigPoly operator+(TrigPoly a, const TrigPoly& b);
TrigPoly operator-(TrigPoly a, const TrigPoly& b);
TrigPoly operator-(TrigPoly a);
TrigPoly operator*(Complex s, TrigPoly a);
TrigPoly operator*(TrigPoly a, Complex s);

/// Pointwise product.
TrigPoly multiply(const TrigPoly& f, const TrigPoly& g);
inline TrigPoly operator*(const TrigPoly& f, const TrigPoly& g) { return multiply(f, g); }

/// Complex conjugate function: coefficient (m,n) -> conj(coeff(-m,-n)).
TrigPoly conj(const TrigPoly& f);

/**
 * Poisson bracket for ω = N dx∧dy:
 *   {f,g} = (1/N)(f_x g_y − f_y g_x),
 * so that {e_{m,n}, e_{p,q}} = −(4π²/N)(mq − np) e_{m+p,n+q}.
 */
TrigPoly poisson_bracket(const TrigPoly& f, const TrigPoly& g, ChernLevel level);

/// Partial derivatives, exact on modes.
TrigPoly d_dx(const TrigPoly& f);
TrigPoly d_dy(const TrigPoly& f);

Complex evaluate(const TrigPoly& f, double x, double y);

/// max |coeff(-m,-n) - conj(coeff(m,n))|; zero iff f is real-valued.
double reality_defect(const TrigPoly& f);
inline bool is_real(const TrigPoly& f, double tol = 0.0) { return reality_defect(f) <= tol; }

/// Largest absolute coefficient difference between a and b.
double max_coeff_diff(const TrigPoly& a, const TrigPoly& b);
double max_abs_coeff(const TrigPoly& f);

// Text form: one "m n re im" line per mode.
void write_text(std::ostream& os, const TrigPoly& f);
std::string to_text(const TrigPoly& f);
/// Throws std::invalid_argument on malformed lines or duplicate modes.
TrigPoly read_text(std::istream& is);
TrigPoly from_text(const std::string& text);

/// Compact one-line label, e.g. "1*e(1,0) + 0.5*e(0,-2)".
std::string describe(const TrigPoly& f);

}  // namespace torusq
