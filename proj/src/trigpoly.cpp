#include "torusq/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace torusq {

ChernLevel::ChernLevel(int n) : n_(n) {
  if (n == 0) throw std::invalid_argument("Chern level N must be nonzero");
}

TrigPoly::TrigPoly(Coefficients coeffs) : coeffs_(std::move(coeffs)) { prune(); }

TrigPoly TrigPoly::monomial(int m, int n, Complex c) { return TrigPoly(Coefficients{{{m, n}, c}}); }

TrigPoly TrigPoly::constant(Complex c) { return monomial(0, 0, c); }

TrigPoly TrigPoly::cosine(int m, int n) {
  if (m == 0 && n == 0) return constant(1.0);
  return TrigPoly(Coefficients{{{m, n}, 0.5}, {{-m, -n}, 0.5}});
}

TrigPoly TrigPoly::sine(int m, int n) {
  if (m == 0 && n == 0) return {};
  return TrigPoly(Coefficients{{{m, n}, Complex(0.0, -0.5)}, {{-m, -n}, Complex(0.0, 0.5)}});
}

Complex TrigPoly::coeff(FourierMode mode) const {
  auto it = coeffs_.find(mode);
  return it == coeffs_.end() ? Complex(0.0) : it->second;
}

int TrigPoly::degree() const {
  int d = 0;
  for (const auto& [mode, c] : coeffs_) d = std::max({d, std::abs(mode.m), std::abs(mode.n)});
  return d;
}

void TrigPoly::prune() {
  std::erase_if(coeffs_, [](const auto& kv) { return kv.second == Complex(0.0); });
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& other) {
  for (const auto& [mode, c] : other.coeffs_) coeffs_[mode] += c;
  prune();
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& other) {
  for (const auto& [mode, c] : other.coeffs_) coeffs_[mode] -= c;
  prune();
  return *this;
}

TrigPoly& TrigPoly::operator*=(Complex scale) {
  for (auto& [mode, c] : coeffs_) c *= scale;
  prune();
  return *this;
}

TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
TrigPoly operator-(TrigPoly a) { return a *= -1.0; }
TrigPoly operator*(Complex s, TrigPoly a) { return a *= s; }
TrigPoly operator*(TrigPoly a, Complex s) { return a *= s; }

TrigPoly multiply(const TrigPoly& f, const TrigPoly& g) {
  TrigPoly::Coefficients out;
  for (const auto& [a, ca] : f.coefficients())
    for (const auto& [b, cb] : g.coefficients()) out[{a.m + b.m, a.n + b.n}] += ca * cb;
  return TrigPoly(std::move(out));
}

TrigPoly conj(const TrigPoly& f) {
  TrigPoly::Coefficients out;
  for (const auto& [mode, c] : f.coefficients()) out[{-mode.m, -mode.n}] = std::conj(c);
  return TrigPoly(std::move(out));
}

TrigPoly poisson_bracket(const TrigPoly& f, const TrigPoly& g, ChernLevel level) {
  const double scale = -4.0 * kPi * kPi / level.value();
  TrigPoly::Coefficients out;
  for (const auto& [a, ca] : f.coefficients()) {
    for (const auto& [b, cb] : g.coefficients()) {
      const int cross = a.m * b.n - a.n * b.m;
      if (cross == 0) continue;
      out[{a.m + b.m, a.n + b.n}] += (scale * cross) * (ca * cb);
    }
  }
  return TrigPoly(std::move(out));
}

TrigPoly d_dx(const TrigPoly& f) {
  TrigPoly::Coefficients out;
  for (const auto& [mode, c] : f.coefficients()) out[mode] = Complex(0.0, kTwoPi * mode.m) * c;
  return TrigPoly(std::move(out));
}

TrigPoly d_dy(const TrigPoly& f) {
  TrigPoly::Coefficients out;
  for (const auto& [mode, c] : f.coefficients()) out[mode] = Complex(0.0, kTwoPi * mode.n) * c;
  return TrigPoly(std::move(out));
}

Complex evaluate(const TrigPoly& f, double x, double y) {
  Complex sum = 0.0;
  for (const auto& [mode, c] : f.coefficients())
    sum += c * std::polar(1.0, kTwoPi * (mode.m * x + mode.n * y));
  return sum;
}

double reality_defect(const TrigPoly& f) {
  double worst = 0.0;
  for (const auto& [mode, c] : f.coefficients())
    worst = std::max(worst, std::abs(f.coeff({-mode.m, -mode.n}) - std::conj(c)));
  return worst;
}

double max_coeff_diff(const TrigPoly& a, const TrigPoly& b) {
  double worst = 0.0;
  for (const auto& [mode, c] : a.coefficients()) worst = std::max(worst, std::abs(c - b.coeff(mode)));
  for (const auto& [mode, c] : b.coefficients())
    if (!a.coefficients().contains(mode)) worst = std::max(worst, std::abs(c));
  return worst;
}

double max_abs_coeff(const TrigPoly& f) {
  double worst = 0.0;
  for (const auto& [mode, c] : f.coefficients()) worst = std::max(worst, std::abs(c));
  return worst;
}

void write_text(std::ostream& os, const TrigPoly& f) {
  std::ostringstream line;
  line << std::setprecision(17);
  for (const auto& [mode, c] : f.coefficients())
    line << mode.m << ' ' << mode.n << ' ' << c.real() << ' ' << c.imag() << '\n';
  os << line.str();
}

std::string to_text(const TrigPoly& f) {
  std::ostringstream os;
  write_text(os, f);
  return os.str();
}

TrigPoly read_text(std::istream& is) {
  TrigPoly::Coefficients coeffs;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    int m = 0, n = 0;
    double re = 0.0, im = 0.0;
    std::string extra;
    if (!(fields >> m >> n >> re >> im) || (fields >> extra))
      throw std::invalid_argument("trig poly line " + std::to_string(lineno) + ": expected 'm n re im'");
    if (!coeffs.emplace(FourierMode{m, n}, Complex(re, im)).second)
      throw std::invalid_argument("trig poly line " + std::to_string(lineno) + ": duplicate mode (" +
                                  std::to_string(m) + "," + std::to_string(n) + ")");
  }
  return TrigPoly(std::move(coeffs));
}

TrigPoly from_text(const std::string& text) {
  std::istringstream is(text);
  return read_text(is);
}

std::string describe(const TrigPoly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  os << std::setprecision(6);
  bool first = true;
  for (const auto& [mode, c] : f.coefficients()) {
    if (!first) os << " + ";
    first = false;
    if (c.imag() == 0.0)
      os << c.real();
    else
      os << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    os << "*e(" << mode.m << ',' << mode.n << ')';
  }
  return os.str();
}

}  // namespace torusq
