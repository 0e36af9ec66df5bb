#include "stern/poly.hpp"

namespace stern {

PolyZ PolyZ::constant(const Integer& v) {
  PolyZ p;
  if (v != 0) p.c = {v};
  return p;
}

PolyZ PolyZ::monomial(const Integer& v, size_t k) {
  PolyZ p;
  if (v != 0) {
    p.c.assign(k + 1, Integer(0));
    p.c[k] = v;
  }
  return p;
}

PolyZ PolyZ::from_longs(const std::vector<long>& v) {
  PolyZ p;
  p.c.reserve(v.size());
  for (long x : v) p.c.emplace_back(x);
  p.normalize();
  return p;
}

void PolyZ::normalize() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

PolyZ PolyZ::operator+(const PolyZ& o) const {
  PolyZ r;
  r.c.resize(std::max(c.size(), o.c.size()), Integer(0));
  for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
  for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
  r.normalize();
  return r;
}

PolyZ PolyZ::operator-(const PolyZ& o) const {
  PolyZ r;
  r.c.resize(std::max(c.size(), o.c.size()), Integer(0));
  for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
  for (size_t i = 0; i < o.c.size(); ++i) r.c[i] -= o.c[i];
  r.normalize();
  return r;
}

PolyZ PolyZ::operator*(const PolyZ& o) const {
  if (is_zero() || o.is_zero()) return {};
  PolyZ r;
  r.c.assign(c.size() + o.c.size() - 1, Integer(0));
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
  r.normalize();
  return r;
}

PolyZ PolyZ::scaled(const Integer& s) const {
  if (s == 0) return {};
  PolyZ r = *this;
  for (auto& v : r.c) v *= s;
  return r;
}

PolyZ PolyZ::shifted(size_t k) const {
  if (is_zero() || k == 0) {
    PolyZ r = *this;
    if (k && !r.is_zero()) r.c.insert(r.c.begin(), k, Integer(0));
    return r;
  }
  PolyZ r;
  r.c.assign(k, Integer(0));
  r.c.insert(r.c.end(), c.begin(), c.end());
  return r;
}

PolyZ PolyZ::power_of_binomial_1_minus_x(size_t n) {
  PolyZ r;
  r.c.resize(n + 1);
  for (size_t j = 0; j <= n; ++j) {
    r.c[j] = binomial(n, (long)j);
    if (j % 2) r.c[j] = -r.c[j];
  }
  r.normalize();
  return r;
}

Integer PolyZ::eval(const Integer& x) const {
  Integer v = 0;
  for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

Rational PolyZ::eval(const Rational& x) const {
  Rational v = 0;
  for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

std::string PolyZ::str_ascending(const std::string& sym) const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    bool neg = c[i] < 0;
    Integer mag = abs(c[i]);
    std::string term;
    if (i == 0) {
      term = mag.get_str();
    } else {
      if (mag != 1) term = mag.get_str();
      term += sym;
      if (i > 1) term += "^" + std::to_string(i);
    }
    if (first) {
      out = (neg ? "-" : "") + term;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + term;
    }
  }
  return out;
}

std::string PolyZ::str_descending(const std::string& sym, const std::string& mod_note) const {
  std::string out;
  if (is_zero()) {
    out = "0";
  } else {
    bool first = true;
    for (size_t i = c.size(); i-- > 0;) {
      if (c[i] == 0) continue;
      std::string term = c[i].get_str();
      if (i >= 1) {
        term += "*" + sym;
        if (i > 1) term += "^" + std::to_string(i);
      }
      if (!first) out += " + ";
      out += term;
      first = false;
    }
    if (out.empty()) out = "0";
  }
  if (!mod_note.empty()) out += " (mod " + mod_note + ")";
  return out;
}

}  // namespace stern
