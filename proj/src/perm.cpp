#include "geoforge/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace geoforge {

Perm::Perm(uint32_t degree) : img_(degree) {
  std::iota(img_.begin(), img_.end(), 0u);
}

Perm::Perm(std::vector<Point> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (Point v : img_) {
    if (v >= img_.size() || seen[v])
      throw std::invalid_argument("image table is not a bijection");
    seen[v] = true;
  }
}

Perm Perm::from_cycles(const std::string& text, uint32_t degree) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), 0u);

  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw std::invalid_argument("expected '(' in cycle string: " + text);
    ++i;
    std::vector<Point> cyc;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) throw std::invalid_argument("expected point in cycle string: " + text);
      unsigned long v = std::stoul(text.substr(i, j - i));
      if (v < 1 || v > degree)
        throw std::invalid_argument("cycle point out of range: " + text);
      cyc.push_back(static_cast<Point>(v - 1));
      i = j;
      skip_ws();
      if (i < text.size() && text[i] == ',') { ++i; skip_ws(); }
    }
    if (i >= text.size()) throw std::invalid_argument("unterminated cycle: " + text);
    ++i;  // ')'
    for (size_t k = 0; k + 1 < cyc.size(); ++k) {
      if (img[cyc[k]] != cyc[k])
        throw std::invalid_argument("cycles are not disjoint: " + text);
      img[cyc[k]] = cyc[k + 1];
    }
    if (cyc.size() >= 2) {
      if (img[cyc.back()] != cyc.back())
        throw std::invalid_argument("cycles are not disjoint: " + text);
      img[cyc.back()] = cyc.front();
    }
    skip_ws();
  }
  return Perm(std::move(img));
}

bool Perm::is_identity() const {
  for (Point p = 0; p < img_.size(); ++p)
    if (img_[p] != p) return false;
  return true;
}

Perm Perm::inverse() const {
  std::vector<Point> inv(img_.size());
  for (Point p = 0; p < img_.size(); ++p) inv[img_[p]] = p;
  Perm r;
  r.img_ = std::move(inv);
  return r;
}

Point Perm::smallest_moved() const {
  for (Point p = 0; p < img_.size(); ++p)
    if (img_[p] != p) return p;
  return degree();
}

bool Perm::even() const {
  std::vector<bool> seen(img_.size(), false);
  bool even = true;
  for (Point p = 0; p < img_.size(); ++p) {
    if (seen[p]) continue;
    uint32_t len = 0;
    for (Point q = p; !seen[q]; q = img_[q]) { seen[q] = true; ++len; }
    if (len % 2 == 0) even = !even;
  }
  return even;
}

uint64_t Perm::element_order() const {
  std::vector<bool> seen(img_.size(), false);
  uint64_t ord = 1;
  for (Point p = 0; p < img_.size(); ++p) {
    if (seen[p]) continue;
    uint64_t len = 0;
    for (Point q = p; !seen[q]; q = img_[q]) { seen[q] = true; ++len; }
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::string Perm::cycle_string() const {
  std::vector<bool> seen(img_.size(), false);
  std::ostringstream out;
  bool any = false;
  for (Point p = 0; p < img_.size(); ++p) {
    if (seen[p] || img_[p] == p) { seen[p] = true; continue; }
    out << '(' << (p + 1);
    seen[p] = true;
    for (Point q = img_[p]; q != p; q = img_[q]) {
      out << ',' << (q + 1);
      seen[q] = true;
    }
    out << ')';
    any = true;
  }
  if (!any) return "()";
  return out.str();
}

Perm compose(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree())
    throw std::invalid_argument("compose: degree mismatch");
  std::vector<Point> img(p.degree());
  for (Point x = 0; x < p.degree(); ++x) img[x] = q[p[x]];
  return Perm(std::move(img));
}

Perm conjugate(const Perm& g, const Perm& w) {
  return compose(compose(w.inverse(), g), w);
}

}  // namespace geoforge
