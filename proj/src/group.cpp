#include "qsm/group.hpp"

#include <algorithm>
#include <numeric>

#include "qsm/errors.hpp"

namespace qsm {

GroupElement::GroupElement(std::vector<std::size_t> perm, bool transpose)
    : perm_(std::move(perm)), transpose_(transpose) {
  std::vector<bool> seen(perm_.size(), false);
  for (auto p : perm_) {
    if (p >= perm_.size() || seen[p]) throw DomainError("not a permutation");
    seen[p] = true;
  }
}

GroupElement GroupElement::identity(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  return GroupElement(std::move(p), false);
}

std::vector<GroupElement> GroupElement::all(std::size_t n) {
  std::vector<GroupElement> out;
  for (bool t : {false, true}) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
      out.emplace_back(p, t);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return out;
}

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
  if (g.n() != h.n()) throw DimensionError("composing elements of different degree");
  std::vector<std::size_t> p(g.n());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = g.perm_[h.perm_[i]];
  return GroupElement(std::move(p), g.transpose_ != h.transpose_);
}

GroupElement GroupElement::inverse() const {
  std::vector<std::size_t> p(n());
  for (std::size_t i = 0; i < p.size(); ++i) p[perm_[i]] = i;
  return GroupElement(std::move(p), transpose_);
}

std::string cycleString(const std::vector<std::size_t>& perm) {
  std::string out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s] || perm[s] == s) continue;
    out += "(";
    std::size_t x = s;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      out += (first ? "" : " ") + std::to_string(x + 1);
      first = false;
      x = perm[x];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

std::string GroupElement::toString() const { return cycleString(perm_) + (transpose_ ? " tau" : ""); }

} // namespace qsm
