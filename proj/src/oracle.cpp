#include "qsm/box.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "qsm/errors.hpp"
#include "qsm/qmet.hpp"
#include "qsm/symmetry.hpp"

namespace qsm::box {

namespace {

void requireSameLength(const BoxPoint& u, const BoxPoint& v) {
  if (u.size() != v.size())
    throw DimensionError("points of length " + std::to_string(u.size()) + " and " + std::to_string(v.size()));
}

// Odometer order: the last coordinate is most significant.
bool odometerLess(const BoxPoint& a, const BoxPoint& b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

bool isPermutation(const std::vector<std::size_t>& pi) {
  std::vector<bool> seen(pi.size(), false);
  for (auto v : pi) {
    if (v >= pi.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

BoxPoint permute(const BoxPoint& x, const std::vector<std::size_t>& pi) {
  BoxPoint y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[pi[i]] = x[i];
  return y;
}

} // namespace

BoxPoint cmax(const BoxPoint& u, const BoxPoint& v) {
  requireSameLength(u, v);
  BoxPoint w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = std::max(u[i], v[i]);
  return w;
}

BoxPoint add(const BoxPoint& u, const BoxPoint& v) {
  requireSameLength(u, v);
  BoxPoint w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] + v[i];
  return w;
}

bool leq(const BoxPoint& u, const BoxPoint& v) {
  requireSameLength(u, v);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] > v[i]) return false;
  return true;
}

BoxPoint ones(std::size_t dim, long k) { return BoxPoint(dim, k); }

std::string toString(const BoxPoint& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ')';
  return os.str();
}

IntVector toInt(const BoxPoint& p) {
  IntVector out;
  out.reserve(p.size());
  for (long v : p) out.emplace_back(v);
  return out;
}

std::vector<BoxPoint> members(const Membership& member, std::size_t dim, long bound, std::uint64_t budget,
                              unsigned jobs) {
  if (bound < 0) throw DomainError("negative box bound");
  if (dim == 0) throw DomainError("box of dimension 0");
  // Total point count, saturating at the budget.
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    total *= static_cast<std::uint64_t>(bound + 1);
    if (total > budget)
      throw BudgetExceeded("box [0," + std::to_string(bound) + "]^" + std::to_string(dim) + " exceeds budget " +
                           std::to_string(budget));
  }
  // Shard by the leading coordinate; each shard walks the remaining ones.
  const long width = bound + 1;
  std::vector<std::vector<BoxPoint>> shards(static_cast<std::size_t>(width));
  auto work = [&](long lead) {
    BoxPoint p(dim, 0);
    p[0] = lead;
    auto& out = shards[static_cast<std::size_t>(lead)];
    while (true) {
      if (member(p)) out.push_back(p);
      std::size_t i = 1;
      while (i < dim && p[i] == bound) p[i++] = 0;
      if (i == dim) break;
      ++p[i];
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(width)));
  if (workers == 1) {
    for (long lead = 0; lead < width; ++lead) work(lead);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (long lead = w; lead < width; lead += workers) work(lead);
      });
    for (auto& t : pool) t.join();
  }
  std::vector<BoxPoint> out;
  for (auto& s : shards) out.insert(out.end(), s.begin(), s.end());
  std::sort(out.begin(), out.end(), odometerLess);
  return out;
}

Membership coneMembership(const HDescription& h) {
  return [h](const BoxPoint& p) {
    if (p.size() != h.dim()) throw DimensionError("point length differs from cone dimension");
    return isMember(h, toInt(p));
  };
}

Membership qmetMembership(std::size_t n) {
  const qmet::PairIndex idx(n);
  std::vector<std::array<std::size_t, 3>> triangles;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (i != j && j != k && i != k) triangles.push_back({idx.index(i, j), idx.index(j, k), idx.index(i, k)});
  const std::size_t d = idx.size();
  return [triangles, d](const BoxPoint& p) {
    if (p.size() != d) throw DimensionError("point length differs from n(n-1)");
    for (long v : p)
      if (v < 0) return false;
    for (const auto& t : triangles)
      if (p[t[0]] + p[t[1]] < p[t[2]]) return false;
    return true;
  };
}

Membership orthantMembership() {
  return [](const BoxPoint& p) {
    return std::all_of(p.begin(), p.end(), [](long v) { return v >= 0; });
  };
}

CoverReport coversAmong(const std::vector<BoxPoint>& pool, const BoxPoint& x, long bound) {
  CoverReport rep;
  rep.point = x;
  rep.bound = bound;
  std::vector<BoxPoint> below, above;
  for (const auto& y : pool) {
    if (y == x) continue;
    if (leq(y, x)) below.push_back(y);
    else if (leq(x, y)) above.push_back(y);
  }
  for (const auto& y : below) {
    bool between = std::any_of(below.begin(), below.end(), [&](const BoxPoint& z) { return z != y && leq(y, z); });
    if (!between) rep.covers.push_back(y);
  }
  for (const auto& y : above) {
    bool between = std::any_of(above.begin(), above.end(), [&](const BoxPoint& z) { return z != y && leq(z, y); });
    if (!between) rep.coveredBy.push_back(y);
  }
  return rep;
}

CoverReport coversInBox(const Membership& member, std::size_t dim, const BoxPoint& x, long bound,
                        std::uint64_t budget) {
  if (x.size() != dim) throw DimensionError("point length differs from box dimension");
  if (std::any_of(x.begin(), x.end(), [&](long v) { return v < 0 || v > bound; }) || !member(x))
    throw NotAMemberError(toString(x) + " is not a member inside the box [0," + std::to_string(bound) + "]");
  return coversAmong(members(member, dim, bound, budget), x, bound);
}

std::vector<BoxPoint> minimalAmong(const std::vector<BoxPoint>& pool) {
  std::vector<BoxPoint> nonzero;
  for (const auto& p : pool)
    if (std::any_of(p.begin(), p.end(), [](long v) { return v != 0; })) nonzero.push_back(p);
  std::vector<BoxPoint> out;
  for (const auto& y : nonzero) {
    bool dominated = std::any_of(nonzero.begin(), nonzero.end(), [&](const BoxPoint& z) { return z != y && leq(z, y); });
    if (!dominated) out.push_back(y);
  }
  return out;
}

std::vector<BoxPoint> dicksonMinimal(const Membership& member, std::size_t dim, long bound, std::uint64_t budget) {
  return minimalAmong(members(member, dim, bound, budget));
}

BoxOracle::BoxOracle(std::size_t dim, long bound, std::map<BoxPoint, BoxPoint> mapping, std::string name)
    : dim_(dim), bound_(bound), mapping_(std::move(mapping)), name_(std::move(name)) {
  if (dim_ == 0) throw DomainError("oracle of dimension 0");
  if (bound_ < 0) throw DomainError("negative box bound");
  for (const auto& [in, out] : mapping_) {
    for (const auto* p : {&in, &out}) {
      if (p->size() != dim_) throw DimensionError("oracle point " + toString(*p) + " has the wrong length");
      if (std::any_of(p->begin(), p->end(), [&](long v) { return v < 0 || v > bound_; }))
        throw DomainError("oracle point " + toString(*p) + " lies outside the box");
    }
    domain_.push_back(in);
  }
  std::sort(domain_.begin(), domain_.end(), odometerLess);
}

const BoxPoint& BoxOracle::operator()(const BoxPoint& p) const {
  auto it = mapping_.find(p);
  if (it == mapping_.end()) throw NotAMemberError(toString(p) + " is outside the oracle domain");
  return it->second;
}

void BoxOracle::validate() const {
  std::set<BoxPoint> images;
  for (const auto& p : domain_) {
    const auto& img = (*this)(p);
    if (!isMember(img))
      throw MalformedOracleError("not a bijection of the domain: " + toString(p) + " maps to " + toString(img) +
                                 " outside it");
    if (!images.insert(img).second)
      throw MalformedOracleError("not injective: image " + toString(img) + " is hit twice, e.g. by " + toString(p));
  }
  for (std::size_t a = 0; a < domain_.size(); ++a)
    for (std::size_t b = a + 1; b < domain_.size(); ++b) {
      const auto& u = domain_[a];
      const auto& v = domain_[b];
      auto w = cmax(u, v);
      auto it = mapping_.find(w);
      if (it == mapping_.end()) continue;
      if (it->second != cmax((*this)(u), (*this)(v)))
        throw MalformedOracleError("max not preserved on the pair " + toString(u) + ", " + toString(v));
    }
}

BoxOracle tabulate(const Membership& member, std::size_t dim, long bound,
                   const std::function<BoxPoint(const BoxPoint&)>& map, std::string name) {
  std::map<BoxPoint, BoxPoint> mapping;
  for (auto& p : members(member, dim, bound)) {
    auto img = map(p);
    mapping.emplace(std::move(p), std::move(img));
  }
  return BoxOracle(dim, bound, std::move(mapping), std::move(name));
}

BoxOracle coordinatePermutationOracle(const Membership& member, std::size_t dim, long bound,
                                      const std::vector<std::size_t>& pi, std::string name) {
  if (pi.size() != dim || !isPermutation(pi)) throw DomainError("not a permutation of the coordinates");
  return tabulate(member, dim, bound, [&](const BoxPoint& x) { return permute(x, pi); }, std::move(name));
}

BoxOracle qmetElementOracle(const GroupElement& g, long bound) {
  const std::size_t n = g.n();
  return coordinatePermutationOracle(qmetMembership(n), n * (n - 1), bound, symmetry::coordinateImage(g),
                                     g.toString());
}

BoxOracle qmetIdentityOracle(std::size_t n, long bound) {
  auto o = qmetElementOracle(GroupElement::identity(n), bound);
  return BoxOracle(o.dim(), bound, o.mapping(), "identity");
}

BoxOracle qmetTransposeOracle(std::size_t n, long bound) {
  std::vector<std::size_t> id(n);
  std::iota(id.begin(), id.end(), std::size_t{0});
  auto o = qmetElementOracle(GroupElement(id, true), bound);
  return BoxOracle(o.dim(), bound, o.mapping(), "transpose");
}

BoxOracle ckSwapOracle(long k, long bound) {
  if (k < 1) throw DomainError("C_k needs k >= 1");
  Membership member = [k](const BoxPoint& x) {
    if (x.size() != 2) throw DimensionError("C_k points have two coordinates");
    return -k * x[0] + (k + 1) * x[1] >= 0 && (k + 1) * x[0] - k * x[1] >= 0;
  };
  const BoxPoint p{k + 1, k}, q{k, k + 1};
  return tabulate(
      member, 2, bound,
      [&](const BoxPoint& x) {
        if (x == p) return q;
        if (x == q) return p;
        return x;
      },
      "ck-swap:" + std::to_string(k));
}

Membership layeredMembership() {
  return [](const BoxPoint& x) {
    if (x.empty()) return false;
    auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    return *lo >= 0 && *hi - *lo <= 1;
  };
}

BoxOracle layeredOracle(std::size_t dim, long bound, const std::vector<std::vector<std::size_t>>& layerPerms) {
  if (layerPerms.empty()) throw DomainError("no layer permutations");
  for (const auto& pi : layerPerms)
    if (pi.size() != dim || !isPermutation(pi)) throw DomainError("layer map is not a permutation");
  return tabulate(
      layeredMembership(), dim, bound,
      [&](const BoxPoint& x) {
        const long layer = *std::min_element(x.begin(), x.end());
        return permute(x, layerPerms[static_cast<std::size_t>(layer) % layerPerms.size()]);
      },
      "layered");
}

BoxOracle namedOracle(const std::string& name, std::size_t n, long bound) {
  if (name == "identity") return qmetIdentityOracle(n, bound);
  if (name == "transpose") return qmetTransposeOracle(n, bound);
  const std::string ck = "ck-swap:";
  if (name.rfind(ck, 0) == 0) {
    long k = 0;
    try {
      std::size_t used = 0;
      k = std::stol(name.substr(ck.size()), &used);
      if (used != name.size() - ck.size()) throw DomainError("");
    } catch (const std::exception&) {
      throw DomainError("bad oracle name " + name);
    }
    return ckSwapOracle(k, bound);
  }
  const std::string layered = "layered:";
  if (name.rfind(layered, 0) == 0) {
    std::size_t dim = 0;
    try {
      dim = std::stoul(name.substr(layered.size()));
    } catch (const std::exception&) {
      throw DomainError("bad oracle name " + name);
    }
    if (dim < 2) throw DomainError("layered oracle needs dimension >= 2");
    std::vector<std::size_t> id(dim), swap(dim);
    std::iota(id.begin(), id.end(), std::size_t{0});
    swap = id;
    std::swap(swap[0], swap[1]);
    return layeredOracle(dim, bound, {id, swap});
  }
  throw DomainError("unknown oracle " + name);
}

} // namespace qsm::box
