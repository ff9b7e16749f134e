#include "qsm/maxtools.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "qsm/errors.hpp"
#include "qsm/linalg.hpp"

namespace qsm::maxtools {

namespace {

std::string qString(const QVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].toString();
  return s + ")";
}

Check check(std::string name, bool passed, std::string detail = {}) {
  return Check{std::move(name), passed, std::move(detail)};
}

std::string pointList(const std::vector<BoxPoint>& pts) {
  std::string s = "{";
  for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? "," : "") + box::toString(pts[i]);
  return s + "}";
}

bool sameSet(std::vector<BoxPoint> a, std::vector<BoxPoint> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

BoxPoint scale(const BoxPoint& p, long k) {
  BoxPoint out(p);
  for (auto& v : out) v *= k;
  return out;
}

BoxPoint permute(const BoxPoint& x, const std::vector<std::size_t>& pi) {
  BoxPoint y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[pi[i]] = x[i];
  return y;
}

void requireSameLength(std::size_t a, std::size_t b) {
  if (a != b) throw DimensionError("vectors of length " + std::to_string(a) + " and " + std::to_string(b));
}

} // namespace

QVector cmax(const QVector& u, const QVector& v) {
  requireSameLength(u.size(), v.size());
  QVector w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = std::max(u[i], v[i]);
  return w;
}

IntVector cmax(const IntVector& u, const IntVector& v) {
  requireSameLength(u.size(), v.size());
  IntVector w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] < v[i] ? v[i] : u[i];
  return w;
}

ViolationWitness maxViolationWitness(const QVector& a, const QVector& u, const Rational& epsilon) {
  requireSameLength(a.size(), u.size());
  if (epsilon.sign() <= 0) throw DomainError("epsilon must be positive");
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].sign() < 0) neg.push_back(i);
  if (neg.size() < 2)
    throw InapplicableError("row " + qString(a) + " has fewer than two negative coefficients");
  if (!dot(a, u).isZero()) throw DomainError("u = " + qString(u) + " is not on the hyperplane a.x = 0");

  ViolationWitness w;
  w.a = a;
  w.u = u;
  w.epsilon = epsilon;
  w.r = neg[0];
  w.s = neg[1];
  w.z.assign(a.size(), Rational(0));
  w.z[w.r] = Rational(0) - a[w.s];
  w.z[w.s] = a[w.r];
  w.plus = w.minus = u;
  for (std::size_t i = 0; i < u.size(); ++i) {
    w.plus[i] = u[i] + epsilon * w.z[i];
    w.minus[i] = u[i] - epsilon * w.z[i];
  }
  w.max = cmax(w.plus, w.minus);
  w.value = dot(a, w.max);
  w.expected = Rational(-2) * epsilon * a[w.r] * a[w.s];
  w.verified = w.value == w.expected && w.value.sign() < 0 && dot(a, w.plus).isZero() && dot(a, w.minus).isZero();
  return w;
}

ViolationWitness maxViolationWitness(const HDescription& h, const std::vector<Ray>& rays, const std::string& label) {
  const std::size_t idx = h.indexOf(label);
  if (!isFacet(h, label, rays)) throw DomainError("row " + label + " is not a facet");
  const QVector& a = h.row(idx).coeffs;
  QVector u(h.dim(), Rational(0));
  for (const auto& ray : rays) {
    auto q = toRational(ray.direction());
    if (dot(a, q).isZero())
      for (std::size_t i = 0; i < u.size(); ++i) u[i] = u[i] + q[i];
  }
  // Provisional witness for z, then shrink eps so u +- eps z stays in the cone.
  auto w = maxViolationWitness(a, u, Rational(1));
  Rational eps(1);
  for (const auto& row : h.rows()) {
    Rational bz = dot(row.coeffs, w.z);
    if (bz.isZero()) continue;
    Rational bu = dot(row.coeffs, u);
    if (bu.sign() <= 0) throw DegenerateConeError("facet " + label + " has no relative interior point off row " + row.label);
    Rational limit = bu / (bz.sign() < 0 ? Rational(0) - bz : bz);
    if (limit < eps) eps = limit;
  }
  return maxViolationWitness(a, u, eps);
}

MaxClosedResult isMaxClosed(const HDescription& h, const std::vector<bool>& facets) {
  if (facets.size() != h.size()) throw DimensionError("facet mask length differs from the row count");
  MaxClosedResult res;
  for (std::size_t f = 0; f < h.size(); ++f) {
    const auto& row = h.row(f);
    if (!facets[f]) {
      res.redundantRows.push_back(row.label);
      continue;
    }
    auto negatives = std::count_if(row.coeffs.begin(), row.coeffs.end(), [](const Rational& c) { return c.sign() < 0; });
    if (negatives >= 2 && res.maxClosed) {
      res.maxClosed = false;
      res.violatingRow = row.label;
    }
  }
  return res;
}

MaxClosedResult isMaxClosed(const HDescription& h, const std::vector<Ray>& rays) {
  if (!isPointed(h)) throw UnsupportedConeError("cone is not pointed", linealityDimension(h));
  auto res = isMaxClosed(h, facetMask(h, rays));
  if (res.violatingRow) res.witness = maxViolationWitness(h, rays, *res.violatingRow);
  return res;
}

VeryFullResult isVeryFull(const HDescription& h, const std::vector<bool>& facets) {
  if (facets.size() != h.size()) throw DimensionError("facet mask length differs from the row count");
  VeryFullResult res;
  for (std::size_t f = 0; f < h.size(); ++f) {
    const auto& row = h.row(f);
    if (!facets[f]) {
      res.redundantRows.push_back(row.label);
      continue;
    }
    Rational sum(0), big(0);
    for (const auto& c : row.coeffs) {
      sum = sum + c;
      Rational abs = c.sign() < 0 ? Rational(0) - c : c;
      if (big < abs) big = abs;
    }
    if (sum < big && res.veryFull) {
      res.veryFull = false;
      res.violatingRow = row.label;
    }
  }
  bool allIn = true;
  for (std::size_t i = 0; i < h.dim() && allIn; ++i)
    for (int sign : {1, -1}) {
      IntVector p(h.dim(), Integer(1));
      p[i] += sign;
      if (!isMember(h, p)) allIn = false;
    }
  res.membersAgree = allIn == res.veryFull;
  return res;
}

VeryFullResult isVeryFull(const HDescription& h, const std::vector<Ray>& rays) {
  return isVeryFull(h, facetMask(h, rays));
}

HDescription ckCone(long k) {
  if (k < 1) throw DomainError("C_k needs k >= 1");
  return HDescription(2, {{"lower", {Rational(-k), Rational(k + 1)}}, {"upper", {Rational(k + 1), Rational(-k)}}});
}

CkReport ckVerify(long k, long bound, std::uint64_t budget) {
  if (k < 1) throw DomainError("C_k needs k >= 1");
  if (bound < 2 * (k + 1))
    throw DomainError("box bound " + std::to_string(bound) + " is below 2(k+1) = " + std::to_string(2 * (k + 1)));
  CkReport rep;
  rep.k = k;
  rep.bound = bound;
  const auto h = ckCone(k);
  const auto pool = box::members(box::coneMembership(h), 2, bound, budget);
  rep.members = pool.size();
  rep.p = {k + 1, k};
  rep.q = {k, k + 1};
  const BoxPoint kk{k, k}, top{k + 1, k + 1};
  const std::set<BoxPoint> inPool(pool.begin(), pool.end());
  rep.checks.push_back(check("p and q are members", inPool.count(rep.p) && inPool.count(rep.q)));
  rep.pCovers = box::coversAmong(pool, rep.p, bound);
  rep.qCovers = box::coversAmong(pool, rep.q, bound);
  for (const auto* c : {&rep.pCovers, &rep.qCovers}) {
    const std::string who = c == &rep.pCovers ? "p" : "q";
    rep.checks.push_back(check(who + " covers only (k,k)", sameSet(c->covers, {kk}), "covers " + pointList(c->covers)));
    rep.checks.push_back(
        check(who + " is covered only by (k+1)1", sameSet(c->coveredBy, {top}), "covered by " + pointList(c->coveredBy)));
  }

  auto swap = [&](const BoxPoint& x) -> BoxPoint {
    if (x == rep.p) return rep.q;
    if (x == rep.q) return rep.p;
    return x;
  };
  std::string orderFail, maxFail;
  for (std::size_t a = 0; a < pool.size() && orderFail.empty(); ++a)
    for (std::size_t b = 0; b < pool.size(); ++b) {
      const auto &u = pool[a], &v = pool[b];
      if (box::leq(u, v) != box::leq(swap(u), swap(v))) {
        orderFail = box::toString(u) + " vs " + box::toString(v);
        break;
      }
      auto m = box::cmax(u, v);
      if (maxFail.empty() && inPool.count(m) && swap(m) != box::cmax(swap(u), swap(v)))
        maxFail = box::toString(u) + " vs " + box::toString(v);
    }
  rep.checks.push_back(check("swap is order-preserving on the box", orderFail.empty(), orderFail));
  rep.checks.push_back(check("swap preserves max on the box", maxFail.empty(), maxFail));
  rep.checks.push_back(check("swap moves p", swap(rep.p) == rep.q && rep.p != rep.q));
  const BoxPoint twoP = scale(rep.p, 2), twoQ = scale(rep.q, 2);
  const bool fixes = inPool.count(twoP) && swap(twoP) == twoP;
  rep.checks.push_back(check("swap fixes 2p, so it has no additive extension", fixes && twoP != twoQ,
                             "phi(2p) = " + box::toString(swap(twoP)) + " but 2 phi(p) = " + box::toString(twoQ)));

  const auto rays = ddExtremeRays(h);
  rep.checks.push_back(check("C_k is max-closed", isMaxClosed(h, rays).maxClosed));
  rep.checks.push_back(check("C_k is not very full", !isVeryFull(h, rays).veryFull));
  return rep;
}

HDescription psiCone() {
  auto r = [](long a, long b, long c) { return QVector{Rational(a), Rational(b), Rational(c)}; };
  return HDescription(3, {{"x1+x2>=x3", r(1, 1, -1)}, {"x1>=0", r(1, 0, 0)}, {"x2>=0", r(0, 1, 0)}, {"x3>=0", r(0, 0, 1)}});
}

PsiReport psiExampleVerify() {
  PsiReport rep;
  const auto h = psiCone();
  rep.rays = ddExtremeRays(h);
  rep.psi = {{1, 1, -1}, {0, 0, 1}, {0, 1, 0}};
  auto iv = [](long a, long b, long c) { return IntVector{Integer(a), Integer(b), Integer(c)}; };
  const IntVector v1 = iv(1, 0, 0), v2 = iv(0, 1, 0), v3 = iv(1, 0, 1), v4 = iv(0, 1, 1);
  auto apply = [&](const IntVector& x) {
    IntVector y(3, Integer(0));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) y[i] += rep.psi[i][j] * x[j];
    return y;
  };

  std::vector<Ray> expected{Ray(v1), Ray(v2), Ray(v3), Ray(v4)};
  std::sort(expected.begin(), expected.end());
  std::string got;
  for (const auto& r : rep.rays) got += toString(r.direction()) + " ";
  rep.checks.push_back(check("extreme rays are v1..v4", rep.rays == expected, got));

  const bool perm = apply(v1) == v1 && apply(v4) == v4 && apply(v2) == v3 && apply(v3) == v2;
  rep.checks.push_back(check("psi fixes v1, v4 and swaps v2, v3", perm));
  const long det = rep.psi[0][0] * (rep.psi[1][1] * rep.psi[2][2] - rep.psi[1][2] * rep.psi[2][1]) -
                   rep.psi[0][1] * (rep.psi[1][0] * rep.psi[2][2] - rep.psi[1][2] * rep.psi[2][0]) +
                   rep.psi[0][2] * (rep.psi[1][0] * rep.psi[2][1] - rep.psi[1][1] * rep.psi[2][0]);
  rep.checks.push_back(check("psi is unimodular, so it is an additive automorphism of the integer cone",
                             (det == 1 || det == -1) && perm, "det = " + std::to_string(det)));

  rep.psiOfMax = apply(cmax(v1, v3));
  rep.maxOfPsi = cmax(apply(v1), apply(v3));
  rep.checks.push_back(check("psi(v1 max v3) differs from psi(v1) max psi(v3)",
                             rep.psiOfMax == iv(0, 1, 0) && rep.maxOfPsi == iv(1, 1, 0),
                             toString(rep.psiOfMax) + " != " + toString(rep.maxOfPsi)));

  rep.checks.push_back(check("cone is pointed", isPointed(h)));
  rep.checks.push_back(check("cone is nonnegative", std::all_of(rep.rays.begin(), rep.rays.end(), [](const Ray& r) {
                               return std::all_of(r.direction().begin(), r.direction().end(),
                                                  [](const Integer& v) { return v >= 0; });
                             })));
  rep.checks.push_back(check("cone is very full", isVeryFull(h, rep.rays).veryFull));
  rep.checks.push_back(check("cone is max-closed", isMaxClosed(h, rep.rays).maxClosed));
  const std::vector<std::pair<std::string, IntVector>> witnesses{
      {"x1>=0", iv(0, 2, 1)}, {"x2>=0", iv(2, 0, 1)}, {"x3>=0", iv(1, 1, 0)}};
  for (const auto& [label, w] : witnesses) {
    const auto exact = exactSet(h, w);
    rep.checks.push_back(check(label + " is a facet with interior witness " + toString(w),
                               isFacet(h, label, rep.rays) && exact == std::vector<std::string>{label}));
  }
  return rep;
}

bool alphaMonoidMember(const IntVector& x, const Rational& alpha) {
  if (alpha.sign() <= 0 || !(alpha < Rational(1))) throw DomainError("alpha must lie in (0,1)");
  if (x.size() < 3) throw DomainError("alpha monoid needs dimension >= 3");
  Integer total = 0;
  for (const auto& v : x) {
    if (v < 0) throw DomainError("alpha monoid points are nonnegative");
    total += v;
  }
  if (!alpha.numerator().fits_ulong_p() || !alpha.denominator().fits_ulong_p())
    throw DomainError("alpha has too large a numerator or denominator");
  const unsigned long p = alpha.numerator().get_ui(), q = alpha.denominator().get_ui();
  for (const auto& xj : x) {
    Integer lhs, rhs;
    Integer rest = total - xj;
    mpz_pow_ui(lhs.get_mpz_t(), rest.get_mpz_t(), q);
    mpz_pow_ui(rhs.get_mpz_t(), xj.get_mpz_t(), p);
    if (lhs < rhs) return false;
  }
  return true;
}

Membership alphaMembership(const Rational& alpha) {
  return [alpha](const BoxPoint& p) { return alphaMonoidMember(box::toInt(p), alpha); };
}

std::string outcomeName(Recovery::Outcome o) {
  switch (o) {
  case Recovery::Outcome::Permutational: return "permutational";
  case Recovery::Outcome::NotPermutational: return "not permutational";
  case Recovery::Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

// Number of members in [lo, hi] minus one, when those members form a chain.
std::optional<long> chainHeight(const std::vector<BoxPoint>& dom, const BoxPoint& lo, const BoxPoint& hi) {
  std::vector<const BoxPoint*> inside;
  for (const auto& x : dom)
    if (box::leq(lo, x) && box::leq(x, hi)) inside.push_back(&x);
  if (inside.empty()) return std::nullopt;
  std::sort(inside.begin(), inside.end(), [](const BoxPoint* a, const BoxPoint* b) {
    return std::accumulate(a->begin(), a->end(), 0L) < std::accumulate(b->begin(), b->end(), 0L);
  });
  for (std::size_t i = 1; i < inside.size(); ++i)
    if (!box::leq(*inside[i - 1], *inside[i])) return std::nullopt;
  return static_cast<long>(inside.size()) - 1;
}

BoxPoint unitShift(std::size_t dim, long k, std::size_t i, long delta) {
  BoxPoint p(dim, k);
  p[i] += delta;
  return p;
}

} // namespace

Recovery recoverPermutation(const BoxOracle& oracle, const RecoveryOptions& options) {
  const std::size_t dim = oracle.dim();
  const long b = oracle.bound();
  if (b < 3) throw DomainError("recovery needs a box bound of at least 3");
  const auto& dom = oracle.domain();
  const std::uint64_t pairs = static_cast<std::uint64_t>(dom.size()) * dom.size() / 2;
  if (pairs > options.budget)
    throw BudgetExceeded(std::to_string(pairs) + " point pairs exceed budget " + std::to_string(options.budget));
  if (options.validateOracle) oracle.validate();

  Recovery rec;
  rec.bound = b;
  rec.notes.push_back("orders, covers and minimal elements are taken inside the box [0," + std::to_string(b) + "]^" +
                      std::to_string(dim));
  auto in = [&](const BoxPoint& p) { return oracle.isMember(p); };
  auto phi = [&](const BoxPoint& p) -> const BoxPoint& { return oracle(p); };
  auto inBox = [&](const BoxPoint& p) {
    return std::all_of(p.begin(), p.end(), [&](long v) { return v >= 0 && v <= b; });
  };

  // Hypotheses, checked inside the box.
  {
    std::string miss;
    for (std::size_t i = 0; i < dim && miss.empty(); ++i)
      for (long d : {1L, -1L})
        if (!in(unitShift(dim, 1, i, d))) miss = box::toString(unitShift(dim, 1, i, d));
    rec.hypotheses.push_back(check("very full (1 +- e_i are members)", miss.empty(), miss.empty() ? "" : "missing " + miss));
    std::string addFail, maxFail;
    for (std::size_t x = 0; x < dom.size(); ++x)
      for (std::size_t y = x; y < dom.size(); ++y) {
        if (addFail.empty()) {
          auto s = box::add(dom[x], dom[y]);
          if (inBox(s) && !in(s))
            addFail = box::toString(dom[x]) + " + " + box::toString(dom[y]) + " = " + box::toString(s);
        }
        if (maxFail.empty() && !in(box::cmax(dom[x], dom[y])))
          maxFail = box::toString(dom[x]) + " max " + box::toString(dom[y]);
      }
    rec.hypotheses.push_back(check("closed under +", addFail.empty(), addFail.empty() ? "" : addFail + " is not a member"));
    rec.hypotheses.push_back(check("closed under max", maxFail.empty(), maxFail.empty() ? "" : maxFail + " is not a member"));
    if (!addFail.empty())
      rec.notes.push_back("the domain is not closed under +, so it is not a valid domain for recovery; results are "
                          "certified by direct comparison only");
  }

  // A fixed nonzero multiple of 1.
  if (options.transitiveSymmetry) {
    auto mins = box::minimalAmong(dom);
    if (!mins.empty()) {
      BoxPoint s = mins.front();
      for (const auto& m : mins) s = box::cmax(s, m);
      const bool multiple = std::all_of(s.begin(), s.end(), [&](long v) { return v == s[0]; }) && s[0] > 0;
      if (multiple && in(s) && phi(s) == s) {
        rec.fixedMultiple = s[0];
        rec.fixedRoute = "dickson";
      }
      rec.steps.push_back(check("max-sum of the minimal elements is a fixed multiple of 1", rec.fixedMultiple.has_value(),
                                "max-sum " + box::toString(s) + " of " + std::to_string(mins.size()) + " minimal elements"));
    }
  }
  if (!rec.fixedMultiple)
    for (long k = 1; k <= b; ++k) {
      auto p = box::ones(dim, k);
      if (in(p) && phi(p) == p) {
        rec.fixedMultiple = k;
        rec.fixedRoute = "scan";
        break;
      }
    }

  std::optional<std::vector<std::size_t>> pi;
  if (rec.fixedMultiple) {
    const long r = *rec.fixedMultiple;
    std::set<long> fixed{r};
    // Up: the covers of k1 are k1 + e_i; their max-sum (k+1)1 is fixed.
    for (long k = r; k + 1 <= b; ++k) {
      const auto cov = box::coversAmong(dom, box::ones(dim, k), b);
      std::vector<BoxPoint> expect;
      for (std::size_t i = 0; i < dim; ++i) expect.push_back(unitShift(dim, k, i, 1));
      if (!sameSet(cov.coveredBy, expect)) {
        rec.steps.push_back(check("covers of " + std::to_string(k) + "1 are " + std::to_string(k) + "1 + e_i", false,
                                  "inconclusive: got " + pointList(cov.coveredBy)));
        break;
      }
      std::vector<BoxPoint> images;
      for (const auto& c : cov.coveredBy) images.push_back(phi(c));
      auto next = box::ones(dim, k + 1);
      const bool ok = sameSet(images, expect) && phi(next) == next;
      rec.steps.push_back(check("phi fixes " + std::to_string(k + 1) + "1", ok));
      if (!ok) break;
      fixed.insert(k + 1);
    }
    if (*fixed.rbegin() == b) rec.notes.push_back("upward propagation stops at the box bound");
    // Down: the members below every k1 - e_i have max-sum (k-1)1.
    for (long k = r; k >= 2; --k) {
      const auto cov = box::coversAmong(dom, box::ones(dim, k), b);
      std::vector<BoxPoint> expect;
      for (std::size_t i = 0; i < dim; ++i) expect.push_back(unitShift(dim, k, i, -1));
      if (!sameSet(cov.covers, expect)) {
        rec.steps.push_back(check("members covered by " + std::to_string(k) + "1 are " + std::to_string(k) + "1 - e_i",
                                  false, "inconclusive: got " + pointList(cov.covers)));
        break;
      }
      BoxPoint sum(dim, 0);
      for (const auto& x : dom)
        if (std::all_of(expect.begin(), expect.end(), [&](const BoxPoint& e) { return box::leq(x, e); }))
          sum = box::cmax(sum, x);
      const bool ok = sum == box::ones(dim, k - 1) && in(sum) && phi(sum) == sum;
      rec.steps.push_back(check("phi fixes " + std::to_string(k - 1) + "1", ok, "max-sum below is " + box::toString(sum)));
      if (!ok) break;
      fixed.insert(k - 1);
    }
    rec.fixedMultiples.assign(fixed.begin(), fixed.end());

    // Read pi from the images of 1 - e_i.
    if (fixed.count(1)) {
      std::vector<std::size_t> cand(dim, dim);
      bool ok = true;
      for (std::size_t i = 0; i < dim && ok; ++i) {
        auto bi = unitShift(dim, 1, i, -1);
        if (!in(bi)) {
          ok = false;
          break;
        }
        const auto& img = phi(bi);
        ok = false;
        for (std::size_t j = 0; j < dim; ++j)
          if (img == unitShift(dim, 1, j, -1)) {
            cand[i] = j;
            ok = true;
          }
      }
      std::vector<std::size_t> sorted = cand;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < dim && ok; ++i) ok = sorted[i] == i;
      rec.steps.push_back(check("phi permutes the points 1 - e_i", ok));
      if (ok) pi = cand;
    }
  }

  if (pi) {
    // phi(k b_i) = k b_pi(i), where k b_i is k1 with coordinate i set to 0.
    std::string claim2, claim3;
    for (long k = 1; k <= b; ++k)
      for (std::size_t i = 0; i < dim; ++i) {
        auto kb = unitShift(dim, k, i, -k);
        if (!in(kb)) continue;
        if (claim2.empty() && phi(kb) != unitShift(dim, k, (*pi)[i], -k)) claim2 = box::toString(kb);
        if (claim3.empty() && chainHeight(dom, kb, box::ones(dim, k)) != k) claim3 = box::toString(kb);
      }
    rec.steps.push_back(check("phi(k b_i) = k b_pi(i)", claim2.empty(), claim2.empty() ? "" : "fails at " + claim2));
    rec.steps.push_back(check("[k b_i, k1] is a chain of height k", claim3.empty(), claim3.empty() ? "" : "fails at " + claim3));

    std::size_t certified = 0, uncertified = 0;
    for (const auto& v : dom) {
      const auto& w = phi(v);
      for (std::size_t i = 0; i < dim; ++i) {
        auto lo = unitShift(dim, b, i, -b);
        auto hi = box::cmax(lo, v);
        if (in(lo) && in(hi)) {
          auto h1 = chainHeight(dom, lo, hi);
          auto h2 = chainHeight(dom, phi(lo), phi(hi));
          if (h1 && h2 && *h1 == v[i] && *h2 == w[(*pi)[i]]) ++certified;
          else ++uncertified;
        } else {
          ++uncertified;
        }
        if (w[(*pi)[i]] != v[i] && !rec.witness) {
          rec.witness = v;
          rec.witnessReason = "phi" + box::toString(v) + " = " + box::toString(w) + " differs from the permuted point at coordinate " +
                              std::to_string(i + 1);
        }
      }
    }
    rec.steps.push_back(check("chain heights certify every coordinate", uncertified == 0,
                              std::to_string(certified) + " certified, " + std::to_string(uncertified) + " not"));
    rec.pi = pi;
    rec.outcome = rec.witness ? Recovery::Outcome::NotPermutational : Recovery::Outcome::Permutational;
    if (rec.witness) rec.pi.reset();
    return rec;
  }

  rec.notes.push_back("pi could not be read from the images of 1 - e_i");
  // Exhaustive search over coordinate permutations on small dimensions.
  if (dim <= 8) {
    std::vector<std::size_t> cand(dim);
    std::iota(cand.begin(), cand.end(), std::size_t{0});
    do {
      bool ok = std::all_of(dom.begin(), dom.end(), [&](const BoxPoint& v) { return phi(v) == permute(v, cand); });
      if (ok) {
        rec.pi = cand;
        rec.outcome = Recovery::Outcome::Permutational;
        rec.notes.push_back("pi found by exhaustive search over coordinate permutations");
        return rec;
      }
    } while (std::next_permutation(cand.begin(), cand.end()));
  }
  // Certificates that hold for every pi.
  for (const auto& u : dom) {
    auto twoU = scale(u, 2);
    if (in(twoU) && phi(twoU) != scale(phi(u), 2)) {
      rec.witness = u;
      rec.witnessReason = "phi(2u) = " + box::toString(phi(twoU)) + " but 2 phi(u) = " + box::toString(scale(phi(u), 2)) +
                          ", so phi has no additive extension";
      break;
    }
  }
  if (!rec.witness)
    for (const auto& v : dom) {
      auto a = v, c = phi(v);
      std::sort(a.begin(), a.end());
      std::sort(c.begin(), c.end());
      if (a != c) {
        rec.witness = v;
        rec.witnessReason = "phi" + box::toString(v) + " = " + box::toString(phi(v)) + " is not a rearrangement";
        break;
      }
    }
  if (!rec.witness && dim <= 8)
    for (const auto& v : dom)
      if (phi(v) != v) {
        rec.witness = v;
        rec.witnessReason = "no coordinate permutation fits; first point moved by phi";
        break;
      }
  rec.outcome = rec.witness ? Recovery::Outcome::NotPermutational : Recovery::Outcome::Inconclusive;
  return rec;
}

} // namespace qsm::maxtools
