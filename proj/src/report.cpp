#include "qsm/report.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "qsm/errors.hpp"
#include "qsm/group.hpp"
#include "qsm/linalg.hpp"
#include "qsm/maxtools.hpp"
#include "qsm/qmet.hpp"
#include "qsm/symmetry.hpp"

namespace qsm::report {

namespace {

Check check(std::string name, bool passed, std::string detail = {}) {
  return Check{std::move(name), passed, std::move(detail)};
}

Criterion finish(int number, std::string title, std::vector<Check> checks, std::string note = {}) {
  Criterion c{number, std::move(title), Status::Pass, std::move(checks), std::move(note)};
  c.status = allPassed(c.checks) ? Status::Pass : Status::Fail;
  return c;
}

Criterion skipped(int number, std::string title, std::string note) {
  return Criterion{number, std::move(title), Status::Skip, {}, std::move(note)};
}

Integer factorial(std::size_t n) {
  Integer f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

bool containsRay(const std::vector<Ray>& rays, const qmet::ExponentMatrix& m) {
  return std::binary_search(rays.begin(), rays.end(), Ray(m.toVector()));
}

// Rank of the rows tight at the ray equals d - 1.
bool extremal(const HDescription& h, const Ray& r) {
  std::vector<IntVector> tight;
  const auto q = toRational(r.direction());
  for (const auto& row : h.rows()) {
    if (!dot(row.coeffs, q).isZero()) continue;
    IntVector v;
    for (const auto& c : row.coeffs) v.push_back(c.numerator());
    tight.push_back(std::move(v));
  }
  return rank(std::span<const IntVector>(tight)) == h.dim() - 1;
}

} // namespace

std::string statusName(Status s) {
  switch (s) {
  case Status::Pass: return "PASS";
  case Status::Fail: return "FAIL";
  case Status::Skip: return "SKIP";
  }
  return "?";
}

std::vector<Criterion> run(std::size_t n, const Options& options) {
  if (n < 3) throw DomainError("n must be at least 3");
  std::vector<Criterion> out;
  const auto h = qmet::buildH(n);
  const std::size_t d = h.dim();
  const auto certified = qmet::certifiedFacets(n);

  std::vector<Ray> rays;
  const bool haveRays = n <= options.rayLimit;
  if (haveRays) rays = ddExtremeRays(h, DdOptions{options.jobs});

  // 1. Facet census.
  {
    std::vector<Check> cs;
    cs.push_back(check("row count is n(n-1)^2", h.size() == qmet::rowCount(n), std::to_string(h.size()) + " rows"));
    cs.push_back(check("every row has an interior witness",
                       std::all_of(certified.begin(), certified.end(), [](bool b) { return b; })));
    if (haveRays) {
      auto mask = facetMask(h, rays);
      cs.push_back(check("every row is a facet by ray rank", std::all_of(mask.begin(), mask.end(), [](bool b) { return b; })));
    }
    out.push_back(finish(1, "facet census", cs,
                         "computed " + std::to_string(h.size()) + " facets; the alternative count n^2(n-1)/2 = " +
                             std::to_string(n * n * (n - 1) / 2) + " does not match the row census"));
  }

  // 2. Rays.
  if (haveRays) {
    std::vector<Check> cs;
    bool cuts = true;
    for (unsigned long mask = 1; mask + 1 < (1ul << n); ++mask) {
      std::vector<std::size_t> subset;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1ul) subset.push_back(i);
      cuts = cuts && containsRay(rays, qmet::orientedCut(subset, n));
    }
    bool lines = true;
    for (const auto& l : qmet::allLines(n)) lines = lines && containsRay(rays, qmet::line(l, n));
    cs.push_back(check("all oriented cuts are rays", cuts));
    cs.push_back(check("all lines are rays", lines));
    cs.push_back(check("every ray is a member", std::all_of(rays.begin(), rays.end(), [&](const Ray& r) {
                         return isMember(h, r.direction());
                       })));
    cs.push_back(check("every ray passes the rank certificate",
                       std::all_of(rays.begin(), rays.end(), [&](const Ray& r) { return extremal(h, r); })));
    cs.push_back(check("rays generate the cone (polar certificate)", raysGenerateCone(h, rays, DdOptions{options.jobs})));
    out.push_back(finish(2, "ray enumeration", cs, std::to_string(rays.size()) + " extreme rays"));
  } else {
    out.push_back(skipped(2, "ray enumeration", "ray enumeration is only attempted for n <= " + std::to_string(options.rayLimit)));
  }

  const auto fp = symmetry::lineFingerprint(n);
  // 3. Line incidence.
  {
    std::vector<Check> cs;
    const std::size_t want = (n - 1) * (n - 1) * (n - 1);
    bool diag = true;
    for (std::size_t i = 0; i < fp.lines.size(); ++i) diag = diag && fp.counts[i][i] == want;
    cs.push_back(check("each line lies on (n-1)^3 facets by evaluation", diag, std::to_string(want)));
    bool closed = true;
    for (const auto& l : fp.lines) closed = closed && qmet::lineExactLabelsClosedForm(l, n).size() == want;
    cs.push_back(check("closed-form exact sets have (n-1)^3 rows", closed));
    if (haveRays) {
      auto inc = incidence(h, rays);
      bool counted = true;
      for (const auto& l : qmet::allLines(n)) {
        auto it = std::lower_bound(rays.begin(), rays.end(), Ray(qmet::line(l, n).toVector()));
        counted = counted && it != rays.end() && inc.tightCount(static_cast<std::size_t>(it - rays.begin())) == want;
      }
      cs.push_back(check("incidence counts agree", counted));
    }
    out.push_back(finish(3, "line incidence", cs));
  }

  // 4. Fingerprint table.
  out.push_back(finish(4, "fingerprint table",
                       {check("pair counts match the closed forms", fp.matchesClosedForms,
                              std::to_string(fp.sameKind) + ", " + std::to_string(fp.crossKind) + ", " +
                                  std::to_string(fp.paired))}));

  // 5. Symmetry group.
  {
    std::vector<Check> cs;
    const Integer want = 2 * factorial(n);
    std::string note;
    if (haveRays) {
      try {
        auto aut = symmetry::autGroupIncidence(incidence(h, rays), options.budget);
        cs.push_back(check("incidence group order is 2 n!", aut.order == want, aut.order.get_str()));
      } catch (const BudgetExceeded& e) {
        note = std::string("incidence search stopped: ") + e.what();
      }
    }
    auto lines = symmetry::autGroupViaLines(n, haveRays ? std::optional(rays) : std::nullopt);
    cs.push_back(check("line-method group order is 2 n!", lines.order == want, lines.order.get_str()));
    for (const auto& c : lines.checks) cs.push_back(c);
    if (!note.empty()) note += "; ";
    note += lines.condition;
    out.push_back(finish(5, "symmetry group", cs, note));
  }

  // 6. Group diagram.
  if (haveRays) {
    auto rep = symmetry::verifyGroupDiagram(n, rays);
    out.push_back(finish(6, "group diagram", rep.checks));
  } else {
    out.push_back(skipped(6, "group diagram", "needs the extreme rays"));
  }

  // 7. Max-closed and very full.
  {
    std::vector<Check> cs;
    auto mc = haveRays ? maxtools::isMaxClosed(h, rays) : maxtools::isMaxClosed(h, certified);
    auto vf = haveRays ? maxtools::isVeryFull(h, rays) : maxtools::isVeryFull(h, certified);
    cs.push_back(check("buildH(n) is max-closed", mc.maxClosed));
    cs.push_back(check("buildH(n) is very full", vf.veryFull && vf.membersAgree));
    for (long k = 1; k <= 5; ++k) {
      auto ck = maxtools::ckCone(k);
      auto ckRays = ddExtremeRays(ck);
      cs.push_back(check("C_" + std::to_string(k) + " is max-closed and not very full",
                         maxtools::isMaxClosed(ck, ckRays).maxClosed && !maxtools::isVeryFull(ck, ckRays).veryFull));
    }
    auto q = [](long a, long b, long c) { return QVector{Rational(a), Rational(b), Rational(c)}; };
    HDescription bad(3, {{"x3-x1-x2", q(-1, -1, 1)}, {"x1", q(1, 0, 0)}, {"x2", q(0, 1, 0)}});
    auto badRes = maxtools::isMaxClosed(bad, ddExtremeRays(bad));
    cs.push_back(check("{x3 >= x1 + x2, x >= 0} is not max-closed, witness verified",
                       !badRes.maxClosed && badRes.witness && badRes.witness->verified,
                       badRes.violatingRow.value_or("")));
    auto psi = maxtools::psiCone();
    cs.push_back(check("psi-example cone is very full", maxtools::isVeryFull(psi, ddExtremeRays(psi)).veryFull));
    out.push_back(finish(7, "max-closed and very full", cs));
  }

  // 8. C_k.
  {
    std::vector<Check> cs;
    for (long k = 1; k <= 3; ++k) {
      auto rep = maxtools::ckVerify(k, 4 * (k + 1), options.budget);
      for (auto c : rep.checks) {
        c.name = "k=" + std::to_string(k) + ": " + c.name;
        cs.push_back(std::move(c));
      }
    }
    out.push_back(finish(8, "C_k counterexample", cs));
  }

  // 9. Recovery.
  {
    std::vector<Check> cs;
    std::string note;
    if (n == 3) {
      for (const auto& g : GroupElement::all(3)) {
        auto rec = maxtools::recoverPermutation(box::qmetElementOracle(g, 3), {false, true, options.budget});
        cs.push_back(check("recovers " + g.toString(), rec.pi == symmetry::coordinateImage(g)));
      }
    } else {
      note = "the bound-3 truncation is only enumerated at n = 3";
    }
    auto swap = maxtools::recoverPermutation(box::ckSwapOracle(1, 6), {false, true, options.budget});
    cs.push_back(check("C_1 swap is not permutational",
                       swap.outcome == maxtools::Recovery::Outcome::NotPermutational && swap.witness.has_value(),
                       swap.witness ? "witness " + box::toString(*swap.witness) : ""));
    out.push_back(finish(9, "permutational recovery", cs, note));
  }

  // 10. Witness matrices.
  {
    bool hOk = true, fOk = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          if (i == j || j == k || i == k) continue;
          std::vector<std::string> want{qmet::nLabel(i, j), qmet::nLabel(j, k), qmet::nLabel(i, k), qmet::tLabel(i, j, k)};
          std::sort(want.begin(), want.end());
          auto got = exactSet(h, qmet::hWitness(n, i, j, k).toVector());
          std::sort(got.begin(), got.end());
          hOk = hOk && got == want;
        }
    for (const auto& row : h.rows())
      fOk = fOk && exactSet(h, qmet::facetWitness(row.label, n).toVector()) == std::vector<std::string>{row.label};
    out.push_back(finish(10, "witness matrices",
                         {check("hWitness exact sets", hOk), check("facetWitness exact sets", fOk)}));
  }

  // 11. Randomized properties.
  {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<long> w(0, 6);
    auto randomMember = [&] {
      IntVector weights(d);
      for (auto& x : weights) x = w(rng);
      return qmet::shortestPathClosure(n, weights);
    };
    bool plus = true, max = true, strict = true, cutSupport = true;
    std::vector<IntVector> cutVectors;
    for (unsigned long mask = 1; mask + 1 < (1ul << n); ++mask) {
      std::vector<std::size_t> subset;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1ul) subset.push_back(i);
      cutVectors.push_back(qmet::orientedCut(subset, n).toVector());
    }
    for (std::size_t c = 0; c < options.cases; ++c) {
      auto a = randomMember(), b = randomMember();
      IntVector s(d);
      for (std::size_t i = 0; i < d; ++i) s[i] = a[i] + b[i];
      plus = plus && isMember(h, s);
      max = max && isMember(h, maxtools::cmax(a, b));
      auto m = qmet::ExponentMatrix::fromVector(n, a);
      strict = strict && qmet::strictCount(m) >= qmet::strictBound(m);
      if (std::any_of(a.begin(), a.end(), [](const Integer& x) { return x != 0; }))
        cutSupport = cutSupport && std::any_of(cutVectors.begin(), cutVectors.end(), [&](const IntVector& cut) {
                       for (std::size_t i = 0; i < d; ++i)
                         if (cut[i] != 0 && a[i] == 0) return false;
                       return true;
                     });
    }
    bool lines = true;
    for (const auto& l : qmet::allLines(n)) {
      auto want = qmet::lineExactLabelsClosedForm(l, n);
      auto got = exactSet(h, qmet::line(l, n).toVector());
      std::sort(want.begin(), want.end());
      std::sort(got.begin(), got.end());
      lines = lines && want == got;
    }
    auto s3 = qmet::minSupportScan(3, 2, options.budget);
    auto s4 = qmet::minSupportScan(4, 1, options.budget);
    out.push_back(finish(11, "randomized properties",
                         {check("closed under +", plus), check("closed under max", max),
                          check("strict count >= strict bound", strict), check("line exact sets match closed form", lines),
                          check("support contains a cut support", cutSupport),
                          check("minSupportScan(3, 2) = 2", s3.minSupport == 2), check("minSupportScan(4, 1) = 3", s4.minSupport == 3)},
                         std::to_string(options.cases) + " cases, seed " + std::to_string(options.seed)));
  }

  // 12. psi example.
  out.push_back(finish(12, "psi example", maxtools::psiExampleVerify().checks));
  return out;
}

} // namespace qsm::report
