#include "qsm/cone.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <thread>

#include "qsm/errors.hpp"
#include "qsm/linalg.hpp"

namespace qsm {

HDescription::HDescription(std::size_t dim, std::vector<HRow> rows)
    : dim_(dim), rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    if (r.coeffs.size() != dim_)
      throw DimensionError("row '" + r.label + "' has " + std::to_string(r.coeffs.size()) +
                           " coefficients, expected " + std::to_string(dim_));
    if (std::all_of(r.coeffs.begin(), r.coeffs.end(), [](const Rational& x) { return x.isZero(); }))
      throw DomainError("row '" + r.label + "' is zero");
    if (!index_.emplace(r.label, i).second) throw DomainError("duplicate label '" + r.label + "'");
  }
}

std::vector<std::string> HDescription::labels() const {
  std::vector<std::string> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r.label);
  return out;
}

std::size_t HDescription::indexOf(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw LookupError("unknown row label '" + label + "'");
  return it->second;
}

Ray::Ray(const IntVector& v) : direction_(primitive(v)) {}
Ray::Ray(const QVector& v) : direction_(primitive(v)) {}

std::strong_ordering operator<=>(const Ray& a, const Ray& b) {
  const auto n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = cmp(a.direction_[i], b.direction_[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.size() <=> b.size();
}

std::size_t IncidenceStructure::tightCount(std::size_t ray) const {
  return static_cast<std::size_t>(std::count(tight.at(ray).begin(), tight.at(ray).end(), true));
}

std::vector<std::size_t> IncidenceStructure::raysOnRow(std::size_t row) const {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < rays.size(); ++r)
    if (tight[r].at(row)) out.push_back(r);
  return out;
}

namespace {

std::vector<QVector> coefficientRows(const HDescription& h) {
  std::vector<QVector> rows;
  rows.reserve(h.size());
  for (const auto& r : h.rows()) rows.push_back(r.coeffs);
  return rows;
}

// Rows scaled to primitive integer vectors (positive multiples, same half-space).
std::vector<IntVector> integerRows(const HDescription& h) {
  std::vector<IntVector> rows;
  rows.reserve(h.size());
  for (const auto& r : h.rows()) rows.push_back(primitive(r.coeffs));
  return rows;
}

class Bitset {
public:
  explicit Bitset(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  Bitset operator&(const Bitset& o) const {
    Bitset r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool contains(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((o.words_[i] & ~words_[i]) != 0) return false;
    return true;
  }

private:
  std::vector<std::uint64_t> words_;
};

struct DdRay {
  IntVector v;
  Bitset zero; // processed rows this ray satisfies exactly
};

struct Candidate {
  std::size_t pos;
  std::size_t neg;
};

// Combinatorial adjacency: no third ray is tight on every row both are tight on.
bool adjacent(const std::vector<DdRay>& rays, std::size_t a, std::size_t b, const Bitset& common) {
  for (std::size_t r = 0; r < rays.size(); ++r) {
    if (r == a || r == b) continue;
    if (rays[r].zero.contains(common)) return false;
  }
  return true;
}

std::vector<std::size_t> chooseBasis(const std::vector<IntVector>& rows, std::size_t dim) {
  std::vector<std::size_t> basis;
  std::vector<IntVector> chosen;
  for (std::size_t i = 0; i < rows.size() && basis.size() < dim; ++i) {
    chosen.push_back(rows[i]);
    if (rank(std::span<const IntVector>(chosen)) == chosen.size())
      basis.push_back(i);
    else
      chosen.pop_back();
  }
  return basis;
}

} // namespace

bool isPointed(const HDescription& h) { return linealityDimension(h) == 0; }

std::size_t linealityDimension(const HDescription& h) {
  const auto rows = coefficientRows(h);
  return h.dim() - rank(std::span<const QVector>(rows));
}

bool isMember(const HDescription& h, const QVector& x) {
  for (const auto& r : h.rows())
    if (dot(r.coeffs, x).sign() < 0) return false;
  return true;
}

bool isMember(const HDescription& h, const IntVector& x) {
  for (const auto& r : h.rows())
    if (dot(r.coeffs, x).sign() < 0) return false;
  return true;
}

std::vector<std::string> violatedRows(const HDescription& h, const QVector& x) {
  std::vector<std::string> out;
  for (const auto& r : h.rows())
    if (dot(r.coeffs, x).sign() < 0) out.push_back(r.label);
  return out;
}

std::vector<Ray> ddExtremeRays(const HDescription& h, const DdOptions& options) {
  const std::size_t d = h.dim();
  const std::size_t m = h.size();
  const std::size_t lineality = linealityDimension(h);
  if (lineality != 0)
    throw UnsupportedConeError("cone is not pointed (lineality dimension " +
                                   std::to_string(lineality) + ")",
                               lineality);
  if (d == 0) return {};

  const auto rows = integerRows(h);
  const auto basis = chooseBasis(rows, d);

  // Initial simplicial cone {x : B x >= 0}; its rays are the columns of B^{-1}.
  std::vector<QVector> bMat;
  for (auto i : basis) bMat.push_back(h.row(i).coeffs);
  std::vector<DdRay> rays;
  for (std::size_t j = 0; j < d; ++j) {
    QVector e(d, Rational(0));
    e[j] = Rational(1);
    DdRay r{primitive(solve(bMat, e)), Bitset(m)};
    for (std::size_t k = 0; k < d; ++k)
      if (k != j) r.zero.set(basis[k]);
    rays.push_back(std::move(r));
  }

  std::vector<bool> inBasis(m, false);
  for (auto i : basis) inBasis[i] = true;

  const unsigned jobs = std::max(1U, options.jobs);

  for (std::size_t row = 0; row < m; ++row) {
    if (inBasis[row]) continue;
    const auto& a = rows[row];
    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg, zer;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(a, rays[r].v);
      const int s = sgn(val[r]);
      (s > 0 ? pos : (s < 0 ? neg : zer)).push_back(r);
    }
    if (neg.empty()) {
      for (auto r : zer) rays[r].zero.set(row);
      continue;
    }

    std::vector<Candidate> pairs;
    pairs.reserve(pos.size() * neg.size());
    for (auto p : pos)
      for (auto q : neg) pairs.push_back({p, q});

    auto process = [&](std::size_t begin, std::size_t end, std::vector<DdRay>& out) {
      for (std::size_t k = begin; k < end; ++k) {
        const auto [p, q] = pairs[k];
        Bitset common = rays[p].zero & rays[q].zero;
        if (common.count() + 2 < d) continue;
        if (!adjacent(rays, p, q, common)) continue;
        IntVector w(d);
        for (std::size_t i = 0; i < d; ++i) w[i] = val[p] * rays[q].v[i] - val[q] * rays[p].v[i];
        common.set(row);
        out.push_back({primitive(w), std::move(common)});
      }
    };

    std::vector<std::vector<DdRay>> produced(jobs);
    if (jobs == 1 || pairs.size() < 256) {
      process(0, pairs.size(), produced[0]);
    } else {
      std::vector<std::thread> workers;
      const std::size_t chunk = (pairs.size() + jobs - 1) / jobs;
      for (unsigned t = 0; t < jobs; ++t) {
        const std::size_t b = std::min(pairs.size(), t * chunk);
        const std::size_t e = std::min(pairs.size(), b + chunk);
        workers.emplace_back(process, b, e, std::ref(produced[t]));
      }
      for (auto& w : workers) w.join();
    }

    std::vector<DdRay> next;
    next.reserve(pos.size() + zer.size());
    for (std::size_t r = 0; r < rays.size(); ++r) {
      const int s = sgn(val[r]);
      if (s < 0) continue;
      if (s == 0) rays[r].zero.set(row);
      next.push_back(std::move(rays[r]));
    }
    for (auto& chunk : produced)
      for (auto& r : chunk) next.push_back(std::move(r));
    rays = std::move(next);
  }

  std::vector<Ray> out;
  out.reserve(rays.size());
  for (const auto& r : rays) out.emplace_back(r.v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IncidenceStructure incidence(const HDescription& h, const std::vector<Ray>& rays) {
  IncidenceStructure inc;
  inc.rays = rays;
  inc.rows = h.labels();
  inc.tight.assign(rays.size(), std::vector<bool>(h.size(), false));
  for (std::size_t r = 0; r < rays.size(); ++r) {
    if (rays[r].size() != h.dim()) throw DimensionError("ray length does not match cone dimension");
    for (std::size_t f = 0; f < h.size(); ++f) {
      const int s = dot(h.row(f).coeffs, rays[r].direction()).sign();
      if (s < 0)
        throw NotAMemberError("ray " + toString(rays[r].direction()) + " violates row '" +
                              h.row(f).label + "'");
      inc.tight[r][f] = (s == 0);
    }
  }
  return inc;
}

namespace {

bool rowIsFacet(const HDescription& h, std::size_t f, const std::vector<Ray>& rays) {
  std::vector<IntVector> tight;
  for (const auto& r : rays)
    if (dot(h.row(f).coeffs, r.direction()).isZero()) tight.push_back(r.direction());
  return h.dim() >= 1 && rank(std::span<const IntVector>(tight)) + 1 == h.dim();
}

} // namespace

bool isFacet(const HDescription& h, const std::string& label, const std::vector<Ray>& rays) {
  return rowIsFacet(h, h.indexOf(label), rays);
}

std::vector<bool> facetMask(const HDescription& h, const std::vector<Ray>& rays) {
  std::vector<bool> mask(h.size());
  for (std::size_t f = 0; f < h.size(); ++f) mask[f] = rowIsFacet(h, f, rays);
  return mask;
}

bool isFullDimensional(const HDescription& h, const std::vector<Ray>& rays) {
  std::vector<IntVector> dirs;
  for (const auto& r : rays) dirs.push_back(r.direction());
  return rank(std::span<const IntVector>(dirs)) == h.dim();
}

QVector interiorPoint(const HDescription& h, const std::vector<Ray>& rays) {
  if (!isFullDimensional(h, rays)) throw DegenerateConeError("cone is not full-dimensional");
  QVector sum(h.dim(), Rational(0));
  for (const auto& r : rays)
    for (std::size_t i = 0; i < h.dim(); ++i) sum[i] += Rational(r[i]);
  return sum;
}

std::vector<std::string> exactSet(const HDescription& h, const QVector& x) {
  if (x.size() != h.dim()) throw DimensionError("point length does not match cone dimension");
  std::vector<std::string> out;
  for (const auto& r : h.rows()) {
    const int s = dot(r.coeffs, x).sign();
    if (s < 0) throw NotAMemberError("point violates row '" + r.label + "'");
    if (s == 0) out.push_back(r.label);
  }
  return out;
}

std::vector<std::string> exactSet(const HDescription& h, const IntVector& x) {
  return exactSet(h, toRational(x));
}

HDescription polarDescription(const std::vector<Ray>& rays) {
  if (rays.empty()) throw DomainError("polar of an empty ray set");
  std::vector<HRow> rows;
  for (std::size_t i = 0; i < rays.size(); ++i)
    rows.push_back({"ray" + std::to_string(i), toRational(rays[i].direction())});
  return HDescription(rays.front().size(), std::move(rows));
}

bool raysGenerateCone(const HDescription& h, const std::vector<Ray>& rays, const DdOptions& options) {
  for (const auto& r : rays)
    if (!isMember(h, r.direction())) return false;
  const auto normals = ddExtremeRays(polarDescription(rays), options);
  std::vector<Ray> rowRays;
  for (const auto& r : h.rows()) rowRays.emplace_back(r.coeffs);
  std::sort(rowRays.begin(), rowRays.end());
  for (const auto& nrm : normals)
    if (!std::binary_search(rowRays.begin(), rowRays.end(), nrm)) return false;
  return true;
}

} // namespace qsm
