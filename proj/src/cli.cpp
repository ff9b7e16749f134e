#include "qsm/cli.hpp"

#include <algorithm>
#include <iostream>
#include <set>

#include "CLI11.hpp"

#include "qsm/errors.hpp"
#include "qsm/io.hpp"
#include "qsm/maxtools.hpp"
#include "qsm/qmet.hpp"
#include "qsm/report.hpp"
#include "qsm/symmetry.hpp"

namespace qsm::cli {

namespace {

using io::Json;

struct Config {
  std::uint64_t budget = qmet::kDefaultBudget;
  unsigned jobs = 1;
  std::string format = "text";
  std::size_t n = 3;
  std::string method = "incidence";
  std::string file;
  long k = 1;
  bool verify = false;
  long bound = -1;
  std::string oracle;
  bool transitive = false;
};

bool json(const Config& c) { return c.format == "json"; }

void printChecks(std::ostream& out, const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    out << (c.passed ? "[pass] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << '\n';
  }
}

std::string joined(const std::vector<std::string>& items) {
  std::string s;
  for (const auto& x : items) s += (s.empty() ? "" : " ") + x;
  return s;
}

int exitFor(bool ok) { return ok ? kOk : kCheckFailed; }

// Greedy generators from a sorted element list.
std::vector<GroupElement> generatorsOf(std::vector<GroupElement> elements) {
  std::sort(elements.begin(), elements.end());
  std::vector<GroupElement> gens;
  if (elements.empty()) return gens;
  std::set<GroupElement> closure{GroupElement::identity(elements.front().n())};
  for (const auto& g : elements) {
    if (closure.count(g)) continue;
    gens.push_back(g);
    std::vector<GroupElement> frontier(closure.begin(), closure.end());
    while (!frontier.empty()) {
      std::vector<GroupElement> next;
      for (const auto& x : frontier)
        for (const auto& s : gens) {
          auto y = s * x;
          if (closure.insert(y).second) next.push_back(y);
        }
      frontier = std::move(next);
    }
  }
  return gens;
}

int cmdFacets(const Config& c, std::ostream& out) {
  const auto h = qmet::buildH(c.n);
  const auto mask = qmet::certifiedFacets(c.n);
  const auto facets = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
  const std::size_t alt = c.n * c.n * (c.n - 1) / 2;
  const bool ok = facets == h.size() && h.size() == qmet::rowCount(c.n);
  const std::string note = "the alternative count n^2(n-1)/2 = " + std::to_string(alt) +
                           " sometimes quoted does not match the row census";
  if (json(c)) {
    Json rows = Json::array();
    for (std::size_t f = 0; f < h.size(); ++f) rows.push_back({{"label", h.row(f).label}, {"facet", bool(mask[f])}});
    out << Json{{"n", c.n}, {"rows", h.size()}, {"facets", facets}, {"certificate", "interior witness"},
                {"labels", rows}, {"note", note}}
               .dump(2)
        << '\n';
  } else {
    out << "rows: " << h.size() << "\n";
    out << "facets: " << facets << " (each certified by an interior witness)\n";
    out << "note: " << note << "\n";
    for (std::size_t f = 0; f < h.size(); ++f)
      if (!mask[f]) out << "not certified: " << h.row(f).label << "\n";
  }
  return exitFor(ok);
}

int cmdRays(const Config& c, std::ostream& out) {
  const auto h = qmet::buildH(c.n);
  const auto rays = ddExtremeRays(h, DdOptions{c.jobs});
  if (json(c)) {
    out << io::raysToJson(h.dim(), rays).dump(2) << '\n';
  } else {
    out << "extreme rays: " << rays.size() << "\n";
    for (const auto& r : rays) out << toString(r.direction()) << "\n";
  }
  return kOk;
}

int cmdIncidence(const Config& c, std::ostream& out) {
  const auto h = qmet::buildH(c.n);
  const auto inc = incidence(h, ddExtremeRays(h, DdOptions{c.jobs}));
  if (json(c)) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < inc.rays.size(); ++r) {
      std::string bits;
      for (bool t : inc.tight[r]) bits += t ? '1' : '0';
      rows.push_back({{"ray", Json::array()}, {"tight", bits}});
      for (const auto& v : inc.rays[r].direction()) rows.back()["ray"].push_back(v.get_si());
    }
    out << Json{{"n", c.n}, {"rows", inc.rows}, {"incidence", rows}}.dump(2) << '\n';
  } else {
    out << "rays: " << inc.rays.size() << ", rows: " << inc.rows.size() << "\n";
    for (std::size_t r = 0; r < inc.rays.size(); ++r) {
      out << toString(inc.rays[r].direction()) << " ";
      for (bool t : inc.tight[r]) out << (t ? '1' : '0');
      out << " " << inc.tightCount(r) << "\n";
    }
  }
  return kOk;
}

int cmdAutgroup(const Config& c, std::ostream& out) {
  const Integer want = [&] {
    Integer f = 2;
    for (std::size_t i = 2; i <= c.n; ++i) f *= static_cast<unsigned long>(i);
    return f;
  }();
  if (c.method == "lines") {
    auto cert = symmetry::autGroupViaLines(c.n);
    const auto gens = generatorsOf(cert.elements);
    const bool ok = cert.order == want && allPassed(cert.checks);
    if (json(c)) {
      auto j = io::certificateToJson(cert);
      j["generators"] = Json::array();
      for (const auto& g : gens) j["generators"].push_back(io::elementToJson(g));
      out << j.dump(2) << '\n';
    } else {
      out << "method: lines\norder: " << cert.order.get_str() << "\n";
      for (const auto& g : gens) out << "generator: " << g.toString() << "\n";
      printChecks(out, cert.checks);
      out << "condition: " << cert.condition << "\n";
    }
    return exitFor(ok);
  }
  const auto h = qmet::buildH(c.n);
  const auto inc = incidence(h, ddExtremeRays(h, DdOptions{c.jobs}));
  const auto aut = symmetry::autGroupIncidence(inc, c.budget);
  // Name each generator by the group element inducing its row action.
  std::vector<std::pair<GroupElement, symmetry::FacetPermutation>> induced;
  for (const auto& g : GroupElement::all(c.n)) induced.emplace_back(g, symmetry::inducedFacetPermutation(g, c.n));
  std::vector<std::string> names;
  const auto actions = symmetry::rowActions(aut, inc);
  const auto genActions = [&] {
    std::vector<Permutation> out;
    const std::size_t rays = inc.rays.size();
    for (const auto& gen : aut.generators) {
      Permutation p;
      for (std::size_t f = 0; f < inc.rows.size(); ++f) p.push_back(gen[rays + f] - rays);
      out.push_back(p);
    }
    return out;
  }();
  for (const auto& p : genActions) {
    auto it = std::find_if(induced.begin(), induced.end(), [&](const auto& e) { return e.second.image == p; });
    names.push_back(it != induced.end() ? it->first.toString() : "row permutation " + cycleString(p));
  }
  const bool ok = aut.order == want && actions.size() == aut.elements.size();
  if (json(c)) {
    out << Json{{"method", "incidence"}, {"n", c.n}, {"order", aut.order.get_str()}, {"generators", names},
                {"searchNodes", aut.nodes}}
               .dump(2)
        << '\n';
  } else {
    out << "method: incidence\norder: " << aut.order.get_str() << "\n";
    for (const auto& s : names) out << "generator: " << s << "\n";
  }
  return exitFor(ok);
}

std::pair<qmet::RawMatrix, qmet::MembershipReport> readMatrix(const Config& c) {
  auto m = io::matrixFromJson(io::readFile(c.file));
  return {m, qmet::isQuasiSemimetric(m)};
}

int cmdMember(const Config& c, std::ostream& out) {
  auto [m, rep] = readMatrix(c);
  std::vector<std::string> exact;
  if (rep.member) exact = exactSet(qmet::buildH(m.n()), m.toVector());
  if (json(c)) {
    out << Json{{"member", rep.member}, {"exact", exact}, {"violated", rep.violated}}.dump(2) << '\n';
  } else if (rep.member) {
    out << "member: true; exact rows: " << joined(exact) << "\n";
  } else {
    out << "member: false; violated rows: " << joined(rep.violated) << "\n";
  }
  return exitFor(rep.member);
}

int cmdExactset(const Config& c, std::ostream& out) {
  auto [m, rep] = readMatrix(c);
  if (!rep.member) {
    out << "not a member; violated rows: " << joined(rep.violated) << "\n";
    return kCheckFailed;
  }
  const auto exact = exactSet(qmet::buildH(m.n()), m.toVector());
  if (json(c)) out << Json{{"exact", exact}}.dump(2) << '\n';
  else out << "exact rows: " << joined(exact) << "\n";
  return kOk;
}

std::string qString(const QVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].toString();
  return s + ")";
}

int cmdMaxclosed(const Config& c, std::ostream& out) {
  const auto h = io::coneFromJson(io::readFile(c.file));
  const auto rays = ddExtremeRays(h, DdOptions{c.jobs});
  const auto res = maxtools::isMaxClosed(h, rays);
  if (json(c)) {
    Json j{{"maxClosed", res.maxClosed}, {"redundantRows", res.redundantRows}};
    if (res.violatingRow) j["violatingRow"] = *res.violatingRow;
    if (res.witness) {
      Json w;
      for (const auto* key : {"plus", "minus", "max"}) {
        const QVector& v = std::string(key) == "plus" ? res.witness->plus
                           : std::string(key) == "minus" ? res.witness->minus
                                                         : res.witness->max;
        Json arr = Json::array();
        for (const auto& x : v) arr.push_back(x.toString());
        w[key] = arr;
      }
      w["value"] = res.witness->value.toString();
      w["verified"] = res.witness->verified;
      j["witness"] = w;
    }
    out << j.dump(2) << '\n';
  } else {
    out << "max-closed: " << (res.maxClosed ? "true" : "false") << "\n";
    if (!res.redundantRows.empty()) out << "redundant rows ignored: " << joined(res.redundantRows) << "\n";
    if (res.violatingRow) out << "violating row: " << *res.violatingRow << "\n";
    if (res.witness) {
      const auto& w = *res.witness;
      out << "witness: " << qString(w.plus) << " and " << qString(w.minus) << " have max " << qString(w.max)
          << " with row value " << w.value.toString() << (w.verified ? " (verified)" : " (NOT verified)") << "\n";
      out << "note: z is taken signed, z_r = -a_s and z_s = a_r\n";
    }
  }
  return exitFor(res.maxClosed);
}

int cmdVeryfull(const Config& c, std::ostream& out) {
  const auto h = io::coneFromJson(io::readFile(c.file));
  const auto res = maxtools::isVeryFull(h, ddExtremeRays(h, DdOptions{c.jobs}));
  if (json(c)) {
    Json j{{"veryFull", res.veryFull}, {"membersAgree", res.membersAgree}, {"redundantRows", res.redundantRows}};
    if (res.violatingRow) j["violatingRow"] = *res.violatingRow;
    out << j.dump(2) << '\n';
  } else {
    out << "very full: " << (res.veryFull ? "true" : "false") << "\n";
    if (res.violatingRow) out << "violating row: " << *res.violatingRow << "\n";
    if (!res.membersAgree) out << "warning: membership of 1 +- e_i disagrees with the row test\n";
  }
  return exitFor(res.veryFull && res.membersAgree);
}

int cmdCk(const Config& c, std::ostream& out) {
  const auto h = maxtools::ckCone(c.k);
  if (!c.verify) {
    if (json(c)) out << io::coneToJson(h).dump(2) << '\n';
    else
      for (const auto& row : h.rows()) out << row.label << ": " << qString(row.coeffs) << " . x >= 0\n";
    return kOk;
  }
  const long bound = c.bound < 0 ? 4 * (c.k + 1) : c.bound;
  const auto rep = maxtools::ckVerify(c.k, bound, c.budget);
  if (json(c)) {
    out << Json{{"k", rep.k},
                {"bound", rep.bound},
                {"members", rep.members},
                {"p", rep.p},
                {"q", rep.q},
                {"pCovers", io::pointsToJson(rep.pCovers.covers)},
                {"pCoveredBy", io::pointsToJson(rep.pCovers.coveredBy)},
                {"qCovers", io::pointsToJson(rep.qCovers.covers)},
                {"qCoveredBy", io::pointsToJson(rep.qCovers.coveredBy)},
                {"checks", io::checksToJson(rep.checks)}}
               .dump(2)
        << '\n';
  } else {
    out << "C_" << rep.k << " in the box [0," << rep.bound << "]^2: " << rep.members << " members\n";
    printChecks(out, rep.checks);
  }
  return exitFor(rep.passed());
}

int cmdRecover(const Config& c, std::ostream& out) {
  const long bound = c.bound < 0 ? 3 : c.bound;
  const bool named = c.oracle == "identity" || c.oracle == "transpose" || c.oracle.rfind("ck-swap:", 0) == 0 ||
                     c.oracle.rfind("layered:", 0) == 0;
  const auto oracle = named ? box::namedOracle(c.oracle, c.n, bound) : io::oracleFromJson(io::readFile(c.oracle));
  maxtools::RecoveryOptions opt;
  opt.transitiveSymmetry = c.transitive;
  opt.budget = c.budget;
  const auto rec = maxtools::recoverPermutation(oracle, opt);
  const bool ok = rec.outcome == maxtools::Recovery::Outcome::Permutational;
  if (json(c)) {
    Json j{{"oracle", oracle.name()},
           {"bound", rec.bound},
           {"outcome", maxtools::outcomeName(rec.outcome)},
           {"hypotheses", io::checksToJson(rec.hypotheses)},
           {"steps", io::checksToJson(rec.steps)},
           {"notes", rec.notes},
           {"fixedMultiples", rec.fixedMultiples}};
    if (rec.pi) {
      Json p = Json::array();
      for (auto v : *rec.pi) p.push_back(v + 1);
      j["pi"] = p;
    }
    if (rec.witness) {
      j["witness"] = *rec.witness;
      j["witnessReason"] = rec.witnessReason;
    }
    if (rec.fixedMultiple) j["fixedRoute"] = rec.fixedRoute;
    out << j.dump(2) << '\n';
  } else {
    out << "oracle: " << oracle.name() << ", box bound " << rec.bound << ", " << oracle.domain().size()
        << " points\n";
    out << "outcome: " << maxtools::outcomeName(rec.outcome) << "\n";
    if (rec.pi) {
      out << "pi:";
      for (std::size_t i = 0; i < rec.pi->size(); ++i) out << ' ' << i + 1 << "->" << (*rec.pi)[i] + 1;
      out << "\n";
    }
    if (rec.witness) out << "witness: " << box::toString(*rec.witness) << " (" << rec.witnessReason << ")\n";
    if (rec.fixedMultiple) out << "fixed multiple of 1: " << *rec.fixedMultiple << " via " << rec.fixedRoute << "\n";
    out << "hypotheses:\n";
    printChecks(out, rec.hypotheses);
    out << "steps:\n";
    printChecks(out, rec.steps);
    for (const auto& note : rec.notes) out << "note: " << note << "\n";
  }
  return exitFor(ok);
}

int cmdPsi(const Config& c, std::ostream& out) {
  const auto rep = maxtools::psiExampleVerify();
  if (json(c)) {
    out << Json{{"rays", io::raysToJson(3, rep.rays)["rays"]},
                {"psiOfMax", toString(rep.psiOfMax)},
                {"maxOfPsi", toString(rep.maxOfPsi)},
                {"checks", io::checksToJson(rep.checks)}}
               .dump(2)
        << '\n';
  } else {
    printChecks(out, rep.checks);
  }
  return exitFor(rep.passed());
}

int cmdReport(const Config& c, std::ostream& out) {
  report::Options opt;
  opt.budget = c.budget;
  opt.jobs = c.jobs;
  const auto crits = report::run(c.n, opt);
  bool ok = true;
  for (const auto& cr : crits) ok = ok && cr.status != report::Status::Fail;
  if (json(c)) {
    Json arr = Json::array();
    for (const auto& cr : crits)
      arr.push_back({{"criterion", cr.number},
                     {"title", cr.title},
                     {"status", report::statusName(cr.status)},
                     {"checks", io::checksToJson(cr.checks)},
                     {"note", cr.note}});
    out << Json{{"n", c.n}, {"criteria", arr}}.dump(2) << '\n';
  } else {
    for (const auto& cr : crits) {
      out << report::statusName(cr.status) << " " << cr.number << ". " << cr.title;
      if (!cr.note.empty()) out << " (" << cr.note << ")";
      out << "\n";
      for (const auto& ch : cr.checks)
        if (!ch.passed) out << "    failed: " << ch.name << (ch.detail.empty() ? "" : ": " + ch.detail) << "\n";
    }
  }
  return exitFor(ok);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Quasi-semimetric cone toolkit", "qsm"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--budget", c.budget, "node budget for enumerations and searches")->check(CLI::PositiveNumber);
  app.add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));

  auto needN = [&](CLI::App* sub) { sub->add_option("-n", c.n, "number of points")->required()->check(CLI::Range(3, 64)); };
  auto* facets = app.add_subcommand("facets", "row census and facet certification");
  needN(facets);
  auto* rays = app.add_subcommand("rays", "extreme rays by double description");
  needN(rays);
  auto* inc = app.add_subcommand("incidence", "ray/facet incidence");
  needN(inc);
  auto* aut = app.add_subcommand("autgroup", "combinatorial symmetry group");
  needN(aut);
  aut->add_option("--method", c.method)->check(CLI::IsMember({"incidence", "lines"}));
  auto* member = app.add_subcommand("member", "membership of an exponent matrix file");
  member->add_option("file", c.file)->required();
  auto* exact = app.add_subcommand("exactset", "rows satisfied exactly by an exponent matrix file");
  exact->add_option("file", c.file)->required();
  auto* maxc = app.add_subcommand("maxclosed", "max-closedness of a cone file");
  maxc->add_option("file", c.file)->required();
  auto* vfull = app.add_subcommand("veryfull", "very-fullness of a cone file");
  vfull->add_option("file", c.file)->required();
  auto* ck = app.add_subcommand("ck", "the cones C_k");
  ck->add_option("-k", c.k)->required()->check(CLI::PositiveNumber);
  ck->add_flag("--verify", c.verify);
  ck->add_option("--bound", c.bound);
  auto* rec = app.add_subcommand("recover-perm", "recover the permutation of a max-automorphism oracle");
  rec->add_option("--oracle", c.oracle, "oracle file or identity|transpose|ck-swap:k|layered:d")->required();
  rec->add_option("--bound", c.bound);
  rec->add_option("-n", c.n, "points for the identity and transpose oracles")->check(CLI::Range(3, 64));
  rec->add_flag("--transitive", c.transitive, "declare a transitive symmetry (use the minimal-element route)");
  auto* psi = app.add_subcommand("psi-example", "additive automorphism that does not preserve max");
  auto* rep = app.add_subcommand("report", "one-shot acceptance checks at size n");
  needN(rep);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*facets) return cmdFacets(c, out);
    if (*rays) return cmdRays(c, out);
    if (*inc) return cmdIncidence(c, out);
    if (*aut) return cmdAutgroup(c, out);
    if (*member) return cmdMember(c, out);
    if (*exact) return cmdExactset(c, out);
    if (*maxc) return cmdMaxclosed(c, out);
    if (*vfull) return cmdVeryfull(c, out);
    if (*ck) return cmdCk(c, out);
    if (*rec) return cmdRecover(c, out);
    if (*psi) return cmdPsi(c, out);
    if (*rep) return cmdReport(c, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

} // namespace qsm::cli
