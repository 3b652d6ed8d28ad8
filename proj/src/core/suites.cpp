#include "suites.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>

#include "comparison.hpp"
#include "extension.hpp"
#include "generate.hpp"

namespace simpson {

namespace {

using Job = std::function<InstanceResult(Rng&)>;

uint64_t splitmix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

void check(InstanceResult& r, const std::string& name, const std::string& anchor, bool pass, const std::string& detail = {}) {
  r.properties.push_back(PropertyResult{name, anchor, pass, detail});
}

void floor_of(InstanceResult& r, const Mat& m) { r.min_floor = std::min(r.min_floor, m.min_floor()); }

json higgs_instance(const SuiteConfig& cfg, const HiggsModule& H) {
  Instance inst{cfg.ring, ChartParams{H.d(), 0, 1, 1}, H, std::nullopt, json()};
  return to_json(inst);
}

json rep_instance(const SuiteConfig& cfg, const GammaRep& M) {
  Instance inst{cfg.ring, ChartParams{M.d(), 0, 1, 1}, std::nullopt, M, json()};
  return to_json(inst);
}

std::string count_detail(int k, int n) { return std::to_string(k) + "/" + std::to_string(n); }

// ---------------------------------------------------------------------------

std::vector<Job> correspondence_jobs(const SuiteConfig& cfg) {
  const int n = cfg.instances ? cfg.instances : 100;
  const int heavy = cfg.heavy ? cfg.heavy : 3;
  std::vector<Job> jobs;
  for (int i = 0; i < n; ++i)
    jobs.push_back([&cfg, i, heavy](Rng& rng) {
      const Ring& R = Ring::get(cfg.ring);
      const int g = R.e() - R.guard();
      const int d = cfg.chart.d;
      InstanceResult r;
      r.min_floor = R.e();
      HiggsModule H = make_higgs(random_commuting_small(R, cfg.rank, d, rng));
      r.instance = higgs_instance(cfg, H);
      GammaRep M = rep_from_higgs(H);
      M.witness.reset();
      HiggsModule H2 = higgs_from_rep(M);
      bool same = true;
      for (int k = 0; k < d; ++k) {
        same = same && H2.theta[k].equals_mod(H.theta[k], g);
        floor_of(r, H2.theta[k]);
      }
      check(r, "higgs -> rep -> higgs", "local Simpson functors are quasi-inverse (Higgs side)", same);
      GammaRep N{&R, cfg.rank, random_small_rep(R, cfg.rank, d, rng), std::nullopt};
      GammaRep N2 = rep_from_higgs(higgs_from_rep(N));
      same = true;
      for (int k = 0; k < d; ++k) {
        same = same && N2.A[k].equals_mod(N.A[k], g);
        floor_of(r, N2.A[k]);
      }
      r.instance["rep_side"] = rep_instance(cfg, N)["gamma"];
      check(r, "rep -> higgs -> rep", "local Simpson functors are quasi-inverse (representation side)", same);
      if (i < heavy) {
        check(r, "H^0 on M (x) P equals exp(sum theta_i Y_i)(M)", "degree-0 invariants are the flat closed-form module",
              h0_matches_closed_form(H, cfg.D, 3), "pd-degree <= D-3");
        check(r, "H^q, q >= 1, killed by rho_K(zeta_p - 1)", "higher group cohomology of M (x) P is c-torsion",
              higher_cohomology_killed(rep_from_higgs(H), cfg.D, c_const(R), torsion_slack(d)),
              "pd-degree <= D-" + std::to_string(torsion_slack(d)));
      }
      return r;
    });
  return jobs;
}

std::vector<Job> h1_jobs(const SuiteConfig& cfg) {
  const int n = cfg.instances ? cfg.instances : 3;
  std::vector<Job> jobs;
  for (int i = 0; i < n; ++i)
    jobs.push_back([&cfg](Rng& rng) {
      const Ring& R = Ring::get(cfg.ring);
      InstanceResult r;
      r.min_floor = R.e();
      HiggsModule H = make_higgs(random_commuting_small(R, cfg.rank, cfg.chart.d, rng));
      r.instance = higgs_instance(cfg, H);
      auto rep = h1_scaling_check(H, cfg.D, rng.next(), cfg.samples);
      check(r, "comparison image inside rho_K(zeta_p - 1) H^1(Gamma, M)", "H^1 comparison scales by rho_K(zeta_p - 1)",
            rep.image_in_scaled);
      check(r, "rho_K(zeta_p - 1) H^1(Gamma, M) inside comparison image", "H^1 comparison scales by rho_K(zeta_p - 1)",
            rep.scaled_in_image);
      check(r, "v(omega): (gamma_i - 1) m(omega) equals closed formula", "two computations of the comparison cocycle agree",
            rep.agreeing == rep.samples, count_detail(rep.agreeing, rep.samples));
      return r;
    });
  return jobs;
}

std::vector<Job> twist_eta_jobs(const SuiteConfig& cfg) {
  const int n = cfg.instances ? cfg.instances : 50;
  std::vector<Job> jobs;
  for (int i = 0; i < n; ++i)
    jobs.push_back([&cfg](Rng& rng) {
      const Ring& R = Ring::get(cfg.ring);
      InstanceResult r;
      r.min_floor = R.e();
      HiggsModule H = make_higgs(random_commuting_small(R, cfg.rank, cfg.chart.d, rng));
      r.instance = higgs_instance(cfg, H);
      auto rep = twist_eta_check(H);
      check(r, "eta^q = (zeta_p - 1)^q DR^q", "decalage of the twisted de Rham complex", rep.spans_match);
      check(r, "y -> (zeta_p - 1)^q y commutes with differentials", "decalage recovers the untwisted de Rham complex",
            rep.commutes);
      check(r, "induced differential matches generators", "decalage is a complex", rep.induced_matches);
      return r;
    });
  return jobs;
}

std::vector<Job> cone_jobs(const SuiteConfig& cfg) {
  const int n = cfg.instances ? cfg.instances : 5;
  std::vector<Job> jobs;
  for (int i = 0; i < n; ++i)
    jobs.push_back([&cfg](Rng& rng) {
      const Ring& R = Ring::get(cfg.ring);
      InstanceResult r;
      r.min_floor = R.e();
      HiggsModule H = make_higgs(random_commuting_small(R, cfg.rank, cfg.chart.d, rng));
      r.instance = higgs_instance(cfg, H);
      auto rep = cone_torsion_check(H);
      check(r, "comparison map is a chain map", "de Rham to group cohomology comparison map", rep.chain_map);
      check(r, "cone killed by (rho_K(zeta_p - 1))^max(d+1, 2(d-1))", "bounded torsion of the comparison cofiber",
            rep.minimal >= 0,
            "bound " + std::to_string(rep.bound) + ", least exponent " + std::to_string(rep.minimal));
      r.instance["cone_profile"] = to_json(rep.profile);
      return r;
    });
  return jobs;
}

std::vector<Job> poincare_jobs(const SuiteConfig& cfg) {
  std::vector<Job> jobs;
  for (int d = 1; d <= cfg.chart.d; ++d)
    jobs.push_back([&cfg, d](Rng&) {
      const Ring& R = Ring::get(cfg.ring);
      InstanceResult r;
      r.min_floor = R.e();
      r.instance = json{{"d", d}, {"D", cfg.D}};
      FreeComplex C = poincare_complex(R, d, cfg.D);
      check(r, "d^2 = 0", "truncated Higgs complex of the period ring", C.is_complex());
      Mat one(R, C.ranks[0], 1);
      one(0, 0) = R.one();
      check(r, "H^0 = constants", "Poincare lemma: kernel of Theta is the base ring",
            same_column_span(kernel(C.diff[0]), one));
      auto prof = cohomology(C);
      bool neg = true;
      for (int q = 1; q <= C.top(); ++q) neg = neg && prof.degrees[q].negligible();
      check(r, "H^q, 1 <= q <= d, precision-negligible", "Poincare lemma: the Higgs complex is exact", neg);
      r.instance["profile"] = to_json(prof);
      return r;
    });
  return jobs;
}

std::vector<Job> sz_jobs(const SuiteConfig& cfg) {
  std::vector<Job> jobs;
  const int fmax = std::max(1, cfg.rank + 1);
  for (int f = 1; f <= fmax; ++f)
    for (int gr = 1; gr <= f; ++gr)
      for (int n = 1; n <= 3; ++n)
        jobs.push_back([&cfg, f, gr, n](Rng& rng) {
          const Ring& R = Ring::get(cfg.ring);
          InstanceResult r;
          r.min_floor = R.e();
          Mat proj(R, gr, f);
          for (int i = 0; i < gr; ++i) proj(i, i) = R.one();
          Mat v = proj * random_invertible(R, f, rng);
          r.instance = json{{"v", to_json(v)}, {"n", n}};
          auto rep = sz_exactness_check(make_sz(v, n));
          check(r, "d^2 = 0", "divided powers of a short exact sequence form a complex", rep.squares_to_zero);
          check(r, "exact in every degree", "divided powers of a short exact sequence are exact", rep.exact);
          r.instance["ranks"] = rep.ranks;
          return r;
        });
  return jobs;
}

std::vector<Job> extension_jobs(const SuiteConfig& cfg) {
  std::vector<Job> jobs;
  jobs.push_back([&cfg](Rng& rng) {
    const Ring& R = Ring::get(cfg.ring);
    InstanceResult r;
    r.min_floor = R.e();
    r.instance = json{{"chart", to_json(cfg.chart)}};
    auto ses = ext_ses_check(R, cfg.chart, rng.next(), 20);
    check(r, "Gamma action law", "Gamma acts on the Faltings extension", ses.action_law);
    check(r, "0 -> R -> E -> Omega{-1} -> 0 exact", "Faltings extension is a short exact sequence",
          ses.injective && ses.pr_after_i_zero && ses.kernel_is_image && ses.pr_of_y);
    check(r, "i and pr are Gamma-equivariant", "Faltings extension is Gamma-equivariant", ses.equivariant);
    for (int j = 1; j <= cfg.chart.d; ++j) {
      auto obs = ext_splitting_obstruction(R, cfg.chart, j);
      check(r, "no equivariant splitting in direction " + std::to_string(j), "Faltings extension does not split",
            !obs.solvable && !obs.obstruction_val.precision_zero, "obstruction valuation " + obs.obstruction_val.str());
    }
    return r;
  });
  jobs.push_back([&cfg](Rng& rng) {
    const Ring& R = Ring::get(cfg.ring);
    InstanceResult r;
    r.min_floor = R.e();
    const int D = cfg.D;
    r.instance = json{{"d", cfg.chart.d}, {"D", D}};
    auto pa = derive_period_algebra(R, cfg.chart.d, D, rng.next(), 10);
    check(r, "e maps to zeta_p - 1", "period algebra from the Faltings extension", pa.e_maps_to_z1);
    check(r, "kernel is the pd ideal of e - (zeta_p - 1)", "period algebra is a quotient of Gamma(E+)",
          pa.kernel_is_ideal && pa.dims_match,
          std::to_string(pa.dim_source) + " - " + std::to_string(pa.dim_ideal) + " = " + std::to_string(pa.dim_target));
    check(r, "multiplicative", "period algebra map is a ring map", pa.ring_map);
    check(r, "Gamma transport", "period algebra map is Gamma-equivariant", pa.gamma_transport);
    check(r, "Theta transport", "period algebra map intertwines the Higgs fields", pa.theta_transport);
    return r;
  });
  return jobs;
}

std::vector<Job> decompletion_jobs(const SuiteConfig& cfg) {
  const int n = cfg.instances ? cfg.instances : 5;
  std::vector<Job> jobs;
  for (int i = 0; i < n; ++i)
    jobs.push_back([&cfg](Rng& rng) {
      const Ring& R = Ring::get(cfg.ring);
      InstanceResult r;
      r.min_floor = R.e();
      HiggsModule H = make_higgs(random_commuting_small(R, cfg.rank, cfg.chart.d, rng));
      r.instance = higgs_instance(cfg, H);
      ChartParams ch = cfg.chart;
      ch.lvl = 1;
      int total = 0, unit = 0, coker = 0, ident = 0, h0 = 0, cong = 0;
      for (const auto& alpha : all_perf_indices(ch, R)) {
        if (std::all_of(alpha.begin(), alpha.end(), [](int a) { return a == 0; })) continue;
        auto rep = decompletion_component_check(H, alpha, 1, ch.r);
        ++total;
        unit += rep.unit_invertible;
        coker += rep.cokernel_killed;
        ident += rep.identity_holds;
        h0 += rep.h0_vanishes;
        cong += rep.u_congruent_one;
      }
      check(r, "zeta^beta A - 1 = (zeta^beta - 1) U", "decompletion unit factorisation", ident == total, count_detail(ident, total));
      check(r, "U invertible and U = 1 mod pi", "decompletion unit is a unit", unit == total && cong == total,
            count_detail(std::min(unit, cong), total));
      check(r, "alpha-components have no invariants", "non-integral components vanish in degree 0", h0 == total,
            count_detail(h0, total));
      check(r, "alpha-component cohomology killed by zeta_p - 1", "non-integral components are (zeta_p - 1)-torsion",
            coker == total, count_detail(coker, total));
      return r;
    });
  return jobs;
}

std::vector<Job> hitchin_jobs(const SuiteConfig& cfg) {
  const int n = cfg.instances ? cfg.instances : 20;
  std::vector<Job> jobs;
  for (int i = 0; i < n; ++i)
    jobs.push_back([&cfg](Rng& rng) {
      const Ring& R = Ring::get(cfg.ring);
      InstanceResult r;
      r.min_floor = R.e();
      HiggsModule H = twist(make_higgs(random_commuting_small(R, cfg.rank, cfg.chart.d, rng)), TwistDirection::twist);
      r.instance = higgs_instance(cfg, H);
      check(r, "small presentation lies in the Hitchin-small locus", "Hitchin-small locus contains small Higgs fields",
            in_small_locus(H));
      return r;
    });
  // expected negatives: c_1 = zeta_p - 1, and c_2 = -(zeta_p - 1)^2 with c_1 = 0
  jobs.push_back([&cfg](Rng&) {
    const Ring& R = Ring::get(cfg.ring);
    InstanceResult r;
    r.min_floor = R.e();
    HiggsModule H = make_higgs({Mat::from_rows(R, {{rho_K(R)}})});
    r.instance = higgs_instance(cfg, H);
    check(r, "theta = (zeta_p - 1) rejected", "Hitchin-small locus needs val(c_k) > k val(zeta_p - 1)", !in_small_locus(H));
    return r;
  });
  jobs.push_back([&cfg](Rng&) {
    const Ring& R = Ring::get(cfg.ring);
    InstanceResult r;
    r.min_floor = R.e();
    RingElt z = rho_K(R);
    HiggsModule H = make_higgs({Mat::from_rows(R, {{R.zero(), R.one()}, {z * z, R.zero()}})});
    r.instance = higgs_instance(cfg, H);
    check(r, "theta^2 = (zeta_p - 1)^2 rejected", "Hitchin-small locus needs val(c_k) > k val(zeta_p - 1)", !in_small_locus(H));
    return r;
  });
  return jobs;
}

std::vector<Job> jobs_for(const SuiteConfig& cfg) {
  const std::string& s = cfg.suite;
  if (s == "correspondence") return correspondence_jobs(cfg);
  if (s == "h1-comparison") return h1_jobs(cfg);
  if (s == "twist-eta") return twist_eta_jobs(cfg);
  if (s == "cone-bound") return cone_jobs(cfg);
  if (s == "poincare") return poincare_jobs(cfg);
  if (s == "sz") return sz_jobs(cfg);
  if (s == "extension") return extension_jobs(cfg);
  if (s == "decompletion") return decompletion_jobs(cfg);
  if (s == "hitchin-locus") return hitchin_jobs(cfg);
  fail(Status::invalid_input, "unknown suite '" + s + "'");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"poincare",     "sz",           "extension",     "correspondence", "decompletion",
                                              "twist-eta",    "h1-comparison", "cone-bound",   "hitchin-locus"};
  return names;
}

void validate_config(const SuiteConfig& cfg) {
  const auto& names = suite_names();
  require(std::find(names.begin(), names.end(), cfg.suite) != names.end(), "unknown suite '" + cfg.suite + "'");
  const Ring& R = Ring::get(cfg.ring);
  validate_chart(cfg.chart, R);
  require(cfg.chart.d <= 2, "desk-scale limit: d <= 2");
  require(cfg.rank >= 1 && cfg.rank <= 3, "desk-scale limit: 1 <= rank <= 3");
  require(cfg.D >= 3 && cfg.D <= 16, "desk-scale limit: 3 <= D <= 16");
  require(cfg.instances >= 0 && cfg.heavy >= 0 && cfg.samples >= 1 && cfg.threads >= 0, "counts must be non-negative");
}

int SuiteReport::exit_code() const {
  switch (status) {
    case Status::ok: return 0;
    case Status::property_violation: return 1;
    case Status::precision_exhausted: return 3;
    default: return 2;
  }
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  validate_config(cfg);
  SuiteReport rep;
  rep.cfg = cfg;
  std::vector<Job> jobs = jobs_for(rep.cfg);
  std::vector<InstanceResult> results(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next++) < jobs.size();) {
      Rng rng(splitmix(cfg.seed ^ splitmix(i + 1)));
      try {
        results[i] = jobs[i](rng);
      } catch (const Error& e) {
        results[i].error = e.code();
        results[i].properties.push_back(PropertyResult{"completed", "instance checks ran to completion", false, e.what()});
      }
      if (results[i].instance.is_null()) results[i].instance = json{{"index", i}};
    }
  };
  unsigned nt = cfg.threads ? static_cast<unsigned>(cfg.threads) : std::max(1u, std::thread::hardware_concurrency());
  nt = std::min<unsigned>(nt, static_cast<unsigned>(jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  bool precision = false, invalid = false;
  for (auto& r : results) {
    r.digest = digest(r.instance);
    for (const auto& p : r.properties) {
      ++rep.checks;
      if (!p.pass) ++rep.violations;
    }
    precision = precision || r.error == Status::precision_exhausted;
    invalid = invalid || r.error == Status::invalid_input;
  }
  std::stable_sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.digest < b.digest; });
  rep.instances = std::move(results);
  if (invalid) rep.status = Status::invalid_input;
  else if (precision) rep.status = Status::precision_exhausted;
  else if (rep.violations) rep.status = Status::property_violation;
  return rep;
}

json to_json(const SuiteReport& r) {
  const Ring& R = Ring::get(r.cfg.ring);
  json inst = json::array();
  int min_floor = R.e();
  for (const auto& i : r.instances) {
    json props = json::array();
    for (const auto& p : i.properties)
      props.push_back(json{{"property", p.name}, {"anchor", p.anchor}, {"pass", p.pass}, {"detail", p.detail}});
    json o{{"digest", i.digest}, {"instance", i.instance}, {"properties", props}, {"min_floor", i.min_floor}};
    if (i.error != Status::ok) o["error"] = status_name(i.error);
    inst.push_back(o);
    min_floor = std::min(min_floor, i.min_floor);
  }
  json cfg{{"suite", r.cfg.suite}, {"ring", to_json(r.cfg.ring)}, {"chart", to_json(r.cfg.chart)}, {"D", r.cfg.D},
           {"rank", r.cfg.rank},   {"seed", r.cfg.seed},          {"instances", r.instances.size()}};
  json audit{{"precision", R.e()},
             {"guard", R.guard()},
             {"trusted_precision", R.e() - R.guard()},
             {"guard_cut_pi", R.degree() * (R.e() - R.guard())},
             {"min_output_floor", min_floor},
             {"floor_ok", min_floor >= R.e() - R.guard()}};
  return json{{"config", cfg},
              {"instances", inst},
              {"audit", audit},
              {"summary", {{"checks", r.checks}, {"violations", r.violations}, {"status", status_name(r.status)}}}};
}

std::string to_text(const SuiteReport& r) {
  std::ostringstream os;
  const Ring& R = Ring::get(r.cfg.ring);
  os << "suite " << r.cfg.suite << "  W(" << R.n() << "," << R.e() << ") p=" << R.p() << " g=" << R.guard() << " d=" << r.cfg.chart.d
     << " rank=" << r.cfg.rank << " D=" << r.cfg.D << " seed=" << r.cfg.seed << "\n";
  for (const auto& i : r.instances)
    for (const auto& p : i.properties)
      if (!p.pass) os << "  FAIL " << i.digest << "  " << p.name << "  [" << p.anchor << "]" << (p.detail.empty() ? "" : "  " + p.detail) << "\n";
  os << r.instances.size() << " instances, " << r.checks << " checks, " << r.violations << " violations: " << status_name(r.status)
     << "\n";
  return os.str();
}

}  // namespace simpson
