#include "simpson_lab.h"

#include <cstring>
#include <string>

#include "comparison.hpp"
#include "json_io.hpp"
#include "suites.hpp"

using namespace simpson;

struct sl_instance {
  Instance inst;
};

namespace {

thread_local std::string last_error;

sl_status to_status(Status s) {
  switch (s) {
    case Status::ok: return SL_OK;
    case Status::invalid_input: return SL_INVALID_INPUT;
    case Status::not_divisible: return SL_NOT_DIVISIBLE;
    case Status::precision_exhausted: return SL_PRECISION_EXHAUSTED;
    case Status::not_small: return SL_NOT_SMALL;
    case Status::non_commuting: return SL_NON_COMMUTING;
    case Status::property_violation: return SL_PROPERTY_VIOLATION;
  }
  return SL_INTERNAL;
}

char* dup(const std::string& s) {
  char* p = new char[s.size() + 1];
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
sl_status guarded(F&& f) {
  last_error.clear();
  try {
    f();
    return SL_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const json::exception& e) {
    last_error = e.what();
    return SL_INVALID_INPUT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SL_INTERNAL;
  }
}

int get(const json& j, const char* key, int dflt) {
  if (!j.contains(key)) return dflt;
  require(j.at(key).is_number_integer(), std::string("config field '") + key + "' must be an integer");
  return j.at(key).get<int>();
}

json hitchin_json(const HiggsModule& H) {
  json dirs = json::array();
  for (const auto& t : H.theta) {
    json cs = json::array();
    for (const auto& c : hitchin(t)) cs.push_back(json{{"value", to_json(c)}, {"val", val(c).str()}});
    dirs.push_back(cs);
  }
  return json{{"coefficients", dirs}, {"in_small_locus", in_small_locus(H)}};
}

}  // namespace

extern "C" {

const char* sl_last_error(void) { return last_error.c_str(); }

const char* sl_status_name(sl_status s) {
  switch (s) {
    case SL_OK: return "OK";
    case SL_INVALID_INPUT: return "INVALID_INPUT";
    case SL_NOT_DIVISIBLE: return "NOT_DIVISIBLE";
    case SL_PRECISION_EXHAUSTED: return "PRECISION_EXHAUSTED";
    case SL_NOT_SMALL: return "NOT_SMALL";
    case SL_NON_COMMUTING: return "NON_COMMUTING";
    case SL_PROPERTY_VIOLATION: return "PROPERTY_VIOLATION";
    case SL_INTERNAL: return "INTERNAL";
  }
  return "UNKNOWN";
}

void sl_string_free(char* s) { delete[] s; }

sl_status sl_instance_parse(const char* text, sl_instance** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new sl_instance{instance_from_text(text)};
  });
}

sl_status sl_instance_to_json(const sl_instance* inst, char** out) {
  return guarded([&] {
    require(inst && out, "null argument");
    *out = dup(to_json(inst->inst).dump(2) + "\n");
  });
}

int sl_instance_is_higgs(const sl_instance* inst) { return inst && inst->inst.higgs ? 1 : 0; }

int sl_instance_rank(const sl_instance* inst) {
  if (!inst) return 0;
  return inst->inst.higgs ? inst->inst.higgs->rank : inst->inst.rep->rank;
}

void sl_instance_free(sl_instance* inst) { delete inst; }

sl_status sl_correspond(const sl_instance* in, int to_rep, sl_instance** out) {
  return guarded([&] {
    require(in && out, "null argument");
    const Instance& src = in->inst;
    const Ring& R = Ring::get(src.ring);
    const int g = R.e() - R.guard();
    Instance dst{src.ring, src.chart, std::nullopt, std::nullopt, json()};
    bool back = true;
    if (to_rep) {
      require(src.higgs.has_value(), "--to-rep needs a Higgs instance (theta)");
      const HiggsModule& H = *src.higgs;
      if (!H.cert) fail(Status::not_small, "theta is not topologically nilpotent");
      dst.rep = rep_from_higgs(H);
      HiggsModule H2 = higgs_from_rep(GammaRep{&R, H.rank, dst.rep->A, std::nullopt});
      for (int i = 0; i < H.d(); ++i) back = back && H2.theta[i].equals_mod(H.theta[i], g);
    } else {
      require(src.rep.has_value(), "--to-higgs needs a representation instance (gamma)");
      dst.higgs = higgs_from_rep(*src.rep);
      GammaRep M2 = rep_from_higgs(*dst.higgs);
      for (int i = 0; i < src.rep->d(); ++i) back = back && M2.A[i].equals_mod(src.rep->A[i], g);
    }
    dst.stamp = json{{"round_trip", back}, {"modulo_p_power", g}, {"source_digest", digest(to_json(src))}};
    if (!back) fail(Status::property_violation, "round trip does not reproduce the input mod p^(e-g)");
    *out = new sl_instance{dst};
  });
}

sl_status sl_cohomology(const sl_instance* inst, const char* eta_json, char** report_json) {
  return guarded([&] {
    require(inst && report_json, "null argument");
    const Instance& src = inst->inst;
    const Ring& R = Ring::get(src.ring);
    FreeComplex C = src.higgs ? higgs_de_rham(*src.higgs) : group_cohomology_complex(*src.rep);
    json out{{"complex", src.higgs ? "higgs-de-rham" : "koszul-gamma-minus-one"},
             {"ranks", C.ranks},
             {"is_complex", C.is_complex()},
             {"profile", to_json(cohomology(C))},
             {"euler_length", euler_length(C)}};
    if (eta_json) {
      json fj = json::parse(eta_json, nullptr, false);
      require(!fj.is_discarded(), "malformed --eta ring element");
      RingElt f = ring_elt_from_json(R, fj);
      EtaComplex eta = decalage(C, f);
      out["eta"] = json{{"f", to_json(f)}, {"profile", to_json(eta_cohomology(C, eta))}};
    }
    *report_json = dup(out.dump(2) + "\n");
  });
}

sl_status sl_hitchin(const sl_instance* inst, char** report_json) {
  return guarded([&] {
    require(inst && report_json, "null argument");
    require(inst->inst.higgs.has_value(), "hitchin needs a Higgs instance (theta)");
    *report_json = dup(hitchin_json(*inst->inst.higgs).dump(2) + "\n");
  });
}

sl_status sl_run_suite(const char* config_json, int as_text, char** report, int* exit_code) {
  if (exit_code) *exit_code = 2;
  return guarded([&] {
    require(config_json && report && exit_code, "null argument");
    json j = json::parse(config_json, nullptr, false);
    require(!j.is_discarded() && j.is_object(), "malformed suite configuration");
    require(j.contains("suite") && j.at("suite").is_string(), "configuration needs a suite name");
    SuiteConfig cfg;
    cfg.suite = j.at("suite").get<std::string>();
    cfg.ring = CyclotomicParams{get(j, "p", 3), get(j, "n", 1), get(j, "e", 8), get(j, "guard", 2)};
    cfg.chart = ChartParams{get(j, "d", 1), get(j, "r", 0), get(j, "a", 1), get(j, "lvl", 1)};
    cfg.rank = get(j, "rank", 2);
    cfg.D = get(j, "D", 12);
    require(!j.contains("seed") || j.at("seed").is_number_unsigned(), "seed must be a non-negative integer");
    cfg.seed = j.value("seed", uint64_t{7});
    cfg.instances = get(j, "instances", 0);
    cfg.heavy = get(j, "heavy", 0);
    cfg.samples = get(j, "samples", 50);
    cfg.threads = get(j, "threads", 0);
    SuiteReport rep = run_suite(cfg);
    *report = dup(as_text ? to_text(rep) : to_json(rep).dump(2) + "\n");
    *exit_code = rep.exit_code();
  });
}

}  // extern "C"
