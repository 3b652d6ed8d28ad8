#include "json_io.hpp"

#include <cstdio>

namespace simpson {

namespace {

int get_int(const json& j, const char* key, int dflt) {
  if (!j.contains(key)) return dflt;
  require(j.at(key).is_number_integer(), std::string("field '") + key + "' must be an integer");
  return j.at(key).get<int>();
}

std::vector<Mat> mats_from_json(const Ring& R, const json& j, int rank, const char* what) {
  require(j.is_array() && !j.empty(), std::string(what) + " must be a non-empty list of matrices");
  std::vector<Mat> out;
  for (const auto& m : j) {
    Mat x = mat_from_json(R, m);
    require(x.rows() == rank && x.cols() == rank, std::string(what) + " matrices must be rank x rank");
    out.push_back(x);
  }
  return out;
}

json mats_to_json(const std::vector<Mat>& ms) {
  json a = json::array();
  for (const auto& m : ms) a.push_back(to_json(m));
  return a;
}

}  // namespace

json to_json(const RingElt& x) {
  json c = x.coeffs();
  if (x.floor() >= x.ring().e()) return c;
  return json{{"coeffs", c}, {"floor", x.floor()}};
}

RingElt ring_elt_from_json(const Ring& R, const json& j) {
  if (j.is_number_integer()) return R.from_int(j.get<int64_t>());
  if (j.is_array()) {
    std::vector<int64_t> c;
    for (const auto& v : j) {
      require(v.is_number_integer(), "ring element coefficients must be integers");
      c.push_back(v.get<int64_t>());
    }
    require(static_cast<int>(c.size()) <= R.degree(), "ring element has more coefficients than phi(p^n)");
    return R.from_coeffs(c);
  }
  require(j.is_object() && j.contains("coeffs"), "ring element must be an integer, a coefficient list or {coeffs, floor}");
  RingElt x = ring_elt_from_json(R, j.at("coeffs"));
  int f = get_int(j, "floor", R.e());
  require(f >= 0 && f <= R.e(), "ring element floor out of range");
  x.set_floor(f);
  return x;
}

json to_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

Mat mat_from_json(const Ring& R, const json& j) {
  require(j.is_array() && !j.empty(), "matrix must be a non-empty list of rows");
  std::vector<std::vector<RingElt>> rows;
  for (const auto& r : j) {
    require(r.is_array() && r.size() == j.at(0).size() && !r.empty(), "matrix rows must be non-empty lists of equal length");
    std::vector<RingElt> row;
    for (const auto& v : r) row.push_back(ring_elt_from_json(R, v));
    rows.push_back(row);
  }
  return Mat::from_rows(R, rows);
}

json to_json(const CyclotomicParams& p) { return json{{"p", p.p}, {"n", p.n}, {"e", p.e}, {"g", p.g}}; }

CyclotomicParams cyclotomic_from_json(const json& j) {
  require(j.is_object(), "ring must be an object {p, n, e, g}");
  CyclotomicParams p;
  p.p = get_int(j, "p", 3);
  p.n = get_int(j, "n", 1);
  p.e = get_int(j, "e", 8);
  p.g = get_int(j, "g", 2);
  Ring::get(p);  // validates
  return p;
}

json to_json(const ChartParams& c) { return json{{"d", c.d}, {"r", c.r}, {"a", c.a}, {"lvl", c.lvl}}; }

ChartParams chart_from_json(const json& j) {
  require(j.is_object(), "chart must be an object {d, r, a, lvl}");
  ChartParams c;
  c.d = get_int(j, "d", 1);
  c.r = get_int(j, "r", 0);
  c.a = get_int(j, "a", 1);
  c.lvl = get_int(j, "lvl", 1);
  return c;
}

json to_json(const FreeComplex& C) {
  json diff = json::array();
  for (const auto& d : C.diff) diff.push_back(d.rows() && d.cols() ? to_json(d) : json::array());
  return json{{"ranks", C.ranks}, {"diff", diff}};
}

json to_json(const ModuleProfile& m) {
  return json{{"torsion", m.torsion}, {"free", m.free}, {"guarded", m.guarded}, {"negligible", m.negligible()}};
}

json to_json(const CohomologyProfile& p) {
  json deg = json::array();
  for (const auto& m : p.degrees) deg.push_back(to_json(m));
  return json{{"length", p.L}, {"guard_cut", p.t}, {"degrees", deg}};
}

Instance instance_from_json(const json& j) {
  require(j.is_object(), "instance must be a JSON object");
  Instance inst;
  inst.ring = cyclotomic_from_json(j.value("ring", json::object()));
  const Ring& R = Ring::get(inst.ring);
  inst.chart = chart_from_json(j.value("chart", json::object()));
  validate_chart(inst.chart, R);
  require(j.contains("rank") && j.at("rank").is_number_integer(), "instance needs an integer rank");
  const int rank = j.at("rank").get<int>();
  require(rank >= 1, "rank must be >= 1");
  const bool has_theta = j.contains("theta"), has_gamma = j.contains("gamma");
  require(has_theta != has_gamma, "instance needs exactly one of theta or gamma");
  if (has_theta) {
    auto th = mats_from_json(R, j.at("theta"), rank, "theta");
    require(static_cast<int>(th.size()) == inst.chart.d, "theta needs one matrix per chart direction");
    inst.higgs = make_higgs(th);
  } else {
    GammaRep M{&R, rank, mats_from_json(R, j.at("gamma"), rank, "gamma"), std::nullopt};
    require(M.d() == inst.chart.d, "gamma needs one matrix per chart direction");
    require_commuting(M.A);
    if (j.contains("witness") && !j.at("witness").is_null())
      M.witness = mats_from_json(R, j.at("witness"), rank, "witness");
    inst.rep = M;
  }
  if (j.contains("stamp")) inst.stamp = j.at("stamp");
  return inst;
}

Instance instance_from_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Status::invalid_input, "malformed JSON instance");
  return instance_from_json(j);
}

json to_json(const Instance& inst) {
  json j{{"ring", to_json(inst.ring)}, {"chart", to_json(inst.chart)}};
  if (inst.higgs) {
    j["rank"] = inst.higgs->rank;
    j["theta"] = mats_to_json(inst.higgs->theta);
  } else if (inst.rep) {
    j["rank"] = inst.rep->rank;
    j["gamma"] = mats_to_json(inst.rep->A);
    if (inst.rep->witness) j["witness"] = mats_to_json(*inst.rep->witness);
  }
  if (!inst.stamp.is_null()) j["stamp"] = inst.stamp;
  return j;
}

std::string digest(const json& j) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace simpson
