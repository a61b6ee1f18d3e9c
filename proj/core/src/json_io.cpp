#include "scatterlab/json_io.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace scatterlab {

namespace {

using njson = nlohmann::ordered_json;

njson rat_out(const Rat& r) {
  njson pair = njson::array();
  if (r.get_num().fits_slong_p())
    pair.push_back((long)r.get_num().get_si());
  else
    pair.push_back(r.get_num().get_str());
  if (r.get_den().fits_slong_p())
    pair.push_back((long)r.get_den().get_si());
  else
    pair.push_back(r.get_den().get_str());
  return pair;
}

Rat rat_in(const njson& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      mpz_class den;
      if (den.set_str(s.substr(slash + 1), 10) != 0 || den == 0)
        throw std::invalid_argument("json: bad rational \"" + s + "\" in " + where);
    }
    try {
      return rat_parse(s);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("json: bad rational \"" + s + "\" in " + where);
    }
  }
  if (j.is_array() && j.size() == 2) {
    Rat num = rat_in(j[0], where);
    Rat den = rat_in(j[1], where);
    if (den == 0) throw std::invalid_argument("json: zero denominator in " + where);
    return num / den;
  }
  throw std::invalid_argument("json: expected a rational ([p,q], integer, or \"p/q\") in " +
                              where);
}

Int int_in(const njson& j, const std::string& where) {
  try {
    return to_int(rat_in(j, where));
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("json: expected an integer in " + where);
  }
}

njson nvec_out(const NVec& v) {
  njson a = njson::array();
  for (Int x : v) a.push_back((long)x);
  return a;
}

NVec nvec_in(const njson& j, int rank, const std::string& where) {
  if (!j.is_array()) throw std::invalid_argument("json: expected an array in " + where);
  if (rank >= 0 && (int)j.size() != rank)
    throw std::invalid_argument("json: expected " + std::to_string(rank) + " entries in " +
                                where);
  NVec v;
  for (const njson& e : j) v.push_back(int_in(e, where));
  return v;
}

njson mvec_out(const MVec& v) {
  njson a = njson::array();
  for (const Rat& x : v) a.push_back(rat_out(x));
  return a;
}

MVec mvec_in(const njson& j, int rank, const std::string& where) {
  if (!j.is_array()) throw std::invalid_argument("json: expected an array in " + where);
  if (rank >= 0 && (int)j.size() != rank)
    throw std::invalid_argument("json: expected " + std::to_string(rank) + " entries in " +
                                where);
  MVec v;
  for (const njson& e : j) v.push_back(rat_in(e, where));
  return v;
}

njson cone_out(const Cone& c) {
  njson j;
  njson gens = njson::array();
  for (const MVec& g : cone_generators(c)) gens.push_back(mvec_out(g));
  j["generators"] = gens;
  return j;
}

Cone cone_in(const njson& j, int ambient, const std::string& where) {
  const njson* gens = &j;
  if (j.is_object()) {
    if (!j.contains("generators"))
      throw std::invalid_argument("json: missing \"generators\" in " + where);
    gens = &j.at("generators");
  }
  if (!gens->is_array()) throw std::invalid_argument("json: expected an array in " + where);
  std::vector<MVec> out;
  for (const njson& g : *gens) out.push_back(mvec_in(g, ambient, where));
  return cone_from_generators(ambient, out);
}

njson seed_out(const Seed& s) {
  njson j;
  j["id"] = s.id;
  j["rank"] = s.data.rank;
  njson om = njson::array();
  for (const auto& row : s.data.omega) {
    njson r = njson::array();
    for (const Rat& x : row) r.push_back(rat_out(x));
    om.push_back(r);
  }
  j["omega"] = om;
  njson de = njson::array();
  for (Int d : s.data.delta) de.push_back((long)d);
  j["delta"] = de;
  return j;
}

Seed seed_in(const njson& j) {
  if (!j.is_object()) throw std::invalid_argument("json: seed must be an object");
  Seed s;
  s.id = j.value("id", std::string());
  s.data.rank = (int)int_in(j.at("rank"), "rank");
  if (!j.at("omega").is_array()) throw std::invalid_argument("json: omega must be an array");
  for (const njson& row : j.at("omega")) {
    MVec r = mvec_in(row, s.data.rank, "omega");
    s.data.omega.push_back(std::vector<Rat>(r.begin(), r.end()));
  }
  for (const njson& d : j.at("delta")) s.data.delta.push_back(int_in(d, "delta"));
  s.data.validate();
  return s;
}

njson parse(const std::string& text) {
  try {
    return njson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("json: parse error: ") + e.what());
  }
}

void check_format(const njson& j) {
  if (!j.is_object()) throw std::invalid_argument("json: document must be an object");
  if (j.contains("format") && (!j["format"].is_number_integer() || j["format"] != 1))
    throw std::invalid_argument("json: unsupported format version");
}

// json.hpp throws its own exceptions on missing keys / wrong scalar types;
// funnel everything a reader can raise into invalid_argument
template <typename F>
auto reading(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("json: ") + e.what());
  }
}

}  // namespace

std::string seed_to_json(const Seed& s) {
  njson j;
  j["format"] = 1;
  j.update(seed_out(s));
  return j.dump();
}

Seed seed_from_json(const std::string& text) {
  njson j = parse(text);
  check_format(j);
  return reading([&] { return seed_in(j); });
}

std::string diagram_to_json(const ScatteringDiagram& d) {
  njson j;
  j["format"] = 1;
  j["seed"] = seed_out(d.seed);
  j["cutoff"] = (long)d.cutoff;
  njson walls = njson::array();
  for (const Wall& w : d.walls) {
    njson wj;
    wj["normal"] = nvec_out(w.normal);
    wj["t"] = (long)w.t;
    wj["s"] = rat_out(w.s);
    wj["support"] = cone_out(w.support);
    walls.push_back(wj);
  }
  j["walls"] = walls;
  return j.dump();
}

ScatteringDiagram diagram_from_json(const std::string& text) {
  njson j = parse(text);
  check_format(j);
  return reading([&] {
    ScatteringDiagram d;
    d.seed = seed_in(j.at("seed"));
    d.cutoff = int_in(j.at("cutoff"), "cutoff");
    if (d.cutoff < 0) throw std::invalid_argument("json: cutoff must be nonnegative");
    int idx = 0;
    for (const njson& wj : j.at("walls")) {
      std::string where = "walls[" + std::to_string(idx) + "]";
      Wall w;
      w.normal = nvec_in(wj.at("normal"), d.seed.data.rank, where + ".normal");
      w.t = wj.contains("t") ? int_in(wj.at("t"), where + ".t") : 1;
      w.s = wj.contains("s") ? rat_in(wj.at("s"), where + ".s") : Rat(1);
      w.support = cone_in(wj.at("support"), d.seed.data.rank, where + ".support");
      if (!in_n_plus(w.normal) || content(w.normal) != 1)
        throw std::invalid_argument("json: " + where +
                                    ".normal must be primitive with nonnegative entries");
      if (w.t < 1) throw std::invalid_argument("json: " + where + ".t must be positive");
      if (!(w.s > 0)) throw std::invalid_argument("json: " + where + ".s must be positive");
      d.walls.push_back(std::move(w));
      ++idx;
    }
    return d;
  });
}

std::string series_to_json(const TruncatedSeries& t) {
  njson j;
  j["format"] = 1;
  njson base;
  base["m"] = mvec_out(t.base.m);
  base["n"] = nvec_out(t.base.n);
  j["base"] = base;
  j["cutoff"] = (long)t.cutoff;
  njson terms = njson::array();
  for (const auto& [shift, coeff] : t.terms) {
    njson tj;
    tj["shift"] = nvec_out(shift);
    tj["coeff"] = rat_out(coeff);
    terms.push_back(tj);
  }
  j["terms"] = terms;
  return j.dump();
}

TruncatedSeries series_from_json(const std::string& text) {
  njson j = parse(text);
  check_format(j);
  return reading([&] {
    TruncatedSeries t;
    t.base.m = mvec_in(j.at("base").at("m"), -1, "base.m");
    t.base.n = nvec_in(j.at("base").at("n"), (int)t.base.m.size(), "base.n");
    t.cutoff = int_in(j.at("cutoff"), "cutoff");
    int idx = 0;
    for (const njson& tj : j.at("terms")) {
      std::string where = "terms[" + std::to_string(idx) + "]";
      NVec shift = nvec_in(tj.at("shift"), (int)t.base.n.size(), where + ".shift");
      Rat coeff = rat_in(tj.at("coeff"), where + ".coeff");
      if (!t.terms.emplace(std::move(shift), std::move(coeff)).second)
        throw std::invalid_argument("json: duplicate shift in " + where);
      ++idx;
    }
    return t;
  });
}

}  // namespace scatterlab
