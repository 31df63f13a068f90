#include "simplicit/param.hpp"

#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace simplicit {

namespace {

// "sin(a)" -> {"sin", "a"}; empty function name when v is not of that shape.
std::pair<std::string, std::string> split_trig_var(const std::string& v) {
  for (const char* fn : {"sin(", "cos("}) {
    if (v.size() > 5 && v.rfind(fn, 0) == 0 && v.back() == ')')
      return {std::string(fn, 3), v.substr(4, v.size() - 5)};
  }
  return {"", ""};
}

std::string fresh_name(const std::string& base, std::set<std::string>& taken) {
  std::string name = "u_" + base;
  while (taken.count(name)) name += "_";
  taken.insert(name);
  return name;
}

}  // namespace

bool ParametricMap::is_algebraic() const {
  if (coords.empty()) return false;
  return coords[0].num().vars() == params;
}

ParametricMap half_angle(const ParametricMap& map) {
  if (map.coords.empty()) fail(ErrorCode::invalid_input, "map has no coordinates");
  const std::vector<std::string>& vars = map.coords[0].num().vars();

  std::vector<std::string> trig_args;  // in order of appearance in vars
  for (const auto& v : vars) {
    auto [fn, arg] = split_trig_var(v);
    if (fn.empty()) continue;
    bool known = false;
    for (const auto& a : trig_args) known = known || a == arg;
    if (!known) trig_args.push_back(arg);
  }
  if (trig_args.empty()) return map;

  // The argument of a trig variable must not occur bare with positive degree.
  for (std::size_t vi = 0; vi < vars.size(); ++vi) {
    auto [fn, arg] = split_trig_var(vars[vi]);
    if (!fn.empty()) continue;
    for (const auto& a : trig_args) {
      if (vars[vi] != a) continue;
      for (const auto& c : map.coords)
        if (c.num().degree_in(vi) > 0 || c.den().degree_in(vi) > 0)
          fail(ErrorCode::mixed_trig, "parameter '" + a +
                                          "' appears both bare and inside sin/cos");
    }
  }

  std::set<std::string> taken(vars.begin(), vars.end());
  for (const auto& p : map.params) taken.insert(p);
  std::map<std::string, std::string> fresh;  // trig arg -> half-angle parameter
  for (const auto& a : trig_args) fresh[a] = fresh_name(a, taken);

  std::vector<std::string> new_params;
  for (const auto& p : map.params) {
    auto it = fresh.find(p);
    new_params.push_back(it == fresh.end() ? p : it->second);
  }
  std::map<std::string, std::size_t> new_index;
  for (std::size_t k = 0; k < new_params.size(); ++k) new_index[new_params[k]] = k;

  // sin -> 2u/(1+u^2), cos -> (1-u^2)/(1+u^2)
  std::vector<RationalFunction> repl;
  for (const auto& v : vars) {
    auto [fn, arg] = split_trig_var(v);
    if (fn.empty()) {
      std::string target = fresh.count(v) ? fresh.at(v) : v;
      auto it = new_index.find(target);
      if (it == new_index.end())
        fail(ErrorCode::internal, "variable '" + v + "' is not a parameter");
      repl.push_back(RationalFunction(MultiPoly::variable(new_params, it->second)));
      continue;
    }
    std::size_t ui = new_index.at(fresh.at(arg));
    MultiPoly u = MultiPoly::variable(new_params, ui);
    MultiPoly one = MultiPoly::constant(new_params, Rat(1));
    MultiPoly usq = u * u;
    if (fn == "sin")
      repl.push_back(RationalFunction(u.scaled(Rat(2)), one + usq));
    else
      repl.push_back(RationalFunction(one - usq, one + usq));
  }

  ParametricMap out;
  out.params = new_params;
  out.coord_names = map.coord_names;
  out.source_form = ParametricMap::SourceForm::trigonometric;
  for (std::size_t i = 0; i < map.coords.size(); ++i) {
    RationalFunction num = substitute(map.coords[i].num(), repl);
    RationalFunction den = substitute(map.coords[i].den(), repl);
    if (den.is_zero())
      fail(ErrorCode::denominator_zero,
           "denominator of coordinate '" + map.coord_names[i] +
               "' vanishes identically after the half-angle substitution");
    out.coords.push_back(reduced(num / den));
  }
  return out;
}

std::vector<Rat> eval_map(const ParametricMap& map, const std::vector<Rat>& tau) {
  if (!map.is_algebraic())
    fail(ErrorCode::precondition,
         "map still contains trigonometric variables; apply half_angle first");
  if (tau.size() != map.n())
    fail(ErrorCode::invalid_input,
         "expected " + std::to_string(map.n()) + " parameter value(s), got " +
             std::to_string(tau.size()));
  std::vector<Rat> out;
  out.reserve(map.coords.size());
  for (std::size_t i = 0; i < map.coords.size(); ++i) {
    if (map.coords[i].den().eval(tau) == 0)
      fail(ErrorCode::denominator_zero,
           "denominator of coordinate '" + map.coord_names[i] +
               "' vanishes at the given parameter value");
    out.push_back(map.coords[i].eval(tau));
  }
  return out;
}

namespace {

std::string rf_to_string(const RationalFunction& rf) {
  std::string num = rf.num().to_string();
  if (rf.is_polynomial()) return num;
  bool wrap_num = rf.num().terms().size() > 1;
  std::string out = wrap_num ? "(" + num + ")" : num;
  out += "/(" + rf.den().to_string() + ")";
  return out;
}

nlohmann::json poly_to_json_terms(const MultiPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) {
    nlohmann::json t;
    t["exp"] = e;
    t["coef"] = rat_to_string(c);
    terms.push_back(std::move(t));
  }
  nlohmann::json out;
  out["terms"] = std::move(terms);
  return out;
}

}  // namespace

std::string render_map(const ParametricMap& map) {
  std::ostringstream out;
  for (std::size_t i = 0; i < map.coords.size(); ++i) {
    if (i) out << "\n";
    out << map.coord_names[i] << " = " << rf_to_string(map.coords[i]);
  }
  return out.str();
}

std::string map_to_json(const ParametricMap& map) {
  if (!map.is_algebraic())
    fail(ErrorCode::precondition,
         "map still contains trigonometric variables; apply half_angle first");
  nlohmann::json j;
  j["params"] = map.params;
  nlohmann::json coords = nlohmann::json::array();
  for (std::size_t i = 0; i < map.coords.size(); ++i) {
    nlohmann::json c;
    c["name"] = map.coord_names[i];
    c["num"] = poly_to_json_terms(map.coords[i].num());
    if (!map.coords[i].is_polynomial())
      c["den"] = poly_to_json_terms(map.coords[i].den());
    coords.push_back(std::move(c));
  }
  j["coords"] = std::move(coords);
  return j.dump(2);
}

}  // namespace simplicit
