#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "simplicit/poly.hpp"

namespace simplicit {

/* A rational parameterization x_i = f_i(t)/g_i(t), i = 0..n, of a
 * hypersurface in R^{n+1}.  Invariants: params.size() == n >= 1,
 * coords.size() == n + 1, every coordinate shares one variable list.
 *
 * For a finished map the coordinate variables equal params and every
 * coordinate is in lowest terms (parse_map and half_angle reduce; degree
 * bounds and the resultant route both rely on that).  Maps fresh from
 * parsing trigonometric input instead carry pseudo-variables named
 * "sin(<param>)" / "cos(<param>)"; half_angle eliminates those. */
struct ParametricMap {
  enum class SourceForm { polynomial, rational, trigonometric };

  std::vector<std::string> params;
  std::vector<std::string> coord_names;
  std::vector<RationalFunction> coords;
  SourceForm source_form = SourceForm::polynomial;

  std::size_t n() const { return params.size(); }
  // True when coordinate variables are exactly the parameters.
  bool is_algebraic() const;
};

/* Parses either the statement grammar ("x = 3*t/(1+t^3); y = ...") or, when
 * the text starts with '{', the JSON exchange format.  Trigonometric input
 * is converted through half_angle before returning, so the result is always
 * algebraic. */
ParametricMap parse_map(std::string_view text);

/* Weierstrass substitution: sin(t) -> 2u/(1+u^2), cos(t) -> (1-u^2)/(1+u^2)
 * with a fresh parameter u per distinct trig argument.  Identity on maps
 * without trig pseudo-variables.  Throws mixed_trig when an argument also
 * occurs bare. */
ParametricMap half_angle(const ParametricMap& map);

// Exact image point; throws denominator_zero naming the coordinate.
std::vector<Rat> eval_map(const ParametricMap& map, const std::vector<Rat>& tau);

// Statement-grammar rendering, one "name = expr" per line.
std::string render_map(const ParametricMap& map);

// JSON exchange rendering (exact coefficients as strings).
std::string map_to_json(const ParametricMap& map);

}  // namespace simplicit
