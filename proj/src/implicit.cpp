#include "simplicit/implicit.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace simplicit {

ImplicitPolynomial normalize_leading(const ImplicitPolynomial& p) {
  const Rat& lead = p.poly.terms().rbegin()->second;
  return ImplicitPolynomial(p.poly.scaled(Rat(1) / lead));
}

std::vector<ImplicitPolynomial> kernel_to_polys(const KernelBasis& kernel,
                                                const SupportSet& support,
                                                const std::vector<std::string>& var_names) {
  if (var_names.size() != static_cast<std::size_t>(support.dim))
    fail(ErrorCode::invalid_input, "one variable name per support dimension required");
  std::vector<ImplicitPolynomial> out;
  out.reserve(kernel.vectors.size());
  for (const auto& v : kernel.vectors) {
    if (v.size() != support.size())
      fail(ErrorCode::invalid_input, "kernel vector length does not match support");
    MultiPoly p(var_names);
    for (std::size_t j = 0; j < v.size(); ++j) p.add_term(support.points[j], v[j]);
    out.emplace_back(std::move(p));
  }
  return out;
}

MultiPoly poly_gcd(const std::vector<MultiPoly>& polys) {
  std::vector<const MultiPoly*> nonzero;
  for (const auto& p : polys)
    if (!p.is_zero()) nonzero.push_back(&p);
  if (nonzero.empty())
    fail(ErrorCode::zero_polynomial, "GCD needs at least one nonzero polynomial");
  if (nonzero.size() == 1) return *nonzero[0];
  MultiPoly acc = *nonzero[0];
  for (std::size_t i = 1; i < nonzero.size() && !acc.is_constant(); ++i)
    acc = multipoly_gcd(acc, *nonzero[i]);
  const Rat& lead = acc.terms().rbegin()->second;
  return acc.scaled(Rat(1) / lead);
}

MultiPoly strip_monomial(const MultiPoly& p) {
  if (p.is_zero())
    fail(ErrorCode::zero_polynomial, "cannot strip the zero polynomial");
  std::vector<int> gamma(p.vars().size());
  for (std::size_t i = 0; i < gamma.size(); ++i) gamma[i] = p.min_exponent(i);
  MultiPoly out(p.vars());
  for (const auto& [e, c] : p.terms()) {
    MultiPoly::Exponents r = e;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= gamma[i];
    out.add_term(r, c);
  }
  return out;
}

ImplicitizeResult implicitize(const ParametricMap& map,
                              const LatticePolytope& support_polytope,
                              const ImplicitizeConfig& config) {
  if (!map.is_algebraic())
    fail(ErrorCode::precondition,
         "map still contains trigonometric variables; apply half_angle first");
  if (support_polytope.dim() != static_cast<int>(map.coords.size()))
    fail(ErrorCode::invalid_input,
         "support polytope dimension does not match the number of coordinates");

  ImplicitizeDiagnostics diag;
  diag.mode = config.mode;
  diag.seed = config.seed;
  diag.check_seed = config.seed + 0x9e3779b97f4a7c15ULL;

  LatticePolytope shifted = translate_positive(support_polytope);
  SupportSet support = lattice_points(shifted, config.caps);
  diag.support_size = support.size();

  double factor = config.mu_factor.value_or(config.mode == MatrixMode::exact ? 1.0 : 2.0);
  if (factor < 1.0)
    fail(ErrorCode::invalid_input, "mu factor must be at least 1");
  auto mu = static_cast<std::size_t>(std::ceil(factor * static_cast<double>(support.size())));
  mu = std::max(mu, support.size());
  diag.mu = mu;

  InterpolationMatrix m =
      build_matrix(map, support, mu, config.seed, config.mode, config.tolerance);
  diag.corank_reported = corank(m);

  KernelBasis kernel = kernel_basis(m);
  diag.corank_exact = kernel.corank();
  if (config.mode == MatrixMode::approximate &&
      diag.corank_reported != diag.corank_exact)
    diag.notes.push_back("singular-value corank " + std::to_string(diag.corank_reported) +
                         " disagrees with exact corank " + std::to_string(diag.corank_exact) +
                         "; tolerance may be unsuitable");

  if (config.validate_genericity) {
    InterpolationMatrix m2 = build_matrix(map, support, mu, diag.check_seed,
                                          MatrixMode::exact, config.tolerance);
    std::vector<RatRow> k2 = kernel_exact(m2.rows, m2.columns());
    if (!same_row_space(kernel.vectors, k2))
      fail(ErrorCode::non_generic_sampling,
           "kernels from independent seeds disagree; sampling hit a non-generic "
           "configuration, retry with a different seed");
  }

  std::vector<ImplicitPolynomial> polys =
      kernel_to_polys(kernel, support, map.coord_names);
  MultiPoly g;
  if (polys.size() == 1) {
    g = polys[0].poly;
  } else {
    diag.gcd_path = true;
    std::vector<MultiPoly> raw;
    raw.reserve(polys.size());
    for (const auto& p : polys) raw.push_back(p.poly);
    g = poly_gcd(raw);
  }
  g = strip_monomial(g);
  ImplicitizeResult result{normalize_leading(ImplicitPolynomial(std::move(g))),
                           std::move(diag)};
  return result;
}

ImplicitPolynomial sylvester_oracle(const ParametricMap& map,
                                    bool* shared_denominator_factor) {
  if (!map.is_algebraic())
    fail(ErrorCode::precondition,
         "map still contains trigonometric variables; apply half_angle first");
  if (map.n() != 1)
    fail(ErrorCode::precondition, "the resultant route handles curves only (one parameter)");

  if (shared_denominator_factor) {
    MultiPoly g = multipoly_gcd(map.coords[0].den(), map.coords[1].den());
    *shared_denominator_factor = !g.is_constant();
  }

  // Work in Q[x0, x1, t]; coordinate names first, parameter last.
  std::vector<std::string> vars = {map.coord_names[0], map.coord_names[1],
                                   map.params[0]};
  auto lift = [&](const MultiPoly& p) {
    MultiPoly out(vars);
    for (const auto& [e, c] : p.terms()) out.add_term({0, 0, e[0]}, c);
    return out;
  };

  constexpr std::size_t t_index = 2;
  std::vector<MultiPoly> big;  // x_i * g_i - f_i
  for (int i = 0; i < 2; ++i) {
    MultiPoly xi = MultiPoly::variable(vars, static_cast<std::size_t>(i));
    big.push_back(xi * lift(map.coords[i].den()) - lift(map.coords[i].num()));
  }
  int d0 = big[0].degree_in(t_index), d1 = big[1].degree_in(t_index);
  if (d0 < 1 || d1 < 1)
    fail(ErrorCode::precondition,
         "each coordinate must involve the parameter for the resultant route");

  // Sylvester matrix: d1 shifted coefficient rows of big[0], then d0 of big[1].
  std::size_t size = static_cast<std::size_t>(d0 + d1);
  std::vector<std::vector<MultiPoly>> syl(size, std::vector<MultiPoly>(size, MultiPoly(vars)));
  for (int r = 0; r < d1; ++r)
    for (int k = 0; k <= d0; ++k)
      syl[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] =
          coefficient_of(big[0], t_index, d0 - k);
  for (int r = 0; r < d0; ++r)
    for (int k = 0; k <= d1; ++k)
      syl[static_cast<std::size_t>(d1 + r)][static_cast<std::size_t>(r + k)] =
          coefficient_of(big[1], t_index, d1 - k);

  // Fraction-free elimination over the polynomial ring; division is exact.
  MultiPoly prev = MultiPoly::constant(vars, Rat(1));
  for (std::size_t c = 0; c < size; ++c) {
    std::size_t piv = c;
    while (piv < size && syl[piv][c].is_zero()) ++piv;
    if (piv == size)
      fail(ErrorCode::precondition,
           "resultant vanishes identically; the parameterization is degenerate "
           "or not in lowest terms");
    if (piv != c) std::swap(syl[piv], syl[c]);  // sign change is irrelevant
    for (std::size_t i = c + 1; i < size; ++i) {
      for (std::size_t j = c + 1; j < size; ++j) {
        MultiPoly num = syl[c][c] * syl[i][j] - syl[i][c] * syl[c][j];
        auto q = MultiPoly::divide_exact(num, prev);
        if (!q) fail(ErrorCode::internal, "fraction-free elimination division failed");
        syl[i][j] = std::move(*q);
      }
      syl[i][c] = MultiPoly(vars);
    }
    prev = syl[c][c];
  }
  MultiPoly det = syl[size - 1][size - 1];

  // Drop the parameter variable (its degree is zero everywhere by now).
  if (det.degree_in(t_index) > 0)
    fail(ErrorCode::internal, "resultant still involves the parameter");
  MultiPoly projected({map.coord_names[0], map.coord_names[1]});
  for (const auto& [e, c] : det.terms()) projected.add_term({e[0], e[1]}, c);

  return normalize_leading(ImplicitPolynomial(strip_monomial(projected)));
}

std::string poly_to_json(const ImplicitPolynomial& p) {
  nlohmann::json j;
  j["vars"] = p.poly.vars();
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : p.poly.terms()) {
    nlohmann::json t;
    t["exp"] = e;
    t["coef"] = rat_to_string(c);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j.dump(2);
}

ImplicitPolynomial poly_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::syntax_error, std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vars") || !j.contains("terms"))
    fail(ErrorCode::invalid_input, "polynomial JSON needs 'vars' and 'terms'");
  std::vector<std::string> vars;
  for (const auto& v : j["vars"]) vars.push_back(v.get<std::string>());
  MultiPoly p(vars);
  for (const auto& t : j["terms"]) {
    if (!t.contains("exp") || !t.contains("coef"))
      fail(ErrorCode::invalid_input, "term needs 'exp' and 'coef'");
    MultiPoly::Exponents e;
    for (const auto& x : t["exp"]) {
      if (!x.is_number_integer() || x.get<long long>() < 0)
        fail(ErrorCode::invalid_input, "exponents must be non-negative integers");
      e.push_back(static_cast<int>(x.get<long long>()));
    }
    Rat c = t["coef"].is_string() ? rat_from_string(t["coef"].get<std::string>())
                                  : Rat(t["coef"].get<long long>());
    p.add_term(e, c);
  }
  return ImplicitPolynomial(std::move(p));
}

}  // namespace simplicit
