#include "simplicit/interp.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <json.hpp>

namespace simplicit {

namespace {

constexpr std::uint64_t kComponentRange = 1u << 16;

class SampleStream {
 public:
  SampleStream(const ParametricMap& map, std::uint64_t seed)
      : map_(map), rng_(seed) {
    if (!map.is_algebraic())
      fail(ErrorCode::precondition,
           "map still contains trigonometric variables; apply half_angle first");
  }

  // Next accepted sample; draws are sequential, so prefixes are stable.
  EvaluationPoint next() {
    for (int attempt = 0; attempt < 4096; ++attempt) {
      std::vector<Rat> tau;
      tau.reserve(map_.n());
      for (std::size_t i = 0; i < map_.n(); ++i) {
        Int num = Int(rng_.below(kComponentRange) + 1);
        Int den = Int(rng_.below(kComponentRange) + 1);
        bool negative = rng_.next() & 1u;
        tau.emplace_back(negative ? -num : num, den);
      }
      if (!seen_tau_.insert(tau).second) continue;
      bool denominator_ok = true;
      for (const auto& c : map_.coords)
        if (c.den().eval(tau) == 0) {
          denominator_ok = false;
          break;
        }
      if (!denominator_ok) continue;
      std::vector<Rat> coords;
      coords.reserve(map_.coords.size());
      for (const auto& c : map_.coords) coords.push_back(c.eval(tau));
      if (!seen_images_.insert(coords).second) continue;
      return EvaluationPoint{std::move(tau), std::move(coords)};
    }
    fail(ErrorCode::sampling_exhausted,
         "could not find a fresh evaluation point after 4096 attempts");
  }

 private:
  const ParametricMap& map_;
  SplitMix64 rng_;
  std::set<std::vector<Rat>> seen_tau_;
  std::set<std::vector<Rat>> seen_images_;
};

}  // namespace

std::vector<EvaluationPoint> sample_points(const ParametricMap& map,
                                           std::size_t count, std::uint64_t seed) {
  SampleStream stream(map, seed);
  std::vector<EvaluationPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(stream.next());
  return out;
}

RatRow monomial_row(const SupportSet& support, const std::vector<Rat>& point) {
  if (point.size() != static_cast<std::size_t>(support.dim))
    fail(ErrorCode::invalid_input, "point dimension does not match support");
  RatRow row;
  row.reserve(support.size());
  for (const auto& e : support.points) {
    Rat v(1);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) v *= rat_pow(point[i], static_cast<unsigned>(e[i]));
    row.push_back(std::move(v));
  }
  return row;
}

namespace {

// Shared row collector; the mu >= |S| rule belongs to build_matrix alone.
InterpolationMatrix collect_rows(const ParametricMap& map, const SupportSet& support,
                                 std::size_t mu, std::uint64_t seed,
                                 MatrixMode mode, double tolerance) {
  if (support.size() == 0) fail(ErrorCode::invalid_input, "support set is empty");
  if (static_cast<std::size_t>(support.dim) != map.coords.size())
    fail(ErrorCode::invalid_input, "support dimension does not match map");
  if (tolerance <= 0) fail(ErrorCode::invalid_input, "tolerance must be positive");

  InterpolationMatrix m;
  m.support = support;
  m.mode = mode;
  m.tolerance = tolerance;

  SampleStream stream(map, seed);
  std::set<RatRow> seen_rows;
  int stale = 0;
  while (m.rows.size() < mu) {
    EvaluationPoint p = stream.next();
    RatRow row = monomial_row(support, p.coords);
    if (!seen_rows.insert(row).second) {
      if (++stale > 1024)
        fail(ErrorCode::sampling_exhausted,
             "sampling keeps producing repeated matrix rows");
      continue;
    }
    m.samples.push_back(std::move(p));
    m.rows.push_back(std::move(row));
  }
  return m;
}

}  // namespace

InterpolationMatrix build_matrix(const ParametricMap& map, const SupportSet& support,
                                 std::size_t mu, std::uint64_t seed,
                                 MatrixMode mode, double tolerance) {
  if (mu < support.size())
    fail(ErrorCode::precondition, "need at least one row per support point");
  return collect_rows(map, support, mu, seed, mode, tolerance);
}

std::size_t corank(const InterpolationMatrix& m) {
  std::size_t cols = m.columns();
  if (m.mode == MatrixMode::exact) return cols - rank_exact(m.rows);

  Eigen::MatrixXd a(m.rows.size(), cols);
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    double norm2 = 0;
    std::vector<double> row(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      row[j] = rat_to_double(m.rows[i][j]);
      norm2 += row[j] * row[j];
    }
    double scale = norm2 > 0 ? 1.0 / std::sqrt(norm2) : 1.0;
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = row[j] * scale;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma(0) == 0.0) return cols;
  std::size_t rank = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k)
    if (sigma(k) >= m.tolerance * sigma(0)) ++rank;
  return cols - rank;
}

KernelBasis kernel_basis(const InterpolationMatrix& m) {
  std::vector<RatRow> raw = kernel_exact(m.rows, m.columns());
  if (raw.empty())
    fail(ErrorCode::empty_kernel,
         "interpolation matrix has full column rank: the support polytope does "
         "not contain the implicit support; enlarge the support prediction");
  KernelBasis k;
  for (auto& v : raw) {
    Rat lead(0);
    for (const auto& x : v)
      if (x != 0) {
        lead = x;
        break;
      }
    for (auto& x : v) x /= lead;
    k.vectors.push_back(std::move(v));
  }
  return k;
}

FrozenMatrix freeze_matrix(const ParametricMap& map, const SupportSet& support,
                           std::uint64_t seed) {
  if (support.size() < 2)
    fail(ErrorCode::invalid_input, "support must contain at least two points");
  InterpolationMatrix m = collect_rows(map, support, support.size() - 1, seed,
                                       MatrixMode::exact, 1e-8);
  FrozenMatrix f;
  f.support = std::move(m.support);
  f.samples = std::move(m.samples);
  f.rows = std::move(m.rows);
  f.corank_rows = f.support.size() - rank_exact(f.rows);
  return f;
}

std::optional<std::size_t> coinciding_row(const FrozenMatrix& f,
                                          const std::vector<Rat>& q) {
  for (std::size_t i = 0; i < f.samples.size(); ++i)
    if (f.samples[i].coords == q) return i;
  return std::nullopt;
}

RatMat eval_last_row(const FrozenMatrix& f, const std::vector<Rat>& q) {
  if (auto i = coinciding_row(f, q))
    fail(ErrorCode::coincides_with_sample_row,
         "query point equals the image of sample row " + std::to_string(*i));
  RatMat square = f.rows;
  square.push_back(monomial_row(f.support, q));
  return square;
}

std::string matrix_csv(const InterpolationMatrix& m) {
  std::ostringstream out;
  for (const auto& row : m.rows) {
    for (std::size_t j = 0; j < row.size(); ++j)
      out << (j ? "," : "") << rat_to_string(row[j]);
    out << "\n";
  }
  return out.str();
}

std::string samples_json(const std::vector<EvaluationPoint>& samples,
                         std::uint64_t seed) {
  nlohmann::json j;
  j["seed"] = seed;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : samples) {
    nlohmann::json e;
    nlohmann::json tau = nlohmann::json::array(), coords = nlohmann::json::array();
    for (const auto& v : s.tau) tau.push_back(rat_to_string(v));
    for (const auto& v : s.coords) coords.push_back(rat_to_string(v));
    e["tau"] = std::move(tau);
    e["coords"] = std::move(coords);
    arr.push_back(std::move(e));
  }
  j["samples"] = std::move(arr);
  return j.dump(2);
}

}  // namespace simplicit
