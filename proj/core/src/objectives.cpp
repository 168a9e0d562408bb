#include "rechems/objectives.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rechems::ga {

namespace {
constexpr double kSchwefelOffset = 418.9828872724337;
constexpr double kSchwefelArgmin = 420.9687463593688;
}  // namespace

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double rastrigin(std::span<const double> x) {
  double s = 10.0 * static_cast<double>(x.size());
  for (double v : x) s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
  return s;
}

double rosenbrock(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = 1.0 - x[i];
    s += 100.0 * a * a + b * b;
  }
  return s;
}

double schwefel(std::span<const double> x) {
  double s = kSchwefelOffset * static_cast<double>(x.size());
  for (double v : x) s -= v * std::sin(std::sqrt(std::abs(v)));
  return s;
}

double griewank(std::span<const double> x) {
  double sum = 0.0;
  double prod = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += x[i] * x[i] / 4000.0;
    prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return sum - prod + 1.0;
}

const std::vector<std::string>& benchmark_names() {
  static const std::vector<std::string> names = {"sphere", "rastrigin", "rosenbrock", "schwefel",
                                                 "griewank"};
  return names;
}

BenchmarkProblem benchmark_problem(std::string_view name) {
  if (name == "sphere") return {"sphere", &sphere, -5.12, 5.12, 0.0, 0.0};
  if (name == "rastrigin") return {"rastrigin", &rastrigin, -5.12, 5.12, 0.0, 0.0};
  if (name == "rosenbrock") return {"rosenbrock", &rosenbrock, -2.048, 2.048, 1.0, 0.0};
  if (name == "schwefel") return {"schwefel", &schwefel, -500.0, 500.0, kSchwefelArgmin, 0.0};
  if (name == "griewank") return {"griewank", &griewank, -600.0, 600.0, 0.0, 0.0};
  throw std::invalid_argument("unknown benchmark objective '" + std::string(name) + "'");
}

}  // namespace rechems::ga
