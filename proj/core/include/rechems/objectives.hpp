#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rechems::ga {

/// Standard test objective on a square domain with known minimum.
struct BenchmarkProblem {
  std::string name;
  double (*objective)(std::span<const double>) = nullptr;
  double lower = 0.0;
  double upper = 0.0;
  double optimum_coordinate = 0.0;  // every coordinate of the minimizer
  double optimum_value = 0.0;
};

double sphere(std::span<const double> x);
double rastrigin(std::span<const double> x);
double rosenbrock(std::span<const double> x);
/// Shifted so the minimum at x_i = 420.9687... is 0.
double schwefel(std::span<const double> x);
double griewank(std::span<const double> x);

[[nodiscard]] const std::vector<std::string>& benchmark_names();

/// Throws std::invalid_argument for an unknown name.
[[nodiscard]] BenchmarkProblem benchmark_problem(std::string_view name);

}  // namespace rechems::ga
