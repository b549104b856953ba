#pragma once

#include <span>
#include <vector>

namespace annealpath {

/// Admissible offsets: lower_exclusive < gamma <= upper.
struct OffsetWindow {
  double lower_exclusive = -0.95;
  double upper = 1.0;

  /// Default window; offsets near -1 freeze the qubit and are rejected.
  static OffsetWindow standard() { return {-0.95, 1.0}; }
  /// Mathematical limit gamma > -1 (the --allow-extreme-offsets override).
  static OffsetWindow extreme() { return {-1.0, 1.0}; }

  bool contains(double gamma) const { return gamma > lower_exclusive && gamma <= upper; }
  /// Nearest admissible value; the open lower end maps to the next representable double.
  double clamp(double gamma) const;
};

/// Per-qubit power-law anneal paths A_i(s) = 1 - s^(1+gamma_i), B_i(s) = s^(1+gamma_i).
class OffsetSchedule {
 public:
  OffsetSchedule(std::vector<double> gammas, double anneal_time,
                 OffsetWindow window = OffsetWindow::standard());

  /// All offsets zero (linear schedule).
  static OffsetSchedule linear(int n_qubits, double anneal_time);

  int n_qubits() const noexcept { return static_cast<int>(gammas_.size()); }
  const std::vector<double>& gammas() const noexcept { return gammas_; }
  double anneal_time() const noexcept { return anneal_time_; }
  const OffsetWindow& window() const noexcept { return window_; }

  double eval_a(int qubit, double s) const;
  double eval_b(int qubit, double s) const;
  /// sqrt(B_i(s) B_j(s)), the weight of the i-j coupling.
  double coupling_weight(int i, int j, double s) const;

  /// B_i(s) for every qubit; no range checks beyond s.
  void eval_b_all(double s, std::span<double> out) const;

  OffsetSchedule with_gammas(std::vector<double> gammas) const;

 private:
  void check(int qubit, double s) const;

  std::vector<double> gammas_;
  double anneal_time_;
  OffsetWindow window_;
};

}  // namespace annealpath
