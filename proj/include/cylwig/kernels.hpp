#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cylwig/config.hpp"
#include "cylwig/types.hpp"

namespace cylwig {

// Exact half-integer: value = twice / 2. Quantizer moments are only ever needed
// at mu = (j + k)/2 - n, so they are keyed on integers.
struct HalfInt {
  int twice = 0;
  static constexpr HalfInt integer(int v) { return {2 * v}; }
  // (j + k)/2 - n
  static constexpr HalfInt center(int j, int k, int n) { return {j + k - 2 * n}; }
  constexpr double value() const { return 0.5 * twice; }
  constexpr bool is_integer() const { return twice % 2 == 0; }
  constexpr bool operator==(const HalfInt&) const = default;
};

enum class Verdict : signed char { unknown = 0, holds = 1, fails = 2 };

const char* to_string(Verdict v);

enum class KernelCondition { cond_theta, cond_L, cond_sym, nonvanishing, admissible };
inline constexpr int kKernelConditionCount = 5;

const char* to_string(KernelCondition c);

struct KernelFlags {
  Verdict cond_theta = Verdict::unknown;  // K(0, l) = 1
  Verdict cond_L = Verdict::unknown;      // K(sigma, 0) = 1
  Verdict cond_sym = Verdict::unknown;    // conj K(sigma, l) = K(-sigma, -l)
  Verdict nonvanishing = Verdict::unknown;
  Verdict admissible = Verdict::unknown;  // Fock-space embedding condition

  Verdict get(KernelCondition c) const;
  void set(KernelCondition c, Verdict v);
};

enum class KernelId { weyl, symmetric, custom };

// Quantization kernel K(sigma, l). Copies share one flag cache.
class Kernel {
 public:
  using EvalFn = std::function<cplx(double sigma, int l)>;
  // I_K(l, mu) = integral over [-pi, pi] of K(sigma, l) e^{i sigma mu}.
  using MomentFn = std::function<cplx(int l, HalfInt mu)>;

  Kernel(std::string name, EvalFn eval, MomentFn half_moment = {}, KernelFlags known = {});

  const std::string& name() const;
  KernelId id() const;
  cplx eval(double sigma, int l) const;
  bool has_half_moment() const;
  // Analytic moment when available, Gauss-Legendre quadrature otherwise.
  cplx moment(int l, HalfInt mu, const Config& cfg = {}) const;
  // Always by quadrature of eval; used to audit analytic moments.
  cplx moment_by_quadrature(int l, HalfInt mu, int nodes) const;

  KernelFlags flags() const;
  Verdict flag(KernelCondition c) const;
  // Stores v if the cached verdict is unknown. A conflicting known verdict
  // throws InvariantViolation.
  void record(KernelCondition c, Verdict v) const;

 private:
  struct State;
  Kernel(std::shared_ptr<State> s);
  friend Kernel kernel_weyl();
  friend Kernel kernel_symmetric();
  std::shared_ptr<State> s_;
};

// Moment of the constant kernel: 2 pi at mu = 0, 0 at other integers,
// 2 sin(pi mu)/mu at half-odd mu.
cplx weyl_moment(HalfInt mu);

Kernel kernel_weyl();
// K_S(sigma, l) = cos(sigma l / 2).
Kernel kernel_symmetric();
// "weyl" or "symmetric".
Kernel kernel_by_name(const std::string& name);

// Gauss-Legendre rule on [-1, 1]; cached per node count.
struct GaussRule {
  std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int nodes);

// Dense lookup of I_K(l, twice / 2) for |l| <= l_max, |twice| <= twice_max.
class MomentTable {
 public:
  MomentTable(const Kernel& k, int l_max, int twice_max, const Config& cfg = {});
  cplx operator()(int l, int twice) const {
    return data_[static_cast<std::size_t>((l + l_max_) * stride_ + (twice + twice_max_))];
  }
  int l_max() const { return l_max_; }
  int twice_max() const { return twice_max_; }

 private:
  int l_max_, twice_max_, stride_;
  std::vector<cplx> data_;
};

struct ConditionVerdict {
  bool holds = false;
  // Max deviation for the identities; min |K| for nonvanishing.
  double worst = 0.0;
  double sigma = 0.0;
  int l = 0;
};

struct KernelReport {
  std::string kernel;
  int l_range = 0;
  int sigma_probes = 0;
  double tol = 0.0;
  ConditionVerdict cond_theta, cond_L, cond_sym, nonvanishing;
};

// Probes sigma in {-pi + 2 pi j / sigma_probes}, |l| <= l_range, and records
// the verdicts in the kernel's flag cache.
KernelReport check_kernel_conditions(const Kernel& k, int l_range, int sigma_probes = 64,
                                     const Config& cfg = {});

struct AdmissibilityReport {
  bool admissible = false;
  double worst = 0.0;
  int j = 0, k = 0, n = 0;  // witness of the worst violation
};

// |I_K(j - k, (j + k)/2 - n)| <= tol for 0 <= j, k <= j_max, -n_depth <= n < 0.
AdmissibilityReport check_admissibility(const Kernel& k, int j_max, int n_depth, const Config& cfg = {});

}  // namespace cylwig
