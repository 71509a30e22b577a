#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cylwig/config.hpp"
#include "cylwig/numberphase.hpp"
#include "cylwig/table.hpp"

namespace cylwig {

enum class StateFamily { fock, coherent, squeezed, thermal, cat };

struct StateSpec {
  StateFamily family = StateFamily::fock;
  int N = 0;                // fock, cat
  int Nprime = 1;           // cat
  double abs = 0.0;         // |alpha|
  double arg = 0.0;         // arg alpha
  double r = 0.0;           // squeeze magnitude
  double theta = 0.0;       // squeeze phase
  double bho = 1.0;         // beta hbar omega
  double eta = 0.0;         // cat mixing angle
  double phi0 = 0.0;        // cat relative phase
  int n_f = -1;             // truncation; -1 picks the smallest with tail <= 1e-12
  double tail_allowance = 1e-8;
};

// "fock:N=3", "coherent:abs=1,arg=0", "squeezed:abs=0,arg=0,r=1,theta=0",
// "thermal:bho=0.693147", "cat:eta=0.314,phi0=0,N=0,Nprime=7". Fields may
// appear in any order; "nf" and "tail" are accepted by every family.
StateSpec parse_state_spec(std::string_view text);
std::string to_string(const StateSpec& spec);
void validate(const StateSpec& spec);

struct State {
  StateSpec spec;
  int n_f = 0;
  double tail_mass = 0.0;            // weight lost to the truncation before any renormalization
  std::optional<FockVector> vector;  // pure families only
  FockDensity density;
};

// Throws InvalidArgument for bad parameters or when the tail exceeds the allowance.
State build_state(const StateSpec& spec);

// Physicists' Hermite polynomial by the three-term recurrence, n <= 512.
cplx hermite(int n, cplx z);

// <n|alpha, zeta> for n = 0..n_max with zeta = r e^{i theta}, from the scaled
// recurrence g_{n+1} = (y g_n - sqrt(n) a g_{n-1}) / sqrt(n+1), a = e^{i theta} tanh r.
CVector squeezed_amplitudes(double abs, double arg, double r, double theta, int n_max);

enum class SqueezedForm {
  corrected,      // H_k argument (alpha + alpha^* e^{i theta} tanh r) / sqrt(2 e^{i theta} tanh r)
  paper_literal,  // same with e^{-i theta} in the numerator
};

// Closed-form number-phase Wigner function of the family, series cut at the
// spec's truncation. Squeezed vacuum uses its even/odd parity form.
double exact_number_phase_wigner(const StateSpec& spec, double phi, int n,
                                 SqueezedForm form = SqueezedForm::corrected);

// Data behind the figures: which = max | coh | squeezed | cat.
Table figure_data(const std::string& which, int grid_points = 256);

}  // namespace cylwig
