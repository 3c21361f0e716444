// Copyright 2026 The qlangevin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Frequency-domain bath descriptions. A bath enters the Langevin equation
// through its noise spectrum S(w) = <F F>_w (non-symmetrized, S(w) > S(-w)
// means the bath absorbs energy) and its force response
// chi^F(w), the Fourier transform of -i theta(t) <[F(t), F(0)]>.
//
// Response sign convention: every response here satisfies
//     Im chi^F(w) = -(S(w) - S(-w)) / 2,
// i.e. Im chi^F < 0 for w > 0 on an absorbing bath. The Langevin solver adds
// chi^F to the mechanical inverse susceptibility, m (Omega^2 - w^2) + chi^F,
// which gives the damped form m (Omega^2 - w^2 - i Gamma w).

#include <complex>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace qlangevin {

using Complex = std::complex<double>;

/// Integration hint: the bath has structure of the given width around
/// `center` (a Lorentzian peak, a cutoff knee, a resonance window).
struct PeakHint {
  double center = 0.0;
  double width = 0.0;
};

/// Immutable pair (S, chi^F) plus quadrature hints. Copies share the
/// underlying callables.
class BathModel {
 public:
  using Spectrum = std::function<double(double)>;
  using Response = std::function<Complex(double)>;

  BathModel(std::string label, Spectrum spectrum, Response response,
            std::vector<PeakHint> peaks = {});

  static BathModel zero();

  double spectrum(double omega) const { return spectrum_(omega); }
  Complex response(double omega) const { return response_(omega); }
  const std::vector<PeakHint>& peaks() const { return *peaks_; }
  const std::string& label() const { return *label_; }

  /// Same spectrum, response multiplied by -1. Used for fault injection and
  /// to reproduce the anti-damped reading of the printed Langevin equation.
  BathModel with_flipped_response() const;

 private:
  Spectrum spectrum_;
  Response response_;
  std::shared_ptr<const std::vector<PeakHint>> peaks_;
  std::shared_ptr<const std::string> label_;
};

// ---------------------------------------------------------------------------
// Ohmic bath with algebraic (Drude) cutoff.

struct OhmicParams {
  double m = 1.0;
  double gamma_m = 0.1;   ///< damping rate
  double omega_c = 10.0;  ///< cutoff
  double temperature = 0.0;

  /// Throws std::invalid_argument on Gamma_m <= 0, omega_c <= 0 or T < 0.
  void validate() const;
};

/// S(w) = m Gamma w (coth(w/2T) + 1) / (1 + w^2/w_c^2). Exact step function
/// at T = 0; the w -> 0 limit 2 m Gamma T at w = 0.
double ohmic_spectrum(double omega, const OhmicParams& p);

/// chi^F(w) = -i m Gamma w / (1 - i w / w_c). Temperature independent,
/// chi^F(0) = 0 (static shift absorbed in the bare frequency).
Complex ohmic_response(double omega, const OhmicParams& p);

BathModel ohmic_bath(const OhmicParams& p);

// ---------------------------------------------------------------------------
// Cavity shot noise seen by a mechanical mode.

struct CavityParams {
  double g = 0.0;         ///< optomechanical coupling rate
  double kappa = 0.067;   ///< cavity decay rate
  double detuning = -1.0; ///< laser minus cavity frequency
  double ell_m = 1.0 / 1.4142135623730951;  ///< 1/sqrt(2 m Omega)

  void validate() const;
  /// Coupling strength g / ell_m squared.
  double force_scale() const { return (g / ell_m) * (g / ell_m); }
};

/// Lorentzian (g/l)^2 kappa / ((w + Delta)^2 + kappa^2/4), centred at -Delta.
double cavity_spectrum(double omega, const CavityParams& p);

/// (g/l)^2 [1/(w + Delta + i k/2) - 1/(w - Delta + i k/2)]; poles in the
/// lower half plane.
Complex cavity_response(double omega, const CavityParams& p);

BathModel cavity_bath(const CavityParams& p);

struct OptomechanicalRates {
  double gamma_opt = 0.0;
  double n_opt = 0.0;
};

/// Gamma_opt = l^2 (S(W) - S(-W)); (n_opt + 1)/n_opt = S(W)/S(-W).
/// Throws HeatingRegime when S(W) <= S(-W).
OptomechanicalRates optomechanical_rates(const CavityParams& p, double omega_mode);

/// g such that 4 g^2 / kappa equals the requested cooling rate.
double coupling_for_cooling_rate(double gamma_opt, double kappa);

// ---------------------------------------------------------------------------
// Thermal bath replaced by its values at the mode resonances.

/// Flat spectra 2 m Gamma W (n+1) for w > 0 and 2 m Gamma W n for w < 0, with
/// Markovian response -i m Gamma w. The pair is consistent at w = +-W only.
BathModel resonance_thermal_bath(double gamma_m, double n_th, double m,
                                 double omega_mode);

/// Pointwise sum of spectra and responses; peak hints concatenated.
/// Throws std::invalid_argument on an empty list.
BathModel composite_bath(std::span<const BathModel> baths);

// ---------------------------------------------------------------------------
// Kramers-Kronig response for arbitrary spectra.

struct KramersKronigSettings {
  double rel_tol = 1e-3;
  /// Integration range [0, omega_max] before the algebraic tail.
  double omega_max = 100.0;
  /// Extra breakpoints (peak centres/edges) for the adaptive grid.
  std::vector<PeakHint> peaks;
  /// Subtract the static value so that chi^F(0) = 0 (the counter-term
  /// convention of ohmic_response). Off for baths whose static response is
  /// physical, such as the optical spring.
  bool subtract_static = false;
  int max_subdivisions = 4000;
};

/// Im chi^F = -(S(w) - S(-w))/2, Re chi^F by principal-value Hilbert
/// transform. Throws GridTooCoarse if the error estimate exceeds rel_tol.
Complex kk_response(const BathModel::Spectrum& spectrum, double omega,
                    const KramersKronigSettings& settings);

/// Reads two whitespace-separated columns (w, S(w)) with ascending w. Lines
/// starting with '#' are skipped. The spectrum is linearly interpolated and
/// zero outside the table; the response is the Kramers-Kronig transform,
/// tabulated on the input grid at load time.
BathModel tabulated_bath(std::istream& in, const std::string& label = "tabulated");

// ---------------------------------------------------------------------------

/// Bose occupation 1/(exp(w/T) - 1); 0 at T = 0.
double bose_occupation(double omega, double temperature);

/// Temperature at which the Bose occupation of `omega` equals n.
double temperature_for_occupation(double omega, double n);

}  // namespace qlangevin
