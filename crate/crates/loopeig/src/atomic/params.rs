//! Drive-field, relaxation and medium parameters of the four-level system.
//!
//! Level labels follow the g/e/m/b convention: `g` and `m` are the two
//! ground states coupled by the microwave field, `e` is the optically excited
//! state shared by probe and coupling transitions, and `b` is the fourth
//! level driven by the second coupling field.

use super::AtomicError;

pub const TAU: f64 = std::f64::consts::TAU;

/// Dephasing rates of the six coherences, in units of 2π·MHz.
///
/// Entries are symmetric in the level pair, `ge` names the g–e coherence and
/// so on. The defaults equal the radiative values implied by the population
/// decays except for a residual 2π·1 kHz ground-state dephasing `gm`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasingMap {
    pub ge: f64,
    pub gm: f64,
    pub gb: f64,
    pub me: f64,
    pub mb: f64,
    pub eb: f64,
}

impl Default for DephasingMap {
    fn default() -> Self {
        DephasingMap {
            ge: 3.0,
            gm: 1.0e-3,
            gb: 1.5,
            me: 3.0,
            mb: 1.5,
            eb: 4.5,
        }
    }
}

/// All Rabi amplitudes, phases, detunings and relaxation rates of the loop
/// system. Rates and frequencies are stored in units of 2π·MHz.
///
/// Rabi amplitudes are real and non-negative; all sign and complex structure
/// enters through the three initial phases, which act on the dynamics only
/// through the loop phase `Φ = φ_m + φ_c − φ_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomFieldParams {
    /// Probe half Rabi amplitude (g↔e).
    pub omega_p: f64,
    /// Coupling half Rabi amplitude (m↔e).
    pub omega_c: f64,
    /// Second coupling half Rabi amplitude (drives the b level).
    pub omega_d: f64,
    /// Microwave half Rabi amplitude (g↔m).
    pub omega_m: f64,
    /// Initial phase of the probe field, radians.
    pub phi_p: f64,
    /// Initial phase of the coupling field, radians.
    pub phi_c: f64,
    /// Initial phase of the microwave field, radians.
    pub phi_m: f64,
    /// Probe detuning δ_p.
    pub delta_p: f64,
    /// Coupling detuning Δ_c.
    pub delta_c: f64,
    /// Second-coupling detuning δ_d.
    pub delta_d: f64,
    /// Population decay rate e→g.
    pub decay_eg: f64,
    /// Population decay rate e→m.
    pub decay_em: f64,
    /// Population decay rate b→m.
    pub decay_bm: f64,
    /// Coherence dephasing rates.
    pub dephasing: DephasingMap,
}

impl Default for AtomFieldParams {
    fn default() -> Self {
        AtomFieldParams {
            omega_p: 0.01,
            omega_c: 5.0,
            omega_d: 5.0,
            omega_m: 0.5,
            phi_p: 0.0,
            phi_c: 0.0,
            phi_m: 0.0,
            delta_p: 0.0,
            delta_c: 0.0,
            delta_d: 0.0,
            decay_eg: 3.0,
            decay_em: 3.0,
            decay_bm: 3.0,
            dephasing: DephasingMap::default(),
        }
    }
}

impl AtomFieldParams {
    /// Loop phase Φ = φ_m + φ_c − φ_p reduced to [0, 2π).
    pub fn loop_phase(&self) -> LoopPhase {
        LoopPhase::new(self.phi_m + self.phi_c - self.phi_p)
    }

    /// Set the phases so that the loop phase equals `phi` (φ_p = φ_c = 0).
    pub fn with_loop_phase(mut self, phi: f64) -> Self {
        self.phi_p = 0.0;
        self.phi_c = 0.0;
        self.phi_m = phi;
        self
    }

    pub fn validate(&self) -> Result<(), AtomicError> {
        let rabi = [
            ("omega_p", self.omega_p),
            ("omega_c", self.omega_c),
            ("omega_d", self.omega_d),
            ("omega_m", self.omega_m),
        ];
        for (name, v) in rabi {
            if !v.is_finite() || v < 0.0 {
                return Err(AtomicError::InvalidParams {
                    what: format!("{name} must be finite and >= 0, got {v}"),
                });
            }
        }
        let rates = [
            ("decay_eg", self.decay_eg),
            ("decay_em", self.decay_em),
            ("decay_bm", self.decay_bm),
            ("dephasing.ge", self.dephasing.ge),
            ("dephasing.gm", self.dephasing.gm),
            ("dephasing.gb", self.dephasing.gb),
            ("dephasing.me", self.dephasing.me),
            ("dephasing.mb", self.dephasing.mb),
            ("dephasing.eb", self.dephasing.eb),
        ];
        for (name, v) in rates {
            if !v.is_finite() || v <= 0.0 {
                return Err(AtomicError::InvalidParams {
                    what: format!("{name} must be finite and > 0, got {v}"),
                });
            }
        }
        for (name, v) in [
            ("delta_p", self.delta_p),
            ("delta_c", self.delta_c),
            ("delta_d", self.delta_d),
            ("phi_p", self.phi_p),
            ("phi_c", self.phi_c),
            ("phi_m", self.phi_m),
        ] {
            if !v.is_finite() {
                return Err(AtomicError::InvalidParams {
                    what: format!("{name} must be finite, got {v}"),
                });
            }
        }
        Ok(())
    }

    /// Bound under which the first-order treatment of the probe is trusted.
    pub fn perturbative_bound_ok(&self) -> bool {
        self.omega_p <= 0.01 * self.omega_c
    }
}

/// Relative loop phase Φ of the three loop fields, reduced mod 2π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopPhase(f64);

impl LoopPhase {
    pub fn new(raw: f64) -> Self {
        let mut phi = raw.rem_euclid(TAU);
        // rem_euclid can return TAU itself through rounding.
        if phi >= TAU {
            phi -= TAU;
        }
        LoopPhase(phi)
    }

    pub fn radians(&self) -> f64 {
        self.0
    }

    /// Circular distance to `target` (radians, in [0, π]).
    pub fn distance_to(&self, target: f64) -> f64 {
        let d = (self.0 - target).rem_euclid(TAU);
        d.min(TAU - d)
    }
}

/// Atomic medium and probe-beam constants.
#[derive(Debug, Clone, PartialEq)]
pub struct MediumParams {
    /// Atomic density, cm⁻³.
    pub density_n: f64,
    /// Medium thickness along the propagation axis, μm.
    pub length_l: f64,
    /// Probe wavelength, nm.
    pub lambda_p: f64,
    /// Susceptibility scale, expressed as the peak optical depth
    /// `k_p·max|Im χ_p|·L` the default atomic response induces.
    pub chi_scale: f64,
}

impl Default for MediumParams {
    fn default() -> Self {
        MediumParams {
            density_n: 4.0e10,
            length_l: 20.0,
            lambda_p: 795.0,
            chi_scale: 0.1,
        }
    }
}

impl MediumParams {
    /// Probe wave vector times medium length, dimensionless.
    pub fn kp_l(&self) -> f64 {
        TAU * (self.length_l * 1.0e3) / self.lambda_p
    }

    pub fn validate(&self) -> Result<(), AtomicError> {
        for (name, v) in [
            ("density_n", self.density_n),
            ("length_l", self.length_l),
            ("lambda_p", self.lambda_p),
            ("chi_scale", self.chi_scale),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(AtomicError::InvalidParams {
                    what: format!("{name} must be finite and > 0, got {v}"),
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_phase_reduction() {
        assert!((LoopPhase::new(0.3 + 0.5 - 0.4).radians() - 0.4).abs() < 1e-15);
        assert!((LoopPhase::new(-0.5).radians() - (TAU - 0.5)).abs() < 1e-12);
        assert!(LoopPhase::new(3.0 * TAU).radians().abs() < 1e-12);
    }

    #[test]
    fn loop_phase_from_params() {
        let p = AtomFieldParams {
            phi_p: 0.3,
            phi_c: 0.5,
            phi_m: 0.2,
            ..Default::default()
        };
        assert!((p.loop_phase().radians() - 0.4).abs() < 1e-12);
    }

    #[test]
    fn defaults_are_valid() {
        AtomFieldParams::default().validate().unwrap();
        MediumParams::default().validate().unwrap();
    }

    #[test]
    fn rejects_negative_rabi() {
        let p = AtomFieldParams {
            omega_c: -1.0,
            ..Default::default()
        };
        assert!(p.validate().is_err());
    }

    #[test]
    fn kp_l_default() {
        // 2π · 20000 nm / 795 nm
        let m = MediumParams::default();
        assert!((m.kp_l() - TAU * 20000.0 / 795.0).abs() < 1e-9);
    }
}
