//! Periodic detuning modulation and grating geometry.

use super::GratingError;

/// Spatially periodic modulation of the coupling detuning over one grating
/// period, in period units `x ∈ [−1/2, 1/2)`, plus an optional additive
/// modulation along `y` for two-dimensional gratings.
///
/// Two waveforms are supported. The canonical whole-harmonic grating is
/// `Δ_c(x) = Δ_c0·sin(2π q (x − x0))`; with `half_cycle` set the argument is
/// halved, `Δ_c(x) = Δ_c0·sin(π q (x − x0))`, so `q = 1` places a single
/// half sine cycle across the period. The half-cycle form sweeps the
/// detuning monotonically through the atomic resonance once per period,
/// which maps the causal frequency response onto space and is what makes
/// the diffraction of the non-Hermitian grating one-sided; the
/// whole-harmonic form is mirror-symmetric about a quarter period and
/// diffracts symmetrically no matter how the response is modulated.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialModulation {
    /// Modulation amplitude Δ_c0, units of 2π·MHz.
    pub delta_c0: f64,
    /// Spatial harmonics per period.
    pub q: u32,
    /// Use the ramp-like half-cycle waveform sin(πq(x−x0)).
    pub half_cycle: bool,
    /// Offset in period units, |x0| ≤ 1/2.
    pub x0: f64,
    /// Second-axis modulation for 2D gratings.
    pub y_modulation: YModulation,
    /// Amplitude of the y modulation, units of 2π·MHz.
    pub delta_cy: f64,
    /// y offset in period units.
    pub y0: f64,
}

/// Functional form of the y-axis modulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YModulation {
    None,
    Sin,
    Cos,
}

impl Default for SpatialModulation {
    fn default() -> Self {
        SpatialModulation {
            delta_c0: 4.0,
            q: 1,
            half_cycle: false,
            x0: 0.0,
            y_modulation: YModulation::None,
            delta_cy: 0.0,
            y0: 0.0,
        }
    }
}

impl SpatialModulation {
    pub fn validate(&self) -> Result<(), GratingError> {
        if !self.delta_c0.is_finite() || self.delta_c0 < 0.0 {
            return Err(GratingError::InvalidGeometry {
                what: format!("delta_c0 must be finite and >= 0, got {}", self.delta_c0),
            });
        }
        if self.q == 0 {
            return Err(GratingError::InvalidGeometry {
                what: "q must be a positive integer".into(),
            });
        }
        if !self.x0.is_finite() || self.x0.abs() > 0.5 {
            return Err(GratingError::InvalidGeometry {
                what: format!("|x0| must be <= 1/2, got {}", self.x0),
            });
        }
        if !self.delta_cy.is_finite() || self.delta_cy < 0.0 || !self.y0.is_finite() {
            return Err(GratingError::InvalidGeometry {
                what: "y modulation needs finite delta_cy >= 0 and finite y0".into(),
            });
        }
        Ok(())
    }

    fn angular_rate(&self) -> f64 {
        let base = if self.half_cycle {
            std::f64::consts::PI
        } else {
            std::f64::consts::TAU
        };
        base * self.q as f64
    }

    /// Δ_c at position `x` (period units).
    pub fn value_x(&self, x: f64) -> f64 {
        self.delta_c0 * (self.angular_rate() * (x - self.x0)).sin()
    }

    /// Additive y contribution at position `y` (period units).
    pub fn value_y(&self, y: f64) -> f64 {
        let arg = self.angular_rate() * (y - self.y0);
        match self.y_modulation {
            YModulation::None => 0.0,
            YModulation::Sin => self.delta_cy * arg.sin(),
            YModulation::Cos => self.delta_cy * arg.cos(),
        }
    }

    /// Swap the x and y modulations (2D transpose studies). The x axis is
    /// always sine-modulated, so the swap is only defined when the y form is
    /// `Sin`.
    pub fn swapped_axes(&self) -> Option<SpatialModulation> {
        if self.y_modulation == YModulation::Sin {
            let mut out = self.clone();
            out.delta_c0 = self.delta_cy;
            out.x0 = self.y0;
            out.delta_cy = self.delta_c0;
            out.y0 = self.x0;
            Some(out)
        } else {
            None
        }
    }
}

/// Grating geometry and discretization.
#[derive(Debug, Clone, PartialEq)]
pub struct GratingGeometry {
    /// Period-to-wavelength ratio R = a/λ_p.
    pub period_ratio: f64,
    /// Beam-width-to-period ratio M = ϖ_B/a.
    pub beam_periods: f64,
    /// Spatial samples per period (power of two, ≥ 256).
    pub n_samples: usize,
    /// Angular samples over sinθ ∈ [−1, 1].
    pub n_theta: usize,
}

impl Default for GratingGeometry {
    fn default() -> Self {
        GratingGeometry {
            period_ratio: 6.0,
            beam_periods: 10.0,
            n_samples: 4096,
            n_theta: 2001,
        }
    }
}

impl GratingGeometry {
    pub fn validate(&self) -> Result<(), GratingError> {
        if !self.period_ratio.is_finite() || self.period_ratio < 1.0 {
            return Err(GratingError::InvalidGeometry {
                what: format!("period_ratio must be >= 1, got {}", self.period_ratio),
            });
        }
        if !self.beam_periods.is_finite() || self.beam_periods < 1.0 {
            return Err(GratingError::InvalidGeometry {
                what: format!("beam_periods must be >= 1, got {}", self.beam_periods),
            });
        }
        if self.n_samples < 256 || !self.n_samples.is_power_of_two() {
            return Err(GratingError::InvalidGeometry {
                what: format!(
                    "n_samples must be a power of two >= 256, got {}",
                    self.n_samples
                ),
            });
        }
        if self.n_theta < 3 {
            return Err(GratingError::InvalidGeometry {
                what: format!("n_theta must be >= 3, got {}", self.n_theta),
            });
        }
        Ok(())
    }

    /// Uniform endpoint-exclusive grid over one period, `x_i = −1/2 + i/N`.
    pub fn x_grid(&self) -> Vec<f64> {
        let n = self.n_samples;
        (0..n).map(|i| -0.5 + i as f64 / n as f64).collect()
    }

    /// Uniform angular grid over sinθ ∈ [−1, 1] (inclusive).
    pub fn sin_theta_grid(&self) -> Vec<f64> {
        let n = self.n_theta;
        (0..n)
            .map(|j| -1.0 + 2.0 * j as f64 / (n - 1) as f64)
            .collect()
    }

    /// Diffraction orders representable on the angular range: |n| ≤ R.
    pub fn order_range(&self) -> std::ops::RangeInclusive<i32> {
        let n_max = self.period_ratio.floor() as i32;
        -n_max..=n_max
    }
}

/// Sampled detuning profile Δ_c(x_i) over one period.
pub fn detuning_profile(
    modulation: &SpatialModulation,
    geometry: &GratingGeometry,
) -> Result<Vec<f64>, GratingError> {
    modulation.validate()?;
    geometry.validate()?;
    Ok(geometry
        .x_grid()
        .into_iter()
        .map(|x| modulation.value_x(x))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_amplitude_gives_zero_profile() {
        let modulation = SpatialModulation {
            delta_c0: 0.0,
            ..Default::default()
        };
        let profile = detuning_profile(&modulation, &GratingGeometry::default()).unwrap();
        assert!(profile.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn default_profile_is_odd_on_grid() {
        let geometry = GratingGeometry::default();
        let profile = detuning_profile(&SpatialModulation::default(), &geometry).unwrap();
        let n = geometry.n_samples;
        // x_0 = −1/2 maps to itself (periodically); sin vanishes there.
        assert!(profile[0].abs() < 1e-12);
        for i in 1..n {
            let j = n - i; // grid index of −x_i
            assert!(
                (profile[i] + profile[j]).abs() < 1e-12,
                "not odd at i = {i}"
            );
        }
    }

    #[test]
    fn default_peak_at_quarter_period() {
        let geometry = GratingGeometry::default();
        let profile = detuning_profile(&SpatialModulation::default(), &geometry).unwrap();
        let x = geometry.x_grid();
        let (imax, vmax) = profile
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |(bi, bv), (i, v)| {
                if *v > bv {
                    (i, *v)
                } else {
                    (bi, bv)
                }
            });
        assert!((vmax - 4.0).abs() < 1e-12);
        assert!((x[imax] - 0.25).abs() < 1e-12);
    }

    #[test]
    fn geometry_validation() {
        let mut g = GratingGeometry::default();
        g.n_samples = 300;
        assert!(g.validate().is_err());
        g.n_samples = 256;
        assert!(g.validate().is_ok());
    }
}
