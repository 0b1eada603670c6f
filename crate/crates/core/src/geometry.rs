//! Inductances of two parallel, aligned, equal-length thin wires.

use std::f64::consts::PI;

use crate::constants::MU_0;
use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_finite, QuadratureSpec};

/// Two parallel wires of length `length` and radius `wire_radius`, side by
/// side at centre distance `separation`. SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WireGeometry {
    pub length: f64,
    pub wire_radius: f64,
    pub separation: f64,
}

impl WireGeometry {
    pub fn new(length: f64, wire_radius: f64, separation: f64) -> Result<Self> {
        let g = Self {
            length,
            wire_radius,
            separation,
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        if !(self.length > 0.0 && self.length.is_finite()) {
            return Err(domain("wire length must be positive"));
        }
        if !(self.wire_radius > 0.0) {
            return Err(domain("wire radius must be positive"));
        }
        if !(self.separation > 2.0 * self.wire_radius && self.separation.is_finite()) {
            return Err(domain("wires overlap: separation must exceed twice the radius"));
        }
        // ln(2l/r0) > 1 keeps the thin-wire self-inductance positive
        if !(2.0 * self.length / self.wire_radius > std::f64::consts::E) {
            return Err(domain("wire radius too large for the thin-wire formula"));
        }
        Ok(())
    }

    /// False when the thin-wire approximation is doubtful: radius above a
    /// tenth of the separation or of the length.
    pub fn thin_wire_valid(&self) -> bool {
        self.wire_radius / self.separation <= 0.1 && self.wire_radius / self.length <= 0.1
    }

    pub fn with_separation(&self, separation: f64) -> Result<Self> {
        Self::new(self.length, self.wire_radius, separation)
    }
}

/// `L = (mu0 l / 2 pi) (ln(2 l / r0) - 1)`.
pub fn self_inductance(g: &WireGeometry) -> Result<f64> {
    g.validate()?;
    Ok(MU_0 * g.length / (2.0 * PI) * ((2.0 * g.length / g.wire_radius).ln() - 1.0))
}

/// Closed-form mutual inductance of parallel equal segments:
/// `(mu0 l / 2 pi) [asinh(l/d) - sqrt(1 + d^2/l^2) + d/l]`.
pub fn mutual_inductance(g: &WireGeometry) -> Result<f64> {
    g.validate()?;
    let (l, d) = (g.length, g.separation);
    Ok(MU_0 * l / (2.0 * PI) * ((l / d).asinh() - (1.0 + (d / l).powi(2)).sqrt() + d / l))
}

/// `dM/dd = (mu0 / 2 pi) (1 - sqrt(l^2 + d^2) / d)`.
pub fn mutual_inductance_gradient(g: &WireGeometry) -> Result<f64> {
    g.validate()?;
    let (l, d) = (g.length, g.separation);
    Ok(MU_0 / (2.0 * PI) * (1.0 - l.hypot(d) / d))
}

/// Neumann double integral `(mu0 / 4 pi) int int dz1 dz2 / sqrt((z1 - z2)^2 + d^2)`
/// by iterated adaptive quadrature. Independent of the closed form; used to
/// check it.
pub fn neumann_mutual_inductance(g: &WireGeometry, spec: &QuadratureSpec) -> Result<f64> {
    g.validate()?;
    let (l, d) = (g.length, g.separation);
    let inner_error = std::cell::Cell::new(None);
    let inner = |z1: f64| {
        let r = integrate_finite(|z2| 1.0 / ((z1 - z2).powi(2) + d * d).sqrt(), 0.0, l, spec, &[z1]);
        match r {
            Ok(r) => r.value,
            Err(e) => {
                inner_error.set(Some(e));
                f64::NAN
            }
        }
    };
    let outer = integrate_finite(inner, 0.0, l, spec, &[]);
    if let Some(e) = inner_error.take() {
        return Err(e.into());
    }
    Ok(MU_0 / (4.0 * PI) * outer?.value)
}

/// Coupling `m = M / L` and its separation gradient `d(m^2)/dd`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingProfile {
    pub coupling: f64,
    pub coupling_sq_gradient: f64,
}

pub fn coupling_profile(g: &WireGeometry) -> Result<CouplingProfile> {
    let l = self_inductance(g)?;
    let m = mutual_inductance(g)? / l;
    if m >= 1.0 {
        return Err(Error::ModelValidity(m));
    }
    let dm_dd = mutual_inductance_gradient(g)? / l;
    Ok(CouplingProfile {
        coupling: m,
        coupling_sq_gradient: 2.0 * m * dm_dd,
    })
}
