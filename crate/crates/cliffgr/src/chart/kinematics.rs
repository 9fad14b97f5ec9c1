//! Acceleration, rotation, shear and expansion of a unit timelike field.
//!
//! With `K_αβ = Z_{α;β}` and `p_αβ = g_αβ − Z_α Z_β`,
//! `K = a ⊗ Z + ϖ + σ + (E/3) p`.

use super::{Geometry, GeometryError};
use crate::jet::Jet;

#[derive(Clone, Debug)]
pub struct FrameKinematics {
    /// Covariant acceleration `a_α = Z^β Z_{α;β}`.
    pub acceleration: [f64; 4],
    pub rotation: [[f64; 4]; 4],
    pub shear: [[f64; 4]; 4],
    pub expansion: f64,
    /// `Z_{α;β}` as computed.
    pub gradient: [[f64; 4]; 4],
    pub projector: [[f64; 4]; 4],
    /// Covariant components `Z_α`.
    pub z_lower: [f64; 4],
}

impl FrameKinematics {
    /// `√(−a_α a^α)`.
    pub fn acceleration_magnitude(&self, ginv: &[[f64; 4]; 4]) -> f64 {
        let mut s = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                s += ginv[a][b] * self.acceleration[a] * self.acceleration[b];
            }
        }
        (-s).max(0.0).sqrt()
    }

    /// Max-norm residual of the reassembled decomposition.
    pub fn reassembly_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                let r = self.acceleration[a] * self.z_lower[b]
                    + self.rotation[a][b]
                    + self.shear[a][b]
                    + self.expansion / 3.0 * self.projector[a][b];
                worst = worst.max((r - self.gradient[a][b]).abs());
            }
        }
        worst
    }

    /// Max of `|ϖ(Z,·)|` and `|σ(Z,·)|` using contravariant `Z^α`.
    pub fn orthogonality_residual(&self, z_upper: &[f64; 4]) -> f64 {
        let mut worst: f64 = 0.0;
        for b in 0..4 {
            let w: f64 = (0..4).map(|a| z_upper[a] * self.rotation[a][b]).sum();
            let s: f64 = (0..4).map(|a| z_upper[a] * self.shear[a][b]).sum();
            worst = worst.max(w.abs()).max(s.abs());
        }
        worst
    }
}

/// Kinematics of the tetrad's own timelike leg `e_0`.
pub fn frame_kinematics(geo: &Geometry) -> Result<FrameKinematics, GeometryError> {
    frame_kinematics_of(geo, geo.e[0])
}

/// Kinematics of a field with contravariant coordinate jets `Z^μ` around the base point.
pub fn frame_kinematics_of(geo: &Geometry, z: [Jet; 4]) -> Result<FrameKinematics, GeometryError> {
    let g = geo.metric();
    let zv: [f64; 4] = z.map(|j| j.value());
    let mut norm = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            norm += g[a][b] * zv[a] * zv[b];
        }
    }
    if (norm - 1.0).abs() > 1e-8 {
        return Err(GeometryError::NotTimelike(norm));
    }
    // Z_α as jets
    let zl: [Jet; 4] = std::array::from_fn(|a| {
        let mut s = Jet::zero();
        for b in 0..4 {
            s += geo.g[a][b] * z[b];
        }
        s
    });
    let gam = geo.christoffels();
    let zlv: [f64; 4] = zl.map(|j| j.value());
    let mut k = [[0.0; 4]; 4];
    for a in 0..4 {
        let grad = zl[a].gradient();
        for b in 0..4 {
            let mut s = grad[b];
            for l in 0..4 {
                s -= gam[l][b][a] * zlv[l];
            }
            k[a][b] = s;
        }
    }
    let mut acc = [0.0; 4];
    for a in 0..4 {
        acc[a] = (0..4).map(|b| zv[b] * k[a][b]).sum();
    }
    let p: [[f64; 4]; 4] =
        std::array::from_fn(|a| std::array::from_fn(|b| g[a][b] - zlv[a] * zlv[b]));
    // mixed projector p^α_μ = δ^α_μ − Z^α Z_μ
    let pm: [[f64; 4]; 4] = std::array::from_fn(|al| {
        std::array::from_fn(|mu| if al == mu { 1.0 } else { 0.0 } - zv[al] * zlv[mu])
    });
    let ginv = geo.ginv.map(|r| r.map(|j| j.value()));
    let mut expansion = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            expansion += ginv[a][b] * k[a][b];
        }
    }
    let mut rot = [[0.0; 4]; 4];
    let mut shear = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            let mut w = 0.0;
            let mut s = 0.0;
            for al in 0..4 {
                for be in 0..4 {
                    let proj = pm[al][mu] * pm[be][nu];
                    w += 0.5 * (k[al][be] - k[be][al]) * proj;
                    s += (0.5 * (k[al][be] + k[be][al]) - expansion / 3.0 * p[al][be]) * proj;
                }
            }
            rot[mu][nu] = w;
            shear[mu][nu] = s;
        }
    }
    Ok(FrameKinematics {
        acceleration: acc,
        rotation: rot,
        shear,
        expansion,
        gradient: k,
        projector: p,
        z_lower: zlv,
    })
}
