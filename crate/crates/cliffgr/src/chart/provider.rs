//! Finite-difference derivative provider.
//!
//! Builds third-order coframe jets from tensor-product central stencils of
//! point evaluations. A derivative of total degree `k` uses step
//! `h_k = h^{3/(k+2)} (1 + |x^v|)`, which balances truncation against
//! rounding for each degree when `h ≈ 1e−5`. Optional Richardson
//! extrapolation combines steps `h_k` and `h_k/2`.

use super::{ChartPoint, Coframe, GeometryError, Tetrad};
use crate::jet::{exponents, Jet, NMONO};
use rand::RngCore;
use std::collections::HashMap;

/// Wraps a tetrad, discarding its analytic derivatives.
pub struct FiniteDifference<T: Tetrad> {
    pub inner: T,
    pub step: f64,
    pub richardson: bool,
}

pub const DEFAULT_STEP: f64 = 1e-5;

impl<T: Tetrad> FiniteDifference<T> {
    pub fn new(inner: T) -> Self {
        FiniteDifference {
            inner,
            step: DEFAULT_STEP,
            richardson: false,
        }
    }

    pub fn with_step(inner: T, step: f64) -> Self {
        FiniteDifference {
            inner,
            step,
            richardson: false,
        }
    }

    pub fn richardson(mut self, on: bool) -> Self {
        self.richardson = on;
        self
    }

    fn step_for(&self, degree: u8) -> f64 {
        self.step.powf(3.0 / (degree as f64 + 2.0))
    }

    fn coefficients(&self, x: ChartPoint, scale: f64) -> [[[f64; NMONO]; 4]; 4] {
        let mut out = [[[0.0; NMONO]; 4]; 4];
        let f0 = self.inner.coframe_f64(x);
        for a in 0..4 {
            for mu in 0..4 {
                out[a][mu][0] = f0[a][mu];
            }
        }
        let mut cache: HashMap<([i8; 4], u8), Coframe<f64>> = HashMap::new();
        for k in 1..NMONO {
            let e = exponents(k);
            let deg: u8 = e.iter().sum();
            let h = self.step_for(deg) * scale;
            let steps: [f64; 4] = std::array::from_fn(|v| h * (1.0 + x[v].abs()));
            // tensor product of 1-D stencils, one per variable
            let mut terms: Vec<([i8; 4], f64)> = vec![([0; 4], 1.0)];
            for v in 0..4 {
                let st = stencil(e[v]);
                let mut next = Vec::with_capacity(terms.len() * st.len());
                for (off, w) in &terms {
                    for (o, sw) in st {
                        let mut off2 = *off;
                        off2[v] = *o;
                        next.push((off2, w * sw / steps[v].powi(e[v] as i32)));
                    }
                }
                terms = next;
            }
            let fact: f64 = e
                .iter()
                .map(|&n| (1..=n as u32).product::<u32>() as f64)
                .product();
            for (off, w) in terms {
                let val = cache.entry((off, deg)).or_insert_with(|| {
                    let p: ChartPoint = std::array::from_fn(|v| x[v] + off[v] as f64 * steps[v]);
                    self.inner.coframe_f64(p)
                });
                for a in 0..4 {
                    for mu in 0..4 {
                        out[a][mu][k] += w * val[a][mu] / fact;
                    }
                }
            }
        }
        out
    }
}

fn stencil(order: u8) -> &'static [(i8, f64)] {
    match order {
        0 => &[(0, 1.0)],
        1 => &[(-1, -0.5), (1, 0.5)],
        2 => &[(-1, 1.0), (0, -2.0), (1, 1.0)],
        3 => &[(-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)],
        _ => unreachable!(),
    }
}

impl<T: Tetrad> Tetrad for FiniteDifference<T> {
    fn name(&self) -> String {
        self.inner.name()
    }
    fn coframe_f64(&self, x: ChartPoint) -> Coframe<f64> {
        self.inner.coframe_f64(x)
    }
    fn coframe_jet(&self, x: ChartPoint) -> Coframe<Jet> {
        let mut c = self.coefficients(x, 1.0);
        if self.richardson {
            let half = self.coefficients(x, 0.5);
            for a in 0..4 {
                for mu in 0..4 {
                    for k in 1..NMONO {
                        c[a][mu][k] = (4.0 * half[a][mu][k] - c[a][mu][k]) / 3.0;
                    }
                }
            }
        }
        c.map(|r| r.map(|co| Jet::from_coeffs(co, crate::jet::MAX_ORDER)))
    }
    fn check_domain(&self, x: ChartPoint) -> Result<(), GeometryError> {
        self.inner.check_domain(x)
    }
    fn sample(&self, rng: &mut dyn RngCore) -> ChartPoint {
        self.inner.sample(rng)
    }
    fn energy_momentum(&self, x: ChartPoint) -> Option<[[f64; 4]; 4]> {
        self.inner.energy_momentum(x)
    }
    fn asymptotically_cartesian(&self) -> bool {
        self.inner.asymptotically_cartesian()
    }
    fn provider(&self) -> &'static str {
        "fd"
    }
}
