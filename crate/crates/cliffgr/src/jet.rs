//! Truncated Taylor jets in the four chart coordinates.
//!
//! A [`Jet`] carries the Taylor coefficients of a scalar field around a base
//! point, up to total degree [`MAX_ORDER`]. Arithmetic on jets propagates the
//! expansion exactly (forward-mode differentiation), so every quantity built
//! from a tetrad (metric, connection, curvature, their derivatives) is known
//! to machine precision without finite-difference noise.
//!
//! Each jet tracks the highest degree it is valid to. Differentiation lowers
//! it by one; binary operations keep the minimum. Reading a derivative past
//! the valid order panics, which turns "not enough derivatives" bugs into
//! loud failures instead of silent zeros.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

/// Highest total degree carried by a jet.
pub const MAX_ORDER: u8 = 3;
/// Number of monomials of degree ≤ 3 in four variables.
pub const NMONO: usize = 35;

const DEG_START: [usize; 5] = [0, 1, 5, 15, 35];

struct Tables {
    exps: [[u8; 4]; NMONO],
    /// (i, j, k) with x^i x^j = x^k, sorted by deg(k).
    mul: Vec<(u8, u8, u8)>,
    /// mul-prefix length valid for a result of order n.
    mul_len: [usize; 4],
    /// deriv[v][k] = (index of k + e_v, multiplicity) for deg(k) ≤ 2.
    deriv: [[(u8, f64); 15]; 4],
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let mut exps = [[0u8; 4]; NMONO];
        let mut n = 0;
        for deg in 0..=3u8 {
            // lexicographic descending in the first exponent keeps x^0 first
            for a in (0..=deg).rev() {
                for b in (0..=deg - a).rev() {
                    for c in (0..=deg - a - b).rev() {
                        let d = deg - a - b - c;
                        exps[n] = [a, b, c, d];
                        n += 1;
                    }
                }
            }
        }
        assert_eq!(n, NMONO);
        let index = |e: [u8; 4]| exps.iter().position(|x| *x == e);
        let mut mul = Vec::new();
        for k in 0..NMONO {
            for i in 0..NMONO {
                for j in 0..NMONO {
                    let s = [
                        exps[i][0] + exps[j][0],
                        exps[i][1] + exps[j][1],
                        exps[i][2] + exps[j][2],
                        exps[i][3] + exps[j][3],
                    ];
                    if s == exps[k] {
                        mul.push((i as u8, j as u8, k as u8));
                    }
                }
            }
        }
        let mut mul_len = [0usize; 4];
        for (n, len) in mul_len.iter_mut().enumerate() {
            *len = mul
                .iter()
                .filter(|t| (t.2 as usize) < DEG_START[n + 1])
                .count();
        }
        let mut deriv = [[(0u8, 0.0); 15]; 4];
        for v in 0..4 {
            for k in 0..15 {
                let mut e = exps[k];
                e[v] += 1;
                let t = index(e).expect("degree ≤ 3");
                deriv[v][k] = (t as u8, e[v] as f64);
            }
        }
        Tables {
            exps,
            mul,
            mul_len,
            deriv,
        }
    })
}

/// Multi-index exponents of monomial `k`.
pub fn exponents(k: usize) -> [u8; 4] {
    tables().exps[k]
}

/// Index of the monomial with the given exponents, if its degree is ≤ 3.
pub fn monomial_index(e: [u8; 4]) -> Option<usize> {
    tables().exps.iter().position(|x| *x == e)
}

/// Truncated Taylor expansion `f(x0 + δ) = Σ c_α δ^α`.
#[derive(Clone, Copy, PartialEq)]
pub struct Jet {
    c: [f64; NMONO],
    order: u8,
}

impl Jet {
    /// Exact constant (valid to every order).
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; NMONO];
        c[0] = v;
        Jet {
            c,
            order: MAX_ORDER,
        }
    }

    pub fn zero() -> Self {
        Jet::constant(0.0)
    }

    /// Coordinate function `x^k` expanded at `x0`.
    pub fn variable(x0: f64, k: usize) -> Self {
        let mut j = Jet::constant(x0);
        j.c[1 + k] = 1.0;
        j
    }

    /// The four coordinate jets at a base point.
    pub fn coordinates(x0: [f64; 4]) -> [Jet; 4] {
        [0, 1, 2, 3].map(|k| Jet::variable(x0[k], k))
    }

    /// Builds a jet from raw Taylor coefficients.
    pub fn from_coeffs(c: [f64; NMONO], order: u8) -> Self {
        let mut j = Jet { c, order };
        j.truncate();
        j
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn coeffs(&self) -> &[f64; NMONO] {
        &self.c
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// Lowers the valid order, discarding higher coefficients.
    pub fn with_order(mut self, order: u8) -> Self {
        if order < self.order {
            self.order = order;
            self.truncate();
        }
        self
    }

    fn truncate(&mut self) {
        for v in &mut self.c[DEG_START[self.order as usize + 1]..] {
            *v = 0.0;
        }
    }

    /// Partial derivative `∂_v`; the result is valid to one order less.
    pub fn derivative(&self, v: usize) -> Jet {
        assert!(self.order > 0, "derivative of an order-0 jet");
        let t = tables();
        let order = self.order - 1;
        let mut c = [0.0; NMONO];
        for (k, slot) in c.iter_mut().enumerate().take(DEG_START[order as usize + 1]) {
            let (src, mult) = t.deriv[v][k];
            *slot = mult * self.c[src as usize];
        }
        Jet { c, order }
    }

    /// Value of the partial derivative ∂^α f at the base point.
    pub fn partial(&self, e: [u8; 4]) -> f64 {
        let deg: u8 = e.iter().sum();
        assert!(
            deg <= self.order,
            "jet order {} too low for degree {}",
            self.order,
            deg
        );
        let k = monomial_index(e).expect("degree ≤ 3");
        let fact: f64 = e
            .iter()
            .map(|&n| (1..=n as u32).product::<u32>() as f64)
            .product();
        self.c[k] * fact
    }

    /// Gradient at the base point.
    pub fn gradient(&self) -> [f64; 4] {
        [0, 1, 2, 3].map(|v| {
            let mut e = [0u8; 4];
            e[v] = 1;
            self.partial(e)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|v| *v == 0.0)
    }

    /// Largest absolute Taylor coefficient.
    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scale(mut self, s: f64) -> Self {
        for v in &mut self.c {
            *v *= s;
        }
        self
    }

    /// Composition `f(self)` given `f, f', f'', f'''` at the base value.
    pub fn compose(&self, d: [f64; 4]) -> Jet {
        let mut delta = *self;
        delta.c[0] = 0.0;
        let mut out = Jet::constant(d[0]).with_order(self.order);
        let mut pow = delta;
        let mut fact = 1.0;
        for (n, dn) in d.iter().enumerate().skip(1) {
            if n as u8 > self.order {
                break;
            }
            fact *= n as f64;
            out += pow.scale(dn / fact);
            if n < 3 {
                pow *= delta;
            }
        }
        out
    }

    pub fn recip(&self) -> Jet {
        let a = self.c[0];
        self.compose([
            1.0 / a,
            -1.0 / (a * a),
            2.0 / (a * a * a),
            -6.0 / (a * a * a * a),
        ])
    }

    pub fn powf(&self, p: f64) -> Jet {
        let a = self.c[0];
        self.compose([
            a.powf(p),
            p * a.powf(p - 1.0),
            p * (p - 1.0) * a.powf(p - 2.0),
            p * (p - 1.0) * (p - 2.0) * a.powf(p - 3.0),
        ])
    }

    pub fn sqrt(&self) -> Jet {
        self.powf(0.5)
    }

    pub fn exp(&self) -> Jet {
        let e = self.c[0].exp();
        self.compose([e, e, e, e])
    }

    pub fn ln(&self) -> Jet {
        let a = self.c[0];
        self.compose([a.ln(), 1.0 / a, -1.0 / (a * a), 2.0 / (a * a * a)])
    }

    pub fn sin(&self) -> Jet {
        let (s, c) = self.c[0].sin_cos();
        self.compose([s, c, -s, -c])
    }

    pub fn cos(&self) -> Jet {
        let (s, c) = self.c[0].sin_cos();
        self.compose([c, -s, -c, s])
    }

    pub fn atanh(&self) -> Jet {
        let a = self.c[0];
        let u = 1.0 - a * a;
        self.compose([
            a.atanh(),
            1.0 / u,
            2.0 * a / (u * u),
            (2.0 + 6.0 * a * a) / (u * u * u),
        ])
    }

    pub fn atan2(&self, x: &Jet) -> Jet {
        // atan(y/x) with the quadrant fixed by the base values
        let base = self.c[0].atan2(x.c[0]);
        let t = *self / *x;
        let a = t.c[0];
        let u = 1.0 + a * a;
        let mut j = t.compose([
            0.0,
            1.0 / u,
            -2.0 * a / (u * u),
            (6.0 * a * a - 2.0) / (u * u * u),
        ]);
        j.c[0] = base;
        j
    }

    pub fn acos(&self) -> Jet {
        let a = self.c[0];
        let u = 1.0 - a * a;
        let s = u.sqrt();
        self.compose([
            a.acos(),
            -1.0 / s,
            -a / (u * s),
            -(1.0 + 2.0 * a * a) / (u * u * s),
        ])
    }
}

impl Default for Jet {
    fn default() -> Self {
        Jet::zero()
    }
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Jet(o{}; {:?} | {:?})",
            self.order,
            self.c[0],
            &self.c[1..5]
        )
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, rhs: Jet) -> Jet {
        self += rhs;
        self
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, rhs: Jet) {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            *a += b;
        }
        if rhs.order < self.order {
            self.order = rhs.order;
            self.truncate();
        }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: Jet) -> Jet {
        self -= rhs;
        self
    }
}

impl SubAssign for Jet {
    fn sub_assign(&mut self, rhs: Jet) {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            *a -= b;
        }
        if rhs.order < self.order {
            self.order = rhs.order;
            self.truncate();
        }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let order = self.order.min(rhs.order);
        let t = tables();
        let mut c = [0.0; NMONO];
        // constants are common: shortcut
        if self.c[1..].iter().all(|v| *v == 0.0) {
            let s = self.c[0];
            for k in 0..DEG_START[order as usize + 1] {
                c[k] = s * rhs.c[k];
            }
            return Jet { c, order };
        }
        if rhs.c[1..].iter().all(|v| *v == 0.0) {
            let s = rhs.c[0];
            for k in 0..DEG_START[order as usize + 1] {
                c[k] = s * self.c[k];
            }
            return Jet { c, order };
        }
        for &(i, j, k) in &t.mul[..t.mul_len[order as usize]] {
            c[k as usize] += self.c[i as usize] * rhs.c[j as usize];
        }
        Jet { c, order }
    }
}

impl MulAssign for Jet {
    fn mul_assign(&mut self, rhs: Jet) {
        *self = *self * rhs;
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        if rhs.c[1..].iter().all(|v| *v == 0.0) {
            return self.scale(1.0 / rhs.c[0]).with_order(rhs.order);
        }
        self * rhs.recip()
    }
}

/// Field of scalars the algebra kernel is generic over: `f64` at a point,
/// [`Jet`] when derivatives must be carried along.
pub trait Scalar:
    Copy
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    fn from_f64(v: f64) -> Self;
    fn value(&self) -> f64;
    fn is_zero(&self) -> bool;
    /// Largest magnitude carried (the value for `f64`, every Taylor coefficient for jets).
    fn magnitude(&self) -> f64;
    fn scale(self, s: f64) -> Self;
    fn sqrt(self) -> Self;
    fn powf(self, p: f64) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn atanh(self) -> Self;
    fn acos(self) -> Self;
    fn atan2(self, x: Self) -> Self;
    fn recip(self) -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn one() -> Self {
        Self::from_f64(1.0)
    }
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn value(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn powf(self, p: f64) -> Self {
        f64::powf(self, p)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn atanh(self) -> Self {
        f64::atanh(self)
    }
    fn acos(self) -> Self {
        f64::acos(self)
    }
    fn atan2(self, x: Self) -> Self {
        f64::atan2(self, x)
    }
    fn recip(self) -> Self {
        1.0 / self
    }
}

impl Scalar for Jet {
    fn from_f64(v: f64) -> Self {
        Jet::constant(v)
    }
    fn value(&self) -> f64 {
        self.c[0]
    }
    fn is_zero(&self) -> bool {
        Jet::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        self.max_abs()
    }
    fn scale(self, s: f64) -> Self {
        Jet::scale(self, s)
    }
    fn sqrt(self) -> Self {
        Jet::sqrt(&self)
    }
    fn powf(self, p: f64) -> Self {
        Jet::powf(&self, p)
    }
    fn sin(self) -> Self {
        Jet::sin(&self)
    }
    fn cos(self) -> Self {
        Jet::cos(&self)
    }
    fn exp(self) -> Self {
        Jet::exp(&self)
    }
    fn ln(self) -> Self {
        Jet::ln(&self)
    }
    fn atanh(self) -> Self {
        Jet::atanh(&self)
    }
    fn acos(self) -> Self {
        Jet::acos(&self)
    }
    fn atan2(self, x: Self) -> Self {
        Jet::atan2(&self, &x)
    }
    fn recip(self) -> Self {
        Jet::recip(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval_poly(j: &Jet, d: [f64; 4]) -> f64 {
        (0..NMONO)
            .map(|k| {
                let e = exponents(k);
                j.c[k] * (0..4).map(|v| d[v].powi(e[v] as i32)).product::<f64>()
            })
            .sum()
    }

    #[test]
    fn table_sizes() {
        let t = tables();
        assert_eq!(t.mul.len(), 165);
        assert_eq!(t.mul_len, [1, 9, 45, 165]);
    }

    #[test]
    fn product_of_polynomials_is_exact() {
        let x = Jet::coordinates([0.5, -1.0, 2.0, 0.25]);
        let p = x[0] * x[1] + x[2] * x[2] * x[3];
        let d: [f64; 4] = [1e-3, 2e-3, -1e-3, 5e-4];
        let exact = (0.5 + d[0]) * (-1.0 + d[1]) + (2.0 + d[2]).powi(2) * (0.25 + d[3]);
        assert!((eval_poly(&p, d) - exact).abs() < 1e-15);
    }

    #[test]
    fn elementary_functions_match_derivatives() {
        let x = Jet::variable(0.7, 2);
        let cases: [(Jet, [f64; 4]); 5] = [
            (
                x.sin(),
                [0.7f64.sin(), 0.7f64.cos(), -0.7f64.sin(), -0.7f64.cos()],
            ),
            (x.exp(), [0.7f64.exp(); 4]),
            (x.ln(), [0.7f64.ln(), 1.0 / 0.7, -1.0 / 0.49, 2.0 / 0.343]),
            (
                x.sqrt(),
                [
                    0.7f64.sqrt(),
                    0.5 / 0.7f64.sqrt(),
                    -0.25 * 0.7f64.powf(-1.5),
                    0.375 * 0.7f64.powf(-2.5),
                ],
            ),
            (
                x.recip(),
                [1.0 / 0.7, -1.0 / 0.49, 2.0 / 0.343, -6.0 / 0.2401],
            ),
        ];
        for (j, d) in cases {
            for n in 0..4u8 {
                let mut e = [0u8; 4];
                e[2] = n;
                assert!((j.partial(e) - d[n as usize]).abs() < 1e-12, "n={n}");
            }
        }
    }

    #[test]
    fn derivative_lowers_order_and_commutes() {
        let x = Jet::coordinates([1.0, 2.0, 3.0, 4.0]);
        let f = (x[0] * x[1]).sin() * x[3].exp() + x[2] * x[2] * x[1];
        let a = f.derivative(0).derivative(1);
        let b = f.derivative(1).derivative(0);
        assert_eq!(a.order(), 1);
        for k in 0..5 {
            assert!((a.c[k] - b.c[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn atan2_and_acos_values() {
        let x = Jet::coordinates([-1.0, 2.0, 0.3, 0.0]);
        let a = x[1].atan2(x[0]);
        assert!((a.value() - 2.0f64.atan2(-1.0)).abs() < 1e-15);
        // d/dy atan2(y,x) = x/(x²+y²)
        assert!((a.gradient()[1] - (-1.0 / 5.0)).abs() < 1e-14);
        let c = x[2].acos();
        assert!((c.gradient()[2] + 1.0 / (1.0 - 0.09f64).sqrt()).abs() < 1e-14);
    }

    #[test]
    #[should_panic]
    fn reading_past_order_panics() {
        let x = Jet::variable(1.0, 0)
            .derivative(0)
            .derivative(0)
            .derivative(0);
        x.derivative(0);
    }
}
