//! Small dense 4×4 helpers over any [`Scalar`].

use crate::jet::Scalar;

/// Gauss–Jordan inverse with partial pivoting on point values.
pub fn inverse<S: Scalar>(m: &[[S; 4]; 4]) -> Option<[[S; 4]; 4]> {
    let mut a = *m;
    let mut inv = [[S::zero(); 4]; 4];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = S::one();
    }
    let scale = m
        .iter()
        .flatten()
        .fold(0.0f64, |s, x| s.max(x.value().abs()));
    for col in 0..4 {
        let piv = (col..4)
            .max_by(|&i, &j| a[i][col].value().abs().total_cmp(&a[j][col].value().abs()))?;
        if a[piv][col].value().abs() <= 1e-14 * scale.max(1e-300) {
            return None;
        }
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].recip();
        for k in 0..4 {
            a[col][k] = a[col][k] * p;
            inv[col][k] = inv[col][k] * p;
        }
        for r in 0..4 {
            if r == col {
                continue;
            }
            let f = a[r][col];
            if f.is_zero() {
                continue;
            }
            for k in 0..4 {
                let ak = a[col][k];
                let ik = inv[col][k];
                a[r][k] -= f * ak;
                inv[r][k] -= f * ik;
            }
        }
    }
    Some(inv)
}

pub fn matmul<S: Scalar>(a: &[[S; 4]; 4], b: &[[S; 4]; 4]) -> [[S; 4]; 4] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut s = S::zero();
            for k in 0..4 {
                s += a[i][k] * b[k][j];
            }
            s
        })
    })
}

pub fn transpose<S: Scalar>(a: &[[S; 4]; 4]) -> [[S; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i]))
}

pub fn max_abs_diff(a: &[[f64; 4]; 4], b: &[[f64; 4]; 4]) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            m = m.max((a[i][j] - b[i][j]).abs());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let m = [
            [2.0, 1.0, 0.0, 0.5],
            [0.0, 3.0, 1.0, 0.0],
            [1.0, 0.0, 1.0, 2.0],
            [0.0, 0.2, 0.0, 1.0],
        ];
        let inv = inverse(&m).unwrap();
        let id = matmul(&m, &inv);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((id[i][j] - want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn singular_is_none() {
        let m = [
            [1.0, 2.0, 0.0, 0.0],
            [2.0, 4.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ];
        assert!(inverse(&m).is_none());
    }
}
