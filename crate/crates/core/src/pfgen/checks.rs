//! Membership tests for log-concave, `PF_r` and `PF_∞` sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::detpoly::validate_values;
use crate::exactmath::rational::{serde_rational, to_f64};
use crate::exactmath::{Polynomial, Rational};
use crate::rootcheck::real_rooted_negative;

/// `f_k^2 >= f_{k-1} f_{k+1}` (strict: `>`) on the interior of the positive support,
/// together with nonnegativity and the no-internal-zeros rule.
pub fn check_log_concave(values: &[Rational], strict: bool) -> bool {
    if validate_values(values).is_err() {
        return false;
    }
    let first = values.iter().position(|v| !v.is_zero()).unwrap_or(0);
    let last = values.iter().rposition(|v| !v.is_zero()).unwrap_or(0);
    (first + 1..last).all(|k| {
        let lhs = &values[k] * &values[k];
        let rhs = &values[k - 1] * &values[k + 1];
        if strict {
            lhs > rhs
        } else {
            lhs >= rhs
        }
    })
}

/// A negative minor of the upper-triangular Toeplitz matrix `T[i][j] = f_{j-i}`.
/// Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorCheckResult {
    pub order_checked: usize,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<MinorWitness>,
}

/// Clears denominators; minor signs are unchanged by a positive common factor.
fn integer_scaled(values: &[Rational]) -> Vec<BigInt> {
    let lcm = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    values
        .iter()
        .map(|v| (v * Rational::from_integer(lcm.clone())).to_integer())
        .collect()
}

/// Fraction-free (Bareiss) determinant with row pivoting.
pub(crate) fn det_bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn det_rational(m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut a = m;
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= &a[k][k];
        for i in k + 1..n {
            let factor = &a[i][k] / &a[k][k];
            for j in k..n {
                let t = &factor * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

/// Equilibrates rows and columns to unit max-norm (a positive diagonal scaling,
/// so the sign is unchanged), then runs partially pivoted elimination. Only a
/// determinant far above the rounding error bound counts as positive.
fn float_det_positive(m: &mut [Vec<f64>]) -> bool {
    let k = m.len();
    for row in m.iter_mut() {
        let max = row.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        if max == 0.0 {
            return false;
        }
        row.iter_mut().for_each(|x| *x /= max);
    }
    for j in 0..k {
        let max = m.iter().fold(0.0f64, |a, row| a.max(row[j].abs()));
        if max == 0.0 {
            return false;
        }
        m.iter_mut().for_each(|row| row[j] /= max);
    }
    let mut det = 1.0;
    for c in 0..k {
        let p = (c..k)
            .max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs()))
            .expect("nonempty");
        if m[p][c] == 0.0 {
            return false;
        }
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for i in c + 1..k {
            let factor = m[i][c] / m[c][c];
            for j in c..k {
                m[i][j] -= factor * m[c][j];
            }
        }
    }
    // entries are at most 1 after scaling; this dominates the elimination error
    let kf = k as f64;
    let tolerance = kf * 2f64.powi(k as i32) * kf.powf(kf / 2.0) * 2f64.powi(-40);
    det > tolerance
}

/// Float images of the sequence, or `None` when some nonzero value would
/// underflow or overflow.
fn approximate(values: &[Rational]) -> Option<Vec<f64>> {
    values
        .iter()
        .map(|v| {
            if v.is_zero() {
                return Some(0.0);
            }
            let x = to_f64(v);
            (x.is_finite() && x.abs() > 1e-250 && x.abs() < 1e250).then_some(x)
        })
        .collect()
}

/// Depth-first walk over index pairs `(i_1..i_k, j_1..j_k)` with `i_1 = 0` whose
/// submatrix is neither zero by band structure nor block-triangular. Every other
/// minor is zero or a product of smaller ones (up to a common shift), so checking
/// these for each order `<= r` is equivalent to checking all minors of order `<= r`.
struct IrreducibleMinors<'a> {
    g: &'a [BigInt],
    approx: Option<&'a [f64]>,
    n: i64,
    order: usize,
    rows: Vec<i64>,
    cols: Vec<i64>,
}

impl IrreducibleMinors<'_> {
    fn entry(&self, i: i64, j: i64) -> BigInt {
        let d = j - i;
        if d < 0 || d > self.n {
            BigInt::zero()
        } else {
            self.g[d as usize].clone()
        }
    }

    fn approx_entry(&self, approx: &[f64], i: i64, j: i64) -> f64 {
        let d = j - i;
        if d < 0 || d > self.n {
            0.0
        } else {
            approx[d as usize]
        }
    }

    /// True when a floating-point evaluation shows the current minor is
    /// positive with a wide margin.
    fn clearly_positive(&self) -> bool {
        let Some(approx) = self.approx else { return false };
        let mut m: Vec<Vec<f64>> = self
            .rows
            .iter()
            .map(|&i| self.cols.iter().map(|&j| self.approx_entry(approx, i, j)).collect())
            .collect();
        float_det_positive(&mut m)
    }

    fn find_negative(&mut self) -> Option<(Vec<i64>, Vec<i64>)> {
        let t = self.rows.len();
        if t == self.order && self.cols.len() == t {
            if self.clearly_positive() {
                return None;
            }
            let m: Vec<Vec<BigInt>> = self
                .rows
                .iter()
                .map(|&i| self.cols.iter().map(|&j| self.entry(i, j)).collect())
                .collect();
            return det_bareiss(m).is_negative().then(|| (self.rows.clone(), self.cols.clone()));
        }
        if self.cols.len() < t {
            // choose j_t in [max(i_t, j_{t-1}+1), min(i_t, i_{t-1}) + n]
            let i_t = self.rows[t - 1];
            let lo = self.cols.last().map_or(i_t, |&j| (j + 1).max(i_t));
            let hi = if t >= 2 { self.rows[t - 2] + self.n } else { i_t + self.n };
            for j in lo..=hi {
                self.cols.push(j);
                let found = self.find_negative();
                self.cols.pop();
                if found.is_some() {
                    return found;
                }
            }
            return None;
        }
        // choose i_{t+1} in (i_t, j_t]
        let (i_t, j_t) = (self.rows[t - 1], self.cols[t - 1]);
        for i in i_t + 1..=j_t {
            self.rows.push(i);
            let found = self.find_negative();
            self.rows.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// Checks every minor of order `1..=r` of `T[i][j] = f_{j-i}` for nonnegativity.
pub fn check_pf_r(values: &[Rational], r: usize) -> MinorCheckResult {
    if let Some(k) = values.iter().position(|v| v.is_negative()) {
        return MinorCheckResult {
            order_checked: r,
            ok: false,
            witness: Some(MinorWitness {
                rows: vec![1],
                cols: vec![k + 1],
                value: values[k].clone(),
            }),
        };
    }
    let g = integer_scaled(values);
    let approx = approximate(values);
    let n = values.len() as i64 - 1;
    for order in 2..=r {
        let mut walk = IrreducibleMinors {
            g: &g,
            approx: approx.as_deref(),
            n,
            order,
            rows: vec![0],
            cols: Vec::new(),
        };
        if let Some((rows, cols)) = walk.find_negative() {
            let at = |i: i64, j: i64| {
                let d = j - i;
                if d < 0 || d > n {
                    Rational::zero()
                } else {
                    values[d as usize].clone()
                }
            };
            let value = det_rational(rows.iter().map(|&i| cols.iter().map(|&j| at(i, j)).collect()).collect());
            return MinorCheckResult {
                order_checked: r,
                ok: false,
                witness: Some(MinorWitness {
                    rows: rows.iter().map(|&i| i as usize + 1).collect(),
                    cols: cols.iter().map(|&j| j as usize + 1).collect(),
                    value,
                }),
            };
        }
    }
    MinorCheckResult {
        order_checked: r,
        ok: true,
        witness: None,
    }
}

/// Whether `Σ f_k x^k` has only real, strictly negative zeros.
pub fn check_pf_inf(values: &[Rational]) -> bool {
    if values.iter().any(|v| v.is_negative()) {
        return false;
    }
    let p = Polynomial::from_coeffs(values.to_vec());
    if p.is_zero() {
        return false;
    }
    real_rooted_negative(&p).is_ok_and(|v| v.holds)
}
