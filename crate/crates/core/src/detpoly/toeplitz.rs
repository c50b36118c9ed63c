//! `P_n^r(x)`: the `z^n` coefficient (times `n!`) of the `r × r` Toeplitz
//! determinant `det[f(x + j - i; z)]`, built two ways.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::build::{check_len, pochhammer_table};
use super::sequence::Sequence;
use crate::error::{invalid, Result};
use crate::exactmath::{factorial, int, multinomial, Polynomial, Rational};

/// All `(k_1..k_r)` with `k_i ≥ 0` and `Σ k_i = n`, in lexicographic order.
pub fn compositions(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(rem: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            cur.push(rem);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=rem {
            cur.push(k);
            go(rem - k, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r > 0 {
        go(n, r, &mut Vec::with_capacity(r), &mut out);
    }
    out
}

fn check_nr(n: usize, r: usize, f: &Sequence) -> Result<()> {
    if r < 2 {
        return invalid(format!("r must be at least 2, got {r}"));
    }
    check_len(n, f)
}

/// Rising factorials `(x + s)_k` for every shift `s ∈ [-(r-1), r-1]` and `k ≤ n`.
struct PochhammerCache {
    r: usize,
    tables: Vec<Vec<Polynomial>>,
}

impl PochhammerCache {
    fn new(n: usize, r: usize) -> Self {
        let tables = (0..2 * r - 1)
            .map(|i| pochhammer_table(&int(i as i64 - (r as i64 - 1)), n))
            .collect();
        Self { r, tables }
    }

    fn get(&self, shift: i64, k: usize) -> &Polynomial {
        &self.tables[(shift + self.r as i64 - 1) as usize][k]
    }
}

/// Cofactor expansion along successive rows, memoised on the set of used columns.
fn det_cofactor(m: &[Vec<&Polynomial>]) -> Polynomial {
    fn go(
        row: usize,
        used: u32,
        m: &[Vec<&Polynomial>],
        memo: &mut HashMap<u32, Polynomial>,
    ) -> Polynomial {
        let r = m.len();
        if row == r {
            return Polynomial::one();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = Polynomial::zero();
        let mut position = 0;
        for col in 0..r {
            if used & (1 << col) != 0 {
                continue;
            }
            let entry = m[row][col];
            if !entry.is_zero() {
                let minor = go(row + 1, used | (1 << col), m, memo);
                let term = entry * &minor;
                acc = if position % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            position += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }
    go(0, 0, m, &mut HashMap::new())
}

/// `Σ_{k_1+..+k_r=n} C(n; k_1..k_r) f_{k_1}..f_{k_r} det[(x + j - i)_{k_i}]`.
pub fn build_p_r(n: usize, r: usize, f: &Sequence) -> Result<Polynomial> {
    check_nr(n, r, f)?;
    let cache = PochhammerCache::new(n, r);
    let mut acc = Polynomial::zero();
    for ks in compositions(n, r) {
        let weight = ks
            .iter()
            .fold(Rational::one(), |w, &k| w * f.get(k as i64));
        if weight.is_zero() {
            continue;
        }
        let matrix: Vec<Vec<&Polynomial>> = ks
            .iter()
            .enumerate()
            .map(|(i, &k)| (0..r).map(|j| cache.get(j as i64 - i as i64, k)).collect())
            .collect();
        let det = det_cofactor(&matrix);
        if det.is_zero() {
            continue;
        }
        acc = &acc + &det.scale(&(weight * multinomial(n, &ks)?));
    }
    Ok(acc)
}

/// A power series in `z` truncated after `z^order`, with polynomial coefficients.
type Series = Vec<Polynomial>;

fn series_mul(a: &Series, b: &Series, order: usize) -> Series {
    (0..=order)
        .map(|t| {
            (0..=t)
                .filter(|&i| !a[i].is_zero() && !b[t - i].is_zero())
                .map(|i| &a[i] * &b[t - i])
                .sum()
        })
        .collect()
}

/// Heap's algorithm; yields each permutation of `0..r` with its sign.
fn permutations(r: usize) -> Vec<(Vec<usize>, bool)> {
    let mut p: Vec<usize> = (0..r).collect();
    let mut c = vec![0usize; r];
    let mut even = true;
    let mut out = vec![(p.clone(), even)];
    let mut i = 0;
    while i < r {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            even = !even;
            out.push((p.clone(), even));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Independent route: expands `det[f(x + j - i; z)]` over all permutations
/// with `z`-truncated series arithmetic, then returns `n! [z^n]`.
pub fn series_oracle(n: usize, r: usize, f: &Sequence) -> Result<Polynomial> {
    check_nr(n, r, f)?;
    // entry(s) = Σ_k f_k (x+s)_k z^k / k!
    let entry = |s: i64| -> Series {
        pochhammer_table(&int(s), n)
            .into_iter()
            .enumerate()
            .map(|(k, p)| p.scale(&(f.get(k as i64) / Rational::from_integer(factorial(k)))))
            .collect()
    };
    let entries: HashMap<i64, Series> = (-(r as i64 - 1)..=(r as i64 - 1)).map(|s| (s, entry(s))).collect();
    let mut total: Series = vec![Polynomial::zero(); n + 1];
    for (perm, even) in permutations(r) {
        let mut prod: Series = std::iter::once(Polynomial::one())
            .chain(std::iter::repeat_n(Polynomial::zero(), n))
            .collect();
        for (i, &j) in perm.iter().enumerate() {
            prod = series_mul(&prod, &entries[&(j as i64 - i as i64)], n);
        }
        for (t, c) in total.iter_mut().zip(prod) {
            *t = if even { &*t + &c } else { &*t - &c };
        }
    }
    Ok(total.swap_remove(n).scale(&Rational::from_integer(factorial(n))))
}
