//! Random finite Pólya frequency sequences from explicit parameterizations.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::checks::check_pf_r;
use super::precision::{cos_bracket, kv_delta_bound, pi_lower, sqrt_lower};
use crate::detpoly::{Provenance, Sequence};
use crate::error::{invalid, Error, Result};
use crate::exactmath::rational::{
    ceil_to_denominator, format_rational, round_relative, serde_rational, serde_rational_vec,
};
use crate::exactmath::{elementary_symmetric_all, int, rat, Multiset, Polynomial, Rational};

/// Working precision (bits) for square roots and cosines.
const WORK_BITS: u32 = 160;
/// Relative precision (bits) kept in each rounded output value.
const OUTPUT_BITS: u32 = 128;

/// `f_k = f_0^{k+1} δ_1^k δ_2^{k-1} ... δ_k`, i.e. `f_k / f_{k-1} = f_0 δ_1 ... δ_k`.
fn product_form(f0: &Rational, deltas: &[Rational]) -> Vec<Rational> {
    let mut values = Vec::with_capacity(deltas.len() + 1);
    values.push(f0.clone());
    let mut ratio = f0.clone();
    let mut cur = f0.clone();
    for d in deltas {
        ratio *= d;
        cur = &cur * &ratio;
        values.push(cur.clone());
    }
    values
}

fn check_count(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return invalid(format!("{what}: expected {want} deltas, got {got}"));
    }
    Ok(())
}

fn check_positive(what: &str, x: &Rational) -> Result<()> {
    if !x.is_positive() {
        return invalid(format!("{what} must be positive, got {}", format_rational(x)));
    }
    Ok(())
}

/// Log-concave sequence from its successive ratios `δ_k = f_{k-1} f_{k+1} / f_k^2`.
pub fn gen_pf2(n: usize, f0: &Rational, deltas: &[Rational]) -> Result<Sequence> {
    check_count("gen_pf2", deltas.len(), n)?;
    check_positive("f0", f0)?;
    if let Some(d) = deltas.iter().find(|d| !d.is_positive() || **d > int(1)) {
        return invalid(format!("delta {} outside (0, 1]", format_rational(d)));
    }
    Sequence::new(product_form(f0, deltas), Provenance::Pf2)
}

/// Inverse of [`gen_pf2`]: `δ_1 = f_1 / f_0^2`, `δ_{k+1} = f_{k-1} f_{k+1} / f_k^2`.
pub fn recover_deltas(values: &[Rational]) -> Result<Vec<Rational>> {
    if values.is_empty() || values.iter().any(|v| !v.is_positive()) {
        return invalid("recover_deltas needs a nonempty positive sequence");
    }
    let mut deltas = Vec::with_capacity(values.len() - 1);
    if values.len() > 1 {
        deltas.push(&values[1] / (&values[0] * &values[0]));
    }
    for k in 1..values.len().saturating_sub(1) {
        deltas.push(&values[k - 1] * &values[k + 1] / (&values[k] * &values[k]));
    }
    Ok(deltas)
}

/// Ascending coefficients of `Π (x + a_i)`.
pub fn gen_pf_inf(roots: &[Rational]) -> Result<Sequence> {
    if let Some(a) = roots.iter().find(|a| !a.is_positive()) {
        return invalid(format!("root parameter {} must be positive", format_rational(a)));
    }
    let mut values = elementary_symmetric_all(&Multiset::new(roots.to_vec()));
    values.reverse();
    Sequence::new(values, Provenance::PfInf)
}

/// Product form with every `δ` at most the KV bound for order `r`.
pub fn gen_pf_r_cosbound(n: usize, r: usize, f0: &Rational, deltas: &[Rational]) -> Result<Sequence> {
    if r < 2 {
        return invalid("gen_pf_r_cosbound needs r >= 2");
    }
    check_count("gen_pf_r_cosbound", deltas.len(), n)?;
    check_positive("f0", f0)?;
    let bound = kv_delta_bound(r);
    if let Some(d) = deltas.iter().find(|d| !d.is_positive() || **d > bound) {
        return invalid(format!(
            "delta {} outside (0, {}] for r = {r}",
            format_rational(d),
            format_rational(&bound)
        ));
    }
    Sequence::new(product_form(f0, deltas), Provenance::PfR { r })
}

/// A conjugate root pair `-ρ e^{±iφ}` of the sector construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorPair {
    #[serde(with = "serde_rational")]
    pub modulus: Rational,
    #[serde(with = "serde_rational")]
    pub angle: Rational,
}

/// Ascending coefficients of `Π (x + a_i) Π (x^2 + 2ρ c x + ρ^2)` where `c` is `cos φ`
/// rounded up to a multiple of `1/denominator_bound` (capped at 1). Rounding up only
/// narrows the angle, so the pair stays inside the sector. The result is still checked.
pub fn gen_pf_r_sector(
    r: usize,
    real_roots: &[Rational],
    pairs: &[SectorPair],
    denominator_bound: u64,
) -> Result<Sequence> {
    if r < 2 {
        return invalid("gen_pf_r_sector needs r >= 2");
    }
    if denominator_bound == 0 {
        return invalid("denominator_bound must be positive");
    }
    let max_angle = pi_lower() / int(r as i64 + 1);
    let mut poly = Multiset::new(real_roots.to_vec()).product_poly();
    if let Some(a) = real_roots.iter().find(|a| !a.is_positive()) {
        return invalid(format!("root parameter {} must be positive", format_rational(a)));
    }
    for pair in pairs {
        check_positive("modulus", &pair.modulus)?;
        if pair.angle.is_negative() || pair.angle >= max_angle {
            return invalid(format!("angle {} outside [0, pi/{})", format_rational(&pair.angle), r + 1));
        }
        let (_, cos_hi) = cos_bracket(&pair.angle, WORK_BITS);
        let c = ceil_to_denominator(&cos_hi, denominator_bound).min(int(1));
        let rho = &pair.modulus;
        let quad = Polynomial::from_coeffs(vec![rho * rho, int(2) * rho * c, int(1)]);
        poly = &poly * &quad;
    }
    let values = poly.into_coeffs();
    let check = check_pf_r(&values, r);
    if !check.ok {
        return Err(Error::Rejected(format!("sector output failed the order-{r} minor check")));
    }
    Sequence::new(values, Provenance::PfR { r })
}

fn check_q3_deltas(deltas: &[Rational]) -> Result<()> {
    if let Some(d) = deltas.iter().find(|d| d.is_negative() || **d > int(1)) {
        return invalid(format!("delta {} outside [0, 1]", format_rational(d)));
    }
    let first = deltas.iter().position(|d| !d.is_zero());
    let last = deltas.iter().rposition(|d| !d.is_zero());
    if let (Some(a), Some(b)) = (first, last) {
        if deltas[a..=b].iter().any(|d| d.is_zero()) {
            return invalid("deltas have an internal zero");
        }
    }
    Ok(())
}

/// `f_m = f_0 β^m Π_{j=2..m} δ_j^{m+1-j} / Π_{j=2..m} α_j^{(m+2-j)/2}` with
/// `α_2 = 1 + δ_2`, `α_j = 1 + δ_j sqrt(α_{j-1})`. `deltas` holds `δ_2..δ_n`.
/// Square roots are taken to 160 bits; outputs are rounded to 128 significant bits
/// and must pass the order-3 minor check.
pub fn gen_q3(n: usize, f0: &Rational, beta: &Rational, deltas: &[Rational]) -> Result<Sequence> {
    check_count("gen_q3", deltas.len(), n.saturating_sub(1))?;
    check_positive("f0", f0)?;
    if beta.is_negative() {
        return invalid("beta must be nonnegative");
    }
    check_q3_deltas(deltas)?;
    // alpha[i], root[i] belong to index j = i + 2
    let mut alpha: Vec<Rational> = Vec::with_capacity(deltas.len());
    let mut root: Vec<Rational> = Vec::with_capacity(deltas.len());
    for (i, d) in deltas.iter().enumerate() {
        let a = if i == 0 { int(1) + d } else { int(1) + d * &root[i - 1] };
        root.push(sqrt_lower(&a, WORK_BITS));
        alpha.push(a);
    }
    let half_power = |i: usize, e: usize| -> Rational {
        let mut v = alpha[i].pow(e as i32 / 2);
        if e % 2 == 1 {
            v *= &root[i];
        }
        v
    };
    let mut values = Vec::with_capacity(n + 1);
    let mut beta_pow = Rational::one();
    for m in 0..=n {
        let mut num = f0 * &beta_pow;
        let mut den = Rational::one();
        for j in 2..=m {
            num *= deltas[j - 2].pow((m + 1 - j) as i32);
            den *= half_power(j - 2, m + 2 - j);
        }
        let v = num / den;
        values.push(if m >= 2 { round_relative(&v, OUTPUT_BITS) } else { v });
        beta_pow *= beta;
    }
    if !check_pf_r(&values, 3).ok {
        return Err(Error::Rejected("rounded Q3 output failed the order-3 minor check".into()));
    }
    Sequence::new(values, Provenance::Q3)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorClass {
    Pf2,
    PfRCosbound,
    PfRSector,
    PfInfRoots,
    Q3,
    Geometric,
    Ones,
}

/// Everything needed to draw a random sequence of one class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub class: GeneratorClass,
    pub n: usize,
    #[serde(default = "default_r")]
    pub r: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_delta_min", with = "serde_rational")]
    pub delta_min: Rational,
    #[serde(default = "default_denominator_bound")]
    pub denominator_bound: u64,
    #[serde(default)]
    pub strict: bool,
}

fn default_r() -> usize {
    2
}

pub fn default_delta_min() -> Rational {
    rat(1, 10)
}

pub fn default_denominator_bound() -> u64 {
    32
}

/// The concrete parameters behind one generated sequence, enough to rebuild it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum GeneratorParams {
    Pf2 {
        #[serde(with = "serde_rational")]
        f0: Rational,
        #[serde(with = "serde_rational_vec")]
        deltas: Vec<Rational>,
    },
    PfRCosbound {
        r: usize,
        #[serde(with = "serde_rational")]
        f0: Rational,
        #[serde(with = "serde_rational_vec")]
        deltas: Vec<Rational>,
    },
    PfRSector {
        r: usize,
        #[serde(with = "serde_rational_vec")]
        real_roots: Vec<Rational>,
        pairs: Vec<SectorPair>,
        denominator_bound: u64,
    },
    PfInfRoots {
        #[serde(with = "serde_rational_vec")]
        roots: Vec<Rational>,
    },
    Q3 {
        #[serde(with = "serde_rational")]
        f0: Rational,
        #[serde(with = "serde_rational")]
        beta: Rational,
        #[serde(with = "serde_rational_vec")]
        deltas: Vec<Rational>,
    },
    Geometric {
        n: usize,
        #[serde(with = "serde_rational")]
        f0: Rational,
        #[serde(with = "serde_rational")]
        ratio: Rational,
    },
    Ones {
        n: usize,
    },
    Raw {
        #[serde(with = "serde_rational_vec")]
        values: Vec<Rational>,
    },
}

impl GeneratorParams {
    pub fn build(&self) -> Result<Sequence> {
        match self {
            GeneratorParams::Pf2 { f0, deltas } => gen_pf2(deltas.len(), f0, deltas),
            GeneratorParams::PfRCosbound { r, f0, deltas } => gen_pf_r_cosbound(deltas.len(), *r, f0, deltas),
            GeneratorParams::PfRSector {
                r,
                real_roots,
                pairs,
                denominator_bound,
            } => gen_pf_r_sector(*r, real_roots, pairs, *denominator_bound),
            GeneratorParams::PfInfRoots { roots } => gen_pf_inf(roots),
            GeneratorParams::Q3 { f0, beta, deltas } => gen_q3(deltas.len() + 1, f0, beta, deltas),
            GeneratorParams::Geometric { n, f0, ratio } => Sequence::geometric(*n, f0, ratio),
            GeneratorParams::Ones { n } => Ok(Sequence::ones(*n)),
            GeneratorParams::Raw { values } => Sequence::raw(values.clone()),
        }
    }

    /// Last index `n` of the sequence these parameters produce.
    pub fn last_index(&self) -> usize {
        match self {
            GeneratorParams::Pf2 { deltas, .. } | GeneratorParams::PfRCosbound { deltas, .. } => deltas.len(),
            GeneratorParams::PfRSector { real_roots, pairs, .. } => real_roots.len() + 2 * pairs.len(),
            GeneratorParams::PfInfRoots { roots } => roots.len(),
            GeneratorParams::Q3 { deltas, .. } => deltas.len() + 1,
            GeneratorParams::Geometric { n, .. } | GeneratorParams::Ones { n } => *n,
            GeneratorParams::Raw { values } => values.len().saturating_sub(1),
        }
    }
}

/// Uniform over rationals `k/d` in `[lo, hi]` (or `[lo, hi)`), `d` uniform in `1..=max_den`.
pub fn uniform_rational<R: Rng + ?Sized>(
    rng: &mut R,
    lo: &Rational,
    hi: &Rational,
    max_den: u64,
    open_above: bool,
) -> Rational {
    for _ in 0..64 {
        let d = rng.gen_range(1..=max_den.max(1));
        let dr = int(d as i64);
        let a = (lo * &dr).ceil().to_integer();
        let scaled_hi = hi * &dr;
        let b = if open_above {
            scaled_hi.ceil().to_integer() - 1
        } else {
            scaled_hi.floor().to_integer()
        };
        if a <= b {
            let span: i64 = (&b - &a).try_into().unwrap_or(i64::MAX - 1);
            let k = a + rng.gen_range(0..=span);
            return Rational::new(k, d.into());
        }
    }
    lo.clone()
}

/// Approximately log-uniform on `[1/8, 8]`, rounded to a multiple of `1/max_den`.
pub fn log_uniform_rational<R: Rng + ?Sized>(rng: &mut R, max_den: u64) -> Rational {
    let max_den = max_den.max(1);
    let u: f64 = rng.gen_range(-3.0..3.0);
    let k = (u.exp2() * max_den as f64).round().max(1.0) as i64;
    Rational::new(k.into(), (max_den as i64).into())
}

/// A generated sequence with the parameters that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    pub params: GeneratorParams,
    pub sequence: Sequence,
    pub rejections: u32,
}

impl GeneratorSpec {
    pub fn new(class: GeneratorClass, n: usize) -> Self {
        Self {
            class,
            n,
            r: default_r(),
            seed: 0,
            delta_min: default_delta_min(),
            denominator_bound: default_denominator_bound(),
            strict: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.delta_min.is_positive() || self.delta_min >= int(1) {
            return Err(Error::Config("delta_min must lie in (0, 1)".into()));
        }
        if self.denominator_bound == 0 {
            return Err(Error::Config("denominator_bound must be positive".into()));
        }
        let needs_r = matches!(self.class, GeneratorClass::PfRCosbound | GeneratorClass::PfRSector);
        if needs_r && self.r < 2 {
            return Err(Error::Config("r must be at least 2".into()));
        }
        Ok(())
    }

    fn deltas<R: Rng + ?Sized>(&self, rng: &mut R, count: usize, hi: &Rational, strict: bool) -> Vec<Rational> {
        let lo = self.delta_min.clone().min(hi.clone());
        (0..count)
            .map(|_| uniform_rational(rng, &lo, hi, self.denominator_bound, strict))
            .collect()
    }

    /// Draws parameters for one sequence. The draw is pure given the RNG state.
    pub fn sample_params<R: Rng + ?Sized>(&self, rng: &mut R) -> GeneratorParams {
        let den = self.denominator_bound;
        let n = self.n;
        match self.class {
            GeneratorClass::Pf2 => GeneratorParams::Pf2 {
                f0: int(1),
                deltas: self.deltas(rng, n, &int(1), self.strict),
            },
            GeneratorClass::PfRCosbound => {
                let bound = kv_delta_bound(self.r);
                let strict = self.strict && bound == int(1);
                GeneratorParams::PfRCosbound {
                    r: self.r,
                    f0: int(1),
                    deltas: self.deltas(rng, n, &bound, strict),
                }
            }
            GeneratorClass::PfRSector => {
                let pair_count = rng.gen_range(0..=n / 2);
                let real_roots = (0..n - 2 * pair_count).map(|_| log_uniform_rational(rng, den)).collect();
                let max_angle = pi_lower() / int(self.r as i64 + 1);
                let pairs = (0..pair_count)
                    .map(|_| {
                        let modulus = log_uniform_rational(rng, den);
                        let fraction = Rational::new(rng.gen_range(0..den as i64).into(), (den as i64).into());
                        SectorPair {
                            modulus,
                            angle: fraction * &max_angle,
                        }
                    })
                    .collect();
                GeneratorParams::PfRSector {
                    r: self.r,
                    real_roots,
                    pairs,
                    denominator_bound: den,
                }
            }
            GeneratorClass::PfInfRoots => GeneratorParams::PfInfRoots {
                roots: (0..n).map(|_| log_uniform_rational(rng, den)).collect(),
            },
            GeneratorClass::Q3 => GeneratorParams::Q3 {
                f0: int(1),
                beta: log_uniform_rational(rng, den),
                deltas: self.deltas(rng, n.saturating_sub(1), &int(1), false),
            },
            GeneratorClass::Geometric => GeneratorParams::Geometric {
                n,
                f0: int(1),
                ratio: log_uniform_rational(rng, den),
            },
            GeneratorClass::Ones => GeneratorParams::Ones { n },
        }
    }

    /// Draws until a sequence is accepted, counting rejected draws.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, max_attempts: u32) -> Result<Sample> {
        self.validate()?;
        let mut rejections = 0;
        while rejections < max_attempts {
            let params = self.sample_params(rng);
            match params.build() {
                Ok(sequence) => {
                    return Ok(Sample {
                        params,
                        sequence,
                        rejections,
                    })
                }
                Err(Error::Rejected(_)) => rejections += 1,
                Err(e) => return Err(e),
            }
        }
        Err(Error::GeneratorExhausted(rejections))
    }

    /// [`sample`](Self::sample) with an RNG seeded from `self.seed`.
    pub fn generate(&self) -> Result<Sample> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        self.sample(&mut rng, 100)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pfgen::checks::{check_log_concave, check_pf_inf};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn pf2_examples() {
        assert_eq!(gen_pf2(2, &int(1), &v(&[1, 1])).unwrap().values(), v(&[1, 1, 1]).as_slice());
        let s = gen_pf2(2, &int(1), &[rat(1, 2), rat(1, 2)]).unwrap();
        assert_eq!(s.values(), &[int(1), rat(1, 2), rat(1, 8)]);
        assert!(check_log_concave(s.values(), true));
        assert!(gen_pf2(2, &int(1), &[int(1), rat(3, 2)]).is_err());
        assert!(gen_pf2(2, &int(1), &[int(1), int(0)]).is_err());
        assert!(gen_pf2(3, &int(1), &[int(1)]).is_err());
    }

    #[test]
    fn pf2_round_trip() {
        let deltas = vec![rat(3, 7), rat(1, 2), int(1), rat(9, 10)];
        let s = gen_pf2(4, &rat(5, 3), &deltas).unwrap();
        assert_eq!(recover_deltas(s.values()).unwrap(), deltas);
    }

    #[test]
    fn pf_inf_examples() {
        assert_eq!(gen_pf_inf(&v(&[1, 1])).unwrap().values(), v(&[1, 2, 1]).as_slice());
        assert_eq!(gen_pf_inf(&v(&[1, 2, 3])).unwrap().values(), v(&[6, 11, 6, 1]).as_slice());
        assert_eq!(gen_pf_inf(&[rat(2, 5)]).unwrap().values(), &[rat(2, 5), int(1)]);
        assert!(gen_pf_inf(&v(&[1, 0])).is_err());
    }

    #[test]
    fn cosbound_examples() {
        let s = gen_pf_r_cosbound(2, 3, &int(1), &[rat(1, 2), rat(1, 2)]).unwrap();
        assert_eq!(s.values(), &[int(1), rat(1, 2), rat(1, 8)]);
        assert!(check_pf_r(s.values(), 3).ok);
        assert!(gen_pf_r_cosbound(2, 3, &int(1), &[rat(1, 2), rat(51, 100)]).is_err());
        assert!(gen_pf_r_cosbound(2, 2, &int(1), &v(&[1, 1])).is_ok());
    }

    #[test]
    fn sector_examples() {
        assert_eq!(gen_pf_r_sector(2, &v(&[1, 2]), &[], 32).unwrap().values(), v(&[2, 3, 1]).as_slice());
        let pair = SectorPair {
            modulus: int(1),
            angle: int(0),
        };
        assert_eq!(gen_pf_r_sector(3, &[], &[pair], 32).unwrap().values(), v(&[1, 2, 1]).as_slice());
        let near = SectorPair {
            modulus: int(1),
            angle: pi_lower() / int(3) - rat(1, 1000),
        };
        let s = gen_pf_r_sector(2, &[], &[near], 64).unwrap();
        assert!(check_pf_r(s.values(), 2).ok);
        let outside = SectorPair {
            modulus: int(1),
            angle: int(2),
        };
        assert!(gen_pf_r_sector(2, &[], &[outside], 64).is_err());
    }

    #[test]
    fn q3_examples() {
        let s = gen_q3(3, &int(1), &int(0), &v(&[1, 1])).unwrap();
        assert_eq!(s.values(), v(&[1, 0, 0, 0]).as_slice());
        let s = gen_q3(2, &int(1), &int(1), &v(&[1])).unwrap();
        assert_eq!(s.values(), &[int(1), int(1), rat(1, 2)]);
        assert!(gen_q3(3, &int(1), &int(1), &[rat(1, 2), rat(3, 2)]).is_err());
        assert!(gen_q3(4, &int(1), &int(1), &[rat(1, 2), int(0), rat(1, 2)]).is_err());
        let s = gen_q3(6, &int(2), &rat(3, 2), &[rat(1, 2), rat(1, 3), rat(2, 3), rat(1, 4), rat(9, 10)]).unwrap();
        assert!(check_pf_r(s.values(), 3).ok);
    }

    #[test]
    fn sampling_is_reproducible() {
        for class in [
            GeneratorClass::Pf2,
            GeneratorClass::PfRCosbound,
            GeneratorClass::PfRSector,
            GeneratorClass::PfInfRoots,
            GeneratorClass::Q3,
            GeneratorClass::Geometric,
            GeneratorClass::Ones,
        ] {
            let mut spec = GeneratorSpec::new(class, 6);
            spec.r = 3;
            spec.seed = 17;
            let a = spec.generate().unwrap();
            let b = spec.generate().unwrap();
            assert_eq!(a, b);
            assert_eq!(a.sequence.last_index(), 6);
            assert_eq!(a.params.build().unwrap(), a.sequence);
        }
    }

    #[test]
    fn sampled_classes_meet_their_hypotheses() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut spec = GeneratorSpec::new(GeneratorClass::Pf2, 8);
        spec.strict = true;
        for _ in 0..20 {
            let s = spec.sample(&mut rng, 10).unwrap().sequence;
            assert!(check_log_concave(s.values(), true));
        }
        let spec = GeneratorSpec::new(GeneratorClass::PfInfRoots, 6);
        for _ in 0..20 {
            assert!(check_pf_inf(spec.sample(&mut rng, 10).unwrap().sequence.values()));
        }
        let mut spec = GeneratorSpec::new(GeneratorClass::PfRSector, 6);
        spec.r = 4;
        for _ in 0..20 {
            assert!(check_pf_r(spec.sample(&mut rng, 10).unwrap().sequence.values(), 4).ok);
        }
    }

    #[test]
    fn params_serialize_with_class_tag() {
        let p = GeneratorParams::Pf2 {
            f0: int(1),
            deltas: vec![rat(1, 2)],
        };
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"class":"pf2","f0":"1","deltas":["1/2"]}"#);
        assert_eq!(serde_json::from_str::<GeneratorParams>(&json).unwrap(), p);
    }
}
