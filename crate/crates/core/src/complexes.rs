//! The Aomoto complex and the sinh-twisted minimal complex on the flag strata,
//! with rank-nullity cohomology.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::os_algebra::StructureConstants;
use crate::rational::{parse_rat, ratio, to_f64, Rat};

/// Default relative cutoff for singular values.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Smallest threshold used for the d∘d = 0 check, so that a zero tolerance
/// does not reject complexes over roundoff.
pub const COMPOSITION_FLOOR: f64 = 1e-12;

/// Weights λ_1..λ_n, with their exact values when every one is rational.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    values: Vec<Complex64>,
    exact: Option<Vec<Rat>>,
}

impl WeightVector {
    pub fn complex(values: Vec<Complex64>) -> Self {
        Self { values, exact: None }
    }

    pub fn exact(values: Vec<Rat>) -> Self {
        Self {
            values: values.iter().map(|r| Complex64::new(to_f64(r), 0.0)).collect(),
            exact: Some(values),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::exact(vec![Rat::zero(); n])
    }

    /// Comma-separated entries, each a rational `p/q`, a real, or a complex
    /// number such as `0.3-0.1i`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        let mut exact = Some(Vec::new());
        for token in text.split(',').map(str::trim) {
            if let Some(r) = parse_rat(token) {
                values.push(Complex64::new(to_f64(&r), 0.0));
                if let Some(e) = exact.as_mut() {
                    e.push(r);
                }
                continue;
            }
            let z = Complex64::from_str(token).map_err(|_| Error::InvalidWeights(format!("cannot parse {token:?}")))?;
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::InvalidWeights(format!("{token:?} is not finite")));
            }
            values.push(z);
            exact = None;
        }
        Ok(Self { values, exact })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn exact_values(&self) -> Option<&[Rat]> {
        self.exact.as_deref()
    }

    pub fn scaled(&self, h: f64) -> Self {
        Self::complex(self.values.iter().map(|z| z * h).collect())
    }

    /// λ + shift·e_i.
    pub fn shifted(&self, i: usize, shift: i64) -> Self {
        let mut out = self.clone();
        out.values[i] += shift as f64;
        if let Some(e) = out.exact.as_mut() {
            e[i] += Rat::from_integer(shift.into());
        }
        out
    }

    /// Every |λ_i| < 1/(2(n+1)), decided exactly when possible.
    pub fn in_small_regime(&self) -> bool {
        let n = self.values.len() as i64;
        match &self.exact {
            Some(e) => {
                let bound = ratio(1, 2 * (n + 1));
                e.iter().all(|x| x.abs() < bound)
            }
            None => {
                let bound = 1.0 / (2.0 * (n as f64 + 1.0));
                self.values.iter().all(|z| z.norm() < bound)
            }
        }
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if self.values.len() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                context: "weight vector".into(),
                expected: n,
                found: self.values.len(),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexKind {
    Aomoto,
    Minimal,
    Twisted,
}

/// D^q : C^{b_q} → C^{b_{q+1}} for q = 0..ℓ-1, rows and columns in stratum
/// order.
#[derive(Debug, Clone)]
pub struct CochainComplex {
    pub kind: ComplexKind,
    pub sizes: Vec<usize>,
    pub differentials: Vec<DMatrix<Complex64>>,
    /// Sign vectors of the stratum chambers, per degree.
    pub labels: Vec<Vec<String>>,
}

impl CochainComplex {
    pub fn max_degree(&self) -> usize {
        self.sizes.len() - 1
    }

    /// ‖D^{q+1}D^q‖ / (‖D^{q+1}‖·‖D^q‖) for each composable pair, 0 when
    /// either factor vanishes.
    pub fn composition_ratios(&self) -> Vec<f64> {
        self.differentials
            .windows(2)
            .map(|w| {
                let scale = w[0].norm() * w[1].norm();
                if scale == 0.0 {
                    0.0
                } else {
                    (&w[1] * &w[0]).norm() / scale
                }
            })
            .collect()
    }

    /// One matrix as CSV with columns `row,col,re,im`.
    pub fn to_csv(&self, q: usize) -> String {
        let m = &self.differentials[q];
        let mut out = String::from("row,col,re,im\n");
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let z = m[(i, j)];
                let _ = writeln!(out, "{i},{j},{:e},{:e}", z.re, z.im);
            }
        }
        out
    }
}

/// sinh(π√−1·z), reducing Re z modulo 2 first.
pub fn sinh_pi_i(z: Complex64) -> Complex64 {
    let re = z.re - 2.0 * (z.re / 2.0).round();
    (Complex64::i() * PI * Complex64::new(re, z.im)).sinh()
}

fn assemble<F>(sc: &StructureConstants, lambda: &WeightVector, kind: ComplexKind, entry: F) -> Result<CochainComplex>
where
    F: Fn(i64, Complex64) -> Complex64,
{
    lambda.check_len(sc.n_hyperplanes())?;
    let st = sc.stratification();
    let sizes = sc.sizes().to_vec();
    let mut differentials = Vec::with_capacity(sc.max_degree());
    for q in 0..sc.max_degree() {
        let mut m = DMatrix::from_element(sizes[q + 1], sizes[q], Complex64::zero());
        for e in sc.entries(q) {
            let s: Complex64 = e.separating.iter().map(|&i| lambda.values[i]).sum();
            m[(st.position(e.to), st.position(e.from))] = entry(e.n, s);
        }
        differentials.push(m);
    }
    let labels = (0..sizes.len())
        .map(|q| {
            st.stratum(q)
                .iter()
                .map(|&c| st.chamber(c).sign_vector.to_string())
                .collect()
        })
        .collect();
    Ok(CochainComplex {
        kind,
        sizes,
        differentials,
        labels,
    })
}

/// Entries 2π√−1·N·λ_S.
pub fn aomoto_complex(sc: &StructureConstants, lambda: &WeightVector) -> Result<CochainComplex> {
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    assemble(sc, lambda, ComplexKind::Aomoto, |n, s| two_pi_i * n as f64 * s)
}

/// Entries −2N·sinh(π√−1·λ_S).
pub fn minimal_complex(sc: &StructureConstants, lambda: &WeightVector) -> Result<CochainComplex> {
    assemble(sc, lambda, ComplexKind::Minimal, |n, s| -2.0 * n as f64 * sinh_pi_i(s))
}

/// Entries +2N·sinh(π√−1·λ_S): the negative of [`minimal_complex`], whose
/// derivative at λ = 0 is the Aomoto differential. Both have the same
/// cohomology.
pub fn twisted_coboundary(sc: &StructureConstants, lambda: &WeightVector) -> Result<CochainComplex> {
    assemble(sc, lambda, ComplexKind::Twisted, |n, s| 2.0 * n as f64 * sinh_pi_i(s))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BettiReport {
    pub degrees: Vec<DegreeReport>,
    pub tolerance: f64,
    pub euler: i64,
    pub exact: bool,
}

impl BettiReport {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim).collect()
    }

    fn from_ranks(sizes: &[usize], ranks: &[usize], tolerance: f64, exact: bool) -> Self {
        let degrees: Vec<DegreeReport> = (0..sizes.len())
            .map(|q| {
                let rank_out = ranks.get(q).copied().unwrap_or(0);
                let rank_in = if q == 0 { 0 } else { ranks[q - 1] };
                DegreeReport {
                    degree: q,
                    dim: sizes[q] - rank_out - rank_in,
                    rank_in,
                    rank_out,
                }
            })
            .collect();
        let euler = degrees
            .iter()
            .map(|d| {
                if d.degree % 2 == 0 {
                    d.dim as i64
                } else {
                    -(d.dim as i64)
                }
            })
            .sum();
        Self {
            degrees,
            tolerance,
            euler,
            exact,
        }
    }
}

/// Numerical rank: singular values above tol·σ_max.
pub fn numerical_rank(m: &DMatrix<Complex64>, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().singular_values();
    let max = sv.max();
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * max).count()
}

/// Cohomology dimensions by rank-nullity.
pub fn cohomology_dims(cx: &CochainComplex, tol: f64) -> Result<BettiReport> {
    let threshold = tol.max(COMPOSITION_FLOOR);
    for (q, r) in cx.composition_ratios().into_iter().enumerate() {
        if r.is_nan() || r > threshold {
            return Err(Error::NotAComplex { degree: q, ratio: r });
        }
    }
    let ranks: Vec<usize> = cx.differentials.iter().map(|m| numerical_rank(m, tol)).collect();
    Ok(BettiReport::from_ranks(&cx.sizes, &ranks, tol, false))
}

/// Aomoto cohomology at rational weights by exact elimination on the Γ
/// matrices (the 2π√−1 factor does not change ranks).
pub fn exact_aomoto_dims(sc: &StructureConstants, lambda: &[Rat]) -> Result<BettiReport> {
    WeightVector::exact(lambda.to_vec()).check_len(sc.n_hyperplanes())?;
    let mats: Vec<_> = (0..sc.max_degree()).map(|q| sc.gamma_matrix_exact(q, lambda)).collect();
    for (q, w) in mats.windows(2).enumerate() {
        let product = linalg::mat_mul(&w[1], &w[0]);
        if product.iter().flatten().any(|x| !x.is_zero()) {
            return Err(Error::NotAComplex {
                degree: q,
                ratio: f64::INFINITY,
            });
        }
    }
    let ranks: Vec<usize> = mats
        .iter()
        .map(|m| if m.is_empty() { 0 } else { linalg::rank(m) })
        .collect();
    Ok(BettiReport::from_ranks(sc.sizes(), &ranks, 0.0, true))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearizationReport {
    pub h: f64,
    pub clamped: bool,
    pub max_relative_error: f64,
}

/// Compares the twisted coboundary at h·λ, divided by h, with the Aomoto
/// differential at λ; entrywise error |a − b| / (1 + |b|), maximized.
pub fn linearization_check(sc: &StructureConstants, lambda: &WeightVector, h: f64) -> Result<LinearizationReport> {
    let clamped = h.is_nan() || h < f64::EPSILON;
    let h = if clamped { f64::EPSILON } else { h };
    let aomoto = aomoto_complex(sc, lambda)?;
    let twisted = twisted_coboundary(sc, &lambda.scaled(h))?;
    let mut worst: f64 = 0.0;
    for (a, t) in aomoto.differentials.iter().zip(&twisted.differentials) {
        for (x, y) in a.iter().zip(t.iter()) {
            worst = worst.max((y / h - x).norm() / (1.0 + x.norm()));
        }
    }
    Ok(LinearizationReport {
        h,
        clamped,
        max_relative_error: worst,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub minimal: BettiReport,
    pub aomoto: BettiReport,
    pub in_small_regime: bool,
    pub agree: bool,
}

/// Cohomology of both complexes at λ. Aomoto ranks are exact when `exact`
/// is set and λ is rational.
pub fn tangent_cone_compare(
    sc: &StructureConstants,
    lambda: &WeightVector,
    tol: f64,
    exact: bool,
) -> Result<CompareReport> {
    let minimal = cohomology_dims(&minimal_complex(sc, lambda)?, tol)?;
    let aomoto = match lambda.exact_values() {
        Some(e) if exact => exact_aomoto_dims(sc, e)?,
        _ => cohomology_dims(&aomoto_complex(sc, lambda)?, tol)?,
    };
    let agree = minimal.dims() == aomoto.dims();
    Ok(CompareReport {
        minimal,
        aomoto,
        in_small_regime: lambda.in_small_regime(),
        agree,
    })
}
