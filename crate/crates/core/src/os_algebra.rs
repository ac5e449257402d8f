//! The chamber basis of the Orlik–Solomon algebra.
//!
//! In degree q everything is computed inside the generic subspace F^q, in the
//! flag coordinates (t_1..t_q): a q-tuple of hyperplanes either becomes
//! dependent there (and its monomial maps to zero) or meets in a single point,
//! around which exactly one of its 2^q orthants misses F^{q-1}. That orthant
//! is the far chamber C₀(I). A chamber C of ch_F^q lies inside C₀(I) exactly
//! when its signs on I agree with those of C₀(I), since C₀(I) is a union of
//! chambers of A.
//!
//! The map ξ sends ω_I to ε(I)·Σ_{C ⊆ C₀(I)} [C]; ν is its inverse, obtained
//! by exact elimination on the ξ-matrix.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::chambers::{separating_indices, Stratification};
use crate::error::{Error, Result};
use crate::geometry::{Arrangement, Flag};
use crate::linalg;
use crate::rational::{rat, sign, to_f64, to_i64, Rat};

const SUBSCRIPTS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];

/// 1-based subscript label for a set of 0-based indices, e.g. `₂₃₄`.
pub fn subscript(indices: &[usize]) -> String {
    let wide = indices.iter().any(|&i| i + 1 >= 10);
    let parts: Vec<String> = indices
        .iter()
        .map(|&i| {
            (i + 1)
                .to_string()
                .chars()
                .map(|c| SUBSCRIPTS[c.to_digit(10).unwrap() as usize])
                .collect()
        })
        .collect();
    parts.join(if wide { "," } else { "" })
}

/// ω_I for a strictly increasing index tuple I.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    /// Sorts `indices`, returning the permutation sign, or `None` if an index
    /// repeats (the wedge vanishes).
    pub fn new(indices: &[usize]) -> Option<(i8, Monomial)> {
        let mut v = indices.to_vec();
        let mut s = 1i8;
        // insertion sort, counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                s = -s;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((s, Monomial(v)))
    }

    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("1")
        } else {
            write!(f, "ω{}", subscript(&self.0))
        }
    }
}

/// A rational combination of degree-q monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialSum {
    degree: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl MonomialSum {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_monomial(&[]).expect("empty monomial")
    }

    /// ω_{i_1}∧…∧ω_{i_q} in any order; zero when an index repeats.
    pub fn from_monomial(indices: &[usize]) -> Option<Self> {
        let mut s = Self::zero(indices.len());
        let (sg, m) = Monomial::new(indices)?;
        s.add_term(m, rat(sg as i64));
        Some(s)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        assert_eq!(m.degree(), self.degree, "monomial degree");
        let entry = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &MonomialSum) -> Result<MonomialSum> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> MonomialSum {
        let mut out = MonomialSum::zero(self.degree);
        if !c.is_zero() {
            for (m, v) in &self.terms {
                out.terms.insert(m.clone(), v * c);
            }
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl fmt::Display for MonomialSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else if mag.is_integer() {
                write!(f, "{mag}{m}")?;
            } else {
                write!(f, "({mag}){m}")?;
            }
        }
        Ok(())
    }
}

/// ω_i ∧ m.
pub fn wedge(i: usize, m: &MonomialSum) -> MonomialSum {
    let mut out = MonomialSum::zero(m.degree + 1);
    for (mono, c) in &m.terms {
        if mono.0.binary_search(&i).is_ok() {
            continue;
        }
        let pos = mono.0.partition_point(|&j| j < i);
        let mut idx = mono.0.clone();
        idx.insert(pos, i);
        let c = if pos % 2 == 0 { c.clone() } else { -c };
        out.add_term(Monomial(idx), c);
    }
    out
}

/// Σ_k (−1)^k ω_{J∖j_k}, the Orlik–Solomon boundary of ω_J.
pub fn os_boundary(indices: &[usize]) -> MonomialSum {
    let mut out = MonomialSum::zero(indices.len().saturating_sub(1));
    for k in 0..indices.len() {
        let rest: Vec<usize> = indices
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &x)| x)
            .collect();
        if let Some((s, m)) = Monomial::new(&rest) {
            let c = if (k % 2 == 0) == (s > 0) { rat(1) } else { rat(-1) };
            out.add_term(m, c);
        }
    }
    out
}

/// A degree-q class written in the chamber basis of ch_F^q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberVector {
    pub degree: usize,
    pub coefficients: Vec<Rat>,
}

impl ChamberVector {
    pub fn zero(degree: usize, len: usize) -> Self {
        Self {
            degree,
            coefficients: vec![Rat::zero(); len],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }
}

/// A linear form Σ c_i λ_i in the weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm(pub Vec<Rat>);

impl LinearForm {
    pub fn zero(n: usize) -> Self {
        Self(vec![Rat::zero(); n])
    }

    /// λ_S = Σ_{i∈S} λ_i.
    pub fn indicator(n: usize, set: &[usize]) -> Self {
        let mut f = Self::zero(n);
        for &i in set {
            f.0[i] = rat(1);
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, lambda: &[Complex64]) -> Complex64 {
        self.0
            .iter()
            .zip(lambda)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| l * to_f64(c))
            .sum()
    }

    pub fn eval_exact(&self, lambda: &[Rat]) -> Rat {
        self.0.iter().zip(lambda).map(|(c, l)| c * l).sum()
    }

    /// The integer N with self = N·λ_S, if it exists.
    pub fn factor_over(&self, set: &[usize]) -> Option<i64> {
        let mut n: Option<Rat> = None;
        for (i, c) in self.0.iter().enumerate() {
            if set.binary_search(&i).is_ok() {
                match &n {
                    None => n = Some(c.clone()),
                    Some(v) if v != c => return None,
                    _ => {}
                }
            } else if !c.is_zero() {
                return None;
            }
        }
        to_i64(&n.unwrap_or_else(Rat::zero))
    }
}

/// `N·λ_S` in shorthand: `-λ₂₃₄`, `2λ₁`, `0`.
pub fn format_scaled_lambda(n: i64, set: &[usize]) -> String {
    match n {
        0 => "0".into(),
        1 => format!("λ{}", subscript(set)),
        -1 => format!("-λ{}", subscript(set)),
        _ => format!("{n}λ{}", subscript(set)),
    }
}

/// Sign vector of C₀(I) on the ordered tuple I, and ε(I), computed in F^q
/// with q = |I|.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarChamber {
    pub signs: Vec<i8>,
    pub epsilon: i8,
}

fn far_chamber(arrangement: &Arrangement, flag: &Flag, indices: &[usize]) -> Result<Option<FarChamber>> {
    let q = indices.len();
    if q == 0 {
        return Ok(Some(FarChamber {
            signs: Vec::new(),
            epsilon: 1,
        }));
    }
    let (grads, offsets): (Vec<Vec<Rat>>, Vec<Rat>) = indices
        .iter()
        .map(|&i| flag.restricted_form(arrangement.hyperplane(i), q))
        .unzip();
    let det = linalg::determinant(&grads);
    if det.is_zero() {
        return Ok(None);
    }
    let inv = linalg::inverse(&grads).expect("nonzero determinant");
    // the meeting point p solves grads·p + offsets = 0
    let last = &inv[q - 1];
    let p_last: Rat = -last.iter().zip(&offsets).map(|(a, c)| a * c).sum::<Rat>();
    let side = sign(&p_last);
    if side == 0 || last.iter().any(Zero::is_zero) {
        return Err(Error::NotGeneric { q: q - 1 });
    }
    // the orthant p + {d : s_k·(grad_k·d) > 0} misses t_q = 0 iff
    // every ray moves t_q away from zero
    let signs: Vec<i8> = last.iter().map(|a| side * sign(a)).collect();
    let epsilon = signs.iter().product::<i8>() * sign(&det);
    Ok(Some(FarChamber { signs, epsilon }))
}

/// C₀(I) as signs over the ordered tuple I.
pub fn c_zero(arrangement: &Arrangement, flag: &Flag, indices: &[usize]) -> Result<Vec<i8>> {
    far_chamber(arrangement, flag, indices)?
        .map(|f| f.signs)
        .ok_or_else(|| Error::Dependent {
            indices: indices.to_vec(),
        })
}

/// ε(I) for an ordered tuple; 0 when the restricted hyperplanes are dependent.
pub fn epsilon(arrangement: &Arrangement, flag: &Flag, indices: &[usize]) -> Result<i8> {
    Ok(far_chamber(arrangement, flag, indices)?.map_or(0, |f| f.epsilon))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone)]
struct Degree {
    /// Independent q-tuples in lexicographic order: the ξ-matrix columns.
    tuples: Vec<Monomial>,
    far: HashMap<Monomial, FarChamber>,
    /// Rows are stratum chambers, columns are `tuples`.
    xi_matrix: Vec<Vec<i64>>,
    /// ν of each stratum chamber, indexed by stratum position.
    nu: Vec<MonomialSum>,
}

/// ξ and ν in every degree for a stratified arrangement.
#[derive(Debug, Clone)]
pub struct ChamberBasis {
    n: usize,
    degrees: Vec<Degree>,
    stratification: Stratification,
}

impl ChamberBasis {
    pub fn new(arrangement: &Arrangement, stratification: &Stratification) -> Result<Self> {
        let n = arrangement.len();
        let flag = stratification.flag();
        let mut degrees = Vec::new();
        for q in 0..=arrangement.dim() {
            let stratum = stratification.stratum(q);
            let mut tuples = Vec::new();
            let mut far = HashMap::new();
            for idx in subsets(n, q) {
                if let Some(fc) = far_chamber(arrangement, flag, &idx)? {
                    let m = Monomial(idx);
                    tuples.push(m.clone());
                    far.insert(m, fc);
                }
            }
            let xi_matrix: Vec<Vec<i64>> = stratum
                .iter()
                .map(|&c| {
                    let sv = &stratification.chamber(c).sign_vector;
                    tuples
                        .iter()
                        .map(|m| {
                            let fc = &far[m];
                            let inside = m.0.iter().zip(&fc.signs).all(|(&i, &s)| sv.get(i) == s);
                            if inside {
                                fc.epsilon as i64
                            } else {
                                0
                            }
                        })
                        .collect()
                })
                .collect();
            let nu = solve_nu(&xi_matrix, &tuples, q)?;
            degrees.push(Degree {
                tuples,
                far,
                xi_matrix,
                nu,
            });
        }
        Ok(Self {
            n,
            degrees,
            stratification: stratification.clone(),
        })
    }

    pub fn stratification(&self) -> &Stratification {
        &self.stratification
    }

    pub fn n_hyperplanes(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    /// Independent q-tuples indexing the ξ-matrix columns.
    pub fn tuples(&self, q: usize) -> &[Monomial] {
        &self.degrees[q].tuples
    }

    /// Rows are the chambers of ch_F^q in stratum order.
    pub fn xi_matrix(&self, q: usize) -> &[Vec<i64>] {
        &self.degrees[q].xi_matrix
    }

    pub fn far_chamber(&self, m: &Monomial) -> Option<&FarChamber> {
        self.degrees.get(m.degree())?.far.get(m)
    }

    /// ξ(ω_I) for an ordered tuple I.
    pub fn xi_monomial(&self, indices: &[usize]) -> Result<ChamberVector> {
        self.xi(&MonomialSum::from_monomial(indices).unwrap_or_else(|| MonomialSum::zero(indices.len())))
    }

    pub fn xi(&self, m: &MonomialSum) -> Result<ChamberVector> {
        let q = m.degree();
        if q > self.max_degree() {
            return Err(Error::DegreeMismatch {
                expected: self.max_degree(),
                found: q,
            });
        }
        let stratum = self.stratification.stratum(q);
        let mut out = ChamberVector::zero(q, stratum.len());
        for (mono, c) in m.terms() {
            let Some(fc) = self.degrees[q].far.get(mono) else {
                continue;
            };
            for (pos, &id) in stratum.iter().enumerate() {
                let sv = &self.stratification.chamber(id).sign_vector;
                if mono.0.iter().zip(&fc.signs).all(|(&i, &s)| sv.get(i) == s) {
                    out.coefficients[pos] += c * rat(fc.epsilon as i64);
                }
            }
        }
        Ok(out)
    }

    /// ν(C) for a chamber id.
    pub fn nu(&self, chamber: usize) -> &MonomialSum {
        let q = self.stratification.stratum_of(chamber);
        &self.degrees[q].nu[self.stratification.position(chamber)]
    }

    pub fn nu_is_integral(&self) -> bool {
        self.degrees.iter().flat_map(|d| &d.nu).all(MonomialSum::is_integral)
    }

    /// Coefficients of ω_i ∧ m, for every i, in the chamber basis of degree
    /// q+1: entry `[pos][i]` is the λ_i coefficient of Γ toward the chamber at
    /// stratum position `pos`.
    pub fn wedge_table(&self, m: &MonomialSum) -> Result<Vec<LinearForm>> {
        let q = m.degree();
        let target = self.stratification.stratum(q + 1).len();
        let mut forms = vec![LinearForm::zero(self.n); target];
        for i in 0..self.n {
            let v = self.xi(&wedge(i, m))?;
            for (pos, c) in v.coefficients.into_iter().enumerate() {
                forms[pos].0[i] = c;
            }
        }
        Ok(forms)
    }
}

/// ν by the pivot rule: the first usable columns in lexicographic order carry
/// the solution.
fn solve_nu(xi_matrix: &[Vec<i64>], tuples: &[Monomial], q: usize) -> Result<Vec<MonomialSum>> {
    let rows = xi_matrix.len();
    let x: Vec<Vec<Rat>> = xi_matrix.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
    let (_, pivots) = linalg::rref(&x);
    if pivots.len() < rows {
        return Err(Error::Unsolvable { degree: q });
    }
    let square: Vec<Vec<Rat>> = x
        .iter()
        .map(|r| pivots.iter().map(|&p| r[p].clone()).collect())
        .collect();
    let inv = linalg::inverse(&square).ok_or(Error::Unsolvable { degree: q })?;
    Ok((0..rows)
        .map(|j| {
            let mut s = MonomialSum::zero(q);
            for (k, &p) in pivots.iter().enumerate() {
                if !inv[k][j].is_zero() {
                    s.add_term(tuples[p].clone(), inv[k][j].clone());
                }
            }
            s
        })
        .collect())
}

/// One nonzero structure constant Γ_{C,C'} = N·λ_S.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureEntry {
    pub from: usize,
    pub to: usize,
    pub n: i64,
    pub separating: Vec<usize>,
}

/// Structure constants of ω_λ∧ in the chamber basis, stored sparsely by
/// source degree.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    n: usize,
    sizes: Vec<usize>,
    entries: Vec<Vec<StructureEntry>>,
    stratification: Stratification,
}

impl StructureConstants {
    pub fn n_hyperplanes(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.sizes.len() - 1
    }

    /// Stratum sizes b_0..b_ℓ.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Nonzero entries with source in ch_F^q.
    pub fn entries(&self, q: usize) -> &[StructureEntry] {
        &self.entries[q]
    }

    pub fn all_entries(&self) -> impl Iterator<Item = (usize, &StructureEntry)> {
        self.entries
            .iter()
            .enumerate()
            .flat_map(|(q, es)| es.iter().map(move |e| (q, e)))
    }

    pub fn stratification(&self) -> &Stratification {
        &self.stratification
    }

    /// Γ_{C,C'} as a linear form; zero when the pair is absent.
    pub fn gamma(&self, from: usize, to: usize) -> LinearForm {
        let q = self.stratification.stratum_of(from);
        self.entries[q]
            .iter()
            .find(|e| e.from == from && e.to == to)
            .map(|e| {
                let mut f = LinearForm::indicator(self.n, &e.separating);
                for c in f.0.iter_mut() {
                    *c *= rat(e.n);
                }
                f
            })
            .unwrap_or_else(|| LinearForm::zero(self.n))
    }

    /// deg(C', C) = −sgn(C')·N_{C,C'}.
    pub fn degree_map(&self, from: usize, to: usize) -> i64 {
        let n = self
            .entries
            .iter()
            .flatten()
            .find(|e| e.from == from && e.to == to)
            .map_or(0, |e| e.n);
        -(self.stratification.sgn(to) as i64) * n
    }

    /// Dense b_{q+1} × b_q matrix of N, rows and columns in stratum order.
    pub fn n_matrix(&self, q: usize) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.sizes[q]]; self.sizes[q + 1]];
        for e in &self.entries[q] {
            m[self.stratification.position(e.to)][self.stratification.position(e.from)] = e.n;
        }
        m
    }

    /// Dense b_{q+1} × b_q matrix of Γ evaluated at exact weights.
    pub fn gamma_matrix_exact(&self, q: usize, lambda: &[Rat]) -> Vec<Vec<Rat>> {
        let mut m = vec![vec![Rat::zero(); self.sizes[q]]; self.sizes[q + 1]];
        for e in &self.entries[q] {
            let s: Rat = e.separating.iter().map(|&i| lambda[i].clone()).sum();
            m[self.stratification.position(e.to)][self.stratification.position(e.from)] = s * rat(e.n);
        }
        m
    }

    /// Coefficients of λ_iλ_j (i <= j) in (Γ^{q+1}Γ^q)_{C'',C}, for every
    /// composable pair whose quadratic form is not identically zero.
    pub fn square_defects(&self) -> Vec<(usize, usize, usize)> {
        let mut defects = Vec::new();
        for q in 0..self.max_degree().saturating_sub(1) {
            let mut acc: HashMap<(usize, usize), Vec<Vec<Rat>>> = HashMap::new();
            for first in &self.entries[q] {
                for second in self.entries[q + 1].iter().filter(|e| e.from == first.to) {
                    let quad = acc
                        .entry((first.from, second.to))
                        .or_insert_with(|| vec![vec![Rat::zero(); self.n]; self.n]);
                    let c = rat(first.n * second.n);
                    for &i in &first.separating {
                        for &j in &second.separating {
                            let (a, b) = if i <= j { (i, j) } else { (j, i) };
                            quad[a][b] += &c;
                        }
                    }
                }
            }
            let mut bad: Vec<_> = acc
                .into_iter()
                .filter(|(_, quad)| quad.iter().flatten().any(|c| !c.is_zero()))
                .map(|((from, to), _)| (q, from, to))
                .collect();
            bad.sort_unstable();
            defects.extend(bad);
        }
        defects
    }
}

/// Γ_{C,C'} for every C' of the next stratum, from an arbitrary
/// representative of the class of ν(C).
pub fn gamma_forms(basis: &ChamberBasis, representative: &MonomialSum) -> Result<Vec<LinearForm>> {
    basis.wedge_table(representative)
}

/// Computes every Γ_{C,C'} and factors it as N·λ_{S(C,C')}.
pub fn structure_constants(basis: &ChamberBasis) -> Result<StructureConstants> {
    let st = basis.stratification();
    let n = basis.n_hyperplanes();
    let ell = basis.max_degree();
    let mut entries = Vec::with_capacity(ell);
    for q in 0..ell {
        let mut level = Vec::new();
        for &from in st.stratum(q) {
            let forms = gamma_forms(basis, basis.nu(from))?;
            for (pos, form) in forms.into_iter().enumerate() {
                if form.is_zero() {
                    continue;
                }
                let to = st.stratum(q + 1)[pos];
                let separating = separating_indices(&st.chamber(from).sign_vector, &st.chamber(to).sign_vector);
                let Some(factor) = form.factor_over(&separating) else {
                    return Err(Error::FactorizationFailure {
                        from: st.chamber(from).sign_vector.to_string(),
                        to: st.chamber(to).sign_vector.to_string(),
                        detail: format!(
                            "Γ = {:?} is not an integer multiple of λ{}",
                            form.0.iter().map(ToString::to_string).collect::<Vec<_>>(),
                            subscript(&separating)
                        ),
                    });
                };
                level.push(StructureEntry {
                    from,
                    to,
                    n: factor,
                    separating,
                });
            }
        }
        entries.push(level);
    }
    Ok(StructureConstants {
        n,
        sizes: st.sizes(),
        entries,
        stratification: st.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn monomial_normal_form() {
        assert_eq!(Monomial::new(&[2, 0]), Some((-1, Monomial(vec![0, 2]))));
        assert_eq!(Monomial::new(&[2, 0, 1]), Some((1, Monomial(vec![0, 1, 2]))));
        assert_eq!(Monomial::new(&[1, 1]), None);
    }

    #[test]
    fn wedge_signs() {
        let w1 = MonomialSum::from_monomial(&[0]).unwrap();
        assert!(wedge(0, &w1).is_zero());
        assert_eq!(wedge(1, &w1), MonomialSum::from_monomial(&[1, 0]).unwrap());
        assert_eq!(wedge(1, &w1).to_string(), "-ω₁₂");
        let w24 = MonomialSum::from_monomial(&[1, 3]).unwrap();
        assert_eq!(wedge(0, &w24).to_string(), "ω₁₂₄");
    }

    #[test]
    fn boundary_of_a_pair_and_triple() {
        assert_eq!(os_boundary(&[0, 1]).to_string(), "-ω₁ + ω₂");
        // ∂ω₁₂₃ = ω₂₃ − ω₁₃ + ω₁₂
        assert_eq!(os_boundary(&[0, 1, 2]).to_string(), "ω₁₂ - ω₁₃ + ω₂₃");
        // boundaries are closed: ∂∂ = 0
        let bb = os_boundary(&[0, 1, 2])
            .terms()
            .iter()
            .fold(MonomialSum::zero(1), |acc, (m, c)| {
                acc.add(&os_boundary(m.indices()).scale(c)).unwrap()
            });
        assert!(bb.is_zero());
    }

    #[test]
    fn linear_form_factorization() {
        let f = LinearForm(vec![rat(0), rat(-2), rat(-2)]);
        assert_eq!(f.factor_over(&[1, 2]), Some(-2));
        assert_eq!(f.factor_over(&[0, 1, 2]), None);
        assert_eq!(LinearForm(vec![ratio(1, 2)]).factor_over(&[0]), None);
        assert_eq!(format_scaled_lambda(-1, &[1, 2, 3]), "-λ₂₃₄");
        assert_eq!(subscript(&[0, 10]), "₁,₁₁");
    }

    #[test]
    fn sum_display() {
        let mut s = MonomialSum::zero(1);
        s.add_term(Monomial(vec![1]), rat(1));
        s.add_term(Monomial(vec![2]), rat(-1));
        assert_eq!(s.to_string(), "ω₂ - ω₃");
        s.add_term(Monomial(vec![2]), rat(1));
        assert_eq!(s.to_string(), "ω₂");
        assert_eq!(MonomialSum::one().to_string(), "1");
        assert_eq!(MonomialSum::zero(2).to_string(), "0");
    }
}
