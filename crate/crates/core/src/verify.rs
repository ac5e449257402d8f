//! The full invariant suite run by `verify`.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chambers::separating_set;
use crate::complexes::{
    cohomology_dims, exact_aomoto_dims, linearization_check, minimal_complex, tangent_cone_compare, WeightVector,
};
use crate::fixtures::{Fixture, TableRow};
use crate::geometry::{betti_vector, build_poset, is_generic_flag, restrict};
use crate::os_algebra::{gamma_forms, os_boundary, MonomialSum};
use crate::pipeline::Instance;
use crate::random::{random_complex_weights, random_small_rationals, random_unit_disk_weights};
use crate::rational::{rat, ratio, Rat};

/// Pinned thresholds.
pub const COMPLEX_RATIO_MAX: f64 = 1e-9;
pub const PERIODICITY_TOL: f64 = 1e-12;
pub const LINEARIZATION_H: f64 = 1e-6;
pub const LINEARIZATION_MAX_ERROR: f64 = 1e-4;
pub const HALVING_RANGE: (f64, f64) = (3.0, 5.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Reported, never fails the run.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub tolerance: f64,
    pub seed: u64,
    /// Random weights per numerical check.
    pub samples: usize,
    /// Random weights for the d∘d = 0 check on the minimal complex.
    pub complex_samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            tolerance: crate::complexes::DEFAULT_TOLERANCE,
            seed: 0,
            samples: 20,
            complex_samples: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub fixture_rows: Vec<TableRow>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn push(&mut self, name: &'static str, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name,
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        });
    }

    fn info(&mut self, name: &'static str, detail: impl Into<String>) {
        self.checks.push(Check {
            name,
            status: Status::Info,
            detail: detail.into(),
        });
    }
}

fn subsets_of(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(items, k, 0, &mut cur, &mut out);
    out
}

/// Dependent tuples J with a nonempty common intersection, grouped by |J|;
/// ∂ω_J is then an Orlik–Solomon relation.
fn central_dependent_tuples(instance: &Instance) -> Vec<Vec<Vec<usize>>> {
    let ell = instance.arrangement.dim();
    let mut by_size = vec![Vec::new(); ell + 2];
    for flat in instance.poset.flats() {
        let r = flat.rank();
        let gens = flat.generators();
        if r == 0 || gens.len() <= r {
            continue;
        }
        for j in subsets_of(gens, r + 1) {
            if !by_size[r + 1].contains(&j) {
                by_size[r + 1].push(j);
            }
        }
    }
    by_size
}

pub fn verify(instance: &Instance, fixture: Option<&Fixture>, config: &VerifyConfig) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut s = Suite { checks: Vec::new() };
    let arr = &instance.arrangement;
    let poset = &instance.poset;
    let betti = &instance.betti;
    let st = &instance.stratification;
    let basis = &instance.basis;
    let sc = &instance.constants;
    let n = arr.len();
    let ell = arr.dim();
    let b: Vec<usize> = betti.coefficients.iter().map(|&x| x as usize).collect();

    // geometry
    let bad_mu = poset
        .flats()
        .iter()
        .enumerate()
        .skip(1)
        .filter(|&(id, _)| poset.mobius(id) + poset.below(id).iter().map(|&y| poset.mobius(y)).sum::<i64>() != 0)
        .count();
    s.push(
        "mobius_recursion",
        bad_mu == 0,
        format!("{} flats, {bad_mu} violations", poset.flats().len()),
    );
    s.push(
        "poincare_euler",
        betti.euler() == poset.poincare_at(-1) && betti.beta == betti.euler().unsigned_abs(),
        format!("π(A,t) coefficients {:?}, β = {}", betti.coefficients, betti.beta),
    );
    s.push(
        "flag_generic",
        is_generic_flag(poset, st.flag()),
        "every F^q meets each flat in the expected dimension",
    );
    let mut trunc_ok = true;
    let mut trunc_detail = Vec::new();
    for q in 1..=ell {
        match restrict(arr, st.flag(), q) {
            Ok(r) => {
                let got = betti_vector(&build_poset(&r)).coefficients;
                trunc_ok &= got == betti.truncated(q);
                trunc_detail.push(format!("q={q}: {got:?}"));
            }
            Err(e) => {
                trunc_ok = false;
                trunc_detail.push(format!("q={q}: {e}"));
            }
        }
    }
    s.push("truncation", trunc_ok, trunc_detail.join("; "));

    // chambers
    let chambers = st.chambers();
    let bounded = chambers.iter().filter(|c| c.bounded).count();
    s.push(
        "zaslavsky",
        chambers.len() as i64 == poset.poincare_at(1) && bounded as u64 == betti.beta,
        format!(
            "{} chambers, {bounded} bounded; π(A,1) = {}, β = {}",
            chambers.len(),
            poset.poincare_at(1),
            betti.beta
        ),
    );
    s.push(
        "strata_sizes",
        st.sizes() == b,
        format!("{:?} vs b = {:?}", st.sizes(), b),
    );
    let mut sep_ok = true;
    for (i, c) in chambers.iter().enumerate() {
        for (j, d) in chambers.iter().enumerate() {
            let sij = separating_set(c, d);
            sep_ok &= sij == separating_set(d, c) && (sij.is_empty() == (i == j));
        }
    }
    for _ in 0..500.min(chambers.len().pow(3)) {
        let [a, m, z] = [0; 3].map(|_| &chambers[rng.gen_range(0..chambers.len())]);
        let ac = separating_set(a, z);
        let (x, y) = (separating_set(a, m), separating_set(m, z));
        sep_ok &= ac.iter().all(|i| x.contains(i) || y.contains(i));
    }
    s.push(
        "separating_sets",
        sep_ok,
        "symmetric, empty only on the diagonal, triangle inclusion",
    );

    // chamber basis
    let mut inverse_ok = true;
    for q in 0..=ell {
        for (pos, &c) in st.stratum(q).iter().enumerate() {
            match basis.xi(basis.nu(c)) {
                Ok(v) => {
                    inverse_ok &= v
                        .coefficients
                        .iter()
                        .enumerate()
                        .all(|(k, x)| *x == if k == pos { rat(1) } else { Rat::zero() })
                }
                Err(_) => inverse_ok = false,
            }
        }
    }
    s.push(
        "xi_nu_inverse",
        inverse_ok,
        "ξ(ν(C)) is the unit vector at C in every degree",
    );

    let relations = central_dependent_tuples(instance);
    let mut rel_count = 0;
    let mut rel_ok = true;
    for j in relations.iter().flatten() {
        rel_count += 1;
        rel_ok &= basis.xi(&os_boundary(j)).map(|v| v.is_zero()).unwrap_or(false);
    }
    s.push(
        "os_relations",
        rel_ok,
        format!("ξ(∂ω_J) = 0 for {rel_count} dependent tuples with nonempty intersection"),
    );

    let mut anti_ok = true;
    for q in 2..=ell {
        for m in basis.tuples(q) {
            let mut swapped = m.indices().to_vec();
            swapped.swap(0, 1);
            let a = basis.xi_monomial(m.indices());
            let b = basis.xi_monomial(&swapped);
            anti_ok &= match (a, b) {
                (Ok(a), Ok(b)) => a.coefficients.iter().zip(&b.coefficients).all(|(x, y)| *x == -y),
                _ => false,
            };
        }
    }
    s.push("xi_antisymmetry", anti_ok, "ξ(ω_σ(I)) = sign(σ)·ξ(ω_I)");

    let nu_integral = basis.nu_is_integral();
    s.info(
        "nu_integrality",
        if nu_integral {
            "every ν(C) has integer coefficients"
        } else {
            "some ν(C) has non-integer coefficients"
        },
    );

    let mut fact_ok = true;
    for q in 0..ell {
        for &c in st.stratum(q) {
            match gamma_forms(basis, basis.nu(c)) {
                Ok(forms) => {
                    for (pos, f) in forms.iter().enumerate() {
                        let to = st.stratum(q + 1)[pos];
                        fact_ok &= *f == sc.gamma(c, to);
                    }
                }
                Err(_) => fact_ok = false,
            }
        }
    }
    let total: usize = (0..ell).map(|q| sc.entries(q).len()).sum();
    s.push(
        "factorization",
        fact_ok,
        format!("{total} nonzero Γ, each N·λ_S with integer N"),
    );

    let defects = sc.square_defects();
    s.push(
        "symbolic_flatness",
        defects.is_empty(),
        format!("{} composable pairs with a nonzero quadratic form", defects.len()),
    );

    let mut rep_ok = true;
    let mut rep_tried = 0;
    for q in 1..ell {
        let pool = &relations[q + 1];
        if pool.is_empty() {
            continue;
        }
        for &c in st.stratum(q) {
            let mut r = MonomialSum::zero(q);
            for _ in 0..3 {
                let j = pool.choose(&mut rng).expect("nonempty");
                let coef = ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4));
                r = r.add(&os_boundary(j).scale(&coef)).expect("same degree");
            }
            let shifted = basis.nu(c).add(&r).expect("same degree");
            rep_tried += 1;
            rep_ok &= gamma_forms(basis, &shifted).ok() == gamma_forms(basis, basis.nu(c)).ok();
        }
    }
    if rep_tried == 0 {
        s.info(
            "representative_independence",
            "no relations in degrees 1..ℓ-1 to perturb by",
        );
    } else {
        s.push(
            "representative_independence",
            rep_ok,
            format!("{rep_tried} perturbed representatives"),
        );
    }

    // fixture
    let mut fixture_rows = Vec::new();
    if let Some(f) = fixture {
        match f.compare(instance) {
            Ok(rows) => {
                let bad = rows.iter().filter(|r| !r.matches).count();
                s.push(
                    "fixture_tables",
                    bad == 0,
                    format!("{}: {} rows, {bad} mismatches", f.name, rows.len()),
                );
                fixture_rows = rows;
            }
            Err(e) => s.push("fixture_tables", false, e.to_string()),
        }
    }

    // complexes
    let tol = config.tolerance;
    let euler = betti.euler();
    let mut euler_ok = true;
    let zero = WeightVector::zero(n);
    let zero_min = minimal_complex(sc, &zero).and_then(|cx| cohomology_dims(&cx, tol));
    let zero_ao = exact_aomoto_dims(sc, zero.exact_values().expect("exact"));
    s.push(
        "betti_at_zero",
        matches!((&zero_min, &zero_ao), (Ok(m), Ok(a)) if m.dims() == b && a.dims() == b),
        format!(
            "minimal {:?}, Aomoto {:?}",
            zero_min.as_ref().map(|r| r.dims()).ok(),
            zero_ao.as_ref().map(|r| r.dims()).ok()
        ),
    );

    let mut worst_ratio: f64 = 0.0;
    let mut complex_err = None;
    for _ in 0..config.complex_samples {
        let w = WeightVector::complex(random_complex_weights(&mut rng, n, 3.0, 1.0));
        match minimal_complex(sc, &w) {
            Ok(cx) => worst_ratio = cx.composition_ratios().into_iter().fold(worst_ratio, f64::max),
            Err(e) => complex_err = Some(e),
        }
    }
    s.push(
        "minimal_is_complex",
        complex_err.is_none() && worst_ratio <= COMPLEX_RATIO_MAX,
        format!(
            "max ‖D D‖/(‖D‖‖D‖) = {worst_ratio:.3e} over {} weights",
            config.complex_samples
        ),
    );

    let mut worst_period: f64 = 0.0;
    for _ in 0..config.samples {
        let w = WeightVector::complex(random_complex_weights(&mut rng, n, 3.0, 1.0));
        let base = minimal_complex(sc, &w).expect("length checked");
        for i in 0..n {
            let moved = minimal_complex(sc, &w.shifted(i, 2)).expect("length checked");
            for (x, y) in base.differentials.iter().zip(&moved.differentials) {
                for (a, b) in x.iter().zip(y.iter()) {
                    worst_period = worst_period.max((a - b).norm() / a.norm().max(1.0));
                }
            }
        }
    }
    s.push(
        "periodicity",
        worst_period <= PERIODICITY_TOL,
        format!("max entrywise change under λ_i ↦ λ_i + 2: {worst_period:.3e}"),
    );

    let mut worst_lin: f64 = 0.0;
    let mut ratios = Vec::new();
    for _ in 0..config.samples {
        let w = WeightVector::complex(random_unit_disk_weights(&mut rng, n));
        let e1 = linearization_check(sc, &w, LINEARIZATION_H).map(|r| r.max_relative_error);
        let e2 = linearization_check(sc, &w, LINEARIZATION_H / 2.0).map(|r| r.max_relative_error);
        if let (Ok(e1), Ok(e2)) = (e1, e2) {
            worst_lin = worst_lin.max(e1);
            if e2 > 0.0 {
                ratios.push(e1 / e2);
            }
        }
    }
    let (lo, hi) = ratios
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    s.push(
        "linearization",
        worst_lin <= LINEARIZATION_MAX_ERROR && !ratios.is_empty() && lo >= HALVING_RANGE.0 && hi <= HALVING_RANGE.1,
        format!("h = {LINEARIZATION_H:e}: max error {worst_lin:.3e}, halving ratios in [{lo:.3}, {hi:.3}]"),
    );

    let mut tc_ok = true;
    let bound = 2 * (n as i64 + 1);
    for _ in 0..config.samples {
        let w = WeightVector::exact(random_small_rationals(&mut rng, n, bound));
        match tangent_cone_compare(sc, &w, tol, true) {
            Ok(r) => {
                tc_ok &= r.in_small_regime && r.agree;
                euler_ok &= r.minimal.euler == euler && r.aomoto.euler == euler;
            }
            Err(_) => tc_ok = false,
        }
    }
    s.push(
        "tangent_cone",
        tc_ok,
        format!(
            "{} weights with |λ_i| < 1/{bound}: minimal and exact Aomoto dims agree",
            config.samples
        ),
    );

    let mut generic = vec![0usize; ell + 1];
    generic[ell] = betti.beta as usize;
    let mut gv_ok = true;
    for _ in 0..config.samples {
        let w = WeightVector::complex(random_complex_weights(&mut rng, n, 1.0, 1.0));
        match minimal_complex(sc, &w).and_then(|cx| cohomology_dims(&cx, tol)) {
            Ok(r) => {
                gv_ok &= r.dims() == generic;
                euler_ok &= r.euler == euler;
            }
            Err(_) => gv_ok = false,
        }
        let exact: Vec<Rat> = (0..n).map(|_| ratio(rng.gen_range(-9973..=9973), 9973)).collect();
        match exact_aomoto_dims(sc, &exact) {
            Ok(r) => {
                gv_ok &= r.dims() == generic;
                euler_ok &= r.euler == euler;
            }
            Err(_) => gv_ok = false,
        }
    }
    s.push(
        "generic_vanishing",
        gv_ok,
        format!("dims {generic:?} at random weights (minimal and exact Aomoto)"),
    );
    s.push(
        "cohomology_euler",
        euler_ok,
        format!("Σ(-1)^q h^q = π(A,-1) = {euler} in every report"),
    );

    VerifyReport {
        checks: s.checks,
        fixture_rows,
    }
}
