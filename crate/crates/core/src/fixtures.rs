//! Bundled example arrangements with their expected chamber-basis tables.
//!
//! `fig1` is four lines in the plane, three of them through (200, 60), with
//! the flag F⁰ = (170, 20), v₁ = (1, 0), v₂ = (0, 1). Chambers are named by
//! an interior point; tables use 1-based hyperplane indices.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Arrangement, Flag};
use crate::io::parse_input;
use crate::os_algebra::{format_scaled_lambda, subscript, LinearForm, MonomialSum};
use crate::pipeline::Instance;
use crate::rational::{rat, Rat};

type Terms = &'static [(i64, &'static [usize])];

/// (indices, [(coefficient, chamber)]).
pub type XiRow = (&'static [usize], &'static [(i64, &'static str)]);
/// (chamber, [(N, S, target chamber)]).
pub type WedgeRow = (&'static str, &'static [(i64, &'static [usize], &'static str)]);

pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
    /// Chamber name and an interior point.
    pub labels: &'static [(&'static str, &'static [i64])],
    /// ξ(ω_I) = Σ coefficient·[chamber].
    pub xi_table: &'static [XiRow],
    /// ν(C) = Σ coefficient·ω_I.
    pub nu_table: &'static [(&'static str, Terms)],
    /// ω_λ∧ν(C) = Σ N·λ_S·ν(C').
    pub wedge_table: &'static [WedgeRow],
}

pub const FIG1_TEXT: &str = "\
# four lines, H1 H2 H3 concurrent at (200, 60)
dim 2
1 -2 -80
1 0 -200
5 4 -1240
2 5 -890
flag
point 170 20
dir 1 0
dir 0 1
";

pub static FIG1: Fixture = Fixture {
    name: "fig1",
    text: FIG1_TEXT,
    labels: &[
        ("A", &[170, 20]),
        ("B1", &[100, 20]),
        ("B2", &[210, 20]),
        ("B3", &[300, 20]),
        ("B4", &[400, 20]),
        ("C1", &[210, 75]),
        ("C2", &[185, 85]),
        ("C3", &[240, 110]),
        ("C4", &[175, 120]),
        ("C5", &[110, 140]),
    ],
    xi_table: &[
        (&[], &[(1, "A")]),
        (&[1], &[(-1, "B1")]),
        (&[2], &[(1, "B2"), (1, "B3"), (1, "B4")]),
        (&[3], &[(1, "B3"), (1, "B4")]),
        (&[4], &[(1, "B4")]),
        (&[1, 2], &[(-1, "C1"), (-1, "C3")]),
        (&[1, 3], &[(-1, "C1"), (-1, "C2"), (-1, "C3"), (-1, "C4")]),
        (&[1, 4], &[(-1, "C3"), (-1, "C4"), (-1, "C5")]),
        (&[2, 4], &[(-1, "C4"), (-1, "C5")]),
        (&[3, 4], &[(-1, "C5")]),
    ],
    nu_table: &[
        ("A", &[(1, &[])]),
        ("B1", &[(-1, &[1])]),
        ("B2", &[(1, &[2]), (-1, &[3])]),
        ("B3", &[(1, &[3]), (-1, &[4])]),
        ("B4", &[(1, &[4])]),
        ("C1", &[(-1, &[1, 2]), (1, &[1, 4]), (-1, &[2, 4])]),
        ("C2", &[(1, &[1, 2]), (-1, &[1, 3]), (1, &[2, 4]), (-1, &[3, 4])]),
        ("C3", &[(-1, &[1, 4]), (1, &[2, 4])]),
        ("C4", &[(-1, &[2, 4]), (1, &[3, 4])]),
        ("C5", &[(-1, &[3, 4])]),
    ],
    wedge_table: &[
        (
            "A",
            &[
                (-1, &[1], "B1"),
                (1, &[2], "B2"),
                (1, &[2, 3], "B3"),
                (1, &[2, 3, 4], "B4"),
            ],
        ),
        (
            "B1",
            &[
                (-1, &[2, 3], "C1"),
                (-1, &[3], "C2"),
                (-1, &[2, 3, 4], "C3"),
                (-1, &[3, 4], "C4"),
                (-1, &[4], "C5"),
            ],
        ),
        ("B2", &[(1, &[1, 2, 3], "C2"), (1, &[1, 2, 3, 4], "C4")]),
        ("B3", &[(-1, &[1], "C1"), (-1, &[1, 2], "C2"), (1, &[1, 2, 3, 4], "C5")]),
        ("B4", &[(-1, &[1], "C3"), (-1, &[1, 2], "C4"), (-1, &[1, 2, 3], "C5")]),
    ],
};

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    match name {
        "fig1" => Some(&FIG1),
        _ => None,
    }
}

pub fn names() -> &'static [&'static str] {
    &["fig1"]
}

fn zero_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|&i| i - 1).collect()
}

impl Fixture {
    pub fn parse(&self) -> Result<(Arrangement, Option<Flag>)> {
        parse_input(self.text)
    }

    /// Chamber ids of the labelled chambers; labels whose point misses every
    /// chamber are left out.
    pub fn label_map(&self, instance: &Instance) -> HashMap<&'static str, usize> {
        self.labels
            .iter()
            .filter_map(|(name, point)| {
                let x: Vec<Rat> = point.iter().map(|&v| rat(v)).collect();
                instance
                    .stratification
                    .locate(&instance.arrangement, &x)
                    .map(|id| (*name, id))
            })
            .collect()
    }

    /// One row per expected table entry, with the computed value beside it.
    pub fn compare(&self, instance: &Instance) -> Result<Vec<TableRow>> {
        let labels = self.label_map(instance);
        for (name, _) in self.labels {
            if !labels.contains_key(name) {
                return Err(Error::InvalidArrangement(format!(
                    "fixture label {name} does not name a chamber"
                )));
            }
        }
        let name_of: HashMap<usize, &str> = labels.iter().map(|(k, v)| (*v, *k)).collect();
        let st = &instance.stratification;
        let n = instance.arrangement.len();
        let mut rows = Vec::new();

        for (indices, expected) in self.xi_table {
            let idx = zero_based(indices);
            let q = idx.len();
            let got = instance.basis.xi_monomial(&idx)?.coefficients;
            let mut want = vec![Rat::zero(); st.stratum(q).len()];
            let mut misplaced = false;
            for (c, label) in *expected {
                if st.stratum_of(labels[label]) == q {
                    want[st.position(labels[label])] += rat(*c);
                } else {
                    misplaced = true;
                }
            }
            let key = if q == 0 {
                "1".to_string()
            } else {
                format!("ω{}", subscript(&idx))
            };
            rows.push(TableRow {
                table: Table::Xi,
                key: format!("ξ({key})"),
                expected: chamber_sum(&want, st.stratum(q), &name_of),
                computed: chamber_sum(&got, st.stratum(q), &name_of),
                matches: !misplaced && got == want,
            });
        }

        for (label, terms) in self.nu_table {
            let mut want = MonomialSum::zero(terms[0].1.len());
            for (c, indices) in *terms {
                let part = MonomialSum::from_monomial(&zero_based(indices))
                    .expect("distinct indices")
                    .scale(&rat(*c));
                want = want.add(&part)?;
            }
            let got = instance.basis.nu(labels[label]);
            rows.push(TableRow {
                table: Table::Nu,
                key: format!("ν({label})"),
                expected: want.to_string(),
                computed: got.to_string(),
                matches: *got == want,
            });
        }

        for (label, terms) in self.wedge_table {
            let from = labels[label];
            let q = st.stratum_of(from);
            if q == st.dim() {
                rows.push(TableRow {
                    table: Table::Wedge,
                    key: format!("ω_λ∧ν({label})"),
                    expected: "terms in the next stratum".into(),
                    computed: format!("{label} is in the top stratum"),
                    matches: false,
                });
                continue;
            }
            let mut want_forms = Vec::new();
            let mut got_forms = Vec::new();
            for &to in st.stratum(q + 1) {
                let mut want = LinearForm::zero(n);
                for (c, set, _) in terms.iter().filter(|t| labels[t.2] == to) {
                    for i in zero_based(set) {
                        want.0[i] += rat(*c);
                    }
                }
                want_forms.push((to, want));
                got_forms.push((to, instance.constants.gamma(from, to)));
            }
            rows.push(TableRow {
                table: Table::Wedge,
                key: format!("ω_λ∧ν({label})"),
                expected: form_sum(&want_forms, &name_of),
                computed: form_sum(&got_forms, &name_of),
                matches: want_forms == got_forms && terms.iter().all(|t| st.stratum_of(labels[t.2]) == q + 1),
            });
        }
        Ok(rows)
    }

    /// Descriptions of every mismatching row.
    pub fn diff(&self, instance: &Instance) -> Vec<String> {
        match self.compare(instance) {
            Err(e) => vec![e.to_string()],
            Ok(rows) => rows
                .into_iter()
                .filter(|r| !r.matches)
                .map(|r| format!("{} = {} but expected {}", r.key, r.computed, r.expected))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Table {
    Xi,
    Nu,
    Wedge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub table: Table,
    pub key: String,
    pub expected: String,
    pub computed: String,
    pub matches: bool,
}

/// Joins `(chamber name, body, negative)` terms, ordered by chamber name.
fn signed_terms(mut terms: Vec<(&str, String, bool)>) -> String {
    terms.sort_by(|a, b| a.0.cmp(b.0));
    let mut out = String::new();
    for (k, (_, body, negative)) in terms.into_iter().enumerate() {
        match (k, negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn chamber_sum(v: &[Rat], stratum: &[usize], name_of: &HashMap<usize, &str>) -> String {
    let terms = v
        .iter()
        .zip(stratum)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, id)| {
            let name = name_of.get(id).copied().unwrap_or("?");
            let a = c.abs();
            let body = if a.is_one() {
                format!("[{name}]")
            } else {
                format!("{a}[{name}]")
            };
            (name, body, c.is_negative())
        })
        .collect();
    signed_terms(terms)
}

fn form_sum(forms: &[(usize, LinearForm)], name_of: &HashMap<usize, &str>) -> String {
    let terms = forms
        .iter()
        .filter(|(_, f)| !f.is_zero())
        .map(|(to, f)| {
            let name = name_of.get(to).copied().unwrap_or("?");
            let set: Vec<usize> = (0..f.0.len()).filter(|&i| !f.0[i].is_zero()).collect();
            match f.factor_over(&set) {
                Some(n) => {
                    let body = format_scaled_lambda(n.abs(), &set);
                    (name, format!("{body}ν({name})"), n < 0)
                }
                None => (
                    name,
                    format!("{:?}ν({name})", f.0.iter().map(ToString::to_string).collect::<Vec<_>>()),
                    false,
                ),
            }
        })
        .collect();
    signed_terms(terms)
}
