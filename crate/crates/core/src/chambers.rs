//! Chambers as realizable sign vectors, and their stratification by a flag.

use std::fmt;

use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    betti_vector, build_poset, is_essential, is_generic_flag, Arrangement, BettiVector, Flag, IntersectionPoset,
};
use crate::lp;
use crate::random::random_rational;
use crate::rational::{sign, Rat};

pub const MAX_FLAG_ATTEMPTS: usize = 64;

/// Signs of the defining forms on a chamber. Orders lexicographically with
/// `-` before `+`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidArrangement("sign vector entries must be +1 or -1".into()));
        }
        Ok(Self(signs))
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i8 {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses a string of `+` and `-`.
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(Error::InvalidArrangement(format!("bad sign character {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub sign_vector: SignVector,
    pub witness: Vec<Rat>,
    pub bounded: bool,
}

impl Chamber {
    /// The constraints `s_i · α_i(x) > 0` in the form used by the LP.
    fn constraints(&self, arrangement: &Arrangement) -> Vec<(Vec<Rat>, Rat)> {
        side_constraints(arrangement, self.sign_vector.signs())
    }
}

fn side_constraints(arrangement: &Arrangement, signs: &[i8]) -> Vec<(Vec<Rat>, Rat)> {
    signs
        .iter()
        .zip(arrangement.hyperplanes())
        .map(|(&s, h)| {
            if s > 0 {
                (h.coefficients().to_vec(), h.offset().clone())
            } else {
                (h.coefficients().iter().map(|x| -x).collect(), -h.offset().clone())
            }
        })
        .collect()
}

/// All chambers, sorted by sign vector, each with an exact interior witness.
pub fn enumerate_chambers(arrangement: &Arrangement) -> Result<Vec<Chamber>> {
    if !is_essential(arrangement) {
        return Err(Error::NonEssential);
    }
    let dim = arrangement.dim();
    let mut cells: Vec<(Vec<i8>, Vec<Rat>)> = vec![(Vec::new(), vec![Rat::zero(); dim])];
    for h in arrangement.hyperplanes() {
        let mut next = Vec::with_capacity(cells.len() * 2);
        for (signs, witness) in cells {
            let here = sign(&h.eval(&witness));
            for s in [-1i8, 1] {
                let mut extended = signs.clone();
                extended.push(s);
                if here == s {
                    next.push((extended, witness.clone()));
                    continue;
                }
                // side_constraints zips, so only the inserted prefix is constrained
                if let Some(w) = lp::strictly_feasible(&side_constraints(arrangement, &extended), dim) {
                    next.push((extended, w));
                }
            }
        }
        cells = next;
    }

    let mut chambers: Vec<Chamber> = cells
        .into_iter()
        .map(|(signs, witness)| {
            let normals: Vec<Vec<Rat>> = signs
                .iter()
                .zip(arrangement.hyperplanes())
                .map(|(&s, h)| {
                    h.coefficients()
                        .iter()
                        .map(|x| if s > 0 { x.clone() } else { -x })
                        .collect()
                })
                .collect();
            Chamber {
                sign_vector: SignVector(signs),
                witness,
                bounded: lp::cone_is_trivial(&normals, dim),
            }
        })
        .collect();
    chambers.sort_by(|a, b| a.sign_vector.cmp(&b.sign_vector));
    Ok(chambers)
}

/// Hyperplanes separating two chambers, as sorted 0-based indices.
pub fn separating_set(c: &Chamber, other: &Chamber) -> Vec<usize> {
    separating_indices(&c.sign_vector, &other.sign_vector)
}

pub fn separating_indices(a: &SignVector, b: &SignVector) -> Vec<usize> {
    a.0.iter()
        .zip(&b.0)
        .enumerate()
        .filter(|(_, (x, y))| x != y)
        .map(|(i, _)| i)
        .collect()
}

/// Chambers partitioned into ch_F^q, with the orientation sign of each.
#[derive(Debug, Clone)]
pub struct Stratification {
    flag: Flag,
    chambers: Vec<Chamber>,
    strata: Vec<Vec<usize>>,
    stratum_of: Vec<usize>,
    position: Vec<usize>,
    sgn: Vec<i8>,
    flag_witness: Vec<Vec<Rat>>,
}

impl Stratification {
    pub fn flag(&self) -> &Flag {
        &self.flag
    }

    pub fn dim(&self) -> usize {
        self.flag.dim()
    }

    pub fn chambers(&self) -> &[Chamber] {
        &self.chambers
    }

    pub fn chamber(&self, id: usize) -> &Chamber {
        &self.chambers[id]
    }

    /// Chamber ids of ch_F^q, in sign-vector order.
    pub fn stratum(&self, q: usize) -> &[usize] {
        &self.strata[q]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.strata.iter().map(Vec::len).collect()
    }

    pub fn stratum_of(&self, id: usize) -> usize {
        self.stratum_of[id]
    }

    /// Index of chamber `id` inside its stratum.
    pub fn position(&self, id: usize) -> usize {
        self.position[id]
    }

    /// +1 if C ∩ F^q lies in F^q_+, −1 if in F^q_−; +1 for the stratum-0 chamber.
    pub fn sgn(&self, id: usize) -> i8 {
        self.sgn[id]
    }

    /// A point of C ∩ F^q in the flag coordinates (t_1..t_q).
    pub fn flag_witness(&self, id: usize) -> &[Rat] {
        &self.flag_witness[id]
    }

    pub fn find(&self, signs: &SignVector) -> Option<usize> {
        self.chambers.iter().position(|c| &c.sign_vector == signs)
    }

    /// The chamber containing `x` in its interior.
    pub fn locate(&self, arrangement: &Arrangement, x: &[Rat]) -> Option<usize> {
        let signs: Vec<i8> = arrangement.hyperplanes().iter().map(|h| sign(&h.eval(x))).collect();
        if signs.contains(&0) {
            return None;
        }
        self.find(&SignVector(signs))
    }
}

/// Lowest q with C ∩ F^q nonempty, together with a point of C ∩ F^q.
fn first_meeting_level(arrangement: &Arrangement, chamber: &Chamber, flag: &Flag) -> Option<(usize, Vec<Rat>)> {
    let dim = arrangement.dim();
    let at_base = chamber
        .constraints(arrangement)
        .iter()
        .all(|(g, c)| (crate::rational::dot(g, flag.basepoint()) + c).is_positive());
    if at_base {
        return Some((0, Vec::new()));
    }
    (1..=dim).find_map(|q| {
        let cons: Vec<(Vec<Rat>, Rat)> = chamber
            .sign_vector
            .signs()
            .iter()
            .zip(arrangement.hyperplanes())
            .map(|(&s, h)| {
                let (g, c) = flag.restricted_form(h, q);
                if s > 0 {
                    (g, c)
                } else {
                    (g.into_iter().map(|x| -x).collect(), -c)
                }
            })
            .collect();
        lp::strictly_feasible(&cons, q).map(|t| (q, t))
    })
}

/// Assigns each chamber to ch_F^q and computes sgn. Fails with
/// `StratumMismatch` when a stratum size differs from b_q.
pub fn stratify(
    arrangement: &Arrangement,
    betti: &BettiVector,
    chambers: Vec<Chamber>,
    flag: &Flag,
) -> Result<Stratification> {
    let dim = arrangement.dim();
    let mut strata = vec![Vec::new(); dim + 1];
    let mut stratum_of = Vec::with_capacity(chambers.len());
    let mut position = Vec::with_capacity(chambers.len());
    let mut sgn = Vec::with_capacity(chambers.len());
    let mut flag_witness = Vec::with_capacity(chambers.len());
    for (id, c) in chambers.iter().enumerate() {
        let (q, t) = first_meeting_level(arrangement, c, flag).ok_or(Error::NotGeneric { q: dim })?;
        position.push(strata[q].len());
        strata[q].push(id);
        stratum_of.push(q);
        sgn.push(if q == 0 { 1 } else { sign(&t[q - 1]) });
        flag_witness.push(t);
    }
    for (q, s) in strata.iter().enumerate() {
        if s.len() as u64 != betti.get(q) {
            return Err(Error::StratumMismatch {
                q,
                expected: betti.get(q),
                found: s.len(),
            });
        }
    }
    Ok(Stratification {
        flag: flag.clone(),
        chambers,
        strata,
        stratum_of,
        position,
        sgn,
        flag_witness,
    })
}

fn random_flag(rng: &mut ChaCha8Rng, dim: usize, scale: i64) -> Option<Flag> {
    let basepoint = (0..dim).map(|_| random_rational(rng, scale)).collect();
    let directions = (0..dim)
        .map(|_| (0..dim).map(|_| random_rational(rng, 5)).collect())
        .collect();
    Flag::new(basepoint, directions).ok()
}

/// A seeded random flag that is generic at every level and stratifies with
/// |ch_F^q| = b_q.
pub fn random_generic_flag(arrangement: &Arrangement, seed: u64) -> Result<Flag> {
    ensure_generic_flag(arrangement, None, seed)
}

/// Returns `candidate` unchanged if it is generic, otherwise searches seeded
/// random flags.
pub fn ensure_generic_flag(arrangement: &Arrangement, candidate: Option<&Flag>, seed: u64) -> Result<Flag> {
    if !is_essential(arrangement) {
        return Err(Error::NonEssential);
    }
    let poset = build_poset(arrangement);
    let betti = betti_vector(&poset);
    let chambers = enumerate_chambers(arrangement)?;
    search_generic_flag(arrangement, &poset, &betti, &chambers, candidate, seed).map(|s| s.flag)
}

/// The stratification by `candidate` if it is generic, otherwise by the
/// first generic flag of a seeded random search.
pub fn search_generic_flag(
    arrangement: &Arrangement,
    poset: &IntersectionPoset,
    betti: &BettiVector,
    chambers: &[Chamber],
    candidate: Option<&Flag>,
    seed: u64,
) -> Result<Stratification> {
    let accept = |flag: &Flag| {
        if flag.dim() == arrangement.dim() && is_generic_flag(poset, flag) {
            stratify(arrangement, betti, chambers.to_vec(), flag).ok()
        } else {
            None
        }
    };
    if let Some(st) = candidate.and_then(accept) {
        return Ok(st);
    }
    let scale = chambers
        .iter()
        .flat_map(|c| c.witness.iter())
        .map(|x| x.abs().ceil().to_integer())
        .max()
        .and_then(|m| i64::try_from(m).ok())
        .unwrap_or(1)
        .clamp(1, 1 << 20)
        * 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_FLAG_ATTEMPTS {
        if let Some(st) = random_flag(&mut rng, arrangement.dim(), scale)
            .as_ref()
            .and_then(accept)
        {
            return Ok(st);
        }
    }
    Err(Error::FlagSearchExhausted {
        attempts: MAX_FLAG_ATTEMPTS,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ChamberRecord {
    pub sign_vector: String,
    pub witness: Vec<String>,
    pub stratum: usize,
    pub sgn: i8,
    pub bounded: bool,
}

impl Stratification {
    /// One JSON-ready record per chamber, in chamber order.
    pub fn records(&self) -> Vec<ChamberRecord> {
        self.chambers
            .iter()
            .enumerate()
            .map(|(id, c)| ChamberRecord {
                sign_vector: c.sign_vector.to_string(),
                witness: c.witness.iter().map(ToString::to_string).collect(),
                stratum: self.stratum_of[id],
                sgn: self.sgn[id],
                bounded: c.bounded,
            })
            .collect()
    }
}
