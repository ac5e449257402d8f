//! Runs every stage on one arrangement and keeps the results together.

use crate::chambers::{enumerate_chambers, search_generic_flag, stratify, Stratification};
use crate::error::{Error, Result};
use crate::geometry::{
    betti_vector, build_poset, check_genericity_in, is_essential, Arrangement, BettiVector, Flag, IntersectionPoset,
};
use crate::os_algebra::{structure_constants, ChamberBasis, StructureConstants};

#[derive(Debug, Clone)]
pub struct Instance {
    pub arrangement: Arrangement,
    pub poset: IntersectionPoset,
    pub betti: BettiVector,
    pub stratification: Stratification,
    pub basis: ChamberBasis,
    pub constants: StructureConstants,
}

impl Instance {
    /// Uses `flag` if it is generic, otherwise a seeded random generic flag.
    pub fn new(arrangement: Arrangement, flag: Option<&Flag>, seed: u64) -> Result<Self> {
        if !is_essential(&arrangement) {
            return Err(Error::NonEssential);
        }
        let poset = build_poset(&arrangement);
        let betti = betti_vector(&poset);
        let chambers = enumerate_chambers(&arrangement)?;
        let stratification = search_generic_flag(&arrangement, &poset, &betti, &chambers, flag, seed)?;
        Self::finish(arrangement, poset, betti, stratification)
    }

    /// Uses `flag` as given; fails if it does not stratify correctly.
    pub fn with_flag(arrangement: Arrangement, flag: &Flag) -> Result<Self> {
        let poset = build_poset(&arrangement);
        let betti = betti_vector(&poset);
        if let Some(q) = (0..=arrangement.dim()).find(|&q| !check_genericity_in(&poset, flag, q)) {
            return Err(Error::NotGeneric { q });
        }
        let chambers = enumerate_chambers(&arrangement)?;
        let stratification = stratify(&arrangement, &betti, chambers, flag)?;
        Self::finish(arrangement, poset, betti, stratification)
    }

    fn finish(
        arrangement: Arrangement,
        poset: IntersectionPoset,
        betti: BettiVector,
        stratification: Stratification,
    ) -> Result<Self> {
        let basis = ChamberBasis::new(&arrangement, &stratification)?;
        let constants = structure_constants(&basis)?;
        Ok(Self {
            arrangement,
            poset,
            betti,
            stratification,
            basis,
            constants,
        })
    }

    pub fn n(&self) -> usize {
        self.arrangement.len()
    }
}
