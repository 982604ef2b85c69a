//! Knot quandle presentations read off a signed Gauss code.
//!
//! There is one generator per arc and one relation per crossing. At a
//! positive crossing the under-strand leaves as `under_in ▷ over`, at a
//! negative crossing as `under_in ▷⁻¹ over`. Flipping this convention
//! everywhere gives the presentation of the mirror diagram.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::gauss::{arcs, SignedGaussCode, Sign};

/// `under_out = under_in ▷^sign over`, arc ids 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingRelation {
    pub crossing: u32,
    pub under_in: usize,
    pub over: usize,
    pub under_out: usize,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotQuandlePresentation {
    /// Component of each generator; its length is the generator count.
    pub generator_component: Vec<usize>,
    pub relations: Vec<CrossingRelation>,
}

impl KnotQuandlePresentation {
    pub fn generator_count(&self) -> usize {
        self.generator_component.len()
    }

    pub fn component_count(&self) -> usize {
        self.generator_component.iter().max().map_or(0, |&c| c + 1)
    }

    /// Lowest generator on each component.
    pub fn component_seeds(&self) -> Vec<usize> {
        let mut seeds = vec![usize::MAX; self.component_count()];
        for (a, &c) in self.generator_component.iter().enumerate() {
            seeds[c] = seeds[c].min(a);
        }
        seeds
    }
}

pub fn presentation(code: &SignedGaussCode) -> KnotQuandlePresentation {
    let table = arcs(code);
    let relations = table
        .crossings
        .iter()
        .map(|c| CrossingRelation {
            crossing: c.crossing,
            under_in: c.under_in,
            over: c.over_arc,
            under_out: c.under_out,
            sign: c.sign,
        })
        .collect();
    KnotQuandlePresentation { generator_component: table.arc_component, relations }
}

impl fmt::Display for KnotQuandlePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators: {}", self.generator_count())?;
        for (a, c) in self.generator_component.iter().enumerate() {
            writeln!(f, "  a{} (component {})", a + 1, c + 1)?;
        }
        writeln!(f, "relations: {}", self.relations.len())?;
        for r in &self.relations {
            let op = match r.sign {
                Sign::Positive => "▷",
                Sign::Negative => "▷⁻¹",
            };
            writeln!(
                f,
                "  a{} = a{} {op} a{}    # crossing {}",
                r.under_out + 1,
                r.under_in + 1,
                r.over + 1,
                r.crossing
            )?;
        }
        Ok(())
    }
}
