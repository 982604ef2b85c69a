//! Sample diagrams and generators used by tests, benchmarks and the CLI.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::gauss::{Passage, Sign, SignedGaussCode};

pub const UNKNOT: &str = "\n";
pub const UNLINK: &str = "\n\n";
pub const UNLINK3: &str = "\n\n\n";
pub const HOPF: &str = "O1+ U2+\nU1+ O2+\n";
pub const HOPF_NEGATIVE: &str = "O1- U2-\nU1- O2-\n";
pub const TREFOIL: &str = "O1+ U2+ O3+ U1+ O2+ U3+\n";
pub const FIGURE_EIGHT: &str = "O1+ U2- O3+ U4- O2- U1+ O4- U3+\n";
pub const VIRTUAL_TREFOIL: &str = "O1+ O2+ U1+ U2+\n";
/// One classical crossing between two components: `lk_{1/2} = 1`, `lk_{2/1} = 0`.
pub const VIRTUAL_HOPF: &str = "O1+\nU1+\n";
/// Virtual linking numbers `+1` and `−1`; the classical linking number is 0.
pub const CANCELLING: &str = "O1+ U2-\nU1+ O2-\n";
/// Eight crossings with `lk_{1/2} = 6` and `lk_{2/1} = −2`.
pub const SIX_MINUS_TWO: &str =
    "O1+ O2+ O3+ O4+ O5+ O6+ U7- U8-\nU1+ U2+ U3+ U4+ U5+ U6+ O7- O8-\n";
pub const BORROMEAN_STYLE: &str = "O1+ U5+ O2- U6-\nU1+ O3+ U2- O4-\nU3+ O5+ U4- O6-\n";
/// Unlink with a kink on each component.
pub const KINKED_UNLINK: &str = "O1+ U1+\nU2- O2-\n";

/// The `(2, 2m)` torus link pattern: `2|m|` crossings alternating between
/// the components, all signed like `m`, so both virtual linking numbers are
/// `m`.
pub fn torus_2_2m(m: i64) -> SignedGaussCode {
    let sign = if m < 0 { Sign::Negative } else { Sign::Positive };
    let crossings = 2 * m.unsigned_abs() as u32;
    let mut first = Vec::new();
    let mut second = Vec::new();
    for k in 1..=crossings {
        if k % 2 == 1 {
            first.push(Passage::over(k, sign));
            second.push(Passage::under(k, sign));
        } else {
            first.push(Passage::under(k, sign));
            second.push(Passage::over(k, sign));
        }
    }
    SignedGaussCode::new(vec![first, second]).expect("well-formed torus code")
}

/// Named corpus of diagrams with at most ten arcs.
pub fn named() -> Vec<(&'static str, SignedGaussCode)> {
    let mut out: Vec<(&'static str, SignedGaussCode)> = [
        ("unknot", UNKNOT),
        ("unlink", UNLINK),
        ("unlink3", UNLINK3),
        ("hopf", HOPF),
        ("hopf-negative", HOPF_NEGATIVE),
        ("trefoil", TREFOIL),
        ("figure-eight", FIGURE_EIGHT),
        ("virtual-trefoil", VIRTUAL_TREFOIL),
        ("virtual-hopf", VIRTUAL_HOPF),
        ("cancelling", CANCELLING),
        ("six-minus-two", SIX_MINUS_TWO),
        ("borromean-style", BORROMEAN_STYLE),
        ("kinked-unlink", KINKED_UNLINK),
    ]
    .into_iter()
    .map(|(name, text)| (name, SignedGaussCode::parse(text).expect("corpus code parses")))
    .collect();
    out.push(("torus-2-4", torus_2_2m(2)));
    out.push(("torus-2-6", torus_2_2m(3)));
    out.push(("torus-2-10", torus_2_2m(5)));
    out.push(("torus-2-6-negative", torus_2_2m(-3)));
    out
}

/// A random signed Gauss code with `components` components and
/// `crossings` crossings. Every crossing picks its over and under component
/// and its sign uniformly, and each component's passages are shuffled.
pub fn random_code<R: Rng>(rng: &mut R, components: usize, crossings: u32) -> SignedGaussCode {
    assert!(components >= 1);
    let mut comps: Vec<Vec<Passage>> = vec![Vec::new(); components];
    for k in 1..=crossings {
        let sign = if rng.gen_bool(0.5) { Sign::Positive } else { Sign::Negative };
        comps[rng.gen_range(0..components)].push(Passage::over(k, sign));
        comps[rng.gen_range(0..components)].push(Passage::under(k, sign));
    }
    for c in &mut comps {
        c.shuffle(rng);
    }
    SignedGaussCode::new(comps).expect("each crossing appears once over and once under")
}
