//! Reidemeister I and II insertions on signed Gauss codes.
//!
//! Virtual moves leave a Gauss code unchanged, so only the classical moves
//! that add crossings are generated here. New crossings get ids above the
//! largest id in use.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::gauss::{GaussError, Passage, Sign, SignedGaussCode};

/// An insertion point: before passage `position` of `component`
/// (`position == len` appends).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strand {
    pub component: usize,
    pub position: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "lowercase")]
pub enum Move {
    /// A kink: `O_k U_k` (or `U_k O_k`) inserted side by side.
    R1 { at: Strand, sign: Sign, over_first: bool },
    /// A bigon: `U_k U_l` at `under`, `O_l O_k` at `over`, with crossing `k`
    /// signed `sign` and `l` the opposite.
    R2 { under: Strand, over: Strand, sign: Sign },
}

pub type MoveScript = Vec<Move>;

fn check_strand(code: &SignedGaussCode, s: Strand) -> Result<(), GaussError> {
    let count = code.component_count();
    let comp = code
        .components()
        .get(s.component)
        .ok_or(GaussError::ComponentOutOfRange { component: s.component, count })?;
    if s.position > comp.len() {
        return Err(GaussError::PositionOutOfRange {
            component: s.component,
            position: s.position,
            len: comp.len(),
        });
    }
    Ok(())
}

/// Inserts passage groups at positions of the original code. Groups sharing
/// a position keep their given order.
fn insert(
    code: &SignedGaussCode,
    mut groups: Vec<(Strand, Vec<Passage>)>,
) -> Result<SignedGaussCode, GaussError> {
    groups.sort_by_key(|(s, _)| (s.component, s.position));
    let mut comps = code.components().to_vec();
    // back to front so earlier positions stay valid
    for (s, ps) in groups.into_iter().rev() {
        let comp = &mut comps[s.component];
        comp.splice(s.position..s.position, ps);
    }
    SignedGaussCode::new(comps)
}

pub fn apply_r1(
    code: &SignedGaussCode,
    component: usize,
    position: usize,
    sign: Sign,
    over_first: bool,
) -> Result<SignedGaussCode, GaussError> {
    let at = Strand { component, position };
    check_strand(code, at)?;
    let k = code.max_crossing_id() + 1;
    let pair = if over_first {
        vec![Passage::over(k, sign), Passage::under(k, sign)]
    } else {
        vec![Passage::under(k, sign), Passage::over(k, sign)]
    };
    insert(code, vec![(at, pair)])
}

pub fn apply_r2(
    code: &SignedGaussCode,
    under: Strand,
    over: Strand,
    sign: Sign,
) -> Result<SignedGaussCode, GaussError> {
    check_strand(code, under)?;
    check_strand(code, over)?;
    let k = code.max_crossing_id() + 1;
    let l = k + 1;
    let other = sign.flip();
    insert(
        code,
        vec![
            (under, vec![Passage::under(k, sign), Passage::under(l, other)]),
            (over, vec![Passage::over(l, other), Passage::over(k, sign)]),
        ],
    )
}

pub fn apply_move(code: &SignedGaussCode, m: &Move) -> Result<SignedGaussCode, GaussError> {
    match *m {
        Move::R1 { at, sign, over_first } => apply_r1(code, at.component, at.position, sign, over_first),
        Move::R2 { under, over, sign } => apply_r2(code, under, over, sign),
    }
}

pub fn apply_script(code: &SignedGaussCode, script: &[Move]) -> Result<SignedGaussCode, GaussError> {
    script.iter().try_fold(code.clone(), |c, m| apply_move(&c, m))
}

fn random_strand(code: &SignedGaussCode, rng: &mut ChaCha8Rng) -> Strand {
    let component = rng.gen_range(0..code.component_count());
    let position = rng.gen_range(0..=code.components()[component].len());
    Strand { component, position }
}

fn random_sign(rng: &mut ChaCha8Rng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// Applies random R1/R2 insertions adding exactly `budget` crossings.
///
/// R1 adds one crossing and R2 adds two; R2 is only drawn while at least two
/// crossings of budget remain. The result depends only on `seed`.
pub fn random_perturb(code: &SignedGaussCode, seed: u64, budget: usize) -> (SignedGaussCode, MoveScript) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = code.clone();
    let mut script = Vec::new();
    let mut remaining = budget;
    while remaining > 0 {
        let m = if remaining >= 2 && rng.gen_bool(0.5) {
            Move::R2 {
                under: random_strand(&current, &mut rng),
                over: random_strand(&current, &mut rng),
                sign: random_sign(&mut rng),
            }
        } else {
            Move::R1 {
                at: random_strand(&current, &mut rng),
                sign: random_sign(&mut rng),
                over_first: rng.gen_bool(0.5),
            }
        };
        remaining -= if matches!(m, Move::R2 { .. }) { 2 } else { 1 };
        current = apply_move(&current, &m).expect("generated moves are in range");
        script.push(m);
    }
    (current, script)
}

/// Drops every passage of `crossing`.
pub fn remove_crossing(code: &SignedGaussCode, crossing: u32) -> Result<SignedGaussCode, GaussError> {
    let comps = code
        .components()
        .iter()
        .map(|c| c.iter().copied().filter(|p| p.crossing != crossing).collect())
        .collect();
    SignedGaussCode::new(comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homcount::{count_oracle, CountOptions};
    use crate::linking::linking_profile;
    use crate::quandle::{make_trivial, make_xn, Quandle};
    use crate::wirtinger::presentation;

    const HOPF: &str = "O1+ U2+\nU1+ O2+\n";

    fn code(text: &str) -> SignedGaussCode {
        SignedGaussCode::parse(text).unwrap()
    }

    fn oracle(c: &SignedGaussCode, t: &Quandle) -> u64 {
        count_oracle(&presentation(c), t, &CountOptions::default()).unwrap().count
    }

    #[test]
    fn r1_on_unknot() {
        let unknot = code("\n");
        let kinked = apply_r1(&unknot, 0, 0, Sign::Positive, true).unwrap();
        assert_eq!(kinked.to_string(), "O1+ U1+\n");
        let x2 = make_xn(2).unwrap();
        assert_eq!(oracle(&unknot, &x2), 3);
        assert_eq!(oracle(&kinked, &x2), 3);
    }

    #[test]
    fn r1_on_hopf_then_removed() {
        let hopf = code(HOPF);
        for (pos, sign, over_first) in [(0, Sign::Positive, true), (1, Sign::Negative, false), (2, Sign::Positive, false)] {
            let c = apply_r1(&hopf, 0, pos, sign, over_first).unwrap();
            for n in [2, 3] {
                let xn = make_xn(n).unwrap();
                assert_eq!(oracle(&c, &xn), oracle(&hopf, &xn));
            }
            assert_eq!(remove_crossing(&c, 3).unwrap(), hopf);
        }
    }

    #[test]
    fn r2_across_unlink() {
        let unlink = code("\n\n");
        let c = apply_r2(&unlink, Strand { component: 0, position: 0 }, Strand { component: 1, position: 0 }, Sign::Positive)
            .unwrap();
        assert_eq!(c.to_string(), "U1+ U2-\nO2- O1+\n");
        let lp = linking_profile(&c).unwrap();
        assert_eq!((lp.lk_over, lp.lk_under), (0, 0));
        for n in 2..=4 {
            assert_eq!(oracle(&c, &make_xn(n).unwrap()), ((n + 1) * (n + 1)) as u64);
        }
    }

    #[test]
    fn r2_same_strand_and_both_sign_orders() {
        let hopf = code(HOPF);
        for sign in [Sign::Positive, Sign::Negative] {
            for (a, b) in [(0, 0), (0, 2), (2, 1)] {
                let c = apply_r2(
                    &hopf,
                    Strand { component: 0, position: a },
                    Strand { component: 0, position: b },
                    sign,
                )
                .unwrap();
                for t in [make_xn(2).unwrap(), make_xn(3).unwrap(), make_trivial(2).unwrap()] {
                    assert_eq!(oracle(&c, &t), oracle(&hopf, &t), "{c}");
                }
            }
        }
    }

    #[test]
    fn bad_indices() {
        let hopf = code(HOPF);
        assert!(matches!(
            apply_r1(&hopf, 2, 0, Sign::Positive, true),
            Err(GaussError::ComponentOutOfRange { .. })
        ));
        assert!(matches!(
            apply_r1(&hopf, 0, 3, Sign::Positive, true),
            Err(GaussError::PositionOutOfRange { .. })
        ));
        assert!(apply_r2(
            &hopf,
            Strand { component: 0, position: 0 },
            Strand { component: 1, position: 9 },
            Sign::Positive
        )
        .is_err());
    }

    #[test]
    fn perturb_budget() {
        let hopf = code(HOPF);
        let (same, script) = random_perturb(&hopf, 1, 0);
        assert_eq!(same, hopf);
        assert!(script.is_empty());

        let (c, script) = random_perturb(&hopf, 7, 3);
        assert_eq!(c.crossing_count(), 5);
        assert_eq!(apply_script(&hopf, &script).unwrap(), c);
        for n in [2, 3] {
            let xn = make_xn(n).unwrap();
            assert_eq!(oracle(&c, &xn), oracle(&hopf, &xn));
        }
        assert_eq!(random_perturb(&hopf, 7, 3), (c, script));
    }

    #[test]
    fn perturb_preserves_linking() {
        let base = code("O1+ O2+ O3+ O4+ O5+ O6+ U7- U8-\nU1+ U2+ U3+ U4+ U5+ U6+ O7- O8-\n");
        let lp = linking_profile(&base).unwrap();
        for seed in 0..50 {
            let (c, _) = random_perturb(&base, seed, 4);
            let lq = linking_profile(&c).unwrap();
            assert_eq!((lp.lk_over, lp.lk_under), (lq.lk_over, lq.lk_under));
        }
    }
}
