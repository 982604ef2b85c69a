//! Signed Gauss codes for oriented virtual link diagrams.
//!
//! A code lists, for each component, the classical crossings met while
//! travelling along the component in its orientation. Each passage records
//! the crossing id, whether the component passes over or under, and the
//! crossing sign. Virtual crossings are not recorded.
//!
//! Text format: one line per component, tokens like `O12+` or `U3-`
//! separated by whitespace. An empty line is a crossing-free component and a
//! line starting with `#` is a comment.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaussError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("crossing {crossing} occurs {count} time(s), expected 2")]
    Occurrences { crossing: u32, count: usize },
    #[error("crossing {crossing} is {role} at both occurrences")]
    RepeatedRole { crossing: u32, role: Role },
    #[error("sign mismatch on crossing {crossing}")]
    SignMismatch { crossing: u32 },
    #[error("the code has no components")]
    Empty,
    #[error("component {component} out of range (code has {count})")]
    ComponentOutOfRange { component: usize, count: usize },
    #[error("position {position} out of range for component {component} of length {len}")]
    PositionOutOfRange { component: usize, position: usize, len: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Over,
    Under,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Over => "over",
            Role::Under => "under",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

/// One passage of a component through a classical crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Passage {
    pub crossing: u32,
    pub role: Role,
    pub sign: Sign,
}

impl Passage {
    pub fn new(crossing: u32, role: Role, sign: Sign) -> Self {
        Passage { crossing, role, sign }
    }

    pub fn over(crossing: u32, sign: Sign) -> Self {
        Passage::new(crossing, Role::Over, sign)
    }

    pub fn under(crossing: u32, sign: Sign) -> Self {
        Passage::new(crossing, Role::Under, sign)
    }
}

impl fmt::Display for Passage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = match self.role {
            Role::Over => 'O',
            Role::Under => 'U',
        };
        write!(f, "{r}{}{}", self.crossing, self.sign.symbol())
    }
}

impl FromStr for Passage {
    type Err = String;

    fn from_str(tok: &str) -> Result<Self, Self::Err> {
        let role = match tok.chars().next() {
            Some('O') => Role::Over,
            Some('U') => Role::Under,
            _ => return Err(format!("token {tok:?} must start with 'O' or 'U'")),
        };
        let sign = match tok.chars().last() {
            Some('+') if tok.len() > 1 => Sign::Positive,
            Some('-') if tok.len() > 1 => Sign::Negative,
            _ => return Err(format!("token {tok:?} must end with '+' or '-'")),
        };
        let digits = &tok[1..tok.len() - 1];
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("token {tok:?} needs a crossing number"));
        }
        let crossing: u32 = digits
            .parse()
            .map_err(|_| format!("crossing number in {tok:?} is too large"))?;
        if crossing == 0 {
            return Err(format!("crossing numbers start at 1, found {tok:?}"));
        }
        Ok(Passage { crossing, role, sign })
    }
}

/// A validated signed Gauss code.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Passage>>", into = "Vec<Vec<Passage>>")]
pub struct SignedGaussCode {
    components: Vec<Vec<Passage>>,
}

impl TryFrom<Vec<Vec<Passage>>> for SignedGaussCode {
    type Error = GaussError;

    fn try_from(components: Vec<Vec<Passage>>) -> Result<Self, Self::Error> {
        SignedGaussCode::new(components)
    }
}

impl From<SignedGaussCode> for Vec<Vec<Passage>> {
    fn from(code: SignedGaussCode) -> Self {
        code.components
    }
}

impl SignedGaussCode {
    /// Validates the crossing structure of `components`.
    pub fn new(components: Vec<Vec<Passage>>) -> Result<Self, GaussError> {
        if components.is_empty() {
            return Err(GaussError::Empty);
        }
        let mut seen: BTreeMap<u32, Vec<Passage>> = BTreeMap::new();
        for p in components.iter().flatten() {
            seen.entry(p.crossing).or_default().push(*p);
        }
        for (&crossing, ps) in &seen {
            if ps.len() != 2 {
                return Err(GaussError::Occurrences { crossing, count: ps.len() });
            }
            if ps[0].role == ps[1].role {
                return Err(GaussError::RepeatedRole { crossing, role: ps[0].role });
            }
            if ps[0].sign != ps[1].sign {
                return Err(GaussError::SignMismatch { crossing });
            }
        }
        Ok(SignedGaussCode { components })
    }

    pub fn parse(text: &str) -> Result<Self, GaussError> {
        let mut components = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = match raw.find('#') {
                Some(0) => continue,
                Some(k) if raw[..k].trim().is_empty() => continue,
                Some(k) => &raw[..k],
                None => raw,
            };
            let mut passages = Vec::new();
            let mut offset = 0;
            for tok in content.split_whitespace() {
                let start = content[offset..].find(tok).map_or(offset, |s| s + offset);
                offset = start + tok.len();
                let column = content[..start].chars().count() + 1;
                let p = tok
                    .parse::<Passage>()
                    .map_err(|message| GaussError::Syntax { line, column, message })?;
                passages.push(p);
            }
            components.push(passages);
        }
        SignedGaussCode::new(components)
    }

    pub fn components(&self) -> &[Vec<Passage>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Crossings whose over and under passages lie on different components.
    pub fn interlinked_crossing_count(&self) -> usize {
        self.crossings().values().filter(|c| c.over.0 != c.under.0).count()
    }

    /// Largest crossing id in use, or 0 for a crossing-free code.
    pub fn max_crossing_id(&self) -> u32 {
        self.components.iter().flatten().map(|p| p.crossing).max().unwrap_or(0)
    }

    /// Where each crossing's over and under passages sit, keyed by crossing id.
    pub fn crossings(&self) -> BTreeMap<u32, CrossingSite> {
        let mut over = BTreeMap::new();
        let mut under = BTreeMap::new();
        let mut signs = BTreeMap::new();
        for (c, comp) in self.components.iter().enumerate() {
            for (i, p) in comp.iter().enumerate() {
                match p.role {
                    Role::Over => over.insert(p.crossing, (c, i)),
                    Role::Under => under.insert(p.crossing, (c, i)),
                };
                signs.insert(p.crossing, p.sign);
            }
        }
        signs
            .into_iter()
            .map(|(id, sign)| (id, CrossingSite { sign, over: over[&id], under: under[&id] }))
            .collect()
    }

    /// The same link with component `component` read from a different
    /// starting passage.
    pub fn rotated(&self, component: usize, shift: usize) -> SignedGaussCode {
        let mut comps = self.components.clone();
        let comp = &mut comps[component];
        if !comp.is_empty() {
            let k = shift % comp.len();
            comp.rotate_left(k);
        }
        SignedGaussCode { components: comps }
    }
}

impl fmt::Display for SignedGaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for comp in &self.components {
            let toks: Vec<String> = comp.iter().map(Passage::to_string).collect();
            writeln!(f, "{}", toks.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for SignedGaussCode {
    type Err = GaussError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SignedGaussCode::parse(s)
    }
}

/// Positions `(component, index)` of the two passages of one crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingSite {
    pub sign: Sign,
    pub over: (usize, usize),
    pub under: (usize, usize),
}

/// Arc data for one crossing. Arc ids are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingArcs {
    pub crossing: u32,
    pub over_arc: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: Sign,
    pub over_component: usize,
    pub under_component: usize,
}

/// Arcs of a diagram: maximal stretches of a component between consecutive
/// under passages.
///
/// Arcs are numbered component by component. Within a component, the first
/// arc is the one leaving the component's first under passage; a component
/// without under passages is a single arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcTable {
    /// Global arc ids of each component, in order along the orientation.
    pub component_arcs: Vec<Vec<usize>>,
    /// `arc_component[a]` is the component carrying arc `a`.
    pub arc_component: Vec<usize>,
    /// `(incoming, outgoing)` arc of every passage, indexed like the code.
    pub passage_arcs: Vec<Vec<(usize, usize)>>,
    /// One record per crossing, ordered by crossing id.
    pub crossings: Vec<CrossingArcs>,
}

impl ArcTable {
    pub fn arc_count(&self) -> usize {
        self.arc_component.len()
    }
}

pub fn arcs(code: &SignedGaussCode) -> ArcTable {
    let mut component_arcs = Vec::with_capacity(code.component_count());
    let mut arc_component = Vec::new();
    let mut passage_arcs = Vec::with_capacity(code.component_count());

    for (c, comp) in code.components().iter().enumerate() {
        let unders: Vec<usize> = comp
            .iter()
            .enumerate()
            .filter(|(_, p)| p.role == Role::Under)
            .map(|(i, _)| i)
            .collect();
        let base = arc_component.len();
        let local = unders.len().max(1);
        component_arcs.push((base..base + local).collect());
        arc_component.extend(std::iter::repeat_n(c, local));

        // Walk from the first under passage once around the component.
        let mut pa = vec![(base, base); comp.len()];
        if let Some(&first) = unders.first() {
            let k = unders.len();
            let mut current = base + k - 1;
            let mut next = base;
            for step in 0..comp.len() {
                let i = (first + step) % comp.len();
                if comp[i].role == Role::Under {
                    let incoming = current;
                    current = next;
                    next += 1;
                    pa[i] = (incoming, current);
                } else {
                    pa[i] = (current, current);
                }
            }
        }
        passage_arcs.push(pa);
    }

    let crossings = code
        .crossings()
        .into_iter()
        .map(|(id, site)| {
            let (oc, oi) = site.over;
            let (uc, ui) = site.under;
            let (under_in, under_out) = passage_arcs[uc][ui];
            CrossingArcs {
                crossing: id,
                over_arc: passage_arcs[oc][oi].0,
                under_in,
                under_out,
                sign: site.sign,
                over_component: oc,
                under_component: uc,
            }
        })
        .collect();

    ArcTable { component_arcs, arc_component, passage_arcs, crossings }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HOPF: &str = "O1+ U2+\nU1+ O2+\n";
    const TREFOIL: &str = "O1+ U2+ O3+ U1+ O2+ U3+\n";

    #[test]
    fn parse_hopf() {
        let code = SignedGaussCode::parse(HOPF).unwrap();
        assert_eq!(code.component_count(), 2);
        assert_eq!(code.crossing_count(), 2);
        assert_eq!(code.interlinked_crossing_count(), 2);
        assert_eq!(code.to_string(), HOPF);
    }

    #[test]
    fn parse_unlink_from_blank_lines() {
        let code = SignedGaussCode::parse("\n\n").unwrap();
        assert_eq!(code.component_count(), 2);
        assert_eq!(code.crossing_count(), 0);
        assert_eq!(SignedGaussCode::parse(&code.to_string()).unwrap(), code);
    }

    #[test]
    fn comments_are_skipped() {
        let code = SignedGaussCode::parse("# hopf link\nO1+ U2+ # first\n  # note\nU1+ O2+\n").unwrap();
        assert_eq!(code, SignedGaussCode::parse(HOPF).unwrap());
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            SignedGaussCode::parse("O1+ U1-").unwrap_err(),
            GaussError::SignMismatch { crossing: 1 }
        );
        assert_eq!(
            SignedGaussCode::parse("O1+ O1+").unwrap_err(),
            GaussError::RepeatedRole { crossing: 1, role: Role::Over }
        );
        assert_eq!(
            SignedGaussCode::parse("O1+ U1+ U1+").unwrap_err(),
            GaussError::Occurrences { crossing: 1, count: 3 }
        );
        assert_eq!(
            SignedGaussCode::parse("O1+\nU2+").unwrap_err(),
            GaussError::Occurrences { crossing: 1, count: 1 }
        );
        assert_eq!(SignedGaussCode::parse("").unwrap_err(), GaussError::Empty);
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = SignedGaussCode::parse("O1+ U2+\nU1+  X2+").unwrap_err();
        assert!(matches!(err, GaussError::Syntax { line: 2, column: 6, .. }), "{err:?}");
        for bad in ["O+", "O1", "o1+", "O0+", "O1x+", "U99999999999+"] {
            assert!(
                matches!(SignedGaussCode::parse(bad), Err(GaussError::Syntax { .. })),
                "{bad}"
            );
        }
    }

    #[test]
    fn hopf_arcs() {
        let code = SignedGaussCode::parse(HOPF).unwrap();
        let t = arcs(&code);
        assert_eq!(t.component_arcs, vec![vec![0], vec![1]]);
        let c1 = t.crossings[0];
        assert_eq!((c1.over_arc, c1.under_in, c1.under_out), (0, 1, 1));
        let c2 = t.crossings[1];
        assert_eq!((c2.over_arc, c2.under_in, c2.under_out), (1, 0, 0));
    }

    #[test]
    fn trefoil_arcs() {
        let code = SignedGaussCode::parse(TREFOIL).unwrap();
        assert_eq!(
            (code.component_count(), code.crossing_count(), code.interlinked_crossing_count()),
            (1, 3, 0)
        );
        let t = arcs(&code);
        assert_eq!(t.arc_count(), 3);
        // unders at positions 1, 3, 5: arc 0 leaves U2, arc 1 leaves U1, arc 2 leaves U3
        assert_eq!(
            t.passage_arcs[0],
            vec![(2, 2), (2, 0), (0, 0), (0, 1), (1, 1), (1, 2)]
        );
        let recs: Vec<_> = t.crossings.iter().map(|c| (c.crossing, c.over_arc, c.under_in, c.under_out)).collect();
        assert_eq!(recs, vec![(1, 2, 0, 1), (2, 1, 2, 0), (3, 0, 1, 2)]);
    }

    #[test]
    fn unlink_has_one_arc_per_component() {
        let t = arcs(&SignedGaussCode::parse("\n\n").unwrap());
        assert_eq!(t.component_arcs, vec![vec![0], vec![1]]);
        assert!(t.crossings.is_empty());
    }

    #[test]
    fn over_only_component_is_one_arc() {
        let code = SignedGaussCode::parse("O1+ O2-\nU1+ U2-\n").unwrap();
        let t = arcs(&code);
        assert_eq!(t.component_arcs, vec![vec![0], vec![1, 2]]);
        assert_eq!(t.crossings[0].over_arc, 0);
        assert_eq!((t.crossings[0].under_in, t.crossings[0].under_out), (2, 1));
        assert_eq!((t.crossings[1].under_in, t.crossings[1].under_out), (1, 2));
    }

    #[test]
    fn arcs_start_at_first_under() {
        // first passage is an over passage belonging to the wrap-around arc
        let code = SignedGaussCode::parse("O1+ U1+ O2- U3+ O3+ U2-\n").unwrap();
        let t = arcs(&code);
        assert_eq!(t.arc_count(), 3);
        assert_eq!(t.passage_arcs[0][0], (2, 2));
        assert_eq!(t.passage_arcs[0][1], (2, 0));
        assert_eq!(t.passage_arcs[0][5], (1, 2));
    }
}
