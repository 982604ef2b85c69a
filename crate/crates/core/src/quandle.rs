//! Finite quandles given by operation tables.
//!
//! Elements are labelled `1..=n`, and the entry in row `i`, column `j` of an
//! [`OperationMatrix`] is `i ▷ j`. A [`Quandle`] is a matrix that passed
//! [`verify_quandle`]; it carries the dual table `▷⁻¹` as well.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while building or reading quandles.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuandleError {
    #[error("malformed matrix: {0}")]
    Malformed(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("not a quandle: {} axiom violation(s), first: {}", .0.len(), .0[0])]
    Axioms(Vec<AxiomViolation>),
    #[error("invalid order {order}: {reason}")]
    InvalidOrder { order: usize, reason: &'static str },
}

/// A single failed instance of one of the three quandle axioms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AxiomViolation {
    /// Axiom (i): `a ▷ a = got ≠ a`.
    Idempotence { a: u32, got: u32 },
    /// Axiom (ii): the element `a` has `preimages.len() != 1` solutions `c`
    /// of `c ▷ b = a` in column `b`.
    RightInvertibility { column: u32, a: u32, preimages: Vec<u32> },
    /// Axiom (iii): `(a ▷ b) ▷ c ≠ (a ▷ c) ▷ (b ▷ c)`.
    SelfDistributivity { a: u32, b: u32, c: u32 },
}

impl AxiomViolation {
    /// The axiom number (1, 2 or 3) this violation refers to.
    pub fn axiom(&self) -> u8 {
        match self {
            AxiomViolation::Idempotence { .. } => 1,
            AxiomViolation::RightInvertibility { .. } => 2,
            AxiomViolation::SelfDistributivity { .. } => 3,
        }
    }
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Idempotence { a, got } => {
                write!(f, "axiom (i): {a} ▷ {a} = {got}")
            }
            AxiomViolation::RightInvertibility { column, a, preimages } => write!(
                f,
                "axiom (ii): column {column} has {} preimage(s) of {a} {:?}",
                preimages.len(),
                preimages
            ),
            AxiomViolation::SelfDistributivity { a, b, c } => write!(
                f,
                "axiom (iii): ({a} ▷ {b}) ▷ {c} ≠ ({a} ▷ {c}) ▷ ({b} ▷ {c})"
            ),
        }
    }
}

/// An `n × n` operation table with entries in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OperationMatrix {
    order: usize,
    entries: Vec<u32>,
}

impl OperationMatrix {
    /// Builds a matrix from rows, checking shape and entry range.
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self, QuandleError> {
        let order = rows.len();
        if order == 0 {
            return Err(QuandleError::Malformed("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(QuandleError::Malformed(format!(
                    "row {} has {} entries, expected {order}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &e) in row.iter().enumerate() {
                if e == 0 || e as usize > order {
                    return Err(QuandleError::Malformed(format!(
                        "entry ({}, {}) = {e} is outside 1..={order}",
                        i + 1,
                        j + 1
                    )));
                }
                entries.push(e);
            }
        }
        Ok(OperationMatrix { order, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Entry in row `i`, column `j` (both 1-based).
    pub fn get(&self, i: u32, j: u32) -> u32 {
        self.entries[self.index(i, j)]
    }

    /// Overwrites one entry. The new value must lie in `1..=order`.
    pub fn set(&mut self, i: u32, j: u32, value: u32) -> Result<(), QuandleError> {
        if value == 0 || value as usize > self.order {
            return Err(QuandleError::Malformed(format!(
                "entry {value} is outside 1..={}",
                self.order
            )));
        }
        let idx = self.index(i, j);
        self.entries[idx] = value;
        Ok(())
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.order).map(<[u32]>::to_vec).collect()
    }

    fn index(&self, i: u32, j: u32) -> usize {
        assert!(
            i >= 1 && j >= 1 && i as usize <= self.order && j as usize <= self.order,
            "index ({i}, {j}) outside a matrix of order {}",
            self.order
        );
        (i as usize - 1) * self.order + (j as usize - 1)
    }

    /// Parses the text format: the order on the first line, then `order` rows
    /// of whitespace-separated entries. Lines starting with `#` and blank
    /// lines are skipped.
    pub fn parse(text: &str) -> Result<Self, QuandleError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (first, header) = lines.next().ok_or(QuandleError::Parse {
            line: 1,
            message: "missing order".into(),
        })?;
        let order: usize = header.parse().map_err(|_| QuandleError::Parse {
            line: first,
            message: format!("expected the order, found {header:?}"),
        })?;
        if order == 0 {
            return Err(QuandleError::Parse { line: first, message: "order must be positive".into() });
        }

        let mut rows = Vec::with_capacity(order);
        let mut last_line = first;
        for (line, content) in lines {
            if rows.len() == order {
                return Err(QuandleError::Parse {
                    line,
                    message: format!("more than {order} rows"),
                });
            }
            let row = content
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<u32>().map_err(|_| QuandleError::Parse {
                        line,
                        message: format!("bad entry {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != order {
                return Err(QuandleError::Parse {
                    line,
                    message: format!("expected {order} entries, found {}", row.len()),
                });
            }
            rows.push(row);
            last_line = line;
        }
        if rows.len() != order {
            return Err(QuandleError::Parse {
                line: last_line,
                message: format!("expected {order} rows, found {}", rows.len()),
            });
        }
        OperationMatrix::from_rows(&rows)
    }
}

impl fmt::Display for OperationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order)?;
        for row in self.entries.chunks(self.order) {
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// A finite quandle with verified axioms.
///
/// Tables are stored 0-based internally; the public accessors take and
/// return 1-based labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quandle {
    matrix: OperationMatrix,
    op: Vec<u32>,
    dual: Vec<u32>,
}

impl Quandle {
    pub fn order(&self) -> usize {
        self.matrix.order
    }

    pub fn matrix(&self) -> &OperationMatrix {
        &self.matrix
    }

    /// The dual table `▷⁻¹` as a matrix.
    pub fn dual_matrix(&self) -> OperationMatrix {
        OperationMatrix {
            order: self.order(),
            entries: self.dual.iter().map(|&e| e + 1).collect(),
        }
    }

    /// `a ▷ b`
    pub fn op(&self, a: u32, b: u32) -> u32 {
        self.op0(a - 1, b - 1) + 1
    }

    /// `a ▷⁻¹ b`
    pub fn dual(&self, a: u32, b: u32) -> u32 {
        self.dual0(a - 1, b - 1) + 1
    }

    #[inline]
    pub(crate) fn op0(&self, a: u32, b: u32) -> u32 {
        self.op[a as usize * self.order() + b as usize]
    }

    #[inline]
    pub(crate) fn dual0(&self, a: u32, b: u32) -> u32 {
        self.dual[a as usize * self.order() + b as usize]
    }

    /// `a ▷ b` for a positive sign, `a ▷⁻¹ b` for a negative one (0-based).
    #[inline]
    pub(crate) fn act0(&self, a: u32, b: u32, positive: bool) -> u32 {
        if positive {
            self.op0(a, b)
        } else {
            self.dual0(a, b)
        }
    }

    /// The subquandle on `elements` (1-based), relabelled `1..=k` in
    /// increasing order of the original labels.
    pub fn subquandle(&self, elements: &[u32]) -> Result<Quandle, QuandleError> {
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.is_empty() {
            return Err(QuandleError::InvalidOrder { order: 0, reason: "empty subset" });
        }
        let position = |x: u32| elems.binary_search(&x).ok();
        let mut rows = Vec::with_capacity(elems.len());
        for &a in &elems {
            let mut row = Vec::with_capacity(elems.len());
            for &b in &elems {
                let c = self.op(a, b);
                let k = position(c).ok_or_else(|| {
                    QuandleError::Malformed(format!("{a} ▷ {b} = {c} leaves the subset"))
                })?;
                row.push(k as u32 + 1);
            }
            rows.push(row);
        }
        verify_quandle(&OperationMatrix::from_rows(&rows)?)
    }
}

impl fmt::Display for Quandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

/// Checks all three axioms, returning every violation found.
///
/// Axiom (iii) is checked over all `n³` triples.
pub fn verify_quandle(m: &OperationMatrix) -> Result<Quandle, QuandleError> {
    let n = m.order;
    let mut violations = Vec::new();

    for a in 1..=n as u32 {
        let got = m.get(a, a);
        if got != a {
            violations.push(AxiomViolation::Idempotence { a, got });
        }
    }

    let mut dual = vec![0u32; n * n];
    let mut columns_ok = true;
    for b in 1..=n as u32 {
        let mut preimages: Vec<Vec<u32>> = vec![Vec::new(); n];
        for c in 1..=n as u32 {
            preimages[m.get(c, b) as usize - 1].push(c);
        }
        for (a0, pre) in preimages.into_iter().enumerate() {
            if pre.len() == 1 {
                dual[a0 * n + (b as usize - 1)] = pre[0] - 1;
            } else {
                columns_ok = false;
                violations.push(AxiomViolation::RightInvertibility {
                    column: b,
                    a: a0 as u32 + 1,
                    preimages: pre,
                });
            }
        }
    }

    for a in 1..=n as u32 {
        for b in 1..=n as u32 {
            let ab = m.get(a, b);
            for c in 1..=n as u32 {
                if m.get(ab, c) != m.get(m.get(a, c), m.get(b, c)) {
                    violations.push(AxiomViolation::SelfDistributivity { a, b, c });
                }
            }
        }
    }

    if !violations.is_empty() {
        return Err(QuandleError::Axioms(violations));
    }
    debug_assert!(columns_ok);
    let op = m.entries.iter().map(|&e| e - 1).collect();
    Ok(Quandle { matrix: m.clone(), op, dual })
}

/// The trivial quandle `T_n`: `a ▷ b = a`.
pub fn make_trivial(n: usize) -> Result<Quandle, QuandleError> {
    if n == 0 {
        return Err(QuandleError::InvalidOrder { order: n, reason: "T_n needs n >= 1" });
    }
    let rows: Vec<Vec<u32>> = (1..=n as u32).map(|i| vec![i; n]).collect();
    verify_quandle(&OperationMatrix::from_rows(&rows)?)
}

/// The trivial orbit quandle `X_n` on `{1, …, n+1}`.
///
/// Every element acts trivially except `n+1`, which acts on `1..=n` as the
/// cyclic shift `a ↦ (a mod n) + 1`.
pub fn make_xn(n: usize) -> Result<Quandle, QuandleError> {
    if n < 2 {
        return Err(QuandleError::InvalidOrder { order: n, reason: "X_n needs n >= 2" });
    }
    let rows: Vec<Vec<u32>> = (1..=n as u32 + 1)
        .map(|a| {
            let mut row = vec![a; n + 1];
            if a as usize <= n {
                row[n] = a % n as u32 + 1;
            }
            row
        })
        .collect();
    verify_quandle(&OperationMatrix::from_rows(&rows)?)
}

/// The dihedral quandle `R_n`: `a ▷ b = 2b − a (mod n)`, on labels `1..=n`.
pub fn make_dihedral(n: usize) -> Result<Quandle, QuandleError> {
    if n == 0 {
        return Err(QuandleError::InvalidOrder { order: n, reason: "R_n needs n >= 1" });
    }
    let n32 = n as u32;
    let rows: Vec<Vec<u32>> = (0..n32)
        .map(|a| (0..n32).map(|b| (2 * b + n32 - a) % n32 + 1).collect())
        .collect();
    verify_quandle(&OperationMatrix::from_rows(&rows)?)
}

/// Orbits of a quandle under right translations and their inverses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDecomposition {
    /// `orbit_of[a - 1]` is the index into `orbits` of element `a`.
    pub orbit_of: Vec<usize>,
    /// Each orbit sorted ascending; orbits ordered by their least element.
    pub orbits: Vec<Vec<u32>>,
}

impl OrbitDecomposition {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

impl fmt::Display for OrbitDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .orbits
            .iter()
            .map(|o| {
                let xs: Vec<String> = o.iter().map(u32::to_string).collect();
                format!("{{{}}}", xs.join(","))
            })
            .collect();
        f.write_str(&parts.join(","))
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Connected components of the graph with edges from `a` to `a ▷ x`.
pub fn orbits(q: &Quandle) -> OrbitDecomposition {
    let n = q.order();
    let mut parent: Vec<usize> = (0..n).collect();
    for a in 0..n as u32 {
        for x in 0..n as u32 {
            let ra = find(&mut parent, a as usize);
            let rb = find(&mut parent, q.op0(a, x) as usize);
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    let mut root_index = vec![usize::MAX; n];
    for (a, slot) in orbit_of.iter_mut().enumerate() {
        let r = find(&mut parent, a);
        if root_index[r] == usize::MAX {
            root_index[r] = orbits.len();
            orbits.push(Vec::new());
        }
        *slot = root_index[r];
        orbits[root_index[r]].push(a as u32 + 1);
    }
    OrbitDecomposition { orbit_of, orbits }
}

pub fn is_connected(q: &Quandle) -> bool {
    orbits(q).len() == 1
}

/// True iff every orbit is a trivial subquandle.
pub fn is_trivial_orbit_quandle(q: &Quandle) -> bool {
    let dec = orbits(q);
    dec.orbits
        .iter()
        .all(|orbit| orbit.iter().all(|&a| orbit.iter().all(|&b| q.op(a, b) == a)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(q: &Quandle) -> Vec<Vec<u32>> {
        q.matrix().rows()
    }

    #[test]
    fn trivial_quandles() {
        assert_eq!(rows(&make_trivial(2).unwrap()), vec![vec![1, 1], vec![2, 2]]);
        assert_eq!(rows(&make_trivial(1).unwrap()), vec![vec![1]]);
        assert!(make_trivial(4).is_ok());
        assert!(matches!(make_trivial(0), Err(QuandleError::InvalidOrder { .. })));
    }

    #[test]
    fn xn_matrices() {
        assert_eq!(
            rows(&make_xn(2).unwrap()),
            vec![vec![1, 1, 2], vec![2, 2, 1], vec![3, 3, 3]]
        );
        let x3 = make_xn(3).unwrap();
        let col4: Vec<u32> = (1..=4).map(|a| x3.op(a, 4)).collect();
        assert_eq!(col4, vec![2, 3, 1, 4]);
        for b in 1..=3 {
            let col: Vec<u32> = (1..=4).map(|a| x3.op(a, b)).collect();
            assert_eq!(col, vec![1, 2, 3, 4]);
        }
        assert!(make_xn(1).is_err());
        assert!(make_xn(0).is_err());
    }

    #[test]
    fn singleton_is_quandle() {
        let m = OperationMatrix::from_rows(&[vec![1]]).unwrap();
        assert!(verify_quandle(&m).is_ok());
    }

    #[test]
    fn corrupted_x2_column() {
        let mut m = make_xn(2).unwrap().matrix().clone();
        m.set(1, 3, 1).unwrap();
        let Err(QuandleError::Axioms(v)) = verify_quandle(&m) else {
            panic!("corrupted matrix accepted");
        };
        assert!(v.iter().any(|x| matches!(
            x,
            AxiomViolation::RightInvertibility { column: 3, .. }
        )));
        // column 3 reads (1, 1, 3): 1 has two preimages, 2 has none
        let col3: Vec<_> = v
            .iter()
            .filter(|x| matches!(x, AxiomViolation::RightInvertibility { column: 3, .. }))
            .collect();
        assert_eq!(col3.len(), 2);
    }

    #[test]
    fn out_of_range_is_malformed_not_axiom() {
        let err = OperationMatrix::from_rows(&[vec![1, 3], vec![2, 2]]).unwrap_err();
        assert!(matches!(err, QuandleError::Malformed(_)));
        let err = OperationMatrix::from_rows(&[vec![1, 0], vec![2, 2]]).unwrap_err();
        assert!(matches!(err, QuandleError::Malformed(_)));
        let err = OperationMatrix::from_rows(&[vec![1, 1], vec![2]]).unwrap_err();
        assert!(matches!(err, QuandleError::Malformed(_)));
    }

    #[test]
    fn self_distributivity_failure_is_reported() {
        // Columns are permutations and the diagonal is fixed, but right
        // translation by 3 is not an automorphism.
        let m = OperationMatrix::from_rows(&[
            vec![1, 1, 2, 1],
            vec![2, 2, 1, 2],
            vec![3, 4, 3, 3],
            vec![4, 3, 4, 4],
        ])
        .unwrap();
        let Err(QuandleError::Axioms(v)) = verify_quandle(&m) else {
            panic!("accepted");
        };
        assert!(!v.is_empty());
        assert!(v.iter().all(|x| x.axiom() == 3));
        for x in &v {
            let AxiomViolation::SelfDistributivity { a, b, c } = *x else { unreachable!() };
            let lhs = m.get(m.get(a, b), c);
            let rhs = m.get(m.get(a, c), m.get(b, c));
            assert_ne!(lhs, rhs);
        }
    }

    #[test]
    fn orbit_examples() {
        let x5 = orbits(&make_xn(5).unwrap());
        assert_eq!(x5.orbits, vec![vec![1, 2, 3, 4, 5], vec![6]]);
        assert_eq!(orbits(&make_trivial(4).unwrap()).len(), 4);
        assert_eq!(orbits(&make_trivial(1).unwrap()).len(), 1);
        assert_eq!(x5.to_string(), "{1,2,3,4,5},{6}");
    }

    #[test]
    fn connectivity_and_toq() {
        assert!(is_connected(&make_trivial(1).unwrap()));
        assert!(!is_connected(&make_trivial(3).unwrap()));
        assert!(!is_connected(&make_xn(4).unwrap()));
        assert!(is_trivial_orbit_quandle(&make_xn(4).unwrap()));
        assert!(is_trivial_orbit_quandle(&make_trivial(4).unwrap()));

        let r3 = verify_quandle(
            &OperationMatrix::from_rows(&[vec![1, 3, 2], vec![3, 2, 1], vec![2, 1, 3]]).unwrap(),
        )
        .unwrap();
        assert!(is_connected(&r3));
        assert!(!is_trivial_orbit_quandle(&r3));
        assert_eq!(r3, make_dihedral(3).unwrap());
    }

    #[test]
    fn dual_inverts_op() {
        for q in [make_xn(4).unwrap(), make_dihedral(5).unwrap(), make_trivial(3).unwrap()] {
            let n = q.order() as u32;
            for a in 1..=n {
                for b in 1..=n {
                    assert_eq!(q.dual(q.op(a, b), b), a);
                    assert_eq!(q.op(q.dual(a, b), b), a);
                }
            }
        }
        let x2 = make_xn(2).unwrap();
        assert_eq!(x2.dual_matrix().rows(), vec![vec![1, 1, 2], vec![2, 2, 1], vec![3, 3, 3]]);
        let x3 = make_xn(3).unwrap();
        assert_eq!((1..=4).map(|a| x3.dual(a, 4)).collect::<Vec<_>>(), vec![3, 1, 2, 4]);
    }

    #[test]
    fn subquandles_of_xn() {
        let x3 = make_xn(3).unwrap();
        assert_eq!(x3.subquandle(&[1, 2, 3]).unwrap(), make_trivial(3).unwrap());
        assert_eq!(x3.subquandle(&[4]).unwrap(), make_trivial(1).unwrap());
        assert!(x3.subquandle(&[1, 4]).is_err());
    }

    #[test]
    fn parse_matrix_file() {
        let text = "# X_2\n3\n1 1 2\n2 2 1\n\n# last row\n3 3 3\n";
        let m = OperationMatrix::parse(text).unwrap();
        assert_eq!(&m, make_xn(2).unwrap().matrix());
        assert_eq!(OperationMatrix::parse(&m.to_string()).unwrap(), m);

        assert!(matches!(
            OperationMatrix::parse("2\n1 1\n"),
            Err(QuandleError::Parse { .. })
        ));
        assert!(matches!(
            OperationMatrix::parse("2\n1 x\n2 2\n"),
            Err(QuandleError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            OperationMatrix::parse("2\n1 3\n2 2\n"),
            Err(QuandleError::Malformed(_))
        ));
    }
}
