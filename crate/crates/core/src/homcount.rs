//! Counting quandle homomorphisms `Q(L) → T`, i.e. colorings of arcs by
//! elements of a finite quandle `T` satisfying every crossing relation.
//!
//! Two engines are provided. [`count_oracle`] enumerates every assignment of
//! colors to arcs and is meant as ground truth. [`count_propagate`] colors a
//! seed arc per component and pushes colors through crossings, branching only
//! when propagation stalls.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quandle::{orbits, Quandle};
use crate::wirtinger::KnotQuandlePresentation;

pub const DEFAULT_ORACLE_BUDGET: u128 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("oracle budget exceeded: {target_order}^{arcs} assignments > {budget}")]
    BudgetExceeded { target_order: usize, arcs: usize, budget: u128 },
    #[error("expected a one-component diagram, found {0} components")]
    NotAKnot(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Oracle,
    Propagate,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Oracle => "oracle",
            Method::Propagate => "propagate",
        })
    }
}

/// Arc colors, indexed by arc id, with 1-based quandle labels.
pub type Coloring = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringReport {
    pub count: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colorings: Option<Vec<Coloring>>,
    pub method: Method,
    pub target_order: usize,
    pub arcs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountOptions {
    /// Keep the list of colorings in the report.
    pub list: bool,
    /// Largest number of assignments the oracle may enumerate.
    pub budget: u128,
    /// Split the search across colors of the first arc on the rayon pool.
    pub parallel: bool,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { list: false, budget: DEFAULT_ORACLE_BUDGET, parallel: false }
    }
}

impl CountOptions {
    pub fn listing() -> Self {
        CountOptions { list: true, ..Default::default() }
    }
}

/// `(under_in, over, under_out, positive)` with 0-based arcs.
type Rel = (usize, usize, usize, bool);

fn flat_relations(p: &KnotQuandlePresentation) -> Vec<Rel> {
    p.relations
        .iter()
        .map(|r| (r.under_in, r.over, r.under_out, r.sign.is_positive()))
        .collect()
}

#[derive(Default)]
struct Tally {
    count: u64,
    list: Option<Vec<Coloring>>,
}

impl Tally {
    fn new(list: bool) -> Self {
        Tally { count: 0, list: list.then(Vec::new) }
    }

    fn record(&mut self, colors: &[u32]) {
        self.count += 1;
        if let Some(list) = &mut self.list {
            list.push(colors.iter().map(|&c| c + 1).collect());
        }
    }

    fn merge(parts: Vec<Tally>, list: bool) -> Tally {
        let mut out = Tally::new(list);
        for part in parts {
            out.count += part.count;
            if let (Some(acc), Some(more)) = (&mut out.list, part.list) {
                acc.extend(more);
            }
        }
        out
    }
}

fn run_split<F>(order: usize, opts: &CountOptions, branch: F) -> Tally
where
    F: Fn(u32) -> Tally + Sync + Send,
{
    let parts: Vec<Tally> = if opts.parallel {
        (0..order as u32).into_par_iter().map(&branch).collect()
    } else {
        (0..order as u32).map(&branch).collect()
    };
    Tally::merge(parts, opts.list)
}

/// Counts colorings by checking all `|T|^arcs` assignments.
///
/// Colorings are listed in lexicographic order of the arc colors.
pub fn count_oracle(
    p: &KnotQuandlePresentation,
    t: &Quandle,
    opts: &CountOptions,
) -> Result<ColoringReport, HomError> {
    let arcs = p.generator_count();
    let order = t.order();
    let total = (order as u128).checked_pow(arcs as u32).unwrap_or(u128::MAX);
    if total > opts.budget {
        return Err(HomError::BudgetExceeded { target_order: order, arcs, budget: opts.budget });
    }
    let rels = flat_relations(p);
    let satisfied = |colors: &[u32]| {
        rels.iter()
            .all(|&(i, o, u, pos)| t.act0(colors[i], colors[o], pos) == colors[u])
    };

    let tally = if arcs == 0 {
        let mut t = Tally::new(opts.list);
        t.record(&[]);
        t
    } else {
        run_split(order, opts, |first| {
            let mut tally = Tally::new(opts.list);
            let mut colors = vec![0u32; arcs];
            colors[0] = first;
            loop {
                if satisfied(&colors) {
                    tally.record(&colors);
                }
                // odometer over arcs 1.., last arc fastest
                let mut k = arcs - 1;
                loop {
                    if k == 0 {
                        return tally;
                    }
                    colors[k] += 1;
                    if (colors[k] as usize) < order {
                        break;
                    }
                    colors[k] = 0;
                    k -= 1;
                }
            }
        })
    };

    Ok(ColoringReport {
        count: tally.count,
        colorings: tally.list,
        method: Method::Oracle,
        target_order: order,
        arcs,
    })
}

const UNSET: u32 = u32::MAX;

struct Propagator<'a> {
    t: &'a Quandle,
    rels: &'a [Rel],
    /// relations touching each arc
    incident: &'a [Vec<usize>],
    seeds: &'a [usize],
    colors: Vec<u32>,
    trail: Vec<usize>,
}

impl<'a> Propagator<'a> {
    fn assign(&mut self, arc: usize, color: u32, queue: &mut Vec<usize>) {
        self.colors[arc] = color;
        self.trail.push(arc);
        queue.extend_from_slice(&self.incident[arc]);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().unwrap();
            self.colors[a] = UNSET;
        }
    }

    /// Pushes colors through relations until nothing changes. Returns false
    /// on a contradiction.
    fn propagate(&mut self, mut queue: Vec<usize>) -> bool {
        while let Some(r) = queue.pop() {
            let (i, o, u, pos) = self.rels[r];
            let (ci, co, cu) = (self.colors[i], self.colors[o], self.colors[u]);
            if co == UNSET {
                continue;
            }
            if ci != UNSET {
                let out = self.t.act0(ci, co, pos);
                if cu == UNSET {
                    self.assign(u, out, &mut queue);
                } else if cu != out {
                    return false;
                }
            } else if cu != UNSET {
                let back = self.t.act0(cu, co, !pos);
                self.assign(i, back, &mut queue);
            }
        }
        true
    }

    /// Whether coloring `arc` with `v` violates a relation whose other arcs
    /// are already colored.
    fn admits(&mut self, arc: usize, v: u32) -> bool {
        self.colors[arc] = v;
        let ok = self.incident[arc].iter().all(|&r| {
            let (i, o, u, pos) = self.rels[r];
            let (ci, co, cu) = (self.colors[i], self.colors[o], self.colors[u]);
            ci == UNSET || co == UNSET || cu == UNSET || self.t.act0(ci, co, pos) == cu
        });
        self.colors[arc] = UNSET;
        ok
    }

    /// Next arc to branch on and its candidate colors.
    fn choose(&mut self) -> Option<(usize, Vec<u32>)> {
        let order = self.t.order() as u32;
        if let Some(&seed) = self.seeds.iter().find(|&&s| self.colors[s] == UNSET) {
            return Some((seed, (0..order).collect()));
        }
        let mut best: Option<(usize, Vec<u32>)> = None;
        for arc in 0..self.colors.len() {
            if self.colors[arc] != UNSET {
                continue;
            }
            let cands: Vec<u32> = (0..order).filter(|&v| self.admits(arc, v)).collect();
            if best.as_ref().is_none_or(|(_, b)| cands.len() < b.len()) {
                let empty = cands.is_empty();
                best = Some((arc, cands));
                if empty {
                    break;
                }
            }
        }
        best
    }

    fn search(&mut self, tally: &mut Tally) {
        match self.choose() {
            None => tally.record(&self.colors),
            Some((arc, cands)) => {
                for v in cands {
                    let mark = self.trail.len();
                    let mut queue = Vec::new();
                    self.assign(arc, v, &mut queue);
                    if self.propagate(queue) {
                        self.search(tally);
                    }
                    self.undo_to(mark);
                }
            }
        }
    }
}

/// Counts colorings by seeding one arc per component and pushing colors
/// through crossings.
///
/// Seeds are the lowest arc of each component, colored in component order.
/// When propagation stalls the uncolored arc with the fewest admissible
/// colors is branched on, ties going to the lowest arc id. Colorings come
/// out in lexicographic order of `(seed colors, branch colors)`.
pub fn count_propagate(
    p: &KnotQuandlePresentation,
    t: &Quandle,
    opts: &CountOptions,
) -> ColoringReport {
    let arcs = p.generator_count();
    let rels = flat_relations(p);
    let mut incident = vec![Vec::new(); arcs];
    for (r, &(i, o, u, _)) in rels.iter().enumerate() {
        incident[i].push(r);
        if o != i {
            incident[o].push(r);
        }
        if u != i && u != o {
            incident[u].push(r);
        }
    }
    let seeds = p.component_seeds();
    let make = || Propagator {
        t,
        rels: &rels,
        incident: &incident,
        seeds: &seeds,
        colors: vec![UNSET; arcs],
        trail: Vec::new(),
    };

    let tally = if arcs == 0 {
        let mut tally = Tally::new(opts.list);
        make().search(&mut tally);
        tally
    } else {
        run_split(t.order(), opts, |first| {
            let mut tally = Tally::new(opts.list);
            let mut prop = make();
            let mut queue = Vec::new();
            prop.assign(seeds[0], first, &mut queue);
            if prop.propagate(queue) {
                prop.search(&mut tally);
            }
            tally
        })
    };

    ColoringReport {
        count: tally.count,
        colorings: tally.list,
        method: Method::Propagate,
        target_order: t.order(),
        arcs,
    }
}

pub fn count(
    p: &KnotQuandlePresentation,
    t: &Quandle,
    method: Method,
    opts: &CountOptions,
) -> Result<ColoringReport, HomError> {
    match method {
        Method::Oracle => count_oracle(p, t, opts),
        Method::Propagate => Ok(count_propagate(p, t, opts)),
    }
}

/// Checks `#Hom(Q(K), T) = Σ #Hom(Q(K), O)` over the orbit subquandles `O`
/// of `T`, for a one-component diagram `K`.
pub fn count_decomposition_check(p: &KnotQuandlePresentation, t: &Quandle) -> Result<bool, HomError> {
    let components = p.component_count();
    if components != 1 {
        return Err(HomError::NotAKnot(components));
    }
    let opts = CountOptions::default();
    let whole = count_propagate(p, t, &opts).count;
    let parts: u64 = orbits(t)
        .orbits
        .iter()
        .map(|orbit| {
            let sub = t.subquandle(orbit).expect("orbits are subquandles");
            count_propagate(p, &sub, &opts).count
        })
        .sum();
    Ok(whole == parts)
}
