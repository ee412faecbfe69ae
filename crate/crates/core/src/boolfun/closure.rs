//! Bounded-arity superposition closure.
//!
//! Members of the `n`-ary slice are kept as `u16` tables over the `2^n ≤ 16` rows.
//! The fixpoint is computed semi-naively: every round only builds tuples that use at
//! least one member found in the previous round.

use std::collections::BTreeSet;

use super::clones::{CloneName, ALL_CLONES};
use super::table::{TruthTable, CLOSURE_ARITY_CAP};
use super::term::Term;
use super::OperatorSet;
use crate::error::{Error, Result};

/// Upper bound on operator applications in one closure run.
const WORK_BUDGET: u64 = 400_000_000;

/// Position of `[B]` in Post's lattice, relative to the named clones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CloneDescriptor {
    pub named: Option<CloneName>,
    /// Named clones `C` with `C ⊆ [B]`.
    pub contains: BTreeSet<CloneName>,
    /// Named clones `C` with `[B] ⊆ C`.
    pub within: BTreeSet<CloneName>,
    /// Set when operators above the closure cap forced an under-approximation of `contains`.
    pub approximate: bool,
}

pub(crate) struct Run {
    n: usize,
    members: Vec<u16>,
    origin: Vec<Option<(usize, Vec<u32>)>>,
    seen: Vec<u64>,
}

enum Stop {
    Never,
    Size(usize),
    Table(u16),
}

fn row_mask(n: usize) -> u16 {
    if n == 4 {
        u16::MAX
    } else {
        ((1u32 << (1 << n)) - 1) as u16
    }
}

fn projection(n: usize, var: usize) -> u16 {
    let mut t = 0u16;
    for idx in 0..(1usize << n) {
        if (idx >> (n - 1 - var)) & 1 == 1 {
            t |= 1 << idx;
        }
    }
    t
}

fn compose(f: &TruthTable, args: &[u16], mask: u16) -> u16 {
    let k = f.arity();
    let mut out = 0u16;
    for idx in 0..f.rows() {
        if f.get(idx) {
            let mut term = mask;
            for (j, &g) in args.iter().enumerate() {
                term &= if (idx >> (k - 1 - j)) & 1 == 1 { g } else { !g };
            }
            out |= term;
        }
    }
    out & mask
}

/// Widens a table of arity `≤ n` to arity `n` by adding dummy trailing arguments.
fn pad(f: &TruthTable, n: usize) -> u16 {
    let f = f.lifted();
    let k = f.arity();
    debug_assert!(k <= n);
    let mut t = 0u16;
    for idx in 0..(1usize << n) {
        if f.get(idx >> (n - k)) {
            t |= 1 << idx;
        }
    }
    t
}

impl Run {
    fn new(n: usize) -> Self {
        Run {
            n,
            members: Vec::new(),
            origin: Vec::new(),
            seen: vec![0; ((1usize << (1 << n)) / 64).max(1)],
        }
    }

    fn has(&self, t: u16) -> bool {
        (self.seen[t as usize / 64] >> (t % 64)) & 1 == 1
    }

    fn insert(&mut self, t: u16, origin: Option<(usize, Vec<u32>)>) -> bool {
        if self.has(t) {
            return false;
        }
        self.seen[t as usize / 64] |= 1 << (t % 64);
        self.members.push(t);
        self.origin.push(origin);
        true
    }

    fn done(&self, stop: &Stop) -> bool {
        match *stop {
            Stop::Never => false,
            Stop::Size(s) => self.members.len() >= s,
            Stop::Table(t) => self.has(t),
        }
    }

    /// Runs the fixpoint for `ops` (each of arity `1..=CLOSURE_ARITY_CAP`, constants lifted).
    fn close(n: usize, ops: &[TruthTable], stop: Stop) -> Result<Run> {
        let mut run = Run::new(n);
        let mask = row_mask(n);
        for v in 0..n {
            run.insert(projection(n, v), None);
        }
        let mut start = 0;
        let mut work = 0u64;
        while start < run.members.len() && !run.done(&stop) {
            let end = run.members.len();
            'ops: for (oi, f) in ops.iter().enumerate() {
                let k = f.arity();
                // Lexicographic order over tuples with at least one member of the last round.
                let lower = |pos: &[usize]| {
                    if pos[..k - 1].iter().all(|&p| p < start) {
                        start
                    } else {
                        0
                    }
                };
                let mut pos = vec![0usize; k];
                pos[k - 1] = lower(&pos);
                let mut args = vec![0u16; k];
                'tuples: loop {
                    if pos[k - 1] < end {
                        for j in 0..k {
                            args[j] = run.members[pos[j]];
                        }
                        let t = compose(f, &args, mask);
                        work += 1;
                        if !run.has(t) {
                            let children = pos.iter().map(|&i| i as u32).collect();
                            run.insert(t, Some((oi, children)));
                            if run.done(&stop) {
                                break 'ops;
                            }
                        }
                        if work > WORK_BUDGET {
                            return Err(Error::Limit(format!(
                                "closure at arity {n} exceeded {WORK_BUDGET} compositions"
                            )));
                        }
                    }
                    let mut j = k - 1;
                    loop {
                        pos[j] += 1;
                        if pos[j] < end {
                            break;
                        }
                        if j == 0 {
                            break 'tuples;
                        }
                        pos[j] = 0;
                        j -= 1;
                    }
                    if j < k - 1 {
                        pos[k - 1] = lower(&pos);
                    }
                }
            }
            start = end;
        }
        Ok(run)
    }

    fn table(&self, i: usize) -> TruthTable {
        TruthTable::new(self.n, self.members[i] as u64).expect("arity within cap")
    }

    fn term(&self, i: usize, names: &[(String, usize)]) -> Term {
        match &self.origin[i] {
            None => Term::Var(self.projection_var(i)),
            Some((oi, children)) => {
                let (name, arity) = &names[*oi];
                let args = if *arity == 0 {
                    Vec::new()
                } else {
                    children.iter().map(|&c| self.term(c as usize, names)).collect()
                };
                Term::Apply(name.clone(), args)
            }
        }
    }

    fn projection_var(&self, i: usize) -> usize {
        (0..self.n)
            .find(|&v| projection(self.n, v) == self.members[i])
            .expect("underived members are projections")
    }
}

fn check_closure_arity(n: usize) -> Result<()> {
    if n == 0 || n > CLOSURE_ARITY_CAP {
        return Err(Error::Limit(format!(
            "closure arity {n} outside 1..={CLOSURE_ARITY_CAP}"
        )));
    }
    Ok(())
}

fn closable(ops: &[TruthTable]) -> Result<Vec<TruthTable>> {
    ops.iter()
        .map(|f| {
            if f.arity() > CLOSURE_ARITY_CAP {
                Err(Error::Limit(format!(
                    "operator of arity {} exceeds closure cap {CLOSURE_ARITY_CAP}",
                    f.arity()
                )))
            } else {
                Ok(f.lifted())
            }
        })
        .collect()
}

/// The `n`-ary slice of `[ops]` computed by explicit superposition, without shortcuts.
pub fn superposition_closure(ops: &[TruthTable], n: usize) -> Result<Vec<TruthTable>> {
    check_closure_arity(n)?;
    let run = Run::close(n, &closable(ops)?, Stop::Never)?;
    let mut out: Vec<TruthTable> = (0..run.members.len()).map(|i| run.table(i)).collect();
    out.sort();
    Ok(out)
}

/// The `n`-ary part of `[ops]`.
///
/// When `[ops]` is a named clone and `n` equals the closure cap, the slice is read off the
/// clone's membership predicate instead of being enumerated.
pub fn nary_closure(ops: &[TruthTable], n: usize) -> Result<Vec<TruthTable>> {
    check_closure_arity(n)?;
    if n == CLOSURE_ARITY_CAP || ops.iter().any(|f| f.arity() > CLOSURE_ARITY_CAP) {
        if let Some(c) = identify_clone(ops)?.named {
            return Ok(all_tables(n).filter(|f| c.contains(f)).collect());
        }
    }
    superposition_closure(ops, n)
}

fn all_tables(n: usize) -> impl Iterator<Item = TruthTable> {
    (0..(1u64 << (1 << n))).map(move |b| TruthTable::new(n, b).expect("fits"))
}

pub fn contains_function(ops: &[TruthTable], g: &TruthTable) -> Result<bool> {
    let g = g.lifted();
    check_closure_arity(g.arity())?;
    let desc = identify_clone(ops)?;
    if desc.within.iter().any(|c| !c.contains(&g)) {
        return Ok(false);
    }
    if let Some(c) = desc.named {
        return Ok(c.contains(&g));
    }
    let ops = closable(ops)?;
    let target = g.bits() as u16;
    let run = Run::close(g.arity(), &ops, Stop::Table(target))?;
    Ok(run.has(target))
}

pub fn contains_clone(ops: &[TruthTable], c: CloneName) -> Result<bool> {
    Ok(identify_clone(ops)?.contains.contains(&c))
}

/// Locates `[ops]` among the named clones.
pub fn identify_clone(ops: &[TruthTable]) -> Result<CloneDescriptor> {
    const N: usize = 3;
    let within: BTreeSet<CloneName> = ALL_CLONES
        .iter()
        .copied()
        .filter(|c| ops.iter().all(|f| c.contains(f)))
        .collect();
    let approximate = ops.iter().any(|f| f.arity() > CLOSURE_ARITY_CAP);
    let mut effective: Vec<TruthTable> = Vec::new();
    for f in ops {
        if f.arity() > CLOSURE_ARITY_CAP {
            effective.extend(f.minors(N));
        } else {
            effective.push(f.lifted());
        }
    }
    effective.sort();
    effective.dedup();
    let upper = all_tables(N)
        .filter(|f| within.iter().all(|c| c.contains(f)))
        .count();
    let run = Run::close(N, &effective, Stop::Size(upper))?;
    let contains: BTreeSet<CloneName> = ALL_CLONES
        .iter()
        .copied()
        .filter(|c| c.base().iter().all(|f| run.has(pad(f, N))))
        .collect();
    let named = ALL_CLONES
        .iter()
        .copied()
        .find(|c| within.contains(c) && contains.contains(c));
    Ok(CloneDescriptor {
        named,
        contains,
        within,
        approximate: approximate && named.is_none(),
    })
}

/// A term over `ops` computing `g`, read off the closure derivation.
pub fn witness_term(ops: &OperatorSet, g: &TruthTable) -> Result<Term> {
    let tables: Vec<TruthTable> = ops.iter().map(|o| o.table).collect();
    let closable = closable(&tables)?;
    let names: Vec<(String, usize)> = ops
        .iter()
        .map(|o| (o.name.to_string(), o.table.arity()))
        .collect();
    let n = g.arity().max(1);
    check_closure_arity(n)?;
    let target = g.lifted().bits() as u16;
    let run = Run::close(n, &closable, Stop::Table(target))?;
    let idx = run
        .members
        .iter()
        .position(|&t| t == target)
        .ok_or_else(|| Error::NotExpressible(format!("{g} is not in the generated clone")))?;
    Ok(run.term(idx, &names))
}
