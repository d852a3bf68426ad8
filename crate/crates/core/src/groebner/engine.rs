//! Buchberger's algorithm on module vectors.
//!
//! Pairs are selected by the normal strategy (smallest lcm degree, then
//! smallest lcm in the term order). Useless pairs are dropped by the coprime
//! criterion (ideal case only) and by Buchberger's chain criterion.
//!
//! In bookkeeping mode, positions at or beyond `bookkeeping_start` only
//! record how an element was produced from the inputs. Elements whose
//! leading term lands there are syzygies: they are collected and take no
//! further part in the computation.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Limit, Result};
use crate::limits::Limits;
use crate::monomial::Monomial;

use super::vector::{Ctx, Term, Vector};

struct Pair {
    i: usize,
    j: usize,
    pos: u32,
    lcm: Monomial,
    deg: u32,
}

pub(crate) struct Output {
    /// In bookkeeping mode: the elements whose lead is outside the bookkeeping part.
    pub basis: Vec<Vector>,
    pub syzygies: Vec<Vector>,
}

pub(crate) struct Engine<'a> {
    ctx: &'a Ctx,
    limits: Limits,
    ideal_case: bool,
    bookkeeping_start: Option<u32>,
    basis: Vec<Vector>,
    leads: Vec<(u32, Monomial)>,
    active: Vec<bool>,
    /// Pending pairs, sorted so the next pair to process is last.
    pairs: Vec<Pair>,
    pending: HashSet<(usize, usize)>,
    syzygies: Vec<Vector>,
    processed: usize,
}

impl<'a> Engine<'a> {
    pub fn new(ctx: &'a Ctx, rank: usize, bookkeeping_start: Option<u32>) -> Engine<'a> {
        Engine {
            ctx,
            limits: Limits::current(),
            ideal_case: rank == 1 && bookkeeping_start.is_none(),
            bookkeeping_start,
            basis: Vec::new(),
            leads: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            pending: HashSet::new(),
            syzygies: Vec::new(),
            processed: 0,
        }
    }

    pub fn run(mut self, inputs: Vec<Vector>) -> Result<Output> {
        for f in inputs {
            self.insert(f)?;
        }
        while let Some(pair) = self.pairs.pop() {
            self.pending.remove(&(pair.i, pair.j));
            self.processed += 1;
            if self.processed > self.limits.max_pairs {
                return Err(Error::Resource(Limit::Pairs));
            }
            if self.processed % 32 == 0 {
                self.limits.check_deadline()?;
            }
            if self.chain_criterion(&pair) {
                continue;
            }
            let s = self.s_vector(&pair);
            self.insert(s)?;
        }
        self.limits.check_deadline()?;
        let basis = self.finalize();
        Ok(Output {
            basis,
            syzygies: self.syzygies,
        })
    }

    fn in_bookkeeping(&self, pos: u32) -> bool {
        self.bookkeeping_start.is_some_and(|s| pos >= s)
    }

    pub fn reduce(&self, f: Vector) -> Vector {
        reduce_with(self.ctx, &self.basis, |k| self.active[k], |p| self.in_bookkeeping(p), f)
    }

    fn insert(&mut self, f: Vector) -> Result<()> {
        let h = self.reduce(f);
        let Some(lead) = h.lead() else {
            return Ok(());
        };
        if self.in_bookkeeping(lead.0) {
            self.syzygies.push(h.monic(self.ctx.field));
            return Ok(());
        }
        let h = h.monic(self.ctx.field);
        if h.max_bits(self.ctx.field) > self.limits.max_bits {
            return Err(Error::Resource(Limit::CoefficientBits));
        }
        if h.max_degree() > self.limits.max_degree {
            return Err(Error::Resource(Limit::Degree));
        }
        if self.basis.len() >= self.limits.max_basis {
            return Err(Error::Resource(Limit::BasisSize));
        }
        let (pos, lm) = {
            let t = h.lead().unwrap();
            (t.0, t.1.clone())
        };
        let k = self.basis.len();
        for (other, (p, m)) in self.leads.iter().enumerate() {
            if self.active[other] && *p == pos && lm.divides(m) {
                self.active[other] = false;
            }
        }
        for i in 0..k {
            let (p, m) = &self.leads[i];
            if *p != pos {
                continue;
            }
            if self.ideal_case && lm.is_coprime(m) {
                continue;
            }
            let lcm = lm.lcm(m);
            let deg = self.ctx.degree(&lcm);
            self.push_pair(Pair {
                i,
                j: k,
                pos,
                lcm,
                deg,
            });
        }
        self.basis.push(h);
        self.leads.push((pos, lm));
        self.active.push(true);
        Ok(())
    }

    fn pair_cmp(&self, a: &Pair, b: &Pair) -> Ordering {
        a.deg
            .cmp(&b.deg)
            .then_with(|| self.ctx.cmp((a.pos, &a.lcm), (b.pos, &b.lcm)))
            .then_with(|| a.j.cmp(&b.j))
            .then_with(|| a.i.cmp(&b.i))
    }

    fn push_pair(&mut self, pair: Pair) {
        // descending order: smallest pair at the end
        let idx = self
            .pairs
            .partition_point(|p| self.pair_cmp(p, &pair) == Ordering::Greater);
        self.pending.insert((pair.i, pair.j));
        self.pairs.insert(idx, pair);
    }

    fn chain_criterion(&self, pair: &Pair) -> bool {
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        self.leads.iter().enumerate().any(|(l, (p, m))| {
            l != pair.i
                && l != pair.j
                && *p == pair.pos
                && m.divides(&pair.lcm)
                && !self.pending.contains(&key(pair.i, l))
                && !self.pending.contains(&key(pair.j, l))
        })
    }

    fn s_vector(&self, pair: &Pair) -> Vector {
        let field = self.ctx.field;
        let gi = &self.basis[pair.i];
        let gj = &self.basis[pair.j];
        let qi = self.leads[pair.i].1.quotient_of(&pair.lcm);
        let qj = self.leads[pair.j].1.quotient_of(&pair.lcm);
        let left = gi.mul_term(field, &qi, &field.one());
        left.sub_scaled(self.ctx, &field.one(), &qj, gj)
    }

    /// Reduced basis: minimal leading terms, tails reduced, sorted ascending.
    fn finalize(&self) -> Vec<Vector> {
        let mut out: Vec<Vector> = Vec::new();
        for (k, g) in self.basis.iter().enumerate() {
            if !self.active[k] {
                continue;
            }
            let lead = g.terms[0].clone();
            let tail = self.reduce(Vector {
                terms: g.terms[1..].to_vec(),
            });
            let mut terms = vec![lead];
            terms.extend(tail.terms);
            out.push(Vector { terms });
        }
        out.sort_by(|a, b| {
            let (pa, ma, _) = &a.terms[0];
            let (pb, mb, _) = &b.terms[0];
            self.ctx.cmp((*pa, ma), (*pb, mb))
        });
        out
    }
}

/// Full reduction of `f` by the basis elements accepted by `usable`.
fn reduce_with(
    ctx: &Ctx,
    basis: &[Vector],
    usable: impl Fn(usize) -> bool,
    frozen: impl Fn(u32) -> bool,
    f: Vector,
) -> Vector {
    let find = |pos: u32, m: &Monomial| -> Option<usize> {
        if frozen(pos) {
            return None;
        }
        basis.iter().enumerate().position(|(k, g)| {
            let (p, lm, _) = &g.terms[0];
            usable(k) && *p == pos && lm.divides(m)
        })
    };
    let mut cur: Vec<Term> = f.terms;
    let mut start = 0;
    let mut done: Vec<Term> = Vec::new();
    while start < cur.len() {
        let (pos, m, c) = &cur[start];
        match find(*pos, m) {
            Some(k) => {
                let q = basis[k].terms[0].1.quotient_of(m);
                let c = c.clone();
                let rest = Vector {
                    terms: cur[start..].to_vec(),
                };
                cur = rest.sub_scaled(ctx, &c, &q, &basis[k]).terms;
                start = 0;
            }
            None => {
                done.push(cur[start].clone());
                start += 1;
            }
        }
    }
    Vector { terms: done }
}

/// Reduces `f` without touching terms at positions `>= frozen_from`.
pub(crate) fn reduce_frozen(ctx: &Ctx, basis: &[Vector], frozen_from: u32, f: Vector) -> Vector {
    reduce_with(ctx, basis, |_| true, |p| p >= frozen_from, f)
}

/// Reduces `f` by an already reduced basis (no new pairs).
pub(crate) fn reduce_by(ctx: &Ctx, basis: &[Vector], f: Vector) -> Vector {
    reduce_with(ctx, basis, |_| true, |_| false, f)
}
