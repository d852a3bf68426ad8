//! Rank over the fraction field and the `G_s` condition.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::syzygies;
use crate::ideal::{Height, Ideal};
use crate::linalg::rank_mod_p;
use crate::matrix::PolyMatrix;

use super::FPModule;

const EVAL_PRIMES: [u32; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];
const EVAL_TRIES: usize = 24;

/// Rank of `a` at a random point mod `p`; `None` if a coefficient has no
/// image mod `p`.
fn eval_rank(a: &PolyMatrix, p: u32, point: &[u32]) -> Option<usize> {
    let mut rows = Vec::with_capacity(a.nrows());
    for i in 0..a.nrows() {
        let mut row = Vec::with_capacity(a.ncols());
        for j in 0..a.ncols() {
            row.push(a.get(i, j).eval_mod(p, point)?);
        }
        rows.push(row);
    }
    Some(rank_mod_p(p, &rows))
}

/// Rank of a matrix over the fraction field of the ring.
///
/// Over a polynomial ring the rank is pinned between random evaluations of
/// the matrix (a lower bound) and of its kernel (an upper bound). Over a
/// quotient ring it is the largest size of a minor that is nonzero there.
pub fn matrix_rank(a: &PolyMatrix) -> Result<usize> {
    let ring = a.ring();
    if a.nrows() == 0 || a.ncols() == 0 {
        return Ok(0);
    }
    if ring.has_quotient() {
        let zero = Ideal::zero(ring);
        let mut k = 0;
        while k < a.nrows().min(a.ncols()) {
            let minors = a.minors(k + 1)?;
            let mut any = false;
            for m in &minors {
                if !zero.contains(m)? {
                    any = true;
                    break;
                }
            }
            if !any {
                break;
            }
            k += 1;
        }
        return Ok(k);
    }
    let kernel = syzygies(ring, &a.columns())?;
    let kmat = PolyMatrix::from_columns(ring, a.ncols(), &kernel.generators)?;
    let primes: Vec<u32> = match ring.field() {
        Field::Prime(p) => vec![p],
        Field::Rationals => EVAL_PRIMES.to_vec(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut lower = 0;
    let mut upper = a.ncols();
    for t in 0..EVAL_TRIES {
        let p = primes[t % primes.len()];
        let point: Vec<u32> = (0..ring.nvars()).map(|_| rng.gen_range(0..p)).collect();
        if let Some(r) = eval_rank(a, p, &point) {
            lower = lower.max(r);
        }
        if let Some(r) = eval_rank(&kmat, p, &point) {
            upper = upper.min(a.ncols() - r);
        }
        if lower == upper {
            return Ok(lower);
        }
    }
    Err(Error::Invalid(format!(
        "rank not certified: between {lower} and {upper}"
    )))
}

impl FPModule {
    /// `n - rank(ψ)` over the fraction field.
    pub fn rank(&self) -> Result<usize> {
        Ok(self.ngens() - matrix_rank(self.relations())?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GsRow {
    pub j: usize,
    pub fitting_index: usize,
    pub height: Height,
    pub required: usize,
}

impl GsRow {
    pub fn ok(&self) -> bool {
        match self.height {
            Height::Unit => true,
            Height::Finite(h) => h >= self.required,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GsReport {
    pub rank: usize,
    /// `None` means `G_∞`.
    pub s: Option<usize>,
    pub rows: Vec<GsRow>,
}

impl GsReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.ok())
    }
}

/// `G_s` via `ht Fitt_(j+r-1) >= j + 1` for `1 <= j <= s - 1` (`s = None`
/// for `G_∞`). Fitting ideals with index at least `n` are the unit ideal and
/// are not listed.
pub fn check_gs(module: &FPModule, s: Option<usize>) -> Result<GsReport> {
    let r = module.rank()?;
    let n = module.ngens();
    let last_nontrivial = n.saturating_sub(r);
    let last = match s {
        None => last_nontrivial,
        Some(s) => s.saturating_sub(1).min(last_nontrivial),
    };
    let mut rows = Vec::new();
    for j in 1..=last {
        let k = j + r - 1;
        let height = module.fitting_ideal(k)?.height()?;
        rows.push(GsRow {
            j,
            fitting_index: k,
            height,
            required: j + 1,
        });
    }
    Ok(GsReport { rank: r, s, rows })
}
