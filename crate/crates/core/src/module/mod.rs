//! Finitely presented modules and the ideals attached to them.
//!
//! A module is a generator count `n` plus an `n x m` relation matrix whose
//! columns generate the relations.

mod ext;
mod generic;
mod koszul;
mod rank;

use crate::error::{Error, Result};
use crate::groebner::{groebner, relative_syzygies, syzygies};
use crate::ideal::Ideal;
use crate::matrix::PolyMatrix;
use crate::poly::{FreeElement, Polynomial};
use crate::ring::{same_ring, RingRef};

pub use ext::{ext_vanishes, free_resolution, ExtReport};
pub use generic::{generic_combination_ideal, GenericMode, GenericResult, DEFAULT_TRIALS, RATIONAL_BOX};
pub use koszul::{exterior_basis, koszul_matrix, omega};
pub use rank::{check_gs, matrix_rank, GsReport, GsRow};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FPModule {
    ring: RingRef,
    ngens: usize,
    relations: PolyMatrix,
    labels: Option<Vec<String>>,
}

/// The perpendicular module `M = N^⊥` with the rows of `ψ` as its embedding.
#[derive(Debug, Clone)]
pub struct PerpResult {
    pub perp: FPModule,
    /// Rows of the presentation matrix `ψ` of `N`, elements of `R^m`.
    pub embedding: Vec<FreeElement>,
    /// The presentation of `N` that was used.
    pub source: FPModule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    RowIdeal,
    DualKernel,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::RowIdeal => "row_ideal",
            Route::DualKernel => "dual_kernel",
        }
    }
}

#[derive(Debug, Clone)]
pub struct OrderIdealResult {
    pub ideal: Ideal,
    pub route: Route,
}

/// Result of splitting off unit relations.
#[derive(Debug, Clone)]
pub struct Minimalized {
    pub module: FPModule,
    /// Original indices of the generators that survive, in order.
    pub kept: Vec<usize>,
}

/// Matrix whose columns are the given vectors; zero-width when empty.
pub(crate) fn columns_matrix(ring: &RingRef, nrows: usize, cols: &[FreeElement]) -> Result<PolyMatrix> {
    PolyMatrix::from_columns(ring, nrows, cols)
}

fn constant_part(p: &Polynomial) -> Option<crate::field::Coeff> {
    let c = p.constant_coeff();
    if p.ring().field().is_zero(&c) {
        None
    } else {
        Some(c)
    }
}

impl FPModule {
    pub fn new(ring: &RingRef, ngens: usize, relations: PolyMatrix) -> Result<FPModule> {
        if relations.nrows() != ngens {
            return Err(Error::RankMismatch {
                expected: ngens,
                found: relations.nrows(),
            });
        }
        if !same_ring(relations.ring(), ring) {
            return Err(Error::RingMismatch);
        }
        Ok(FPModule {
            ring: ring.clone(),
            ngens,
            relations,
            labels: None,
        })
    }

    pub fn free(ring: &RingRef, n: usize) -> FPModule {
        FPModule::new(ring, n, PolyMatrix::zero(ring, n, 0)).unwrap()
    }

    pub fn cokernel(matrix: PolyMatrix) -> FPModule {
        let ring = matrix.ring().clone();
        FPModule::new(&ring, matrix.nrows(), matrix).unwrap()
    }

    /// The submodule of `R^m` generated by `gens`, presented by its syzygies.
    pub fn from_submodule(ring: &RingRef, gens: &[FreeElement]) -> Result<FPModule> {
        let syz = syzygies(ring, gens)?;
        FPModule::new(ring, gens.len(), columns_matrix(ring, gens.len(), &syz.generators)?)
    }

    /// An ideal as a module over its generators.
    pub fn from_ideal(ideal: &Ideal) -> Result<FPModule> {
        let gens: Vec<FreeElement> = ideal
            .generators()
            .iter()
            .map(|g| FreeElement::new(vec![g.clone()]))
            .collect();
        FPModule::from_submodule(ideal.ring(), &gens)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> FPModule {
        if labels.len() == self.ngens {
            self.labels = Some(labels);
        }
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &PolyMatrix {
        &self.relations
    }

    /// Relation columns as elements of `R^n`.
    pub fn relation_vectors(&self) -> Vec<FreeElement> {
        if self.ngens == 0 {
            return Vec::new();
        }
        self.relations.columns()
    }

    /// Presentation matrix with at least one column (a zero column when the
    /// module is free), so that its rows are elements of some `R^m`.
    fn padded_relations(&self) -> PolyMatrix {
        if self.relations.ncols() > 0 {
            self.relations.clone()
        } else {
            PolyMatrix::zero(&self.ring, self.ngens, 1)
        }
    }

    /// Presents the module with `x` (coefficients in the generators)
    /// appended as a last generator.
    pub fn append_generator(&self, x: &[Polynomial]) -> Result<FPModule> {
        if x.len() != self.ngens {
            return Err(Error::RankMismatch {
                expected: self.ngens,
                found: x.len(),
            });
        }
        let n = self.ngens;
        let m = self.relations.ncols();
        let mut rel = PolyMatrix::zero(&self.ring, n + 1, m + 1);
        for i in 0..n {
            for j in 0..m {
                rel.set(i, j, self.relations.get(i, j).clone());
            }
            rel.set(i, m, x[i].clone());
        }
        rel.set(n, m, Polynomial::from_i64(&self.ring, -1));
        FPModule::new(&self.ring, n + 1, rel)
    }

    /// Generators of `N* = Hom(N, R)` as coefficient vectors on the
    /// generators (each `f` sends generator `i` to `f[i]`).
    pub fn dual_generators(&self) -> Result<Vec<FreeElement>> {
        if self.ngens == 0 {
            return Ok(Vec::new());
        }
        let rows = self.padded_relations().row_vectors();
        Ok(syzygies(&self.ring, &rows)?.generators)
    }

    /// The perpendicular module on the given generators, optionally after
    /// splitting off unit relations.
    pub fn perpendicular(&self, minimalize_first: bool) -> Result<PerpResult> {
        let source = if minimalize_first {
            self.minimalize(&[])?.module
        } else {
            self.clone()
        };
        let psi = source.padded_relations();
        let embedding = if source.ngens == 0 {
            Vec::new()
        } else {
            psi.row_vectors()
        };
        let syz = syzygies(&source.ring, &embedding)?;
        let perp = FPModule::new(
            &source.ring,
            source.ngens,
            columns_matrix(&source.ring, source.ngens, &syz.generators)?,
        )?;
        let perp = match &source.labels {
            Some(l) => perp.with_labels(l.iter().map(|s| format!("{s}^perp")).collect()),
            None => perp,
        };
        Ok(PerpResult {
            perp,
            embedding,
            source,
        })
    }

    /// `N*(x)` for `x` given by its coefficients in the generators.
    pub fn order_ideal(&self, x: &[Polynomial], route: Route) -> Result<OrderIdealResult> {
        if x.len() != self.ngens {
            return Err(Error::RankMismatch {
                expected: self.ngens,
                found: x.len(),
            });
        }
        let ideal = match route {
            Route::DualKernel => {
                let x = FreeElement::new(x.to_vec());
                let mut vals = Vec::new();
                for f in self.dual_generators()? {
                    vals.push(f.dot(&x)?);
                }
                Ideal::new(&self.ring, vals)?
            }
            Route::RowIdeal => {
                let bigger = self.append_generator(x)?;
                let perp = bigger.perpendicular(false)?.perp;
                Ideal::new(&self.ring, perp.relations.row(self.ngens))?
            }
        };
        Ok(OrderIdealResult { ideal, route })
    }

    /// Order ideal of the `i`-th generator.
    pub fn generator_order_ideal(&self, i: usize, route: Route) -> Result<OrderIdealResult> {
        if i >= self.ngens {
            return Err(Error::Invalid(format!("no generator {i}")));
        }
        match route {
            // the generator is already listed: read its row directly
            Route::RowIdeal => {
                let perp = self.perpendicular(false)?.perp;
                Ok(OrderIdealResult {
                    ideal: Ideal::new(&self.ring, perp.relations.row(i))?,
                    route,
                })
            }
            Route::DualKernel => {
                let mut x = vec![Polynomial::zero(&self.ring); self.ngens];
                x[i] = Polynomial::one(&self.ring);
                self.order_ideal(&x, route)
            }
        }
    }

    /// `tr(N)`: all values of all homomorphisms `N -> R`.
    pub fn trace_ideal(&self) -> Result<Ideal> {
        let mut vals = Vec::new();
        for f in self.dual_generators()? {
            vals.extend(f.into_coords());
        }
        Ideal::new(&self.ring, vals)
    }

    /// `Fitt_j` of the module.
    pub fn fitting_ideal(&self, j: usize) -> Result<Ideal> {
        fitting_ideal(&self.relations, j)
    }

    /// `U :_R M`, the annihilator of `M / U`, for `U` given by coefficient
    /// vectors in the generators.
    pub fn colon(&self, u: &[Vec<Polynomial>]) -> Result<Ideal> {
        let n = self.ngens;
        if n == 0 {
            return Ok(Ideal::unit(&self.ring));
        }
        let mut sub: Vec<FreeElement> = self.relation_vectors();
        for v in u {
            if v.len() != n {
                return Err(Error::RankMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            sub.push(FreeElement::new(v.clone()));
        }
        let mut acc: Option<Ideal> = None;
        for i in 0..n {
            let e = FreeElement::unit(&self.ring, n, i);
            let syz = relative_syzygies(&self.ring, &[e], &sub)?;
            let ideal = Ideal::new(&self.ring, syz.generators.iter().map(|g| g.get(0).clone()).collect())?;
            acc = Some(match acc {
                None => ideal,
                Some(a) => a.intersect(&ideal)?,
            });
        }
        Ok(acc.unwrap())
    }

    /// Splits off relations with a unit entry. Generators listed in
    /// `protected` are only removed when no other choice exists.
    pub fn minimalize(&self, protected: &[usize]) -> Result<Minimalized> {
        let field = self.ring.field();
        let mut rel: Vec<Vec<Polynomial>> = self.relations.rows();
        let mut kept: Vec<usize> = (0..self.ngens).collect();
        let mut ncols = self.relations.ncols();
        loop {
            // find a pivot: constant nonzero entry, preferring unprotected rows
            let mut pivot: Option<(usize, usize)> = None;
            for j in 0..ncols {
                for i in 0..kept.len() {
                    let e = &rel[i][j];
                    if constant_part(e).is_some() {
                        if !e.is_constant() {
                            return Err(Error::Invalid(
                                "relation entry mixes a unit constant term with higher terms".into(),
                            ));
                        }
                        let better = match pivot {
                            None => true,
                            Some((pi, _)) => {
                                protected.contains(&kept[pi]) && !protected.contains(&kept[i])
                            }
                        };
                        if better {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            // x_pi = -(1/c) sum_{k != pi} a_k x_k; substitute into every column
            let c = rel[pi][pj].constant_coeff();
            let inv = field.inv(&c);
            let pivot_col: Vec<Polynomial> = (0..kept.len()).map(|i| rel[i][pj].clone()).collect();
            for j in 0..ncols {
                if j == pj || rel[pi][j].is_zero() {
                    continue;
                }
                let factor = rel[pi][j].scale(&inv);
                for i in 0..kept.len() {
                    if !pivot_col[i].is_zero() {
                        rel[i][j] = &rel[i][j] - &(&factor * &pivot_col[i]);
                    }
                }
            }
            rel.remove(pi);
            kept.remove(pi);
            for row in rel.iter_mut() {
                row.remove(pj);
            }
            ncols -= 1;
        }
        // drop zero columns
        let nonzero: Vec<usize> = (0..ncols)
            .filter(|&j| rel.iter().any(|row| !row[j].is_zero()))
            .collect();
        let rows: Vec<Vec<Polynomial>> = rel
            .iter()
            .map(|row| nonzero.iter().map(|&j| row[j].clone()).collect())
            .collect();
        let matrix = PolyMatrix::from_rows(&self.ring, rows, nonzero.len())?;
        let mut module = FPModule::new(&self.ring, kept.len(), matrix)?;
        if let Some(l) = &self.labels {
            module.labels = Some(kept.iter().map(|&i| l[i].clone()).collect());
        }
        Ok(Minimalized { module, kept })
    }

    /// Whether `[x_1^⊥, ..., x_n^⊥]^⊥` presents the same relations as the
    /// module itself (true for torsionless modules).
    pub fn double_perp_matches(&self) -> Result<bool> {
        if self.ngens == 0 {
            return Ok(true);
        }
        let m = self.perpendicular(false)?.perp;
        let mm = m.perpendicular(false)?.perp;
        let a = groebner(&self.ring, &self.relation_vectors(), self.ngens)?;
        let b = groebner(&self.ring, &mm.relation_vectors(), self.ngens)?;
        for v in mm.relation_vectors() {
            if !a.contains(&v)? {
                return Ok(false);
            }
        }
        for v in self.relation_vectors() {
            if !b.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Ideal of the `(n - j)`-minors of a presentation matrix with `n` rows.
pub fn fitting_ideal(a: &PolyMatrix, j: usize) -> Result<Ideal> {
    let n = a.nrows();
    if j >= n {
        return Ok(Ideal::unit(a.ring()));
    }
    Ideal::new(a.ring(), a.minors(n - j)?)
}
