//! Linear codes and their independent verifiers.
//!
//! A [`LinearCode`] is a k-dimensional subspace of F_q^n presented by a
//! full-rank k×n generator matrix. The verifiers here are deliberately
//! redundant: the hull dimension is always computed twice — once as the rank
//! deficit of the Gram matrix G·Gᵀ and once from an explicit intersection of
//! the row spaces of G and its dual's generator — and the two must agree.
//! The minimum distance is found by exhaustive enumeration of projective
//! representatives (first nonzero coordinate normalized to 1), which is
//! oracle-grade at desk scale.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::Field;
use crate::linalg::{intersect_rowspaces, FieldMatrix, FieldVector, LinalgError};

/// Default cap on q^k for exhaustive distance enumeration.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("generator matrix has rank {rank} but {rows} rows")]
    NotFullRank { rank: usize, rows: usize },
    #[error("dimension {k} exceeds ambient length {n}")]
    DimensionExceedsLength { k: usize, n: usize },
    #[error("hull dimension mismatch: gram method {gram}, intersection method {intersection}")]
    InternalInconsistency { gram: usize, intersection: usize },
    #[error("enumeration of q^k = {needed} codewords exceeds the cap {cap}")]
    EnumerationCapExceeded { needed: u128, cap: u128 },
    #[error("the zero code has no nonzero codeword")]
    ZeroDimensionalCode,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A `[n, k]_q` linear code given by a full-rank generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: Field,
    n: usize,
    k: usize,
    generator: FieldMatrix,
}

/// The output of the full verifier run on one code.
///
/// `hull_dim_gram` and `hull_dim_intersection` are equal in every emitted
/// report; a mismatch aborts with [`CodeError::InternalInconsistency`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub hull_dim_gram: usize,
    pub hull_dim_intersection: usize,
    pub min_distance: usize,
    pub dual_dim: usize,
    pub gram_diagonal: bool,
    pub gram_diag_zero_count: usize,
}

impl LinearCode {
    /// Wraps a generator matrix, rejecting rank-deficient input.
    pub fn new(generator: FieldMatrix) -> Result<LinearCode, CodeError> {
        let k = generator.nrows();
        let n = generator.ncols();
        if k > n {
            return Err(CodeError::DimensionExceedsLength { k, n });
        }
        let rank = generator.rank();
        if rank != k {
            return Err(CodeError::NotFullRank { rank, rows: k });
        }
        Ok(LinearCode {
            field: generator.field().clone(),
            n,
            k,
            generator,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &FieldMatrix {
        &self.generator
    }

    /// The dual code, generated by a nullspace basis of the generator.
    pub fn dual(&self) -> LinearCode {
        let gen = self.generator.nullspace_basis();
        LinearCode::new(gen).expect("nullspace basis rows are independent")
    }

    /// Hull dimension, computed by both the Gram-rank method and the explicit
    /// row-space intersection; the two must agree.
    pub fn hull_dimension(&self) -> Result<usize, CodeError> {
        let (gram, intersection) = self.hull_dimension_both()?;
        if gram != intersection {
            return Err(CodeError::InternalInconsistency { gram, intersection });
        }
        Ok(gram)
    }

    /// Both hull computations, unreconciled. Exposed for reporting.
    pub fn hull_dimension_both(&self) -> Result<(usize, usize), CodeError> {
        let by_gram = self.k - self.generator.gram().rank();
        let dual_gen = self.generator.nullspace_basis();
        let by_intersection = intersect_rowspaces(&self.generator, &dual_gen)?.nrows();
        Ok((by_gram, by_intersection))
    }

    /// Minimum weight over nonzero codewords, under the default cap.
    pub fn min_distance(&self) -> Result<usize, CodeError> {
        self.min_distance_with_cap(DEFAULT_ENUMERATION_CAP)
    }

    /// Exhaustive minimum distance: enumerates the (q^k - 1)/(q - 1)
    /// projective representatives with first nonzero coordinate 1, since
    /// scalar multiples share a weight.
    pub fn min_distance_with_cap(&self, cap: u128) -> Result<usize, CodeError> {
        if self.k == 0 {
            return Err(CodeError::ZeroDimensionalCode);
        }
        let q = self.field.order();
        let mut qk: u128 = 1;
        for _ in 0..self.k {
            qk *= q as u128;
            if qk > cap {
                return Err(CodeError::EnumerationCapExceeded { needed: qk, cap });
            }
        }
        let f = &self.field;
        let mut best = usize::MAX;
        let mut word = vec![f.zero(); self.n];
        for lead in 0..self.k {
            // x[0..lead] = 0, x[lead] = 1, suffix coordinates free
            let suffix = self.k - lead - 1;
            let combos = (q as u128).pow(suffix as u32);
            for mut idx in 0..combos {
                word.copy_from_slice(self.generator.row_slice(lead));
                for j in 0..suffix {
                    let c = f.element((idx % q as u128) as u64);
                    idx /= q as u128;
                    if c.is_zero() {
                        continue;
                    }
                    let row = self.generator.row_slice(lead + 1 + j);
                    for (w, &g) in word.iter_mut().zip(row) {
                        *w = f.add(*w, f.mul(c, g));
                    }
                }
                let w = word.iter().filter(|e| !e.is_zero()).count();
                if w < best {
                    best = w;
                    if best == 1 {
                        return Ok(1);
                    }
                }
            }
        }
        Ok(best)
    }

    /// Runs every verifier and assembles the report.
    pub fn verify(&self) -> Result<VerificationReport, CodeError> {
        self.verify_with_cap(DEFAULT_ENUMERATION_CAP)
    }

    pub fn verify_with_cap(&self, cap: u128) -> Result<VerificationReport, CodeError> {
        let (hull_dim_gram, hull_dim_intersection) = self.hull_dimension_both()?;
        if hull_dim_gram != hull_dim_intersection {
            return Err(CodeError::InternalInconsistency {
                gram: hull_dim_gram,
                intersection: hull_dim_intersection,
            });
        }
        let min_distance = self.min_distance_with_cap(cap)?;
        let gram = self.generator.gram();
        let gram_diagonal = gram.is_diagonal();
        let gram_diag_zero_count = (0..self.k).filter(|&i| gram.get(i, i).is_zero()).count();
        Ok(VerificationReport {
            hull_dim_gram,
            hull_dim_intersection,
            min_distance,
            dual_dim: self.n - self.k,
            gram_diagonal,
            gram_diag_zero_count,
        })
    }
}

/// Hamming weight: the number of nonzero coordinates.
pub fn weight(v: &FieldVector) -> usize {
    v.entries().iter().filter(|e| !e.is_zero()).count()
}
