//! Weight matrices, Reeb vectors, and the polyhedral Reeb cone.
//!
//! An affine cone cut out of `C^N` by a torus-homogeneous ideal is graded by
//! an `s x N` integer matrix `W` whose column `j` is the weight of the
//! coordinate `x_j`. A vector `xi` in the Lie algebra of the torus is a Reeb
//! vector exactly when every column pairs strictly positively with it, so the
//! Reeb cone is the open polyhedron cut out by the column functionals.
//! Feasibility and interior sampling run in exact rational arithmetic via
//! Fourier-Motzkin elimination; `N` and `s` are small here.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Mode, Scalar};

/// The `s x N` integer matrix of torus weights on the ambient coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightMatrix {
    torus_rank: usize,
    coordinates: usize,
    /// Row-major entries.
    entries: Vec<i64>,
}

impl WeightMatrix {
    /// Build from rows, enforcing full rank (an effective torus action).
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let torus_rank = rows.len();
        if torus_rank == 0 {
            return Err(Error::validation("weights", "weight matrix has no rows"));
        }
        let coordinates = rows[0].len();
        if coordinates == 0 {
            return Err(Error::validation("weights", "weight matrix has no columns"));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != coordinates {
                return Err(Error::validation(
                    "weights",
                    format!("row {i} has {} entries, expected {coordinates}", row.len()),
                ));
            }
        }
        let entries: Vec<i64> = rows.into_iter().flatten().collect();
        let matrix = WeightMatrix {
            torus_rank,
            coordinates,
            entries,
        };
        let rank = matrix.rank();
        if rank < torus_rank {
            return Err(Error::RankDeficient { rank, torus_rank });
        }
        Ok(matrix)
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn coordinates(&self) -> usize {
        self.coordinates
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.coordinates + col]
    }

    /// Weight vector of coordinate `j` (column of the matrix).
    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.torus_rank).map(|i| self.entry(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.coordinates).map(|j| self.column(j)).collect()
    }

    /// Componentwise sum of all columns (the adjunction weight of the free ring).
    pub fn column_sum(&self) -> Vec<i64> {
        let mut sum = vec![0i64; self.torus_rank];
        for j in 0..self.coordinates {
            for (i, s) in sum.iter_mut().enumerate() {
                *s += self.entry(i, j);
            }
        }
        sum
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.entries.iter().map(|e| e.abs()).max().unwrap_or(0)
    }

    /// Rank over the rationals, by Gaussian elimination.
    fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigRational>> = (0..self.torus_rank)
            .map(|i| {
                (0..self.coordinates)
                    .map(|j| BigRational::from_integer(BigInt::from(self.entry(i, j))))
                    .collect()
            })
            .collect();
        let mut rank = 0;
        let mut col = 0;
        while rank < self.torus_rank && col < self.coordinates {
            if let Some(pivot) = (rank..self.torus_rank).find(|&r| !m[r][col].is_zero()) {
                m.swap(rank, pivot);
                let lead = m[rank][col].clone();
                let pivot_row = m[rank].clone();
                for row in m.iter_mut().skip(rank + 1) {
                    if !row[col].is_zero() {
                        let factor = &row[col] / &lead;
                        for (entry, pivot) in row.iter_mut().zip(&pivot_row).skip(col) {
                            *entry -= &factor * pivot;
                        }
                    }
                }
                rank += 1;
            }
            col += 1;
        }
        rank
    }
}

/// A Reeb vector candidate: coordinates of `xi` in the fixed integral basis.
#[derive(Clone, Debug, PartialEq)]
pub struct ReebVector {
    components: Vec<Scalar>,
}

impl ReebVector {
    /// All components must share a mode.
    pub fn new(components: Vec<Scalar>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::validation("reeb_vector", "empty vector"));
        }
        let mode = components[0].mode();
        if let Some(bad) = components.iter().find(|c| c.mode() != mode) {
            return Err(Error::ModeMismatch {
                left: mode,
                right: bad.mode(),
            });
        }
        Ok(ReebVector { components })
    }

    pub fn from_integers(values: &[i64], mode: Mode) -> Self {
        ReebVector {
            components: values
                .iter()
                .map(|&v| Scalar::from_integer(v, mode))
                .collect(),
        }
    }

    pub fn from_f64s(values: &[f64]) -> Self {
        ReebVector {
            components: values.iter().map(|&v| Scalar::float(v)).collect(),
        }
    }

    pub fn from_rationals(values: Vec<BigRational>) -> Self {
        ReebVector {
            components: values.into_iter().map(Scalar::Exact).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn mode(&self) -> Mode {
        self.components[0].mode()
    }

    pub fn components(&self) -> &[Scalar] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Scalar {
        &self.components[i]
    }

    pub fn to_f64s(&self) -> Vec<f64> {
        self.components.iter().map(|c| c.to_f64()).collect()
    }

    pub fn to_mode(&self, mode: Mode) -> Result<ReebVector> {
        match mode {
            Mode::Float => Ok(ReebVector::from_f64s(&self.to_f64s())),
            Mode::Exact => {
                if self.mode() == Mode::Exact {
                    Ok(self.clone())
                } else {
                    Err(Error::IrrationalInput)
                }
            }
        }
    }

    /// Pairing with an integer weight vector.
    pub fn pair(&self, weight: &[i64]) -> Result<Scalar> {
        if weight.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: weight.len(),
            });
        }
        let mut acc = Scalar::zero(self.mode());
        for (c, &w) in self.components.iter().zip(weight) {
            acc = acc.add(&c.mul_int(w))?;
        }
        Ok(acc)
    }

    pub fn scale(&self, factor: &Scalar) -> Result<ReebVector> {
        let components = self
            .components
            .iter()
            .map(|c| c.mul(factor))
            .collect::<Result<Vec<_>>>()?;
        ReebVector::new(components)
    }

    pub fn add_scaled(&self, other: &ReebVector, factor: &Scalar) -> Result<ReebVector> {
        if other.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let components = self
            .components
            .iter()
            .zip(other.components.iter())
            .map(|(a, b)| a.add(&b.mul(factor)?))
            .collect::<Result<Vec<_>>>()?;
        ReebVector::new(components)
    }
}

/// The open Reeb cone: joint positivity of the column functionals.
#[derive(Clone, Debug)]
pub struct ReebCone {
    /// The linear functionals whose joint positivity defines the cone.
    inequalities: Vec<Vec<i64>>,
    /// An exact interior point, when the cone is nonempty.
    sample: Option<Vec<BigRational>>,
}

impl ReebCone {
    pub fn inequalities(&self) -> &[Vec<i64>] {
        &self.inequalities
    }

    pub fn is_empty(&self) -> bool {
        self.sample.is_none()
    }

    /// An exact rational interior point, if one exists.
    pub fn sample_interior(&self) -> Option<ReebVector> {
        self.sample
            .as_ref()
            .map(|s| ReebVector::from_rationals(s.clone()))
    }
}

/// Build the Reeb cone of a weight matrix and decide its nonemptiness by
/// exact linear feasibility.
pub fn build_reeb_cone(weights: &WeightMatrix) -> Result<ReebCone> {
    let inequalities = weights.columns();
    let rational_rows: Vec<Vec<BigRational>> = inequalities
        .iter()
        .map(|row| {
            row.iter()
                .map(|&e| BigRational::from_integer(BigInt::from(e)))
                .collect()
        })
        .collect();
    let sample = strict_feasible_point(&rational_rows, weights.torus_rank());
    Ok(ReebCone {
        inequalities,
        sample,
    })
}

/// True iff every column functional is strictly positive at `xi`.
/// Boundary vectors are rejected.
pub fn is_reeb(weights: &WeightMatrix, xi: &ReebVector) -> Result<bool> {
    if xi.dim() != weights.torus_rank() {
        return Err(Error::DimensionMismatch {
            expected: weights.torus_rank(),
            found: xi.dim(),
        });
    }
    for j in 0..weights.coordinates() {
        if !xi.pair(&weights.column(j))?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rationality of a Reeb vector. EXACT-mode vectors are rational by
/// construction; FLOAT mode is the pathway for irrational vectors, so it
/// reports false.
pub fn is_rational(weights: &WeightMatrix, xi: &ReebVector) -> Result<bool> {
    if xi.dim() != weights.torus_rank() {
        return Err(Error::DimensionMismatch {
            expected: weights.torus_rank(),
            found: xi.dim(),
        });
    }
    Ok(xi.mode() == Mode::Exact)
}

/// Find an exact interior point of `{ x : row . x > 0 for all rows }`, or
/// report emptiness, by Fourier-Motzkin elimination with back-substitution.
fn strict_feasible_point(rows: &[Vec<BigRational>], dim: usize) -> Option<Vec<BigRational>> {
    // levels[k] holds the system over variables 0..=k before eliminating x_k.
    let mut levels: Vec<Vec<Vec<BigRational>>> = Vec::with_capacity(dim);
    let mut system: Vec<Vec<BigRational>> = rows.to_vec();

    for k in (0..dim).rev() {
        // A row that is identically zero encodes the contradiction 0 > 0.
        if system.iter().any(|r| r.iter().all(|c| c.is_zero())) {
            return None;
        }
        levels.push(system.clone());
        if k == 0 {
            break;
        }
        let mut next: Vec<Vec<BigRational>> = Vec::new();
        let mut lowers: Vec<&Vec<BigRational>> = Vec::new();
        let mut uppers: Vec<&Vec<BigRational>> = Vec::new();
        for row in &system {
            if row[k].is_positive() {
                lowers.push(row);
            } else if row[k].is_negative() {
                uppers.push(row);
            } else {
                let mut r = row.clone();
                r.truncate(k);
                next.push(r);
            }
        }
        for lo in &lowers {
            for up in &uppers {
                // Scale so the x_k terms cancel; both inequalities are strict.
                let mut combined = Vec::with_capacity(k);
                for c in 0..k {
                    combined.push(&lo[c] * (-&up[k]) + &up[c] * lo[k].clone());
                }
                next.push(combined);
            }
        }
        system = next;
    }
    levels.reverse(); // levels[k] is the system over variables 0..=k

    // Base: pick x_0 with c * x_0 > 0 for every one-variable constraint.
    let one_var = &levels[0];
    let mut has_pos = false;
    let mut has_neg = false;
    for row in one_var {
        if row[0].is_positive() {
            has_pos = true;
        } else if row[0].is_negative() {
            has_neg = true;
        } else {
            return None; // 0 > 0
        }
    }
    if has_pos && has_neg {
        return None;
    }
    let mut point: Vec<BigRational> = Vec::with_capacity(dim);
    point.push(if has_neg {
        -BigRational::from_integer(BigInt::from(1))
    } else {
        BigRational::from_integer(BigInt::from(1))
    });

    for k in 1..dim {
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        for row in &levels[k] {
            if row[k].is_zero() {
                continue;
            }
            let partial: BigRational = (0..k).map(|c| &row[c] * &point[c]).sum();
            let bound = -partial / row[k].clone();
            if row[k].is_positive() {
                lower = Some(match lower {
                    Some(l) if l >= bound => l,
                    _ => bound,
                });
            } else {
                upper = Some(match upper {
                    Some(u) if u <= bound => u,
                    _ => bound,
                });
            }
        }
        let value = match (lower, upper) {
            (Some(l), Some(u)) => (l + u) / BigRational::from_integer(BigInt::from(2)),
            (Some(l), None) => l + BigRational::from_integer(BigInt::from(1)),
            (None, Some(u)) => u - BigRational::from_integer(BigInt::from(1)),
            (None, None) => BigRational::zero(),
        };
        point.push(value);
    }

    // Re-check the original strict system at the computed point.
    for row in rows {
        let value: BigRational = row.iter().zip(&point).map(|(c, x)| c * x).sum();
        if !value.is_positive() {
            return None;
        }
    }
    Some(point)
}
