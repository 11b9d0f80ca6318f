//! Exact multigraded Hilbert series for the supported ring classes.
//!
//! Every series is stored as a Laurent-polynomial numerator over a product of
//! factors `(1 - z^{d_j})`, one per denominator weight vector. Free rings,
//! complete intersections, monomial-ideal quotients, principal quotients, and
//! Rees central fibers all land in this shape, so the index-character
//! machinery downstream only ever sees one representation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cone::WeightMatrix;
use crate::error::{Error, Result};

/// A Laurent polynomial over `Z` in `s` variables: exponent vector -> coefficient.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one(rank: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; rank], BigInt::one());
        LaurentPoly { terms }
    }

    /// The monomial `z^exponent`.
    pub fn monomial(exponent: Vec<i64>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(exponent, BigInt::one());
        LaurentPoly { terms }
    }

    /// `1 - z^exponent`.
    pub fn one_minus_monomial(exponent: &[i64]) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; exponent.len()], BigInt::one());
        terms.insert(exponent.to_vec(), -BigInt::one());
        LaurentPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Vec<i64>, BigInt)>) -> Self {
        let mut poly = LaurentPoly::zero();
        for (e, c) in terms {
            poly.add_term(e, c);
        }
        poly
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, exponent: Vec<i64>, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exponent: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exponent, ca * cb);
            }
        }
        out
    }

    pub fn mul_monomial(&self, shift: &[i64]) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        LaurentPoly { terms }
    }

    /// Re-embed into a lattice of higher rank, padding exponents with zeros.
    pub fn lift_rank(&self, new_rank: usize) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut lifted = e.clone();
                lifted.resize(new_rank, 0);
                (lifted, c.clone())
            })
            .collect();
        LaurentPoly { terms }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_constant = e.iter().all(|&x| x == 0);
            if !mag.is_one() || is_constant {
                write!(f, "{mag}")?;
                if !is_constant {
                    write!(f, "*")?;
                }
            }
            let mut wrote_var = false;
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                if wrote_var {
                    write!(f, "*")?;
                }
                wrote_var = true;
                write!(f, "z{}", i + 1)?;
                if exp != 1 {
                    write!(f, "^{exp}")?;
                }
            }
        }
        Ok(())
    }
}

/// Exact rational-function form of a multigraded Hilbert series:
/// `numerator / prod_j (1 - z^{d_j})`, with the Krull dimension of the
/// represented ring carried along for pole-order cross-checks.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertSeries {
    pub numerator: LaurentPoly,
    /// Denominator weight vectors `d_j`, one factor `(1 - z^{d_j})` each.
    pub denominators: Vec<Vec<i64>>,
    pub torus_rank: usize,
    /// Krull dimension `n + 1` of the ring.
    pub dimension: usize,
}

impl HilbertSeries {
    pub fn new(
        numerator: LaurentPoly,
        denominators: Vec<Vec<i64>>,
        torus_rank: usize,
        dimension: usize,
    ) -> Result<Self> {
        for (j, d) in denominators.iter().enumerate() {
            if d.len() != torus_rank {
                return Err(Error::validation(
                    "denominators",
                    format!("denominator {j} has rank {} != {torus_rank}", d.len()),
                ));
            }
        }
        Ok(HilbertSeries {
            numerator,
            denominators,
            torus_rank,
            dimension,
        })
    }
}

/// Declarative ring description used by the parser and the stability scans.
#[derive(Clone, Debug, PartialEq)]
pub struct RingSpec {
    pub weights: WeightMatrix,
    pub relations: Relations,
    pub declared_dimension: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Relations {
    Free,
    /// Weight vectors `beta_i` of a regular sequence of relations.
    /// Regularity is a caller obligation; the oracle's nonnegativity check is
    /// the runtime safety net.
    CompleteIntersection(Vec<Vec<i64>>),
    /// Minimal monomial generators, as exponent vectors.
    MonomialIdeal(Vec<Vec<u32>>),
    /// Quotient by one homogeneous nonzerodivisor of the given weight.
    Principal(Vec<i64>),
    /// A precomputed numerator supplied directly.
    ExplicitNumerator(LaurentPoly),
}

impl RingSpec {
    pub fn new(
        weights: WeightMatrix,
        relations: Relations,
        declared_dimension: usize,
    ) -> Result<Self> {
        let coordinates = weights.coordinates();
        match &relations {
            Relations::Free => {
                if declared_dimension != coordinates {
                    return Err(Error::validation(
                        "dimension",
                        format!("free ring on {coordinates} coordinates has dimension {coordinates}, not {declared_dimension}"),
                    ));
                }
            }
            Relations::CompleteIntersection(betas) => {
                if betas.len() >= coordinates {
                    return Err(Error::TooManyRelations {
                        relations: betas.len(),
                        coordinates,
                    });
                }
                if declared_dimension != coordinates - betas.len() {
                    return Err(Error::validation(
                        "dimension",
                        format!(
                            "complete intersection of {} relations in {coordinates} coordinates has dimension {}, not {declared_dimension}",
                            betas.len(),
                            coordinates - betas.len()
                        ),
                    ));
                }
                for (i, beta) in betas.iter().enumerate() {
                    if beta.len() != weights.torus_rank() {
                        return Err(Error::validation(
                            "relations",
                            format!(
                                "relation weight {i} has rank {} != {}",
                                beta.len(),
                                weights.torus_rank()
                            ),
                        ));
                    }
                }
            }
            Relations::MonomialIdeal(gens) => {
                check_minimal(gens)?;
                for (i, g) in gens.iter().enumerate() {
                    if g.len() != coordinates {
                        return Err(Error::validation(
                            "relations",
                            format!(
                                "generator {i} has {} exponents, expected {coordinates}",
                                g.len()
                            ),
                        ));
                    }
                }
            }
            Relations::Principal(alpha) => {
                if alpha.len() != weights.torus_rank() {
                    return Err(Error::validation(
                        "relations",
                        format!(
                            "principal weight has rank {} != {}",
                            alpha.len(),
                            weights.torus_rank()
                        ),
                    ));
                }
            }
            Relations::ExplicitNumerator(_) => {}
        }
        Ok(RingSpec {
            weights,
            relations,
            declared_dimension,
        })
    }

    /// The Hilbert series of the described ring.
    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        match &self.relations {
            Relations::Free => hilbert_free(&self.weights),
            Relations::CompleteIntersection(betas) => hilbert_ci(&self.weights, betas),
            Relations::MonomialIdeal(gens) => {
                let series = hilbert_monomial(&self.weights, gens)?;
                if series.dimension != self.declared_dimension {
                    return Err(Error::validation(
                        "dimension",
                        format!(
                            "monomial quotient has dimension {}, model declares {}",
                            series.dimension, self.declared_dimension
                        ),
                    ));
                }
                Ok(series)
            }
            Relations::Principal(alpha) => {
                let free = hilbert_free(&self.weights)?;
                quotient_principal(&free, alpha)
            }
            Relations::ExplicitNumerator(numerator) => HilbertSeries::new(
                numerator.clone(),
                self.weights.columns(),
                self.weights.torus_rank(),
                self.declared_dimension,
            ),
        }
    }
}

/// Series of the free polynomial ring: numerator 1 over the column factors.
pub fn hilbert_free(weights: &WeightMatrix) -> Result<HilbertSeries> {
    HilbertSeries::new(
        LaurentPoly::one(weights.torus_rank()),
        weights.columns(),
        weights.torus_rank(),
        weights.coordinates(),
    )
}

/// Series of a complete intersection cut out by relations of weights
/// `betas`, via the degree-shifted Koszul resolution: the numerator is
/// `prod_j (1 - z^{beta_j})`.
pub fn hilbert_ci(weights: &WeightMatrix, betas: &[Vec<i64>]) -> Result<HilbertSeries> {
    if betas.len() >= weights.coordinates() {
        return Err(Error::TooManyRelations {
            relations: betas.len(),
            coordinates: weights.coordinates(),
        });
    }
    let mut numerator = LaurentPoly::one(weights.torus_rank());
    for beta in betas {
        if beta.len() != weights.torus_rank() {
            return Err(Error::DimensionMismatch {
                expected: weights.torus_rank(),
                found: beta.len(),
            });
        }
        numerator = numerator.mul(&LaurentPoly::one_minus_monomial(beta));
    }
    HilbertSeries::new(
        numerator,
        weights.columns(),
        weights.torus_rank(),
        weights.coordinates() - betas.len(),
    )
}

/// Quotient by one homogeneous nonzerodivisor of weight `alpha_f`:
/// multiplies the numerator by `(1 - z^{alpha_f})` and drops the dimension.
/// That `f` is a nonzerodivisor is a caller obligation.
pub fn quotient_principal(series: &HilbertSeries, alpha_f: &[i64]) -> Result<HilbertSeries> {
    if alpha_f.len() != series.torus_rank {
        return Err(Error::DimensionMismatch {
            expected: series.torus_rank,
            found: alpha_f.len(),
        });
    }
    HilbertSeries::new(
        series
            .numerator
            .mul(&LaurentPoly::one_minus_monomial(alpha_f)),
        series.denominators.clone(),
        series.torus_rank,
        series.dimension.checked_sub(1).ok_or_else(|| {
            Error::invalid("cannot quotient a zero-dimensional ring by a nonzerodivisor")
        })?,
    )
}

/// The Rees central fiber of a principal ideal: `(R/f) tensor C[w]`, graded
/// over the extended torus, with the new coordinate `w` of weight
/// `(alpha_f, 1)`. The distinguished last coordinate carries the induced
/// one-parameter action.
#[derive(Clone, Debug)]
pub struct ReesCentralFiber {
    pub series: HilbertSeries,
    /// Direction of the induced action in the extended lattice: (0,...,0,1).
    pub eta: Vec<i64>,
}

/// Build the Rees central fiber from the series of `R/(f)` (which already
/// carries the `(1 - z^{alpha_f})` numerator factor).
pub fn rees_central_fiber(
    series_mod_f: &HilbertSeries,
    alpha_f: &[i64],
) -> Result<ReesCentralFiber> {
    if alpha_f.len() != series_mod_f.torus_rank {
        return Err(Error::DimensionMismatch {
            expected: series_mod_f.torus_rank,
            found: alpha_f.len(),
        });
    }
    let rank = series_mod_f.torus_rank + 1;
    let mut denominators: Vec<Vec<i64>> = series_mod_f
        .denominators
        .iter()
        .map(|d| {
            let mut lifted = d.clone();
            lifted.push(0);
            lifted
        })
        .collect();
    let mut w_weight = alpha_f.to_vec();
    w_weight.push(1);
    denominators.push(w_weight);

    let series = HilbertSeries::new(
        series_mod_f.numerator.lift_rank(rank),
        denominators,
        rank,
        series_mod_f.dimension + 1,
    )?;
    let mut eta = vec![0i64; rank];
    eta[rank - 1] = 1;
    Ok(ReesCentralFiber { series, eta })
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn check_minimal(gens: &[Vec<u32>]) -> Result<()> {
    for (i, a) in gens.iter().enumerate() {
        if a.iter().all(|&e| e == 0) {
            return Err(Error::validation(
                "relations",
                format!("generator {i} is the unit monomial"),
            ));
        }
        for (j, b) in gens.iter().enumerate() {
            if i != j && divides(a, b) {
                return Err(Error::NonMinimalGenerators {
                    divisor: i,
                    multiple: j,
                });
            }
        }
    }
    Ok(())
}

/// Series of `R/I` for a monomial ideal `I` with minimal generators `gens`,
/// by pivot-splitting recursion on the exact sequence
/// `0 -> R/(I:x) (shifted) -> R/I -> R/(I + (x)) -> 0`.
pub fn hilbert_monomial(weights: &WeightMatrix, gens: &[Vec<u32>]) -> Result<HilbertSeries> {
    check_minimal(gens)?;
    for (i, g) in gens.iter().enumerate() {
        if g.len() != weights.coordinates() {
            return Err(Error::validation(
                "relations",
                format!(
                    "generator {i} has {} exponents, expected {}",
                    g.len(),
                    weights.coordinates()
                ),
            ));
        }
    }
    let numerator = monomial_numerator(weights, gens);
    let dimension = monomial_quotient_dimension(weights.coordinates(), gens);
    HilbertSeries::new(
        numerator,
        weights.columns(),
        weights.torus_rank(),
        dimension,
    )
}

/// Numerator of `R/I` over the full column-factor denominator.
fn monomial_numerator(weights: &WeightMatrix, gens: &[Vec<u32>]) -> LaurentPoly {
    let rank = weights.torus_rank();
    if gens.is_empty() {
        return LaurentPoly::one(rank);
    }
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return LaurentPoly::zero();
    }
    let n_vars = weights.coordinates();

    // A generator that is a bare variable kills that variable outright; by
    // minimality no other generator can involve it.
    if let Some(pos) = gens.iter().position(|g| g.iter().sum::<u32>() == 1) {
        let var = gens[pos].iter().position(|&e| e == 1).unwrap();
        let rest: Vec<Vec<u32>> = gens
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != pos)
            .map(|(_, g)| g.clone())
            .collect();
        let factor = LaurentPoly::one_minus_monomial(&weights.column(var));
        return factor.mul(&monomial_numerator(weights, &rest));
    }

    // Pivot: the variable hitting the most generators, ties to lowest index.
    let mut counts = vec![0usize; n_vars];
    for g in gens {
        for (i, &e) in g.iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let pivot = counts
        .iter()
        .enumerate()
        .max_by(|(ia, ca), (ib, cb)| ca.cmp(cb).then(ib.cmp(ia)))
        .map(|(i, _)| i)
        .unwrap();

    // I : x_pivot, minimalized.
    let mut colon: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            if h[pivot] > 0 {
                h[pivot] -= 1;
            }
            h
        })
        .collect();
    colon = minimalize(colon);

    // I + (x_pivot): the pivot variable plus the generators avoiding it.
    let mut sum: Vec<Vec<u32>> = gens.iter().filter(|g| g[pivot] == 0).cloned().collect();
    let mut pivot_gen = vec![0u32; n_vars];
    pivot_gen[pivot] = 1;
    sum.push(pivot_gen);

    let shifted = monomial_numerator(weights, &colon).mul_monomial(&weights.column(pivot));
    shifted.add(&monomial_numerator(weights, &sum))
}

fn minimalize(mut gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    gens.sort();
    gens.dedup();
    let mut keep = vec![true; gens.len()];
    for i in 0..gens.len() {
        for j in 0..gens.len() {
            if i != j && keep[i] && keep[j] && divides(&gens[i], &gens[j]) {
                keep[j] = false;
            }
        }
    }
    gens.into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(g, _)| g)
        .collect()
}

/// Krull dimension of `R/I` for a monomial ideal: the largest coordinate
/// subspace avoiding every generator's support, i.e. `N` minus a minimum
/// hitting set of the supports.
fn monomial_quotient_dimension(n_vars: usize, gens: &[Vec<u32>]) -> usize {
    if gens.is_empty() {
        return n_vars;
    }
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return 0; // the unit ideal
    }
    let supports: Vec<u64> = gens
        .iter()
        .map(|g| {
            g.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u64, |m, (i, _)| m | (1 << i))
        })
        .collect();
    for size in 1..=n_vars {
        if let Some(()) = find_hitting_set(&supports, n_vars, size, 0, 0) {
            return n_vars - size;
        }
    }
    0
}

fn find_hitting_set(
    supports: &[u64],
    n_vars: usize,
    size: usize,
    chosen: u64,
    start: usize,
) -> Option<()> {
    if supports.iter().all(|s| s & chosen != 0) {
        return Some(());
    }
    if size == 0 {
        return None;
    }
    for v in start..n_vars {
        if chosen & (1 << v) == 0
            && find_hitting_set(supports, n_vars, size - 1, chosen | (1 << v), v + 1).is_some()
        {
            return Some(());
        }
    }
    None
}
