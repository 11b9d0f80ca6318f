//! Volume minimization over the Gorenstein cross-section.
//!
//! The volume coefficient `a0` is strictly convex on the affine slice
//! `ell_Theta(xi) = n + 1`, so a damped projected-Newton iteration along an
//! integer tangent basis of the slice finds the unique minimizer. Gradients
//! and Hessians come from the same directional-jet expansions that power the
//! weight characters: `D_eta a0` from first-order slots, `D^2 a0` from
//! second-order slots, mixed entries by polarization
//! `D_u D_v = (D^2_{u+v} - D^2_{u-v}) / 4`.
//!
//! The iteration runs in FLOAT mode even for exact inputs (Newton steps leave
//! the rationals). At the reported minimizer the product-configuration Futaki
//! invariants along the tangent basis are evaluated twice: in floats at the
//! minimizer itself, and in EXACT mode at a nearby small-denominator rational
//! point placed back on the slice.

use crate::cone::ReebVector;
use crate::error::{Error, Result};
use crate::hilbert::HilbertSeries;
use crate::laurent::{expand_character, extract_coefficients};
use crate::oracle::rationalize;
use crate::scalar::{factorial_scalar, Mode, Scalar};
use crate::stability::{futaki_product, GorensteinData};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Default projected-gradient tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default iteration cap.
pub const DEFAULT_MAX_ITER: usize = 100;
/// Armijo sufficient-decrease constant.
const ARMIJO: f64 = 1e-4;
/// Denominator bound for the exact certificate point.
const CERTIFICATE_DENOM_BOUND: u64 = 1_000_000;

/// Outcome of a volume minimization.
#[derive(Clone, Debug)]
pub struct VolMinResult {
    pub minimizer: ReebVector,
    /// `a0` at the minimizer.
    pub volume: Scalar,
    /// Euclidean norm of the tangent-basis gradient of `a0`.
    pub gradient_norm: f64,
    pub iterations: usize,
    /// Product-configuration Futaki values along each tangent basis
    /// direction, in float mode at the minimizer.
    pub certificates: Vec<Scalar>,
    /// Small-denominator rational point on the cross-section near the
    /// minimizer.
    pub exact_point: ReebVector,
    /// The same certificates re-evaluated in EXACT mode at `exact_point`.
    pub exact_certificates: Vec<Scalar>,
    /// Integer tangent basis of the cross-section used throughout.
    pub tangent_basis: Vec<Vec<i64>>,
}

/// Integer kernel basis of a nonzero functional, by gcd column elimination.
/// The returned vectors span `{ v : theta . v = 0 }` over the rationals and
/// generate it over the integers.
pub fn tangent_basis(theta: &[i64]) -> Result<Vec<Vec<i64>>> {
    let s = theta.len();
    if theta.iter().all(|&t| t == 0) {
        return Err(Error::validation(
            "theta_weight",
            "theta functional is zero",
        ));
    }
    // Columns of the identity, mixed by unimodular operations until only one
    // has a nonzero pairing with theta.
    let mut values: Vec<i64> = theta.to_vec();
    let mut cols: Vec<Vec<i64>> = (0..s)
        .map(|i| (0..s).map(|j| i64::from(i == j)).collect())
        .collect();
    loop {
        let mut nonzero: Vec<usize> = (0..s).filter(|&i| values[i] != 0).collect();
        if nonzero.len() <= 1 {
            break;
        }
        nonzero.sort_by_key(|&i| values[i].unsigned_abs());
        let j = nonzero[0];
        let i = nonzero[1];
        let q = values[i] / values[j];
        values[i] -= q * values[j];
        let pivot_col = cols[j].clone();
        for (entry, pivot) in cols[i].iter_mut().zip(&pivot_col) {
            *entry -= q * pivot;
        }
    }
    Ok((0..s)
        .filter(|&i| values[i] == 0)
        .map(|i| cols[i].clone())
        .collect())
}

fn pair_f64(row: &[i64], point: &[f64]) -> f64 {
    row.iter().zip(point).map(|(&w, x)| w as f64 * x).sum()
}

fn interior(series: &HilbertSeries, point: &[f64]) -> bool {
    series.denominators.iter().all(|d| pair_f64(d, point) > 0.0)
}

/// `a0` at a float point.
fn volume_at(series: &HilbertSeries, point: &[f64]) -> Result<f64> {
    let xi = ReebVector::from_f64s(point);
    let coeffs = extract_coefficients(series, &xi, None)?;
    Ok(coeffs.a0.to_f64())
}

/// `(a0, D_eta a0, D^2_eta a0)` at a float point along an integer direction.
fn volume_jet(series: &HilbertSeries, point: &[f64], direction: &[i64]) -> Result<(f64, f64, f64)> {
    let xi = ReebVector::from_f64s(point);
    let eta = ReebVector::from_integers(direction, Mode::Float);
    let n = series.dimension - 1;
    let jet = expand_character(series, &xi, Some(&eta), 2)?;
    let lead = jet.coeff_rel(0).expect("expansion depth 2");
    let n_fact = factorial_scalar(n, Mode::Float).to_f64();
    Ok((
        lead.v.to_f64() / n_fact,
        lead.dv.to_f64() / n_fact,
        lead.d2v.to_f64() / n_fact,
    ))
}

fn add_direction(v: &[i64], w: &[i64], sign: i64) -> Vec<i64> {
    v.iter().zip(w).map(|(a, b)| a + sign * b).collect()
}

/// Solve a small symmetric positive-definite system by LDL^T. Errors when a
/// pivot is not positive.
fn solve_spd(matrix: &[Vec<f64>], rhs: &[f64], iteration: usize) -> Result<Vec<f64>> {
    let n = rhs.len();
    let mut l = vec![vec![0.0f64; n]; n];
    let mut d = vec![0.0f64; n];
    for j in 0..n {
        let mut dj = matrix[j][j];
        for k in 0..j {
            dj -= l[j][k] * l[j][k] * d[k];
        }
        if dj <= 0.0 || !dj.is_finite() {
            return Err(Error::HessianNotPd { iteration });
        }
        d[j] = dj;
        l[j][j] = 1.0;
        for i in j + 1..n {
            let mut v = matrix[i][j];
            for k in 0..j {
                v -= l[i][k] * l[j][k] * d[k];
            }
            l[i][j] = v / dj;
        }
    }
    // Forward, diagonal, backward substitution.
    let mut y = rhs.to_vec();
    for i in 0..n {
        for k in 0..i {
            y[i] -= l[i][k] * y[k];
        }
    }
    for i in 0..n {
        y[i] /= d[i];
    }
    for i in (0..n).rev() {
        for k in i + 1..n {
            y[i] -= l[k][i] * y[k];
        }
    }
    Ok(y)
}

/// Tangent gradient and Hessian of `a0` at a point, along the given integer
/// basis of the cross-section.
fn tangent_derivatives(
    series: &HilbertSeries,
    point: &[f64],
    basis: &[Vec<i64>],
) -> Result<(f64, Vec<f64>, Vec<Vec<f64>>)> {
    let m = basis.len();
    let mut gradient = vec![0.0f64; m];
    let mut hessian = vec![vec![0.0f64; m]; m];
    let mut value = 0.0f64;
    for (b, eta) in basis.iter().enumerate() {
        let (a0, d1, d2) = volume_jet(series, point, eta)?;
        value = a0;
        gradient[b] = d1;
        hessian[b][b] = d2;
    }
    for b in 0..m {
        for c in b + 1..m {
            let plus = add_direction(&basis[b], &basis[c], 1);
            let minus = add_direction(&basis[b], &basis[c], -1);
            let (_, _, d2_plus) = volume_jet(series, point, &plus)?;
            let (_, _, d2_minus) = volume_jet(series, point, &minus)?;
            let mixed = 0.25 * (d2_plus - d2_minus);
            hessian[b][c] = mixed;
            hessian[c][b] = mixed;
        }
    }
    if m == 0 {
        value = volume_at(series, point)?;
    }
    Ok((value, gradient, hessian))
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Minimize `a0` over the cross-section `ell_Theta(xi) = level` by damped
/// projected Newton from `xi0`. The start must lie strictly inside the cone
/// and on the cross-section.
pub fn minimize_volume(
    series: &HilbertSeries,
    gorenstein: &GorensteinData,
    xi0: &ReebVector,
    tol: f64,
    max_iter: usize,
) -> Result<VolMinResult> {
    if tol <= 0.0 {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let point0 = xi0.to_f64s();
    if !interior(series, &point0) {
        return Err(Error::InfeasibleStart {
            reason: "start is not strictly inside the Reeb cone".into(),
        });
    }
    let theta_value = pair_f64(&gorenstein.theta, &point0);
    if (theta_value - gorenstein.level as f64).abs()
        > 1e-9 * gorenstein.level.unsigned_abs().max(1) as f64
    {
        return Err(Error::InfeasibleStart {
            reason: format!(
                "start has theta weight {theta_value}, cross-section level is {}",
                gorenstein.level
            ),
        });
    }

    let basis = tangent_basis(&gorenstein.theta)?;
    let mut point = point0;
    let mut iterations = 0usize;
    let mut gradient_norm;

    loop {
        let (value, gradient, hessian) = tangent_derivatives(series, &point, &basis)?;
        gradient_norm = norm2(&gradient);
        if gradient_norm < tol || basis.is_empty() {
            break;
        }
        if iterations >= max_iter {
            return Err(Error::NotConverged {
                iterations,
                gradient_norm,
                best: point,
            });
        }

        let step = solve_spd(
            &hessian,
            &gradient.iter().map(|g| -g).collect::<Vec<_>>(),
            iterations,
        )?;
        let descent: f64 = gradient.iter().zip(&step).map(|(g, s)| g * s).sum();
        // Newton direction on a convex model always descends; a nonnegative
        // slope here means the Hessian solve degenerated.
        if descent >= 0.0 {
            return Err(Error::HessianNotPd {
                iteration: iterations,
            });
        }

        let full_step: Vec<f64> = (0..point.len())
            .map(|r| {
                step.iter()
                    .zip(&basis)
                    .map(|(s, eta)| s * eta[r] as f64)
                    .sum()
            })
            .collect();

        // Backtracking halving: stay strictly interior and require Armijo
        // decrease.
        let mut damping = 1.0f64;
        let mut accepted = None;
        for _ in 0..60 {
            let candidate: Vec<f64> = point
                .iter()
                .zip(&full_step)
                .map(|(x, s)| x + damping * s)
                .collect();
            if interior(series, &candidate) {
                let new_value = volume_at(series, &candidate)?;
                if new_value <= value + ARMIJO * damping * descent {
                    accepted = Some(candidate);
                    break;
                }
            }
            damping *= 0.5;
        }
        match accepted {
            Some(candidate) => point = candidate,
            None => {
                return Err(Error::NotConverged {
                    iterations,
                    gradient_norm,
                    best: point,
                });
            }
        }
        iterations += 1;
    }

    let minimizer = ReebVector::from_f64s(&point);
    let volume = extract_coefficients(series, &minimizer, None)?.a0;

    // Float certificates at the minimizer.
    let mut certificates = Vec::with_capacity(basis.len());
    for eta in &basis {
        let direction = ReebVector::from_integers(eta, Mode::Float);
        certificates.push(futaki_product(series, gorenstein, &minimizer, &direction)?);
    }

    // Exact certificates at a nearby rational cross-section point.
    let exact_point = snap_to_cross_section(&point, gorenstein, series)?;
    let mut exact_certificates = Vec::with_capacity(basis.len());
    for eta in &basis {
        let direction = ReebVector::from_integers(eta, Mode::Exact);
        exact_certificates.push(futaki_product(
            series,
            gorenstein,
            &exact_point,
            &direction,
        )?);
    }

    Ok(VolMinResult {
        minimizer,
        volume,
        gradient_norm,
        iterations,
        certificates,
        exact_point,
        exact_certificates,
        tangent_basis: basis,
    })
}

/// Round a float point to small-denominator rationals and restore the
/// cross-section constraint exactly by re-solving the component with the
/// largest theta coefficient.
fn snap_to_cross_section(
    point: &[f64],
    gorenstein: &GorensteinData,
    series: &HilbertSeries,
) -> Result<ReebVector> {
    let mut components: Vec<BigRational> = point
        .iter()
        .map(|&x| rationalize(x, CERTIFICATE_DENOM_BOUND))
        .collect();
    let pivot = gorenstein
        .theta
        .iter()
        .enumerate()
        .max_by_key(|(_, t)| t.unsigned_abs())
        .map(|(i, _)| i)
        .expect("theta is nonzero");
    let mut rest = BigRational::zero();
    for (i, c) in components.iter().enumerate() {
        if i != pivot {
            rest += c * BigRational::from_integer(BigInt::from(gorenstein.theta[i]));
        }
    }
    let level = BigRational::from_integer(BigInt::from(gorenstein.level));
    components[pivot] =
        (level - rest) / BigRational::from_integer(BigInt::from(gorenstein.theta[pivot]));
    let snapped = ReebVector::from_rationals(components);
    for (j, d) in series.denominators.iter().enumerate() {
        if !snapped.pair(d)?.is_positive() {
            return Err(Error::TooCloseToBoundary { index: j });
        }
    }
    Ok(snapped)
}

/// Normalized volume `a0(xi) * n!` relative to the flat model `C^{n+1}` with
/// its standard Reeb vector.
pub fn volume_ratio(series: &HilbertSeries, xi: &ReebVector, n: usize) -> Result<Scalar> {
    if n + 1 != series.dimension {
        return Err(Error::DimensionMismatch {
            expected: series.dimension,
            found: n + 1,
        });
    }
    let coeffs = extract_coefficients(series, xi, None)?;
    coeffs.a0.mul(&factorial_scalar(n, xi.mode()))
}
