//! Independent verification paths.
//!
//! Everything here checks the expansion engine from the outside: power-series
//! coefficient extraction by the division recurrence, partial sums of the
//! defining character with an explicit tail bound, central finite differences
//! against the jet derivatives, brute-force standard-monomial counts, and
//! continued-fraction rationalization of float Reeb vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cone::{ReebVector, WeightMatrix};
use crate::error::{Error, Result};
use crate::hilbert::HilbertSeries;
use crate::laurent::extract_coefficients;
use crate::scalar::{Mode, Scalar};

/// Single-graded expansion of a Hilbert series along a rational Reeb vector.
#[derive(Clone, Debug)]
pub struct SeriesExpansion {
    /// `xi` was scaled by this factor to make every weight a positive integer.
    pub scale: BigInt,
    /// `coeffs[m]` is the dimension of the degree-`m` piece in the scaled grading.
    pub coeffs: Vec<BigInt>,
}

/// Expand `H` as a power series in the grading `m = scale * <w, xi>`,
/// by exact polynomial division: seed the numerator, then apply
/// `c_m += c_{m - w}` once per denominator factor.
pub fn series_coefficients(
    series: &HilbertSeries,
    xi: &ReebVector,
    max_degree: usize,
) -> Result<SeriesExpansion> {
    if xi.mode() != Mode::Exact {
        return Err(Error::IrrationalInput);
    }
    if xi.dim() != series.torus_rank {
        return Err(Error::DimensionMismatch {
            expected: series.torus_rank,
            found: xi.dim(),
        });
    }
    let pair_rational = |weight: &[i64]| -> BigRational {
        weight
            .iter()
            .zip(xi.components())
            .map(|(&w, c)| c.as_exact().unwrap() * BigRational::from_integer(BigInt::from(w)))
            .sum()
    };

    let mut scale = BigInt::one();
    let mut pairings: Vec<BigRational> = Vec::new();
    for d in &series.denominators {
        let p = pair_rational(d);
        scale = scale.lcm(p.denom());
        pairings.push(p);
    }
    let mut numerator_degrees: Vec<(BigRational, BigInt)> = Vec::new();
    for (e, c) in series.numerator.terms() {
        let p = pair_rational(e);
        scale = scale.lcm(p.denom());
        numerator_degrees.push((p, c.clone()));
    }

    let scale_r = BigRational::from_integer(scale.clone());
    let mut coeffs = vec![BigInt::zero(); max_degree + 1];
    for (degree, c) in numerator_degrees {
        let scaled = degree * &scale_r;
        debug_assert!(scaled.is_integer());
        let m = scaled.to_integer();
        if m.is_negative() {
            return Err(Error::validation(
                "numerator",
                format!("numerator exponent specializes to negative degree {m}"),
            ));
        }
        if let Some(m) = m.to_usize() {
            if m <= max_degree {
                coeffs[m] += c;
            }
        }
    }
    for (j, p) in pairings.iter().enumerate() {
        let scaled = p * &scale_r;
        debug_assert!(scaled.is_integer());
        let w = scaled.to_integer();
        if !w.is_positive() {
            return Err(Error::NotInReebCone { index: j });
        }
        let w = w
            .to_usize()
            .ok_or_else(|| Error::invalid("denominator weight overflows usize"))?;
        if w == 0 {
            return Err(Error::ZeroWeight);
        }
        for m in w..=max_degree {
            let prev = coeffs[m - w].clone();
            coeffs[m] += prev;
        }
    }
    Ok(SeriesExpansion { scale, coeffs })
}

/// Count monomials outside a monomial ideal, bucketed by scaled degree.
/// Brute-force enumeration; the independent oracle for `hilbert_monomial`.
pub fn standard_monomial_counts(
    weights: &WeightMatrix,
    gens: &[Vec<u32>],
    xi: &ReebVector,
    max_degree: usize,
) -> Result<SeriesExpansion> {
    if xi.mode() != Mode::Exact {
        return Err(Error::IrrationalInput);
    }
    let n_vars = weights.coordinates();
    let mut scale = BigInt::one();
    let mut degrees: Vec<BigRational> = Vec::new();
    for j in 0..n_vars {
        let p: BigRational = weights
            .column(j)
            .iter()
            .zip(xi.components())
            .map(|(&w, c)| c.as_exact().unwrap() * BigRational::from_integer(BigInt::from(w)))
            .sum();
        if !p.is_positive() {
            return Err(Error::NotInReebCone { index: j });
        }
        scale = scale.lcm(p.denom());
        degrees.push(p);
    }
    let scale_r = BigRational::from_integer(scale.clone());
    let int_degrees: Vec<usize> = degrees
        .iter()
        .map(|p| (p * &scale_r).to_integer().to_usize().unwrap())
        .collect();

    let mut coeffs = vec![BigInt::zero(); max_degree + 1];
    let mut exponents = vec![0u32; n_vars];
    count_standard(
        &mut exponents,
        0,
        0,
        &int_degrees,
        gens,
        max_degree,
        &mut coeffs,
    );
    Ok(SeriesExpansion { scale, coeffs })
}

fn count_standard(
    exponents: &mut Vec<u32>,
    var: usize,
    degree: usize,
    int_degrees: &[usize],
    gens: &[Vec<u32>],
    max_degree: usize,
    coeffs: &mut [BigInt],
) {
    if var == exponents.len() {
        let standard = !gens
            .iter()
            .any(|g| g.iter().zip(exponents.iter()).all(|(a, b)| a <= b));
        if standard {
            coeffs[degree] += 1;
        }
        return;
    }
    let step = int_degrees[var];
    let mut e = 0u32;
    let mut d = degree;
    while d <= max_degree {
        exponents[var] = e;
        count_standard(exponents, var + 1, d, int_degrees, gens, max_degree, coeffs);
        e += 1;
        d += step;
    }
    exponents[var] = 0;
}

/// Partial sum of the index character with a rigorous tail bound. The bound
/// covers the dropped tail of the series plus a floor for the accumulated
/// float roundoff of the summation itself.
#[derive(Clone, Debug)]
pub struct PartialSum {
    pub value: f64,
    pub tail_bound: f64,
    pub terms_used: usize,
}

/// Evaluate `sum_{m <= D} dim H_m e^{-t m / scale}` and bound the tail using
/// the box count `dim H_m <= (m+1)^N` of the free ambient ring, which
/// dominates every quotient.
pub fn partial_sum_character(
    series: &HilbertSeries,
    xi: &ReebVector,
    t: &Scalar,
    max_degree: usize,
) -> Result<PartialSum> {
    if !t.is_positive() {
        return Err(Error::NonpositiveT);
    }
    let exact_xi = match xi.mode() {
        Mode::Exact => xi.clone(),
        Mode::Float => rational_approx_for(xi, &series.denominators, 1_000_000)?,
    };
    let expansion = series_coefficients(series, &exact_xi, max_degree)?;
    let tau = t.to_f64() / expansion.scale.to_f64().unwrap();
    let mut value = 0.0f64;
    for (m, c) in expansion.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        value += c.to_f64().unwrap() * (-tau * m as f64).exp();
    }
    let n_box = series.denominators.len() as f64;
    let roundoff = f64::EPSILON * (max_degree as f64 + 4.0) * value.abs();
    let tail_bound = box_tail_bound(max_degree, n_box, tau) + roundoff;
    Ok(PartialSum {
        value,
        tail_bound,
        terms_used: max_degree + 1,
    })
}

/// Upper bound for `sum_{m > D} (m+1)^N e^{-tau m}` via
/// `(m+1) <= (D+2)(j+1)` with `m = D + j`.
fn box_tail_bound(max_degree: usize, n: f64, tau: f64) -> f64 {
    let d = max_degree as f64;
    let prefactor = (-tau * d).exp() * (d + 2.0).powf(n);
    // s = sum_{j >= 1} (j+1)^N e^{-tau j}, summed until the geometric
    // majorant of the remainder is negligible.
    let mut s = 0.0f64;
    let mut j = 1.0f64;
    loop {
        let term = (j + 1.0).powf(n) * (-tau * j).exp();
        s += term;
        let ratio = ((j + 2.0) / (j + 1.0)).powf(n) * (-tau).exp();
        if ratio < 1.0 {
            let remainder = term * ratio / (1.0 - ratio);
            if remainder <= 1e-12 * s || remainder == 0.0 {
                s += remainder;
                break;
            }
        }
        j += 1.0;
        if j > 1e7 {
            return f64::INFINITY;
        }
    }
    prefactor * s
}

/// Smallest degree at which the tail bound drops below
/// `target_rel x |partial sum|`, scanned by doubling.
pub fn auto_degree(
    series: &HilbertSeries,
    xi: &ReebVector,
    t: &Scalar,
    target_rel: f64,
) -> Result<usize> {
    let mut degree = 32usize;
    loop {
        let partial = partial_sum_character(series, xi, t, degree)?;
        if partial.tail_bound <= target_rel * partial.value.abs().max(1.0) {
            return Ok(degree);
        }
        degree *= 2;
        if degree > 1 << 22 {
            return Ok(degree);
        }
    }
}

/// Evaluate the rational function `H(e^{-t w})` directly in floats.
pub fn evaluate_character_directly(series: &HilbertSeries, xi: &ReebVector, t: f64) -> Result<f64> {
    let xs = xi.to_f64s();
    let pair = |weight: &[i64]| -> f64 {
        weight
            .iter()
            .zip(&xs)
            .map(|(&w, x)| w as f64 * x)
            .sum::<f64>()
    };
    let mut numerator = 0.0f64;
    for (e, c) in series.numerator.terms() {
        numerator += c.to_f64().unwrap() * (-t * pair(e)).exp();
    }
    let mut denominator = 1.0f64;
    for d in &series.denominators {
        denominator *= 1.0 - (-t * pair(d)).exp();
    }
    if denominator == 0.0 {
        return Err(Error::ZeroWeight);
    }
    Ok(numerator / denominator)
}

/// Residuals of the equivariant identities against central differences.
#[derive(Clone, Debug)]
pub struct FiniteDiffReport {
    /// `|(a0(xi+h eta) - a0(xi-h eta))/2h + (n+1) b0|`
    pub residual_b0: f64,
    /// `|(a1(xi+h eta) - a1(xi-h eta))/2h + n b1|`
    pub residual_b1: f64,
    /// `|(a0(xi+h) - 2a0(xi) + a0(xi-h))/h^2 - (n+2)(n+1) c0|`
    pub residual_c0: f64,
    /// Central-difference estimate of `D_eta a0` itself.
    pub d_eta_a0: f64,
}

/// Check `b0, b1, c0` from the jet expansion against central finite
/// differences of `a0, a1` at step `h`. Runs in float mode.
pub fn finite_diff_check(
    series: &HilbertSeries,
    xi: &ReebVector,
    eta: &ReebVector,
    h: f64,
) -> Result<FiniteDiffReport> {
    let xi = xi.to_mode(Mode::Float)?;
    let eta = eta.to_mode(Mode::Float)?;
    let step = Scalar::float(h);
    let plus = xi.add_scaled(&eta, &step)?;
    let minus = xi.add_scaled(&eta, &step.neg())?;
    for shifted in [&plus, &minus] {
        for (j, d) in series.denominators.iter().enumerate() {
            if !shifted.pair(d)?.is_positive() {
                let _ = j;
                return Err(Error::StepLeavesCone);
            }
        }
    }

    let center = extract_coefficients(series, &xi, Some(&eta))?;
    let at_plus = extract_coefficients(series, &plus, None)?;
    let at_minus = extract_coefficients(series, &minus, None)?;

    let n = center.n as f64;
    let eta_part = center.eta.as_ref().expect("direction supplied");
    let a0p = at_plus.a0.to_f64();
    let a0m = at_minus.a0.to_f64();
    let a0c = center.a0.to_f64();
    let a1p = at_plus.a1.to_f64();
    let a1m = at_minus.a1.to_f64();

    let d_a0 = (a0p - a0m) / (2.0 * h);
    let d_a1 = (a1p - a1m) / (2.0 * h);
    let d2_a0 = (a0p - 2.0 * a0c + a0m) / (h * h);

    Ok(FiniteDiffReport {
        residual_b0: (d_a0 + (n + 1.0) * eta_part.b0.to_f64()).abs(),
        residual_b1: (d_a1 + n * eta_part.b1.to_f64()).abs(),
        residual_c0: (d2_a0 - (n + 2.0) * (n + 1.0) * eta_part.c0.to_f64()).abs(),
        d_eta_a0: d_a0,
    })
}

/// Continued-fraction rationalization of one float: the last convergent with
/// denominator within the bound. The approximation error is below
/// `1/denom_bound`.
pub fn rationalize(x: f64, denom_bound: u64) -> BigRational {
    if !x.is_finite() {
        return BigRational::zero();
    }
    let negative = x < 0.0;
    let mut rest = x.abs();
    let (mut h0, mut h1) = (BigInt::one(), BigInt::from(rest.floor() as i64));
    let (mut k0, mut k1) = (BigInt::zero(), BigInt::one());
    rest -= rest.floor();
    let bound = BigInt::from(denom_bound);
    for _ in 0..64 {
        if rest < 1e-18 {
            break;
        }
        rest = 1.0 / rest;
        let digit = rest.floor();
        if digit >= 9.0e18 {
            break;
        }
        let a = BigInt::from(digit as i64);
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if k2 > bound {
            break;
        }
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        rest -= digit;
    }
    let value = BigRational::new(h1, k1);
    if negative {
        -value
    } else {
        value
    }
}

/// Rational approximation of a float Reeb vector, guarded by a margin check:
/// every inequality must clear `N x max|W| / denom_bound` before rounding so
/// the rounded vector is certain to stay inside the cone.
pub fn rational_approx(
    xi: &ReebVector,
    weights: &WeightMatrix,
    denom_bound: u64,
) -> Result<ReebVector> {
    rational_approx_for(xi, &weights.columns(), denom_bound)
}

/// Margin-checked rationalization against an explicit inequality list.
pub fn rational_approx_for(
    xi: &ReebVector,
    inequalities: &[Vec<i64>],
    denom_bound: u64,
) -> Result<ReebVector> {
    let float_xi = xi.to_mode(Mode::Float)?;
    let max_w = inequalities
        .iter()
        .flat_map(|row| row.iter().map(|e| e.abs()))
        .max()
        .unwrap_or(0) as f64;
    let radius = 1.0 / denom_bound as f64;
    let margin = inequalities.len() as f64 * radius * max_w;
    for (j, row) in inequalities.iter().enumerate() {
        let value = float_xi.pair(row)?.to_f64();
        if value <= margin {
            return Err(Error::TooCloseToBoundary { index: j });
        }
    }
    let rounded = ReebVector::from_rationals(
        float_xi
            .to_f64s()
            .iter()
            .map(|&x| rationalize(x, denom_bound))
            .collect(),
    );
    for (j, row) in inequalities.iter().enumerate() {
        if !rounded.pair(row)?.is_positive() {
            return Err(Error::TooCloseToBoundary { index: j });
        }
    }
    Ok(rounded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{hilbert_ci, hilbert_free, hilbert_monomial};

    fn xi_exact(values: &[(i64, i64)]) -> ReebVector {
        ReebVector::new(values.iter().map(|&(n, d)| Scalar::exact(n, d)).collect()).unwrap()
    }

    #[test]
    fn binomial_coefficients_of_flat_space() {
        let weights = WeightMatrix::new(vec![vec![1, 1, 1]]).unwrap();
        let series = hilbert_free(&weights).unwrap();
        let expansion = series_coefficients(&series, &xi_exact(&[(1, 1)]), 4).unwrap();
        let dims: Vec<i64> = expansion
            .coeffs
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect();
        assert_eq!(dims, vec![1, 3, 6, 10, 15]);
        assert_eq!(expansion.scale, BigInt::one());
    }

    #[test]
    fn conifold_dimensions_are_squares() {
        // At integral symmetric weights (1,1,1,1) the conifold counts (m+1)^2.
        let weights =
            WeightMatrix::new(vec![vec![1, 0, 0, 1], vec![0, 1, 0, 1], vec![0, 0, 1, -1]]).unwrap();
        let series = hilbert_ci(&weights, &[vec![1, 1, 0]]).unwrap();
        let xi = xi_exact(&[(1, 1), (1, 1), (1, 1)]);
        let expansion = series_coefficients(&series, &xi, 6).unwrap();
        let dims: Vec<i64> = expansion
            .coeffs
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect();
        assert_eq!(dims, vec![1, 4, 9, 16, 25, 36, 49]);
    }

    #[test]
    fn telescoping_quotient() {
        // (1-z1)/((1-z1)(1-z2)) expands with all coefficients 1 along z2.
        let weights = WeightMatrix::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let series = hilbert_monomial(&weights, &[vec![1, 0]]).unwrap();
        let expansion = series_coefficients(&series, &xi_exact(&[(1, 1), (1, 1)]), 5).unwrap();
        let dims: Vec<i64> = expansion
            .coeffs
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect();
        assert_eq!(dims, vec![1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn fractional_weights_are_rescaled() {
        let weights = WeightMatrix::new(vec![vec![1, 1, 1]]).unwrap();
        let series = hilbert_free(&weights).unwrap();
        let expansion = series_coefficients(&series, &xi_exact(&[(3, 2)]), 6).unwrap();
        assert_eq!(expansion.scale, BigInt::from(2));
        // Scaled weights are 3, so dims land every third degree.
        let dims: Vec<i64> = expansion
            .coeffs
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect();
        assert_eq!(dims, vec![1, 0, 0, 3, 0, 0, 6]);
    }

    #[test]
    fn monomial_series_matches_standard_monomials() {
        let weights = WeightMatrix::new(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let cases: Vec<Vec<Vec<u32>>> = vec![
            vec![vec![1, 1, 0]],
            vec![vec![2, 0, 0], vec![1, 1, 0]],
            vec![vec![1, 1, 1]],
            vec![vec![3, 0, 0], vec![0, 2, 1]],
        ];
        let xi = xi_exact(&[(1, 1), (1, 1), (1, 1)]);
        for gens in cases {
            let series = hilbert_monomial(&weights, &gens).unwrap();
            let from_series = series_coefficients(&series, &xi, 12).unwrap();
            let from_counting = standard_monomial_counts(&weights, &gens, &xi, 12).unwrap();
            assert_eq!(from_series.coeffs, from_counting.coeffs, "gens {gens:?}");
        }
    }

    #[test]
    fn monomial_series_matches_counting_in_four_variables() {
        // Nontrivial weights and a fractional Reeb vector.
        let weights = WeightMatrix::new(vec![vec![1, 2, 1, 0], vec![0, 1, 1, 1]]).unwrap();
        let gens: Vec<Vec<u32>> = vec![vec![2, 1, 0, 0], vec![0, 0, 1, 2], vec![1, 0, 0, 3]];
        let xi = xi_exact(&[(3, 2), (1, 1)]);
        let series = hilbert_monomial(&weights, &gens).unwrap();
        let from_series = series_coefficients(&series, &xi, 12).unwrap();
        let from_counting = standard_monomial_counts(&weights, &gens, &xi, 12).unwrap();
        assert_eq!(from_series.scale, from_counting.scale);
        assert_eq!(from_series.coeffs, from_counting.coeffs);
    }

    #[test]
    fn partial_sums_match_closed_forms() {
        // (1 - e^{-t})^{-3} at several evaluation points.
        let weights = WeightMatrix::new(vec![vec![1, 1, 1]]).unwrap();
        let series = hilbert_free(&weights).unwrap();
        let xi = xi_exact(&[(1, 1)]);
        for (t_value, degree) in [(1.0, 60usize), (0.5, 120), (0.25, 240), (0.125, 480)] {
            let t = Scalar::float(t_value);
            let partial = partial_sum_character(&series, &xi, &t, degree).unwrap();
            let closed = (1.0 - (-t_value).exp()).powi(-3);
            assert!(
                (partial.value - closed).abs() <= partial.tail_bound,
                "t = {t_value}: |{} - {closed}| > {}",
                partial.value,
                partial.tail_bound
            );
        }
    }

    #[test]
    fn partial_sum_at_ln2_matches_evaluation_at_one_half() {
        let weights =
            WeightMatrix::new(vec![vec![1, 0, 0, 1], vec![0, 1, 0, 1], vec![0, 0, 1, -1]]).unwrap();
        let series = hilbert_ci(&weights, &[vec![1, 1, 0]]).unwrap();
        let xi = xi_exact(&[(1, 1), (1, 1), (1, 1)]);
        let t = Scalar::float(std::f64::consts::LN_2);
        let partial = partial_sum_character(&series, &xi, &t, 80).unwrap();
        // Direct evaluation at q = 1/2: (1 - q^2)/(1-q)^4.
        let q: f64 = 0.5;
        let direct = (1.0 - q * q) / (1.0 - q).powi(4);
        assert!((partial.value - direct).abs() <= partial.tail_bound);
    }

    #[test]
    fn degree_zero_keeps_only_constants() {
        let weights = WeightMatrix::new(vec![vec![1, 1, 1]]).unwrap();
        let series = hilbert_free(&weights).unwrap();
        let partial =
            partial_sum_character(&series, &xi_exact(&[(1, 1)]), &Scalar::float(1.0), 0).unwrap();
        assert_eq!(partial.value, 1.0);
        assert!(partial.tail_bound.is_finite());
    }

    #[test]
    fn nonpositive_t_is_rejected() {
        let weights = WeightMatrix::new(vec![vec![1, 1, 1]]).unwrap();
        let series = hilbert_free(&weights).unwrap();
        let err = partial_sum_character(&series, &xi_exact(&[(1, 1)]), &Scalar::float(0.0), 10)
            .unwrap_err();
        assert!(matches!(err, Error::NonpositiveT));
    }

    #[test]
    fn finite_differences_confirm_jet_derivatives() {
        let weights = WeightMatrix::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let series = hilbert_free(&weights).unwrap();
        let xi = ReebVector::from_f64s(&[1.0, 1.0]);
        let eta = ReebVector::from_f64s(&[1.0, 0.0]);
        let report = finite_diff_check(&series, &xi, &eta, 1e-4).unwrap();
        assert!(
            report.residual_b0 <= 1e-7,
            "b0 residual {}",
            report.residual_b0
        );
        assert!(
            report.residual_b1 <= 1e-7,
            "b1 residual {}",
            report.residual_b1
        );
        assert!(
            report.residual_c0 <= 1e-6,
            "c0 residual {}",
            report.residual_c0
        );
    }

    #[test]
    fn conifold_critical_point_has_flat_tangent_derivative() {
        let weights =
            WeightMatrix::new(vec![vec![1, 0, 0, 1], vec![0, 1, 0, 1], vec![0, 0, 1, -1]]).unwrap();
        let series = hilbert_ci(&weights, &[vec![1, 1, 0]]).unwrap();
        let xi = ReebVector::from_f64s(&[1.5, 1.5, 1.5]);
        let eta = ReebVector::from_f64s(&[1.0, -1.0, 0.0]);
        let report = finite_diff_check(&series, &xi, &eta, 1e-4).unwrap();
        assert!(report.residual_b0 <= 1e-7, "{}", report.residual_b0);
        assert!(report.d_eta_a0.abs() <= 1e-9, "{}", report.d_eta_a0);
    }

    #[test]
    fn zero_direction_has_zero_residuals() {
        let weights = WeightMatrix::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let series = hilbert_free(&weights).unwrap();
        let xi = ReebVector::from_f64s(&[1.0, 1.0]);
        let eta = ReebVector::from_f64s(&[0.0, 0.0]);
        let report = finite_diff_check(&series, &xi, &eta, 1e-4).unwrap();
        assert_eq!(report.residual_b0, 0.0);
        assert_eq!(report.residual_b1, 0.0);
        assert_eq!(report.residual_c0, 0.0);
    }

    #[test]
    fn residuals_decay_quadratically() {
        let weights = WeightMatrix::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let series = hilbert_free(&weights).unwrap();
        let xi = ReebVector::from_f64s(&[1.25, 0.8]);
        let eta = ReebVector::from_f64s(&[1.0, -0.5]);
        let coarse = finite_diff_check(&series, &xi, &eta, 1e-3).unwrap();
        let fine = finite_diff_check(&series, &xi, &eta, 5e-4).unwrap();
        for (c, f) in [
            (coarse.residual_b0, fine.residual_b0),
            (coarse.residual_b1, fine.residual_b1),
            (coarse.residual_c0, fine.residual_c0),
        ] {
            let ratio = c / f;
            assert!((3.5..=4.5).contains(&ratio), "decay ratio {ratio}");
        }
    }

    #[test]
    fn step_leaving_cone_is_reported() {
        let weights = WeightMatrix::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let series = hilbert_free(&weights).unwrap();
        let xi = ReebVector::from_f64s(&[1.0, 1e-6]);
        let eta = ReebVector::from_f64s(&[0.0, 1.0]);
        let err = finite_diff_check(&series, &xi, &eta, 1e-4).unwrap_err();
        assert!(matches!(err, Error::StepLeavesCone));
    }

    #[test]
    fn golden_ratio_convergents() {
        // Denominator bound 50 stops at 55/34; bound 100 admits 144/89.
        let phi = 1.618_033_988_7f64;
        assert_eq!(
            rationalize(phi, 50),
            BigRational::new(BigInt::from(55), BigInt::from(34))
        );
        assert_eq!(
            rationalize(phi, 100),
            BigRational::new(BigInt::from(144), BigInt::from(89))
        );
        assert_eq!(rationalize(1.0, 100), BigRational::one());
    }

    #[test]
    fn rational_approx_verifies_membership() {
        let weights = WeightMatrix::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let xi = ReebVector::from_f64s(&[1.0, 1.618_033_988_7]);
        let approx = rational_approx(&xi, &weights, 50).unwrap();
        assert_eq!(
            approx.components()[1].as_exact().unwrap(),
            &BigRational::new(BigInt::from(55), BigInt::from(34))
        );
        assert!(crate::cone::is_reeb(&weights, &approx).unwrap());
    }

    #[test]
    fn boundary_vectors_cannot_be_rationalized() {
        let weights = WeightMatrix::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let xi = ReebVector::from_f64s(&[1.0, 0.0]);
        let err = rational_approx(&xi, &weights, 100).unwrap_err();
        assert!(matches!(err, Error::TooCloseToBoundary { index: 1 }));
    }
}
