//! Laurent expansion of index and weight characters near `t = 0`.
//!
//! Specializing a Hilbert series along a Reeb vector `xi` gives the index
//! character `F(xi, t) = HS(e^{-t.w})`, a meromorphic function with a pole of
//! order `n + 1` at the origin. Each denominator factor expands through the
//! Todd-type series `1/(1 - e^{-ta}) = sum_k B+_k (ta)^k / (k! ta)` with
//! Bernoulli numbers `B+_k`, the numerator through exponential Taylor jets,
//! and the product is tracked to a requested truncation depth so that the
//! leading coefficients `a_0, a_1, ...` come out exact in EXACT mode.
//!
//! Running the same pipeline in second-order directional jets along `eta`
//! yields the weight-character coefficients via
//! `b_i = -D_eta a_i / (n + 1 - i)` and `c_0 = D^2_eta a_0 / ((n+2)(n+1))`.

use std::sync::{LazyLock, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cone::ReebVector;
use crate::error::{Error, Result};
use crate::hilbert::HilbertSeries;
use crate::jet::DirJet2;
use crate::scalar::{factorial_scalar, Mode, Scalar};

/// Relative threshold below which a float coefficient counts as a stripped
/// leading zero.
pub const FLOAT_STRIP_EPS: f64 = 1e-9;

/// Coefficients `beta_k = B+_k / k!` of `u / (1 - e^{-u})`, cached and grown
/// on demand. The mutex makes the memo fill idempotent across threads.
static TODD_COEFFS: LazyLock<Mutex<Vec<BigRational>>> =
    LazyLock::new(|| Mutex::new(vec![BigRational::one()]));

/// `B+_k / k!`, the `u^k` coefficient of `u / (1 - e^{-u})`.
pub fn todd_coefficient(k: usize) -> BigRational {
    let mut cache = TODD_COEFFS.lock().unwrap();
    while cache.len() <= k {
        let n = cache.len() + 1;
        // From (sum beta_j u^j)(1 - e^{-u}) = u, comparing u^n coefficients:
        // beta_{n-1} = -sum_{m=2}^{n} sigma_m beta_{n-m}, sigma_m = (-1)^{m+1}/m!.
        let mut acc = BigRational::zero();
        let mut m_factorial = BigInt::one();
        for m in 2..=n {
            m_factorial *= BigInt::from(m);
            let sigma = BigRational::new(
                if m % 2 == 1 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                },
                m_factorial.clone(),
            );
            acc += sigma * &cache[n - m];
        }
        cache.push(-acc);
    }
    cache[k].clone()
}

/// The Bernoulli number `B+_k` (with `B+_1 = +1/2`).
pub fn bernoulli_plus(k: usize) -> BigRational {
    let mut factorial = BigInt::one();
    for j in 2..=k {
        factorial *= BigInt::from(j);
    }
    todd_coefficient(k) * BigRational::from_integer(factorial)
}

/// Coefficient arithmetic shared between plain scalars and directional jets.
pub trait JetCoeff: Clone + std::fmt::Debug {
    fn mode(&self) -> Mode;
    fn zero(mode: Mode) -> Self;
    fn from_scalar(s: &Scalar) -> Self;
    fn add(&self, other: &Self) -> Result<Self>;
    fn sub(&self, other: &Self) -> Result<Self>;
    fn mul(&self, other: &Self) -> Result<Self>;
    fn recip(&self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn is_exact_zero(&self) -> bool;
    /// Largest absolute value among the stored components.
    fn magnitude(&self) -> f64;
}

impl JetCoeff for Scalar {
    fn mode(&self) -> Mode {
        Scalar::mode(self)
    }
    fn zero(mode: Mode) -> Self {
        Scalar::zero(mode)
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
    fn add(&self, other: &Self) -> Result<Self> {
        Scalar::add(self, other)
    }
    fn sub(&self, other: &Self) -> Result<Self> {
        Scalar::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        Scalar::mul(self, other)
    }
    fn recip(&self) -> Result<Self> {
        Scalar::recip(self)
    }
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl JetCoeff for DirJet2 {
    fn mode(&self) -> Mode {
        DirJet2::mode(self)
    }
    fn zero(mode: Mode) -> Self {
        DirJet2::zero(mode)
    }
    fn from_scalar(s: &Scalar) -> Self {
        DirJet2::constant(s.clone())
    }
    fn add(&self, other: &Self) -> Result<Self> {
        DirJet2::add(self, other)
    }
    fn sub(&self, other: &Self) -> Result<Self> {
        DirJet2::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        DirJet2::mul(self, other)
    }
    fn recip(&self) -> Result<Self> {
        DirJet2::recip(self)
    }
    fn neg(&self) -> Self {
        DirJet2::neg(self)
    }
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    fn magnitude(&self) -> f64 {
        self.v
            .to_f64()
            .abs()
            .max(self.dv.to_f64().abs())
            .max(self.d2v.to_f64().abs())
    }
}

/// A truncated Laurent jet: `coeffs[i]` is the coefficient of
/// `t^{leading_order + i}`. Every stored coefficient is exact to the
/// truncation implied by its construction; arithmetic keeps the shorter
/// relative length so that guarantee survives products.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<T> {
    pub leading_order: i64,
    pub coeffs: Vec<T>,
}

/// The user-facing Laurent jet with plain scalar coefficients.
pub type TJet = Jet<Scalar>;

impl<T: JetCoeff> Jet<T> {
    pub fn new(leading_order: i64, coeffs: Vec<T>) -> Self {
        Jet {
            leading_order,
            coeffs,
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mode(&self) -> Mode {
        self.coeffs.first().map(|c| c.mode()).unwrap_or(Mode::Exact)
    }

    /// Coefficient of `t^order`, if retained.
    pub fn coeff(&self, order: i64) -> Option<&T> {
        let idx = order - self.leading_order;
        if idx < 0 {
            return None;
        }
        self.coeffs.get(idx as usize)
    }

    /// Coefficient at offset `i` from the leading order.
    pub fn coeff_rel(&self, i: usize) -> Option<&T> {
        self.coeffs.get(i)
    }

    pub fn truncate(&mut self, len: usize) {
        self.coeffs.truncate(len);
    }

    /// Strip leading zeros. EXACT mode strips exact zeros; FLOAT mode treats
    /// a coefficient as zero when its magnitude is below
    /// `FLOAT_STRIP_EPS x max magnitude`.
    pub fn strip_leading_zeros(&mut self) {
        let negligible: Box<dyn Fn(&T) -> bool> = match self.mode() {
            Mode::Exact => Box::new(|c: &T| c.is_exact_zero()),
            Mode::Float => {
                let max = self
                    .coeffs
                    .iter()
                    .map(|c| c.magnitude())
                    .fold(0.0_f64, f64::max);
                if max == 0.0 {
                    Box::new(|_: &T| true)
                } else {
                    let cut = FLOAT_STRIP_EPS * max;
                    Box::new(move |c: &T| c.magnitude() < cut)
                }
            }
        };
        let mut strip = 0;
        while strip < self.coeffs.len() && negligible(&self.coeffs[strip]) {
            strip += 1;
        }
        if strip > 0 {
            self.coeffs.drain(..strip);
            self.leading_order += strip as i64;
        }
    }

    pub fn add(&self, other: &Jet<T>) -> Result<Jet<T>> {
        let mode = self.mode();
        let leading = self.leading_order.min(other.leading_order);
        let valid_self = self.leading_order + self.coeffs.len() as i64;
        let valid_other = other.leading_order + other.coeffs.len() as i64;
        let valid = valid_self.min(valid_other);
        let len = (valid - leading).max(0) as usize;
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            let order = leading + i as i64;
            let a = self.coeff(order);
            let b = other.coeff(order);
            let value = match (a, b) {
                (Some(a), Some(b)) => a.add(b)?,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => T::zero(mode),
            };
            coeffs.push(value);
        }
        Ok(Jet::new(leading, coeffs))
    }

    /// Cauchy product; the result keeps the smaller relative length.
    pub fn mul(&self, other: &Jet<T>) -> Result<Jet<T>> {
        let mode = self.mode();
        let len = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![T::zero(mode); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(Jet::new(self.leading_order + other.leading_order, coeffs))
    }

    /// Multiplicative inverse of a jet with nonzero leading coefficient.
    pub fn invert(&self) -> Result<Jet<T>> {
        let lead = self.coeffs.first().ok_or(Error::DivisionByZero)?;
        let inv_lead = lead.recip()?;
        let len = self.coeffs.len();
        let mut coeffs = Vec::with_capacity(len);
        coeffs.push(inv_lead.clone());
        for k in 1..len {
            let mut acc = T::zero(self.mode());
            for i in 1..=k {
                acc = acc.add(&self.coeffs[i].mul(&coeffs[k - i])?)?;
            }
            coeffs.push(acc.neg().mul(&inv_lead)?);
        }
        Ok(Jet::new(-self.leading_order, coeffs))
    }
}

impl TJet {
    /// Render nonzero terms as `c*t^k` for reports.
    pub fn display_terms(&self) -> Vec<(i64, Scalar)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (self.leading_order + i as i64, c.clone()))
            .collect()
    }
}

/// Todd jet of a nonzero weight `a`:
/// `1/(1 - e^{-ta}) = 1/(ta) + 1/2 + ta/12 - ...`, retained through absolute
/// order `order` (so `order + 2` coefficients starting at `t^{-1}`).
pub fn todd_jet_generic<T: JetCoeff>(a: &T, order: i64) -> Result<Jet<T>> {
    if a.is_exact_zero() {
        return Err(Error::ZeroWeight);
    }
    let mode = a.mode();
    let terms = (order + 2).max(1) as usize;
    let mut coeffs = Vec::with_capacity(terms);
    let mut power = a.recip()?; // a^{k-1}, starting at k = 0
    for k in 0..terms {
        let beta = T::from_scalar(&Scalar::from_rational(todd_coefficient(k), mode));
        coeffs.push(power.mul(&beta)?);
        power = power.mul(a)?;
    }
    Ok(Jet::new(-1, coeffs))
}

/// Scalar Todd jet: the workhorse for index characters without a direction.
pub fn todd_jet(a: &Scalar, order: i64) -> Result<TJet> {
    todd_jet_generic(a, order)
}

/// Expansion of the index character `F(xi, t)` near `t = 0`, to `depth`
/// retained Laurent coefficients starting at the pole `t^{-dimension}`.
pub fn expand_index(series: &HilbertSeries, xi: &ReebVector, depth: usize) -> Result<TJet> {
    let jet = expand_character(series, xi, None, depth)?;
    Ok(Jet::new(
        jet.leading_order,
        jet.coeffs.into_iter().map(|c| c.v).collect(),
    ))
}

/// The same expansion carried out in second-order directional jets along
/// `eta` (zero direction when absent).
pub fn expand_character(
    series: &HilbertSeries,
    xi: &ReebVector,
    eta: Option<&ReebVector>,
    depth: usize,
) -> Result<Jet<DirJet2>> {
    if depth < 2 {
        return Err(Error::invalid(format!(
            "expansion depth must be at least 2, got {depth}"
        )));
    }
    if xi.dim() != series.torus_rank {
        return Err(Error::DimensionMismatch {
            expected: series.torus_rank,
            found: xi.dim(),
        });
    }
    if let Some(eta) = eta {
        if eta.dim() != series.torus_rank {
            return Err(Error::DimensionMismatch {
                expected: series.torus_rank,
                found: eta.dim(),
            });
        }
    }
    let mode = xi.mode();
    let n_denoms = series.denominators.len();
    let order_budget = depth + n_denoms;

    let pair = |weight: &[i64]| -> Result<DirJet2> {
        let value = xi.pair(weight)?;
        let slope = match eta {
            Some(eta) => eta.pair(weight)?,
            None => Scalar::zero(mode),
        };
        DirJet2::linear(value, slope)
    };

    // Denominator: product of Todd jets, one per weight vector.
    let mut denominator: Option<Jet<DirJet2>> = None;
    for (j, d) in series.denominators.iter().enumerate() {
        let a = pair(d)?;
        if a.v.is_zero() {
            return Err(Error::ZeroWeight);
        }
        if a.v.is_negative() {
            return Err(Error::NotInReebCone { index: j });
        }
        let jet = todd_jet_generic(&a, order_budget as i64)?;
        denominator = Some(match denominator {
            Some(acc) => acc.mul(&jet)?,
            None => jet,
        });
    }
    let denominator = denominator.ok_or_else(|| Error::invalid("series has no denominators"))?;

    // Numerator: sum of exponential Taylor jets, exact through t^{order_budget-1}.
    let mut numerator_coeffs = vec![DirJet2::zero(mode); order_budget];
    for (exponent, coefficient) in series.numerator.terms() {
        let p = pair(exponent)?;
        let neg_p = p.neg();
        let c = DirJet2::constant(Scalar::from_rational(
            BigRational::from_integer(coefficient.clone()),
            mode,
        ));
        let mut current = c;
        numerator_coeffs[0] = numerator_coeffs[0].add(&current)?;
        for (m, slot) in numerator_coeffs.iter_mut().enumerate().skip(1) {
            current = current.mul(&neg_p)?.div_int(m as i64);
            *slot = slot.add(&current)?;
        }
    }
    let mut numerator = Jet::new(0, numerator_coeffs);
    numerator.strip_leading_zeros();
    if numerator.is_empty() {
        return Err(Error::invalid(
            "series numerator vanishes identically at this Reeb vector",
        ));
    }
    let zero_orders = numerator.leading_order;
    let observed_pole = n_denoms as i64 - zero_orders;
    if observed_pole != series.dimension as i64 {
        return Err(Error::PoleOrderMismatch {
            declared: series.dimension,
            observed: observed_pole,
        });
    }

    let mut product = numerator.mul(&denominator)?;
    product.truncate(depth);
    Ok(product)
}

/// Weight-character block of the extracted coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaCoefficients {
    pub b0: Scalar,
    pub b1: Scalar,
    pub c0: Scalar,
}

/// The tuple `(n, a0, a1)` extracted from the index character, plus
/// `(b0, b1, c0)` when a direction is supplied.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterCoefficients {
    /// Complex dimension of the link; the cone has dimension `n + 1`.
    pub n: usize,
    pub a0: Scalar,
    pub a1: Scalar,
    pub eta: Option<EtaCoefficients>,
}

impl CharacterCoefficients {
    /// `D_eta a0 = -(n+1) b0`.
    pub fn d_eta_a0(&self) -> Option<Scalar> {
        self.eta
            .as_ref()
            .map(|e| e.b0.mul_int(-(self.n as i64 + 1)))
    }

    /// `D_eta a1 = -n b1`.
    pub fn d_eta_a1(&self) -> Option<Scalar> {
        self.eta.as_ref().map(|e| e.b1.mul_int(-(self.n as i64)))
    }

    /// `D^2_eta a0 = (n+2)(n+1) c0`.
    pub fn d2_eta_a0(&self) -> Option<Scalar> {
        self.eta
            .as_ref()
            .map(|e| e.c0.mul_int((self.n as i64 + 2) * (self.n as i64 + 1)))
    }
}

/// Extract `a0, a1` (and `b0, b1, c0` along `eta`) from the character
/// expansion of `series` at `xi`.
pub fn extract_coefficients(
    series: &HilbertSeries,
    xi: &ReebVector,
    eta: Option<&ReebVector>,
) -> Result<CharacterCoefficients> {
    if series.dimension < 2 {
        return Err(Error::DimensionTooSmall {
            dimension: series.dimension,
        });
    }
    let n = series.dimension - 1;
    let mode = xi.mode();
    let jet = expand_character(series, xi, eta, 2)?;
    let lead = jet
        .coeff_rel(0)
        .ok_or_else(|| Error::invalid("empty expansion"))?;
    let next = jet
        .coeff_rel(1)
        .ok_or_else(|| Error::invalid("expansion too short"))?;

    // F = a0 n!/t^{n+1} + a1 (n-1)!/t^n + ...
    let n_fact = factorial_scalar(n, mode);
    let n1_fact = factorial_scalar(n - 1, mode);
    let a0 = lead.v.div(&n_fact)?;
    let a1 = next.v.div(&n1_fact)?;
    if !a0.is_positive() {
        return Err(Error::NonpositiveVolume {
            value: a0.to_string(),
        });
    }

    let eta_coeffs = match eta {
        None => None,
        Some(_) => {
            let d_a0 = lead.dv.div(&n_fact)?;
            let d_a1 = next.dv.div(&n1_fact)?;
            let d2_a0 = lead.d2v.div(&n_fact)?;
            let b0 = d_a0.neg().div_int(n as i64 + 1);
            let b1 = d_a1.neg().div_int(n as i64);
            let c0 = d2_a0.div_int((n as i64 + 2) * (n as i64 + 1));
            Some(EtaCoefficients { b0, b1, c0 })
        }
    };

    Ok(CharacterCoefficients {
        n,
        a0,
        a1,
        eta: eta_coeffs,
    })
}
