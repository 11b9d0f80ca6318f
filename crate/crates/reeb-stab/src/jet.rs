//! Second-order directional jets.
//!
//! A `DirJet2` carries a value together with its first and second directional
//! derivatives along a fixed direction. Running the whole character expansion
//! in these jets turns the derivative identities for the weight characters
//! into plain arithmetic: `b_i` and `c_0` are read off the derivative slots of
//! the Laurent coefficients.

use crate::error::Result;
use crate::scalar::{Mode, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct DirJet2 {
    /// Value.
    pub v: Scalar,
    /// First directional derivative.
    pub dv: Scalar,
    /// Second directional derivative.
    pub d2v: Scalar,
}

impl DirJet2 {
    pub fn new(v: Scalar, dv: Scalar, d2v: Scalar) -> Result<Self> {
        let mode = v.mode();
        for part in [&dv, &d2v] {
            if part.mode() != mode {
                return Err(crate::error::Error::ModeMismatch {
                    left: mode,
                    right: part.mode(),
                });
            }
        }
        Ok(DirJet2 { v, dv, d2v })
    }

    /// A constant: derivatives vanish.
    pub fn constant(v: Scalar) -> Self {
        let mode = v.mode();
        DirJet2 {
            v,
            dv: Scalar::zero(mode),
            d2v: Scalar::zero(mode),
        }
    }

    /// A linear function of the base point: constant first derivative.
    pub fn linear(v: Scalar, dv: Scalar) -> Result<Self> {
        let mode = v.mode();
        Self::new(v, dv, Scalar::zero(mode))
    }

    pub fn zero(mode: Mode) -> Self {
        Self::constant(Scalar::zero(mode))
    }

    pub fn one(mode: Mode) -> Self {
        Self::constant(Scalar::one(mode))
    }

    pub fn mode(&self) -> Mode {
        self.v.mode()
    }

    /// True when value and both derivatives are exactly zero.
    pub fn is_zero(&self) -> bool {
        self.v.is_zero() && self.dv.is_zero() && self.d2v.is_zero()
    }

    pub fn add(&self, other: &DirJet2) -> Result<DirJet2> {
        Ok(DirJet2 {
            v: self.v.add(&other.v)?,
            dv: self.dv.add(&other.dv)?,
            d2v: self.d2v.add(&other.d2v)?,
        })
    }

    pub fn sub(&self, other: &DirJet2) -> Result<DirJet2> {
        Ok(DirJet2 {
            v: self.v.sub(&other.v)?,
            dv: self.dv.sub(&other.dv)?,
            d2v: self.d2v.sub(&other.d2v)?,
        })
    }

    pub fn neg(&self) -> DirJet2 {
        DirJet2 {
            v: self.v.neg(),
            dv: self.dv.neg(),
            d2v: self.d2v.neg(),
        }
    }

    /// Leibniz rule: (fg)' = f'g + fg', (fg)'' = f''g + 2f'g' + fg''.
    pub fn mul(&self, other: &DirJet2) -> Result<DirJet2> {
        let v = self.v.mul(&other.v)?;
        let dv = self.dv.mul(&other.v)?.add(&self.v.mul(&other.dv)?)?;
        let d2v = self
            .d2v
            .mul(&other.v)?
            .add(&self.dv.mul(&other.dv)?.mul_int(2))?
            .add(&self.v.mul(&other.d2v)?)?;
        Ok(DirJet2 { v, dv, d2v })
    }

    /// Reciprocal: (1/f)' = -f'/f^2, (1/f)'' = (2f'^2 - ff'')/f^3.
    pub fn recip(&self) -> Result<DirJet2> {
        let inv = self.v.recip()?;
        let inv2 = inv.mul(&inv)?;
        let inv3 = inv2.mul(&inv)?;
        let dv = self.dv.mul(&inv2)?.neg();
        let d2v = self
            .dv
            .mul(&self.dv)?
            .mul_int(2)
            .sub(&self.v.mul(&self.d2v)?)?
            .mul(&inv3)?;
        Ok(DirJet2 { v: inv, dv, d2v })
    }

    pub fn div(&self, other: &DirJet2) -> Result<DirJet2> {
        self.mul(&other.recip()?)
    }

    pub fn mul_scalar(&self, c: &Scalar) -> Result<DirJet2> {
        Ok(DirJet2 {
            v: self.v.mul(c)?,
            dv: self.dv.mul(c)?,
            d2v: self.d2v.mul(c)?,
        })
    }

    pub fn mul_int(&self, k: i64) -> DirJet2 {
        DirJet2 {
            v: self.v.mul_int(k),
            dv: self.dv.mul_int(k),
            d2v: self.d2v.mul_int(k),
        }
    }

    pub fn div_int(&self, k: i64) -> DirJet2 {
        DirJet2 {
            v: self.v.div_int(k),
            dv: self.dv.div_int(k),
            d2v: self.d2v.div_int(k),
        }
    }

    /// Integer power by repeated multiplication.
    pub fn powi(&self, n: u32) -> Result<DirJet2> {
        let mut acc = DirJet2::one(self.mode());
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jet(v: (i64, i64), dv: (i64, i64), d2v: (i64, i64)) -> DirJet2 {
        DirJet2::new(
            Scalar::exact(v.0, v.1),
            Scalar::exact(dv.0, dv.1),
            Scalar::exact(d2v.0, d2v.1),
        )
        .unwrap()
    }

    #[test]
    fn product_rule_is_exact() {
        let f = jet((2, 1), (3, 1), (1, 2));
        let g = jet((5, 1), (-1, 1), (7, 3));
        let fg = f.mul(&g).unwrap();
        assert_eq!(fg.v, Scalar::exact(10, 1));
        // (fg)' = 3*5 + 2*(-1) = 13
        assert_eq!(fg.dv, Scalar::exact(13, 1));
        // (fg)'' = (1/2)*5 + 2*3*(-1) + 2*(7/3) = 5/2 - 6 + 14/3 = 7/6
        assert_eq!(fg.d2v, Scalar::exact(7, 6));
    }

    #[test]
    fn recip_inverts_mul() {
        let f = jet((3, 2), (1, 3), (-2, 5));
        let prod = f.mul(&f.recip().unwrap()).unwrap();
        assert_eq!(prod, DirJet2::one(Mode::Exact));
    }

    #[test]
    fn reciprocal_of_linear_pairing() {
        // f(s) = a + b s at s = 0: 1/f has derivatives -b/a^2, 2b^2/a^3.
        let f = DirJet2::linear(Scalar::exact(2, 1), Scalar::exact(3, 1)).unwrap();
        let r = f.recip().unwrap();
        assert_eq!(r.v, Scalar::exact(1, 2));
        assert_eq!(r.dv, Scalar::exact(-3, 4));
        assert_eq!(r.d2v, Scalar::exact(9, 4));
    }

    #[test]
    fn mode_mismatch_propagates() {
        let f = DirJet2::constant(Scalar::exact(1, 1));
        let g = DirJet2::constant(Scalar::float(1.0));
        assert!(f.add(&g).is_err());
    }
}
