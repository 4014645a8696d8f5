//! Truncated q-series with exact integer coefficients and the graded
//! characters of the Schubert-cell algebra and the singular subspace.

use num_traits::{CheckedNeg, PrimInt, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{GaudinError, Result};
use crate::repr::Partition;

/// Largest supported truncation order.
pub const MAX_ORDER: usize = 64;

/// Integer coefficient type for [`QSeries`].
pub trait QInt: PrimInt + Signed + CheckedNeg + std::fmt::Debug {}

impl<I: PrimInt + Signed + CheckedNeg + std::fmt::Debug> QInt for I {}

/// `c_0 + c_1 q + ... + c_K q^K`, everything above `q^K` discarded.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QSeries<I = i64> {
    coeffs: Vec<I>,
}

fn check_order(k: usize) -> Result<()> {
    if k > MAX_ORDER {
        return Err(GaudinError::TooLarge { dim: k, cap: MAX_ORDER });
    }
    Ok(())
}

impl<I: QInt> QSeries<I> {
    pub fn zero(order: usize) -> Result<Self> {
        check_order(order)?;
        Ok(Self { coeffs: vec![I::zero(); order + 1] })
    }

    pub fn one(order: usize) -> Result<Self> {
        Self::monomial(0, I::one(), order)
    }

    /// `c q^k`, which is zero when `k > order`.
    pub fn monomial(k: usize, c: I, order: usize) -> Result<Self> {
        let mut s = Self::zero(order)?;
        if k <= order {
            s.coeffs[k] = c;
        }
        Ok(s)
    }

    /// Series of order `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<I>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(GaudinError::InvalidInput("a q-series needs at least one coefficient".into()));
        }
        check_order(coeffs.len() - 1)?;
        Ok(Self { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[I] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> I {
        self.coeffs.get(k).copied().unwrap_or_else(I::zero)
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(GaudinError::InvalidInput(format!(
                "q-series orders differ: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(b).ok_or(GaudinError::Overflow))
            .collect::<Result<_>>()?;
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_sub(b).ok_or(GaudinError::Overflow))
            .collect::<Result<_>>()?;
        Ok(Self { coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let k = self.order();
        let mut out = vec![I::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=k - i].iter().enumerate() {
                let p = a.checked_mul(b).ok_or(GaudinError::Overflow)?;
                out[i + j] = out[i + j].checked_add(&p).ok_or(GaudinError::Overflow)?;
            }
        }
        Ok(Self { coeffs: out })
    }

    /// `self / other` for `other` with constant term `±1`.
    pub fn div_unit(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let c0 = other.coeffs[0];
        if c0 != I::one() && c0 != -I::one() {
            return Err(GaudinError::NotUnit(format!("constant term {c0:?}")));
        }
        let k = self.order();
        let mut out = vec![I::zero(); k + 1];
        for m in 0..=k {
            let mut acc = self.coeffs[m];
            for j in 1..=m {
                let p = other.coeffs[j].checked_mul(&out[m - j]).ok_or(GaudinError::Overflow)?;
                acc = acc.checked_sub(&p).ok_or(GaudinError::Overflow)?;
            }
            // c0 = ±1 is its own inverse
            out[m] = acc.checked_mul(&c0).ok_or(GaudinError::Overflow)?;
        }
        Ok(Self { coeffs: out })
    }

    /// `q^s · self`, truncated.
    pub fn shift(&self, s: usize) -> Self {
        let k = self.order();
        let mut out = vec![I::zero(); k + 1];
        if s <= k {
            out[s..].copy_from_slice(&self.coeffs[..=k - s]);
        }
        Self { coeffs: out }
    }
}

/// `1 - q^j` (just `0` when `j = 0`).
fn one_minus<I: QInt>(j: usize, order: usize) -> Result<QSeries<I>> {
    QSeries::one(order)?.sub(&QSeries::monomial(j, I::one(), order)?)
}

/// `(q)_a = (1-q)(1-q^2)⋯(1-q^a)`.
pub fn pochhammer<I: QInt>(a: usize, order: usize) -> Result<QSeries<I>> {
    let mut acc = QSeries::one(order)?;
    for j in 1..=a {
        acc = acc.mul(&one_minus(j, order)?)?;
    }
    Ok(acc)
}

/// Graded character of the coordinate algebra of the Schubert cell,
/// `Π_{i<j} (1 - q^{d_i - d_j}) / Π_i (q)_{d_i}`.
pub fn char_o<I: QInt>(lambda: &Partition, order: usize) -> Result<QSeries<I>> {
    let d = lambda.exponents();
    let mut num = QSeries::one(order)?;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            num = num.mul(&one_minus(d[i] - d[j], order)?)?;
        }
    }
    let mut den = QSeries::one(order)?;
    for &di in &d {
        den = den.mul(&pochhammer(di, order)?)?;
    }
    num.div_unit(&den)
}

/// Graded character of the singular weight subspace, `q^{s_λ} · char_O`.
pub fn char_v<I: QInt>(lambda: &Partition, order: usize) -> Result<QSeries<I>> {
    Ok(char_o(lambda, order)?.shift(lambda.degree_shift()))
}

/// Degrees `j` of the free generators `f_ij` (`d_i - j` not an exponent).
pub fn generator_degrees(lambda: &Partition) -> Vec<usize> {
    let d = lambda.exponents();
    let mut out = Vec::new();
    for &di in &d {
        for j in 1..=di {
            if !d.contains(&(di - j)) {
                out.push(j);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Hilbert series of the free algebra on the generators, counted directly as
/// partitions with parts drawn from the generator degrees.
pub fn hilbert_oracle<I: QInt>(lambda: &Partition, order: usize) -> Result<QSeries<I>> {
    check_order(order)?;
    let mut c = vec![I::zero(); order + 1];
    c[0] = I::one();
    for g in generator_degrees(lambda) {
        // multiply by 1/(1-q^g) = 1 + q^g + q^{2g} + ...
        for m in g..=order {
            c[m] = c[m].checked_add(&c[m - g]).ok_or(GaudinError::Overflow)?;
        }
    }
    QSeries::from_coeffs(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> QSeries<i64> {
        QSeries::from_coeffs(c.to_vec()).unwrap()
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer::<i64>(0, 4).unwrap(), q(&[1, 0, 0, 0, 0]));
        assert_eq!(pochhammer::<i64>(2, 4).unwrap(), q(&[1, -1, -1, 1, 0]));
        assert_eq!(pochhammer::<i64>(1, 5).unwrap(), q(&[1, -1, 0, 0, 0, 0]));
    }

    #[test]
    fn char_examples() {
        let l11 = Partition::new(vec![1, 1]).unwrap();
        assert_eq!(char_o::<i64>(&l11, 4).unwrap(), q(&[1, 1, 2, 2, 3]));
        assert_eq!(char_v::<i64>(&l11, 4).unwrap(), q(&[0, 1, 1, 2, 2]));
        let zero = Partition::with_parts(&[0, 0, 0], 3).unwrap();
        assert_eq!(char_o::<i64>(&zero, 0).unwrap(), q(&[1]));
        let top = Partition::with_parts(&[3, 0, 0], 3).unwrap();
        assert_eq!(char_v::<i64>(&top, 10).unwrap(), char_o(&top, 10).unwrap());
        let l22 = Partition::new(vec![2, 2]).unwrap();
        assert_eq!(char_o::<i64>(&l22, 30).unwrap(), hilbert_oracle(&l22, 30).unwrap());
    }

    #[test]
    fn division_and_errors() {
        let a = q(&[1, 2, 3]);
        let b = q(&[1, -1, 0]);
        assert_eq!(a.mul(&b).unwrap().div_unit(&b).unwrap(), a);
        let neg = q(&[-1, 1, 0]);
        assert_eq!(a.mul(&neg).unwrap().div_unit(&neg).unwrap(), a);
        assert!(matches!(a.div_unit(&q(&[2, 1, 0])), Err(GaudinError::NotUnit(_))));
        assert!(a.add(&q(&[1])).is_err());
        assert!(matches!(QSeries::<i64>::zero(65), Err(GaudinError::TooLarge { .. })));
    }

    #[test]
    fn overflow_detected() {
        let lam = Partition::new(vec![3, 3]).unwrap();
        assert!(matches!(hilbert_oracle::<i8>(&lam, 60), Err(GaudinError::Overflow)));
        assert!(matches!(char_o::<i8>(&lam, 60), Err(GaudinError::Overflow)));
        assert!(char_o::<i64>(&lam, 60).is_ok());
    }

    #[test]
    fn json_is_integer_array() {
        let s = q(&[1, -1, 0]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,-1,0]");
        assert_eq!(serde_json::from_str::<QSeries<i64>>("[1,-1,0]").unwrap(), s);
    }
}
