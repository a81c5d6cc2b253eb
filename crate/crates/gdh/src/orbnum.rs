//! Cycle-shape arithmetic and the orbifold dimension bound.
//!
//! `dim(V₁^{g^d})` is taken to be the fixed dimension of `ν^d` on the
//! 24-dimensional Cartan subalgebra: inner factors act trivially on it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::enumerate::{min_norm_in_coset, EnumConfig, EnumError};
use crate::exactlat::{int, inverse, rat, Coset, Matrix, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShapeError {
    #[error("cannot parse cycle shape {0:?}")]
    Parse(String),
    #[error("cycle shape has degree {0}, expected 24")]
    Degree(i64),
    #[error("dimension bound {0} is not an integer")]
    NonIntegral(String),
    #[error("shape order {order} does not divide n = {n}")]
    OrderMismatch { order: u64, n: u64 },
}

/// Frame shape `∏ t^{b_t}`; exponents may be negative for general Co₀
/// elements, the degree `Σ t·b_t` is always 24.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleShape {
    terms: BTreeMap<u64, i64>,
}

impl CycleShape {
    pub fn new(terms: impl IntoIterator<Item = (u64, i64)>) -> Result<Self, ShapeError> {
        let mut m = BTreeMap::new();
        for (t, b) in terms {
            if t == 0 {
                return Err(ShapeError::Parse(format!("cycle length 0 in {t}^{b}")));
            }
            *m.entry(t).or_insert(0) += b;
        }
        m.retain(|_, b| *b != 0);
        let deg: i64 = m.iter().map(|(&t, &b)| t as i64 * b).sum();
        if deg != 24 {
            return Err(ShapeError::Degree(deg));
        }
        Ok(CycleShape { terms: m })
    }

    pub fn identity() -> Self {
        CycleShape { terms: BTreeMap::from([(1, 24)]) }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.terms.iter().map(|(&t, &b)| (t, b))
    }

    /// Order of ν: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.terms.keys().fold(1, |a, t| a.lcm(t))
    }

    /// `Σ b_t`, the rank of the fixed lattice.
    pub fn fixed_rank(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn is_cycle_shape(&self) -> bool {
        self.terms.values().all(|b| *b > 0)
    }
}

impl fmt::Display for CycleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms().map(|(t, b)| if b == 1 { t.to_string() } else { format!("{t}^{b}") }).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for CycleShape {
    type Err = ShapeError;

    /// Whitespace-separated `t^b` factors; `t^{b}` braces are accepted.
    fn from_str(s: &str) -> Result<Self, ShapeError> {
        let err = || ShapeError::Parse(s.to_string());
        let mut terms = Vec::new();
        for tok in s.split_whitespace() {
            let tok = tok.replace(['{', '}'], "");
            let (t, b) = match tok.split_once('^') {
                Some((t, b)) => (t.parse().map_err(|_| err())?, b.parse().map_err(|_| err())?),
                None => (tok.parse().map_err(|_| err())?, 1),
            };
            terms.push((t, b));
        }
        if terms.is_empty() {
            return Err(err());
        }
        CycleShape::new(terms)
    }
}

impl Serialize for CycleShape {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CycleShape {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One record of the Co₀ frame-shape catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeClassInfo {
    pub shape: CycleShape,
    pub order: u64,
    /// Order of the standard lift `φ_η(ν)` in `O(V_Λ)`.
    pub lifted_order: u64,
    pub doubling: bool,
    pub fixed_rank: u32,
    pub fixed_det: u64,
    /// Square of the twisted-module defect, as a rational string.
    pub defect_sq: String,
}

impl ShapeClassInfo {
    pub fn defect_is_one(&self) -> bool {
        self.defect_sq == "1"
    }

    /// Internal consistency of one record.
    pub fn check(&self) -> Result<(), String> {
        let m = self.shape.order();
        if m != self.order {
            return Err(format!("{}: order {} but lcm is {m}", self.shape, self.order));
        }
        let expect = if self.doubling { 2 * m } else { m };
        if self.lifted_order != expect {
            return Err(format!("{}: lifted order {} inconsistent with doubling flag", self.shape, self.lifted_order));
        }
        if i64::from(self.fixed_rank) != self.shape.fixed_rank() {
            return Err(format!("{}: fixed rank {} but Σb_t = {}", self.shape, self.fixed_rank, self.shape.fixed_rank()));
        }
        Ok(())
    }
}

/// `c_n(d)` for `d | n`, solving `Σ_{d|n} c_n(d)·gcd(t,d) = n/t` for all `t | n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EisensteinCoeffs {
    pub n: u64,
    pub coeffs: BTreeMap<u64, Rational>,
}

impl EisensteinCoeffs {
    pub fn residual(&self, t: u64) -> Rational {
        let lhs: Rational = self.coeffs.iter().map(|(&d, c)| c * int(t.gcd(&d) as i64)).sum();
        lhs - rat(self.n as i64, t as i64)
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn eisenstein_coeffs(n: u64) -> EisensteinCoeffs {
    assert!(n >= 1);
    let divs = divisors(n);
    let m: Matrix = divs.iter().map(|&t| divs.iter().map(|&d| int(t.gcd(&d) as i64)).collect()).collect();
    let inv = inverse(&m).expect("gcd matrix over divisors is invertible");
    let rhs: Vec<Rational> = divs.iter().map(|&t| rat(n as i64, t as i64)).collect();
    let coeffs = divs
        .iter()
        .enumerate()
        .map(|(i, &d)| (d, inv[i].iter().zip(&rhs).map(|(a, b)| a * b).sum()))
        .collect();
    EisensteinCoeffs { n, coeffs }
}

/// `ρ_ν = (1/24)·Σ b_t(t − 1/t)`.
pub fn vacuum_anomaly(s: &CycleShape) -> Rational {
    let sum: Rational = s.terms().map(|(t, b)| int(b) * (int(t as i64) - rat(1, t as i64))).sum();
    sum / int(24)
}

/// Shape of `ν^d`: `t^b ↦ (t/g)^{b·g}` with `g = gcd(t, d)`.
pub fn power_shape(s: &CycleShape, d: u64) -> CycleShape {
    assert!(d >= 1);
    CycleShape::new(s.terms().map(|(t, b)| {
        let g = t.gcd(&d);
        (t / g, b * g as i64)
    }))
    .expect("powers preserve degree")
}

/// Dimension of the fixed space of `ν^d`: `Σ b_t·gcd(t, d)`.
pub fn fixdim_power(s: &CycleShape, d: u64) -> i64 {
    s.terms().map(|(t, b)| b * t.gcd(&d) as i64).sum()
}

/// `24 + Σ_{d|n} c_n(d)·dim(V₁^{g^d})`.
///
/// For `n = 1` the orbifold is `V_Λ` itself and the value is 24.
pub fn dim_bound(s: &CycleShape, n: u64) -> Result<i64, ShapeError> {
    let order = s.order();
    if n % order != 0 {
        return Err(ShapeError::OrderMismatch { order, n });
    }
    if n == 1 {
        return Ok(24);
    }
    let c = eisenstein_coeffs(n);
    let mut total = int(24);
    for (d, cd) in &c.coeffs {
        total += cd * int(fixdim_power(s, *d));
    }
    if !total.is_integer() {
        return Err(ShapeError::NonIntegral(total.to_string()));
    }
    Ok(total.to_integer().to_i64().expect("small bound"))
}

/// `ρ_ν + (min norm of the coset)/2`.
pub fn twisted_weight(rho_nu: &Rational, coset: &Coset<'_>, cfg: &EnumConfig) -> Result<Rational, EnumError> {
    let (m, _) = min_norm_in_coset(coset, cfg)?;
    Ok(rho_nu + m / int(2))
}

/// `1/(1 − ρ_ν)` when it is a positive integer.
pub fn inverse_gap(s: &CycleShape) -> Option<u64> {
    let gap = int(1) - vacuum_anomaly(s);
    if !gap.is_positive() {
        return None;
    }
    let r = gap.recip();
    r.is_integer().then(|| r.to_integer().to_u64()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlat::d12plus_scaled;
    use num_traits::Zero;

    fn sh(s: &str) -> CycleShape {
        s.parse().unwrap()
    }

    #[test]
    fn parse_print() {
        assert_eq!(sh("1^2 2^2 3^2 6^2").to_string(), "1^2 2^2 3^2 6^2");
        assert_eq!(sh("1^2 2 4 8^2").order(), 8);
        assert_eq!(sh("2^{-1} 4 6 12^{-1} 14 28^{-1} 42^{-1} 84").to_string(), "2^-1 4 6 12^-1 14 28^-1 42^-1 84");
        assert!("1^23".parse::<CycleShape>().is_err());
        assert!("".parse::<CycleShape>().is_err());
        assert!("2^x".parse::<CycleShape>().is_err());
    }

    #[test]
    fn coefficients() {
        assert_eq!(eisenstein_coeffs(1).coeffs, BTreeMap::from([(1, int(1))]));
        assert_eq!(eisenstein_coeffs(2).coeffs, BTreeMap::from([(1, int(3)), (2, int(-1))]));
        assert_eq!(eisenstein_coeffs(46).coeffs, BTreeMap::from([(1, int(72)), (2, int(-24)), (23, int(-3)), (46, int(1))]));
        for n in 1..=120 {
            let c = eisenstein_coeffs(n);
            for t in divisors(n) {
                assert!(c.residual(t).is_zero(), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn anomalies_and_powers() {
        assert!(vacuum_anomaly(&CycleShape::identity()).is_zero());
        assert_eq!(vacuum_anomaly(&sh("2^12")), rat(3, 4));
        assert_eq!(vacuum_anomaly(&sh("6^4")), rat(35, 36));
        assert_eq!(power_shape(&sh("2^12"), 2), CycleShape::identity());
        assert_eq!(power_shape(&sh("1^8 2^8"), 2), CycleShape::identity());
        assert_eq!(power_shape(&sh("2^3 6^3"), 3), sh("2^12"));
        assert_eq!(fixdim_power(&sh("1^8 2^8"), 1), 16);
        assert_eq!(fixdim_power(&sh("2^12"), 3), 12);
        assert_eq!(fixdim_power(&sh("2^12"), 2), 24);
        assert_eq!(inverse_gap(&sh("2^12")), Some(4));
        assert_eq!(inverse_gap(&sh("6^4")), Some(36));
    }

    #[test]
    fn bounds() {
        assert_eq!(dim_bound(&CycleShape::identity(), 46), Ok(1128));
        assert_eq!(dim_bound(&sh("2^12"), 46), Ok(300));
        assert_eq!(dim_bound(&sh("1^8 2^8"), 30), Ok(384));
        assert_eq!(dim_bound(&sh("2^12"), 14), Ok(108));
        assert!(matches!(dim_bound(&sh("2^12"), 5), Err(ShapeError::OrderMismatch { .. })));
    }

    #[test]
    fn twisted_weight_of_a_1_12_centre() {
        // K/2 with centre (0,…,0,1/2) in D12+ coordinates
        let half = d12plus_scaled().dual();
        let mut h = vec![int(0); 12];
        h[11] = rat(1, 2);
        let neg: Vec<Rational> = h.iter().map(|x| -x).collect();
        let c = Coset::new(&half, neg).unwrap();
        assert_eq!(twisted_weight(&rat(3, 4), &c, &EnumConfig::default()).unwrap(), int(1));
        let zero = Coset::new(&half, vec![int(0); 12]).unwrap();
        assert!(twisted_weight(&int(0), &zero, &EnumConfig::default()).unwrap().is_zero());
    }
}
