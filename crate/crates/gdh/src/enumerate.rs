//! Close-vector and short-vector enumeration.
//!
//! Fincke–Pohst depth-first search over the Gram–Schmidt data of an
//! LLL-reduced basis. The traversal runs in `f64` with a widened radius, so it
//! can only over-approximate; every leaf is then accepted or rejected by an
//! exact integer comparison.

use std::cmp::Ordering;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::exactlat::{inverse, leech_lattice, lll_reduce_with_transform, Coset, ExactLattice, Matrix, Rational};

/// Relative and absolute widening of the floating-point search radius.
const RADIUS_SLACK_REL: f64 = 1e-9;
const RADIUS_SLACK_ABS: f64 = 1e-9;
/// Widening of each coordinate interval.
const INTERVAL_SLACK: f64 = 1e-7;

pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("candidate count exceeded the cap of {0}")]
    CapExceeded(u64),
    #[error("target has dimension {got}, lattice ambient dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("negative radius")]
    NegativeRadius,
    #[error("coordinates overflow 64-bit integers")]
    Overflow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueryMode {
    /// Points at squared distance exactly `radius_sq`.
    ExactShell,
    /// Points at squared distance at most `radius_sq`.
    Ball,
}

#[derive(Clone, Debug)]
pub struct SphereQuery {
    pub target: Vec<Rational>,
    pub radius_sq: Rational,
    pub mode: QueryMode,
}

impl SphereQuery {
    pub fn ball(target: Vec<Rational>, radius_sq: Rational) -> Self {
        SphereQuery { target, radius_sq, mode: QueryMode::Ball }
    }

    pub fn shell(target: Vec<Rational>, radius_sq: Rational) -> Self {
        SphereQuery { target, radius_sq, mode: QueryMode::ExactShell }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumConfig {
    /// Maximum number of leaves handed to the exact check.
    pub cap: u64,
    /// Fan subtrees out over the current rayon pool.
    pub parallel: bool,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig { cap: DEFAULT_CAP, parallel: false }
    }
}

impl EnumConfig {
    pub fn parallel() -> Self {
        EnumConfig { parallel: true, ..Self::default() }
    }
}

/// One lattice vector: ambient coordinates are `ambient[i] / denom`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePoint {
    pub ambient: Vec<i64>,
    pub coeffs: Vec<i64>,
    pub denom: i64,
}

impl LatticePoint {
    pub fn to_rational(&self) -> Vec<Rational> {
        self.ambient.iter().map(|&a| BigRational::new(a.into(), self.denom.into())).collect()
    }
}

/// Sorted, duplicate-free result of a query. Vectors are ordered
/// lexicographically by ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSet {
    denom: i64,
    ambient: Vec<Vec<i64>>,
    coeffs: Vec<Vec<i64>>,
    radius_sq: Rational,
}

impl VectorSet {
    pub fn len(&self) -> usize {
        self.ambient.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ambient.is_empty()
    }

    pub fn radius_sq(&self) -> &Rational {
        &self.radius_sq
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// Ambient numerators over [`VectorSet::denom`].
    pub fn ambient_numerators(&self) -> &[Vec<i64>] {
        &self.ambient
    }

    /// Coefficients with respect to the basis the lattice was built with.
    pub fn coefficients(&self) -> &[Vec<i64>] {
        &self.coeffs
    }

    pub fn vector(&self, i: usize) -> Vec<Rational> {
        self.ambient[i].iter().map(|&a| BigRational::new(a.into(), self.denom.into())).collect()
    }

    pub fn vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.len()).map(|i| self.vector(i)).collect()
    }
}

/// Target-dependent data for one query.
struct Prepared {
    /// Target coordinates in the reduced basis are `cn / cd`.
    cn: Vec<BigInt>,
    cd: BigInt,
    small: Option<SmallTarget>,
    /// Exact acceptance threshold for `S = yᵀ·Gn·y`, `y = x·cd − cn`:
    /// accept when `S·rad_den` compares to `rad_num`.
    rad_num: BigInt,
    rad_den: BigInt,
    /// `S` is converted back to a squared distance via `S / scale + orth`.
    scale: BigInt,
    orth: Rational,
    centre: Vec<f64>,
    radius: f64,
    mode: QueryMode,
}

struct SmallTarget {
    cn: Vec<i128>,
    cd: i128,
    rad_num: i128,
    rad_den: i128,
}

enum Halt {
    Stop,
    Cap,
    Overflow,
}

pub struct Enumerator {
    lattice: ExactLattice,
    transform: Vec<Vec<i64>>,
    denom: i64,
    basis_num: Vec<Vec<i64>>,
    gram_num: Vec<Vec<i128>>,
    gram_den: BigInt,
    /// `P = F·Bᵀ·G⁻¹` (ambient × rank) for the reduced basis, as `proj_num / proj_den`.
    proj_num: Vec<Vec<BigInt>>,
    proj_den: BigInt,
    reduced_gram: Matrix,
    full_rank: bool,
    mu: Vec<Vec<f64>>,
    bstar: Vec<f64>,
}

fn to_i128(x: &BigInt) -> Option<i128> {
    x.to_i128()
}

impl Enumerator {
    pub fn new(lattice: &ExactLattice) -> Result<Self, EnumError> {
        let (reduced, transform) = lll_reduce_with_transform(lattice);
        let n = reduced.rank();
        let den = lattice.common_denominator();
        let denom = den.to_i64().ok_or(EnumError::Overflow)?;
        let basis_num = reduced
            .basis()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|q| (q * BigRational::from_integer(den.clone())).to_integer().to_i64().ok_or(EnumError::Overflow))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let g = reduced.gram().clone();
        let gram_den = g.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let gram_num = g
            .iter()
            .map(|r| {
                r.iter()
                    .map(|q| to_i128(&(q * BigRational::from_integer(gram_den.clone())).to_integer()).ok_or(EnumError::Overflow))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let ginv = inverse(&g).expect("positive definite");
        let ambient = reduced.ambient_dim();
        let proj: Matrix = (0..ambient)
            .map(|a| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(Rational::zero(), |acc, i| {
                            acc + &reduced.basis()[i][a] * &ginv[i][j]
                        }) * reduced.form_scale()
                    })
                    .collect()
            })
            .collect();
        let proj_den = proj.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let proj_num = proj
            .iter()
            .map(|r| r.iter().map(|q| (q * BigRational::from_integer(proj_den.clone())).to_integer()).collect())
            .collect();

        let mut mu = vec![vec![0.0; n]; n];
        let mut bstar = vec![0.0; n];
        let mut mu_q: Matrix = vec![vec![Rational::zero(); n]; n];
        let mut b_q: Vec<Rational> = vec![Rational::zero(); n];
        for k in 0..n {
            for j in 0..k {
                let mut s = g[k][j].clone();
                for i in 0..j {
                    s -= &mu_q[j][i] * &mu_q[k][i] * &b_q[i];
                }
                mu_q[k][j] = s / &b_q[j];
                mu[k][j] = mu_q[k][j].to_f64().unwrap_or(0.0);
            }
            let mut s = g[k][k].clone();
            for j in 0..k {
                s -= &mu_q[k][j] * &mu_q[k][j] * &b_q[j];
            }
            bstar[k] = s.to_f64().unwrap_or(0.0);
            b_q[k] = s;
        }

        Ok(Enumerator {
            lattice: lattice.clone(),
            transform,
            denom,
            basis_num,
            gram_num,
            gram_den,
            proj_num,
            proj_den,
            full_rank: n == ambient,
            reduced_gram: g,
            mu,
            bstar,
        })
    }

    pub fn lattice(&self) -> &ExactLattice {
        &self.lattice
    }

    fn rank(&self) -> usize {
        self.bstar.len()
    }

    fn prepare(&self, q: &SphereQuery) -> Result<Option<Prepared>, EnumError> {
        let ambient = self.lattice.ambient_dim();
        if q.target.len() != ambient {
            return Err(EnumError::DimensionMismatch { expected: ambient, got: q.target.len() });
        }
        if q.radius_sq.is_negative() {
            return Err(EnumError::NegativeRadius);
        }
        let n = self.rank();
        let td = q.target.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let tn: Vec<BigInt> = q
            .target
            .iter()
            .map(|x| (x * BigRational::from_integer(td.clone())).to_integer())
            .collect();
        let mut cn = vec![BigInt::zero(); n];
        for (a, t) in tn.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            for (j, c) in cn.iter_mut().enumerate() {
                *c += t * &self.proj_num[a][j];
            }
        }
        let mut cd = &td * &self.proj_den;
        let g = cn.iter().fold(cd.clone(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            cd /= &g;
            for c in cn.iter_mut() {
                *c /= &g;
            }
        }
        let coords: Vec<Rational> = cn.iter().map(|c| BigRational::new(c.clone(), cd.clone())).collect();
        let orth = if self.full_rank {
            Rational::zero()
        } else {
            let inside: Rational = (0..n)
                .map(|i| (0..n).map(|j| &coords[i] * &self.reduced_gram[i][j] * &coords[j]).sum::<Rational>())
                .sum();
            self.lattice.norm(&q.target) - inside
        };
        let reduced_radius = &q.radius_sq - &orth;
        if reduced_radius.is_negative() {
            return Ok(None);
        }
        let scale = &cd * &cd * &self.gram_den;
        let thr = &reduced_radius * BigRational::from_integer(scale.clone());
        let rad_num = thr.numer().clone();
        let rad_den = thr.denom().clone();
        let small = (|| {
            Some(SmallTarget {
                cn: cn.iter().map(to_i128).collect::<Option<Vec<_>>>()?,
                cd: to_i128(&cd)?,
                rad_num: to_i128(&rad_num)?,
                rad_den: to_i128(&rad_den)?,
            })
        })();
        let r = reduced_radius.to_f64().unwrap_or(f64::INFINITY);
        Ok(Some(Prepared {
            centre: coords.iter().map(|c| c.to_f64().unwrap_or(0.0)).collect(),
            radius: r * (1.0 + RADIUS_SLACK_REL) + RADIUS_SLACK_ABS,
            cn,
            cd,
            small,
            rad_num,
            rad_den,
            scale,
            orth,
            mode: q.mode,
        }))
    }

    /// Exact scaled distance `S` if `x` satisfies the query.
    fn exact_check(&self, p: &Prepared, x: &[i64]) -> Option<BigInt> {
        if let Some(s) = &p.small {
            if let Some(val) = self.small_distance(s, x) {
                let ok = match (val.checked_mul(s.rad_den), p.mode) {
                    (Some(lhs), QueryMode::Ball) => lhs <= s.rad_num,
                    (Some(lhs), QueryMode::ExactShell) => lhs == s.rad_num,
                    (None, _) => return self.big_check(p, x),
                };
                return ok.then(|| BigInt::from(val));
            }
        }
        self.big_check(p, x)
    }

    fn small_distance(&self, s: &SmallTarget, x: &[i64]) -> Option<i128> {
        let n = x.len();
        let mut y = [0i128; 64];
        let y = if n <= 64 { &mut y[..n] } else { return None };
        for i in 0..n {
            y[i] = (x[i] as i128).checked_mul(s.cd)?.checked_sub(s.cn[i])?;
        }
        let mut total: i128 = 0;
        for i in 0..n {
            if y[i] == 0 {
                continue;
            }
            let mut row: i128 = 0;
            for j in 0..n {
                row = row.checked_add(self.gram_num[i][j].checked_mul(y[j])?)?;
            }
            total = total.checked_add(row.checked_mul(y[i])?)?;
        }
        Some(total)
    }

    fn big_check(&self, p: &Prepared, x: &[i64]) -> Option<BigInt> {
        let n = x.len();
        let y: Vec<BigInt> = (0..n).map(|i| BigInt::from(x[i]) * &p.cd - &p.cn[i]).collect();
        let mut total = BigInt::zero();
        for i in 0..n {
            let mut row = BigInt::zero();
            for j in 0..n {
                row += &y[j] * self.gram_num[i][j];
            }
            total += row * &y[i];
        }
        let lhs = &total * &p.rad_den;
        let ok = match p.mode {
            QueryMode::Ball => lhs <= p.rad_num,
            QueryMode::ExactShell => lhs == p.rad_num,
        };
        ok.then_some(total)
    }

    fn point(&self, x: &[i64]) -> Result<LatticePoint, EnumError> {
        let ambient_dim = self.basis_num[0].len();
        let mut ambient = vec![0i128; ambient_dim];
        let mut coeffs = vec![0i128; x.len()];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (a, &b) in ambient.iter_mut().zip(&self.basis_num[i]) {
                *a += xi as i128 * b as i128;
            }
            for (c, &u) in coeffs.iter_mut().zip(&self.transform[i]) {
                *c += xi as i128 * u as i128;
            }
        }
        let conv = |v: Vec<i128>| -> Result<Vec<i64>, EnumError> { v.into_iter().map(|a| i64::try_from(a).map_err(|_| EnumError::Overflow)).collect() };
        Ok(LatticePoint { ambient: conv(ambient)?, coeffs: conv(coeffs)?, denom: self.denom })
    }

    fn dfs<F>(&self, p: &Prepared, level: usize, x: &mut [i64], partial: f64, count: &AtomicU64, cap: u64, f: &mut F) -> ControlFlow<Halt>
    where
        F: FnMut(&[i64], BigInt) -> ControlFlow<Halt>,
    {
        let n = x.len();
        let mut centre = p.centre[level];
        for j in level + 1..n {
            centre -= self.mu[j][level] * (x[j] as f64 - p.centre[j]);
        }
        let b = self.bstar[level];
        let rem = p.radius - partial;
        if rem < 0.0 {
            return ControlFlow::Continue(());
        }
        let w = (rem / b).sqrt();
        let lo = (centre - w - INTERVAL_SLACK).ceil();
        let hi = (centre + w + INTERVAL_SLACK).floor();
        if !(lo.is_finite() && hi.is_finite()) || lo.abs() > 1e15 || hi.abs() > 1e15 {
            return ControlFlow::Break(Halt::Overflow);
        }
        let (lo, hi) = (lo as i64, hi as i64);
        for v in lo..=hi {
            let d = v as f64 - centre;
            let np = partial + b * d * d;
            if np > p.radius {
                continue;
            }
            x[level] = v;
            if level == 0 {
                if count.fetch_add(1, AtomicOrdering::Relaxed) >= cap {
                    return ControlFlow::Break(Halt::Cap);
                }
                if let Some(s) = self.exact_check(p, x) {
                    f(x, s)?;
                }
            } else {
                self.dfs(p, level - 1, x, np, count, cap, f)?;
            }
        }
        x[level] = 0;
        ControlFlow::Continue(())
    }

    /// Partial assignments of the top `depth` levels, in traversal order.
    fn prefixes(&self, p: &Prepared, depth: usize) -> Vec<(Vec<i64>, f64)> {
        let n = self.rank();
        let mut out = Vec::new();
        let mut x = vec![0i64; n];
        fn rec(e: &Enumerator, p: &Prepared, level: usize, stop: usize, x: &mut Vec<i64>, partial: f64, out: &mut Vec<(Vec<i64>, f64)>) {
            let n = x.len();
            let mut centre = p.centre[level];
            for j in level + 1..n {
                centre -= e.mu[j][level] * (x[j] as f64 - p.centre[j]);
            }
            let b = e.bstar[level];
            let rem = p.radius - partial;
            if rem < 0.0 {
                return;
            }
            let w = (rem / b).sqrt();
            let lo = (centre - w - INTERVAL_SLACK).ceil() as i64;
            let hi = (centre + w + INTERVAL_SLACK).floor() as i64;
            for v in lo..=hi {
                let d = v as f64 - centre;
                let np = partial + b * d * d;
                if np > p.radius {
                    continue;
                }
                x[level] = v;
                if level == stop {
                    out.push((x.clone(), np));
                } else {
                    rec(e, p, level - 1, stop, x, np, out);
                }
            }
            x[level] = 0;
        }
        rec(self, p, n - 1, n - depth, &mut x, 0.0, &mut out);
        out
    }

    fn halt_error(h: Halt, cap: u64) -> Option<EnumError> {
        match h {
            Halt::Stop => None,
            Halt::Cap => Some(EnumError::CapExceeded(cap)),
            Halt::Overflow => Some(EnumError::Overflow),
        }
    }

    pub fn close_vectors(&self, q: &SphereQuery, cfg: &EnumConfig) -> Result<VectorSet, EnumError> {
        let n = self.rank();
        let mut pts: Vec<LatticePoint> = Vec::new();
        if let Some(p) = self.prepare(q)? {
            let count = AtomicU64::new(0);
            let depth = if cfg.parallel && n >= 4 { 3 } else { 0 };
            if depth == 0 {
                let mut x = vec![0i64; n];
                let mut err = None;
                let flow = self.dfs(&p, n - 1, &mut x, 0.0, &count, cfg.cap, &mut |x, _| match self.point(x) {
                    Ok(pt) => {
                        pts.push(pt);
                        ControlFlow::Continue(())
                    }
                    Err(e) => {
                        err = Some(e);
                        ControlFlow::Break(Halt::Stop)
                    }
                });
                if let Some(e) = err {
                    return Err(e);
                }
                if let ControlFlow::Break(h) = flow {
                    if let Some(e) = Self::halt_error(h, cfg.cap) {
                        return Err(e);
                    }
                }
            } else {
                let prefixes = self.prefixes(&p, depth);
                let parts: Vec<Result<Vec<LatticePoint>, EnumError>> = prefixes
                    .into_par_iter()
                    .map(|(mut x, partial)| {
                        let mut local = Vec::new();
                        let mut err = None;
                        let flow = self.dfs(&p, n - depth - 1, &mut x, partial, &count, cfg.cap, &mut |x, _| match self.point(x) {
                            Ok(pt) => {
                                local.push(pt);
                                ControlFlow::Continue(())
                            }
                            Err(e) => {
                                err = Some(e);
                                ControlFlow::Break(Halt::Stop)
                            }
                        });
                        if let Some(e) = err {
                            return Err(e);
                        }
                        match flow {
                            ControlFlow::Break(h) => Self::halt_error(h, cfg.cap).map_or(Ok(local), Err),
                            ControlFlow::Continue(()) => Ok(local),
                        }
                    })
                    .collect();
                for part in parts {
                    pts.extend(part?);
                }
            }
        }
        pts.sort_by(|a, b| a.ambient.cmp(&b.ambient));
        pts.dedup_by(|a, b| a.ambient == b.ambient);
        let (ambient, coeffs) = pts.into_iter().map(|p| (p.ambient, p.coeffs)).unzip();
        Ok(VectorSet { denom: self.denom, ambient, coeffs, radius_sq: q.radius_sq.clone() })
    }

    /// Streams matching points in traversal order until `f` breaks.
    /// Returns `true` if the visitor stopped the search.
    pub fn for_each<F>(&self, q: &SphereQuery, cfg: &EnumConfig, mut f: F) -> Result<bool, EnumError>
    where
        F: FnMut(&LatticePoint) -> ControlFlow<()>,
    {
        let Some(p) = self.prepare(q)? else {
            return Ok(false);
        };
        let n = self.rank();
        let count = AtomicU64::new(0);
        let mut x = vec![0i64; n];
        let mut err = None;
        let flow = self.dfs(&p, n - 1, &mut x, 0.0, &count, cfg.cap, &mut |x, _| match self.point(x) {
            Ok(pt) => match f(&pt) {
                ControlFlow::Continue(()) => ControlFlow::Continue(()),
                ControlFlow::Break(()) => ControlFlow::Break(Halt::Stop),
            },
            Err(e) => {
                err = Some(e);
                ControlFlow::Break(Halt::Overflow)
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        match flow {
            ControlFlow::Continue(()) => Ok(false),
            ControlFlow::Break(h) => Self::halt_error(h, cfg.cap).map_or(Ok(true), Err),
        }
    }

    /// Squared distance from `target` to the lattice and the number of
    /// lattice vectors attaining it.
    pub fn closest_distance(&self, target: &[Rational], cfg: &EnumConfig) -> Result<(Rational, usize), EnumError> {
        let first = self.babai_distance(target)?;
        let mut r = &first / BigRational::from_integer(BigInt::from(16));
        loop {
            if r > first {
                r = first.clone();
            }
            let q = SphereQuery::ball(target.to_vec(), r.clone());
            if let Some(p) = self.prepare(&q)? {
                let n = self.rank();
                let count = AtomicU64::new(0);
                let mut x = vec![0i64; n];
                let mut best: Option<(BigInt, usize)> = None;
                let flow = self.dfs(&p, n - 1, &mut x, 0.0, &count, cfg.cap, &mut |_, s| {
                    match &mut best {
                        Some((b, c)) => match s.cmp(b) {
                            Ordering::Less => {
                                *b = s;
                                *c = 1;
                            }
                            Ordering::Equal => *c += 1,
                            Ordering::Greater => {}
                        },
                        None => best = Some((s, 1)),
                    }
                    ControlFlow::Continue(())
                });
                if let ControlFlow::Break(h) = flow {
                    if let Some(e) = Self::halt_error(h, cfg.cap) {
                        return Err(e);
                    }
                }
                if let Some((s, c)) = best {
                    let d = BigRational::new(s, p.scale.clone()) + &p.orth;
                    return Ok((d, c));
                }
            }
            if r == first {
                unreachable!("the rounded point lies inside the final ball");
            }
            r = r * BigRational::from_integer(BigInt::from(2));
        }
    }

    /// Exact squared distance to the lattice point found by nearest-plane rounding.
    fn babai_distance(&self, target: &[Rational]) -> Result<Rational, EnumError> {
        let q = SphereQuery::ball(target.to_vec(), Rational::zero());
        let ambient = self.lattice.ambient_dim();
        if target.len() != ambient {
            return Err(EnumError::DimensionMismatch { expected: ambient, got: target.len() });
        }
        let n = self.rank();
        // prepare() returns None only for negative radii after projection;
        // the projection part is recomputed below.
        let p = match self.prepare(&q)? {
            Some(p) => p,
            None => self
                .prepare(&SphereQuery::ball(target.to_vec(), self.lattice.norm(target) + Rational::one()))?
                .expect("large radius"),
        };
        let mut x = vec![0i64; n];
        for level in (0..n).rev() {
            let mut centre = p.centre[level];
            for j in level + 1..n {
                centre -= self.mu[j][level] * (x[j] as f64 - p.centre[j]);
            }
            if !centre.is_finite() || centre.abs() > 1e15 {
                return Err(EnumError::Overflow);
            }
            x[level] = centre.round() as i64;
        }
        let y: Vec<BigInt> = (0..n).map(|i| BigInt::from(x[i]) * &p.cd - &p.cn[i]).collect();
        let mut s = BigInt::zero();
        for i in 0..n {
            for j in 0..n {
                s += &y[i] * self.gram_num[i][j] * &y[j];
            }
        }
        Ok(BigRational::new(s, p.scale.clone()) + &p.orth)
    }

    /// Minimum norm over the coset `shift + L`, with the number of minimisers.
    pub fn min_norm_in_coset(&self, shift: &[Rational], cfg: &EnumConfig) -> Result<(Rational, usize), EnumError> {
        let neg: Vec<Rational> = shift.iter().map(|x| -x).collect();
        self.closest_distance(&neg, cfg)
    }
}

pub fn close_vectors(lattice: &ExactLattice, q: &SphereQuery, cfg: &EnumConfig) -> Result<VectorSet, EnumError> {
    Enumerator::new(lattice)?.close_vectors(q, cfg)
}

pub fn min_norm_in_coset(c: &Coset<'_>, cfg: &EnumConfig) -> Result<(Rational, usize), EnumError> {
    Enumerator::new(c.lattice)?.min_norm_in_coset(&c.shift, cfg)
}

static LEECH_ENUM: OnceLock<Enumerator> = OnceLock::new();

pub fn leech_enumerator() -> &'static Enumerator {
    LEECH_ENUM.get_or_init(|| Enumerator::new(leech_lattice()).expect("Leech enumerator"))
}
