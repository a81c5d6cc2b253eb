//! Exact rational linear algebra and the concrete lattices everything else
//! computes in.
//!
//! A lattice is stored as rational basis rows in an ambient space whose inner
//! product is `form_scale` times the standard dot product. This lets the
//! Leech lattice live in integer coordinates (scale 1/8) and `K = √2·D12+`
//! live in its natural D12+ coordinates (scale 2) without irrational entries.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rational = BigRational;
pub type Matrix = Vec<Vec<Rational>>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("empty basis")]
    Empty,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("form scale must be positive")]
    BadFormScale,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("matrix is singular")]
    Singular,
    #[error("change of basis is not unimodular")]
    NotUnimodular,
    #[error("invalid lattice file: {0}")]
    InvalidFile(String),
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(n.into())
}

pub fn parse_rational(s: &str) -> Result<Rational, LatticeError> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| LatticeError::Parse(s.to_string()))?;
    let d: BigInt = d.parse().map_err(|_| LatticeError::Parse(s.to_string()))?;
    if d.is_zero() {
        return Err(LatticeError::ZeroDenominator);
    }
    Ok(BigRational::new(n, d))
}

/// Comma-separated exact rationals, e.g. `0,1/2,-3/4`.
pub fn parse_vector(s: &str) -> Result<Vec<Rational>, LatticeError> {
    s.split(',').map(parse_rational).collect()
}

pub fn format_vector(v: &[Rational]) -> String {
    v.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let bt = transpose(b);
    a.iter()
        .map(|row| bt.iter().map(|col| dot(row, col)).collect())
        .collect()
}

pub fn vec_mat(v: &[Rational], m: &Matrix) -> Vec<Rational> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = vec![Rational::zero(); cols];
    for (x, row) in v.iter().zip(m) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(row) {
            *o += x * y;
        }
    }
    out
}

pub fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

pub fn inverse(m: &Matrix) -> Result<Matrix, LatticeError> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(LatticeError::Singular)?;
        a.swap(p, c);
        let piv = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &piv;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in 0..2 * n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Leading principal minors, all positive iff the matrix is positive definite.
fn is_positive_definite(g: &Matrix) -> bool {
    // Symmetric Gaussian elimination without pivoting: the pivots are ratios
    // of consecutive leading minors.
    let n = g.len();
    let mut a = g.clone();
    for c in 0..n {
        if !a[c][c].is_positive() {
            return false;
        }
        let piv = a[c][c].clone();
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    true
}

fn lcm_of_denominators<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Row Hermite-style echelon form of an integer matrix; zero rows dropped.
fn integer_row_echelon(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        loop {
            let nz: Vec<usize> = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
            rows.swap(r, piv);
            let mut clean = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let pr = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
                if !rows[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                if rows[r][c].is_negative() {
                    for x in rows[r].iter_mut() {
                        *x = -&*x;
                    }
                }
                r += 1;
                break;
            }
        }
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactLattice {
    basis: Matrix,
    form_scale: Rational,
    gram: Matrix,
}

impl ExactLattice {
    pub fn new(basis: Matrix, form_scale: Rational) -> Result<Self, LatticeError> {
        if basis.is_empty() || basis[0].is_empty() {
            return Err(LatticeError::Empty);
        }
        if !form_scale.is_positive() {
            return Err(LatticeError::BadFormScale);
        }
        let ambient = basis[0].len();
        if let Some(row) = basis.iter().find(|r| r.len() != ambient) {
            return Err(LatticeError::DimensionMismatch { expected: ambient, got: row.len() });
        }
        let gram: Matrix = basis
            .iter()
            .map(|a| basis.iter().map(|b| dot(a, b) * &form_scale).collect())
            .collect();
        if !is_positive_definite(&gram) {
            return Err(LatticeError::NotPositiveDefinite);
        }
        Ok(ExactLattice { basis, form_scale, gram })
    }

    pub fn from_integer_rows(rows: &[Vec<i64>], form_scale: Rational) -> Result<Self, LatticeError> {
        let basis = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Self::new(basis, form_scale)
    }

    /// Lattice spanned over ℤ by an arbitrary (possibly dependent) generating set.
    pub fn from_generators(gens: &[Vec<Rational>], form_scale: Rational) -> Result<Self, LatticeError> {
        let den = lcm_of_denominators(gens.iter().flatten());
        let rows = gens
            .iter()
            .map(|g| g.iter().map(|q| (q * BigRational::from_integer(den.clone())).to_integer()).collect())
            .collect();
        let ech = integer_row_echelon(rows);
        let basis = ech
            .into_iter()
            .map(|r| r.into_iter().map(|x| BigRational::new(x, den.clone())).collect())
            .collect();
        Self::new(basis, form_scale)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis[0].len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn form_scale(&self) -> &Rational {
        &self.form_scale
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn inner(&self, a: &[Rational], b: &[Rational]) -> Rational {
        dot(a, b) * &self.form_scale
    }

    pub fn norm(&self, a: &[Rational]) -> Rational {
        self.inner(a, a)
    }

    pub fn det(&self) -> Rational {
        determinant(&self.gram)
    }

    pub fn is_integral(&self) -> bool {
        self.gram.iter().flatten().all(|q| q.is_integer())
    }

    pub fn is_even(&self) -> bool {
        self.is_integral()
            && (0..self.rank()).all(|i| self.gram[i][i].to_integer().is_even())
    }

    pub fn vector(&self, coeffs: &[i64]) -> Vec<Rational> {
        let c: Vec<Rational> = coeffs.iter().map(|&x| int(x)).collect();
        vec_mat(&c, &self.basis)
    }

    /// Coordinates of an ambient vector with respect to the basis, or `None`
    /// if it is outside the real span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if v.len() != self.ambient_dim() {
            return None;
        }
        let rhs: Vec<Rational> = self.basis.iter().map(|b| self.inner(b, v)).collect();
        let ginv = inverse(&self.gram).ok()?;
        let c = vec_mat(&rhs, &ginv);
        (vec_mat(&c, &self.basis) == v).then_some(c)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some_and(|c| c.iter().all(|q| q.is_integer()))
    }

    /// The lattice `c·L`.
    pub fn scaled(&self, c: &Rational) -> Self {
        let basis = self.basis.iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
        let c2 = c * c;
        let gram = self.gram.iter().map(|r| r.iter().map(|x| x * &c2).collect()).collect();
        ExactLattice { basis, form_scale: self.form_scale.clone(), gram }
    }

    /// Dual lattice inside the real span, basis `G⁻¹·B`.
    pub fn dual(&self) -> Self {
        let ginv = inverse(&self.gram).expect("gram is positive definite");
        let basis = mat_mul(&ginv, &self.basis);
        ExactLattice { basis, form_scale: self.form_scale.clone(), gram: ginv }
    }

    /// New basis `U·B` for an integer matrix `U` with determinant ±1.
    pub fn transformed(&self, u: &[Vec<i64>]) -> Result<Self, LatticeError> {
        let um: Matrix = u.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        if um.len() != self.rank() || determinant(&um).abs() != Rational::one() {
            return Err(LatticeError::NotUnimodular);
        }
        Self::new(mat_mul(&um, &self.basis), self.form_scale.clone())
    }

    /// True if both describe the same set of ambient vectors with the same form.
    pub fn same_lattice(&self, other: &ExactLattice) -> bool {
        self.form_scale == other.form_scale
            && self.rank() == other.rank()
            && self.ambient_dim() == other.ambient_dim()
            && self.basis.iter().all(|b| other.contains(b))
            && other.basis.iter().all(|b| self.contains(b))
    }

    /// Least common denominator of all basis entries; every lattice vector
    /// has ambient coordinates in `(1/d)ℤ`.
    pub fn common_denominator(&self) -> BigInt {
        lcm_of_denominators(self.basis.iter().flatten())
    }

    pub fn to_file(&self) -> LatticeFile {
        LatticeFile {
            rank: self.rank(),
            ambient: self.ambient_dim(),
            form_scale: Some(self.form_scale.to_string()),
            basis: self
                .basis
                .iter()
                .map(|r| r.iter().map(|q| [JsonInt::from_big(q.numer()), JsonInt::from_big(q.denom())]).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("lattice serialises")
    }

    pub fn from_json(s: &str) -> Result<Self, LatticeError> {
        let f: LatticeFile = serde_json::from_str(s).map_err(|e| LatticeError::InvalidFile(e.to_string()))?;
        f.into_lattice()
    }
}

/// On-disk lattice: rows of `[numerator, denominator]` pairs. `form_scale`
/// defaults to 1 (standard dot product).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeFile {
    pub rank: usize,
    pub ambient: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form_scale: Option<String>,
    pub basis: Vec<Vec<[JsonInt; 2]>>,
}

/// An integer in JSON: a plain number when it fits in `i64`, else a decimal string.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    pub fn from_big(x: &BigInt) -> Self {
        x.to_i64().map_or_else(|| JsonInt::Big(x.to_string()), JsonInt::Small)
    }

    pub fn to_big(&self) -> Result<BigInt, LatticeError> {
        match self {
            JsonInt::Small(x) => Ok(BigInt::from(*x)),
            JsonInt::Big(s) => s.parse().map_err(|_| LatticeError::Parse(s.clone())),
        }
    }
}

impl LatticeFile {
    pub fn into_lattice(self) -> Result<ExactLattice, LatticeError> {
        if self.basis.len() != self.rank {
            return Err(LatticeError::DimensionMismatch { expected: self.rank, got: self.basis.len() });
        }
        let mut basis = Vec::with_capacity(self.rank);
        for row in self.basis {
            if row.len() != self.ambient {
                return Err(LatticeError::DimensionMismatch { expected: self.ambient, got: row.len() });
            }
            let mut r = Vec::with_capacity(row.len());
            for [n, d] in row {
                let (n, d) = (n.to_big()?, d.to_big()?);
                if d.is_zero() {
                    return Err(LatticeError::ZeroDenominator);
                }
                r.push(BigRational::new(n, d));
            }
            basis.push(r);
        }
        let scale = match self.form_scale {
            Some(s) => parse_rational(&s)?,
            None => Rational::one(),
        };
        ExactLattice::new(basis, scale)
    }
}

/// A translate `shift + L`.
#[derive(Clone, Debug)]
pub struct Coset<'a> {
    pub lattice: &'a ExactLattice,
    pub shift: Vec<Rational>,
}

impl<'a> Coset<'a> {
    pub fn new(lattice: &'a ExactLattice, shift: Vec<Rational>) -> Result<Self, LatticeError> {
        if shift.len() != lattice.ambient_dim() {
            return Err(LatticeError::DimensionMismatch { expected: lattice.ambient_dim(), got: shift.len() });
        }
        Ok(Coset { lattice, shift })
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let d: Vec<Rational> = v.iter().zip(&self.shift).map(|(a, b)| a - b).collect();
        self.lattice.contains(&d)
    }

    pub fn same_coset(&self, other: &Coset<'_>) -> bool {
        self.lattice.same_lattice(other.lattice) && self.contains(&other.shift)
    }
}

static LEECH: OnceLock<ExactLattice> = OnceLock::new();

/// The Leech lattice in integer coordinates with inner product `x·y/8`.
///
/// The bundled basis is checked on first use: even, unimodular, no roots.
pub fn leech_lattice() -> &'static ExactLattice {
    LEECH.get_or_init(|| {
        let l = ExactLattice::from_json(include_str!("../data/leech.json")).expect("bundled Leech basis parses");
        assert_eq!(l.rank(), 24);
        assert!(l.is_even(), "bundled Leech basis is not even");
        assert!(l.det().is_one(), "bundled Leech basis is not unimodular");
        let e = crate::enumerate::Enumerator::new(&l).expect("Leech enumerator");
        let short = e
            .close_vectors(
                &crate::enumerate::SphereQuery::ball(vec![Rational::zero(); 24], int(2)),
                &crate::enumerate::EnumConfig::default(),
            )
            .expect("root search");
        assert_eq!(short.len(), 1, "bundled Leech basis has roots");
        l
    })
}

/// `K = √2·D12+`, in D12+ coordinates with form scale 2.
pub fn d12plus_scaled() -> ExactLattice {
    let mut gens: Vec<Vec<Rational>> = Vec::new();
    for i in 0..11 {
        let mut v = vec![Rational::zero(); 12];
        v[i] = int(1);
        v[i + 1] = int(-1);
        gens.push(v);
    }
    let mut v = vec![Rational::zero(); 12];
    v[10] = int(1);
    v[11] = int(1);
    gens.push(v);
    gens.push(vec![rat(1, 2); 12]);
    ExactLattice::from_generators(&gens, int(2)).expect("D12+ generators")
}

/// `L/2`; for `L = K` this is the dual lattice.
pub fn dual_scale_half(l: &ExactLattice) -> ExactLattice {
    l.scaled(&rat(1, 2))
}

/// Exact LLL reduction with δ = 3/4, returning the reduced lattice and the
/// integer transform `U` with `reduced.basis = U·l.basis`.
pub fn lll_reduce_with_transform(l: &ExactLattice) -> (ExactLattice, Vec<Vec<i64>>) {
    let n = l.rank();
    let delta = rat(3, 4);
    let half = rat(1, 2);
    let mut g = l.gram().clone();
    let mut h: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut mu: Matrix = vec![vec![Rational::zero(); n]; n];
    let mut bstar: Vec<Rational> = vec![Rational::zero(); n];

    let compute_row = |k: usize, g: &Matrix, mu: &mut Matrix, bstar: &mut Vec<Rational>| {
        for j in 0..k {
            let mut s = g[k][j].clone();
            for i in 0..j {
                s -= &mu[j][i] * &mu[k][i] * &bstar[i];
            }
            mu[k][j] = s / &bstar[j];
        }
        let mut s = g[k][k].clone();
        for j in 0..k {
            s -= &mu[k][j] * &mu[k][j] * &bstar[j];
        }
        bstar[k] = s;
    };

    let reduce = |k: usize, l: usize, g: &mut Matrix, h: &mut Vec<Vec<BigInt>>, mu: &mut Matrix| {
        if mu[k][l].abs() <= half {
            return;
        }
        let q = mu[k][l].round();
        let qi = q.to_integer();
        let hl = h[l].clone();
        for (x, y) in h[k].iter_mut().zip(&hl) {
            *x -= &qi * y;
        }
        for j in 0..n {
            let t = &q * &g[l][j];
            g[k][j] -= t;
        }
        for j in 0..n {
            let t = &q * &g[j][l];
            g[j][k] -= t;
        }
        mu[k][l] -= &q;
        for i in 0..l {
            let t = &q * &mu[l][i];
            mu[k][i] -= t;
        }
    };

    if n > 0 {
        bstar[0] = g[0][0].clone();
    }
    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            compute_row(k, &g, &mut mu, &mut bstar);
        }
        reduce(k, k - 1, &mut g, &mut h, &mut mu);
        let lhs = bstar[k].clone();
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bstar[k - 1];
        if lhs < rhs {
            h.swap(k, k - 1);
            g.swap(k, k - 1);
            for row in g.iter_mut() {
                row.swap(k, k - 1);
            }
            for j in 0..k - 1 {
                let t = mu[k][j].clone();
                mu[k][j] = mu[k - 1][j].clone();
                mu[k - 1][j] = t;
            }
            let m = mu[k][k - 1].clone();
            let b = &bstar[k] + &m * &m * &bstar[k - 1];
            mu[k][k - 1] = &m * &bstar[k - 1] / &b;
            let bk1 = bstar[k - 1].clone();
            bstar[k - 1] = b.clone();
            bstar[k] = &bk1 * &bstar[k] / &b;
            for i in k + 1..=kmax {
                let t = mu[i][k].clone();
                mu[i][k] = &mu[i][k - 1] - &m * &t;
                mu[i][k - 1] = &t + &mu[k][k - 1] * &mu[i][k];
            }
            k = k.max(2) - 1;
        } else {
            for l in (0..k - 1).rev() {
                reduce(k, l, &mut g, &mut h, &mut mu);
            }
            k += 1;
        }
    }

    let u: Vec<Vec<i64>> = h
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().expect("LLL transform fits in i64")).collect())
        .collect();
    let hm: Matrix = h.into_iter().map(|r| r.into_iter().map(BigRational::from_integer).collect()).collect();
    let basis = mat_mul(&hm, l.basis());
    let reduced = ExactLattice { basis, form_scale: l.form_scale().clone(), gram: g };
    debug_assert_eq!(reduced.gram, ExactLattice::new(reduced.basis.clone(), reduced.form_scale.clone()).unwrap().gram);
    (reduced, u)
}

pub fn lll_reduce(l: &ExactLattice) -> ExactLattice {
    lll_reduce_with_transform(l).0
}

/// Checks the size-reduction and Lovász conditions with δ = 3/4.
pub fn is_lll_reduced(l: &ExactLattice) -> bool {
    let n = l.rank();
    let g = l.gram();
    let mut mu: Matrix = vec![vec![Rational::zero(); n]; n];
    let mut bstar: Vec<Rational> = vec![Rational::zero(); n];
    for k in 0..n {
        for j in 0..k {
            let mut s = g[k][j].clone();
            for i in 0..j {
                s -= &mu[j][i] * &mu[k][i] * &bstar[i];
            }
            mu[k][j] = s / &bstar[j];
        }
        let mut s = g[k][k].clone();
        for j in 0..k {
            s -= &mu[k][j] * &mu[k][j] * &bstar[j];
        }
        bstar[k] = s;
    }
    let half = rat(1, 2);
    (1..n).all(|k| (0..k).all(|j| mu[k][j].abs() <= half))
        && (1..n).all(|k| bstar[k] >= (rat(3, 4) - &mu[k][k - 1] * &mu[k][k - 1]) * &bstar[k - 1])
}
