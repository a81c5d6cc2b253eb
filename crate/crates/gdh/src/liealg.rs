//! Simple Lie types, affine structures and the lowest-order trace identity.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{ComponentType, Family, HoleDiagram};
use crate::exactlat::{int, rat, Rational};

/// Largest total rank of `V₁` in central charge 24.
pub const MAX_RANK: u32 = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("invalid simple type {0}")]
    InvalidType(String),
    #[error("cannot parse affine structure {0:?}")]
    Parse(String),
    #[error("affine structure is empty")]
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LieFamily {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl LieFamily {
    pub const ALL: [LieFamily; 7] = [LieFamily::A, LieFamily::B, LieFamily::C, LieFamily::D, LieFamily::E, LieFamily::F, LieFamily::G];

    pub fn letter(self) -> char {
        b"ABCDEFG"[self as usize] as char
    }

    pub fn from_letter(c: char) -> Option<Self> {
        "ABCDEFG".find(c).map(|i| Self::ALL[i])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SimpleType {
    pub family: LieFamily,
    pub rank: u32,
}

impl SimpleType {
    pub fn new(family: LieFamily, rank: u32) -> Option<Self> {
        let ok = match family {
            LieFamily::A => rank >= 1,
            LieFamily::B => rank >= 2,
            LieFamily::C => rank >= 3,
            LieFamily::D => rank >= 4,
            LieFamily::E => (6..=8).contains(&rank),
            LieFamily::F => rank == 4,
            LieFamily::G => rank == 2,
        };
        ok.then_some(SimpleType { family, rank })
    }

    pub fn dual_coxeter(&self) -> u32 {
        let l = self.rank;
        match self.family {
            LieFamily::A => l + 1,
            LieFamily::B => 2 * l - 1,
            LieFamily::C => l + 1,
            LieFamily::D => 2 * l - 2,
            LieFamily::E => match l {
                6 => 12,
                7 => 18,
                _ => 30,
            },
            LieFamily::F => 9,
            LieFamily::G => 4,
        }
    }

    pub fn dim(&self) -> u32 {
        let l = self.rank;
        match self.family {
            LieFamily::A => l * (l + 2),
            LieFamily::B | LieFamily::C => l * (2 * l + 1),
            LieFamily::D => l * (2 * l - 1),
            LieFamily::E => match l {
                6 => 78,
                7 => 133,
                _ => 248,
            },
            LieFamily::F => 52,
            LieFamily::G => 14,
        }
    }

    /// Ratio of squared lengths of long and short roots.
    pub fn lacing(&self) -> u32 {
        match self.family {
            LieFamily::A | LieFamily::D | LieFamily::E => 1,
            LieFamily::B | LieFamily::C | LieFamily::F => 2,
            LieFamily::G => 3,
        }
    }

    /// All simple types of rank at most `max_rank`.
    pub fn all(max_rank: u32) -> Vec<SimpleType> {
        let mut v = Vec::new();
        for f in LieFamily::ALL {
            for r in 1..=max_rank {
                if let Some(t) = SimpleType::new(f, r) {
                    v.push(t);
                }
            }
        }
        v
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family.letter(), self.rank)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Ideal {
    pub ty: SimpleType,
    pub level: u32,
}

impl Ideal {
    pub fn ratio(&self) -> Rational {
        rat(self.ty.dual_coxeter() as i64, self.level as i64)
    }
}

/// Multiset of simple ideals with levels, e.g. `A_{3,1}^2 D_{5,2}^2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct AffineStructure {
    ideals: BTreeMap<Ideal, u32>,
}

impl From<AffineStructure> for String {
    fn from(a: AffineStructure) -> String {
        a.notation()
    }
}

impl TryFrom<String> for AffineStructure {
    type Error = LieError;
    fn try_from(s: String) -> Result<Self, LieError> {
        AffineStructure::parse(&s)
    }
}

impl AffineStructure {
    pub fn new(ideals: impl IntoIterator<Item = (Ideal, u32)>) -> Result<Self, LieError> {
        let mut m = BTreeMap::new();
        for (i, k) in ideals {
            if k > 0 {
                *m.entry(i).or_insert(0) += k;
            }
        }
        if m.is_empty() {
            return Err(LieError::Empty);
        }
        Ok(AffineStructure { ideals: m })
    }

    pub fn ideals(&self) -> impl Iterator<Item = (Ideal, u32)> + '_ {
        self.ideals.iter().map(|(&i, &m)| (i, m))
    }

    pub fn total_rank(&self) -> u32 {
        self.ideals().map(|(i, m)| i.ty.rank * m).sum()
    }

    pub fn total_dim(&self) -> u32 {
        self.ideals().map(|(i, m)| i.ty.dim() * m).sum()
    }

    /// The common value of `h^∨/k`, if all ideals share one.
    pub fn ratio(&self) -> Option<Rational> {
        let mut it = self.ideals.keys().map(Ideal::ratio);
        let first = it.next()?;
        it.all(|r| r == first).then_some(first)
    }

    /// `h^∨/k` is common and `Σ dim = 24(1 + h^∨/k)`, rank at most 24.
    pub fn satisfies_trace_identity(&self) -> bool {
        match self.ratio() {
            Some(r) => int(self.total_dim() as i64) == int(24) * (int(1) + r) && self.total_rank() <= MAX_RANK,
            None => false,
        }
    }

    /// `lcm(lᵢ·kᵢ)` over the ideals.
    pub fn lacing_level_lcm(&self) -> u64 {
        self.ideals.keys().fold(1u64, |acc, i| acc.lcm(&u64::from(i.ty.lacing() * i.level)))
    }

    /// Standard notation, ideals sorted by family, rank and level.
    pub fn notation(&self) -> String {
        let mut s = String::new();
        for (i, m) in self.ideals() {
            s.push_str(&format!("{}_{{{},{}}}", i.ty.family.letter(), i.ty.rank, i.level));
            match m {
                1 => {}
                m if m >= 10 => s.push_str(&format!("^{{{m}}}")),
                m => s.push_str(&format!("^{m}")),
            }
        }
        s
    }

    /// Parses `X_{r,k}^m` factors in any order; `$` and spaces are ignored.
    pub fn parse(s: &str) -> Result<Self, LieError> {
        let err = || LieError::Parse(s.to_string());
        let t: Vec<char> = s.chars().filter(|c| !c.is_whitespace() && *c != '$').collect();
        let mut i = 0;
        let mut ideals = Vec::new();
        let number = |i: &mut usize| -> Option<u32> {
            let st = *i;
            while *i < t.len() && t[*i].is_ascii_digit() {
                *i += 1;
            }
            t[st..*i].iter().collect::<String>().parse().ok()
        };
        while i < t.len() {
            let fam = LieFamily::from_letter(t[i]).ok_or_else(err)?;
            i += 1;
            if t.get(i) != Some(&'_') || t.get(i + 1) != Some(&'{') {
                return Err(err());
            }
            i += 2;
            let rank = number(&mut i).ok_or_else(err)?;
            if t.get(i) != Some(&',') {
                return Err(err());
            }
            i += 1;
            let level = number(&mut i).ok_or_else(err)?;
            if t.get(i) != Some(&'}') {
                return Err(err());
            }
            i += 1;
            let mut mult = 1;
            if t.get(i) == Some(&'^') {
                i += 1;
                if t.get(i) == Some(&'{') {
                    i += 1;
                    mult = number(&mut i).ok_or_else(err)?;
                    if t.get(i) != Some(&'}') {
                        return Err(err());
                    }
                    i += 1;
                } else {
                    // a single digit exponent
                    let d = t.get(i).and_then(|c| c.to_digit(10)).ok_or_else(err)?;
                    mult = d;
                    i += 1;
                }
            }
            let ty = SimpleType::new(fam, rank).ok_or_else(|| LieError::InvalidType(format!("{}_{}", fam.letter(), rank)))?;
            if level == 0 {
                return Err(err());
            }
            ideals.push((Ideal { ty, level }, mult));
        }
        Self::new(ideals)
    }
}

impl fmt::Display for AffineStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

/// Order of the inverse orbifold automorphism, `lcm(lᵢ·hᵢ^∨)`.
pub fn orbifold_order(s: &AffineStructure) -> u64 {
    s.ideals.keys().fold(1u64, |acc, i| acc.lcm(&u64::from(i.ty.lacing() * i.ty.dual_coxeter())))
}

/// Hole diagram forced by the affine structure: ideals attaining the order
/// contribute A_l → Ã_l, B_l → A_1, C_l → A_{l−1}, D_l → D̃_l, E_l → Ẽ_l,
/// F_4 → A_2, G_2 → A_1.
pub fn invtype_diagram(s: &AffineStructure) -> HoleDiagram {
    let n = orbifold_order(s);
    let mut d = HoleDiagram::empty();
    for (i, m) in s.ideals() {
        if u64::from(i.ty.lacing() * i.ty.dual_coxeter()) != n {
            continue;
        }
        let l = i.ty.rank;
        let c = match i.ty.family {
            LieFamily::A => ComponentType::affine(Family::A, l),
            LieFamily::B | LieFamily::G => ComponentType::finite(Family::A, 1),
            LieFamily::C => ComponentType::finite(Family::A, l - 1),
            LieFamily::D => ComponentType::affine(Family::D, l),
            LieFamily::E => ComponentType::affine(Family::E, l),
            LieFamily::F => ComponentType::finite(Family::A, 2),
        };
        d.add(c, m);
    }
    d
}

/// Every semisimple `V₁` of rank ≤ 24 with a common ratio `r = hᵢ^∨/kᵢ` and
/// `Σ dim = 24(1 + r)`, sorted by ratio and then notation.
pub fn trace_identity_solutions() -> Vec<AffineStructure> {
    let types = SimpleType::all(MAX_RANK);
    // r = h/k with 24r ∈ ℤ, i.e. k | 24h
    let mut ratios: Vec<Rational> = Vec::new();
    for t in &types {
        let h = t.dual_coxeter() as i64;
        for k in 1..=24 * h {
            if (24 * h) % k == 0 {
                let r = rat(h, k);
                if r <= int(46) {
                    ratios.push(r);
                }
            }
        }
    }
    ratios.sort();
    ratios.dedup();
    let mut out: Vec<(Rational, AffineStructure)> = ratios
        .par_iter()
        .flat_map_iter(|r| solutions_for_ratio(&types, r).into_iter().map(move |s| (r.clone(), s)))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.notation().cmp(&b.1.notation())));
    out.into_iter().map(|(_, s)| s).collect()
}

fn solutions_for_ratio(types: &[SimpleType], r: &Rational) -> Vec<AffineStructure> {
    let total = int(24) * (int(1) + r);
    if !total.is_integer() {
        return Vec::new();
    }
    let total: u32 = total.to_integer().try_into().expect("small dimension");
    let mut cands: Vec<Ideal> = types
        .iter()
        .filter_map(|t| {
            let k = rat(t.dual_coxeter() as i64, 1) / r;
            k.is_integer().then(|| Ideal { ty: *t, level: k.to_integer().try_into().expect("small level") })
        })
        .filter(|i| i.ty.dim() <= total)
        .collect();
    // nonincreasing dimension; ties broken by type for determinism
    cands.sort_by(|a, b| b.ty.dim().cmp(&a.ty.dim()).then(a.ty.cmp(&b.ty)));
    let mut out = Vec::new();
    let mut cur: Vec<(Ideal, u32)> = Vec::new();
    fn rec(cands: &[Ideal], idx: usize, dim: u32, rank: u32, cur: &mut Vec<(Ideal, u32)>, out: &mut Vec<AffineStructure>) {
        if dim == 0 {
            out.push(AffineStructure::new(cur.iter().copied()).expect("nonempty"));
            return;
        }
        if idx == cands.len() {
            return;
        }
        rec(cands, idx + 1, dim, rank, cur, out);
        let c = cands[idx];
        let mut m = 1;
        while c.ty.dim() * m <= dim && c.ty.rank * m <= rank {
            cur.push((c, m));
            rec(cands, idx + 1, dim - c.ty.dim() * m, rank - c.ty.rank * m, cur, out);
            cur.pop();
            m += 1;
        }
    }
    rec(&cands, 0, total, MAX_RANK, &mut cur, &mut out);
    out
}
