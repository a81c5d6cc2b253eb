//! Hole diagrams: edges from difference norms, structural recognition of
//! simply-laced components, Kac labels and centre reconstruction.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enumerate::VectorSet;
use crate::exactlat::{determinant, dot, int, ExactLattice, Matrix, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("invalid configuration: points {i} and {j} have difference half-norm {ratio}·(1−ρ)")]
    InvalidConfiguration { i: usize, j: usize, ratio: String },
    #[error("unrecognized component on nodes {0:?}")]
    Unrecognized(Vec<usize>),
    #[error("component is not affine")]
    NotAffine,
    #[error("points are not equidistant from the reconstructed centre")]
    NotEquidistant,
    #[error("1 − ρ must lie in (0, 1], got {0}")]
    BadRho(String),
    #[error("cannot parse diagram {0:?}")]
    Parse(String),
    #[error("affine components disagree on the centre")]
    CentreMismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        match c {
            'A' => Some(Family::A),
            'D' => Some(Family::D),
            'E' => Some(Family::E),
            _ => None,
        }
    }
}

/// A connected simply-laced Dynkin diagram, finite or affine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ComponentType {
    pub affine: bool,
    pub family: Family,
    pub rank: u32,
}

impl ComponentType {
    pub fn new(affine: bool, family: Family, rank: u32) -> Option<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        ok.then_some(ComponentType { affine, family, rank })
    }

    pub fn finite(family: Family, rank: u32) -> Self {
        Self::new(false, family, rank).expect("valid finite type")
    }

    pub fn affine(family: Family, rank: u32) -> Self {
        Self::new(true, family, rank).expect("valid affine type")
    }

    pub fn nodes(&self) -> usize {
        self.rank as usize + usize::from(self.affine)
    }

    fn braced(x: u32) -> String {
        if x >= 10 {
            format!("{{{x}}}")
        } else {
            x.to_string()
        }
    }

    pub fn latex(&self) -> String {
        let base = format!("{}_{}", self.family.letter(), Self::braced(self.rank));
        if self.affine {
            format!("\\tilde{{{}}}_{}", self.family.letter(), Self::braced(self.rank))
        } else {
            base
        }
    }

    /// `A_1`, `D~8`: ASCII form used in CSV output.
    pub fn ascii(&self) -> String {
        if self.affine {
            format!("{}~{}", self.family.letter(), self.rank)
        } else {
            format!("{}_{}", self.family.letter(), self.rank)
        }
    }

    /// `A_1`, `D̃_8` with a combining tilde.
    pub fn unicode(&self) -> String {
        if self.affine {
            format!("{}\u{303}_{}", self.family.letter(), self.rank)
        } else {
            format!("{}_{}", self.family.letter(), self.rank)
        }
    }
}

/// Multiset of components. Iteration order is the canonical order
/// (finite before affine, then family, then rank).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct HoleDiagram {
    components: BTreeMap<ComponentType, u32>,
}

impl HoleDiagram {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_components(it: impl IntoIterator<Item = ComponentType>) -> Self {
        let mut d = Self::default();
        for c in it {
            d.add(c, 1);
        }
        d
    }

    pub fn add(&mut self, c: ComponentType, mult: u32) {
        if mult > 0 {
            *self.components.entry(c).or_insert(0) += mult;
        }
    }

    pub fn components(&self) -> impl Iterator<Item = (ComponentType, u32)> + '_ {
        self.components.iter().map(|(&c, &m)| (c, m))
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component_count(&self) -> u32 {
        self.components.values().sum()
    }

    pub fn node_count(&self) -> usize {
        self.components.iter().map(|(c, &m)| c.nodes() * m as usize).sum()
    }

    fn render(&self, f: impl Fn(&ComponentType) -> String, sep: &str, braces: bool) -> String {
        self.components
            .iter()
            .map(|(c, &m)| match m {
                1 => f(c),
                m if braces && m >= 10 => format!("{}^{{{m}}}", f(c)),
                m => format!("{}^{m}", f(c)),
            })
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Deterministic display name, e.g. `A_1^2 D̃_8`; `∅` when empty.
    pub fn canonical_name(&self) -> String {
        if self.is_empty() {
            return "∅".to_string();
        }
        self.render(ComponentType::unicode, " ", false)
    }

    /// LaTeX in the notation of the tables, e.g. `A_1^2\tilde{D}_8`.
    pub fn latex(&self) -> String {
        if self.is_empty() {
            return "\\emptyset".to_string();
        }
        self.render(ComponentType::latex, "", true)
    }

    /// ASCII, e.g. `A_1^2 D~8`; `-` when empty.
    pub fn ascii(&self) -> String {
        if self.is_empty() {
            return "-".to_string();
        }
        self.render(ComponentType::ascii, " ", false)
    }

    /// Parses any of the LaTeX, unicode or ASCII forms, in any component order.
    pub fn parse(s: &str) -> Result<Self, DiagramError> {
        let err = || DiagramError::Parse(s.to_string());
        let t = s.trim();
        if t.is_empty() || t == "\\emptyset" || t == "∅" || t == "-" || t == "$\\emptyset$" {
            return Ok(Self::empty());
        }
        let t = t.trim_matches('$');
        let chars: Vec<char> = t.chars().collect();
        let mut i = 0;
        let mut d = Self::empty();
        let read_number = |i: &mut usize| -> Option<u32> {
            let braced = chars.get(*i) == Some(&'{');
            if braced {
                *i += 1;
            }
            let start = *i;
            while *i < chars.len() && chars[*i].is_ascii_digit() {
                *i += 1;
            }
            let v: u32 = chars[start..*i].iter().collect::<String>().parse().ok()?;
            if braced {
                if chars.get(*i) != Some(&'}') {
                    return None;
                }
                *i += 1;
            }
            Some(v)
        };
        while i < chars.len() {
            if chars[i].is_whitespace() {
                i += 1;
                continue;
            }
            let mut affine = false;
            let family;
            if t[t.char_indices().nth(i).map_or(t.len(), |(b, _)| b)..].starts_with("\\tilde{") {
                affine = true;
                i += "\\tilde{".len();
                family = chars.get(i).copied().and_then(Family::from_letter).ok_or_else(err)?;
                i += 1;
                if chars.get(i) != Some(&'}') {
                    return Err(err());
                }
                i += 1;
            } else if let Some(f) = match chars[i] {
                'Ã' => Some(Family::A),
                'Ẽ' => Some(Family::E),
                _ => None,
            } {
                // precomposed tilde letters
                affine = true;
                family = f;
                i += 1;
            } else {
                family = chars.get(i).copied().and_then(Family::from_letter).ok_or_else(err)?;
                i += 1;
                match chars.get(i) {
                    Some('\u{303}') => {
                        affine = true;
                        i += 1;
                    }
                    Some('~') => {
                        affine = true;
                        i += 1;
                    }
                    _ => {}
                }
            }
            if chars.get(i) == Some(&'_') {
                i += 1;
            } else if !affine {
                return Err(err());
            }
            let rank = read_number(&mut i).ok_or_else(err)?;
            let mut mult = 1;
            if chars.get(i) == Some(&'^') {
                i += 1;
                mult = read_number(&mut i).ok_or_else(err)?;
            }
            let c = ComponentType::new(affine, family, rank).ok_or_else(err)?;
            d.add(c, mult);
        }
        Ok(d)
    }
}

impl From<HoleDiagram> for String {
    fn from(d: HoleDiagram) -> String {
        d.latex()
    }
}

impl TryFrom<String> for HoleDiagram {
    type Error = DiagramError;
    fn try_from(s: String) -> Result<Self, DiagramError> {
        HoleDiagram::parse(&s)
    }
}

impl fmt::Display for HoleDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_name())
    }
}

/// Points on a sphere of squared radius `2(1−ρ)` around an implicit centre.
#[derive(Clone, Debug)]
pub struct WeightConfig {
    pub points: Vec<Vec<Rational>>,
    pub form_scale: Rational,
    pub one_minus_rho: Rational,
}

impl WeightConfig {
    pub fn new(points: Vec<Vec<Rational>>, form_scale: Rational, one_minus_rho: Rational) -> Result<Self, DiagramError> {
        if !one_minus_rho.is_positive() || one_minus_rho > Rational::one() {
            return Err(DiagramError::BadRho(one_minus_rho.to_string()));
        }
        Ok(WeightConfig { points, form_scale, one_minus_rho })
    }

    pub fn from_vector_set(set: &VectorSet, lattice: &ExactLattice, one_minus_rho: Rational) -> Result<Self, DiagramError> {
        Self::new(set.vectors(), lattice.form_scale().clone(), one_minus_rho)
    }

    fn sq_dist(&self, i: usize, j: usize) -> Rational {
        let d: Vec<Rational> = self.points[i].iter().zip(&self.points[j]).map(|(a, b)| a - b).collect();
        dot(&d, &d) * &self.form_scale
    }

    /// Squared radius `2(1−ρ)`.
    pub fn radius_sq(&self) -> Rational {
        &self.one_minus_rho * int(2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub ty: ComponentType,
    /// Indices into the configuration's points, ascending.
    pub nodes: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct HoleAnalysis {
    pub diagram: HoleDiagram,
    pub components: Vec<Component>,
    /// Edge multiplicity (0, 1 or 2) between points.
    pub edges: Vec<Vec<u8>>,
}

impl HoleAnalysis {
    pub fn cartan(&self, comp: &Component) -> Vec<Vec<i64>> {
        comp.nodes
            .iter()
            .map(|&i| {
                comp.nodes
                    .iter()
                    .map(|&j| if i == j { 2 } else { -i64::from(self.edges[i][j]) })
                    .collect()
            })
            .collect()
    }
}

/// Edges and components of the configuration.
pub fn build_diagram(w: &WeightConfig) -> Result<HoleAnalysis, DiagramError> {
    let n = w.points.len();
    let mut edges = vec![vec![0u8; n]; n];
    let unit = &w.one_minus_rho * int(2);
    for i in 0..n {
        for j in i + 1..n {
            // difference half-norm in units of (1−ρ) is d²/(2(1−ρ))
            let ratio = w.sq_dist(i, j) / &unit;
            let m = if ratio == int(2) {
                0
            } else if ratio == int(3) {
                1
            } else if ratio == int(4) {
                2
            } else {
                return Err(DiagramError::InvalidConfiguration { i, j, ratio: ratio.to_string() });
            };
            edges[i][j] = m;
            edges[j][i] = m;
        }
    }
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut nodes = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < nodes.len() {
            let v = nodes[k];
            for u in 0..n {
                if !seen[u] && edges[v][u] > 0 {
                    seen[u] = true;
                    nodes.push(u);
                }
            }
            k += 1;
        }
        nodes.sort_unstable();
        let ty = recognise(&nodes, &edges)?;
        components.push(Component { ty, nodes });
    }
    let diagram = HoleDiagram::from_components(components.iter().map(|c| c.ty));
    Ok(HoleAnalysis { diagram, components, edges })
}

fn recognise(nodes: &[usize], edges: &[Vec<u8>]) -> Result<ComponentType, DiagramError> {
    let bad = || DiagramError::Unrecognized(nodes.to_vec());
    let n = nodes.len();
    let deg = |v: usize| nodes.iter().filter(|&&u| edges[v][u] > 0).count();
    let edge_count: usize = nodes.iter().map(|&v| deg(v)).sum::<usize>() / 2;
    let has_double = nodes.iter().any(|&v| nodes.iter().any(|&u| edges[v][u] == 2));

    let ty = if has_double {
        if n != 2 {
            return Err(bad());
        }
        ComponentType::affine(Family::A, 1)
    } else if n == 1 {
        ComponentType::finite(Family::A, 1)
    } else if edge_count == n {
        if !nodes.iter().all(|&v| deg(v) == 2) {
            return Err(bad());
        }
        ComponentType::affine(Family::A, n as u32 - 1)
    } else if edge_count == n - 1 {
        let branch: Vec<usize> = nodes.iter().copied().filter(|&v| deg(v) >= 3).collect();
        match branch.len() {
            0 => ComponentType::finite(Family::A, n as u32),
            1 => {
                let c = branch[0];
                let arms = arm_lengths(c, nodes, edges);
                match arms.as_slice() {
                    [1, 1, 1, 1] => ComponentType::affine(Family::D, 4),
                    [1, 1, r] => ComponentType::finite(Family::D, *r as u32 + 3),
                    [1, 2, 2] => ComponentType::finite(Family::E, 6),
                    [1, 2, 3] => ComponentType::finite(Family::E, 7),
                    [1, 2, 4] => ComponentType::finite(Family::E, 8),
                    [2, 2, 2] => ComponentType::affine(Family::E, 6),
                    [1, 3, 3] => ComponentType::affine(Family::E, 7),
                    [1, 2, 5] => ComponentType::affine(Family::E, 8),
                    _ => return Err(bad()),
                }
            }
            2 => {
                let ok = branch.iter().all(|&b| {
                    deg(b) == 3 && nodes.iter().filter(|&&u| edges[b][u] > 0 && deg(u) == 1).count() >= 2
                });
                if !ok || n < 6 {
                    return Err(bad());
                }
                ComponentType::affine(Family::D, n as u32 - 1)
            }
            _ => return Err(bad()),
        }
    } else {
        return Err(bad());
    };

    // cross-check with the Cartan matrix: finite ⇔ positive definite,
    // affine ⇔ singular with a positive null vector
    let cartan: Matrix = nodes
        .iter()
        .map(|&i| nodes.iter().map(|&j| int(if i == j { 2 } else { -i64::from(edges[i][j]) })).collect())
        .collect();
    let det = determinant(&cartan);
    if ty.affine {
        if !det.is_zero() {
            return Err(bad());
        }
    } else if !det.is_positive() {
        return Err(bad());
    }
    Ok(ty)
}

/// Lengths of the arms hanging off branch node `c` in a tree, ascending.
fn arm_lengths(c: usize, nodes: &[usize], edges: &[Vec<u8>]) -> Vec<usize> {
    let mut arms = Vec::new();
    for &start in nodes.iter().filter(|&&u| edges[c][u] > 0) {
        let mut len = 1;
        let (mut prev, mut cur) = (c, start);
        loop {
            let next: Vec<usize> = nodes.iter().copied().filter(|&u| u != prev && edges[cur][u] > 0).collect();
            if next.len() != 1 {
                if !next.is_empty() {
                    len = usize::MAX; // another branch point; not a star
                }
                break;
            }
            prev = cur;
            cur = next[0];
            len += 1;
        }
        arms.push(len);
    }
    arms.sort_unstable();
    arms
}

/// Primitive positive null vector of an affine Cartan matrix.
pub fn kac_labels(cartan: &[Vec<i64>]) -> Result<Vec<u64>, DiagramError> {
    let n = cartan.len();
    let m: Matrix = cartan.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    // reduced row echelon form to find the kernel
    let mut a = m;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x /= &piv;
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..n {
                    let t = &f * &a[r][k];
                    a[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if n - pivots.len() != 1 {
        return Err(DiagramError::NotAffine);
    }
    let free = (0..n).find(|c| !pivots.contains(c)).expect("one free column");
    let mut v = vec![Rational::zero(); n];
    v[free] = Rational::one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -a[row][free].clone();
    }
    if v.iter().any(|x| x.is_negative()) {
        if v.iter().all(|x| !x.is_positive()) {
            v.iter_mut().for_each(|x| *x = -x.clone());
        } else {
            return Err(DiagramError::NotAffine);
        }
    }
    if v.iter().any(|x| x.is_zero()) {
        return Err(DiagramError::NotAffine);
    }
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Ok(ints.iter().map(|x| (x / &g).to_u64().expect("small label")).collect())
}

/// Kac labels of an affine component of a configuration, checked against
/// the weight vectors: `Σ aᵢαᵢ = 0` with `⟨αᵢ,αⱼ⟩ = 2(1−ρ) − d²(βᵢ,βⱼ)/2`.
pub fn component_kac_labels(w: &WeightConfig, h: &HoleAnalysis, comp: &Component) -> Result<Vec<u64>, DiagramError> {
    if !comp.ty.affine {
        return Err(DiagramError::NotAffine);
    }
    let labels = kac_labels(&h.cartan(comp))?;
    let r = w.radius_sq();
    let mut total = Rational::zero();
    for (a, &i) in comp.nodes.iter().enumerate() {
        for (b, &j) in comp.nodes.iter().enumerate() {
            let ip = &r - w.sq_dist(i, j) / int(2);
            total += ip * int(labels[a] as i64 * labels[b] as i64);
        }
    }
    if !total.is_zero() {
        return Err(DiagramError::NotAffine);
    }
    Ok(labels)
}

/// `h = Σ aᵢβᵢ / Σ aᵢ`, checked to be at squared distance `radius_sq` from every point.
pub fn affine_centre(points: &[Vec<Rational>], labels: &[u64], form_scale: &Rational, radius_sq: &Rational) -> Result<Vec<Rational>, DiagramError> {
    let dim = points[0].len();
    let total: u64 = labels.iter().sum();
    let mut h = vec![Rational::zero(); dim];
    for (p, &a) in points.iter().zip(labels) {
        for (x, y) in h.iter_mut().zip(p) {
            *x += y * int(a as i64);
        }
    }
    let h: Vec<Rational> = h.into_iter().map(|x| x / int(total as i64)).collect();
    for p in points {
        let d: Vec<Rational> = p.iter().zip(&h).map(|(a, b)| a - b).collect();
        if &(dot(&d, &d) * form_scale) != radius_sq {
            return Err(DiagramError::NotEquidistant);
        }
    }
    Ok(h)
}

/// Centre of a configuration with at least one affine component; all affine
/// components must give the same point.
pub fn configuration_centre(w: &WeightConfig, h: &HoleAnalysis) -> Result<Vec<Rational>, DiagramError> {
    let mut centre: Option<Vec<Rational>> = None;
    for comp in h.components.iter().filter(|c| c.ty.affine) {
        let labels = component_kac_labels(w, h, comp)?;
        let pts: Vec<Vec<Rational>> = comp.nodes.iter().map(|&i| w.points[i].clone()).collect();
        let c = affine_centre(&pts, &labels, &w.form_scale, &w.radius_sq())?;
        match &centre {
            Some(prev) if prev != &c => return Err(DiagramError::CentreMismatch),
            _ => centre = Some(c),
        }
    }
    let c = centre.ok_or(DiagramError::NotAffine)?;
    let r = w.radius_sq();
    for p in &w.points {
        let d: Vec<Rational> = p.iter().zip(&c).map(|(a, b)| a - b).collect();
        if dot(&d, &d) * &w.form_scale != r {
            return Err(DiagramError::NotEquidistant);
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlat::rat;

    fn a(r: u32) -> ComponentType {
        ComponentType::finite(Family::A, r)
    }

    #[test]
    fn canonical_ordering_and_names() {
        let mut d = HoleDiagram::empty();
        d.add(ComponentType::affine(Family::D, 8), 1);
        d.add(a(1), 2);
        assert_eq!(d.canonical_name(), "A_1^2 D\u{303}_8");
        assert_eq!(d.ascii(), "A_1^2 D~8");
        assert_eq!(d.latex(), "A_1^2\\tilde{D}_8");
        assert_eq!(HoleDiagram::empty().canonical_name(), "∅");
    }

    #[test]
    fn parse_precomposed() {
        assert_eq!(HoleDiagram::parse("Ã_1^24").unwrap().latex(), "\\tilde{A}_1^{24}");
        assert_eq!(HoleDiagram::parse("Ẽ_8 A_1").unwrap().latex(), "A_1\\tilde{E}_8");
    }

    #[test]
    fn parse_all_forms() {
        let want = HoleDiagram::parse("A_1^2\\tilde{D}_8").unwrap();
        for s in ["\\tilde{D}_8A_1^2", "A_1^2 D~8", "A_1^2 D\u{303}_8", "A_1 A_1 \\tilde{D}_8"] {
            assert_eq!(HoleDiagram::parse(s).unwrap(), want, "{s}");
        }
        let big = HoleDiagram::parse("\\tilde{A}_{11}\\tilde{D}_7\\tilde{E}_6").unwrap();
        assert_eq!(big.latex(), "\\tilde{A}_{11}\\tilde{D}_7\\tilde{E}_6");
        let mult = HoleDiagram::parse("\\tilde{A}_1^{24}").unwrap();
        assert_eq!(mult.node_count(), 48);
        assert!(HoleDiagram::parse("\\emptyset").unwrap().is_empty());
        assert!(HoleDiagram::parse("B_2").is_err());
        assert!(HoleDiagram::parse("D_3").is_err());
    }

    fn unit_points(n: usize) -> WeightConfig {
        let pts = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        WeightConfig::new(pts, int(1), rat(1, 2)).unwrap()
    }

    #[test]
    fn orthonormal_points_are_disjoint_a1() {
        // unit vectors: pairwise d² = 2 = 2·(2(1−ρ)/2) with 1−ρ = 1/2 → k = 2
        let w = unit_points(5);
        let h = build_diagram(&w).unwrap();
        assert_eq!(h.diagram.canonical_name(), "A_1^5");
    }

    #[test]
    fn double_edge_pair() {
        let w = WeightConfig::new(vec![vec![int(1)], vec![int(-1)]], int(1), rat(1, 2)).unwrap();
        let h = build_diagram(&w).unwrap();
        assert_eq!(h.diagram, HoleDiagram::from_components([ComponentType::affine(Family::A, 1)]));
        let labels = component_kac_labels(&w, &h, &h.components[0]).unwrap();
        assert_eq!(labels, vec![1, 1]);
        let c = configuration_centre(&w, &h).unwrap();
        assert_eq!(c, vec![int(0)]);
    }

    #[test]
    fn invalid_norm_is_an_error() {
        let w = WeightConfig::new(vec![vec![int(0)], vec![int(1)]], int(1), int(1)).unwrap();
        assert!(matches!(build_diagram(&w), Err(DiagramError::InvalidConfiguration { .. })));
        assert!(WeightConfig::new(vec![], int(1), int(0)).is_err());
    }

    fn cycle(n: usize) -> Vec<Vec<i64>> {
        let mut c = vec![vec![0; n]; n];
        for i in 0..n {
            c[i][i] = 2;
            c[i][(i + 1) % n] -= 1;
            c[(i + 1) % n][i] -= 1;
        }
        c
    }

    fn tree_cartan(edges: &[(usize, usize)], n: usize) -> Vec<Vec<i64>> {
        let mut c = vec![vec![0; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j) in edges {
            c[i][j] = -1;
            c[j][i] = -1;
        }
        c
    }

    #[test]
    fn kac_labels_of_affine_types() {
        for l in 2..=24 {
            let k = kac_labels(&cycle(l + 1)).unwrap();
            assert_eq!(k, vec![1; l + 1]);
        }
        // D̃4: centre node 0
        let d4 = tree_cartan(&[(0, 1), (0, 2), (0, 3), (0, 4)], 5);
        assert_eq!(kac_labels(&d4).unwrap(), vec![2, 1, 1, 1, 1]);
        for l in 5..=24usize {
            // D̃_l: path 0..l-2 with extra leaves on both ends
            let mut e: Vec<(usize, usize)> = (0..l - 2).map(|i| (i, i + 1)).collect();
            e.push((1, l - 1));
            e.push((l - 3, l));
            let k = kac_labels(&tree_cartan(&e, l + 1)).unwrap();
            assert_eq!(k.iter().sum::<u64>(), 2 * l as u64 - 2);
        }
        // Ẽ8 arms (1,2,5) around node 0
        let e8 = tree_cartan(&[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6), (6, 7), (7, 8)], 9);
        let k = kac_labels(&e8).unwrap();
        assert_eq!(k.iter().sum::<u64>(), 30);
        assert_eq!(kac_labels(&tree_cartan(&[(0, 1)], 2)), Err(DiagramError::NotAffine));
    }
}
