//! Candidate pairs, spurious elimination, the D12+ centre search, centre
//! verification and reproduction of the classification tables.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::data::{DataSet, GoldenRow, SpuriousRow};
use crate::diagram::{build_diagram, configuration_centre, ComponentType, DiagramError, Family, HoleDiagram, WeightConfig};
use crate::enumerate::{leech_enumerator, EnumConfig, EnumError, Enumerator, SphereQuery};
use crate::exactlat::{d12plus_scaled, dot, format_vector, int, inverse, rat, LatticeError, Matrix, Rational};
use crate::liealg::{invtype_diagram, orbifold_order, trace_identity_solutions, AffineStructure};
use crate::orbnum::{dim_bound, divisors, fixdim_power, inverse_gap, vacuum_anomaly, CycleShape, ShapeClassInfo, ShapeError};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("closer vector exists at squared distance {0}")]
    CloserVector(String),
    #[error("no lattice vector at squared distance {0}")]
    EmptyShell(String),
    #[error("diagram mismatch: expected {expected}, found {found}")]
    DiagramMismatch { expected: String, found: String },
    #[error("no embedding of {0} found")]
    NoEmbedding(String),
    #[error("unsupported pair ({0}, n = {1})")]
    UnsupportedPair(String, u64),
}

/// A solution of the four necessary conditions for a generalised deep hole.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidatePair {
    pub structure: AffineStructure,
    pub shape: CycleShape,
    pub n: u64,
    pub expected_diagram: HoleDiagram,
}

/// Pairs of a trace-identity solution with a frame shape such that
/// Σb_t = rank, order | n and 1/(1−ρ_ν) = lcm(lᵢkᵢ).
pub fn candidate_pairs(shapes: &[ShapeClassInfo]) -> Vec<CandidatePair> {
    let shapes: Vec<(&ShapeClassInfo, Option<u64>)> = shapes.iter().map(|i| (i, inverse_gap(&i.shape))).collect();
    let mut out: Vec<CandidatePair> = trace_identity_solutions()
        .into_par_iter()
        .flat_map_iter(|s| {
            let n = orbifold_order(&s);
            let rank = i64::from(s.total_rank());
            let lcm = s.lacing_level_lcm();
            let diagram = invtype_diagram(&s);
            shapes
                .iter()
                .filter(move |(info, gap)| info.shape.fixed_rank() == rank && n % info.shape.order() == 0 && *gap == Some(lcm))
                .map(move |(info, _)| CandidatePair { structure: s.clone(), shape: info.shape.clone(), n, expected_diagram: diagram.clone() })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_by(|a, b| (&a.shape, a.n, a.structure.notation()).cmp(&(&b.shape, b.n, b.structure.notation())));
    out
}

/// A difference half-norm `k(1−ρ_ν)` forced by the expected diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormWitness {
    /// 2 for non-adjacent nodes, 3 for a single edge, 4 for a double edge.
    pub k: u32,
    pub half_norm: String,
    /// In the notation `2a/b` of the norm `2·(a/b)`.
    pub label: String,
    pub admissible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormFilter {
    pub keep: bool,
    pub witnesses: Vec<NormWitness>,
}

/// Half-norms of all elements of `π_ν(Λ)` lie in `(1/|φ_η(ν)|)ℤ`; a pair is
/// eliminated when the expected diagram needs a difference that is not.
pub fn spurious_norm_filter(p: &CandidatePair, info: &ShapeClassInfo) -> NormFilter {
    let d = &p.expected_diagram;
    let comps: Vec<ComponentType> = d.components().map(|(c, _)| c).collect();
    let triangle = ComponentType::affine(Family::A, 2);
    let nonadjacent = d.component_count() > 1 || comps.iter().any(|c| c.nodes() >= 3 && *c != triangle);
    let single = comps.iter().any(|c| c.nodes() >= 2 && *c != ComponentType::affine(Family::A, 1));
    let double = comps.contains(&ComponentType::affine(Family::A, 1));
    let gap = int(1) - vacuum_anomaly(&p.shape);
    let mut witnesses = Vec::new();
    for (k, needed) in [(2, nonadjacent), (3, single), (4, double)] {
        if !needed {
            continue;
        }
        let half = &gap * int(k);
        let admissible = (&half * int(info.lifted_order as i64)).is_integer();
        let label = format!("{}/{}", half.numer() * 2, half.denom());
        witnesses.push(NormWitness { k: k as u32, half_norm: half.to_string(), label, admissible });
    }
    NormFilter { keep: witnesses.iter().all(|w| w.admissible), witnesses }
}

/// Points at squared distance `2(1−ρ)` from a centre with no closer vector.
#[derive(Clone, Debug, Serialize)]
pub struct VerifiedCentre {
    pub centre: Vec<String>,
    pub diagram: HoleDiagram,
    pub nodes: usize,
    /// `ρ_ν + (min coset norm)/2`, equal to 1 for every success.
    pub twisted_weight: String,
}

pub fn verify_centre(
    en: &Enumerator,
    centre: &[Rational],
    rho_nu: &Rational,
    expected: Option<&HoleDiagram>,
    cfg: &EnumConfig,
) -> Result<VerifiedCentre, ClassifyError> {
    let gap = int(1) - rho_nu;
    let radius = &gap * int(2);
    let set = en.close_vectors(&SphereQuery::ball(centre.to_vec(), radius.clone()), cfg)?;
    let lat = en.lattice();
    let mut points = Vec::with_capacity(set.len());
    for v in set.vectors() {
        let diff: Vec<Rational> = v.iter().zip(centre).map(|(a, b)| a - b).collect();
        let d = lat.norm(&diff);
        if d < radius {
            return Err(ClassifyError::CloserVector(d.to_string()));
        }
        points.push(v);
    }
    if points.is_empty() {
        return Err(ClassifyError::EmptyShell(radius.to_string()));
    }
    let w = WeightConfig::new(points, lat.form_scale().clone(), gap)?;
    let h = build_diagram(&w)?;
    if h.components.iter().any(|c| c.ty.affine) && configuration_centre(&w, &h)? != centre {
        return Err(DiagramError::CentreMismatch.into());
    }
    if let Some(e) = expected {
        if e != &h.diagram {
            return Err(ClassifyError::DiagramMismatch { expected: e.latex(), found: h.diagram.latex() });
        }
    }
    Ok(VerifiedCentre {
        centre: centre.iter().map(|x| x.to_string()).collect(),
        nodes: w.points.len(),
        twisted_weight: (rho_nu + radius / int(2)).to_string(),
        diagram: h.diagram,
    })
}

/// The diagrams without affine part for cycle shape 2^12 and their orders.
pub fn d12_pairs() -> Vec<(HoleDiagram, u64)> {
    let a1 = ComponentType::finite(Family::A, 1);
    let mut out: Vec<(HoleDiagram, u64)> = [(1, 46), (2, 22), (3, 14), (4, 10), (6, 6)]
        .into_iter()
        .map(|(m, n)| {
            let mut d = HoleDiagram::empty();
            d.add(a1, m);
            (d, n)
        })
        .collect();
    let mut t = HoleDiagram::empty();
    t.add(ComponentType::affine(Family::A, 1), 12);
    out.push((t, 2));
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct D12SearchResult {
    pub target: HoleDiagram,
    pub n: u64,
    /// Solutions of the parity, norm and pairwise conditions up to
    /// permutations and all sign changes.
    pub sign_perm_classes: usize,
    /// Representatives up to permutations and even sign changes passing the
    /// close-vector conditions.
    pub close_vector_solutions: usize,
    /// Those among them whose closest vectors form the target diagram.
    pub surviving_orbits: Vec<Vec<i64>>,
    /// Verification of each survivor's centre `h/(2n)` in K/2.
    pub centres: Vec<VerifiedCentre>,
}

/// The lattice K/2 in D12+ coordinates, where `π_ν(Λ)` lives for shape 2^12.
pub fn k_half() -> &'static Enumerator {
    static E: std::sync::OnceLock<Enumerator> = std::sync::OnceLock::new();
    E.get_or_init(|| Enumerator::new(&d12plus_scaled().dual()).expect("K/2 enumerator"))
}

/// Nondecreasing 12-tuples of nonnegative integers of one parity with
/// `Σhᵢ² = n²` and `hᵢ + hⱼ < n` (`≤ n` when `strict` is false).
pub fn d12_sign_perm_classes(n: u64, strict: bool) -> Vec<Vec<i64>> {
    let n = n as i64;
    let mut out = Vec::new();
    fn rec(vals: &[i64], n: i64, strict: bool, start: usize, rem: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == 12 {
            if rem == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let left = (12 - prefix.len()) as i64;
        for (i, &v) in vals.iter().enumerate().skip(start) {
            if v * v * left > rem {
                break;
            }
            if let Some(&last) = prefix.last() {
                // the two largest entries decide the pairwise condition
                if if strict { last + v >= n } else { last + v > n } {
                    break;
                }
            }
            prefix.push(v);
            rec(vals, n, strict, i, rem - v * v, prefix, out);
            prefix.pop();
        }
    }
    for parity in 0..2 {
        let vals: Vec<i64> = (parity..=n).step_by(2).collect();
        rec(&vals, n, strict, 0, n * n, &mut Vec::new(), &mut out);
    }
    out
}

/// Minimum squared distance to the lattice if it lies in `[.., radius]`,
/// stopping as soon as a strictly closer point shows up.
fn ball_minimum(en: &Enumerator, target: &[Rational], radius: &Rational, cfg: &EnumConfig) -> Result<Option<Rational>, EnumError> {
    let lat = en.lattice();
    let mut best: Option<Rational> = None;
    en.for_each(&SphereQuery::ball(target.to_vec(), radius.clone()), cfg, |p| {
        let diff: Vec<Rational> = p.to_rational().iter().zip(target).map(|(a, b)| a - b).collect();
        let d = lat.norm(&diff);
        let closer = &d < radius;
        if best.as_ref().is_none_or(|b| &d < b) {
            best = Some(d);
        }
        if closer {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(best)
}

/// Whether every point `(4k+1)h/(2n)`, `k = 0..11`, has distance exactly
/// `√(1/2)` from K/2.
fn passes_close_vector_conditions(h: &[i64], n: u64, cfg: &EnumConfig) -> Result<bool, EnumError> {
    let en = k_half();
    let radius = rat(1, 2);
    for k in 0..12i64 {
        let t: Vec<Rational> = h.iter().map(|&x| rat((4 * k + 1) * x, 2 * n as i64)).collect();
        if ball_minimum(en, &t, &radius, cfg)? != Some(radius.clone()) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn d12_centre_search(target: &HoleDiagram, n: u64, cfg: &EnumConfig) -> Result<D12SearchResult, ClassifyError> {
    if !d12_pairs().iter().any(|(d, m)| d == target && *m == n) {
        return Err(ClassifyError::UnsupportedPair(target.latex(), n));
    }
    // with a single node no second vector may attain the minimum
    let strict = target.node_count() == 1;
    let classes = d12_sign_perm_classes(n, strict);
    let variants: Vec<Vec<i64>> = classes
        .iter()
        .flat_map(|c| {
            let mut v = vec![c.clone()];
            if !c.contains(&0) {
                let mut f = c.clone();
                f[0] = -f[0];
                v.push(f);
            }
            v
        })
        .collect();
    let inner = EnumConfig { parallel: false, ..*cfg };
    let run = |h: &Vec<i64>| passes_close_vector_conditions(h, n, &inner).map(|ok| ok.then(|| h.clone()));
    let checked: Result<Vec<Option<Vec<i64>>>, EnumError> =
        if cfg.parallel { variants.par_iter().map(run).collect() } else { variants.iter().map(run).collect() };
    let mut passing: Vec<Vec<i64>> = checked?.into_iter().flatten().collect();
    passing.sort();
    let rho = rat(3, 4);
    let mut surviving = Vec::new();
    let mut centres = Vec::new();
    for h in &passing {
        let c: Vec<Rational> = h.iter().map(|&x| rat(x, 2 * n as i64)).collect();
        match verify_centre(k_half(), &c, &rho, Some(target), cfg) {
            Ok(v) => {
                surviving.push(h.clone());
                centres.push(v);
            }
            Err(ClassifyError::DiagramMismatch { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(D12SearchResult {
        target: target.clone(),
        n,
        sign_perm_classes: classes.len(),
        close_vector_solutions: passing.len(),
        surviving_orbits: surviving,
        centres,
    })
}

/// A seed embedding together with the complete diagram it defines.
#[derive(Clone, Debug, Serialize)]
pub struct Completion {
    pub seed: ComponentType,
    pub embedding: Vec<Vec<String>>,
    pub verified: VerifiedCentre,
}

/// Maximum candidates tried per node during the embedding search.
pub const EMBEDDING_BRANCHING: usize = 16;

fn seed_edges(seed: ComponentType) -> Result<Vec<Vec<u32>>, ClassifyError> {
    if !seed.affine || seed.family != Family::A {
        return Err(ClassifyError::NoEmbedding(format!("{} (unsupported seed)", seed.latex())));
    }
    let m = seed.nodes();
    let mut e = vec![vec![0; m]; m];
    if m == 2 {
        e[0][1] = 2;
        e[1][0] = 2;
    } else {
        for i in 0..m {
            let j = (i + 1) % m;
            e[i][j] = 1;
            e[j][i] = 1;
        }
    }
    Ok(e)
}

/// Embeds the seed Ã_l as lattice points with difference norms
/// `2(1−ρ)·{2,3,4}`, takes the centre from its Kac labels and verifies the
/// full diagram around it. Stops at the first embedding.
pub fn affine_completion_search(
    en: &Enumerator,
    seed: ComponentType,
    rho_nu: &Rational,
    cfg: &EnumConfig,
) -> Result<Vec<Completion>, ClassifyError> {
    let edges = seed_edges(seed)?;
    let m = edges.len();
    let gap = int(1) - rho_nu;
    let req: Vec<Vec<Rational>> = edges.iter().map(|r| r.iter().map(|&e| &gap * int(2) * int(2 + e as i64)).collect()).collect();
    let dim = en.lattice().ambient_dim();
    let mut placed = vec![vec![Rational::zero(); dim]];
    if !extend(en, &req, &mut placed, cfg)? {
        return Err(ClassifyError::NoEmbedding(seed.latex()));
    }
    let w = WeightConfig::new(placed.clone(), en.lattice().form_scale().clone(), gap)?;
    let h = build_diagram(&w)?;
    debug_assert_eq!(h.components.len(), 1);
    let centre = configuration_centre(&w, &h)?;
    let verified = verify_centre(en, &centre, rho_nu, None, cfg)?;
    debug_assert_eq!(placed.len(), m);
    Ok(vec![Completion { seed, embedding: placed.iter().map(|p| p.iter().map(|x| x.to_string()).collect()).collect(), verified }])
}

fn extend(en: &Enumerator, req: &[Vec<Rational>], placed: &mut Vec<Vec<Rational>>, cfg: &EnumConfig) -> Result<bool, ClassifyError> {
    let j = placed.len();
    if j == req.len() {
        return Ok(true);
    }
    let lat = en.lattice();
    let q0 = placed[0].clone();
    let u: Vec<Vec<Rational>> = placed[1..].iter().map(|p| p.iter().zip(&q0).map(|(a, b)| a - b).collect()).collect();
    // projection of x − q0 onto span(u) is fixed by the required distances
    let mut c = q0.clone();
    if !u.is_empty() {
        let g: Matrix = u.iter().map(|a| u.iter().map(|b| lat.inner(a, b)).collect()).collect();
        let r: Vec<Rational> = u.iter().enumerate().map(|(i, ui)| (&req[0][j] + lat.norm(ui) - &req[i + 1][j]) / int(2)).collect();
        let gi = inverse(&g)?;
        for (row, ui) in gi.iter().zip(&u) {
            let mu = dot(row, &r);
            for (x, y) in c.iter_mut().zip(ui) {
                *x += &mu * y;
            }
        }
    }
    let off: Vec<Rational> = c.iter().zip(&q0).map(|(a, b)| a - b).collect();
    let r2 = &req[0][j] - lat.norm(&off);
    if r2.is_negative() {
        return Ok(false);
    }
    let mut cands = Vec::new();
    en.for_each(&SphereQuery::shell(c, r2), cfg, |p| {
        let x = p.to_rational();
        let ok = placed.iter().enumerate().all(|(i, q)| {
            let d: Vec<Rational> = x.iter().zip(q).map(|(a, b)| a - b).collect();
            lat.norm(&d) == req[i][j]
        });
        if ok {
            cands.push(x);
        }
        if cands.len() >= EMBEDDING_BRANCHING {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    for x in cands {
        placed.push(x);
        if extend(en, req, placed, cfg)? {
            return Ok(true);
        }
        placed.pop();
    }
    Ok(false)
}

/// Twisted weights `ρ(V(g^m))` for `m | n` where the centre determines them:
/// all `m` when ν = id, odd `m` for order-doubling shape 2^12, and `m = n`.
pub fn twisted_weights(shape: &CycleShape, n: u64, centre: &[Rational], en: &Enumerator, cfg: &EnumConfig) -> Result<Vec<Option<Rational>>, ClassifyError> {
    let rho = vacuum_anomaly(shape);
    let identity = shape.order() == 1;
    divisors(n)
        .into_iter()
        .map(|m| {
            if m == n {
                return Ok(Some(Rational::zero()));
            }
            if !(identity || m % 2 == 1) {
                return Ok(None);
            }
            let t: Vec<Rational> = centre.iter().map(|x| x * int(m as i64)).collect();
            let (d, _) = en.closest_distance(&t, cfg)?;
            Ok(Some(&rho + d / int(2)))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub no: u32,
    pub label: String,
    pub shape: String,
    pub rank: i64,
    pub structure: String,
    pub n: u64,
    pub dim: i64,
    pub phi: String,
    pub rho_golden: Vec<String>,
    /// Computed `ρ(V(g^m))`, `null` where the data does not determine it.
    pub rho_computed: Vec<Option<String>>,
    pub centre: Option<Vec<String>>,
    pub verified_diagram: Option<String>,
    pub diffs: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpuriousReport {
    pub shape: String,
    pub n: u64,
    pub structure: String,
    pub phi: String,
    pub norms: Vec<String>,
    pub eliminated: bool,
    pub diffs: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub trace_solutions: usize,
    pub candidate_pairs: usize,
    pub rows: Vec<RowReport>,
    pub spurious: Vec<SpuriousReport>,
    pub diffs: Vec<String>,
}

impl TableReport {
    pub fn diff_count(&self) -> usize {
        self.diffs.len() + self.rows.iter().map(|r| r.diffs.len()).sum::<usize>() + self.spurious.iter().map(|r| r.diffs.len()).sum::<usize>()
    }

    /// `"70 rows verified, 0 diffs"`.
    pub fn summary(&self) -> String {
        format!("{} rows verified, {} diffs", self.rows.len(), self.diff_count())
    }

    /// Number of rows whose diagram was also reproduced from an explicit centre.
    pub fn centres_verified(&self) -> usize {
        self.rows.iter().filter(|r| r.verified_diagram.is_some()).count()
    }
}

fn check<T: PartialEq + std::fmt::Display>(diffs: &mut Vec<String>, what: &str, computed: T, golden: T) {
    if computed != golden {
        diffs.push(format!("{what}: computed {computed}, golden {golden}"));
    }
}

/// Centres known for a golden row: the D12+ search for shape 2^12 and the
/// bundled Leech deep holes for the identity.
fn row_centre(row: &GoldenRow, data: &DataSet, cfg: &EnumConfig) -> Result<Option<(Vec<Rational>, &'static Enumerator, VerifiedCentre)>, ClassifyError> {
    let diagram = row.diagram();
    if row.shape == "2^12".parse().expect("shape") && d12_pairs().iter().any(|(d, n)| d == &diagram && *n == row.n) {
        let r = d12_centre_search(&diagram, row.n, cfg)?;
        return Ok(match (r.surviving_orbits.first(), r.centres.into_iter().next()) {
            (Some(h), Some(v)) if r.surviving_orbits.len() == 1 => Some((h.iter().map(|&x| rat(x, 2 * row.n as i64)).collect(), k_half(), v)),
            _ => None,
        });
    }
    if row.shape.order() == 1 {
        for c in &data.centres {
            if HoleDiagram::parse(&c.diagram)? == diagram {
                let centre = c.centre_vector();
                let v = verify_centre(leech_enumerator(), &centre, &Rational::zero(), Some(&diagram), cfg)?;
                return Ok(Some((centre, leech_enumerator(), v)));
            }
        }
    }
    Ok(None)
}

fn golden_row(row: &GoldenRow, pairs: &[CandidatePair], data: &DataSet, cfg: &EnumConfig) -> Result<RowReport, ClassifyError> {
    let mut diffs = Vec::new();
    let (structure, n, dim, phi) = if row.is_abelian() {
        let n = row.shape.order();
        (row.structure.clone(), n, dim_bound(&row.shape, n)?, HoleDiagram::empty().latex())
    } else {
        let s = row.affine_structure().expect("validated");
        let n = orbifold_order(&s);
        match pairs.iter().find(|p| p.structure == s) {
            Some(p) => check(&mut diffs, "shape", &p.shape, &row.shape),
            None => diffs.push(format!("{} is not a candidate pair", s.notation())),
        }
        let dim = if n % row.shape.order() == 0 { dim_bound(&row.shape, n)? } else { -1 };
        (s.notation(), n, dim, invtype_diagram(&s).latex())
    };
    check(&mut diffs, "n", n, row.n);
    check(&mut diffs, "Dim", dim, row.dim);
    check(&mut diffs, "Phi", phi.as_str(), row.phi.as_str());
    let rank = fixdim_power(&row.shape, 1);
    check(&mut diffs, "rank", rank, i64::from(row.rank));
    let golden_rho = row.rho_values();
    let divs = divisors(row.n);
    check(&mut diffs, "number of twisted weights", golden_rho.len(), divs.len());
    let mut rho_computed = vec![None; divs.len()];
    let mut centre = None;
    let mut verified_diagram = None;
    match row_centre(row, data, cfg) {
        Ok(Some((c, en, v))) => {
            let w = twisted_weights(&row.shape, row.n, &c, en, cfg)?;
            for (i, (cw, gw)) in w.iter().zip(&golden_rho).enumerate() {
                if let Some(cw) = cw {
                    check(&mut diffs, &format!("rho(g^{})", divs[i]), cw, gw);
                }
            }
            rho_computed = w.into_iter().map(|x| x.map(|r| r.to_string())).collect();
            centre = Some(format_vector(&c).split(',').map(|s| s.trim().to_string()).collect());
            verified_diagram = Some(v.diagram.latex());
        }
        Ok(None) => {}
        Err(e) => diffs.push(format!("centre verification failed: {e}")),
    }
    Ok(RowReport {
        no: row.no,
        label: row.label.clone(),
        shape: row.shape.to_string(),
        rank,
        structure,
        n,
        dim,
        phi,
        rho_golden: row.rho.clone(),
        rho_computed,
        centre,
        verified_diagram,
        diffs,
    })
}

fn spurious_row(row: &SpuriousRow, pair: Option<&CandidatePair>, data: &DataSet) -> SpuriousReport {
    let mut diffs = Vec::new();
    let mut norms = Vec::new();
    let mut eliminated = false;
    match (pair, data.shape_info(&row.shape)) {
        (Some(p), Some(info)) => {
            check(&mut diffs, "n", p.n, row.n);
            let golden_phi = HoleDiagram::parse(&row.phi).expect("validated");
            check(&mut diffs, "Phi", p.expected_diagram.latex(), golden_phi.latex());
            check(&mut diffs, "|phi|", info.lifted_order, row.lifted_order);
            check(&mut diffs, "rho", vacuum_anomaly(&row.shape).to_string(), row.rho.clone());
            let f = spurious_norm_filter(p, info);
            norms = f.witnesses.iter().map(|w| w.label.clone()).collect();
            check(&mut diffs, "Norms", norms.join(", "), row.norms.join(", "));
            eliminated = !f.keep;
            check(&mut diffs, "eliminated", eliminated, row.eliminated_by_norms);
        }
        _ => diffs.push("no matching candidate pair".to_string()),
    }
    SpuriousReport { shape: row.shape.to_string(), n: row.n, structure: row.structure.clone(), phi: row.phi.clone(), norms, eliminated, diffs }
}

/// Recomputes every arithmetic column of both tables and verifies the
/// centres that are available.
pub fn reproduce_tables(data: &DataSet, cfg: &EnumConfig) -> Result<TableReport, ClassifyError> {
    let trace = trace_identity_solutions().len();
    let pairs = candidate_pairs(&data.shapes);
    let rows: Result<Vec<RowReport>, ClassifyError> = data.table2.par_iter().map(|r| golden_row(r, &pairs, data, cfg)).collect();
    let rows = rows?;
    let mut diffs = Vec::new();
    let mut used: BTreeSet<usize> = BTreeSet::new();
    for r in data.table2.iter().filter_map(|r| r.affine_structure()) {
        used.extend(pairs.iter().position(|p| p.structure == r));
    }
    let mut spurious = Vec::new();
    for row in &data.table1 {
        let s = AffineStructure::parse(&row.structure).expect("validated");
        let idx = pairs.iter().position(|p| p.structure == s && p.shape == row.shape);
        if let Some(i) = idx {
            if !used.insert(i) {
                diffs.push(format!("{} appears in both tables", s.notation()));
            }
        }
        spurious.push(spurious_row(row, idx.map(|i| &pairs[i]), data));
    }
    for (i, p) in pairs.iter().enumerate() {
        if !used.contains(&i) {
            diffs.push(format!("candidate pair ({}, {}) is in neither table", p.structure.notation(), p.shape));
        }
    }
    Ok(TableReport { trace_solutions: trace, candidate_pairs: pairs.len(), rows, spurious, diffs })
}
