//! Acceptance run: one PASS/FAIL line per criterion, each with a pinned time
//! budget. Exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use gdh::classify::{affine_completion_search, candidate_pairs, d12_centre_search, d12_pairs, spurious_norm_filter};
use gdh::data::DataSet;
use gdh::diagram::{ComponentType, Family, HoleDiagram};
use gdh::enumerate::{leech_enumerator, EnumConfig, Enumerator, QueryMode, SphereQuery};
use gdh::exactlat::{int, leech_lattice, Rational};
use gdh::liealg::{invtype_diagram, orbifold_order, trace_identity_solutions, AffineStructure};
use gdh::orbnum::{dim_bound, eisenstein_coeffs, fixdim_power};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Table factor order is not canonical; compare canonical renderings.
fn canonical(structure: &str) -> String {
    AffineStructure::parse(structure).map(|a| a.notation()).unwrap_or_else(|_| structure.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(no: u32, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
    });
    let el = t.elapsed();
    let (ok, detail) = match r {
        Ok(d) if el <= budget => (true, d),
        Ok(d) => (false, format!("{d}; over budget")),
        Err(e) => (false, e),
    };
    println!("criterion {no} {} {name}: {detail} [{:.2?} of {:?}]", if ok { "PASS" } else { "FAIL" }, el, budget);
    ok
}

fn coefficients() -> Outcome {
    let mut checked = 0;
    for n in 1..=120u64 {
        let c = eisenstein_coeffs(n);
        for t in (1..=n).filter(|t| n % t == 0) {
            ensure(c.residual(t).is_zero(), || format!("n = {n}, t = {t}: residual {}", c.residual(t)))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} equations for n ≤ 120 hold exactly"))
}

fn trace_identity() -> Outcome {
    let sols = trace_identity_solutions();
    ensure(sols.len() == 221, || format!("{} solutions", sols.len()))?;
    for s in ["D_{24,1}", "A_{1,2}^{16}", "C_{4,10}"] {
        let a = AffineStructure::parse(s).unwrap();
        ensure(sols.contains(&a), || format!("{s} missing"))?;
    }
    Ok("221 solutions including D_{24,1}, A_{1,2}^{16}, C_{4,10}".into())
}

fn candidates(data: &DataSet) -> Outcome {
    let pairs = candidate_pairs(&data.shapes);
    ensure(pairs.len() == 82, || format!("{} pairs", pairs.len()))?;
    let keys: BTreeSet<(String, String)> = pairs.iter().map(|p| (p.structure.notation(), p.shape.to_string())).collect();
    ensure(keys.len() == 82, || "duplicate pairs".into())?;
    let genuine: BTreeSet<(String, String)> = data.table2.iter().filter(|r| r.n > 1).map(|r| (canonical(&r.structure), r.shape.to_string())).collect();
    let spurious: BTreeSet<(String, String)> = data.table1.iter().map(|r| (canonical(&r.structure), r.shape.to_string())).collect();
    ensure(genuine.len() == 69 && spurious.len() == 13, || format!("{} + {} table rows", genuine.len(), spurious.len()))?;
    ensure(genuine.is_disjoint(&spurious), || "tables overlap".into())?;
    let union: BTreeSet<_> = genuine.union(&spurious).cloned().collect();
    ensure(union == keys, || format!("unmatched: {:?}", keys.symmetric_difference(&union).collect::<Vec<_>>()))?;
    Ok("82 pairs = 69 deep holes + 13 spurious".into())
}

fn elimination(data: &DataSet) -> Outcome {
    let pairs = candidate_pairs(&data.shapes);
    let mut eliminated = Vec::new();
    for p in &pairs {
        let f = spurious_norm_filter(p, data.shape_info(&p.shape).unwrap());
        let notation = p.structure.notation();
        if !f.keep {
            eliminated.push(p.shape.to_string());
        }
        if let Some(row) = data.table1.iter().find(|r| canonical(&r.structure) == notation && r.shape == p.shape) {
            let labels: Vec<String> = f.witnesses.iter().map(|w| w.label.clone()).collect();
            ensure(labels == row.norms, || format!("{notation}: norms {labels:?}, table {:?}", row.norms))?;
            ensure(f.keep != row.eliminated_by_norms, || format!("{notation}: wrong verdict"))?;
        } else {
            ensure(f.keep, || format!("genuine pair {notation} eliminated"))?;
        }
    }
    let allowed = ["6^4", "4^6", "3^8", "2^4 4^4"];
    ensure(eliminated.len() == 8, || format!("{} eliminated", eliminated.len()))?;
    ensure(eliminated.iter().all(|s| allowed.contains(&s.as_str())), || format!("eliminated shapes {eliminated:?}"))?;
    Ok(format!("8 eliminated ({}), 13 norm lists verbatim", allowed.join(", ")))
}

fn dimension_column(data: &DataSet) -> Outcome {
    for r in &data.table2 {
        let ctx = |m: String| format!("row {}: {m}", r.label);
        let dim = dim_bound(&r.shape, r.n).map_err(|e| ctx(e.to_string()))?;
        ensure(dim == r.dim, || ctx(format!("Dim {dim}, table {}", r.dim)))?;
        ensure(fixdim_power(&r.shape, 1) == r.rank as i64, || ctx("rank".into()))?;
        if r.is_abelian() {
            ensure(r.phi == HoleDiagram::empty().latex(), || ctx("Φ".into()))?;
            continue;
        }
        let s = r.affine_structure().ok_or_else(|| ctx("structure".into()))?;
        ensure(orbifold_order(&s) == r.n, || ctx(format!("n {}", orbifold_order(&s))))?;
        let phi = invtype_diagram(&s).latex();
        ensure(phi == r.phi, || ctx(format!("Φ {phi}, table {}", r.phi)))?;
    }
    Ok(format!("{} rows: Dim, n, Φ, rank", data.table2.len()))
}

fn d12_order_46() -> Outcome {
    let a1 = HoleDiagram::parse("A_1").unwrap();
    let r = d12_centre_search(&a1, 46, &EnumConfig::parallel()).map_err(|e| e.to_string())?;
    ensure(r.sign_perm_classes == 10_301, || format!("{} classes", r.sign_perm_classes))?;
    let want = vec![0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 24];
    ensure(r.surviving_orbits == vec![want.clone()], || format!("survivors {:?}", r.surviving_orbits))?;
    Ok(format!("10301 classes, one O(K) orbit {want:?}"))
}

fn d12_table() -> Outcome {
    let table: [&[i64]; 6] = [
        &[0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 24],
        &[0, 0, 2, 2, 4, 4, 6, 6, 8, 8, 10, 12],
        &[0, 0, 0, 2, 2, 2, 4, 4, 4, 6, 6, 8],
        &[0, 0, 0, 0, 2, 2, 2, 2, 4, 4, 4, 6],
        &[0, 0, 0, 0, 0, 0, 2, 2, 2, 2, 2, 4],
        &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2],
    ];
    let pairs = d12_pairs();
    ensure(pairs.len() == 6, || format!("{} pairs", pairs.len()))?;
    for ((d, n), want) in pairs.iter().zip(table) {
        let r = d12_centre_search(d, *n, &EnumConfig::parallel()).map_err(|e| e.to_string())?;
        ensure(r.surviving_orbits.len() == 1, || format!("{d}: {} survivors", r.surviving_orbits.len()))?;
        let h = &r.surviving_orbits[0];
        let mut abs: Vec<i64> = h.iter().map(|x| x.abs()).collect();
        abs.sort();
        ensure(abs == want, || format!("{d}: {h:?}"))?;
        ensure(common::d12_close_vector_condition(h, *n as i64), || format!("{d}: a close-vector minimum differs from n²"))?;
        let v = &r.centres[0];
        ensure(&v.diagram == d, || format!("{d}: verified diagram {}", v.diagram))?;
        ensure(v.twisted_weight == "1", || format!("{d}: weight {}", v.twisted_weight))?;
    }
    Ok("6 diagrams match the centre table, ρ(V(g)) = 1".into())
}

fn leech_geometry() -> Outcome {
    let l = leech_lattice();
    ensure(l.det().is_one() && l.is_even(), || "not even unimodular".into())?;
    let zero = vec![Rational::zero(); 24];
    let en = leech_enumerator();
    let cfg = EnumConfig::parallel();
    let small = en.close_vectors(&SphereQuery::ball(zero.clone(), int(3)), &cfg).map_err(|e| e.to_string())?;
    ensure(small.len() == 1, || format!("{} vectors of norm < 4", small.len() - 1))?;
    let shell = en.close_vectors(&SphereQuery::shell(zero, int(4)), &cfg).map_err(|e| e.to_string())?;
    ensure(shell.len() == 196_560, || format!("{} vectors of norm 4", shell.len()))?;
    for (rank, want, nodes) in [(1, "\\tilde{A}_1^{24}", 48), (2, "\\tilde{A}_2^{12}", 36), (3, "\\tilde{A}_3^8", 32)] {
        let seed = ComponentType::affine(Family::A, rank);
        let c = affine_completion_search(en, seed, &Rational::zero(), &cfg).map_err(|e| e.to_string())?;
        let v = &c.first().ok_or_else(|| format!("{} not completed", seed.latex()))?.verified;
        ensure(v.diagram == HoleDiagram::parse(want).unwrap() && v.nodes == nodes, || format!("{} ⟹ {} ({})", seed.latex(), v.diagram, v.nodes))?;
    }
    Ok("det 1, even, min norm 4, 196560 minimal vectors, Ã_1^24/Ã_2^12/Ã_3^8 with 48/36/32 nodes".into())
}

fn enumeration_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut points = 0;
    for i in 0..50 {
        let rl = common::random_lattice(&mut rng);
        let en = Enumerator::new(&rl.lattice).map_err(|e| e.to_string())?;
        for mode in [QueryMode::ExactShell, QueryMode::Ball] {
            let q = common::random_query(&mut rng, &rl, mode);
            let mut want = common::brute_force(&rl, &q);
            want.sort();
            let got = en.close_vectors(&q, &EnumConfig::default()).map_err(|e| e.to_string())?;
            let mut have = got.coefficients().to_vec();
            have.sort();
            ensure(have == want, || format!("lattice {i} ({mode:?}): {} vs {} vectors", have.len(), want.len()))?;
            points += want.len();
        }
    }
    Ok(format!("50 lattices, both modes, {points} vectors agree"))
}

fn main() {
    let data = DataSet::bundled().expect("bundled data");
    let s = Duration::from_secs;
    let results = [
        run(1, "coefficient system", s(5), coefficients),
        run(2, "trace identity", s(60), trace_identity),
        run(3, "candidate filter", s(10), || candidates(&data)),
        run(4, "spurious elimination", s(1), || elimination(&data)),
        run(5, "dimension column", s(5), || dimension_column(&data)),
        run(6, "D12+ search, order 46", s(600), d12_order_46),
        run(7, "2^12 centre table", s(1800), d12_table),
        run(8, "Leech geometry", s(900), leech_geometry),
        run(9, "enumeration oracle", s(60), enumeration_oracle),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
