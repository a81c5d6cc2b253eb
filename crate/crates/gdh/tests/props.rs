mod common;

use std::sync::OnceLock;

use gdh::data::DataSet;
use gdh::diagram::{build_diagram, ComponentType, Family, HoleDiagram, WeightConfig};
use gdh::enumerate::{leech_enumerator, EnumConfig, Enumerator, QueryMode, SphereQuery};
use gdh::exactlat::{int, leech_lattice, rat, Rational};
use gdh::liealg::{trace_identity_solutions, AffineStructure};
use gdh::orbnum::{eisenstein_coeffs, fixdim_power, power_shape, vacuum_anomaly, CycleShape};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn shapes() -> &'static [CycleShape] {
    static S: OnceLock<Vec<CycleShape>> = OnceLock::new();
    S.get_or_init(|| DataSet::bundled().unwrap().shapes.into_iter().map(|i| i.shape).collect())
}

/// The 36 vectors around the bundled Ã_2^12 centre.
fn a2_hole() -> &'static Vec<Vec<Rational>> {
    static P: OnceLock<Vec<Vec<Rational>>> = OnceLock::new();
    P.get_or_init(|| {
        let rec = DataSet::bundled().unwrap().centres.into_iter().find(|c| c.seed == "\\tilde{A}_2").unwrap();
        let q = SphereQuery::shell(rec.centre_vector(), int(2));
        leech_enumerator().close_vectors(&q, &EnumConfig::default()).unwrap().vectors()
    })
}

fn unimodular(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let k = rng.gen_range(-2..=2);
            let row = u[j].clone();
            u[i].iter_mut().zip(row).for_each(|(a, b)| *a += k * b);
        }
        if rng.gen_bool(0.2) {
            u[i].iter_mut().for_each(|a| *a = -*a);
        }
    }
    u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn enumeration_matches_brute_force(seed in any::<u64>(), ball in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rl = common::random_lattice(&mut rng);
        let q = common::random_query(&mut rng, &rl, if ball { QueryMode::Ball } else { QueryMode::ExactShell });
        let mut want = common::brute_force(&rl, &q);
        want.sort();
        let got = Enumerator::new(&rl.lattice).unwrap().close_vectors(&q, &EnumConfig::default()).unwrap();
        let mut coeffs = got.coefficients().to_vec();
        coeffs.sort();
        prop_assert_eq!(coeffs, want);
    }

    #[test]
    fn enumeration_is_basis_invariant(seed in any::<u64>(), ball in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rl = common::random_lattice(&mut rng);
        let q = common::random_query(&mut rng, &rl, if ball { QueryMode::Ball } else { QueryMode::ExactShell });
        let u = unimodular(&mut rng, rl.rows.len());
        let other = rl.lattice.transformed(&u).unwrap();
        prop_assert!(other.same_lattice(&rl.lattice));
        let a = Enumerator::new(&rl.lattice).unwrap().close_vectors(&q, &EnumConfig::default()).unwrap();
        let b = Enumerator::new(&other).unwrap().close_vectors(&q, &EnumConfig::parallel()).unwrap();
        prop_assert_eq!(a.vectors(), b.vectors());
    }

    #[test]
    fn diagram_invariant_under_permutation_and_translation(
        perm in Just((0..36).collect::<Vec<usize>>()).prop_shuffle(),
        shift in prop::collection::vec(-2i64..=2, 24),
    ) {
        let pts = a2_hole();
        let t = leech_lattice().vector(&shift);
        let moved: Vec<Vec<Rational>> = perm.iter().map(|&i| pts[i].iter().zip(&t).map(|(a, b)| a + b).collect()).collect();
        let w = WeightConfig::new(moved, rat(1, 8), int(1)).unwrap();
        let h = build_diagram(&w).unwrap();
        prop_assert_eq!(h.diagram, HoleDiagram::from_components(std::iter::repeat_n(ComponentType::affine(Family::A, 2), 12)));
    }

    #[test]
    fn power_shapes_compose(i in 0usize..160, a in 1u64..40, b in 1u64..40) {
        let s = &shapes()[i % shapes().len()];
        prop_assert_eq!(power_shape(&power_shape(s, a), b), power_shape(s, a * b));
        prop_assert_eq!(fixdim_power(s, a * b), fixdim_power(&power_shape(s, a), b));
    }

    #[test]
    fn vacuum_anomaly_does_not_grow_under_powers(i in 0usize..160, d in 1u64..100) {
        let s = &shapes()[i % shapes().len()];
        prop_assume!(s.is_cycle_shape());
        prop_assert!(vacuum_anomaly(&power_shape(s, d)) <= vacuum_anomaly(s));
    }

    #[test]
    fn fixed_dimension_at_most_24(i in 0usize..160, d in 1u64..200) {
        let s = &shapes()[i % shapes().len()];
        let f = fixdim_power(s, d);
        prop_assert!((0..=24).contains(&f));
        prop_assert_eq!(fixdim_power(s, s.order()), 24);
    }

    #[test]
    fn coefficient_residuals_vanish(n in 1u64..400) {
        let c = eisenstein_coeffs(n);
        for t in (1..=n).filter(|t| n % t == 0) {
            prop_assert_eq!(c.residual(t), Rational::from_integer(0.into()));
        }
    }

    #[test]
    fn notation_round_trips(i in 0usize..221) {
        let s = &trace_identity_solutions()[i];
        prop_assert_eq!(&AffineStructure::parse(&s.notation()).unwrap(), s);
    }

    #[test]
    fn diagram_names_round_trip(parts in prop::collection::vec((any::<bool>(), 0usize..5, 1u32..10, 1u32..4), 0..5)) {
        let fams = [Family::A, Family::D, Family::E, Family::A, Family::D];
        let mut d = HoleDiagram::empty();
        for (affine, f, r, m) in parts {
            let rank = match fams[f] { Family::D => r + 3, Family::E => 6 + r % 3, _ => r };
            if let Some(c) = ComponentType::new(affine, fams[f], rank) {
                d.add(c, m);
            }
        }
        prop_assert_eq!(&HoleDiagram::parse(&d.latex()).unwrap(), &d);
        prop_assert_eq!(&HoleDiagram::parse(&d.ascii()).unwrap(), &d);
        prop_assert_eq!(HoleDiagram::parse(&d.to_string()).unwrap(), d);
    }
}
