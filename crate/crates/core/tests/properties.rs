use entbound::bounds::{self, report};
use entbound::graph::{Family, Graph};
use entbound::noise::{chain_coefficient, chain_expectations, chain_state, DephasingParams};
use entbound::oracle::dense::{density_matrix, spectrum};
use entbound::state::{c_from_lambda, lambda_from_c, widest_explicit_state, GraphDiagonalState};
use entbound::{Error, MeasurementRecord};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        (1usize..40).prop_map(Family::Chain),
        (2usize..20).prop_map(|k| Family::Ring(2 * k)),
        (1usize..40).prop_map(Family::Star),
        (1usize..7, 1usize..7).prop_map(|(rows, cols)| Family::Grid { rows, cols }),
    ]
}

fn distribution(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, 1 << n).prop_filter_map("nonzero mass", |w| {
        let total: f64 = w.iter().sum();
        (total > 0.0).then(|| w.into_iter().map(|x| x / total).collect())
    })
}

proptest! {
    #[test]
    fn bipartite_families_color_properly(f in family()) {
        let g = f.build().unwrap();
        let col = g.two_color().unwrap();
        prop_assert_eq!(col.amber().len() + col.blue().len(), g.n());
        prop_assert!(col.amber().len() >= col.blue().len());
        for &(u, v) in g.edges() {
            prop_assert_ne!(col.is_blue(u), col.is_blue(v));
        }
    }

    #[test]
    fn odd_rings_are_rejected(k in 1usize..30) {
        let result = Graph::ring(2 * k + 1).unwrap().two_color();
        let is_odd_cycle = matches!(result, Err(Error::NotTwoColorable { cycle }) if cycle.len() % 2 == 1);
        prop_assert!(is_odd_cycle);
    }

    #[test]
    fn generators_pairwise_commute(f in family()) {
        let gens = f.build().unwrap().generators();
        for (i, ki) in gens.iter().enumerate() {
            prop_assert_eq!(&ki.x_support, &vec![i]);
            for kj in &gens {
                prop_assert!(ki.commutes_with(kj));
            }
        }
    }

    #[test]
    fn wht_round_trip(lam in (1usize..=10).prop_flat_map(distribution)) {
        let n = lam.len().trailing_zeros() as usize;
        let back = lambda_from_c(&c_from_lambda(&lam, n).unwrap(), n).unwrap();
        for (x, y) in lam.iter().zip(&back) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn expectations_are_unit_weight_coefficients(lam in (1usize..=8).prop_flat_map(distribution)) {
        let n = lam.len().trailing_zeros() as usize;
        let c = c_from_lambda(&lam, n).unwrap();
        let s = GraphDiagonalState::from_coefficients(n, &c).unwrap();
        for i in 0..n {
            prop_assert!((s.expectations()[i] - c[1 << i]).abs() <= 1e-12);
        }
    }

    #[test]
    fn dense_spectrum_matches(lam in (1usize..=5).prop_flat_map(distribution), star in any::<bool>()) {
        let n = lam.len().trailing_zeros() as usize;
        let g = if star { Graph::star(n) } else { Graph::chain(n) }.unwrap();
        let s = GraphDiagonalState::from_lambda(n, lam).unwrap();
        let eig = spectrum(density_matrix(&g, &s.coefficients()).unwrap());
        let mut sorted = s.lambda().to_vec();
        sorted.sort_by(f64::total_cmp);
        for (x, y) in eig.iter().zip(&sorted) {
            prop_assert!((x - y).abs() <= 1e-9);
        }
    }

    #[test]
    fn bounds_are_ordered(a in prop::collection::vec(-1.0f64..=1.0, 1..=16)) {
        let n = a.len();
        let col = Graph::chain(n).unwrap().two_color().unwrap();
        let r = report(&MeasurementRecord::new(a).unwrap(), &col).unwrap();
        prop_assert!(0.0 <= r.rob_lower && r.rob_lower <= r.rob_upper);
        prop_assert!(0.0 <= r.rel_ent_lower && r.rel_ent_lower <= r.rel_ent_upper);
        prop_assert!(r.rel_ent_upper <= col.blue_count() as f64);
        prop_assert!((0.0..=1.0).contains(&r.fidelity_floor));
        prop_assert!(r.s_max >= 0.0 && r.s_max <= n as f64 + 1e-12);
    }

    #[test]
    fn bounds_are_monotone(
        a in prop::collection::vec(0.0f64..=1.0, 1..=16),
        pick in any::<prop::sample::Index>(),
        bump in 0.0f64..=1.0,
    ) {
        let n = a.len();
        let col = Graph::chain(n).unwrap().two_color().unwrap();
        let i = pick.index(n);
        let mut raised = a.clone();
        raised[i] += (1.0 - raised[i]) * bump;
        let before = report(&MeasurementRecord::new(a).unwrap(), &col).unwrap();
        let after = report(&MeasurementRecord::new(raised).unwrap(), &col).unwrap();
        for (x, y) in [
            (before.fidelity_floor, after.fidelity_floor),
            (before.rob_lower, after.rob_lower),
            (before.rob_upper, after.rob_upper),
            (before.rel_ent_lower, after.rel_ent_lower),
            (before.rel_ent_upper, after.rel_ent_upper),
        ] {
            prop_assert!(y >= x - 1e-12, "bound decreased from {} to {}", x, y);
        }
    }

    #[test]
    fn fidelity_threshold(a in prop::collection::vec(-1.0f64..=1.0, 1..=16)) {
        let n = a.len() as f64;
        let sum: f64 = a.iter().sum();
        let f = bounds::min_fidelity(&MeasurementRecord::new(a).unwrap());
        // away from the boundary where round-off decides
        if (sum - (n - 2.0)).abs() > 1e-12 {
            prop_assert_eq!(f > 0.0, sum > n - 2.0);
        }
    }

    #[test]
    fn dephasing_semigroup(index in any::<u16>(), t1 in 0.0f64..5.0, t2 in 0.0f64..5.0) {
        let c = |t| chain_coefficient(u64::from(index), DephasingParams::new(t).unwrap());
        let (lhs, rhs) = (c(t1) * c(t2), c(t1 + t2));
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(f64::MIN_POSITIVE));
    }
}

#[test]
fn dephased_chain_is_positive() {
    for n in 1..=12 {
        for gt in [0.0, 0.01, 0.1, 1.0, 10.0] {
            let s = chain_state(n, DephasingParams::new(gt).unwrap()).unwrap();
            assert!(s.lambda().iter().all(|&l| l >= -1e-12), "n={n} gt={gt}");
        }
    }
}

#[test]
fn chain_bounds_decay_with_dephasing() {
    let grid: Vec<f64> = (0..=60).map(|k| k as f64 * 0.05).collect();
    for n in [2, 5, 10, 31, 200] {
        let col = Graph::chain(n).unwrap().two_color().unwrap();
        let reports: Vec<_> = grid
            .iter()
            .map(|&gt| report(&chain_expectations(n, DephasingParams::new(gt).unwrap()).unwrap(), &col).unwrap())
            .collect();
        for w in reports.windows(2) {
            assert!(w[1].fidelity_floor <= w[0].fidelity_floor);
            assert!(w[1].rob_lower <= w[0].rob_lower);
            assert!(w[1].rob_upper <= w[0].rob_upper);
            assert!(w[1].rel_ent_lower <= w[0].rel_ent_lower);
            assert!(w[1].rel_ent_upper <= w[0].rel_ent_upper);
        }
    }
}

#[test]
fn large_reports_stay_linear() {
    // fresh thread: the explicit-state watermark is thread-local
    std::thread::spawn(|| {
        let n = 1000;
        let col = Graph::chain(n).unwrap().two_color().unwrap();
        let a = chain_expectations(n, DephasingParams::new(0.001).unwrap()).unwrap();
        let r = report(&a, &col).unwrap();
        assert!(r.rel_ent_lower > 0.0);
        assert_eq!(widest_explicit_state(), 0);
    })
    .join()
    .unwrap();
}

#[test]
fn explicit_product_entropy_matches_closed_form() {
    // -sum lambda log lambda over the explicit product distribution, n <= 12
    for n in 1..=12 {
        let a: Vec<f64> = (0..n).map(|i| ((i * 7 + 3) % 11) as f64 / 10.0 - 0.5).collect();
        let mut lam = vec![1.0; 1 << n];
        for (k, l) in lam.iter_mut().enumerate() {
            for (i, ai) in a.iter().enumerate() {
                *l *= if k >> i & 1 == 0 {
                    (1.0 + ai) / 2.0
                } else {
                    (1.0 - ai) / 2.0
                };
            }
        }
        let explicit = GraphDiagonalState::from_lambda(n, lam).unwrap().entropy();
        let closed = bounds::max_entropy(&MeasurementRecord::new(a).unwrap());
        assert!((explicit - closed).abs() < 1e-9, "n={n}: {explicit} vs {closed}");
    }
}
