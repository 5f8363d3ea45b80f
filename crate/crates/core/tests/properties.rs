use std::sync::Arc;

use proptest::prelude::*;
use proxtr::profiles::data_alpha_grid;
use proxtr::*;

fn vec_strategy(d: usize, scale: f64) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-scale..scale, d).prop_map(Vector::from_vec)
}

fn reg_strategy(d: usize) -> impl Strategy<Value = Regularizer> {
    prop_oneof![
        (0.01..5.0f64).prop_map(move |w| Regularizer::l1(w, d).unwrap()),
        Just(Regularizer::zero(d)),
        (0.01..5.0f64).prop_map(move |w| Regularizer::squared_l2(w, d).unwrap()),
        (vec_strategy(d, 2.0), 0.1..3.0f64).prop_map(|(c, r)| Regularizer::ball(c, r).unwrap()),
    ]
}

fn model_strategy() -> impl Strategy<Value = (TrustRegionModel, f64)> {
    (1usize..6)
        .prop_flat_map(|d| (vec_strategy(d, 2.0), vec_strategy(d, 3.0), any::<u64>(), 0.01..10.0f64))
        .prop_map(|(x, g, seed, delta)| {
            let d = x.len();
            let q = random_quadratic(d, -3.0, 3.0, seed).unwrap();
            let m =
                TrustRegionModel::new(x, 0.0, g, q.hessian_matrix().clone(), Regularizer::l1(1.0, d).unwrap()).unwrap();
            (m, delta)
        })
}

proptest! {
    #[test]
    fn prox_lands_in_the_domain((reg, x) in (1usize..8).prop_flat_map(|d| (reg_strategy(d), vec_strategy(d, 10.0))),
                                gamma in 1e-3..10.0f64) {
        let p = reg.prox(gamma, &x).unwrap();
        prop_assert!(reg.evaluate(&p).unwrap().is_finite());
    }

    #[test]
    fn prox_minimises_its_objective_locally((reg, x) in (1usize..8).prop_flat_map(|d| (reg_strategy(d), vec_strategy(d, 10.0))),
                                                       gamma in 1e-3..10.0f64) {
        // p = prox(x) minimises h(z) + ||z - x||^2 / (2 gamma); no nearby point does better
        let p = reg.prox(gamma, &x).unwrap();
        let obj = |z: &Vector| reg.evaluate(z).unwrap() + (z - &x).norm_squared() / (2.0 * gamma);
        let best = obj(&p);
        for i in 0..x.len() {
            for s in [-1e-3, 1e-3] {
                let mut z = p.clone();
                z[i] += s;
                prop_assert!(obj(&z) >= best - 1e-12 * (1.0 + best.abs()));
            }
        }
    }

    #[test]
    fn ppg_step_is_feasible_and_descending((m, delta) in model_strategy(), n in 1usize..30) {
        let gamma0 = initial_gamma_heuristic(&m);
        let out = ppg_with_backtracking(&m, delta, &PpgConfig::with_n(n), gamma0).unwrap();
        prop_assert!(out.p_star.norm() <= delta * (1.0 + 1e-12));
        prop_assert!(m.decrease(&out.p_star).unwrap() > 0.0);
        prop_assert!(out.gamma_used <= gamma0);
    }

    #[test]
    fn solve_trace_is_monotone(seed in any::<u64>(), d in 1usize..6) {
        let q = random_quadratic(d, -1.0, 4.0, seed).unwrap();
        let p = CompositeProblem::new(Arc::new(q), Regularizer::l1(0.5, d).unwrap()).unwrap();
        let cfg = TrConfig { max_iters: 200, ..Default::default() };
        let res = solve(&p, &cfg, &PpgConfig::with_n(10), &[1e-3]).unwrap();
        for w in res.records.windows(2) {
            prop_assert!(w[1].f <= w[0].f);
        }
        if let Some(k) = res.first_hit(1e-3) {
            prop_assert!(res.records[k].pi <= 1e-3);
            prop_assert!(res.records[..k].iter().all(|r| r.pi > 1e-3));
        }
    }

    #[test]
    fn data_profiles_are_monotone_fractions(k in prop::collection::vec(prop::collection::vec(prop::option::of(0usize..50), 3), 1..8)) {
        let np = k.len();
        let table = ProfileTable::new(
            vec!["a".into(), "b".into(), "c".into()],
            (0..np).map(|i| format!("P{i}")).collect(),
            k,
            1e-6,
        ).unwrap();
        for c in data_profile(&table, &data_alpha_grid(60)) {
            prop_assert!(c.points.windows(2).all(|w| w[0].1 <= w[1].1));
            prop_assert!(c.points.iter().all(|p| (0.0..=1.0).contains(&p.1)));
        }
        for c in performance_profile(&table, &[1.0, 2.0, 8.0, 1e9]).unwrap() {
            prop_assert!(c.points.windows(2).all(|w| w[0].1 <= w[1].1));
        }
    }
}
