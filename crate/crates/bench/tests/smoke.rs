use proxtr::{find_problem, solve, PpgConfig, SolveStatus, TrConfig};

#[test]
fn benchmarked_problems_converge_with_defaults() {
    for name in ["ROSENBR", "BEALE", "TRIDIA"] {
        let p = find_problem(name).unwrap();
        let r = solve(&p, &TrConfig::default(), &PpgConfig::default(), &[]).unwrap();
        assert_eq!(r.status, SolveStatus::Converged, "{name}");
    }
}
