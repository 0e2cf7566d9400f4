use std::path::PathBuf;

use proptest::prelude::*;

use multicut_core::arcs::greedy_system_of_arcs;
use multicut_core::skeleton::Ratio64;
use multicut_core::{exact_multicut, random_planar_instance, solve, validate_multicut, GenConfig, Instance, InstanceSpec, SolverConfig, Weight};

fn fixture(name: &str) -> Instance {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    Instance::new(InstanceSpec::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()).unwrap()
}

#[test]
fn fixtures_solve_to_their_exact_optimum() {
    let cfg = SolverConfig::with_epsilon(Ratio64::new(1, 2));
    for name in ["path.json", "star.json", "planar.json", "projective.json"] {
        let inst = fixture(name);
        let s = solve(&inst, &cfg).unwrap();
        let opt = exact_multicut(&inst, 22).unwrap();
        assert!(validate_multicut(&inst, &s.cut_edges).unwrap(), "{name}");
        assert_eq!(s.weight, opt.weight, "{name}");
    }
}

#[test]
fn fixture_arc_systems_cut_to_a_disk() {
    for name in ["path.json", "star.json", "planar.json", "projective3.json", "torus.json", "klein.json"] {
        let inst = fixture(name);
        let sys = greedy_system_of_arcs(&inst.carved).unwrap();
        assert_eq!(sys.num_arcs(), inst.surface.euler_genus() + inst.spec.terminals.len() - 1, "{name}");
        assert!(sys.is_disk_connected(), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn solver_is_valid_and_near_optimal(seed in 0u64..10_000, terminals in 2usize..=3) {
        let cfg = GenConfig { vertices: 6, terminals, max_edges: Some(12), ..GenConfig::default() };
        let inst = Instance::new(random_planar_instance(seed, &cfg).unwrap()).unwrap();
        let s = solve(&inst, &SolverConfig::with_epsilon(Ratio64::new(1, 2))).unwrap();
        let opt = exact_multicut(&inst, 22).unwrap().weight;
        prop_assert!(validate_multicut(&inst, &s.cut_edges).unwrap());
        prop_assert!(s.weight >= opt);
        prop_assert!(s.weight <= Weight(opt.0 * Ratio64::new(3, 2)));
    }
}
