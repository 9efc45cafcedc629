mod common;

use common::*;
use skewlink::cli::GenSpec;
use skewlink::cyclekit::{circuit_sum_test, d_sum, Side};
use skewlink::linkage::{build_reduced_instance, kappa, ReducedInstance};
use skewlink::witness::{
    certify, find_s1, find_s2, find_s2_pipeline, verify_bound_oracle, CertifyOutcome, Scenario,
    Witness, WitnessConfig, WitnessPath,
};

fn ladder(m: usize) -> (skewlink::matroid::BinaryMatroid, ReducedInstance) {
    let (g, c1, c2) = named(GenSpec::CircularLadder { m });
    let ri = build_reduced_instance(&g, &c1, &c2).unwrap();
    (g, ri)
}

#[test]
fn generator_linkage() {
    let (g, c1, c2) = named(GenSpec::CircularLadder { m: 3 });
    assert_eq!(kappa(&g, &c1, &c2).unwrap(), 2);
    let (g, c1, c2) = named(GenSpec::DisjointCycles { a: 3, b: 3 });
    assert_eq!(kappa(&g, &c1, &c2).unwrap(), 0);
}

#[test]
fn prism_s1_uses_both_x() {
    let (_, ri) = ladder(3);
    let cert = find_s1(&ri, 4, &WitnessConfig::default()).unwrap().unwrap();
    let Witness::S1 { cycle } = &cert.witness else {
        panic!("not S1")
    };
    assert_eq!(*cycle, d_sum(&ri, &[0, 1]).unwrap());
    assert_eq!(cert.arithmetic.circuit_sizes, vec![5, 5]);
    assert_eq!(cycle.difference(&ri.c1().union(ri.c2())).len(), 2);
}

#[test]
fn ladder4_k6_needs_three_indices() {
    let (_, ri) = ladder(4);
    let cert = find_s1(&ri, 6, &WitnessConfig::default()).unwrap().unwrap();
    let Witness::S1 { cycle } = &cert.witness else {
        panic!("not S1")
    };
    assert_eq!(*cycle, d_sum(&ri, &[0, 1, 2]).unwrap());
    assert_eq!(cert.arithmetic.twice_c, 14);
    assert!(find_s1(&ri, 7, &WitnessConfig::default())
        .unwrap()
        .is_none());
}

#[test]
fn ladder6_k2_falls_back_to_exhaustive_s2() {
    let (_, ri) = ladder(6);
    let cert = find_s2(&ri, 2, &WitnessConfig::default()).unwrap().unwrap();
    assert_eq!(cert.path, WitnessPath::ExhaustiveFallback);
    let Witness::S2 { c1p, c2p } = &cert.witness else {
        panic!("not S2")
    };
    assert!(c1p.is_disjoint(c2p));
    cert.verify().unwrap();
}

#[test]
fn ladders_certify_up_to_twice_the_rungs() {
    // S1 reaches k = 2t = 2m - 2; beyond that the reduced minor is too small
    for m in 3..=6 {
        let (g, ri) = ladder(m);
        let (c1, c2) = (
            ri.trace().to_original(ri.c1()),
            ri.trace().to_original(ri.c2()),
        );
        for k in 0..=2 * m {
            let out = certify(&g, &c1, &c2, k, &WitnessConfig::default()).unwrap();
            assert!(verify_bound_oracle(&g, &c1, &c2, k).unwrap());
            match out {
                CertifyOutcome::Certified(c) => {
                    assert!(k <= 2 * m - 2, "CL_{m}, k = {k}");
                    assert_eq!(c.scenario, Scenario::S1);
                }
                CertifyOutcome::Failed(r) => {
                    assert!(k > 2 * m - 2, "CL_{m}, k = {k}");
                    assert_eq!(r.circumference_n, Some(2 * m - 1));
                }
            }
        }
    }
}

#[test]
fn staircase_runs_the_pattern_pipeline() {
    // every even subset fails the C1 test, the setting of the constructive route
    let ri = ReducedInstance::staircase(8).unwrap();
    assert!(!circuit_sum_test(&ri, &[0, 3], Side::C1).unwrap());
    let cfg = WitnessConfig {
        pattern_order: 2,
        ..WitnessConfig::default()
    };
    let cert = find_s2_pipeline(&ri, 2, &cfg)
        .unwrap()
        .expect("pipeline certificate");
    assert_eq!(cert.path, WitnessPath::Pipeline);
    assert!(cert
        .diagnostics
        .iter()
        .any(|d| d.starts_with("B1 = LowerTriangular")));
    cert.verify().unwrap();
}
