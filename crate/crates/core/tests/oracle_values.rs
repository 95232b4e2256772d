//! V-sequences recorded from an independent implementation of the
//! filtered homology computation, compared with both the homology
//! engine and the closed forms.

use dslice_core::complex::KnotComplex;
use dslice_core::knot::KnotSpec;
use dslice_core::vseq::{v_sum, v_torus2, v_torus_staircase, VSequence};

const TORUS: &[((u64, u64), &[u64])] = &[
    ((2, 3), &[1]),
    ((2, 5), &[1, 1]),
    ((2, 7), &[2, 1, 1]),
    ((2, 9), &[2, 2, 1, 1]),
    ((2, 11), &[3, 2, 2, 1, 1]),
    ((2, 13), &[3, 3, 2, 2, 1, 1]),
    ((2, 15), &[4, 3, 3, 2, 2, 1, 1]),
    ((2, 17), &[4, 4, 3, 3, 2, 2, 1, 1]),
    ((3, 4), &[1, 1, 1]),
    ((3, 5), &[2, 1, 1, 1]),
    ((3, 7), &[2, 2, 2, 1, 1, 1]),
    ((4, 5), &[3, 2, 1, 1, 1, 1]),
    ((5, 6), &[3, 3, 3, 3, 2, 1, 1, 1, 1, 1]),
    ((5, 7), &[4, 4, 3, 3, 3, 2, 2, 1, 1, 1, 1, 1]),
    ((7, 8), &[6, 6, 6, 6, 6, 5, 4, 3, 3, 3, 3, 3, 3, 2, 1, 1, 1, 1, 1, 1, 1]),
];

const SUMS: &[((u64, u64), &[u64])] = &[
    ((3, 1), &[2, 2, 1, 1, 1]),
    ((5, 1), &[4, 4, 3, 3, 3, 2, 2, 1, 1, 1, 1, 1]),
    ((5, 2), &[5, 5, 4, 4, 3, 3, 3, 2, 2, 1, 1, 1, 1, 1]),
    ((7, 1), &[7, 7, 6, 6, 6, 5, 5, 4, 4, 3, 3, 3, 3, 3, 2, 2, 1, 1, 1, 1, 1, 1, 1]),
    ((7, 2), &[8, 8, 7, 7, 6, 6, 6, 5, 5, 4, 4, 3, 3, 3, 3, 3, 2, 2, 1, 1, 1, 1, 1, 1, 1]),
];

fn v(values: &[u64]) -> VSequence {
    VSequence::new(values.to_vec()).unwrap()
}

#[test]
fn torus_knots_match_recorded_values() {
    for &((p, q), want) in TORUS {
        let got = KnotComplex::staircase_torus(p, q).unwrap().v_sequence().unwrap();
        assert_eq!(got, v(want), "T({p},{q})");
    }
}

#[test]
fn closed_forms_match_recorded_values() {
    for &((p, q), want) in TORUS {
        if p == 2 {
            assert_eq!(v_torus2((q - 1) / 2), v(want), "T(2,{q})");
        } else if q == p + 1 && p % 2 == 1 {
            assert_eq!(v_torus_staircase(p).unwrap(), v(want), "T({p},{q})");
        }
    }
}

#[test]
fn sums_match_recorded_values() {
    for &((n, k), want) in SUMS {
        let tensor = KnotComplex::staircase_torus(2, 4 * k + 1)
            .unwrap()
            .tensor(&KnotComplex::staircase_torus(n, n + 1).unwrap());
        assert_eq!(tensor.v_sequence().unwrap(), v(want), "homology ({n},{k})");
        if n + 1 >= 4 * k {
            assert_eq!(v_sum(n, k).unwrap(), v(want), "closed form ({n},{k})");
        }
    }
}

#[test]
fn trefoil_powers_and_mixed_sums() {
    let cases: &[(&str, &[u64])] = &[
        ("power:torus:2,3*2", &[1, 1]),
        ("power:whitehead-double*3", &[2, 1, 1]),
        ("sum:torus:2,5+torus:3,4", &[2, 2, 1, 1, 1]),
        ("sum:torus:3,5+torus:2,3", &[2, 2, 1, 1, 1]),
    ];
    for &(spec, want) in cases {
        let k: KnotSpec = spec.parse().unwrap();
        assert_eq!(k.complex().unwrap().v_sequence().unwrap(), v(want), "{spec}");
    }
    // an acyclic summand does not move the V-sequence
    let t23 = KnotComplex::staircase_torus(2, 3).unwrap();
    assert_eq!(t23.tensor(&t23).v_sequence().unwrap(), v_torus2(2));
}
