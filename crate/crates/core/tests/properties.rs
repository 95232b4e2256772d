use dslice_core::complex::KnotComplex;
use dslice_core::dinv::{d_lens_sum_matrix, ni_wu, parity_identity};
use dslice_core::group::FiniteAbelianGroup;
use dslice_core::obstruct::{
    d_hyperbolic_splitting, grs_from_sums, grs_invariant, lens_sum_function, vanishing_count, DFunctionOnGroup,
};
use dslice_core::tables::CorrectionMatrix;
use dslice_core::vseq::VSequence;
use dslice_core::Rational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const STAIRCASES: &[(u64, u64)] = &[(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (2, 9), (4, 5)];

fn staircase(k: usize) -> KnotComplex {
    let (p, q) = STAIRCASES[k];
    KnotComplex::staircase_torus(p, q).unwrap()
}

/// Exhaustive minimum of `|Σ n_i s_i|` over `n_i ∈ 0..=16` with at
/// least `r` nonzero, by dynamic programming on twice the sum.
fn brute_grs(sums: &[Rational], r: usize) -> Option<Rational> {
    use std::collections::BTreeSet;
    let halves: Vec<i64> = sums.iter().map(|s| (*s * 2).numer()).collect();
    let mut states: BTreeSet<(usize, i64)> = BTreeSet::from([(0, 0)]);
    for &h in &halves {
        let mut next = BTreeSet::new();
        for &(c, v) in &states {
            next.insert((c, v));
            for n in 1..=16 {
                next.insert(((c + 1).min(r), v + n * h));
            }
        }
        states = next;
    }
    states.iter().filter(|(c, _)| *c >= r).map(|&(_, v)| Rational::new(v.abs(), 2)).min()
}

#[test]
fn grs_closed_form_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let len = rng.gen_range(1..=8);
        let r = rng.gen_range(1..=3);
        let sums: Vec<Rational> =
            (0..len).map(|_| Rational::new(rng.gen_range(-3..=3), [1, 2][rng.gen_range(0..2)])).collect();
        assert_eq!(grs_from_sums(&sums, r), brute_grs(&sums, r), "{sums:?}, r = {r}");
    }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1i64..13).prop_map(|(n, d)| Rational::new(n, d))
}

fn matrix() -> impl Strategy<Value = CorrectionMatrix> {
    (1u64..6, 1u64..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(rational(), (r * c) as usize).prop_map(move |v| CorrectionMatrix::new(r, c, v).unwrap())
    })
}

/// Random invertible matrix over `Z_p`, as rows.
fn invertible(rng: &mut ChaCha8Rng, p: i64, n: usize) -> Vec<Vec<i64>> {
    loop {
        let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect()).collect();
        let mut a = m.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| a[r][col] % p != 0) else { continue };
            a.swap(rank, piv);
            let inv = (1..p).find(|x| a[rank][col] * x % p == 1).unwrap();
            for r in 0..n {
                if r != rank {
                    let f = a[r][col] * inv % p;
                    for c in 0..n {
                        a[r][c] = (a[r][c] - f * a[rank][c]).rem_euclid(p);
                    }
                }
            }
            rank += 1;
        }
        if rank == n {
            return m;
        }
    }
}

/// `d ∘ A` for a linear automorphism `A` of `Z_p^n`.
fn twist(df: &DFunctionOnGroup, a: &[Vec<i64>]) -> DFunctionOnGroup {
    let g = df.group().clone();
    let values = g
        .elements()
        .map(|x| {
            let y: Vec<i64> =
                a.iter().map(|row| row.iter().zip(x.coords()).map(|(&c, &v)| c * v as i64).sum()).collect();
            df.eval(&g.element(&y).unwrap())
        })
        .collect();
    DFunctionOnGroup::dense(g, values).unwrap()
}

#[test]
fn splitting_and_grs_survive_automorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (p, copies) in [(3u64, 1usize), (3, 2), (5, 1)] {
        let df = lens_sum_function(p).unwrap().power(copies);
        let n = 2 * copies;
        let base_zeros = df.zero_set().len();
        for _ in 0..4 {
            let t = twist(&df, &invertible(&mut rng, p as i64, n));
            assert_eq!(t.zero_set().len(), base_zeros);
            assert!(d_hyperbolic_splitting(&t).is_some(), "p = {p}, copies = {copies}");
            assert_eq!(grs_invariant(&t, p).unwrap(), Rational::ZERO);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn tensor_products_are_complexes(a in 0..STAIRCASES.len(), b in 0..STAIRCASES.len()) {
        let t = staircase(a).tensor(&staircase(b));
        let rebuilt = KnotComplex::new(t.generators().to_vec(), t.differential().to_vec());
        prop_assert!(rebuilt.is_ok());
        prop_assert_eq!(KnotComplex::parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn v_of_sum_is_min_convolution(a in 0..STAIRCASES.len(), b in 0..STAIRCASES.len()) {
        let (ca, cb) = (staircase(a), staircase(b));
        let want = ca.tensor(&cb).v_sequence().unwrap();
        let got = ca.v_sequence().unwrap().connected_sum(&cb.v_sequence().unwrap());
        prop_assert_eq!(got, want);
    }

    #[test]
    fn v_sequences_step_by_at_most_one(a in 0..STAIRCASES.len(), b in 0..STAIRCASES.len()) {
        let v = staircase(a).tensor(&staircase(b)).v_sequence().unwrap();
        let vals = v.values();
        prop_assert!(vals.windows(2).all(|w| w[0] == w[1] || w[0] == w[1] + 1));
        prop_assert!(VSequence::new(vals.to_vec()).is_ok());
    }

    #[test]
    fn surgery_tables_are_conjugation_symmetric(a in 0..STAIRCASES.len(), extra in 0u64..6) {
        let v = staircase(a).v_sequence().unwrap();
        let p = 2 * v.len() as u64 + extra;
        let t = ni_wu(p.max(1), &v).unwrap();
        prop_assert!(t.is_conjugation_symmetric());
    }

    #[test]
    fn lens_sum_matrices_are_conjugation_symmetric(p in 2u64..30) {
        let m = d_lens_sum_matrix(p).unwrap();
        prop_assert!(m.is_conjugation_symmetric());
        prop_assert!(vanishing_count(&m) >= p as usize);
    }

    #[test]
    fn json_round_trip(m in matrix()) {
        let text = serde_json::to_string(&m).unwrap();
        let back: CorrectionMatrix = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        prop_assert_eq!(back, m);
    }

    #[test]
    fn rational_text_round_trip(x in rational()) {
        prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
    }

    #[test]
    fn canonical_form_ignores_reflections(m in matrix(), r: bool, c: bool) {
        let refl = m.reflect(r, c);
        prop_assert_eq!(refl.canonical(), m.canonical());
        prop_assert!(refl.eq_up_to_reflection(&m));
    }

    #[test]
    fn order_p_subgroup_counts(pi in 0usize..3, rank in 1usize..4, extra in 0usize..2) {
        let p = [2u64, 3, 5][pi];
        let mut orders = vec![p; rank];
        orders.extend(std::iter::repeat_n(p * p, extra));
        let g = FiniteAbelianGroup::new(orders).unwrap();
        let r = (rank + extra) as u32;
        prop_assert_eq!(g.rp_count(p), r as usize);
        let want = (p.pow(r) - 1) / (p - 1);
        prop_assert_eq!(g.order_p_generators(p).unwrap().len() as u64, want);
        prop_assert_eq!(g.subgroups_of_order_p(p).unwrap().len() as u64, want);
    }

    #[test]
    fn parity_combination_is_k_squared_minus_k(ni in 0usize..4, i in -10i64..10, j in -10i64..10) {
        let n = [3u64, 5, 7, 9][ni];
        let (lhs, rhs) = parity_identity(n, i, j);
        prop_assert_eq!(lhs, rhs);
    }
}
