use dslice_core::dinv::{d_lens_sum_matrix, d_table_z, kp_of, lens_table};
use dslice_core::group::Subgroup;
use dslice_core::obstruct::{
    d_hyperbolic_splitting, grs_invariant, lens_sum_function, s_lens_closed, subgroup_sum, z_function, LensLabel,
};
use dslice_core::tables::CorrectionMatrix;
use dslice_core::vseq::v_torus2;
use dslice_core::Rational;

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn rows(text: &[&str]) -> Vec<Rational> {
    text.iter().flat_map(|row| row.split_whitespace().map(r)).collect()
}

#[test]
fn lens_five() {
    let t = lens_table(5).unwrap();
    assert_eq!(t.values, rows(&["1 1/5 -1/5 -1/5 1/5"]));
    let centered: Vec<Rational> = t.centered().into_iter().map(|(_, v)| v).collect();
    assert_eq!(centered, rows(&["-1/5 1/5 1 1/5 -1/5"]));
}

#[test]
fn lens_sum_five() {
    let want = rows(&[
        "0 4/5 6/5 6/5 4/5",
        "-4/5 0 2/5 2/5 0",
        "-6/5 -2/5 0 0 -2/5",
        "-6/5 -2/5 0 0 -2/5",
        "-4/5 0 2/5 2/5 0",
    ]);
    let m = d_lens_sum_matrix(5).unwrap();
    assert_eq!(m, CorrectionMatrix::new(5, 5, want).unwrap());
    let centered = rows(&[
        "0 -2/5 -6/5 -2/5 0",
        "2/5 0 -4/5 0 2/5",
        "6/5 4/5 0 4/5 6/5",
        "2/5 0 -4/5 0 2/5",
        "0 -2/5 -6/5 -2/5 0",
    ]);
    assert_eq!(m.centered_rows().concat(), centered);
    // vanishes on <(1,1)> and <(1,4)>
    for t in 0..5 {
        assert!(m.at(t, t).is_zero() && m.at(t, 4 * t).is_zero());
    }
}

#[test]
fn figure_values() {
    assert_eq!(v_torus2(4).get(1), 2);
    assert_eq!(v_torus2(6).get(0), 3);
}

#[test]
fn lens_subgroup_sums() {
    for p in [5u64, 7, 11, 13] {
        let df = lens_sum_function(p).unwrap();
        let c = Rational::new((p * p - 1) as i64, 6);
        let mut labels = vec![LensLabel::Star];
        labels.extend((0..p).map(LensLabel::Index));
        for a in labels {
            let (u, v) = a.generator(p);
            let g = df.group().element(&[u as i64, v as i64]).unwrap();
            let h = Subgroup::generated_by(df.group(), vec![g]);
            let s = subgroup_sum(&df, &h);
            assert_eq!(s, s_lens_closed(p, a).unwrap(), "p = {p}, {a}");
            match a {
                LensLabel::Index(0) => assert_eq!(s, c),
                LensLabel::Index(x) if x == p - 1 => assert_eq!(s, -c),
                _ => assert!(s.is_zero()),
            }
        }
        assert_eq!(grs_invariant(&df, p).unwrap(), Rational::ZERO);
        assert!(d_hyperbolic_splitting(&df).is_some());
    }
}

/// Subgroup sums of the double branched cover at `k = kp_of(p)`, from
/// the independent table computation; entry `a` is `S_{G_a}`, `G_star`
/// sums to zero.
const Z_SUMS: &[(u64, &[i64])] = &[
    (5, &[-4, -4, -4, -4, -4]),
    (7, &[-12, -12, -12, -12, -12, -12, -8]),
    (11, &[-16, -12, -16, -16, -12, -12, -16, -16, -12, -12, -20]),
    (13, &[-16, -12, -16, -16, -16, -12, -12, -16, -16, -16, -12, -12, -28]),
];

#[test]
fn z_subgroup_sums_and_zero_counts() {
    for &(p, sums) in Z_SUMS {
        let k = kp_of(p);
        let df = z_function(p, k).unwrap();
        for (a, &want) in sums.iter().enumerate() {
            let (u, v) = LensLabel::Index(a as u64).generator(p);
            let h = Subgroup::generated_by(df.group(), vec![df.group().element(&[u as i64, v as i64]).unwrap()]);
            assert_eq!(subgroup_sum(&df, &h), Rational::int(want), "p = {p}, a = {a}");
        }
        let star = Subgroup::generated_by(df.group(), vec![df.group().element(&[1, 1]).unwrap()]);
        assert!(subgroup_sum(&df, &star).is_zero());
        let zeros = d_table_z(p, k).unwrap().d.zero_count();
        assert_eq!(zeros as u64, 2 * p - 4 * k + 1, "p = {p}");
        let least = sums.iter().map(|s| s.abs()).min().unwrap();
        assert_eq!(grs_invariant(&df, p).unwrap(), Rational::int(least));
    }
}
