//! Correction terms of lens spaces, Ni–Wu surgeries and the tables for
//! the manifolds X = S³_n(J#J), Y = S³_{n²+n}(J#J#T(n,n+1)) and the
//! double branched cover Z.

use serde::{Deserialize, Serialize};

use crate::complex::KnotComplex;
use crate::tables::{centered_range, CorrectionMatrix, CorrectionTable};
use crate::vseq::{l_ramp, v_sum, v_torus2, VSequence};
use crate::{invalid, is_prime, violated, Rational, Result};

/// Convention used for lens-space correction terms.
pub const LENS_CONVENTION: &str = "d(L(p,1), i) = ((2i - p)^2 - p) / (4p), i reduced mod p";

/// `((2i - p)^2 - p) / (4p)` without reducing `i`.
fn lens_poly(p: i64, i: i64) -> Rational {
    Rational::new((2 * i - p).pow(2) - p, 4 * p)
}

/// `d(L(p,1), i)` with `i` reduced modulo `p`.
pub fn d_lens(p: u64, i: i64) -> Rational {
    assert!(p >= 1, "lens space L(p,1) needs p >= 1");
    lens_poly(p as i64, i.rem_euclid(p as i64))
}

pub fn lens_table(p: u64) -> Result<CorrectionTable> {
    if p == 0 {
        return invalid("p must be at least 1");
    }
    Ok(CorrectionTable::from_fn(p, |i| d_lens(p, i as i64)))
}

/// `d(L(p,1) # L(p,-1))` on `Z_p ⊕ Z_p`: `d_lens(p,i) - d_lens(p,j)`.
pub fn d_lens_sum_matrix(p: u64) -> Result<CorrectionMatrix> {
    if p < 2 {
        return invalid("p must be at least 2");
    }
    Ok(CorrectionMatrix::from_fn(p, p, |i, j| d_lens(p, i) - d_lens(p, j)))
}

/// Ni–Wu: `d(S³_p(K), i) = d(L(p,1), i) - 2 max(V_i, V_{p-i})`.
///
/// Requires `p >= 2g - 1` where `g` is the length of `v`, which equals
/// the genus for every knot handled here.
pub fn ni_wu(p: u64, v: &VSequence) -> Result<CorrectionTable> {
    let g = v.len() as i64;
    if p == 0 || (p as i64) < 2 * g - 1 {
        return invalid(format!("surgery coefficient too small: p >= 2g - 1 fails for p = {p}, g = {g}"));
    }
    Ok(CorrectionTable::from_fn(p, |i| {
        let bump = v.get(i as usize).max(v.get((p - i) as usize));
        d_lens(p, i as i64) - Rational::int(2 * bump as i64)
    }))
}

/// d-table of `p`-surgery on the knot whose complex is `c`.
pub fn d_from_complex(c: &KnotComplex, p: u64) -> Result<CorrectionTable> {
    let g = c.genus();
    if (p as i64) < 2 * g - 1 {
        return invalid(format!("surgery coefficient too small: p >= 2g - 1 fails for p = {p}, g = {g}"));
    }
    ni_wu(p, &c.v_sequence()?)
}

/// `D(L(n,1)) - D(X)` for `X = S³_n(J#J)`, centered: `2 L_k(i)`.
pub fn w_vector(n: u64, k: u64) -> Result<Vec<i64>> {
    check_x(n, k)?;
    let v = v_torus2(2 * k);
    let out: Vec<i64> = centered_range(n)
        .map(|i| {
            let r = i.rem_euclid(n as i64) as u64;
            2 * v.get(r as usize).max(v.get((n - r) as usize)) as i64
        })
        .collect();
    debug_assert!(centered_range(n).zip(&out).all(|(i, &w)| w == 2 * l_ramp(k, i) as i64));
    Ok(out)
}

fn check_odd(n: u64, name: &str) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) {
        return invalid(format!("{name} must be odd and at least 3, got {n}"));
    }
    Ok(())
}

/// `n >= 4k - 1`, needed for the X surgery.
fn check_x(n: u64, k: u64) -> Result<()> {
    check_odd(n, "n")?;
    if k == 0 {
        return invalid("k must be at least 1");
    }
    if n + 1 < 4 * k {
        return invalid(format!("surgery coefficient too small: n >= 4k - 1 fails for n = {n}, k = {k}"));
    }
    Ok(())
}

/// `k <= (2n + 1)/4`, needed for the Y surgery.
fn check_y(n: u64, k: u64) -> Result<()> {
    check_odd(n, "n")?;
    if k == 0 {
        return invalid("k must be at least 1");
    }
    if 4 * k > 2 * n + 1 {
        return invalid(format!("k <= (2n + 1)/4 fails for n = {n}, k = {k}"));
    }
    Ok(())
}

/// `l = n(n+1)/2 + (n+1) i - n j`, centered in `Z_{n²+n}`.
pub fn index_map(n: u64, i: i64, j: i64) -> i64 {
    let n = n as i64;
    crate::tables::to_centered(n * (n + 1) / 2 + (n + 1) * i - n * j, (n * n + n) as u64)
}

/// Tables for `Y`: the correction terms themselves and the difference
/// from `L(n,1) # L(n+1,-1)`, both `n × (n+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct YTable {
    pub n: u64,
    pub k: u64,
    pub d: CorrectionMatrix,
    pub difference: CorrectionMatrix,
}

pub fn d_table_y(n: u64, k: u64) -> Result<YTable> {
    check_y(n, k)?;
    let p = n * n + n;
    let table = ni_wu(p, &v_sum(n, k)?)?;
    let d = CorrectionMatrix::from_fn(n, n + 1, |i, j| table.at(index_map(n, i, j)));
    let lens = CorrectionMatrix::from_fn(n, n + 1, |i, j| d_lens(n, i) - d_lens(n + 1, j));
    let difference = lens.sub(&d)?;
    let y = YTable { n, k, d, difference };
    y.check()?;
    Ok(y)
}

impl YTable {
    fn check(&self) -> Result<()> {
        if !self.difference.all_even() || self.difference.values.iter().any(|v| v.signum() < 0) {
            return violated("Y difference matrix has an entry that is not a nonnegative even integer");
        }
        let w = w_row_bounds(self.n, self.k);
        for (r, i) in centered_range(self.n).enumerate() {
            for j in centered_range(self.n + 1) {
                if self.difference.at(i, j) > Rational::int(w[r]) {
                    return violated(format!("Y difference exceeds the row bound at ({i}, {j})"));
                }
            }
        }
        Ok(())
    }

    /// `d(Y, l) - (d(L(n,1), i) - d(L(n+1,1), j))` is an even integer
    /// at every entry.
    pub fn parity_holds(&self) -> bool {
        self.difference.all_even()
    }
}

/// Row bounds `2 L_k(i)` without the X-surgery constraint.
fn w_row_bounds(n: u64, k: u64) -> Vec<i64> {
    centered_range(n).map(|i| 2 * l_ramp(k, i) as i64).collect()
}

/// The unreduced combination
/// `d(L(n²+n,1), l) - d(L(n,1), i) + d(L(n+1,1), j)` at centered `i, j`
/// and `l = n(n+1)/2 + (n+1) i - n j`, which equals `k'² - k'` with
/// `k' = j - i`. Returns the pair `(combination, k'² - k')`.
pub fn parity_identity(n: u64, i: i64, j: i64) -> (Rational, Rational) {
    let ni = n as i64;
    let l = ni * (ni + 1) / 2 + (ni + 1) * i - ni * j;
    let lhs = lens_poly(ni * ni + ni, l) - lens_poly(ni, i) + lens_poly(ni + 1, j);
    let kp = j - i;
    (lhs, Rational::int(kp * kp - kp))
}

/// `⌈(p + 6)/12⌉`.
pub fn kp_of(p: u64) -> u64 {
    (p + 6).div_ceil(12)
}

/// Tables for the double branched cover `Z`, both `p × p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZTable {
    pub p: u64,
    pub k: u64,
    pub d: CorrectionMatrix,
    pub difference: CorrectionMatrix,
}

fn check_z(p: u64, k: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return invalid(format!("p must be an odd prime, got {p}"));
    }
    check_x(p, k)?;
    check_y(p, k)
}

/// `D(Z) = D(L(p,1) # L(p,-1)) - M_Z`. The difference `M_Z` is the Y
/// difference matrix with the column `j = -(p+1)/2` removed, the
/// remaining columns `j ∈ [-(p-1)/2, (p-1)/2]` read as `Z_p`.
pub fn d_table_z(p: u64, k: u64) -> Result<ZTable> {
    check_z(p, k)?;
    let y = d_table_y(p, k)?;
    let half = (p as i64 - 1) / 2;
    let difference = CorrectionMatrix::from_fn(p, p, |i, j| {
        let jc = if j > half { j - p as i64 } else { j };
        y.difference.at(i, jc)
    });
    let d = d_lens_sum_matrix(p)?.sub(&difference)?;
    if !difference.is_conjugation_symmetric() {
        return violated("Z difference matrix lost conjugation symmetry");
    }
    Ok(ZTable { p, k, d, difference })
}

/// The difference matrix drawn as a pattern: row `i` equals `2 L_k(i)`
/// except on a zero window running from the diagonal `j = i` to the
/// center column, flanked by a `2` on the diagonal `j = i ∓ 1` away from
/// the center. Symmetric under `(i, j) -> (-i, -j)`.
pub fn z_difference_pattern(p: u64, k: u64) -> Result<CorrectionMatrix> {
    check_z(p, k)?;
    let entry = |i: i64, j: i64| -> i64 {
        let w = 2 * l_ramp(k, i) as i64;
        if w == 0 {
            return 0;
        }
        if i == 0 {
            return match j.abs() {
                0 => 0,
                1 => 2,
                _ => w,
            };
        }
        // upper half; lower half by symmetry
        let (i, j) = if i > 0 { (-i, -j) } else { (i, j) };
        if (i..=0).contains(&j) {
            0
        } else if j == i - 1 {
            2
        } else {
            w
        }
    };
    let centered = |x: i64| crate::tables::to_centered(x, p);
    Ok(CorrectionMatrix::from_fn(p, p, |i, j| Rational::int(entry(centered(i), centered(j)))))
}
