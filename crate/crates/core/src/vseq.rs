//! V-sequences and their closed forms.

use serde::{Deserialize, Serialize};

use crate::{invalid, violated, Result};

/// Eventually-zero sequence `V_0, V_1, ...` with trailing zeros dropped.
/// `H_l` is read as `V_{-l}` through [`VSequence::ext`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VSequence {
    values: Vec<u64>,
}

impl VSequence {
    /// Checks `V_l >= V_{l+1} >= V_l - 1` and strips trailing zeros.
    pub fn new(mut values: Vec<u64>) -> Result<Self> {
        while values.last() == Some(&0) {
            values.pop();
        }
        for (l, w) in values.windows(2).enumerate() {
            if w[1] > w[0] || w[0] > w[1] + 1 {
                return violated(format!("V_{l} = {}, V_{} = {} breaks the unit-step rule", w[0], l + 1, w[1]));
            }
        }
        if values.last().is_some_and(|&v| v != 1) {
            return violated("last nonzero V must equal 1");
        }
        Ok(VSequence { values })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `V_l` for `l >= 0`.
    pub fn get(&self, l: usize) -> u64 {
        self.values.get(l).copied().unwrap_or(0)
    }

    /// `V_s` for any integer `s`, using `V_{-s} = V_s + s`.
    pub fn ext(&self, s: i64) -> i64 {
        if s >= 0 {
            self.get(s as usize) as i64
        } else {
            self.get((-s) as usize) as i64 - s
        }
    }

    /// V-sequence of a connected sum, `V_l = min_s (V_s(A) + V_{l-s}(B))`.
    pub fn connected_sum(&self, other: &VSequence) -> VSequence {
        let reach = (self.len() + other.len() + 2) as i64;
        let values = (0..reach)
            .map(|l| (-reach..=reach).map(|s| self.ext(s) + other.ext(l - s)).min().unwrap_or(0))
            .map(|v| v as u64)
            .collect();
        VSequence::new(values).expect("min-convolution of V-sequences is a V-sequence")
    }
}

fn tri(k: i64) -> i64 {
    k * (k + 1) / 2
}

/// `V(T(2, 2m+1))`: `V_l = ceil((m - l) / 2)` for `l < m`.
pub fn v_torus2(m: u64) -> VSequence {
    let m = m as i64;
    let values = (0..m).map(|l| ((m - l + 1) / 2) as u64).collect();
    VSequence::new(values).expect("closed form is valid")
}

/// The odd-`m` list as it appears in print, `{k, k-1, k-1, ..., 1, 1}`
/// with `m = 2k+1`. It is one below the homology value at every index
/// (it gives `V_0(T(2,3)) = 0`), so it is kept only for comparison.
pub fn v_torus2_printed(m: u64) -> VSequence {
    if m.is_multiple_of(2) {
        return v_torus2(m);
    }
    let values = v_torus2(m).values.iter().map(|v| v.saturating_sub(1)).collect();
    VSequence::new(values).expect("shifted closed form is valid")
}

/// `V(T(n, n+1))` for odd `n = 2d+1`:
/// `V_{an+b} = Tr(d-a) - max(0, b - (d+a+1))`, zero from `l = dn` on.
pub fn v_torus_staircase(n: u64) -> Result<VSequence> {
    if n < 3 || n.is_multiple_of(2) {
        return invalid(format!("n must be odd and at least 3, got {n}"));
    }
    let n = n as i64;
    let d = (n - 1) / 2;
    let values = (0..d * n)
        .map(|l| {
            let (a, b) = (l / n, l % n);
            (tri(d - a) - (b - (d + a + 1)).max(0)) as u64
        })
        .collect();
    VSequence::new(values)
}

/// Halved ramp `L_k(x) = max(0, k - floor(|x|/2))`; the center value
/// `k` appears three times.
pub fn l_ramp(k: u64, x: i64) -> u64 {
    (k as i64 - x.abs() / 2).max(0) as u64
}

/// `L_k^t(x)`: zero for `x < -t`, else `L_k(x)`.
pub fn l_truncated(k: u64, t: i64, x: i64) -> u64 {
    if x < -t {
        0
    } else {
        l_ramp(k, x)
    }
}

/// Centered reduction of `l` into `[-(n-1)/2, (n-1)/2]`.
pub fn centered_mod(l: i64, n: i64) -> i64 {
    let r = l.rem_euclid(n);
    if r > (n - 1) / 2 {
        r - n
    } else {
        r
    }
}

fn check_sum_params(n: u64, k: u64) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) {
        return invalid(format!("n must be odd and at least 3, got {n}"));
    }
    if k == 0 {
        return invalid("k must be at least 1");
    }
    let (n, k) = (n as i64, k as i64);
    if n * n + n < 2 * (n * (n - 1) / 2 + 2 * k) - 1 {
        return invalid(format!(
            "surgery coefficient too small: n^2 + n >= 2(n(n-1)/2 + 2k) - 1 fails for n = {n}, k = {k}"
        ));
    }
    Ok(())
}

/// `V(J#J#T(n, n+1))` with `J` the `k`-fold sum of trefoils (or of the
/// Whitehead double, which has the same V-sequence). Computed as the
/// min-convolution of `V(T(2, 4k+1))` and `V(T(n, n+1))`, which agrees
/// with the homology of the tensor product.
pub fn v_sum(n: u64, k: u64) -> Result<VSequence> {
    check_sum_params(n, k)?;
    Ok(v_torus2(2 * k).connected_sum(&v_torus_staircase(n)?))
}

/// The piecewise ramp description of `V(J#J#T(n, n+1))`: on top of
/// `V(T(n, n+1))` add `L_k^{t(l)}(l mod n)` up to `l = n(n-1)/2`, then
/// `1` up to `n(n-1)/2 + k`, then nothing. Where both of the first two
/// clauses apply the larger value is used.
///
/// This agrees with [`v_sum`] at `(n, k) = (3, 1)` but not in general:
/// at `(5, 1)` it gives `V_4 = 2` where the homology gives 3, and at
/// `(5, 2)` it is not even monotone.
pub fn v_sum_piecewise(n: u64, k: u64) -> Result<VSequence> {
    check_sum_params(n, k)?;
    let base = v_torus_staircase(n)?;
    let (ni, ki) = (n as i64, k as i64);
    let half = ni * (ni - 1) / 2;
    let t_of = |l: i64| {
        // |l| in [an - (n-1)/2, an + (n+1)/2)
        let a = (l.abs() + (ni - 1) / 2).div_euclid(ni);
        (ni - 3) / 2 - a
    };
    let mut values = Vec::new();
    for l in 0..=half + ki {
        let mut bump = 0;
        if l <= half {
            bump = l_truncated(k, t_of(l), centered_mod(l, ni));
        }
        if l >= half {
            bump = bump.max(1);
        }
        values.push(base.get(l as usize) + bump);
    }
    while values.last() == Some(&0) {
        values.pop();
    }
    // the piecewise list need not satisfy the unit-step rule
    Ok(VSequence { values })
}
