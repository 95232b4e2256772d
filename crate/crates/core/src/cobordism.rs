//! Grading shifts of the surgery cobordisms and the `I_i` sets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::tables::{centered_range, CorrectionMatrix};
use crate::{invalid, violated, Rational, Result};

/// `(c_1² - 2χ - 3σ)/4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingShift {
    pub c1_squared: Rational,
    pub euler: i64,
    pub signature: i64,
    pub value: Rational,
}

impl GradingShift {
    pub fn new(c1_squared: Rational, euler: i64, signature: i64) -> Self {
        let value = (c1_squared - Rational::int(2 * euler + 3 * signature)) / 4;
        GradingShift { c1_squared, euler, signature, value }
    }
}

/// `((n+1) - (2m + n + 1)²) / (4(n+1))`.
pub fn gr_w1(n: u64, m: i64) -> Rational {
    let n = n as i64;
    Rational::new((n + 1) - (2 * m + n + 1).pow(2), 4 * (n + 1))
}

/// `(n(n+1) - (2m + n(n+1))²) / (4n(n+1))`.
pub fn gr_w2(n: u64, m: i64) -> Rational {
    let n = n as i64;
    let q = n * (n + 1);
    Rational::new(q - (2 * m + q).pow(2), 4 * q)
}

/// For each centered row `i`, the nonzero centered columns `j` where
/// the Y difference matrix reaches its row bound `w_i`.
pub fn i_sets(m: &CorrectionMatrix, w: &[i64]) -> Result<BTreeMap<i64, Vec<i64>>> {
    if w.len() as u64 != m.row_modulus {
        return invalid(format!("w has {} entries for {} rows", w.len(), m.row_modulus));
    }
    let mut out = BTreeMap::new();
    for (i, &wi) in centered_range(m.row_modulus).zip(w) {
        let bound = Rational::int(wi);
        let mut set = Vec::new();
        for j in centered_range(m.col_modulus) {
            let v = m.at(i, j);
            if v > bound {
                return violated(format!("entry ({i}, {j}) = {v} exceeds the row bound {wi}"));
            }
            if j != 0 && v == bound {
                set.push(j);
            }
        }
        out.insert(i, set);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dinv::{d_table_y, w_vector};

    #[test]
    fn shifts() {
        assert_eq!(gr_w1(5, -3), Rational::new(1, 4));
        assert_eq!(gr_w1(5, 0), Rational::new(-5, 4));
        assert_eq!(gr_w2(5, -15), Rational::new(1, 4));
        assert_eq!(gr_w2(3, 0), Rational::new(-11, 4));
        for m in -20..20 {
            assert_eq!(gr_w1(5, m), gr_w1(5, -m - 6));
            assert!(gr_w2(7, m) <= gr_w2(7, -28));
        }
        let s = GradingShift::new(Rational::new(-1, 5), 1, -1);
        assert_eq!(s.value, Rational::new(-1, 5 * 4) + Rational::new(1, 4));
    }

    #[test]
    fn i_sets_at_5_1() {
        let y = d_table_y(5, 1).unwrap();
        let w = w_vector(5, 1).unwrap();
        let sets = i_sets(&y.difference, &w).unwrap();
        assert_eq!(sets[&2].len(), 5);
        assert_eq!(sets[&-2].len(), 5);
        assert!(sets.values().all(|s| s.len() >= 3 && !s.contains(&0)));
    }

    #[test]
    fn bound_violation() {
        let y = d_table_y(5, 1).unwrap();
        assert!(i_sets(&y.difference, &[0, 0, 0, 0, 0]).is_err());
        assert!(i_sets(&y.difference, &[0, 0]).is_err());
    }
}
