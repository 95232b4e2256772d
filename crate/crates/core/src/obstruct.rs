//! Obstructions to smooth embeddings in S⁴ and to double sliceness,
//! read off from correction terms.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dinv::{d_lens_sum_matrix, d_table_z, kp_of, ZTable};
use crate::group::{complementary_pair, subgroups_within, FiniteAbelianGroup, GroupElement, Subgroup};
use crate::linking::exact_sqrt;
use crate::tables::CorrectionMatrix;
use crate::{invalid, is_prime, prime_power, Rational, Result};

/// A d-function on a finite abelian group, stored as an orthogonal sum
/// of dense blocks. Block `b` owns a run of consecutive coordinates and
/// a table indexed by the block-local element code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DFunctionOnGroup {
    group: FiniteAbelianGroup,
    blocks: Vec<Block>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Block {
    group: FiniteAbelianGroup,
    offset: usize,
    values: Vec<Rational>,
}

impl DFunctionOnGroup {
    /// Dense function; `values` indexed by element code.
    pub fn dense(group: FiniteAbelianGroup, values: Vec<Rational>) -> Result<Self> {
        if values.len() as u64 != group.order() {
            return invalid(format!("need {} values, got {}", group.order(), values.len()));
        }
        Ok(DFunctionOnGroup { blocks: vec![Block { group: group.clone(), offset: 0, values }], group })
    }

    /// `Z_n ⊕ Z_n` from a square matrix, `(i, j) -> M(i, j)`. The spin
    /// structure (index 0) sits at the identity. `n` must be a prime
    /// power.
    pub fn from_matrix(m: &CorrectionMatrix) -> Result<Self> {
        if m.row_modulus != m.col_modulus {
            return invalid("d-function needs a square matrix");
        }
        let n = m.row_modulus;
        if n == 1 {
            return DFunctionOnGroup::dense(FiniteAbelianGroup::trivial(), vec![m.values[0]]);
        }
        if prime_power(n).is_none() {
            return invalid(format!("matrix size {n} is not a prime power"));
        }
        let group = FiniteAbelianGroup::new(vec![n, n])?;
        DFunctionOnGroup::dense(group, m.values.clone())
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn eval(&self, x: &GroupElement) -> Rational {
        self.blocks
            .iter()
            .map(|b| {
                let code = x.0[b.offset..b.offset + b.group.rank()]
                    .iter()
                    .zip(b.group.cyclic_orders())
                    .fold(0u64, |acc, (&c, &q)| acc * q + c);
                b.values[code as usize]
            })
            .sum()
    }

    pub fn orthogonal_sum(&self, other: &DFunctionOnGroup) -> DFunctionOnGroup {
        let shift = self.group.rank();
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().map(|b| Block { offset: b.offset + shift, ..b.clone() }));
        DFunctionOnGroup { group: self.group.direct_sum(&other.group), blocks }
    }

    /// `n`-fold orthogonal sum, the d-function of an `n`-fold connected
    /// sum.
    pub fn power(&self, n: usize) -> DFunctionOnGroup {
        assert!(n >= 1, "power needs n >= 1");
        (1..n).fold(self.clone(), |acc, _| acc.orthogonal_sum(self))
    }

    /// Codes of the elements where the function vanishes.
    pub fn zero_set(&self) -> HashSet<u64> {
        self.group.elements().filter(|x| self.eval(x).is_zero()).map(|x| self.group.encode(&x)).collect()
    }

    /// Restriction to the coordinates in `coords` (others set to zero).
    fn restrict(&self, coords: &[usize]) -> DFunctionOnGroup {
        let orders: Vec<u64> = coords.iter().map(|&k| self.group.cyclic_orders()[k]).collect();
        let sub = FiniteAbelianGroup::new(orders).expect("factors of a valid group");
        let values = sub
            .elements()
            .map(|y| {
                let mut x = vec![0; self.group.rank()];
                for (s, &k) in coords.iter().enumerate() {
                    x[k] = y.0[s];
                }
                self.eval(&GroupElement(x))
            })
            .collect();
        DFunctionOnGroup::dense(sub, values).expect("sizes agree")
    }
}

/// Number of exactly-zero entries.
pub fn vanishing_count(m: &CorrectionMatrix) -> usize {
    m.zero_count()
}

/// `G = G_1 ⊕ G_2` with `G_1 ≅ G_2` and `d` vanishing on both, found by
/// exhaustive search over subgroups inside the zero set of `d`.
pub fn d_hyperbolic_splitting(df: &DFunctionOnGroup) -> Option<(Subgroup, Subgroup)> {
    let target = exact_sqrt(df.group.order())?;
    let found = subgroups_within(&df.group, &df.zero_set(), target, &|_, _| true);
    complementary_pair(&found)
}

pub fn subgroup_sum(df: &DFunctionOnGroup, h: &Subgroup) -> Rational {
    h.elements().map(|x| df.eval(&x)).sum()
}

fn cyclic_sum(df: &DFunctionOnGroup, g: &GroupElement, order: u64) -> Rational {
    (0..order as i64).map(|m| df.eval(&df.group.scale(m, g))).sum()
}

/// Names of the order-`p` subgroups of `Z_p ⊕ Z_p`: `G_a = ⟨(a, a+1)⟩`
/// for `a ∈ Z_p` and `G_star = ⟨(1, 1)⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LensLabel {
    Index(u64),
    Star,
}

impl fmt::Display for LensLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LensLabel::Index(a) => write!(f, "G_{a}"),
            LensLabel::Star => f.write_str("G_star"),
        }
    }
}

impl LensLabel {
    pub fn generator(&self, p: u64) -> (u64, u64) {
        match *self {
            LensLabel::Index(a) => (a % p, (a + 1) % p),
            LensLabel::Star => (1, 1),
        }
    }

    /// Label of the line through `(u, v) != 0` in `Z_p ⊕ Z_p`.
    pub fn of(p: u64, u: u64, v: u64) -> LensLabel {
        let (u, v) = (u % p, v % p);
        if u == v {
            return LensLabel::Star;
        }
        // a (v - u) = u
        let diff = (v + p - u) % p;
        let inv = mod_pow(diff, p - 2, p);
        LensLabel::Index(u * inv % p)
    }
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// `S_{G_a}` of `d(L(p,1) # L(p,-1))`: `(p²-1)/6` at `a = 0`,
/// `-(p²-1)/6` at `a = p-1`, zero otherwise.
pub fn s_lens_closed(p: u64, a: LensLabel) -> Result<Rational> {
    if p < 3 || !is_prime(p) {
        return invalid(format!("p must be an odd prime, got {p}"));
    }
    let c = Rational::new((p * p - 1) as i64, 6);
    Ok(match a {
        LensLabel::Index(0) => c,
        LensLabel::Index(x) if x == p - 1 => -c,
        _ => Rational::ZERO,
    })
}

/// Minimum of `|Σ n_i s_i|` over nonnegative integers `n_i` with at
/// least `r` of them nonzero. `None` when fewer than `r` sums exist.
pub fn grs_from_sums(sums: &[Rational], r: usize) -> Option<Rational> {
    if r == 0 {
        return Some(Rational::ZERO);
    }
    if sums.len() < r {
        return None;
    }
    let zeros = sums.iter().filter(|s| s.is_zero()).count();
    let pos = sums.iter().any(|s| s.signum() > 0);
    let neg = sums.iter().any(|s| s.signum() < 0);
    if zeros >= r || (pos && neg) {
        return Some(Rational::ZERO);
    }
    let mut mags: Vec<Rational> = sums.iter().filter(|s| !s.is_zero()).map(|s| s.abs()).collect();
    mags.sort();
    Some(mags[..r - zeros].iter().sum())
}

/// One row of the subgroup-sum ledger.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupSum {
    pub generator: GroupElement,
    pub sum: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrsReport {
    pub p: u64,
    pub r_p: usize,
    pub value: Rational,
    pub zero_sums: usize,
    pub positive_sums: usize,
    pub negative_sums: usize,
    /// Present when the group is small enough to list every subgroup.
    pub ledger: Option<Vec<SubgroupSum>>,
}

/// Subgroup-sum minimization at the prime `p`. Zero when `p` does not
/// divide the group order.
pub fn grs_invariant(df: &DFunctionOnGroup, p: u64) -> Result<Rational> {
    Ok(grs_report(df, p, 0)?.value)
}

/// [`grs_invariant`] with counts, and the ledger when there are at most
/// `ledger_limit` subgroups.
pub fn grs_report(df: &DFunctionOnGroup, p: u64, ledger_limit: usize) -> Result<GrsReport> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    let r = df.group.rp_count(p);
    let gens = df.group.order_p_generators(p)?;
    let sums: Vec<Rational> = gens.iter().map(|g| cyclic_sum(df, g, p)).collect();
    let value = match grs_from_sums(&sums, r) {
        Some(v) => v,
        // (p^r - 1)/(p - 1) >= r always, so this cannot happen
        None => return crate::violated("fewer order-p subgroups than r_p"),
    };
    let ledger = (gens.len() <= ledger_limit)
        .then(|| gens.iter().zip(&sums).map(|(g, &s)| SubgroupSum { generator: g.clone(), sum: s }).collect());
    Ok(GrsReport {
        p,
        r_p: r,
        value,
        zero_sums: sums.iter().filter(|s| s.is_zero()).count(),
        positive_sums: sums.iter().filter(|s| s.signum() > 0).count(),
        negative_sums: sums.iter().filter(|s| s.signum() < 0).count(),
        ledger,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentVerdict {
    /// Cyclic order `p^k` of the homogeneous component.
    pub cyclic_order: u64,
    pub rank: usize,
    /// Ranks above four are not constrained and are skipped.
    pub checked: bool,
    pub witness: Option<[Vec<GroupElement>; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableVerdict {
    pub components: Vec<ComponentVerdict>,
    pub stably_excluded: bool,
}

/// Every homogeneous component of rank at most four must carry a
/// d-vanishing splitting for the knot to be stably doubly slice.
pub fn stable_obstruction(df: &DFunctionOnGroup) -> StableVerdict {
    let mut orders: Vec<u64> = df.group.cyclic_orders().to_vec();
    orders.sort_unstable();
    orders.dedup();
    let mut components = Vec::new();
    for q in orders {
        let coords: Vec<usize> = (0..df.group.rank()).filter(|&k| df.group.cyclic_orders()[k] == q).collect();
        let rank = coords.len();
        let checked = rank <= 4;
        let witness = if checked {
            d_hyperbolic_splitting(&df.restrict(&coords)).map(|(a, b)| [a.reduced_generators(), b.reduced_generators()])
        } else {
            None
        };
        components.push(ComponentVerdict { cyclic_order: q, rank, checked, witness });
    }
    let stably_excluded = components.iter().any(|c| c.checked && c.witness.is_none());
    StableVerdict { components, stably_excluded }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub embeds_smoothly_possible: bool,
    pub smoothly_doubly_slice_possible: bool,
    pub stably_doubly_slice_possible: bool,
    /// Neither the knot nor its double is stably doubly slice, so its
    /// order in the double concordance group is at least three. Says
    /// nothing about infinite order.
    pub order_at_least_three: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub p: u64,
    pub k: u64,
    pub zero_count: usize,
    pub required_zero_count: usize,
    pub has_d_hyperbolic_splitting: bool,
    pub splitting_witness: Option<[Vec<GroupElement>; 2]>,
    pub grs_value: Rational,
    pub stable: StableVerdict,
    pub double_has_d_hyperbolic_splitting: bool,
    pub verdicts: Verdicts,
}

/// Runs every obstruction on the double branched cover for `(p, k)`.
/// `k` defaults to `⌈(p+6)/12⌉`.
pub fn full_report(p: u64, k: Option<u64>) -> Result<ObstructionReport> {
    if p < 3 || !is_prime(p) {
        return invalid(format!("p must be an odd prime, got {p}"));
    }
    let k = k.unwrap_or_else(|| kp_of(p));
    let ZTable { d, .. } = d_table_z(p, k)?;
    let df = DFunctionOnGroup::from_matrix(&d)?;
    let zero_count = vanishing_count(&d);
    let required = 2 * p as usize - 1;
    let split = d_hyperbolic_splitting(&df);
    let grs_value = grs_invariant(&df, p)?;
    let stable = stable_obstruction(&df);
    let double_split = d_hyperbolic_splitting(&df.power(2)).is_some();
    let embeds = zero_count >= required && split.is_some();
    let verdicts = Verdicts {
        embeds_smoothly_possible: embeds,
        smoothly_doubly_slice_possible: embeds && grs_value.is_zero(),
        stably_doubly_slice_possible: !stable.stably_excluded,
        order_at_least_three: stable.stably_excluded && !double_split,
    };
    Ok(ObstructionReport {
        p,
        k,
        zero_count,
        required_zero_count: required,
        has_d_hyperbolic_splitting: split.is_some(),
        splitting_witness: split.map(|(a, b)| [a.reduced_generators(), b.reduced_generators()]),
        grs_value,
        stable,
        double_has_d_hyperbolic_splitting: double_split,
        verdicts,
    })
}

/// `d(L(p,1) # L(p,-1))` as a d-function.
pub fn lens_sum_function(p: u64) -> Result<DFunctionOnGroup> {
    DFunctionOnGroup::from_matrix(&d_lens_sum_matrix(p)?)
}

/// The d-function of the double branched cover for `(p, k)`.
pub fn z_function(p: u64, k: u64) -> Result<DFunctionOnGroup> {
    DFunctionOnGroup::from_matrix(&d_table_z(p, k)?.d)
}
