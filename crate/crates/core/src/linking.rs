//! Linking forms, linking triples `(G, λ, f)` and the metabolic and
//! hyperbolic conditions on them.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::group::{complementary_pair, subgroups_within, FiniteAbelianGroup, GroupElement, Subgroup};
use crate::{invalid, is_prime, violated, Rational, Result};

/// Symmetric bilinear form into `Q/Z`, given on the cyclic generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingForm {
    gram: Vec<Vec<Rational>>,
}

impl LinkingForm {
    /// Checks symmetry and that each entry is killed by the order of
    /// either generator.
    pub fn new(group: &FiniteAbelianGroup, gram: Vec<Vec<Rational>>) -> Result<Self> {
        let r = group.rank();
        if gram.len() != r || gram.iter().any(|row| row.len() != r) {
            return invalid(format!("gram matrix must be {r}x{r}"));
        }
        let gram: Vec<Vec<Rational>> =
            gram.into_iter().map(|row| row.into_iter().map(|v| v.fract_mod1()).collect()).collect();
        let q = group.cyclic_orders();
        for s in 0..r {
            for t in 0..r {
                if gram[s][t] != gram[t][s] {
                    return invalid(format!("gram matrix is not symmetric at ({s}, {t})"));
                }
                if !(gram[s][t] * q[s] as i64).is_integer() {
                    return invalid(format!("gram entry ({s}, {t}) is not killed by the order {}", q[s]));
                }
            }
        }
        Ok(LinkingForm { gram })
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn pair(&self, x: &GroupElement, y: &GroupElement) -> Rational {
        let mut acc = Rational::ZERO;
        for (s, &a) in x.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (t, &b) in y.0.iter().enumerate() {
                if b != 0 {
                    acc += self.gram[s][t] * (a as i64 * b as i64);
                }
            }
        }
        acc.fract_mod1()
    }

    /// Block sum, first block on the leading coordinates.
    pub fn direct_sum(&self, other: &LinkingForm) -> LinkingForm {
        let (a, b) = (self.gram.len(), other.gram.len());
        let mut gram = vec![vec![Rational::ZERO; a + b]; a + b];
        for s in 0..a {
            gram[s][..a].copy_from_slice(&self.gram[s]);
        }
        for s in 0..b {
            gram[a + s][a..].copy_from_slice(&other.gram[s]);
        }
        LinkingForm { gram }
    }

    /// No nonzero element pairs trivially with every generator.
    /// Enumerates the group.
    pub fn is_nondegenerate(&self, group: &FiniteAbelianGroup) -> bool {
        let gens: Vec<GroupElement> = (0..group.rank()).map(|k| group.basis(k)).collect();
        group.elements().skip(1).all(|x| gens.iter().any(|e| !self.pair(&x, e).is_zero()))
    }

    pub fn is_isotropic_on(&self, h: &Subgroup) -> bool {
        let g = h.generators();
        g.iter().all(|x| g.iter().all(|y| self.pair(x, y).is_zero()))
    }
}

/// A total rational-valued function on a group.
#[derive(Clone)]
pub struct GroupFunction(Arc<dyn Fn(&GroupElement) -> Rational + Send + Sync>);

impl GroupFunction {
    pub fn new(f: impl Fn(&GroupElement) -> Rational + Send + Sync + 'static) -> Self {
        GroupFunction(Arc::new(f))
    }

    pub fn eval(&self, x: &GroupElement) -> Rational {
        (self.0)(x)
    }

    /// `(x, y) -> self(x) + other(y)` where `x` takes the first `split`
    /// coordinates.
    pub fn orthogonal_sum(&self, other: &GroupFunction, split: usize) -> GroupFunction {
        let (f, g) = (self.clone(), other.clone());
        GroupFunction::new(move |x| {
            f.eval(&GroupElement(x.0[..split].to_vec())) + g.eval(&GroupElement(x.0[split..].to_vec()))
        })
    }
}

impl fmt::Debug for GroupFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("GroupFunction")
    }
}

#[derive(Debug, Clone)]
pub struct LinkingTriple {
    pub group: FiniteAbelianGroup,
    pub form: LinkingForm,
    pub f: GroupFunction,
}

impl LinkingTriple {
    pub fn new(group: FiniteAbelianGroup, form: LinkingForm, f: GroupFunction) -> Self {
        LinkingTriple { group, form, f }
    }

    pub fn direct_sum(&self, other: &LinkingTriple) -> LinkingTriple {
        LinkingTriple {
            group: self.group.direct_sum(&other.group),
            form: self.form.direct_sum(&other.form),
            f: self.f.orthogonal_sum(&other.f, self.group.rank()),
        }
    }

    pub fn vanishes_on(&self, h: &Subgroup) -> bool {
        h.elements().all(|x| self.f.eval(&x).is_zero())
    }

    /// Isotropic for the form and `f`-vanishing.
    pub fn is_metabolizer(&self, h: &Subgroup) -> bool {
        h.order() * h.order() == self.group.order() && self.form.is_isotropic_on(h) && self.vanishes_on(h)
    }

    fn zero_set(&self) -> HashSet<u64> {
        self.group.elements().filter(|x| self.f.eval(x).is_zero()).map(|x| self.group.encode(&x)).collect()
    }

    /// All metabolizers, sorted by element codes.
    pub fn metabolizers(&self) -> Vec<Subgroup> {
        let Some(target) = exact_sqrt(self.group.order()) else {
            return Vec::new();
        };
        let form = &self.form;
        subgroups_within(&self.group, &self.zero_set(), target, &|a, b| form.pair(a, b).is_zero())
    }

    pub fn is_metabolic(&self) -> Option<Subgroup> {
        self.metabolizers().into_iter().next()
    }

    pub fn is_hyperbolic(&self) -> Option<(Subgroup, Subgroup)> {
        complementary_pair(&self.metabolizers())
    }
}

pub(crate) fn exact_sqrt(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|s| s * s == n)
}

fn project(x: &GroupElement, from: usize, to: usize) -> GroupElement {
    GroupElement(x.0[from..to].to_vec())
}

/// Given a hyperbolic splitting `L ⊕ M` of `A ⊕ B` and `A_0 ⊕ A_1` of
/// `A`, returns the four projections `B_i^L`, `B_i^M` of
/// `L ∩ (A_i ⊕ B)` and `M ∩ (A_i ⊕ B)` to `B`, in the order
/// `B_0^L, B_1^L, B_0^M, B_1^M`.
pub fn extract_metabolizers(
    a: &LinkingTriple,
    b: &LinkingTriple,
    l: &Subgroup,
    m: &Subgroup,
    a0: &Subgroup,
    a1: &Subgroup,
) -> Result<[Subgroup; 4]> {
    let sum = a.direct_sum(b);
    if l.parent() != &sum.group || m.parent() != &sum.group {
        return invalid("L and M must be subgroups of A ⊕ B");
    }
    if a0.parent() != &a.group || a1.parent() != &a.group {
        return invalid("A_0 and A_1 must be subgroups of A");
    }
    if !(l.complements(m) && sum.is_metabolizer(l) && sum.is_metabolizer(m)) {
        return invalid("L, M is not a hyperbolic splitting of A ⊕ B");
    }
    if !(a0.complements(a1) && a.is_metabolizer(a0) && a.is_metabolizer(a1)) {
        return invalid("A_0, A_1 is not a hyperbolic splitting of A");
    }
    let out = project_to_b(a.group.rank(), &b.group, l, m, a0, a1)?;
    if let Some(k) = out.iter().position(|h| !b.is_metabolizer(h)) {
        return violated(format!("projection {k} is not a metabolizer of B"));
    }
    Ok(out)
}

/// The projections `B_i^L`, `B_i^M` without checking that the inputs
/// are splittings. `a_rank` is the number of leading `A` coordinates.
pub fn project_to_b(
    a_rank: usize,
    b_group: &FiniteAbelianGroup,
    l: &Subgroup,
    m: &Subgroup,
    a0: &Subgroup,
    a1: &Subgroup,
) -> Result<[Subgroup; 4]> {
    let rs = l.parent().rank();
    let mut out = Vec::with_capacity(4);
    for (big, ai) in [(l, a0), (l, a1), (m, a0), (m, a1)] {
        let mut seen = HashSet::new();
        let mut proj = Vec::new();
        for x in big.elements() {
            if ai.contains(&project(&x, 0, a_rank)) {
                let y = project(&x, a_rank, rs);
                if seen.insert(b_group.encode(&y)) {
                    proj.push(y);
                }
            }
        }
        match Subgroup::from_elements(b_group, &proj) {
            Some(h) => out.push(h),
            None => return violated("projection to B is not a subgroup"),
        }
    }
    Ok(out.try_into().expect("four pieces"))
}

/// The rank-six linking triples over `Z_p`. `A = ⟨z_i, w_i⟩` and
/// `B = ⟨x_i, y_i⟩`, `i = 1..3`, coordinates ordered
/// `(z_1, w_1, z_2, w_2, z_3, w_3)` and `(x_1, y_1, x_2, y_2, x_3, y_3)`.
#[derive(Debug, Clone)]
pub struct Rank6Example {
    pub p: u64,
    pub a: LinkingTriple,
    pub b: LinkingTriple,
    pub a0: Subgroup,
    pub a1: Subgroup,
    pub l: Subgroup,
    pub m: Subgroup,
    /// `⟨x_1,x_2,x_3⟩, ⟨y_1,y_2,x_3⟩, ⟨x_1,y_2,y_3⟩, ⟨y_1,x_2,y_3⟩`.
    pub listed_metabolizers: [Subgroup; 4],
}

const X1: usize = 0;
const Y1: usize = 1;
const X2: usize = 2;
const Y2: usize = 3;
const X3: usize = 4;
const Y3: usize = 5;

fn hyperbolic_gram(c: Rational) -> Vec<Vec<Rational>> {
    let mut g = vec![vec![Rational::ZERO; 6]; 6];
    for k in 0..3 {
        g[2 * k][2 * k + 1] = c;
        g[2 * k + 1][2 * k] = c;
    }
    g
}

pub fn build_rank6_example(p: u64) -> Result<Rank6Example> {
    if p == 2 || !is_prime(p) {
        return invalid(format!("p must be an odd prime, got {p}"));
    }
    let grp = FiniteAbelianGroup::elementary(p, 6)?;
    let unit = |k: usize| grp.basis(k);
    let span = |ks: &[usize]| Subgroup::generated_by(&grp, ks.iter().map(|&k| unit(k)).collect());
    let listed = [span(&[X1, X2, X3]), span(&[Y1, Y2, X3]), span(&[X1, Y2, Y3]), span(&[Y1, X2, Y3])];

    let mu = LinkingForm::new(&grp, hyperbolic_gram(Rational::new(-2, p as i64)))?;
    let nu = LinkingForm::new(&grp, hyperbolic_gram(Rational::new(2, p as i64)))?;

    let union: Arc<[Subgroup; 4]> = Arc::new(listed.clone());
    let g_union = union.clone();
    let g =
        GroupFunction::new(move |x| if g_union.iter().any(|h| h.contains(x)) { Rational::ZERO } else { Rational::ONE });
    // A_0 = ⟨z_i⟩ and A_1 = ⟨w_i⟩ sit on the same slots as x_i and y_i
    let a0 = span(&[X1, X2, X3]);
    let a1 = span(&[Y1, Y2, Y3]);
    let (fa0, fa1, gb) = (a0.clone(), a1.clone(), g.clone());
    let f = GroupFunction::new(move |x| if fa0.contains(x) || fa1.contains(x) { Rational::ZERO } else { -gb.eval(x) });
    let a = LinkingTriple::new(grp.clone(), mu, f);
    let b = LinkingTriple::new(grp.clone(), nu, g);

    let sum = a.group.direct_sum(&b.group);
    let pair = |sa: Option<usize>, sb: Option<usize>| {
        let mut v = vec![0u64; 12];
        if let Some(k) = sa {
            v[k] = 1;
        }
        if let Some(k) = sb {
            v[6 + k] = 1;
        }
        GroupElement(v)
    };
    // z_i, w_i occupy slots X_i, Y_i of A
    let (z1, w1, z2, w2, z3, w3) = (X1, Y1, X2, Y2, X3, Y3);
    let l = Subgroup::generated_by(
        &sum,
        vec![
            pair(Some(z1), Some(X1)),
            pair(Some(z2), Some(X2)),
            pair(Some(w1), Some(Y1)),
            pair(Some(w2), Some(Y2)),
            pair(None, Some(X3)),
            pair(Some(w3), None),
        ],
    );
    let m = Subgroup::generated_by(
        &sum,
        vec![
            pair(Some(z1), Some(Y2)),
            pair(Some(z3), Some(X1)),
            pair(Some(w1), Some(X2)),
            pair(Some(w3), Some(Y1)),
            pair(None, Some(Y3)),
            pair(Some(w2), None),
        ],
    );
    Ok(Rank6Example { p, a, b, a0, a1, l, m, listed_metabolizers: listed })
}

/// Outcome of the checks on the rank-six example.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rank6Report {
    pub p: u64,
    pub l_meets_m_trivially: bool,
    pub l_plus_m_is_everything: bool,
    pub l_and_m_isotropic: bool,
    pub f_plus_g_vanishes_on_l_and_m: bool,
    pub a_side_hyperbolic: bool,
    pub b_side_metabolic: bool,
    pub b_side_hyperbolic: bool,
    pub extracted_match_listed: bool,
    pub disjoint_metabolizer_pair: bool,
    /// An element `(a, b)` of `L` or `M` with `f(a) + g(b) != 0`.
    pub vanishing_counterexample: Option<Vec<u64>>,
}

impl Rank6Report {
    pub fn all_pass(&self) -> bool {
        self.l_meets_m_trivially
            && self.l_plus_m_is_everything
            && self.l_and_m_isotropic
            && self.f_plus_g_vanishes_on_l_and_m
            && self.a_side_hyperbolic
            && self.b_side_metabolic
            && !self.b_side_hyperbolic
            && self.extracted_match_listed
            && !self.disjoint_metabolizer_pair
    }
}

impl Rank6Example {
    /// Runs every check. The hyperbolicity searches enumerate all of `A`
    /// and `B`, which is quick at `p = 3` and slower from `p = 5` on.
    pub fn verify(&self) -> Result<Rank6Report> {
        let sum = self.a.direct_sum(&self.b);
        let whole = sum.group.order();
        let l_meets_m_trivially = self.l.intersects_trivially(&self.m);
        let l_plus_m_is_everything = self.l.order() * self.m.order() == whole && l_meets_m_trivially;
        let l_and_m_isotropic = sum.form.is_isotropic_on(&self.l) && sum.form.is_isotropic_on(&self.m);
        let vanishing_counterexample =
            self.l.elements().chain(self.m.elements()).find(|x| !sum.f.eval(x).is_zero()).map(|x| x.0);
        let f_plus_g_vanishes_on_l_and_m = vanishing_counterexample.is_none();
        let a_side_hyperbolic = self.a.is_hyperbolic().is_some();
        let b_mets = self.b.metabolizers();
        let b_side_metabolic = !b_mets.is_empty();
        let b_side_hyperbolic = complementary_pair(&b_mets).is_some();
        let extracted = project_to_b(6, &self.b.group, &self.l, &self.m, &self.a0, &self.a1)?;
        let extracted_match_listed =
            extracted.iter().zip(&self.listed_metabolizers).all(|(x, y)| x.codes() == y.codes());
        let disjoint_metabolizer_pair =
            (0..4).any(|s| (s + 1..4).any(|t| extracted[s].intersects_trivially(&extracted[t])));
        Ok(Rank6Report {
            p: self.p,
            l_meets_m_trivially,
            l_plus_m_is_everything,
            l_and_m_isotropic,
            f_plus_g_vanishes_on_l_and_m,
            a_side_hyperbolic,
            b_side_metabolic,
            b_side_hyperbolic,
            extracted_match_listed,
            disjoint_metabolizer_pair,
            vanishing_counterexample,
        })
    }
}
