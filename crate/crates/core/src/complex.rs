//! Filtered knot complexes CFK^∞ stored as their U^0 germ, plus the
//! homology engine that reads off V-sequences.
//!
//! A complex is a finite list of generators at lattice points `(i, j)`
//! with Maslov gradings, and an F2 differential between germ generators.
//! The full complex is the germ tensored with F2[U, U^-1], where
//! `U` shifts `(i, j, gr)` by `(-1, -1, -2)`. All complexes built here
//! (staircases and their tensor products) have differentials that stay
//! inside the germ, so U-powers never appear on arrows.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::f2::{kernel, BitVec, Echelon};
use crate::vseq::VSequence;
use crate::{invalid, violated, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub id: String,
    pub i: i64,
    pub j: i64,
    pub grading: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotComplex {
    generators: Vec<Generator>,
    /// `differential[s]` lists targets of generator `s`.
    differential: Vec<Vec<usize>>,
}

impl KnotComplex {
    /// Checks filtration, grading and ∂² = 0 before accepting.
    pub fn new(generators: Vec<Generator>, differential: Vec<Vec<usize>>) -> Result<Self> {
        if generators.is_empty() {
            return invalid("complex needs at least one generator");
        }
        if differential.len() != generators.len() {
            return invalid("differential length differs from generator count");
        }
        let c = KnotComplex { generators, differential };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        for (s, targets) in self.differential.iter().enumerate() {
            let src = &self.generators[s];
            for &t in targets {
                let Some(dst) = self.generators.get(t) else {
                    return invalid(format!("arrow {} -> #{t} has no target", src.id));
                };
                if dst.i > src.i || dst.j > src.j {
                    return violated(format!("arrow {} -> {} raises a filtration", src.id, dst.id));
                }
                if dst.grading != src.grading - 1 {
                    return violated(format!("arrow {} -> {} does not drop grading by one", src.id, dst.id));
                }
            }
        }
        for s in 0..self.len() {
            let mut acc = BitVec::zeros(self.len());
            for &t in &self.differential[s] {
                for &u in &self.differential[t] {
                    acc.flip(u);
                }
            }
            if !acc.is_zero() {
                return violated(format!("d∘d is nonzero on {}", self.generators[s].id));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn differential(&self) -> &[Vec<usize>] {
        &self.differential
    }

    /// Largest j-coordinate in the germ, which is the genus for the
    /// normalized complexes built here.
    pub fn genus(&self) -> i64 {
        self.generators.iter().map(|g| g.j).max().unwrap_or(0)
    }

    pub fn tensor(&self, other: &KnotComplex) -> KnotComplex {
        let nb = other.len();
        let mut gens = Vec::with_capacity(self.len() * nb);
        for a in &self.generators {
            for b in &other.generators {
                gens.push(Generator {
                    id: format!("{}.{}", a.id, b.id),
                    i: a.i + b.i,
                    j: a.j + b.j,
                    grading: a.grading + b.grading,
                });
            }
        }
        let mut diff = vec![Vec::new(); gens.len()];
        for x in 0..self.len() {
            for y in 0..nb {
                let d = &mut diff[x * nb + y];
                d.extend(self.differential[x].iter().map(|&t| t * nb + y));
                d.extend(other.differential[y].iter().map(|&t| x * nb + t));
            }
        }
        KnotComplex { generators: gens, differential: diff }
    }

    /// One generator at the origin in grading zero.
    pub fn unknot() -> KnotComplex {
        KnotComplex {
            generators: vec![Generator { id: "x0".into(), i: 0, j: 0, grading: 0 }],
            differential: vec![Vec::new()],
        }
    }

    /// Staircase complex of the positive torus knot `T(p, q)`.
    pub fn staircase_torus(p: u64, q: u64) -> Result<KnotComplex> {
        let exps = alexander_exponents(p, q)?;
        let mut gens = Vec::with_capacity(exps.len());
        let mut diff: Vec<Vec<usize>> = vec![Vec::new(); exps.len()];
        let (mut i, mut j) = (0, exps[0]);
        gens.push(Generator { id: "x0".into(), i, j, grading: 0 });
        for s in 1..exps.len() {
            let step = exps[s - 1] - exps[s];
            if s % 2 == 1 {
                i += step;
                gens.push(Generator { id: format!("x{s}"), i, j, grading: 1 });
                diff[s] = vec![s - 1, s + 1];
            } else {
                j -= step;
                gens.push(Generator { id: format!("x{s}"), i, j, grading: 0 });
            }
        }
        KnotComplex::new(gens, diff)
    }

    /// Parses the line format written by `Display`: generator lines
    /// `id i j grading`, then arrow lines `d source target`.
    pub fn parse(text: &str) -> Result<KnotComplex> {
        let mut gens = Vec::new();
        let mut index = HashMap::new();
        let mut arrows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            let bad = || invalid(format!("line {}: cannot parse {line:?}", lineno + 1));
            if f[0] == "d" {
                if f.len() != 3 {
                    return bad();
                }
                arrows.push((f[1].to_string(), f[2].to_string(), lineno + 1));
            } else {
                if f.len() != 4 {
                    return bad();
                }
                let nums: Vec<i64> = match f[1..].iter().map(|s| s.parse()).collect() {
                    Ok(v) => v,
                    Err(_) => return bad(),
                };
                if index.insert(f[0].to_string(), gens.len()).is_some() {
                    return invalid(format!("line {}: duplicate generator {}", lineno + 1, f[0]));
                }
                gens.push(Generator { id: f[0].into(), i: nums[0], j: nums[1], grading: nums[2] });
            }
        }
        let mut diff = vec![Vec::new(); gens.len()];
        for (s, t, lineno) in arrows {
            match (index.get(&s), index.get(&t)) {
                (Some(&a), Some(&b)) => diff[a].push(b),
                _ => return invalid(format!("line {lineno}: unknown generator in arrow")),
            }
        }
        KnotComplex::new(gens, diff)
    }

    /// V-sequence read off from the homology of the quotient complexes
    /// `A_l^+`. Trailing zeros are dropped.
    pub fn v_sequence(&self) -> Result<VSequence> {
        Homology::new(self).v_sequence()
    }
}

impl fmt::Display for KnotComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.generators {
            writeln!(f, "{} {} {} {}", g.id, g.i, g.j, g.grading)?;
        }
        for (s, ts) in self.differential.iter().enumerate() {
            for &t in ts {
                writeln!(f, "d {} {}", self.generators[s].id, self.generators[t].id)?;
            }
        }
        Ok(())
    }
}

/// Exponents of the symmetrized Alexander polynomial of `T(p, q)`,
/// largest first. Coefficients alternate +1, -1 along this list.
pub fn alexander_exponents(p: u64, q: u64) -> Result<Vec<i64>> {
    if p < 2 || q < 2 {
        return invalid(format!("torus knot needs p >= 2 and q >= 2, got ({p}, {q})"));
    }
    if num_integer::gcd(p, q) != 1 {
        return invalid(format!("torus knot needs gcd(p, q) = 1, got ({p}, {q})"));
    }
    let g = ((p - 1) * (q - 1) / 2) as i64;
    let (p, q) = (p as i64, q as i64);
    let mut coef: HashMap<i64, i64> = HashMap::new();
    // Δ = Σ_{s in S, s < 2g} (t^s - t^{s+1}) + t^{2g}
    for a in 0..=2 * g / p {
        for b in 0..=2 * g / q {
            let s = a * p + b * q;
            if s < 2 * g {
                *coef.entry(s).or_default() += 1;
                *coef.entry(s + 1).or_default() -= 1;
            }
        }
    }
    *coef.entry(2 * g).or_default() += 1;
    let mut exps: Vec<i64> = coef.into_iter().filter(|&(_, c)| c != 0).map(|(e, _)| e - g).collect();
    exps.sort_unstable_by(|a, b| b.cmp(a));
    Ok(exps)
}

struct Homology<'a> {
    c: &'a KnotComplex,
}

/// Element `U^e g` of the full complex.
type Cell = (usize, i64);

impl<'a> Homology<'a> {
    fn new(c: &'a KnotComplex) -> Self {
        Homology { c }
    }

    /// Basis of grading `h` inside the region where `keep(i, j)` holds.
    fn basis(&self, h: i64, keep: &dyn Fn(i64, i64) -> bool) -> Vec<Cell> {
        let mut out = Vec::new();
        for (idx, g) in self.c.generators.iter().enumerate() {
            if (g.grading - h).rem_euclid(2) == 0 {
                let e = (g.grading - h) / 2;
                if keep(g.i - e, g.j - e) {
                    out.push((idx, e));
                }
            }
        }
        out
    }

    /// Images of `src` cells under ∂, in coordinates of `dst`; cells
    /// outside `dst` are dropped (quotient complex).
    fn boundary_images(&self, src: &[Cell], dst: &[Cell]) -> Vec<BitVec> {
        let pos: HashMap<Cell, usize> = dst.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        src.iter()
            .map(|&(idx, e)| {
                let mut v = BitVec::zeros(dst.len());
                for &t in &self.c.differential[idx] {
                    if let Some(&k) = pos.get(&(t, e)) {
                        v.flip(k);
                    }
                }
                v
            })
            .collect()
    }

    /// A cycle in grading 0 generating the tower of H_*(C).
    fn tower_cycle(&self) -> Result<Vec<Cell>> {
        let all = |_: i64, _: i64| true;
        let b0 = self.basis(0, &all);
        let b1 = self.basis(1, &all);
        let bm = self.basis(-1, &all);
        let cycles = kernel(&self.boundary_images(&b0, &bm), b0.len());
        let mut bounds = Echelon::new();
        for v in self.boundary_images(&b1, &b0) {
            bounds.insert(v);
        }
        let h0 = cycles.len() - bounds.rank();
        let odd_cycles = kernel(&self.boundary_images(&b1, &b0), b1.len()).len();
        let odd_bounds = crate::f2::rank(self.boundary_images(&self.basis(2, &all), &b1));
        if h0 != 1 || odd_cycles != odd_bounds {
            return violated(format!(
                "homology of the full complex is not a single tower (even rank {h0}, odd rank {})",
                odd_cycles - odd_bounds
            ));
        }
        let x = cycles.into_iter().find(|v| !bounds.contains(v)).expect("rank one homology has a non-boundary cycle");
        Ok(x.ones().map(|k| b0[k]).collect())
    }

    fn v_sequence(&self) -> Result<VSequence> {
        let x = self.tower_cycle()?;
        let g = self.c.genus().max(0);
        let mut values = Vec::new();
        for l in 0..=g {
            let keep = move |i: i64, j: i64| i.max(j - l) >= 0;
            let mut z = 0i64;
            loop {
                let h = -2 * z;
                let a = self.basis(h, &keep);
                let pos: HashMap<Cell, usize> = a.iter().enumerate().map(|(k, &c)| (c, k)).collect();
                let mut v = BitVec::zeros(a.len());
                for &(idx, e) in &x {
                    if let Some(&k) = pos.get(&(idx, e + z)) {
                        v.flip(k);
                    }
                }
                let mut im = Echelon::new();
                for w in self.boundary_images(&self.basis(h + 1, &keep), &a) {
                    im.insert(w);
                }
                if v.is_zero() || im.contains(&v) {
                    break;
                }
                z += 1;
                if z > g + 2 {
                    return violated(format!("tower in A_{l}^+ did not terminate"));
                }
            }
            values.push(z - 1);
        }
        VSequence::new(values.into_iter().map(|v| v.max(0) as u64).collect())
    }
}
