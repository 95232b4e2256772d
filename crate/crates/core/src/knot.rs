//! Knot specifications for the command line:
//! `unknot`, `torus:P,Q`, `whitehead-double`, `sum:A+B+...`,
//! `power:SPEC*K`.

use std::fmt;
use std::str::FromStr;

use crate::complex::KnotComplex;
use crate::vseq::{v_torus2, v_torus_staircase, VSequence};
use crate::{invalid, Error, Result};

/// Largest germ the homology engine is asked to handle.
pub const MAX_GERM: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnotSpec {
    Unknot,
    Torus(u64, u64),
    /// Positive untwisted Whitehead double of the right-handed trefoil;
    /// its complex is that of T(2,3) plus an acyclic summand.
    WhiteheadDouble,
    Sum(Vec<KnotSpec>),
    Power(Box<KnotSpec>, u32),
}

impl FromStr for KnotSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "unknot" {
            return Ok(KnotSpec::Unknot);
        }
        if s == "whitehead-double" {
            return Ok(KnotSpec::WhiteheadDouble);
        }
        if let Some(rest) = s.strip_prefix("torus:") {
            let (p, q) = rest.split_once(',').ok_or_else(|| bad(s, "expected torus:P,Q"))?;
            let p: u64 = p.trim().parse().map_err(|_| bad(s, "P is not a positive integer"))?;
            let q: u64 = q.trim().parse().map_err(|_| bad(s, "Q is not a positive integer"))?;
            if p < 2 || q < 2 {
                return invalid(format!("knot spec {s:?}: torus knot needs P >= 2 and Q >= 2"));
            }
            if num_integer::gcd(p, q) != 1 {
                return invalid(format!("knot spec {s:?}: torus knot needs gcd(P, Q) = 1"));
            }
            return Ok(KnotSpec::Torus(p.min(q), p.max(q)));
        }
        if let Some(rest) = s.strip_prefix("sum:") {
            let parts = rest.split('+').map(str::parse).collect::<Result<Vec<KnotSpec>>>()?;
            return Ok(KnotSpec::Sum(parts));
        }
        if let Some(rest) = s.strip_prefix("power:") {
            let (inner, k) = rest.rsplit_once('*').ok_or_else(|| bad(s, "expected power:SPEC*K"))?;
            let k: u32 = k.trim().parse().map_err(|_| bad(s, "K is not a nonnegative integer"))?;
            return Ok(KnotSpec::Power(Box::new(inner.parse()?), k));
        }
        Err(bad(s, "unknown form"))
    }
}

fn bad(s: &str, why: &str) -> Error {
    Error::InvalidInput(format!("knot spec {s:?}: {why}"))
}

impl fmt::Display for KnotSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotSpec::Unknot => f.write_str("unknot"),
            KnotSpec::Torus(p, q) => write!(f, "torus:{p},{q}"),
            KnotSpec::WhiteheadDouble => f.write_str("whitehead-double"),
            KnotSpec::Sum(parts) => {
                f.write_str("sum:")?;
                for (k, part) in parts.iter().enumerate() {
                    if k > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{part}")?;
                }
                Ok(())
            }
            KnotSpec::Power(inner, k) => write!(f, "power:{inner}*{k}"),
        }
    }
}

/// Prime summand of a flattened spec.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    Torus(u64, u64),
    WhiteheadDouble,
}

impl KnotSpec {
    /// Prime summands with repetition; the unknot contributes nothing.
    pub fn atoms(&self) -> Vec<Atom> {
        match self {
            KnotSpec::Unknot => Vec::new(),
            KnotSpec::Torus(p, q) => vec![Atom::Torus(*p, *q)],
            KnotSpec::WhiteheadDouble => vec![Atom::WhiteheadDouble],
            KnotSpec::Sum(parts) => parts.iter().flat_map(|k| k.atoms()).collect(),
            KnotSpec::Power(inner, k) => {
                let one = inner.atoms();
                (0..*k).flat_map(|_| one.clone()).collect()
            }
        }
    }

    pub fn has_whitehead_double(&self) -> bool {
        self.atoms().contains(&Atom::WhiteheadDouble)
    }

    /// Genus, additive over summands.
    pub fn genus(&self) -> u64 {
        self.atoms()
            .iter()
            .map(|a| match *a {
                Atom::Torus(p, q) => (p - 1) * (q - 1) / 2,
                Atom::WhiteheadDouble => 1,
            })
            .sum()
    }

    /// Tensor product of the staircase complexes of the summands, with
    /// the Whitehead double replaced by the trefoil staircase.
    pub fn complex(&self) -> Result<KnotComplex> {
        let atoms = self.atoms();
        let mut size: usize = 1;
        let mut pieces = Vec::with_capacity(atoms.len());
        for a in atoms {
            let c = match a {
                Atom::Torus(p, q) => KnotComplex::staircase_torus(p, q)?,
                Atom::WhiteheadDouble => KnotComplex::staircase_torus(2, 3)?,
            };
            size = size.saturating_mul(c.len());
            if size > MAX_GERM {
                return invalid(format!("tensor product germ exceeds {MAX_GERM} generators"));
            }
            pieces.push(c);
        }
        let mut pieces = pieces.into_iter();
        let first = pieces.next().unwrap_or_else(KnotComplex::unknot);
        Ok(pieces.fold(first, |acc, c| acc.tensor(&c)))
    }

    /// V-sequence without the homology engine where a closed form is
    /// known for every summand: `T(2, 2m+1)`, `T(n, n+1)` with `n` odd,
    /// and the Whitehead double. Sums use the min-convolution.
    pub fn closed_form(&self) -> Option<VSequence> {
        let mut acc = VSequence::new(Vec::new()).expect("empty sequence");
        for a in self.atoms() {
            let v = match a {
                Atom::Torus(2, q) => v_torus2((q - 1) / 2),
                Atom::Torus(n, q) if q == n + 1 && n % 2 == 1 => v_torus_staircase(n).ok()?,
                Atom::WhiteheadDouble => v_torus2(1),
                Atom::Torus(..) => return None,
            };
            acc = acc.connected_sum(&v);
        }
        Some(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!("torus:3,2".parse::<KnotSpec>().unwrap(), KnotSpec::Torus(2, 3));
        let s: KnotSpec = "sum:torus:2,5+torus:5,6".parse().unwrap();
        assert_eq!(s.atoms(), vec![Atom::Torus(2, 5), Atom::Torus(5, 6)]);
        let p: KnotSpec = "power:whitehead-double*4".parse().unwrap();
        assert_eq!(p.atoms().len(), 4);
        let nested: KnotSpec = "sum:power:torus:2,3*2+torus:3,4".parse().unwrap();
        assert_eq!(nested.atoms().len(), 3);
        assert_eq!(nested.genus(), 5);
        assert_eq!(nested.to_string(), "sum:power:torus:2,3*2+torus:3,4");
        for bad in ["torus:2,4", "torus:1,3", "torus:2", "power:unknot", "knot", "sum:torus:2,3+"] {
            assert!(bad.parse::<KnotSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn closed_forms_match_oracle() {
        for spec in ["torus:2,9", "sum:torus:2,5+torus:5,6", "power:whitehead-double*2", "unknot"] {
            let k: KnotSpec = spec.parse().unwrap();
            assert_eq!(k.closed_form().unwrap(), k.complex().unwrap().v_sequence().unwrap(), "{spec}");
        }
        assert!("torus:3,5".parse::<KnotSpec>().unwrap().closed_form().is_none());
    }

    #[test]
    fn germ_limit() {
        let k: KnotSpec = "power:torus:5,6*4".parse().unwrap();
        assert!(k.complex().is_err());
    }
}
