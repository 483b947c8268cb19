//! Bounded search for explicit ideal-membership combinations.
//!
//! A found combination certifies membership in `[G]`. A failed search only
//! means nothing was found inside the bounds; it never refutes membership.

use std::collections::BTreeMap;

use serde::Serialize;

use super::presentation::SigmaIdealPresentation;
use crate::error::{Error, Result};
use crate::linalg::SparseEchelon;
use crate::poly::{serialize_coefficient, Coefficient, DiffPoly, Term, VarIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MembershipBounds {
    /// Largest variable index allowed in shifted generators and multipliers.
    pub max_index: VarIndex,
    /// Largest degree of a multiplier term.
    pub extra_degree: u64,
}

impl MembershipBounds {
    pub fn new(max_index: VarIndex, extra_degree: u64) -> Self {
        MembershipBounds {
            max_index,
            extra_degree,
        }
    }
}

/// One summand `coefficient * multiplier * sigma^shift(generators[generator])`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CombinationEntry {
    #[serde(serialize_with = "serialize_coefficient")]
    pub coefficient: Coefficient,
    pub multiplier: Term,
    pub generator: usize,
    pub shift: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Combination {
    pub entries: Vec<CombinationEntry>,
}

impl Combination {
    pub fn expand(&self, g: &SigmaIdealPresentation) -> Result<DiffPoly> {
        let mut out = DiffPoly::zero();
        for e in &self.entries {
            let gen = g.generators().get(e.generator).ok_or_else(|| {
                Error::Contract(format!("combination names generator {}", e.generator))
            })?;
            out = &out + &gen.shift(e.shift)?.mul_term(&e.multiplier, &e.coefficient);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum MembershipOutcome {
    Member { combination: Combination },
    NotFoundWithinBounds,
}

impl MembershipOutcome {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipOutcome::Member { .. })
    }
}

fn check_homogeneous(g: &SigmaIdealPresentation) -> Result<()> {
    match g
        .generators()
        .iter()
        .find(|p| p.homogeneous_degree().is_none())
    {
        Some(bad) => Err(Error::Contract(format!(
            "generator {bad} is not homogeneous"
        ))),
        None => Ok(()),
    }
}

/// Searches for `p = sum c * t * sigma^j(g)` with `g` a generator, `sigma^j(g)`
/// and `t` using indices at most `bounds.max_index`, and `deg t <=
/// bounds.extra_degree`.
///
/// The generators are homogeneous, so each homogeneous component of `p` is
/// solved separately as an exact linear system over the rationals.
pub fn bounded_ideal_membership(
    p: &DiffPoly,
    g: &SigmaIdealPresentation,
    bounds: MembershipBounds,
) -> Result<MembershipOutcome> {
    if p.is_zero() {
        return Err(Error::Contract(
            "membership query for the zero polynomial".into(),
        ));
    }
    check_homogeneous(g)?;
    if p.max_index().is_some_and(|k| k > bounds.max_index) {
        return Ok(MembershipOutcome::NotFoundWithinBounds);
    }
    let mut combination = Combination::default();
    for (d, component) in p.homogeneous_components() {
        let mut echelon: SparseEchelon<Term> = SparseEchelon::new();
        let mut columns: Vec<(Term, usize, usize)> = Vec::new();
        for (gi, gen) in g.generators().iter().enumerate() {
            let dg = gen.homogeneous_degree().expect("checked above");
            let Some(e) = d.checked_sub(dg).filter(|&e| e <= bounds.extra_degree) else {
                continue;
            };
            let Some(top) = gen.max_index() else {
                continue;
            };
            let Some(max_shift) = bounds.max_index.checked_sub(top) else {
                continue;
            };
            let multipliers = Term::all_of_degree(e, bounds.max_index);
            for j in 0..=max_shift {
                let shifted = gen.shift(j)?;
                for t in &multipliers {
                    let col = shifted.mul_term(t, &Coefficient::from_integer(1.into()));
                    echelon.insert(col.terms().map(|(k, c)| (k.clone(), c.clone())).collect());
                    columns.push((t.clone(), gi, j));
                }
            }
        }
        let target: BTreeMap<Term, Coefficient> = component
            .terms()
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        let Some(combo) = echelon.express(target) else {
            return Ok(MembershipOutcome::NotFoundWithinBounds);
        };
        for (col, coefficient) in combo {
            let (multiplier, generator, shift) = columns[col].clone();
            combination.entries.push(CombinationEntry {
                coefficient,
                multiplier,
                generator,
                shift,
            });
        }
    }
    if &combination.expand(g)? != p {
        return Err(Error::Internal(format!(
            "membership combination does not reproduce {p}"
        )));
    }
    Ok(MembershipOutcome::Member { combination })
}

/// Bounded probe of the colon ideal `[G] : s`: checks `a * s` in `[G]`.
pub fn colon_membership(
    a: &DiffPoly,
    s: &DiffPoly,
    g: &SigmaIdealPresentation,
    bounds: MembershipBounds,
) -> Result<MembershipOutcome> {
    let prod = a * s;
    if prod.is_zero() {
        check_homogeneous(g)?;
        return Ok(MembershipOutcome::Member {
            combination: Combination::default(),
        });
    }
    bounded_ideal_membership(&prod, g, bounds)
}
