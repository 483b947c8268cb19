//! Certificates that `<A(1), ..., A(m)>` is strictly contained in
//! `<A(1), ..., A(m+1)>`.
//!
//! Inclusion is syntactic (the generator lists are nested). Strictness: every
//! degree-2 element of the mixed ideal lies in the degree-2 slice, whose
//! monomials have effective order at most `2^(2m-1)`, while `A(m+1)` has terms
//! of effective order `2^(2m)` and `2^(2m+1)`.

use rayon::prelude::*;
use serde::Serialize;

use super::slice::{degree2_slice_membership, SliceCertificate};
use crate::error::{Error, Result};
use crate::poly::DiffPoly;
use crate::witness::make_a;

/// Largest `m_max` for which `A(m_max + 1)` stays well inside `usize`.
pub const MAX_CHAIN_LENGTH: u32 = 28;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainCertificate {
    pub m: u32,
    pub generators: Vec<DiffPoly>,
    /// Largest term effective order over the generators, measured.
    pub max_eord_bound: usize,
    pub separator: DiffPoly,
    /// Effective orders of the separator's terms, ascending.
    pub separator_eords: Vec<usize>,
    pub slice: SliceCertificate,
}

impl ChainCertificate {
    /// `2^(2m-1)`.
    pub fn expected_bound(&self) -> usize {
        1usize << (2 * self.m - 1)
    }

    /// `(2^(2m), 2^(2m+1))`.
    pub fn expected_separator_eords(&self) -> Vec<usize> {
        vec![1usize << (2 * self.m), 1usize << (2 * self.m + 1)]
    }

    /// The link is strict: both separator terms exceed the measured bound and
    /// the separator is refuted by the slice procedure.
    pub fn is_strict(&self) -> bool {
        !self.separator_eords.is_empty()
            && self
                .separator_eords
                .iter()
                .all(|&e| e > self.max_eord_bound)
            && !self.slice.is_member()
    }

    /// Strict, with every measured value equal to its closed form.
    pub fn matches_expected(&self) -> bool {
        self.is_strict()
            && self.max_eord_bound == self.expected_bound()
            && self.separator_eords == self.expected_separator_eords()
    }
}

fn certify(m: u32) -> Result<ChainCertificate> {
    let generators = (1..=m).map(make_a).collect::<Result<Vec<_>>>()?;
    let max_eord_bound = generators
        .iter()
        .filter_map(DiffPoly::max_eord)
        .max()
        .ok_or_else(|| Error::Internal("empty generator list".into()))?;
    let separator = make_a(m + 1)?;
    let mut separator_eords: Vec<usize> = separator.terms().map(|(t, _)| t.eord()).collect();
    separator_eords.sort_unstable();
    let slice = degree2_slice_membership(&separator, m)?;
    Ok(ChainCertificate {
        m,
        generators,
        max_eord_bound,
        separator,
        separator_eords,
        slice,
    })
}

/// One certificate per `m = 1..=m_max`, in order.
pub fn acc_chain_experiment(m_max: u32) -> Result<Vec<ChainCertificate>> {
    if m_max == 0 {
        return Err(Error::Contract(
            "the chain experiment needs m_max >= 1".into(),
        ));
    }
    if m_max > MAX_CHAIN_LENGTH {
        return Err(Error::IndexOverflow(format!(
            "A({}) is too large for the chain experiment (m_max <= {MAX_CHAIN_LENGTH})",
            m_max + 1
        )));
    }
    (1..=m_max).into_par_iter().map(certify).collect()
}
