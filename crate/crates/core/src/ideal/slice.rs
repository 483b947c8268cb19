//! Exact membership in the degree-2 homogeneous part of `[A(1), ..., A(m)]`.
//!
//! That part is spanned by the shifts `sigma^j(A(i))`. Each shift has two
//! monomials, `sigma^j(u(2i-2))` and `sigma^j(u(2i-1))`, and a shifted `u(k)`
//! is recognised from its effective order `2^k` alone. So a quadratic lies in
//! the slice iff every monomial is such a shifted witness term and the two
//! monomials of each `sigma^j(A(i))` carry equal coefficients. The decision
//! looks only at the query's own monomials, so it is total.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{serialize_coefficient, Coefficient, DiffPoly, Term};
use crate::witness::{find_term_collisions, make_a, u_indices, u_term};

/// Location of a shifted witness monomial inside the slice basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisSlot {
    /// `i` in `sigma^j(A(i))`.
    pub family: u32,
    /// `j` in `sigma^j(A(i))`.
    pub shift: usize,
    /// `k` such that the monomial is `sigma^j(u(k))`.
    pub witness_index: u32,
    /// The other monomial of `sigma^j(A(i))`.
    pub partner: Term,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlienReason {
    /// Not a product of two distinct variables.
    NotSquareFreeQuadratic,
    EordNotPowerOfTwo,
    /// Effective order larger than `2^(2m-1)`, the largest among the generators.
    EordExceedsBound,
    /// Right effective order, but the lower index sits below every shift of the
    /// matching `u(k)`.
    BelowWitness,
}

impl fmt::Display for AlienReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlienReason::NotSquareFreeQuadratic => "not a product of two distinct variables",
            AlienReason::EordNotPowerOfTwo => "effective order is not a power of two",
            AlienReason::EordExceedsBound => "effective order exceeds the generator bound",
            AlienReason::BelowWitness => "lies below every shift of the matching witness term",
        })
    }
}

/// Outcome of [`Degree2Slice::locate`].
pub type Located = std::result::Result<BasisSlot, AlienReason>;

/// The degree-2 slice of `[A(1), ..., A(m)]`.
#[derive(Debug, Clone)]
pub struct Degree2Slice {
    m: u32,
    eord_bound: usize,
}

impl Degree2Slice {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::Contract("the slice needs m >= 1".into()));
        }
        make_a(m)?;
        let eord_bound = u_term(2 * m - 1)?.eord();
        Ok(Degree2Slice { m, eord_bound })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Largest effective order of a basis monomial, `2^(2m-1)`.
    pub fn eord_bound(&self) -> usize {
        self.eord_bound
    }

    /// Finds the basis element containing `monomial`. The outer error is an
    /// index overflow while building the partner monomial.
    pub fn locate(&self, monomial: &Term) -> Result<Located> {
        let idx: Vec<usize> = monomial.index_sequence().collect();
        let [lo, hi] = idx[..] else {
            return Ok(Err(AlienReason::NotSquareFreeQuadratic));
        };
        if lo == hi {
            return Ok(Err(AlienReason::NotSquareFreeQuadratic));
        }
        let e = hi - lo;
        if !e.is_power_of_two() {
            return Ok(Err(AlienReason::EordNotPowerOfTwo));
        }
        if e > self.eord_bound {
            return Ok(Err(AlienReason::EordExceedsBound));
        }
        let k = e.trailing_zeros();
        let (base, _) = u_indices(k)?;
        let Some(shift) = lo.checked_sub(base) else {
            return Ok(Err(AlienReason::BelowWitness));
        };
        if &u_term(k)?.shift(shift)? != monomial {
            return Err(Error::Internal(format!(
                "{monomial} misidentified as a shift of u({k})"
            )));
        }
        let partner = u_term(k ^ 1)?.shift(shift)?;
        Ok(Ok(BasisSlot {
            family: k / 2 + 1,
            shift,
            witness_index: k,
            partner,
        }))
    }

    /// `sigma^shift(A(family))`.
    pub fn basis_element(&self, family: u32, shift: usize) -> Result<DiffPoly> {
        make_a(family)?.shift(shift)
    }

    /// All basis elements with shift at most `max_shift`, ordered by
    /// `(family, shift)`.
    pub fn basis(&self, max_shift: usize) -> Result<Vec<((u32, usize), DiffPoly)>> {
        let mut out = Vec::new();
        for i in 1..=self.m {
            let a = make_a(i)?;
            for j in 0..=max_shift {
                out.push(((i, j), a.shift(j)?));
            }
        }
        Ok(out)
    }

    /// Materializes the monomial index for shifts up to `max_shift`, failing if
    /// two basis elements share a monomial.
    pub fn index(&self, max_shift: usize) -> Result<HashMap<Term, BasisSlot>> {
        let mut labelled = Vec::new();
        let mut index = HashMap::new();
        for ((i, j), b) in self.basis(max_shift)? {
            let terms: Vec<Term> = b.terms().map(|(t, _)| t.clone()).collect();
            for (n, t) in terms.iter().enumerate() {
                labelled.push(((u64::from(i), j as u64), t.clone()));
                index.insert(
                    t.clone(),
                    BasisSlot {
                        family: i,
                        shift: j,
                        witness_index: 2 * i - 2 + n as u32,
                        partner: terms[1 - n].clone(),
                    },
                );
            }
        }
        let (_, collisions) = find_term_collisions(labelled);
        if let Some(c) = collisions.first() {
            return Err(Error::Internal(format!(
                "basis elements overlap: {:?} ({})",
                c.tuple, c.detail
            )));
        }
        Ok(index)
    }
}

/// Coefficient of `sigma^shift(A(family))` in a member certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisCoefficient {
    pub family: u32,
    pub shift: usize,
    #[serde(serialize_with = "serialize_coefficient")]
    pub coefficient: Coefficient,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Refutation {
    AlienMonomial {
        monomial: Term,
        eord: usize,
        eord_bound: usize,
        reason: AlienReason,
    },
    PairingViolation {
        monomial: Term,
        partner: Term,
        family: u32,
        shift: usize,
        #[serde(serialize_with = "serialize_coefficient")]
        coefficient: Coefficient,
        #[serde(serialize_with = "serialize_coefficient")]
        partner_coefficient: Coefficient,
    },
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::AlienMonomial {
                monomial,
                eord,
                eord_bound,
                reason,
            } => write!(
                f,
                "monomial {monomial} (Eord {eord}, bound {eord_bound}): {reason}"
            ),
            Refutation::PairingViolation {
                monomial,
                partner,
                coefficient,
                partner_coefficient,
                ..
            } => write!(
                f,
                "monomial {monomial} has coefficient {coefficient} but its partner {partner} has {partner_coefficient}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SliceVerdict {
    Member { coefficients: Vec<BasisCoefficient> },
    NonMember { refutation: Refutation },
}

/// Evidence for or against membership of a quadratic in the degree-2 slice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceCertificate {
    pub m: u32,
    pub query: DiffPoly,
    #[serde(flatten)]
    pub verdict: SliceVerdict,
}

impl SliceCertificate {
    pub fn is_member(&self) -> bool {
        matches!(self.verdict, SliceVerdict::Member { .. })
    }

    /// `sum lambda_(i,j) sigma^j(A(i))` for a member certificate.
    pub fn reconstruct(&self) -> Result<Option<DiffPoly>> {
        let SliceVerdict::Member { coefficients } = &self.verdict else {
            return Ok(None);
        };
        let mut sum = DiffPoly::zero();
        for c in coefficients {
            sum = &sum + &make_a(c.family)?.shift(c.shift)?.scale(&c.coefficient);
        }
        Ok(Some(sum))
    }
}

/// Decides whether the nonzero degree-2 homogeneous `q` lies in
/// `[A(1), ..., A(m)]`.
pub fn degree2_slice_membership(q: &DiffPoly, m: u32) -> Result<SliceCertificate> {
    if q.is_zero() {
        return Err(Error::Contract(
            "slice membership of the zero polynomial".into(),
        ));
    }
    if q.homogeneous_degree() != Some(2) {
        return Err(Error::Contract(format!(
            "slice membership needs a homogeneous quadratic, got {q}"
        )));
    }
    let slice = Degree2Slice::new(m)?;
    let refute = |refutation| SliceCertificate {
        m,
        query: q.clone(),
        verdict: SliceVerdict::NonMember { refutation },
    };
    let mut lambdas: BTreeMap<(u32, usize), Coefficient> = BTreeMap::new();
    for (t, c) in q.terms() {
        let slot = match slice.locate(t)? {
            Ok(slot) => slot,
            Err(reason) => {
                return Ok(refute(Refutation::AlienMonomial {
                    monomial: t.clone(),
                    eord: t.eord(),
                    eord_bound: slice.eord_bound(),
                    reason,
                }))
            }
        };
        let pc = q.coefficient(&slot.partner);
        if &pc != c {
            return Ok(refute(Refutation::PairingViolation {
                monomial: t.clone(),
                partner: slot.partner,
                family: slot.family,
                shift: slot.shift,
                coefficient: c.clone(),
                partner_coefficient: pc,
            }));
        }
        lambdas.insert((slot.family, slot.shift), c.clone());
    }
    let cert = SliceCertificate {
        m,
        query: q.clone(),
        verdict: SliceVerdict::Member {
            coefficients: lambdas
                .into_iter()
                .map(|((family, shift), coefficient)| BasisCoefficient {
                    family,
                    shift,
                    coefficient,
                })
                .collect(),
        },
    };
    if cert.reconstruct()?.as_ref() != Some(q) {
        return Err(Error::Internal(format!(
            "slice certificate does not reconstruct {q}"
        )));
    }
    Ok(cert)
}
