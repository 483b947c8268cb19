//! The mixed-closure shuffle `S -> [S]'` with `T' = { a * sigma(b) : a * b in T }`.
//!
//! The smallest mixed difference ideal containing `S` is the union of
//! `S[0] = S`, `S[n] = [S[n-1]]'`. The set of all factorizations is not
//! enumerable, so each step consumes explicit product witnesses `(a, b)`, checks
//! that `a * b` lies in the current ideal, and adds `a * sigma(b)`. Every
//! generator of every stage is therefore certified to lie in the mixed closure.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use serde_json::json;

use super::membership::{
    bounded_ideal_membership, Combination, MembershipBounds, MembershipOutcome,
};
use super::presentation::SigmaIdealPresentation;
use super::slice::{degree2_slice_membership, SliceCertificate};
use crate::error::{Error, Result};
use crate::poly::{serialize_coefficient, Coefficient, DiffPoly, Term, VarIndex};
use crate::witness::{ScanReport, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShuffleBounds {
    /// Largest variable index of any emitted generator or witness term.
    pub max_index: VarIndex,
    /// Largest degree of the multiplier terms in default witnesses.
    pub extra_degree: u64,
    /// Default witnesses use `sigma^j(g)` for `j <= max_shift`.
    pub max_shift: usize,
}

impl ShuffleBounds {
    pub fn new(max_index: VarIndex, extra_degree: u64) -> Self {
        ShuffleBounds {
            max_index,
            extra_degree,
            max_shift: 0,
        }
    }

    fn membership(&self) -> MembershipBounds {
        MembershipBounds::new(self.max_index, self.extra_degree)
    }
}

/// A claimed factorization `a * b` of an element of the current ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductWitness {
    pub left: DiffPoly,
    pub right: DiffPoly,
}

impl ProductWitness {
    pub fn new(left: DiffPoly, right: DiffPoly) -> Self {
        ProductWitness { left, right }
    }
}

/// Why `a * b` lies in the current ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProductCertificate {
    /// `a * b = coefficient * multiplier * sigma^shift(generator)`.
    GeneratorMultiple {
        generator: usize,
        shift: usize,
        multiplier: Term,
        #[serde(serialize_with = "serialize_coefficient")]
        coefficient: Coefficient,
    },
    /// Degree-2 product inside `[A(1), ..., A(m)]`, which the stage contains.
    Slice(SliceCertificate),
    Combination(Combination),
}

/// A witness that was applied, with the element it emitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AppliedWitness {
    pub left: DiffPoly,
    pub right: DiffPoly,
    pub emitted: DiffPoly,
    pub certificate: ProductCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RejectedWitness {
    pub left: DiffPoly,
    pub right: DiffPoly,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ShuffleState {
    stage: usize,
    generators: Vec<DiffPoly>,
    bounds: ShuffleBounds,
    /// `m` when stage 0 was `{A(1), ..., A(m)}`.
    witness_m: Option<u32>,
    #[serde(skip)]
    log: Vec<AppliedWitness>,
}

impl ShuffleState {
    /// Stage 0 with generators exactly `s`.
    pub fn new(s: Vec<DiffPoly>, bounds: ShuffleBounds) -> Self {
        let generators = SigmaIdealPresentation::new(s).generators().to_vec();
        ShuffleState {
            stage: 0,
            generators,
            bounds,
            witness_m: None,
            log: Vec::new(),
        }
    }

    /// Stage 0 for `S = {A(1), ..., A(m)}`.
    pub fn witness(m: u32, bounds: ShuffleBounds) -> Result<Self> {
        let mut s = Self::new(
            SigmaIdealPresentation::witness(m)?.generators().to_vec(),
            bounds,
        );
        s.witness_m = Some(m);
        Ok(s)
    }

    pub fn stage(&self) -> usize {
        self.stage
    }

    pub fn generators(&self) -> &[DiffPoly] {
        &self.generators
    }

    pub fn bounds(&self) -> ShuffleBounds {
        self.bounds
    }

    /// Witnesses applied by the step that produced this stage.
    pub fn log(&self) -> &[AppliedWitness] {
        &self.log
    }

    pub fn presentation(&self) -> SigmaIdealPresentation {
        SigmaIdealPresentation::new(self.generators.iter().cloned())
    }

    /// Generator list in the text grammar, one per line, canonical order.
    pub fn snapshot(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_string()).collect()
    }

    /// The default witness enumeration: for every generator `g`, every shift
    /// `sigma^j(g)` with `j <= max_shift` inside the index bound, and every
    /// term `t` of degree at most `extra_degree` with indices at most
    /// `max_index`, both `(sigma^j(g), t)` and `(t, sigma^j(g))`. The term
    /// `t = 1` gives the identity witnesses that retain `g`.
    pub fn default_witnesses(&self) -> Result<Vec<ProductWitness>> {
        let b = self.bounds;
        let terms: Vec<Term> = (0..=b.extra_degree)
            .flat_map(|d| Term::all_of_degree(d, b.max_index))
            .collect();
        let mut out = Vec::new();
        for g in &self.generators {
            for j in 0..=b.max_shift {
                let gj = g.shift(j)?;
                if j > 0 && gj.max_index().is_some_and(|k| k > b.max_index) {
                    break;
                }
                for t in &terms {
                    let t = DiffPoly::from(t.clone());
                    out.push(ProductWitness::new(gj.clone(), t.clone()));
                    out.push(ProductWitness::new(t, gj.clone()));
                }
            }
        }
        Ok(out)
    }
}

/// Index of generators by their shift-normal form, to recognise
/// `c * t * sigma^j(g)` products cheaply.
struct GeneratorIndex {
    by_normal_form: HashMap<DiffPoly, (usize, usize)>,
}

impl GeneratorIndex {
    fn new(generators: &[DiffPoly]) -> Self {
        let mut by_normal_form = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            let (nf, k) = g.unshifted();
            by_normal_form.entry(nf).or_insert((i, k));
        }
        GeneratorIndex { by_normal_form }
    }

    /// `(generator, shift)` with `p = sigma^shift(generators[generator])`.
    fn find(&self, p: &DiffPoly) -> Option<(usize, usize)> {
        let (nf, k) = p.unshifted();
        let &(i, base) = self.by_normal_form.get(&nf)?;
        k.checked_sub(base).map(|j| (i, j))
    }
}

fn single_term(p: &DiffPoly) -> Option<(Term, Coefficient)> {
    let mut it = p.terms();
    let (t, c) = it.next()?;
    it.next().is_none().then(|| (t.clone(), c.clone()))
}

fn certify_product(
    state: &ShuffleState,
    index: &GeneratorIndex,
    w: &ProductWitness,
) -> Result<std::result::Result<ProductCertificate, String>> {
    for (gen_side, mono_side) in [(&w.left, &w.right), (&w.right, &w.left)] {
        if let (Some((generator, shift)), Some((multiplier, coefficient))) =
            (index.find(gen_side), single_term(mono_side))
        {
            return Ok(Ok(ProductCertificate::GeneratorMultiple {
                generator,
                shift,
                multiplier,
                coefficient,
            }));
        }
    }
    let product = &w.left * &w.right;
    if product.is_zero() {
        return Ok(Err("zero product".into()));
    }
    if let (Some(m), Some(2)) = (state.witness_m, product.homogeneous_degree()) {
        let cert = degree2_slice_membership(&product, m)?;
        if cert.is_member() {
            return Ok(Ok(ProductCertificate::Slice(cert)));
        }
    }
    let g = state.presentation();
    if g.generators()
        .iter()
        .any(|p| p.homogeneous_degree().is_none())
    {
        return Ok(Err(
            "product not recognised and generators are not homogeneous".into(),
        ));
    }
    match bounded_ideal_membership(&product, &g, state.bounds.membership())? {
        MembershipOutcome::Member { combination } => {
            Ok(Ok(ProductCertificate::Combination(combination)))
        }
        MembershipOutcome::NotFoundWithinBounds => Ok(Err(format!(
            "product {product} not found in the stage-{} ideal within bounds",
            state.stage
        ))),
    }
}

/// One shuffle step. Previous generators are retained; each certified witness
/// `(a, b)` adds `a * sigma(b)` if it respects the index bound. Witnesses whose
/// product cannot be certified are returned, never silently dropped.
pub fn shuffle_step(
    state: &ShuffleState,
    witnesses: &[ProductWitness],
) -> Result<(ShuffleState, Vec<RejectedWitness>)> {
    let index = GeneratorIndex::new(&state.generators);
    let mut generators: BTreeSet<DiffPoly> = state.generators.iter().cloned().collect();
    let mut log = Vec::new();
    let mut rejected = Vec::new();
    for w in witnesses {
        match certify_product(state, &index, w)? {
            Ok(certificate) => {
                let emitted = &w.left * &w.right.shift(1)?;
                if emitted.is_zero()
                    || emitted
                        .max_index()
                        .is_some_and(|k| k > state.bounds.max_index)
                {
                    continue;
                }
                generators.insert(emitted.clone());
                log.push(AppliedWitness {
                    left: w.left.clone(),
                    right: w.right.clone(),
                    emitted,
                    certificate,
                });
            }
            Err(reason) => rejected.push(RejectedWitness {
                left: w.left.clone(),
                right: w.right.clone(),
                reason,
            }),
        }
    }
    Ok((
        ShuffleState {
            stage: state.stage + 1,
            generators: generators.into_iter().collect(),
            bounds: state.bounds,
            witness_m: state.witness_m,
            log,
        },
        rejected,
    ))
}

/// Runs `iterations` default shuffle steps from `{A(1), ..., A(m)}`. Returns
/// every stage, starting with stage 0.
pub fn run_shuffle(m: u32, iterations: usize, bounds: ShuffleBounds) -> Result<Vec<ShuffleState>> {
    let mut stages = vec![ShuffleState::witness(m, bounds)?];
    for _ in 0..iterations {
        let last = stages.last().expect("nonempty");
        let witnesses = last.default_witnesses()?;
        let (next, rejected) = shuffle_step(last, &witnesses)?;
        if let Some(r) = rejected.first() {
            return Err(Error::Internal(format!(
                "default witness ({}, {}) rejected: {}",
                r.left, r.right, r.reason
            )));
        }
        stages.push(next);
    }
    Ok(stages)
}

/// Bounded check that shuffling `{A(1), ..., A(m)}` produces no new degree-2
/// elements: every homogeneous quadratic generator of every stage must lie in
/// `[A(1), ..., A(m)]`, and no generator may have a term of degree below 2.
pub fn lemma34_verify(m: u32, iterations: usize, bounds: ShuffleBounds) -> Result<ScanReport> {
    if iterations == 0 {
        return Err(Error::Contract(
            "lemma34 check needs at least one iteration".into(),
        ));
    }
    let start = std::time::Instant::now();
    let stages = run_shuffle(m, iterations, bounds)?;
    let mut report = audit_stages(m, &stages)?;
    report.elapsed = start.elapsed();
    Ok(report)
}

/// The degree-2 and low-degree audit of already computed stages.
pub fn audit_stages(m: u32, stages: &[ShuffleState]) -> Result<ScanReport> {
    let start = std::time::Instant::now();
    let bounds = stages
        .first()
        .map(|s| s.bounds())
        .ok_or_else(|| Error::Contract("audit needs at least stage 0".into()))?;
    let mut report = ScanReport::new(
        "lemma34",
        json!({
            "m": m,
            "iters": stages.len() - 1,
            "max_index": bounds.max_index,
            "extra_degree": bounds.extra_degree,
            "max_shift": bounds.max_shift,
        }),
    );
    let mut found = Vec::new();
    let mut quadratics: BTreeMap<DiffPoly, usize> = BTreeMap::new();
    for s in stages {
        for g in s.generators() {
            report.checked += 1;
            if g.min_degree().is_some_and(|d| d < 2) {
                found.push(Violation::new(
                    "no term of degree < 2",
                    vec![s.stage() as u64],
                    g.to_string(),
                ));
            }
            if g.homogeneous_degree() == Some(2) {
                quadratics.entry(g.clone()).or_insert(s.stage());
            }
        }
    }
    let mut certificates = Vec::new();
    for (q, stage) in &quadratics {
        let cert = degree2_slice_membership(q, m)?;
        if !cert.is_member() {
            found.push(Violation::new(
                "degree-2 element lies in [A(1..m)]",
                vec![*stage as u64],
                q.to_string(),
            ));
        }
        certificates.push(json!({ "stage": stage, "certificate": cert }));
    }
    report.absorb(found);
    report.summary = json!({
        "stage_sizes": stages.iter().map(|s| s.generators().len()).collect::<Vec<_>>(),
        "degree2_elements": certificates,
    });
    report.elapsed = start.elapsed();
    Ok(report)
}
