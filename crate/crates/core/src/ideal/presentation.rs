use serde::Serialize;

use crate::error::Result;
use crate::poly::{DiffPoly, Term};
use crate::witness::make_a;

/// A finite generator list standing for the sigma-ideal `[G]`: as a plain ideal
/// it is generated by every shift of every generator.
///
/// Generators are kept nonzero, deduplicated and sorted canonically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaIdealPresentation {
    generators: Vec<DiffPoly>,
}

impl SigmaIdealPresentation {
    pub fn new(generators: impl IntoIterator<Item = DiffPoly>) -> Self {
        let mut generators: Vec<DiffPoly> =
            generators.into_iter().filter(|g| !g.is_zero()).collect();
        generators.sort();
        generators.dedup();
        SigmaIdealPresentation { generators }
    }

    /// `[A(1), ..., A(m)]`.
    pub fn witness(m: u32) -> Result<Self> {
        Ok(Self::new((1..=m).map(make_a).collect::<Result<Vec<_>>>()?))
    }

    /// `[y0^2, y0*y1, ..., y0*y_{max_offset}]`, a truncation of the ideal of
    /// polynomials whose terms all have degree at least 2.
    pub fn j_family(max_offset: usize) -> Self {
        Self::new((0..=max_offset).map(|k| DiffPoly::from(Term::product(&[0, k]))))
    }

    pub fn generators(&self) -> &[DiffPoly] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}
