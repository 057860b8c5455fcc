use std::collections::BTreeMap;

use super::{Cochain, CoefficientGroup, CohomError, Semigroup};

/// An integer combination of bar 2-cells `[a|b]` (with `ab ≠ 0`) whose
/// boundary `∂[a|b] = [b] − [ab] + [a]` vanishes. Pairing with a 2-cocycle
/// is then blind to coboundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCycle {
    terms: BTreeMap<(usize, usize), i64>,
}

fn collect(terms: impl IntoIterator<Item = ((usize, usize), i64)>) -> BTreeMap<(usize, usize), i64> {
    let mut map = BTreeMap::new();
    for (cell, c) in terms {
        *map.entry(cell).or_insert(0) += c;
    }
    map.retain(|_, c| *c != 0);
    map
}

impl TwoCycle {
    pub fn new<S: Semigroup>(s: &S, terms: impl IntoIterator<Item = ((usize, usize), i64)>) -> Result<Self, CohomError> {
        let z = TwoCycle { terms: collect(terms) };
        for &(a, b) in z.terms.keys() {
            if a >= s.order() || b >= s.order() || s.mul(a, b) == s.zero() || a == s.zero() || b == s.zero() {
                return Err(CohomError::ComplexMismatch(format!("cell [{a}|{b}]")));
            }
        }
        if !z.boundary(s).is_empty() {
            return Err(CohomError::NotACycle);
        }
        Ok(z)
    }

    /// ∂ of a 3-chain: ∂[a|b|c] = [b|c] − [ab|c] + [a|bc] − [a|b].
    pub fn boundary_of<S: Semigroup>(s: &S, chain: impl IntoIterator<Item = ([usize; 3], i64)>) -> Result<Self, CohomError> {
        let mut cells = Vec::new();
        for ([a, b, c], k) in chain {
            if s.product(&[a, b, c]) == s.zero() {
                return Err(CohomError::ComplexMismatch(format!("cell [{a}|{b}|{c}]")));
            }
            cells.push(((b, c), k));
            cells.push(((s.mul(a, b), c), -k));
            cells.push(((a, s.mul(b, c)), k));
            cells.push(((a, b), -k));
        }
        Self::new(s, cells)
    }

    pub fn boundary<S: Semigroup>(&self, s: &S) -> BTreeMap<usize, i64> {
        let mut out = BTreeMap::new();
        for (&(a, b), &c) in &self.terms {
            *out.entry(b).or_insert(0) += c;
            *out.entry(s.mul(a, b)).or_insert(0) -= c;
            *out.entry(a).or_insert(0) += c;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    pub fn scaled(&self, k: i64) -> TwoCycle {
        TwoCycle {
            terms: collect(self.terms.iter().map(|(&cell, &c)| (cell, c * k))),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.terms.iter().map(|(&cell, &c)| (cell, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Σ c·F(a, b) over the cells of `z`, summing stored representatives.
pub fn cycle_pairing<G: CoefficientGroup<Value = f64>>(f: &Cochain<G>, z: &TwoCycle) -> Result<f64, CohomError> {
    if f.arity() != 2 {
        return Err(CohomError::ArityMismatch {
            expected: 2,
            found: f.arity(),
        });
    }
    let mut sum = 0.0;
    for ((a, b), c) in z.terms() {
        if a >= f.order() || b >= f.order() {
            return Err(CohomError::ComplexMismatch(format!("cell [{a}|{b}] outside the cochain's semigroup")));
        }
        sum += c as f64 * f.get(&[a, b]);
    }
    Ok(sum)
}
