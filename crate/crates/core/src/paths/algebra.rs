use std::collections::BTreeMap;

use num_traits::Num;

use super::{HomotopyTriple, Path, PathError, PathKey, KEY_GRID};

/// A multiplicative basis element with a canonical, totally ordered key.
pub trait BasisElement: Clone {
    type Key: Ord + Clone;
    fn key(&self) -> Self::Key;
}

impl BasisElement for usize {
    type Key = usize;
    fn key(&self) -> usize {
        *self
    }
}

impl BasisElement for Path {
    type Key = PathKey;
    fn key(&self) -> PathKey {
        Path::key(self)
    }
}

impl BasisElement for HomotopyTriple {
    type Key = Vec<i64>;
    fn key(&self) -> Vec<i64> {
        let q = |v: f64| (v / KEY_GRID).round() as i64;
        self.start()
            .coords()
            .into_iter()
            .chain(self.end().coords())
            .map(q)
            .chain(self.class())
            .collect()
    }
}

/// A finite linear combination of basis elements. Zero coefficients are
/// never stored; terms are kept in key order.
#[derive(Debug, Clone)]
pub struct FormalSum<B: BasisElement, C> {
    terms: BTreeMap<B::Key, (B, C)>,
}

impl<B: BasisElement, C: Copy + Num> Default for FormalSum<B, C> {
    fn default() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }
}

impl<B: BasisElement, C: Copy + Num> FormalSum<B, C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        let mut s = Self::new();
        s.add_term(b, C::one());
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (B, C)>) -> Self {
        let mut s = Self::new();
        for (b, c) in terms {
            s.add_term(b, c);
        }
        s
    }

    pub fn add_term(&mut self, b: B, c: C) {
        let key = b.key();
        let sum = match self.terms.remove(&key) {
            Some((_, old)) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, (b, sum));
        }
    }

    pub fn coefficient(&self, b: &B) -> C {
        self.terms.get(&b.key()).map_or(C::zero(), |t| t.1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&B, C)> {
        self.terms.values().map(|(b, c)| (b, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: C) -> Self {
        Self::from_terms(self.terms().map(|(b, c)| (b.clone(), c * k)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(b.clone(), c);
        }
        out
    }

    /// Same support and coefficients within `tol`, measured by `dist`.
    pub fn approx_eq_by(&self, other: &Self, tol: f64, dist: impl Fn(C, C) -> f64) -> bool {
        let keys: std::collections::BTreeSet<&B::Key> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().all(|k| {
            let a = self.terms.get(k).map_or(C::zero(), |t| t.1);
            let b = other.terms.get(k).map_or(C::zero(), |t| t.1);
            dist(a, b) <= tol
        })
    }
}

/// Basis product; `None` is the semigroup zero.
pub type BasisProduct<'a, B> = &'a dyn Fn(&B, &B) -> Option<B>;
/// Twisting weight on a pair of basis elements.
pub type BasisWeight<'a, B, C> = &'a dyn Fn(&B, &B) -> Option<C>;

/// Bilinear extension of the basis product, optionally twisted by a
/// multiplicative weight: `a ∗ b = weight(a, b) · ab`. A `None` product is
/// the semigroup zero and drops out; a `None` weight on a nonzero product is
/// an error.
pub fn algebra_mul<B, C>(
    u: &FormalSum<B, C>,
    v: &FormalSum<B, C>,
    product: BasisProduct<'_, B>,
    weight: Option<BasisWeight<'_, B, C>>,
) -> Result<FormalSum<B, C>, PathError>
where
    B: BasisElement,
    C: Copy + Num,
{
    let mut out = FormalSum::new();
    for (a, ca) in u.terms() {
        for (b, cb) in v.terms() {
            let Some(ab) = product(a, b) else { continue };
            let w = match weight {
                Some(f) => f(a, b).ok_or(PathError::UndefinedWeight)?,
                None => C::one(),
            };
            out.add_term(ab, ca * cb * w);
        }
    }
    Ok(out)
}
