use num_traits::{Num, Zero};

use super::{is_cocycle, Cochain, CoefficientGroup, CohomError, Semigroup};
use crate::paths::{algebra_mul, FormalSum};

/// The semigroup algebra with product `a ∗ b = f(a, b)·ab` for a
/// multiplicative 2-cocycle `f`.
#[derive(Debug, Clone)]
pub struct CoherentDeformation<'a, S: Semigroup, G: CoefficientGroup> {
    semigroup: &'a S,
    f: Cochain<G>,
}

pub fn coherent_deform<'a, S: Semigroup, G: CoefficientGroup>(
    s: &'a S,
    f: Cochain<G>,
    tol: f64,
) -> Result<CoherentDeformation<'a, S, G>, CohomError> {
    if f.group().is_additive() {
        return Err(CohomError::CoefficientMismatch);
    }
    if f.arity() != 2 {
        return Err(CohomError::ArityMismatch {
            expected: 2,
            found: f.arity(),
        });
    }
    let check = is_cocycle(s, &f, tol)?;
    if !check.is_cocycle {
        return Err(CohomError::NotACocycle {
            residual: check.max_residual,
        });
    }
    Ok(CoherentDeformation { semigroup: s, f })
}

fn distance<C: Copy + Num>(u: &FormalSum<usize, C>, v: &FormalSum<usize, C>, d: &impl Fn(C, C) -> f64) -> f64 {
    u.terms()
        .map(|(b, c)| d(c, v.coefficient(b)))
        .chain(v.terms().map(|(b, c)| d(c, u.coefficient(b))))
        .fold(0.0, f64::max)
}

impl<S: Semigroup, G> CoherentDeformation<'_, S, G>
where
    G: CoefficientGroup,
    G::Value: Copy + Num,
{
    pub fn cocycle(&self) -> &Cochain<G> {
        &self.f
    }

    fn product(&self, a: &usize, b: &usize) -> Option<usize> {
        let p = self.semigroup.mul(*a, *b);
        (p != self.semigroup.zero()).then_some(p)
    }

    /// The deformed product.
    pub fn mul(&self, u: &FormalSum<usize, G::Value>, v: &FormalSum<usize, G::Value>) -> FormalSum<usize, G::Value> {
        let weight = |a: &usize, b: &usize| Some(self.f.get(&[*a, *b]));
        algebra_mul(u, v, &|a, b| self.product(a, b), Some(&weight)).expect("weights are total")
    }

    /// The undeformed product.
    pub fn plain_mul(&self, u: &FormalSum<usize, G::Value>, v: &FormalSum<usize, G::Value>) -> FormalSum<usize, G::Value> {
        algebra_mul(u, v, &|a, b| self.product(a, b), None).expect("no weight")
    }

    fn basis(&self) -> Vec<FormalSum<usize, G::Value>> {
        self.semigroup.nonzero_elements().into_iter().map(FormalSum::basis).collect()
    }

    /// Largest coefficient gap between `(a∗b)∗c` and `a∗(b∗c)` over all
    /// basis triples.
    pub fn associativity_defect(&self) -> f64 {
        let g = self.f.group().clone();
        let d = |x: G::Value, y: G::Value| g.distance(&x, &y);
        let basis = self.basis();
        let mut worst: f64 = 0.0;
        for a in &basis {
            for b in &basis {
                let ab = self.mul(a, b);
                for c in &basis {
                    let left = self.mul(&ab, c);
                    let right = self.mul(a, &self.mul(b, c));
                    worst = worst.max(distance(&left, &right, &d));
                }
            }
        }
        worst
    }

    /// Largest gap in `Φ(a∗b) = Φ(a)Φ(b)` for `Φ(a) = g(a)a`, over all basis
    /// pairs; infinite when some `g(a)` is not invertible.
    pub fn isomorphism_defect(&self, g: &Cochain<G>) -> f64 {
        if g.arity() != 1 {
            return f64::INFINITY;
        }
        let group = self.f.group().clone();
        let elements = self.semigroup.nonzero_elements();
        if elements.iter().any(|&a| {
            let v = g.get(&[a]);
            v.is_zero() || !group.distance(&v, &v).is_finite()
        }) {
            return f64::INFINITY;
        }
        let phi = |u: &FormalSum<usize, G::Value>| FormalSum::from_terms(u.terms().map(|(&a, c)| (a, c * g.get(&[a]))));
        let d = |x: G::Value, y: G::Value| group.distance(&x, &y);
        let basis = self.basis();
        let mut worst: f64 = 0.0;
        for a in &basis {
            for b in &basis {
                let left = phi(&self.mul(a, b));
                let right = self.plain_mul(&phi(a), &phi(b));
                worst = worst.max(distance(&left, &right, &d));
            }
        }
        worst
    }
}
