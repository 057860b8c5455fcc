use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::{AdditiveModTaille, AdditiveReal, CoefficientGroup, CohomError, MultiplicativeReal, Semigroup, UnitComplex};

/// An n-cochain. Only tuples with nonzero product are stored; every other
/// tuple carries the group identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain<G: CoefficientGroup> {
    arity: usize,
    order: usize,
    group: G,
    values: BTreeMap<Vec<usize>, G::Value>,
}

impl<G: CoefficientGroup> Cochain<G> {
    pub fn from_fn<S: Semigroup>(
        s: &S,
        arity: usize,
        group: G,
        mut f: impl FnMut(&[usize]) -> G::Value,
    ) -> Result<Self, CohomError> {
        if arity == 0 {
            return Err(CohomError::ArityMismatch { expected: 1, found: 0 });
        }
        let values = s
            .nonzero_tuples(arity)?
            .into_iter()
            .map(|t| {
                let v = group.normalize(f(&t));
                (t, v)
            })
            .collect();
        Ok(Cochain {
            arity,
            order: s.order(),
            group,
            values,
        })
    }

    pub fn identity<S: Semigroup>(s: &S, arity: usize, group: G) -> Result<Self, CohomError> {
        let id = group.identity();
        Self::from_fn(s, arity, group, |_| id.clone())
    }

    /// Builds from explicit entries; absent tuples take the identity, and
    /// entries on zero-product tuples must be the identity.
    pub fn from_entries<S: Semigroup>(
        s: &S,
        arity: usize,
        group: G,
        entries: impl IntoIterator<Item = (Vec<usize>, G::Value)>,
    ) -> Result<Self, CohomError> {
        let mut c = Self::identity(s, arity, group)?;
        for (t, v) in entries {
            if t.len() != arity {
                return Err(CohomError::ArityMismatch {
                    expected: arity,
                    found: t.len(),
                });
            }
            if t.iter().any(|&a| a >= s.order() || a == s.zero()) {
                return Err(CohomError::SemigroupMismatch(format!("tuple {t:?}")));
            }
            if c.values.contains_key(&t) {
                c.set(&t, v)?;
            } else if c.group.distance(&v, &c.group.identity()) > 0.0 {
                return Err(CohomError::SemigroupMismatch(format!(
                    "tuple {t:?} has zero product but a non-identity value"
                )));
            }
        }
        Ok(c)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Size of the semigroup the cochain lives on.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn get(&self, tuple: &[usize]) -> G::Value {
        self.values.get(tuple).cloned().unwrap_or_else(|| self.group.identity())
    }

    /// Sets a value on a stored (nonzero-product) tuple.
    pub fn set(&mut self, tuple: &[usize], v: G::Value) -> Result<(), CohomError> {
        let v = self.group.normalize(v);
        match self.values.get_mut(tuple) {
            Some(slot) => {
                *slot = v;
                Ok(())
            }
            None => Err(CohomError::SemigroupMismatch(format!(
                "tuple {tuple:?} has zero product"
            ))),
        }
    }

    /// Stored entries in lexicographic tuple order.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &G::Value)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Applies `f` entrywise into another coefficient group.
    pub fn map<H: CoefficientGroup>(&self, group: H, f: impl Fn(&G::Value) -> H::Value) -> Cochain<H> {
        let values = self
            .values
            .iter()
            .map(|(t, v)| (t.clone(), group.normalize(f(v))))
            .collect();
        Cochain {
            arity: self.arity,
            order: self.order,
            group,
            values,
        }
    }

    /// Largest entrywise distance between two cochains on the same tuples.
    pub fn distance(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .map(|(t, v)| self.group.distance(v, &other.get(t)))
            .chain(other.values.iter().map(|(t, v)| self.group.distance(v, &self.get(t))))
            .fold(0.0, f64::max)
    }
}

fn check_semigroup<S: Semigroup, G: CoefficientGroup>(s: &S, f: &Cochain<G>) -> Result<(), CohomError> {
    if f.order != s.order() {
        return Err(CohomError::SemigroupMismatch(format!(
            "cochain on {} elements, semigroup of {}",
            f.order,
            s.order()
        )));
    }
    Ok(())
}

/// Alternating coboundary, written in the group's own operation:
/// δF(a₁…a_{n+1}) = F(a₂…a_{n+1}) + Σᵢ (−1)ⁱ F(…, aᵢaᵢ₊₁, …) + (−1)^{n+1} F(a₁…aₙ).
pub fn coboundary<S: Semigroup, G: CoefficientGroup>(s: &S, f: &Cochain<G>) -> Result<Cochain<G>, CohomError> {
    check_semigroup(s, f)?;
    let n = f.arity;
    let g = &f.group;
    Cochain::from_fn(s, n + 1, g.clone(), |t| {
        let mut v = f.get(&t[1..]);
        let mut merged = Vec::with_capacity(n);
        for i in 1..=n {
            merged.clear();
            merged.extend_from_slice(&t[..i - 1]);
            merged.push(s.mul(t[i - 1], t[i]));
            merged.extend_from_slice(&t[i + 1..]);
            let term = f.get(&merged);
            v = if i % 2 == 1 { g.combine(&v, &g.inverse(&term)) } else { g.combine(&v, &term) };
        }
        let last = f.get(&t[..n]);
        if n % 2 == 1 {
            g.combine(&v, &last)
        } else {
            g.combine(&v, &g.inverse(&last))
        }
    })
}

/// (F ⊎ G)(a₁…a_{m+k}) = F(a₁…a_m) + G(a_{m+1}…a_{m+k}).
pub fn cup_sum<S: Semigroup, G: CoefficientGroup>(
    s: &S,
    f: &Cochain<G>,
    h: &Cochain<G>,
) -> Result<Cochain<G>, CohomError> {
    if f.group != h.group {
        return Err(CohomError::CoefficientMismatch);
    }
    check_semigroup(s, f)?;
    check_semigroup(s, h)?;
    let m = f.arity;
    Cochain::from_fn(s, m + h.arity, f.group.clone(), |t| f.group.combine(&f.get(&t[..m]), &h.get(&t[m..])))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CocycleCheck {
    pub is_cocycle: bool,
    pub max_residual: f64,
    pub worst_tuple: Option<Vec<usize>>,
}

/// Whether δF vanishes within `tol` on every nonzero-product tuple.
pub fn is_cocycle<S: Semigroup, G: CoefficientGroup>(s: &S, f: &Cochain<G>, tol: f64) -> Result<CocycleCheck, CohomError> {
    let d = coboundary(s, f)?;
    let id = f.group.identity();
    let mut worst = (0.0, None);
    for (t, v) in d.entries() {
        let r = f.group.distance(v, &id);
        if r > worst.0 || r.is_nan() {
            worst = (r, Some(t.clone()));
        }
    }
    Ok(CocycleCheck {
        is_cocycle: worst.0 <= tol,
        max_residual: worst.0,
        worst_tuple: worst.1,
    })
}

/// exp(λF) as a positive-real multiplicative cochain.
pub fn exp_lambda(f: &Cochain<AdditiveReal>, lambda: f64) -> Cochain<MultiplicativeReal> {
    f.map(MultiplicativeReal, |v| (lambda * v).exp())
}

/// exp(2nπiF/τ); independent of the representative of F mod τ.
pub fn exp_quantized<G: CoefficientGroup<Value = f64>>(
    f: &Cochain<G>,
    taille: f64,
    quantum_n: i64,
) -> Result<Cochain<UnitComplex>, CohomError> {
    if !f.group.is_additive() {
        return Err(CohomError::CoefficientMismatch);
    }
    if !(taille.is_finite() && taille > 0.0) {
        return Err(CohomError::InvalidTaille(taille));
    }
    let k = 2.0 * PI * quantum_n as f64 / taille;
    Ok(f.map(UnitComplex, |v| Complex64::from_polar(1.0, k * v)))
}

/// Reduction of a real cochain modulo τ.
pub fn reduce_mod_taille(f: &Cochain<AdditiveReal>, taille: f64) -> Result<Cochain<AdditiveModTaille>, CohomError> {
    Ok(f.map(AdditiveModTaille::new(taille)?, |v| *v))
}
