use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;

use super::{cycle_pairing, AdditiveModTaille, AdditiveReal, Cochain, CoefficientGroup, CohomError, Semigroup, TwoCycle};

/// The additive coboundary on `arity`-cochains as a sparse matrix: columns
/// index nonzero-product `arity`-tuples, rows `arity+1`-tuples.
#[derive(Debug, Clone)]
pub struct SparseRows {
    pub rows: Vec<Vec<(usize, f64)>>,
    pub row_tuples: Vec<Vec<usize>>,
    pub col_tuples: Vec<Vec<usize>>,
}

impl SparseRows {
    pub fn cols(&self) -> usize {
        self.col_tuples.len()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.rows.iter().map(|r| r.iter().map(|&(j, a)| a * x[j]).sum()).collect()
    }

    pub fn apply_transpose(&self, y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.cols()];
        for (r, &yi) in self.rows.iter().zip(y) {
            for &(j, a) in r {
                out[j] += a * yi;
            }
        }
        out
    }

    /// Minimum-norm least-squares solution of `A x ≈ b` by conjugate
    /// gradients on the normal equations (CGLS).
    pub fn least_squares(&self, b: &[f64]) -> Vec<f64> {
        let n = self.cols();
        let mut x = vec![0.0; n];
        let mut r = b.to_vec();
        let mut s = self.apply_transpose(&r);
        let mut p = s.clone();
        let norm2 = |v: &[f64]| v.iter().map(|a| a * a).sum::<f64>();
        let mut gamma = norm2(&s);
        let stop = gamma.sqrt() * 1e-15;
        for _ in 0..(20 * n + 100) {
            if gamma.sqrt() <= stop || gamma == 0.0 {
                break;
            }
            let q = self.apply(&p);
            let qq = norm2(&q);
            if qq == 0.0 {
                break;
            }
            let alpha = gamma / qq;
            for (xi, pi) in x.iter_mut().zip(&p) {
                *xi += alpha * pi;
            }
            for (ri, qi) in r.iter_mut().zip(&q) {
                *ri -= alpha * qi;
            }
            s = self.apply_transpose(&r);
            let next = norm2(&s);
            let beta = next / gamma;
            gamma = next;
            for (pi, si) in p.iter_mut().zip(&s) {
                *pi = si + beta * *pi;
            }
        }
        x
    }
}

pub fn coboundary_matrix<S: Semigroup>(s: &S, arity: usize) -> Result<SparseRows, CohomError> {
    let col_tuples = s.nonzero_tuples(arity)?;
    let row_tuples = s.nonzero_tuples(arity + 1)?;
    let col: BTreeMap<&[usize], usize> = col_tuples.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let n = arity;
    let rows = row_tuples
        .iter()
        .map(|t| {
            let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
            let mut add = |u: &[usize], sign: f64| {
                if let Some(&j) = col.get(u) {
                    *acc.entry(j).or_insert(0.0) += sign;
                }
            };
            add(&t[1..], 1.0);
            for i in 1..=n {
                let mut merged = t[..i - 1].to_vec();
                merged.push(s.mul(t[i - 1], t[i]));
                merged.extend_from_slice(&t[i + 1..]);
                add(&merged, if i % 2 == 1 { -1.0 } else { 1.0 });
            }
            add(&t[..n], if n % 2 == 1 { 1.0 } else { -1.0 });
            acc.into_iter().filter(|&(_, a)| a != 0.0).collect()
        })
        .collect();
    Ok(SparseRows {
        rows,
        row_tuples,
        col_tuples,
    })
}

/// A basis of the real `arity`-cocycles, from the null space of the
/// coboundary matrix. Intended for small semigroups (at most 400 stored
/// tuples).
pub fn cocycle_basis<S: Semigroup>(s: &S, arity: usize) -> Result<Vec<Cochain<AdditiveReal>>, CohomError> {
    let m = coboundary_matrix(s, arity)?;
    let cols = m.cols();
    if cols > 400 {
        return Err(CohomError::TooManyTuples { arity, limit: 400 });
    }
    if cols == 0 {
        return Ok(Vec::new());
    }
    let rows = m.rows.len().max(cols);
    let mut dense = DMatrix::<f64>::zeros(rows, cols);
    for (i, r) in m.rows.iter().enumerate() {
        for &(j, a) in r {
            dense[(i, j)] = a;
        }
    }
    let svd = dense.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.max().max(1.0);
    let index: BTreeMap<&Vec<usize>, usize> = m.col_tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    (0..cols)
        .filter(|&k| svd.singular_values[k] < 1e-9 * smax)
        .map(|k| Cochain::from_fn(s, arity, AdditiveReal, |t| vt[(k, index[&t.to_vec()])]))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoboundarySolution {
    Trivial { g: Cochain<AdditiveReal>, residual: f64 },
    NotTrivial { residual_max: f64, residual_l2: f64 },
}

/// Least-squares solve of `δg = F` over the real numbers.
pub fn solve_coboundary_real<S: Semigroup>(
    s: &S,
    f: &Cochain<AdditiveReal>,
    tol: f64,
) -> Result<CoboundarySolution, CohomError> {
    if f.arity() < 2 {
        return Err(CohomError::ArityMismatch {
            expected: 2,
            found: f.arity(),
        });
    }
    let m = coboundary_matrix(s, f.arity() - 1)?;
    let b: Vec<f64> = m.row_tuples.iter().map(|t| f.get(t)).collect();
    let (x, r) = solve_rows(&m, &b);
    let residual_max = r.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if residual_max < tol {
        Ok(CoboundarySolution::Trivial {
            g: to_cochain(s, &m, &x, AdditiveReal)?,
            residual: residual_max,
        })
    } else {
        Ok(CoboundarySolution::NotTrivial {
            residual_max,
            residual_l2: r.iter().map(|v| v * v).sum::<f64>().sqrt(),
        })
    }
}

fn solve_rows(m: &SparseRows, b: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let x = m.least_squares(b);
    let ax = m.apply(&x);
    let r = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
    (x, r)
}

fn to_cochain<S: Semigroup, G: CoefficientGroup<Value = f64>>(
    s: &S,
    m: &SparseRows,
    x: &[f64],
    group: G,
) -> Result<Cochain<G>, CohomError> {
    let index: BTreeMap<&Vec<usize>, usize> = m.col_tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let arity = m.col_tuples.first().map_or(1, |t| t.len());
    Cochain::from_fn(s, arity, group, |t| x[index[&t.to_vec()]])
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModTailleOutcome {
    Trivial { g: Cochain<AdditiveModTaille>, residual: f64 },
    /// Cycle `witness` pairs to a value outside τℤ.
    NotTrivial { witness: usize, pairing: f64 },
    Undecided { reason: String },
}

/// Decides whether a 2-cocycle mod τ is a coboundary. Cycle pairings
/// outside τℤ are obstructions. Otherwise the cochain is lifted to ℝ: one
/// cell of each cycle absorbs the cycle's integer pairing, the real system
/// is solved, and integer multiples of τ are peeled off the residual until
/// the lift is exact. Residuals near half-integer multiples of τ leave the
/// question open.
pub fn mod_taille_triviality<S: Semigroup>(
    s: &S,
    f: &Cochain<AdditiveModTaille>,
    cycles: &[TwoCycle],
    tol: f64,
) -> Result<ModTailleOutcome, CohomError> {
    if f.arity() != 2 {
        return Err(CohomError::ArityMismatch {
            expected: 2,
            found: f.arity(),
        });
    }
    let tau = f.group().taille();
    let mut multiples = Vec::with_capacity(cycles.len());
    for (i, z) in cycles.iter().enumerate() {
        let p = cycle_pairing(f, z)?;
        let k = (p / tau).round();
        if (p - k * tau).abs() > tol {
            return Ok(ModTailleOutcome::NotTrivial { witness: i, pairing: p });
        }
        multiples.push(k);
    }

    let m = coboundary_matrix(s, 1)?;
    let row: BTreeMap<(usize, usize), usize> = m.row_tuples.iter().enumerate().map(|(i, t)| ((t[0], t[1]), i)).collect();
    let mut b: Vec<f64> = m.row_tuples.iter().map(|t| f.get(t)).collect();
    let mut used = BTreeSet::new();
    for (z, &k) in cycles.iter().zip(&multiples) {
        if k == 0.0 {
            continue;
        }
        if let Some((cell, c)) = z.terms().find(|(cell, c)| c.abs() == 1 && !used.contains(cell)) {
            used.insert(cell);
            b[row[&cell]] -= c as f64 * k * tau;
        }
    }

    for _ in 0..6 {
        let (x, r) = solve_rows(&m, &b);
        let residual = r.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if residual < tol {
            return Ok(ModTailleOutcome::Trivial {
                g: to_cochain(s, &m, &x, *f.group())?,
                residual,
            });
        }
        let mut moved = false;
        for (bi, ri) in b.iter_mut().zip(&r) {
            let k = ri / tau;
            let rounded = k.round();
            if (k - rounded).abs() > 0.4 {
                return Ok(ModTailleOutcome::Undecided {
                    reason: format!("residual {ri} is near a half-integer multiple of the taille"),
                });
            }
            if rounded != 0.0 {
                *bi -= rounded * tau;
                moved = true;
            }
        }
        if !moved {
            return Ok(ModTailleOutcome::Undecided {
                reason: format!("lifted residual {residual} has no integer part to remove"),
            });
        }
    }
    Ok(ModTailleOutcome::Undecided {
        reason: "integer offsets did not stabilize".into(),
    })
}
