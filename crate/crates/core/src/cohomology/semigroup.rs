use std::collections::HashMap;
use std::fmt::Write as _;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Cochain, CoefficientGroup, CohomError, MAX_TUPLES};

/// A finite semigroup with a distinguished zero, on elements `0..order()`.
pub trait Semigroup {
    fn order(&self) -> usize;
    fn zero(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;

    /// The nonzero `b` with `a·b ≠ 0`.
    fn right_compatible(&self, a: usize) -> Vec<usize> {
        let z = self.zero();
        (0..self.order()).filter(|&b| b != z && self.mul(a, b) != z).collect()
    }

    fn label(&self, a: usize) -> String {
        a.to_string()
    }

    fn nonzero_elements(&self) -> Vec<usize> {
        (0..self.order()).filter(|&a| a != self.zero()).collect()
    }

    fn product(&self, tuple: &[usize]) -> usize {
        tuple.iter().skip(1).fold(tuple[0], |p, &b| self.mul(p, b))
    }

    /// All tuples of nonzero elements of the given arity whose product is
    /// nonzero, in lexicographic order.
    fn nonzero_tuples(&self, arity: usize) -> Result<Vec<Vec<usize>>, CohomError> {
        let mut out = Vec::new();
        if arity == 0 {
            return Ok(out);
        }
        let mut compat: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut stack: Vec<(Vec<usize>, usize)> =
            self.nonzero_elements().into_iter().rev().map(|a| (vec![a], a)).collect();
        while let Some((t, p)) = stack.pop() {
            if t.len() == arity {
                if out.len() >= MAX_TUPLES {
                    return Err(CohomError::TooManyTuples {
                        arity,
                        limit: MAX_TUPLES,
                    });
                }
                out.push(t);
                continue;
            }
            let next = compat.entry(p).or_insert_with(|| {
                let mut v = self.right_compatible(p);
                v.sort_unstable();
                v
            });
            for &b in next.iter().rev() {
                let mut u = t.clone();
                u.push(b);
                stack.push((u, self.mul(p, b)));
            }
        }
        Ok(out)
    }
}

/// A semigroup given by its full multiplication table.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSemigroup {
    n: usize,
    zero: usize,
    table: Vec<usize>,
    labels: Vec<String>,
    compat: Vec<Vec<usize>>,
}

impl Semigroup for FiniteSemigroup {
    fn order(&self) -> usize {
        self.n
    }
    fn zero(&self) -> usize {
        self.zero
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }
    fn right_compatible(&self, a: usize) -> Vec<usize> {
        self.compat[a].clone()
    }
    fn label(&self, a: usize) -> String {
        self.labels[a].clone()
    }
}

impl FiniteSemigroup {
    /// Validates shape, zero absorption and associativity (exhaustive up to
    /// 64 elements, sampled beyond).
    pub fn new(table: Vec<Vec<usize>>, zero: usize) -> Result<Self, CohomError> {
        let s = Self::unchecked(table, zero)?;
        s.check_zero()?;
        s.check_associative()?;
        Ok(s)
    }

    fn unchecked(table: Vec<Vec<usize>>, zero: usize) -> Result<Self, CohomError> {
        let n = table.len();
        if n == 0 || zero >= n {
            return Err(CohomError::InvalidTable(format!("size {n}, zero index {zero}")));
        }
        if let Some((i, _)) = table.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(CohomError::InvalidTable(format!("row {i} does not have {n} entries")));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        if let Some(&bad) = flat.iter().find(|&&v| v >= n) {
            return Err(CohomError::InvalidTable(format!("entry {bad} out of range")));
        }
        let compat = (0..n)
            .map(|a| (0..n).filter(|&b| b != zero && flat[a * n + b] != zero).collect())
            .collect();
        Ok(FiniteSemigroup {
            n,
            zero,
            table: flat,
            labels: (0..n).map(|i| if i == zero { "0".to_string() } else { format!("s{i}") }).collect(),
            compat,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, CohomError> {
        if labels.len() != self.n {
            return Err(CohomError::InvalidTable(format!("{} labels for {} elements", labels.len(), self.n)));
        }
        self.labels = labels;
        Ok(self)
    }

    fn check_zero(&self) -> Result<(), CohomError> {
        for a in 0..self.n {
            if self.mul(a, self.zero) != self.zero || self.mul(self.zero, a) != self.zero {
                return Err(CohomError::ZeroNotAbsorbing(a));
            }
        }
        Ok(())
    }

    fn first_non_associative(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        let check = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c));
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if check(a, b, c) {
                            return Some((a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..200_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if check(a, b, c) {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    pub fn check_associative(&self) -> Result<(), CohomError> {
        match self.first_non_associative() {
            Some((a, b, c)) => Err(CohomError::NotAssociative { a, b, c }),
            None => Ok(()),
        }
    }

    /// Tabulates any semigroup.
    pub fn from_semigroup(s: &impl Semigroup) -> Result<Self, CohomError> {
        let n = s.order();
        let table = (0..n).map(|a| (0..n).map(|b| s.mul(a, b)).collect()).collect();
        let t = Self::unchecked(table, s.zero())?;
        t.with_labels((0..n).map(|a| s.label(a)).collect())
    }

    /// Text format: `n zero` on the first line, then `n` rows of `n`
    /// indices. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self, CohomError> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| CohomError::Parse("empty table".into()))?;
        let nums = |l: &str| -> Result<Vec<usize>, CohomError> {
            l.split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|e| CohomError::Parse(format!("{t:?}: {e}"))))
                .collect()
        };
        let h = nums(header)?;
        let [n, zero] = h[..] else {
            return Err(CohomError::Parse("header must be `n zero`".into()));
        };
        let rows = lines.map(nums).collect::<Result<Vec<_>, _>>()?;
        if rows.len() != n {
            return Err(CohomError::Parse(format!("expected {n} rows, found {}", rows.len())));
        }
        Self::new(rows, zero)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.zero);
        for a in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|b| self.mul(a, b).to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    /// Random table on `n` elements (zero at index 0) where each nonzero
    /// product is present with probability `density`, then repaired to
    /// associativity by zeroing offending products.
    pub fn random_repaired(n: usize, density: f64, rng: &mut impl Rng) -> Self {
        assert!(n >= 1);
        let mut t = vec![0usize; n * n];
        for a in 1..n {
            for b in 1..n {
                if rng.gen_bool(density.clamp(0.0, 1.0)) {
                    t[a * n + b] = rng.gen_range(1..n);
                }
            }
        }
        loop {
            let mut changed = false;
            for a in 1..n {
                for b in 1..n {
                    for c in 1..n {
                        let ab = t[a * n + b];
                        let bc = t[b * n + c];
                        if t[ab * n + c] != t[a * n + bc] {
                            t[a * n + b] = 0;
                            t[b * n + c] = 0;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let rows = t.chunks(n).map(|r| r.to_vec()).collect();
        Self::new(rows, 0).expect("repair yields an associative table")
    }

    /// Every product zero.
    pub fn null(n: usize) -> Self {
        Self::new(vec![vec![0; n]; n], 0).expect("null semigroup")
    }

    /// Zero, two composable edges and their composite.
    pub fn chain3() -> Self {
        let t = vec![vec![0, 0, 0, 0], vec![0, 0, 3, 0], vec![0, 0, 0, 0], vec![0, 0, 0, 0]];
        Self::new(t, 0)
            .expect("chain")
            .with_labels(vec!["0".into(), "e_ab".into(), "e_bc".into(), "e_abc".into()])
            .expect("labels")
    }

    /// Cyclic group of order k with a zero adjoined.
    pub fn cyclic_with_zero(k: usize) -> Self {
        let n = k + 1;
        let t = (0..n)
            .map(|a| (0..n).map(|b| if a == 0 || b == 0 { 0 } else { 1 + (a - 1 + b - 1) % k }).collect())
            .collect();
        Self::new(t, 0).expect("cyclic")
    }

    /// `a, a², …, a^{k}` with `a^{k+1} = 0`.
    pub fn nilpotent(k: usize) -> Self {
        let n = k + 1;
        let t = (0..n)
            .map(|a| (0..n).map(|b| if a == 0 || b == 0 || a + b > k { 0 } else { a + b }).collect())
            .collect();
        Self::new(t, 0).expect("nilpotent")
    }

    /// Matrix units `e_ij` (i, j < k) with zero: the path semigroup of the
    /// complete quiver on k vertices up to homotopy.
    pub fn brandt(k: usize) -> Self {
        let n = k * k + 1;
        let idx = |i: usize, j: usize| 1 + i * k + j;
        let mut t = vec![vec![0; n]; n];
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    t[idx(i, j)][idx(j, l)] = idx(i, l);
                }
            }
        }
        Self::new(t, 0).expect("brandt")
    }

    /// Left-zero band on k elements (`ab = a`) with zero.
    pub fn left_zero(k: usize) -> Self {
        let n = k + 1;
        let t = (0..n).map(|a| (0..n).map(|b| if a == 0 || b == 0 { 0 } else { a }).collect()).collect();
        Self::new(t, 0).expect("left zero")
    }

    /// Chain semilattice `0 < 1 < … < k` under minimum.
    pub fn min_chain(k: usize) -> Self {
        let n = k + 1;
        let t = (0..n).map(|a| (0..n).map(|b| a.min(b)).collect()).collect();
        Self::new(t, 0).expect("min chain")
    }

    /// Paths of the quiver 1 → 2 → 3 (vertices as idempotents) with zero.
    pub fn quiver_a3() -> Self {
        // 0: zero, 1-3: vertices, 4: 1→2, 5: 2→3, 6: 1→3
        let src = [0, 1, 2, 3, 1, 2, 1];
        let dst = [0, 1, 2, 3, 2, 3, 3];
        let compose = |a: usize, b: usize| -> usize {
            if a == 0 || b == 0 || dst[a] != src[b] {
                return 0;
            }
            match (a, b) {
                (x, y) if (1..=3).contains(&x) => y,
                (x, y) if (1..=3).contains(&y) => x,
                (4, 5) => 6,
                _ => 0,
            }
        };
        let t = (0..7).map(|a| (0..7).map(|b| compose(a, b)).collect()).collect();
        Self::new(t, 0).expect("quiver").with_labels(
            ["0", "e1", "e2", "e3", "a12", "a23", "a13"].iter().map(|s| s.to_string()).collect(),
        ).expect("labels")
    }

    /// The stored semigroups used by the exhaustive checks.
    pub fn catalog() -> Vec<(&'static str, FiniteSemigroup)> {
        vec![
            ("chain3", Self::chain3()),
            ("null4", Self::null(4)),
            ("cyclic3+0", Self::cyclic_with_zero(3)),
            ("cyclic5+0", Self::cyclic_with_zero(5)),
            ("nilpotent5", Self::nilpotent(5)),
            ("brandt2", Self::brandt(2)),
            ("brandt3", Self::brandt(3)),
            ("left_zero3+0", Self::left_zero(3)),
            ("min_chain4", Self::min_chain(4)),
            ("quiver_a3", Self::quiver_a3()),
        ]
    }
}

/// Pairs `x ≤ y` of a finite poset under `(x, y)(y, z) = (x, z)`, all other
/// products zero. Index 0 is the zero.
#[derive(Debug, Clone)]
pub struct PosetSemigroup {
    objects: usize,
    pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    by_start: Vec<Vec<usize>>,
}

impl PosetSemigroup {
    /// `relations` lists strict relations `x < y`; reflexive pairs are added.
    /// The relation must already be transitive.
    pub fn new(objects: usize, relations: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, CohomError> {
        let mut pairs: Vec<(usize, usize)> = (0..objects).map(|x| (x, x)).collect();
        for (x, y) in relations {
            if x >= objects || y >= objects || x == y {
                return Err(CohomError::InvalidTable(format!("bad relation ({x}, {y})")));
            }
            pairs.push((x, y));
        }
        pairs.sort_unstable();
        pairs.dedup();
        let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
        let mut by_start = vec![Vec::new(); objects];
        for (i, &(x, _)) in pairs.iter().enumerate() {
            by_start[x].push(i + 1);
        }
        let s = PosetSemigroup {
            objects,
            pairs,
            index,
            by_start,
        };
        for &(x, y) in &s.pairs {
            for &j in &s.by_start[y] {
                let z = s.pairs[j - 1].1;
                if !s.index.contains_key(&(x, z)) {
                    return Err(CohomError::InvalidTable(format!("relation not transitive at {x} < {y} < {z}")));
                }
                if x != y && z == x {
                    return Err(CohomError::InvalidTable(format!("relation has a cycle through {x}, {y}")));
                }
            }
        }
        Ok(s)
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn element(&self, x: usize, y: usize) -> Option<usize> {
        self.index.get(&(x, y)).copied()
    }

    pub fn pair(&self, a: usize) -> Option<(usize, usize)> {
        if a == 0 {
            None
        } else {
            self.pairs.get(a - 1).copied()
        }
    }
}

impl Semigroup for PosetSemigroup {
    fn order(&self) -> usize {
        self.pairs.len() + 1
    }
    fn zero(&self) -> usize {
        0
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        match (self.pair(a), self.pair(b)) {
            (Some((x, y)), Some((y2, z))) if y == y2 => self.index[&(x, z)],
            _ => 0,
        }
    }
    fn right_compatible(&self, a: usize) -> Vec<usize> {
        self.pair(a).map_or_else(Vec::new, |(_, y)| self.by_start[y].clone())
    }
    fn label(&self, a: usize) -> String {
        match self.pair(a) {
            Some((x, y)) => format!("({x},{y})"),
            None => "0".into(),
        }
    }
}

/// A subsemigroup, re-indexed with local zero 0 and `embedding[local] =
/// global`.
#[derive(Debug, Clone)]
pub struct Subsemigroup {
    pub semigroup: FiniteSemigroup,
    pub embedding: Vec<usize>,
    parent_order: usize,
}

/// The subsemigroup on `elements` (the zero is added), provided the subset
/// is closed under the product.
pub fn subsemigroup<S: Semigroup>(s: &S, elements: &[usize]) -> Result<Subsemigroup, CohomError> {
    let z = s.zero();
    let mut embedding = vec![z];
    let mut sorted: Vec<usize> = elements.iter().copied().filter(|&e| e != z).collect();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(&bad) = sorted.iter().find(|&&e| e >= s.order()) {
        return Err(CohomError::InvalidTable(format!("element {bad} out of range")));
    }
    embedding.extend(sorted);
    let local: HashMap<usize, usize> = embedding.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let m = embedding.len();
    let mut table = vec![vec![0; m]; m];
    for i in 1..m {
        for j in 1..m {
            let p = s.mul(embedding[i], embedding[j]);
            table[i][j] = *local.get(&p).ok_or(CohomError::NotASubsemigroup {
                a: embedding[i],
                b: embedding[j],
            })?;
        }
    }
    let semigroup = FiniteSemigroup::unchecked(table, 0)?
        .with_labels(embedding.iter().map(|&g| s.label(g)).collect())?;
    Ok(Subsemigroup {
        semigroup,
        embedding,
        parent_order: s.order(),
    })
}

/// The restriction of a cochain to a subsemigroup.
pub fn restrict<G: CoefficientGroup>(f: &Cochain<G>, sub: &Subsemigroup) -> Result<Cochain<G>, CohomError> {
    if f.order() != sub.parent_order {
        return Err(CohomError::SemigroupMismatch(format!(
            "cochain on {} elements, subsemigroup of a {}-element semigroup",
            f.order(),
            sub.parent_order
        )));
    }
    Cochain::from_fn(&sub.semigroup, f.arity(), f.group().clone(), |t| {
        let global: Vec<usize> = t.iter().map(|&i| sub.embedding[i]).collect();
        f.get(&global)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_valid() {
        for (name, s) in FiniteSemigroup::catalog() {
            assert!(s.check_associative().is_ok(), "{name}");
            assert!(s.order() <= 12, "{name}");
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(matches!(
            FiniteSemigroup::new(vec![vec![0, 0], vec![0, 1], vec![0, 0]], 0),
            Err(CohomError::InvalidTable(_))
        ));
        assert!(matches!(FiniteSemigroup::new(vec![vec![1, 0], vec![0, 0]], 0), Err(CohomError::ZeroNotAbsorbing(_))));
        // 1·1 = 2, 2·1 = 0, 1·2 = 1: (1·1)·1 = 0 but 1·(1·1) = 1.
        let t = vec![vec![0, 0, 0], vec![0, 2, 1], vec![0, 0, 0]];
        assert!(matches!(FiniteSemigroup::new(t, 0), Err(CohomError::NotAssociative { .. })));
    }

    #[test]
    fn text_round_trip() {
        let s = FiniteSemigroup::brandt(2);
        let back = FiniteSemigroup::parse(&s.to_text()).unwrap();
        assert_eq!(back.to_text(), s.to_text());
        assert!(FiniteSemigroup::parse("2 0\n0 0\n").is_err());
        assert!(FiniteSemigroup::parse("# comment\n2 0\n0 0 # row\n0 1\n").is_ok());
    }

    #[test]
    fn random_tables_are_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=8 {
            let s = FiniteSemigroup::random_repaired(n, 0.6, &mut rng);
            assert!(s.check_associative().is_ok());
        }
    }

    #[test]
    fn tuples_have_nonzero_products() {
        let s = FiniteSemigroup::quiver_a3();
        let pairs = s.nonzero_tuples(2).unwrap();
        // e_i e_i (3), e1 a12, a12 e2, e2 a23, a23 e3, e1 a13, a13 e3, a12 a23
        assert_eq!(pairs.len(), 10);
        assert!(pairs.iter().all(|t| s.product(t) != 0));
        let mut sorted = pairs.clone();
        sorted.sort();
        assert_eq!(sorted, pairs);
    }

    #[test]
    fn poset_semigroup() {
        let p = PosetSemigroup::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.order(), 7);
        let (a, b) = (p.element(0, 1).unwrap(), p.element(1, 2).unwrap());
        assert_eq!(p.mul(a, b), p.element(0, 2).unwrap());
        assert_eq!(p.mul(b, a), 0);
        let table = FiniteSemigroup::from_semigroup(&p).unwrap();
        assert!(table.check_associative().is_ok());
        assert!(PosetSemigroup::new(3, [(0, 1), (1, 2)]).is_err());
    }

    #[test]
    fn subsemigroups() {
        let s = FiniteSemigroup::chain3();
        let sub = subsemigroup(&s, &[1, 2, 3]).unwrap();
        assert_eq!(sub.semigroup.order(), 4);
        assert!(matches!(subsemigroup(&s, &[1, 2]), Err(CohomError::NotASubsemigroup { a: 1, b: 2 })));
        assert!(subsemigroup(&s, &[1, 3]).is_ok());
    }
}
