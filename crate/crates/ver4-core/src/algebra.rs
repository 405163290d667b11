//! Commutative algebras presented by generators and relations.
//!
//! The free commutative algebra on generators `x_i` (some of which carry a
//! partner `w_i = d(x_i)`) satisfies `w_i² = 0`, `x_i w_j = w_j x_i` and
//! `x_i x_j + x_j x_i = w_i w_j`, so monomials `x^α · w_S` with `S` a set form
//! a basis. Everything is truncated at a degree bound `N`: computations take
//! place in `O/𝔪^N` and products of degree `≥ N` are dropped.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul};

use rayon::prelude::*;

use crate::error::Error;
use crate::f2::{BitMatrix, Echelon, F2Vec};
use crate::report::Report;

const W_WORDS: usize = 4;

/// A set of w-generator indices (up to 256 of them).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct WSet([u64; W_WORDS]);

impl WSet {
    pub fn empty() -> Self {
        WSet([0; W_WORDS])
    }

    pub fn contains(&self, i: usize) -> bool {
        (self.0[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, &w) in self.0.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(k * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }
}

/// A normal-form monomial: x-exponents plus a square-free set of w's.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub x_exp: Vec<u16>,
    pub w_set: WSet,
}

impl Monomial {
    pub fn one(num_x: usize) -> Self {
        Monomial { x_exp: vec![0; num_x], w_set: WSet::empty() }
    }

    pub fn degree(&self) -> usize {
        self.x_exp.iter().map(|&e| e as usize).sum::<usize>() + self.w_set.len()
    }

    pub fn is_one(&self) -> bool {
        self.x_exp.iter().all(|&e| e == 0) && self.w_set.is_empty()
    }

    pub fn word(&self) -> Vec<Gen> {
        let mut out = Vec::with_capacity(self.degree());
        for (i, &e) in self.x_exp.iter().enumerate() {
            for _ in 0..e {
                out.push(Gen::X(i));
            }
        }
        for i in self.w_set.indices() {
            out.push(Gen::W(i));
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // x-exponent vectors lexicographically, then w-index lists
        // lexicographically.
        self.x_exp
            .cmp(&other.x_exp)
            .then_with(|| self.w_set.indices().cmp(&other.w_set.indices()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A single generator occurrence in a word.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gen {
    X(usize),
    W(usize),
}

/// Presentation data of a free commutative algebra.
#[derive(Clone, Debug)]
pub struct FreeStructure {
    pub x_labels: Vec<String>,
    pub w_labels: Vec<String>,
    /// For each x-generator, the index of its partner `w = dx`, if any.
    pub pair: Vec<Option<usize>>,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl FreeStructure {
    pub fn num_x(&self) -> usize {
        self.x_labels.len()
    }

    pub fn num_w(&self) -> usize {
        self.w_labels.len()
    }

    pub fn monomial_index(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// A truncated augmented algebra `O/𝔪^N` with an explicit basis adapted to
/// the powers of the augmentation ideal: `𝔪^i` is spanned by the basis
/// elements of filtration degree `≥ i`.
#[derive(Clone, Debug)]
pub struct LocalAlgebra {
    labels: Vec<String>,
    trunc: usize,
    deg: Vec<usize>,
    unit: usize,
    aug: F2Vec,
    mult: Vec<Vec<F2Vec>>,
    diff: Vec<F2Vec>,
    free: Option<FreeStructure>,
}

/// Rewrites words to normal form as an F2 set of monomials, dropping terms of
/// degree `≥ trunc`. The rewrite rules strictly decrease (x-count,
/// x-inversions, misplaced w's, w-inversions) lexicographically, so this
/// terminates; order independence is covered by an exhaustive oracle test.
fn normal_form_words(
    seeds: Vec<Vec<Gen>>,
    num_x: usize,
    pair: &[Option<usize>],
    trunc: usize,
) -> Vec<Monomial> {
    let mut out: HashMap<Monomial, bool> = HashMap::new();
    let mut stack: Vec<Vec<Gen>> = seeds.into_iter().filter(|w| w.len() < trunc).collect();
    while let Some(word) = stack.pop() {
        let mut rewritten = false;
        for k in 0..word.len().saturating_sub(1) {
            match (word[k], word[k + 1]) {
                (Gen::W(i), Gen::X(j)) => {
                    let mut w = word.clone();
                    w[k] = Gen::X(j);
                    w[k + 1] = Gen::W(i);
                    stack.push(w);
                    rewritten = true;
                }
                (Gen::W(i), Gen::W(j)) if i > j => {
                    let mut w = word.clone();
                    w[k] = Gen::W(j);
                    w[k + 1] = Gen::W(i);
                    stack.push(w);
                    rewritten = true;
                }
                (Gen::W(i), Gen::W(j)) if i == j => {
                    rewritten = true; // w² = 0: the word dies
                }
                (Gen::X(i), Gen::X(j)) if i > j => {
                    let mut w = word.clone();
                    w[k] = Gen::X(j);
                    w[k + 1] = Gen::X(i);
                    stack.push(w);
                    if let (Some(wi), Some(wj)) = (pair[i], pair[j]) {
                        let mut c = word.clone();
                        c[k] = Gen::W(wi);
                        c[k + 1] = Gen::W(wj);
                        stack.push(c);
                    }
                    rewritten = true;
                }
                _ => continue,
            }
            break;
        }
        if !rewritten {
            let mut m = Monomial::one(num_x);
            let mut dead = false;
            for g in &word {
                match *g {
                    Gen::X(i) => m.x_exp[i] += 1,
                    Gen::W(i) => {
                        if m.w_set.contains(i) {
                            dead = true;
                            break;
                        }
                        m.w_set.insert(i);
                    }
                }
            }
            if !dead {
                *out.entry(m).or_insert(false) ^= true;
            }
        }
    }
    let mut terms: Vec<Monomial> = out.into_iter().filter(|&(_, v)| v).map(|(m, _)| m).collect();
    terms.sort();
    terms
}

fn enumerate_monomials(num_x: usize, num_w: usize, trunc: usize) -> Vec<Monomial> {
    fn rec(exp: &mut Vec<u16>, pos: usize, remaining: usize, out: &mut Vec<(Vec<u16>, usize)>) {
        if pos == exp.len() {
            out.push((exp.clone(), remaining));
            return;
        }
        for e in 0..=remaining {
            exp[pos] = e as u16;
            rec(exp, pos + 1, remaining - e, out);
        }
        exp[pos] = 0;
    }
    let mut exp = vec![0u16; num_x];
    let mut xparts = Vec::new();
    rec(&mut exp, 0, trunc - 1, &mut xparts);
    let mut out = Vec::new();
    for (x_exp, room) in xparts {
        for s in w_subsets(num_w, room) {
            out.push(Monomial { x_exp: x_exp.clone(), w_set: s });
        }
    }
    out.sort();
    out.dedup();
    out
}

fn w_subsets(num_w: usize, max_size: usize) -> Vec<WSet> {
    let mut out = vec![WSet::empty()];
    for i in 0..num_w {
        let mut extended = Vec::new();
        for s in &out {
            if s.len() < max_size {
                let mut t = *s;
                t.insert(i);
                extended.push(t);
            }
        }
        out.extend(extended);
    }
    out
}

impl LocalAlgebra {
    /// The free commutative algebra on the canonical object `V_{m+n|n}`,
    /// truncated at degree `trunc`: generators `x1..x_{m+n}` with
    /// `d(x_i) = w_i` for `i ≤ n`.
    pub fn free_commutative(m: usize, n: usize, trunc: usize) -> Self {
        let xs: Vec<(String, bool)> = (0..m + n)
            .map(|i| (format!("x{}", i + 1), i < n))
            .collect();
        let ws: Vec<String> = (0..n).map(|i| format!("w{}", i + 1)).collect();
        Self::free_with_labels(&xs, &ws, trunc)
    }

    /// Free commutative algebra with named generators; `xs[i].1` says whether
    /// the generator has a nonzero differential, and paired generators consume
    /// the `w_labels` in order.
    pub fn free_with_labels(xs: &[(String, bool)], w_labels: &[String], trunc: usize) -> Self {
        assert!(trunc >= 1, "truncation degree must be at least 1");
        let num_x = xs.len();
        let mut pair = Vec::with_capacity(num_x);
        let mut next_w = 0;
        for (_, paired) in xs {
            if *paired {
                pair.push(Some(next_w));
                next_w += 1;
            } else {
                pair.push(None);
            }
        }
        assert_eq!(next_w, w_labels.len(), "w label count must match paired generators");
        let monomials = enumerate_monomials(num_x, w_labels.len(), trunc);
        let dim = monomials.len();
        let index: HashMap<Monomial, usize> =
            monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let x_labels: Vec<String> = xs.iter().map(|(l, _)| l.clone()).collect();
        let free = FreeStructure {
            x_labels: x_labels.clone(),
            w_labels: w_labels.to_vec(),
            pair: pair.clone(),
            monomials: monomials.clone(),
            index,
        };
        let deg: Vec<usize> = monomials.iter().map(Monomial::degree).collect();
        let labels: Vec<String> = monomials
            .iter()
            .map(|m| render_monomial(m, &x_labels, w_labels))
            .collect();
        let unit = monomials.iter().position(Monomial::is_one).expect("unit monomial");
        let mut aug = F2Vec::zeros(dim);
        aug.set(unit, true);

        let mult: Vec<Vec<F2Vec>> = monomials
            .par_iter()
            .enumerate()
            .map(|(i, mi)| {
                (0..dim)
                    .map(|j| {
                        let mut v = F2Vec::zeros(dim);
                        if deg[i] + deg[j] < trunc {
                            let mut word = mi.word();
                            word.extend(monomials[j].word());
                            for t in normal_form_words(vec![word], num_x, &pair, trunc) {
                                v.flip(free.index[&t]);
                            }
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let diff: Vec<F2Vec> = monomials
            .iter()
            .map(|m| {
                let mut v = F2Vec::zeros(dim);
                for (k, &e) in m.x_exp.iter().enumerate() {
                    if e % 2 == 1 {
                        if let Some(w) = pair[k] {
                            if !m.w_set.contains(w) {
                                let mut t = m.clone();
                                t.x_exp[k] -= 1;
                                t.w_set.insert(w);
                                v.flip(free.index[&t]);
                            }
                        }
                    }
                }
                v
            })
            .collect();
        LocalAlgebra { labels, trunc, deg, unit, aug, mult, diff, free: Some(free) }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn deg(&self, i: usize) -> usize {
        self.deg[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.deg
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn one(&self) -> F2Vec {
        F2Vec::unit(self.dim(), self.unit)
    }

    pub fn free_structure(&self) -> Option<&FreeStructure> {
        self.free.as_ref()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &F2Vec {
        &self.mult[i][j]
    }

    /// Product of a basis element with an arbitrary element.
    pub fn mul_basis_vec(&self, i: usize, v: &F2Vec) -> F2Vec {
        let mut out = F2Vec::zeros(self.dim());
        for j in v.ones() {
            out.xor_assign(&self.mult[i][j]);
        }
        out
    }

    pub fn mul(&self, u: &F2Vec, v: &F2Vec) -> F2Vec {
        let mut out = F2Vec::zeros(self.dim());
        for i in u.ones() {
            out.xor_assign(&self.mul_basis_vec(i, v));
        }
        out
    }

    pub fn d_basis(&self, i: usize) -> &F2Vec {
        &self.diff[i]
    }

    pub fn d(&self, v: &F2Vec) -> F2Vec {
        let mut out = F2Vec::zeros(self.dim());
        for i in v.ones() {
            out.xor_assign(&self.diff[i]);
        }
        out
    }

    pub fn aug(&self, v: &F2Vec) -> bool {
        self.aug.dot(v)
    }

    pub fn aug_functional(&self) -> &F2Vec {
        &self.aug
    }

    /// Basis indices spanning `𝔪^i` inside the truncation.
    pub fn m_power_indices(&self, i: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.deg[b] >= i).collect()
    }

    /// Dimension of `O/𝔪^i`.
    pub fn dim_mod_m_power(&self, i: usize) -> usize {
        (0..self.dim()).filter(|&b| self.deg[b] < i).count()
    }

    pub fn render(&self, v: &F2Vec) -> String {
        let terms: Vec<&str> = v.ones().map(|i| self.labels[i].as_str()).collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    /// The basis vector of a free generator.
    pub fn gen_x(&self, i: usize) -> F2Vec {
        let f = self.free.as_ref().expect("generator access requires a free presentation");
        let mut m = Monomial::one(f.num_x());
        m.x_exp[i] = 1;
        F2Vec::unit(self.dim(), f.index[&m])
    }

    pub fn gen_w(&self, i: usize) -> F2Vec {
        let f = self.free.as_ref().expect("generator access requires a free presentation");
        let mut m = Monomial::one(f.num_x());
        m.w_set.insert(i);
        F2Vec::unit(self.dim(), f.index[&m])
    }

    pub fn elem(&self, coords: F2Vec) -> Elem<'_> {
        assert_eq!(coords.len(), self.dim());
        Elem { alg: self, coords }
    }

    /// Rewrites a word in the generators to its normal form.
    pub fn normal_form(&self, word: &[Gen]) -> Result<F2Vec, Error> {
        let f = self
            .free
            .as_ref()
            .ok_or_else(|| Error::StructureCheck("normal form requires a free presentation".into()))?;
        for g in word {
            match *g {
                Gen::X(i) if i >= f.num_x() => return Err(Error::UnknownGenerator(i)),
                Gen::W(i) if i >= f.num_w() => return Err(Error::UnknownGenerator(i)),
                _ => {}
            }
        }
        let terms = normal_form_words(vec![word.to_vec()], f.num_x(), &f.pair, self.trunc);
        let mut v = F2Vec::zeros(self.dim());
        for t in terms {
            v.flip(f.index[&t]);
        }
        Ok(v)
    }

    /// Inverse of `a` modulo the truncation; requires unit augmentation.
    pub fn invert_mod_m(&self, a: &F2Vec) -> Result<F2Vec, Error> {
        if !self.aug(a) {
            return Err(Error::NotInvertible);
        }
        let mut m = a.clone();
        m.flip(self.unit); // m = a + 1 lies in the augmentation ideal
        let mut inv = self.one();
        let mut power = self.one();
        for _ in 1..self.trunc {
            power = self.mul(&power, &m);
            if power.is_zero() {
                break;
            }
            inv.xor_assign(&power);
        }
        debug_assert_eq!(self.mul(a, &inv), self.one());
        Ok(inv)
    }

    /// Fault-injection hook: toggles one structure constant of the
    /// multiplication table so the verifiers can demonstrate failure.
    pub fn flip_mult_entry(&mut self, i: usize, j: usize, k: usize) {
        self.mult[i][j].flip(k);
    }

    /// Checks the commutativity law `ab + ba = da·db` on all basis pairs.
    pub fn verify_commutativity(&self) -> Report {
        let mut report = Report::new("commutativity");
        let witness = (0..self.dim()).into_par_iter().find_map_first(|i| {
            for j in 0..self.dim() {
                let mut lhs = self.mult[i][j].clone();
                lhs.xor_assign(&self.mult[j][i]);
                let rhs = self.mul(&self.diff[i], &self.diff[j]);
                if lhs != rhs {
                    return Some(format!(
                        "pair ({}, {}): ab + ba = {} but da·db = {}",
                        self.labels[i],
                        self.labels[j],
                        self.render(&lhs),
                        self.render(&rhs)
                    ));
                }
            }
            None
        });
        report.record("commutativity-law", witness);
        report
    }

    /// Structural checks: associativity, unit laws, the augmentation being an
    /// algebra map, the differential being a square-zero derivation, the
    /// filtration rule `𝔪^i·𝔪^j ⊆ 𝔪^{i+j}`, and the centrality facts
    /// `(da)² = 0`, `a·db = db·a`.
    pub fn verify_algebra_laws(&self) -> Report {
        let dim = self.dim();
        let mut report = Report::new("algebra-laws");

        let unit_witness = (0..dim).find_map(|i| {
            if self.mult[self.unit][i] != F2Vec::unit(dim, i)
                || self.mult[i][self.unit] != F2Vec::unit(dim, i)
            {
                Some(format!("unit law fails at {}", self.labels[i]))
            } else {
                None
            }
        });
        report.record("unit-law", unit_witness);

        // Associativity: full triple check when small; for large algebras the
        // degree-one slice against all pairs (with linearity and the graded
        // product rule this already determines the table).
        let full = dim * dim * dim <= 2_000_000;
        let assoc_witness = (0..dim).into_par_iter().find_map_first(|i| {
            if !full && self.deg[i] > 1 {
                return None;
            }
            for j in 0..dim {
                for k in 0..dim {
                    if self.deg[i] + self.deg[j] + self.deg[k] >= self.trunc {
                        continue;
                    }
                    let lhs = self.mul(&self.mult[i][j], &F2Vec::unit(dim, k));
                    let rhs = self.mul_basis_vec(i, &self.mult[j][k]);
                    if lhs != rhs {
                        return Some(format!(
                            "associativity fails at ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        ));
                    }
                }
            }
            None
        });
        report.record("associativity", assoc_witness);

        let aug_witness = (0..dim).find_map(|i| {
            (0..dim).find_map(|j| {
                let lhs = self.aug(&self.mult[i][j]);
                let rhs = self.aug.get(i) && self.aug.get(j);
                (lhs != rhs).then(|| {
                    format!("augmentation not multiplicative at ({}, {})", self.labels[i], self.labels[j])
                })
            })
        });
        report.record("augmentation-algebra-map", aug_witness);

        let d_sq = (0..dim).find_map(|i| {
            (!self.d(&self.diff[i]).is_zero()).then(|| format!("d² ≠ 0 at {}", self.labels[i]))
        });
        report.record("d-squares-to-zero", d_sq);

        let leibniz = (0..dim).into_par_iter().find_map_first(|i| {
            for j in 0..dim {
                let mut rhs = self.mul(&self.diff[i], &F2Vec::unit(dim, j));
                rhs.xor_assign(&self.mul_basis_vec(i, &self.diff[j]));
                if self.d(&self.mult[i][j]) != rhs {
                    return Some(format!("Leibniz rule fails at ({}, {})", self.labels[i], self.labels[j]));
                }
            }
            None
        });
        report.record("d-derivation", leibniz);

        let filtration = (0..dim).find_map(|i| {
            (0..dim).find_map(|j| {
                self.mult[i][j]
                    .ones()
                    .find(|&k| self.deg[k] < self.deg[i] + self.deg[j])
                    .map(|k| {
                        format!(
                            "product ({}, {}) has a component {} below filtration {}",
                            self.labels[i],
                            self.labels[j],
                            self.labels[k],
                            self.deg[i] + self.deg[j]
                        )
                    })
            })
        });
        report.record("filtration-multiplicativity", filtration);

        let central = (0..dim).find_map(|i| {
            (0..dim).find_map(|j| {
                let db = &self.diff[j];
                let lhs = self.mul_basis_vec(i, db);
                let rhs = self.mul(db, &F2Vec::unit(dim, i));
                (lhs != rhs).then(|| format!("a·db ≠ db·a at ({}, {})", self.labels[i], self.labels[j]))
            })
        });
        report.record("differentials-central", central);

        let dsq_elem = (0..dim).find_map(|i| {
            let da = &self.diff[i];
            (!self.mul(da, da).is_zero()).then(|| format!("(da)² ≠ 0 at {}", self.labels[i]))
        });
        report.record("differential-squares-vanish", dsq_elem);

        report
    }

    /// Quotient by the d-stable two-sided ideal generated by `gens`.
    pub fn quotient(&self, gens: &[F2Vec]) -> Result<QuotientData, Error> {
        let dim = self.dim();
        let mut ideal = Echelon::new(dim);
        let mut work: Vec<F2Vec> = gens.to_vec();
        while let Some(v) = work.pop() {
            if !ideal.insert(v.clone()) {
                continue;
            }
            work.push(self.d(&v));
            for b in 0..dim {
                work.push(self.mul_basis_vec(b, &v));
                work.push(self.mul(&v, &F2Vec::unit(dim, b)));
            }
        }
        self.quotient_by_ideal(&ideal)
    }

    /// Quotient by an already-computed ideal span. The span must be closed
    /// under multiplication and under `d`; the latter is validated and
    /// rejected rather than repaired.
    pub fn quotient_by_ideal(&self, ideal: &Echelon) -> Result<QuotientData, Error> {
        let dim = self.dim();
        if ideal.contains(&self.one()) {
            return Err(Error::InconsistentPresentation);
        }
        for v in ideal.basis() {
            if !ideal.contains(&self.d(v)) {
                return Err(Error::IdealNotDifferentialStable);
            }
        }
        // Representatives adapted to the filtration, highest degree first, so
        // that the quotient images of 𝔪^i are spanned by representatives of
        // quotient degree ≥ i.
        let mut chain = ideal.clone();
        let mut reps: Vec<(usize, usize)> = Vec::new(); // (basis index, quotient degree)
        for q in (0..self.trunc).rev() {
            let mut layer = chain.clone();
            for b in 0..dim {
                if self.deg[b] > q {
                    layer.insert(F2Vec::unit(dim, b));
                }
            }
            for b in 0..dim {
                if self.deg[b] == q && layer.insert(F2Vec::unit(dim, b)) {
                    reps.push((b, q));
                }
            }
            chain = layer;
        }
        reps.sort_by_key(|&(b, q)| (q, b));
        let qdim = reps.len();
        // Projection: invert [ideal basis | representative columns | completion].
        let mut columns: Vec<F2Vec> = ideal.basis().to_vec();
        let ideal_rank = columns.len();
        columns.extend(reps.iter().map(|&(b, _)| F2Vec::unit(dim, b)));
        let mut full = Echelon::from_spanning(dim, &columns);
        for i in 0..dim {
            let u = F2Vec::unit(dim, i);
            if full.insert(u.clone()) {
                columns.push(u);
            }
        }
        let change = BitMatrix::from_columns(&columns, dim);
        let inv = change.inverse().expect("ideal/representative basis is invertible");
        let proj_rows: Vec<F2Vec> = (0..qdim).map(|k| inv.row(ideal_rank + k).clone()).collect();
        let projection = BitMatrix::from_rows(proj_rows, dim);

        let labels: Vec<String> = reps.iter().map(|&(b, _)| self.labels[b].clone()).collect();
        let deg: Vec<usize> = reps.iter().map(|&(_, q)| q).collect();
        let unit = reps
            .iter()
            .position(|&(_, q)| q == 0)
            .expect("quotient keeps a degree-zero representative");
        let mult: Vec<Vec<F2Vec>> = reps
            .iter()
            .map(|&(bi, _)| {
                reps.iter()
                    .map(|&(bj, _)| projection.mul_vec(&self.mult[bi][bj]))
                    .collect()
            })
            .collect();
        let diff: Vec<F2Vec> = reps.iter().map(|&(b, _)| projection.mul_vec(&self.diff[b])).collect();
        let mut aug = F2Vec::zeros(qdim);
        for (k, &(b, _)) in reps.iter().enumerate() {
            if self.aug.get(b) {
                aug.set(k, true);
            }
        }
        let quotient = LocalAlgebra {
            labels,
            trunc: self.trunc,
            deg,
            unit,
            aug,
            mult,
            diff,
            free: None,
        };
        Ok(QuotientData {
            algebra: quotient,
            projection,
            representatives: reps.iter().map(|&(b, _)| b).collect(),
        })
    }

    /// The underlying ordinary commutative algebra: the quotient by the ideal
    /// spanned by all products `a·db`. The result has zero differential and
    /// satisfies `xy = yx` exactly.
    pub fn underlying_commutative(&self) -> QuotientData {
        let dim = self.dim();
        let mut span = Echelon::new(dim);
        for a in 0..dim {
            for b in 0..dim {
                span.insert(self.mul_basis_vec(a, &self.diff[b]));
            }
        }
        self.quotient_by_ideal(&span)
            .expect("the d-ideal never contains the unit")
    }

    /// The truncated twisted tensor product `A ⊗ B` with multiplication
    /// `(x⊗y)(x'⊗y') = xx' ⊗ yy' + x·dx' ⊗ dy·y'`.
    pub fn twisted_tensor(&self, other: &LocalAlgebra) -> (LocalAlgebra, PairIndexer) {
        assert_eq!(self.trunc, other.trunc, "truncation degrees must agree");
        let square = TensorSquare::new(self, other);
        let dim = square.dim();
        let labels: Vec<String> = square
            .basis
            .iter()
            .map(|&(i, j)| format!("{}⊗{}", self.labels[i as usize], other.labels[j as usize]))
            .collect();
        let deg = square.deg.clone();
        let unit = square
            .index_of(self.unit, other.unit)
            .expect("unit pair survives truncation");
        let mut aug = F2Vec::zeros(dim);
        aug.set(unit, true);
        let mult: Vec<Vec<F2Vec>> = (0..dim)
            .into_par_iter()
            .map(|p| (0..dim).map(|q| square.mul_basis(p, q)).collect())
            .collect();
        let diff: Vec<F2Vec> = (0..dim).map(|p| square.d_basis(p)).collect();
        let indexer = PairIndexer { right_dim: other.dim(), map: square.index.clone() };
        (
            LocalAlgebra { labels, trunc: self.trunc, deg, unit, aug, mult, diff, free: None },
            indexer,
        )
    }
}

fn render_monomial(m: &Monomial, x_labels: &[String], w_labels: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.x_exp.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(x_labels[i].clone()),
            _ => parts.push(format!("{}^{}", x_labels[i], e)),
        }
    }
    for i in m.w_set.indices() {
        parts.push(w_labels[i].clone());
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// A quotient algebra together with the projection from ambient coordinates
/// and the ambient basis indices of the chosen monomial representatives.
#[derive(Debug)]
pub struct QuotientData {
    pub algebra: LocalAlgebra,
    pub projection: BitMatrix,
    pub representatives: Vec<usize>,
}

/// Translates pair indices into the truncated tensor-square basis.
#[derive(Clone, Debug)]
pub struct PairIndexer {
    right_dim: usize,
    map: Vec<u32>,
}

impl PairIndexer {
    pub fn pair_index(&self, i: usize, j: usize) -> Option<usize> {
        let v = self.map[i * self.right_dim + j];
        (v != u32::MAX).then_some(v as usize)
    }
}

/// The truncated tensor square of two local algebras, with products computed
/// on demand (the full table is never materialised for large algebras).
pub struct TensorSquare<'a> {
    pub left: &'a LocalAlgebra,
    pub right: &'a LocalAlgebra,
    pub basis: Vec<(u32, u32)>,
    pub deg: Vec<usize>,
    index: Vec<u32>,
    trunc: usize,
}

impl<'a> TensorSquare<'a> {
    pub fn new(left: &'a LocalAlgebra, right: &'a LocalAlgebra) -> Self {
        assert_eq!(left.trunc, right.trunc);
        let trunc = left.trunc;
        let mut basis = Vec::new();
        let mut index = vec![u32::MAX; left.dim() * right.dim()];
        for i in 0..left.dim() {
            for j in 0..right.dim() {
                if left.deg[i] + right.deg[j] < trunc {
                    index[i * right.dim() + j] = basis.len() as u32;
                    basis.push((i as u32, j as u32));
                }
            }
        }
        let deg = basis
            .iter()
            .map(|&(i, j)| left.deg[i as usize] + right.deg[j as usize])
            .collect();
        TensorSquare { left, right, basis, deg, index, trunc }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        let v = self.index[i * self.right.dim() + j];
        (v != u32::MAX).then_some(v as usize)
    }

    pub fn pair(&self, idx: usize) -> (usize, usize) {
        let (i, j) = self.basis[idx];
        (i as usize, j as usize)
    }

    pub fn unit_index(&self) -> usize {
        self.index_of(self.left.unit, self.right.unit).expect("unit pair")
    }

    /// Accumulates `u ⊗ v` into `acc`.
    fn accumulate_outer(&self, u: &F2Vec, v: &F2Vec, acc: &mut F2Vec) {
        for i in u.ones() {
            for j in v.ones() {
                if let Some(idx) = self.index_of(i, j) {
                    acc.flip(idx);
                }
            }
        }
    }

    pub fn outer(&self, u: &F2Vec, v: &F2Vec) -> F2Vec {
        let mut acc = F2Vec::zeros(self.dim());
        self.accumulate_outer(u, v, &mut acc);
        acc
    }

    /// Product of two basis pairs under the twisted multiplication.
    pub fn mul_basis(&self, p: usize, q: usize) -> F2Vec {
        let mut acc = F2Vec::zeros(self.dim());
        if self.deg[p] + self.deg[q] >= self.trunc {
            return acc;
        }
        let (a, b) = self.pair(p);
        let (a2, b2) = self.pair(q);
        let plain_left = self.left.mul_basis(a, a2);
        let plain_right = self.right.mul_basis(b, b2);
        self.accumulate_outer(plain_left, plain_right, &mut acc);
        let twist_left = self.left.mul_basis_vec(a, self.left.d_basis(a2));
        if !twist_left.is_zero() {
            let twist_right =
                self.right.mul(self.right.d_basis(b), &F2Vec::unit(self.right.dim(), b2));
            self.accumulate_outer(&twist_left, &twist_right, &mut acc);
        }
        acc
    }

    pub fn mul(&self, u: &F2Vec, v: &F2Vec) -> F2Vec {
        let mut acc = F2Vec::zeros(self.dim());
        for p in u.ones() {
            for q in v.ones() {
                acc.xor_assign(&self.mul_basis(p, q));
            }
        }
        acc
    }

    pub fn d_basis(&self, idx: usize) -> F2Vec {
        let (i, j) = self.pair(idx);
        let mut acc = F2Vec::zeros(self.dim());
        self.accumulate_outer(self.left.d_basis(i), &F2Vec::unit(self.right.dim(), j), &mut acc);
        self.accumulate_outer(&F2Vec::unit(self.left.dim(), i), self.right.d_basis(j), &mut acc);
        acc
    }

    pub fn d(&self, u: &F2Vec) -> F2Vec {
        let mut acc = F2Vec::zeros(self.dim());
        for idx in u.ones() {
            acc.xor_assign(&self.d_basis(idx));
        }
        acc
    }

    /// The braiding `a⊗b ↦ b⊗a + db⊗da` as an endomap of the square
    /// (both factors must be the same algebra).
    pub fn braid_basis(&self, idx: usize) -> F2Vec {
        debug_assert_eq!(self.left.dim(), self.right.dim());
        let (i, j) = self.pair(idx);
        let mut acc = F2Vec::zeros(self.dim());
        if let Some(k) = self.index_of(j, i) {
            acc.flip(k);
        }
        self.accumulate_outer(self.right.d_basis(j), self.left.d_basis(i), &mut acc);
        acc
    }

    pub fn braid(&self, u: &F2Vec) -> F2Vec {
        let mut acc = F2Vec::zeros(self.dim());
        for idx in u.ones() {
            acc.xor_assign(&self.braid_basis(idx));
        }
        acc
    }

    pub fn aug(&self, u: &F2Vec) -> bool {
        u.get(self.unit_index())
    }
}

/// An element of a local algebra, for readable construction code.
#[derive(Clone)]
pub struct Elem<'a> {
    pub alg: &'a LocalAlgebra,
    pub coords: F2Vec,
}

impl<'a> Elem<'a> {
    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn d(&self) -> Elem<'a> {
        Elem { alg: self.alg, coords: self.alg.d(&self.coords) }
    }
}

impl<'a> Add for &Elem<'a> {
    type Output = Elem<'a>;

    fn add(self, rhs: &Elem<'a>) -> Elem<'a> {
        assert!(std::ptr::eq(self.alg, rhs.alg));
        let mut coords = self.coords.clone();
        coords.xor_assign(&rhs.coords);
        Elem { alg: self.alg, coords }
    }
}

impl<'a> Mul for &Elem<'a> {
    type Output = Elem<'a>;

    fn mul(self, rhs: &Elem<'a>) -> Elem<'a> {
        assert!(std::ptr::eq(self.alg, rhs.alg));
        Elem { alg: self.alg, coords: self.alg.mul(&self.coords, &rhs.coords) }
    }
}

/// A finite-dimensional associative algebra with differential, used for
/// endomorphism algebras and for deriving Lie structure from associative data.
#[derive(Clone, Debug)]
pub struct AssocAlgebra {
    pub labels: Vec<String>,
    pub mult: Vec<Vec<F2Vec>>,
    pub diff: Vec<F2Vec>,
    pub unit: F2Vec,
}

impl AssocAlgebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, u: &F2Vec, v: &F2Vec) -> F2Vec {
        let mut out = F2Vec::zeros(self.dim());
        for i in u.ones() {
            for j in v.ones() {
                out.xor_assign(&self.mult[i][j]);
            }
        }
        out
    }

    pub fn d(&self, v: &F2Vec) -> F2Vec {
        let mut out = F2Vec::zeros(self.dim());
        for i in v.ones() {
            out.xor_assign(&self.diff[i]);
        }
        out
    }

    pub fn from_local(alg: &LocalAlgebra) -> Self {
        AssocAlgebra {
            labels: alg.labels().to_vec(),
            mult: (0..alg.dim())
                .map(|i| (0..alg.dim()).map(|j| alg.mul_basis(i, j).clone()).collect())
                .collect(),
            diff: (0..alg.dim()).map(|i| alg.d_basis(i).clone()).collect(),
            unit: alg.one(),
        }
    }

    /// The endomorphism algebra of an object, with `d(F) = d∘F + F∘d` and
    /// composition as the product. Basis: matrix units `E(r,c)`.
    pub fn end_of(obj: &crate::object::Ver4Object) -> Self {
        let n = obj.dim();
        let dim = n * n;
        let idx = |r: usize, c: usize| r * n + c;
        let labels: Vec<String> = (0..n)
            .flat_map(|r| (0..n).map(move |c| format!("E({},{})", r + 1, c + 1)))
            .collect();
        // E(r,c)·E(r',c') = δ_{c,r'} E(r,c')
        let mut mult = vec![vec![F2Vec::zeros(dim); dim]; dim];
        for r in 0..n {
            for c in 0..n {
                for r2 in 0..n {
                    for c2 in 0..n {
                        if c == r2 {
                            mult[idx(r, c)][idx(r2, c2)].flip(idx(r, c2));
                        }
                    }
                }
            }
        }
        let dmat = obj.diff();
        let mut diff = vec![F2Vec::zeros(dim); dim];
        for r in 0..n {
            for c in 0..n {
                let col = idx(r, c);
                // d∘E(r,c) sends e_c to d(e_r).
                for r2 in dmat.column(r).ones() {
                    diff[col].flip(idx(r2, c));
                }
                // E(r,c)∘d sends e_j to e_r whenever d(e_j) hits e_c.
                for j in 0..n {
                    if dmat.get(c, j) {
                        diff[col].flip(idx(r, j));
                    }
                }
            }
        }
        let mut unit = F2Vec::zeros(dim);
        for r in 0..n {
            unit.set(idx(r, r), true);
        }
        AssocAlgebra { labels, mult, diff, unit }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(word: &[(char, usize)]) -> Vec<Gen> {
        word.iter()
            .map(|&(k, i)| if k == 'x' { Gen::X(i) } else { Gen::W(i) })
            .collect()
    }

    #[test]
    fn free_kx_truncated_basis() {
        // Free algebra on one paired generator truncated at 3:
        // basis {1, w, x, xw, x²} with w² = 0.
        let a = LocalAlgebra::free_commutative(0, 1, 3);
        assert_eq!(a.dim(), 5);
        let w = a.gen_w(0);
        assert!(a.mul(&w, &w).is_zero());
        let x = a.gen_x(0);
        assert_eq!(a.d(&x), w);
    }

    #[test]
    fn free_plain_polynomial_ring() {
        let a = LocalAlgebra::free_commutative(1, 0, 4);
        assert_eq!(a.dim(), 4); // 1, x, x², x³
        let x = a.gen_x(0);
        assert!(a.d(&x).is_zero());
        let x2 = a.mul(&x, &x);
        let x4 = a.mul(&x2, &x2);
        assert!(x4.is_zero()); // truncated
    }

    #[test]
    fn free_two_generators_at_trunc_two() {
        let a = LocalAlgebra::free_commutative(0, 2, 2);
        assert_eq!(a.dim(), 5); // 1, x1, x2, w1, w2
        let (x1, x2) = (a.gen_x(0), a.gen_x(1));
        // x2·x1 = x1·x2 + w1·w2, all of degree 2, hence zero here.
        assert!(a.mul(&x2, &x1).is_zero());
    }

    #[test]
    fn normal_form_swap_introduces_w_terms() {
        let a = LocalAlgebra::free_commutative(0, 2, 3);
        let nf = a.normal_form(&gens(&[('x', 1), ('x', 0)])).unwrap();
        let mut expected = a.mul(&a.gen_x(0), &a.gen_x(1));
        expected.xor_assign(&a.mul(&a.gen_w(0), &a.gen_w(1)));
        assert_eq!(nf, expected);
        let direct = a.mul(&a.gen_x(1), &a.gen_x(0));
        assert_eq!(nf, direct);
    }

    #[test]
    fn normal_form_w_squares_to_zero() {
        let a = LocalAlgebra::free_commutative(0, 2, 3);
        assert!(a.normal_form(&gens(&[('w', 0), ('w', 0)])).unwrap().is_zero());
    }

    #[test]
    fn normal_form_w_is_central() {
        let a = LocalAlgebra::free_commutative(0, 2, 4);
        let nf = a.normal_form(&gens(&[('x', 0), ('w', 1), ('x', 0)])).unwrap();
        let x1sq = a.mul(&a.gen_x(0), &a.gen_x(0));
        let expected = a.mul(&x1sq, &a.gen_w(1));
        assert_eq!(nf, expected);
        assert_eq!(nf.count_ones(), 1);
    }

    #[test]
    fn normal_form_rejects_unknown_generators() {
        let a = LocalAlgebra::free_commutative(0, 1, 3);
        assert!(a.normal_form(&[Gen::X(5)]).is_err());
    }

    #[test]
    fn normal_form_is_idempotent() {
        let a = LocalAlgebra::free_commutative(1, 2, 4);
        let f = a.free_structure().unwrap();
        for (idx, m) in f.monomials.iter().enumerate() {
            let nf = a.normal_form(&m.word()).unwrap();
            assert_eq!(nf, F2Vec::unit(a.dim(), idx));
        }
    }

    /// Brute-force oracle: rewrite to fixpoint exploring every applicable
    /// position at every step, checking the result never depends on the order.
    fn rewrite_all_orders(word: &[Gen], pair: &[Option<usize>], trunc: usize) -> Vec<Monomial> {
        fn applicable(word: &[Gen]) -> Vec<usize> {
            let mut out = Vec::new();
            for k in 0..word.len().saturating_sub(1) {
                match (word[k], word[k + 1]) {
                    (Gen::W(_), Gen::X(_)) => out.push(k),
                    (Gen::W(i), Gen::W(j)) if i >= j => out.push(k),
                    (Gen::X(i), Gen::X(j)) if i > j => out.push(k),
                    _ => {}
                }
            }
            out
        }

        fn apply_rule(word: &[Gen], k: usize, pair: &[Option<usize>]) -> Vec<Vec<Gen>> {
            let mut out = Vec::new();
            match (word[k], word[k + 1]) {
                (Gen::W(i), Gen::X(j)) => {
                    let mut w = word.to_vec();
                    w[k] = Gen::X(j);
                    w[k + 1] = Gen::W(i);
                    out.push(w);
                }
                (Gen::W(i), Gen::W(j)) if i == j => {}
                (Gen::W(i), Gen::W(j)) if i > j => {
                    let mut w = word.to_vec();
                    w[k] = Gen::W(j);
                    w[k + 1] = Gen::W(i);
                    out.push(w);
                }
                (Gen::X(i), Gen::X(j)) if i > j => {
                    let mut w = word.to_vec();
                    w[k] = Gen::X(j);
                    w[k + 1] = Gen::X(i);
                    out.push(w);
                    if let (Some(wi), Some(wj)) = (pair[i], pair[j]) {
                        let mut c = word.to_vec();
                        c[k] = Gen::W(wi);
                        c[k + 1] = Gen::W(wj);
                        out.push(c);
                    }
                }
                _ => unreachable!(),
            }
            out
        }

        fn normalize(
            word: Vec<Gen>,
            pair: &[Option<usize>],
            num_x: usize,
            trunc: usize,
        ) -> Vec<Monomial> {
            if word.len() >= trunc {
                return Vec::new();
            }
            let positions = applicable(&word);
            if positions.is_empty() {
                let mut m = Monomial::one(num_x);
                for g in &word {
                    match *g {
                        Gen::X(i) => m.x_exp[i] += 1,
                        Gen::W(i) => {
                            assert!(!m.w_set.contains(i), "duplicate w in normal word");
                            m.w_set.insert(i);
                        }
                    }
                }
                return vec![m];
            }
            let mut result: Option<Vec<Monomial>> = None;
            for pos in positions {
                let mut acc: HashMap<Monomial, bool> = HashMap::new();
                for branch in apply_rule(&word, pos, pair) {
                    for m in normalize(branch, pair, num_x, trunc) {
                        *acc.entry(m).or_insert(false) ^= true;
                    }
                }
                let mut terms: Vec<Monomial> =
                    acc.into_iter().filter(|&(_, v)| v).map(|(m, _)| m).collect();
                terms.sort();
                match &result {
                    None => result = Some(terms),
                    Some(prev) => assert_eq!(prev, &terms, "rewrite order changed the result"),
                }
            }
            result.unwrap()
        }

        normalize(word.to_vec(), pair, pair.len(), trunc)
    }

    #[test]
    fn rewriting_is_confluent_on_short_words() {
        // All words of length ≤ 4 in three paired generators: the engine must
        // agree with the all-orders oracle.
        let pair = [Some(0), Some(1), Some(2)];
        let alphabet: Vec<Gen> = (0..3).map(Gen::X).chain((0..3).map(Gen::W)).collect();
        let trunc = 5;
        let mut words: Vec<Vec<Gen>> = vec![vec![]];
        for _ in 0..4 {
            let mut next = Vec::new();
            for w in &words {
                for &g in &alphabet {
                    let mut w2 = w.clone();
                    w2.push(g);
                    next.push(w2);
                }
            }
            for w in &next {
                let fast = normal_form_words(vec![w.clone()], 3, &pair, trunc);
                let slow = rewrite_all_orders(w, &pair, trunc);
                assert_eq!(fast, slow, "word {w:?}");
            }
            words = next;
        }
    }

    #[test]
    fn commutativity_law_holds_on_free_algebras() {
        let a = LocalAlgebra::free_commutative(2, 1, 4);
        assert!(a.verify_commutativity().passed());
        assert!(a.verify_algebra_laws().passed());
    }

    #[test]
    fn commutativity_detects_injected_fault() {
        let mut a = LocalAlgebra::free_commutative(0, 2, 3);
        let f = a.free_structure().unwrap();
        let mut m = Monomial::one(2);
        m.x_exp[0] = 1;
        let i = f.monomial_index(&m).unwrap();
        let mut m2 = Monomial::one(2);
        m2.x_exp[1] = 1;
        let j = f.monomial_index(&m2).unwrap();
        let unit = a.unit_index();
        a.flip_mult_entry(i, j, unit);
        let report = a.verify_commutativity();
        assert!(!report.passed());
        assert!(report.first_failure().unwrap().counterexample.is_some());
    }

    #[test]
    fn invert_geometric_series() {
        let a = LocalAlgebra::free_commutative(1, 0, 3);
        let x = a.gen_x(0);
        let mut one_plus_x = a.one();
        one_plus_x.xor_assign(&x);
        let inv = a.invert_mod_m(&one_plus_x).unwrap();
        // (1+x)⁻¹ = 1 + x + x² in the truncation.
        let mut expected = a.one();
        expected.xor_assign(&x);
        expected.xor_assign(&a.mul(&x, &x));
        assert_eq!(inv, expected);
        assert_eq!(a.mul(&one_plus_x, &inv), a.one());
        assert_eq!(a.mul(&inv, &one_plus_x), a.one());
    }

    #[test]
    fn invert_unit_is_unit() {
        let a = LocalAlgebra::free_commutative(1, 1, 4);
        assert_eq!(a.invert_mod_m(&a.one()).unwrap(), a.one());
    }

    #[test]
    fn invert_rejects_augmentation_zero() {
        let a = LocalAlgebra::free_commutative(1, 0, 3);
        assert!(a.invert_mod_m(&a.gen_x(0)).is_err());
    }

    #[test]
    fn inverse_differential_identity() {
        // d(a⁻¹) = a⁻²·da for a = 1 + x.
        let a = LocalAlgebra::free_commutative(0, 1, 5);
        let x = a.gen_x(0);
        let mut u = a.one();
        u.xor_assign(&x);
        let inv = a.invert_mod_m(&u).unwrap();
        let inv_sq = a.mul(&inv, &inv);
        let rhs = a.mul(&inv_sq, &a.d(&u));
        assert_eq!(a.d(&inv), rhs);
    }

    #[test]
    fn twisted_tensor_cross_terms() {
        let a = LocalAlgebra::free_commutative(0, 1, 3);
        let (t, idx) = a.twisted_tensor(&a);
        let f = a.free_structure().unwrap();
        let mut xm = Monomial::one(1);
        xm.x_exp[0] = 1;
        let xi = f.monomial_index(&xm).unwrap();
        let mut wm = Monomial::one(1);
        wm.w_set.insert(0);
        let wi = f.monomial_index(&wm).unwrap();
        let ui = a.unit_index();
        let x1 = F2Vec::unit(t.dim(), idx.pair_index(xi, ui).unwrap()); // x⊗1
        let x2 = F2Vec::unit(t.dim(), idx.pair_index(ui, xi).unwrap()); // 1⊗x
        // (x⊗1)(1⊗x) = x⊗x
        let xx = F2Vec::unit(t.dim(), idx.pair_index(xi, xi).unwrap());
        assert_eq!(t.mul(&x1, &x2), xx);
        // (1⊗x)(x⊗1) = x⊗x + w⊗w
        let mut expected = xx.clone();
        expected.flip(idx.pair_index(wi, wi).unwrap());
        assert_eq!(t.mul(&x2, &x1), expected);
        // The twisted square still satisfies the commutativity law.
        assert!(t.verify_commutativity().passed());
        assert!(t.verify_algebra_laws().passed());
    }

    #[test]
    fn twisted_tensor_unit_and_aug() {
        let a = LocalAlgebra::free_commutative(1, 1, 3);
        let (t, idx) = a.twisted_tensor(&a);
        let one = F2Vec::unit(t.dim(), idx.pair_index(a.unit_index(), a.unit_index()).unwrap());
        assert_eq!(one, t.one());
        assert!(t.verify_algebra_laws().passed());
    }

    #[test]
    fn quotient_with_d_closure_collapses_kx_mod_x() {
        // The d-stable ideal generated by x contains w = dx, so the quotient
        // of the free algebra on one paired generator by (x) is the unit.
        let a = LocalAlgebra::free_commutative(0, 1, 3);
        let q = a.quotient(&[a.gen_x(0)]).unwrap();
        assert_eq!(q.algebra.dim(), 1);
        assert!(q.projection.mul_vec(&a.gen_x(0)).is_zero());
        assert!(q.projection.mul_vec(&a.one()).get(0));
    }

    #[test]
    fn quotient_without_closure_is_rejected() {
        // The plain span of x·basis is not d-stable; the validator refuses it
        // rather than producing a quotient without a differential.
        let a = LocalAlgebra::free_commutative(0, 1, 3);
        let dim = a.dim();
        let mut span = Echelon::new(dim);
        let x = a.gen_x(0);
        for b in 0..dim {
            span.insert(a.mul_basis_vec(b, &x));
        }
        let err = a.quotient_by_ideal(&span).unwrap_err();
        assert!(matches!(err, Error::IdealNotDifferentialStable));
    }

    #[test]
    fn quotient_by_nothing_is_identity() {
        let a = LocalAlgebra::free_commutative(1, 1, 3);
        let q = a.quotient(&[]).unwrap().algebra;
        assert_eq!(q.dim(), a.dim());
        assert!(q.verify_commutativity().passed());
    }

    #[test]
    fn quotient_by_unit_fails() {
        let a = LocalAlgebra::free_commutative(1, 0, 3);
        assert!(matches!(a.quotient(&[a.one()]), Err(Error::InconsistentPresentation)));
    }

    #[test]
    fn underlying_commutative_of_free_is_polynomial() {
        let a = LocalAlgebra::free_commutative(0, 1, 4);
        let u = a.underlying_commutative().algebra;
        // k[x]/(x⁴): basis 1, x, x², x³.
        assert_eq!(u.dim(), 4);
        for i in 0..u.dim() {
            assert!(u.d_basis(i).is_zero());
            for j in 0..u.dim() {
                assert_eq!(u.mul_basis(i, j), u.mul_basis(j, i));
            }
        }
    }

    #[test]
    fn underlying_commutative_of_plain_ring_is_itself() {
        let a = LocalAlgebra::free_commutative(2, 0, 3);
        let u = a.underlying_commutative().algebra;
        assert_eq!(u.dim(), a.dim());
    }

    #[test]
    fn underlying_commutative_of_twisted_tensor() {
        let a = LocalAlgebra::free_commutative(0, 1, 3);
        let (t, _) = a.twisted_tensor(&a);
        let u = t.underlying_commutative().algebra;
        for i in 0..u.dim() {
            for j in 0..u.dim() {
                assert_eq!(u.mul_basis(i, j), u.mul_basis(j, i), "ordinary commutativity");
            }
        }
    }

    #[test]
    fn end_algebra_of_projective() {
        use crate::object::Ver4Object;
        let p = Ver4Object::projective();
        let e = AssocAlgebra::end_of(&p);
        assert_eq!(e.dim(), 4);
        for i in 0..4 {
            assert!(e.d(&e.diff[i]).is_zero());
        }
        for i in 0..4 {
            assert_eq!(e.mul(&e.unit, &F2Vec::unit(4, i)), F2Vec::unit(4, i));
            assert_eq!(e.mul(&F2Vec::unit(4, i), &e.unit), F2Vec::unit(4, i));
        }
    }
}
