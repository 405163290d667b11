//! Finite-dimensional spaces with a square-zero differential, their tensor
//! products, the symmetric braiding `s(v ⊗ v') = v' ⊗ v + dv' ⊗ dv`, and duals.

use crate::error::Error;
use crate::f2::{BitMatrix, Echelon, F2Vec};

/// An object `(V, d)` with `d² = 0`, over F2.
///
/// The canonical object with `m` trivial summands and `n` projective
/// summands has basis `x1..x_{m+n}, w1..w_n` with `d(x_i) = w_i` for
/// `i ≤ n` and everything else killed by `d`.
#[derive(Clone, Debug)]
pub struct Ver4Object {
    labels: Vec<String>,
    /// Columns are the images of the basis vectors under `d`.
    diff: BitMatrix,
}

impl Ver4Object {
    /// The canonical object `V_{m+n|n}`.
    pub fn canonical(m: usize, n: usize) -> Self {
        let dim = m + 2 * n;
        let mut diff = BitMatrix::zeros(dim, dim);
        let mut labels = Vec::with_capacity(dim);
        for i in 0..m + n {
            labels.push(format!("x{}", i + 1));
        }
        for i in 0..n {
            labels.push(format!("w{}", i + 1));
        }
        for i in 0..n {
            diff.set(m + n + i, i, true); // d(x_i) = w_i
        }
        Ver4Object { labels, diff }
    }

    pub fn unit() -> Self {
        Self::canonical(1, 0)
    }

    pub fn projective() -> Self {
        Self::canonical(0, 1)
    }

    pub fn from_parts(labels: Vec<String>, diff: BitMatrix) -> Result<Self, Error> {
        if diff.rows() != labels.len() || diff.cols() != labels.len() {
            return Err(Error::DimensionMismatch { expected: labels.len(), got: diff.rows() });
        }
        if !diff.mul(&diff).is_zero() {
            return Err(Error::StructureCheck("differential does not square to zero".into()));
        }
        Ok(Ver4Object { labels, diff })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn diff(&self) -> &BitMatrix {
        &self.diff
    }

    pub fn d_of_basis(&self, i: usize) -> F2Vec {
        self.diff.column(i)
    }

    pub fn rank_d(&self) -> usize {
        self.diff.rank()
    }

    /// Number of projective summands.
    pub fn p_count(&self) -> usize {
        self.rank_d()
    }

    /// Number of trivial summands.
    pub fn k_count(&self) -> usize {
        self.dim() - 2 * self.rank_d()
    }

    /// Tensor product `(V ⊗ V', d ⊗ 1 + 1 ⊗ d')` with the product basis
    /// ordered row-major in the left factor.
    pub fn tensor(&self, other: &Ver4Object) -> Ver4Object {
        let (da, db) = (self.dim(), other.dim());
        let dim = da * db;
        let mut labels = Vec::with_capacity(dim);
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("{a}⊗{b}"));
            }
        }
        let mut diff = BitMatrix::zeros(dim, dim);
        for i in 0..da {
            let di = self.diff.column(i);
            for j in 0..db {
                let col = i * db + j;
                for i2 in di.ones() {
                    diff.flip(i2 * db + j, col);
                }
                for j2 in other.diff.column(j).ones() {
                    diff.flip(i * db + j2, col);
                }
            }
        }
        Ver4Object { labels, diff }
    }

    /// Index of the product basis vector `e_i ⊗ e_j` inside `self ⊗ other`.
    pub fn pair_index(&self, other: &Ver4Object, i: usize, j: usize) -> usize {
        let _ = self;
        i * other.dim() + j
    }

    /// The linear dual, with the transposed differential, together with the
    /// evaluation morphism `V* ⊗ V → 1`.
    pub fn dual(&self) -> (Ver4Object, Ver4Map) {
        let labels = self.labels.iter().map(|l| format!("{l}*")).collect();
        let dual = Ver4Object { labels, diff: self.diff.transpose() };
        let product = dual.tensor(self);
        let n = self.dim();
        let mut matrix = BitMatrix::zeros(1, n * n);
        for i in 0..n {
            matrix.set(0, i * n + i, true);
        }
        let eval = Ver4Map::new(product, Ver4Object::unit(), matrix)
            .expect("evaluation commutes with the differential");
        (dual, eval)
    }

    /// Splits `(V, d)` into canonical form: returns `(m, n)` together with an
    /// isomorphism onto `V_{m+n|n}` commuting with the differentials.
    pub fn decompose(&self) -> Decomposition {
        let dim = self.dim();
        let n = self.rank_d();
        let m = dim - 2 * n;
        // Image of d: pick the w-part basis.
        let mut image = Echelon::new(dim);
        let mut w_vecs: Vec<F2Vec> = Vec::new();
        let mut x_vecs: Vec<F2Vec> = Vec::new();
        for i in 0..dim {
            let col = self.diff.column(i);
            if image.insert(col.clone()) {
                w_vecs.push(col);
                x_vecs.push(F2Vec::unit(dim, i));
            }
        }
        // Complete im(d) to a basis of ker(d) by free summands.
        let kernel = self.diff.kernel_basis();
        let mut ker_ext = image.clone();
        let mut k_vecs: Vec<F2Vec> = Vec::new();
        for v in kernel {
            if ker_ext.insert(v.clone()) {
                k_vecs.push(v);
            }
        }
        debug_assert_eq!(k_vecs.len(), m);
        // New basis in canonical order: paired x's, free x's, then w's.
        let mut columns = Vec::with_capacity(dim);
        columns.extend(x_vecs);
        columns.extend(k_vecs);
        columns.extend(w_vecs);
        let change = BitMatrix::from_columns(&columns, dim);
        let to_canonical = change.inverse().expect("decomposition basis is invertible");
        let canonical = Ver4Object::canonical(m, n);
        let iso = Ver4Map::new(self.clone(), canonical, to_canonical)
            .expect("canonical change of basis commutes with d");
        Decomposition { m, n, iso }
    }
}

/// Result of splitting an object into trivial and projective summands.
pub struct Decomposition {
    pub m: usize,
    pub n: usize,
    pub iso: Ver4Map,
}

/// A morphism of objects: a matrix commuting with the differentials.
#[derive(Clone, Debug)]
pub struct Ver4Map {
    source: Ver4Object,
    target: Ver4Object,
    matrix: BitMatrix,
}

impl Ver4Map {
    pub fn new(source: Ver4Object, target: Ver4Object, matrix: BitMatrix) -> Result<Self, Error> {
        if matrix.cols() != source.dim() || matrix.rows() != target.dim() {
            return Err(Error::DimensionMismatch { expected: source.dim(), got: matrix.cols() });
        }
        let lhs = matrix.mul(&source.diff);
        let rhs = target.diff.mul(&matrix);
        if lhs != rhs {
            return Err(Error::StructureCheck("matrix does not commute with the differentials".into()));
        }
        Ok(Ver4Map { source, target, matrix })
    }

    pub fn identity(obj: &Ver4Object) -> Self {
        Ver4Map {
            source: obj.clone(),
            target: obj.clone(),
            matrix: BitMatrix::identity(obj.dim()),
        }
    }

    pub fn source(&self) -> &Ver4Object {
        &self.source
    }

    pub fn target(&self) -> &Ver4Object {
        &self.target
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &F2Vec) -> F2Vec {
        self.matrix.mul_vec(v)
    }

    /// Composition `self ∘ earlier`.
    pub fn compose(&self, earlier: &Ver4Map) -> Ver4Map {
        assert_eq!(earlier.target.dim(), self.source.dim());
        Ver4Map {
            source: earlier.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&earlier.matrix),
        }
    }

    /// Tensor product of morphisms on the product bases.
    pub fn tensor(&self, other: &Ver4Map) -> Ver4Map {
        let source = self.source.tensor(&other.source);
        let target = self.target.tensor(&other.target);
        let (tb, ob) = (self.target.dim(), other.target.dim());
        let mut matrix = BitMatrix::zeros(target.dim(), source.dim());
        for i in 0..self.source.dim() {
            let ci = self.matrix.column(i);
            for j in 0..other.source.dim() {
                let cj = other.matrix.column(j);
                let col = i * other.source.dim() + j;
                for a in ci.ones() {
                    for b in cj.ones() {
                        let _ = tb;
                        matrix.flip(a * ob + b, col);
                    }
                }
            }
        }
        Ver4Map { source, target, matrix }
    }
}

/// The braiding `s: A ⊗ B → B ⊗ A`, `v ⊗ v' ↦ v' ⊗ v + dv' ⊗ dv`.
pub fn braiding(a: &Ver4Object, b: &Ver4Object) -> Ver4Map {
    let source = a.tensor(b);
    let target = b.tensor(a);
    let (da, db) = (a.dim(), b.dim());
    let mut matrix = BitMatrix::zeros(da * db, da * db);
    for i in 0..da {
        let di = a.diff.column(i);
        for j in 0..db {
            let col = i * db + j;
            matrix.flip(j * da + i, col);
            for j2 in b.diff.column(j).ones() {
                for i2 in di.ones() {
                    matrix.flip(j2 * da + i2, col);
                }
            }
        }
    }
    Ver4Map::new(source, target, matrix).expect("braiding is a morphism")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_shapes() {
        let unit = Ver4Object::canonical(1, 0);
        assert_eq!(unit.dim(), 1);
        assert!(unit.diff().is_zero());

        let p = Ver4Object::canonical(0, 1);
        assert_eq!(p.dim(), 2);
        assert_eq!(p.d_of_basis(0), F2Vec::unit(2, 1));
        assert!(p.d_of_basis(1).is_zero());

        let v = Ver4Object::canonical(2, 3);
        assert_eq!(v.dim(), 8);
        assert_eq!(v.rank_d(), 3);
    }

    #[test]
    fn differential_squares_to_zero() {
        for (m, n) in [(0, 1), (1, 1), (2, 3), (3, 2)] {
            let v = Ver4Object::canonical(m, n);
            assert!(v.diff().mul(v.diff()).is_zero());
        }
    }

    #[test]
    fn morphism_constructor_rejects_non_chain_maps() {
        let p = Ver4Object::projective();
        // x ↦ w, w ↦ 0 commutes with d only if d(x ↦ w image)... the map
        // sending x ↦ x, w ↦ 0 does not commute with d.
        let mut bad = BitMatrix::zeros(2, 2);
        bad.set(0, 0, true);
        assert!(Ver4Map::new(p.clone(), p.clone(), bad).is_err());
        let good = BitMatrix::identity(2);
        assert!(Ver4Map::new(p.clone(), p, good).is_ok());
    }

    #[test]
    fn tensor_unit_is_projective() {
        let unit = Ver4Object::unit();
        let p = Ver4Object::projective();
        let up = unit.tensor(&p);
        let d = up.decompose();
        assert_eq!((d.m, d.n), (0, 1));
    }

    #[test]
    fn tensor_p_p_rank() {
        // Hand computation: d(x⊗x) = w⊗x + x⊗w, d(x⊗w) = w⊗w = d(w⊗x),
        // giving rank 2 on the 4-dimensional product.
        let p = Ver4Object::projective();
        let pp = p.tensor(&p);
        assert_eq!(pp.dim(), 4);
        assert_eq!(pp.rank_d(), 2);
        let d = pp.decompose();
        assert_eq!((d.m, d.n), (0, 2));
    }

    #[test]
    fn tensor_dimension_multiplies() {
        let v = Ver4Object::canonical(1, 1);
        assert_eq!(v.tensor(&v).dim(), 9);
    }

    #[test]
    fn braiding_on_unit_is_identity() {
        let unit = Ver4Object::unit();
        let s = braiding(&unit, &unit);
        assert_eq!(s.matrix(), BitMatrix::identity(1).inverse().as_ref().unwrap());
    }

    #[test]
    fn braiding_on_p_hits_w_tensor_w() {
        // s(x⊗x) = x⊗x + w⊗w.
        let p = Ver4Object::projective();
        let s = braiding(&p, &p);
        let x_x = F2Vec::unit(4, 0);
        let image = s.apply(&x_x);
        let expected = F2Vec::from_ones(4, &[0, 3]);
        assert_eq!(image, expected);
    }

    #[test]
    fn braiding_squares_to_identity() {
        for (m, n) in [(1, 0), (0, 1), (1, 1), (2, 1)] {
            for (m2, n2) in [(1, 0), (0, 1), (1, 1), (2, 1)] {
                let a = Ver4Object::canonical(m, n);
                let b = Ver4Object::canonical(m2, n2);
                let s_ab = braiding(&a, &b);
                let s_ba = braiding(&b, &a);
                let round = s_ba.compose(&s_ab);
                assert_eq!(round.matrix(), &BitMatrix::identity(a.dim() * b.dim()));
            }
        }
    }

    #[test]
    fn braiding_squares_to_identity_v32() {
        let objs = [Ver4Object::canonical(1, 0), Ver4Object::projective(), Ver4Object::canonical(1, 1), Ver4Object::canonical(1, 2)];
        for a in &objs {
            for b in &objs {
                let round = braiding(b, a).compose(&braiding(a, b));
                assert_eq!(round.matrix(), &BitMatrix::identity(a.dim() * b.dim()));
            }
        }
    }

    fn all_morphisms(a: &Ver4Object, b: &Ver4Object) -> Vec<Ver4Map> {
        // Exhaustive enumeration of matrices commuting with d; only sensible
        // for very small objects.
        let (rows, cols) = (b.dim(), a.dim());
        let bits = rows * cols;
        assert!(bits <= 9);
        let mut out = Vec::new();
        for mask in 0..(1u32 << bits) {
            let m = BitMatrix::from_fn(rows, cols, |i, j| (mask >> (i * cols + j)) & 1 == 1);
            if let Ok(f) = Ver4Map::new(a.clone(), b.clone(), m) {
                out.push(f);
            }
        }
        out
    }

    #[test]
    fn braiding_naturality() {
        // (g⊗f) ∘ s_{A,B} = s_{A',B'} ∘ (f⊗g) for every morphism between the
        // small canonical objects, enumerated exhaustively.
        let objs = [Ver4Object::unit(), Ver4Object::projective(), Ver4Object::canonical(1, 1)];
        for a in &objs {
            for a2 in &objs {
                let fs = all_morphisms(a, a2);
                for b in &objs {
                    for b2 in &objs {
                        let gs = all_morphisms(b, b2);
                        for f in &fs {
                            for g in &gs {
                                let lhs = g.tensor(f).compose(&braiding(a, b));
                                let rhs = braiding(a2, b2).compose(&f.tensor(g));
                                assert_eq!(lhs.matrix(), rhs.matrix());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hexagon_identity() {
        // s_{A⊗B,C} = (s_{A,C} ⊗ 1) ∘ (1 ⊗ s_{B,C}) on concrete bases.
        let objs = [Ver4Object::unit(), Ver4Object::projective(), Ver4Object::canonical(1, 1)];
        for a in &objs {
            for b in &objs {
                for c in &objs {
                    let ab = a.tensor(b);
                    let lhs = braiding(&ab, c);
                    let rhs = braiding(a, c)
                        .tensor(&Ver4Map::identity(b))
                        .compose(&Ver4Map::identity(a).tensor(&braiding(b, c)));
                    assert_eq!(lhs.matrix(), rhs.matrix());
                }
            }
        }
    }

    #[test]
    fn dual_of_p_is_p() {
        let p = Ver4Object::projective();
        let (dual, eval) = p.dual();
        assert_eq!(dual.rank_d(), 1);
        let d = dual.decompose();
        assert_eq!((d.m, d.n), (0, 1));
        // Explicit isomorphism x ↦ w*, w ↦ x* commutes with d.
        let mut iso = BitMatrix::zeros(2, 2);
        iso.set(1, 0, true);
        iso.set(0, 1, true);
        assert!(Ver4Map::new(p.clone(), dual, iso).is_ok());
        // Evaluation really is the dual pairing.
        let phi_x = F2Vec::unit(4, 0); // x* ⊗ x
        assert_eq!(eval.apply(&phi_x), F2Vec::unit(1, 0));
    }

    #[test]
    fn dual_preserves_counts() {
        let v = Ver4Object::canonical(1, 1);
        let (dual, _) = v.dual();
        assert_eq!(dual.rank_d(), v.rank_d());
        assert_eq!(dual.dim(), v.dim());
        let d = dual.decompose();
        assert_eq!((d.m, d.n), (1, 1));
    }

    #[test]
    fn unit_dual_is_unit() {
        let (dual, _) = Ver4Object::unit().dual();
        assert_eq!(dual.dim(), 1);
        assert!(dual.diff().is_zero());
    }
}
