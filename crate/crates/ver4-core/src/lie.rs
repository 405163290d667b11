//! Restricted Lie algebras: bracket structure constants, the partial square
//! operation on the kernel of the differential, the axiom verifiers, and the
//! constructions from group schemes and from associative algebras.

use crate::algebra::AssocAlgebra;
use crate::dist::DistAlgebra;
use crate::error::Error;
use crate::f2::{BitMatrix, Echelon, F2Vec};
use crate::hopf::HopfData;
use crate::report::Report;
use crate::tangent::{tangent_labels, tangent_slots};

/// Exhaustive-sweep bound: axioms quantified over all F2 combinations are
/// checked exhaustively when the relevant dimension is at most this.
const SWEEP_BOUND: usize = 10;

/// A finite-dimensional Lie algebra with differential and a square operation
/// defined on a chosen basis of `ker d`.
#[derive(Clone, Debug)]
pub struct RestrictedLie {
    labels: Vec<String>,
    /// Columns are the images of the basis under `d`.
    diff: BitMatrix,
    bracket: Vec<Vec<F2Vec>>,
    ker_basis: Vec<F2Vec>,
    squares: Vec<F2Vec>,
}

impl RestrictedLie {
    pub fn from_parts(
        labels: Vec<String>,
        diff: BitMatrix,
        bracket: Vec<Vec<F2Vec>>,
        ker_basis: Vec<F2Vec>,
        squares: Vec<F2Vec>,
    ) -> Self {
        assert_eq!(ker_basis.len(), squares.len());
        RestrictedLie { labels, diff, bracket, ker_basis, squares }
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

    pub fn d(&self, v: &F2Vec) -> F2Vec {
        self.diff.mul_vec(v)
    }

    pub fn ker_basis(&self) -> &[F2Vec] {
        &self.ker_basis
    }

    pub fn square_of_ker_basis(&self, k: usize) -> &F2Vec {
        &self.squares[k]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &F2Vec {
        &self.bracket[i][j]
    }

    pub fn bracket(&self, x: &F2Vec, y: &F2Vec) -> F2Vec {
        let mut out = F2Vec::zeros(self.dim());
        for i in x.ones() {
            for j in y.ones() {
                out.xor_assign(&self.bracket[i][j]);
            }
        }
        out
    }

    /// The square of a d-closed element, extended from the kernel basis by
    /// `(x+y)^[2] = x^[2] + y^[2] + [x,y]`. Querying an element outside
    /// `ker d` is an error.
    pub fn square(&self, x: &F2Vec) -> Result<F2Vec, Error> {
        if !self.d(x).is_zero() {
            return Err(Error::NotInKernel);
        }
        let cols = BitMatrix::from_columns(&self.ker_basis, self.dim());
        let coords = cols.solve(x)?.ok_or(Error::NotInKernel)?;
        let mut out = F2Vec::zeros(self.dim());
        let on: Vec<usize> = coords.ones().collect();
        for &i in &on {
            out.xor_assign(&self.squares[i]);
        }
        for (a, &i) in on.iter().enumerate() {
            for &j in &on[a + 1..] {
                out.xor_assign(&self.bracket(&self.ker_basis[i], &self.ker_basis[j]));
            }
        }
        Ok(out)
    }

    pub fn render(&self, v: &F2Vec) -> String {
        let terms: Vec<&str> = v.ones().map(|i| self.labels[i].as_str()).collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    /// Fault-injection hook: toggles one bracket structure constant.
    pub fn flip_bracket_entry(&mut self, i: usize, j: usize, k: usize) {
        self.bracket[i][j].flip(k);
    }

    /// Fault-injection hook: toggles one coefficient of a stored square.
    pub fn flip_square_entry(&mut self, k: usize, row: usize) {
        self.squares[k].flip(row);
    }

    /// All F2 combinations of the kernel basis (including zero), when small
    /// enough to sweep; otherwise just the basis itself.
    fn ker_sweep(&self) -> Vec<F2Vec> {
        let k = self.ker_basis.len();
        if k <= SWEEP_BOUND {
            (0u32..(1 << k))
                .map(|mask| {
                    let mut v = F2Vec::zeros(self.dim());
                    for (i, kb) in self.ker_basis.iter().enumerate() {
                        if (mask >> i) & 1 == 1 {
                            v.xor_assign(kb);
                        }
                    }
                    v
                })
                .collect()
        } else {
            self.ker_basis.clone()
        }
    }

    /// Axioms of a Lie algebra with differential:
    /// `d[x,y] = [dx,y] + [x,dy]`, `[y,x] = [x,y] + [dx,dy]`, the Jacobi
    /// identity with its differential corrections, `[x,x] = 0` on `ker d`,
    /// plus the derived facts `[dx,dx] = 0`, `[x,dy] = [dy,x]` and the
    /// adjoint form of Jacobi.
    pub fn verify_lie_axioms(&self) -> Report {
        let dim = self.dim();
        let mut report = Report::new("lie-axioms");
        let unit = |i: usize| F2Vec::unit(dim, i);

        let ax1 = (0..dim).find_map(|i| {
            (0..dim).find_map(|j| {
                let lhs = self.d(&self.bracket[i][j]);
                let mut rhs = self.bracket(&self.diff.column(i), &unit(j));
                rhs.xor_assign(&self.bracket(&unit(i), &self.diff.column(j)));
                (lhs != rhs).then(|| {
                    format!("d[x,y] ≠ [dx,y] + [x,dy] at ({}, {})", self.labels[i], self.labels[j])
                })
            })
        });
        report.record("d-compatibility", ax1);

        let ax2 = (0..dim).find_map(|i| {
            (0..dim).find_map(|j| {
                let lhs = &self.bracket[j][i];
                let mut rhs = self.bracket[i][j].clone();
                rhs.xor_assign(&self.bracket(&self.diff.column(i), &self.diff.column(j)));
                (*lhs != rhs).then(|| {
                    format!(
                        "[y,x] ≠ [x,y] + [dx,dy] at ({}, {})",
                        self.labels[i], self.labels[j]
                    )
                })
            })
        });
        report.record("twisted-antisymmetry", ax2);

        let ax3 = (0..dim).find_map(|i| {
            (0..dim).find_map(|j| {
                (0..dim).find_map(|k| {
                    let (x, y, z) = (unit(i), unit(j), unit(k));
                    let (dx, dy, dz) =
                        (self.diff.column(i), self.diff.column(j), self.diff.column(k));
                    let mut lhs = self.bracket(&x, &self.bracket(&y, &z));
                    lhs.xor_assign(&self.bracket(&y, &self.bracket(&z, &x)));
                    lhs.xor_assign(&self.bracket(&z, &self.bracket(&x, &y)));
                    let mut rhs = self.bracket(&dx, &self.bracket(&y, &dz));
                    rhs.xor_assign(&self.bracket(&dy, &self.bracket(&z, &dx)));
                    rhs.xor_assign(&self.bracket(&dz, &self.bracket(&x, &dy)));
                    (lhs != rhs).then(|| {
                        format!(
                            "Jacobi identity fails at ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )
                    })
                })
            })
        });
        report.record("jacobi", ax3);

        let ax4 = self.ker_sweep().into_iter().find_map(|x| {
            (!self.bracket(&x, &x).is_zero())
                .then(|| format!("[x,x] ≠ 0 for d-closed x = {}", self.render(&x)))
        });
        report.record("self-bracket-on-kernel", ax4);

        let derived = (0..dim).find_map(|i| {
            let dx = self.diff.column(i);
            if !self.bracket(&dx, &dx).is_zero() {
                return Some(format!("[dx,dx] ≠ 0 at {}", self.labels[i]));
            }
            (0..dim).find_map(|j| {
                let dy = self.diff.column(j);
                let lhs = self.bracket(&unit(i), &dy);
                let rhs = self.bracket(&dy, &unit(i));
                (lhs != rhs)
                    .then(|| format!("[x,dy] ≠ [dy,x] at ({}, {})", self.labels[i], self.labels[j]))
            })
        });
        report.record("differential-brackets-symmetric", derived);

        let adjoint = (0..dim).find_map(|i| {
            (0..dim).find_map(|j| {
                (0..dim).find_map(|k| {
                    let (x, y, z) = (unit(i), unit(j), unit(k));
                    let (dx, dy) = (self.diff.column(i), self.diff.column(j));
                    let lhs = self.bracket(&self.bracket(&x, &y), &z);
                    let mut rhs = self.bracket(&x, &self.bracket(&y, &z));
                    rhs.xor_assign(&self.bracket(&y, &self.bracket(&x, &z)));
                    rhs.xor_assign(&self.bracket(&dy, &self.bracket(&dx, &z)));
                    (lhs != rhs).then(|| {
                        format!(
                            "adjoint form of Jacobi fails at ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )
                    })
                })
            })
        });
        report.record("adjoint-jacobi", adjoint);

        report
    }

    /// Axioms of the square operation: additivity `(x+y)^[2] = x^[2] + y^[2]
    /// + [x,y]` over the swept kernel, scalars from F2, `d(x^[2]) = 0`,
    /// `[x,x] = (dx)^[2]`, and `[x,[x,y]] = [x^[2],y]` for d-closed x.
    pub fn verify_restricted_axioms(&self) -> Report {
        let dim = self.dim();
        let mut report = Report::new("restricted-axioms");
        let sweep = self.ker_sweep();

        let additive = sweep.iter().find_map(|x| {
            sweep.iter().find_map(|y| {
                let mut sum = x.clone();
                sum.xor_assign(y);
                let lhs = self.square(&sum).expect("sums of d-closed elements are d-closed");
                let mut rhs = self.square(x).unwrap();
                rhs.xor_assign(&self.square(y).unwrap());
                rhs.xor_assign(&self.bracket(x, y));
                (lhs != rhs).then(|| {
                    format!(
                        "(x+y)^[2] ≠ x^[2] + y^[2] + [x,y] at x = {}, y = {}",
                        self.render(x),
                        self.render(y)
                    )
                })
            })
        });
        report.record("square-additivity", additive);

        // λ ∈ {0, 1}: zero scaling gives the zero square, identity scaling is
        // trivial.
        let scalar = {
            let zero = F2Vec::zeros(dim);
            (!self.square(&zero).unwrap().is_zero()).then(|| "0^[2] ≠ 0".to_string())
        };
        report.record("square-scalars", scalar);

        let closed = (0..self.ker_basis.len()).find_map(|k| {
            (!self.d(&self.squares[k]).is_zero())
                .then(|| format!("d(x^[2]) ≠ 0 at x = {}", self.render(&self.ker_basis[k])))
        });
        report.record("square-lands-in-kernel", closed);

        let self_bracket = (0..dim).find_map(|i| {
            let x = F2Vec::unit(dim, i);
            let dx = self.diff.column(i);
            let lhs = self.bracket(&x, &x);
            let rhs = self.square(&dx).expect("dx is d-closed");
            (lhs != rhs).then(|| format!("[x,x] ≠ (dx)^[2] at {}", self.labels[i]))
        });
        report.record("self-bracket-is-square-of-d", self_bracket);

        let adjoint_square = sweep.iter().find_map(|x| {
            let x_sq = self.square(x).unwrap();
            (0..dim).find_map(|j| {
                let y = F2Vec::unit(dim, j);
                let lhs = self.bracket(x, &self.bracket(x, &y));
                let rhs = self.bracket(&x_sq, &y);
                (lhs != rhs).then(|| {
                    format!(
                        "[x,[x,y]] ≠ [x^[2],y] at x = {}, y = {}",
                        self.render(x),
                        self.labels[j]
                    )
                })
            })
        });
        report.record("square-adjoint", adjoint_square);

        report
    }
}

/// The restricted Lie algebra of a group scheme: tangent functionals with the
/// distribution commutator as bracket and convolution squares on `ker d`.
///
/// Requires truncation at least 3 so that squares of order-1 functionals are
/// faithfully represented. The result lands in the order-1 layer; a violation
/// is reported as an error rather than projected away.
pub fn lie_of_group(h: &HopfData) -> Result<RestrictedLie, Error> {
    let lie = lie_of_group_unchecked(h)?;
    let lie_report = lie.verify_lie_axioms();
    if let Some(c) = lie_report.first_failure() {
        return Err(Error::StructureCheck(format!(
            "{}: {}",
            c.name,
            c.counterexample.clone().unwrap_or_default()
        )));
    }
    let restricted_report = lie.verify_restricted_axioms();
    if let Some(c) = restricted_report.first_failure() {
        return Err(Error::StructureCheck(format!(
            "{}: {}",
            c.name,
            c.counterexample.clone().unwrap_or_default()
        )));
    }
    Ok(lie)
}

/// As [`lie_of_group`], but returns the computed structure without running
/// the axiom suites, so that tables of axiom-violating inputs can still be
/// inspected.
pub fn lie_of_group_unchecked(h: &HopfData) -> Result<RestrictedLie, Error> {
    let alg = h.algebra();
    if alg.trunc() < 3 {
        return Err(Error::TruncationTooSmall {
            trunc: alg.trunc(),
            needed: "computing squares of tangent vectors needs truncation ≥ 3".into(),
        });
    }
    let dist = DistAlgebra::new(h, 2)?;
    let slots = tangent_slots(alg);
    let labels = tangent_labels(h);
    let t = slots.len();
    let slot_pos: std::collections::HashMap<usize, usize> =
        slots.iter().enumerate().map(|(k, &b)| (b, k)).collect();

    // A functional in the order-1 layer vanishing on the counit direction is
    // determined by its degree-one values; anything else is a hard error.
    let to_tangent = |phi: &F2Vec, what: &str| -> Result<F2Vec, Error> {
        let mut out = F2Vec::zeros(t);
        for b in phi.ones() {
            match slot_pos.get(&b) {
                Some(&k) => out.set(k, true),
                None => {
                    return Err(Error::StructureCheck(format!(
                        "{what} does not lie in the tangent layer: component dual({})",
                        alg.label(b)
                    )))
                }
            }
        }
        Ok(out)
    };
    let from_tangent = |v: &F2Vec| -> F2Vec {
        let mut out = F2Vec::zeros(alg.dim());
        for k in v.ones() {
            out.set(slots[k], true);
        }
        out
    };

    let mut diff = BitMatrix::zeros(t, t);
    for (col, &b) in slots.iter().enumerate() {
        let phi = F2Vec::unit(alg.dim(), b);
        let dphi = dist.d(&phi);
        let dt = to_tangent(&dphi, "differential of a tangent functional")?;
        for row in dt.ones() {
            diff.set(row, col, true);
        }
    }

    let mut bracket = vec![vec![F2Vec::zeros(t); t]; t];
    for (i, &bi) in slots.iter().enumerate() {
        for (j, &bj) in slots.iter().enumerate() {
            let beta = dist.beta(&F2Vec::unit(alg.dim(), bi), &F2Vec::unit(alg.dim(), bj));
            bracket[i][j] = to_tangent(&beta, "commutator of tangent functionals")?;
        }
    }

    let ker_basis = diff.kernel_basis();
    let mut squares = Vec::with_capacity(ker_basis.len());
    for k in &ker_basis {
        let phi = from_tangent(k);
        let sq = dist.convolve(&phi, &phi);
        squares.push(to_tangent(&sq, "square of a d-closed tangent functional")?);
    }

    Ok(RestrictedLie { labels, diff, bracket, ker_basis, squares })
}

/// The restricted Lie structure of an associative algebra with differential:
/// `[x,y] = xy + yx + dy·dx` and `x^[2] = x·x` on the kernel of `d`.
pub fn lie_from_associative(a: &AssocAlgebra) -> RestrictedLie {
    let dim = a.dim();
    let mut diff = BitMatrix::zeros(dim, dim);
    for (col, dcol) in a.diff.iter().enumerate() {
        for row in dcol.ones() {
            diff.set(row, col, true);
        }
    }
    let mut bracket = vec![vec![F2Vec::zeros(dim); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let (x, y) = (F2Vec::unit(dim, i), F2Vec::unit(dim, j));
            let mut b = a.mul(&x, &y);
            b.xor_assign(&a.mul(&y, &x));
            b.xor_assign(&a.mul(&a.d(&y), &a.d(&x)));
            bracket[i][j] = b;
        }
    }
    let ker_basis = diff.kernel_basis();
    let squares = ker_basis.iter().map(|k| a.mul(k, k)).collect();
    RestrictedLie { labels: a.labels.clone(), diff, bracket, ker_basis, squares }
}

/// The span of the symmetric-invariant tensors `x⊗y + y⊗x + dy⊗dx` and
/// `x⊗x` (for d-closed x) inside `L⊗L`, together with the structure map
/// values `[x,y]` and `x^[2]` on those spanning tensors.
pub struct Gamma2 {
    /// Reduced basis of the span, in `L⊗L` coordinates.
    pub basis: Vec<F2Vec>,
    /// The spanning tensors paired with their structure-map images.
    pub map_pairs: Vec<(F2Vec, F2Vec)>,
    /// Whether the structure map is linearly well-defined on the span.
    pub well_defined: bool,
}

pub fn gamma2_span(l: &RestrictedLie) -> Gamma2 {
    let dim = l.dim();
    let sq_dim = dim * dim;
    let idx = |a: usize, b: usize| a * dim + b;
    let mut map_pairs: Vec<(F2Vec, F2Vec)> = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let mut v = F2Vec::zeros(sq_dim);
            v.flip(idx(i, j));
            v.flip(idx(j, i));
            let (di, dj) = (l.diff.column(i), l.diff.column(j));
            for b in dj.ones() {
                for a in di.ones() {
                    v.flip(idx(b, a)); // dy⊗dx
                }
            }
            map_pairs.push((v, l.bracket[i][j].clone()));
        }
    }
    for k in 0..l.ker_basis.len() {
        let kb = &l.ker_basis[k];
        let mut v = F2Vec::zeros(sq_dim);
        for a in kb.ones() {
            for b in kb.ones() {
                v.flip(idx(a, b));
            }
        }
        map_pairs.push((v, l.squares[k].clone()));
    }
    let mut ech = Echelon::new(sq_dim);
    let mut basis = Vec::new();
    for (v, _) in &map_pairs {
        if ech.insert(v.clone()) {
            basis.push(v.clone());
        }
    }
    // Well-definedness: relations among the spanning tensors must also kill
    // the images, i.e. the graph rows have the same rank as the tensor rows.
    let mut graph = Echelon::new(sq_dim + dim);
    let mut graph_rank = 0;
    for (v, img) in &map_pairs {
        let mut row = F2Vec::zeros(sq_dim + dim);
        for b in v.ones() {
            row.set(b, true);
        }
        for b in img.ones() {
            row.set(sq_dim + b, true);
        }
        if graph.insert(row) {
            graph_rank += 1;
        }
    }
    let well_defined = graph_rank == ech.rank();
    Gamma2 { basis, map_pairs, well_defined }
}

/// Oracle for the invariant space: the kernel of `1 + s` on `L⊗L`, where `s`
/// is the braiding `a⊗b ↦ b⊗a + db⊗da`.
pub fn gamma2_invariants_oracle(l: &RestrictedLie) -> Vec<F2Vec> {
    let dim = l.dim();
    let sq_dim = dim * dim;
    let idx = |a: usize, b: usize| a * dim + b;
    let mut one_plus_s = BitMatrix::zeros(sq_dim, sq_dim);
    for i in 0..dim {
        let di = l.diff.column(i);
        for j in 0..dim {
            let col = idx(i, j);
            one_plus_s.flip(col, col);
            one_plus_s.flip(idx(j, i), col);
            for b in l.diff.column(j).ones() {
                for a in di.ones() {
                    one_plus_s.flip(idx(b, a), col);
                }
            }
        }
    }
    one_plus_s.kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{build_ga, build_gl, build_gm};
    use crate::object::Ver4Object;
    use crate::tangent::dual_numbers;

    #[test]
    fn additive_group_table() {
        let l = lie_of_group(&build_ga(4)).unwrap();
        assert_eq!(l.labels(), ["e", "f"]);
        for i in 0..2 {
            for j in 0..2 {
                assert!(l.bracket_basis(i, j).is_zero());
            }
        }
        // df = e, de = 0; e^[2] = 0; f has no square.
        assert_eq!(l.diff().column(1), F2Vec::unit(2, 0));
        assert!(l.diff().column(0).is_zero());
        let e = F2Vec::unit(2, 0);
        assert!(l.square(&e).unwrap().is_zero());
        let f = F2Vec::unit(2, 1);
        assert!(matches!(l.square(&f), Err(Error::NotInKernel)));
    }

    #[test]
    fn multiplicative_group_table() {
        // e^[2] = e forces [f,f] = (df)^[2] = e by the self-bracket axiom;
        // every other bracket vanishes. (This is the same Hopf algebra as
        // the 1×1 general linear family, which has the same table.)
        let l = lie_of_group(&build_gm(4)).unwrap();
        let e = F2Vec::unit(2, 0);
        assert_eq!(l.square(&e).unwrap(), e);
        assert_eq!(l.bracket_basis(1, 1), &e);
        assert!(l.bracket_basis(0, 0).is_zero());
        assert!(l.bracket_basis(0, 1).is_zero());
        assert!(l.bracket_basis(1, 0).is_zero());
    }

    #[test]
    fn lie_of_group_requires_truncation_three() {
        assert!(matches!(lie_of_group(&build_ga(2)), Err(Error::TruncationTooSmall { .. })));
    }

    #[test]
    fn lie_of_group_rejects_axiom_violations() {
        // The mixed general linear data violates the d-compatibility axiom,
        // so the checked constructor reports it instead of returning a table.
        let err = lie_of_group(&build_gl(1, 1, 4)).unwrap_err();
        assert!(matches!(err, Error::StructureCheck(_)));
        assert!(err.to_string().contains("d-compatibility"));
    }

    #[test]
    fn gl11_bracket_and_squares() {
        // [f,f] = e, e^[2] = e in the 1×1 general linear family.
        let l = lie_of_group(&build_gl(0, 1, 4)).unwrap();
        assert_eq!(l.labels(), ["e(1,1)", "f(1,1)"]);
        let e = F2Vec::unit(2, 0);
        assert_eq!(l.bracket_basis(1, 1), &e);
        assert!(l.bracket_basis(0, 0).is_zero());
        assert!(l.bracket_basis(0, 1).is_zero());
        assert!(l.bracket_basis(1, 0).is_zero());
        assert_eq!(l.square(&e).unwrap(), e);
        // Axiom (iv): [f,f] = (df)^[2].
        let df = l.diff().column(1);
        assert_eq!(l.square(&df).unwrap(), e);
    }

    #[test]
    fn axioms_pass_for_square_gl_families() {
        for (m, n) in [(0usize, 1usize), (0, 2)] {
            let l = lie_of_group(&build_gl(m, n, 4)).unwrap();
            assert!(l.verify_lie_axioms().passed());
            assert!(l.verify_restricted_axioms().passed());
        }
    }

    #[test]
    fn injected_bracket_fault_is_detected() {
        let mut l = lie_of_group(&build_gl(0, 1, 4)).unwrap();
        l.flip_bracket_entry(0, 1, 0);
        let report = l.verify_lie_axioms();
        assert!(!report.passed());
        assert!(report.first_failure().unwrap().counterexample.is_some());
    }

    #[test]
    fn injected_square_fault_is_detected() {
        let mut l = lie_of_group(&build_gm(4)).unwrap();
        l.flip_square_entry(0, 0);
        let report = l.verify_restricted_axioms();
        assert!(!report.passed());
    }

    #[test]
    fn abelian_lie_algebra_passes() {
        let dim = 3;
        let l = RestrictedLie::from_parts(
            vec!["a".into(), "b".into(), "c".into()],
            BitMatrix::zeros(dim, dim),
            vec![vec![F2Vec::zeros(dim); dim]; dim],
            (0..dim).map(|i| F2Vec::unit(dim, i)).collect(),
            vec![F2Vec::zeros(dim); dim],
        );
        assert!(l.verify_lie_axioms().passed());
        assert!(l.verify_restricted_axioms().passed());
    }

    #[test]
    fn matrix_algebra_bracket_is_commutator() {
        // A 2×2 matrix algebra with zero differential: the bracket reduces to
        // the ordinary commutator.
        let v = Ver4Object::canonical(2, 0);
        let a = AssocAlgebra::end_of(&v);
        let l = lie_from_associative(&a);
        for i in 0..4 {
            for j in 0..4 {
                let (x, y) = (F2Vec::unit(4, i), F2Vec::unit(4, j));
                let mut commutator = a.mul(&x, &y);
                commutator.xor_assign(&a.mul(&y, &x));
                assert_eq!(l.bracket_basis(i, j), &commutator);
            }
        }
        assert!(l.verify_lie_axioms().passed());
        assert!(l.verify_restricted_axioms().passed());
    }

    #[test]
    fn dual_numbers_bracket_vanishes() {
        let e = dual_numbers();
        let a = AssocAlgebra::from_local(&e);
        let l = lie_from_associative(&a);
        let eps = e.gen_x(0).first_one().unwrap();
        let deps = e.gen_w(0).first_one().unwrap();
        assert!(l.bracket_basis(eps, deps).is_zero());
        assert!(l.bracket_basis(deps, eps).is_zero());
    }

    #[test]
    fn end_algebras_satisfy_restricted_axioms() {
        for v in [Ver4Object::projective(), Ver4Object::canonical(1, 1)] {
            let a = AssocAlgebra::end_of(&v);
            let l = lie_from_associative(&a);
            let lie_report = l.verify_lie_axioms();
            assert!(lie_report.passed(), "{}", lie_report.summary());
            let restricted = l.verify_restricted_axioms();
            assert!(restricted.passed(), "{}", restricted.summary());
        }
    }

    #[test]
    fn gamma2_of_projective_matches_invariants() {
        // L = P with the zero bracket: the span equals the kernel of 1 + s,
        // which is 2-dimensional.
        let l = RestrictedLie::from_parts(
            vec!["x".into(), "w".into()],
            {
                let mut d = BitMatrix::zeros(2, 2);
                d.set(1, 0, true);
                d
            },
            vec![vec![F2Vec::zeros(2); 2]; 2],
            vec![F2Vec::unit(2, 1)],
            vec![F2Vec::zeros(2)],
        );
        let gamma = gamma2_span(&l);
        assert!(gamma.well_defined);
        assert_eq!(gamma.basis.len(), 2);
        let oracle = gamma2_invariants_oracle(&l);
        assert_eq!(oracle.len(), 2);
        let span = Echelon::from_spanning(4, &gamma.basis);
        for v in &oracle {
            assert!(span.contains(v));
        }
    }

    #[test]
    fn gamma2_square_component_of_additive_group() {
        // e⊗e is in the span and maps to e^[2] = 0.
        let l = lie_of_group(&build_ga(4)).unwrap();
        let gamma = gamma2_span(&l);
        assert!(gamma.well_defined);
        let e_e = {
            let mut v = F2Vec::zeros(4);
            v.flip(0); // e⊗e at index 0·2+0
            v
        };
        let span = Echelon::from_spanning(4, &gamma.basis);
        assert!(span.contains(&e_e));
        // The pair (e⊗e, e^[2]) is recorded with zero image.
        let pair = gamma.map_pairs.iter().find(|(v, _)| *v == e_e).unwrap();
        assert!(pair.1.is_zero());
    }

    #[test]
    fn gamma2_self_tensor_of_closed_vector_maps_to_self_bracket() {
        // x⊗y + y⊗x + dy⊗dx with x = y and dx = 0 collapses to zero and maps
        // to [x,x] = 0.
        let l = lie_of_group(&build_gm(4)).unwrap();
        let gamma = gamma2_span(&l);
        let zero_pairs: Vec<_> =
            gamma.map_pairs.iter().filter(|(v, _)| v.is_zero()).collect();
        for (_, img) in zero_pairs {
            assert!(img.is_zero());
        }
    }
}
