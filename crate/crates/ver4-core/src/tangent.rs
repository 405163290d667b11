//! Tangent spaces at the identity via the dual numbers
//! `ℰ = k[ε, dε]/(ε², ε·dε, (dε)²)`: a tangent vector is a functional `f'`
//! vanishing on the unit and on `𝔪²` that is a derivation over the counit,
//! and `a ↦ η(a) + f'(da)·ε + f'(a)·dε` is the corresponding algebra map
//! into `ℰ`.

use rayon::prelude::*;

use crate::algebra::LocalAlgebra;
use crate::error::Error;
use crate::f2::{BitMatrix, F2Vec};
use crate::hopf::HopfData;
use crate::object::Ver4Object;

/// Exhaustive-enumeration bound for the tangent oracle.
pub const ORACLE_DIMENSION_BOUND: usize = 20;

/// The dual numbers, realised as the free algebra on one paired generator
/// truncated at degree 2: basis `{1, ε, dε}`.
pub fn dual_numbers() -> LocalAlgebra {
    LocalAlgebra::free_with_labels(&[("eps".into(), true)], &["deps".into()], 2)
}

/// A tangent functional on a truncated local algebra, stored on the full
/// basis so that it can feed the distribution machinery directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsDerivation {
    pub functional: F2Vec,
}

impl EpsDerivation {
    /// Validates the defining conditions: vanishing on the unit and on `𝔪²`,
    /// and the derivation rule `f'(ab) = f'(a)η(b) + η(a)f'(b)`.
    pub fn validate(&self, alg: &LocalAlgebra) -> Result<(), Error> {
        let f = &self.functional;
        if f.len() != alg.dim() {
            return Err(Error::DimensionMismatch { expected: alg.dim(), got: f.len() });
        }
        if f.get(alg.unit_index()) {
            return Err(Error::InvalidTangentFunctional("does not vanish on the unit".into()));
        }
        for b in 0..alg.dim() {
            if alg.deg(b) >= 2 && f.get(b) {
                return Err(Error::InvalidTangentFunctional(format!(
                    "does not vanish on 𝔪²: value 1 at {}",
                    alg.label(b)
                )));
            }
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = f.dot(alg.mul_basis(i, j));
                let rhs = (f.get(i) && alg.aug_functional().get(j))
                    ^ (alg.aug_functional().get(i) && f.get(j));
                if lhs != rhs {
                    return Err(Error::InvalidTangentFunctional(format!(
                        "derivation rule fails at ({}, {})",
                        alg.label(i),
                        alg.label(j)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Derives the tangent label for a degree-one basis element: generators named
/// `t…`/`x…` dualise to `e…`, generators named `w…` to `f…`.
pub fn tangent_label(label: &str) -> String {
    if let Some(rest) = label.strip_prefix('t') {
        format!("e{rest}")
    } else if let Some(rest) = label.strip_prefix('x') {
        format!("e{rest}")
    } else if let Some(rest) = label.strip_prefix('w') {
        format!("f{rest}")
    } else {
        format!("e[{label}]")
    }
}

/// Basis indices of the degree-one slice, with the generator duals ordered
/// x-like first and w-like second (so the e's precede the f's downstream).
pub fn tangent_slots(alg: &LocalAlgebra) -> Vec<usize> {
    let deg_one: Vec<usize> = (0..alg.dim()).filter(|&b| alg.deg(b) == 1).collect();
    match alg.free_structure() {
        None => deg_one,
        Some(f) => {
            let mut x_like = Vec::new();
            let mut w_like = Vec::new();
            for b in deg_one {
                if f.monomials[b].w_set.is_empty() {
                    x_like.push(b);
                } else {
                    w_like.push(b);
                }
            }
            x_like.extend(w_like);
            x_like
        }
    }
}

/// A basis of `(𝔪/𝔪²)*`, lifted to functionals on the full truncation that
/// vanish away from the degree-one slice.
pub fn tangent_basis(h: &HopfData) -> Vec<EpsDerivation> {
    let alg = h.algebra();
    assert!(alg.trunc() >= 2, "tangent computation needs truncation at least 2");
    tangent_slots(alg)
        .into_iter()
        .map(|b| EpsDerivation { functional: F2Vec::unit(alg.dim(), b) })
        .collect()
}

/// Labels for the tangent basis, in the same order as [`tangent_basis`].
pub fn tangent_labels(h: &HopfData) -> Vec<String> {
    let alg = h.algebra();
    tangent_slots(alg).into_iter().map(|b| tangent_label(alg.label(b))).collect()
}

/// The algebra map `O → ℰ` attached to a tangent functional, as a 3×dim
/// matrix over the basis `{1, ε, dε}` of the dual numbers.
pub fn hom_to_dual_numbers(alg: &LocalAlgebra, f: &EpsDerivation) -> Result<BitMatrix, Error> {
    f.validate(alg)?;
    Ok(build_hom(alg, &f.functional))
}

/// The candidate map `a ↦ η(a) + f'(da)ε + f'(a)dε` without validating `f'`.
fn build_hom(alg: &LocalAlgebra, functional: &F2Vec) -> BitMatrix {
    let eps = dual_numbers();
    let eps_idx = eps.gen_x(0).first_one().unwrap();
    let deps_idx = eps.gen_w(0).first_one().unwrap();
    let mut m = BitMatrix::zeros(3, alg.dim());
    for b in 0..alg.dim() {
        if alg.aug_functional().get(b) {
            m.set(eps.unit_index(), b, true);
        }
        if functional.dot(alg.d_basis(b)) {
            m.set(eps_idx, b, true);
        }
        if functional.get(b) {
            m.set(deps_idx, b, true);
        }
    }
    m
}

/// Checks that a 3×dim matrix into the dual numbers is an algebra map
/// commuting with the differential and compatible with the counits.
pub fn is_dual_numbers_hom(alg: &LocalAlgebra, m: &BitMatrix) -> bool {
    let eps = dual_numbers();
    if m.column(alg.unit_index()) != eps.one() {
        return false;
    }
    for b in 0..alg.dim() {
        if eps.aug(&m.column(b)) != alg.aug_functional().get(b) {
            return false;
        }
        if m.mul_vec(alg.d_basis(b)) != eps.d(&m.column(b)) {
            return false;
        }
    }
    for i in 0..alg.dim() {
        let fi = m.column(i);
        for j in 0..alg.dim() {
            let lhs = m.mul_vec(alg.mul_basis(i, j));
            let rhs = eps.mul(&fi, &m.column(j));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Brute-force oracle: enumerates every linear functional on `𝔪/𝔪²` over F2
/// and filters those whose induced map is an algebra homomorphism to the dual
/// numbers. Returns the functionals that pass, ordered by coefficient mask.
pub fn enumerate_tangent_oracle(h: &HopfData) -> Result<Vec<F2Vec>, Error> {
    let alg = h.algebra();
    let slots = tangent_slots(alg);
    let t = slots.len();
    if t > ORACLE_DIMENSION_BOUND {
        return Err(Error::OracleTooLarge(t, ORACLE_DIMENSION_BOUND));
    }
    let passing: Vec<F2Vec> = (0u64..(1u64 << t))
        .into_par_iter()
        .filter_map(|mask| {
            let mut f = F2Vec::zeros(alg.dim());
            for (k, &b) in slots.iter().enumerate() {
                if (mask >> k) & 1 == 1 {
                    f.set(b, true);
                }
            }
            let hom = build_hom(alg, &f);
            is_dual_numbers_hom(alg, &hom).then_some(f)
        })
        .collect();
    Ok(passing)
}

/// The tangent space as an object: the span of the tangent functionals with
/// the dual differential `(dφ)(a) = φ(da)`, together with its labels.
pub fn tangent_object(h: &HopfData) -> (Ver4Object, Vec<String>) {
    let alg = h.algebra();
    let basis = tangent_basis(h);
    let labels = tangent_labels(h);
    let slots = tangent_slots(alg);
    let t = basis.len();
    let mut diff = BitMatrix::zeros(t, t);
    for (col, phi) in basis.iter().enumerate() {
        for (row, &b) in slots.iter().enumerate() {
            if phi.functional.dot(alg.d_basis(b)) {
                diff.set(row, col, true);
            }
        }
    }
    let obj =
        Ver4Object::from_parts(labels.clone(), diff).expect("dual differential squares to zero");
    (obj, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{build_ga, build_gl, build_gm};

    #[test]
    fn dual_numbers_relations() {
        let e = dual_numbers();
        assert_eq!(e.dim(), 3);
        let eps = e.gen_x(0);
        let deps = e.gen_w(0);
        assert!(e.mul(&eps, &eps).is_zero());
        assert!(e.mul(&eps, &deps).is_zero());
        assert!(e.mul(&deps, &deps).is_zero());
        assert_eq!(e.d(&eps), deps);
        assert!(e.d(&deps).is_zero());
        assert!(e.aug(&e.one()));
        assert!(!e.aug(&eps));
        assert!(!e.aug(&deps));
        assert!(e.verify_commutativity().passed());
    }

    #[test]
    fn tangent_basis_counts() {
        assert_eq!(tangent_basis(&build_ga(4)).len(), 2);
        assert_eq!(tangent_basis(&build_gm(4)).len(), 2);
        // (m+n)² + n² functionals for the general linear family.
        assert_eq!(tangent_basis(&build_gl(1, 1, 3)).len(), 5);
        assert_eq!(tangent_basis(&build_gl(0, 2, 3)).len(), 8);
        assert_eq!(tangent_basis(&build_gl(2, 1, 3)).len(), 10);
    }

    #[test]
    fn tangent_basis_is_stable_in_truncation() {
        for n in 3..=5 {
            assert_eq!(tangent_basis(&build_gm(n)).len(), 2);
        }
    }

    #[test]
    fn hom_formula_on_additive_group() {
        // f' dual to x sends x to dε (since f'(w) = 0 kills the ε term).
        let h = build_ga(4);
        let alg = h.algebra();
        let f = EpsDerivation { functional: alg.gen_x(0) };
        let m = hom_to_dual_numbers(alg, &f).unwrap();
        let eps = dual_numbers();
        let x_idx = alg.gen_x(0).first_one().unwrap();
        assert_eq!(m.column(x_idx), eps.gen_w(0));
        // f' dual to w sends x to ε and w to dε.
        let fw = EpsDerivation { functional: alg.gen_w(0) };
        let mw = hom_to_dual_numbers(alg, &fw).unwrap();
        assert_eq!(mw.column(x_idx), eps.gen_x(0));
        let w_idx = alg.gen_w(0).first_one().unwrap();
        assert_eq!(mw.column(w_idx), eps.gen_w(0));
    }

    #[test]
    fn zero_functional_gives_counit_section() {
        let h = build_gm(3);
        let alg = h.algebra();
        let f = EpsDerivation { functional: F2Vec::zeros(alg.dim()) };
        let m = hom_to_dual_numbers(alg, &f).unwrap();
        let eps = dual_numbers();
        for b in 0..alg.dim() {
            let expected = if alg.aug_functional().get(b) { eps.one() } else { F2Vec::zeros(3) };
            assert_eq!(m.column(b), expected);
        }
    }

    #[test]
    fn homs_are_multiplicative() {
        for h in [build_ga(4), build_gm(4), build_gl(0, 1, 4)] {
            let alg = h.algebra();
            for f in tangent_basis(&h) {
                let m = hom_to_dual_numbers(alg, &f).unwrap();
                assert!(is_dual_numbers_hom(alg, &m));
            }
        }
    }

    #[test]
    fn invalid_functionals_are_rejected() {
        let h = build_ga(4);
        let alg = h.algebra();
        let f = EpsDerivation { functional: alg.one() };
        assert!(hom_to_dual_numbers(alg, &f).is_err());
        let x = alg.gen_x(0);
        let f2 = EpsDerivation { functional: alg.mul(&x, &x) };
        assert!(hom_to_dual_numbers(alg, &f2).is_err());
    }

    #[test]
    fn oracle_counts_match_two_to_the_dimension() {
        for (h, t) in [(build_ga(4), 2usize), (build_gm(4), 2), (build_gl(0, 1, 4), 2)] {
            let homs = enumerate_tangent_oracle(&h).unwrap();
            assert_eq!(homs.len(), 1 << t);
        }
    }

    #[test]
    fn oracle_rejects_oversized_problems() {
        // (m+n)² + n² = 40 > 20 for m = 4, n = 2.
        let h = build_gl(4, 2, 2);
        assert!(matches!(enumerate_tangent_oracle(&h), Err(Error::OracleTooLarge(40, _))));
    }

    #[test]
    fn tangent_object_of_additive_group_is_projective() {
        let (obj, labels) = tangent_object(&build_ga(4));
        assert_eq!(labels, ["e", "f"]);
        let d = obj.decompose();
        assert_eq!((d.m, d.n), (0, 1));
        // df = e, de = 0.
        assert!(obj.d_of_basis(0).is_zero());
        assert_eq!(obj.d_of_basis(1), F2Vec::unit(2, 0));
    }

    #[test]
    fn tangent_object_of_multiplicative_group_is_projective() {
        let (obj, _) = tangent_object(&build_gm(4));
        let d = obj.decompose();
        assert_eq!((d.m, d.n), (0, 1));
    }

    #[test]
    fn tangent_object_of_gl_families() {
        // (m+n)² - n² trivial summands and n² projective ones.
        for (m, n) in [(0usize, 1usize), (1, 1), (0, 2), (2, 1)] {
            let (obj, _) = tangent_object(&build_gl(m, n, 3));
            let d = obj.decompose();
            let size = m + n;
            assert_eq!(d.n, n * n, "GL({m},{n}) projective count");
            assert_eq!(d.m, size * size - n * n, "GL({m},{n}) trivial count");
        }
    }

    #[test]
    fn gl_tangent_labels() {
        let labels = tangent_labels(&build_gl(1, 1, 3));
        assert!(labels.contains(&"e(1,1)".to_string()));
        assert!(labels.contains(&"e(2,2)".to_string()));
        assert!(labels.contains(&"f(1,1)".to_string()));
    }
}
