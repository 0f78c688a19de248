//! Truncated current Lie algebras: `g ⊗ k[t]/t^{N+1}` over a base algebra.
//!
//! The indexed raising basis is `Ĉ = C × {0..N}`; brackets multiply t-powers
//! and vanish past degree N; the star involution flips `d ↦ N-d`.

use crate::coeff_ring::{CartanGen, CartanPoly, Rational};
use crate::error::{Error, Result};
use crate::lie_core::{AlgebraSpec, BaseElem, RootVector};
use std::fmt;
use std::sync::Mutex;

/// Index of a raising basis vector of the truncation: a positive root, a slot
/// into its root space, and a t-degree in `0..=N`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TruncIndex {
    pub root: RootVector,
    pub slot: u16,
    pub degree: u16,
}

impl TruncIndex {
    pub fn new(root: RootVector, slot: u16, degree: u16) -> Self {
        Self { root, slot, degree }
    }
}

/// A basis letter of the truncated algebra: a base element tagged with a t-degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub elem: BaseElem,
    pub degree: u16,
}

impl Letter {
    pub fn new(elem: BaseElem, degree: u16) -> Self {
        Self { elem, degree }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗t^{}", self.elem, self.degree)
    }
}

/// The truncated current Lie algebra `g ⊗ k[t]/t^{N+1}`, `N >= 1`.
///
/// Holds internal memo caches for the module-action oracle; all public
/// queries are pure.
#[derive(Debug)]
pub struct TruncatedAlgebra {
    pub base: AlgebraSpec,
    pub nilpotency: u16,
    pub(crate) action_cache: Mutex<crate::uea::ActionCache>,
    pub(crate) matrix_cache: Mutex<crate::shapovalov::MatrixCache>,
}

impl TruncatedAlgebra {
    pub fn new(base: AlgebraSpec, nilpotency: u16) -> Result<Self> {
        if nilpotency == 0 {
            return Err(Error::Parse(
                "nilpotency index must be a positive integer".into(),
            ));
        }
        Ok(Self {
            base,
            nilpotency,
            action_cache: Mutex::new(Default::default()),
            matrix_cache: Mutex::new(Default::default()),
        })
    }

    pub fn n(&self) -> u16 {
        self.nilpotency
    }

    /// Bracket of two letters: base bracket with t-degrees added, zero past N.
    pub fn bracket(&self, a: &Letter, b: &Letter) -> Vec<(Rational, Letter)> {
        let degree = a.degree + b.degree;
        if degree > self.nilpotency {
            return Vec::new();
        }
        self.base
            .bracket(&a.elem, &b.elem)
            .into_iter()
            .map(|(c, e)| (c, Letter::new(e, degree)))
            .collect()
    }

    /// The polynomial `h_alpha ⊗ t^N` for a positive root.
    pub fn pairing_poly(&self, alpha: &RootVector) -> Result<CartanPoly> {
        Ok(self
            .base
            .pairing_data(alpha)?
            .lifted_poly(self.nilpotency))
    }

    /// The star involution `(τ, d) ↦ (τ, N - d)`.
    pub fn star(&self, gamma: &TruncIndex) -> TruncIndex {
        TruncIndex::new(
            gamma.root.clone(),
            gamma.slot,
            self.nilpotency - gamma.degree,
        )
    }

    /// Sort key realizing the basis order: t-degree ascending, then the base
    /// enumeration, then the slot.
    pub fn basis_key(&self, gamma: &TruncIndex) -> Result<(u16, u64, u16)> {
        Ok((gamma.degree, self.base.root_position(&gamma.root)?, gamma.slot))
    }

    /// The raising letter for an index.
    pub fn raise_letter(&self, gamma: &TruncIndex) -> Letter {
        Letter::new(
            BaseElem::raise(gamma.root.clone(), gamma.slot),
            gamma.degree,
        )
    }

    /// The lowering letter for an index.
    pub fn lower_letter(&self, gamma: &TruncIndex) -> Letter {
        Letter::new(
            BaseElem::lower(gamma.root.clone(), gamma.slot),
            gamma.degree,
        )
    }

    /// All Cartan generators `h_index ⊗ t^d`.
    pub fn cartan_gens(&self) -> Vec<CartanGen> {
        (0..self.base.cartan_dim() as u16)
            .flat_map(|h| (0..=self.nilpotency).map(move |d| CartanGen::new(h, d)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_ring::rat;
    use num_traits::{One, Zero};

    fn trunc(name: &str, n: u16) -> TruncatedAlgebra {
        TruncatedAlgebra::new(AlgebraSpec::builtin(name, None).unwrap(), n).unwrap()
    }

    #[test]
    fn nilpotency_zero_rejected() {
        let base = AlgebraSpec::builtin("sl2", None).unwrap();
        assert!(TruncatedAlgebra::new(base, 0).is_err());
    }

    #[test]
    fn bracket_dies_past_nilpotency() {
        let a = trunc("sl2", 1);
        let alpha = a.base.parse_weight("a1").unwrap();
        let x = Letter::new(BaseElem::raise(alpha.clone(), 0), 1);
        let y = Letter::new(BaseElem::lower(alpha, 0), 1);
        assert!(a.bracket(&x, &y).is_empty());
    }

    #[test]
    fn virasoro_degree_one_bracket() {
        // [L_1 ⊗ t^0, L_{-1} ⊗ t^1] = 2 L_0 ⊗ t^1 (psi(1) = 0 under the default rule).
        let a = trunc("virasoro", 1);
        let d = a.base.parse_weight("d").unwrap();
        let x = Letter::new(BaseElem::raise(d.clone(), 0), 0);
        let y = Letter::new(BaseElem::lower(d, 0), 1);
        let got = a.bracket(&x, &y);
        assert_eq!(
            got,
            vec![(rat(2), Letter::new(BaseElem::cartan(0), 1))]
        );
    }

    #[test]
    fn heisenberg_degree_two_bracket() {
        // [a_m ⊗ t^1, a_{-m} ⊗ t^1] = m hbar ⊗ t^2 for N = 2.
        let a = trunc("heisenberg", 2);
        let m = 3;
        let root = a.base.parse_weight("3d").unwrap();
        let x = Letter::new(BaseElem::raise(root.clone(), 0), 1);
        let y = Letter::new(BaseElem::lower(root, 0), 1);
        assert_eq!(
            a.bracket(&x, &y),
            vec![(rat(m), Letter::new(BaseElem::cartan(0), 2))]
        );
    }

    #[test]
    fn pairing_poly_examples() {
        use crate::coeff_ring::CartanGen;
        let h = trunc("heisenberg", 2);
        let p = h.pairing_poly(&h.base.parse_weight("3d").unwrap()).unwrap();
        assert_eq!(p, CartanPoly::gen(CartanGen::new(0, 2)).scale(&rat(3)));

        let v = trunc("virasoro", 1);
        let p = v.pairing_poly(&v.base.parse_weight("2d").unwrap()).unwrap();
        let want = CartanPoly::gen(CartanGen::new(0, 1))
            .scale(&rat(4))
            .add(&CartanPoly::gen(CartanGen::new(1, 1)).scale(&Rational::new(1.into(), 2.into())));
        assert_eq!(p, want);

        let s = trunc("sl2", 3);
        let p = s.pairing_poly(&s.base.parse_weight("a1").unwrap()).unwrap();
        assert_eq!(p, CartanPoly::gen(CartanGen::new(0, 3)));
    }

    #[test]
    fn star_is_an_involution() {
        let a = trunc("sl3", 1);
        let gamma = TruncIndex::new(a.base.parse_weight("a1").unwrap(), 0, 0);
        let starred = a.star(&gamma);
        assert_eq!(starred.degree, 1);
        assert_eq!(a.star(&starred), gamma);
    }

    #[test]
    fn truncated_bracket_still_antisymmetric_and_jacobi() {
        // Truncation only zeroes terms, but check independently on a window.
        for name in ["sl2", "virasoro", "heisenberg"] {
            let a = trunc(name, 2);
            let roots: Vec<_> = if a.base.has_infinite_roots() {
                (1..=3)
                    .map(|m| RootVector::from_coords([(0, m)]))
                    .collect()
            } else {
                a.base.finite_positive_roots()
            };
            let mut letters = Vec::new();
            for r in &roots {
                for d in 0..=2 {
                    letters.push(Letter::new(BaseElem::raise(r.clone(), 0), d));
                    letters.push(Letter::new(BaseElem::lower(r.clone(), 0), d));
                }
            }
            for idx in 0..a.base.cartan_dim() as u16 {
                letters.push(Letter::new(BaseElem::cartan(idx), 0));
            }
            let bracket_combo = |u: &[(Rational, Letter)], v: &[(Rational, Letter)]| {
                let mut out: Vec<(Rational, Letter)> = Vec::new();
                for (cu, lu) in u {
                    for (cv, lv) in v {
                        for (c, l) in a.bracket(lu, lv) {
                            out.push((cu * cv * c, l));
                        }
                    }
                }
                out
            };
            let norm = |v: Vec<(Rational, Letter)>| {
                let mut map: std::collections::BTreeMap<Letter, Rational> = Default::default();
                for (c, l) in v {
                    *map.entry(l).or_insert_with(Rational::zero) += c;
                }
                map.retain(|_, c| !num_traits::Zero::is_zero(c));
                map
            };
            for x in &letters {
                for y in &letters {
                    let ab = a.bracket(x, y);
                    let ba = a.bracket(y, x);
                    let sum = norm(ab.iter().cloned().chain(ba).collect());
                    assert!(sum.is_empty(), "{name}: antisymmetry at {x}, {y}");
                    for z in &letters {
                        let one = |l: &Letter| vec![(Rational::one(), l.clone())];
                        let mut total = bracket_combo(&a.bracket(x, y), &one(z));
                        total.extend(bracket_combo(&a.bracket(y, z), &one(x)));
                        total.extend(bracket_combo(&a.bracket(z, x), &one(y)));
                        assert!(norm(total).is_empty(), "{name}: jacobi at {x},{y},{z}");
                    }
                }
            }
        }
    }

    #[test]
    fn diagonal_cartan_acts_with_base_weights() {
        let a = trunc("sl3", 2);
        for alpha in a.base.finite_positive_roots() {
            for d in 0..=2u16 {
                let x = Letter::new(BaseElem::raise(alpha.clone(), 0), d);
                for idx in 0..2u16 {
                    let h = Letter::new(BaseElem::cartan(idx), 0);
                    let got = a.bracket(&h, &x);
                    assert_eq!(got, vec![(a.base.root_value(&alpha, idx), x.clone())]);
                }
            }
        }
    }
}
