//! Reducibility verdicts for Verma modules of truncated current Lie
//! algebras, specializations for the classical families, hyperplane data for
//! plotting the criteria, and graded characters in the one-dimensional
//! Cartan case.

use crate::coeff_ring::{CartanGen, Functional, Rational};
use crate::error::{Error, Result};
use crate::lie_core::{AlgebraKind, RootVector};
use crate::linalg;
use crate::truncation::TruncatedAlgebra;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

/// Outcome of a reducibility test, with the witnessing positive root when
/// the module is reducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub reducible: bool,
    pub witness: Option<RootVector>,
}

impl Verdict {
    fn irreducible() -> Self {
        Verdict {
            reducible: false,
            witness: None,
        }
    }

    fn reducible_at(alpha: RootVector) -> Self {
        Verdict {
            reducible: true,
            witness: Some(alpha),
        }
    }
}

/// Value of `Λ(h ⊗ t^N)` for a Cartan combination.
fn eval_pairing_at_top(
    alg: &TruncatedAlgebra,
    alpha: &RootVector,
    lam: &Functional,
) -> Result<Rational> {
    alg.pairing_poly(alpha)?.eval(lam)
}

/// The reducibility criterion: the Verma module at `Λ` is reducible exactly
/// when `Λ(h_α ⊗ t^N) = 0` for some positive root `α`.
///
/// Finite families scan their root lists; Heisenberg and Witt reduce to a
/// single evaluation; Virasoro solves the closed-form condition exactly
/// (the admissible cocycles are odd cubics, so integer solutions of
/// `2mΛ(L₀⊗t^N) + ψ(m)Λ(c⊗t^N) = 0` reduce to a perfect-square test).
pub fn is_reducible(alg: &TruncatedAlgebra, lam: &Functional) -> Result<Verdict> {
    let n = alg.n();
    match &alg.base.kind {
        AlgebraKind::Sl2 | AlgebraKind::Sl3 | AlgebraKind::FiniteTable(_) => {
            for alpha in alg.base.finite_positive_roots() {
                if eval_pairing_at_top(alg, &alpha, lam)?.is_zero() {
                    return Ok(Verdict::reducible_at(alpha));
                }
            }
            Ok(Verdict::irreducible())
        }
        AlgebraKind::Heisenberg => {
            // h_{mδ} = m hbar: zero for some m ≠ 0 iff Λ(hbar ⊗ t^N) = 0.
            let hbar_top = lam.get(CartanGen::new(0, n)).ok_or(Error::MissingAssignment {
                gen: CartanGen::new(0, n).to_string(),
            })?;
            if hbar_top.is_zero() {
                Ok(Verdict::reducible_at(RootVector::from_coords([(0, 1)])))
            } else {
                Ok(Verdict::irreducible())
            }
        }
        AlgebraKind::Witt => {
            // h_{mδ} = 2m L_0: zero iff Λ(L_0 ⊗ t^N) = 0.
            let l0_top = lam.get(CartanGen::new(0, n)).ok_or(Error::MissingAssignment {
                gen: CartanGen::new(0, n).to_string(),
            })?;
            if l0_top.is_zero() {
                Ok(Verdict::reducible_at(RootVector::from_coords([(0, 1)])))
            } else {
                Ok(Verdict::irreducible())
            }
        }
        AlgebraKind::Virasoro(psi) => {
            let l0 = lam
                .get(CartanGen::new(0, n))
                .ok_or(Error::MissingAssignment {
                    gen: CartanGen::new(0, n).to_string(),
                })?
                .clone();
            let c = lam
                .get(CartanGen::new(1, n))
                .ok_or(Error::MissingAssignment {
                    gen: CartanGen::new(1, n).to_string(),
                })?
                .clone();
            // 2m L0 + psi(m) c = m (A m^2 + C) with A = c·cubic, C = c·linear + 2 L0.
            let a = &c * &psi.cubic;
            let cc = &c * &psi.linear + Rational::from(BigInt::from(2)) * &l0;
            let witness_m = if a.is_zero() {
                if cc.is_zero() {
                    Some(1i64)
                } else {
                    None
                }
            } else {
                let s = -cc / a; // m^2 must equal s
                if s.denom().is_one() && s.numer().is_positive() {
                    let num = s.numer().to_biguint().expect("positive");
                    let root = num.sqrt();
                    if &root * &root == num {
                        Some(i64::try_from(root).map_err(|_| {
                            Error::Internal("virasoro witness index overflows".into())
                        })?)
                    } else {
                        None
                    }
                } else {
                    None
                }
            };
            match witness_m {
                Some(m) => Ok(Verdict::reducible_at(RootVector::from_coords([(0, m)]))),
                None => Ok(Verdict::irreducible()),
            }
        }
    }
}

/// Primitive-vector criterion at a fixed weight drop `chi`: a witness root
/// must additionally satisfy `chi - α ∈ Q+`.
pub fn primitive_vector_weights(
    alg: &TruncatedAlgebra,
    lam: &Functional,
    chi: &RootVector,
) -> Result<Option<RootVector>> {
    for alpha in alg.base.positive_roots_below(chi)? {
        if eval_pairing_at_top(alg, &alpha, lam)?.is_zero() {
            return Ok(Some(alpha));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Finite root data for the Killing-form and affine criteria.
// ---------------------------------------------------------------------------

/// Root datum of a finite rank-1/2 system: positive roots in simple-root
/// coordinates together with the Gram matrix of the invariant form.
#[derive(Debug, Clone)]
pub struct FiniteRootDatum {
    pub name: String,
    pub positive_roots: Vec<Vec<i64>>,
    pub gram: Vec<Vec<Rational>>,
}

impl FiniteRootDatum {
    pub fn builtin(name: &str) -> Result<FiniteRootDatum> {
        let r = |n: i64| Rational::from(BigInt::from(n));
        let datum = match name {
            "a1" => FiniteRootDatum {
                name: "a1".into(),
                positive_roots: vec![vec![1]],
                gram: vec![vec![r(2)]],
            },
            "a2" => FiniteRootDatum {
                name: "a2".into(),
                positive_roots: vec![vec![1, 0], vec![0, 1], vec![1, 1]],
                gram: vec![vec![r(2), r(-1)], vec![r(-1), r(2)]],
            },
            "b2" => FiniteRootDatum {
                // alpha1 long, alpha2 short; short roots have square length 1.
                name: "b2".into(),
                positive_roots: vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]],
                gram: vec![vec![r(2), r(-1)], vec![r(-1), r(1)]],
            },
            "g2" => FiniteRootDatum {
                // alpha1 short, alpha2 long.
                name: "g2".into(),
                positive_roots: vec![
                    vec![1, 0],
                    vec![0, 1],
                    vec![1, 1],
                    vec![2, 1],
                    vec![3, 1],
                    vec![3, 2],
                ],
                gram: vec![vec![r(2), r(-3)], vec![r(-3), r(6)]],
            },
            other => {
                return Err(Error::Parse(format!(
                    "unknown finite root datum {other:?}; expected a1, a2, b2 or g2"
                )))
            }
        };
        Ok(datum)
    }

    /// Invariant pairing `(λ | α)` of a rational weight with a root.
    pub fn pair(&self, lambda_bar: &[Rational], alpha: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for (i, li) in lambda_bar.iter().enumerate() {
            for (j, &aj) in alpha.iter().enumerate() {
                acc += li * &self.gram[i][j] * Rational::from(BigInt::from(aj));
            }
        }
        acc
    }
}

/// Killing-form criterion for a finite semisimple base: reducible exactly
/// when the weight is orthogonal to some root.
pub fn killing_criterion(datum: &FiniteRootDatum, lambda_bar: &[Rational]) -> Result<Verdict> {
    if lambda_bar.len() != datum.gram.len() {
        return Err(Error::Parse(format!(
            "weight has {} coordinates but {} has rank {}",
            lambda_bar.len(),
            datum.name,
            datum.gram.len()
        )));
    }
    for alpha in &datum.positive_roots {
        if datum.pair(lambda_bar, alpha).is_zero() {
            return Ok(Verdict::reducible_at(RootVector::from_coords(
                alpha.iter().enumerate().map(|(i, &v)| (i as u8, v)),
            )));
        }
    }
    Ok(Verdict::irreducible())
}

/// Weight data for the affine criterion: the finite part of the top layer of
/// the functional, the central value `Λ_N(c)`, and the invariant Gram matrix
/// on the finite weight space.
#[derive(Debug, Clone)]
pub struct AffineWeightData {
    pub finite_part: Vec<Rational>,
    pub c_value: Rational,
    pub killing_gram: Vec<Vec<Rational>>,
}

/// Verdict of the affine criterion with its witnessing real root, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineVerdict {
    pub reducible: bool,
    /// Finite root and integer `m` with `(λ̄|α) = m Λ_N(c)`; `None` marks the
    /// central degeneration `Λ_N(c) = 0`.
    pub witness: Option<(Vec<i64>, BigInt)>,
}

/// Affine criterion: reducible iff `Λ_N(c) = 0` or `(λ̄|α) = m Λ_N(c)` for
/// some finite root `α` and integer `m`.
pub fn affine_criterion(
    data: &AffineWeightData,
    positive_roots: &[Vec<i64>],
) -> Result<AffineVerdict> {
    let rank = data.killing_gram.len();
    if data.finite_part.len() != rank {
        return Err(Error::Parse(
            "finite part and Gram matrix rank disagree".into(),
        ));
    }
    for i in 0..rank {
        for j in 0..rank {
            if data.killing_gram[i][j] != data.killing_gram[j][i] {
                return Err(Error::Parse("Gram matrix must be symmetric".into()));
            }
        }
    }
    if linalg::det(&data.killing_gram).is_zero() {
        return Err(Error::Parse("Gram matrix must be non-singular".into()));
    }
    if data.c_value.is_zero() {
        return Ok(AffineVerdict {
            reducible: true,
            witness: None,
        });
    }
    let datum = FiniteRootDatum {
        name: "affine".into(),
        positive_roots: positive_roots.to_vec(),
        gram: data.killing_gram.clone(),
    };
    // Both signs of each root are covered: (λ̄|-α) = m c iff (λ̄|α) = -m c.
    for alpha in positive_roots {
        let pair = datum.pair(&data.finite_part, alpha);
        let m = &pair / &data.c_value;
        if m.denom().is_one() {
            return Ok(AffineVerdict {
                reducible: true,
                witness: Some((alpha.clone(), m.numer().clone())),
            });
        }
    }
    Ok(AffineVerdict {
        reducible: false,
        witness: None,
    })
}

// ---------------------------------------------------------------------------
// Hyperplane data behind the criterion figures.
// ---------------------------------------------------------------------------

/// One hyperplane of a reducibility locus: `normal · x = offset` in the
/// coordinates of the relevant figure. For affine families the offset is the
/// integer multiple of `Λ_N(c)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    pub label: String,
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

/// Which family of hyperplanes to emit.
#[derive(Debug, Clone)]
pub enum HyperplaneFamily {
    /// Root hyperplanes of a finite system, in simple-root coordinates.
    Finite(FiniteRootDatum),
    /// Real-root families `(λ̄|α) = m Λ_N(c)` of an affinized system.
    Affine(FiniteRootDatum),
    /// Lines `2m·Λ(L₀⊗t^N) + ψ(m)·Λ(c⊗t^N) = 0` in (c, L₀) coordinates.
    Virasoro(crate::lie_core::VirasoroCocycle),
    /// The single hyperplane `Λ(hbar ⊗ t^N) = 0`.
    Heisenberg,
}

/// Coordinate labels for the emitted normals.
pub fn hyperplane_axes(family: &HyperplaneFamily) -> Vec<String> {
    match family {
        HyperplaneFamily::Finite(d) | HyperplaneFamily::Affine(d) => (0..d.gram.len())
            .map(|i| format!("a{}", i + 1))
            .collect(),
        HyperplaneFamily::Virasoro(_) => vec!["c".into(), "L0".into()],
        HyperplaneFamily::Heisenberg => vec!["hbar".into()],
    }
}

/// Emit the generating data of each hyperplane within the window.
pub fn hyperplane_data(family: &HyperplaneFamily, window: i64) -> Result<Vec<Hyperplane>> {
    let mut out = Vec::new();
    let root_label = |alpha: &[i64]| -> String {
        alpha
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| {
                if v == 1 {
                    format!("a{}", i + 1)
                } else {
                    format!("{}a{}", v, i + 1)
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    };
    match family {
        HyperplaneFamily::Finite(datum) => {
            for alpha in &datum.positive_roots {
                let normal: Vec<Rational> = (0..datum.gram.len())
                    .map(|i| {
                        alpha
                            .iter()
                            .enumerate()
                            .map(|(j, &aj)| &datum.gram[i][j] * Rational::from(BigInt::from(aj)))
                            .fold(Rational::zero(), |acc, x| acc + x)
                    })
                    .collect();
                out.push(Hyperplane {
                    label: root_label(alpha),
                    normal,
                    offset: Rational::zero(),
                });
            }
        }
        HyperplaneFamily::Affine(datum) => {
            if window < 0 {
                return Err(Error::Parse("window must be nonnegative".into()));
            }
            for alpha in &datum.positive_roots {
                let normal: Vec<Rational> = (0..datum.gram.len())
                    .map(|i| {
                        alpha
                            .iter()
                            .enumerate()
                            .map(|(j, &aj)| &datum.gram[i][j] * Rational::from(BigInt::from(aj)))
                            .fold(Rational::zero(), |acc, x| acc + x)
                    })
                    .collect();
                for m in -window..=window {
                    out.push(Hyperplane {
                        label: format!("{}|m={}", root_label(alpha), m),
                        normal: normal.clone(),
                        offset: Rational::from(BigInt::from(m)),
                    });
                }
            }
        }
        HyperplaneFamily::Virasoro(psi) => {
            if window < 1 {
                return Err(Error::Parse("window must be at least 1".into()));
            }
            for m in 1..=window {
                out.push(Hyperplane {
                    label: format!("m={m}"),
                    normal: vec![psi.eval(m), Rational::from(BigInt::from(2 * m))],
                    offset: Rational::zero(),
                });
            }
        }
        HyperplaneFamily::Heisenberg => {
            out.push(Hyperplane {
                label: "hbar".into(),
                normal: vec![Rational::one()],
                offset: Rational::zero(),
            });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Characters for one-dimensional Cartan subalgebras.
// ---------------------------------------------------------------------------

/// Character of the irreducible highest-weight module at `Λ`, for algebras
/// with a one-dimensional Cartan subalgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Character {
    /// All positive layers vanish: the module is the base-algebra
    /// irreducible of highest weight `Λ_0`, whose character is out of scope.
    Delegated { lambda0: Rational },
    /// Graded dimensions of `e^{Λ_0} (ch U(g_-))^m` up to the depth.
    Graded { dims: Vec<(u32, BigUint)> },
}

/// Result of the character computation: the minimal layer index `m` with
/// `Λ_n = 0` for all `n > m`, plus the character data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterReport {
    pub m: u16,
    pub character: Character,
}

/// Graded dimensions of `U(g_-)` for the base algebra at depths `0..=depth`.
///
/// Entry `n` counts multisets of positive roots of total height `n`,
/// weighted by root-space dimension.
fn base_enveloping_dims(alg: &TruncatedAlgebra, depth: u32) -> Result<Vec<BigUint>> {
    // Number of basis colors per height.
    let mut colors: Vec<usize> = vec![0; depth as usize + 1];
    if depth > 0 {
        let chi = RootVector::from_coords([(0, depth as i64)]);
        for alpha in alg.base.positive_roots_below(&chi)? {
            let h = alpha.height() as usize;
            if h <= depth as usize {
                colors[h] += alg.base.root_space_dim(&alpha);
            }
        }
    }
    let mut ways: Vec<BigUint> = vec![BigUint::zero(); depth as usize + 1];
    ways[0] = BigUint::one();
    for (h, &count) in colors.iter().enumerate().skip(1) {
        for _ in 0..count {
            for n in h..=depth as usize {
                let add = ways[n - h].clone();
                ways[n] += add;
            }
        }
    }
    Ok(ways)
}

/// Characters for truncations of algebras with `dim h = 1` (Witt, sl2).
pub fn character(alg: &TruncatedAlgebra, lam: &Functional, depth: u32) -> Result<CharacterReport> {
    if alg.base.cartan_dim() != 1 {
        return Err(Error::Unsupported {
            algebra: alg.base.name.clone(),
            reason: "characters require a one-dimensional Cartan subalgebra".into(),
        });
    }
    let value_at = |d: u16| -> Result<Rational> {
        lam.get(CartanGen::new(0, d))
            .cloned()
            .ok_or(Error::MissingAssignment {
                gen: CartanGen::new(0, d).to_string(),
            })
    };
    let mut m = 0u16;
    for d in (1..=alg.n()).rev() {
        if !value_at(d)?.is_zero() {
            m = d;
            break;
        }
    }
    if m == 0 {
        return Ok(CharacterReport {
            m,
            character: Character::Delegated {
                lambda0: value_at(0)?,
            },
        });
    }
    let base = base_enveloping_dims(alg, depth)?;
    // m-fold convolution power of the base character.
    let mut dims: Vec<BigUint> = vec![BigUint::zero(); depth as usize + 1];
    dims[0] = BigUint::one();
    for _ in 0..m {
        let mut next = vec![BigUint::zero(); depth as usize + 1];
        for (i, di) in dims.iter().enumerate() {
            if di.is_zero() {
                continue;
            }
            for (j, bj) in base.iter().enumerate() {
                if i + j <= depth as usize {
                    next[i + j] += di * bj;
                }
            }
        }
        dims = next;
    }
    Ok(CharacterReport {
        m,
        character: Character::Graded {
            dims: dims
                .into_iter()
                .enumerate()
                .map(|(n, d)| (n as u32, d))
                .collect(),
        },
    })
}
