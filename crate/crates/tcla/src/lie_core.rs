//! Presentations of base Lie algebras with triangular decomposition and
//! non-degenerate pairing.
//!
//! An [`AlgebraSpec`] provides root data, a root basis of the raising part,
//! exact bracket rules, the anti-involution swapping raising and lowering
//! vectors, and the pairing elements `h_alpha`. Infinite families (Witt,
//! Virasoro, Heisenberg) are represented by closed-form bracket rules and
//! never materialized. Every constructed algebra is validated on a finite
//! window of basis elements before use.

use crate::coeff_ring::{parse_rational, rat, CartanGen, CartanPoly, Rational};
use crate::error::{Error, Result};
use crate::linalg;
use num_traits::{One, Zero};
use serde_json::Value;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

/// Element of the root lattice: integer coordinates over the lattice generators.
///
/// Stored as a sorted coordinate list with no zero entries, so equality is
/// structural and clones stay cheap in the enveloping-algebra hot paths.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RootVector {
    coords: Vec<(u8, i64)>,
}

impl RootVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coords(pairs: impl IntoIterator<Item = (u8, i64)>) -> Self {
        let mut coords: Vec<(u8, i64)> = Vec::new();
        for (k, v) in pairs {
            if v == 0 {
                continue;
            }
            match coords.binary_search_by_key(&k, |&(g, _)| g) {
                Ok(i) => coords[i].1 += v,
                Err(i) => coords.insert(i, (k, v)),
            }
        }
        coords.retain(|&(_, v)| v != 0);
        Self { coords }
    }

    pub fn coord(&self, gen: u8) -> i64 {
        self.coords
            .binary_search_by_key(&gen, |&(g, _)| g)
            .map(|i| self.coords[i].1)
            .unwrap_or(0)
    }

    pub fn coords(&self) -> impl Iterator<Item = (u8, i64)> + '_ {
        self.coords.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|&(_, v)| v >= 0)
    }

    /// Sum of coordinates.
    pub fn height(&self) -> i64 {
        self.coords.iter().map(|&(_, v)| v).sum()
    }

    pub fn add(&self, other: &RootVector) -> RootVector {
        RootVector::from_coords(self.coords().chain(other.coords()))
    }

    pub fn sub(&self, other: &RootVector) -> RootVector {
        RootVector::from_coords(
            self.coords()
                .chain(other.coords().map(|(k, v)| (k, -v))),
        )
    }

    pub fn scaled(&self, k: i64) -> RootVector {
        RootVector::from_coords(self.coords().map(|(g, v)| (g, v * k)))
    }
}

/// Basis element of the base Lie algebra.
///
/// Raising and lowering vectors are indexed by a positive root and a slot
/// into the root space (slots beyond 0 occur only for multi-dimensional root
/// spaces); Cartan elements are indexed into the algebra's Cartan basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseElem {
    Raise { root: RootVector, slot: u16 },
    Lower { root: RootVector, slot: u16 },
    Cartan { index: u16 },
}

impl BaseElem {
    pub fn raise(root: RootVector, slot: u16) -> Self {
        BaseElem::Raise { root, slot }
    }

    pub fn lower(root: RootVector, slot: u16) -> Self {
        BaseElem::Lower { root, slot }
    }

    pub fn cartan(index: u16) -> Self {
        BaseElem::Cartan { index }
    }
}

/// Linear combination of basis elements with rational coefficients.
pub type Combo = Vec<(Rational, BaseElem)>;

/// Collect duplicates and drop zero coefficients.
pub fn combo_normalize(combo: Combo) -> Combo {
    let mut map: BTreeMap<BaseElem, Rational> = BTreeMap::new();
    for (c, e) in combo {
        if !c.is_zero() {
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
    }
    map.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (c, e))
        .collect()
}

/// Pairing data for one positive root: the Cartan element `h_alpha` (as a
/// linear combination of Cartan basis indices) and the Gram matrix of the
/// root-space form on the chosen slot basis.
#[derive(Debug, Clone)]
pub struct PairingElement {
    pub alpha: RootVector,
    pub h_alpha: Vec<(Rational, u16)>,
    pub gram: Vec<Vec<Rational>>,
}

impl PairingElement {
    /// The polynomial `h_alpha ⊗ t^d`.
    pub fn lifted_poly(&self, t_degree: u16) -> CartanPoly {
        let mut p = CartanPoly::zero();
        for (c, idx) in &self.h_alpha {
            p.add_assign(&CartanPoly::gen(CartanGen::new(*idx, t_degree)).scale(c));
        }
        p
    }
}

/// Virasoro central-extension cocycle, a polynomial `psi(m) = c1 m + c3 m^3`.
///
/// Antisymmetry of the bracket forces psi odd and the Jacobi identity caps
/// the degree at three, so the two coefficients parameterize every
/// admissible rule. The classical normalization is `(m^3 - m)/12`.
#[derive(Debug, Clone, PartialEq)]
pub struct VirasoroCocycle {
    pub linear: Rational,
    pub cubic: Rational,
}

impl VirasoroCocycle {
    pub fn standard() -> Self {
        Self {
            linear: Rational::new((-1).into(), 12.into()),
            cubic: Rational::new(1.into(), 12.into()),
        }
    }

    /// Build from ascending power coefficients, rejecting inadmissible rules.
    pub fn from_coeffs(coeffs: &[Rational]) -> Result<Self> {
        for (k, c) in coeffs.iter().enumerate() {
            if (k % 2 == 0 || k > 3) && !c.is_zero() {
                return Err(Error::Parse(
                    "virasoro cocycle must be an odd polynomial of degree <= 3".into(),
                ));
            }
        }
        Ok(Self {
            linear: coeffs.get(1).cloned().unwrap_or_else(Rational::zero),
            cubic: coeffs.get(3).cloned().unwrap_or_else(Rational::zero),
        })
    }

    pub fn eval(&self, m: i64) -> Rational {
        let m = rat(m);
        &self.linear * &m + &self.cubic * &m * &m * &m
    }
}

/// Structure data for a user-supplied finite algebra table.
#[derive(Debug, Clone)]
pub struct TableData {
    pub roots: Vec<(RootVector, usize)>,
    brackets: HashMap<(BaseElem, BaseElem), Combo>,
    pairing: HashMap<RootVector, (Vec<(Rational, u16)>, Vec<Vec<Rational>>)>,
    root_values: HashMap<RootVector, Vec<Rational>>,
}

/// Which base algebra a spec presents.
#[derive(Debug, Clone)]
pub enum AlgebraKind {
    Sl2,
    Sl3,
    Witt,
    Virasoro(VirasoroCocycle),
    Heisenberg,
    FiniteTable(Box<TableData>),
}

/// A validated presentation of a base Lie algebra with triangular
/// decomposition and non-degenerate pairing.
#[derive(Debug, Clone)]
pub struct AlgebraSpec {
    pub kind: AlgebraKind,
    pub name: String,
    pub cartan_names: Vec<String>,
    pub lattice_names: Vec<String>,
}

fn m_delta(m: i64) -> RootVector {
    RootVector::from_coords([(0, m)])
}

fn sl3_alpha(p: i64, q: i64) -> RootVector {
    RootVector::from_coords([(0, p), (1, q)])
}

impl AlgebraSpec {
    /// Construct a built-in algebra by name and validate it.
    ///
    /// `psi` applies to `virasoro` only (ascending power coefficients);
    /// the default is `(m^3 - m)/12`.
    pub fn builtin(name: &str, psi: Option<&[Rational]>) -> Result<AlgebraSpec> {
        if psi.is_some() && name != "virasoro" {
            return Err(Error::Parse(format!("psi rule is only meaningful for virasoro, not {name}")));
        }
        let spec = match name {
            "sl2" => AlgebraSpec {
                kind: AlgebraKind::Sl2,
                name: "sl2".into(),
                cartan_names: vec!["h_a1".into()],
                lattice_names: vec!["a1".into()],
            },
            "sl3" => AlgebraSpec {
                kind: AlgebraKind::Sl3,
                name: "sl3".into(),
                cartan_names: vec!["h_a1".into(), "h_a2".into()],
                lattice_names: vec!["a1".into(), "a2".into()],
            },
            "witt" => AlgebraSpec {
                kind: AlgebraKind::Witt,
                name: "witt".into(),
                cartan_names: vec!["L0".into()],
                lattice_names: vec!["d".into()],
            },
            "virasoro" => {
                let cocycle = match psi {
                    Some(coeffs) => VirasoroCocycle::from_coeffs(coeffs)?,
                    None => VirasoroCocycle::standard(),
                };
                AlgebraSpec {
                    kind: AlgebraKind::Virasoro(cocycle),
                    name: "virasoro".into(),
                    cartan_names: vec!["L0".into(), "c".into()],
                    lattice_names: vec!["d".into()],
                }
            }
            "heisenberg" => AlgebraSpec {
                kind: AlgebraKind::Heisenberg,
                name: "heisenberg".into(),
                cartan_names: vec!["hbar".into(), "deg".into()],
                lattice_names: vec!["d".into()],
            },
            other => {
                return Err(Error::Parse(format!(
                    "unknown algebra {other:?}; expected sl2, sl3, witt, virasoro, heisenberg or a table file"
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn cartan_dim(&self) -> usize {
        self.cartan_names.len()
    }

    /// True for the closed-form infinite families.
    pub fn has_infinite_roots(&self) -> bool {
        matches!(
            self.kind,
            AlgebraKind::Witt | AlgebraKind::Virasoro(_) | AlgebraKind::Heisenberg
        )
    }

    /// True when brackets of lowering vectors all vanish; module actions may
    /// then treat lowering words as multisets. Restricted to the built-in
    /// families with that property; table algebras take the general path.
    pub fn lowering_abelian(&self) -> bool {
        matches!(self.kind, AlgebraKind::Sl2 | AlgebraKind::Heisenberg)
    }

    pub fn root_space_dim(&self, alpha: &RootVector) -> usize {
        match &self.kind {
            AlgebraKind::FiniteTable(t) => t
                .roots
                .iter()
                .find(|(r, _)| r == alpha)
                .map_or(0, |(_, d)| *d),
            _ => 1,
        }
    }

    /// Position of a root in the basis enumeration within one t-degree.
    pub fn root_position(&self, alpha: &RootVector) -> Result<u64> {
        let err = || Error::NotAPositiveRoot {
            alpha: self.display_weight(alpha),
        };
        match &self.kind {
            AlgebraKind::Sl2 => {
                if alpha == &RootVector::from_coords([(0, 1)]) {
                    Ok(0)
                } else {
                    Err(err())
                }
            }
            AlgebraKind::Sl3 => {
                // Basis enumeration per t-degree: a1, a1+a2, a2.
                if alpha == &sl3_alpha(1, 0) {
                    Ok(0)
                } else if alpha == &sl3_alpha(1, 1) {
                    Ok(1)
                } else if alpha == &sl3_alpha(0, 1) {
                    Ok(2)
                } else {
                    Err(err())
                }
            }
            AlgebraKind::Witt | AlgebraKind::Virasoro(_) | AlgebraKind::Heisenberg => {
                let m = alpha.coord(0);
                if m > 0 && alpha.coords().count() == 1 {
                    Ok(m as u64)
                } else {
                    Err(err())
                }
            }
            AlgebraKind::FiniteTable(t) => t
                .roots
                .iter()
                .position(|(r, _)| r == alpha)
                .map(|i| i as u64)
                .ok_or_else(err),
        }
    }

    pub fn is_positive_root(&self, alpha: &RootVector) -> bool {
        self.root_position(alpha).is_ok()
    }

    /// Membership in `Q+`, the additive semigroup generated by the positive roots.
    pub fn in_positive_lattice(&self, chi: &RootVector) -> bool {
        match &self.kind {
            AlgebraKind::FiniteTable(_) => {
                let mut memo = HashMap::new();
                self.q_plus_dp(chi, &mut memo)
            }
            // For the built-ins the lattice generators are themselves
            // positive roots, so Q+ is the nonnegative orthant.
            _ => chi.is_nonnegative(),
        }
    }

    fn q_plus_dp(&self, chi: &RootVector, memo: &mut HashMap<RootVector, bool>) -> bool {
        if chi.is_zero() {
            return true;
        }
        if !chi.is_nonnegative() || chi.height() < 0 {
            return false;
        }
        if let Some(&v) = memo.get(chi) {
            return v;
        }
        let roots: Vec<RootVector> = match &self.kind {
            AlgebraKind::FiniteTable(t) => t.roots.iter().map(|(r, _)| r.clone()).collect(),
            _ => unreachable!("DP membership is only used for table algebras"),
        };
        let ans = roots.iter().any(|alpha| {
            let rest = chi.sub(alpha);
            rest.is_nonnegative() && self.q_plus_dp(&rest, memo)
        });
        memo.insert(chi.clone(), ans);
        ans
    }

    /// All positive roots `alpha` with `chi - alpha` in `Q+`, in basis
    /// enumeration order.
    pub fn positive_roots_below(&self, chi: &RootVector) -> Result<Vec<RootVector>> {
        if !self.in_positive_lattice(chi) {
            return Err(Error::WeightNotPositive {
                chi: self.display_weight(chi),
            });
        }
        match &self.kind {
            AlgebraKind::Witt | AlgebraKind::Virasoro(_) | AlgebraKind::Heisenberg => {
                let n = chi.coord(0);
                Ok((1..=n).map(m_delta).collect())
            }
            _ => {
                let roots = self.finite_positive_roots();
                Ok(roots
                    .into_iter()
                    .filter(|alpha| self.in_positive_lattice(&chi.sub(alpha)))
                    .collect())
            }
        }
    }

    /// The full list of positive roots for the finite kinds, in basis order.
    pub fn finite_positive_roots(&self) -> Vec<RootVector> {
        match &self.kind {
            AlgebraKind::Sl2 => vec![RootVector::from_coords([(0, 1)])],
            AlgebraKind::Sl3 => vec![sl3_alpha(1, 0), sl3_alpha(1, 1), sl3_alpha(0, 1)],
            AlgebraKind::FiniteTable(t) => t.roots.iter().map(|(r, _)| r.clone()).collect(),
            _ => Vec::new(),
        }
    }

    /// Linearization of the partial order on `Q+`: graded by height, ties
    /// broken lexicographically on coordinates.
    pub fn q_linearization_cmp(&self, a: &RootVector, b: &RootVector) -> Ordering {
        match a.height().cmp(&b.height()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for gen in 0..self.lattice_names.len() as u8 {
            match a.coord(gen).cmp(&b.coord(gen)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// The value `alpha(h)` for a Cartan basis element.
    pub fn root_value(&self, alpha: &RootVector, cartan_index: u16) -> Rational {
        match &self.kind {
            AlgebraKind::Sl2 => rat(2 * alpha.coord(0)),
            AlgebraKind::Sl3 => {
                let (p, q) = (alpha.coord(0), alpha.coord(1));
                match cartan_index {
                    0 => rat(2 * p - q),
                    _ => rat(2 * q - p),
                }
            }
            AlgebraKind::Witt => rat(-alpha.coord(0)),
            AlgebraKind::Virasoro(_) => match cartan_index {
                0 => rat(-alpha.coord(0)),
                _ => Rational::zero(),
            },
            AlgebraKind::Heisenberg => match cartan_index {
                0 => Rational::zero(),
                _ => rat(alpha.coord(0)),
            },
            AlgebraKind::FiniteTable(t) => t
                .root_values
                .get(alpha)
                .and_then(|v| v.get(cartan_index as usize))
                .cloned()
                .unwrap_or_else(Rational::zero),
        }
    }

    /// The anti-involution: swaps raising and lowering vectors, fixes the Cartan.
    pub fn omega(&self, e: &BaseElem) -> BaseElem {
        match e {
            BaseElem::Raise { root, slot } => BaseElem::lower(root.clone(), *slot),
            BaseElem::Lower { root, slot } => BaseElem::raise(root.clone(), *slot),
            BaseElem::Cartan { index } => BaseElem::cartan(*index),
        }
    }

    pub fn omega_combo(&self, combo: &Combo) -> Combo {
        combo
            .iter()
            .map(|(c, e)| (c.clone(), self.omega(e)))
            .collect()
    }

    /// Exact bracket of two basis elements as a linear combination.
    pub fn bracket(&self, a: &BaseElem, b: &BaseElem) -> Combo {
        match &self.kind {
            AlgebraKind::Sl2 => bracket_sl2(a, b),
            AlgebraKind::Sl3 => bracket_sl3(a, b),
            AlgebraKind::Witt => bracket_witt(a, b, None),
            AlgebraKind::Virasoro(psi) => bracket_witt(a, b, Some(psi)),
            AlgebraKind::Heisenberg => bracket_heisenberg(a, b),
            AlgebraKind::FiniteTable(t) => {
                if a == b {
                    return Vec::new();
                }
                if let Some(c) = t.brackets.get(&(a.clone(), b.clone())) {
                    return c.clone();
                }
                if let Some(c) = t.brackets.get(&(b.clone(), a.clone())) {
                    return c.iter().map(|(k, e)| (-k, e.clone())).collect();
                }
                Vec::new()
            }
        }
    }

    pub fn bracket_combo(&self, a: &Combo, b: &Combo) -> Combo {
        let mut out = Vec::new();
        for (ca, ea) in a {
            for (cb, eb) in b {
                for (c, e) in self.bracket(ea, eb) {
                    out.push((ca * cb * c, e));
                }
            }
        }
        combo_normalize(out)
    }

    /// Pairing data for a positive root.
    pub fn pairing_data(&self, alpha: &RootVector) -> Result<PairingElement> {
        if !self.is_positive_root(alpha) {
            return Err(Error::NotAPositiveRoot {
                alpha: self.display_weight(alpha),
            });
        }
        let one_gram = vec![vec![Rational::one()]];
        let (h_alpha, gram) = match &self.kind {
            AlgebraKind::Sl2 => (vec![(Rational::one(), 0)], one_gram),
            AlgebraKind::Sl3 => {
                let mut h = Vec::new();
                if alpha.coord(0) != 0 {
                    h.push((Rational::one(), 0));
                }
                if alpha.coord(1) != 0 {
                    h.push((Rational::one(), 1));
                }
                (h, one_gram)
            }
            AlgebraKind::Witt => (vec![(rat(2 * alpha.coord(0)), 0)], one_gram),
            AlgebraKind::Virasoro(psi) => {
                let m = alpha.coord(0);
                let mut h = vec![(rat(2 * m), 0)];
                let p = psi.eval(m);
                if !p.is_zero() {
                    h.push((p, 1));
                }
                (h, one_gram)
            }
            AlgebraKind::Heisenberg => (vec![(rat(alpha.coord(0)), 0)], one_gram),
            AlgebraKind::FiniteTable(t) => t
                .pairing
                .get(alpha)
                .cloned()
                .ok_or_else(|| Error::NotAPositiveRoot {
                    alpha: self.display_weight(alpha),
                })?,
        };
        Ok(PairingElement {
            alpha: alpha.clone(),
            h_alpha,
            gram,
        })
    }

    /// Parse a weight string like "a1+2a2", "2d" or "0".
    pub fn parse_weight(&self, s: &str) -> Result<RootVector> {
        let s = s.trim();
        if s == "0" {
            return Ok(RootVector::zero());
        }
        let mut coords = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in weight {s:?}")));
            }
            let split = term
                .char_indices()
                .find(|&(_, ch)| !ch.is_ascii_digit() && ch != '-')
                .map(|(i, _)| i)
                .unwrap_or(term.len());
            let (coef_str, name) = term.split_at(split);
            let coef: i64 = if coef_str.is_empty() {
                1
            } else {
                coef_str
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient in {term:?}")))?
            };
            let gen = self
                .lattice_names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Parse(format!("unknown lattice generator {name:?}")))?;
            coords.push((gen as u8, coef));
        }
        Ok(RootVector::from_coords(coords))
    }

    pub fn display_weight(&self, chi: &RootVector) -> String {
        if chi.is_zero() {
            return "0".into();
        }
        chi.coords()
            .map(|(gen, v)| {
                let name = self
                    .lattice_names
                    .get(gen as usize)
                    .map(String::as_str)
                    .unwrap_or("?");
                if v == 1 {
                    name.to_string()
                } else {
                    format!("{v}{name}")
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Basis elements within the validation window (roots of height <= 6).
    fn window_elements(&self) -> Vec<BaseElem> {
        let roots: Vec<RootVector> = if self.has_infinite_roots() {
            (1..=6).map(m_delta).collect()
        } else {
            self.finite_positive_roots()
        };
        let mut out = Vec::new();
        for alpha in &roots {
            for slot in 0..self.root_space_dim(alpha) as u16 {
                out.push(BaseElem::raise(alpha.clone(), slot));
                out.push(BaseElem::lower(alpha.clone(), slot));
            }
        }
        for idx in 0..self.cartan_dim() as u16 {
            out.push(BaseElem::cartan(idx));
        }
        out
    }

    fn window_roots(&self) -> Vec<RootVector> {
        if self.has_infinite_roots() {
            (1..=6).map(m_delta).collect()
        } else {
            self.finite_positive_roots()
        }
    }

    /// Run the axiom checkers on the validation window.
    pub fn validate(&self) -> Result<()> {
        let elems = self.window_elements();
        let fail = |axiom: &str, witness: String| Error::Validation {
            axiom: axiom.into(),
            witness,
        };
        let single = |e: &BaseElem| vec![(Rational::one(), e.clone())];

        for a in &elems {
            for b in &elems {
                let ab = self.bracket(a, b);
                let ba = self.bracket(b, a);
                let anti = combo_normalize(
                    ab.iter()
                        .cloned()
                        .chain(ba.iter().map(|(c, e)| (c.clone(), e.clone())))
                        .collect(),
                );
                if !anti.is_empty() {
                    return Err(fail("antisymmetry", format!("{a:?}, {b:?}")));
                }
                // omega([a,b]) = [omega(b), omega(a)]
                let lhs = self.omega_combo(&ab);
                let rhs = self.bracket_combo(
                    &self.omega_combo(&single(b)),
                    &self.omega_combo(&single(a)),
                );
                if combo_normalize(
                    lhs.iter()
                        .cloned()
                        .chain(rhs.iter().map(|(c, e)| (-c, e.clone())))
                        .collect(),
                ) != Vec::new()
                {
                    return Err(fail("anti-involution", format!("{a:?}, {b:?}")));
                }
            }
            if self.omega(&self.omega(a)) != *a {
                return Err(fail("involution", format!("{a:?}")));
            }
        }

        for a in &elems {
            for b in &elems {
                for c in &elems {
                    let mut sum = self.bracket_combo(&self.bracket(a, b), &single(c));
                    sum.extend(self.bracket_combo(&self.bracket(b, c), &single(a)));
                    sum.extend(self.bracket_combo(&self.bracket(c, a), &single(b)));
                    if !combo_normalize(sum).is_empty() {
                        return Err(fail("jacobi", format!("{a:?}, {b:?}, {c:?}")));
                    }
                }
            }
        }

        for alpha in &self.window_roots() {
            let pairing = self.pairing_data(alpha)?;
            let dim = self.root_space_dim(alpha);
            if pairing.h_alpha.is_empty() {
                return Err(fail("pairing", format!("h_alpha = 0 at {alpha:?}")));
            }
            if pairing.gram.len() != dim || pairing.gram.iter().any(|r| r.len() != dim) {
                return Err(fail("pairing", format!("gram shape at {alpha:?}")));
            }
            if linalg::det(&pairing.gram).is_zero() {
                return Err(fail("pairing", format!("singular gram at {alpha:?}")));
            }
            for i in 0..dim as u16 {
                for j in 0..dim as u16 {
                    let x = BaseElem::raise(alpha.clone(), i);
                    let wy = self.omega(&BaseElem::raise(alpha.clone(), j));
                    let lhs = self.bracket(&x, &wy);
                    let expect: Combo = pairing
                        .h_alpha
                        .iter()
                        .map(|(c, idx)| {
                            (c * &pairing.gram[i as usize][j as usize], BaseElem::cartan(*idx))
                        })
                        .collect();
                    let diff = combo_normalize(
                        lhs.into_iter()
                            .chain(expect.into_iter().map(|(c, e)| (-c, e)))
                            .collect(),
                    );
                    if !diff.is_empty() {
                        return Err(fail(
                            "pairing",
                            format!("[x,omega(y)] != <x,y> h_alpha at {alpha:?} slots {i},{j}"),
                        ));
                    }
                }
            }
            // Weight consistency: [h, x_gamma] = alpha(h) x_gamma.
            for idx in 0..self.cartan_dim() as u16 {
                for slot in 0..dim as u16 {
                    let x = BaseElem::raise(alpha.clone(), slot);
                    let got = self.bracket(&BaseElem::cartan(idx), &x);
                    let want = vec![(self.root_value(alpha, idx), x.clone())];
                    let diff = combo_normalize(
                        got.into_iter()
                            .chain(want.into_iter().map(|(c, e)| (-c, e)))
                            .collect(),
                    );
                    if !diff.is_empty() {
                        return Err(fail("weights", format!("h{idx} on {alpha:?}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Load and validate a finite algebra from its JSON table format.
    pub fn from_table_json(name: &str, value: &Value) -> Result<AlgebraSpec> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("algebra table must be a JSON object".into()))?;
        let cartan_names: Vec<String> = obj
            .get("cartan")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("table missing \"cartan\" array".into()))?
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_owned)
                    .ok_or_else(|| Error::Parse("cartan names must be strings".into()))
            })
            .collect::<Result<_>>()?;

        let roots_json = obj
            .get("positive_roots")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("table missing \"positive_roots\" array".into()))?;

        // The lattice generators: explicit, or the union of coordinate keys.
        let lattice_names: Vec<String> = match obj.get("lattice").and_then(Value::as_array) {
            Some(arr) => arr
                .iter()
                .map(|v| {
                    v.as_str()
                        .map(str::to_owned)
                        .ok_or_else(|| Error::Parse("lattice names must be strings".into()))
                })
                .collect::<Result<_>>()?,
            None => {
                let mut set = Vec::new();
                for r in roots_json {
                    if let Some(c) = r.get("coords").and_then(Value::as_object) {
                        for k in c.keys() {
                            if !set.contains(k) {
                                set.push(k.clone());
                            }
                        }
                    }
                }
                set.sort();
                set
            }
        };

        let mut proto = AlgebraSpec {
            kind: AlgebraKind::Sl2, // placeholder while parsing weights
            name: name.into(),
            cartan_names,
            lattice_names,
        };

        let parse_coords = |proto: &AlgebraSpec, v: &Value| -> Result<RootVector> {
            let c = v
                .as_object()
                .ok_or_else(|| Error::Parse("coords must be an object".into()))?;
            let mut pairs = Vec::new();
            for (k, n) in c {
                let gen = proto
                    .lattice_names
                    .iter()
                    .position(|x| x == k)
                    .ok_or_else(|| Error::Parse(format!("unknown lattice generator {k:?}")))?;
                let val = n
                    .as_i64()
                    .ok_or_else(|| Error::Parse("coords must be integers".into()))?;
                pairs.push((gen as u8, val));
            }
            Ok(RootVector::from_coords(pairs))
        };

        let mut roots = Vec::new();
        for r in roots_json {
            let coords = parse_coords(
                &proto,
                r.get("coords")
                    .ok_or_else(|| Error::Parse("root missing coords".into()))?,
            )?;
            let dim = r.get("dim").and_then(Value::as_u64).unwrap_or(1) as usize;
            if dim == 0 {
                return Err(Error::Parse("root space dimension must be positive".into()));
            }
            roots.push((coords, dim));
        }

        let parse_elem = |proto: &AlgebraSpec, s: &str| -> Result<BaseElem> {
            let parts: Vec<&str> = s.split(':').collect();
            match parts.as_slice() {
                ["x", w, slot] => Ok(BaseElem::raise(
                    proto.parse_weight(w)?,
                    slot.parse().map_err(|_| Error::Parse(format!("bad slot in {s:?}")))?,
                )),
                ["y", w, slot] => Ok(BaseElem::lower(
                    proto.parse_weight(w)?,
                    slot.parse().map_err(|_| Error::Parse(format!("bad slot in {s:?}")))?,
                )),
                ["h", n] => {
                    let idx = proto
                        .cartan_names
                        .iter()
                        .position(|x| x == n)
                        .ok_or_else(|| Error::Parse(format!("unknown Cartan element {n:?}")))?;
                    Ok(BaseElem::cartan(idx as u16))
                }
                _ => Err(Error::Parse(format!(
                    "bad basis id {s:?}; expected x:<weight>:<slot>, y:<weight>:<slot> or h:<name>"
                ))),
            }
        };

        let mut brackets = HashMap::new();
        for entry in obj
            .get("brackets")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("table missing \"brackets\" array".into()))?
        {
            let triple = entry
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| Error::Parse("bracket entry must be [a, b, combo]".into()))?;
            let a = parse_elem(&proto, triple[0].as_str().ok_or_else(|| Error::Parse("bad id".into()))?)?;
            let b = parse_elem(&proto, triple[1].as_str().ok_or_else(|| Error::Parse("bad id".into()))?)?;
            let mut combo = Vec::new();
            for term in triple[2]
                .as_array()
                .ok_or_else(|| Error::Parse("bracket combo must be an array".into()))?
            {
                let pair = term
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::Parse("combo term must be [coeff, id]".into()))?;
                let coeff = parse_rational(
                    pair[0]
                        .as_str()
                        .ok_or_else(|| Error::Parse("coeff must be a string".into()))?,
                )?;
                let elem = parse_elem(&proto, pair[1].as_str().ok_or_else(|| Error::Parse("bad id".into()))?)?;
                combo.push((coeff, elem));
            }
            brackets.insert((a, b), combo_normalize(combo));
        }

        let mut pairing = HashMap::new();
        for entry in obj
            .get("pairing")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("table missing \"pairing\" array".into()))?
        {
            let root = proto.parse_weight(
                entry
                    .get("root")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Parse("pairing entry missing root".into()))?,
            )?;
            let mut h_alpha = Vec::new();
            for term in entry
                .get("h_alpha")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("pairing entry missing h_alpha".into()))?
            {
                let pair = term
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::Parse("h_alpha term must be [coeff, name]".into()))?;
                let coeff = parse_rational(
                    pair[0]
                        .as_str()
                        .ok_or_else(|| Error::Parse("coeff must be a string".into()))?,
                )?;
                let name = pair[1]
                    .as_str()
                    .ok_or_else(|| Error::Parse("h_alpha name must be a string".into()))?;
                let idx = proto
                    .cartan_names
                    .iter()
                    .position(|x| x == name)
                    .ok_or_else(|| Error::Parse(format!("unknown Cartan element {name:?}")))?;
                h_alpha.push((coeff, idx as u16));
            }
            let gram = entry
                .get("gram")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("pairing entry missing gram".into()))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| Error::Parse("gram row must be an array".into()))?
                        .iter()
                        .map(|v| {
                            parse_rational(
                                v.as_str()
                                    .ok_or_else(|| Error::Parse("gram entries must be strings".into()))?,
                            )
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            pairing.insert(root, (h_alpha, gram));
        }

        // Derive alpha(h) scalars from the bracket table: [h, x_{alpha,0}].
        let mut root_values = HashMap::new();
        for (alpha, _) in &roots {
            let x = BaseElem::raise(alpha.clone(), 0);
            let mut vals = Vec::new();
            for idx in 0..proto.cartan_names.len() as u16 {
                let h = BaseElem::cartan(idx);
                let combo = brackets
                    .get(&(h.clone(), x.clone()))
                    .cloned()
                    .or_else(|| {
                        brackets
                            .get(&(x.clone(), h))
                            .map(|c| c.iter().map(|(k, e)| (-k, e.clone())).collect())
                    })
                    .unwrap_or_default();
                let mut val = Rational::zero();
                for (c, e) in combo {
                    if e == x {
                        val = c;
                    }
                }
                vals.push(val);
            }
            root_values.insert(alpha.clone(), vals);
        }

        proto.kind = AlgebraKind::FiniteTable(Box::new(TableData {
            roots,
            brackets,
            pairing,
            root_values,
        }));
        proto.validate()?;
        Ok(proto)
    }
}

fn one() -> Rational {
    Rational::one()
}

fn bracket_sl2(a: &BaseElem, b: &BaseElem) -> Combo {
    use BaseElem::*;
    match (a, b) {
        (Raise { .. }, Raise { .. }) | (Lower { .. }, Lower { .. }) | (Cartan { .. }, Cartan { .. }) => {
            Vec::new()
        }
        (Raise { root, .. }, Lower { .. }) => {
            let _ = root;
            vec![(one(), BaseElem::cartan(0))]
        }
        (Lower { .. }, Raise { .. }) => vec![(-one(), BaseElem::cartan(0))],
        (Cartan { .. }, Raise { root, slot }) => vec![(rat(2), BaseElem::raise(root.clone(), *slot))],
        (Cartan { .. }, Lower { root, slot }) => vec![(rat(-2), BaseElem::lower(root.clone(), *slot))],
        (Raise { root, slot }, Cartan { .. }) => vec![(rat(-2), BaseElem::raise(root.clone(), *slot))],
        (Lower { root, slot }, Cartan { .. }) => vec![(rat(2), BaseElem::lower(root.clone(), *slot))],
    }
}

/// sl3 structure constants in the Chevalley normalization with
/// `x_{a1+a2} = [x_{a1}, x_{a2}]` and `y_{a1+a2} = [y_{a2}, y_{a1}]`.
fn bracket_sl3(a: &BaseElem, b: &BaseElem) -> Combo {
    // Encode the eight basis elements compactly.
    #[derive(Clone, Copy, PartialEq)]
    enum E {
        X1,
        X2,
        X12,
        Y1,
        Y2,
        Y12,
        H1,
        H2,
    }
    use E::*;
    let code = |e: &BaseElem| -> Option<E> {
        match e {
            BaseElem::Raise { root, .. } => {
                if *root == sl3_alpha(1, 0) {
                    Some(X1)
                } else if *root == sl3_alpha(0, 1) {
                    Some(X2)
                } else if *root == sl3_alpha(1, 1) {
                    Some(X12)
                } else {
                    None
                }
            }
            BaseElem::Lower { root, .. } => {
                if *root == sl3_alpha(1, 0) {
                    Some(Y1)
                } else if *root == sl3_alpha(0, 1) {
                    Some(Y2)
                } else if *root == sl3_alpha(1, 1) {
                    Some(Y12)
                } else {
                    None
                }
            }
            BaseElem::Cartan { index: 0 } => Some(H1),
            BaseElem::Cartan { index: 1 } => Some(H2),
            BaseElem::Cartan { .. } => None,
        }
    };
    let decode = |e: E| -> BaseElem {
        match e {
            X1 => BaseElem::raise(sl3_alpha(1, 0), 0),
            X2 => BaseElem::raise(sl3_alpha(0, 1), 0),
            X12 => BaseElem::raise(sl3_alpha(1, 1), 0),
            Y1 => BaseElem::lower(sl3_alpha(1, 0), 0),
            Y2 => BaseElem::lower(sl3_alpha(0, 1), 0),
            Y12 => BaseElem::lower(sl3_alpha(1, 1), 0),
            H1 => BaseElem::cartan(0),
            H2 => BaseElem::cartan(1),
        }
    };
    let (Some(ca), Some(cb)) = (code(a), code(b)) else {
        return Vec::new();
    };
    // Nonzero brackets with the first element earlier in (X1, X2, X12, Y1, Y2, Y12, H1, H2).
    let rank = |e: E| match e {
        X1 => 0,
        X2 => 1,
        X12 => 2,
        Y1 => 3,
        Y2 => 4,
        Y12 => 5,
        H1 => 6,
        H2 => 7,
    };
    if rank(ca) > rank(cb) {
        return bracket_sl3(b, a)
            .into_iter()
            .map(|(c, e)| (-c, e))
            .collect();
    }
    let table: &[(E, E, &[(i64, E)])] = &[
        (X1, X2, &[(1, X12)]),
        (X1, Y1, &[(1, H1)]),
        (X1, Y12, &[(-1, Y2)]),
        (X1, H1, &[(-2, X1)]),
        (X1, H2, &[(1, X1)]),
        (X2, X12, &[]),
        (X2, Y2, &[(1, H2)]),
        (X2, Y12, &[(1, Y1)]),
        (X2, H1, &[(1, X2)]),
        (X2, H2, &[(-2, X2)]),
        (X12, Y1, &[(-1, X2)]),
        (X12, Y2, &[(1, X1)]),
        (X12, Y12, &[(1, H1), (1, H2)]),
        (X12, H1, &[(-1, X12)]),
        (X12, H2, &[(-1, X12)]),
        (Y1, Y2, &[(-1, Y12)]),
        (Y1, H1, &[(2, Y1)]),
        (Y1, H2, &[(-1, Y1)]),
        (Y2, H1, &[(-1, Y2)]),
        (Y2, H2, &[(2, Y2)]),
        (Y12, H1, &[(1, Y12)]),
        (Y12, H2, &[(1, Y12)]),
    ];
    for (x, y, combo) in table {
        if *x == ca && *y == cb {
            return combo.iter().map(|&(c, e)| (rat(c), decode(e))).collect();
        }
    }
    Vec::new()
}

/// Witt bracket `[L_m, L_n] = (m - n) L_{m+n}`, with the optional Virasoro
/// central term on `[L_m, L_{-m}]`.
fn bracket_witt(a: &BaseElem, b: &BaseElem, psi: Option<&VirasoroCocycle>) -> Combo {
    use BaseElem::*;
    let l_index = |e: &BaseElem| -> Option<i64> {
        match e {
            Raise { root, .. } => Some(root.coord(0)),
            Lower { root, .. } => Some(-root.coord(0)),
            Cartan { index: 0 } => Some(0),
            Cartan { .. } => None, // central element c
        }
    };
    let (Some(m), Some(n)) = (l_index(a), l_index(b)) else {
        return Vec::new();
    };
    let mut out: Combo = Vec::new();
    let coeff = rat(m - n);
    if !coeff.is_zero() {
        let k = m + n;
        let elem = match k.cmp(&0) {
            Ordering::Greater => BaseElem::raise(m_delta(k), 0),
            Ordering::Less => BaseElem::lower(m_delta(-k), 0),
            Ordering::Equal => BaseElem::cartan(0),
        };
        out.push((coeff, elem));
    }
    if let Some(psi) = psi {
        if m + n == 0 && m != 0 {
            let c = psi.eval(m);
            if !c.is_zero() {
                out.push((c, BaseElem::cartan(1)));
            }
        }
    }
    out
}

/// Heisenberg bracket `[a_m, a_{-m}] = m hbar`, with the grading element
/// `deg` acting by `[deg, a_m] = m a_m`.
fn bracket_heisenberg(a: &BaseElem, b: &BaseElem) -> Combo {
    use BaseElem::*;
    match (a, b) {
        (Raise { root: ra, .. }, Lower { root: rb, .. }) => {
            if ra == rb {
                vec![(rat(ra.coord(0)), BaseElem::cartan(0))]
            } else {
                Vec::new()
            }
        }
        (Lower { root: ra, .. }, Raise { root: rb, .. }) => {
            if ra == rb {
                vec![(rat(-ra.coord(0)), BaseElem::cartan(0))]
            } else {
                Vec::new()
            }
        }
        (Cartan { index: 1 }, Raise { root, slot }) => {
            vec![(rat(root.coord(0)), BaseElem::raise(root.clone(), *slot))]
        }
        (Cartan { index: 1 }, Lower { root, slot }) => {
            vec![(rat(-root.coord(0)), BaseElem::lower(root.clone(), *slot))]
        }
        (Raise { root, slot }, Cartan { index: 1 }) => {
            vec![(rat(-root.coord(0)), BaseElem::raise(root.clone(), *slot))]
        }
        (Lower { root, slot }, Cartan { index: 1 }) => {
            vec![(rat(root.coord(0)), BaseElem::lower(root.clone(), *slot))]
        }
        _ => Vec::new(),
    }
}

impl fmt::Display for BaseElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseElem::Raise { root, slot } => write!(f, "x[{root:?},{slot}]"),
            BaseElem::Lower { root, slot } => write!(f, "y[{root:?},{slot}]"),
            BaseElem::Cartan { index } => write!(f, "h[{index}]"),
        }
    }
}

/// Deduplicate helper used by enumeration code.
pub fn dedup_roots(roots: Vec<RootVector>) -> Vec<RootVector> {
    let mut seen = HashSet::new();
    roots.into_iter().filter(|r| seen.insert(r.clone())).collect()
}
