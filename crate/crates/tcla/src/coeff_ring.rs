//! Exact commutative polynomial ring over the Cartan generators of the
//! truncated Cartan subalgebra.
//!
//! Elements of `S(h ⊗ k[t]/t^{N+1})` are represented as sparse polynomials
//! with arbitrary-precision rational coefficients. Monomials are sorted
//! multisets of generators; the zero polynomial is the empty term map, so
//! canonical forms are unique and equality is structural.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exact scalar type: arbitrary-precision rational, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Product with an integer fast path: the generic `Ratio` multiply runs two
/// big gcds even when both denominators are one, which dominates the
/// enveloping-algebra folds.
pub fn rat_mul(a: &Rational, b: &Rational) -> Rational {
    if a.denom().is_one() && b.denom().is_one() {
        Rational::new_raw(a.numer() * b.numer(), BigInt::from(1))
    } else {
        a * b
    }
}

/// Sum with the same integer fast path as [`rat_mul`].
pub fn rat_add(a: &Rational, b: &Rational) -> Rational {
    if a.denom().is_one() && b.denom().is_one() {
        Rational::new_raw(a.numer() + b.numer(), BigInt::from(1))
    } else {
        a + b
    }
}

/// Binary exponentiation; reduced inputs stay reduced under powers.
pub fn rat_pow(x: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = Rational::new_raw(acc.numer() * base.numer(), acc.denom() * base.denom());
        }
        e >>= 1;
        if e > 0 {
            base = Rational::new_raw(base.numer() * base.numer(), base.denom() * base.denom());
        }
    }
    acc
}

/// Convenience constructor for small integer rationals.
pub fn rat(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Parse a rational from "p/q" or "p".
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad integer {t:?}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(p)?, den))
        }
        None => Ok(Rational::from(parse_int(s)?)),
    }
}

/// Format a rational as "p/q", or "p" when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A generator `h ⊗ t^d` of the truncated Cartan subalgebra.
///
/// `h_index` refers to a basis element of the Cartan subalgebra of the base
/// algebra (the owning [`AlgebraSpec`](crate::lie_core::AlgebraSpec) maps
/// indices to names); `t_degree` lies in `0..=N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CartanGen {
    pub h_index: u16,
    pub t_degree: u16,
}

impl CartanGen {
    pub fn new(h_index: u16, t_degree: u16) -> Self {
        Self { h_index, t_degree }
    }
}

impl fmt::Display for CartanGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h#{}@{}", self.h_index, self.t_degree)
    }
}

/// A monomial: a finite multiset of generators, stored as a sorted
/// exponent list with strictly positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(CartanGen, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn gen(g: CartanGen) -> Self {
        Self { factors: vec![(g, 1)] }
    }

    /// Build from an unsorted list of (generator, exponent) pairs.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (CartanGen, u32)>) -> Self {
        let mut map: BTreeMap<CartanGen, u32> = BTreeMap::new();
        for (g, e) in pairs {
            if e > 0 {
                *map.entry(g).or_insert(0) += e;
            }
        }
        Self { factors: map.into_iter().collect() }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(CartanGen, u32)] {
        &self.factors
    }

    /// Total degree (number of generators counted with multiplicity).
    pub fn total_degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    /// Sum of `t_degree` over the multiset.
    pub fn t_degree(&self) -> u32 {
        self.factors.iter().map(|&(g, e)| g.t_degree as u32 * e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            match self.factors[i].0.cmp(&other.factors[j].0) {
                Ordering::Less => {
                    out.push(self.factors[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.factors[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.factors[i].0, self.factors[i].1 + other.factors[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial { factors: out }
    }

    /// Exact quotient, if `other` divides this monomial.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for &(g, e) in &self.factors {
            let mut rem = e;
            while j < other.factors.len() && other.factors[j].0 < g {
                return None; // divisor has a generator we lack
            }
            if j < other.factors.len() && other.factors[j].0 == g {
                if other.factors[j].1 > e {
                    return None;
                }
                rem = e - other.factors[j].1;
                j += 1;
            }
            if rem > 0 {
                out.push((g, rem));
            }
        }
        if j < other.factors.len() {
            return None;
        }
        Some(Monomial { factors: out })
    }

    pub fn exponent_of(&self, g: CartanGen) -> u32 {
        self.factors
            .iter()
            .find(|&&(h, _)| h == g)
            .map_or(0, |&(_, e)| e)
    }
}

// Graded lexicographic order: total degree first, then exponent vectors with
// smaller generators most significant. This is a genuine monomial order, so
// leading terms are multiplicative and fraction-free elimination can divide
// by leading monomials.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.factors.get(i), other.factors.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(ga, ea)), Some(&(gb, eb))) => match ga.cmp(&gb) {
                    // The side owning the smaller generator has a positive
                    // exponent where the other has zero.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of the polynomial ring `S(ĥ)`: finite map from monomial to nonzero
/// rational. The zero polynomial is the empty map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CartanPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl CartanPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Self { terms }
    }

    pub fn gen(g: CartanGen) -> Self {
        Self::term(Rational::one(), Monomial::gen(g))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, c: Rational, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = rat_add(e.get(), &c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &CartanPoly) -> CartanPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }

    pub fn add_assign(&mut self, other: &CartanPoly) {
        for (m, c) in &other.terms {
            self.add_term(c.clone(), m.clone());
        }
    }

    pub fn neg(&self) -> CartanPoly {
        CartanPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &CartanPoly) -> CartanPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(-c, m.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> CartanPoly {
        if c.is_zero() {
            return CartanPoly::zero();
        }
        CartanPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), rat_mul(k, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &CartanPoly) -> CartanPoly {
        let mut out = CartanPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(rat_mul(ca, cb), ma.mul(mb));
            }
        }
        out
    }

    /// Multiply by a single generator (fast path used by the module action).
    pub fn mul_gen(&self, g: CartanGen) -> CartanPoly {
        let m = Monomial::gen(g);
        CartanPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(&m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> CartanPoly {
        let mut out = CartanPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Total degree in the Cartan generators; zero polynomial reports 0.
    pub fn h_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// The homogeneous component of Cartan degree `d`.
    pub fn h_degree_component(&self, d: u32) -> CartanPoly {
        CartanPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Split by total degree in the indeterminate t.
    pub fn t_degree_components(&self) -> BTreeMap<u32, CartanPoly> {
        let mut out: BTreeMap<u32, CartanPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.t_degree())
                .or_default()
                .add_term(c.clone(), m.clone());
        }
        out
    }

    /// True if every generator in every monomial has `t_degree == n`.
    pub fn supported_on_t_degree(&self, n: u16) -> bool {
        self.terms
            .keys()
            .all(|m| m.factors().iter().all(|&(g, _)| g.t_degree == n))
    }

    /// Substitute the functional's values for every generator.
    pub fn eval(&self, lam: &Functional) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(g, e) in m.factors() {
                let x = lam.get(g).ok_or(Error::MissingAssignment {
                    gen: g.to_string(),
                })?;
                v = rat_mul(&v, &rat_pow(x, e));
            }
            acc = rat_add(&acc, &v);
        }
        Ok(acc)
    }

    /// Leading term under the graded-lex monomial order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    ///
    /// Long division by leading terms: when the quotient exists in the ring,
    /// each step's leading monomial is divisible and strictly decreases.
    pub fn exact_div(&self, divisor: &CartanPoly) -> Option<CartanPoly> {
        let (dm, dc) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = CartanPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(dm)?;
            let qc = rc / dc;
            let t = CartanPoly::term(qc, qm);
            rem = rem.sub(&t.mul(divisor));
            quot.add_assign(&t);
        }
        Some(quot)
    }

    /// Canonical JSON form: list of terms, leading term first.
    pub fn to_json(&self, names: &[String]) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mono: Vec<Value> = m
                    .factors()
                    .iter()
                    .flat_map(|&(g, e)| {
                        std::iter::repeat_n(
                            json!([names[g.h_index as usize], g.t_degree]),
                            e as usize,
                        )
                    })
                    .collect();
                json!({ "coeff": format_rational(c), "monomial": mono })
            })
            .collect();
        Value::Array(terms)
    }

    pub fn from_json(value: &Value, names: &[String]) -> Result<CartanPoly> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::Parse("polynomial JSON must be an array".into()))?;
        let index_of = |name: &str| -> Result<u16> {
            names
                .iter()
                .position(|n| n == name)
                .map(|i| i as u16)
                .ok_or_else(|| Error::Parse(format!("unknown Cartan generator {name:?}")))
        };
        let mut out = CartanPoly::zero();
        for term in arr {
            let coeff = parse_rational(
                term.get("coeff")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Parse("term missing coeff".into()))?,
            )?;
            let mono = term
                .get("monomial")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("term missing monomial".into()))?;
            let mut pairs = Vec::new();
            for entry in mono {
                let pair = entry
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::Parse("monomial entry must be [name, degree]".into()))?;
                let name = pair[0]
                    .as_str()
                    .ok_or_else(|| Error::Parse("generator name must be a string".into()))?;
                let deg = pair[1]
                    .as_u64()
                    .ok_or_else(|| Error::Parse("t-degree must be an integer".into()))?;
                pairs.push((CartanGen::new(index_of(name)?, deg as u16), 1));
            }
            out.add_term(coeff, Monomial::from_pairs(pairs));
        }
        Ok(out)
    }

    /// Human-readable string, e.g. `4*(h_a1@1)^2 + (h_a2@0)`.
    pub fn to_string_named(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut factors: Vec<String> = Vec::new();
            for &(g, e) in m.factors() {
                let base = format!("({}@{})", names[g.h_index as usize], g.t_degree);
                factors.push(if e == 1 { base } else { format!("{base}^{e}") });
            }
            let body = factors.join("*");
            let s = if m.is_one() {
                format_rational(c)
            } else if c.is_one() {
                body
            } else if (-c).is_one() {
                format!("-{body}")
            } else {
                format!("{}*{}", format_rational(c), body)
            };
            parts.push(s);
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(stripped) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

/// A point of the dual of the truncated Cartan subalgebra: rational values on
/// generators `h ⊗ t^d`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Functional {
    values: BTreeMap<CartanGen, Rational>,
}

impl Functional {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (CartanGen, Rational)>) -> Self {
        Self {
            values: pairs.into_iter().collect(),
        }
    }

    pub fn set(&mut self, g: CartanGen, v: Rational) {
        self.values.insert(g, v);
    }

    pub fn get(&self, g: CartanGen) -> Option<&Rational> {
        self.values.get(&g)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CartanGen, &Rational)> {
        self.values.iter()
    }

    /// Parse `{"values": {"h_a1@1": "3/2", ...}}`.
    pub fn from_json(value: &Value, names: &[String]) -> Result<Functional> {
        let map = value
            .get("values")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("functional JSON must have a \"values\" object".into()))?;
        let mut out = Functional::new();
        for (key, v) in map {
            let (name, deg) = key
                .rsplit_once('@')
                .ok_or_else(|| Error::Parse(format!("bad generator key {key:?}, want name@degree")))?;
            let h_index = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Parse(format!("unknown Cartan generator {name:?}")))?
                as u16;
            let t_degree: u16 = deg
                .parse()
                .map_err(|_| Error::Parse(format!("bad t-degree in {key:?}")))?;
            let r = parse_rational(
                v.as_str()
                    .ok_or_else(|| Error::Parse(format!("value for {key:?} must be a string")))?,
            )?;
            out.set(CartanGen::new(h_index, t_degree), r);
        }
        Ok(out)
    }

    pub fn to_json(&self, names: &[String]) -> Value {
        let mut map = serde_json::Map::new();
        for (g, v) in &self.values {
            map.insert(
                format!("{}@{}", names[g.h_index as usize], g.t_degree),
                Value::String(format_rational(v)),
            );
        }
        json!({ "values": Value::Object(map) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(h: u16, t: u16) -> CartanGen {
        CartanGen::new(h, t)
    }

    fn names() -> Vec<String> {
        vec!["h_a1".into(), "h_a2".into()]
    }

    #[test]
    fn additive_identity_and_inverse() {
        let p = CartanPoly::gen(g(0, 1));
        assert_eq!(CartanPoly::zero().add(&p), p);
        let sum = p.add(&p.scale(&rat(-1)));
        assert!(sum.is_zero());
    }

    #[test]
    fn add_merges_distinct_generators() {
        let p = CartanPoly::gen(g(0, 1)).add(&CartanPoly::gen(g(1, 1)));
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn multiplicative_identity_and_square() {
        let p = CartanPoly::gen(g(0, 1));
        assert_eq!(CartanPoly::one().mul(&p), p);
        let sq = p.mul(&p);
        let expected = CartanPoly::term(rat(1), Monomial::from_pairs([(g(0, 1), 2)]));
        assert_eq!(sq, expected);
    }

    #[test]
    fn difference_of_squares() {
        let h1 = CartanPoly::gen(g(0, 0));
        let h2 = CartanPoly::gen(g(1, 0));
        let left = h1.add(&h2).mul(&h1.sub(&h2));
        let right = h1.mul(&h1).sub(&h2.mul(&h2));
        assert_eq!(left, right);
    }

    #[test]
    fn eval_examples() {
        let lam = Functional::from_pairs([(g(0, 1), rat(5))]);
        assert_eq!(CartanPoly::zero().eval(&lam).unwrap(), rat(0));
        assert_eq!(CartanPoly::gen(g(0, 1)).eval(&lam).unwrap(), rat(5));

        // (h1 t)^2 * (h2 t) + 3 at h1t = 2, h2t = -1 gives 4*(-1) + 3 = -1.
        let lam2 = Functional::from_pairs([(g(0, 1), rat(2)), (g(1, 1), rat(-1))]);
        let p = CartanPoly::gen(g(0, 1))
            .pow(2)
            .mul(&CartanPoly::gen(g(1, 1)))
            .add(&CartanPoly::constant(rat(3)));
        assert_eq!(p.eval(&lam2).unwrap(), rat(-1));
    }

    #[test]
    fn eval_missing_assignment_errors() {
        let lam = Functional::new();
        assert!(matches!(
            CartanPoly::gen(g(0, 1)).eval(&lam),
            Err(Error::MissingAssignment { .. })
        ));
    }

    #[test]
    fn t_degree_split() {
        let p = CartanPoly::gen(g(0, 0)).add(&CartanPoly::gen(g(0, 1)));
        let comps = p.t_degree_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[&0], CartanPoly::gen(g(0, 0)));
        assert_eq!(comps[&1], CartanPoly::gen(g(0, 1)));

        let sq = CartanPoly::gen(g(0, 1)).pow(2);
        let comps = sq.t_degree_components();
        assert_eq!(comps.len(), 1);
        assert!(comps.contains_key(&2));
    }

    #[test]
    fn exact_division_roundtrip() {
        let h1 = CartanPoly::gen(g(0, 0));
        let h2 = CartanPoly::gen(g(1, 1));
        let a = h1.add(&h2.scale(&rat(3))).add(&CartanPoly::constant(rat(2)));
        let b = h1.mul(&h2).sub(&CartanPoly::constant(rat(7)));
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert!(b.exact_div(&a).is_none());
    }

    #[test]
    fn json_roundtrip_and_string_form() {
        let p = CartanPoly::term(rat(4), Monomial::from_pairs([(g(0, 1), 2)]))
            .add(&CartanPoly::constant(Rational::new(BigInt::from(-3), BigInt::from(2))));
        let names = names();
        let v = p.to_json(&names);
        let q = CartanPoly::from_json(&v, &names).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.to_string_named(&names), "4*(h_a1@1)^2 - 3/2");
    }

    fn arb_poly() -> impl Strategy<Value = CartanPoly> {
        prop::collection::vec(
            (
                (0u16..2, 0u16..2),
                prop::collection::vec((0u16..2, 0u16..2, 1u32..3), 0..3),
                -4i64..5,
            ),
            0..5,
        )
        .prop_map(|terms| {
            let mut p = CartanPoly::zero();
            for ((h, t), mono, c) in terms {
                let mut pairs = vec![(g(h, t), 1)];
                pairs.extend(mono.into_iter().map(|(h, t, e)| (g(h, t), e)));
                p.add_term(rat(c), Monomial::from_pairs(pairs));
            }
            p
        })
    }

    fn arb_functional() -> impl Strategy<Value = Functional> {
        prop::collection::vec(-5i64..6, 4).prop_map(|vals| {
            Functional::from_pairs(
                (0..2u16)
                    .flat_map(|h| (0..2u16).map(move |t| g(h, t)))
                    .zip(vals.into_iter().map(rat)),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn eval_is_ring_homomorphism(a in arb_poly(), b in arb_poly(), c in arb_poly(), lam in arb_functional()) {
            let lhs = a.mul(&b).add(&c).eval(&lam).unwrap();
            let rhs = a.eval(&lam).unwrap() * b.eval(&lam).unwrap() + c.eval(&lam).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn canonical_form_is_construction_order_independent(a in arb_poly(), b in arb_poly()) {
            // Accumulate the same terms in two different orders.
            let mut fwd = CartanPoly::zero();
            for (m, c) in a.terms().chain(b.terms()) {
                fwd.add_term(c.clone(), m.clone());
            }
            let mut rev = CartanPoly::zero();
            let all: Vec<_> = a.terms().chain(b.terms()).collect();
            for (m, c) in all.into_iter().rev() {
                rev.add_term(c.clone(), m.clone());
            }
            prop_assert_eq!(fwd, rev);
        }

        #[test]
        fn monomial_order_is_multiplicative(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            // a < b implies ac < bc on leading monomials.
            if let (Some((ma, _)), Some((mb, _)), Some((mc, _))) = (a.leading(), b.leading(), c.leading()) {
                let ord = ma.cmp(mb);
                prop_assert_eq!(ma.mul(mc).cmp(&mb.mul(mc)), ord);
            }
        }
    }
}
