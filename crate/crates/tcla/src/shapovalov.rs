//! Structured computation of the Shapovalov form and its modification:
//! closed-form block values, block-triangular assembly, and symbolic
//! determinants by block product and by fraction-free elimination.

use crate::coeff_ring::{CartanPoly, Functional, Rational};
use crate::error::{Error, Result};
use crate::lie_core::RootVector;
use crate::linalg;
use crate::partitions::{blocks_of, compare_blocks, LArray, Partition};
use crate::truncation::TruncatedAlgebra;
use crate::uea::{form_entry_oracle, oracle_row, weight_basis};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

/// Which bilinear form a matrix represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// The Shapovalov form `F(y_λ, y_μ) = q(x_λ y_μ)`.
    F,
    /// The modified form `B(y_λ, y_μ) = F(y_λ, y_{μ*})`.
    B,
}

/// How entries are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Closed-form where the theory licenses it, oracle elsewhere.
    Fast,
    /// Every entry through the straightening oracle.
    Oracle,
    /// Both, asserting entrywise equality.
    Both,
}

/// Determinant computation method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetMethod {
    Block,
    Bareiss,
    Both,
}

/// A fully assembled form matrix over the block-ordered partition basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FormMatrix {
    pub chi: RootVector,
    pub variant: Variant,
    pub basis: Vec<Partition>,
    pub entries: Vec<Vec<CartanPoly>>,
}

/// Exact data of one diagonal block: `B` restricted to the span of `P_L`
/// equals `h_L` times the non-degenerate rational form `G_L`.
#[derive(Debug, Clone)]
pub struct BlockValue {
    pub l_array: LArray,
    pub partitions: Vec<Partition>,
    pub h_l: CartanPoly,
    pub gram: Vec<Vec<Rational>>,
}

pub(crate) type MatrixCache = HashMap<(RootVector, Variant), Arc<FormMatrix>>;

fn factorial(k: u32) -> Rational {
    let mut acc = BigInt::from(1);
    for i in 2..=k as u64 {
        acc *= i;
    }
    Rational::from(acc)
}

/// Permanent of a small square rational matrix by Laplace-style expansion.
fn permanent(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    // Expand along the first row with a column mask.
    fn go(m: &[Vec<Rational>], row: usize, used: &mut Vec<bool>) -> Rational {
        if row == m.len() {
            return Rational::one();
        }
        let mut acc = Rational::zero();
        for col in 0..m.len() {
            if used[col] || m[row][col].is_zero() {
                continue;
            }
            used[col] = true;
            acc += &m[row][col] * go(m, row + 1, used);
            used[col] = false;
        }
        acc
    }
    go(m, 0, &mut vec![false; n])
}

/// The symmetrized pairing `⟨λ, μ⟩ = Σ_τ Π_i [x_{λ_τ(i)}, y_{μ_i}]`.
///
/// Products containing a non-Cartan bracket cannot contribute to `S(ĥ)` and
/// are dropped, so only root-matching assignments survive.
pub fn symmetrized_pair(
    alg: &TruncatedAlgebra,
    lambda: &Partition,
    mu: &Partition,
) -> Result<CartanPoly> {
    if lambda.length() != mu.length() {
        return Err(Error::FormArgument(format!(
            "length mismatch: {} vs {}",
            lambda.length(),
            mu.length()
        )));
    }
    let n = lambda.length();
    // Pairwise Cartan-valued brackets, None where the bracket leaves ĥ.
    let mut table: Vec<Vec<Option<CartanPoly>>> = vec![vec![None; n]; n];
    for (i, le) in lambda.entries().iter().enumerate() {
        for (j, me) in mu.entries().iter().enumerate() {
            let combo = alg.bracket(&alg.raise_letter(le), &alg.lower_letter(me));
            let mut poly = CartanPoly::zero();
            let mut cartan = true;
            for (c, letter) in combo {
                match &letter.elem {
                    crate::lie_core::BaseElem::Cartan { index } => poly.add_assign(
                        &CartanPoly::gen(crate::coeff_ring::CartanGen::new(*index, letter.degree))
                            .scale(&c),
                    ),
                    _ => {
                        cartan = false;
                        break;
                    }
                }
            }
            if cartan {
                table[i][j] = Some(poly);
            }
        }
    }
    fn go(
        table: &[Vec<Option<CartanPoly>>],
        i: usize,
        used: &mut Vec<bool>,
        acc: &CartanPoly,
        out: &mut CartanPoly,
    ) {
        if i == table.len() {
            out.add_assign(acc);
            return;
        }
        for j in 0..table.len() {
            if used[j] {
                continue;
            }
            if let Some(Some(b)) = table.get(i).map(|r| &r[j]) {
                if b.is_zero() {
                    continue;
                }
                used[j] = true;
                let next = acc.mul(b);
                go(table, i + 1, used, &next, out);
                used[j] = false;
            }
        }
    }
    let mut out = CartanPoly::zero();
    go(&table, 0, &mut vec![false; n], &CartanPoly::one(), &mut out);
    Ok(out)
}

/// Permanent of the slot-pairing matrix of a slice pair, with the
/// one-dimensional shortcut `k! g^k` that avoids factorial recursion.
fn slice_permanent(
    pairing: &crate::lie_core::PairingElement,
    lambda_slice: &Partition,
    mu_slice: &Partition,
) -> Rational {
    let k = lambda_slice.length() as u32;
    debug_assert_eq!(k, mu_slice.length() as u32);
    if pairing.gram.len() == 1 {
        let g = pairing.gram[0][0].clone();
        let mut p = factorial(k);
        for _ in 0..k {
            p *= &g;
        }
        return p;
    }
    let slots: Vec<Vec<Rational>> = lambda_slice
        .entries()
        .iter()
        .map(|le| {
            mu_slice
                .entries()
                .iter()
                .map(|me| pairing.gram[le.slot as usize][me.slot as usize].clone())
                .collect()
        })
        .collect();
    permanent(&slots)
}

/// Closed-form value of one `(α, d)` slice pair inside a diagonal block:
/// `⟨λ^{α,d}, (μ^{α,d})*⟩ = (h_α ⊗ t^N)^k · perm(slot gram)`.
fn slice_pair_value(
    alg: &TruncatedAlgebra,
    alpha: &RootVector,
    lambda_slice: &Partition,
    mu_slice: &Partition,
) -> Result<CartanPoly> {
    let k = lambda_slice.length() as u32;
    if k == 0 {
        return Ok(CartanPoly::one());
    }
    let pairing = alg.base.pairing_data(alpha)?;
    let h = alg.pairing_poly(alpha)?;
    let perm = slice_permanent(&pairing, lambda_slice, mu_slice);
    Ok(h.pow(k).scale(&perm))
}

/// Closed-form value `B(y_λ, y_ν)` for partitions in the same block.
fn same_block_value(
    alg: &TruncatedAlgebra,
    lambda: &Partition,
    nu: &Partition,
) -> Result<CartanPoly> {
    let mut out = CartanPoly::one();
    for (alpha, d) in lambda.support() {
        let ls = lambda.slice(&alpha, d);
        let ns = nu.slice(&alpha, d);
        out = out.mul(&slice_pair_value(alg, &alpha, &ls, &ns)?);
    }
    Ok(out)
}

/// Fast entry of the modified form `B(y_λ, y_ν)`.
fn fast_b_entry(alg: &TruncatedAlgebra, lambda: &Partition, nu: &Partition) -> Result<CartanPoly> {
    let la = lambda.l_array();
    let na = nu.l_array();
    if la == na {
        return same_block_value(alg, lambda, nu);
    }
    match compare_blocks(alg, &la, &na) {
        Ordering::Greater => Ok(CartanPoly::zero()),
        _ => form_entry_oracle(alg, lambda, &nu.star(alg)),
    }
}

/// Fast entry of the requested variant, falling back to the oracle above the
/// block diagonal.
pub fn fast_form_entry(
    alg: &TruncatedAlgebra,
    lambda: &Partition,
    mu: &Partition,
    variant: Variant,
) -> Result<CartanPoly> {
    if lambda.weight() != mu.weight() {
        return Err(Error::FormArgument(format!(
            "weight mismatch: {} vs {}",
            alg.base.display_weight(&lambda.weight()),
            alg.base.display_weight(&mu.weight())
        )));
    }
    match variant {
        Variant::B => fast_b_entry(alg, lambda, mu),
        Variant::F => fast_b_entry(alg, lambda, &mu.star(alg)),
    }
}

fn star_indices(alg: &TruncatedAlgebra, basis: &[Partition]) -> Result<Vec<usize>> {
    basis
        .iter()
        .map(|p| {
            let starred = p.star(alg);
            basis
                .iter()
                .position(|q| q == &starred)
                .ok_or_else(|| Error::Internal("star left the weight basis".into()))
        })
        .collect()
}

/// Sign of the star permutation on the basis of `P_χ`.
pub fn star_permutation_sign(alg: &TruncatedAlgebra, chi: &RootVector) -> Result<i8> {
    let basis = weight_basis(alg, chi)?;
    let perm = star_indices(alg, &basis)?;
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i8;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    Ok(sign)
}

/// Assemble the full matrix of `F_χ` or `B_χ` over the block-ordered basis.
///
/// `workers` > 1 fans row computation out to that many threads.
pub fn assemble_matrix(
    alg: &TruncatedAlgebra,
    chi: &RootVector,
    variant: Variant,
    mode: Mode,
    workers: usize,
) -> Result<FormMatrix> {
    if mode == Mode::Fast {
        let cache = alg.matrix_cache.lock().unwrap();
        if let Some(m) = cache.get(&(chi.clone(), variant)) {
            return Ok(m.as_ref().clone());
        }
    }
    let basis = weight_basis(alg, chi)?.as_ref().clone();
    let stars = star_indices(alg, &basis)?;
    let n = basis.len();

    let compute_row = |i: usize| -> Result<Vec<CartanPoly>> {
        let lambda = &basis[i];
        let oracle = |out: &mut Vec<CartanPoly>| -> Result<()> {
            let row = oracle_row(alg, lambda)?;
            *out = match variant {
                Variant::F => row.as_ref().clone(),
                Variant::B => (0..n).map(|j| row[stars[j]].clone()).collect(),
            };
            Ok(())
        };
        match mode {
            Mode::Oracle => {
                let mut row = Vec::new();
                oracle(&mut row)?;
                Ok(row)
            }
            Mode::Fast => {
                let mut row = Vec::with_capacity(n);
                let mut oracle_cache: Option<Vec<CartanPoly>> = None;
                for j in 0..n {
                    let la = lambda.l_array();
                    let mu = &basis[j];
                    let target = match variant {
                        Variant::B => mu.clone(),
                        Variant::F => mu.star(alg),
                    };
                    let ta = target.l_array();
                    let entry = if la == ta {
                        same_block_value(alg, lambda, &target)?
                    } else if compare_blocks(alg, &la, &ta) == Ordering::Greater {
                        CartanPoly::zero()
                    } else {
                        if oracle_cache.is_none() {
                            let mut r = Vec::new();
                            oracle(&mut r)?;
                            oracle_cache = Some(r);
                        }
                        oracle_cache.as_ref().unwrap()[j].clone()
                    };
                    row.push(entry);
                }
                Ok(row)
            }
            Mode::Both => {
                // Compare the oracle row against every value the fast path
                // claims on its own (diagonal blocks and theory zeros); the
                // remaining entries defer to the oracle by construction.
                let mut via_oracle = Vec::new();
                oracle(&mut via_oracle)?;
                let la = lambda.l_array();
                for j in 0..n {
                    let target = match variant {
                        Variant::B => basis[j].clone(),
                        Variant::F => basis[j].star(alg),
                    };
                    let ta = target.l_array();
                    let claimed = if la == ta {
                        Some(same_block_value(alg, lambda, &target)?)
                    } else if compare_blocks(alg, &la, &ta) == Ordering::Greater {
                        Some(CartanPoly::zero())
                    } else {
                        None
                    };
                    if let Some(fast) = claimed {
                        if fast != via_oracle[j] {
                            return Err(Error::Internal(format!(
                                "fast/oracle mismatch at row {i}, column {j}"
                            )));
                        }
                    }
                }
                Ok(via_oracle)
            }
        }
    };

    let entries: Vec<Vec<CartanPoly>> = if workers > 1 && n > 1 {
        let results: Vec<Result<Vec<CartanPoly>>> = std::thread::scope(|scope| {
            let chunk = n.div_ceil(workers);
            let handles: Vec<_> = (0..n)
                .collect::<Vec<_>>()
                .chunks(chunk.max(1))
                .map(|rows| {
                    let rows = rows.to_vec();
                    scope.spawn(move || rows.into_iter().map(compute_row).collect::<Vec<_>>())
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("row worker panicked"))
                .collect()
        });
        results.into_iter().collect::<Result<_>>()?
    } else {
        (0..n).map(compute_row).collect::<Result<_>>()?
    };

    let matrix = FormMatrix {
        chi: chi.clone(),
        variant,
        basis,
        entries,
    };
    if mode == Mode::Fast {
        let mut cache = alg.matrix_cache.lock().unwrap();
        cache.insert((chi.clone(), variant), Arc::new(matrix.clone()));
    }
    Ok(matrix)
}

/// Exact block data `h_L`, `G_L` for every block of `P_χ` in θ order.
pub fn block_values(alg: &TruncatedAlgebra, chi: &RootVector) -> Result<Vec<BlockValue>> {
    let blocks = blocks_of(alg, chi)?;
    let mut out = Vec::with_capacity(blocks.len());
    for (l_array, partitions) in blocks {
        let mut h_l = CartanPoly::one();
        for ((alpha, _), &k) in l_array.counts() {
            let h = alg.pairing_poly(alpha)?;
            h_l = h_l.mul(&h.pow(k)).scale(&factorial(k));
        }
        // Gram of G_L: product over slices of symmetric-power form values.
        let m = partitions.len();
        let mut gram = vec![vec![Rational::zero(); m]; m];
        for i in 0..m {
            for j in 0..m {
                let mut val = Rational::one();
                for ((alpha, d), &k) in l_array.counts() {
                    let pairing = alg.base.pairing_data(alpha)?;
                    let ls = partitions[i].slice(alpha, *d);
                    let ms = partitions[j].slice(alpha, *d);
                    val *= slice_permanent(&pairing, &ls, &ms) / factorial(k);
                }
                gram[i][j] = val;
            }
        }
        out.push(BlockValue {
            l_array,
            partitions,
            h_l,
            gram,
        });
    }
    Ok(out)
}

/// Fraction-free determinant of a polynomial matrix (Bareiss elimination).
///
/// Pivots prefer the fewest-term nonzero candidate; every division is exact
/// in the polynomial ring.
pub fn bareiss_det(matrix: &[Vec<CartanPoly>]) -> Result<CartanPoly> {
    let n = matrix.len();
    if n == 0 {
        return Ok(CartanPoly::one());
    }
    let mut a: Vec<Vec<CartanPoly>> = matrix.to_vec();
    let mut sign = false;
    let mut prev = CartanPoly::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| a[i][k].num_terms());
        let Some(pivot) = pivot else {
            return Ok(CartanPoly::zero());
        };
        if pivot != k {
            a.swap(pivot, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.exact_div(&prev).ok_or_else(|| {
                    Error::Internal("fraction-free elimination hit an inexact division".into())
                })?;
            }
            a[i][k] = CartanPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign { det.neg() } else { det })
}

/// Result of a determinant computation, carrying both the modified-form and
/// Shapovalov-form determinants (they differ by the star permutation sign).
#[derive(Debug, Clone)]
pub struct DeterminantResult {
    pub chi: RootVector,
    pub det_b: CartanPoly,
    pub det_f: CartanPoly,
    pub star_sign: i8,
    pub blocks: Option<Vec<BlockValue>>,
}

/// Symbolic determinant of the form at `chi` by the requested method(s).
pub fn determinant(
    alg: &TruncatedAlgebra,
    chi: &RootVector,
    method: DetMethod,
    workers: usize,
) -> Result<DeterminantResult> {
    if !alg.base.in_positive_lattice(chi) {
        return Err(Error::WeightNotPositive {
            chi: alg.base.display_weight(chi),
        });
    }
    let sign = star_permutation_sign(alg, chi)?;
    let apply_sign = |p: &CartanPoly| if sign < 0 { p.neg() } else { p.clone() };

    let block_route = |blocks: &[BlockValue]| -> Result<CartanPoly> {
        let mut det_b = CartanPoly::one();
        for b in blocks {
            let g_det = linalg::det(&b.gram);
            if g_det.is_zero() {
                return Err(Error::Internal(
                    "degenerate block Gram matrix in a non-degenerately paired algebra".into(),
                ));
            }
            det_b = det_b
                .mul(&b.h_l.pow(b.partitions.len() as u32))
                .scale(&g_det);
        }
        Ok(det_b)
    };

    match method {
        DetMethod::Block => {
            let blocks = block_values(alg, chi)?;
            let det_b = block_route(&blocks)?;
            Ok(DeterminantResult {
                chi: chi.clone(),
                det_f: apply_sign(&det_b),
                det_b,
                star_sign: sign,
                blocks: Some(blocks),
            })
        }
        DetMethod::Bareiss => {
            let f = assemble_matrix(alg, chi, Variant::F, Mode::Fast, workers)?;
            let det_f = bareiss_det(&f.entries)?;
            Ok(DeterminantResult {
                chi: chi.clone(),
                det_b: apply_sign(&det_f),
                det_f,
                star_sign: sign,
                blocks: None,
            })
        }
        DetMethod::Both => {
            let blocks = block_values(alg, chi)?;
            let det_b = block_route(&blocks)?;
            let f = assemble_matrix(alg, chi, Variant::F, Mode::Fast, workers)?;
            let det_f = bareiss_det(&f.entries)?;
            if apply_sign(&det_b) != det_f {
                return Err(Error::Internal(
                    "block-product determinant disagrees with elimination".into(),
                ));
            }
            Ok(DeterminantResult {
                chi: chi.clone(),
                det_b,
                det_f,
                star_sign: sign,
                blocks: Some(blocks),
            })
        }
    }
}

/// Rank deficiency of the evaluated form `F_χ(Λ)`.
pub fn radical_dimension(
    alg: &TruncatedAlgebra,
    chi: &RootVector,
    lam: &Functional,
) -> Result<usize> {
    let matrix = assemble_matrix(alg, chi, Variant::F, Mode::Fast, 1)?;
    let evaluated: Vec<Vec<Rational>> = matrix
        .entries
        .iter()
        .map(|row| row.iter().map(|p| p.eval(lam)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    Ok(matrix.basis.len() - linalg::rank(&evaluated))
}

impl FormMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Exact zero test below the block diagonal in θ order.
    pub fn is_block_upper_triangular(&self, alg: &TruncatedAlgebra) -> bool {
        for (i, li) in self.basis.iter().enumerate() {
            for (j, lj) in self.basis.iter().enumerate() {
                if compare_blocks(alg, &li.l_array(), &lj.l_array()) == Ordering::Greater
                    && !self.entries[i][j].is_zero()
                {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_json(&self, alg: &TruncatedAlgebra) -> Value {
        let names = &alg.base.cartan_names;
        json!({
            "chi": alg.base.display_weight(&self.chi),
            "variant": match self.variant { Variant::F => "F", Variant::B => "B" },
            "basis": self.basis.iter().map(|p| partition_to_json(alg, p)).collect::<Vec<_>>(),
            "entries": self.entries.iter().map(|row| {
                row.iter().map(|p| p.to_json(names)).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self, alg: &TruncatedAlgebra) -> String {
        let names = &alg.base.cartan_names;
        let mut out = String::new();
        for (i, p) in self.basis.iter().enumerate() {
            out.push_str(&format!("y[{}] = {}\n", i, partition_display(alg, p)));
        }
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|p| p.to_string_named(names)).collect();
            out.push_str(&format!("[ {} ]\n", cells.join(" | ")));
        }
        out
    }

    pub fn to_latex(&self, alg: &TruncatedAlgebra) -> String {
        let names = &alg.base.cartan_names;
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| latex_poly(p, names))
                    .collect::<Vec<_>>()
                    .join(" & ")
            })
            .collect();
        format!("\\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}\n", rows.join(" \\\\\n"))
    }
}

fn latex_poly(p: &CartanPoly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let s = p.to_string_named(names);
    // (name@d)^k -> (name \otimes t^{d})^{k}
    let mut out = String::new();
    let mut rest = s.as_str();
    while let Some(open) = rest.find('(') {
        out.push_str(&rest[..open]);
        let Some(close) = rest[open..].find(')') else {
            break;
        };
        let inner = &rest[open + 1..open + close];
        if let Some((name, deg)) = inner.rsplit_once('@') {
            out.push_str(&format!("(\\mathrm{{{}}}{{\\otimes}}t^{{{}}})", name.replace('_', "\\_"), deg));
        } else {
            out.push_str(&format!("({inner})"));
        }
        rest = &rest[open + close + 1..];
    }
    out.push_str(rest);
    out.replace('*', "\\,")
}

pub fn partition_to_json(alg: &TruncatedAlgebra, p: &Partition) -> Value {
    Value::Array(
        p.entries()
            .iter()
            .map(|e| {
                json!([
                    alg.base.display_weight(&e.root),
                    e.degree,
                    e.slot,
                ])
            })
            .collect(),
    )
}

pub fn partition_from_json(alg: &TruncatedAlgebra, v: &Value) -> Result<Partition> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("partition JSON must be an array".into()))?;
    let mut entries = Vec::new();
    for e in arr {
        let triple = e
            .as_array()
            .filter(|t| t.len() == 2 || t.len() == 3)
            .ok_or_else(|| Error::Parse("partition entry must be [root, degree(, slot)]".into()))?;
        let root = alg.base.parse_weight(
            triple[0]
                .as_str()
                .ok_or_else(|| Error::Parse("root must be a string".into()))?,
        )?;
        let degree = triple[1]
            .as_u64()
            .ok_or_else(|| Error::Parse("degree must be an integer".into()))? as u16;
        let slot = triple
            .get(2)
            .and_then(Value::as_u64)
            .unwrap_or(0) as u16;
        if degree > alg.n() {
            return Err(Error::Parse(format!(
                "entry degree {degree} exceeds nilpotency {}",
                alg.n()
            )));
        }
        entries.push(crate::truncation::TruncIndex::new(root, slot, degree));
    }
    Partition::new(alg, entries)
}

pub fn partition_display(alg: &TruncatedAlgebra, p: &Partition) -> String {
    if p.is_empty() {
        return "{}".into();
    }
    let inner: Vec<String> = p
        .entries()
        .iter()
        .map(|e| {
            if e.slot == 0 {
                format!("({},{})", alg.base.display_weight(&e.root), e.degree)
            } else {
                format!("({},{};{})", alg.base.display_weight(&e.root), e.degree, e.slot)
            }
        })
        .collect();
    format!("{{{}}}", inner.join(","))
}
