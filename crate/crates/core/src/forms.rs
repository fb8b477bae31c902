//! Exact invariants of integer symmetric bilinear forms.
//!
//! These are computed from the Kirby linking matrix and used as an
//! independent check on the handle-slide classification: a connect sum of
//! `n` sphere bundles over `S2` has an indefinite unimodular form of rank
//! `2n` and signature 0, even exactly when every summand is `S2xS2`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::construct::{classify, kirby_link, validate_path, ConnectSum, DualPath};
use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<IntMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::BadMatrix("rows x cols"));
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Result<IntMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::BadMatrix("rectangular"));
        }
        let entries = rows.iter().flatten().map(|&x| x.into()).collect();
        IntMatrix::new(rows.len(), cols, entries)
    }

    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::BadMatrix("conformable"));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.cols.max(1)).take(self.rows).map(<[BigInt]>::to_vec).collect()
    }
}

/// Square integer matrix equal to its transpose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymIntMatrix(IntMatrix);

impl SymIntMatrix {
    pub fn new(m: IntMatrix) -> Result<SymIntMatrix> {
        if m.rows != m.cols {
            return Err(Error::BadMatrix("square"));
        }
        for i in 0..m.rows {
            for j in 0..i {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::BadMatrix("symmetric"));
                }
            }
        }
        Ok(SymIntMatrix(m))
    }

    pub fn from_i128(order: usize, entries: &[i128]) -> Result<SymIntMatrix> {
        SymIntMatrix::new(IntMatrix::new(
            order,
            order,
            entries.iter().map(|&x| BigInt::from(x)).collect(),
        )?)
    }

    pub fn order(&self) -> usize {
        self.0.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        self.0.get(i, j)
    }

    pub fn entries(&self) -> &[BigInt] {
        self.0.entries()
    }

    pub fn as_matrix(&self) -> &IntMatrix {
        &self.0
    }

    /// `P^T M P`.
    pub fn congruent(&self, p: &IntMatrix) -> Result<SymIntMatrix> {
        SymIntMatrix::new(p.transpose().mul(&self.0)?.mul(p)?)
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det_int(m: &IntMatrix) -> Result<BigInt> {
    if m.rows != m.cols {
        return Err(Error::BadMatrix("square"));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.to_rows();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Index sets of the connected components of the graph with an edge `ij`
/// whenever `m_ij != 0`. The form is the orthogonal sum of these blocks.
fn orthogonal_blocks(m: &SymIntMatrix) -> Vec<Vec<usize>> {
    let n = m.order();
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut block = vec![start];
        let mut k = 0;
        while k < block.len() {
            let i = block[k];
            for j in 0..n {
                if !seen[j] && !m.get(i, j).is_zero() {
                    seen[j] = true;
                    block.push(j);
                }
            }
            k += 1;
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks
}

fn principal_submatrix(m: &SymIntMatrix, idx: &[usize]) -> SymIntMatrix {
    let entries = idx
        .iter()
        .flat_map(|&i| idx.iter().map(move |&j| m.get(i, j).clone()))
        .collect();
    SymIntMatrix(IntMatrix {
        rows: idx.len(),
        cols: idx.len(),
        entries,
    })
}

/// Invariant factors of `diag(d)` for nonzero `d`.
fn diagonal_invariant_factors(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Inertia `(positive, negative)`, summed over orthogonal blocks.
fn inertia(m: &SymIntMatrix) -> (usize, usize) {
    orthogonal_blocks(m)
        .iter()
        .map(|b| block_inertia(&principal_submatrix(m, b)))
        .fold((0, 0), |(p, n), (bp, bn)| (p + bp, n + bn))
}

/// Inertia by rational congruence diagonalization.
fn block_inertia(m: &SymIntMatrix) -> (usize, usize) {
    let n = m.order();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from_integer(m.get(i, j).clone())).collect())
        .collect();
    let mut live: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    while !live.is_empty() {
        let pivot = live.iter().position(|&i| !a[i][i].is_zero());
        let pivot = match pivot {
            Some(k) => live.remove(k),
            None => {
                // all live diagonal entries vanish: add row/col j to i to get 2 a_ij there
                let pair = live.iter().enumerate().find_map(|(x, &i)| {
                    live[x + 1..]
                        .iter()
                        .find(|&&j| !a[i][j].is_zero())
                        .map(|&j| (i, j))
                });
                let Some((i, j)) = pair else { break };
                for &c in &live {
                    let v = a[j][c].clone();
                    a[i][c] += v;
                }
                for &r in &live {
                    let v = a[r][j].clone();
                    a[r][i] += v;
                }
                continue;
            }
        };
        let d = a[pivot][pivot].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for &r in &live {
            if a[r][pivot].is_zero() {
                continue;
            }
            let f = &a[r][pivot] / &d;
            for &c in &live {
                let v = &f * &a[pivot][c];
                a[r][c] -= v;
            }
        }
    }
    (pos, neg)
}

pub fn signature(m: &SymIntMatrix) -> i64 {
    let (pos, neg) = inertia(m);
    pos as i64 - neg as i64
}

pub fn rank(m: &SymIntMatrix) -> usize {
    let (pos, neg) = inertia(m);
    pos + neg
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// `Q(x, x) = sum b_ii x_i^2 mod 2`, so the form is even iff its diagonal is.
pub fn parity(m: &SymIntMatrix) -> Parity {
    if (0..m.order()).all(|i| m.get(i, i).is_even()) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Nonzero invariant factors `d_1 | d_2 | ...`, all positive.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.to_rows();
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return out;
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let v = &q * &a[i][t];
                    a[i][j] -= v;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let stray = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
            match stray {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormInvariants {
    pub rank: usize,
    pub determinant: BigInt,
    pub signature: i64,
    pub parity: Parity,
    pub elementary_divisors: Vec<BigInt>,
}

impl FormInvariants {
    /// Unimodular on the quotient by the radical: every nonzero invariant
    /// factor is 1. For a nondegenerate form this is `|det| = 1`.
    pub fn is_unimodular(&self) -> bool {
        self.elementary_divisors.iter().all(One::is_one)
    }
}

/// Computed block by block over the orthogonal decomposition of `m`.
pub fn form_invariants(m: &SymIntMatrix) -> FormInvariants {
    let (mut pos, mut neg) = (0, 0);
    let mut determinant = BigInt::one();
    let mut divisors = Vec::new();
    for idx in orthogonal_blocks(m) {
        let block = principal_submatrix(m, &idx);
        let (p, n) = block_inertia(&block);
        pos += p;
        neg += n;
        determinant *= det_int(block.as_matrix()).expect("square");
        divisors.extend(smith_normal_form(block.as_matrix()));
    }
    FormInvariants {
        rank: pos + neg,
        determinant,
        signature: pos as i64 - neg as i64,
        parity: parity(m),
        elementary_divisors: diagonal_invariant_factors(divisors),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identification {
    Sum(ConnectSum),
    Unknown,
}

impl fmt::Display for Identification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identification::Sum(c) => write!(f, "{c}"),
            Identification::Unknown => f.write_str("unknown"),
        }
    }
}

/// Recognize `#n S2xS2` (even) and `#n S2x~S2` (odd) from rank `2n`,
/// signature 0 and unimodularity.
pub fn identify(inv: &FormInvariants) -> Identification {
    if inv.rank == 0 || !inv.rank.is_multiple_of(2) || inv.signature != 0 || !inv.is_unimodular() {
        return Identification::Unknown;
    }
    let n = inv.rank / 2;
    Identification::Sum(match inv.parity {
        Parity::Even => ConnectSum {
            raw_untwisted: n,
            raw_twisted: 0,
        },
        Parity::Odd => ConnectSum {
            raw_untwisted: 0,
            raw_twisted: n,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub classification: ConnectSum,
    pub invariants: FormInvariants,
    pub identified: Identification,
    /// Empty when the classifier and the form invariants agree.
    pub mismatches: Vec<String>,
}

impl ConsistencyReport {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compare the handle-slide classification of `path` with the invariants of
/// its linking matrix, listing every disagreement.
pub fn consistency_report(path: &DualPath) -> Result<ConsistencyReport> {
    let violations = validate_path(path);
    if let Some(v) = violations.first() {
        return Err(Error::InvalidPath(v.to_string()));
    }
    let classification = classify(path);
    let link = kirby_link(path);
    let invariants = form_invariants(&link.linking_matrix);
    let identified = identify(&invariants);

    let mut mismatches = Vec::new();
    let n = classification.summand_count();
    if invariants.rank != 2 * n {
        mismatches.push(format!("rank {} != 2 x {n} summands", invariants.rank));
    }
    let twisted = classification.raw_twisted >= 1;
    if (invariants.parity == Parity::Odd) != twisted {
        mismatches.push(format!(
            "form is {} but classifier reports {} twisted summands",
            invariants.parity, classification.raw_twisted
        ));
    }
    if invariants.signature != 0 {
        mismatches.push(format!("signature {} != 0", invariants.signature));
    }
    if !invariants.is_unimodular() {
        mismatches.push(format!(
            "form is not unimodular (invariant factors {:?})",
            invariants
                .elementary_divisors
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        ));
    }
    match identified {
        Identification::Sum(c) if c.normal_form() == classification.normal_form() => {}
        other => mismatches.push(format!(
            "form identifies {other}, classifier gives {classification}"
        )),
    }
    Ok(ConsistencyReport {
        classification,
        invariants,
        identified,
        mismatches,
    })
}

/// As [`consistency_report`], failing on the first violated equality.
pub fn consistency_check(path: &DualPath) -> Result<ConsistencyReport> {
    let report = consistency_report(path)?;
    match report.mismatches.first() {
        Some(first) => Err(Error::Mismatch(first.clone())),
        None => Ok(report),
    }
}
