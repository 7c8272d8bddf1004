//! Exact linear algebra over the integers: Hermite and Smith normal forms,
//! lattice membership, saturation and canonical coset representatives.
//!
//! Everything works on row lattices: a `&[Row]` spans the set of integer
//! combinations of its rows inside `Z^cols`. The matrices in this crate are
//! tiny (at most a hundred rows, ten columns), so the classical Euclidean
//! elimination algorithms are used throughout, with unbounded integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Row = Vec<BigInt>;

/// Result of the row reduction `U * M = [H; 0]` with `U` unimodular.
pub struct Echelon {
    /// Nonzero rows of the Hermite normal form. Pivot columns are strictly
    /// increasing, pivots positive, and entries above a pivot lie in
    /// `[0, pivot)`, so the form is canonical for the row lattice.
    pub hnf: Vec<Row>,
    /// Rows of `U` that map to zero rows of `H`: a basis of the left kernel
    /// `{ x : x * M = 0 }`.
    pub kernel: Vec<Row>,
}

pub fn row_is_zero(r: &[BigInt]) -> bool {
    r.iter().all(Zero::is_zero)
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub_scaled(target: &mut [BigInt], source: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

fn negate_row(row: &mut [BigInt]) {
    for x in row.iter_mut() {
        *x = -std::mem::take(x);
    }
}

/// Hermite normal form with left-kernel extraction.
pub fn echelonize(rows: &[Row], cols: usize) -> Echelon {
    let n = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == cols));
    let mut m: Vec<Row> = rows.to_vec();
    let mut u: Vec<Row> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();

    let mut pivot = 0usize;
    for col in 0..cols {
        if pivot == n {
            break;
        }
        // Euclidean elimination below the pivot row.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot..n {
                if !m[r][col].is_zero()
                    && best.is_none_or(|b| m[r][col].magnitude() < m[b][col].magnitude())
                {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            m.swap(pivot, b);
            u.swap(pivot, b);
            let mut clean = true;
            for r in pivot + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let q = &m[r][col] / &m[pivot][col];
                let src = m[pivot].clone();
                sub_scaled(&mut m[r], &src, &q);
                let src = u[pivot].clone();
                sub_scaled(&mut u[r], &src, &q);
                if !m[r][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !m[pivot][col].is_zero() {
            if m[pivot][col].is_negative() {
                negate_row(&mut m[pivot]);
                negate_row(&mut u[pivot]);
            }
            // Reduce entries above the new pivot into [0, pivot). The pivot
            // row is zero left of `col`, so earlier canonical entries of the
            // rows above are not disturbed.
            for r in 0..pivot {
                let q = m[r][col].div_floor(&m[pivot][col]);
                let src = m[pivot].clone();
                sub_scaled(&mut m[r], &src, &q);
                let src = u[pivot].clone();
                sub_scaled(&mut u[r], &src, &q);
            }
            pivot += 1;
        }
    }
    let kernel = u.split_off(pivot);
    m.truncate(pivot);
    Echelon { hnf: m, kernel }
}

/// Canonical Hermite basis of the lattice spanned by `rows`.
pub fn hnf(rows: &[Row], cols: usize) -> Vec<Row> {
    echelonize(rows, cols).hnf
}

pub fn transpose(rows: &[Row], cols: usize) -> Vec<Row> {
    (0..cols)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect()
}

/// Basis of `{ x in Z^cols : x . r = 0 for every row r }`.
pub fn orthogonal_complement(rows: &[Row], cols: usize) -> Vec<Row> {
    let t = transpose(rows, cols); // cols x nrows
    echelonize(&t, rows.len()).kernel
}

/// Saturation of the row lattice: every integer vector some positive
/// multiple of which lies in the lattice. Computed as the double orthogonal
/// complement and returned in canonical Hermite form.
pub fn saturation(rows: &[Row], cols: usize) -> Vec<Row> {
    let comp = orthogonal_complement(rows, cols);
    let sat = orthogonal_complement(&comp, cols);
    hnf(&sat, cols)
}

/// Canonical representative of `v` modulo the lattice spanned by HNF rows.
/// Two vectors are congruent modulo the lattice iff their reductions agree.
pub fn reduce_mod(hnf_rows: &[Row], v: &[BigInt]) -> Row {
    let mut out = v.to_vec();
    for row in hnf_rows {
        let pc = row
            .iter()
            .position(|x| !x.is_zero())
            .expect("HNF rows are nonzero");
        let q = out[pc].div_floor(&row[pc]);
        sub_scaled(&mut out, row, &q);
    }
    out
}

pub fn contains(hnf_rows: &[Row], v: &[BigInt]) -> bool {
    row_is_zero(&reduce_mod(hnf_rows, v))
}

/// Elementary divisors of the matrix (the nonzero diagonal of the Smith
/// normal form), positive and each dividing the next.
pub fn snf_diagonal(rows: &[Row], cols: usize) -> Vec<BigInt> {
    let mut m = rows.to_vec();
    let nr = m.len();
    let mut out = Vec::new();
    let mut t = 0usize;
    'outer: while t < nr && t < cols {
        // Smallest nonzero entry of the trailing submatrix becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for r in t..nr {
            for c in t..cols {
                if !m[r][c].is_zero()
                    && best.is_none_or(|(br, bc)| m[r][c].magnitude() < m[br][bc].magnitude())
                {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        // Clear row and column t; restart if a division leaves a remainder
        // smaller than the pivot.
        loop {
            let mut dirty = false;
            for r in t + 1..nr {
                if m[r][t].is_zero() {
                    continue;
                }
                let q = &m[r][t] / &m[t][t];
                let src = m[t].clone();
                sub_scaled(&mut m[r], &src, &q);
                if !m[r][t].is_zero() {
                    m.swap(t, r);
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                if m[t][c].is_zero() {
                    continue;
                }
                let q = &m[t][c] / &m[t][t];
                if !q.is_zero() {
                    for row in m.iter_mut() {
                        let s = &row[t] * &q;
                        row[c] -= s;
                    }
                }
                if !m[t][c].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, c);
                    }
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        // Divisibility fix-up: every remaining entry must be divisible by
        // the pivot; otherwise fold the offending row in and redo.
        for r in t + 1..nr {
            for c in t + 1..cols {
                if !(&m[r][c] % &m[t][t]).is_zero() {
                    let src = m[r].clone();
                    for (x, s) in m[t].iter_mut().zip(&src) {
                        *x += s;
                    }
                    continue 'outer;
                }
            }
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    out
}

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination.
pub fn determinant(rows: &[Row]) -> BigInt {
    let n = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == n));
    if n == 0 {
        return BigInt::one();
    }
    let mut m = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}
