//! Exact integer and rational linear algebra: normal forms, lattice
//! quotients, and affine congruence solving.
//!
//! Everything here is arbitrary-precision; no floating point is used
//! anywhere in this crate.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::fmt;

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Dense column-major-agnostic integer matrix (stored row-major).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Int>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = Int::from(*v);
            }
        }
        m
    }

    pub fn from_big_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = Self::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: Vec<Vec<Int>>) -> Self {
        let c = cols.len();
        let r = if c == 0 { 0 } else { cols[0].len() };
        let mut m = Self::zero(r, c);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Int> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut m = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = &self[(i, k)] * &other[(k, j)];
                    m[(i, j)] += p;
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn mul_rat_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| Rat::from(self[(i, j)].clone()) * &v[j])
                    .sum()
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Determinant by integer fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let pivot = (k + 1..n).find(|&i| !m[(i, k)].is_zero());
                match pivot {
                    Some(p) => {
                        for j in 0..n {
                            let a = m[(k, j)].clone();
                            let b = m[(p, j)].clone();
                            m[(k, j)] = b;
                            m[(p, j)] = a;
                        }
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero());
                    m[(i, j)] = q;
                }
                m[(i, k)] = Int::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }
}

/// Result of a Smith decomposition `u * m * v = d` with `u`, `v` unimodular
/// and `d` diagonal with d_i | d_{i+1}.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    pub fn divisors(&self) -> Vec<Int> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smith normal form with transformation matrices.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.rows;
    let cols = m.cols;
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0usize;

    while t < rows && t < cols {
        // find a nonzero pivot in the remaining block
        let mut pivot = None;
        'search: for i in t..rows {
            for j in t..cols {
                if !a[(i, j)].is_zero() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => break,
        };
        swap_rows(&mut a, &mut u, t, pi);
        swap_cols(&mut a, &mut v, t, pj);

        loop {
            // clear column t below the pivot
            let mut done = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                if a[(i, t)].is_multiple_of(&a[(t, t)]) {
                    let q = &a[(i, t)] / &a[(t, t)];
                    row_axpy(&mut a, &mut u, i, t, &-q);
                } else {
                    // gcd step via Bezout row combination
                    let e = a[(t, t)].extended_gcd(&a[(i, t)]);
                    let (g, x, y) = (e.gcd, e.x, e.y);
                    let p = &a[(t, t)] / &g;
                    let q = &a[(i, t)] / &g;
                    two_row_transform(&mut a, &mut u, t, i, &x, &y, &-q, &p);
                    done = false;
                }
            }
            for i in t + 1..rows {
                debug_assert!(a[(i, t)].is_zero());
            }
            // clear row t to the right of the pivot
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                if a[(t, j)].is_multiple_of(&a[(t, t)]) {
                    let q = &a[(t, j)] / &a[(t, t)];
                    col_axpy(&mut a, &mut v, j, t, &-q);
                } else {
                    let e = a[(t, t)].extended_gcd(&a[(t, j)]);
                    let (g, x, y) = (e.gcd, e.x, e.y);
                    let p = &a[(t, t)] / &g;
                    let q = &a[(t, j)] / &g;
                    two_col_transform(&mut a, &mut v, t, j, &x, &y, &-q, &p);
                    done = false;
                }
            }
            let col_clear = (t + 1..rows).all(|i| a[(i, t)].is_zero());
            if done && col_clear {
                break;
            }
        }
        t += 1;
    }

    // make diagonal entries positive
    let r = t;
    for i in 0..r {
        if a[(i, i)].is_negative() {
            negate_row(&mut a, &mut u, i);
        }
    }
    // enforce divisibility d_i | d_{i+1}
    loop {
        let mut fixed = true;
        for i in 0..r.saturating_sub(1) {
            if a[(i + 1, i + 1)].is_multiple_of(&a[(i, i)]) {
                continue;
            }
            fixed = false;
            // add column i+1 to column i, then re-run the 2x2 elimination
            col_axpy(&mut a, &mut v, i, i + 1, &Int::one());
            let e = a[(i, i)].extended_gcd(&a[(i + 1, i)]);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let p = &a[(i, i)] / &g;
            let q = &a[(i + 1, i)] / &g;
            two_row_transform(&mut a, &mut u, i, i + 1, &x, &y, &-q.clone(), &p);
            // clear the fill-in at (i, i+1)
            let q2 = &a[(i, i + 1)] / &a[(i, i)];
            col_axpy(&mut a, &mut v, i + 1, i, &-q2);
            if a[(i, i)].is_negative() {
                negate_row(&mut a, &mut u, i);
            }
            if a[(i + 1, i + 1)].is_negative() {
                negate_row(&mut a, &mut u, i + 1);
            }
        }
        if fixed {
            break;
        }
    }

    SmithForm { u, d: a, v, rank: r }
}

fn swap_rows(a: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.cols {
        let x = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = x;
    }
    for c in 0..u.cols {
        let x = u[(i, c)].clone();
        u[(i, c)] = u[(j, c)].clone();
        u[(j, c)] = x;
    }
}

fn swap_cols(a: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..a.rows {
        let x = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = x;
    }
    for r in 0..v.rows {
        let x = v[(r, i)].clone();
        v[(r, i)] = v[(r, j)].clone();
        v[(r, j)] = x;
    }
}

/// row_i += q * row_j (on a and u).
fn row_axpy(a: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize, q: &Int) {
    for c in 0..a.cols {
        let add = q * &a[(j, c)];
        a[(i, c)] += add;
    }
    for c in 0..u.cols {
        let add = q * &u[(j, c)];
        u[(i, c)] += add;
    }
}

/// col_i += q * col_j (on a and v).
fn col_axpy(a: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize, q: &Int) {
    for r in 0..a.rows {
        let add = q * &a[(r, j)];
        a[(r, i)] += add;
    }
    for r in 0..v.rows {
        let add = q * &v[(r, j)];
        v[(r, i)] += add;
    }
}

fn negate_row(a: &mut IntMatrix, u: &mut IntMatrix, i: usize) {
    for c in 0..a.cols {
        let x = -a[(i, c)].clone();
        a[(i, c)] = x;
    }
    for c in 0..u.cols {
        let x = -u[(i, c)].clone();
        u[(i, c)] = x;
    }
}

/// Replace rows (i, j) by (x*row_i + y*row_j, s*row_i + t*row_j); the 2x2
/// matrix [[x,y],[s,t]] must be unimodular.
fn two_row_transform(
    a: &mut IntMatrix,
    u: &mut IntMatrix,
    i: usize,
    j: usize,
    x: &Int,
    y: &Int,
    s: &Int,
    t: &Int,
) {
    for c in 0..a.cols {
        let ri = x * &a[(i, c)] + y * &a[(j, c)];
        let rj = s * &a[(i, c)] + t * &a[(j, c)];
        a[(i, c)] = ri;
        a[(j, c)] = rj;
    }
    for c in 0..u.cols {
        let ri = x * &u[(i, c)] + y * &u[(j, c)];
        let rj = s * &u[(i, c)] + t * &u[(j, c)];
        u[(i, c)] = ri;
        u[(j, c)] = rj;
    }
}

fn two_col_transform(
    a: &mut IntMatrix,
    v: &mut IntMatrix,
    i: usize,
    j: usize,
    x: &Int,
    y: &Int,
    s: &Int,
    t: &Int,
) {
    for r in 0..a.rows {
        let ci = x * &a[(r, i)] + y * &a[(r, j)];
        let cj = s * &a[(r, i)] + t * &a[(r, j)];
        a[(r, i)] = ci;
        a[(r, j)] = cj;
    }
    for r in 0..v.rows {
        let ci = x * &v[(r, i)] + y * &v[(r, j)];
        let cj = s * &v[(r, i)] + t * &v[(r, j)];
        v[(r, i)] = ci;
        v[(r, j)] = cj;
    }
}

/// Column-style Hermite normal form: column operations only. Returns the
/// matrix whose nonzero columns form the canonical basis of the column
/// lattice (zero columns dropped). Pivots are positive, entries to the left
/// of each pivot are reduced into [0, pivot).
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let rows = m.rows;
    let cols = m.cols;
    let mut a = m.clone();
    let mut v = IntMatrix::identity(cols);
    let mut pivot_col = 0usize;
    for r in 0..rows {
        if pivot_col >= cols {
            break;
        }
        // gcd the row entries at columns >= pivot_col into column pivot_col
        loop {
            let mut j_nonzero: Vec<usize> = (pivot_col..cols).filter(|&j| !a[(r, j)].is_zero()).collect();
            if j_nonzero.is_empty() {
                break;
            }
            if j_nonzero.len() == 1 {
                let j = j_nonzero[0];
                swap_cols(&mut a, &mut v, pivot_col, j);
                break;
            }
            // combine the two first nonzero entries
            let j0 = j_nonzero.remove(0);
            let j1 = j_nonzero.remove(0);
            if a[(r, j1)].is_multiple_of(&a[(r, j0)]) {
                let q = &a[(r, j1)] / &a[(r, j0)];
                col_axpy(&mut a, &mut v, j1, j0, &-q);
            } else {
                let e = a[(r, j0)].extended_gcd(&a[(r, j1)]);
                let (g, x, y) = (e.gcd, e.x, e.y);
                let p = &a[(r, j0)] / &g;
                let q = &a[(r, j1)] / &g;
                two_col_transform(&mut a, &mut v, j0, j1, &x, &y, &-q, &p);
            }
        }
        if a[(r, pivot_col)].is_zero() {
            continue;
        }
        if a[(r, pivot_col)].is_negative() {
            for rr in 0..rows {
                let x = -a[(rr, pivot_col)].clone();
                a[(rr, pivot_col)] = x;
            }
        }
        // reduce the entries of this pivot row in earlier columns
        for j in 0..pivot_col {
            let q = a[(r, j)].div_floor(&a[(r, pivot_col)]);
            if !q.is_zero() {
                let mq = -q;
                for rr in 0..rows {
                    let add = &mq * &a[(rr, pivot_col)];
                    a[(rr, j)] += add;
                }
            }
        }
        pivot_col += 1;
    }
    // keep only the pivot columns (the rest are zero)
    let keep: Vec<usize> = (0..cols)
        .filter(|&j| (0..rows).any(|i| !a[(i, j)].is_zero()))
        .collect();
    IntMatrix::from_cols(keep.into_iter().map(|j| a.col(j)).collect())
}

/// Both normal forms of a matrix, per the module contract.
pub fn normal_forms(m: &IntMatrix) -> (IntMatrix, SmithForm) {
    (hermite_normal_form(m), smith_normal_form(m))
}

/// Basis (as columns) of the integer kernel {x : m x = 0}.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(m);
    let mut cols = Vec::new();
    for j in s.rank..m.cols {
        cols.push(s.v.col(j));
    }
    IntMatrix::from_cols(cols)
}

/// One integer solution x of m x = b, if any.
pub fn integer_solve(m: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(m.rows, b.len());
    let s = smith_normal_form(m);
    let ub = s.u.mul_vec(b);
    let mut y = vec![Int::zero(); m.cols];
    for i in 0..m.rows {
        if i < s.rank {
            let (q, r) = ub[i].div_rem(&s.d[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ub[i].is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}

/// Solve m x = b over the rationals (m square and invertible); panics on a
/// singular matrix.
pub fn rational_solve(m: &IntMatrix, b: &[Rat]) -> Vec<Rat> {
    assert_eq!(m.rows, m.cols);
    assert_eq!(m.rows, b.len());
    let n = m.rows;
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = (0..n).map(|j| Rat::from(m[(i, j)].clone())).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][k].is_zero()).expect("singular matrix");
        a.swap(k, pivot);
        let pv = a[k][k].clone();
        for j in k..=n {
            a[k][j] = &a[k][j] / &pv;
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                for j in k..=n {
                    let sub = &f * &a[k][j];
                    a[i][j] = &a[i][j] - &sub;
                }
            }
        }
    }
    (0..n).map(|i| a[i][n].clone()).collect()
}

/// Integer coordinates of v in the column basis `basis` (full column rank);
/// None when v is not in the spanned lattice.
pub fn lattice_coords(basis: &IntMatrix, v: &[Int]) -> Option<Vec<Int>> {
    integer_solve(basis, v)
}

/// Rational coordinates of v (full-rank square basis).
pub fn lattice_coords_rat(basis: &IntMatrix, v: &[Rat]) -> Vec<Rat> {
    rational_solve(basis, v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(Int),
    Infinite,
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(n) => write!(f, "{}", n),
            LatticeIndex::Infinite => write!(f, "INFINITE"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LatticeError {
    #[error("columns of the sub-basis do not lie in the super-lattice")]
    NotSublattice,
    #[error("finite index required, quotient is infinite")]
    FiniteIndexRequired,
}

/// The quotient of the lattice spanned by `sup_basis` by the one spanned by
/// `sub_basis`, with canonical coset representatives in the Smith
/// fundamental box.
#[derive(Clone, Debug)]
pub struct QuotientStructure {
    pub sup_basis: IntMatrix,
    /// transition matrix T with sub = sup * T
    transition: IntMatrix,
    smith: SmithForm,
    u_inv: IntMatrix,
    pub elementary_divisors: Vec<Int>,
    pub index: LatticeIndex,
}

impl QuotientStructure {
    pub fn new(sup_basis: &IntMatrix, sub_basis: &IntMatrix) -> Result<Self, LatticeError> {
        let k = sup_basis.cols;
        // transition columns: coordinates of each sub-basis vector in sup
        let mut tcols = Vec::new();
        for j in 0..sub_basis.cols {
            let c = lattice_coords(sup_basis, &sub_basis.col(j)).ok_or(LatticeError::NotSublattice)?;
            tcols.push(c);
        }
        let transition = if tcols.is_empty() {
            IntMatrix::zero(k, 0)
        } else {
            IntMatrix::from_cols(tcols)
        };
        let smith = smith_normal_form(&transition);
        let full = smith.rank == k;
        let mut divisors: Vec<Int> = smith.divisors();
        while divisors.len() < k {
            divisors.push(Int::zero()); // infinite directions
        }
        let index = if full {
            LatticeIndex::Finite(divisors.iter().product())
        } else {
            LatticeIndex::Infinite
        };
        // invert the unimodular u over the integers: u_inv = adj/det with det = ±1
        let u_inv = unimodular_inverse(&smith.u);
        let elementary_divisors = divisors;
        Ok(QuotientStructure { sup_basis: sup_basis.clone(), transition, smith, u_inv, elementary_divisors, index })
    }

    pub fn index_int(&self) -> Option<Int> {
        match &self.index {
            LatticeIndex::Finite(n) => Some(n.clone()),
            LatticeIndex::Infinite => None,
        }
    }

    /// Nontrivial divisors (those > 1), the isomorphism type of the quotient.
    pub fn nontrivial_divisors(&self) -> Vec<Int> {
        self.elementary_divisors.iter().filter(|d| **d > Int::one()).cloned().collect()
    }

    /// Canonical representative of v + sub_lattice; v must lie in the
    /// super-lattice. Idempotent and constant on cosets.
    pub fn rep_map(&self, v: &[Int]) -> Vec<Int> {
        let c = lattice_coords(&self.sup_basis, v).expect("vector not in the super-lattice");
        // mixed-radix reduction in the Smith box
        let w = self.smith.u.mul_vec(&c);
        let red: Vec<Int> = w
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let d = &self.elementary_divisors[i];
                if d.is_zero() {
                    x.clone()
                } else {
                    x.mod_floor(d)
                }
            })
            .collect();
        let back = self.u_inv.mul_vec(&red);
        self.sup_basis.mul_vec(&back)
    }

    /// Enumerate the canonical representatives (finite index only), in
    /// deterministic mixed-radix order.
    pub fn enumerate_reps(&self) -> Result<Vec<Vec<Int>>, LatticeError> {
        let divisors = &self.elementary_divisors;
        if divisors.iter().any(|d| d.is_zero()) {
            return Err(LatticeError::FiniteIndexRequired);
        }
        let radices: Vec<u64> = divisors
            .iter()
            .map(|d| u64::try_from(d.clone()).expect("enumeration index exceeds u64"))
            .collect();
        let mut reps = Vec::new();
        let total: u64 = radices.iter().product();
        for mut idx in 0..total {
            let mut w = Vec::with_capacity(radices.len());
            for r in &radices {
                w.push(Int::from(idx % r));
                idx /= r;
            }
            let back = self.u_inv.mul_vec(&w);
            let v = self.sup_basis.mul_vec(&back);
            reps.push(self.rep_map(&v));
        }
        Ok(reps)
    }

    /// Whether two vectors of the super-lattice lie in the same coset.
    pub fn same_coset(&self, a: &[Int], b: &[Int]) -> bool {
        self.rep_map(a) == self.rep_map(b)
    }

    pub fn transition(&self) -> &IntMatrix {
        &self.transition
    }
}

/// Inverse of a unimodular integer matrix, over the integers.
pub fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let n = m.rows;
    assert_eq!(m.rows, m.cols);
    let mut inv = IntMatrix::zero(n, n);
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        let col = rational_solve(m, &e);
        for i in 0..n {
            assert!(col[i].is_integer(), "matrix is not unimodular");
            inv[(i, j)] = col[i].to_integer();
        }
    }
    inv
}

/// An affine sublattice base + L of an ambient lattice, the solution set of
/// a congruence system.
#[derive(Clone, Debug)]
pub struct AffineLattice {
    pub base_point: Vec<Rat>,
    /// columns span the direction lattice (ambient coordinates)
    pub basis: IntMatrix,
    pub ambient_dim: usize,
}

impl AffineLattice {
    pub fn contains_int(&self, v: &[Int]) -> bool {
        let diff: Vec<Rat> = v
            .iter()
            .zip(&self.base_point)
            .map(|(a, b)| Rat::from(a.clone()) - b)
            .collect();
        if diff.iter().any(|x| !x.is_integer()) {
            return false;
        }
        let d: Vec<Int> = diff.into_iter().map(|x| x.to_integer()).collect();
        if self.basis.cols == 0 {
            return d.iter().all(|x| x.is_zero());
        }
        // solve basis * c = d over the integers (basis may be non-square)
        integer_solve(&self.basis, &d).is_some()
    }
}

/// A single affine congruence on the ambient lattice: functional(y) + offset
/// ≡ 0 (mod modulus); modulus 0 means an exact equation.
#[derive(Clone, Debug)]
pub struct Congruence {
    pub functional: Vec<Int>,
    pub offset: Rat,
    pub modulus: Int,
}

impl Congruence {
    pub fn new(functional: Vec<Int>, offset: Rat, modulus: Int) -> Self {
        assert!(!modulus.is_negative());
        Congruence { functional, offset, modulus }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CongruenceSolution {
    Lattice(AffineLatticeBoxed),
    Empty { non_integral: bool },
}

// AffineLattice is not PartialEq (rat vectors are); wrap for the enum.
#[derive(Clone, Debug)]
pub struct AffineLatticeBoxed(pub AffineLattice);
impl PartialEq for AffineLatticeBoxed {
    fn eq(&self, other: &Self) -> bool {
        // equality of affine lattices: same direction lattice and base
        // difference inside it
        let a = &self.0;
        let b = &other.0;
        if a.ambient_dim != b.ambient_dim {
            return false;
        }
        let ha = hermite_normal_form(&a.basis);
        let hb = hermite_normal_form(&b.basis);
        if ha != hb {
            return false;
        }
        let diff: Vec<Rat> = a
            .base_point
            .iter()
            .zip(&b.base_point)
            .map(|(x, y)| x - y)
            .collect();
        if diff.iter().any(|x| !x.is_integer()) {
            return false;
        }
        let d: Vec<Int> = diff.into_iter().map(|x| x.to_integer()).collect();
        if ha.cols == 0 {
            return d.iter().all(|x| x.is_zero());
        }
        integer_solve(&ha, &d).is_some()
    }
}
impl Eq for AffineLatticeBoxed {}

/// Solve a system of affine congruences over the lattice spanned by the
/// columns of `ambient`. The result is expressed in ambient coordinates.
pub fn affine_congruence_solve(constraints: &[Congruence], ambient: &IntMatrix) -> CongruenceSolution {
    let rank = ambient.cols;
    let dim = ambient.rows;
    // unknowns: c (rank), plus one slack per congruence with modulus > 0
    let slacks: Vec<usize> = constraints
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.modulus.is_zero())
        .map(|(i, _)| i)
        .collect();
    let ncols = rank + slacks.len();
    let mut a = IntMatrix::zero(constraints.len(), ncols);
    let mut b = Vec::with_capacity(constraints.len());
    let mut any_denominator = false;
    for (i, c) in constraints.iter().enumerate() {
        assert_eq!(c.functional.len(), dim);
        let den = c.offset.denom().clone();
        if den > Int::one() {
            any_denominator = true;
        }
        // row: den * functional * ambient, slack coeff den * modulus
        for j in 0..rank {
            let mut s = Int::zero();
            for k in 0..dim {
                s += &c.functional[k] * &ambient[(k, j)];
            }
            a[(i, j)] = &den * &s;
        }
        if let Some(pos) = slacks.iter().position(|&s| s == i) {
            a[(i, rank + pos)] = &den * &c.modulus;
        }
        b.push(-c.offset.numer().clone());
    }
    let particular = match integer_solve(&a, &b) {
        Some(x) => x,
        None => return CongruenceSolution::Empty { non_integral: any_denominator },
    };
    let kernel = integer_kernel(&a);
    // project the solution set to the c-coordinates and map into ambient
    let c_part: Vec<Int> = particular[..rank].to_vec();
    let mut dir_cols = Vec::new();
    for j in 0..kernel.cols {
        let col: Vec<Int> = (0..rank).map(|i| kernel[(i, j)].clone()).collect();
        if col.iter().any(|x| !x.is_zero()) {
            dir_cols.push(col);
        }
    }
    let dirs_c = if dir_cols.is_empty() {
        IntMatrix::zero(rank, 0)
    } else {
        hermite_normal_form(&IntMatrix::from_cols(dir_cols))
    };
    let base = ambient.mul_vec(&c_part);
    let basis = ambient.mul(&dirs_c);
    CongruenceSolution::Lattice(AffineLatticeBoxed(AffineLattice {
        base_point: base.into_iter().map(Rat::from).collect(),
        basis,
        ambient_dim: dim,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_diag_2_3() {
        // [[2,0],[0,3]] has smith diag (1,6)
        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.divisors(), vec![int(1), int(6)]);
        // oracle: U m V = D by direct multiplication
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.u.det().abs(), int(1));
        assert_eq!(s.v.det().abs(), int(1));
    }

    #[test]
    fn smith_identity() {
        let m = IntMatrix::identity(2);
        let (h, s) = normal_forms(&m);
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(s.divisors(), vec![int(1), int(1)]);
    }

    #[test]
    fn smith_3z_in_z() {
        // SL2, Y_{Q,3} inside Y as the 1-dim sublattice [3]
        let m = IntMatrix::from_rows(vec![vec![3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.divisors(), vec![int(3)]);
    }

    #[test]
    fn quotient_z_mod_3() {
        let sup = IntMatrix::identity(1);
        let sub = IntMatrix::from_rows(vec![vec![3]]);
        let q = QuotientStructure::new(&sup, &sub).unwrap();
        assert_eq!(q.index, LatticeIndex::Finite(int(3)));
        assert_eq!(q.nontrivial_divisors(), vec![int(3)]);
        let reps = q.enumerate_reps().unwrap();
        assert_eq!(reps.len(), 3);
        // rep_map idempotent, constant on cosets
        for k in -7i64..7 {
            let r = q.rep_map(&[int(k)]);
            assert_eq!(q.rep_map(&r), r);
            let r3 = q.rep_map(&[int(k + 3)]);
            assert_eq!(r, r3);
        }
    }

    #[test]
    fn quotient_2y_in_z2() {
        let sup = IntMatrix::identity(2);
        let sub = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 2]]);
        let q = QuotientStructure::new(&sup, &sub).unwrap();
        assert_eq!(q.index, LatticeIndex::Finite(int(4)));
        assert_eq!(q.nontrivial_divisors(), vec![int(2), int(2)]);
    }

    #[test]
    fn quotient_trivial() {
        let sup = IntMatrix::from_rows(vec![vec![2, 1], vec![0, 1]]);
        let q = QuotientStructure::new(&sup, &sup).unwrap();
        assert_eq!(q.index, LatticeIndex::Finite(int(1)));
        assert!(q.nontrivial_divisors().is_empty());
    }

    #[test]
    fn quotient_rejects_non_sublattice() {
        let sup = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 2]]);
        let sub = IntMatrix::from_rows(vec![vec![1, 0], vec![0, 2]]);
        assert!(QuotientStructure::new(&sup, &sub).is_err());
    }

    #[test]
    fn affine_solve_matches_scan_sl2_n3() {
        // <y - rho, alpha> = 2k - 1 ≡ 0 mod 3 over Y = Z alpha^vee
        let ambient = IntMatrix::identity(1);
        let cons = vec![Congruence::new(vec![int(2)], rat(-1, 1), int(3))];
        let sol = affine_congruence_solve(&cons, &ambient);
        let lat = match sol {
            CongruenceSolution::Lattice(l) => l.0,
            _ => panic!("expected solutions"),
        };
        // oracle: brute-force scan |k| <= 10
        for k in -10i64..=10 {
            let expected = (2 * k - 1).rem_euclid(3) == 0;
            assert_eq!(lat.contains_int(&[int(k)]), expected, "k={}", k);
        }
        // direction lattice is 3Z alpha^vee
        assert_eq!(lat.basis.rows, 1);
        assert_eq!(lat.basis.cols, 1);
        assert_eq!(lat.basis[(0, 0)].abs(), int(3));
    }

    #[test]
    fn affine_solve_exact_equation_gl2() {
        // y1 - y2 = -n + 1 over Z^2 (exact equation, modulus 0), n = 4
        let ambient = IntMatrix::identity(2);
        let cons = vec![Congruence::new(vec![int(1), int(-1)], rat(3, 1), int(0))];
        let sol = affine_congruence_solve(&cons, &ambient);
        let lat = match sol {
            CongruenceSolution::Lattice(l) => l.0,
            _ => panic!("expected solutions"),
        };
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                let expected = a - b == -3;
                assert_eq!(lat.contains_int(&[int(a), int(b)]), expected);
            }
        }
    }

    #[test]
    fn affine_solve_contradictory() {
        let ambient = IntMatrix::identity(1);
        let cons = vec![
            Congruence::new(vec![int(1)], rat(0, 1), int(2)),
            Congruence::new(vec![int(1)], rat(1, 1), int(2)),
        ];
        match affine_congruence_solve(&cons, &ambient) {
            CongruenceSolution::Empty { .. } => {}
            _ => panic!("expected empty"),
        }
    }

    #[test]
    fn hnf_canonical_of_column_lattice() {
        let m = IntMatrix::from_rows(vec![vec![4, 2], vec![0, 2]]);
        let h = hermite_normal_form(&m);
        // lattice spanned by (4,0),(2,2): HNF pivots positive
        assert_eq!(h.rows, 2);
        assert_eq!(h.cols, 2);
        let d = h.det().abs();
        assert_eq!(d, int(8));
        // idempotent
        assert_eq!(hermite_normal_form(&h), h);
    }

    #[test]
    fn kernel_and_solve() {
        let m = IntMatrix::from_rows(vec![vec![2, 4, 0], vec![0, 0, 3]]);
        let k = integer_kernel(&m);
        assert_eq!(k.cols, 1);
        assert!(m.mul(&k).is_zero());
        let x = integer_solve(&m, &[int(6), int(9)]).unwrap();
        let mx = m.mul_vec(&x);
        assert_eq!(mx, vec![int(6), int(9)]);
        assert!(integer_solve(&m, &[int(1), int(1)]).is_none());
    }
}
