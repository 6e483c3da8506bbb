//! Exact integer linear algebra.
//!
//! Everything downstream (cochain complexes, cohomology groups, induced
//! maps) reduces to Smith normal form over the integers. Entries are
//! arbitrary-precision (`BigInt`): elimination can grow coefficients far
//! beyond machine width, and a silent wraparound would corrupt every group
//! computed on top of it.
//!
//! Conventions fixed here and relied on by the rest of the crate:
//!
//! * Smith normal form pivoting is deterministic: the pivot is the entry of
//!   smallest nonzero absolute value in the remaining submatrix, ties broken
//!   by lexicographic (row, col) position.
//! * A finitely generated abelian group is kept in canonical form: free rank
//!   plus the list of invariant factors `d_1 | d_2 | ...` with `d_i >= 2`.
//!   Two groups are equal iff those data are equal.
//! * Canonical generators of a subquotient are ordered torsion-first
//!   (ascending invariant factor), then free. All `GroupHom` matrices use
//!   that ordering on both sides.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AbelianError {
    #[error("differential composition is nonzero at degree {degree}")]
    CompositionNotZero { degree: usize },
    #[error("map does not commute with differentials at degree {degree}")]
    NotChainMap { degree: usize },
    #[error("dimension mismatch: {0}")]
    ShapeMismatch(String),
}

/// Dense exact-integer matrix, row-major.
///
/// Boundary and differential matrices in this crate are sparse in practice,
/// but small enough that a dense representation with cheap zero tests is
/// simpler and fast enough.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Build from machine-integer rows; convenience for construction sites
    /// and tests. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &BigInt) {
        if !v.is_zero() {
            self.entries[r * self.cols + c] += v;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if !self.get(r, c).is_zero() {
                    t.set(c, r, self.get(r, c).clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * out.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = vec![BigInt::zero(); self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.get(r, c);
                if !a.is_zero() && !v[c].is_zero() {
                    out[r] += a * &v[c];
                }
            }
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn set_column(&mut self, c: usize, v: &[BigInt]) {
        assert_eq!(v.len(), self.rows);
        for (r, x) in v.iter().enumerate() {
            self.set(r, c, x.clone());
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    /// Keep the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> IntegerMatrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for (k, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                out.set(r, k, self.get(r, c).clone());
            }
        }
        out
    }

    /// Keep the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> IntegerMatrix {
        let mut out = Self::zeros(rows.len(), self.cols);
        for (k, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                out.set(k, c, self.get(r, c).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[i] += q * row[t]
    fn add_row_multiple(&mut self, i: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(t, c).clone();
            if !v.is_zero() {
                self.entries[i * self.cols + c] += q * v;
            }
        }
    }

    /// col[j] += q * col[t]
    fn add_col_multiple(&mut self, j: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.get(r, t).clone();
            if !v.is_zero() {
                self.entries[r * self.cols + j] += q * v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            if !self.entries[idx].is_zero() {
                let v = -self.entries[idx].clone();
                self.entries[idx] = v;
            }
        }
    }

    /// Fraction-free (Bareiss) determinant. Used by tests to certify
    /// unimodularity of the transforms independently of the SNF code path.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = (0..n).map(|r| (0..n).map(|c| self.get(r, c).clone()).collect()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                // find a pivot row below
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = &num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal satisfying the
/// divisibility chain `d_1 | d_2 | ...`, zeros last. The inverses of the
/// transforms are accumulated alongside them; they are needed to read off
/// lattice bases for images and kernels.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub d: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v_inv: IntegerMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries of `D` (length: min(rows, cols)).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Nearest-integer division; the remainder satisfies |r| <= |b|/2, which
/// keeps entries small during elimination.
fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    let two_r: BigInt = &r + &r;
    if two_r.abs() > b.abs() {
        if r.sign() == b.sign() {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Smith normal form with deterministic pivoting: the pivot is the entry of
/// smallest nonzero |value| in the remaining submatrix, ties broken by
/// smallest (row, col).
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let rows = a.rows();
    let cols = a.cols();
    let mut w = a.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut u_inv = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    let mut v_inv = IntegerMatrix::identity(cols);

    // Elementary operations are mirrored on the transforms:
    //   row op on W  (W <- L W):  u <- L u,  u_inv <- u_inv L^{-1}
    //   col op on W  (W <- W R):  v <- v R,  v_inv <- R^{-1} v_inv
    let t_max = rows.min(cols);
    for t in 0..t_max {
        'pivot: loop {
            // deterministic pivot search over the remaining submatrix
            let mut best: Option<(usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    let val = w.get(r, c);
                    if val.is_zero() {
                        continue;
                    }
                    match &best {
                        None => best = Some((r, c)),
                        Some((br, bc)) => {
                            if val.abs() < w.get(*br, *bc).abs() {
                                best = Some((r, c));
                            }
                        }
                    }
                }
            }
            let (pr, pc) = match best {
                Some(p) => p,
                None => break 'pivot, // remaining submatrix is zero
            };
            if pr != t {
                w.swap_rows(t, pr);
                u.swap_rows(t, pr);
                u_inv.swap_cols(t, pr);
            }
            if pc != t {
                w.swap_cols(t, pc);
                v.swap_cols(t, pc);
                v_inv.swap_rows(t, pc);
            }

            // clear column t
            let mut dirty = false;
            for i in 0..rows {
                if i == t || w.get(i, t).is_zero() {
                    continue;
                }
                let q = rounded_div(w.get(i, t), w.get(t, t));
                let nq = -&q;
                w.add_row_multiple(i, t, &nq);
                u.add_row_multiple(i, t, &nq);
                u_inv.add_col_multiple(t, i, &q);
                if !w.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            // clear row t
            for j in 0..cols {
                if j == t || w.get(t, j).is_zero() {
                    continue;
                }
                let q = rounded_div(w.get(t, j), w.get(t, t));
                let nq = -&q;
                w.add_col_multiple(j, t, &nq);
                v.add_col_multiple(j, t, &nq);
                v_inv.add_row_multiple(t, j, &q);
                if !w.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot; // residues shrank; re-pivot
            }

            // divisibility fix: the pivot must divide the rest of the block
            let pivot = w.get(t, t).clone();
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(w.get(i, j) % &pivot).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    let neg_one = -BigInt::one();
                    w.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                    u_inv.add_col_multiple(i, t, &neg_one);
                    continue 'pivot;
                }
                None => break 'pivot,
            }
        }
        if w.get(t, t).sign() == num_bigint::Sign::Minus {
            w.negate_row(t);
            u.negate_row(t);
            // L^{-1} = L for a row negation; mirror as column negation on u_inv
            for r in 0..rows {
                let v0 = -u_inv.get(r, t).clone();
                u_inv.set(r, t, v0);
            }
        }
        if w.get(t, t).is_zero() {
            break;
        }
    }

    SmithDecomposition { u, v, d: w, u_inv, v_inv }
}

/// Solve `A x = b` over the integers. Returns `None` when no integral
/// solution exists. When solutions exist the one with zero free coordinates
/// (in Smith basis) is returned, deterministic but not unique in general.
pub fn solve(snf: &SmithDecomposition, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let ub = snf.u.mul_vec(b);
    let rank_cols = snf.d.cols();
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); rank_cols];
    for (i, entry) in ub.iter().enumerate() {
        let d = if i < diag.len() { diag[i].clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !entry.is_zero() {
                return None;
            }
        } else {
            let (q, r) = entry.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            if i < rank_cols {
                y[i] = q;
            } else if !q.is_zero() {
                return None;
            }
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Basis of the integer kernel lattice of `A` (columns of the result). The
/// kernel of an integer matrix is saturated, so this basis is also a basis
/// of the rational kernel intersected with the lattice.
pub fn kernel_basis(snf: &SmithDecomposition) -> IntegerMatrix {
    let rank = snf.rank();
    let cols: Vec<usize> = (rank..snf.v.cols()).collect();
    snf.v.select_columns(&cols)
}

/// Basis of the column lattice (image) of `A`: the nonzero columns of
/// `U^{-1} D`, i.e. `d_i * (U^{-1} e_i)` for each nonzero `d_i`.
pub fn image_basis(snf: &SmithDecomposition) -> IntegerMatrix {
    let rank = snf.rank();
    let diag = snf.diagonal();
    let mut out = IntegerMatrix::zeros(snf.u.rows(), rank);
    for i in 0..rank {
        for r in 0..snf.u_inv.rows() {
            let v = snf.u_inv.get(r, i) * &diag[i];
            out.set(r, i, v);
        }
    }
    out
}

/// A cochain complex of free abelian groups: `C^0 -> C^1 -> ...` with
/// `differentials[n]` mapping degree n to degree n+1 (rows = rank of
/// C^{n+1}, cols = rank of C^n). The final differential maps the top degree
/// to 0. `provenance` records which construction produced the complex; it is
/// carried into diagnostics only.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    ranks: Vec<usize>,
    differentials: Vec<IntegerMatrix>,
    provenance: String,
}

impl CochainComplex {
    pub fn new(
        ranks: Vec<usize>,
        differentials: Vec<IntegerMatrix>,
        provenance: impl Into<String>,
    ) -> Result<Self, AbelianError> {
        if differentials.len() != ranks.len() {
            return Err(AbelianError::ShapeMismatch(format!(
                "expected {} differentials for {} degrees",
                ranks.len(),
                ranks.len()
            )));
        }
        for (n, d) in differentials.iter().enumerate() {
            let target = if n + 1 < ranks.len() { ranks[n + 1] } else { 0 };
            if d.cols() != ranks[n] || d.rows() != target {
                return Err(AbelianError::ShapeMismatch(format!(
                    "differential {} has shape {}x{}, expected {}x{}",
                    n,
                    d.rows(),
                    d.cols(),
                    target,
                    ranks[n]
                )));
            }
        }
        Ok(CochainComplex {
            ranks,
            differentials,
            provenance: provenance.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// The differential out of degree n (zero-sized beyond the top).
    pub fn differential(&self, n: usize) -> IntegerMatrix {
        match self.differentials.get(n) {
            Some(d) => d.clone(),
            None => IntegerMatrix::zeros(self.rank(n + 1), self.rank(n)),
        }
    }

    /// Check `delta_{n+1} . delta_n = 0` in every degree.
    pub fn verify_dd_zero(&self) -> Result<(), AbelianError> {
        for n in 0..self.len().saturating_sub(1) {
            let composite = self.differentials[n + 1].mul(&self.differentials[n]);
            if !composite.is_zero() {
                return Err(AbelianError::CompositionNotZero { degree: n });
            }
        }
        Ok(())
    }
}

/// Presentation of a cohomology subquotient `ker / im` inside the ambient
/// cochain lattice, retained so induced maps can be evaluated later.
///
/// `cocycle_basis` is a lattice basis K of ker(delta_n); `coord_transform`
/// is the unimodular U from the Smith decomposition of the matrix expressing
/// im(delta_{n-1}) in that basis. For a cocycle v with K x = v, the vector
/// w = U x lists coordinates in which the relation lattice is diagonal with
/// orders `coord_orders` (0 = free, 1 = collapsed, d >= 2 = torsion).
#[derive(Clone, Debug)]
pub struct Presentation {
    ambient_rank: usize,
    cocycle_basis: IntegerMatrix,
    cocycle_snf: SmithDecomposition,
    coord_transform: IntegerMatrix,
    coord_orders: Vec<BigInt>,
}

impl Presentation {
    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Indices of coordinates that survive in the canonical form
    /// (order != 1), i.e. torsion generators in ascending invariant-factor
    /// order followed by free generators.
    fn live_coords(&self) -> Vec<usize> {
        let mut torsion: Vec<usize> = Vec::new();
        let mut free: Vec<usize> = Vec::new();
        for (i, d) in self.coord_orders.iter().enumerate() {
            if d.is_zero() {
                free.push(i);
            } else if !d.is_one() {
                torsion.push(i);
            }
        }
        torsion.extend(free);
        torsion
    }

    /// Ambient representatives of the canonical generators, one column per
    /// generator (torsion first, then free).
    pub fn generator_vectors(&self) -> IntegerMatrix {
        let live = self.live_coords();
        let k = self.coord_orders.len();
        let mut out = IntegerMatrix::zeros(self.ambient_rank, live.len());
        // x = U^{-1} e_i, ambient = K x. Solve U x = e_i by reusing the SNF of
        // U? U is unimodular; x is the i-th column of U^{-1}. We avoid a
        // second inversion by solving the triangular-free way: SNF of U.
        let u_snf = smith_normal_form(&self.coord_transform);
        for (col, &i) in live.iter().enumerate() {
            let mut e = vec![BigInt::zero(); k];
            e[i] = BigInt::one();
            let x = solve(&u_snf, &e).expect("unimodular matrix is invertible over Z");
            let ambient = self.cocycle_basis.mul_vec(&x);
            out.set_column(col, &ambient);
        }
        out
    }

    /// Coordinates of an ambient cocycle in the canonical generators
    /// (length = number of live generators; torsion coordinates reduced mod
    /// their order). `None` if `v` is not in the cocycle lattice.
    pub fn coordinates_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient_rank {
            return None;
        }
        let x = solve(&self.cocycle_snf, v)?;
        let w = self.coord_transform.mul_vec(&x);
        let live = self.live_coords();
        Some(
            live.iter()
                .map(|&i| {
                    let d = &self.coord_orders[i];
                    if d.is_zero() {
                        w[i].clone()
                    } else {
                        w[i].mod_floor(d)
                    }
                })
                .collect(),
        )
    }

    /// Orders of the canonical generators (0 = infinite), torsion first.
    pub fn generator_orders(&self) -> Vec<BigInt> {
        self.live_coords()
            .iter()
            .map(|&i| self.coord_orders[i].clone())
            .collect()
    }
}

/// Finitely generated abelian group in canonical form: `Z^free_rank` plus
/// cyclic factors of the invariant-factor orders. Equality compares the
/// canonical data only; the optional presentation carries the information
/// needed to evaluate induced maps.
#[derive(Clone, Debug)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
    presentation: Option<Presentation>,
}

impl PartialEq for FgAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.free_rank == other.free_rank && self.torsion == other.torsion
    }
}

impl Eq for FgAbGroup {}

impl FgAbGroup {
    pub fn trivial() -> Self {
        FgAbGroup {
            free_rank: 0,
            torsion: Vec::new(),
            presentation: None,
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
            presentation: None,
        }
    }

    /// Canonical form from explicit data; invariant factors must be >= 2 and
    /// form a divisibility chain.
    pub fn new(free_rank: usize, torsion: Vec<i64>) -> Self {
        let torsion: Vec<BigInt> = torsion.into_iter().map(BigInt::from).collect();
        for w in torsion.windows(2) {
            assert!(
                (&w[1] % &w[0]).is_zero(),
                "invariant factors must form a divisibility chain"
            );
        }
        assert!(
            torsion.iter().all(|d| *d >= BigInt::from(2)),
            "invariant factors must be >= 2"
        );
        FgAbGroup {
            free_rank,
            torsion,
            presentation: None,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        let mut o = BigInt::one();
        for d in &self.torsion {
            o *= d;
        }
        Some(o)
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    /// Total number of canonical generators (torsion + free).
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Orders of canonical generators: torsion (ascending), then zeros for
    /// the free generators.
    pub fn canonical_orders(&self) -> Vec<BigInt> {
        let mut o = self.torsion.clone();
        o.extend(std::iter::repeat(BigInt::zero()).take(self.free_rank));
        o
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{}", d));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Build the subquotient `span(kernel) / span(image_vectors)` of the ambient
/// lattice `Z^ambient`, with presentation attached. `kernel` columns must be
/// a lattice basis; `image_vectors` columns must lie in its span.
fn subquotient(kernel: IntegerMatrix, image_vectors: &IntegerMatrix) -> FgAbGroup {
    let k = kernel.cols();
    let ambient = kernel.rows();
    let kernel_snf = smith_normal_form(&kernel);
    // express each image vector in the kernel basis
    let mut rel = IntegerMatrix::zeros(k, image_vectors.cols());
    for j in 0..image_vectors.cols() {
        let col = image_vectors.column(j);
        let x = solve(&kernel_snf, &col)
            .expect("image vectors must lie in the kernel lattice (is the complex a complex?)");
        rel.set_column(j, &x);
    }
    let rel_snf = smith_normal_form(&rel);
    let mut orders: Vec<BigInt> = rel_snf.diagonal();
    orders.resize(k, BigInt::zero());

    let mut torsion: Vec<BigInt> = Vec::new();
    let mut free_rank = 0usize;
    for d in &orders {
        if d.is_zero() {
            free_rank += 1;
        } else if !d.is_one() {
            torsion.push(d.clone());
        }
    }
    FgAbGroup {
        free_rank,
        torsion,
        presentation: Some(Presentation {
            ambient_rank: ambient,
            cocycle_basis: kernel,
            cocycle_snf: kernel_snf,
            coord_transform: rel_snf.u,
            coord_orders: orders,
        }),
    }
}

/// Cohomology `ker(delta_n) / im(delta_{n-1})` of a cochain complex of free
/// abelian groups, in canonical form with presentation retained.
pub fn cohomology_of_complex(c: &CochainComplex, n: usize) -> Result<FgAbGroup, AbelianError> {
    let rank_n = c.rank(n);
    let delta_n = c.differential(n);
    let delta_prev = if n == 0 {
        IntegerMatrix::zeros(rank_n, 0)
    } else {
        c.differential(n - 1)
    };
    if !delta_n.mul(&delta_prev).is_zero() {
        return Err(AbelianError::CompositionNotZero {
            degree: n.saturating_sub(1),
        });
    }
    let snf_n = smith_normal_form(&delta_n);
    let kernel = kernel_basis(&snf_n);
    let snf_prev = smith_normal_form(&delta_prev);
    let image = image_basis(&snf_prev);
    Ok(subquotient(kernel, &image))
}

/// A degreewise map of cochain complexes. `maps[n]` sends degree-n cochains
/// of `source` to degree-n cochains of `target` (rows = target rank, cols =
/// source rank).
#[derive(Clone, Debug)]
pub struct CochainMap {
    pub source: CochainComplex,
    pub target: CochainComplex,
    maps: Vec<IntegerMatrix>,
}

impl CochainMap {
    pub fn new(
        source: CochainComplex,
        target: CochainComplex,
        maps: Vec<IntegerMatrix>,
    ) -> Result<Self, AbelianError> {
        let degrees = source.len().max(target.len());
        if maps.len() < degrees {
            return Err(AbelianError::ShapeMismatch(format!(
                "need {} degreewise maps, got {}",
                degrees,
                maps.len()
            )));
        }
        for (n, m) in maps.iter().enumerate() {
            if m.rows() != target.rank(n) || m.cols() != source.rank(n) {
                return Err(AbelianError::ShapeMismatch(format!(
                    "map {} has shape {}x{}, expected {}x{}",
                    n,
                    m.rows(),
                    m.cols(),
                    target.rank(n),
                    source.rank(n)
                )));
            }
        }
        Ok(CochainMap { source, target, maps })
    }

    pub fn map(&self, n: usize) -> IntegerMatrix {
        match self.maps.get(n) {
            Some(m) => m.clone(),
            None => IntegerMatrix::zeros(self.target.rank(n), self.source.rank(n)),
        }
    }

    /// Verify the commuting squares `delta_T . f_n = f_{n+1} . delta_S`.
    pub fn verify_chain_map(&self) -> Result<(), AbelianError> {
        let degrees = self.source.len().max(self.target.len());
        for n in 0..degrees {
            let lhs = self.target.differential(n).mul(&self.map(n));
            let rhs = self.map(n + 1).mul(&self.source.differential(n));
            if lhs != rhs {
                return Err(AbelianError::NotChainMap { degree: n });
            }
        }
        Ok(())
    }
}

/// Homomorphism between groups in canonical form. The matrix acts on
/// canonical generator coordinates (torsion generators first, then free);
/// entries in torsion target coordinates are only meaningful modulo the
/// generator's order.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub source: FgAbGroup,
    pub target: FgAbGroup,
    pub matrix: IntegerMatrix,
}

impl GroupHom {
    pub fn identity(g: &FgAbGroup) -> Self {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            matrix: IntegerMatrix::identity(g.generator_count()),
        }
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntegerMatrix::zeros(target.generator_count(), source.generator_count()),
        }
    }

    /// `self . other` (apply `other` first).
    pub fn compose(&self, other: &GroupHom) -> GroupHom {
        assert_eq!(
            other.target, self.source,
            "composition mismatch: {} vs {}",
            other.target, self.source
        );
        GroupHom {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: reduce_mod_orders(self.matrix.mul(&other.matrix), &self.target),
        }
    }

    pub fn is_zero(&self) -> bool {
        // zero modulo target orders
        let orders = self.target.canonical_orders();
        for r in 0..self.matrix.rows() {
            for c in 0..self.matrix.cols() {
                let e = self.matrix.get(r, c);
                let d = &orders[r];
                let val = if d.is_zero() { e.clone() } else { e.mod_floor(d) };
                if !val.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

fn reduce_mod_orders(mut m: IntegerMatrix, target: &FgAbGroup) -> IntegerMatrix {
    let orders = target.canonical_orders();
    for r in 0..m.rows() {
        if orders[r].is_zero() {
            continue;
        }
        for c in 0..m.cols() {
            let v = m.get(r, c).mod_floor(&orders[r]);
            m.set(r, c, v);
        }
    }
    m
}

/// The map induced on degree-n cohomology by a chain-level map. Commuting
/// squares are checked; the result is expressed on canonical generators.
pub fn induced_hom(f: &CochainMap, n: usize) -> Result<GroupHom, AbelianError> {
    f.verify_chain_map()?;
    let source_h = cohomology_of_complex(&f.source, n)?;
    let target_h = cohomology_of_complex(&f.target, n)?;
    let matrix = match (&source_h.presentation, &target_h.presentation) {
        (Some(sp), Some(tp)) => {
            let gens = sp.generator_vectors();
            let fm = f.map(n);
            let mut out = IntegerMatrix::zeros(target_h.generator_count(), source_h.generator_count());
            for j in 0..gens.cols() {
                let image = fm.mul_vec(&gens.column(j));
                let coords = tp
                    .coordinates_of(&image)
                    .expect("a chain map sends cocycles to cocycles");
                out.set_column(j, &coords);
            }
            out
        }
        _ => IntegerMatrix::zeros(target_h.generator_count(), source_h.generator_count()),
    };
    Ok(GroupHom {
        matrix: reduce_mod_orders(matrix, &target_h),
        source: source_h,
        target: target_h,
    })
}

/// Lattice of elements of `h.source` (in canonical generator coordinates)
/// that map into the target's relation lattice, i.e. representatives of
/// ker(h), including the source relations. Columns form a basis.
pub(crate) fn kernel_lattice(h: &GroupHom) -> IntegerMatrix {
    let s = h.source.generator_count();
    let target_orders = h.target.canonical_orders();
    // Solve M x + D z = 0 where D has one column d_j e_j per finite target
    // order; x-parts of the kernel span the preimage lattice.
    let torsion_cols: Vec<usize> = target_orders
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .map(|(j, _)| j)
        .collect();
    let mut relax = IntegerMatrix::zeros(h.matrix.rows(), torsion_cols.len());
    for (k, &j) in torsion_cols.iter().enumerate() {
        relax.set(j, k, target_orders[j].clone());
    }
    let stacked = h.matrix.hstack(&relax);
    let snf = smith_normal_form(&stacked);
    let ker = kernel_basis(&snf);
    let x_part = ker.select_rows(&(0..s).collect::<Vec<_>>());
    // add the source relation lattice
    let source_orders = h.source.canonical_orders();
    let rel_cols: Vec<usize> = source_orders
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .map(|(i, _)| i)
        .collect();
    let mut rel = IntegerMatrix::zeros(s, rel_cols.len());
    for (k, &i) in rel_cols.iter().enumerate() {
        rel.set(i, k, source_orders[i].clone());
    }
    let spanning = x_part.hstack(&rel);
    image_basis(&smith_normal_form(&spanning))
}

/// Lattice spanned by the image of `h` together with the target relations,
/// in target generator coordinates. Columns form a basis.
pub(crate) fn image_lattice(h: &GroupHom) -> IntegerMatrix {
    let t = h.target.generator_count();
    let target_orders = h.target.canonical_orders();
    let rel_cols: Vec<usize> = target_orders
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .map(|(i, _)| i)
        .collect();
    let mut rel = IntegerMatrix::zeros(t, rel_cols.len());
    for (k, &i) in rel_cols.iter().enumerate() {
        rel.set(i, k, target_orders[i].clone());
    }
    let spanning = h.matrix.hstack(&rel);
    image_basis(&smith_normal_form(&spanning))
}

/// Quotient of a lattice by a sublattice, both given by generating columns
/// in the same ambient coordinates. The sublattice must be contained in the
/// lattice.
fn lattice_quotient(lattice: &IntegerMatrix, sublattice: &IntegerMatrix) -> FgAbGroup {
    let basis = image_basis(&smith_normal_form(lattice));
    subquotient(basis, sublattice)
}

/// ker(h) as an abstract group in canonical form.
pub fn kernel(h: &GroupHom) -> FgAbGroup {
    let s = h.source.generator_count();
    let pre = kernel_lattice(h);
    let source_orders = h.source.canonical_orders();
    let rel_cols: Vec<usize> = source_orders
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .map(|(i, _)| i)
        .collect();
    let mut rel = IntegerMatrix::zeros(s, rel_cols.len());
    for (k, &i) in rel_cols.iter().enumerate() {
        rel.set(i, k, source_orders[i].clone());
    }
    lattice_quotient(&pre, &rel)
}

/// coker(h) = target / im(h) in canonical form.
pub fn cokernel(h: &GroupHom) -> FgAbGroup {
    let t = h.target.generator_count();
    let target_orders = h.target.canonical_orders();
    let rel_cols: Vec<usize> = target_orders
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .map(|(i, _)| i)
        .collect();
    let mut rel = IntegerMatrix::zeros(t, rel_cols.len());
    for (k, &i) in rel_cols.iter().enumerate() {
        rel.set(i, k, target_orders[i].clone());
    }
    let spanning = h.matrix.hstack(&rel);
    lattice_quotient(&IntegerMatrix::identity(t), &image_basis(&smith_normal_form(&spanning)))
}

/// Do two sets of columns span the same lattice?
pub(crate) fn same_lattice(a: &IntegerMatrix, b: &IntegerMatrix) -> bool {
    assert_eq!(a.rows(), b.rows(), "lattices live in different ambients");
    let snf_a = smith_normal_form(a);
    let snf_b = smith_normal_form(b);
    for j in 0..b.cols() {
        if solve(&snf_a, &b.column(j)).is_none() {
            return false;
        }
    }
    for j in 0..a.cols() {
        if solve(&snf_b, &a.column(j)).is_none() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_snf_invariants(a: &IntegerMatrix) -> SmithDecomposition {
        let snf = smith_normal_form(a);
        // U A V = D
        assert_eq!(snf.u.mul(a).mul(&snf.v), snf.d, "U*A*V != D");
        // unimodularity, certified by an independent determinant algorithm
        assert_eq!(snf.u.determinant().abs(), BigInt::one(), "U not unimodular");
        assert_eq!(snf.v.determinant().abs(), BigInt::one(), "V not unimodular");
        // tracked inverses really are inverses
        assert_eq!(snf.u.mul(&snf.u_inv), IntegerMatrix::identity(a.rows()));
        assert_eq!(snf.v.mul(&snf.v_inv), IntegerMatrix::identity(a.cols()));
        // diagonal, divisibility chain, zeros last
        for r in 0..snf.d.rows() {
            for c in 0..snf.d.cols() {
                if r != c {
                    assert!(snf.d.get(r, c).is_zero(), "D not diagonal");
                }
            }
        }
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "zero not last in diagonal");
            } else {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility chain violated");
            }
        }
        for d in &diag {
            assert!(d.sign() != num_bigint::Sign::Minus, "negative diagonal entry");
        }
        snf
    }

    #[test]
    fn snf_zero_matrix() {
        let a = IntegerMatrix::from_rows(&[vec![0]]);
        let snf = assert_snf_invariants(&a);
        assert_eq!(snf.d, IntegerMatrix::from_rows(&[vec![0]]));
        assert_eq!(snf.u, IntegerMatrix::identity(1));
        assert_eq!(snf.v, IntegerMatrix::identity(1));
    }

    #[test]
    fn snf_fixed_example() {
        // d1 = gcd of entries = 2, d1*d2 = |det| = 8
        let a = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let snf = assert_snf_invariants(&a);
        assert_eq!(
            snf.diagonal(),
            vec![BigInt::from(2), BigInt::from(4)]
        );
    }

    #[test]
    fn snf_identity() {
        let a = IntegerMatrix::identity(3);
        let snf = assert_snf_invariants(&a);
        assert_eq!(snf.d, IntegerMatrix::identity(3));
    }

    #[test]
    fn snf_battery() {
        let cases = vec![
            IntegerMatrix::from_rows(&[vec![6, 4, 2], vec![2, 8, 4]]),
            IntegerMatrix::from_rows(&[vec![0, 0], vec![0, 0]]),
            IntegerMatrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]),
            IntegerMatrix::from_rows(&[vec![-3], vec![6], vec![9]]),
            IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]),
            IntegerMatrix::from_rows(&[vec![5, 7, -11, 13], vec![0, -2, 4, 8], vec![3, 3, 3, 3]]),
            IntegerMatrix::zeros(0, 4),
            IntegerMatrix::zeros(4, 0),
            IntegerMatrix::zeros(0, 0),
        ];
        for a in &cases {
            assert_snf_invariants(a);
        }
        // diag(2,3) has SNF diag(1,6)
        let snf = smith_normal_form(&IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(snf.diagonal(), vec![BigInt::one(), BigInt::from(6)]);
    }

    #[test]
    fn solve_and_kernel() {
        let a = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&a);
        let b = vec![BigInt::from(6), BigInt::from(14)];
        let x = solve(&snf, &b).expect("solvable");
        assert_eq!(a.mul_vec(&x), b);
        // [1, 1] is not in the image (image needs even first coordinate)
        assert!(solve(&snf, &[BigInt::one(), BigInt::one()]).is_none());

        let singular = IntegerMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let snf_s = smith_normal_form(&singular);
        let k = kernel_basis(&snf_s);
        assert_eq!(k.cols(), 2);
        assert!(singular.mul(&k).is_zero());
    }

    fn complex(ranks: Vec<usize>, diffs: Vec<IntegerMatrix>) -> CochainComplex {
        CochainComplex::new(ranks, diffs, "test").unwrap()
    }

    #[test]
    fn cohomology_zero_differential() {
        // 0 -> Z --0--> Z -> 0 at middle degree
        let c = complex(
            vec![1, 1],
            vec![IntegerMatrix::from_rows(&[vec![0]]), IntegerMatrix::zeros(0, 1)],
        );
        assert_eq!(cohomology_of_complex(&c, 1).unwrap(), FgAbGroup::free(1));
        assert_eq!(cohomology_of_complex(&c, 0).unwrap(), FgAbGroup::free(1));
    }

    #[test]
    fn cohomology_times_two() {
        // Z --2--> Z at top degree: coker(x2) = Z/2
        let c = complex(
            vec![1, 1],
            vec![IntegerMatrix::from_rows(&[vec![2]]), IntegerMatrix::zeros(0, 1)],
        );
        assert_eq!(cohomology_of_complex(&c, 1).unwrap(), FgAbGroup::new(0, vec![2]));
        assert_eq!(cohomology_of_complex(&c, 0).unwrap(), FgAbGroup::trivial());
    }

    /// Cellular cochain complex of the circle subdivided into 2q vertices
    /// and 2q edges: delta = (transpose of) the boundary sending edge i to
    /// v_{i+1} - v_i.
    fn circle_cochain_complex(q: usize) -> CochainComplex {
        let n = 2 * q;
        let mut boundary = IntegerMatrix::zeros(n, n); // rows = vertices, cols = edges
        for e in 0..n {
            boundary.set((e + 1) % n, e, BigInt::one());
            let v = boundary.get(e, e) - BigInt::one();
            boundary.set(e, e, v);
        }
        complex(vec![n, n], vec![boundary.transpose(), IntegerMatrix::zeros(0, n)])
    }

    #[test]
    fn cohomology_circle() {
        for q in 1..=3 {
            let c = circle_cochain_complex(q);
            assert_eq!(cohomology_of_complex(&c, 0).unwrap(), FgAbGroup::free(1), "H0 of circle");
            assert_eq!(cohomology_of_complex(&c, 1).unwrap(), FgAbGroup::free(1), "H1 of circle");
        }
    }

    #[test]
    fn cohomology_rejects_nonzero_composition() {
        let c = complex(
            vec![1, 1, 1],
            vec![
                IntegerMatrix::from_rows(&[vec![1]]),
                IntegerMatrix::from_rows(&[vec![1]]),
                IntegerMatrix::zeros(0, 1),
            ],
        );
        assert!(matches!(
            cohomology_of_complex(&c, 1),
            Err(AbelianError::CompositionNotZero { .. })
        ));
    }

    #[test]
    fn rank_nullity_cross_check() {
        // free rank of H^n = dim ker(delta_n) - rank(delta_{n-1})
        let d0 = IntegerMatrix::from_rows(&[vec![1, -1, 0], vec![0, 2, -2], vec![1, 1, -2]]);
        let d1 = IntegerMatrix::zeros(0, 3);
        let c = complex(vec![3, 3], vec![d0.clone(), d1]);
        let h1 = cohomology_of_complex(&c, 1).unwrap();
        let snf0 = smith_normal_form(&d0);
        let ker_dim = 3 - smith_normal_form(&c.differential(1)).rank();
        assert_eq!(h1.free_rank(), ker_dim - snf0.rank());
    }

    /// Z^k / column lattice of R, built through the cohomology machinery so
    /// it carries a presentation.
    pub(crate) fn quotient_group(k: usize, relations: &IntegerMatrix) -> FgAbGroup {
        assert_eq!(relations.rows(), k);
        let c = CochainComplex::new(
            vec![relations.cols(), k],
            vec![relations.clone(), IntegerMatrix::zeros(0, k)],
            "test quotient",
        )
        .unwrap();
        cohomology_of_complex(&c, 1).unwrap()
    }

    #[test]
    fn induced_identity_and_zero() {
        let c = circle_cochain_complex(2);
        let id = CochainMap::new(
            c.clone(),
            c.clone(),
            vec![IntegerMatrix::identity(4), IntegerMatrix::identity(4)],
        )
        .unwrap();
        let h = induced_hom(&id, 1).unwrap();
        assert_eq!(h.source, FgAbGroup::free(1));
        assert_eq!(h.matrix, IntegerMatrix::identity(1));

        let z = CochainMap::new(
            c.clone(),
            c.clone(),
            vec![IntegerMatrix::zeros(4, 4), IntegerMatrix::zeros(4, 4)],
        )
        .unwrap();
        let hz = induced_hom(&z, 1).unwrap();
        assert!(hz.is_zero());
    }

    #[test]
    fn induced_rejects_non_chain_map() {
        let c = circle_cochain_complex(1);
        let mut bad = IntegerMatrix::identity(2);
        bad.set(0, 1, BigInt::from(1));
        let f = CochainMap::new(c.clone(), c.clone(), vec![bad, IntegerMatrix::identity(2)]).unwrap();
        assert!(matches!(induced_hom(&f, 1), Err(AbelianError::NotChainMap { .. })));
    }

    #[test]
    fn kernel_cokernel_diagonal_map() {
        // Z/2 --diag--> Z/2 + Z/2: injective, cokernel Z/2
        let z2 = quotient_group(1, &IntegerMatrix::from_rows(&[vec![2]]));
        let z2z2 = quotient_group(2, &IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 2]]));
        let diag = GroupHom {
            source: z2.clone(),
            target: z2z2.clone(),
            matrix: IntegerMatrix::from_rows(&[vec![1], vec![1]]),
        };
        assert_eq!(kernel(&diag), FgAbGroup::trivial());
        assert_eq!(cokernel(&diag), FgAbGroup::new(0, vec![2]));
    }

    #[test]
    fn kernel_cokernel_basics() {
        let z = quotient_group(1, &IntegerMatrix::zeros(1, 0));
        let id = GroupHom::identity(&z);
        assert_eq!(cokernel(&id), FgAbGroup::trivial());
        assert_eq!(kernel(&id), FgAbGroup::trivial());

        let times2 = GroupHom {
            source: z.clone(),
            target: z.clone(),
            matrix: IntegerMatrix::from_rows(&[vec![2]]),
        };
        assert_eq!(cokernel(&times2), FgAbGroup::new(0, vec![2]));
        assert_eq!(kernel(&times2), FgAbGroup::trivial());

        let times3 = GroupHom {
            source: z.clone(),
            target: z.clone(),
            matrix: IntegerMatrix::from_rows(&[vec![3]]),
        };
        assert_eq!(kernel(&times3), FgAbGroup::trivial());

        let z2 = quotient_group(1, &IntegerMatrix::from_rows(&[vec![2]]));
        assert_eq!(kernel(&GroupHom::identity(&z2)), FgAbGroup::trivial());
        // zero map out of Z/2 has kernel Z/2
        let zero = GroupHom::zero(&z2, &z);
        assert_eq!(kernel(&zero), FgAbGroup::new(0, vec![2]));

        // x2 on Z/4 has kernel Z/2 and cokernel Z/2
        let z4 = quotient_group(1, &IntegerMatrix::from_rows(&[vec![4]]));
        let double = GroupHom {
            source: z4.clone(),
            target: z4.clone(),
            matrix: IntegerMatrix::from_rows(&[vec![2]]),
        };
        assert_eq!(kernel(&double), FgAbGroup::new(0, vec![2]));
        assert_eq!(cokernel(&double), FgAbGroup::new(0, vec![2]));
    }

    #[test]
    fn canonical_form_distinguishes_z4_from_z2_z2() {
        let z4 = quotient_group(1, &IntegerMatrix::from_rows(&[vec![4]]));
        let z2z2 = quotient_group(2, &IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 2]]));
        assert_ne!(z4, z2z2);
        assert_eq!(z4.torsion(), &[BigInt::from(4)]);
        assert_eq!(z2z2.torsion(), &[BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn display_rendering() {
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
        assert_eq!(FgAbGroup::free(1).to_string(), "Z");
        assert_eq!(FgAbGroup::free(2).to_string(), "Z^2");
        assert_eq!(FgAbGroup::new(1, vec![2, 4]).to_string(), "Z + Z/2 + Z/4");
        assert_eq!(FgAbGroup::new(0, vec![6]).to_string(), "Z/6");
    }

    #[test]
    fn presentation_coordinates_roundtrip() {
        // H^1 of the q=2 circle: one free generator; its own vector must
        // have coordinate 1.
        let c = circle_cochain_complex(2);
        let h = cohomology_of_complex(&c, 1).unwrap();
        let p = h.presentation().unwrap();
        let gens = p.generator_vectors();
        assert_eq!(gens.cols(), 1);
        let coords = p.coordinates_of(&gens.column(0)).unwrap();
        assert_eq!(coords, vec![BigInt::one()]);
    }
}
