//! Finite Z2-CW complexes: cells with a cellular involution.
//!
//! A complex stores, per dimension: cell labels, the involution as a signed
//! permutation matrix, the boundary matrix, and a fixed-cell mask. Cells are
//! either fixed pointwise by the involution (`T e = +e`) or swapped in free
//! pairs (`T e = +/- e'`, `e' != e`). `T e = -e` is rejected: a cell the
//! involution maps to itself orientation-reversingly has no place in this
//! model and must be subdivided away by the complex author.
//!
//! Orientation bookkeeping is entirely in the matrices: each cell carries an
//! implicit orientation, boundary entries are incidence degrees, and the
//! signs in the action matrix say how orientations transport across the
//! involution.
//!
//! The product boundary follows `d(e x f) = de x f + (-1)^{|e|} e x df`, and
//! quotient constructions pick the lexicographically first label in each
//! orbit as the representative. Both conventions are load-bearing for
//! reproducibility and are fixed in `docs/complex-format.md`.

use crate::abelian::{CochainComplex, IntegerMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ZcwError {
    #[error("invalid complex: {}", violations.join("; "))]
    InvalidComplex { violations: Vec<String> },
    #[error("subcomplex not closed under the involution: {0}")]
    SubcomplexNotInvariant(String),
    #[error("cell map does not commute at degree {degree}: {reason}")]
    NotChainMap { degree: usize, reason: String },
    #[error("serialization: {0}")]
    Serialization(String),
}

fn invalid(violations: Vec<String>) -> ZcwError {
    ZcwError::InvalidComplex { violations }
}

/// One free two-cell orbit in a fixed dimension: `T e_rep = sign * e_partner`.
/// The representative is the cell with the lexicographically smaller label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeOrbit {
    pub rep: usize,
    pub partner: usize,
    pub sign: i64,
}

/// A finite CW complex with a cellular involution.
///
/// Equality ignores the provenance `name` and compares cells, action,
/// boundary, and fixed masks exactly (including cell order and labels).
#[derive(Clone, Debug)]
pub struct Z2CwComplex {
    name: String,
    cells: Vec<Vec<String>>,
    action: Vec<IntegerMatrix>,
    boundary: Vec<IntegerMatrix>,
    fixed: Vec<Vec<bool>>,
}

impl PartialEq for Z2CwComplex {
    fn eq(&self, other: &Self) -> bool {
        self.cells == other.cells
            && self.action == other.action
            && self.boundary == other.boundary
            && self.fixed == other.fixed
    }
}

impl Eq for Z2CwComplex {}

impl Z2CwComplex {
    /// Validated constructor. `boundary[n]` has one column per n-cell and one
    /// row per (n-1)-cell; `boundary[0]` must have zero rows.
    pub fn new(
        name: impl Into<String>,
        cells: Vec<Vec<String>>,
        action: Vec<IntegerMatrix>,
        boundary: Vec<IntegerMatrix>,
        fixed: Vec<Vec<bool>>,
    ) -> Result<Self, ZcwError> {
        let complex = Z2CwComplex {
            name: name.into(),
            cells,
            action,
            boundary,
            fixed,
        };
        let violations = complex.validate();
        if violations.is_empty() {
            Ok(complex)
        } else {
            Err(invalid(violations))
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Number of graded pieces (top dimension + 1; 0 for the empty complex).
    pub fn graded_len(&self) -> usize {
        self.cells.len()
    }

    /// Top dimension (0 for the empty complex as well).
    pub fn dim(&self) -> usize {
        self.cells.len().saturating_sub(1)
    }

    pub fn cell_count(&self, n: usize) -> usize {
        self.cells.get(n).map_or(0, |c| c.len())
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(|c| c.len()).sum()
    }

    pub fn labels(&self, n: usize) -> &[String] {
        self.cells.get(n).map_or(&[], |c| c.as_slice())
    }

    pub fn label(&self, n: usize, i: usize) -> &str {
        &self.cells[n][i]
    }

    pub fn is_fixed(&self, n: usize, i: usize) -> bool {
        self.fixed[n][i]
    }

    /// The boundary matrix out of dimension n (zero-sized when out of range).
    pub fn boundary_matrix(&self, n: usize) -> IntegerMatrix {
        match self.boundary.get(n) {
            Some(b) => b.clone(),
            None => IntegerMatrix::zeros(self.cell_count(n.wrapping_sub(1).min(n)), 0),
        }
    }

    pub fn action_matrix(&self, n: usize) -> IntegerMatrix {
        match self.action.get(n) {
            Some(a) => a.clone(),
            None => IntegerMatrix::identity(0),
        }
    }

    /// Image of cell (n, i) under the involution: `T e_i = sign * e_target`.
    pub fn action_of(&self, n: usize, i: usize) -> (usize, i64) {
        let a = &self.action[n];
        for r in 0..a.rows() {
            let v = a.get(r, i);
            if !v.is_zero() {
                let sign = if v.is_positive() { 1 } else { -1 };
                return (r, sign);
            }
        }
        unreachable!("validated action matrix has a nonzero entry per column");
    }

    pub fn euler_characteristic(&self) -> i64 {
        let mut chi: i64 = 0;
        for (n, c) in self.cells.iter().enumerate() {
            let term = c.len() as i64;
            if n % 2 == 0 {
                chi += term;
            } else {
                chi -= term;
            }
        }
        chi
    }

    pub fn is_free(&self) -> bool {
        self.fixed.iter().all(|f| f.iter().all(|&b| !b))
    }

    /// Free orbits in dimension n, each keyed by its lexicographically
    /// smaller label, sorted by that label.
    pub fn free_orbits(&self, n: usize) -> Vec<FreeOrbit> {
        let mut orbits = Vec::new();
        if n >= self.graded_len() {
            return orbits;
        }
        for i in 0..self.cell_count(n) {
            if self.fixed[n][i] {
                continue;
            }
            let (t, sign) = self.action_of(n, i);
            if self.cells[n][i] < self.cells[n][t] {
                orbits.push(FreeOrbit {
                    rep: i,
                    partner: t,
                    sign,
                });
            }
        }
        orbits.sort_by(|a, b| self.cells[n][a.rep].cmp(&self.cells[n][b.rep]));
        orbits
    }

    /// Fixed cells in dimension n, sorted by label.
    pub fn fixed_cells_sorted(&self, n: usize) -> Vec<usize> {
        if n >= self.graded_len() {
            return Vec::new();
        }
        let mut fixed: Vec<usize> = (0..self.cell_count(n)).filter(|&i| self.fixed[n][i]).collect();
        fixed.sort_by(|&a, &b| self.cells[n][a].cmp(&self.cells[n][b]));
        fixed
    }

    /// Check every structural invariant; an empty report means valid.
    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let len = self.cells.len();
        if self.action.len() != len || self.boundary.len() != len || self.fixed.len() != len {
            bad.push(format!(
                "graded lengths disagree: cells {}, action {}, boundary {}, fixed {}",
                len,
                self.action.len(),
                self.boundary.len(),
                self.fixed.len()
            ));
            return bad; // everything else would index out of bounds
        }
        for n in 0..len {
            let k = self.cells[n].len();
            if self.action[n].rows() != k || self.action[n].cols() != k {
                bad.push(format!("dim {}: action matrix is not {}x{}", n, k, k));
            }
            if self.fixed[n].len() != k {
                bad.push(format!("dim {}: fixed mask length != cell count", n));
            }
            let expected_rows = if n == 0 { 0 } else { self.cells[n - 1].len() };
            if self.boundary[n].rows() != expected_rows || self.boundary[n].cols() != k {
                bad.push(format!(
                    "dim {}: boundary matrix is {}x{}, expected {}x{}",
                    n,
                    self.boundary[n].rows(),
                    self.boundary[n].cols(),
                    expected_rows,
                    k
                ));
            }
            let mut seen = std::collections::HashSet::new();
            for label in &self.cells[n] {
                if label.is_empty() {
                    bad.push(format!("dim {}: empty cell label", n));
                }
                if !seen.insert(label) {
                    bad.push(format!("dim {}: duplicate cell label '{}'", n, label));
                }
            }
        }
        if !bad.is_empty() {
            return bad; // shape errors make the remaining checks unreliable
        }

        for n in 0..len {
            let a = &self.action[n];
            let k = a.cols();
            // signed permutation structure
            for c in 0..k {
                let nonzero: Vec<usize> = (0..k).filter(|&r| !a.get(r, c).is_zero()).collect();
                if nonzero.len() != 1 || a.get(nonzero[0], c).abs() != BigInt::one() {
                    bad.push(format!(
                        "dim {}: action column for cell '{}' is not a signed unit vector",
                        n, self.cells[n][c]
                    ));
                }
            }
            for r in 0..k {
                let nonzero = (0..k).filter(|&c| !a.get(r, c).is_zero()).count();
                if nonzero != 1 {
                    bad.push(format!("dim {}: action row {} is not a permutation row", n, r));
                }
            }
            if !bad.is_empty() {
                continue;
            }
            // involution
            if a.mul(a) != IntegerMatrix::identity(k) {
                bad.push(format!("dim {}: action squared is not the identity", n));
            }
            // diagonal behavior and fixed mask
            for c in 0..k {
                let diag = a.get(c, c);
                if *diag == -BigInt::one() {
                    bad.push(format!(
                        "dim {}: cell '{}' is sent to minus itself (forbidden; subdivide)",
                        n, self.cells[n][c]
                    ));
                }
                let is_fixed_by_action = diag.is_one();
                if is_fixed_by_action != self.fixed[n][c] {
                    bad.push(format!(
                        "dim {}: fixed mask for cell '{}' disagrees with the action",
                        n, self.cells[n][c]
                    ));
                }
            }
        }
        if !bad.is_empty() {
            return bad;
        }

        for n in 1..len {
            // equivariant boundary
            let lhs = self.action[n - 1].mul(&self.boundary[n]);
            let rhs = self.boundary[n].mul(&self.action[n]);
            if lhs != rhs {
                let mut cols = Vec::new();
                for c in 0..self.cells[n].len() {
                    if (0..self.cells[n - 1].len()).any(|r| lhs.get(r, c) != rhs.get(r, c)) {
                        cols.push(self.cells[n][c].clone());
                    }
                }
                bad.push(format!(
                    "dim {}: boundary does not commute with the action at cells [{}]",
                    n,
                    cols.join(", ")
                ));
            }
            // boundary of boundary
            if n >= 2 && !self.boundary[n - 1].mul(&self.boundary[n]).is_zero() {
                bad.push(format!("dim {}: boundary of boundary is nonzero", n));
            }
            // fixed cells form a subcomplex
            for c in 0..self.cells[n].len() {
                if !self.fixed[n][c] {
                    continue;
                }
                for r in 0..self.cells[n - 1].len() {
                    if !self.boundary[n].get(r, c).is_zero() && !self.fixed[n - 1][r] {
                        bad.push(format!(
                            "dim {}: fixed cell '{}' has non-fixed boundary cell '{}'",
                            n,
                            self.cells[n][c],
                            self.cells[n - 1][r]
                        ));
                    }
                }
            }
        }
        bad
    }

    /// The subcomplex of cells fixed by the involution, with its inclusion.
    pub fn fixed_subcomplex(&self) -> Result<(Z2CwComplex, CellMap), ZcwError> {
        let mask = self.fixed.clone();
        self.subcomplex_by_mask(&mask)
    }

    /// Subcomplex spanned by the masked cells. The mask must be closed under
    /// the involution and under taking boundaries.
    pub fn subcomplex_by_mask(&self, mask: &[Vec<bool>]) -> Result<(Z2CwComplex, CellMap), ZcwError> {
        if mask.len() != self.graded_len() || mask.iter().zip(&self.cells).any(|(m, c)| m.len() != c.len()) {
            return Err(invalid(vec!["mask shape does not match complex".into()]));
        }
        // closure under the action
        for n in 0..self.graded_len() {
            for i in 0..self.cell_count(n) {
                if !mask[n][i] {
                    continue;
                }
                let (t, _) = self.action_of(n, i);
                if !mask[n][t] {
                    return Err(ZcwError::SubcomplexNotInvariant(format!(
                        "cell '{}' selected but its involution image '{}' is not",
                        self.cells[n][i], self.cells[n][t]
                    )));
                }
            }
        }
        // closure under boundary
        let mut violations = Vec::new();
        for n in 1..self.graded_len() {
            for c in 0..self.cell_count(n) {
                if !mask[n][c] {
                    continue;
                }
                for r in 0..self.cell_count(n - 1) {
                    if !self.boundary[n].get(r, c).is_zero() && !mask[n - 1][r] {
                        violations.push(format!(
                            "selected cell '{}' has unselected boundary cell '{}'",
                            self.cells[n][c],
                            self.cells[n - 1][r]
                        ));
                    }
                }
            }
        }
        if !violations.is_empty() {
            return Err(invalid(violations));
        }

        let mut graded_len = self.graded_len();
        while graded_len > 0 && mask[graded_len - 1].iter().all(|&b| !b) {
            graded_len -= 1;
        }

        let mut cells = Vec::new();
        let mut action = Vec::new();
        let mut boundary = Vec::new();
        let mut fixed = Vec::new();
        let mut old_to_new: Vec<Vec<Option<usize>>> = Vec::new();
        for n in 0..graded_len {
            let selected: Vec<usize> = (0..self.cell_count(n)).filter(|&i| mask[n][i]).collect();
            let mut map = vec![None; self.cell_count(n)];
            for (new, &old) in selected.iter().enumerate() {
                map[old] = Some(new);
            }
            cells.push(selected.iter().map(|&i| self.cells[n][i].clone()).collect::<Vec<_>>());
            fixed.push(selected.iter().map(|&i| self.fixed[n][i]).collect::<Vec<_>>());
            let k = selected.len();
            let mut a = IntegerMatrix::zeros(k, k);
            for (new, &old) in selected.iter().enumerate() {
                let (t, sign) = self.action_of(n, old);
                let nt = map[t].expect("action closure checked");
                a.set(nt, new, BigInt::from(sign));
            }
            action.push(a);
            let prev = &old_to_new.last().cloned().unwrap_or_default();
            let prev_count = if n == 0 { 0 } else { cells[n - 1].len() };
            let mut b = IntegerMatrix::zeros(prev_count, k);
            if n > 0 {
                for (new, &old) in selected.iter().enumerate() {
                    for r in 0..self.cell_count(n - 1) {
                        let v = self.boundary[n].get(r, old);
                        if !v.is_zero() {
                            b.set(prev[r].expect("boundary closure checked"), new, v.clone());
                        }
                    }
                }
            }
            boundary.push(b);
            old_to_new.push(map);
        }
        let sub = Z2CwComplex::new(format!("{}|sub", self.name), cells, action, boundary, fixed)?;

        let mut matrices = Vec::new();
        for n in 0..graded_len {
            let mut m = IntegerMatrix::zeros(self.cell_count(n), sub.cell_count(n));
            let mut new = 0usize;
            for old in 0..self.cell_count(n) {
                if mask[n][old] {
                    m.set(old, new, BigInt::one());
                    new += 1;
                }
            }
            matrices.push(m);
        }
        for n in graded_len..self.graded_len() {
            matrices.push(IntegerMatrix::zeros(self.cell_count(n), 0));
        }
        let inclusion = CellMap::new(sub.clone(), self.clone(), matrices)?;
        Ok((sub, inclusion))
    }

    /// Subcomplex spanned by the cells with the given labels (any dimension).
    pub fn subcomplex_by_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<(Z2CwComplex, CellMap), ZcwError> {
        let want: std::collections::HashSet<&str> = labels.iter().map(|s| s.as_ref()).collect();
        let mut found = std::collections::HashSet::new();
        let mut mask: Vec<Vec<bool>> = Vec::new();
        for n in 0..self.graded_len() {
            mask.push(
                self.cells[n]
                    .iter()
                    .map(|l| {
                        let hit = want.contains(l.as_str());
                        if hit {
                            found.insert(l.as_str());
                        }
                        hit
                    })
                    .collect(),
            );
        }
        let missing: Vec<&str> = want.difference(&found).copied().collect();
        if !missing.is_empty() {
            let mut missing = missing;
            missing.sort_unstable();
            return Err(invalid(vec![format!("labels not found: {}", missing.join(", "))]));
        }
        self.subcomplex_by_mask(&mask)
    }

    /// Locate another complex inside this one by cell labels and return the
    /// corresponding mask. The named cells must form an invariant subcomplex
    /// whose restricted data agree with `y` up to cell order.
    pub fn mask_of_subcomplex(&self, y: &Z2CwComplex) -> Result<Vec<Vec<bool>>, ZcwError> {
        let mut mask: Vec<Vec<bool>> = self.cells.iter().map(|c| vec![false; c.len()]).collect();
        for n in 0..y.graded_len() {
            for label in y.labels(n) {
                match self.cells.get(n).and_then(|c| c.iter().position(|l| l == label)) {
                    Some(i) => mask[n][i] = true,
                    None => {
                        return Err(invalid(vec![format!(
                            "subcomplex cell '{}' (dim {}) not found in '{}'",
                            label, n, self.name
                        )]))
                    }
                }
            }
        }
        let (restricted, _) = self.subcomplex_by_mask(&mask)?;
        if restricted.canonicalized() != y.canonicalized() {
            return Err(invalid(vec![format!(
                "subcomplex data disagree with the restriction of '{}' to the named cells",
                self.name
            )]));
        }
        Ok(mask)
    }

    /// Product complex with the diagonal involution. Cells are pairs with
    /// labels `"a*b"`; the boundary follows the fixed sign convention
    /// `d(e x f) = de x f + (-1)^{|e|} e x df`.
    pub fn product(&self, other: &Z2CwComplex) -> Result<Z2CwComplex, ZcwError> {
        let lx = self.graded_len();
        let ly = other.graded_len();
        if lx == 0 || ly == 0 {
            return Z2CwComplex::new(
                format!("{}x{}", self.name, other.name),
                Vec::new(),
                Vec::new(),
                Vec::new(),
                Vec::new(),
            );
        }
        let len = lx + ly - 1;

        // flat index of the pair (x-dim i, x-cell xi, y-cell yi) inside dim n
        let offset = |n: usize, i: usize| -> usize {
            let mut off = 0;
            for ii in 0..i {
                if n - ii < ly {
                    off += self.cell_count(ii) * other.cell_count(n - ii);
                }
            }
            off
        };
        let index = |n: usize, i: usize, xi: usize, yi: usize| -> usize {
            offset(n, i) + xi * other.cell_count(n - i) + yi
        };

        let mut cells: Vec<Vec<String>> = Vec::with_capacity(len);
        let mut action = Vec::with_capacity(len);
        let mut boundary = Vec::with_capacity(len);
        let mut fixed = Vec::with_capacity(len);
        for n in 0..len {
            let lo = n.saturating_sub(ly - 1);
            let hi = n.min(lx - 1);
            let mut labels = Vec::new();
            let mut fix = Vec::new();
            for i in lo..=hi {
                let j = n - i;
                for xi in 0..self.cell_count(i) {
                    for yi in 0..other.cell_count(j) {
                        labels.push(format!("{}*{}", self.cells[i][xi], other.cells[j][yi]));
                        fix.push(self.fixed[i][xi] && other.fixed[j][yi]);
                    }
                }
            }
            let k = labels.len();
            let mut a = IntegerMatrix::zeros(k, k);
            for i in lo..=hi {
                let j = n - i;
                for xi in 0..self.cell_count(i) {
                    let (tx, sx) = self.action_of(i, xi);
                    for yi in 0..other.cell_count(j) {
                        let (ty, sy) = other.action_of(j, yi);
                        a.set(
                            index(n, i, tx, ty),
                            index(n, i, xi, yi),
                            BigInt::from(sx * sy),
                        );
                    }
                }
            }
            let prev_count = if n == 0 { 0 } else { cells[n - 1].len() };
            let mut b = IntegerMatrix::zeros(prev_count, k);
            if n > 0 {
                for i in lo..=hi {
                    let j = n - i;
                    for xi in 0..self.cell_count(i) {
                        for yi in 0..other.cell_count(j) {
                            let col = index(n, i, xi, yi);
                            if i > 0 {
                                let bx = &self.boundary[i];
                                for r in 0..self.cell_count(i - 1) {
                                    let v = bx.get(r, xi);
                                    if !v.is_zero() {
                                        b.add_to(index(n - 1, i - 1, r, yi), col, v);
                                    }
                                }
                            }
                            if j > 0 {
                                let by = &other.boundary[j];
                                let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                                for r in 0..other.cell_count(j - 1) {
                                    let v = by.get(r, yi);
                                    if !v.is_zero() {
                                        let signed = &sign * v;
                                        b.add_to(index(n - 1, i, xi, r), col, &signed);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            cells.push(labels);
            action.push(a);
            boundary.push(b);
            fixed.push(fix);
        }
        Z2CwComplex::new(format!("{}x{}", self.name, other.name), cells, action, boundary, fixed)
    }

    /// Quotient by the involution: one cell per free orbit (the
    /// lexicographically first label represents), every fixed cell kept. The
    /// result carries the trivial involution; the projection chain map is
    /// returned alongside.
    pub fn quotient_complex(&self) -> Result<(Z2CwComplex, CellMap), ZcwError> {
        let len = self.graded_len();
        let mut reps_per_dim: Vec<Vec<usize>> = Vec::new();
        let mut class_of: Vec<Vec<usize>> = Vec::new(); // old index -> class index
        let mut proj_sign: Vec<Vec<i64>> = Vec::new(); // old index -> sign of P(e_old)
        let mut cells = Vec::new();
        let mut fixed = Vec::new();
        for n in 0..len {
            let count = self.cell_count(n);
            let mut is_rep = vec![false; count];
            for i in 0..count {
                if self.fixed[n][i] {
                    is_rep[i] = true;
                } else {
                    let (t, _) = self.action_of(n, i);
                    is_rep[i] = self.cells[n][i] < self.cells[n][t];
                }
            }
            let reps: Vec<usize> = (0..count).filter(|&i| is_rep[i]).collect();
            let mut class = vec![usize::MAX; count];
            let mut sign = vec![0i64; count];
            for (new, &old) in reps.iter().enumerate() {
                class[old] = new;
                sign[old] = 1;
            }
            for i in 0..count {
                if is_rep[i] {
                    continue;
                }
                // T e_i = s e_rep; since T is an involution, T e_rep = s e_i
                // as well, so P(e_i) = s [rep]
                let (rep, s) = self.action_of(n, i);
                class[i] = class[rep];
                sign[i] = s;
            }
            cells.push(reps.iter().map(|&i| self.cells[n][i].clone()).collect::<Vec<_>>());
            fixed.push(vec![true; reps.len()]);
            reps_per_dim.push(reps);
            class_of.push(class);
            proj_sign.push(sign);
        }

        let mut action = Vec::new();
        let mut boundary = Vec::new();
        for n in 0..len {
            let k = cells[n].len();
            action.push(IntegerMatrix::identity(k));
            let prev_count = if n == 0 { 0 } else { cells[n - 1].len() };
            let mut b = IntegerMatrix::zeros(prev_count, k);
            if n > 0 {
                // boundary of each representative, pushed through the projection
                for (new, &old) in reps_per_dim[n].iter().enumerate() {
                    for r in 0..self.cell_count(n - 1) {
                        let v = self.boundary[n].get(r, old);
                        if !v.is_zero() {
                            let signed = v * BigInt::from(proj_sign[n - 1][r]);
                            b.add_to(class_of[n - 1][r], new, &signed);
                        }
                    }
                }
            }
            boundary.push(b);
        }
        let quotient = Z2CwComplex::new(format!("{}/tau", self.name), cells, action, boundary, fixed)?;

        let mut matrices = Vec::new();
        for n in 0..len {
            let mut m = IntegerMatrix::zeros(quotient.cell_count(n), self.cell_count(n));
            for old in 0..self.cell_count(n) {
                m.set(class_of[n][old], old, BigInt::from(proj_sign[n][old]));
            }
            matrices.push(m);
        }
        let projection = CellMap::new(self.clone(), quotient.clone(), matrices)?;
        Ok((quotient, projection))
    }

    /// Disjoint union with block-diagonal data. Labels must not collide.
    pub fn disjoint_union(&self, other: &Z2CwComplex) -> Result<Z2CwComplex, ZcwError> {
        let len = self.graded_len().max(other.graded_len());
        let mut cells = Vec::new();
        let mut action = Vec::new();
        let mut boundary = Vec::new();
        let mut fixed = Vec::new();
        for n in 0..len {
            let ka = self.cell_count(n);
            let kb = other.cell_count(n);
            let mut labels: Vec<String> = self.labels(n).to_vec();
            labels.extend(other.labels(n).iter().cloned());
            cells.push(labels);
            let mut fix: Vec<bool> = (0..ka).map(|i| self.fixed[n][i]).collect();
            fix.extend((0..kb).map(|i| other.fixed[n][i]));
            fixed.push(fix);
            let mut a = IntegerMatrix::zeros(ka + kb, ka + kb);
            for c in 0..ka {
                let (t, s) = self.action_of(n, c);
                a.set(t, c, BigInt::from(s));
            }
            for c in 0..kb {
                let (t, s) = other.action_of(n, c);
                a.set(ka + t, ka + c, BigInt::from(s));
            }
            action.push(a);
            let pa = if n == 0 { 0 } else { self.cell_count(n - 1) };
            let pb = if n == 0 { 0 } else { other.cell_count(n - 1) };
            let mut b = IntegerMatrix::zeros(pa + pb, ka + kb);
            if n > 0 {
                let ba = self.boundary_matrix(n);
                for r in 0..ba.rows() {
                    for c in 0..ba.cols() {
                        let v = ba.get(r, c);
                        if !v.is_zero() {
                            b.set(r, c, v.clone());
                        }
                    }
                }
                let bb = other.boundary_matrix(n);
                for r in 0..bb.rows() {
                    for c in 0..bb.cols() {
                        let v = bb.get(r, c);
                        if !v.is_zero() {
                            b.set(pa + r, ka + c, v.clone());
                        }
                    }
                }
            }
            boundary.push(b);
        }
        Z2CwComplex::new(format!("{}+{}", self.name, other.name), cells, action, boundary, fixed)
    }

    /// The same complex with cells sorted by label in every dimension
    /// (matrices permuted accordingly). Two complexes are isomorphic "under
    /// canonical labels" when their canonicalized forms are equal.
    pub fn canonicalized(&self) -> Z2CwComplex {
        let len = self.graded_len();
        let mut perm: Vec<Vec<usize>> = Vec::new(); // new index -> old index
        for n in 0..len {
            let mut idx: Vec<usize> = (0..self.cell_count(n)).collect();
            idx.sort_by(|&a, &b| self.cells[n][a].cmp(&self.cells[n][b]));
            perm.push(idx);
        }
        let mut old_to_new: Vec<Vec<usize>> = Vec::new();
        for p in &perm {
            let mut inv = vec![0; p.len()];
            for (new, &old) in p.iter().enumerate() {
                inv[old] = new;
            }
            old_to_new.push(inv);
        }
        let mut cells = Vec::new();
        let mut action = Vec::new();
        let mut boundary = Vec::new();
        let mut fixed = Vec::new();
        for n in 0..len {
            let k = self.cell_count(n);
            cells.push(perm[n].iter().map(|&o| self.cells[n][o].clone()).collect::<Vec<_>>());
            fixed.push(perm[n].iter().map(|&o| self.fixed[n][o]).collect::<Vec<_>>());
            let mut a = IntegerMatrix::zeros(k, k);
            for (new_c, &old_c) in perm[n].iter().enumerate() {
                let (old_t, s) = self.action_of(n, old_c);
                a.set(old_to_new[n][old_t], new_c, BigInt::from(s));
            }
            action.push(a);
            let prev = if n == 0 { 0 } else { self.cell_count(n - 1) };
            let mut b = IntegerMatrix::zeros(prev, k);
            if n > 0 {
                for (new_c, &old_c) in perm[n].iter().enumerate() {
                    for old_r in 0..prev {
                        let v = self.boundary[n].get(old_r, old_c);
                        if !v.is_zero() {
                            b.set(old_to_new[n - 1][old_r], new_c, v.clone());
                        }
                    }
                }
            }
            boundary.push(b);
        }
        Z2CwComplex {
            name: self.name.clone(),
            cells,
            action,
            boundary,
            fixed,
        }
    }

    /// Cellular cochain complex of the underlying space, involution
    /// forgotten: delta_n is the transpose of the boundary out of dimension
    /// n+1.
    pub fn ordinary_cochain_complex(&self) -> CochainComplex {
        let len = self.graded_len();
        let ranks: Vec<usize> = (0..len).map(|n| self.cell_count(n)).collect();
        let mut diffs = Vec::new();
        for n in 0..len {
            if n + 1 < len {
                diffs.push(self.boundary[n + 1].transpose());
            } else {
                diffs.push(IntegerMatrix::zeros(0, self.cell_count(n)));
            }
        }
        CochainComplex::new(ranks, diffs, format!("cochains({})", self.name))
            .expect("validated complex yields consistent cochain shapes")
    }

    pub fn to_json_string(&self) -> Result<String, ZcwError> {
        let mut action = Vec::new();
        for n in 0..self.graded_len() {
            let mut per_cell = Vec::new();
            for i in 0..self.cell_count(n) {
                let (t, s) = self.action_of(n, i);
                per_cell.push((t, s));
            }
            action.push(per_cell);
        }
        let mut boundary = Vec::new();
        for n in 0..self.graded_len() {
            let b = &self.boundary[n];
            let mut triplets = Vec::new();
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    let v = b.get(r, c);
                    if !v.is_zero() {
                        let small: i64 = v.try_into().map_err(|_| {
                            ZcwError::Serialization(format!(
                                "boundary entry at dim {} ({}, {}) does not fit in 64 bits",
                                n, r, c
                            ))
                        })?;
                        triplets.push((r, c, small));
                    }
                }
            }
            boundary.push(triplets);
        }
        let doc = ComplexJson {
            schema_version: SCHEMA_VERSION,
            dims: self.graded_len(),
            cells: self.cells.clone(),
            action,
            boundary,
            fixed: self.fixed.clone(),
        };
        serde_json::to_string_pretty(&doc).map_err(|e| ZcwError::Serialization(e.to_string()))
    }

    pub fn from_json_str(s: &str) -> Result<Z2CwComplex, ZcwError> {
        let doc: ComplexJson =
            serde_json::from_str(s).map_err(|e| ZcwError::Serialization(format!("JSON parse error: {}", e)))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(ZcwError::Serialization(format!(
                "unsupported schema_version {} (expected {})",
                doc.schema_version, SCHEMA_VERSION
            )));
        }
        let len = doc.cells.len();
        if doc.dims != len {
            return Err(ZcwError::Serialization(format!(
                "dims field is {} but cells lists {} dimensions",
                doc.dims, len
            )));
        }
        if doc.action.len() != len || doc.boundary.len() != len || doc.fixed.len() != len {
            return Err(ZcwError::Serialization(
                "action/boundary/fixed lengths disagree with cells".into(),
            ));
        }
        let mut action = Vec::new();
        for n in 0..len {
            let k = doc.cells[n].len();
            if doc.action[n].len() != k {
                return Err(ZcwError::Serialization(format!(
                    "dim {}: action lists {} cells, expected {}",
                    n,
                    doc.action[n].len(),
                    k
                )));
            }
            let mut a = IntegerMatrix::zeros(k, k);
            for (c, &(t, s)) in doc.action[n].iter().enumerate() {
                if t >= k || (s != 1 && s != -1) {
                    return Err(ZcwError::Serialization(format!(
                        "dim {}: bad action entry ({}, {}) for cell {}",
                        n, t, s, c
                    )));
                }
                a.set(t, c, BigInt::from(s));
            }
            action.push(a);
        }
        let mut boundary = Vec::new();
        for n in 0..len {
            let rows = if n == 0 { 0 } else { doc.cells[n - 1].len() };
            let cols = doc.cells[n].len();
            let mut b = IntegerMatrix::zeros(rows, cols);
            for &(r, c, v) in &doc.boundary[n] {
                if r >= rows || c >= cols {
                    return Err(ZcwError::Serialization(format!(
                        "dim {}: boundary triplet ({}, {}, {}) out of range {}x{}",
                        n, r, c, v, rows, cols
                    )));
                }
                b.set(r, c, BigInt::from(v));
            }
            boundary.push(b);
        }
        Z2CwComplex::new("imported", doc.cells, action, boundary, doc.fixed)
    }
}

pub const SCHEMA_VERSION: u32 = 1;

/// On-disk form of a complex. Field semantics are specified in
/// `docs/complex-format.md`; `dims` is the number of graded pieces, `action`
/// lists one `(target_index, sign)` per cell, `boundary` lists row-major
/// sorted `(row, col, value)` triplets of each boundary matrix.
#[derive(Serialize, Deserialize)]
struct ComplexJson {
    schema_version: u32,
    dims: usize,
    cells: Vec<Vec<String>>,
    action: Vec<Vec<(usize, i64)>>,
    boundary: Vec<Vec<(usize, usize, i64)>>,
    fixed: Vec<Vec<bool>>,
}

/// An equivariant cellular chain map: per-dimension matrices sending source
/// cells to target chains, commuting with boundaries and with the two
/// involutions. Construction validates both commutation properties.
#[derive(Clone, Debug)]
pub struct CellMap {
    pub source: Z2CwComplex,
    pub target: Z2CwComplex,
    matrices: Vec<IntegerMatrix>,
}

impl CellMap {
    pub fn new(
        source: Z2CwComplex,
        target: Z2CwComplex,
        matrices: Vec<IntegerMatrix>,
    ) -> Result<Self, ZcwError> {
        let len = source.graded_len().max(target.graded_len());
        if matrices.len() < len {
            return Err(ZcwError::NotChainMap {
                degree: matrices.len(),
                reason: format!("need {} degreewise matrices, got {}", len, matrices.len()),
            });
        }
        let map = CellMap {
            source,
            target,
            matrices,
        };
        for n in 0..len {
            let m = map.matrix(n);
            if m.rows() != map.target.cell_count(n) || m.cols() != map.source.cell_count(n) {
                return Err(ZcwError::NotChainMap {
                    degree: n,
                    reason: format!(
                        "matrix is {}x{}, expected {}x{}",
                        m.rows(),
                        m.cols(),
                        map.target.cell_count(n),
                        map.source.cell_count(n)
                    ),
                });
            }
            if map.target.action_matrix(n).mul(&m) != m.mul(&map.source.action_matrix(n)) {
                return Err(ZcwError::NotChainMap {
                    degree: n,
                    reason: "does not commute with the involutions".into(),
                });
            }
            if n > 0 {
                let lhs = map.target.boundary_matrix(n).mul(&m);
                let rhs = map.matrix(n - 1).mul(&map.source.boundary_matrix(n));
                if lhs != rhs {
                    return Err(ZcwError::NotChainMap {
                        degree: n,
                        reason: "does not commute with the boundaries".into(),
                    });
                }
            }
        }
        Ok(map)
    }

    pub fn identity(x: &Z2CwComplex) -> CellMap {
        let matrices = (0..x.graded_len())
            .map(|n| IntegerMatrix::identity(x.cell_count(n)))
            .collect();
        CellMap {
            source: x.clone(),
            target: x.clone(),
            matrices,
        }
    }

    pub fn matrix(&self, n: usize) -> IntegerMatrix {
        match self.matrices.get(n) {
            Some(m) => m.clone(),
            None => IntegerMatrix::zeros(self.target.cell_count(n), self.source.cell_count(n)),
        }
    }

    /// `self . other` (apply `other` first).
    pub fn compose(&self, other: &CellMap) -> Result<CellMap, ZcwError> {
        if other.target != self.source {
            return Err(ZcwError::NotChainMap {
                degree: 0,
                reason: "composition endpoints do not match".into(),
            });
        }
        let len = other.source.graded_len().max(self.target.graded_len());
        let matrices = (0..len).map(|n| self.matrix(n).mul(&other.matrix(n))).collect();
        CellMap::new(other.source.clone(), self.target.clone(), matrices)
    }
}

#[cfg(test)]
pub(crate) mod test_spaces {
    use super::*;

    pub fn point() -> Z2CwComplex {
        Z2CwComplex::new(
            "point",
            vec![vec!["pt".into()]],
            vec![IntegerMatrix::identity(1)],
            vec![IntegerMatrix::zeros(0, 1)],
            vec![vec![true]],
        )
        .unwrap()
    }

    pub fn free_pair() -> Z2CwComplex {
        Z2CwComplex::new(
            "free_pair",
            vec![vec!["z+".into(), "z-".into()]],
            vec![IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]])],
            vec![IntegerMatrix::zeros(0, 2)],
            vec![vec![false, false]],
        )
        .unwrap()
    }

    /// Circle with a reflection: two fixed vertices, two swapped edges.
    pub fn reflection_circle() -> Z2CwComplex {
        Z2CwComplex::new(
            "reflection_circle",
            vec![
                vec!["P0".into(), "P1".into()],
                vec!["e".into(), "eb".into()],
            ],
            vec![
                IntegerMatrix::identity(2),
                IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]),
            ],
            vec![
                IntegerMatrix::zeros(0, 2),
                IntegerMatrix::from_rows(&[vec![-1, -1], vec![1, 1]]),
            ],
            vec![vec![true, true], vec![false, false]],
        )
        .unwrap()
    }

    /// Sphere S^n with the antipodal action, two cells per dimension.
    pub fn antipodal_sphere(n: usize) -> Z2CwComplex {
        let mut cells = Vec::new();
        let mut action = Vec::new();
        let mut boundary = Vec::new();
        let mut fixed = Vec::new();
        for k in 0..=n {
            cells.push(vec![format!("e{}+", k), format!("e{}-", k)]);
            action.push(IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]));
            fixed.push(vec![false, false]);
            if k == 0 {
                boundary.push(IntegerMatrix::zeros(0, 2));
            } else {
                let s = if k % 2 == 0 { 1 } else { -1 };
                boundary.push(IntegerMatrix::from_rows(&[vec![1, s], vec![s, 1]]));
            }
        }
        Z2CwComplex::new(format!("antipodal_sphere_{}", n), cells, action, boundary, fixed).unwrap()
    }
}
