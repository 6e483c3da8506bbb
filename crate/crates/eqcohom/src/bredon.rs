//! Equivariant cochain complexes over the orbit decomposition.
//!
//! A degree-n cochain on an involutive complex, with values in a coefficient
//! system M, assigns an element of M at the free orbit to every free orbit
//! of n-cells and an element of M at the fixed point to every fixed n-cell.
//! Equivariance makes the value on an orbit's partner cell determined by the
//! value on its representative (through the involution of M), and the
//! compatibility over fixed cells is the structure map. The differential is
//! precomposition with the cellular boundary, expanded through those two
//! rules; the expansion is shared verbatim with the construction of induced
//! maps, so the one subtle piece of sign bookkeeping lives in a single
//! function.
//!
//! Coordinates in degree n are ordered: free orbits first (by representative
//! label), then fixed cells (by label), each contributing a block of the
//! corresponding rank. Degrees run from 0 to one past the dimension; the
//! extra top degree always has rank zero and stands as a guard against
//! off-by-one mistakes in comparisons between theories.

use crate::abelian::{
    cohomology_of_complex, induced_hom, CochainComplex, CochainMap, FgAbGroup, GroupHom,
    IntegerMatrix,
};
use crate::coeff::CoefficientSystem;
use crate::error::EqError;
use crate::zcw::{CellMap, FreeOrbit, Z2CwComplex, ZcwError};
use num_bigint::BigInt;
use num_traits::Zero;

/// Layout of the degree-n cochain coordinates.
struct Basis {
    orbits: Vec<FreeOrbit>,
    fixed: Vec<usize>,
    m0: usize,
    m1: usize,
}

impl Basis {
    fn rank(&self) -> usize {
        self.orbits.len() * self.m0 + self.fixed.len() * self.m1
    }

    fn orbit_offset(&self, k: usize) -> usize {
        k * self.m0
    }

    fn fixed_offset(&self, k: usize) -> usize {
        self.orbits.len() * self.m0 + k * self.m1
    }
}

fn basis(x: &Z2CwComplex, system: &CoefficientSystem, n: usize) -> Basis {
    if n >= x.graded_len() {
        return Basis {
            orbits: Vec::new(),
            fixed: Vec::new(),
            m0: system.m0_rank(),
            m1: system.m1_rank(),
        };
    }
    Basis {
        orbits: x.free_orbits(n),
        fixed: x.fixed_cells_sorted(n),
        m0: system.m0_rank(),
        m1: system.m1_rank(),
    }
}

/// How a single cell's value is recovered from the cochain coordinates.
enum CellRole {
    Fixed { slot: usize },
    OrbitRep { slot: usize },
    OrbitPartner { slot: usize, sign: i64 },
}

fn roles(x: &Z2CwComplex, n: usize, b: &Basis) -> Vec<CellRole> {
    let count = x.cell_count(n);
    let mut out: Vec<Option<CellRole>> = (0..count).map(|_| None).collect();
    for (slot, orbit) in b.orbits.iter().enumerate() {
        out[orbit.rep] = Some(CellRole::OrbitRep { slot });
        out[orbit.partner] = Some(CellRole::OrbitPartner {
            slot,
            sign: orbit.sign,
        });
    }
    for (slot, &cell) in b.fixed.iter().enumerate() {
        out[cell] = Some(CellRole::Fixed { slot });
    }
    out.into_iter()
        .map(|r| r.expect("every cell is fixed or in a free orbit"))
        .collect()
}

/// Add `coeff` times the value of the cell described by `role` into the row
/// block starting at `row0` of `out`, written against the coordinates laid
/// out by `b`. This encodes both equivariance (a partner cell carries the
/// involution of the system, with the orbit sign) and the structure map
/// (a fixed cell's value restricts into the free-orbit value).
fn add_cell_value(
    out: &mut IntegerMatrix,
    row0: usize,
    coeff: &BigInt,
    role: &CellRole,
    system: &CoefficientSystem,
    b: &Basis,
) {
    if coeff.is_zero() {
        return;
    }
    match role {
        CellRole::Fixed { slot } => {
            let col0 = b.fixed_offset(*slot);
            let m = system.structure_map();
            for r in 0..b.m0 {
                for c in 0..b.m1 {
                    let v = coeff * m.get(r, c);
                    if !v.is_zero() {
                        out.add_to(row0 + r, col0 + c, &v);
                    }
                }
            }
        }
        CellRole::OrbitRep { slot } => {
            let col0 = b.orbit_offset(*slot);
            for r in 0..b.m0 {
                out.add_to(row0 + r, col0 + r, coeff);
            }
        }
        CellRole::OrbitPartner { slot, sign } => {
            let col0 = b.orbit_offset(*slot);
            let s: BigInt = (*sign).into();
            let a = system.action();
            for r in 0..b.m0 {
                for c in 0..b.m0 {
                    let v = coeff * a.get(r, c) * &s;
                    if !v.is_zero() {
                        out.add_to(row0 + r, col0 + c, &v);
                    }
                }
            }
        }
    }
}

fn differential(
    x: &Z2CwComplex,
    system: &CoefficientSystem,
    bn: &Basis,
    bn1: &Basis,
    n: usize,
) -> IntegerMatrix {
    let mut d = IntegerMatrix::zeros(bn1.rank(), bn.rank());
    if bn1.orbits.is_empty() && bn1.fixed.is_empty() {
        return d;
    }
    let b = x.boundary_matrix(n + 1);
    let roles_n = roles(x, n, bn);
    for (k, orbit) in bn1.orbits.iter().enumerate() {
        let row0 = bn1.orbit_offset(k);
        for (e, role) in roles_n.iter().enumerate() {
            let coeff = b.get(e, orbit.rep).clone();
            add_cell_value(&mut d, row0, &coeff, role, system, bn);
        }
    }
    for (k, &c) in bn1.fixed.iter().enumerate() {
        let row0 = bn1.fixed_offset(k);
        for (slot, &f) in bn.fixed.iter().enumerate() {
            let coeff = b.get(f, c);
            if coeff.is_zero() {
                continue;
            }
            let col0 = bn.fixed_offset(slot);
            for r in 0..bn.m1 {
                d.add_to(row0 + r, col0 + r, coeff);
            }
        }
    }
    d
}

/// The full equivariant cochain complex of `x` with coefficients in
/// `system`, degrees 0 through `dim + 1` (the top degree has rank zero).
/// The squared differential is verified to vanish before returning.
pub fn bredon_cochain_complex(
    x: &Z2CwComplex,
    system: &CoefficientSystem,
) -> Result<CochainComplex, EqError> {
    let violations = x.validate();
    if !violations.is_empty() {
        return Err(ZcwError::InvalidComplex { violations }.into());
    }
    let violations = system.check_system();
    if !violations.is_empty() {
        return Err(EqError::InvalidSystem { violations });
    }
    let glen = x.graded_len();
    // One basis past the top dimension: the guard degree, always empty.
    let bases: Vec<Basis> = (0..=glen).map(|n| basis(x, system, n)).collect();
    let ranks: Vec<usize> = bases.iter().map(Basis::rank).collect();
    let mut diffs = Vec::with_capacity(ranks.len());
    for n in 0..glen {
        diffs.push(differential(x, system, &bases[n], &bases[n + 1], n));
    }
    diffs.push(IntegerMatrix::zeros(0, 0));
    let complex = CochainComplex::new(
        ranks,
        diffs,
        format!("orbit cochains({}, {})", x.name(), system.name()),
    )?;
    complex.verify_dd_zero()?;
    Ok(complex)
}

pub fn bredon_cohomology(
    x: &Z2CwComplex,
    system: &CoefficientSystem,
    n: usize,
) -> Result<FgAbGroup, EqError> {
    let complex = bredon_cochain_complex(x, system)?;
    Ok(cohomology_of_complex(&complex, n)?)
}

/// Restriction of cochains along an equivariant cellular map `f: X -> Y`,
/// in degree `k`: a matrix from the degree-k coordinates on `Y` to those on
/// `X`.
fn restriction_matrix(
    f: &CellMap,
    system: &CoefficientSystem,
    k: usize,
) -> Result<IntegerMatrix, EqError> {
    let x = &f.source;
    let y = &f.target;
    let bx = basis(x, system, k);
    let by = basis(y, system, k);
    let roles_y = roles(y, k, &by);
    let fm = f.matrix(k);
    let mut out = IntegerMatrix::zeros(bx.rank(), by.rank());
    for (kx, orbit) in bx.orbits.iter().enumerate() {
        let row0 = bx.orbit_offset(kx);
        for (e, role) in roles_y.iter().enumerate() {
            let coeff = fm.get(e, orbit.rep).clone();
            add_cell_value(&mut out, row0, &coeff, role, system, &by);
        }
    }
    for (kx, &c) in bx.fixed.iter().enumerate() {
        let row0 = bx.fixed_offset(kx);
        for (e, role) in roles_y.iter().enumerate() {
            let coeff = fm.get(e, c);
            if coeff.is_zero() {
                continue;
            }
            match role {
                CellRole::Fixed { slot } => {
                    let col0 = by.fixed_offset(*slot);
                    for r in 0..bx.m1 {
                        out.add_to(row0 + r, col0 + r, coeff);
                    }
                }
                _ => {
                    return Err(ZcwError::NotChainMap {
                        degree: k,
                        reason: format!(
                            "image of fixed cell '{}' meets free cells of '{}'; \
                             the map does not respect the orbit decomposition",
                            x.label(k, c),
                            y.name()
                        ),
                    }
                    .into())
                }
            }
        }
    }
    Ok(out)
}

/// The map induced on degree-n equivariant cohomology by an equivariant
/// cellular map `f: X -> Y`. Cohomology is contravariant, so the result
/// goes from the cohomology of the target of `f` to that of its source.
/// The chain-level restriction is verified to commute with the
/// differentials before the induced map is read off.
pub fn bredon_induced(
    f: &CellMap,
    system: &CoefficientSystem,
    n: usize,
) -> Result<GroupHom, EqError> {
    let cy = bredon_cochain_complex(&f.target, system)?;
    let cx = bredon_cochain_complex(&f.source, system)?;
    let degrees = cy.len().max(cx.len());
    let mut maps = Vec::with_capacity(degrees);
    for k in 0..degrees {
        maps.push(restriction_matrix(f, system, k)?);
    }
    let cochain_map = CochainMap::new(cy, cx, maps)?;
    Ok(induced_hom(&cochain_map, n)?)
}
