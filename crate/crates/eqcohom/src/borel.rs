//! Cohomology of the homotopy quotient, by finite approximation.
//!
//! For a free involutive complex the equivariant cochains with values in the
//! integers (twist 0) or the sign-twisted integers (twist 1) form an
//! ordinary cochain complex with one coordinate per free orbit; the
//! differential expands the boundary through the relation that the partner
//! cell carries the orbit sign times `(-1)^twist`. For a complex with fixed
//! points the action on the product with a high-dimensional antipodal
//! sphere is free, and degree-n groups are read off the product with the
//! sphere of dimension n + 2: the approximation is exact in degrees up to
//! the sphere dimension minus one, so there is a full degree of slack,
//! and [`stability_check`] confirms invariance under enlarging the sphere.
//!
//! Relative groups delete the orbit coordinates lying over a subcomplex.
//! [`h_theory`] is the relative theory of a pair rel the union of the
//! second space with the fixed set, the form in which the classification
//! results are stated.

use crate::abelian::{
    cohomology_of_complex, induced_hom, CochainComplex, CochainMap, FgAbGroup, GroupHom,
    IntegerMatrix,
};
use crate::catalog;
use crate::error::EqError;
use crate::zcw::{FreeOrbit, Z2CwComplex, ZcwError};
use num_bigint::BigInt;
use num_traits::Zero;

/// Skeleton of the universal free involutive space: the antipodal sphere of
/// the given dimension, two cells per dimension.
pub fn ez2_skeleton(n: usize) -> Z2CwComplex {
    catalog::sphere_antipodal(n)
}

/// Cochains on the free orbits of a free complex, with the twisted
/// integral coefficients. Wraps the underlying complex together with the
/// twist parity it was built at.
#[derive(Debug, Clone)]
pub struct TwistedCochainComplex {
    twist: u8,
    complex: CochainComplex,
}

impl TwistedCochainComplex {
    pub fn twist(&self) -> u8 {
        self.twist
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn into_complex(self) -> CochainComplex {
        self.complex
    }

    pub fn rank(&self, n: usize) -> usize {
        self.complex.rank(n)
    }

    pub fn differential(&self, n: usize) -> IntegerMatrix {
        self.complex.differential(n)
    }

    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    pub fn cohomology(&self, n: usize) -> Result<FgAbGroup, EqError> {
        Ok(cohomology_of_complex(&self.complex, n)?)
    }
}

fn check_twist(twist: u8) -> Result<(), EqError> {
    if twist > 1 {
        return Err(EqError::Message(format!(
            "twist must be 0 or 1, got {twist}"
        )));
    }
    Ok(())
}

fn require_valid(x: &Z2CwComplex) -> Result<(), EqError> {
    let violations = x.validate();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(ZcwError::InvalidComplex { violations }.into())
    }
}

fn require_free(x: &Z2CwComplex) -> Result<(), EqError> {
    if x.is_free() {
        Ok(())
    } else {
        Err(ZcwError::InvalidComplex {
            violations: vec![format!(
                "'{}' has fixed cells; twisted orbit cochains need a free action",
                x.name()
            )],
        }
        .into())
    }
}

/// The full twisted differential in degree n: one row per (n+1)-orbit, one
/// column per n-orbit. Evaluating a cochain on a partner cell picks up the
/// orbit sign times `(-1)^twist`; the entry sums the boundary coefficients
/// of the target representative over both cells of the source orbit.
fn full_twisted_differential(
    x: &Z2CwComplex,
    source: &[FreeOrbit],
    target: &[FreeOrbit],
    n: usize,
    twist: u8,
) -> IntegerMatrix {
    let mut d = IntegerMatrix::zeros(target.len(), source.len());
    if target.is_empty() || source.is_empty() {
        return d;
    }
    let b = x.boundary_matrix(n + 1);
    let tsign: i64 = if twist == 0 { 1 } else { -1 };
    for (row, t) in target.iter().enumerate() {
        for (col, o) in source.iter().enumerate() {
            let partner_factor: BigInt = (o.sign * tsign).into();
            let entry = b.get(o.rep, t.rep) + b.get(o.partner, t.rep) * partner_factor;
            if !entry.is_zero() {
                d.set(row, col, entry);
            }
        }
    }
    d
}

fn orbit_keep_list(orbits: &[FreeOrbit], keep: Option<&Vec<bool>>) -> Vec<usize> {
    match keep {
        None => (0..orbits.len()).collect(),
        Some(mask) => orbits
            .iter()
            .enumerate()
            .filter(|(_, o)| mask[o.rep])
            .map(|(i, _)| i)
            .collect(),
    }
}

fn build_twisted(
    x: &Z2CwComplex,
    twist: u8,
    keep: Option<&[Vec<bool>]>,
    tag: &str,
) -> Result<TwistedCochainComplex, EqError> {
    check_twist(twist)?;
    require_valid(x)?;
    require_free(x)?;
    let glen = x.graded_len();
    let orbits: Vec<Vec<FreeOrbit>> = (0..glen).map(|n| x.free_orbits(n)).collect();
    let kept: Vec<Vec<usize>> = (0..glen)
        .map(|n| orbit_keep_list(&orbits[n], keep.map(|m| &m[n])))
        .collect();
    let mut ranks: Vec<usize> = kept.iter().map(Vec::len).collect();
    ranks.push(0);
    let mut diffs = Vec::with_capacity(ranks.len());
    for n in 0..glen {
        if n + 1 == glen {
            diffs.push(IntegerMatrix::zeros(0, ranks[n]));
        } else {
            let full = full_twisted_differential(x, &orbits[n], &orbits[n + 1], n, twist);
            diffs.push(full.select_rows(&kept[n + 1]).select_columns(&kept[n]));
        }
    }
    diffs.push(IntegerMatrix::zeros(0, 0));
    let complex = CochainComplex::new(
        ranks,
        diffs,
        format!("twisted cochains({}, twist {twist}{tag})", x.name()),
    )?;
    complex.verify_dd_zero()?;
    Ok(TwistedCochainComplex { twist, complex })
}

/// The twisted orbit-cochain complex of a free complex.
pub fn twisted_complex(x: &Z2CwComplex, twist: u8) -> Result<TwistedCochainComplex, EqError> {
    build_twisted(x, twist, None, "")
}

/// The three twisted complexes of a pair: cochains vanishing over the
/// masked subcomplex, all cochains, and cochains of the subcomplex, with
/// the chain-level inclusion and restriction connecting them. The three fit
/// in a short exact sequence degreewise by construction.
pub(crate) struct RelativeSetup {
    pub rel: TwistedCochainComplex,
    pub total: TwistedCochainComplex,
    pub sub: TwistedCochainComplex,
    /// Per degree: matrix of the inclusion of relative cochains, one unit
    /// entry per relative coordinate.
    pub inclusion: Vec<IntegerMatrix>,
    /// Per degree: matrix of restriction onto the subcomplex coordinates.
    pub restriction: Vec<IntegerMatrix>,
}

pub(crate) fn relative_setup(
    p: &Z2CwComplex,
    over: &[Vec<bool>],
    twist: u8,
) -> Result<RelativeSetup, EqError> {
    let complement: Vec<Vec<bool>> = over
        .iter()
        .map(|row| row.iter().map(|b| !b).collect())
        .collect();
    let rel = build_twisted(p, twist, Some(&complement), ", rel")?;
    let total = twisted_complex(p, twist)?;
    let sub = build_twisted(p, twist, Some(over), ", sub")?;

    let glen = p.graded_len();
    let mut inclusion = Vec::with_capacity(glen + 1);
    let mut restriction = Vec::with_capacity(glen + 1);
    for n in 0..glen {
        let orbits = p.free_orbits(n);
        let rel_slots = orbit_keep_list(&orbits, Some(&complement[n]));
        let sub_slots = orbit_keep_list(&orbits, Some(&over[n]));
        let mut inc = IntegerMatrix::zeros(orbits.len(), rel_slots.len());
        for (j, &slot) in rel_slots.iter().enumerate() {
            inc.set(slot, j, 1.into());
        }
        let mut res = IntegerMatrix::zeros(sub_slots.len(), orbits.len());
        for (i, &slot) in sub_slots.iter().enumerate() {
            res.set(i, slot, 1.into());
        }
        inclusion.push(inc);
        restriction.push(res);
    }
    inclusion.push(IntegerMatrix::zeros(0, 0));
    restriction.push(IntegerMatrix::zeros(0, 0));
    Ok(RelativeSetup {
        rel,
        total,
        sub,
        inclusion,
        restriction,
    })
}

/// Degree-n cohomology of the homotopy quotient with the twisted integral
/// coefficients, optionally relative to a subcomplex. The ambient sphere
/// has dimension n + 2; see [`stability_check`].
pub fn borel_cohomology(
    x: &Z2CwComplex,
    twist: u8,
    n: usize,
    rel: Option<&Z2CwComplex>,
) -> Result<FgAbGroup, EqError> {
    borel_at(x, twist, n, rel, n + 2)
}

fn borel_at(
    x: &Z2CwComplex,
    twist: u8,
    n: usize,
    rel: Option<&Z2CwComplex>,
    sphere_dim: usize,
) -> Result<FgAbGroup, EqError> {
    check_twist(twist)?;
    require_valid(x)?;
    let rel = match rel {
        Some(y) if y.graded_len() > 0 => {
            // Locating the mask validates that y sits inside x.
            x.mask_of_subcomplex(y)?;
            Some(y)
        }
        _ => None,
    };
    let e = catalog::sphere_antipodal(sphere_dim);
    let p = x.product(&e)?;
    match rel {
        None => twisted_complex(&p, twist)?.cohomology(n),
        Some(y) => {
            let yp = y.product(&e)?;
            let over = p.mask_of_subcomplex(&yp)?;
            let complement: Vec<Vec<bool>> = over
                .iter()
                .map(|row| row.iter().map(|b| !b).collect())
                .collect();
            build_twisted(&p, twist, Some(&complement), ", rel")?.cohomology(n)
        }
    }
}

/// Direct computation for a free complex: no ambient sphere, the orbit
/// cochains of the complex itself. Agrees with [`borel_cohomology`] on free
/// complexes; kept separate so the agreement is a checkable fact rather
/// than a code path.
pub fn free_action_cohomology(
    x: &Z2CwComplex,
    twist: u8,
    n: usize,
    rel: Option<&Z2CwComplex>,
) -> Result<FgAbGroup, EqError> {
    check_twist(twist)?;
    require_valid(x)?;
    require_free(x)?;
    match rel {
        Some(y) if y.graded_len() > 0 => {
            let over = x.mask_of_subcomplex(y)?;
            let complement: Vec<Vec<bool>> = over
                .iter()
                .map(|row| row.iter().map(|b| !b).collect())
                .collect();
            build_twisted(x, twist, Some(&complement), ", rel")?.cohomology(n)
        }
        _ => twisted_complex(x, twist)?.cohomology(n),
    }
}

/// The pair theory in which the classification results are stated: the
/// homotopy-quotient cohomology of `x` relative to the union of `y` (when
/// given) with the fixed subcomplex of `x`.
pub fn h_theory(
    x: &Z2CwComplex,
    y: Option<&Z2CwComplex>,
    twist: u8,
    n: usize,
) -> Result<FgAbGroup, EqError> {
    check_twist(twist)?;
    require_valid(x)?;
    let glen = x.graded_len();
    let mut mask: Vec<Vec<bool>> = (0..glen)
        .map(|k| (0..x.cell_count(k)).map(|i| x.is_fixed(k, i)).collect())
        .collect();
    if let Some(y) = y {
        let ym = x.mask_of_subcomplex(y)?;
        for (k, row) in ym.iter().enumerate() {
            for (i, &b) in row.iter().enumerate() {
                mask[k][i] = mask[k][i] || b;
            }
        }
    }
    if mask.iter().all(|row| row.iter().all(|&b| !b)) {
        return borel_cohomology(x, twist, n, None);
    }
    let (union, _) = x.subcomplex_by_mask(&mask)?;
    borel_cohomology(x, twist, n, Some(&union))
}

/// Cohomology of the two-element group with coefficients `Z^rank` acted on
/// by an involutive integer matrix, from the 2-periodic complex whose
/// differentials alternate between `1 - A` (even degrees) and `1 + A` (odd
/// degrees).
pub fn group_cohomology_z2(action: &IntegerMatrix, n: usize) -> Result<FgAbGroup, EqError> {
    let rank = action.rows();
    if action.cols() != rank {
        return Err(EqError::NotInvolution(format!(
            "action matrix is {}x{}, not square",
            action.rows(),
            action.cols()
        )));
    }
    if action.mul(action) != IntegerMatrix::identity(rank) {
        return Err(EqError::NotInvolution(
            "action matrix does not square to the identity".to_string(),
        ));
    }
    let one_minus = {
        let mut m = IntegerMatrix::identity(rank);
        for r in 0..rank {
            for c in 0..rank {
                let v = m.get(r, c) - action.get(r, c);
                m.set(r, c, v);
            }
        }
        m
    };
    let one_plus = {
        let mut m = IntegerMatrix::identity(rank);
        for r in 0..rank {
            for c in 0..rank {
                let v = m.get(r, c) + action.get(r, c);
                m.set(r, c, v);
            }
        }
        m
    };
    let len = n + 3;
    let ranks = vec![rank; len];
    let mut diffs = Vec::with_capacity(len);
    for p in 0..len - 1 {
        diffs.push(if p % 2 == 0 {
            one_minus.clone()
        } else {
            one_plus.clone()
        });
    }
    diffs.push(IntegerMatrix::zeros(0, rank));
    let complex = CochainComplex::new(ranks, diffs, format!("group cochains(rank {rank})"))?;
    Ok(cohomology_of_complex(&complex, n)?)
}

/// The map forgetting equivariance: from the degree-n twisted equivariant
/// group of `x` to the ordinary degree-n cohomology of `x`, induced by
/// restricting an equivariant cochain to the fiber over a basepoint of the
/// ambient sphere.
pub fn forgetful_map(x: &Z2CwComplex, n: usize) -> Result<GroupHom, EqError> {
    require_valid(x)?;
    let e = catalog::sphere_antipodal(n + 2);
    let p = x.product(&e)?;
    let tw = twisted_complex(&p, 1)?;
    let ord = x.ordinary_cochain_complex();
    let degrees = tw.len().max(ord.len());
    let mut maps = Vec::with_capacity(degrees);
    for k in 0..degrees {
        let rows = ord.rank(k);
        let cols = tw.rank(k);
        let mut m = IntegerMatrix::zeros(rows, cols);
        if rows > 0 && cols > 0 {
            let orbits = p.free_orbits(k);
            let mut role: Vec<Option<(usize, i64)>> = vec![None; p.cell_count(k)];
            for (slot, o) in orbits.iter().enumerate() {
                role[o.rep] = Some((slot, 1));
                // Evaluating at the partner picks up the orbit sign and the
                // twist sign.
                role[o.partner] = Some((slot, -o.sign));
            }
            for i in 0..x.cell_count(k) {
                let plabel = format!("{}*e0+", x.label(k, i));
                let idx = p
                    .labels(k)
                    .iter()
                    .position(|l| l == &plabel)
                    .expect("basepoint fiber cell exists in the product");
                let (slot, t) = role[idx].expect("product of free sphere is free");
                m.set(i, slot, t.into());
            }
        }
        maps.push(m);
    }
    let map = CochainMap::new(tw.into_complex(), ord, maps)?;
    Ok(induced_hom(&map, n)?)
}

/// Result of recomputing a group with the next larger ambient sphere.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub at_standard: FgAbGroup,
    pub at_next: FgAbGroup,
}

impl StabilityReport {
    pub fn stable(&self) -> bool {
        self.at_standard == self.at_next
    }
}

/// Recompute a degree-n group with sphere dimensions n + 2 and n + 3 and
/// report both. Agreement is the practical certificate that the finite
/// approximation has converged at this degree.
pub fn stability_check(
    x: &Z2CwComplex,
    twist: u8,
    n: usize,
    rel: Option<&Z2CwComplex>,
) -> Result<StabilityReport, EqError> {
    let at_standard = borel_at(x, twist, n, rel, n + 2)?;
    let at_next = borel_at(x, twist, n, rel, n + 3)?;
    Ok(StabilityReport {
        at_standard,
        at_next,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bredon::bredon_cohomology;
    use crate::coeff::{std_system, StdSystem};

    fn z() -> FgAbGroup {
        FgAbGroup::free(1)
    }

    fn z2() -> FgAbGroup {
        FgAbGroup::new(0, vec![2])
    }

    #[test]
    fn group_cohomology_tables() {
        let trivial = IntegerMatrix::identity(1);
        let expected_trivial = [z(), FgAbGroup::trivial(), z2(), FgAbGroup::trivial(), z2()];
        for (p, want) in expected_trivial.iter().enumerate() {
            assert_eq!(&group_cohomology_z2(&trivial, p).unwrap(), want, "trivial p={p}");
        }
        let sign = IntegerMatrix::from_rows(&[vec![-1]]);
        let expected_sign = [FgAbGroup::trivial(), z2(), FgAbGroup::trivial(), z2(), FgAbGroup::trivial()];
        for (p, want) in expected_sign.iter().enumerate() {
            assert_eq!(&group_cohomology_z2(&sign, p).unwrap(), want, "sign p={p}");
        }
        // The regular representation is cohomologically trivial above
        // degree zero.
        let swap = IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(group_cohomology_z2(&swap, 0).unwrap(), z());
        for p in 1..5 {
            assert!(group_cohomology_z2(&swap, p).unwrap().is_trivial(), "swap p={p}");
        }
    }

    #[test]
    fn group_cohomology_rejects_non_involutions() {
        let two = IntegerMatrix::from_rows(&[vec![2]]);
        assert!(matches!(
            group_cohomology_z2(&two, 0),
            Err(EqError::NotInvolution(_))
        ));
        let rect = IntegerMatrix::zeros(1, 2);
        assert!(matches!(
            group_cohomology_z2(&rect, 0),
            Err(EqError::NotInvolution(_))
        ));
    }

    #[test]
    fn point_matches_group_cohomology_both_twists() {
        // Engine versus engine: the homotopy quotient of a point against the
        // 2-periodic group complex, through independent code paths.
        let pt = catalog::point();
        for twist in [0u8, 1u8] {
            let action = if twist == 0 {
                IntegerMatrix::identity(1)
            } else {
                IntegerMatrix::from_rows(&[vec![-1]])
            };
            for n in 0..4 {
                let via_product = borel_cohomology(&pt, twist, n, None).unwrap();
                let via_group = group_cohomology_z2(&action, n).unwrap();
                assert_eq!(via_product, via_group, "twist {twist} degree {n}");
            }
        }
    }

    #[test]
    fn free_pair_is_the_free_orbit() {
        let fp = catalog::free_pair();
        for twist in [0u8, 1u8] {
            assert_eq!(borel_cohomology(&fp, twist, 0, None).unwrap(), z());
            for n in 1..4 {
                assert!(
                    borel_cohomology(&fp, twist, n, None).unwrap().is_trivial(),
                    "twist {twist} degree {n}"
                );
            }
        }
    }

    #[test]
    fn antipodal_circle_values() {
        let c = catalog::sphere_antipodal(1);
        // Twist 0: the honest quotient circle.
        assert_eq!(borel_cohomology(&c, 0, 0, None).unwrap(), z());
        assert_eq!(borel_cohomology(&c, 0, 1, None).unwrap(), z());
        // Twist 1: monodromy minus one around the quotient circle.
        assert!(borel_cohomology(&c, 1, 0, None).unwrap().is_trivial());
        assert_eq!(borel_cohomology(&c, 1, 1, None).unwrap(), z2());
    }

    #[test]
    fn free_shortcut_agrees_with_ambient_computation() {
        for name in ["free-pair", "circle-antipodal", "sphere-antipodal-2"] {
            let x = catalog::build(name).unwrap();
            for twist in [0u8, 1u8] {
                for n in 0..=x.dim() + 1 {
                    let direct = free_action_cohomology(&x, twist, n, None).unwrap();
                    let ambient = borel_cohomology(&x, twist, n, None).unwrap();
                    assert_eq!(direct, ambient, "{name} twist {twist} degree {n}");
                }
            }
        }
    }

    #[test]
    fn free_shortcut_requires_free_action() {
        let s = catalog::tr_sphere(1);
        assert!(matches!(
            free_action_cohomology(&s, 1, 1, None),
            Err(EqError::Zcw(ZcwError::InvalidComplex { .. }))
        ));
    }

    #[test]
    fn twist_bounds_are_checked() {
        let pt = catalog::point();
        assert!(matches!(
            borel_cohomology(&pt, 2, 0, None),
            Err(EqError::Message(_))
        ));
    }

    #[test]
    fn relative_groups_match_orbit_cochain_computation() {
        // The cross-validation theorem in miniature: homotopy-quotient
        // cohomology rel the fixed set equals the orbit-cochain groups with
        // the corresponding sign system.
        let sys = [
            std_system(StdSystem::ZeroToZ),
            std_system(StdSystem::ZeroToZtilde),
        ];
        for name in ["tr-sphere-2", "circle-reflection", "lens-2"] {
            let x = catalog::build(name).unwrap();
            let (fix, _) = x.fixed_subcomplex().unwrap();
            for twist in [0u8, 1u8] {
                for n in 0..=x.dim() + 1 {
                    let borel = borel_cohomology(&x, twist, n, Some(&fix)).unwrap();
                    let orbit = bredon_cohomology(&x, &sys[twist as usize], n).unwrap();
                    assert_eq!(borel, orbit, "{name} twist {twist} degree {n}");
                }
            }
        }
    }

    #[test]
    fn pair_theory_orbit_evaluations() {
        // The building blocks of the theory: a fixed point contributes
        // nothing (it is swallowed by the relative construction), a free
        // orbit contributes the integers in degree zero only.
        let pt = catalog::point();
        let fp = catalog::free_pair();
        for twist in [0u8, 1u8] {
            for n in 0..4 {
                assert!(
                    h_theory(&pt, None, twist, n).unwrap().is_trivial(),
                    "point twist {twist} degree {n}"
                );
                let want = if n == 0 { z() } else { FgAbGroup::trivial() };
                assert_eq!(
                    h_theory(&fp, None, twist, n).unwrap(),
                    want,
                    "pair twist {twist} degree {n}"
                );
            }
        }
    }

    #[test]
    fn pair_theory_with_explicit_second_space() {
        // Rel a point of the free pair... not a subcomplex (not invariant),
        // so rel the whole fixed set of the reflection circle plus nothing
        // extra: h_theory with y = fixed set equals plain rel-fixed groups.
        let x = catalog::tr_sphere(2);
        let (fix, _) = x.fixed_subcomplex().unwrap();
        for n in 0..=3 {
            let with_y = h_theory(&x, Some(&fix), 1, n).unwrap();
            let without = h_theory(&x, None, 1, n).unwrap();
            assert_eq!(with_y, without, "degree {n}");
        }
    }

    #[test]
    fn stability_under_sphere_growth() {
        for name in ["point", "tr-sphere-2", "lens-2"] {
            let x = catalog::build(name).unwrap();
            for twist in [0u8, 1u8] {
                for n in 0..=x.dim() {
                    let report = stability_check(&x, twist, n, None).unwrap();
                    assert!(
                        report.stable(),
                        "{name} twist {twist} degree {n}: {} vs {}",
                        report.at_standard,
                        report.at_next
                    );
                }
            }
        }
    }

    #[test]
    fn forgetful_map_on_the_antipodal_circle_is_zero() {
        let c = catalog::sphere_antipodal(1);
        let hom = forgetful_map(&c, 1).unwrap();
        assert_eq!(hom.source, z2());
        assert_eq!(hom.target, z());
        assert!(hom.is_zero());
    }

    #[test]
    fn forgetful_map_on_the_free_pair_restricts_the_generator() {
        let fp = catalog::free_pair();
        let hom = forgetful_map(&fp, 0).unwrap();
        assert_eq!(hom.source, z());
        assert_eq!(hom.target, FgAbGroup::free(2));
        // The twisted generator evaluates to opposite units at the two
        // points; up to generator orientation both entries are units.
        let a = hom.matrix.get(0, 0).clone();
        let b = hom.matrix.get(1, 0).clone();
        assert_eq!(a.magnitude().to_string(), "1");
        assert_eq!(b.magnitude().to_string(), "1");
    }

    #[test]
    fn twisted_ranks_are_sphere_size_independent_in_range() {
        let x = catalog::tr_sphere(2);
        let p4 = x.product(&catalog::sphere_antipodal(4)).unwrap();
        let p5 = x.product(&catalog::sphere_antipodal(5)).unwrap();
        let t4 = twisted_complex(&p4, 1).unwrap();
        let t5 = twisted_complex(&p5, 1).unwrap();
        for k in 0..=3 {
            assert_eq!(t4.rank(k), t5.rank(k), "degree {k}");
        }
        assert_eq!(t4.twist(), 1);
    }

    #[test]
    fn relative_setup_is_degreewise_exact_by_construction() {
        let x = catalog::tr_sphere(2);
        let e = catalog::sphere_antipodal(3);
        let p = x.product(&e).unwrap();
        let (fix, _) = x.fixed_subcomplex().unwrap();
        let yp = fix.product(&e).unwrap();
        let over = p.mask_of_subcomplex(&yp).unwrap();
        let setup = relative_setup(&p, &over, 1).unwrap();
        for n in 0..setup.total.len() {
            assert_eq!(
                setup.rel.rank(n) + setup.sub.rank(n),
                setup.total.rank(n),
                "degree {n}"
            );
            // restriction ∘ inclusion = 0 and the composite ranks add up.
            let comp = setup.restriction[n].mul(&setup.inclusion[n]);
            assert!(comp.is_zero(), "degree {n}");
        }
    }
}
