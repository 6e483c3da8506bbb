//! The long exact sequence of a pair in the homotopy-quotient theory, with
//! a machine check of exactness.
//!
//! Given a complex and an invariant subcomplex, the twisted cochains of the
//! product with one fixed ambient sphere fit in a degreewise short exact
//! sequence: cochains vanishing over the subcomplex, all cochains, cochains
//! of the subcomplex. The induced maps on cohomology and the snake
//! connecting map assemble into the long sequence. One sphere serves every
//! degree (dimension `max_degree + 3`), which keeps all reported groups
//! inside the stable range and makes the connecting map a plain matrix
//! computation: extend a cocycle of the subcomplex by zero, apply the total
//! differential, read the result in the relative coordinates.
//!
//! Exactness of the result is a theorem; checking it at every node is a
//! test of this implementation, not of the mathematics. The check compares
//! the image lattice of each incoming map with the kernel lattice of the
//! outgoing one inside the middle group, torsion relations included.

use crate::abelian::{
    cohomology_of_complex, image_lattice, induced_hom, kernel, kernel_lattice, same_lattice,
    CochainMap, FgAbGroup, GroupHom,
};
use crate::borel::relative_setup;
use crate::catalog;
use crate::error::EqError;
use crate::zcw::Z2CwComplex;
use num_bigint::BigInt;

/// One group in the sequence, with a display label like `H^2(X|Y)`.
#[derive(Debug, Clone)]
pub struct LesEntry {
    pub label: String,
    pub group: FgAbGroup,
}

/// The long exact sequence of a pair, degrees 0 through `max_degree`, ending
/// with the degree `max_degree + 1` relative group so that every listed map
/// has both neighbours checkable. `maps[i]` goes from `entries[i]` to
/// `entries[i + 1]`.
#[derive(Debug, Clone)]
pub struct LongExactSequence {
    pub entries: Vec<LesEntry>,
    pub maps: Vec<GroupHom>,
}

impl LongExactSequence {
    /// Position of the relative-group entry in degree k.
    pub fn rel_index(k: usize) -> usize {
        3 * k
    }

    /// Position of the total-space entry in degree k.
    pub fn total_index(k: usize) -> usize {
        3 * k + 1
    }

    /// Position of the subcomplex entry in degree k.
    pub fn sub_index(k: usize) -> usize {
        3 * k + 2
    }
}

/// Report from [`check_exactness`]: empty `failures` means every node
/// passed.
#[derive(Debug, Clone)]
pub struct ExactnessReport {
    pub failures: Vec<String>,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn les_of_pair(
    x: &Z2CwComplex,
    y: &Z2CwComplex,
    twist: u8,
    max_degree: usize,
) -> Result<LongExactSequence, EqError> {
    let violations = x.validate();
    if !violations.is_empty() {
        return Err(crate::zcw::ZcwError::InvalidComplex { violations }.into());
    }
    x.mask_of_subcomplex(y)?;

    let sphere_dim = max_degree + 3;
    let e = catalog::sphere_antipodal(sphere_dim);
    let p = x.product(&e)?;
    let yp = y.product(&e)?;
    let over = p.mask_of_subcomplex(&yp)?;
    let setup = relative_setup(&p, &over, twist)?;

    let xn = x.name();
    let yn = y.name();

    let mut entries: Vec<LesEntry> = Vec::new();
    let mut maps: Vec<GroupHom> = Vec::new();

    let rel_h = |k: usize| -> Result<FgAbGroup, EqError> {
        Ok(cohomology_of_complex(setup.rel.complex(), k)?)
    };
    let total_h = |k: usize| -> Result<FgAbGroup, EqError> {
        Ok(cohomology_of_complex(setup.total.complex(), k)?)
    };
    let sub_h = |k: usize| -> Result<FgAbGroup, EqError> {
        Ok(cohomology_of_complex(setup.sub.complex(), k)?)
    };

    // Chain maps once, induced homs per degree.
    let incl_map = CochainMap::new(
        setup.rel.complex().clone(),
        setup.total.complex().clone(),
        setup.inclusion.clone(),
    )?;
    let restr_map = CochainMap::new(
        setup.total.complex().clone(),
        setup.sub.complex().clone(),
        setup.restriction.clone(),
    )?;

    for k in 0..=max_degree {
        entries.push(LesEntry {
            label: format!("H^{k}({xn}|{yn})"),
            group: rel_h(k)?,
        });
        entries.push(LesEntry {
            label: format!("H^{k}({xn})"),
            group: total_h(k)?,
        });
        entries.push(LesEntry {
            label: format!("H^{k}({yn})"),
            group: sub_h(k)?,
        });
        maps.push(induced_hom(&incl_map, k)?);
        maps.push(induced_hom(&restr_map, k)?);
        maps.push(connecting_map(&setup, k)?);
    }
    entries.push(LesEntry {
        label: format!("H^{}({xn}|{yn})", max_degree + 1),
        group: rel_h(max_degree + 1)?,
    });

    Ok(LongExactSequence { entries, maps })
}

/// The snake map in degree k: from the degree-k cohomology of the
/// subcomplex cochains to the degree-(k+1) cohomology of the relative
/// cochains. Each generator is extended by zero (the restriction matrix is
/// a coordinate selection, so its transpose is the extension), pushed
/// through the total differential, and read off in relative coordinates.
fn connecting_map(
    setup: &crate::borel::RelativeSetup,
    k: usize,
) -> Result<GroupHom, EqError> {
    let source = cohomology_of_complex(setup.sub.complex(), k)?;
    let target = cohomology_of_complex(setup.rel.complex(), k + 1)?;
    let mut matrix = crate::abelian::IntegerMatrix::zeros(
        target.generator_count(),
        source.generator_count(),
    );
    if source.generator_count() > 0 && target.generator_count() > 0 {
        let sp = source
            .presentation()
            .ok_or_else(|| EqError::Message("source group lacks a presentation".into()))?;
        let tp = target
            .presentation()
            .ok_or_else(|| EqError::Message("target group lacks a presentation".into()))?;
        let gens = sp.generator_vectors();
        let extend = setup.restriction[k].transpose();
        let select = setup.inclusion[k + 1].transpose();
        let d = setup.total.differential(k);
        for j in 0..gens.cols() {
            let v: Vec<BigInt> = gens.column(j);
            let ext = extend.mul_vec(&v);
            let pushed = d.mul_vec(&ext);
            let in_rel = select.mul_vec(&pushed);
            let coords = tp.coordinates_of(&in_rel).ok_or_else(|| {
                EqError::Message(
                    "connecting map image is not a relative cocycle; \
                     the short exact sequence is inconsistent"
                        .into(),
                )
            })?;
            for (i, c) in coords.iter().enumerate() {
                matrix.set(i, j, c.clone());
            }
        }
    }
    Ok(GroupHom {
        source,
        target,
        matrix,
    })
}

/// Verify exactness at every interior node, plus injectivity at the first
/// entry (whose incoming map from the vanishing negative-degree group is
/// zero). Returns one failure line per broken node.
pub fn check_exactness(seq: &LongExactSequence) -> ExactnessReport {
    let mut failures = Vec::new();
    if seq.entries.len() != seq.maps.len() + 1 {
        failures.push(format!(
            "malformed sequence: {} entries, {} maps",
            seq.entries.len(),
            seq.maps.len()
        ));
        return ExactnessReport { failures };
    }
    for (i, map) in seq.maps.iter().enumerate() {
        if map.source != seq.entries[i].group || map.target != seq.entries[i + 1].group {
            failures.push(format!(
                "map {i} endpoints do not match entries '{}' -> '{}'",
                seq.entries[i].label,
                seq.entries[i + 1].label
            ));
        }
    }
    if !failures.is_empty() {
        return ExactnessReport { failures };
    }
    if let Some(first) = seq.maps.first() {
        if !kernel(first).is_trivial() {
            failures.push(format!(
                "not injective at {}: kernel of the first map is nonzero",
                seq.entries[0].label
            ));
        }
    }
    for i in 1..seq.maps.len() {
        let incoming = &seq.maps[i - 1];
        let outgoing = &seq.maps[i];
        let image = image_lattice(incoming);
        let ker = kernel_lattice(outgoing);
        if !same_lattice(&image, &ker) {
            failures.push(format!(
                "not exact at {}: image of the incoming map differs from the \
                 kernel of the outgoing map",
                seq.entries[i].label
            ));
        }
    }
    ExactnessReport { failures }
}
