//! The orbit category of the two-element group and coefficient systems on it.
//!
//! The group Z2 has exactly two transitive sets: the free orbit `Z0` (two
//! points swapped by the involution) and the singleton `Z1`. The orbit
//! category has four morphisms in total, and crucially no morphism from the
//! singleton to the free orbit. A coefficient system is a contravariant
//! functor from this category into finitely generated free abelian groups:
//! concretely a pair of ranks, an involutive action matrix on the value at
//! `Z0`, and a structure map restricting the value at `Z1` into the
//! invariants at `Z0`. Equivariant cochain complexes are assembled from this
//! data in [`crate::bredon`].

use crate::abelian::IntegerMatrix;
use crate::error::EqError;
use std::fmt;

/// Objects of the orbit category: the free orbit and the fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitZ2 {
    /// Two points swapped by the involution.
    Z0,
    /// A single fixed point.
    Z1,
}

/// The four morphisms of the orbit category.
///
/// `PhiMinus` is the nontrivial deck transformation of the free orbit and
/// `Psi` is the fold map onto the fixed point. There is no morphism from
/// `Z1` to `Z0`: an equivariant map out of a fixed point must land on a
/// fixed point, and `Z0` has none.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitMorphism {
    Id0,
    PhiMinus,
    Psi,
    Id1,
}

impl OrbitMorphism {
    pub fn source(self) -> OrbitZ2 {
        match self {
            OrbitMorphism::Id0 | OrbitMorphism::PhiMinus | OrbitMorphism::Psi => OrbitZ2::Z0,
            OrbitMorphism::Id1 => OrbitZ2::Z1,
        }
    }

    pub fn target(self) -> OrbitZ2 {
        match self {
            OrbitMorphism::Id0 | OrbitMorphism::PhiMinus => OrbitZ2::Z0,
            OrbitMorphism::Psi | OrbitMorphism::Id1 => OrbitZ2::Z1,
        }
    }

    /// Composition `self ∘ other`, defined when `other.target() == self.source()`.
    pub fn compose(self, other: OrbitMorphism) -> Option<OrbitMorphism> {
        if other.target() != self.source() {
            return None;
        }
        Some(match (self, other) {
            (OrbitMorphism::Id0, f) | (f, OrbitMorphism::Id0) => f,
            (f, OrbitMorphism::Id1) | (OrbitMorphism::Id1, f) => f,
            (OrbitMorphism::PhiMinus, OrbitMorphism::PhiMinus) => OrbitMorphism::Id0,
            (OrbitMorphism::Psi, OrbitMorphism::PhiMinus) => OrbitMorphism::Psi,
            // Remaining pairs are ruled out by the source/target check.
            _ => unreachable!(),
        })
    }
}

/// All morphisms from `from` to `to`, in a fixed order.
pub fn morphisms(from: OrbitZ2, to: OrbitZ2) -> &'static [OrbitMorphism] {
    match (from, to) {
        (OrbitZ2::Z0, OrbitZ2::Z0) => &[OrbitMorphism::Id0, OrbitMorphism::PhiMinus],
        (OrbitZ2::Z0, OrbitZ2::Z1) => &[OrbitMorphism::Psi],
        (OrbitZ2::Z1, OrbitZ2::Z0) => &[],
        (OrbitZ2::Z1, OrbitZ2::Z1) => &[OrbitMorphism::Id1],
    }
}

/// A coefficient system for Bredon cohomology of involutive complexes.
///
/// The value at the free orbit is `Z^{m0_rank}` carrying the involution
/// `action`, the value at the fixed point is `Z^{m1_rank}`, and
/// `structure_map` is the restriction along the fold map. The functor laws
/// reduce to two matrix identities: `action` squares to the identity, and
/// `action * structure_map == structure_map` (the structure map lands in the
/// invariants).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientSystem {
    name: String,
    m0_rank: usize,
    m1_rank: usize,
    action: IntegerMatrix,
    structure_map: IntegerMatrix,
}

/// The named systems used throughout the computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StdSystem {
    /// Zero at the fixed point, `Z` with trivial involution on the free orbit.
    ZeroToZ,
    /// Zero at the fixed point, `Z` with sign involution on the free orbit.
    /// Bredon cohomology with this system computes the twist-1 theory
    /// relative to the fixed set.
    ZeroToZtilde,
    /// Constant `Z`: identity everywhere. Bredon cohomology degenerates to
    /// the ordinary cohomology of the quotient.
    ConstantZ,
    /// Constant of the given rank, identity everywhere.
    ConstantA(usize),
}

pub fn std_system(which: StdSystem) -> CoefficientSystem {
    match which {
        StdSystem::ZeroToZ => CoefficientSystem {
            name: "0~Z".to_string(),
            m0_rank: 1,
            m1_rank: 0,
            action: IntegerMatrix::identity(1),
            structure_map: IntegerMatrix::zeros(1, 0),
        },
        StdSystem::ZeroToZtilde => {
            let mut action = IntegerMatrix::zeros(1, 1);
            action.set(0, 0, (-1).into());
            CoefficientSystem {
                name: "0~Ztilde".to_string(),
                m0_rank: 1,
                m1_rank: 0,
                action,
                structure_map: IntegerMatrix::zeros(1, 0),
            }
        }
        StdSystem::ConstantZ => CoefficientSystem {
            name: "constZ".to_string(),
            m0_rank: 1,
            m1_rank: 1,
            action: IntegerMatrix::identity(1),
            structure_map: IntegerMatrix::identity(1),
        },
        StdSystem::ConstantA(rank) => CoefficientSystem {
            name: format!("constA-{rank}"),
            m0_rank: rank,
            m1_rank: rank,
            action: IntegerMatrix::identity(rank),
            structure_map: IntegerMatrix::identity(rank),
        },
    }
}

/// `Z^rank` at the fixed point, zero on the free orbit. Bredon cohomology
/// with this system sees only the fixed subcomplex.
pub fn fixed_set_system(rank: usize) -> CoefficientSystem {
    CoefficientSystem {
        name: format!("fixedZ-{rank}"),
        m0_rank: 0,
        m1_rank: rank,
        action: IntegerMatrix::identity(0),
        structure_map: IntegerMatrix::zeros(0, rank),
    }
}

/// Parse a coefficient system name as accepted on the command line:
/// `0~Z`, `0~Ztilde`, `constZ`, `constA-<rank>`, `fixedZ-<rank>`.
pub fn parse_system(s: &str) -> Result<CoefficientSystem, EqError> {
    match s {
        "0~Z" => return Ok(std_system(StdSystem::ZeroToZ)),
        "0~Ztilde" => return Ok(std_system(StdSystem::ZeroToZtilde)),
        "constZ" => return Ok(std_system(StdSystem::ConstantZ)),
        _ => {}
    }
    for (prefix, make) in [
        ("constA-", true),
        ("fixedZ-", false),
    ] {
        if let Some(rest) = s.strip_prefix(prefix) {
            if let Ok(rank) = rest.parse::<usize>() {
                if rank <= 64 {
                    return Ok(if make {
                        std_system(StdSystem::ConstantA(rank))
                    } else {
                        fixed_set_system(rank)
                    });
                }
            }
            return Err(EqError::InvalidSystem {
                violations: vec![format!("bad rank in system name '{s}' (expected {prefix}<rank> with rank <= 64)")],
            });
        }
    }
    Err(EqError::InvalidSystem {
        violations: vec![format!(
            "unknown system '{s}' (try 0~Z, 0~Ztilde, constZ, constA-<rank>, fixedZ-<rank>)"
        )],
    })
}

impl CoefficientSystem {
    pub fn new(
        name: impl Into<String>,
        m0_rank: usize,
        m1_rank: usize,
        action: IntegerMatrix,
        structure_map: IntegerMatrix,
    ) -> Result<Self, EqError> {
        let system = CoefficientSystem {
            name: name.into(),
            m0_rank,
            m1_rank,
            action,
            structure_map,
        };
        let violations = system.check_system();
        if violations.is_empty() {
            Ok(system)
        } else {
            Err(EqError::InvalidSystem { violations })
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Rank of the value at the free orbit.
    pub fn m0_rank(&self) -> usize {
        self.m0_rank
    }

    /// Rank of the value at the fixed point.
    pub fn m1_rank(&self) -> usize {
        self.m1_rank
    }

    /// The involution on the value at the free orbit.
    pub fn action(&self) -> &IntegerMatrix {
        &self.action
    }

    /// Restriction along the fold map, from the fixed-point value into the
    /// free-orbit value.
    pub fn structure_map(&self) -> &IntegerMatrix {
        &self.structure_map
    }

    pub fn rank_at(&self, orbit: OrbitZ2) -> usize {
        match orbit {
            OrbitZ2::Z0 => self.m0_rank,
            OrbitZ2::Z1 => self.m1_rank,
        }
    }

    /// The matrix a morphism acts by under the (contravariant) functor:
    /// a morphism `f: S -> T` restricts values at `T` to values at `S`.
    pub fn matrix_of(&self, f: OrbitMorphism) -> IntegerMatrix {
        match f {
            OrbitMorphism::Id0 => IntegerMatrix::identity(self.m0_rank),
            OrbitMorphism::Id1 => IntegerMatrix::identity(self.m1_rank),
            OrbitMorphism::PhiMinus => self.action.clone(),
            OrbitMorphism::Psi => self.structure_map.clone(),
        }
    }

    /// Functor-law violations, as human-readable strings. Empty means valid.
    pub fn check_system(&self) -> Vec<String> {
        let mut violations = Vec::new();
        if self.action.rows() != self.m0_rank || self.action.cols() != self.m0_rank {
            violations.push(format!(
                "action matrix is {}x{}, expected {}x{}",
                self.action.rows(),
                self.action.cols(),
                self.m0_rank,
                self.m0_rank
            ));
        }
        if self.structure_map.rows() != self.m0_rank || self.structure_map.cols() != self.m1_rank {
            violations.push(format!(
                "structure map is {}x{}, expected {}x{}",
                self.structure_map.rows(),
                self.structure_map.cols(),
                self.m0_rank,
                self.m1_rank
            ));
        }
        if !violations.is_empty() {
            return violations;
        }
        let square = self.action.mul(&self.action);
        if square != IntegerMatrix::identity(self.m0_rank) {
            violations.push("action does not square to the identity".to_string());
        }
        if self.action.mul(&self.structure_map) != self.structure_map {
            violations.push(
                "structure map does not land in the invariants of the action".to_string(),
            );
        }
        violations
    }

    /// True when both values vanish, so every cochain group is zero.
    pub fn is_zero(&self) -> bool {
        self.m0_rank == 0 && self.m1_rank == 0
    }
}

impl fmt::Display for CoefficientSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// Convenience: `Z^rank` with the involution given by a signed matrix.
/// Used by group cohomology and in tests; the fixed-point value is zero.
pub fn free_orbit_system(action: IntegerMatrix) -> Result<CoefficientSystem, EqError> {
    let rank = action.rows();
    CoefficientSystem::new(
        format!("free-{rank}"),
        rank,
        0,
        action,
        IntegerMatrix::zeros(rank, 0),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: [OrbitMorphism; 4] = [
        OrbitMorphism::Id0,
        OrbitMorphism::PhiMinus,
        OrbitMorphism::Psi,
        OrbitMorphism::Id1,
    ];

    #[test]
    fn composition_table_is_a_category() {
        // Identities behave.
        for f in ALL {
            let id_src = match f.source() {
                OrbitZ2::Z0 => OrbitMorphism::Id0,
                OrbitZ2::Z1 => OrbitMorphism::Id1,
            };
            let id_tgt = match f.target() {
                OrbitZ2::Z0 => OrbitMorphism::Id0,
                OrbitZ2::Z1 => OrbitMorphism::Id1,
            };
            assert_eq!(f.compose(id_src), Some(f));
            assert_eq!(id_tgt.compose(f), Some(f));
        }
        // Composition defined exactly when ends match, lands correctly.
        for g in ALL {
            for f in ALL {
                match g.compose(f) {
                    Some(h) => {
                        assert_eq!(f.target(), g.source());
                        assert_eq!(h.source(), f.source());
                        assert_eq!(h.target(), g.target());
                    }
                    None => assert_ne!(f.target(), g.source()),
                }
            }
        }
        // Associativity over every composable triple.
        for h in ALL {
            for g in ALL {
                for f in ALL {
                    if f.target() == g.source() && g.target() == h.source() {
                        let left = h.compose(g).unwrap().compose(f);
                        let right = h.compose(g.compose(f).unwrap());
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn no_morphism_out_of_the_fixed_point() {
        assert!(morphisms(OrbitZ2::Z1, OrbitZ2::Z0).is_empty());
        assert_eq!(morphisms(OrbitZ2::Z0, OrbitZ2::Z0).len(), 2);
        assert_eq!(morphisms(OrbitZ2::Z0, OrbitZ2::Z1).len(), 1);
        assert_eq!(morphisms(OrbitZ2::Z1, OrbitZ2::Z1).len(), 1);
    }

    #[test]
    fn deck_transformation_is_an_involution() {
        assert_eq!(
            OrbitMorphism::PhiMinus.compose(OrbitMorphism::PhiMinus),
            Some(OrbitMorphism::Id0)
        );
        // The fold map coequalizes the deck transformation.
        assert_eq!(
            OrbitMorphism::Psi.compose(OrbitMorphism::PhiMinus),
            Some(OrbitMorphism::Psi)
        );
    }

    #[test]
    fn standard_systems_are_valid() {
        for sys in [
            std_system(StdSystem::ZeroToZ),
            std_system(StdSystem::ZeroToZtilde),
            std_system(StdSystem::ConstantZ),
            std_system(StdSystem::ConstantA(3)),
            fixed_set_system(2),
        ] {
            assert!(sys.check_system().is_empty(), "{} invalid", sys.name());
        }
    }

    #[test]
    fn standard_system_shapes() {
        let zt = std_system(StdSystem::ZeroToZtilde);
        assert_eq!(zt.m0_rank(), 1);
        assert_eq!(zt.m1_rank(), 0);
        assert_eq!(*zt.action().get(0, 0), (-1).into());

        let cz = std_system(StdSystem::ConstantZ);
        assert_eq!((cz.m0_rank(), cz.m1_rank()), (1, 1));
        assert_eq!(cz.structure_map(), &IntegerMatrix::identity(1));

        let ca = std_system(StdSystem::ConstantA(3));
        assert_eq!((ca.m0_rank(), ca.m1_rank()), (3, 3));

        let fx = fixed_set_system(2);
        assert_eq!((fx.m0_rank(), fx.m1_rank()), (0, 2));
    }

    #[test]
    fn rejects_non_involutive_action() {
        let action = IntegerMatrix::from_rows(&[vec![2]]);
        let err = CoefficientSystem::new("bad", 1, 0, action, IntegerMatrix::zeros(1, 0))
            .unwrap_err();
        match err {
            EqError::InvalidSystem { violations } => {
                assert!(violations.iter().any(|v| v.contains("square")));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_structure_map_outside_invariants() {
        // Sign action on Z, structure map the identity: A*m = -m != m.
        let mut action = IntegerMatrix::zeros(1, 1);
        action.set(0, 0, (-1).into());
        let err =
            CoefficientSystem::new("bad", 1, 1, action, IntegerMatrix::identity(1)).unwrap_err();
        match err {
            EqError::InvalidSystem { violations } => {
                assert!(violations.iter().any(|v| v.contains("invariants")));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_shape_mismatch() {
        let err = CoefficientSystem::new(
            "bad",
            2,
            1,
            IntegerMatrix::identity(1),
            IntegerMatrix::zeros(2, 1),
        )
        .unwrap_err();
        match err {
            EqError::InvalidSystem { violations } => assert!(!violations.is_empty()),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_round_trip() {
        for name in ["0~Z", "0~Ztilde", "constZ", "constA-4", "fixedZ-2"] {
            let sys = parse_system(name).unwrap();
            assert_eq!(sys.name(), name);
        }
        assert!(parse_system("Ztilde").is_err());
        assert!(parse_system("constA-x").is_err());
        assert!(parse_system("constA-1000").is_err());
    }

    #[test]
    fn matrix_of_respects_composition() {
        // Contravariance: matrix_of(g∘f) = matrix_of(f)... no. For a
        // contravariant functor M, M(g∘f) = M(f) M(g) would hold if matrices
        // acted on the right; with column vectors and M(f): M(target f) ->
        // M(source f) the rule is M(g∘f) = M(f) * M(g) read as maps
        // M(target g) -> M(source f). Check it on every composable pair.
        let sys = std_system(StdSystem::ConstantA(2));
        for g in ALL {
            for f in ALL {
                if let Some(h) = g.compose(f) {
                    let lhs = sys.matrix_of(h);
                    let rhs = sys.matrix_of(f).mul(&sys.matrix_of(g));
                    assert_eq!(lhs, rhs);
                }
            }
        }
        // Same law for a system with a genuine sign.
        let zt = std_system(StdSystem::ZeroToZtilde);
        let phi = zt.matrix_of(OrbitMorphism::PhiMinus);
        assert_eq!(phi.mul(&phi), IntegerMatrix::identity(1));
    }

    #[test]
    fn is_zero_only_for_trivial_values() {
        assert!(CoefficientSystem::new(
            "0",
            0,
            0,
            IntegerMatrix::identity(0),
            IntegerMatrix::zeros(0, 0)
        )
        .unwrap()
        .is_zero());
        assert!(!std_system(StdSystem::ZeroToZ).is_zero());
        assert!(!fixed_set_system(1).is_zero());
    }
}
