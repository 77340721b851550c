//! Root systems, finite reflection groups, simple systems, fundamental cones
//! and chamber lookup.

mod chamber;
mod group;
mod roots;
mod simple;

pub use chamber::{chamber_of, ChamberLookup};
pub use group::{is_reflection, MatrixGroup, ReflectionGroup, DEFAULT_MAX_ORDER};
pub use roots::{build_root_system, reflection_matrix, Family, RootSystem};
pub use simple::{
    default_order_vector, dual_basis, fundamental_cone, positive_roots, simple_system, Cone, DualBasis, SimpleSystem,
};

/// Everything the constructions need from one family: roots, `Π`, `Π*`, `W`.
#[derive(Clone, Debug)]
pub struct CoxeterData {
    pub roots: RootSystem,
    pub simple: SimpleSystem,
    pub dual: DualBasis,
    pub group: MatrixGroup,
}

impl CoxeterData {
    /// Builds the family with the default order vector. With `unimodular`,
    /// the simple roots are rescaled so that `|det Π| = |det Π*| = 1`.
    pub fn new(family: Family, unimodular: bool) -> crate::Result<Self> {
        let roots = build_root_system(family)?;
        let mut simple = simple_system(&roots, None)?;
        if unimodular {
            simple = simple.unimodular();
        }
        let dual = dual_basis(&simple)?;
        let group = MatrixGroup::weyl(&simple)?;
        Ok(Self {
            roots,
            simple,
            dual,
            group,
        })
    }

    pub fn cone(&self) -> Cone {
        fundamental_cone(&self.simple)
    }
}
