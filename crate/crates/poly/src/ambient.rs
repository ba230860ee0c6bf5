use lie_core::{LieAlgebra, SplitData};
use std::sync::Arc;

/// Coordinate ring data: the algebra (names, brackets) and the size `t` of
/// `h`. Coordinates `0..t` are h-coordinates, `t..n` are q-coordinates.
#[derive(Debug, PartialEq, Eq)]
pub struct Ambient {
    pub algebra: Arc<LieAlgebra>,
    pub t: usize,
}

impl Ambient {
    pub fn new(algebra: Arc<LieAlgebra>, t: usize) -> Arc<Self> {
        assert!(t <= algebra.dim());
        Arc::new(Self { algebra, t })
    }

    pub fn from_split(s: &SplitData) -> Arc<Self> {
        Self::new(s.algebra.clone(), s.t)
    }

    /// Ambient with no brackets and no `h`, for bookkeeping variables.
    pub fn free(names: &[&str]) -> Arc<Self> {
        Self::new(
            Arc::new(LieAlgebra::abelian(names.iter().map(|s| s.to_string()).collect())),
            0,
        )
    }

    pub fn n(&self) -> usize {
        self.algebra.dim()
    }

    pub fn names(&self) -> &[String] {
        self.algebra.labels()
    }

    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}
