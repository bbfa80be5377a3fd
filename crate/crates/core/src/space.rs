use crate::error::Error;
use crate::symbolic::Var;

/// Spacetime dimension and the pair of surface variables in use.
///
/// Admitted identifiers are `x0..xn`, the two surface variables and the
/// field variable `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableSpace {
    n: usize,
    surface: [Var; 2],
}

impl VariableSpace {
    pub const MAX_SPATIAL: usize = 9;

    pub fn new(n: usize, surface: [Var; 2]) -> Result<Self, Error> {
        if n == 0 || n > Self::MAX_SPATIAL {
            return Err(Error::InvalidInput(format!(
                "spatial dimension must be in 1..={}, got {n}",
                Self::MAX_SPATIAL
            )));
        }
        if surface[0] == surface[1] || surface.iter().any(|v| v.is_spacetime() || *v == Var::U) {
            return Err(Error::InvalidInput(format!(
                "surface variables must be two distinct names from y, z, v, w, vs; got {}, {}",
                surface[0], surface[1]
            )));
        }
        Ok(VariableSpace { n, surface })
    }

    /// Spacetime of dimension `n + 1` with surface variables `(y, z)`.
    pub fn with_dimension(n: usize) -> Result<Self, Error> {
        Self::new(n, [Var::Y, Var::Z])
    }

    pub fn with_surface(&self, surface: [Var; 2]) -> Result<Self, Error> {
        Self::new(self.n, surface)
    }

    /// Number of spatial variables.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of spacetime variables, `n + 1`.
    pub fn dim(&self) -> usize {
        self.n + 1
    }

    pub fn surface(&self) -> [Var; 2] {
        self.surface
    }

    pub fn spacetime(&self) -> Vec<Var> {
        (0..=self.n as u8).map(Var::X).collect()
    }

    pub fn contains(&self, v: Var) -> bool {
        match v {
            Var::X(k) => (k as usize) <= self.n,
            Var::U => true,
            other => self.surface.contains(&other),
        }
    }
}

impl Default for VariableSpace {
    fn default() -> Self {
        VariableSpace { n: 3, surface: [Var::Y, Var::Z] }
    }
}
