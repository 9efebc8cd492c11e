use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} does not satisfy x^2 + R^2 + z^2 = 3xRz with positive members")]
    InvalidTriplet(String),
    #[error("{0} is singular; use singular_successor instead of children")]
    SingularTriplet(String),
    #[error("{0} is not a singular triplet")]
    NotSingular(String),
    #[error("{{1, 5, 2}} is the root of the non-singular tree and has no parent")]
    RootTriplet,
    #[error("region {region} not found (searched through depth {depth})")]
    NotFound { region: String, depth: usize },
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("singular head {head} only has a {allowed} edge")]
    WrongSideForSingular { head: String, allowed: &'static str },
    #[error("half-unit Pell step is not integral at solution {0}")]
    NonIntegralStep(usize),
    #[error("only {found} Pell solution(s) with J <= {bound} for R = {region}; need {needed}")]
    BoundTooSmall {
        region: String,
        bound: u64,
        found: usize,
        needed: usize,
    },
    #[error("parity pattern of {0} is not one of the four Markov types")]
    InvalidParity(String),
    #[error("cycle pattern {0:?} belongs to no documented internal-structure family")]
    UnsupportedFamily(Vec<usize>),
    #[error("special square terms of {0} are not integral")]
    NonIntegralSolution(String),
    #[error("special square terms {sigma}^2 + {lambda}^2 do not sum to {target}")]
    DecompositionMismatch {
        sigma: String,
        lambda: String,
        target: String,
    },
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Limits applied to big-integer growth and tree traversal size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest decimal digit count any computed integer may reach.
    pub max_digits: u64,
    /// Largest number of tree nodes a traversal may visit.
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_digits: 1_000_000,
            max_nodes: 1 << 22,
        }
    }
}

const LOG10_2: f64 = std::f64::consts::LOG10_2;

impl Budget {
    pub fn check_value(&self, value: &BigInt) -> Result<()> {
        let digits = (value.bits() as f64 * LOG10_2).ceil() as u64;
        if digits > self.max_digits {
            return Err(Error::ResourceLimit(format!(
                "value with ~{digits} digits exceeds the {} digit cap",
                self.max_digits
            )));
        }
        Ok(())
    }

    /// Rejects work whose result is estimated at `digits` decimal digits.
    pub fn check_estimate(&self, digits: f64) -> Result<()> {
        if digits > self.max_digits as f64 {
            return Err(Error::ResourceLimit(format!(
                "result estimated at {digits:.0} digits exceeds the {} digit cap",
                self.max_digits
            )));
        }
        Ok(())
    }

    pub fn check_nodes(&self, nodes: u64) -> Result<()> {
        if nodes > self.max_nodes {
            return Err(Error::ResourceLimit(format!(
                "{nodes} tree nodes exceed the {} node budget",
                self.max_nodes
            )));
        }
        Ok(())
    }

    /// Nodes visited by a traversal through `depth` non-singular levels.
    pub fn check_depth(&self, depth: usize) -> Result<()> {
        if depth >= 63 {
            return Err(Error::ResourceLimit(format!("depth {depth} is too deep")));
        }
        self.check_nodes((1u64 << depth) - 1)
    }
}
