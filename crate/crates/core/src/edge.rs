//! Region edge sequences: the triplets strung along the left and right
//! edges below a region head, for any integer index.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lucas::LucasParams;
use crate::markov_tree::{sibling_number, OrderedTriplet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeSide {
    Left,
    Right,
}

impl EdgeSide {
    pub fn opposite(self) -> Self {
        match self {
            EdgeSide::Left => EdgeSide::Right,
            EdgeSide::Right => EdgeSide::Left,
        }
    }

    pub fn letter(self) -> char {
        match self {
            EdgeSide::Left => 'L',
            EdgeSide::Right => 'R',
        }
    }
}

impl fmt::Display for EdgeSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeSide::Left => "left",
            EdgeSide::Right => "right",
        })
    }
}

impl FromStr for EdgeSide {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l" | "left" => Ok(EdgeSide::Left),
            "r" | "right" => Ok(EdgeSide::Right),
            _ => Err(Error::InvalidArgument(format!("unknown side {s:?}"))),
        }
    }
}

/// A triplet heading a region: either a non-singular triplet whose middle
/// member is its largest, or one of the two singular triplets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegionHead(OrderedTriplet);

impl RegionHead {
    pub fn new(t: OrderedTriplet) -> Result<Self> {
        if t.is_singular() || t.is_region_head() {
            Ok(RegionHead(t))
        } else {
            Err(Error::InvalidTriplet(t.to_string()))
        }
    }

    pub fn triplet(&self) -> &OrderedTriplet {
        &self.0
    }

    pub fn region(&self) -> &BigInt {
        self.0.region()
    }

    pub fn is_singular(&self) -> bool {
        self.0.is_singular()
    }

    /// Sides along which edge triplets exist.
    pub fn sides(&self) -> &'static [EdgeSide] {
        if !self.is_singular() {
            &[EdgeSide::Left, EdgeSide::Right]
        } else if self.0.region() == &BigInt::from(1) {
            &[EdgeSide::Right]
        } else {
            &[EdgeSide::Left]
        }
    }

    pub fn check_side(&self, side: EdgeSide) -> Result<()> {
        if self.sides().contains(&side) {
            Ok(())
        } else {
            Err(Error::WrongSideForSingular {
                head: self.0.to_string(),
                allowed: if side == EdgeSide::Left {
                    "right"
                } else {
                    "left"
                },
            })
        }
    }

    pub(crate) fn params(&self) -> LucasParams {
        LucasParams::new(self.region().clone()).expect("region numbers are positive")
    }

    /// `(a, b)` with `H(n) = seq_u(a, R, b, n + 1)`.
    fn seeds(&self, side: EdgeSide) -> (&BigInt, &BigInt) {
        let t = &self.0;
        match side {
            EdgeSide::Left => (t.z(), t.x()),
            EdgeSide::Right => (t.x(), t.z()),
        }
    }
}

impl fmt::Display for RegionHead {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Region number `H(n)` on one edge. `n = 0` is `x` (left) or `z` (right),
/// `n = 1` the first child region along the edge; negative `n` wraps
/// around to the opposite edge.
pub fn edge_region_number(head: &RegionHead, side: EdgeSide, n: i64) -> Result<BigInt> {
    let (a, b) = head.seeds(side);
    head.params().seq_u(a, b, n + 1)
}

/// The `n`-th triplet (`n >= 1`) along an edge.
pub fn edge_triplet(head: &RegionHead, side: EdgeSide, n: i64) -> Result<OrderedTriplet> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!(
            "edge index {n} must be >= 1"
        )));
    }
    head.check_side(side)?;
    let outer = edge_region_number(head, side, n - 1)?;
    let middle = edge_region_number(head, side, n)?;
    let r = head.region().clone();
    match side {
        EdgeSide::Left => OrderedTriplet::new(outer, middle, r),
        EdgeSide::Right => OrderedTriplet::new(r, middle, outer),
    }
}

/// Power-series coefficients of the three component generating functions.
/// Coefficient `k` of each list is the matching component of
/// `edge_triplet(head, side, k + 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfCoefficients {
    pub first: Vec<BigInt>,
    pub middle: Vec<BigInt>,
    pub last: Vec<BigInt>,
}

/// Coefficients of `(n0 + n1·t) / (1 - p·t + t^2)`.
pub(crate) fn rational_series(n0: &BigInt, n1: &BigInt, p: &BigInt, count: usize) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = Vec::with_capacity(count);
    for k in 0..count {
        let c = match k {
            0 => n0.clone(),
            1 => n1 + p * &out[0],
            _ => p * &out[k - 1] - &out[k - 2],
        };
        out.push(c);
    }
    out
}

pub fn gf_coefficients(head: &RegionHead, side: EdgeSide, count: usize) -> Result<GfCoefficients> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be >= 1".into()));
    }
    head.check_side(side)?;
    let p = head.params().p();
    let r = head.region().clone();
    // H(k) has numerator H(k0) + (H(k0+1) - p·H(k0))·t; the shift term is -H(k0-1).
    let stream = |k0: i64| -> Result<Vec<BigInt>> {
        let h0 = edge_region_number(head, side, k0)?;
        let hm = edge_region_number(head, side, k0 - 1)?;
        Ok(rational_series(&h0, &(-hm), &p, count))
    };
    let outer = stream(0)?;
    let middle = stream(1)?;
    let constant = vec![r; count];
    Ok(match side {
        EdgeSide::Left => GfCoefficients {
            first: outer,
            middle,
            last: constant,
        },
        EdgeSide::Right => GfCoefficients {
            first: constant,
            middle,
            last: outer,
        },
    })
}

/// `{x, 3xz - R, z}`: the other solution sharing the outer members.
pub fn secondary_solution(t: &OrderedTriplet) -> Result<OrderedTriplet> {
    if t.is_singular() {
        return Err(Error::SingularTriplet(t.to_string()));
    }
    let s = sibling_number(t)?;
    OrderedTriplet::new(t.x().clone(), s, t.z().clone())
}
