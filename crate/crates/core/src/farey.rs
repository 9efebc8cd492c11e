//! Farey-tree indexing of Markov regions.
//!
//! The non-singular Markov tree and the Farey tree of mediants rooted at
//! `{0, 1/2, 1}` have the same shape, so every region number is labelled by
//! the middle fraction of the Farey triplet at the same position.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::edge::EdgeSide;
use crate::error::{Error, Result};
use crate::markov_tree::MarkovList;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FareyTriplet {
    pub a_b: BigRational,
    pub x_y: BigRational,
    pub c_d: BigRational,
}

fn mediant(p: &BigRational, q: &BigRational) -> BigRational {
    BigRational::new(p.numer() + q.numer(), p.denom() + q.denom())
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl FareyTriplet {
    pub fn new(a_b: BigRational, x_y: BigRational, c_d: BigRational) -> Result<Self> {
        let t = FareyTriplet { a_b, x_y, c_d };
        if t.is_valid() {
            Ok(t)
        } else {
            Err(Error::InvalidArgument(format!(
                "{t} is not a Farey triplet"
            )))
        }
    }

    /// `{0, 1/2, 1}`, labelling `{1, 5, 2}`.
    pub fn root() -> Self {
        FareyTriplet {
            a_b: BigRational::zero(),
            x_y: ratio(1, 2),
            c_d: BigRational::one(),
        }
    }

    /// Ordered, inside `[0, 1]`, middle is the mediant and outer members are
    /// unimodular.
    pub fn is_valid(&self) -> bool {
        let (a, c) = (&self.a_b, &self.c_d);
        let det = a.numer() * c.denom() - c.numer() * a.denom();
        !a.is_negative()
            && c <= &BigRational::one()
            && a < &self.x_y
            && self.x_y < *c
            && self.x_y == mediant(a, c)
            && det.abs() == BigInt::one()
    }
}

impl fmt::Display for FareyTriplet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}, {}}}", self.a_b, self.x_y, self.c_d)
    }
}

pub fn farey_children(t: &FareyTriplet) -> (FareyTriplet, FareyTriplet) {
    let left = FareyTriplet {
        a_b: t.a_b.clone(),
        x_y: mediant(&t.a_b, &t.x_y),
        c_d: t.x_y.clone(),
    };
    let right = FareyTriplet {
        a_b: t.x_y.clone(),
        x_y: mediant(&t.x_y, &t.c_d),
        c_d: t.c_d.clone(),
    };
    (left, right)
}

fn child(t: &FareyTriplet, side: EdgeSide) -> FareyTriplet {
    let (l, r) = farey_children(t);
    match side {
        EdgeSide::Left => l,
        EdgeSide::Right => r,
    }
}

/// Farey triplet of the `k`-th triplet along one edge of the region headed
/// by `t`: one step to `side`, then `k - 1` steps the other way.
pub fn farey_edge_child(t: &FareyTriplet, side: EdgeSide, k: u64) -> Result<FareyTriplet> {
    if k == 0 {
        return Err(Error::InvalidArgument("edge index must be >= 1".into()));
    }
    let mut cur = child(t, side);
    for _ in 1..k {
        cur = child(&cur, side.opposite());
    }
    Ok(cur)
}

/// Left `(x·k + a) / (y·k + b)`, right `(x·k + c) / (y·k + d)`.
pub fn farey_edge_sequence(t: &FareyTriplet, side: EdgeSide, k: u64) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::InvalidArgument("edge index must be >= 1".into()));
    }
    let k = BigInt::from(k);
    let outer = match side {
        EdgeSide::Left => &t.a_b,
        EdgeSide::Right => &t.c_d,
    };
    Ok(BigRational::new(
        t.x_y.numer() * &k + outer.numer(),
        t.x_y.denom() * &k + outer.denom(),
    ))
}

/// Left/right steps from `{1, 5, 2}` to the non-singular entry at list
/// position `pos`.
fn path_to(pos: usize) -> Vec<EdgeSide> {
    // heap index: root is 1, children of i are 2i and 2i + 1
    let heap = pos - 2;
    let bits = usize::BITS - heap.leading_zeros() - 1;
    (0..bits)
        .rev()
        .map(|b| {
            if heap >> b & 1 == 0 {
                EdgeSide::Left
            } else {
                EdgeSide::Right
            }
        })
        .collect()
}

pub fn farey_for_region(r: &BigInt, list: &MarkovList) -> Result<FareyTriplet> {
    let (t, pos) = list.triplet_by_region(r)?;
    if t.is_singular() {
        return Err(Error::SingularTriplet(t.to_string()));
    }
    Ok(path_to(pos)
        .into_iter()
        .fold(FareyTriplet::root(), |cur, side| child(&cur, side)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotPoint {
    pub farey: BigRational,
    pub log10_r: f64,
    pub region: BigInt,
    pub depth: usize,
}

/// `log10` of a positive integer from its digit count and leading digits.
pub fn log10_big(v: &BigInt) -> f64 {
    let s = v.to_string();
    let lead = &s[..s.len().min(17)];
    let mantissa: f64 = lead.parse().expect("decimal digits");
    mantissa.log10() + (s.len() - lead.len()) as f64
}

/// One point per non-singular region through `depth`, sorted by Farey value.
pub fn plot_points(depth: usize, list: &MarkovList) -> Result<Vec<PlotPoint>> {
    if depth > list.depth() {
        return Err(Error::ResourceLimit(format!(
            "plot depth {depth} exceeds the generated depth {}",
            list.depth()
        )));
    }
    let mut out = Vec::new();
    let mut level = vec![FareyTriplet::root()];
    for d in 1..=depth {
        for (entry, f) in list.level(d).iter().zip(&level) {
            out.push(PlotPoint {
                farey: f.x_y.clone(),
                log10_r: log10_big(entry.triplet.region()),
                region: entry.triplet.region().clone(),
                depth: d,
            });
        }
        level = level
            .iter()
            .flat_map(|f| {
                let (l, r) = farey_children(f);
                [l, r]
            })
            .collect();
    }
    out.sort_by(|p, q| p.farey.cmp(&q.farey));
    Ok(out)
}
