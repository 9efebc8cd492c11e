//! Markov triplets and the breadth-first Markov tree.
//!
//! Every non-singular triplet `{x, R, z}` has an ordered left child
//! `{x, 3Rx - z, R}` and an ordered right child `{R, 3Rz - x, z}`; the tree
//! is rooted at `{1, 5, 2}` and preceded by the two singular solutions
//! `{1, 1, 1}` and `{1, 2, 1}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Budget, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedTriplet {
    x: BigInt,
    r: BigInt,
    z: BigInt,
}

fn markov_identity(x: &BigInt, r: &BigInt, z: &BigInt) -> bool {
    x * x + r * r + z * z == BigInt::from(3) * x * r * z
}

impl OrderedTriplet {
    /// Builds a triplet, checking positivity and the Markov identity.
    pub fn new(x: BigInt, r: BigInt, z: BigInt) -> Result<Self> {
        let t = OrderedTriplet { x, r, z };
        if !t.x.is_positive() || !t.r.is_positive() || !t.z.is_positive() {
            return Err(Error::InvalidTriplet(t.to_string()));
        }
        if !markov_identity(&t.x, &t.r, &t.z) {
            return Err(Error::InvalidTriplet(t.to_string()));
        }
        Ok(t)
    }

    pub fn from_u64(x: u64, r: u64, z: u64) -> Result<Self> {
        Self::new(x.into(), r.into(), z.into())
    }

    /// Caller guarantees the Markov identity.
    pub(crate) fn unchecked(x: BigInt, r: BigInt, z: BigInt) -> Self {
        debug_assert!(markov_identity(&x, &r, &z));
        OrderedTriplet { x, r, z }
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    /// The middle member `R`, the region number when `R` is maximal.
    pub fn region(&self) -> &BigInt {
        &self.r
    }

    pub fn z(&self) -> &BigInt {
        &self.z
    }

    pub fn satisfies_markov(&self) -> bool {
        markov_identity(&self.x, &self.r, &self.z)
    }

    /// `{1, 1, 1}` or `{1, 2, 1}`.
    pub fn is_singular(&self) -> bool {
        self.x.is_one() && self.z.is_one() && (self.r.is_one() || self.r == BigInt::from(2))
    }

    pub fn is_root(&self) -> bool {
        self.x.is_one() && self.r == BigInt::from(5) && self.z == BigInt::from(2)
    }

    pub fn min_outer(&self) -> &BigInt {
        std::cmp::min(&self.x, &self.z)
    }

    pub fn max_outer(&self) -> &BigInt {
        std::cmp::max(&self.x, &self.z)
    }

    /// Non-singular triplets headed by their region number (`R > x`, `R > z`).
    pub(crate) fn is_region_head(&self) -> bool {
        self.r > self.x && self.r > self.z && self.x != self.z
    }
}

impl fmt::Display for OrderedTriplet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}, {}}}", self.x, self.r, self.z)
    }
}

/// Left and right children of a non-singular triplet.
pub fn children(t: &OrderedTriplet) -> Result<(OrderedTriplet, OrderedTriplet)> {
    if !t.satisfies_markov() {
        return Err(Error::InvalidTriplet(t.to_string()));
    }
    if t.r < BigInt::from(5) {
        return Err(Error::SingularTriplet(t.to_string()));
    }
    let three_r = BigInt::from(3) * &t.r;
    let left = OrderedTriplet::unchecked(t.x.clone(), &three_r * &t.x - &t.z, t.r.clone());
    let right = OrderedTriplet::unchecked(t.r.clone(), &three_r * &t.z - &t.x, t.z.clone());
    Ok((left, right))
}

/// `{1,1,1} -> {1,2,1} -> {1,5,2}`.
pub fn singular_successor(t: &OrderedTriplet) -> Result<OrderedTriplet> {
    if !t.is_singular() {
        return Err(Error::NotSingular(t.to_string()));
    }
    if t.r.is_one() {
        OrderedTriplet::from_u64(1, 2, 1)
    } else {
        OrderedTriplet::from_u64(1, 5, 2)
    }
}

pub fn parent(t: &OrderedTriplet) -> Result<OrderedTriplet> {
    if !t.satisfies_markov() {
        return Err(Error::InvalidTriplet(t.to_string()));
    }
    if t.is_root() {
        return Err(Error::RootTriplet);
    }
    if t.x == t.z || t.r < BigInt::from(5) {
        return Err(Error::SingularTriplet(t.to_string()));
    }
    let s = sibling_number(t)?;
    let p = if t.x < t.z {
        OrderedTriplet::new(t.x.clone(), t.z.clone(), s)
    } else {
        OrderedTriplet::new(s, t.x.clone(), t.z.clone())
    };
    p.map_err(|_| Error::InvalidTriplet(t.to_string()))
}

/// The second root `3xz - R` of the Markov equation with `x`, `z` fixed.
pub fn sibling_number(t: &OrderedTriplet) -> Result<BigInt> {
    if !t.satisfies_markov() {
        return Err(Error::InvalidTriplet(t.to_string()));
    }
    Ok(BigInt::from(3) * &t.x * &t.z - &t.r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovEntry {
    pub triplet: OrderedTriplet,
    /// 0 for the singular triplets, 1 for `{1, 5, 2}`.
    pub depth: usize,
}

/// Singular triplets followed by the non-singular tree in breadth-first,
/// left-before-right order. Positions are 1-based.
#[derive(Clone, Debug)]
pub struct MarkovList {
    entries: Vec<MarkovEntry>,
    index: HashMap<BigInt, usize>,
    depth: usize,
}

impl MarkovList {
    fn singular_only() -> Self {
        let mut list = MarkovList {
            entries: Vec::new(),
            index: HashMap::new(),
            depth: 0,
        };
        for t in [
            OrderedTriplet::unchecked(1.into(), 1.into(), 1.into()),
            OrderedTriplet::unchecked(1.into(), 2.into(), 1.into()),
        ] {
            list.push(t, 0);
        }
        list
    }

    fn push(&mut self, triplet: OrderedTriplet, depth: usize) {
        self.index.insert(triplet.r.clone(), self.entries.len());
        self.entries.push(MarkovEntry { triplet, depth });
    }

    pub fn entries(&self) -> &[MarkovEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Deepest non-singular level generated.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn get(&self, position: usize) -> Option<&OrderedTriplet> {
        position
            .checked_sub(1)
            .and_then(|i| self.entries.get(i))
            .map(|e| &e.triplet)
    }

    pub fn iter(&self) -> impl Iterator<Item = &OrderedTriplet> {
        self.entries.iter().map(|e| &e.triplet)
    }

    /// Entries of one non-singular level (`depth >= 1`).
    pub fn level(&self, depth: usize) -> &[MarkovEntry] {
        if depth == 0 || depth > self.depth {
            return &[];
        }
        let start = 2 + (1usize << (depth - 1)) - 1;
        &self.entries[start..start + (1usize << (depth - 1))]
    }

    pub fn triplet_by_region(&self, region: &BigInt) -> Result<(&OrderedTriplet, usize)> {
        match self.index.get(region) {
            Some(&i) => Ok((&self.entries[i].triplet, i + 1)),
            None => Err(Error::NotFound {
                region: region.to_string(),
                depth: self.depth,
            }),
        }
    }

    pub fn position_of(&self, t: &OrderedTriplet) -> Option<usize> {
        self.index
            .get(&t.r)
            .filter(|&&i| self.entries[i].triplet == *t)
            .map(|&i| i + 1)
    }

    pub fn depth_at(&self, position: usize) -> Option<usize> {
        position
            .checked_sub(1)
            .and_then(|i| self.entries.get(i))
            .map(|e| e.depth)
    }

    fn deepen(&mut self, budget: &Budget) -> Result<()> {
        let next = self.depth + 1;
        budget.check_depth(next)?;
        if next == 1 {
            self.push(OrderedTriplet::unchecked(1.into(), 5.into(), 2.into()), 1);
        } else {
            let parents: Vec<OrderedTriplet> = self
                .level(self.depth)
                .iter()
                .map(|e| e.triplet.clone())
                .collect();
            for p in &parents {
                let (l, r) = children(p)?;
                budget.check_value(&l.r)?;
                budget.check_value(&r.r)?;
                self.push(l, next);
                self.push(r, next);
            }
        }
        self.depth = next;
        Ok(())
    }

    fn deepest_min_region(&self) -> Option<&BigInt> {
        self.level(self.depth).iter().map(|e| &e.triplet.r).min()
    }
}

/// The two singular triplets and every non-singular triplet through `depth`.
pub fn enumerate(depth: usize, budget: &Budget) -> Result<MarkovList> {
    budget.check_depth(depth)?;
    let mut list = MarkovList::singular_only();
    for _ in 0..depth {
        list.deepen(budget)?;
    }
    Ok(list)
}

/// A [`MarkovList`] that deepens one level at a time until a requested
/// region appears. Concurrent lookups see a consistent prefix.
#[derive(Debug)]
pub struct LazyMarkovList {
    list: RwLock<MarkovList>,
    budget: Budget,
}

impl LazyMarkovList {
    pub fn new(initial_depth: usize, budget: Budget) -> Result<Self> {
        Ok(LazyMarkovList {
            list: RwLock::new(enumerate(initial_depth, &budget)?),
            budget,
        })
    }

    pub fn triplet_by_region(&self, region: &BigInt) -> Result<(OrderedTriplet, usize)> {
        {
            let list = self.list.read().expect("markov list lock poisoned");
            if let Ok((t, p)) = list.triplet_by_region(region) {
                return Ok((t.clone(), p));
            }
        }
        let mut list = self.list.write().expect("markov list lock poisoned");
        loop {
            if let Ok((t, p)) = list.triplet_by_region(region) {
                return Ok((t.clone(), p));
            }
            // Children exceed their parents, so nothing deeper can match.
            let exhausted = match list.deepest_min_region() {
                Some(min) => min > region,
                None => region < &BigInt::from(5),
            };
            if exhausted {
                return Err(Error::NotFound {
                    region: region.to_string(),
                    depth: list.depth,
                });
            }
            list.deepen(&self.budget)?;
        }
    }

    pub fn snapshot(&self) -> MarkovList {
        self.list.read().expect("markov list lock poisoned").clone()
    }
}

/// Breadth-first stream of non-singular triplet residues modulo `modulus`.
#[derive(Debug, Clone)]
pub struct ModularTraversal {
    modulus: u64,
    max_depth: usize,
    depth: usize,
    level: Vec<[u64; 3]>,
    cursor: usize,
}

pub(crate) fn mod_children(t: [u64; 3], m: u64) -> ([u64; 3], [u64; 3]) {
    let m128 = m as u128;
    let [x, r, z] = t.map(u128::from);
    let left_r = (3 * r % m128 * x + m128 - z) % m128;
    let right_r = (3 * r % m128 * z + m128 - x) % m128;
    (
        [x as u64, left_r as u64, r as u64],
        [r as u64, right_r as u64, z as u64],
    )
}

impl Iterator for ModularTraversal {
    type Item = [u64; 3];

    fn next(&mut self) -> Option<[u64; 3]> {
        if self.depth == 0 || self.depth > self.max_depth {
            return None;
        }
        if self.cursor == self.level.len() {
            if self.depth == self.max_depth {
                self.depth += 1;
                return None;
            }
            let m = self.modulus;
            self.level = self
                .level
                .iter()
                .flat_map(|&t| {
                    let (l, r) = mod_children(t, m);
                    [l, r]
                })
                .collect();
            self.depth += 1;
            self.cursor = 0;
        }
        let item = self.level[self.cursor];
        self.cursor += 1;
        Some(item)
    }
}

/// Residues `(x, R, z) mod modulus` of every non-singular triplet through
/// `depth`, in the same order as [`enumerate`] (singular triplets omitted).
pub fn enumerate_mod(depth: usize, modulus: u64, budget: &Budget) -> Result<ModularTraversal> {
    if modulus < 2 {
        return Err(Error::InvalidArgument(format!("modulus {modulus} < 2")));
    }
    budget.check_depth(depth)?;
    Ok(ModularTraversal {
        modulus,
        max_depth: depth,
        depth: if depth == 0 { 0 } else { 1 },
        level: vec![[1, 5 % modulus, 2 % modulus]],
        cursor: 0,
    })
}

/// Converts a region number to `u64` or reports that it is out of range.
pub(crate) fn region_u64(r: &BigInt) -> Result<u64> {
    r.to_u64()
        .ok_or_else(|| Error::ResourceLimit(format!("{r} does not fit in 64 bits")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(x: u64, r: u64, z: u64) -> OrderedTriplet {
        OrderedTriplet::from_u64(x, r, z).unwrap()
    }

    #[test]
    fn children_of_root_and_first_level() {
        assert_eq!(children(&t(1, 5, 2)).unwrap(), (t(1, 13, 5), t(5, 29, 2)));
        assert_eq!(
            children(&t(1, 13, 5)).unwrap(),
            (t(1, 34, 13), t(13, 194, 5))
        );
        assert_eq!(
            children(&t(5, 29, 2)).unwrap(),
            (t(5, 433, 29), t(29, 169, 2))
        );
    }

    #[test]
    fn singular_inputs() {
        assert!(matches!(
            children(&t(1, 2, 1)),
            Err(Error::SingularTriplet(_))
        ));
        assert_eq!(singular_successor(&t(1, 1, 1)).unwrap(), t(1, 2, 1));
        assert_eq!(singular_successor(&t(1, 2, 1)).unwrap(), t(1, 5, 2));
        assert!(matches!(
            singular_successor(&t(1, 5, 2)),
            Err(Error::NotSingular(_))
        ));
    }

    #[test]
    fn invalid_triplets_are_rejected() {
        assert!(OrderedTriplet::from_u64(1, 6, 2).is_err());
        assert!(OrderedTriplet::new(0.into(), 0.into(), 0.into()).is_err());
    }

    #[test]
    fn parents() {
        assert_eq!(parent(&t(1, 13, 5)).unwrap(), t(1, 5, 2));
        assert_eq!(parent(&t(5, 29, 2)).unwrap(), t(1, 5, 2));
        assert_eq!(parent(&t(13, 194, 5)).unwrap(), t(1, 13, 5));
        assert_eq!(parent(&t(1, 5, 2)), Err(Error::RootTriplet));
    }

    #[test]
    fn sibling_numbers() {
        assert_eq!(sibling_number(&t(1, 5, 2)).unwrap(), 1.into());
        assert_eq!(sibling_number(&t(1, 34, 13)).unwrap(), 5.into());
        assert_eq!(sibling_number(&t(1, 233, 89)).unwrap(), 34.into());
    }

    #[test]
    fn enumerate_prefixes() {
        let b = Budget::default();
        assert_eq!(enumerate(0, &b).unwrap().len(), 2);
        let l = enumerate(3, &b).unwrap();
        assert_eq!(l.len(), 9);
        let regions: Vec<_> = l.iter().map(|t| t.region().clone()).collect();
        let want: Vec<BigInt> = [1, 2, 5, 13, 29, 34, 194, 433, 169]
            .map(BigInt::from)
            .into();
        assert_eq!(regions, want);
        assert_eq!(l.triplet_by_region(&29.into()).unwrap(), (&t(5, 29, 2), 5));
        assert_eq!(l.triplet_by_region(&1.into()).unwrap(), (&t(1, 1, 1), 1));
        assert_eq!(
            l.triplet_by_region(&169.into()).unwrap(),
            (&t(29, 169, 2), 9)
        );
        assert!(matches!(
            l.triplet_by_region(&4.into()),
            Err(Error::NotFound { .. })
        ));
        assert_eq!(l.depth_at(9), Some(3));
    }

    #[test]
    fn enumerate_respects_node_budget() {
        let b = Budget {
            max_nodes: 100,
            ..Budget::default()
        };
        assert!(matches!(enumerate(8, &b), Err(Error::ResourceLimit(_))));
        assert!(enumerate(6, &b).is_ok());
    }

    #[test]
    fn enumerate_respects_digit_cap() {
        let b = Budget {
            max_digits: 5,
            ..Budget::default()
        };
        assert!(matches!(enumerate(6, &b), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn lazy_lookup_deepens_and_stops() {
        let lazy = LazyMarkovList::new(1, Budget::default()).unwrap();
        let (found, pos) = lazy.triplet_by_region(&1325.into()).unwrap();
        assert_eq!(found, t(34, 1325, 13));
        assert_eq!(lazy.snapshot().get(pos), Some(&found));
        assert!(matches!(
            lazy.triplet_by_region(&100.into()),
            Err(Error::NotFound { .. })
        ));
    }

    #[test]
    fn modular_stream_matches_reduction() {
        let b = Budget::default();
        let got: Vec<_> = enumerate_mod(2, 100, &b).unwrap().map(|t| t[1]).collect();
        assert_eq!(got, vec![5, 13, 29]);
        let got: Vec<_> = enumerate_mod(1, 10, &b).unwrap().collect();
        assert_eq!(got, vec![[1, 5, 2]]);
        assert_eq!(enumerate_mod(0, 10, &b).unwrap().count(), 0);
    }
}
