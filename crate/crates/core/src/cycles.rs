//! Parity types, last-digit repeat cycles along edges, and last-digit
//! statistics of Markov numbers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::edge::{EdgeSide, RegionHead};
use crate::error::{Budget, Error, Result};
use crate::lucas::u_pair_mod;
use crate::markov_tree::{enumerate_mod, mod_children, OrderedTriplet};
use crate::parallel::{map_ordered, ExecMode};

/// Parity classes of a triplet `(x, R, z)`:
/// 1 = (odd, odd, odd), 2 = (even, odd, odd), 3 = (odd, odd, even),
/// 4 = (odd, even, odd).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParityType(u8);

impl ParityType {
    pub fn value(self) -> u8 {
        self.0
    }

    fn from_bits(x_odd: bool, r_odd: bool, z_odd: bool) -> Option<Self> {
        match (x_odd, r_odd, z_odd) {
            (true, true, true) => Some(ParityType(1)),
            (false, true, true) => Some(ParityType(2)),
            (true, true, false) => Some(ParityType(3)),
            (true, false, true) => Some(ParityType(4)),
            _ => None,
        }
    }
}

fn is_odd(v: &BigInt) -> bool {
    v.bit(0)
}

pub fn parity_type(t: &OrderedTriplet) -> Result<ParityType> {
    ParityType::from_bits(is_odd(t.x()), is_odd(t.region()), is_odd(t.z()))
        .ok_or_else(|| Error::InvalidParity(t.to_string()))
}

pub(crate) fn mod_u64(v: &BigInt, m: u64) -> u64 {
    let r = v % BigInt::from(m);
    let r = if r.sign() == num_bigint::Sign::Minus {
        r + m
    } else {
        r
    };
    r.to_u64().expect("residue fits")
}

/// `(H(0), H(1), 3R)` reduced mod `m`.
fn edge_seed(head: &RegionHead, side: EdgeSide, m: u64) -> (u64, u64, u64) {
    let t = head.triplet();
    let (start, other) = match side {
        EdgeSide::Left => (t.x(), t.z()),
        EdgeSide::Right => (t.z(), t.x()),
    };
    let p = BigInt::from(3) * t.region();
    let h1 = &p * start - other;
    (mod_u64(start, m), mod_u64(&h1, m), mod_u64(&p, m))
}

fn step(a: u64, b: u64, p: u64, m: u64) -> u64 {
    ((p as u128 * b as u128 + (m - a) as u128) % m as u128) as u64
}

/// Minimal period of `a_{n+1} = p·a_n - a_{n-1} (mod m)` from `(a0, a1)`.
/// The pair map is invertible, so the orbit returns to its start.
pub(crate) fn kernel_period(a0: u64, a1: u64, p: u64, m: u64) -> u64 {
    let (mut a, mut b) = (a0, a1);
    let mut n = 0;
    loop {
        let c = step(a, b, p, m);
        a = b;
        b = c;
        n += 1;
        if a == a0 && b == a1 {
            return n;
        }
    }
}

pub(crate) fn kernel_terms(a0: u64, a1: u64, p: u64, m: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let (mut a, mut b) = (a0, a1);
    for _ in 0..count {
        out.push(a);
        let c = step(a, b, p, m);
        a = b;
        b = c;
    }
    out
}

fn check_digits(d: u32, max: u32) -> Result<u64> {
    if d == 0 || d > max {
        return Err(Error::InvalidArgument(format!(
            "digits {d} outside 1..={max}"
        )));
    }
    Ok(10u64.pow(d))
}

/// Edge region numbers `H(0..count)` reduced mod `m`.
pub fn edge_residues(head: &RegionHead, side: EdgeSide, m: u64, count: usize) -> Vec<u64> {
    let (a0, a1, p) = edge_seed(head, side, m);
    kernel_terms(a0, a1, p, m, count)
}

/// Parity types of the first `count` edge triplets.
pub fn edge_parity_pattern(
    head: &RegionHead,
    side: EdgeSide,
    count: usize,
) -> Result<Vec<ParityType>> {
    if count < 3 {
        return Err(Error::InvalidArgument("count must be >= 3".into()));
    }
    head.check_side(side)?;
    let h = edge_residues(head, side, 2, count + 1);
    let r_odd = is_odd(head.region());
    (1..=count)
        .map(|n| {
            let (outer, mid) = (h[n - 1] == 1, h[n] == 1);
            let bits = match side {
                EdgeSide::Left => (outer, mid, r_odd),
                EdgeSide::Right => (r_odd, mid, outer),
            };
            ParityType::from_bits(bits.0, bits.1, bits.2)
                .ok_or_else(|| Error::InvalidParity(format!("edge member {n} of {head}")))
        })
        .collect()
}

/// Minimal period of the edge region numbers mod `10^d`.
pub fn cycle_length(head: &RegionHead, side: EdgeSide, d: u32) -> Result<u64> {
    let m = check_digits(d, 4)?;
    let (a0, a1, p) = edge_seed(head, side, m);
    Ok(kernel_period(a0, a1, p, m))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReport {
    pub head: RegionHead,
    pub side: EdgeSide,
    pub digits: u32,
    pub length: u64,
    /// `H(n) mod 10^d` for `n = 0..length`.
    pub residues: Vec<u64>,
    /// Left cycle followed by right cycle reads the same both ways.
    pub palindromic_with_opposite: bool,
}

fn is_palindrome<T: PartialEq>(v: &[T]) -> bool {
    v.iter().eq(v.iter().rev())
}

pub fn cycle_report(head: &RegionHead, side: EdgeSide, d: u32) -> Result<CycleReport> {
    let length = cycle_length(head, side, d)?;
    let m = 10u64.pow(d);
    let own = edge_residues(head, side, m, length as usize);
    let other = edge_residues(head, side.opposite(), m, length as usize);
    let joined: Vec<u64> = match side {
        EdgeSide::Left => own.iter().chain(&other).copied().collect(),
        EdgeSide::Right => other.iter().chain(&own).copied().collect(),
    };
    Ok(CycleReport {
        head: head.clone(),
        side,
        digits: d,
        length,
        palindromic_with_opposite: is_palindrome(&joined),
        residues: own,
    })
}

/// Left and right cycles anchored at `n = 0`.
pub fn palindromic_cycle(head: &RegionHead, d: u32) -> Result<(CycleReport, CycleReport)> {
    if head.is_singular() {
        return Err(Error::SingularTriplet(head.to_string()));
    }
    Ok((
        cycle_report(head, EdgeSide::Left, d)?,
        cycle_report(head, EdgeSide::Right, d)?,
    ))
}

/// Cycle length patterns with documented internal structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleFamily {
    /// `{30, 150, 750}`.
    OddFibonacci,
    /// `{12, 60, 300}`.
    CyclicLucas,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Ascending,
    Descending,
}

pub const CYCLIC_LUCAS_MOD10: [u64; 12] = [1, 3, 4, 7, 1, 8, 9, 7, 6, 3, 9, 2];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InternalStructure {
    OddFibonacci {
        digits: u32,
        /// First of the two palindromic sublists the cycle splits into.
        first: Vec<u64>,
        /// `first` is `F_{2q-1}, ..., F_3, F_1, F_1, F_3, ..., F_{2q-1}` mod `10^d`.
        first_matches: bool,
        second: Vec<u64>,
        /// Smallest `r` with `second[i] = F_{2(i+r)+1}` mod `10^d`, if any.
        second_rotation: Option<usize>,
    },
    CyclicLucas {
        /// The 60-member cycle mod 10, cut into 12-member copies.
        copies: Vec<Vec<u64>>,
        /// Direction and rotation of the cyclic Lucas list matching every copy.
        matched: Option<(Direction, usize)>,
    },
}

pub fn cycle_pattern(head: &RegionHead, side: EdgeSide) -> Result<[u64; 3]> {
    Ok([
        cycle_length(head, side, 1)?,
        cycle_length(head, side, 2)?,
        cycle_length(head, side, 3)?,
    ])
}

pub fn classify_family(pattern: [u64; 3]) -> Result<CycleFamily> {
    match pattern {
        [30, 150, 750] => Ok(CycleFamily::OddFibonacci),
        [12, 60, 300] => Ok(CycleFamily::CyclicLucas),
        other => Err(Error::UnsupportedFamily(
            other.iter().map(|&v| v as usize).collect(),
        )),
    }
}

/// Smallest `p` splitting `c` into two palindromes `c[..p]`, `c[p..]`.
fn palindrome_split(c: &[u64]) -> Option<usize> {
    (1..=c.len()).find(|&p| is_palindrome(&c[..p]) && is_palindrome(&c[p..]))
}

fn rotations_of(list: &[u64]) -> impl Iterator<Item = (usize, Vec<u64>)> + '_ {
    (0..list.len()).map(move |r| (r, list[r..].iter().chain(&list[..r]).copied().collect()))
}

pub fn internal_structure(head: &RegionHead, side: EdgeSide, d: u32) -> Result<InternalStructure> {
    let m = check_digits(d, 3)?;
    head.check_side(side)?;
    match classify_family(cycle_pattern(head, side)?)? {
        CycleFamily::OddFibonacci => {
            let length = cycle_length(head, side, d)? as usize;
            let cycle = edge_residues(head, side, m, length);
            let split = palindrome_split(&cycle).expect("the whole cycle is a candidate");
            let (first, second) = (cycle[..split].to_vec(), cycle[split..].to_vec());
            let fib_period = kernel_period(1, 2, 3, m) as usize;
            let odd_fib = kernel_terms(1, 2, 3, m, fib_period + split);
            let q = split / 2;
            let pattern: Vec<u64> = odd_fib[..q]
                .iter()
                .rev()
                .chain(&odd_fib[..q])
                .copied()
                .collect();
            let second_rotation = if second.is_empty() {
                None
            } else {
                (0..fib_period).find(|&r| {
                    second
                        .iter()
                        .enumerate()
                        .all(|(i, &v)| v == odd_fib[(i + r) % fib_period])
                })
            };
            Ok(InternalStructure::OddFibonacci {
                digits: d,
                first_matches: split.is_multiple_of(2) && first == pattern,
                first,
                second,
                second_rotation,
            })
        }
        CycleFamily::CyclicLucas => {
            if d != 1 {
                return Err(Error::InvalidArgument(
                    "the cyclic Lucas structure is a single-digit property".into(),
                ));
            }
            let length = cycle_length(head, side, 2)? as usize;
            let cycle: Vec<u64> = edge_residues(head, side, 100, length)
                .into_iter()
                .map(|v| v % 10)
                .collect();
            let copies: Vec<Vec<u64>> = cycle.chunks(12).map(|c| c.to_vec()).collect();
            let reversed: Vec<u64> = CYCLIC_LUCAS_MOD10.iter().rev().copied().collect();
            let candidates = rotations_of(&CYCLIC_LUCAS_MOD10)
                .map(|(r, v)| (Direction::Ascending, r, v))
                .chain(rotations_of(&reversed).map(|(r, v)| (Direction::Descending, r, v)));
            let mut matched = None;
            for (dir, r, block) in candidates {
                if copies.iter().all(|c| *c == block) {
                    matched = Some((dir, r));
                    break;
                }
            }
            Ok(InternalStructure::CyclicLucas { copies, matched })
        }
    }
}

/// Last digits at the end of a repeat cycle of the Fibonacci (region 1) or
/// Pell (region 2) edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndpointRow {
    pub length: u64,
    /// Digits shown: one more than the largest `d` with period `length`.
    pub digits: u32,
    /// `H(length - 1 - j) mod 10^digits` for `j = 0..6`.
    pub values: [u64; 6],
}

pub fn fibpell_cycle_endpoints(region: u8, lengths: &[u64]) -> Result<Vec<EndpointRow>> {
    let (a, b, p) = match region {
        1 => (1u64, 1u64, 3u64),
        2 => (1, 1, 6),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "region {region} is not 1 or 2"
            )))
        }
    };
    // H(n) = b·U_{n+1} - a·U_n; both singular heads have x = z = 1.
    let h = |n: u64, m: u64| -> u64 {
        let (u, u_next) = u_pair_mod(p % m, n, m);
        let m128 = m as u128;
        ((b as u128 * u_next as u128 + m128 - a as u128 * u as u128 % m128) % m128) as u64
    };
    lengths
        .iter()
        .map(|&length| {
            if length < 6 {
                return Err(Error::InvalidArgument(format!("cycle length {length} < 6")));
            }
            let is_period = |m: u64| h(length, m) == h(0, m) && h(length + 1, m) == h(1, m);
            let mut d = 0u32;
            while d < 17 && is_period(10u64.pow(d + 1)) {
                d += 1;
            }
            if d == 0 {
                return Err(Error::InvalidArgument(format!(
                    "{length} is not a repeat cycle length of region {region}"
                )));
            }
            let m = 10u64.pow(d + 1);
            let mut values = [0u64; 6];
            for (j, v) in values.iter_mut().enumerate() {
                *v = h(length - 1 - j as u64, m);
            }
            Ok(EndpointRow {
                length,
                digits: d + 1,
                values,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenIndexReport {
    pub fibonacci: Vec<u64>,
    pub pell: Vec<u64>,
    pub fibonacci_palindromic: bool,
    pub pell_palindromic: bool,
    /// Second half is the 10's complement of the first half.
    pub fibonacci_complement: bool,
    pub pell_complement: bool,
}

fn complement_halves(v: &[u64]) -> bool {
    let half = v.len() / 2;
    v.len().is_multiple_of(2) && (0..half).all(|i| (v[i] + v[half + i]).is_multiple_of(10))
}

/// First mod-10 cycles of `F_0, F_2, F_4, ...` and `P_0, P_2, P_4, ...`.
pub fn even_indexed_nonpalindromic() -> EvenIndexReport {
    let fib = kernel_terms(0, 1, 3, 10, kernel_period(0, 1, 3, 10) as usize);
    let pell = kernel_terms(0, 2, 6, 10, kernel_period(0, 2, 6, 10) as usize);
    EvenIndexReport {
        fibonacci_palindromic: is_palindrome(&fib),
        pell_palindromic: is_palindrome(&pell),
        fibonacci_complement: complement_halves(&fib),
        pell_complement: complement_halves(&pell),
        fibonacci: fib,
        pell,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyReport {
    pub depth: usize,
    pub digits: u32,
    /// `counts[v]` regions with `R mod 10^digits = v`.
    pub counts: Vec<u64>,
}

impl FrequencyReport {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn odd_total(&self) -> u64 {
        self.counts.iter().skip(1).step_by(2).sum()
    }

    pub fn even_total(&self) -> u64 {
        self.counts.iter().step_by(2).sum()
    }

    /// Residues mod 20 that occur; needs `digits >= 2`.
    pub fn classes_mod20(&self) -> BTreeSet<u64> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, _)| v as u64 % 20)
            .collect()
    }
}

/// Depth at which the traversal is split into independent subtrees.
const SHARD_DEPTH: usize = 8;

fn count_subtree(root: [u64; 3], levels: usize, m: u64, counts: &mut [u64]) {
    let mut stack = vec![(root, 1usize)];
    while let Some((t, level)) = stack.pop() {
        counts[t[1] as usize] += 1;
        if level < levels {
            let (l, r) = mod_children(t, m);
            stack.push((r, level + 1));
            stack.push((l, level + 1));
        }
    }
}

/// Histogram of region numbers mod `10^d` over every non-singular triplet
/// through `depth`.
pub fn last_digit_frequency(depth: usize, d: u32, budget: &Budget) -> Result<FrequencyReport> {
    last_digit_frequency_with(depth, d, budget, ExecMode::default())
}

pub fn last_digit_frequency_with(
    depth: usize,
    d: u32,
    budget: &Budget,
    mode: ExecMode,
) -> Result<FrequencyReport> {
    let m = check_digits(d, 2)?;
    budget.check_depth(depth)?;
    let mut counts = vec![0u64; m as usize];
    if depth == 0 {
        return Ok(FrequencyReport {
            depth,
            digits: d,
            counts,
        });
    }
    let shard = depth.min(SHARD_DEPTH);
    let mut frontier = Vec::new();
    for (i, t) in enumerate_mod(shard, m, budget)?.enumerate() {
        // Shallow levels are counted directly; the deepest becomes shard roots.
        if i + 1 >= 1 << (shard - 1) {
            frontier.push(t);
        } else {
            counts[t[1] as usize] += 1;
        }
    }
    let levels = depth + 1 - shard;
    let partial = map_ordered(mode, &frontier, |&root| {
        let mut c = vec![0u64; m as usize];
        count_subtree(root, levels, m, &mut c);
        c
    });
    for c in partial {
        for (total, v) in counts.iter_mut().zip(c) {
            *total += v;
        }
    }
    Ok(FrequencyReport {
        depth,
        digits: d,
        counts,
    })
}

/// Observed `(d = 1, 2, 3)` cycle length patterns keyed by `R mod 20`.
pub fn pattern_by_residue(
    depth: usize,
    budget: &Budget,
) -> Result<BTreeMap<u64, BTreeSet<[u64; 3]>>> {
    pattern_by_residue_with(depth, budget, ExecMode::default())
}

pub fn pattern_by_residue_with(
    depth: usize,
    budget: &Budget,
    mode: ExecMode,
) -> Result<BTreeMap<u64, BTreeSet<[u64; 3]>>> {
    let triplets: Vec<[u64; 3]> = enumerate_mod(depth, 1000, budget)?.collect();
    let patterns = map_ordered(mode, &triplets, |&[x, r, z]| {
        let lengths = [10u64, 100, 1000].map(|m| {
            let p = 3 * r % m;
            kernel_period(z % m, step(x % m, z % m, p, m), p, m)
        });
        (r % 20, lengths)
    });
    let mut out: BTreeMap<u64, BTreeSet<[u64; 3]>> = BTreeMap::new();
    for (class, lengths) in patterns {
        out.entry(class).or_default().insert(lengths);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(x: u64, r: u64, z: u64) -> RegionHead {
        RegionHead::new(OrderedTriplet::from_u64(x, r, z).unwrap()).unwrap()
    }

    fn types(v: &[ParityType]) -> Vec<u8> {
        v.iter().map(|t| t.value()).collect()
    }

    #[test]
    fn parity_types() {
        let t = |x, r, z| {
            parity_type(&OrderedTriplet::from_u64(x, r, z).unwrap())
                .unwrap()
                .value()
        };
        assert_eq!(t(1, 5, 2), 3);
        assert_eq!(t(1, 2, 1), 4);
        assert_eq!(t(1, 1, 1), 1);
        assert_eq!(t(34, 1325, 13), 2);
    }

    #[test]
    fn parity_patterns() {
        let p = |head: &RegionHead, side| types(&edge_parity_pattern(head, side, 6).unwrap());
        assert_eq!(p(&h(13, 194, 5), EdgeSide::Left), vec![3; 6]);
        assert_eq!(p(&h(13, 194, 5), EdgeSide::Right), vec![2; 6]);
        assert_eq!(p(&h(1, 5, 2), EdgeSide::Left), vec![1, 4, 2, 1, 4, 2]);
        assert_eq!(p(&h(1, 5, 2), EdgeSide::Right), vec![3, 1, 4, 3, 1, 4]);
        assert!(edge_parity_pattern(&h(1, 5, 2), EdgeSide::Left, 2).is_err());
    }

    #[test]
    fn cycle_lengths() {
        let root = h(1, 5, 2);
        let got: Vec<u64> = (1..=4)
            .map(|d| cycle_length(&root, EdgeSide::Left, d).unwrap())
            .collect();
        assert_eq!(got, vec![12, 60, 300, 1500]);
        assert_eq!(cycle_length(&h(1, 13, 5), EdgeSide::Right, 1).unwrap(), 3);
        assert_eq!(cycle_length(&h(1, 1, 1), EdgeSide::Right, 1).unwrap(), 30);
        assert!(cycle_length(&root, EdgeSide::Left, 5).is_err());
    }

    #[test]
    fn palindromes() {
        let (l, r) = palindromic_cycle(&h(1, 5, 2), 3).unwrap();
        assert_eq!(l.residues[..4], [1, 13, 194, 897]);
        assert_eq!(l.residues[l.residues.len() - 4..], [466, 433, 29, 2]);
        assert!(l.palindromic_with_opposite && r.palindromic_with_opposite);
        let (l, _) = palindromic_cycle(&h(29, 169, 2), 3).unwrap();
        assert_eq!(l.residues[..4], [29, 701, 378, 945]);
        let (l, r) = palindromic_cycle(&h(1, 5, 2), 1).unwrap();
        let joined: Vec<u64> = l.residues.iter().chain(&r.residues).copied().collect();
        assert_eq!(joined.len(), 24);
        assert!(is_palindrome(&joined));
        assert!(palindromic_cycle(&h(1, 2, 1), 1).is_err());
    }

    #[test]
    fn odd_fibonacci_structure() {
        let s = internal_structure(&h(29, 14701, 169), EdgeSide::Left, 2).unwrap();
        let InternalStructure::OddFibonacci {
            first,
            first_matches,
            second_rotation,
            ..
        } = s
        else {
            panic!("wrong family");
        };
        assert_eq!(
            first,
            vec![
                29, 18, 25, 57, 46, 81, 97, 10, 33, 89, 34, 13, 5, 2, 1, 1, 2, 5, 13, 34, 89, 33,
                10, 97, 81, 46, 57, 25, 18, 29
            ]
        );
        assert!(first_matches);
        assert_eq!(second_rotation, Some(15));
    }

    #[test]
    fn cyclic_lucas_structure() {
        let s = internal_structure(&h(1, 5, 2), EdgeSide::Left, 1).unwrap();
        let InternalStructure::CyclicLucas { copies, matched } = s else {
            panic!("wrong family");
        };
        assert_eq!(copies.len(), 5);
        assert_eq!(matched, Some((Direction::Ascending, 0)));
        let s = internal_structure(&h(1, 5, 2), EdgeSide::Right, 1).unwrap();
        let InternalStructure::CyclicLucas { copies, matched } = s else {
            panic!("wrong family");
        };
        assert_eq!(copies[0], vec![2, 9, 3, 6, 7, 9, 8, 1, 7, 4, 3, 1]);
        assert_eq!(matched, Some((Direction::Descending, 0)));
        assert!(matches!(
            internal_structure(&h(1, 13, 5), EdgeSide::Left, 1),
            Err(Error::UnsupportedFamily(_))
        ));
    }

    #[test]
    fn endpoints() {
        let rows = fibpell_cycle_endpoints(1, &[30, 150]).unwrap();
        assert_eq!(rows[0].values, [41, 62, 45, 73, 74, 49]);
        assert_eq!(rows[1].values[5], 889);
        let rows = fibpell_cycle_endpoints(2, &[6]).unwrap();
        assert_eq!(rows[0].values, [41, 85, 69, 29, 5, 1]);
        assert!(fibpell_cycle_endpoints(3, &[6]).is_err());
        assert!(fibpell_cycle_endpoints(1, &[31]).is_err());
    }

    #[test]
    fn even_index_cycles() {
        let r = even_indexed_nonpalindromic();
        assert_eq!(
            r.fibonacci,
            vec![
                0, 1, 3, 8, 1, 5, 4, 7, 7, 4, 5, 1, 8, 3, 1, 0, 9, 7, 2, 9, 5, 6, 3, 3, 6, 5, 9, 2,
                7, 9
            ]
        );
        assert_eq!(r.pell, vec![0, 2, 2, 0, 8, 8]);
        assert!(!r.fibonacci_palindromic && !r.pell_palindromic);
        assert!(r.fibonacci_complement && r.pell_complement);
    }

    #[test]
    fn frequency_small() {
        let b = Budget::default();
        let f = last_digit_frequency(2, 1, &b).unwrap();
        assert_eq!(f.total(), 3);
        assert_eq!((f.counts[5], f.counts[3], f.counts[9]), (1, 1, 1));
        let seq = last_digit_frequency_with(12, 2, &b, ExecMode::Sequential).unwrap();
        let par = last_digit_frequency_with(12, 2, &b, ExecMode::Parallel).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.total(), (1 << 12) - 1);
        let direct: u64 = enumerate_mod(12, 100, &b)
            .unwrap()
            .filter(|t| t[1] == 29)
            .count() as u64;
        assert_eq!(seq.counts[29], direct);
    }

    #[test]
    fn residue_patterns() {
        let p = pattern_by_residue(4, &Budget::default()).unwrap();
        assert!(p[&5].contains(&[12, 60, 300]));
        assert!(p[&13].contains(&[3, 15, 75]));
    }
}
