//! Special square terms: the decomposition `R = σ² + Λ²` selected by the
//! sibling recursion, its extension along region edges, last-digit cycles of
//! the square terms and the oscillation of `Λ/σ` along an edge.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cycles::{kernel_period, kernel_terms, mod_u64};
use crate::edge::{edge_triplet, rational_series, EdgeSide, RegionHead};
use crate::error::{Error, Result};
use crate::lucas::LucasParams;
use crate::markov_tree::{MarkovList, OrderedTriplet};

pub type IntPair = (BigInt, BigInt);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarePair {
    pub sigma: BigInt,
    pub lambda: BigInt,
    /// `sigma² + lambda²`.
    pub target: BigInt,
}

impl SquarePair {
    pub fn new(sigma: BigInt, lambda: BigInt) -> Self {
        let target = &sigma * &sigma + &lambda * &lambda;
        SquarePair {
            sigma,
            lambda,
            target,
        }
    }

    fn from_ints(sigma: i64, lambda: i64) -> Self {
        SquarePair::new(sigma.into(), lambda.into())
    }

    pub fn pair(&self) -> IntPair {
        (self.sigma.clone(), self.lambda.clone())
    }

    /// `0 <= sigma <= lambda`.
    pub fn is_canonical(&self) -> bool {
        !self.sigma.is_negative() && self.sigma <= self.lambda
    }
}

impl fmt::Display for SquarePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.sigma, self.lambda)
    }
}

/// How a triplet's list position is counted when forming its region sign.
/// Only [`PositionConvention::OneBased`] reproduces the reference tables;
/// the others exist so that calibration can be rerun.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PositionConvention {
    /// 1-based, singular triplets counted.
    #[default]
    OneBased,
    /// 0-based, singular triplets counted.
    ZeroBased,
    /// 1-based from `{1, 5, 2}`.
    OneBasedNonSingular,
    /// 0-based from `{1, 5, 2}`.
    ZeroBasedNonSingular,
}

impl PositionConvention {
    pub const ALL: [PositionConvention; 4] = [
        PositionConvention::OneBased,
        PositionConvention::ZeroBased,
        PositionConvention::OneBasedNonSingular,
        PositionConvention::ZeroBasedNonSingular,
    ];

    fn shift(self) -> i64 {
        match self {
            PositionConvention::OneBased => 0,
            PositionConvention::ZeroBased => -1,
            PositionConvention::OneBasedNonSingular => -2,
            PositionConvention::ZeroBasedNonSingular => -3,
        }
    }
}

fn not_found(t: &OrderedTriplet, list: &MarkovList) -> Error {
    Error::NotFound {
        region: t.region().to_string(),
        depth: list.depth(),
    }
}

pub fn region_sign(t: &OrderedTriplet, list: &MarkovList) -> Result<i8> {
    region_sign_with(t, list, PositionConvention::default())
}

pub fn region_sign_with(
    t: &OrderedTriplet,
    list: &MarkovList,
    conv: PositionConvention,
) -> Result<i8> {
    if t.is_root() || (t.is_singular() && t.region() == &BigInt::from(2)) {
        return Ok(-1);
    }
    let pos = list.position_of(t).ok_or_else(|| not_found(t, list))? as i64 + conv.shift();
    let lr = if pos.rem_euclid(2) == 0 { 1 } else { -1 };
    let ps = if pos.rem_euclid(3) == 0 { -1 } else { 1 };
    Ok(lr * ps)
}

fn startup(t: &OrderedTriplet) -> Option<(SquarePair, SquarePair)> {
    let p = SquarePair::from_ints;
    if t.is_singular() {
        if t.region() == &BigInt::from(1) {
            Some((p(0, 1), p(1, 1)))
        } else {
            Some((p(1, 1), p(0, 1)))
        }
    } else if t.is_root() {
        Some((p(1, 2), p(0, 1)))
    } else {
        None
    }
}

/// Special square terms of `t` and of its sibling region `s = 3xz - R`.
pub fn q_decompose(t: &OrderedTriplet, list: &MarkovList) -> Result<(SquarePair, SquarePair)> {
    q_decompose_with(t, list, PositionConvention::default())
}

pub fn q_decompose_with(
    t: &OrderedTriplet,
    list: &MarkovList,
    conv: PositionConvention,
) -> Result<(SquarePair, SquarePair)> {
    // chain[i + 1] is the triplet whose region is the sibling number of chain[i]
    let mut chain = vec![t.clone()];
    let mut pairs = loop {
        let cur = chain.last().expect("chain is never empty");
        if let Some(p) = startup(cur) {
            break p;
        }
        let s = BigInt::from(3) * cur.x() * cur.z() - cur.region();
        let (ts, _) = list.triplet_by_region(&s)?;
        chain.push(ts.clone());
    };
    for cur in chain.iter().rev().skip(1) {
        let sibling = pairs.0;
        let region = solve_step(cur, &sibling, region_sign_with(cur, list, conv)?)?;
        pairs = (region, sibling);
    }
    Ok(pairs)
}

/// Solves `sg·(σs·Λ - Λs·σ) = min(x, z)`, `Λs·Λ + σs·σ = max(x, z)`.
fn solve_step(t: &OrderedTriplet, sib: &SquarePair, sign: i8) -> Result<SquarePair> {
    let sg = BigInt::from(sign);
    let (ss, ls) = (&sib.sigma, &sib.lambda);
    let (mn, mx) = (t.min_outer(), t.max_outer());
    let (a1, b1, a2, b2) = (-&sg * ls, &sg * ss, ss, ls);
    let det = &a1 * b2 - &b1 * a2;
    if det.is_zero() {
        return Err(Error::NonIntegralSolution(t.to_string()));
    }
    let sn = mn * b2 - &b1 * mx;
    let ln = &a1 * mx - a2 * mn;
    let (sigma, sr) = sn.div_rem(&det);
    let (lambda, lr) = ln.div_rem(&det);
    if !sr.is_zero() || !lr.is_zero() {
        return Err(Error::NonIntegralSolution(t.to_string()));
    }
    let pair = SquarePair::new(sigma, lambda);
    if &pair.target != t.region() {
        return Err(Error::DecompositionMismatch {
            sigma: pair.sigma.to_string(),
            lambda: pair.lambda.to_string(),
            target: t.region().to_string(),
        });
    }
    Ok(pair)
}

/// The four lists generating the special square terms along one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSquareLists {
    pub alpha: IntPair,
    pub beta: IntPair,
    pub gamma: IntPair,
    pub delta: IntPair,
}

pub fn edge_square_lists(
    first: &OrderedTriplet,
    second: &OrderedTriplet,
    list: &MarkovList,
) -> Result<EdgeSquareLists> {
    let (r1, s1) = q_decompose(first, list)?;
    let (r2, s2) = q_decompose(second, list)?;
    let sign = BigInt::from(region_sign(first, list)?);
    Ok(EdgeSquareLists {
        alpha: r1.pair(),
        beta: r2.pair(),
        gamma: (-&sign * &s1.lambda, &sign * &s1.sigma),
        delta: s2.pair(),
    })
}

/// Lists for one edge of `head`, built from its first two edge triplets.
pub fn edge_lists(head: &RegionHead, side: EdgeSide, list: &MarkovList) -> Result<EdgeSquareLists> {
    let first = edge_triplet(head, side, 1)?;
    let second = edge_triplet(head, side, 2)?;
    edge_square_lists(&first, &second, list)
}

fn combine(a: &IntPair, c: &IntPair, uk: &BigInt, ukm1: &BigInt) -> IntPair {
    (&a.0 * uk - &c.0 * ukm1, &a.1 * uk - &c.1 * ukm1)
}

fn lucas_step(lists: &EdgeSquareLists, r: &BigInt, odd: bool, k: i64) -> Result<IntPair> {
    let params = LucasParams::new(r.clone())?;
    let (uk, ukm1) = (params.u(k)?, params.u(k - 1)?);
    Ok(if odd {
        combine(&lists.alpha, &lists.gamma, &uk, &ukm1)
    } else {
        combine(&lists.beta, &lists.delta, &uk, &ukm1)
    })
}

/// `(σ, Λ)` of the `n`-th edge value. Odd `n` uses `(α, γ)`, even `n`
/// uses `(β, δ)`, both at Lucas index `k = ±ceil(|n| / 2)`.
pub fn k_sf(lists: &EdgeSquareLists, r: &BigInt, n: i64) -> Result<IntPair> {
    if n == 0 {
        return Err(Error::InvalidArgument("k_sf is undefined at n = 0".into()));
    }
    let k = n.signum() * ((n.abs() + 1) / 2);
    lucas_step(lists, r, n % 2 != 0, k)
}

/// Position-indexed pairs: `m >= 1` agrees with `k_sf(m)`, and `m = 0` is δ.
pub fn position_pair(lists: &EdgeSquareLists, r: &BigInt, m: u64) -> Result<IntPair> {
    let odd = m % 2 == 1;
    let k = m.div_ceil(2);
    lucas_step(lists, r, odd, k as i64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareGf {
    /// Coefficient `k` is `k_sf(2k + 1)`.
    pub odd: Vec<IntPair>,
    /// Coefficient `k` is `k_sf(2k + 2)`.
    pub even: Vec<IntPair>,
}

pub fn k_gf_coefficients(lists: &EdgeSquareLists, r: &BigInt, count: usize) -> Result<SquareGf> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be >= 1".into()));
    }
    let p = LucasParams::new(r.clone())?.p();
    let stream = |a: &IntPair, c: &IntPair| -> Vec<IntPair> {
        let s = rational_series(&a.0, &-&c.0, &p, count);
        let l = rational_series(&a.1, &-&c.1, &p, count);
        s.into_iter().zip(l).collect()
    };
    Ok(SquareGf {
        odd: stream(&lists.alpha, &lists.gamma),
        even: stream(&lists.beta, &lists.delta),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BrahmaguptaVerdict {
    /// `R·s = x² + z²` and the sibling pair decomposes `s`.
    pub outer_sum: bool,
    /// Product of the two sums of squares equals the composed sum.
    pub identity: bool,
    /// The composed terms are `min(x, z)` and `max(x, z)` up to sign.
    pub cross_terms: bool,
}

impl BrahmaguptaVerdict {
    pub fn ok(&self) -> bool {
        self.outer_sum && self.identity && self.cross_terms
    }
}

pub fn brahmagupta_check(
    t: &OrderedTriplet,
    pairs: &(SquarePair, SquarePair),
) -> BrahmaguptaVerdict {
    let (reg, sib) = pairs;
    let (x, r, z) = (t.x(), t.region(), t.z());
    let s = BigInt::from(3) * x * z - r;
    let outer_sum = r * &s == x * x + z * z && sib.target == s;
    let plus = &sib.lambda * &reg.lambda + &sib.sigma * &reg.sigma;
    let minus = &sib.sigma * &reg.lambda - &sib.lambda * &reg.sigma;
    let identity = &reg.target * &sib.target == &plus * &plus + &minus * &minus;
    let cross_terms = &plus == t.max_outer() && &minus.abs() == t.min_outer();
    BrahmaguptaVerdict {
        outer_sum,
        identity,
        cross_terms,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stream {
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    Sigma,
    Lambda,
    /// Period of the `(σ, Λ)` pair.
    Pair,
}

fn stream_seed(lists: &EdgeSquareLists, stream: Stream) -> (&IntPair, &IntPair) {
    match stream {
        Stream::Odd => (&lists.alpha, &lists.gamma),
        Stream::Even => (&lists.beta, &lists.delta),
    }
}

fn digits_modulus(d: u32, max: u32) -> Result<u64> {
    if d == 0 || d > max {
        return Err(Error::InvalidArgument(format!(
            "digits {d} outside 1..={max}"
        )));
    }
    Ok(10u64.pow(d))
}

/// Minimal period mod `10^d` of one square-term stream, indexed by its
/// Lucas index.
pub fn square_cycle_length(
    lists: &EdgeSquareLists,
    r: &BigInt,
    d: u32,
    stream: Stream,
    component: Component,
) -> Result<u64> {
    let m = digits_modulus(d, 4)?;
    let p = mod_u64(&(BigInt::from(3) * r), m);
    let (a, c) = stream_seed(lists, stream);
    // the stream at Lucas index 0 is c, at index 1 it is a
    let sigma = || kernel_period(mod_u64(&c.0, m), mod_u64(&a.0, m), p, m);
    let lambda = || kernel_period(mod_u64(&c.1, m), mod_u64(&a.1, m), p, m);
    Ok(match component {
        Component::Sigma => sigma(),
        Component::Lambda => lambda(),
        Component::Pair => sigma().lcm(&lambda()),
    })
}

/// Position-indexed `(σ, Λ)` residues mod `m` for positions `0..count`.
fn position_residues(lists: &EdgeSquareLists, r: &BigInt, m: u64, count: usize) -> Vec<(u64, u64)> {
    let p = mod_u64(&(BigInt::from(3) * r), m);
    let terms = count / 2 + 2;
    let stream = |a: &IntPair, c: &IntPair| {
        let s = kernel_terms(mod_u64(&c.0, m), mod_u64(&a.0, m), p, m, terms);
        let l = kernel_terms(mod_u64(&c.1, m), mod_u64(&a.1, m), p, m, terms);
        (s, l)
    };
    let (os, ol) = stream(&lists.alpha, &lists.gamma);
    let (es, el) = stream(&lists.beta, &lists.delta);
    (0..count)
        .map(|i| {
            if i % 2 == 1 {
                let k = i.div_ceil(2);
                (os[k], ol[k])
            } else {
                (es[i / 2], el[i / 2])
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarePalindrome {
    pub head: OrderedTriplet,
    pub digits: u32,
    /// Number of positions checked: twice the joint period of all streams.
    pub period: u64,
    pub sign_left: i8,
    pub sign_right: i8,
    /// Left pairs at positions `0..5`.
    pub left_start: Vec<(u64, u64)>,
    /// Right pairs at positions `period - 5..period`.
    pub right_end: Vec<(u64, u64)>,
    /// Positions where the mirrored identity failed.
    pub mismatches: Vec<u64>,
}

impl SquarePalindrome {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks that the right-edge square cycle is the left-edge cycle read
/// backwards with `σ` and `Λ` interchanged and one of them complemented.
pub fn square_palindrome_check(
    head: &RegionHead,
    list: &MarkovList,
    d: u32,
) -> Result<SquarePalindrome> {
    if head.is_singular() {
        return Err(Error::SingularTriplet(head.to_string()));
    }
    let m = digits_modulus(d, 3)?;
    let r = head.region();
    let ll = edge_lists(head, EdgeSide::Left, list)?;
    let rl = edge_lists(head, EdgeSide::Right, list)?;
    let mut joint = 1u64;
    for lists in [&ll, &rl] {
        for stream in [Stream::Odd, Stream::Even] {
            joint = joint.lcm(&square_cycle_length(lists, r, d, stream, Component::Pair)?);
        }
    }
    let period = 2 * joint;
    let sign_left = region_sign(&edge_triplet(head, EdgeSide::Left, 1)?, list)?;
    let sign_right = region_sign(&edge_triplet(head, EdgeSide::Right, 1)?, list)?;
    let left = position_residues(&ll, r, m, period as usize);
    let right = position_residues(&rl, r, m, period as usize);
    let signed = |e: i8, v: u64| if e > 0 { v } else { (m - v) % m };
    let mismatches = (0..period)
        .filter(|&i| {
            let e = if i % 2 == 1 { sign_left } else { -sign_right };
            let (ls, ll_) = left[i as usize];
            let want = (signed(e, ll_), signed(-e, ls));
            right[(period - 1 - i) as usize] != want
        })
        .collect();
    let n = period as usize;
    Ok(SquarePalindrome {
        head: head.triplet().clone(),
        digits: d,
        period,
        sign_left,
        sign_right,
        left_start: left[..5.min(n)].to_vec(),
        right_end: right[n.saturating_sub(5)..].to_vec(),
        mismatches,
    })
}

/// One negative-index wraparound comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WraparoundCheck {
    /// Side whose negative index is evaluated.
    pub side: EdgeSide,
    pub n: i64,
    /// Holds with the fixed rotation `(σ, Λ) -> (-Λ, σ)` (left) or
    /// `(Λ, -σ)` (right).
    pub literal: bool,
    /// Holds once the rotation is scaled by the head's edge signs.
    pub signed: bool,
}

/// Compares `k_sf(side, -n)` with the rotated `k_sf(other side, n ± 1)`
/// for `1 <= n <= n_max`.
pub fn wraparound_checks(
    head: &RegionHead,
    list: &MarkovList,
    n_max: i64,
) -> Result<Vec<WraparoundCheck>> {
    if head.is_singular() {
        return Err(Error::SingularTriplet(head.to_string()));
    }
    let r = head.region();
    let ll = edge_lists(head, EdgeSide::Left, list)?;
    let rl = edge_lists(head, EdgeSide::Right, list)?;
    let sl = region_sign(&edge_triplet(head, EdgeSide::Left, 1)?, list)?;
    let sr = region_sign(&edge_triplet(head, EdgeSide::Right, 1)?, list)?;
    let mut out = Vec::new();
    for n in 1..=n_max {
        let partner = if n % 2 == 1 { n + 1 } else { n - 1 };
        for side in [EdgeSide::Left, EdgeSide::Right] {
            let (own, other) = match side {
                EdgeSide::Left => (&ll, &rl),
                EdgeSide::Right => (&rl, &ll),
            };
            let got = k_sf(own, r, -n)?;
            let (s, l) = k_sf(other, r, partner)?;
            let (rotated, c) = match side {
                EdgeSide::Left => ((-l, s), if n % 2 == 1 { sl } else { -sr }),
                EdgeSide::Right => ((l, -s), if n % 2 == 1 { -sr } else { sl }),
            };
            let scaled = if c > 0 {
                rotated.clone()
            } else {
                (-&rotated.0, -&rotated.1)
            };
            out.push(WraparoundCheck {
                side,
                n,
                literal: got == rotated,
                signed: got == scaled,
            });
        }
    }
    Ok(out)
}

/// `(n, σ, Λ)` for `1 <= n <= n_max`.
pub fn square_series(
    lists: &EdgeSquareLists,
    r: &BigInt,
    n_max: i64,
) -> Result<Vec<(i64, BigInt, BigInt)>> {
    (1..=n_max)
        .map(|n| k_sf(lists, r, n).map(|(s, l)| (n, s, l)))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct OscillationReport {
    pub n_max: i64,
    /// Larger of the two parity-stream estimates of `Λ/σ`.
    pub upper: BigRational,
    pub lower: BigRational,
    /// `upper / lower`.
    pub spread: BigRational,
    pub upper_f64: f64,
    pub lower_f64: f64,
    pub spread_f64: f64,
}

/// Accumulation values of `Λ/σ` along an edge, one per index parity,
/// estimated by the last term of each parity up to `n_max`.
pub fn oscillation_ratio(
    lists: &EdgeSquareLists,
    r: &BigInt,
    n_max: i64,
) -> Result<OscillationReport> {
    if n_max < 8 {
        return Err(Error::InvalidArgument(format!(
            "n_max {n_max} must be >= 8"
        )));
    }
    let mut last: [Option<BigRational>; 2] = [None, None];
    for (n, s, l) in square_series(lists, r, n_max)? {
        if !s.is_zero() {
            last[(n % 2) as usize] = Some(BigRational::new(l, s));
        }
    }
    let [Some(even), Some(odd)] = last else {
        return Err(Error::DivisionByZero(
            "a parity stream has σ = 0 throughout".into(),
        ));
    };
    let (upper, lower) = if odd >= even {
        (odd, even)
    } else {
        (even, odd)
    };
    if lower.is_zero() {
        return Err(Error::DivisionByZero(
            "lower accumulation value is 0".into(),
        ));
    }
    let spread = &upper / &lower;
    let f = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
    Ok(OscillationReport {
        n_max,
        upper_f64: f(&upper),
        lower_f64: f(&lower),
        spread_f64: f(&spread),
        upper,
        lower,
        spread,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Budget;
    use crate::markov_tree::enumerate;

    fn t(x: u64, r: u64, z: u64) -> OrderedTriplet {
        OrderedTriplet::from_u64(x, r, z).unwrap()
    }

    fn h(x: u64, r: u64, z: u64) -> RegionHead {
        RegionHead::new(t(x, r, z)).unwrap()
    }

    fn p(a: i64, b: i64) -> IntPair {
        (a.into(), b.into())
    }

    fn big(v: u64) -> BigInt {
        BigInt::from(v)
    }

    fn list(depth: usize) -> MarkovList {
        enumerate(depth, &Budget::default()).unwrap()
    }

    #[test]
    fn startup_and_recursion() {
        let ml = list(8);
        let q = |x, r, z| {
            let (a, b) = q_decompose(&t(x, r, z), &ml).unwrap();
            (a.pair(), b.pair())
        };
        assert_eq!(q(1, 1, 1), (p(0, 1), p(1, 1)));
        assert_eq!(q(1, 5, 2), (p(1, 2), p(0, 1)));
        assert_eq!(q(1, 13, 5), (p(2, 3), p(1, 1)));
        assert_eq!(q(1, 233, 89), (p(8, 13), p(3, 5)));
        assert_eq!(q(5, 433, 29).0, p(12, 17));
        assert_eq!(q(43261, 646018, 5).0, p(463, 657));
    }

    #[test]
    fn signs() {
        let ml = list(3);
        assert_eq!(region_sign(&t(1, 2, 1), &ml).unwrap(), -1);
        assert_eq!(region_sign(&t(1, 5, 2), &ml).unwrap(), -1);
        assert_eq!(region_sign(&t(1, 13, 5), &ml).unwrap(), 1);
        assert_eq!(region_sign(&t(5, 29, 2), &ml).unwrap(), -1);
        assert!(region_sign(&t(1, 89, 34), &ml).is_err());
    }

    #[test]
    fn other_conventions_break() {
        let ml = list(8);
        let tr = t(5, 433, 29);
        for conv in &PositionConvention::ALL[1..] {
            let r = q_decompose_with(&tr, &ml, *conv);
            assert!(
                r.map(|(a, _)| a.pair() != p(12, 17)).unwrap_or(true),
                "{conv:?}"
            );
        }
    }

    #[test]
    fn decomposition_through_depth_five() {
        let ml = list(6);
        for tr in ml
            .iter()
            .filter(|tr| ml.depth_at(ml.position_of(tr).unwrap()).unwrap() <= 5)
        {
            let pairs = q_decompose(tr, &ml).unwrap();
            assert_eq!(&pairs.0.target, tr.region());
            assert!(pairs.0.is_canonical(), "{tr}");
            assert!(brahmagupta_check(tr, &pairs).ok(), "{tr}");
        }
    }

    #[test]
    fn region_five_lists() {
        let ml = list(6);
        let l = edge_lists(&h(1, 5, 2), EdgeSide::Left, &ml).unwrap();
        assert_eq!(
            (l.alpha, l.beta, l.gamma, l.delta),
            (p(2, 3), p(5, 13), p(-1, 1), p(0, 1))
        );
        let r = edge_lists(&h(1, 5, 2), EdgeSide::Right, &ml).unwrap();
        assert_eq!(
            (r.alpha, r.beta, r.gamma, r.delta),
            (p(2, 5), p(12, 17), p(1, 0), p(1, 1))
        );
        let l = edge_lists(&h(29, 169, 2), EdgeSide::Left, &ml).unwrap();
        assert_eq!(
            (l.alpha, l.beta, l.gamma, l.delta),
            (p(70, 99), p(1043, 2523), p(-1, 1), p(2, 5))
        );
    }

    #[test]
    fn sequence_function() {
        let ml = list(6);
        let head = h(1, 5, 2);
        let l = edge_lists(&head, EdgeSide::Left, &ml).unwrap();
        let r = edge_lists(&head, EdgeSide::Right, &ml).unwrap();
        let five = big(5);
        assert_eq!(k_sf(&l, &five, 3).unwrap(), p(31, 44));
        assert_eq!(k_sf(&r, &five, 5).unwrap(), p(433, 1120));
        assert_eq!(k_sf(&l, &five, -1).unwrap(), p(-17, 12));
        assert_eq!(k_sf(&r, &five, -6).unwrap(), p(657, -463));
        assert!(k_sf(&l, &five, 0).is_err());
        assert_eq!(position_pair(&l, &five, 0).unwrap(), p(0, 1));
        for n in 1..=12 {
            let (s, lam) = k_sf(&l, &five, n).unwrap();
            let e = edge_triplet(&head, EdgeSide::Left, n).unwrap();
            assert_eq!(&s * &s + &lam * &lam, *e.region());
            assert!(!s.is_negative() && s <= lam);
            let (ns, nl) = k_sf(&l, &five, -n).unwrap();
            let partner = if n % 2 == 1 { n + 1 } else { n - 1 };
            let back = crate::edge::edge_region_number(&head, EdgeSide::Right, partner).unwrap();
            assert_eq!(&ns * &ns + &nl * &nl, back);
        }
    }

    #[test]
    fn generating_functions() {
        let ml = list(6);
        let l = edge_lists(&h(1, 5, 2), EdgeSide::Left, &ml).unwrap();
        let g = k_gf_coefficients(&l, &big(5), 6).unwrap();
        assert_eq!(g.odd[..3], [p(2, 3), p(31, 44), p(463, 657)]);
        assert_eq!(g.even[0], p(5, 13));
        for k in 0..6 {
            assert_eq!(g.odd[k], k_sf(&l, &big(5), 2 * k as i64 + 1).unwrap());
            assert_eq!(g.even[k], k_sf(&l, &big(5), 2 * k as i64 + 2).unwrap());
        }
    }

    #[test]
    fn brahmagupta_examples() {
        let ml = list(4);
        for tr in [t(1, 5, 2), t(1, 13, 5), t(5, 433, 29)] {
            let v = brahmagupta_check(&tr, &q_decompose(&tr, &ml).unwrap());
            assert!(v.ok(), "{tr}");
        }
        let bad = (SquarePair::from_ints(1, 3), SquarePair::from_ints(1, 1));
        assert!(!brahmagupta_check(&t(1, 13, 5), &bad).ok());
    }

    #[test]
    fn cycle_lengths() {
        let ml = list(6);
        let l = edge_lists(&h(1, 5, 2), EdgeSide::Left, &ml).unwrap();
        for stream in [Stream::Odd, Stream::Even] {
            assert_eq!(
                square_cycle_length(&l, &big(5), 1, stream, Component::Pair).unwrap(),
                12
            );
        }
        // a single component can repeat sooner than the pair
        assert_eq!(
            square_cycle_length(&l, &big(5), 1, Stream::Even, Component::Sigma).unwrap(),
            3
        );
        let l = edge_lists(&h(1, 13, 5), EdgeSide::Left, &ml).unwrap();
        assert_eq!(
            square_cycle_length(&l, &big(13), 2, Stream::Odd, Component::Pair).unwrap(),
            15
        );
        let f = edge_lists(&h(1, 1, 1), EdgeSide::Right, &ml).unwrap();
        assert_eq!(
            square_cycle_length(&f, &big(1), 1, Stream::Even, Component::Pair).unwrap(),
            30
        );
        assert!(square_cycle_length(&f, &big(1), 5, Stream::Odd, Component::Sigma).is_err());
    }

    #[test]
    fn palindromes() {
        let ml = list(6);
        let v = square_palindrome_check(&h(1, 5, 2), &ml, 2).unwrap();
        assert!(v.ok());
        assert_eq!(
            v.left_start,
            vec![(0, 1), (2, 3), (5, 13), (31, 44), (75, 94)]
        );
        assert_eq!(v.right_end[3..], [(3, 98), (1, 0)]);
        assert!(square_palindrome_check(&h(1, 5, 2), &ml, 1).unwrap().ok());
        assert!(square_palindrome_check(&h(1, 13, 5), &ml, 2).unwrap().ok());
        assert!(square_palindrome_check(&h(1, 1, 1), &ml, 1).is_err());
    }

    #[test]
    fn wraparound() {
        let ml = list(6);
        let checks = wraparound_checks(&h(1, 5, 2), &ml, 6).unwrap();
        assert!(checks.iter().all(|c| c.literal && c.signed));
        for head in [h(1, 13, 5), h(5, 29, 2), h(13, 194, 5)] {
            let checks = wraparound_checks(&head, &ml, 6).unwrap();
            assert!(checks.iter().all(|c| c.signed), "{head}");
            assert!(checks.iter().any(|c| !c.literal), "{head}");
        }
    }

    #[test]
    fn oscillation() {
        let ml = list(4);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let f = edge_lists(&h(1, 1, 1), EdgeSide::Right, &ml).unwrap();
        let o = oscillation_ratio(&f, &big(1), 30).unwrap();
        assert!((o.upper_f64 - phi).abs() < 1e-6 && (o.lower_f64 - phi).abs() < 1e-6);
        assert!((o.spread_f64 - 1.0).abs() < 1e-6);
        let silver = 1.0 + 2f64.sqrt();
        let pl = edge_lists(&h(1, 2, 1), EdgeSide::Left, &ml).unwrap();
        let o = oscillation_ratio(&pl, &big(2), 30).unwrap();
        assert!((o.upper_f64 - silver).abs() < 1e-6 && (o.lower_f64 - silver).abs() < 1e-6);
        let l5 = edge_lists(&h(1, 5, 2), EdgeSide::Left, &ml).unwrap();
        let a = oscillation_ratio(&l5, &big(5), 28).unwrap();
        let b = oscillation_ratio(&l5, &big(5), 30).unwrap();
        assert!((a.spread_f64 - b.spread_f64).abs() < 1e-6);
        assert!(b.spread_f64 > 1.5);
        assert!(oscillation_ratio(&l5, &big(5), 4).is_err());
    }
}
