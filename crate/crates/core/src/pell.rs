//! The Pell equation `K^2 - D·J^2 = -(2R)^2` with `D = 9R^2 - 4`.
//!
//! [`solve_pell_brute`] is an independent exhaustive search over `J`; it
//! never consults the tree. [`generate_solutions`] walks the solutions
//! reachable from a triplet by the half-integer unit `(3R + sqrt(D)) / 2`.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Budget, Error, Result};
use crate::lucas::LucasParams;
use crate::markov_tree::{region_u64, MarkovList, OrderedTriplet};
use crate::parallel::{map_ordered, ExecMode};

pub fn discriminant(r: &BigInt) -> BigInt {
    BigInt::from(9) * r * r - 4
}

/// `K^2 - D(R)·J^2`.
pub fn pell_residual(k: &BigInt, j: &BigInt, r: &BigInt) -> BigInt {
    k * k - discriminant(r) * j * j
}

/// Bounds above which the wheel replaces a plain scan.
const DIRECT_SCAN_LIMIT: u64 = 1 << 22;
const WHEEL_MODULI: [u64; 9] = [16, 9, 5, 7, 11, 13, 17, 19, 23];
const WHEEL_CAP: usize = 1 << 21;
/// Primes sieved over cycle indices once the wheel is fixed.
const SIEVE_PRIMES: [u64; 16] = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61];
const BLOCK_WORDS: usize = 16;

/// Shared per-R state of a search.
struct Problem {
    d: u128,
    four_r2: u128,
}

impl Problem {
    fn new(r: u64, j_bound: u64) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument("R must be >= 1".into()));
        }
        let r = r as u128;
        let d = r
            .checked_mul(r)
            .and_then(|r2| r2.checked_mul(9))
            .map(|v| v - 4)
            .ok_or_else(overflow)?;
        let jb = j_bound as u128;
        // D·J^2 must fit with headroom for the subtraction.
        jb.checked_mul(jb)
            .and_then(|j2| j2.checked_mul(d))
            .filter(|v| *v < 1u128 << 126)
            .ok_or_else(overflow)?;
        Ok(Problem {
            d,
            four_r2: 4 * r * r,
        })
    }

    fn is_solution(&self, j: u64) -> bool {
        let j = j as u128;
        let lhs = self.d * j * j;
        if lhs < self.four_r2 {
            return false;
        }
        let v = lhs - self.four_r2;
        // Squares mod 64 occupy 12 of 64 classes.
        if (0x0202_0212_0203_0213u64 >> (v & 63)) & 1 == 0 {
            return false;
        }
        let s = v.isqrt();
        s * s == v
    }

    /// Residues `j mod q` for which `D·j^2 - 4R^2` is a square mod `q`.
    fn admissible(&self, q: u64) -> Vec<bool> {
        let q128 = q as u128;
        let mut square = vec![false; q as usize];
        for v in 0..q128 {
            square[(v * v % q128) as usize] = true;
        }
        let d = self.d % q128;
        let c = self.four_r2 % q128;
        (0..q128)
            .map(|j| square[((d * (j * j % q128) % q128 + q128 - c) % q128) as usize])
            .collect()
    }
}

fn overflow() -> Error {
    Error::ResourceLimit("D·J^2 exceeds 126 bits; lower the bound".into())
}

/// Every `J` in `[1, j_bound]` with `D(R)·J^2 - 4R^2` a perfect square.
pub fn solve_pell_brute(r: u64, j_bound: u64) -> Result<Vec<u64>> {
    solve_pell_brute_with(r, j_bound, ExecMode::default())
}

pub fn solve_pell_brute_with(r: u64, j_bound: u64, mode: ExecMode) -> Result<Vec<u64>> {
    if j_bound <= DIRECT_SCAN_LIMIT {
        return solve_pell_direct(r, j_bound);
    }
    let problem = Problem::new(r, j_bound)?;
    let wheel = Wheel::build(&problem, j_bound);
    Ok(wheel.search(&problem, j_bound, mode))
}

/// Plain scan of every `J`; the reference the wheel is tested against.
pub fn solve_pell_direct(r: u64, j_bound: u64) -> Result<Vec<u64>> {
    let problem = Problem::new(r, j_bound)?;
    Ok((1..=j_bound).filter(|&j| problem.is_solution(j)).collect())
}

/// Bit patterns over a block of cycle indices: row `k` marks the offsets
/// `u` with `(k + modulus·u) mod p` admissible.
struct SievePrime {
    p: u64,
    step: u64,
    rows: Vec<u64>,
}

/// `J = r + modulus·t` for admissible residues `r`; the cycle index `t` is
/// then sieved by further primes before the exact square test.
struct Wheel {
    modulus: u64,
    residues: Vec<u64>,
    sieve: Vec<SievePrime>,
    words: usize,
}

impl Wheel {
    fn build(problem: &Problem, j_bound: u64) -> Self {
        let mut residues: Vec<u64> = vec![0];
        let mut modulus = 1u64;
        let mut tables: Vec<(u64, Vec<bool>)> = WHEEL_MODULI
            .iter()
            .map(|&q| (q, problem.admissible(q)))
            .collect();
        // Sparsest moduli first.
        tables.sort_by(|a, b| {
            let fa = a.1.iter().filter(|&&x| x).count() as f64 / a.0 as f64;
            let fb = b.1.iter().filter(|&&x| x).count() as f64 / b.0 as f64;
            fa.total_cmp(&fb).then(a.0.cmp(&b.0))
        });
        for (q, table) in &tables {
            let count = table.iter().filter(|&&x| x).count();
            if residues.len() * count > WHEEL_CAP || modulus > j_bound {
                continue;
            }
            let mut next = Vec::with_capacity(residues.len() * count);
            for t in 0..*q {
                for &r in &residues {
                    let v = r + modulus * t;
                    if table[(v % q) as usize] {
                        next.push(v);
                    }
                }
            }
            residues = next;
            modulus *= q;
        }
        residues.sort_unstable();
        let cycles = j_bound / modulus + 1;
        let words = (cycles.div_ceil(64) as usize).min(BLOCK_WORDS);
        let sieve = SIEVE_PRIMES
            .iter()
            .filter(|&&p| !modulus.is_multiple_of(p))
            .filter_map(|&p| {
                let admissible = problem.admissible(p);
                if admissible.iter().all(|&a| a) {
                    return None;
                }
                let step = modulus % p;
                let mut rows = vec![0u64; p as usize * words];
                for k in 0..p {
                    let row = &mut rows[k as usize * words..(k as usize + 1) * words];
                    for u in 0..(words * 64) as u64 {
                        if admissible[((k + step * (u % p)) % p) as usize] {
                            row[(u / 64) as usize] |= 1 << (u % 64);
                        }
                    }
                }
                Some(SievePrime { p, step, rows })
            })
            .collect();
        Wheel {
            modulus,
            residues,
            sieve,
            words,
        }
    }

    fn scan(&self, problem: &Problem, residues: &[u64], j_bound: u64) -> Vec<u64> {
        let block = (self.words * 64) as u64;
        let cycles = j_bound / self.modulus + 1;
        let mut out = Vec::new();
        let mut mask = vec![0u64; self.words];
        for &r in residues {
            let mut t0 = 0;
            while t0 < cycles {
                mask.fill(!0);
                for sp in &self.sieve {
                    let k = (r % sp.p + sp.step * (t0 % sp.p)) % sp.p;
                    let row = &sp.rows[k as usize * self.words..(k as usize + 1) * self.words];
                    for (m, w) in mask.iter_mut().zip(row) {
                        *m &= w;
                    }
                }
                for (wi, &word) in mask.iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        let u = wi as u64 * 64 + bits.trailing_zeros() as u64;
                        bits &= bits - 1;
                        let j = r + self.modulus * (t0 + u);
                        if j != 0 && j <= j_bound && problem.is_solution(j) {
                            out.push(j);
                        }
                    }
                }
                t0 += block;
            }
        }
        out
    }

    fn search(&self, problem: &Problem, j_bound: u64, mode: ExecMode) -> Vec<u64> {
        let chunks: Vec<&[u64]> = self.residues.chunks(4096).collect();
        let mut found: Vec<u64> = map_ordered(mode, &chunks, |c| self.scan(problem, c, j_bound))
            .into_iter()
            .flatten()
            .collect();
        found.sort_unstable();
        found
    }
}

/// One solution `(K, J)` of the Pell equation for region `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub k: BigInt,
    pub j: BigInt,
    pub r: BigInt,
}

impl PellSolution {
    pub fn residual(&self) -> BigInt {
        pell_residual(&self.k, &self.j, &self.r)
    }
}

/// The first `m_count` solutions reached from the baseline
/// `(seq_v(x, R, z, 1), seq_u(x, R, z, 1))` by repeated multiplication with
/// the half-integer unit.
pub fn generate_solutions(
    head: &OrderedTriplet,
    m_count: usize,
    budget: &Budget,
) -> Result<Vec<PellSolution>> {
    if !head.satisfies_markov() {
        return Err(Error::InvalidTriplet(head.to_string()));
    }
    let r = head.region().clone();
    let params = LucasParams::with_budget(r.clone(), *budget)?;
    let p = params.p();
    let d = discriminant(&r);
    let mut x = params.seq_v(head.x(), head.z(), 1)?;
    let mut y = params.seq_u(head.x(), head.z(), 1)?;
    let mut out = Vec::with_capacity(m_count);
    for m in 0..m_count {
        if m > 0 {
            let (nx, rx) = (&p * &x + &d * &y).div_rem(&BigInt::from(2));
            let (ny, ry) = (&x + &p * &y).div_rem(&BigInt::from(2));
            if rx != BigInt::ZERO || ry != BigInt::ZERO {
                return Err(Error::NonIntegralStep(m));
            }
            budget.check_value(&nx)?;
            x = nx;
            y = ny;
        }
        out.push(PellSolution {
            k: x.clone(),
            j: y.clone(),
            r: r.clone(),
        });
    }
    Ok(out)
}

/// How far `uniqueness_check` searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundPolicy {
    /// `2·max(x, z)` of the stored triplet.
    #[default]
    TwiceMax,
    Fixed(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessReport {
    pub region: u64,
    pub triplet: OrderedTriplet,
    pub bound: u64,
    /// Smallest brute-force solutions, as many as `expected` has members.
    pub smallest: Vec<u64>,
    /// Distinct outer members of the stored triplet, ascending.
    pub expected: Vec<u64>,
    pub ok: bool,
}

/// Compares the smallest brute-force Pell solutions for `R` with the outer
/// members of the triplet the tree assigns to `R`.
pub fn uniqueness_check(
    r: &BigInt,
    list: &MarkovList,
    policy: BoundPolicy,
) -> Result<UniquenessReport> {
    uniqueness_check_with(r, list, policy, ExecMode::default())
}

pub fn uniqueness_check_with(
    r: &BigInt,
    list: &MarkovList,
    policy: BoundPolicy,
    mode: ExecMode,
) -> Result<UniquenessReport> {
    let (triplet, _) = list.triplet_by_region(r)?;
    let region = region_u64(r)?;
    let outer = |v: &BigInt| region_u64(v);
    let mut expected = vec![outer(triplet.min_outer())?, outer(triplet.max_outer())?];
    expected.dedup();
    let bound = match policy {
        BoundPolicy::TwiceMax => expected[expected.len() - 1].saturating_mul(2),
        BoundPolicy::Fixed(b) => b,
    };
    let found = solve_pell_brute_with(region, bound, mode)?;
    if found.len() < expected.len() {
        return Err(Error::BoundTooSmall {
            region: r.to_string(),
            bound,
            found: found.len(),
            needed: expected.len(),
        });
    }
    let smallest = found[..expected.len()].to_vec();
    Ok(UniquenessReport {
        region,
        triplet: triplet.clone(),
        bound,
        ok: smallest == expected,
        smallest,
        expected,
    })
}

/// `J` values of the sequence `seq_u(x, R, z, n)` for `n` in `range`.
pub fn sequence_solutions(
    head: &OrderedTriplet,
    range: std::ops::RangeInclusive<i64>,
) -> Result<Vec<BigInt>> {
    let params = LucasParams::new(head.region().clone())?;
    range.map(|n| params.seq_u(head.x(), head.z(), n)).collect()
}
