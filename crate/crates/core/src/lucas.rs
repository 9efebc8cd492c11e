//! Lucas sequences `U_k(3R, 1)` and `V_k(3R, 1)` over all integer `k`, and
//! the shifted combinations that generate edge sequences.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Budget, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LucasParams {
    r: BigInt,
    budget: Budget,
}

impl LucasParams {
    pub fn new(r: BigInt) -> Result<Self> {
        Self::with_budget(r, Budget::default())
    }

    pub fn with_budget(r: BigInt, budget: Budget) -> Result<Self> {
        if r < BigInt::one() {
            return Err(Error::InvalidArgument(format!("R = {r} must be >= 1")));
        }
        Ok(LucasParams { r, budget })
    }

    pub fn region(&self) -> &BigInt {
        &self.r
    }

    /// `P = 3R`.
    pub fn p(&self) -> BigInt {
        BigInt::from(3) * &self.r
    }

    fn check(&self, k: &i64) -> Result<()> {
        let log_p = self.p().bits() as f64 * std::f64::consts::LOG10_2;
        self.budget.check_estimate(k.unsigned_abs() as f64 * log_p)
    }

    pub fn u(&self, k: i64) -> Result<BigInt> {
        self.check(&k)?;
        Ok(u_fast(&self.p(), k))
    }

    pub fn v(&self, k: i64) -> Result<BigInt> {
        self.check(&k)?;
        Ok(v_fast(&self.p(), k))
    }

    /// `b·U_n - a·U_{n-1}`.
    pub fn seq_u(&self, a: &BigInt, b: &BigInt, n: i64) -> Result<BigInt> {
        self.check(&n)?;
        let p = self.p();
        let (prev, cur) = u_pair(&p, n);
        Ok(b * cur - a * prev)
    }

    /// `z·V_n - x·V_{n-1}`.
    pub fn seq_v(&self, x: &BigInt, z: &BigInt, n: i64) -> Result<BigInt> {
        self.check(&n)?;
        let p = self.p();
        Ok(z * v_fast(&p, n) - x * v_fast(&p, n - 1))
    }
}

pub fn lucas_u(params: &LucasParams, k: i64) -> Result<BigInt> {
    params.u(k)
}

pub fn lucas_v(params: &LucasParams, k: i64) -> Result<BigInt> {
    params.v(k)
}

pub fn seq_u(a: &BigInt, r: &BigInt, b: &BigInt, n: i64) -> Result<BigInt> {
    LucasParams::new(r.clone())?.seq_u(a, b, n)
}

pub fn seq_v(x: &BigInt, r: &BigInt, z: &BigInt, n: i64) -> Result<BigInt> {
    LucasParams::new(r.clone())?.seq_v(x, z, n)
}

/// Reference implementation: runs the recurrence `|k|` times.
pub fn lucas_u_linear(p: &BigInt, k: i64) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..k.unsigned_abs() {
        let next = p * &b - &a;
        a = std::mem::replace(&mut b, next);
    }
    if k < 0 {
        -a
    } else {
        a
    }
}

pub fn lucas_v_linear(p: &BigInt, k: i64) -> BigInt {
    let (mut a, mut b) = (BigInt::from(2), p.clone());
    for _ in 0..k.unsigned_abs() {
        let next = p * &b - &a;
        a = std::mem::replace(&mut b, next);
    }
    a
}

type Mat = [[BigInt; 2]; 2];

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    [
        [
            &a[0][0] * &b[0][0] + &a[0][1] * &b[1][0],
            &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1],
        ],
        [
            &a[1][0] * &b[0][0] + &a[1][1] * &b[1][0],
            &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1],
        ],
    ]
}

/// `(U_{k-1}, U_k, U_{k+1})` for `k >= 0` from powers of `[[P, -1], [1, 0]]`.
fn u_triple(p: &BigInt, k: u64) -> (BigInt, BigInt, BigInt) {
    let mut result: Mat = [
        [BigInt::one(), BigInt::zero()],
        [BigInt::zero(), BigInt::one()],
    ];
    let mut base: Mat = [[p.clone(), -BigInt::one()], [BigInt::one(), BigInt::zero()]];
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base);
        }
    }
    let [[u_next, neg_u], [u, neg_prev]] = result;
    debug_assert_eq!(u, -neg_u);
    (-neg_prev, u, u_next)
}

fn u_fast(p: &BigInt, k: i64) -> BigInt {
    let (_, u, _) = u_triple(p, k.unsigned_abs());
    if k < 0 {
        -u
    } else {
        u
    }
}

fn v_fast(p: &BigInt, k: i64) -> BigInt {
    let (prev, _, next) = u_triple(p, k.unsigned_abs());
    next - prev
}

/// `(U_{n-1}, U_n)` for any integer `n`.
fn u_pair(p: &BigInt, n: i64) -> (BigInt, BigInt) {
    if n >= 1 {
        let (prev, u, _) = u_triple(p, n as u64);
        (prev, u)
    } else {
        // U_n = -U_{|n|}, U_{n-1} = -U_{|n|+1}
        let (_, u, next) = u_triple(p, n.unsigned_abs());
        (-next, -u)
    }
}

/// `(U_k mod m, U_{k+1} mod m)` for `k >= 0`, with `p` already reduced.
pub(crate) fn u_pair_mod(p: u64, k: u64, m: u64) -> (u64, u64) {
    let m128 = m as u128;
    let mul = |a: [[u128; 2]; 2], b: [[u128; 2]; 2]| {
        let mut c = [[0u128; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                c[i][j] = (a[i][0] * b[0][j] % m128 + a[i][1] * b[1][j] % m128) % m128;
            }
        }
        c
    };
    let mut result = [[1 % m128, 0], [0, 1 % m128]];
    let mut base = [[p as u128 % m128, (m128 - 1) % m128], [1 % m128, 0]];
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result = mul(result, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    (result[1][0] as u64, result[0][0] as u64)
}

/// Classical Fibonacci number `F_n` for `n >= 0`.
pub fn fibonacci(n: u64) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// Classical Lucas number `L_n` for `n >= 0`.
pub fn lucas_number(n: u64) -> BigInt {
    let (mut a, mut b) = (BigInt::from(2), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}
