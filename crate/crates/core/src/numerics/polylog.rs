//! Classical polylogarithms `Li_n` on the principal branch and the
//! single-valued combinations `L_n`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Q;

const MAX_BERNOULLI: usize = 160;
const EPS: f64 = 1e-17;

fn bernoulli_table() -> &'static [Q] {
    static TABLE: OnceLock<Vec<Q>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // sum_{k<m+1} C(m+1, k) B_k = 0, with B_1 = -1/2
        let mut b: Vec<Q> = vec![Q::one()];
        for m in 1..=MAX_BERNOULLI {
            let mut binom = Q::one();
            let mut acc = Q::zero();
            for (k, bk) in b.iter().enumerate() {
                acc += &binom * bk;
                binom = binom * Q::from_integer((m + 1 - k).into()) / Q::from_integer((k + 1).into());
            }
            b.push(-acc / Q::from_integer((m + 1).into()));
        }
        b
    })
}

/// Bernoulli number `B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Q {
    bernoulli_table()[n].clone()
}

fn bernoulli_f64(n: usize) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| bernoulli_table().iter().map(|b| b.to_f64().unwrap_or(f64::NAN)).collect())[n]
}

/// Bernoulli polynomial `B_n(x) = sum_k C(n,k) B_{n-k} x^k`.
pub fn bernoulli_poly(n: usize, x: Complex64) -> Complex64 {
    let mut acc = Complex64::zero();
    let mut binom = 1.0;
    let mut xk = Complex64::one();
    for k in 0..=n {
        acc += xk * binom * bernoulli_f64(n - k);
        binom = binom * (n - k) as f64 / (k + 1) as f64;
        xk *= x;
    }
    acc
}

/// `zeta(s)` at integers `s != 1`; negative and zero arguments through
/// Bernoulli numbers, `s >= 2` by Euler-Maclaurin summation.
pub fn zeta(s: i64) -> f64 {
    if s == 1 {
        return f64::INFINITY;
    }
    if s <= 0 {
        // zeta(-m) = (-1)^m B_{m+1} / (m+1)
        let m = (-s) as usize;
        let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
        return sign * bernoulli_f64(m + 1) / (m + 1) as f64;
    }
    let s = s as f64;
    let n = 12usize;
    let nf = n as f64;
    let mut acc: f64 = (1..n).map(|k| (k as f64).powf(-s)).sum();
    acc += nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s);
    // sum_j B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    for j in 1..=10usize {
        let term = bernoulli_f64(2 * j) / fact * rising * nf.powf(-s - 2.0 * j as f64 + 1.0);
        acc += term;
        rising *= (s + 2.0 * j as f64 - 1.0) * (s + 2.0 * j as f64);
        fact *= (2 * j + 1) as f64 * (2 * j + 2) as f64;
    }
    acc
}

fn harmonic(n: u32) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).sum()
}

fn series(n: u32, z: Complex64) -> Result<Complex64> {
    let mut acc = Complex64::zero();
    let mut zk = z;
    for k in 1..10_000u32 {
        let term = zk / (k as f64).powi(n as i32);
        acc += term;
        if term.norm() <= EPS * acc.norm().max(1e-300) {
            return Ok(acc);
        }
        zk *= z;
    }
    Err(Error::NoConvergence(format!("Li_{n}({z}) power series")))
}

/// Expansion around `z = 1` in `mu = log z`, valid for `|mu| < 2 pi`.
fn log_expansion(n: u32, z: Complex64) -> Result<Complex64> {
    let mu = z.ln();
    if mu.norm() >= 2.0 * PI {
        return Err(Error::NoConvergence(format!("Li_{n}({z}): |log z| too large")));
    }
    let mut acc = Complex64::zero();
    let mut muk = Complex64::one(); // mu^k / k!
    let mut small = 0;
    for k in 0..400u32 {
        if k > 0 {
            muk = muk * mu / k as f64;
        }
        let term = if k == n - 1 {
            if mu.is_zero() {
                Complex64::zero()
            } else {
                muk * (harmonic(n - 1) - (-mu).ln())
            }
        } else {
            muk * zeta(n as i64 - k as i64)
        };
        acc += term;
        if k > n && term.norm() <= EPS * acc.norm().max(1e-300) {
            // odd-index zeta values at negative even arguments vanish, so
            // require two small terms in a row
            small += 1;
            if small >= 2 {
                return Ok(acc);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NoConvergence(format!("Li_{n}({z}) log expansion")))
}

/// `Li_n(z)` for `n >= 0` on the principal branch (cut along `[1, inf)`).
pub fn polylog(n: u32, z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("Li_{n} at non-finite {z}")));
    }
    let one = Complex64::one();
    if n == 0 {
        if z == one {
            return Err(Error::Domain("Li_0 has a pole at 1".into()));
        }
        return Ok(z / (one - z));
    }
    if n == 1 {
        if z == one {
            return Err(Error::Domain("Li_1 has a pole at 1".into()));
        }
        return Ok(-(one - z).ln());
    }
    if z.is_zero() {
        return Ok(Complex64::zero());
    }
    if z == one {
        return Ok(Complex64::new(zeta(n as i64), 0.0));
    }
    let r = z.norm();
    if r <= 0.5 {
        return series(n, z);
    }
    if r >= 2.0 {
        // Li_n(z) + (-1)^n Li_n(1/z) = -(2 pi i)^n / n! B_n(1/2 + log(-z)/(2 pi i))
        let two_pi_i = Complex64::new(0.0, 2.0 * PI);
        let fact: f64 = (1..=n).map(|k| k as f64).product();
        let rhs = -two_pi_i.powu(n) / fact * bernoulli_poly(n as usize, 0.5 + (-z).ln() / two_pi_i);
        let inv = series(n, one / z)?;
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        return Ok(rhs - inv * sign);
    }
    log_expansion(n, z)
}

/// The single-valued polylogarithm: the real part (`n` odd) or imaginary
/// part (`n` even) of `sum_{r<n} 2^r B_r / r! Li_{n-r}(z) log^r |z|`.
pub fn single_valued_l(n: u32, z: Complex64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("L_n needs n >= 1".into()));
    }
    if z.is_zero() {
        return Ok(0.0);
    }
    let lz = z.norm().ln();
    let mut acc = Complex64::zero();
    let mut pow2 = 1.0;
    let mut fact = 1.0;
    let mut lr = 1.0;
    for r in 0..n {
        if r > 0 {
            pow2 *= 2.0;
            fact *= r as f64;
            lr *= lz;
        }
        let b = bernoulli_f64(r as usize);
        if b != 0.0 {
            acc += polylog(n - r, z)? * (pow2 * b / fact * lr);
        }
    }
    Ok(if n % 2 == 1 { acc.re } else { acc.im })
}
