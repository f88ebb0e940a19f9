//! Elementary integer arithmetic: valuations, p-free parts, totients,
//! multiplicative orders, divisors and invariant factors.
//!
//! Everything here works on `u64` and factors by trial division, which is
//! adequate for the desk-scale moduli handled by the rest of the crate.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Panics on overflow.
pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b)).checked_mul(b).expect("lcm overflow")
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d <= n / d {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= n / d {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Prime factorization of a 128-bit integer by trial division.
///
/// Only meant for the orders of the small fields used in verification; a
/// large prime cofactor makes this slow.
pub fn factorize_u128(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d <= n / d {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

fn check_args(m: u64, p: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::Zero);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Largest `j` with `p^j | m`.
pub fn p_adic_valuation(mut m: u64, p: u64) -> Result<u32> {
    check_args(m, p)?;
    let mut j = 0;
    while m % p == 0 {
        m /= p;
        j += 1;
    }
    Ok(j)
}

/// `m / p^{v_p(m)}`, the greatest divisor of `m` coprime to `p`.
pub fn p_free_part(mut m: u64, p: u64) -> Result<u64> {
    check_args(m, p)?;
    while m % p == 0 {
        m /= p;
    }
    Ok(m)
}

pub fn euler_phi(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::Zero);
    }
    Ok(factorize(m)
        .into_iter()
        .fold(1, |acc, (p, k)| acc * (p - 1) * p.pow(k - 1)))
}

/// Least `t >= 1` with `a^t = 1 mod m`. By convention `ord_1(a) = 1`.
pub fn multiplicative_order(a: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::Zero);
    }
    if m == 1 {
        return Ok(1);
    }
    if gcd(a % m, m) != 1 {
        return Err(Error::NotCoprime { a, m });
    }
    // The order divides phi(m); strip prime factors while the power stays 1.
    let mut t = euler_phi(m)?;
    for (l, _) in factorize(t) {
        while t % l == 0 && pow_mod(a, t / l, m) == 1 {
            t /= l;
        }
    }
    Ok(t)
}

/// All divisors of `m` in ascending order.
pub fn divisors(m: u64) -> Result<Vec<u64>> {
    if m == 0 {
        return Err(Error::Zero);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d <= m / d {
        if m % d == 0 {
            small.push(d);
            if d != m / d {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// The Cartesian product `Div_{m_1} x ... x Div_{m_n}` in lexicographic order.
pub fn divisor_tuples(m: &[u64]) -> Result<Vec<Vec<u64>>> {
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for &mi in m {
        let divs = divisors(mi)?;
        out = out
            .into_iter()
            .flat_map(|prefix| {
                divs.iter().map(move |&d| {
                    let mut t = prefix.clone();
                    t.push(d);
                    t
                })
            })
            .collect();
    }
    Ok(out)
}

/// Invariant-factor form `m_1 | m_2 | ... | m_k` of `Z_{o_1} x ... x Z_{o_n}`.
///
/// Factors equal to 1 are dropped unless the group is trivial, giving `[1]`.
pub fn invariant_factors(orders: &[u64]) -> Result<Vec<u64>> {
    if orders.is_empty() {
        return Err(Error::Empty);
    }
    if orders.contains(&0) {
        return Err(Error::Zero);
    }
    let mut f = orders.to_vec();
    // Pairwise (gcd, lcm) replacement preserves the group and terminates
    // once every earlier entry divides every later one.
    loop {
        let mut changed = false;
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                if f[j] % f[i] != 0 {
                    let g = gcd(f[i], f[j]);
                    let l = lcm(f[i], f[j]);
                    f[i] = g;
                    f[j] = l;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    f.retain(|&x| x != 1);
    if f.is_empty() {
        f.push(1);
    }
    Ok(f)
}

/// Splits a prime power `q = p^e` into `(p, e)`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q == 0 {
        return Err(Error::Zero);
    }
    let factors = factorize(q);
    match factors.as_slice() {
        [(p, e)] => Ok((*p, *e)),
        _ => Err(Error::NotPrimePower { q, factors }),
    }
}

/// The shape of a circulant ring `C_{m/F_q}` split into its `p`-parts and
/// `p`-free parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CirculantParams {
    m: Vec<u64>,
    p: u64,
    v: Vec<u32>,
    r: Vec<u64>,
}

impl CirculantParams {
    pub fn new(m: &[u64], p: u64) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::Empty);
        }
        let mut v = Vec::with_capacity(m.len());
        let mut r = Vec::with_capacity(m.len());
        for &mi in m {
            v.push(p_adic_valuation(mi, p)?);
            r.push(p_free_part(mi, p)?);
        }
        Ok(CirculantParams {
            m: m.to_vec(),
            p,
            v,
            r,
        })
    }

    pub fn m(&self) -> &[u64] {
        &self.m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `v_p(m_i)` for each coordinate.
    pub fn valuations(&self) -> &[u32] {
        &self.v
    }

    /// `r_p(m_i)` for each coordinate.
    pub fn p_free(&self) -> &[u64] {
        &self.r
    }

    /// `p^{v_p(m_i)}` for each coordinate.
    pub fn p_part(&self) -> Vec<u64> {
        self.v.iter().map(|&v| self.p.pow(v)).collect()
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    /// `prod m_i`, the dimension of the ring.
    pub fn dimension(&self) -> u64 {
        self.m.iter().product()
    }

    /// `prod r_i`, the dimension of the semisimple quotient.
    pub fn semisimple_dimension(&self) -> u64 {
        self.r.iter().product()
    }

    pub fn is_semisimple(&self) -> bool {
        self.v.iter().all(|&v| v == 0)
    }

    pub fn is_local(&self) -> bool {
        self.r.iter().all(|&r| r == 1)
    }

    /// Parameters of the semisimple quotient, `m` replaced by its p-free part.
    pub fn semisimple(&self) -> CirculantParams {
        CirculantParams {
            m: self.r.clone(),
            p: self.p,
            v: vec![0; self.r.len()],
            r: self.r.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn valuation_oracle(m: u64, p: u64) -> u32 {
        (0..64).take_while(|&j| p.checked_pow(j).map_or(false, |pj| m % pj == 0)).last().unwrap()
    }

    fn order_oracle(a: u64, m: u64) -> u64 {
        let mut x = a % m;
        let mut t = 1;
        while x != 1 % m {
            x = x * a % m;
            t += 1;
        }
        t
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(p_adic_valuation(8, 2), Ok(3));
        assert_eq!(p_adic_valuation(5, 2), Ok(0));
        assert_eq!(p_adic_valuation(360, 3), Ok(valuation_oracle(360, 3)));
        assert_eq!(valuation_oracle(360, 3), 2);
        assert_eq!(p_adic_valuation(0, 2), Err(Error::Zero));
        assert_eq!(p_adic_valuation(12, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn p_free_examples() {
        for l in 1..=3 {
            assert_eq!(p_free_part(1 << l, 2), Ok(1));
        }
        assert_eq!(p_free_part(5, 2), Ok(5));
        assert_eq!(p_free_part(12, 2), Ok(3));
        assert_eq!(p_free_part(0, 3), Err(Error::Zero));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(5), Ok(4));
        assert_eq!(euler_phi(1), Ok(1));
        let brute = (1..=25).filter(|&a| gcd(a, 25) == 1).count() as u64;
        assert_eq!(brute, 20);
        assert_eq!(euler_phi(25), Ok(brute));
        assert_eq!(euler_phi(0), Err(Error::Zero));
    }

    #[test]
    fn order_examples() {
        assert_eq!(multiplicative_order(2, 5), Ok(4));
        assert_eq!(multiplicative_order(2, 1), Ok(1));
        assert_eq!(order_oracle(2, 7), 3);
        assert_eq!(multiplicative_order(2, 7), Ok(3));
        assert_eq!(multiplicative_order(2, 6), Err(Error::NotCoprime { a: 2, m: 6 }));
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(5).unwrap(), vec![1, 5]);
        assert_eq!(divisors(1).unwrap(), vec![1]);
        let brute: Vec<u64> = (1..=12).filter(|d| 12 % d == 0).collect();
        assert_eq!(divisors(12).unwrap(), brute);
        assert_eq!(divisor_tuples(&[5, 5, 1]).unwrap().len(), 4);
    }

    /// Number of elements of each order in a product of cyclic groups.
    fn order_census(orders: &[u64]) -> Vec<(u64, usize)> {
        let total: u64 = orders.iter().product();
        let mut counts = alloc::collections::BTreeMap::new();
        for idx in 0..total {
            let mut rest = idx;
            let mut ord = 1;
            for &o in orders {
                let g = rest % o;
                rest /= o;
                ord = lcm(ord, o / gcd(g, o));
            }
            *counts.entry(ord).or_insert(0usize) += 1;
        }
        counts.into_iter().collect()
    }

    #[test]
    fn invariant_factor_examples() {
        assert_eq!(invariant_factors(&[2, 3]).unwrap(), vec![6]);
        assert_eq!(invariant_factors(&[4, 6]).unwrap(), vec![2, 12]);
        assert_eq!(order_census(&[4, 6]), order_census(&[2, 12]));
        assert_eq!(invariant_factors(&[5]).unwrap(), vec![5]);
        assert_eq!(invariant_factors(&[1, 1]).unwrap(), vec![1]);
        assert_eq!(invariant_factors(&[]), Err(Error::Empty));
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(9), Ok((3, 2)));
        assert_eq!(prime_power(2), Ok((2, 1)));
        assert!(matches!(prime_power(6), Err(Error::NotPrimePower { q: 6, .. })));
        assert_eq!(
            Error::NotPrimePower { q: 6, factors: vec![(2, 1), (3, 1)] }.to_string(),
            "6 is not a prime power (6 = 2 · 3)"
        );
        assert!(prime_power(1).is_err());
    }

    #[test]
    fn params_split() {
        let c = CirculantParams::new(&[5, 5, 8], 2).unwrap();
        assert_eq!(c.p_free(), &[5, 5, 1]);
        assert_eq!(c.valuations(), &[0, 0, 3]);
        assert_eq!(c.p_part(), vec![1, 1, 8]);
        assert!(!c.is_semisimple());
        assert!(!c.is_local());
        assert_eq!(c.semisimple().m(), &[5, 5, 1]);
        assert!(CirculantParams::new(&[], 2).is_err());
        assert!(CirculantParams::new(&[3, 0], 2).is_err());
    }

    #[test]
    fn order_matches_brute_force_up_to_10k() {
        for m in (2..=10_000u64).step_by(37) {
            for a in [2u64, 3, 5, 7, 10, 11] {
                if gcd(a, m) == 1 {
                    assert_eq!(multiplicative_order(a, m).unwrap(), order_oracle(a, m), "{a} mod {m}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn split_reassembles(m in 1u64..100_000, pi in 0usize..5) {
            let p = [2u64, 3, 5, 7, 11][pi];
            let v = p_adic_valuation(m, p).unwrap();
            let r = p_free_part(m, p).unwrap();
            prop_assert_eq!(r * p.pow(v), m);
            prop_assert_eq!(gcd(r, p), 1);
        }

        #[test]
        fn phi_sums_to_m(m in 1u64..5000) {
            let s: u64 = divisors(m).unwrap().into_iter().map(|d| euler_phi(d).unwrap()).sum();
            prop_assert_eq!(s, m);
        }

        #[test]
        fn order_is_least(m in 1u64..2000, a in 1u64..200) {
            prop_assume!(gcd(a, m) == 1);
            let t = multiplicative_order(a, m).unwrap();
            prop_assert_eq!(pow_mod(a, t, m), 1 % m);
            for s in 1..t {
                prop_assert_ne!(pow_mod(a, s, m), 1 % m);
            }
        }

        #[test]
        fn invariant_factor_chain(orders in proptest::collection::vec(1u64..40, 1..5)) {
            let f = invariant_factors(&orders).unwrap();
            prop_assert_eq!(f.iter().product::<u64>(), orders.iter().product::<u64>());
            for w in f.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            if orders.iter().product::<u64>() <= 4000 {
                prop_assert_eq!(order_census(&orders), order_census(&f));
            }
        }

        #[test]
        fn order_of_lcm(a in 1u64..60, b in 1u64..60, qi in 0usize..4) {
            let q = [2u64, 3, 5, 7][qi];
            prop_assume!(gcd(q, a) == 1 && gcd(q, b) == 1);
            let lhs = multiplicative_order(q, lcm(a, b)).unwrap();
            let rhs = lcm(order_oracle(q, a.max(1)), order_oracle(q, b.max(1)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
