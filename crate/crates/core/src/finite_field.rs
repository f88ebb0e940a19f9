//! Exact arithmetic in `F_p`, in `F_q = F_p[u]/(f)` and in `F_{q^s}`.
//!
//! The tower is kept two-level (`F_p -> F_q -> F_{q^s}`) so that an element
//! of the top field lies in `F_q` exactly when all of its non-constant
//! coordinates vanish.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::error::{Error, Result};
use crate::numtheory::{factorize_u128, is_prime, prime_divisors, prime_power};

/// A finite field together with its element representation.
pub trait Field: Clone + Debug {
    type Elem: Clone + PartialEq + Eq + Debug;

    fn characteristic(&self) -> u64;
    /// Number of elements.
    fn order(&self) -> u128;
    /// Degree over the prime field.
    fn prime_degree(&self) -> u32;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of an integer under `Z -> F`.
    fn from_u64(&self, n: u64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    fn sub_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.sub(a, b);
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut exp: u128) -> Self::Elem {
        let mut result = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(&result, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// The element with the given index in a fixed enumeration `0..order`.
    ///
    /// Index 0 is zero and index 1 is one.
    fn element(&self, index: u128) -> Self::Elem;
    /// Inverse of [`Field::element`].
    fn index(&self, a: &Self::Elem) -> u128;
}

/// The prime field `F_p`, elements are residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn order(&self) -> u128 {
        self.p as u128
    }

    fn prime_degree(&self) -> u32 {
        1
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_u64(&self, n: u64) -> u64 {
        n % self.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        if *a >= self.p - *b {
            *a - (self.p - *b)
        } else {
            *a + *b
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if *a >= *b {
            *a - *b
        } else {
            *a + (self.p - *b)
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::InverseOfZero);
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(t0.rem_euclid(self.p as i128) as u64)
    }

    fn element(&self, index: u128) -> u64 {
        (index % self.p as u128) as u64
    }

    fn index(&self, a: &u64) -> u128 {
        *a as u128
    }
}

/// `F[Y]/(f)` for a monic irreducible `f` over `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionField<F: Field> {
    base: F,
    /// Monic, low degree first, length `degree + 1`.
    modulus: Vec<F::Elem>,
    order: u128,
}

/// `F_q` as an extension of the prime field (degree 1 when `q` is prime).
pub type BaseField = ExtensionField<PrimeField>;
/// `F_{q^s}` as an extension of `F_q`.
pub type TopField = ExtensionField<BaseField>;

impl<F: Field> ExtensionField<F> {
    /// Checks that `modulus` is monic and irreducible over `base`.
    pub fn new(base: F, modulus: Vec<F::Elem>) -> Result<Self> {
        let degree = modulus.len().saturating_sub(1);
        if degree == 0 || !base.is_one(&modulus[degree]) {
            return Err(Error::Internal("extension modulus must be monic of degree >= 1".into()));
        }
        let order = checked_order(base.order(), degree as u32)?;
        if !is_irreducible(&base, &modulus) {
            return Err(Error::Internal("extension modulus is reducible".into()));
        }
        Ok(ExtensionField {
            base,
            modulus,
            order,
        })
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[F::Elem] {
        &self.modulus
    }

    /// The base field element `b` viewed as a constant.
    pub fn embed(&self, b: &F::Elem) -> Vec<F::Elem> {
        let mut v = vec![self.base.zero(); self.degree()];
        v[0] = b.clone();
        v
    }

    /// The class of the adjoined variable `Y`.
    pub fn generator(&self) -> Vec<F::Elem> {
        let d = self.degree();
        if d == 1 {
            return vec![self.base.neg(&self.modulus[0])];
        }
        let mut v = vec![self.base.zero(); d];
        v[1] = self.base.one();
        v
    }

    /// Returns the constant coordinate when `a` lies in the base field.
    pub fn base_part(&self, a: &[F::Elem]) -> Option<F::Elem> {
        if a[1..].iter().all(|c| self.base.is_zero(c)) {
            Some(a[0].clone())
        } else {
            None
        }
    }

    /// `a^{|F|^times}`, the Frobenius of this extension applied `times` times.
    pub fn frobenius(&self, a: &[F::Elem], times: u64) -> Vec<F::Elem> {
        let times = times % self.degree() as u64;
        let q = self.base.order();
        let mut x = a.to_vec();
        for _ in 0..times {
            x = self.pow(&x, q);
        }
        x
    }

    fn reduce(&self, mut prod: Vec<F::Elem>) -> Vec<F::Elem> {
        let d = self.degree();
        for k in (d..prod.len()).rev() {
            let c = prod[k].clone();
            if self.base.is_zero(&c) {
                continue;
            }
            for j in 0..d {
                let t = self.base.mul(&c, &self.modulus[j]);
                self.base.sub_assign(&mut prod[k - d + j], &t);
            }
        }
        prod.truncate(d);
        prod.resize(d, self.base.zero());
        prod
    }
}

fn checked_order(base: u128, degree: u32) -> Result<u128> {
    base.checked_pow(degree)
        .filter(|o| *o < (1u128 << 127))
        .ok_or(Error::FieldTooLarge {
            base_order: base,
            degree,
        })
}

impl<F: Field> Field for ExtensionField<F> {
    type Elem = Vec<F::Elem>;

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn order(&self) -> u128 {
        self.order
    }

    fn prime_degree(&self) -> u32 {
        self.base.prime_degree() * self.degree() as u32
    }

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.degree()]
    }

    fn one(&self) -> Self::Elem {
        self.embed(&self.base.one())
    }

    fn from_u64(&self, n: u64) -> Self::Elem {
        self.embed(&self.base.from_u64(n))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.base.is_zero(c))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        for (x, y) in a.iter_mut().zip(b) {
            self.base.add_assign(x, y);
        }
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }

    fn sub_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        for (x, y) in a.iter_mut().zip(b) {
            self.base.sub_assign(x, y);
        }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let d = self.degree();
        if d == 1 {
            return vec![self.base.mul(&a[0], &b[0])];
        }
        let mut prod = vec![self.base.zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = self.base.mul(x, y);
                self.base.add_assign(&mut prod[i + j], &t);
            }
        }
        self.reduce(prod)
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        if self.is_zero(a) {
            return Err(Error::InverseOfZero);
        }
        // Extended Euclid: track s with s * a = r (mod modulus).
        let base = &self.base;
        let mut r0 = self.modulus.clone();
        let mut r1 = poly::trimmed(base, a.clone());
        let mut s0: Vec<F::Elem> = Vec::new();
        let mut s1 = vec![base.one()];
        while !r1.is_empty() {
            let (q, r) = poly::divrem(base, &r0, &r1)?;
            let s2 = poly::sub(base, &s0, &poly::mul(base, &q, &s1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant
        let c = base.inv(&r0[0])?;
        let s = poly::scale(base, &s0, &c);
        let mut out = poly::divrem(base, &s, &self.modulus)?.1;
        out.resize(self.degree(), base.zero());
        Ok(out)
    }

    fn element(&self, mut index: u128) -> Self::Elem {
        let b = self.base.order();
        let mut v = Vec::with_capacity(self.degree());
        for _ in 0..self.degree() {
            v.push(self.base.element(index % b));
            index /= b;
        }
        v
    }

    fn index(&self, a: &Self::Elem) -> u128 {
        let b = self.base.order();
        a.iter()
            .rev()
            .fold(0u128, |acc, c| acc * b + self.base.index(c))
    }
}

/// Dense univariate polynomials over a field, low degree first and trimmed
/// (no trailing zeros; the zero polynomial is empty).
pub mod poly {
    use super::*;

    pub fn trimmed<F: Field>(f: &F, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
        while a.last().is_some_and(|c| f.is_zero(c)) {
            a.pop();
        }
        a
    }

    pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => f.sub(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => f.neg(y),
                (None, None) => unreachable!(),
            })
            .collect();
        trimmed(f, out)
    }

    pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![f.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let t = f.mul(x, y);
                f.add_assign(&mut out[i + j], &t);
            }
        }
        trimmed(f, out)
    }

    pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
        trimmed(f, a.iter().map(|x| f.mul(x, c)).collect())
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem<F: Field>(
        f: &F,
        a: &[F::Elem],
        b: &[F::Elem],
    ) -> Result<(Vec<F::Elem>, Vec<F::Elem>)> {
        let b = trimmed(f, b.to_vec());
        let lead_inv = f.inv(b.last().ok_or(Error::InverseOfZero)?)?;
        let mut r = trimmed(f, a.to_vec());
        if r.len() < b.len() {
            return Ok((Vec::new(), r));
        }
        let mut q = vec![f.zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = f.mul(r.last().unwrap(), &lead_inv);
            for (j, y) in b.iter().enumerate() {
                let t = f.mul(&c, y);
                f.sub_assign(&mut r[shift + j], &t);
            }
            q[shift] = c;
            r = trimmed(f, r);
        }
        Ok((trimmed(f, q), r))
    }

    /// Monic gcd (empty when both inputs are zero).
    pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let mut a = trimmed(f, a.to_vec());
        let mut b = trimmed(f, b.to_vec());
        while !b.is_empty() {
            let r = divrem(f, &a, &b).expect("nonzero divisor").1;
            a = core::mem::replace(&mut b, r);
        }
        match a.last() {
            Some(lead) => {
                let c = f.inv(lead).expect("nonzero leading coefficient");
                scale(f, &a, &c)
            }
            None => a,
        }
    }

    pub fn mulmod<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
        divrem(f, &mul(f, a, b), m).expect("nonzero modulus").1
    }

    pub fn powmod<F: Field>(f: &F, a: &[F::Elem], mut exp: u128, m: &[F::Elem]) -> Vec<F::Elem> {
        let mut result = divrem(f, &[f.one()], m).expect("nonzero modulus").1;
        let mut base = divrem(f, a, m).expect("nonzero modulus").1;
        while exp > 0 {
            if exp & 1 == 1 {
                result = mulmod(f, &result, &base, m);
            }
            exp >>= 1;
            if exp > 0 {
                base = mulmod(f, &base, &base, m);
            }
        }
        result
    }

    pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
        a.iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }
}

/// Irreducibility over a field with `Q` elements: `X^{Q^d} = X mod f` and
/// `gcd(X^{Q^{d/l}} - X, f) = 1` for every prime `l | d`.
pub fn is_irreducible<F: Field>(field: &F, f: &[F::Elem]) -> bool {
    let f = poly::trimmed(field, f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let d = f.len() - 1;
    if d == 1 {
        return true;
    }
    if field.is_zero(&f[0]) {
        return false;
    }
    let q = field.order();
    let x = vec![field.zero(), field.one()];
    let mut powers = Vec::with_capacity(d + 1);
    let mut h = x.clone();
    powers.push(h.clone());
    for _ in 0..d {
        h = poly::powmod(field, &h, q, &f);
        powers.push(h.clone());
    }
    if poly::sub(field, &powers[d], &x).len() != 0 {
        return false;
    }
    prime_divisors(d as u64).into_iter().all(|l| {
        let g = poly::gcd(field, &poly::sub(field, &powers[d / l as usize], &x), &f);
        g.len() == 1
    })
}

/// The lexicographically smallest monic irreducible of the given degree.
///
/// Candidates `X^d + c_{d-1} X^{d-1} + ... + c_0` are ordered by
/// `(c_{d-1}, ..., c_0)` compared through [`Field::index`].
pub fn find_irreducible<F: Field>(field: &F, degree: usize) -> Vec<F::Elem> {
    assert!(degree >= 1, "degree must be positive");
    let q = field.order();
    let mut k: u128 = 0;
    loop {
        let mut f = Vec::with_capacity(degree + 1);
        let mut rest = k;
        for _ in 0..degree {
            f.push(field.element(rest % q));
            rest /= q;
        }
        f.push(field.one());
        if is_irreducible(field, &f) {
            return f;
        }
        k += 1;
    }
}

/// Multiplicative order of a nonzero element, via the factorization of
/// `|F| - 1`.
pub fn element_order<F: Field>(field: &F, x: &F::Elem) -> Result<u128> {
    if field.is_zero(x) {
        return Err(Error::InverseOfZero);
    }
    let mut t = field.order() - 1;
    for (l, _) in factorize_u128(t) {
        while t % l == 0 && field.is_one(&field.pow(x, t / l)) {
            t /= l;
        }
    }
    Ok(t)
}

/// `F_p ⊂ F_q ⊂ F_{q^s}` built from lexicographically smallest irreducibles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTower {
    p: u64,
    e: u32,
    s: u32,
    top: TopField,
}

impl FieldTower {
    pub fn new(q: u64, s: u32) -> Result<Self> {
        let (p, e) = prime_power(q)?;
        let prime = PrimeField::new(p)?;
        if s == 0 {
            return Err(Error::Zero);
        }
        let base = ExtensionField::new(prime, find_irreducible(&prime, e as usize))?;
        checked_order(base.order(), s)?;
        let top = ExtensionField::new(base.clone(), find_irreducible(&base, s as usize))?;
        Ok(FieldTower { p, e, s, top })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Order of the base field.
    pub fn q(&self) -> u64 {
        self.p.pow(self.e)
    }

    pub fn base(&self) -> &BaseField {
        self.top.base()
    }

    pub fn top(&self) -> &TopField {
        &self.top
    }

    /// `x^{q^times}`.
    pub fn frobenius(&self, x: &<TopField as Field>::Elem, times: u64) -> <TopField as Field>::Elem {
        self.top.frobenius(x, times)
    }

    /// A deterministic element of multiplicative order exactly `r`.
    pub fn root_of_unity(&self, r: u64) -> Result<<TopField as Field>::Elem> {
        let top = &self.top;
        let order = top.order();
        if r == 0 || (order - 1) % r as u128 != 0 {
            return Err(Error::NoRootOfUnity { r, order });
        }
        let exp = (order - 1) / r as u128;
        let primes = prime_divisors(r);
        for idx in 2..order {
            let z = top.pow(&top.element(idx), exp);
            if primes
                .iter()
                .all(|&l| !top.is_one(&top.pow(&z, (r / l) as u128)))
            {
                return Ok(z);
            }
        }
        // index 1 is the element one
        if r == 1 {
            return Ok(top.one());
        }
        Err(Error::NoRootOfUnity { r, order })
    }

    pub fn element_order(&self, x: &<TopField as Field>::Elem) -> Result<u128> {
        element_order(&self.top, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f4() -> BaseField {
        FieldTower::new(4, 1).unwrap().base().clone()
    }

    /// Brute-force irreducibility: no factorization into two monic factors
    /// of positive degree.
    fn irreducible_oracle(f: &PrimeField, poly_: &[u64]) -> bool {
        let d = poly_.len() - 1;
        let p = f.p();
        for k in 1..=d / 2 {
            for idx in 0..p.pow(k as u32) {
                let mut g: Vec<u64> = (0..k).map(|i| (idx / p.pow(i as u32)) % p).collect();
                g.push(1);
                if poly::divrem(f, poly_, &g).unwrap().1.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn irreducible_examples() {
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(find_irreducible(&f2, 1), vec![0, 1]);
        assert_eq!(find_irreducible(&f2, 2), vec![1, 1, 1]);
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(find_irreducible(&f3, 2), vec![1, 0, 1]);
        // X^2 + 1 has no root over F_3
        assert!((0..3).all(|x| (x * x + 1) % 3 != 0));
    }

    #[test]
    fn irreducibility_matches_brute_force() {
        for p in [2u64, 3] {
            let f = PrimeField::new(p).unwrap();
            for d in 1..=5u32 {
                for idx in 0..p.pow(d) {
                    let mut g: Vec<u64> = (0..d).map(|i| (idx / p.pow(i)) % p).collect();
                    g.push(1);
                    assert_eq!(is_irreducible(&f, &g), irreducible_oracle(&f, &g), "{g:?} over F_{p}");
                }
            }
        }
    }

    #[test]
    fn small_field_identities() {
        let f = f4();
        let u = f.generator();
        let u1 = f.add(&u, &f.one());
        assert_eq!(f.mul(&u, &u1), f.one());
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.pow(&2, 4), 1);
        assert_eq!(f5.inv(&0), Err(Error::InverseOfZero));
        assert_eq!(f.inv(&f.zero()), Err(Error::InverseOfZero));
        for i in 0..4 {
            let a = f.element(i);
            assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
            assert_eq!(f.index(&a), i);
        }
    }

    #[test]
    fn frobenius_examples() {
        let t = FieldTower::new(2, 2).unwrap();
        let top = t.top();
        let u = top.generator();
        assert_eq!(t.frobenius(&u, 0), u);
        let u2 = t.frobenius(&u, 1);
        assert_eq!(u2, top.add(&u, &top.one()));
        assert_eq!(u2, top.mul(&u, &u));
        let t = FieldTower::new(3, 4).unwrap();
        for idx in [5u128, 17, 40, 80] {
            let x = t.top().element(idx);
            assert_eq!(t.frobenius(&x, 4), x);
        }
    }

    #[test]
    fn root_of_unity_examples() {
        let t = FieldTower::new(2, 2).unwrap();
        let z = t.root_of_unity(3).unwrap();
        // F_4 = F_2[u]/(u^2+u+1): u^3 = 1, u != 1
        assert_eq!(z, t.top().generator());
        assert!(t.top().is_one(&t.top().pow(&z, 3)));
        assert!(t.top().is_one(&t.root_of_unity(1).unwrap()));
        let t16 = FieldTower::new(2, 4).unwrap();
        let z = t16.root_of_unity(5).unwrap();
        assert!(t16.top().is_one(&t16.top().pow(&z, 5)));
        assert!(!t16.top().is_one(&z));
        assert!(matches!(t16.root_of_unity(7), Err(Error::NoRootOfUnity { r: 7, .. })));
    }

    #[test]
    fn element_order_examples() {
        let t = FieldTower::new(2, 2).unwrap();
        assert_eq!(t.element_order(&t.top().one()), Ok(1));
        assert_eq!(t.element_order(&t.top().generator()), Ok(3));
        assert!(t.element_order(&t.top().zero()).is_err());
        let t9 = FieldTower::new(3, 2).unwrap();
        let top = t9.top();
        // exhaustive generator search in F_9
        let gen = (1..9u128)
            .map(|i| top.element(i))
            .find(|x| (1..8).all(|k| !top.is_one(&top.pow(x, k))))
            .unwrap();
        assert_eq!(t9.element_order(&gen), Ok(8));
    }

    #[test]
    fn too_large_field_is_reported() {
        assert!(matches!(FieldTower::new(2, 200), Err(Error::FieldTooLarge { .. })));
        assert!(matches!(FieldTower::new(6, 1), Err(Error::NotPrimePower { .. })));
    }

    fn tower_strategy() -> impl Strategy<Value = FieldTower> {
        prop_oneof![
            Just(FieldTower::new(2, 4).unwrap()),
            Just(FieldTower::new(4, 3).unwrap()),
            Just(FieldTower::new(9, 2).unwrap()),
            Just(FieldTower::new(5, 3).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn field_axioms(t in tower_strategy(), a in any::<u128>(), b in any::<u128>(), c in any::<u128>()) {
            let f = t.top();
            let n = f.order();
            let (a, b, c) = (f.element(a % n), f.element(b % n), f.element(c % n));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            if !f.is_zero(&a) {
                prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
            }
        }

        #[test]
        fn frobenius_is_automorphism_fixing_base(t in tower_strategy(), a in any::<u128>(), b in any::<u128>()) {
            let f = t.top();
            let n = f.order();
            let (x, y) = (f.element(a % n), f.element(b % n));
            prop_assert_eq!(t.frobenius(&f.add(&x, &y), 1), f.add(&t.frobenius(&x, 1), &t.frobenius(&y, 1)));
            prop_assert_eq!(t.frobenius(&f.mul(&x, &y), 1), f.mul(&t.frobenius(&x, 1), &t.frobenius(&y, 1)));
            prop_assert_eq!(t.frobenius(&x, 1) == x, f.base_part(&x).is_some());
        }

        #[test]
        fn roots_have_exact_order(r in 1u64..40) {
            let t = FieldTower::new(3, 4).unwrap();
            if (81 - 1) % r == 0 {
                let z = t.root_of_unity(r).unwrap();
                prop_assert_eq!(t.element_order(&z).unwrap(), r as u128);
            } else {
                prop_assert!(t.root_of_unity(r).is_err());
            }
        }

        #[test]
        fn found_irreducible_has_no_roots(d in 1usize..7, qi in 0usize..3) {
            let q = [2u64, 3, 4][qi];
            let base = FieldTower::new(q, 1).unwrap().base().clone();
            let f = find_irreducible(&base, d);
            prop_assert!(is_irreducible(&base, &f));
            if d > 1 {
                for i in 0..base.order() {
                    prop_assert!(!base.is_zero(&poly::eval(&base, &f, &base.element(i))));
                }
            }
        }
    }
}
