//! Frobenius orbits on the vanishing set of the cyclotomic ideal.
//!
//! Fix primitive `r_i`-th roots of unity `zeta_i`. A point
//! `(zeta_1^{e_1}, ..., zeta_n^{e_n})` is encoded by its exponent tuple `e`,
//! and the Frobenius `x -> x^q` acts as `e -> q e (mod r)`. Orbits of this
//! action index the indecomposable components of the ring.

use alloc::vec;
use alloc::vec::Vec;

use crate::numtheory::{divisor_tuples, euler_phi, gcd, lcm, multiplicative_order, CirculantParams};

/// Exponents `e` with `0 <= e_i < r_i`.
pub type ExponentPoint = Vec<u64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    members: Vec<ExponentPoint>,
    order_tuple: Vec<u64>,
    field_degree: u64,
}

impl Orbit {
    /// Lexicographically least member.
    pub fn representative(&self) -> &ExponentPoint {
        &self.members[0]
    }

    /// Members in the order `e, q e, q^2 e, ...`, starting from the representative.
    pub fn members(&self) -> &[ExponentPoint] {
        &self.members
    }

    pub fn size(&self) -> u64 {
        self.members.len() as u64
    }

    /// `d_i = r_i / gcd(e_i, r_i)`, shared by every member.
    pub fn order_tuple(&self) -> &[u64] {
        &self.order_tuple
    }

    /// `[F_q(x) : F_q]`, equal to the orbit size.
    pub fn field_degree(&self) -> u64 {
        self.field_degree
    }
}

/// Multiplicative order of `zeta_i^{e_i}` per coordinate.
pub fn order_tuple(point: &[u64], r: &[u64]) -> Vec<u64> {
    point.iter().zip(r).map(|(&e, &r)| r / gcd(e, r)).collect()
}

/// All Frobenius orbits of `e -> q e (mod r_p(m))`, sorted by
/// `(order_tuple, representative)`.
///
/// `q` must be a power of `params.p()`.
pub fn enumerate_orbits(q: u64, params: &CirculantParams) -> Vec<Orbit> {
    let r = params.p_free();
    debug_assert!(r.iter().all(|&ri| gcd(q, ri) == 1));
    let total = params.semisimple_dimension() as usize;
    let mut seen = vec![false; total];
    let mut orbits = Vec::new();
    // Row-major scan visits points in lexicographic order, so the first
    // unseen point is the least member of its orbit.
    for start in 0..total {
        if seen[start] {
            continue;
        }
        let rep = unravel(start, r);
        let mut members = Vec::new();
        let mut e = rep.clone();
        loop {
            seen[ravel(&e, r)] = true;
            members.push(e.clone());
            e = e
                .iter()
                .zip(r)
                .map(|(&x, &ri)| ((x as u128 * q as u128) % ri as u128) as u64)
                .collect();
            if e == rep {
                break;
            }
        }
        let order_tuple = order_tuple(&rep, r);
        let field_degree = members.len() as u64;
        orbits.push(Orbit {
            members,
            order_tuple,
            field_degree,
        });
    }
    orbits.sort_by(|a, b| {
        (a.order_tuple.as_slice(), a.representative()).cmp(&(b.order_tuple.as_slice(), b.representative()))
    });
    orbits
}

fn unravel(mut idx: usize, dims: &[u64]) -> Vec<u64> {
    let mut e = vec![0u64; dims.len()];
    for i in (0..dims.len()).rev() {
        e[i] = (idx % dims[i] as usize) as u64;
        idx /= dims[i] as usize;
    }
    e
}

fn ravel(e: &[u64], dims: &[u64]) -> usize {
    e.iter()
        .zip(dims)
        .fold(0usize, |acc, (e, d)| acc * *d as usize + *e as usize)
}

/// One row of the divisor census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    /// Exact order tuple of the points counted by this row.
    pub d: Vec<u64>,
    /// `prod phi(d_i)`, the number of points with order tuple `d`.
    pub phi_product: u64,
    /// `lcm_i ord_{d_i}(q)`, the field degree of every such point.
    pub nu: u64,
    /// `phi_product / nu`, the number of orbits with order tuple `d`.
    pub eta: u64,
}

/// The census over `d in Div_{r_p(m)}`, rows sorted lexicographically by `d`.
pub fn divisor_census(q: u64, params: &CirculantParams) -> Vec<CensusRow> {
    divisor_tuples(params.p_free())
        .expect("p-free parts are positive")
        .into_iter()
        .map(|d| {
            let phi_product = d.iter().map(|&di| euler_phi(di).unwrap()).product::<u64>();
            let nu = d
                .iter()
                .map(|&di| multiplicative_order(q, di).expect("q coprime to p-free part"))
                .fold(1, lcm);
            assert_eq!(phi_product % nu, 0, "orbit count must be integral");
            CensusRow {
                d,
                phi_product,
                nu,
                eta: phi_product / nu,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: &[u64], p: u64) -> CirculantParams {
        CirculantParams::new(m, p).unwrap()
    }

    #[test]
    fn orbit_examples() {
        // X^3 - 1 = (X + 1)(X^2 + X + 1) over F_2
        let o = enumerate_orbits(2, &params(&[3], 2));
        assert_eq!(o.len(), 2);
        assert_eq!(o.iter().map(Orbit::size).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(o[1].members(), &[vec![1], vec![2]]);
        assert_eq!(enumerate_orbits(2, &params(&[5, 5, 8], 2)).len(), 7);
        let trivial = enumerate_orbits(9, &params(&[3, 9, 1], 3));
        assert_eq!(trivial.len(), 1);
        assert_eq!(trivial[0].representative(), &vec![0, 0, 0]);
    }

    #[test]
    fn order_tuple_examples() {
        assert_eq!(order_tuple(&[0, 0], &[5, 7]), vec![1, 1]);
        assert_eq!(order_tuple(&[1, 0, 0], &[5, 5, 1]), vec![5, 1, 1]);
        assert_eq!(order_tuple(&[4], &[6]), vec![3]);
    }

    #[test]
    fn census_examples() {
        let rows = divisor_census(2, &params(&[5, 5, 4], 2));
        let flat: Vec<_> = rows.iter().map(|r| (r.d.clone(), r.phi_product, r.nu, r.eta)).collect();
        assert_eq!(
            flat,
            vec![
                (vec![1, 1, 1], 1, 1, 1),
                (vec![1, 5, 1], 4, 4, 1),
                (vec![5, 1, 1], 4, 4, 1),
                (vec![5, 5, 1], 16, 4, 4),
            ]
        );
        let rows = divisor_census(2, &params(&[7], 2));
        let flat: Vec<_> = rows.iter().map(|r| (r.d.clone(), r.phi_product, r.nu, r.eta)).collect();
        assert_eq!(flat, vec![(vec![1], 1, 1, 1), (vec![7], 6, 3, 2)]);
        // ord_7(2) by brute force
        assert_eq!((1..).find(|&k| 2u64.pow(k) % 7 == 1), Some(3));
    }

    #[test]
    fn orbits_are_order_homogeneous() {
        for (q, m) in [(2u64, vec![15u64, 9]), (3, vec![8, 10]), (4, vec![21]), (5, vec![12, 4, 3])] {
            let p = params(&m, crate::numtheory::prime_power(q).unwrap().0);
            let orbits = enumerate_orbits(q, &p);
            let total: u64 = orbits.iter().map(Orbit::size).sum();
            assert_eq!(total, p.semisimple_dimension());
            for o in &orbits {
                for e in o.members() {
                    assert_eq!(order_tuple(e, p.p_free()), o.order_tuple());
                }
                assert!(o.members().iter().all(|e| e >= o.representative()));
                let nu = o
                    .order_tuple()
                    .iter()
                    .map(|&d| multiplicative_order(q, d).unwrap())
                    .fold(1, lcm);
                assert_eq!(o.size(), nu);
            }
        }
    }
}
