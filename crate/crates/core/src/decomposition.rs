//! The Krull-Remak-Schmidt decomposition of `C_{m/F_q}` and its explicit
//! verification.
//!
//! [`abstract_decomposition`] reads the decomposition off the divisor census:
//! every orbit contributes one local component
//! `F_{q^nu}[Y_1..Y_n]/(Y_1^{p^{v_1}} - 1, ..., Y_n^{p^{v_n}} - 1)`.
//!
//! [`verify_decomposition`] builds the primitive idempotents. Each orbit
//! indicator of the semisimple quotient `C_{r/F_q}` is interpolated with an
//! inverse DFT over one shared splitting field, then lifted to `C_{m/F_q}` by
//! `X_i -> X_i^{p^t}`. The lifted family is checked for idempotency,
//! orthogonality, completeness, component dimension and nilpotency.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::circulant::{choose_t, CirculantElement, CirculantRing};
use crate::error::{Error, Result};
use crate::finite_field::{BaseField, Field, FieldTower, TopField};
use crate::linalg::rank;
use crate::numtheory::{lcm, multiplicative_order, prime_power, CirculantParams};
use crate::orbits::{divisor_census, enumerate_orbits, CensusRow, Orbit};

/// Largest `prod m_i` accepted by [`verify_decomposition`] unless configured.
pub const DEFAULT_VERIFY_BUDGET: u64 = 4096;

/// One isomorphism class of local components, with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDescriptor {
    /// `nu`: the component's residue field is `F_{q^nu}`.
    pub field_degree: u64,
    /// `p^{v_p(m_i)}` per coordinate.
    pub local_exponents: Vec<u64>,
    pub multiplicity: u64,
    /// Census row this descriptor comes from.
    pub source_order_tuple: Vec<u64>,
}

impl ComponentDescriptor {
    /// `dim_{F_q}` of one copy.
    pub fn dimension(&self) -> u64 {
        self.field_degree * self.local_exponents.iter().product::<u64>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub q: u64,
    pub p: u64,
    pub e: u32,
    pub params: CirculantParams,
    pub census: Vec<CensusRow>,
    /// One entry per census row with `eta > 0`, in census order.
    pub components: Vec<ComponentDescriptor>,
    pub total_dimension: u64,
    pub is_semisimple: bool,
    pub is_local: bool,
}

impl DecompositionReport {
    /// Number of indecomposable summands, counted with multiplicity.
    pub fn component_count(&self) -> u64 {
        self.components.iter().map(|c| c.multiplicity).sum()
    }

    /// `sum multiplicity * nu * prod p^{v_i}`.
    pub fn dimension_sum(&self) -> u64 {
        self.components.iter().map(|c| c.multiplicity * c.dimension()).sum()
    }

    /// Components merged by isomorphism class `(field_degree, local_exponents)`,
    /// sorted by that key.
    pub fn aggregated(&self) -> Vec<(u64, Vec<u64>, u64)> {
        let mut merged: BTreeMap<(u64, Vec<u64>), u64> = BTreeMap::new();
        for c in &self.components {
            *merged
                .entry((c.field_degree, c.local_exponents.clone()))
                .or_insert(0) += c.multiplicity;
        }
        merged.into_iter().map(|((nu, loc), k)| (nu, loc, k)).collect()
    }
}

fn split_q(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower {
            q,
            factors: Vec::new(),
        });
    }
    prime_power(q)
}

/// The decomposition of `C_{m/F_q}` read off the divisor census.
pub fn abstract_decomposition(q: u64, m: &[u64]) -> Result<DecompositionReport> {
    let (p, e) = split_q(q)?;
    let params = CirculantParams::new(m, p)?;
    let census = divisor_census(q, &params);
    let local_exponents = params.p_part();
    let components = census
        .iter()
        .filter(|row| row.eta > 0)
        .map(|row| ComponentDescriptor {
            field_degree: row.nu,
            local_exponents: local_exponents.clone(),
            multiplicity: row.eta,
            source_order_tuple: row.d.clone(),
        })
        .collect();
    Ok(DecompositionReport {
        q,
        p,
        e,
        total_dimension: params.dimension(),
        is_semisimple: params.is_semisimple(),
        is_local: params.is_local(),
        params,
        census,
        components,
    })
}

/// Orbit indicators of `C_{r/F_q}` by inverse DFT over `F_{q^s}`, where `s`
/// is the lcm of all orbit field degrees.
#[derive(Debug, Clone)]
pub struct Interpolator {
    tower: FieldTower,
    ring: CirculantRing<BaseField>,
    /// `lcm(r_i)`
    period: u64,
    /// `omega^k` for a primitive `period`-th root of unity `omega`.
    powers: Vec<<TopField as Field>::Elem>,
    /// `(prod r_i)^{-1}` in `F_q`.
    scale: <BaseField as Field>::Elem,
}

impl Interpolator {
    pub fn new(q: u64, params: &CirculantParams) -> Result<Self> {
        let r = params.semisimple();
        let period = r.m().iter().copied().fold(1, lcm);
        let s = multiplicative_order(q, period)?;
        let s = u32::try_from(s).map_err(|_| Error::FieldTooLarge {
            base_order: q as u128,
            degree: u32::MAX,
        })?;
        let tower = FieldTower::new(q, s)?;
        let omega = tower.root_of_unity(period)?;
        let top = tower.top();
        let mut powers = Vec::with_capacity(period as usize);
        let mut x = top.one();
        for _ in 0..period {
            powers.push(x.clone());
            x = top.mul(&x, &omega);
        }
        let base = tower.base().clone();
        let scale = base.inv(&base.from_u64(r.dimension()))?;
        let ring = CirculantRing::new(base, r.m())?;
        Ok(Interpolator {
            tower,
            ring,
            period,
            powers,
            scale,
        })
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    /// The semisimple ring `C_{r/F_q}` the idempotents live in.
    pub fn ring(&self) -> &CirculantRing<BaseField> {
        &self.ring
    }

    /// The point `(zeta_1^{e_1}, ..., zeta_n^{e_n})` with
    /// `zeta_i = omega^{period / r_i}`.
    pub fn point(&self, e: &[u64]) -> Vec<<TopField as Field>::Elem> {
        e.iter()
            .zip(self.ring.shape())
            .map(|(&ei, &ri)| self.powers[((ei * (self.period / ri)) % self.period) as usize].clone())
            .collect()
    }

    /// The idempotent `e_O` equal to 1 on the orbit and 0 elsewhere:
    /// `coeff_a = (prod r_i)^{-1} sum_{e in O} prod_i zeta_i^{-e_i a_i}`.
    pub fn idempotent(&self, orbit: &Orbit) -> Result<CirculantElement<BaseField>> {
        let top = self.tower.top();
        let r = self.ring.shape();
        let steps: Vec<u64> = r.iter().map(|&ri| self.period / ri).collect();
        let mut coeffs = Vec::with_capacity(self.ring.dimension());
        for idx in 0..self.ring.dimension() {
            let a = self.ring.exponents_of(idx);
            let mut acc = top.zero();
            for e in orbit.members() {
                let k = e
                    .iter()
                    .zip(&a)
                    .zip(&steps)
                    .map(|((&ei, &ai), &st)| (ei * ai % self.period) * st % self.period)
                    .fold(0u64, |acc, x| (acc + x) % self.period);
                top.add_assign(&mut acc, &self.powers[((self.period - k) % self.period) as usize]);
            }
            let c = top.base_part(&acc).ok_or_else(|| {
                Error::Internal(format!(
                    "idempotent coefficient at {a:?} for orbit {:?} is not in F_q",
                    orbit.representative()
                ))
            })?;
            coeffs.push(self.ring.field().mul(&c, &self.scale));
        }
        self.ring.from_coeffs(coeffs)
    }
}

/// `E = e(X_1^{p^t}, ..., X_n^{p^t})` in `C_{m/F_q}` with `t = choose_t(m)`.
pub fn lift_idempotent(
    ring: &CirculantRing<BaseField>,
    e: &CirculantElement<BaseField>,
) -> Result<CirculantElement<BaseField>> {
    let t = choose_t(ring.params());
    ring.frobenius_substitute(&ring.embed_representative(e)?, t)
}

/// The lifted primitive idempotents `E_O`, one per orbit.
#[derive(Debug, Clone)]
pub struct IdempotentFamily {
    ring: CirculantRing<BaseField>,
    entries: Vec<(Orbit, CirculantElement<BaseField>)>,
}

impl IdempotentFamily {
    pub fn new(q: u64, m: &[u64]) -> Result<Self> {
        let (p, _) = split_q(q)?;
        let params = CirculantParams::new(m, p)?;
        let interp = Interpolator::new(q, &params)?;
        let ring = CirculantRing::new(interp.tower().base().clone(), m)?;
        let entries = enumerate_orbits(q, &params)
            .into_iter()
            .map(|orbit| {
                let e = interp.idempotent(&orbit)?;
                let lifted = lift_idempotent(&ring, &e)?;
                Ok((orbit, lifted))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IdempotentFamily { ring, entries })
    }

    pub fn ring(&self) -> &CirculantRing<BaseField> {
        &self.ring
    }

    pub fn entries(&self) -> &[(Orbit, CirculantElement<BaseField>)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `dim_{F_q}(f * C)`: rank of `{f * M : M monomial}`.
pub fn ideal_dimension(ring: &CirculantRing<BaseField>, f: &CirculantElement<BaseField>) -> usize {
    let rows: Vec<_> = (0..ring.dimension())
        .map(|i| ring.mul_monomial(f, &ring.exponents_of(i)).into_coeffs())
        .collect();
    rank(ring.field(), &rows)
}

/// Rank of `span{(X_i^{r_i} - 1) * M}`, the dimension of the Jacobson radical.
pub fn radical_rank(ring: &CirculantRing<BaseField>) -> usize {
    let field = ring.field();
    let n = ring.params().n();
    let mut rows = Vec::with_capacity(n * ring.dimension());
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = ring.params().p_free()[i];
        let g = ring
            .sub(&ring.monomial(&e, field.one()).expect("valid exponents"), &ring.one())
            .expect("same ring");
        for k in 0..ring.dimension() {
            rows.push(ring.mul_monomial(&g, &ring.exponents_of(k)).into_coeffs());
        }
    }
    rank(field, &rows)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Description of the first counterexample.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentCheck {
    pub representative: Vec<u64>,
    pub order_tuple: Vec<u64>,
    pub field_degree: u64,
    pub expected_dimension: u64,
    pub rank: u64,
    /// Nilpotency index of `(X_i^{r_i} - 1) E_O` per coordinate.
    pub nilpotency: Vec<Option<u64>>,
    pub idempotent: String,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub report: DecompositionReport,
    pub t: u64,
    pub components: Vec<ComponentCheck>,
    pub radical_rank: u64,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct CheckBuilder {
    name: &'static str,
    witness: Option<String>,
}

impl CheckBuilder {
    fn new(name: &'static str) -> Self {
        CheckBuilder { name, witness: None }
    }

    fn fail(&mut self, w: impl FnOnce() -> String) {
        if self.witness.is_none() {
            self.witness = Some(w());
        }
    }

    fn finish(self) -> Check {
        Check {
            name: self.name,
            passed: self.witness.is_none(),
            witness: self.witness,
        }
    }
}

/// Builds the idempotent family of `C_{m/F_q}` and checks it.
///
/// Checks, in order: `census` (orbit counts and sizes agree with the census),
/// `idempotent` (`E^2 = E`), `orthogonal` (`E E' = 0`), `complete`
/// (`sum E = 1`), `dimension` (`dim E C = nu prod p^{v_i}`), `nilpotency`
/// (`(X_i^{r_i} - 1) E` has index exactly `p^{v_i}`) and `radical`
/// (the radical has dimension `prod m_i - prod r_i`).
pub fn verify_decomposition(q: u64, m: &[u64], budget: u64) -> Result<VerificationReport> {
    let report = abstract_decomposition(q, m)?;
    let size = report.total_dimension;
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let family = IdempotentFamily::new(q, m)?;
    let ring = family.ring();
    let params = ring.params().clone();
    let field = ring.field();
    let entries = family.entries();

    let mut census_check = CheckBuilder::new("census");
    for row in &report.census {
        let matching: Vec<&Orbit> = entries
            .iter()
            .map(|(o, _)| o)
            .filter(|o| o.order_tuple() == row.d.as_slice())
            .collect();
        if matching.len() as u64 != row.eta || matching.iter().any(|o| o.size() != row.nu) {
            census_check.fail(|| {
                format!(
                    "order tuple {:?}: census (eta={}, nu={}) vs {} orbits",
                    row.d,
                    row.eta,
                    row.nu,
                    matching.len()
                )
            });
        }
    }

    let mut idem = CheckBuilder::new("idempotent");
    for (o, e) in entries {
        if ring.mul(e, e)? != *e {
            idem.fail(|| format!("E_{:?}^2 != E_{:?}", o.representative(), o.representative()));
        }
    }

    let mut orth = CheckBuilder::new("orthogonal");
    for (i, (oi, ei)) in entries.iter().enumerate() {
        for (oj, ej) in &entries[i + 1..] {
            if !ring.is_zero(&ring.mul(ei, ej)?) {
                orth.fail(|| format!("E_{:?} * E_{:?} != 0", oi.representative(), oj.representative()));
            }
        }
    }

    let mut complete = CheckBuilder::new("complete");
    let mut sum = ring.zero();
    for (_, e) in entries {
        sum = ring.add(&sum, e)?;
    }
    if sum != ring.one() {
        complete.fail(|| format!("sum of idempotents is {}", ring.format(&sum)));
    }

    let local: u64 = params.p_part().iter().product();
    let mut dim = CheckBuilder::new("dimension");
    let mut nil = CheckBuilder::new("nilpotency");
    let mut components = Vec::with_capacity(entries.len());
    for (o, e) in entries {
        let expected = o.field_degree() * local;
        let found = ideal_dimension(ring, e) as u64;
        if found != expected {
            dim.fail(|| format!("dim E_{:?} C = {found}, expected {expected}", o.representative()));
        }
        let mut nilpotency = Vec::with_capacity(params.n());
        for i in 0..params.n() {
            let mut x = vec![0; params.n()];
            x[i] = params.p_free()[i];
            let g = ring.sub(&ring.monomial(&x, field.one())?, &ring.one())?;
            let ge = ring.mul(&g, e)?;
            let idx = ring.nilpotency_index(&ge)?;
            let want = params.p_part()[i];
            if idx != Some(want) {
                nil.fail(|| {
                    format!(
                        "(X{}^{} - 1) E_{:?} has nilpotency index {idx:?}, expected {want}",
                        i + 1,
                        x[i],
                        o.representative()
                    )
                });
            }
            nilpotency.push(idx);
        }
        components.push(ComponentCheck {
            representative: o.representative().clone(),
            order_tuple: o.order_tuple().to_vec(),
            field_degree: o.field_degree(),
            expected_dimension: expected,
            rank: found,
            nilpotency,
            idempotent: ring.format(e),
        });
    }

    let mut radical = CheckBuilder::new("radical");
    let rad = radical_rank(ring) as u64;
    let want = params.dimension() - params.semisimple_dimension();
    if rad != want {
        radical.fail(|| format!("radical rank {rad}, expected {want}"));
    }

    let checks = vec![
        census_check.finish(),
        idem.finish(),
        orth.finish(),
        complete.finish(),
        dim.finish(),
        nil.finish(),
        radical.finish(),
    ];
    Ok(VerificationReport {
        t: choose_t(&params),
        report,
        components,
        radical_rank: rad,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_five_two_power_components() {
        for l in 1..=3 {
            let rep = abstract_decomposition(2, &[5, 5, 1 << l]).unwrap();
            assert_eq!(rep.component_count(), 7);
            assert_eq!(
                rep.aggregated(),
                vec![(1, vec![1, 1, 1 << l], 1), (4, vec![1, 1, 1 << l], 6)]
            );
            assert_eq!(rep.dimension_sum(), rep.total_dimension);
            assert!(!rep.is_semisimple && !rep.is_local);
        }
    }

    #[test]
    fn trivial_and_cyclic_cases() {
        let rep = abstract_decomposition(3, &[1]).unwrap();
        assert_eq!(rep.aggregated(), vec![(1, vec![1], 1)]);
        assert!(rep.is_semisimple && rep.is_local);
        // X^7 - 1 = (X + 1) * two cubics over F_2
        let rep = abstract_decomposition(2, &[7]).unwrap();
        assert_eq!(rep.aggregated(), vec![(1, vec![1], 1), (3, vec![1], 2)]);
        assert!(matches!(abstract_decomposition(6, &[5]), Err(Error::NotPrimePower { q: 6, .. })));
        assert!(abstract_decomposition(1, &[5]).is_err());
        assert!(abstract_decomposition(2, &[]).is_err());
    }

    #[test]
    fn semisimple_idempotent_examples() {
        let params = CirculantParams::new(&[3], 2).unwrap();
        let interp = Interpolator::new(2, &params).unwrap();
        let orbits = enumerate_orbits(2, &params);
        let ring = interp.ring();
        // trivial orbit: 3^{-1} (1 + X + X^2) = 1 + X + X^2 over F_2
        assert_eq!(interp.idempotent(&orbits[0]).unwrap(), ring.parse("1 + X1 + X1^2").unwrap());
        assert_eq!(interp.idempotent(&orbits[1]).unwrap(), ring.parse("X1 + X1^2").unwrap());

        let params = CirculantParams::new(&[5], 3).unwrap();
        let interp = Interpolator::new(3, &params).unwrap();
        let ring = interp.ring();
        let trivial = &enumerate_orbits(3, &params)[0];
        let inv5 = ring.field().inv(&ring.field().from_u64(5)).unwrap();
        let avg = ring.scale(&ring.parse("1 + X1 + X1^2 + X1^3 + X1^4").unwrap(), &inv5);
        assert_eq!(interp.idempotent(trivial).unwrap(), avg);
    }

    #[test]
    fn idempotents_are_orbit_indicators() {
        for (q, m) in [(2u64, vec![15u64]), (4, vec![3, 5]), (3, vec![8]), (9, vec![4, 2])] {
            let params = CirculantParams::new(&m, prime_power(q).unwrap().0).unwrap();
            let interp = Interpolator::new(q, &params).unwrap();
            let ring = interp.ring();
            let top = interp.tower().top();
            let orbits = enumerate_orbits(q, &params);
            for o in &orbits {
                let e = interp.idempotent(o).unwrap();
                for other in &orbits {
                    for x in other.members() {
                        let v = ring.evaluate(&e, top, &interp.point(x)).unwrap();
                        let want = if other == o { top.one() } else { top.zero() };
                        assert_eq!(v, want, "q={q} m={m:?} orbit {:?} at {x:?}", o.representative());
                    }
                }
            }
        }
    }

    #[test]
    fn lift_examples() {
        let ring = CirculantRing::new(FieldTower::new(2, 1).unwrap().base().clone(), &[6]).unwrap();
        let sub = ring.semisimple_quotient();
        let e = sub.parse("X1 + X1^2").unwrap();
        let lifted = lift_idempotent(&ring, &e).unwrap();
        // p^t = 4: X^4 + X^8 = X^4 + X^2 mod X^6 - 1
        assert_eq!(lifted, ring.parse("X1^2 + X1^4").unwrap());
        assert_eq!(ring.mul(&lifted, &lifted).unwrap(), lifted);
        assert_eq!(ring.quotient(&lifted).unwrap(), e);

        let ring = CirculantRing::new(FieldTower::new(2, 1).unwrap().base().clone(), &[7]).unwrap();
        let e = ring.parse("X1 + X1^2 + X1^4").unwrap();
        let lifted = lift_idempotent(&ring, &e).unwrap();
        assert_eq!(ring.mul(&lifted, &lifted).unwrap(), lifted);
    }

    #[test]
    fn verify_small_cases() {
        let v = verify_decomposition(2, &[5, 5, 2], DEFAULT_VERIFY_BUDGET).unwrap();
        assert!(v.passed(), "{:?}", v.first_failure());
        assert_eq!(
            v.components.iter().map(|c| c.rank).collect::<Vec<_>>(),
            vec![2, 8, 8, 8, 8, 8, 8]
        );
        let v = verify_decomposition(2, &[4], DEFAULT_VERIFY_BUDGET).unwrap();
        assert!(v.passed());
        assert_eq!(v.components.len(), 1);
        assert_eq!(v.components[0].idempotent, "1");
        assert_eq!(
            verify_decomposition(2, &[101, 101], 4096).unwrap_err(),
            Error::BudgetExceeded { size: 10201, budget: 4096 }
        );
    }

    #[test]
    fn verify_semisimple_is_wedderburn() {
        let v = verify_decomposition(3, &[4, 5], DEFAULT_VERIFY_BUDGET).unwrap();
        assert!(v.passed());
        assert!(v.report.is_semisimple);
        assert_eq!(v.radical_rank, 0);
        let dims: u64 = v.components.iter().map(|c| c.rank).sum();
        assert_eq!(dims, 20);
    }
}
