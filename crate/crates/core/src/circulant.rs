//! The circulant ring `C_{m/F} = F[X_1..X_n]/(X_1^{m_1} - 1, ..., X_n^{m_n} - 1)`.
//!
//! Elements are dense coefficient arrays over the standard representatives
//! (partial degrees `< m_i`), stored row-major so that the array order is the
//! lexicographic order of exponent tuples. Multiplication is the
//! `n`-dimensional cyclic convolution.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::finite_field::{ExtensionField, Field};
use crate::numtheory::{lcm, multiplicative_order, pow_mod, CirculantParams};

/// An element of a [`CirculantRing`].
#[derive(Debug)]
pub struct CirculantElement<F: Field> {
    shape: Vec<u64>,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Clone for CirculantElement<F> {
    fn clone(&self) -> Self {
        CirculantElement {
            shape: self.shape.clone(),
            coeffs: self.coeffs.clone(),
        }
    }
}

impl<F: Field> PartialEq for CirculantElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for CirculantElement<F> {}

impl<F: Field> CirculantElement<F> {
    pub fn shape(&self) -> &[u64] {
        &self.shape
    }

    /// Coefficients in row-major exponent order.
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }
}

/// Strides of a row-major layout where the last coordinate varies fastest.
fn strides(dims: &[u64]) -> Vec<usize> {
    let mut s = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1] as usize;
    }
    s
}

fn unravel(mut idx: usize, dims: &[u64]) -> Vec<u64> {
    let mut e = vec![0u64; dims.len()];
    for i in (0..dims.len()).rev() {
        e[i] = (idx % dims[i] as usize) as u64;
        idx /= dims[i] as usize;
    }
    e
}

/// The ring `C_{m/F}` over a field `F`.
#[derive(Debug, Clone)]
pub struct CirculantRing<F: Field> {
    field: F,
    params: CirculantParams,
    strides: Vec<usize>,
    len: usize,
}

impl<F: Field> CirculantRing<F> {
    pub fn new(field: F, m: &[u64]) -> Result<Self> {
        let params = CirculantParams::new(m, field.characteristic())?;
        let strides = strides(m);
        let len = params.dimension() as usize;
        Ok(CirculantRing {
            field,
            params,
            strides,
            len,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn params(&self) -> &CirculantParams {
        &self.params
    }

    pub fn shape(&self) -> &[u64] {
        self.params.m()
    }

    /// `prod m_i`.
    pub fn dimension(&self) -> usize {
        self.len
    }

    pub fn index_of(&self, exps: &[u64]) -> usize {
        exps.iter()
            .zip(self.shape())
            .zip(&self.strides)
            .map(|((e, m), s)| (e % m) as usize * s)
            .sum()
    }

    pub fn exponents_of(&self, idx: usize) -> Vec<u64> {
        unravel(idx, self.shape())
    }

    fn check(&self, f: &CirculantElement<F>) -> Result<()> {
        if f.shape != self.shape() || f.coeffs.len() != self.len {
            return Err(Error::ShapeMismatch {
                left: self.shape().to_vec(),
                right: f.shape.clone(),
            });
        }
        Ok(())
    }

    fn wrap(&self, coeffs: Vec<F::Elem>) -> CirculantElement<F> {
        CirculantElement {
            shape: self.shape().to_vec(),
            coeffs,
        }
    }

    pub fn zero(&self) -> CirculantElement<F> {
        self.wrap(vec![self.field.zero(); self.len])
    }

    pub fn one(&self) -> CirculantElement<F> {
        let mut c = vec![self.field.zero(); self.len];
        c[0] = self.field.one();
        self.wrap(c)
    }

    /// `coeff * X^exps`, exponents taken modulo `m`.
    pub fn monomial(&self, exps: &[u64], coeff: F::Elem) -> Result<CirculantElement<F>> {
        if exps.len() != self.params.n() {
            return Err(Error::OutOfRange(exps.to_vec()));
        }
        let mut c = vec![self.field.zero(); self.len];
        c[self.index_of(exps)] = coeff;
        Ok(self.wrap(c))
    }

    /// `X_i`, with `i` counted from 0.
    pub fn variable(&self, i: usize) -> CirculantElement<F> {
        let mut e = vec![0; self.params.n()];
        e[i] = 1;
        self.monomial(&e, self.field.one()).expect("valid variable")
    }

    pub fn from_coeffs(&self, coeffs: Vec<F::Elem>) -> Result<CirculantElement<F>> {
        let f = self.wrap(coeffs);
        self.check(&f)?;
        Ok(f)
    }

    pub fn coeff<'a>(&self, f: &'a CirculantElement<F>, exps: &[u64]) -> &'a F::Elem {
        &f.coeffs[self.index_of(exps)]
    }

    pub fn is_zero(&self, f: &CirculantElement<F>) -> bool {
        f.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn add(&self, a: &CirculantElement<F>, b: &CirculantElement<F>) -> Result<CirculantElement<F>> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| self.field.add(x, y)).collect()))
    }

    pub fn sub(&self, a: &CirculantElement<F>, b: &CirculantElement<F>) -> Result<CirculantElement<F>> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| self.field.sub(x, y)).collect()))
    }

    pub fn neg(&self, a: &CirculantElement<F>) -> CirculantElement<F> {
        self.wrap(a.coeffs.iter().map(|x| self.field.neg(x)).collect())
    }

    pub fn scale(&self, a: &CirculantElement<F>, c: &F::Elem) -> CirculantElement<F> {
        self.wrap(a.coeffs.iter().map(|x| self.field.mul(x, c)).collect())
    }

    /// Cyclic convolution: exponent tuples add componentwise modulo `m_i`.
    pub fn mul(&self, a: &CirculantElement<F>, b: &CirculantElement<F>) -> Result<CirculantElement<F>> {
        self.check(a)?;
        self.check(b)?;
        let mut out = vec![self.field.zero(); self.len];
        let b_support: Vec<(usize, &F::Elem)> = b
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .collect();
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for &(j, y) in &b_support {
                let t = self.field.mul(x, y);
                self.field.add_assign(&mut out[self.add_indices(i, j)], &t);
            }
        }
        Ok(self.wrap(out))
    }

    /// Row-major index of the sum of the exponent tuples at `i` and `j`.
    fn add_indices(&self, mut i: usize, mut j: usize) -> usize {
        let mut out = 0;
        for (k, &m) in self.shape().iter().enumerate().rev() {
            let m = m as usize;
            let mut e = i % m + j % m;
            if e >= m {
                e -= m;
            }
            out += e * self.strides[k];
            i /= m;
            j /= m;
        }
        out
    }

    /// `a * X^exps`, a pure reindexing.
    pub fn mul_monomial(&self, a: &CirculantElement<F>, exps: &[u64]) -> CirculantElement<F> {
        let shift = self.index_of(exps);
        let mut out = vec![self.field.zero(); self.len];
        for (i, c) in a.coeffs.iter().enumerate() {
            out[self.add_indices(i, shift)] = c.clone();
        }
        self.wrap(out)
    }

    pub fn pow(&self, a: &CirculantElement<F>, mut k: u64) -> Result<CirculantElement<F>> {
        self.check(a)?;
        let mut result = self.one();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(&result, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(result)
    }

    /// Evaluates `f` at a point of an extension field, nested Horner over
    /// the variables.
    pub fn evaluate(
        &self,
        f: &CirculantElement<F>,
        ext: &ExtensionField<F>,
        point: &[<ExtensionField<F> as Field>::Elem],
    ) -> Result<<ExtensionField<F> as Field>::Elem> {
        self.check(f)?;
        if point.len() != self.params.n() {
            return Err(Error::ShapeMismatch {
                left: self.shape().to_vec(),
                right: vec![point.len() as u64],
            });
        }
        Ok(self.horner(&f.coeffs, 0, ext, point))
    }

    fn horner(
        &self,
        coeffs: &[F::Elem],
        var: usize,
        ext: &ExtensionField<F>,
        point: &[<ExtensionField<F> as Field>::Elem],
    ) -> <ExtensionField<F> as Field>::Elem {
        if var == self.params.n() {
            return ext.embed(&coeffs[0]);
        }
        let stride = self.strides[var];
        let mut acc = ext.zero();
        for block in coeffs.chunks(stride).rev() {
            acc = ext.mul(&acc, &point[var]);
            let inner = self.horner(block, var + 1, ext, point);
            ext.add_assign(&mut acc, &inner);
        }
        acc
    }

    /// The ring `C_{r_p(m)/F}`, isomorphic to the semisimple quotient.
    pub fn semisimple_quotient(&self) -> CirculantRing<F> {
        CirculantRing::new(self.field.clone(), self.params.p_free()).expect("p-free part is valid")
    }

    /// The quotient map `Q` onto `C_{r_p(m)/F}`: exponents fold modulo `r_i`.
    ///
    /// `Q(f) = 0` exactly when `f` lies in the Jacobson radical.
    pub fn quotient(&self, f: &CirculantElement<F>) -> Result<CirculantElement<F>> {
        self.check(f)?;
        let target = self.semisimple_quotient();
        let r = self.params.p_free();
        let mut out = vec![self.field.zero(); target.len];
        for (i, c) in f.coeffs.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            let e: Vec<u64> = self.exponents_of(i).iter().zip(r).map(|(e, r)| e % r).collect();
            self.field.add_assign(&mut out[target.index_of(&e)], c);
        }
        Ok(target.wrap(out))
    }

    pub fn in_radical(&self, f: &CirculantElement<F>) -> Result<bool> {
        let q = self.quotient(f)?;
        Ok(q.coeffs.iter().all(|c| self.field.is_zero(c)))
    }

    /// Reads a standard representative of `C_{r_p(m)/F}` as an element of
    /// this ring (partial degrees stay below `r_i <= m_i`).
    pub fn embed_representative(&self, f: &CirculantElement<F>) -> Result<CirculantElement<F>> {
        let sub = self.semisimple_quotient();
        sub.check(f)?;
        let mut out = vec![self.field.zero(); self.len];
        for (i, c) in f.coeffs.iter().enumerate() {
            out[self.index_of(&sub.exponents_of(i))] = c.clone();
        }
        Ok(self.wrap(out))
    }

    /// `f(X_1^{p^t}, ..., X_n^{p^t})`.
    pub fn frobenius_substitute(&self, f: &CirculantElement<F>, t: u64) -> Result<CirculantElement<F>> {
        self.check(f)?;
        let p = self.params.p();
        let factors: Vec<u64> = self.shape().iter().map(|&m| pow_mod(p, t, m)).collect();
        let mut out = vec![self.field.zero(); self.len];
        for (i, c) in f.coeffs.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            let e: Vec<u64> = self
                .exponents_of(i)
                .iter()
                .zip(&factors)
                .zip(self.shape())
                .map(|((e, k), m)| ((*e as u128 * *k as u128) % *m as u128) as u64)
                .collect();
            self.field.add_assign(&mut out[self.index_of(&e)], c);
        }
        Ok(self.wrap(out))
    }

    /// `1 + sum (p^{v_i} - 1)`; every element of the radical has its
    /// nilpotency index bounded by this.
    pub fn nilpotency_bound(&self) -> u64 {
        1 + self.params.p_part().iter().map(|pp| pp - 1).sum::<u64>()
    }

    /// Least `N` with `f^N = 0`, or `None` when no power up to the radical's
    /// bound vanishes.
    pub fn nilpotency_index(&self, f: &CirculantElement<F>) -> Result<Option<u64>> {
        self.check(f)?;
        let bound = self.nilpotency_bound();
        let mut acc = f.clone();
        for k in 1..=bound {
            if self.is_zero(&acc) {
                return Ok(Some(k));
            }
            if k < bound {
                acc = self.mul(&acc, f)?;
            }
        }
        Ok(None)
    }

    /// `Phi_G`: the group element `g` becomes the monomial `prod X_i^{g_i}`.
    pub fn from_group_algebra(&self, element: &BTreeMap<Vec<u64>, F::Elem>) -> Result<CirculantElement<F>> {
        let mut out = vec![self.field.zero(); self.len];
        for (g, c) in element {
            if g.len() != self.params.n() || g.iter().zip(self.shape()).any(|(gi, mi)| gi >= mi) {
                return Err(Error::OutOfRange(g.clone()));
            }
            out[self.index_of(g)] = c.clone();
        }
        Ok(self.wrap(out))
    }

    /// Inverse of [`CirculantRing::from_group_algebra`]; zero coefficients
    /// are omitted.
    pub fn to_group_algebra(&self, f: &CirculantElement<F>) -> Result<BTreeMap<Vec<u64>, F::Elem>> {
        self.check(f)?;
        Ok(f.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, c)| (self.exponents_of(i), c.clone()))
            .collect())
    }

    /// Sparse text form, e.g. `1 + 3*X1^2*X2 + X2^4`.
    ///
    /// Coefficients are written as their [`Field::index`].
    pub fn format(&self, f: &CirculantElement<F>) -> String {
        let mut terms = Vec::new();
        for (i, c) in f.coeffs.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            let mut factors = Vec::new();
            for (k, e) in self.exponents_of(i).into_iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("X{}", k + 1)),
                    _ => factors.push(format!("X{}^{}", k + 1, e)),
                }
            }
            if factors.is_empty() || !self.field.is_one(c) {
                factors.insert(0, format!("{}", self.field.index(c)));
            }
            terms.push(factors.join("*"));
        }
        if terms.is_empty() {
            return String::from("0");
        }
        terms.join(" + ")
    }

    /// Parses the text form produced by [`CirculantRing::format`].
    pub fn parse(&self, s: &str) -> Result<CirculantElement<F>> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
        let mut out = self.zero();
        for term in s.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let mut coeff = self.field.one();
            let mut exps = vec![0u64; self.params.n()];
            for factor in term.split('*') {
                let factor = factor.trim();
                if let Some(var) = factor.strip_prefix('X') {
                    let (v, e) = match var.split_once('^') {
                        Some((v, e)) => (v, e.parse::<u64>().map_err(|_| bad("bad exponent"))?),
                        None => (var, 1),
                    };
                    let v: usize = v.parse().map_err(|_| bad("bad variable"))?;
                    if v == 0 || v > self.params.n() {
                        return Err(bad("variable out of range"));
                    }
                    exps[v - 1] = (exps[v - 1] + e) % self.shape()[v - 1];
                } else {
                    let idx: u128 = factor.parse().map_err(|_| bad("bad coefficient"))?;
                    if idx >= self.field.order() {
                        return Err(bad("coefficient out of range"));
                    }
                    coeff = self.field.mul(&coeff, &self.field.element(idx));
                }
            }
            let i = self.index_of(&exps);
            self.field.add_assign(&mut out.coeffs[i], &coeff);
        }
        Ok(out)
    }
}

/// The minimal `t > 0` with `p^t = 1 mod r_i` for all `i` and
/// `t >= sum v_p(m_i)`: the least suitable multiple of `lcm_i ord_{r_i}(p)`.
pub fn choose_t(params: &CirculantParams) -> u64 {
    let p = params.p();
    let period = params
        .p_free()
        .iter()
        .map(|&r| multiplicative_order(p, r).expect("p-free part is coprime to p"))
        .fold(1, lcm);
    let needed: u64 = params.valuations().iter().map(|&v| v as u64).sum();
    let k = needed.div_ceil(period).max(1);
    k * period
}

/// A polynomial in `F[X_1..X_n]` with partial degrees `< dims[i]`, stored
/// densely in row-major order. No cyclic relations are imposed.
#[derive(Debug)]
pub struct BoundedPoly<F: Field> {
    dims: Vec<u64>,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Clone for BoundedPoly<F> {
    fn clone(&self) -> Self {
        BoundedPoly {
            dims: self.dims.clone(),
            coeffs: self.coeffs.clone(),
        }
    }
}

impl<F: Field> PartialEq for BoundedPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.coeffs == other.coeffs
    }
}

impl<F: Field> BoundedPoly<F> {
    pub fn new(dims: Vec<u64>, coeffs: Vec<F::Elem>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Empty);
        }
        if dims.iter().product::<u64>() as usize != coeffs.len() || dims.contains(&0) {
            return Err(Error::ShapeMismatch {
                left: dims,
                right: vec![coeffs.len() as u64],
            });
        }
        Ok(BoundedPoly { dims, coeffs })
    }

    pub fn zero(field: &F, dims: Vec<u64>) -> Self {
        let len = dims.iter().product::<u64>() as usize;
        BoundedPoly {
            dims,
            coeffs: vec![field.zero(); len],
        }
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, exps: &[u64]) -> Option<&F::Elem> {
        if exps.len() != self.dims.len() || exps.iter().zip(&self.dims).any(|(e, d)| e >= d) {
            return None;
        }
        let s = strides(&self.dims);
        Some(&self.coeffs[exps.iter().zip(&s).map(|(e, s)| *e as usize * s).sum::<usize>()])
    }

    /// Largest exponent of `X_var` with a nonzero coefficient.
    pub fn partial_degree(&self, field: &F, var: usize) -> Option<u64> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(i, _)| unravel(i, &self.dims)[var])
            .max()
    }

    pub fn is_zero(&self, field: &F) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }
}

/// `f = sum_{0 <= y << j} f_y * Y_t^y` with `Y_t^y = prod (X_i^{t_i} - 1)^{y_i}`
/// and every `f_y` of partial degrees `< t_i`.
#[derive(Debug)]
pub struct YComponents<F: Field> {
    t: Vec<u64>,
    j: Vec<u64>,
    /// Indexed by `y` in row-major order over `j`; each block row-major over `t`.
    blocks: Vec<Vec<F::Elem>>,
}

impl<F: Field> YComponents<F> {
    /// Decomposes `f`, whose partial degrees must be `< t_i * j_i`.
    ///
    /// Blocks are peeled off from the top: the window
    /// `[t_i y_i, t_i (y_i + 1))` of the residual is exactly `f_y` once every
    /// block dominating `y` has been subtracted.
    pub fn decompose(field: &F, f: &BoundedPoly<F>, t: &[u64], j: &[u64]) -> Result<Self> {
        let n = t.len();
        if n == 0 || j.len() != n || f.dims.len() != n {
            return Err(Error::Empty);
        }
        if t.contains(&0) || j.contains(&0) {
            return Err(Error::Zero);
        }
        let full: Vec<u64> = t.iter().zip(j).map(|(a, b)| a * b).collect();
        for var in 0..n {
            if let Some(deg) = f.partial_degree(field, var) {
                if deg >= full[var] {
                    return Err(Error::DegreeBound {
                        var,
                        degree: deg,
                        bound: full[var],
                    });
                }
            }
        }
        let mut residual = BoundedPoly::zero(field, full.clone());
        for (i, c) in f.coeffs.iter().enumerate() {
            if !field.is_zero(c) {
                let e = unravel(i, &f.dims);
                let idx = index_in(&e, &full);
                residual.coeffs[idx] = c.clone();
            }
        }
        let binoms = binomial_rows(field, j);
        let block_len = t.iter().product::<u64>() as usize;
        let n_blocks = j.iter().product::<u64>() as usize;
        let mut blocks = vec![Vec::new(); n_blocks];
        for yi in (0..n_blocks).rev() {
            let y = unravel(yi, j);
            let mut block = Vec::with_capacity(block_len);
            for ai in 0..block_len {
                let a = unravel(ai, t);
                let e: Vec<u64> = (0..n).map(|k| a[k] + t[k] * y[k]).collect();
                block.push(residual.coeffs[index_in(&e, &full)].clone());
            }
            subtract_y_multiple(field, &mut residual.coeffs, &block, t, &y, &full, &binoms, false);
            blocks[yi] = block;
        }
        if !residual.is_zero(field) {
            return Err(Error::Internal("Y-component residual is nonzero".into()));
        }
        Ok(YComponents {
            t: t.to_vec(),
            j: j.to_vec(),
            blocks,
        })
    }

    pub fn t(&self) -> &[u64] {
        &self.t
    }

    pub fn j(&self) -> &[u64] {
        &self.j
    }

    /// The component `f_y`, row-major over `t`.
    pub fn block(&self, y: &[u64]) -> Option<&[F::Elem]> {
        if y.len() != self.j.len() || y.iter().zip(&self.j).any(|(a, b)| a >= b) {
            return None;
        }
        Some(&self.blocks[index_in(y, &self.j)])
    }

    /// Exponent tuples `y` with `f_y != 0`.
    pub fn nonzero_blocks(&self, field: &F) -> Vec<Vec<u64>> {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.iter().any(|c| !field.is_zero(c)))
            .map(|(i, _)| unravel(i, &self.j))
            .collect()
    }

    /// `sum_y f_y * Y_t^y` with partial degrees `< t_i * j_i`.
    pub fn reassemble(&self, field: &F) -> BoundedPoly<F> {
        let full: Vec<u64> = self.t.iter().zip(&self.j).map(|(a, b)| a * b).collect();
        let mut out = BoundedPoly::zero(field, full.clone());
        let binoms = binomial_rows(field, &self.j);
        for (yi, block) in self.blocks.iter().enumerate() {
            let y = unravel(yi, &self.j);
            subtract_y_multiple(field, &mut out.coeffs, block, &self.t, &y, &full, &binoms, true);
        }
        out
    }
}

fn index_in(e: &[u64], dims: &[u64]) -> usize {
    e.iter()
        .zip(dims)
        .fold(0usize, |acc, (e, d)| acc * *d as usize + *e as usize)
}

/// Signed binomials: `rows[i][y][k]` is the coefficient of `X^{t k}` in
/// `(X^t - 1)^y`, for `y < j_i`.
fn binomial_rows<F: Field>(field: &F, j: &[u64]) -> Vec<Vec<Vec<F::Elem>>> {
    j.iter()
        .map(|&ji| {
            let mut rows: Vec<Vec<F::Elem>> = vec![vec![field.one()]];
            for _ in 1..ji {
                let prev = rows.last().unwrap();
                // multiply by (Z - 1)
                let mut next = vec![field.zero(); prev.len() + 1];
                for (k, c) in prev.iter().enumerate() {
                    field.add_assign(&mut next[k + 1], c);
                    field.sub_assign(&mut next[k], c);
                }
                rows.push(next);
            }
            rows
        })
        .collect()
}

/// `target -= block * Y_t^y` (or `+=` when `add` is set).
#[allow(clippy::too_many_arguments)]
fn subtract_y_multiple<F: Field>(
    field: &F,
    target: &mut [F::Elem],
    block: &[F::Elem],
    t: &[u64],
    y: &[u64],
    full: &[u64],
    binoms: &[Vec<Vec<F::Elem>>],
    add: bool,
) {
    let n = t.len();
    let k_dims: Vec<u64> = y.iter().map(|v| v + 1).collect();
    let k_count = k_dims.iter().product::<u64>() as usize;
    let mut terms = Vec::with_capacity(k_count);
    for ki in 0..k_count {
        let k = unravel(ki, &k_dims);
        let mut c = field.one();
        for var in 0..n {
            c = field.mul(&c, &binoms[var][y[var] as usize][k[var] as usize]);
        }
        if !field.is_zero(&c) {
            terms.push((k, c));
        }
    }
    for (ai, a_coeff) in block.iter().enumerate() {
        if field.is_zero(a_coeff) {
            continue;
        }
        let a = unravel(ai, t);
        for (k, c) in &terms {
            let e: Vec<u64> = (0..n).map(|var| a[var] + t[var] * k[var]).collect();
            let v = field.mul(a_coeff, c);
            let slot = &mut target[index_in(&e, full)];
            if add {
                field.add_assign(slot, &v);
            } else {
                field.sub_assign(slot, &v);
            }
        }
    }
}
