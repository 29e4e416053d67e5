//! Brute-force cohomology of truncated quantum observables.
//!
//! The truncation keeps monomials of total degree at most `maxdeg` (fields
//! and antifields both count). The classical differential preserves total
//! degree and the odd Laplacian lowers it by two, so the truncation is a
//! subcomplex. Ranks are computed by exact elimination over `Q`.
//!
//! The differential here is coded separately from [`crate::complex`] so it
//! can serve as an independent check of homotopy certificates.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cochain::{Cochain, Monomial, Site};
use crate::operad::Interval;
use crate::reduction::HomotopyCertificate;
use crate::scalars::Scalar;

/// Largest truncated basis the oracle accepts.
pub const MAX_BASIS: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("alpha must be nonzero")]
    ZeroAlpha,
    #[error("truncated basis has {0} monomials, above the limit {MAX_BASIS}")]
    BasisTooLarge(usize),
    #[error("interval {0} has length at most 2")]
    IllegalInterval(String),
    #[error("{inner} is not contained in {outer}")]
    NotNested { inner: String, outer: String },
}

/// Finite model of the observables on an interval at rational `(hbar, alpha)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationSpec {
    pub interval: Interval,
    pub maxdeg: u32,
    pub mindeg: u32,
    pub hval: BigRational,
    pub aval: BigRational,
}

impl TruncationSpec {
    pub fn new(interval: Interval, maxdeg: u32, hval: BigRational, aval: BigRational) -> Result<Self, OracleError> {
        if aval.is_zero() {
            return Err(OracleError::ZeroAlpha);
        }
        if !interval.is_color() {
            return Err(OracleError::IllegalInterval(interval.to_string()));
        }
        Ok(Self {
            interval,
            maxdeg,
            mindeg: 0,
            hval,
            aval,
        })
    }

    /// Drops monomials of total degree below `mindeg`. With `mindeg = maxdeg = 1`
    /// this is the two-term linear complex.
    pub fn with_min_degree(mut self, mindeg: u32) -> Self {
        self.mindeg = mindeg;
        self
    }

    fn on(&self, interval: Interval) -> TruncationSpec {
        TruncationSpec { interval, ..self.clone() }
    }

    fn alpha_sum(&self) -> BigRational {
        &self.aval + self.aval.recip()
    }
}

/// Plain encoding of a monomial: field exponents by site, sorted antifield sites.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Key {
    fields: BTreeMap<Site, u32>,
    odd: Vec<Site>,
}

impl Key {
    fn from_monomial(m: &Monomial) -> Key {
        Key {
            fields: m.fields().iter().copied().collect(),
            odd: m.antifields().to_vec(),
        }
    }

    fn to_monomial(&self) -> Monomial {
        let (sign, m) = Monomial::from_parts(self.fields.iter().map(|(&s, &e)| (s, e)), &self.odd)
            .expect("distinct antifields");
        debug_assert!(sign == crate::cochain::Sign::Plus);
        m
    }

    fn bump(&self, s: Site, by: i64) -> Option<(u32, Key)> {
        let mut k = self.clone();
        let e = k.fields.get(&s).copied().unwrap_or(0) as i64 + by;
        if e < 0 {
            return None;
        }
        let old = self.fields.get(&s).copied().unwrap_or(0);
        if e == 0 {
            k.fields.remove(&s);
        } else {
            k.fields.insert(s, e as u32);
        }
        Some((old, k))
    }
}

/// `d_hbar` on a single monomial, with coefficients in any ring given by
/// closures for the three constants it needs.
fn dq_key<R: Clone>(
    key: &Key,
    c: &R,
    hbar: &R,
    from_int: &impl Fn(i64) -> R,
    mul: &impl Fn(&R, &R) -> R,
    out: &mut Vec<(Key, R)>,
) {
    for (i, &y) in key.odd.iter().enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let mut rest = key.clone();
        rest.odd.remove(i);
        for (site, w) in [(y - 1, from_int(sign)), (y, mul(&from_int(-sign), c)), (y + 1, from_int(sign))] {
            let (_, k) = rest.bump(site, 1).unwrap();
            out.push((k, w));
        }
        // hbar * d/d bdelta[y] d/d delta[y]
        if let Some(&e) = key.fields.get(&y) {
            let (_, k) = rest.bump(y, -1).unwrap();
            out.push((k, mul(hbar, &from_int(sign * e as i64))));
        }
    }
}

/// `d_hbar` recomputed from scratch, over the full coefficient ring.
pub fn independent_dquantum(c: &Cochain, alpha: &Scalar, hbar: &Scalar) -> Cochain {
    let sum = alpha + &alpha.inverse().expect("alpha is a unit");
    let mut terms = Vec::new();
    for (m, coef) in c.terms() {
        let mut local = Vec::new();
        dq_key(
            &Key::from_monomial(m),
            &sum,
            hbar,
            &|n| Scalar::from_int(n),
            &|a, b| a * b,
            &mut local,
        );
        terms.extend(local.into_iter().map(|(k, w)| (k, &w * coef)));
    }
    let mut out = Cochain::zero();
    for (k, w) in terms {
        out.add_term(k.to_monomial(), w);
    }
    out
}

/// Re-verifies `input = normal_form + d_hbar(homotopy)` with the independent differential.
pub fn recheck_certificate(cert: &HomotopyCertificate, alpha: &Scalar, hbar: &Scalar) -> bool {
    let mut r = &cert.input - &cert.normal_form;
    r -= &independent_dquantum(&cert.homotopy, alpha, hbar);
    r.is_zero()
}

/// Basis monomials of cohomological degree `-k` (k antifields).
fn basis(spec: &TruncationSpec, k: usize) -> Vec<Key> {
    let fields: Vec<Site> = spec.interval.field_sites().collect();
    let odd_sites: Vec<Site> = spec.interval.antifield_sites().collect();
    let mut out = Vec::new();
    if k as u32 > spec.maxdeg {
        return out;
    }
    for odd in subsets(&odd_sites, k) {
        let lo = spec.mindeg.saturating_sub(k as u32);
        let hi = spec.maxdeg - k as u32;
        for deg in lo..=hi {
            for fields in multisets(&fields, deg) {
                out.push(Key {
                    fields,
                    odd: odd.clone(),
                });
            }
        }
    }
    out
}

fn choose(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Size of the truncated basis, counted without enumerating it.
fn basis_size(spec: &TruncationSpec) -> u128 {
    let f = spec.interval.field_sites().count() as u128;
    let a = spec.interval.antifield_sites().count() as u128;
    let mut total = 0u128;
    for k in 0..=a.min(spec.maxdeg as u128) {
        let lo = (spec.mindeg as u128).saturating_sub(k);
        let hi = spec.maxdeg as u128 - k;
        let fields: u128 = (lo..=hi)
            .map(|d| if f == 0 { u128::from(d == 0) } else { choose(f + d - 1, d) })
            .fold(0u128, |x, y| x.saturating_add(y));
        total = total.saturating_add(choose(a, k).saturating_mul(fields));
    }
    total
}

fn subsets(items: &[Site], k: usize) -> Vec<Vec<Site>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

fn multisets(items: &[Site], deg: u32) -> Vec<BTreeMap<Site, u32>> {
    if deg == 0 {
        return vec![BTreeMap::new()];
    }
    let Some((&first, rest)) = items.split_first() else {
        return vec![];
    };
    let mut out = Vec::new();
    for e in 0..=deg {
        for mut m in multisets(rest, deg - e) {
            if e > 0 {
                m.insert(first, e);
            }
            out.push(m);
        }
    }
    out
}

/// Incremental row echelon form over `Q` for sparse vectors.
#[derive(Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, BTreeMap<usize, BigRational>>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds `v` to the span; true iff it was independent.
    pub fn insert(&mut self, mut v: BTreeMap<usize, BigRational>) -> bool {
        loop {
            v.retain(|_, x| !x.is_zero());
            let Some((&lead, lead_val)) = v.iter().next() else {
                return false;
            };
            match self.pivots.get(&lead) {
                None => {
                    let inv = lead_val.recip();
                    for x in v.values_mut() {
                        *x *= &inv;
                    }
                    self.pivots.insert(lead, v);
                    return true;
                }
                Some(row) => {
                    let f = lead_val.clone();
                    for (&j, x) in row {
                        let e = v.entry(j).or_insert_with(BigRational::zero);
                        *e -= &f * x;
                    }
                }
            }
        }
    }
}

struct Complex {
    /// Basis per number of antifields.
    bases: Vec<Vec<Key>>,
    index: Vec<HashMap<Key, usize>>,
}

impl Complex {
    fn build(spec: &TruncationSpec) -> Result<Complex, OracleError> {
        let top = spec.interval.antifield_sites().count();
        let total = basis_size(spec);
        if total > MAX_BASIS as u128 {
            return Err(OracleError::BasisTooLarge(total.min(usize::MAX as u128) as usize));
        }
        let bases: Vec<Vec<Key>> = (0..=top).map(|k| basis(spec, k)).collect();
        let index = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect())
            .collect();
        Ok(Complex { bases, index })
    }

    /// Image of basis vector `i` in degree `-k` under `d_hbar`, as a vector in degree `-(k-1)`.
    fn image(&self, spec: &TruncationSpec, k: usize, i: usize) -> BTreeMap<usize, BigRational> {
        let mut raw = Vec::new();
        dq_key(
            &self.bases[k][i],
            &spec.alpha_sum(),
            &spec.hval,
            &|n| BigRational::from_integer(n.into()),
            &|a, b| a * b,
            &mut raw,
        );
        let mut v: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (key, w) in raw {
            // Terms below mindeg are dropped; the truncation is then a quotient
            // complex, which is still a complex since d never raises degree.
            if let Some(&j) = self.index[k - 1].get(&key) {
                *v.entry(j).or_insert_with(BigRational::zero) += w;
            }
        }
        v.retain(|_, x| !x.is_zero());
        v
    }

    fn rank_of_d(&self, spec: &TruncationSpec, k: usize) -> usize {
        let mut e = Echelon::new();
        for i in 0..self.bases[k].len() {
            e.insert(self.image(spec, k, i));
        }
        e.rank()
    }
}

/// `dim H^{-k}` for every degree `-k` of the truncated complex.
pub fn cohomology_oracle(spec: &TruncationSpec) -> Result<BTreeMap<i64, usize>, OracleError> {
    let cx = Complex::build(spec)?;
    let top = cx.bases.len() - 1;
    let ranks: Vec<usize> = (0..=top)
        .map(|k| if k == 0 { 0 } else { cx.rank_of_d(spec, k) })
        .collect();
    let mut out = BTreeMap::new();
    for k in 0..=top {
        let incoming = if k < top { ranks[k + 1] } else { 0 };
        let dim = cx.bases[k].len() - ranks[k] - incoming;
        out.insert(-(k as i64), dim);
    }
    Ok(out)
}

/// `dim H^0` of the truncation.
pub fn h0_dimension(spec: &TruncationSpec) -> Result<usize, OracleError> {
    let cx = Complex::build(spec)?;
    let r = if cx.bases.len() > 1 { cx.rank_of_d(spec, 1) } else { 0 };
    Ok(cx.bases[0].len() - r)
}

/// Whether `inner ⊂ spec.interval` induces an isomorphism on truncated `H^0`.
pub fn inclusion_is_h0_iso(inner: &Interval, spec: &TruncationSpec) -> Result<bool, OracleError> {
    if !inner.is_within(&spec.interval) {
        return Err(OracleError::NotNested {
            inner: inner.to_string(),
            outer: spec.interval.to_string(),
        });
    }
    let inner_spec = TruncationSpec::new(inner.clone(), spec.maxdeg, spec.hval.clone(), spec.aval.clone())?
        .with_min_degree(spec.mindeg);
    let dim_inner = h0_dimension(&inner_spec)?;
    let outer = Complex::build(spec)?;
    let mut span = Echelon::new();
    if outer.bases.len() > 1 {
        for i in 0..outer.bases[1].len() {
            span.insert(outer.image(spec, 1, i));
        }
    }
    let boundaries = span.rank();
    let dim_outer = outer.bases[0].len() - boundaries;
    if dim_inner != dim_outer {
        return Ok(false);
    }
    for key in basis(&inner_spec, 0) {
        let j = outer.index[0][&key];
        span.insert(BTreeMap::from([(j, BigRational::one())]));
    }
    Ok(span.rank() - boundaries == dim_inner)
}

/// The same oracle on another interval with the same truncation data.
pub fn cohomology_on(spec: &TruncationSpec, interval: Interval) -> Result<BTreeMap<i64, usize>, OracleError> {
    cohomology_oracle(&spec.on(interval))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{dquantum, ModelParams};

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn iv(a: i64, b: i64) -> Interval {
        Interval::from_ints(a, b).unwrap()
    }

    #[test]
    fn linear_level() {
        let spec = TruncationSpec::new(iv(0, 5), 1, r(1), r(1)).unwrap().with_min_degree(1);
        let h = cohomology_oracle(&spec).unwrap();
        assert_eq!(h[&0], 2);
        assert_eq!(h[&-1], 0);
    }

    #[test]
    fn quadratic_truncation() {
        let spec = TruncationSpec::new(iv(0, 5), 2, r(1), r(1)).unwrap();
        let h = cohomology_oracle(&spec).unwrap();
        assert_eq!(h[&0], 6);
        assert!(h.iter().all(|(&k, &d)| k == 0 || d == 0));
    }

    #[test]
    fn constants_only() {
        let spec = TruncationSpec::new(iv(0, 5), 0, r(1), r(1)).unwrap();
        assert_eq!(cohomology_oracle(&spec).unwrap()[&0], 1);
    }

    #[test]
    fn massive_quadratic() {
        let spec = TruncationSpec::new(iv(-1, 4), 3, r(1), r(2)).unwrap();
        assert_eq!(h0_dimension(&spec).unwrap(), 10);
    }

    #[test]
    fn inclusion_examples() {
        let spec = TruncationSpec::new(iv(-1, 4), 2, r(1), r(1)).unwrap();
        assert!(inclusion_is_h0_iso(&iv(0, 3), &spec).unwrap());
        assert!(inclusion_is_h0_iso(&iv(-1, 4), &spec).unwrap());
        let big = Interval::from_ratios((0, 1), (25, 1)).unwrap();
        let small = Interval::from_ratios((0, 1), (5, 2)).unwrap();
        let spec = TruncationSpec::new(big, 1, r(1), r(1)).unwrap();
        assert!(inclusion_is_h0_iso(&small, &spec).unwrap());
    }

    #[test]
    fn basis_size_matches_enumeration() {
        for (a, b, n) in [(0, 5, 2), (-4, 4, 3), (-1, 4, 4)] {
            let spec = TruncationSpec::new(iv(a, b), n, r(1), r(1)).unwrap();
            let top = spec.interval.antifield_sites().count();
            let listed: usize = (0..=top).map(|k| basis(&spec, k).len()).sum();
            assert_eq!(basis_size(&spec), listed as u128);
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(TruncationSpec::new(iv(0, 5), 1, r(1), r(0)), Err(OracleError::ZeroAlpha));
        assert!(TruncationSpec::new(iv(0, 2), 1, r(1), r(1)).is_err());
        let spec = TruncationSpec::new(iv(-40, 40), 6, r(1), r(1)).unwrap();
        assert!(matches!(cohomology_oracle(&spec), Err(OracleError::BasisTooLarge(_))));
    }

    #[test]
    fn independent_differential_agrees() {
        let p = ModelParams::symbolic();
        let c = &(&Cochain::antifield(1) * &Cochain::antifield(2)) * &Cochain::field(1).pow(2);
        let c = &c + &(&Cochain::antifield(0) * &Cochain::field(0));
        assert_eq!(independent_dquantum(&c, p.alpha(), p.hbar()), dquantum(&c, &p));
    }
}
